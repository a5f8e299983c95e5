//! Canonical binary encoding.
//!
//! Every protocol object has exactly one byte representation: group elements
//! and scalars are fixed width, variable-length fields carry a big-endian
//! `u32` length, and decoders reject trailing bytes and non-minimal integers.
//! The same bytes feed Fiat–Shamir hashing, so injectivity matters.

use std::io::{self, Read, Write};

use num_bigint::BigUint;

use crate::Error;

pub trait Encode {
    fn encode(&self, out: &mut Vec<u8>);

    fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.encode(&mut out);
        out
    }
}

pub trait Decode: Sized {
    fn decode(r: &mut Reader<'_>) -> Result<Self, Error>;

    /// Decodes a value that must span all of `bytes`.
    fn from_bytes(bytes: &[u8]) -> Result<Self, Error> {
        let mut r = Reader::new(bytes);
        let v = Self::decode(&mut r)?;
        r.finish()?;
        Ok(v)
    }
}

/// Cursor over a byte slice.
pub struct Reader<'a> {
    buf: &'a [u8],
}

impl<'a> Reader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Reader { buf }
    }

    pub fn take(&mut self, n: usize) -> Result<&'a [u8], Error> {
        if self.buf.len() < n {
            return Err(Error::Decode("truncated input"));
        }
        let (head, tail) = self.buf.split_at(n);
        self.buf = tail;
        Ok(head)
    }

    pub fn byte(&mut self) -> Result<u8, Error> {
        Ok(self.take(1)?[0])
    }

    pub fn len_prefix(&mut self) -> Result<usize, Error> {
        let b = self.take(4)?;
        Ok(u32::from_be_bytes([b[0], b[1], b[2], b[3]]) as usize)
    }

    pub fn remaining(&self) -> usize {
        self.buf.len()
    }

    pub fn finish(&self) -> Result<(), Error> {
        if self.buf.is_empty() {
            Ok(())
        } else {
            Err(Error::Decode("trailing bytes"))
        }
    }
}

pub fn put_len(out: &mut Vec<u8>, n: usize) {
    out.extend_from_slice(&(n as u32).to_be_bytes());
}

impl Encode for u8 {
    fn encode(&self, out: &mut Vec<u8>) {
        out.push(*self);
    }
}

impl Decode for u8 {
    fn decode(r: &mut Reader<'_>) -> Result<Self, Error> {
        r.byte()
    }
}

impl Encode for bool {
    fn encode(&self, out: &mut Vec<u8>) {
        out.push(*self as u8);
    }
}

impl Decode for bool {
    fn decode(r: &mut Reader<'_>) -> Result<Self, Error> {
        match r.byte()? {
            0 => Ok(false),
            1 => Ok(true),
            _ => Err(Error::Decode("invalid boolean")),
        }
    }
}

impl Encode for u128 {
    fn encode(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.to_be_bytes());
    }
}

impl Decode for u128 {
    fn decode(r: &mut Reader<'_>) -> Result<Self, Error> {
        let b = r.take(16)?;
        Ok(u128::from_be_bytes(b.try_into().expect("16 bytes")))
    }
}

impl Encode for () {
    fn encode(&self, _: &mut Vec<u8>) {}
}

impl Decode for () {
    fn decode(_: &mut Reader<'_>) -> Result<Self, Error> {
        Ok(())
    }
}

impl<T: Encode> Encode for Vec<T> {
    fn encode(&self, out: &mut Vec<u8>) {
        put_len(out, self.len());
        for x in self {
            x.encode(out);
        }
    }
}

impl<T: Decode> Decode for Vec<T> {
    fn decode(r: &mut Reader<'_>) -> Result<Self, Error> {
        let n = r.len_prefix()?;
        if n > r.remaining() {
            return Err(Error::Decode("length exceeds input"));
        }
        (0..n).map(|_| T::decode(r)).collect()
    }
}

impl<T: Encode> Encode for Option<T> {
    fn encode(&self, out: &mut Vec<u8>) {
        match self {
            None => out.push(0),
            Some(x) => {
                out.push(1);
                x.encode(out);
            }
        }
    }
}

impl<T: Decode> Decode for Option<T> {
    fn decode(r: &mut Reader<'_>) -> Result<Self, Error> {
        match r.byte()? {
            0 => Ok(None),
            1 => Ok(Some(T::decode(r)?)),
            _ => Err(Error::Decode("invalid option tag")),
        }
    }
}

/// Minimal big-endian magnitude with a length prefix; zero is empty.
impl Encode for BigUint {
    fn encode(&self, out: &mut Vec<u8>) {
        let bytes = if self == &BigUint::default() { Vec::new() } else { self.to_bytes_be() };
        put_len(out, bytes.len());
        out.extend_from_slice(&bytes);
    }
}

impl Decode for BigUint {
    fn decode(r: &mut Reader<'_>) -> Result<Self, Error> {
        let n = r.len_prefix()?;
        let bytes = r.take(n)?;
        if bytes.first() == Some(&0) {
            return Err(Error::Decode("non-minimal integer"));
        }
        Ok(BigUint::from_bytes_be(bytes))
    }
}

macro_rules! tuple_wire {
    ($($t:ident),+) => {
        impl<$($t: Encode),+> Encode for ($($t,)+) {
            #[allow(non_snake_case)]
            fn encode(&self, out: &mut Vec<u8>) {
                let ($($t,)+) = self;
                $($t.encode(out);)+
            }
        }
        impl<$($t: Decode),+> Decode for ($($t,)+) {
            fn decode(r: &mut Reader<'_>) -> Result<Self, Error> {
                Ok(($($t::decode(r)?,)+))
            }
        }
    };
}

tuple_wire!(A);
tuple_wire!(A, B);
tuple_wire!(A, B, C);
tuple_wire!(A, B, C, D);
tuple_wire!(A, B, C, D, E);

/// Implements [`Encode`] and [`Decode`] for a struct by concatenating its
/// fields in declaration order.
#[macro_export]
macro_rules! wire_struct {
    ($name:ident $(<$($g:ident : $bound:path),+>)? { $($field:ident),+ $(,)? }) => {
        impl$(<$($g: $bound),+>)? $crate::wire::Encode for $name$(<$($g),+>)? {
            fn encode(&self, out: &mut Vec<u8>) {
                $($crate::wire::Encode::encode(&self.$field, out);)+
            }
        }
        impl$(<$($g: $bound),+>)? $crate::wire::Decode for $name$(<$($g),+>)? {
            fn decode(r: &mut $crate::wire::Reader<'_>) -> Result<Self, $crate::Error> {
                Ok($name { $($field: $crate::wire::Decode::decode(r)?),+ })
            }
        }
    };
}

/// Raw byte strings with a length prefix.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Bytes(pub Vec<u8>);

impl Encode for Bytes {
    fn encode(&self, out: &mut Vec<u8>) {
        put_len(out, self.0.len());
        out.extend_from_slice(&self.0);
    }
}

impl Decode for Bytes {
    fn decode(r: &mut Reader<'_>) -> Result<Self, Error> {
        let n = r.len_prefix()?;
        Ok(Bytes(r.take(n)?.to_vec()))
    }
}

/// Largest frame [`read_frame`] accepts.
pub const MAX_FRAME: usize = 1 << 24;

/// Writes `len ‖ payload` with a 4-byte big-endian length, for streaming
/// protocol messages over a byte channel.
pub fn write_frame<W: Write>(w: &mut W, payload: &[u8]) -> io::Result<()> {
    if payload.len() > MAX_FRAME {
        return Err(io::Error::new(io::ErrorKind::InvalidInput, "frame too large"));
    }
    w.write_all(&(payload.len() as u32).to_be_bytes())?;
    w.write_all(payload)?;
    w.flush()
}

/// Reads one frame written by [`write_frame`]. A truncated frame is an
/// `UnexpectedEof` error.
pub fn read_frame<R: Read>(r: &mut R) -> io::Result<Vec<u8>> {
    let mut len = [0u8; 4];
    r.read_exact(&mut len)?;
    let len = u32::from_be_bytes(len) as usize;
    if len > MAX_FRAME {
        return Err(io::Error::new(io::ErrorKind::InvalidData, "frame too large"));
    }
    let mut buf = vec![0u8; len];
    r.read_exact(&mut buf)?;
    Ok(buf)
}
