//! secp256k1 through `k256`, used as the ElGamal message group.
//!
//! BLS12-381's G1 has a large cofactor, so a try-and-increment encoding of
//! byte strings cannot land in the prime-order subgroup there. secp256k1 has
//! cofactor one: every x with a square root gives a group element.

use std::ops::{Add, Mul, Neg, Sub};

use k256::elliptic_curve::group::GroupEncoding;
use k256::elliptic_curve::sec1::ToEncodedPoint;
use k256::elliptic_curve::{Field, PrimeField};
use k256::{AffinePoint, CompressedPoint, FieldBytes, ProjectivePoint, Scalar};
use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{MessageGroup, PrimeGroup, Rng, ScalarField};
use crate::wire::{Decode, Encode, Reader};
use crate::Error;

const ORDER_HEX: &str = "FFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SecpScalar(pub Scalar);

impl Add for SecpScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        SecpScalar(self.0 + rhs.0)
    }
}

impl Sub for SecpScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        SecpScalar(self.0 - rhs.0)
    }
}

impl Mul for SecpScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        SecpScalar(self.0 * rhs.0)
    }
}

impl Neg for SecpScalar {
    type Output = Self;
    fn neg(self) -> Self {
        SecpScalar(-self.0)
    }
}

impl Zero for SecpScalar {
    fn zero() -> Self {
        SecpScalar(Scalar::ZERO)
    }
    fn is_zero(&self) -> bool {
        bool::from(self.0.is_zero())
    }
}

impl One for SecpScalar {
    fn one() -> Self {
        SecpScalar(Scalar::ONE)
    }
}

impl Encode for SecpScalar {
    fn encode(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.0.to_bytes());
    }
}

impl Decode for SecpScalar {
    fn decode(r: &mut Reader<'_>) -> Result<Self, Error> {
        let mut bytes = FieldBytes::default();
        bytes.copy_from_slice(r.take(32)?);
        Option::from(Scalar::from_repr(bytes))
            .map(SecpScalar)
            .ok_or(Error::Decode("scalar out of range"))
    }
}

impl ScalarField for SecpScalar {
    const BYTES: usize = 32;

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        SecpScalar(Scalar::random(rng))
    }

    fn invert(&self) -> Option<Self> {
        Option::from(self.0.invert()).map(SecpScalar)
    }

    fn order() -> BigUint {
        BigUint::parse_bytes(ORDER_HEX.as_bytes(), 16).expect("constant")
    }

    fn to_biguint(&self) -> BigUint {
        BigUint::from_bytes_be(&self.0.to_bytes())
    }

    fn from_biguint(n: &BigUint) -> Self {
        let reduced = (n % Self::order()).to_bytes_be();
        let mut bytes = [0u8; 32];
        bytes[32 - reduced.len()..].copy_from_slice(&reduced);
        SecpScalar(Option::from(Scalar::from_repr(bytes.into())).expect("reduced below n"))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SecpPoint(pub ProjectivePoint);

impl Encode for SecpPoint {
    fn encode(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.0.to_affine().to_bytes());
    }
}

impl Decode for SecpPoint {
    fn decode(r: &mut Reader<'_>) -> Result<Self, Error> {
        let mut bytes = CompressedPoint::default();
        bytes.copy_from_slice(r.take(33)?);
        let p: Option<AffinePoint> = AffinePoint::from_bytes(&bytes).into();
        let p = p.ok_or(Error::Decode("invalid secp256k1 point"))?;
        if p.to_bytes() != bytes {
            return Err(Error::Decode("non-canonical secp256k1 point"));
        }
        Ok(SecpPoint(p.into()))
    }
}

impl PrimeGroup for SecpPoint {
    type Scalar = SecpScalar;
    const BYTES: usize = 33;

    fn identity() -> Self {
        SecpPoint(ProjectivePoint::IDENTITY)
    }
    fn generator() -> Self {
        SecpPoint(ProjectivePoint::GENERATOR)
    }
    fn op(&self, other: &Self) -> Self {
        SecpPoint(self.0 + other.0)
    }
    fn inverse(&self) -> Self {
        SecpPoint(-self.0)
    }
    fn pow(&self, k: &SecpScalar) -> Self {
        SecpPoint(self.0 * k.0)
    }
}

/// Bytes available for the message inside an x-coordinate: one length byte,
/// the padded message, and one counter byte.
const MAX_MESSAGE: usize = 30;

impl MessageGroup for SecpPoint {
    const MAX_MESSAGE: usize = MAX_MESSAGE;

    /// Try-and-increment: `x = len ‖ msg ‖ 0-pad ‖ counter` with even `y`.
    fn encode_message(msg: &[u8]) -> Result<Self, Error> {
        if msg.len() > MAX_MESSAGE {
            return Err(Error::Encode("message longer than 30 bytes"));
        }
        let mut sec1 = [0u8; 33];
        sec1[0] = 0x02;
        sec1[1] = msg.len() as u8;
        sec1[2..2 + msg.len()].copy_from_slice(msg);
        for counter in 0..=u8::MAX {
            sec1[32] = counter;
            let mut repr = CompressedPoint::default();
            repr.copy_from_slice(&sec1);
            let p: Option<AffinePoint> = AffinePoint::from_bytes(&repr).into();
            if let Some(p) = p {
                return Ok(SecpPoint(p.into()));
            }
        }
        Err(Error::Encode("no curve point for this message"))
    }

    fn decode_message(&self) -> Option<Vec<u8>> {
        let enc = self.0.to_affine().to_encoded_point(true);
        let bytes = enc.as_bytes();
        if bytes.len() != 33 || bytes[0] != 0x02 {
            return None;
        }
        let len = bytes[1] as usize;
        if len > MAX_MESSAGE || bytes[2 + len..32].iter().any(|&b| b != 0) {
            return None;
        }
        let msg = bytes[2..2 + len].to_vec();
        // Only the first working counter is canonical.
        (Self::encode_message(&msg).ok()? == *self).then_some(msg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_constant_matches_field() {
        let minus_one = -SecpScalar::one();
        assert_eq!(minus_one.to_biguint() + 1u32, SecpScalar::order());
    }

    #[test]
    fn message_codec_round_trips() {
        for msg in [&b""[..], b"a", b"hello world", &[0u8; 30], &[0xff; 30]] {
            let p = SecpPoint::encode_message(msg).unwrap();
            assert_eq!(p.decode_message().unwrap(), msg);
        }
        assert!(SecpPoint::encode_message(&[0u8; 31]).is_err());
        assert!(SecpPoint::generator().decode_message().is_none());
    }

    #[test]
    fn identity_has_fixed_width() {
        let id = SecpPoint::identity().to_bytes();
        assert_eq!(id, vec![0u8; 33]);
        assert_eq!(SecpPoint::from_bytes(&id).unwrap(), SecpPoint::identity());
    }
}
