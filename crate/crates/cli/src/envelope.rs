//! The container for everything the CLI reads and writes:
//! `"OSG1" ‖ kind ‖ scheme ‖ backend ‖ version ‖ payload`.
//!
//! Files hold one envelope each. Sessions carry one envelope per frame.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use clap::builder::PossibleValue;
use clap::ValueEnum;
use opaque_sig::groups::{Backend, Bls, Toy};
use opaque_sig::wire::{self, Decode, Encode};

use crate::error::CliError;

pub const MAGIC: &[u8; 4] = b"OSG1";
pub const VERSION: u8 = 1;

macro_rules! tagged {
    ($(#[$meta:meta])* $name:ident { $($variant:ident = $tag:literal => $label:literal),* $(,)? }) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
        pub enum $name {
            $($variant),*
        }

        impl $name {
            #[allow(dead_code)]
            pub const ALL: &'static [$name] = &[$($name::$variant),*];

            pub fn tag(self) -> u8 {
                match self {
                    $($name::$variant => $tag),*
                }
            }

            pub fn from_tag(tag: u8) -> Option<Self> {
                match tag {
                    $($tag => Some($name::$variant),)*
                    _ => None,
                }
            }

            pub fn label(self) -> &'static str {
                match self {
                    $($name::$variant => $label),*
                }
            }
        }
    };
}

tagged!(
    /// What an envelope carries.
    Kind {
        SignerKey = 0x01 => "signer key",
        SignerPublic = 0x02 => "signer public key",
        ConfirmerKey = 0x03 => "confirmer key",
        ConfirmerPublic = 0x04 => "confirmer public key",
        SenderKey = 0x05 => "sender key",
        SenderPublic = 0x06 => "sender public key",
        ReceiverKey = 0x07 => "receiver key",
        ReceiverPublic = 0x08 => "receiver public key",
        Signature = 0x10 => "signature",
        Converted = 0x11 => "converted signature",
        Signcryption = 0x12 => "signcryption",
        SenderCoins = 0x13 => "sender coins",
        Extracted = 0x14 => "extracted signature",
        ConfirmTranscript = 0x20 => "confirmation transcript",
        DenyTranscript = 0x21 => "denial transcript",
        ValidityTranscript = 0x22 => "validity transcript",
        First = 0x30 => "first prover message",
        Second = 0x31 => "second prover message",
        Third = 0x32 => "third prover message",
        Challenge = 0x33 => "challenge",
    }
);

tagged!(
    Scheme {
        PlainSte = 0x01 => "plain-ste",
        Ets = 0x02 => "ets",
        NewSte = 0x03 => "new-ste",
        Ctets = 0x04 => "ctets",
        Cteas = 0x05 => "cteas",
        Etste = 0x06 => "etste",
        Dp = 0x07 => "dp",
        DpRepaired = 0x08 => "dp-repaired",
    }
);

tagged!(
    BackendId {
        Toy = 0x01 => "toy",
        Bls = 0x02 => "bls12-381",
    }
);

impl ValueEnum for Scheme {
    fn value_variants<'a>() -> &'a [Self] {
        Scheme::ALL
    }

    fn to_possible_value(&self) -> Option<PossibleValue> {
        let v = PossibleValue::new(self.label());
        Some(match self {
            Scheme::NewSte => v.alias("newste"),
            _ => v,
        })
    }
}

impl ValueEnum for BackendId {
    fn value_variants<'a>() -> &'a [Self] {
        BackendId::ALL
    }

    fn to_possible_value(&self) -> Option<PossibleValue> {
        let v = PossibleValue::new(self.label());
        Some(match self {
            BackendId::Bls => v.aliases(["bls", "production"]),
            BackendId::Toy => v,
        })
    }
}

const _: () = assert!(Toy::TAG == 0x01 && Bls::TAG == 0x02);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Envelope {
    pub kind: Kind,
    pub scheme: Scheme,
    pub backend: BackendId,
    pub payload: Vec<u8>,
}

impl Envelope {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + self.payload.len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&[self.kind.tag(), self.scheme.tag(), self.backend.tag(), VERSION]);
        out.extend_from_slice(&self.payload);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, CliError> {
        let bad = |what: &str| CliError::Decode(format!("not an osg artifact: {what}"));
        if bytes.len() < 8 || &bytes[..4] != MAGIC {
            return Err(bad("bad magic"));
        }
        let kind = Kind::from_tag(bytes[4]).ok_or_else(|| bad("unknown kind"))?;
        let scheme = Scheme::from_tag(bytes[5]).ok_or_else(|| bad("unknown scheme"))?;
        let backend = BackendId::from_tag(bytes[6]).ok_or_else(|| bad("unknown backend"))?;
        if bytes[7] != VERSION {
            return Err(bad("unsupported version"));
        }
        Ok(Envelope { kind, scheme, backend, payload: bytes[8..].to_vec() })
    }
}

/// The scheme and backend an artifact belongs to; stamps and checks
/// envelopes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Context {
    pub scheme: Scheme,
    pub backend: BackendId,
}

impl Context {
    pub fn seal(&self, kind: Kind, x: &impl Encode) -> Envelope {
        Envelope { kind, scheme: self.scheme, backend: self.backend, payload: x.to_bytes() }
    }

    pub fn open<T: Decode>(&self, kind: Kind, env: &Envelope) -> Result<T, CliError> {
        if env.kind != kind {
            return Err(CliError::Decode(format!("expected a {}, found a {}", kind.label(), env.kind.label())));
        }
        if (env.scheme, env.backend) != (self.scheme, self.backend) {
            return Err(CliError::Decode(format!(
                "{} belongs to {}/{}, not {}/{}",
                kind.label(),
                env.scheme.label(),
                env.backend.label(),
                self.scheme.label(),
                self.backend.label()
            )));
        }
        T::from_bytes(&env.payload).map_err(|e| CliError::Decode(format!("{}: {e}", kind.label())))
    }

    pub fn write(&self, path: &Path, kind: Kind, x: &impl Encode) -> Result<(), CliError> {
        fs::write(path, self.seal(kind, x).to_bytes()).map_err(|e| CliError::io(path, e))
    }

    pub fn read<T: Decode>(&self, path: &Path, kind: Kind) -> Result<T, CliError> {
        let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
        self.open(kind, &Envelope::from_bytes(&bytes).map_err(|e| e.in_file(path))?).map_err(|e| e.in_file(path))
    }

    pub fn send(&self, w: &mut impl Write, kind: Kind, x: &impl Encode) -> Result<(), CliError> {
        wire::write_frame(w, &self.seal(kind, x).to_bytes()).map_err(CliError::Session)
    }

    pub fn recv<T: Decode>(&self, r: &mut impl Read, kind: Kind) -> Result<T, CliError> {
        let frame = wire::read_frame(r).map_err(CliError::Session)?;
        self.open(kind, &Envelope::from_bytes(&frame)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelopes_round_trip_and_reject_unknown_tags() {
        let env = Envelope { kind: Kind::Signature, scheme: Scheme::Ctets, backend: BackendId::Bls, payload: vec![1, 2, 3] };
        let bytes = env.to_bytes();
        assert_eq!(&bytes[..8], b"OSG1\x10\x04\x02\x01");
        assert_eq!(Envelope::from_bytes(&bytes).unwrap(), env);
        for (i, junk) in [(0, b'X'), (4, 0xff), (5, 0xff), (6, 0xff), (7, 2)] {
            let mut b = bytes.clone();
            b[i] = junk;
            assert!(Envelope::from_bytes(&b).is_err(), "byte {i}");
        }
        assert!(Envelope::from_bytes(&bytes[..7]).is_err());
    }

    #[test]
    fn context_checks_kind_scheme_and_backend() {
        let ctx = Context { scheme: Scheme::NewSte, backend: BackendId::Toy };
        let env = ctx.seal(Kind::Challenge, &5u128);
        assert_eq!(ctx.open::<u128>(Kind::Challenge, &env).unwrap(), 5);
        assert!(ctx.open::<u128>(Kind::First, &env).is_err());
        let other = Context { scheme: Scheme::Ets, ..ctx };
        assert!(other.open::<u128>(Kind::Challenge, &env).is_err());
        let other = Context { backend: BackendId::Bls, ..ctx };
        assert!(other.open::<u128>(Kind::Challenge, &env).is_err());
    }

    #[test]
    fn tags_are_distinct() {
        for &k in Kind::ALL {
            assert_eq!(Kind::from_tag(k.tag()), Some(k));
        }
        for &s in Scheme::ALL {
            assert_eq!(Scheme::from_tag(s.tag()), Some(s));
        }
    }
}
