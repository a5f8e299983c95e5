use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::groups::{Rng, ScalarField};
use crate::wire::{Decode, Encode, Reader};
use crate::Error;

pub type Challenge = u128;

/// `C = [0, n)` or all of `u128`. Challenges form the group `Z_|C|` under
/// addition, which is what OR-composition splits over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChallengeSpace {
    Range(u128),
    Wide,
}

impl ChallengeSpace {
    pub const BINARY: ChallengeSpace = ChallengeSpace::Range(2);

    /// The largest space usable with scalar field `S`: `[0, ℓ)` when `ℓ`
    /// fits in 128 bits, otherwise every `u128`. Distinct challenges then
    /// always differ by a unit mod `ℓ`.
    pub fn full<S: ScalarField>() -> Self {
        match S::order().to_u128() {
            Some(l) => ChallengeSpace::Range(l),
            None => ChallengeSpace::Wide,
        }
    }

    /// `[0, 2^k)`.
    pub fn bits(k: u32) -> Self {
        match k {
            128 => ChallengeSpace::Wide,
            k => ChallengeSpace::Range(1u128 << k),
        }
    }

    pub fn contains(&self, b: Challenge) -> bool {
        match self {
            ChallengeSpace::Range(n) => b < *n,
            ChallengeSpace::Wide => true,
        }
    }

    /// `|C|` as an integer.
    pub fn size(&self) -> BigUint {
        match self {
            ChallengeSpace::Range(n) => BigUint::from(*n),
            ChallengeSpace::Wide => BigUint::from(1u8) << 128,
        }
    }

    /// `|C| − 1`, the largest challenge.
    pub fn max(&self) -> u128 {
        match self {
            ChallengeSpace::Range(n) => n - 1,
            ChallengeSpace::Wide => u128::MAX,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Challenge {
        use rand::Rng as _;
        match self {
            ChallengeSpace::Range(n) => rng.gen_range(0..*n),
            ChallengeSpace::Wide => rng.gen(),
        }
    }

    /// Maps a digest into the space; the bias for `Range` is below
    /// `|C| / 2^256`.
    pub fn from_digest(&self, digest: &[u8]) -> Challenge {
        match self {
            ChallengeSpace::Range(n) => {
                (BigUint::from_bytes_be(digest) % BigUint::from(*n)).to_u128().expect("reduced")
            }
            ChallengeSpace::Wide => u128::from_be_bytes(digest[..16].try_into().expect("digest ≥ 16 bytes")),
        }
    }

    pub fn add(&self, a: Challenge, b: Challenge) -> Challenge {
        match self {
            ChallengeSpace::Range(n) => {
                let (a, b) = (a % n, b % n);
                if a >= n - b {
                    a - (n - b)
                } else {
                    a + b
                }
            }
            ChallengeSpace::Wide => a.wrapping_add(b),
        }
    }

    pub fn sub(&self, a: Challenge, b: Challenge) -> Challenge {
        match self {
            ChallengeSpace::Range(n) => {
                let (a, b) = (a % n, b % n);
                if a >= b {
                    a - b
                } else {
                    n - (b - a)
                }
            }
            ChallengeSpace::Wide => a.wrapping_sub(b),
        }
    }
}

impl Encode for ChallengeSpace {
    fn encode(&self, out: &mut Vec<u8>) {
        match self {
            ChallengeSpace::Range(n) => {
                out.push(0);
                n.encode(out);
            }
            ChallengeSpace::Wide => out.push(1),
        }
    }
}

impl Decode for ChallengeSpace {
    fn decode(r: &mut Reader<'_>) -> Result<Self, Error> {
        match r.byte()? {
            0 => match u128::decode(r)? {
                n if n >= 2 => Ok(ChallengeSpace::Range(n)),
                _ => Err(Error::Decode("challenge space needs at least two elements")),
            },
            1 => Ok(ChallengeSpace::Wide),
            _ => Err(Error::Decode("unknown challenge space")),
        }
    }
}
