//! BLS12-381 through arkworks.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use ark_bls12_381::{g1, Bls12_381, Fr, G1Affine, G1Projective, G2Affine, G2Projective};
use ark_ec::hashing::curve_maps::wb::WBMap;
use ark_ec::hashing::map_to_curve_hasher::MapToCurveBasedHasher;
use ark_ec::hashing::HashToCurve;
use ark_ec::pairing::{Pairing, PairingOutput};
use ark_ec::CurveGroup;
use ark_ff::field_hashers::DefaultFieldHasher;
use ark_ff::{Field, PrimeField, UniformRand};
use ark_serialize::{CanonicalDeserialize, CanonicalSerialize};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use sha2::Sha256;

use super::{Backend, PrimeGroup, Rng, ScalarField, SecpPoint};
use crate::wire::{Decode, Encode, Reader};
use crate::Error;

/// An element of the BLS12-381 scalar field.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct BlsScalar(pub Fr);

impl Add for BlsScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        BlsScalar(self.0 + rhs.0)
    }
}

impl Sub for BlsScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        BlsScalar(self.0 - rhs.0)
    }
}

impl Mul for BlsScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        BlsScalar(self.0 * rhs.0)
    }
}

impl Neg for BlsScalar {
    type Output = Self;
    fn neg(self) -> Self {
        BlsScalar(-self.0)
    }
}

impl Zero for BlsScalar {
    fn zero() -> Self {
        BlsScalar(Fr::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for BlsScalar {
    fn one() -> Self {
        BlsScalar(Fr::one())
    }
}

impl Encode for BlsScalar {
    fn encode(&self, out: &mut Vec<u8>) {
        let n: BigUint = self.0.into();
        let bytes = n.to_bytes_be();
        out.extend(std::iter::repeat(0).take(32 - bytes.len()));
        out.extend_from_slice(&bytes);
    }
}

impl Decode for BlsScalar {
    fn decode(r: &mut Reader<'_>) -> Result<Self, Error> {
        let n = BigUint::from_bytes_be(r.take(32)?);
        if n >= Fr::MODULUS.into() {
            return Err(Error::Decode("scalar out of range"));
        }
        Ok(BlsScalar(Fr::from(n)))
    }
}

impl ScalarField for BlsScalar {
    const BYTES: usize = 32;

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        BlsScalar(Fr::rand(rng))
    }

    fn invert(&self) -> Option<Self> {
        self.0.inverse().map(BlsScalar)
    }

    fn order() -> BigUint {
        Fr::MODULUS.into()
    }

    fn to_biguint(&self) -> BigUint {
        self.0.into()
    }

    fn from_biguint(n: &BigUint) -> Self {
        BlsScalar(Fr::from(n.clone()))
    }
}

fn encode_canonical<T: CanonicalSerialize>(x: &T, out: &mut Vec<u8>) {
    x.serialize_compressed(out).expect("writing to a Vec cannot fail");
}

/// Deserializes with subgroup checks and insists the input is the canonical
/// encoding of the result.
fn decode_canonical<T: CanonicalSerialize + CanonicalDeserialize>(
    r: &mut Reader<'_>,
    width: usize,
) -> Result<T, Error> {
    let bytes = r.take(width)?;
    let x = T::deserialize_compressed(bytes).map_err(|_| Error::Decode("invalid curve encoding"))?;
    let mut again = Vec::with_capacity(width);
    encode_canonical(&x, &mut again);
    if again != bytes {
        return Err(Error::Decode("non-canonical curve encoding"));
    }
    Ok(x)
}

macro_rules! curve_group {
    ($(#[$doc:meta])* $name:ident, $inner:ty, $affine:ty, $width:expr) => {
        $(#[$doc])*
        #[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
        pub struct $name(pub $inner);

        impl Encode for $name {
            fn encode(&self, out: &mut Vec<u8>) {
                encode_canonical(&self.0.into_affine(), out);
            }
        }

        impl Decode for $name {
            fn decode(r: &mut Reader<'_>) -> Result<Self, Error> {
                decode_canonical::<$affine>(r, $width).map(|p| $name(p.into()))
            }
        }

        impl PrimeGroup for $name {
            type Scalar = BlsScalar;
            const BYTES: usize = $width;

            fn identity() -> Self {
                $name(<$inner>::zero())
            }
            fn generator() -> Self {
                $name(<$inner as ark_ec::PrimeGroup>::generator())
            }
            fn op(&self, other: &Self) -> Self {
                $name(self.0 + other.0)
            }
            fn inverse(&self) -> Self {
                $name(-self.0)
            }
            fn pow(&self, k: &BlsScalar) -> Self {
                $name(self.0 * k.0)
            }
        }
    };
}

curve_group!(
    /// A point of the prime-order subgroup of BLS12-381 G1, 48-byte compressed.
    BlsG1, G1Projective, G1Affine, 48
);
curve_group!(
    /// A point of BLS12-381 G2, 96-byte compressed.
    BlsG2, G2Projective, G2Affine, 96
);

/// An element of the order-ℓ subgroup of `F_{p^12}^*`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BlsGt(pub PairingOutput<Bls12_381>);

impl Encode for BlsGt {
    fn encode(&self, out: &mut Vec<u8>) {
        encode_canonical(&self.0, out);
    }
}

impl Decode for BlsGt {
    fn decode(r: &mut Reader<'_>) -> Result<Self, Error> {
        decode_canonical::<PairingOutput<Bls12_381>>(r, 576).map(BlsGt)
    }
}

impl PrimeGroup for BlsGt {
    type Scalar = BlsScalar;
    const BYTES: usize = 576;

    fn identity() -> Self {
        BlsGt(PairingOutput::zero())
    }
    fn generator() -> Self {
        BlsGt(<PairingOutput<Bls12_381> as ark_ec::PrimeGroup>::generator())
    }
    fn op(&self, other: &Self) -> Self {
        BlsGt(self.0 + other.0)
    }
    fn inverse(&self) -> Self {
        BlsGt(-self.0)
    }
    fn pow(&self, k: &BlsScalar) -> Self {
        BlsGt(self.0 * k.0)
    }
}

type G1Hasher = MapToCurveBasedHasher<G1Projective, DefaultFieldHasher<Sha256, 128>, WBMap<g1::Config>>;

/// BLS12-381 for signatures, commitments and KEM/DEM; secp256k1 for ElGamal
/// over byte strings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Bls;

impl Backend for Bls {
    type Scalar = BlsScalar;
    type G1 = BlsG1;
    type G2 = BlsG2;
    type Gt = BlsGt;
    type Msg = SecpPoint;

    const TAG: u8 = 0x02;
    const NAME: &'static str = "bls12-381";
    const PAILLIER_BITS: usize = 2048;

    fn pairing(a: &BlsG1, b: &BlsG2) -> BlsGt {
        BlsGt(Bls12_381::pairing(a.0, b.0))
    }

    fn hash_to_g1(domain: &[u8], msg: &[u8]) -> BlsG1 {
        let mut dst = b"OSG1-BLS12381G1-XMD:SHA-256-".to_vec();
        dst.extend_from_slice(domain);
        let hasher = G1Hasher::new(&dst).expect("valid hash-to-curve parameters");
        BlsG1(hasher.hash(msg).expect("hash to curve is total").into())
    }

    fn pedersen_h() -> BlsG1 {
        static H: OnceLock<BlsG1> = OnceLock::new();
        *H.get_or_init(|| Bls::hash_to_g1(b"pedersen-generator", b"h"))
    }
}
