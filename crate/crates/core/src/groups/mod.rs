//! Prime-order groups, their scalar fields, and the pairing backends.
//!
//! Two backends implement [`Backend`]: [`Toy`] is the order-101 subgroup of
//! `Z_607^*`, small enough that every discrete logarithm can be brute-forced,
//! and [`Bls`] is BLS12-381 with secp256k1 as the message group for ElGamal
//! over arbitrary byte strings.

mod bls;
mod secp;
mod toy;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{CryptoRng, RngCore};

use crate::wire::{Decode, Encode};

pub use bls::{Bls, BlsG1, BlsG2, BlsGt, BlsScalar};
pub use secp::{SecpPoint, SecpScalar};
pub use toy::{Toy, ToyElement, ToyScalar, TOY_GENERATOR, TOY_MODULUS, TOY_ORDER};

/// Any CSPRNG accepted by the library. Tests and the game harness use
/// seeded ChaCha streams.
pub trait Rng: RngCore + CryptoRng {}
impl<T: RngCore + CryptoRng> Rng for T {}

/// The scalar field `Z_ℓ` of a prime-order group.
pub trait ScalarField:
    Copy
    + Eq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Encode
    + Decode
    + 'static
{
    /// Fixed width of the big-endian encoding.
    const BYTES: usize;

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Uniform over `[1, ℓ)`.
    fn random_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let x = Self::random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    fn invert(&self) -> Option<Self>;

    fn order() -> BigUint;

    fn to_biguint(&self) -> BigUint;

    /// Reduces `n` modulo `ℓ`.
    fn from_biguint(n: &BigUint) -> Self;

    fn from_u128(n: u128) -> Self {
        Self::from_biguint(&BigUint::from(n))
    }

    /// Hashes arbitrary bytes to a scalar (wide reduction of SHA-512 output).
    fn hash(domain: &[u8], data: &[u8]) -> Self {
        use sha2::{Digest, Sha512};
        let mut h = Sha512::new();
        h.update((domain.len() as u32).to_be_bytes());
        h.update(domain);
        h.update(data);
        Self::from_biguint(&BigUint::from_bytes_be(&h.finalize()))
    }
}

/// A cyclic group of prime order `ℓ`, written multiplicatively.
pub trait PrimeGroup: Copy + Eq + Debug + Send + Sync + Encode + Decode + 'static {
    type Scalar: ScalarField;

    /// Fixed width of the canonical encoding.
    const BYTES: usize;

    fn identity() -> Self;
    fn generator() -> Self;
    /// The group law `∗`.
    fn op(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn pow(&self, k: &Self::Scalar) -> Self;

    fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// `self ∗ other^{-1}`.
    fn div(&self, other: &Self) -> Self {
        self.op(&other.inverse())
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::generator().pow(&Self::Scalar::random(rng))
    }
}

/// A group with a reversible embedding of short byte strings, used as the
/// ElGamal plaintext space for encrypt-then-sign style schemes.
pub trait MessageGroup: PrimeGroup {
    /// Longest byte string that [`encode_message`](Self::encode_message) accepts.
    const MAX_MESSAGE: usize;

    fn encode_message(msg: &[u8]) -> Result<Self, crate::Error>;

    /// Inverse of `encode_message`; `None` for elements outside its image.
    fn decode_message(&self) -> Option<Vec<u8>>;

    /// A uniformly random encodable message of the longest length.
    fn random_message<R: Rng + ?Sized>(rng: &mut R) -> Vec<u8> {
        let mut m = vec![0u8; Self::MAX_MESSAGE];
        rng.fill_bytes(&mut m);
        m
    }
}

/// A pairing-friendly instantiation: `e: G1 × G2 → GT` over a shared scalar
/// field, plus an independent message group for ElGamal over byte strings.
pub trait Backend: Copy + Debug + Default + PartialEq + Eq + Send + Sync + 'static {
    type Scalar: ScalarField;
    type G1: PrimeGroup<Scalar = Self::Scalar>;
    type G2: PrimeGroup<Scalar = Self::Scalar>;
    type Gt: PrimeGroup<Scalar = Self::Scalar>;
    type Msg: MessageGroup;

    /// One-byte tag identifying the backend on the wire.
    const TAG: u8;
    const NAME: &'static str;
    /// Width κ of an encoded G1 element.
    const KAPPA: usize = <Self::G1 as PrimeGroup>::BYTES;

    fn pairing(a: &Self::G1, b: &Self::G2) -> Self::Gt;

    /// Hash onto G1 under a domain separation tag.
    fn hash_to_g1(domain: &[u8], msg: &[u8]) -> Self::G1;

    /// Second Pedersen generator with no known discrete log to base `g`.
    fn pedersen_h() -> Self::G1;

    /// Paillier modulus size used by this backend.
    const PAILLIER_BITS: usize;
}

/// Exponent identity `pow(pow(x,a),b) = pow(x, a·b)` helper used in tests and
/// extractors: raises `x` to a signed integer.
pub fn pow_signed<G: PrimeGroup>(x: &G, k: &num_bigint::BigInt) -> G {
    let order = num_bigint::BigInt::from(G::Scalar::order());
    let reduced = num_integer::Integer::mod_floor(k, &order);
    let (_, mag) = reduced.into_parts();
    x.pow(&G::Scalar::from_biguint(&mag))
}

/// A homomorphism `f: (D, ∗) → (H, ∘)` between groups over the same scalar
/// field. The description is part of every statement that uses it, so it
/// encodes canonically.
pub trait Hom: Clone + Debug + Send + Sync + Encode {
    type Domain: PrimeGroup;
    type Codomain: PrimeGroup<Scalar = <Self::Domain as PrimeGroup>::Scalar>;

    fn apply(&self, x: &Self::Domain) -> Self::Codomain;
}

/// `f(x) = e(x, q)` for a fixed `q ∈ G2`; the BLS verification map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairingHom<B: Backend> {
    pub q: B::G2,
}

impl<B: Backend> PairingHom<B> {
    pub fn new(q: B::G2) -> Self {
        PairingHom { q }
    }
}

impl<B: Backend> Encode for PairingHom<B> {
    fn encode(&self, out: &mut Vec<u8>) {
        self.q.encode(out);
    }
}

impl<B: Backend> Hom for PairingHom<B> {
    type Domain = B::G1;
    type Codomain = B::Gt;

    fn apply(&self, x: &B::G1) -> B::Gt {
        B::pairing(x, &self.q)
    }
}

/// `f(x) = x`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IdentityHom<G>(std::marker::PhantomData<G>);

impl<G> IdentityHom<G> {
    pub fn new() -> Self {
        IdentityHom(std::marker::PhantomData)
    }
}

impl<G: PrimeGroup> Encode for IdentityHom<G> {
    fn encode(&self, _: &mut Vec<u8>) {}
}

impl<G: PrimeGroup> Hom for IdentityHom<G> {
    type Domain = G;
    type Codomain = G;

    fn apply(&self, x: &G) -> G {
        *x
    }
}
