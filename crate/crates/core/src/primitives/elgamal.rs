//! ElGamal over any prime-order group, and the KEM/DEM pair it is built
//! from: `encap` outputs `(g^a, pk^a)` and the DEM is the one-time pad
//! `s ↦ s·k`.

use crate::groups::{PrimeGroup, Rng, ScalarField};
use crate::wire::{Decode, Encode, Reader};
use crate::Error;

/// `(c, e) = (g^a, M·pk^a)`. Componentwise multiplication is the ciphertext
/// group law.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ciphertext<G: PrimeGroup> {
    pub c: G,
    pub e: G,
}

crate::wire_struct!(Ciphertext<G: PrimeGroup> { c, e });

impl<G: PrimeGroup> Ciphertext<G> {
    /// The encryption of the identity under zero randomness.
    pub fn identity() -> Self {
        Ciphertext { c: G::identity(), e: G::identity() }
    }

    pub fn op(&self, other: &Self) -> Self {
        Ciphertext { c: self.c.op(&other.c), e: self.e.op(&other.e) }
    }

    pub fn pow(&self, k: &G::Scalar) -> Self {
        Ciphertext { c: self.c.pow(k), e: self.e.pow(k) }
    }

    pub fn inverse(&self) -> Self {
        Ciphertext { c: self.c.inverse(), e: self.e.inverse() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ElGamalKeys<G: PrimeGroup> {
    pub sk: G::Scalar,
    pub pk: G,
}

impl<G: PrimeGroup> Encode for ElGamalKeys<G> {
    fn encode(&self, out: &mut Vec<u8>) {
        self.sk.encode(out);
    }
}

impl<G: PrimeGroup> Decode for ElGamalKeys<G> {
    fn decode(r: &mut Reader<'_>) -> Result<Self, Error> {
        ElGamalKeys::from_secret(G::Scalar::decode(r)?)
    }
}

impl<G: PrimeGroup> ElGamalKeys<G> {
    pub fn generate<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_secret(G::Scalar::random_nonzero(rng)).expect("nonzero key")
    }

    pub fn from_secret(sk: G::Scalar) -> Result<Self, Error> {
        if num_traits::Zero::is_zero(&sk) {
            return Err(Error::Parameter("decryption key must be nonzero"));
        }
        Ok(ElGamalKeys { sk, pk: G::generator().pow(&sk) })
    }

    pub fn decrypt(&self, ct: &Ciphertext<G>) -> G {
        ct.e.div(&ct.c.pow(&self.sk))
    }

    pub fn decap(&self, c: &G) -> G {
        c.pow(&self.sk)
    }
}

pub fn encrypt_with<G: PrimeGroup>(pk: &G, m: &G, a: &G::Scalar) -> Ciphertext<G> {
    Ciphertext { c: G::generator().pow(a), e: m.op(&pk.pow(a)) }
}

/// Returns the ciphertext and the randomness used.
pub fn encrypt<G: PrimeGroup, R: Rng + ?Sized>(pk: &G, m: &G, rng: &mut R) -> (Ciphertext<G>, G::Scalar) {
    let a = G::Scalar::random(rng);
    (encrypt_with(pk, m, &a), a)
}

/// `(c, k) = (g^a, pk^a)`.
pub fn encap_with<G: PrimeGroup>(pk: &G, a: &G::Scalar) -> (G, G) {
    (G::generator().pow(a), pk.pow(a))
}

pub fn dem_encrypt<G: PrimeGroup>(k: &G, s: &G) -> G {
    s.op(k)
}

pub fn dem_decrypt<G: PrimeGroup>(k: &G, e: &G) -> G {
    e.div(k)
}
