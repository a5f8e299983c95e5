//! Paillier encryption with generator `1 + N`, so `c = r^N (1 + mN) mod N²`.
//!
//! Decryption is "full": knowing the factorization, the confirmer recovers
//! the plaintext and then the randomness `r` as an N-th root mod N.

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::groups::Rng;
use crate::wire::{Decode, Encode, Reader};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaillierPublic {
    pub n: BigUint,
    n2: BigUint,
}

impl Encode for PaillierPublic {
    fn encode(&self, out: &mut Vec<u8>) {
        self.n.encode(out);
    }
}

impl Decode for PaillierPublic {
    fn decode(r: &mut Reader<'_>) -> Result<Self, Error> {
        let n = BigUint::decode(r)?;
        if n.bits() < 16 || n.is_even() {
            return Err(Error::Decode("invalid Paillier modulus"));
        }
        Ok(PaillierPublic::new(n))
    }
}

impl PaillierPublic {
    pub fn new(n: BigUint) -> Self {
        let n2 = &n * &n;
        PaillierPublic { n, n2 }
    }

    pub fn n_squared(&self) -> &BigUint {
        &self.n2
    }

    /// A uniform element of `Z_N^*`.
    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> BigUint {
        loop {
            let r = rng.gen_biguint_below(&self.n);
            if !r.is_zero() && r.gcd(&self.n).is_one() {
                return r;
            }
        }
    }

    /// `r^N (1 + mN) mod N²`, with `m` reduced mod N.
    pub fn encrypt_with(&self, m: &BigUint, r: &BigUint) -> BigUint {
        let gm = (BigUint::one() + (m % &self.n) * &self.n) % &self.n2;
        r.modpow(&self.n, &self.n2) * gm % &self.n2
    }

    pub fn encrypt<R: Rng + ?Sized>(&self, m: &BigUint, rng: &mut R) -> (BigUint, BigUint) {
        let r = self.random_unit(rng);
        (self.encrypt_with(m, &r), r)
    }

    /// Ciphertexts are units of `Z_{N²}`.
    pub fn is_ciphertext(&self, c: &BigUint) -> bool {
        c < &self.n2 && !c.is_zero() && c.gcd(&self.n).is_one()
    }

    /// Homomorphic addition of plaintexts.
    pub fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a * b % &self.n2
    }

    /// Homomorphic multiplication of the plaintext by `k`.
    pub fn scale(&self, c: &BigUint, k: &BigUint) -> BigUint {
        c.modpow(k, &self.n2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaillierKeys {
    p: BigUint,
    q: BigUint,
    pub public: PaillierPublic,
    lambda: BigUint,
    mu: BigUint,
    /// `N^{-1} mod (p−1)` and `mod (q−1)`, for N-th roots.
    root_p: BigUint,
    root_q: BigUint,
}

impl Encode for PaillierKeys {
    fn encode(&self, out: &mut Vec<u8>) {
        self.p.encode(out);
        self.q.encode(out);
    }
}

impl Decode for PaillierKeys {
    fn decode(r: &mut Reader<'_>) -> Result<Self, Error> {
        let p = BigUint::decode(r)?;
        let q = BigUint::decode(r)?;
        PaillierKeys::from_primes(p, q).map_err(|_| Error::Decode("invalid Paillier factors"))
    }
}

fn random_prime<R: Rng + ?Sized>(bits: usize, rng: &mut R) -> BigUint {
    loop {
        let mut candidate = rng.gen_biguint(bits as u64);
        // Top two bits set so the product has exactly 2·bits bits.
        candidate.set_bit(bits as u64 - 1, true);
        candidate.set_bit(bits as u64 - 2, true);
        candidate.set_bit(0, true);
        if glass_pumpkin::prime::strong_check_with(&candidate, rng) {
            return candidate;
        }
    }
}

impl PaillierKeys {
    /// A fresh key with a `bits`-bit modulus.
    pub fn generate<R: Rng + ?Sized>(bits: usize, rng: &mut R) -> Self {
        assert!(bits >= 32 && bits % 2 == 0, "modulus size must be even and at least 32 bits");
        loop {
            let p = random_prime(bits / 2, rng);
            let q = random_prime(bits / 2, rng);
            if let Ok(keys) = Self::from_primes(p, q) {
                return keys;
            }
        }
    }

    /// Builds a key from its factors. Primality is the caller's
    /// responsibility; structural conditions are checked here.
    pub fn from_primes(p: BigUint, q: BigUint) -> Result<Self, Error> {
        let one = BigUint::one();
        if p == q || p <= one || q <= one || p.is_even() || q.is_even() {
            return Err(Error::Parameter("Paillier factors must be distinct odd integers"));
        }
        let n = &p * &q;
        let (p1, q1) = (&p - 1u32, &q - 1u32);
        let phi = &p1 * &q1;
        if !n.gcd(&phi).is_one() {
            return Err(Error::Parameter("gcd(N, φ(N)) must be 1"));
        }
        let lambda = p1.lcm(&q1);
        // With g = 1 + N, L(g^λ mod N²) = λ mod N.
        let mu = (&lambda % &n).modinv(&n).ok_or(Error::Parameter("λ not invertible mod N"))?;
        let root_p = (&n % &p1).modinv(&p1).ok_or(Error::Parameter("N not invertible mod p−1"))?;
        let root_q = (&n % &q1).modinv(&q1).ok_or(Error::Parameter("N not invertible mod q−1"))?;
        Ok(PaillierKeys { p, q, public: PaillierPublic::new(n), lambda, mu, root_p, root_q })
    }

    pub fn decrypt(&self, c: &BigUint) -> Result<BigUint, Error> {
        let pk = &self.public;
        if !pk.is_ciphertext(c) {
            return Err(Error::Decode("not a unit mod N²"));
        }
        let u = c.modpow(&self.lambda, &pk.n2);
        let l = (u - 1u32) / &pk.n;
        Ok(l * &self.mu % &pk.n)
    }

    /// Plaintext and randomness.
    pub fn decrypt_full(&self, c: &BigUint) -> Result<(BigUint, BigUint), Error> {
        let m = self.decrypt(c)?;
        // c mod p = r^N mod p, so r mod p = (c mod p)^{N^{-1} mod (p−1)}.
        let rp = (c % &self.p).modpow(&self.root_p, &self.p);
        let rq = (c % &self.q).modpow(&self.root_q, &self.q);
        Ok((m, self.crt(&rp, &rq)))
    }

    fn crt(&self, rp: &BigUint, rq: &BigUint) -> BigUint {
        let q_inv = self.q.modinv(&self.p).expect("distinct primes");
        let diff = (rp + &self.p - (rq % &self.p)) % &self.p;
        rq + &self.q * (diff * q_inv % &self.p)
    }
}
