//! The order-101 subgroup of `Z_607^*`.
//!
//! Every element is `g^i` for `i < 101`, so discrete logarithms are table
//! lookups. The pairing `e(g^a, g^b) = g^{ab}` is computed exactly that way.
//! Nothing here is secure; the backend exists so that distributions and
//! extractors can be checked exhaustively.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use sha2::{Digest, Sha256};

use super::{Backend, MessageGroup, PrimeGroup, Rng, ScalarField};
use crate::wire::{Decode, Encode, Reader};
use crate::Error;

pub const TOY_MODULUS: u16 = 607;
pub const TOY_ORDER: u8 = 101;
pub const TOY_GENERATOR: u16 = 64;
/// Exponent of the second Pedersen generator `h = g^17`.
const PEDERSEN_LOG: u8 = 17;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ToyScalar(u8);

impl ToyScalar {
    pub fn new(v: u64) -> Self {
        ToyScalar((v % TOY_ORDER as u64) as u8)
    }

    pub fn value(&self) -> u8 {
        self.0
    }

    /// All 101 scalars in increasing order.
    pub fn all() -> impl Iterator<Item = ToyScalar> {
        (0..TOY_ORDER).map(ToyScalar)
    }
}

impl Add for ToyScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        ToyScalar::new(self.0 as u64 + rhs.0 as u64)
    }
}

impl Sub for ToyScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        ToyScalar::new(self.0 as u64 + TOY_ORDER as u64 - rhs.0 as u64)
    }
}

impl Mul for ToyScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        ToyScalar::new(self.0 as u64 * rhs.0 as u64)
    }
}

impl Neg for ToyScalar {
    type Output = Self;
    fn neg(self) -> Self {
        ToyScalar::zero() - self
    }
}

impl Zero for ToyScalar {
    fn zero() -> Self {
        ToyScalar(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for ToyScalar {
    fn one() -> Self {
        ToyScalar(1)
    }
}

impl Encode for ToyScalar {
    fn encode(&self, out: &mut Vec<u8>) {
        out.push(self.0);
    }
}

impl Decode for ToyScalar {
    fn decode(r: &mut Reader<'_>) -> Result<Self, Error> {
        let v = r.byte()?;
        if v >= TOY_ORDER {
            return Err(Error::Decode("scalar out of range"));
        }
        Ok(ToyScalar(v))
    }
}

impl ScalarField for ToyScalar {
    const BYTES: usize = 1;

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        use rand::Rng as _;
        ToyScalar(rng.gen_range(0..TOY_ORDER))
    }

    fn invert(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // Fermat: x^(ℓ-2).
        let mut acc = ToyScalar::one();
        for _ in 0..TOY_ORDER - 2 {
            acc = acc * *self;
        }
        Some(acc)
    }

    fn order() -> BigUint {
        BigUint::from(TOY_ORDER)
    }

    fn to_biguint(&self) -> BigUint {
        BigUint::from(self.0)
    }

    fn from_biguint(n: &BigUint) -> Self {
        let r = n % BigUint::from(TOY_ORDER);
        ToyScalar(r.to_u8().expect("reduced below 101"))
    }
}

/// An element of the order-101 subgroup, stored as its residue mod 607.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ToyElement(u16);

struct Tables {
    /// `powers[i] = g^i mod 607`.
    powers: [u16; TOY_ORDER as usize],
    /// `log[x] = i` with `g^i = x`, or `u8::MAX` outside the subgroup.
    log: [u8; TOY_MODULUS as usize],
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut powers = [0u16; TOY_ORDER as usize];
        let mut log = [u8::MAX; TOY_MODULUS as usize];
        let mut x: u32 = 1;
        for (i, p) in powers.iter_mut().enumerate() {
            *p = x as u16;
            log[x as usize] = i as u8;
            x = x * TOY_GENERATOR as u32 % TOY_MODULUS as u32;
        }
        Tables { powers, log }
    })
}

impl ToyElement {
    /// Residue mod 607, if it lies in the subgroup.
    pub fn from_residue(v: u16) -> Option<Self> {
        let t = tables();
        ((v as usize) < t.log.len() && t.log[v as usize] != u8::MAX).then_some(ToyElement(v))
    }

    pub fn residue(&self) -> u16 {
        self.0
    }

    /// Brute-force discrete logarithm to base `g`.
    pub fn log(&self) -> ToyScalar {
        ToyScalar(tables().log[self.0 as usize])
    }

    pub fn from_log(k: ToyScalar) -> Self {
        ToyElement(tables().powers[k.0 as usize])
    }

    /// All 101 elements, ordered by discrete log.
    pub fn all() -> impl Iterator<Item = ToyElement> {
        ToyScalar::all().map(ToyElement::from_log)
    }
}

impl Encode for ToyElement {
    fn encode(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.0.to_be_bytes());
    }
}

impl Decode for ToyElement {
    fn decode(r: &mut Reader<'_>) -> Result<Self, Error> {
        let b = r.take(2)?;
        ToyElement::from_residue(u16::from_be_bytes([b[0], b[1]]))
            .ok_or(Error::Decode("not in the order-101 subgroup"))
    }
}

impl PrimeGroup for ToyElement {
    type Scalar = ToyScalar;
    const BYTES: usize = 2;

    fn identity() -> Self {
        ToyElement(1)
    }

    fn generator() -> Self {
        ToyElement(TOY_GENERATOR)
    }

    fn op(&self, other: &Self) -> Self {
        ToyElement((self.0 as u32 * other.0 as u32 % TOY_MODULUS as u32) as u16)
    }

    fn inverse(&self) -> Self {
        ToyElement::from_log(-self.log())
    }

    fn pow(&self, k: &ToyScalar) -> Self {
        let mut acc: u32 = 1;
        let mut base = self.0 as u32;
        let mut e = k.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % TOY_MODULUS as u32;
            }
            base = base * base % TOY_MODULUS as u32;
            e >>= 1;
        }
        ToyElement(acc as u16)
    }
}

/// One-byte messages `v < 101` embed as `g^v`.
impl MessageGroup for ToyElement {
    const MAX_MESSAGE: usize = 1;

    fn encode_message(msg: &[u8]) -> Result<Self, Error> {
        match msg {
            [v] if *v < TOY_ORDER => Ok(ToyElement::from_log(ToyScalar(*v))),
            _ => Err(Error::Encode("toy messages are a single byte below 101")),
        }
    }

    fn decode_message(&self) -> Option<Vec<u8>> {
        Some(vec![self.log().0])
    }

    fn random_message<R: Rng + ?Sized>(rng: &mut R) -> Vec<u8> {
        vec![ToyScalar::random(rng).0]
    }
}

/// The toy pairing backend: G1 = G2 = GT = the order-101 subgroup.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Toy;

impl Backend for Toy {
    type Scalar = ToyScalar;
    type G1 = ToyElement;
    type G2 = ToyElement;
    type Gt = ToyElement;
    type Msg = ToyElement;

    const TAG: u8 = 0x01;
    const NAME: &'static str = "toy";
    const PAILLIER_BITS: usize = 128;

    fn pairing(a: &ToyElement, b: &ToyElement) -> ToyElement {
        ToyElement::generator().pow(&(a.log() * b.log()))
    }

    fn hash_to_g1(domain: &[u8], msg: &[u8]) -> ToyElement {
        let mut h = Sha256::new();
        h.update((domain.len() as u32).to_be_bytes());
        h.update(domain);
        h.update(msg);
        let k = BigUint::from_bytes_be(&h.finalize());
        ToyElement::generator().pow(&ToyScalar::from_biguint(&k))
    }

    fn pedersen_h() -> ToyElement {
        ToyElement::from_log(ToyScalar(PEDERSEN_LOG))
    }
}
