//! Special-soundness extraction.
//!
//! From two accepting transcripts that share a first message and differ in
//! `b`, a homomorphism preimage is `s = u^x ∗ (z1^{-1} ∗ z2)^y` where
//! `x·ℓ + y·(b2 − b1) = 1` and `f(u) = I^ℓ`. In a prime-order group
//! `I^ℓ` is the identity, so `u` is the identity too.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;

use crate::groups::{pow_signed, PrimeGroup};
use crate::sigma::{Challenge, Protocol, Transcript};
use crate::Error;

pub trait Extract: Protocol {
    type Extracted;

    fn extract(&self, t1: &Transcript<Self>, t2: &Transcript<Self>) -> Result<Self::Extracted, Error>;
}

/// Both transcripts accept, share the first message and differ in `b`.
pub fn precheck<P: Protocol>(stmt: &P, t1: &Transcript<P>, t2: &Transcript<P>) -> Result<(), Error> {
    if !stmt.verify(t1) || !stmt.verify(t2) {
        return Err(Error::Extraction("transcript does not verify"));
    }
    if t1.first != t2.first {
        return Err(Error::Extraction("transcripts do not share a first message"));
    }
    if t1.b == t2.b {
        return Err(Error::Extraction("challenges are equal"));
    }
    Ok(())
}

/// `(x, y)` with `x·order + y·(b2 − b1) = 1`.
pub fn bezout(order: &BigUint, b1: Challenge, b2: Challenge) -> Result<(BigInt, BigInt), Error> {
    let l = BigInt::from(order.clone());
    let d = BigInt::from(b2) - BigInt::from(b1);
    let e = l.extended_gcd(&d);
    if !e.gcd.is_one() {
        return Err(Error::Extraction("gcd(b2 − b1, ℓ) ≠ 1"));
    }
    Ok((e.x, e.y))
}

/// `u^x ∗ (z1^{-1} ∗ z2)^y` with `u` the identity.
pub fn combine<G: PrimeGroup>(z1: &G, z2: &G, b1: Challenge, b2: Challenge) -> Result<G, Error> {
    use crate::groups::ScalarField;
    let (x, y) = bezout(&G::Scalar::order(), b1, b2)?;
    let u = G::identity();
    Ok(pow_signed(&u, &x).op(&pow_signed(&z1.inverse().op(z2), &y)))
}
