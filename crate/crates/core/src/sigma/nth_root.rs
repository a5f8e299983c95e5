//! Knowledge of an N-th root mod N²: `{ρ : u = ρ^N mod N²}`. A Paillier
//! ciphertext `t` encrypts `z` iff `t·(1+N)^{-z}` is such a residue.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::groups::Rng;
use crate::primitives::PaillierPublic;
use crate::sigma::extract::precheck;
use crate::sigma::{Challenge, ChallengeSpace, Extract, Protocol, Transcript};

use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NthRoot {
    pub pk: PaillierPublic,
    pub u: BigUint,
    pub space: ChallengeSpace,
}

crate::wire_struct!(NthRoot { pk, u, space });

impl NthRoot {
    pub fn new(pk: PaillierPublic, u: BigUint, space: ChallengeSpace) -> Self {
        NthRoot { pk, u, space }
    }

    /// The statement that `t` encrypts `z`.
    pub fn encrypts(pk: &PaillierPublic, t: &BigUint, z: &BigUint, space: ChallengeSpace) -> Option<Self> {
        let n2 = pk.n_squared();
        let gz = (BigUint::one() + (z % &pk.n) * &pk.n) % n2;
        let u = t * gz.modinv(n2)? % n2;
        Some(NthRoot::new(pk.clone(), u, space))
    }

    fn is_unit_mod_n(&self, x: &BigUint) -> bool {
        x < &self.pk.n && x.gcd(&self.pk.n).is_one()
    }
}

impl Protocol for NthRoot {
    const LABEL: &'static str = "nth-root";
    const FIVE_MOVE: bool = false;

    type Witness = BigUint;
    type Nonce = BigUint;
    type SimNonce = BigUint;
    type State = BigUint;
    type First = BigUint;
    type Second = BigUint;
    type Third = ();

    fn space(&self) -> ChallengeSpace {
        self.space
    }

    fn nonce<R: Rng + ?Sized>(&self, rng: &mut R) -> BigUint {
        self.pk.random_unit(rng)
    }

    fn first(&self, rho: &BigUint, k: BigUint) -> Result<(BigUint, BigUint), Error> {
        if rho.modpow(&self.pk.n, self.pk.n_squared()) != self.u {
            return Err(Error::Refused("not an N-th root"));
        }
        Ok((k.modpow(&self.pk.n, self.pk.n_squared()), k))
    }

    /// `w = k·ρ^b mod N`.
    fn second(&self, rho: &BigUint, k: &mut BigUint, b: Challenge) -> Result<BigUint, Error> {
        Ok(&*k * rho.modpow(&BigUint::from(b), &self.pk.n) % &self.pk.n)
    }

    fn third(&self, _: &BigUint, _: &BigUint, _: Challenge) -> Result<(), Error> {
        Ok(())
    }

    /// `w^N = a·u^b mod N²`.
    fn check(&self, t: &Transcript<Self>) -> bool {
        let n2 = self.pk.n_squared();
        self.pk.is_ciphertext(&self.u)
            && self.pk.is_ciphertext(&t.first)
            && self.is_unit_mod_n(&t.second)
            && t.second.modpow(&self.pk.n, n2) == &t.first * self.u.modpow(&BigUint::from(t.b), n2) % n2
    }

    fn sim_nonce<R: Rng + ?Sized>(&self, rng: &mut R) -> BigUint {
        self.pk.random_unit(rng)
    }

    /// `a = w^N · u^{-b}`.
    fn simulate_with(&self, b: Challenge, _c: Challenge, w: BigUint) -> Transcript<Self> {
        let n2 = self.pk.n_squared();
        let ub = self.u.modpow(&BigUint::from(b), n2);
        let a = w.modpow(&self.pk.n, n2) * ub.modinv(n2).unwrap_or_default() % n2;
        Transcript { first: a, b, second: w, c: 0, third: () }
    }
}

fn pow_signed_mod(x: &BigUint, e: &BigInt, m: &BigUint) -> Option<BigUint> {
    let base = if e.is_negative() { x.modinv(m)? } else { x.clone() };
    Some(base.modpow(e.magnitude(), m))
}

impl Extract for NthRoot {
    type Extracted = BigUint;

    /// With `x·N + y·(b1 − b2) = 1`: `ρ = (u mod N)^x · (w1/w2)^y mod N`.
    fn extract(&self, t1: &Transcript<Self>, t2: &Transcript<Self>) -> Result<BigUint, Error> {
        precheck(self, t1, t2)?;
        let n = &self.pk.n;
        let n_int = BigInt::from(n.clone());
        let d = BigInt::from(t1.b) - BigInt::from(t2.b);
        let e = n_int.extended_gcd(&d);
        if !e.gcd.is_one() {
            return Err(Error::Extraction("challenge difference shares a factor with N"));
        }
        let ratio = &t1.second * t2.second.modinv(n).ok_or(Error::Extraction("response not a unit"))? % n;
        let lhs = pow_signed_mod(&(&self.u % n), &e.x, n).ok_or(Error::Extraction("u not a unit"))?;
        let rhs = pow_signed_mod(&ratio, &e.y, n).ok_or(Error::Extraction("ratio not a unit"))?;
        Ok(lhs * rhs % n)
    }
}

