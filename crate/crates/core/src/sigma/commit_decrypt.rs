//! Confirmation and denial that a Paillier ciphertext `e` encrypts an
//! opening `r` of a Pedersen commitment: `h^r = I` with `I = c·g^{-M}`.
//!
//! The commitment lives in a group of order `ℓ` while Paillier works mod
//! `N`, so the response is an integer: `r' ← [0, 2^64·(|C|−1)·ℓ)`,
//! `z = r' + b·r` without reduction. The verifier checks `z` is in range,
//! compares `h^{z mod ℓ}` with `t1·I^b`, and checks with a nested N-th root
//! proof that `t2·e^b` encrypts `z`. `N` must exceed the range of `z` so
//! nothing wraps. Denial follows the same `b = 0` / `b ≠ 0` split as
//! [`ConfirmDeny`](super::ConfirmDeny).

use num_bigint::{BigUint, RandBigInt};
use num_traits::One;

use crate::groups::{PrimeGroup, Rng, ScalarField};
use crate::primitives::{PaillierKeys, PaillierPublic};
use crate::sigma::extract::precheck;
use crate::sigma::{to_scalar, Challenge, ChallengeSpace, Extract, Mode, NthRoot, Protocol, Transcript};
use crate::Error;

/// Statistical slack of the masking nonce, in bits.
const SLACK_BITS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommitDecrypt<G: PrimeGroup> {
    pub h: G,
    pub image: G,
    pub pk: PaillierPublic,
    pub e: BigUint,
    pub mode: Mode,
    pub space: ChallengeSpace,
}

crate::wire_struct!(CommitDecrypt<G: PrimeGroup> { h, image, pk, e, mode, space });

#[derive(Clone, Debug)]
pub enum CommitWitness {
    /// The confirmer's factorization.
    Key(Box<PaillierKeys>),
    /// The opening and the Paillier randomness that encrypted it.
    Opening { r: BigUint, rho: BigUint },
}

#[derive(Clone, Debug)]
pub struct CommitState {
    r_prime: BigUint,
    rho_prime: BigUint,
    k: BigUint,
    r: BigUint,
    rho: BigUint,
    inner: Option<(NthRoot, BigUint)>,
}

impl<G: PrimeGroup> CommitDecrypt<G> {
    /// Denial statements get binary challenges. Fails if `N` is too small
    /// for the integer response.
    pub fn new(h: G, image: G, pk: PaillierPublic, e: BigUint, mode: Mode) -> Result<Self, Error> {
        let space = match mode {
            Mode::Confirm => ChallengeSpace::full::<G::Scalar>(),
            Mode::Deny => ChallengeSpace::BINARY,
        };
        Self::with_space(h, image, pk, e, mode, space)
    }

    pub fn with_space(
        h: G,
        image: G,
        pk: PaillierPublic,
        e: BigUint,
        mode: Mode,
        space: ChallengeSpace,
    ) -> Result<Self, Error> {
        let stmt = CommitDecrypt { h, image, pk, e, mode, space };
        if stmt.z_bound() >= stmt.pk.n {
            return Err(Error::Parameter("Paillier modulus too small for the response range"));
        }
        Ok(stmt)
    }

    /// `2^64·(|C|−1)·ℓ`, the range of the masking nonce.
    pub fn nonce_bound(&self) -> BigUint {
        (BigUint::from(self.space.max()) * G::Scalar::order()) << SLACK_BITS
    }

    /// Every honest `z` is below `2^64·(|C|−1)·ℓ + (|C|−1)·ℓ`.
    pub fn z_bound(&self) -> BigUint {
        self.nonce_bound() + BigUint::from(self.space.max()) * G::Scalar::order()
    }

    fn shifted(&self, t2: &BigUint, b: Challenge) -> BigUint {
        self.pk.add(t2, &self.pk.scale(&self.e, &BigUint::from(b)))
    }

    fn relation(&self, z: &BigUint, t1: &G, b: Challenge) -> bool {
        let lhs = self.h.pow(&G::Scalar::from_biguint(z));
        let eq = lhs == t1.op(&self.image.pow(&to_scalar(b)));
        match self.mode {
            Mode::Confirm => eq,
            Mode::Deny => eq == (b == 0),
        }
    }

    /// The opening and its Paillier randomness, checked against `e`.
    fn opening(&self, w: &CommitWitness) -> Result<(BigUint, BigUint), Error> {
        match w {
            CommitWitness::Key(keys) => {
                if keys.public != self.pk {
                    return Err(Error::Refused("key does not match the public key"));
                }
                keys.decrypt_full(&self.e).map_err(|_| Error::Refused("e is not a ciphertext"))
            }
            CommitWitness::Opening { r, rho } => {
                if self.pk.encrypt_with(r, rho) != self.e {
                    return Err(Error::Refused("opening does not match e"));
                }
                Ok((r.clone(), rho.clone()))
            }
        }
    }
}

impl<G: PrimeGroup> Protocol for CommitDecrypt<G> {
    const LABEL: &'static str = "commit-decrypt";
    const FIVE_MOVE: bool = true;

    type Witness = CommitWitness;
    /// `(r', ρ', k)`.
    type Nonce = (BigUint, BigUint, BigUint);
    /// `(z, randomness of t2·e^b, nested response, t1 preimage for denial)`.
    type SimNonce = (BigUint, BigUint, BigUint, G::Scalar);
    type State = CommitState;
    type First = (G, BigUint);
    type Second = (BigUint, BigUint);
    type Third = BigUint;

    fn space(&self) -> ChallengeSpace {
        self.space
    }

    fn inner_space(&self) -> ChallengeSpace {
        ChallengeSpace::full::<G::Scalar>()
    }

    fn nonce<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Nonce {
        (rng.gen_biguint_below(&self.nonce_bound()), self.pk.random_unit(rng), self.pk.random_unit(rng))
    }

    fn first(&self, w: &CommitWitness, (r_prime, rho_prime, k): Self::Nonce) -> Result<(Self::First, CommitState), Error> {
        let (r, rho) = self.opening(w)?;
        if r >= G::Scalar::order() {
            return Err(Error::Refused("decrypted opening is out of range"));
        }
        let holds = self.h.pow(&G::Scalar::from_biguint(&r)) == self.image;
        match self.mode {
            Mode::Confirm if !holds => return Err(Error::Refused("statement is false: cannot confirm")),
            Mode::Deny if holds => return Err(Error::Refused("statement is true: cannot deny")),
            _ => {}
        }
        let t1 = self.h.pow(&G::Scalar::from_biguint(&r_prime));
        let t2 = self.pk.encrypt_with(&r_prime, &rho_prime);
        Ok(((t1, t2), CommitState { r_prime, rho_prime, k, r, rho, inner: None }))
    }

    fn second(&self, _: &CommitWitness, st: &mut CommitState, b: Challenge) -> Result<Self::Second, Error> {
        let bb = BigUint::from(b);
        let z = &st.r_prime + &bb * &st.r;
        let rho2 = &st.rho_prime * st.rho.modpow(&bb, &self.pk.n) % &self.pk.n;
        let t2 = self.pk.encrypt_with(&st.r_prime, &st.rho_prime);
        let inner = NthRoot::encrypts(&self.pk, &self.shifted(&t2, b), &z, self.inner_space())
            .ok_or(Error::Refused("ciphertext is not a unit"))?;
        let (a, _) = inner.first(&rho2, st.k.clone())?;
        st.inner = Some((inner, rho2));
        Ok((z, a))
    }

    fn third(&self, _: &CommitWitness, st: &CommitState, c: Challenge) -> Result<BigUint, Error> {
        let (inner, rho2) = st.inner.as_ref().ok_or(Error::Refused("second move has not run"))?;
        inner.second(rho2, &mut st.k.clone(), c)
    }

    fn check(&self, t: &Transcript<Self>) -> bool {
        let (t1, t2) = &t.first;
        let (z, a) = &t.second;
        if z >= &self.z_bound() || !self.pk.is_ciphertext(t2) || !self.pk.is_ciphertext(&self.e) {
            return false;
        }
        let Some(inner) = NthRoot::encrypts(&self.pk, &self.shifted(t2, t.b), z, self.inner_space()) else {
            return false;
        };
        let nested = Transcript { first: a.clone(), b: t.c, second: t.third.clone(), c: 0, third: () };
        inner.check(&nested) && self.relation(z, t1, t.b)
    }

    fn sim_nonce<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::SimNonce {
        (
            rng.gen_biguint_below(&self.nonce_bound()),
            self.pk.random_unit(rng),
            self.pk.random_unit(rng),
            G::Scalar::random(rng),
        )
    }

    fn simulate_with(&self, b: Challenge, c: Challenge, (z, rho2, w, x): Self::SimNonce) -> Transcript<Self> {
        let n2 = self.pk.n_squared();
        let eb = self.pk.scale(&self.e, &BigUint::from(b)).modinv(n2).unwrap_or_else(BigUint::one);
        let t2 = self.pk.encrypt_with(&z, &rho2) * eb % n2;
        let target = self.h.pow(&G::Scalar::from_biguint(&z)).div(&self.image.pow(&to_scalar(b)));
        let t1 = match (self.mode, b) {
            (Mode::Confirm, _) | (Mode::Deny, 0) => target,
            (Mode::Deny, _) => {
                let t1 = self.h.pow(&x);
                if t1 == target {
                    self.h.pow(&(x + G::Scalar::one()))
                } else {
                    t1
                }
            }
        };
        let inner = NthRoot::encrypts(&self.pk, &self.shifted(&t2, b), &z, self.inner_space())
            .expect("simulated ciphertexts are units");
        let nested = inner.simulate_with(c, 0, w);
        Transcript { first: (t1, t2), b, second: (z, nested.first), c, third: nested.second }
    }
}

impl<G: PrimeGroup> Extract for CommitDecrypt<G> {
    type Extracted = G::Scalar;

    /// `r = (z1 − z2)/(b1 − b2) mod ℓ`.
    fn extract(&self, t1: &Transcript<Self>, t2: &Transcript<Self>) -> Result<G::Scalar, Error> {
        precheck(self, t1, t2)?;
        let dz = G::Scalar::from_biguint(&t1.second.0) - G::Scalar::from_biguint(&t2.second.0);
        let db = to_scalar::<G::Scalar>(t1.b) - to_scalar::<G::Scalar>(t2.b);
        Ok(dz * db.invert().ok_or(Error::Extraction("challenge difference not invertible"))?)
    }
}
