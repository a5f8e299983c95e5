//! Chaum–Pedersen equality of discrete logarithms:
//! `∃x: h1 = g1^x ∧ h2 = g2^x`.

use crate::groups::{PrimeGroup, Rng, ScalarField};
use crate::primitives::Ciphertext;
use crate::sigma::{to_scalar, Challenge, ChallengeSpace, Extract, Protocol, Transcript};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dleq<G: PrimeGroup> {
    pub g1: G,
    pub h1: G,
    pub g2: G,
    pub h2: G,
    pub space: ChallengeSpace,
}

crate::wire_struct!(Dleq<G: PrimeGroup> { g1, h1, g2, h2, space });

impl<G: PrimeGroup> Dleq<G> {
    pub fn new(g1: G, h1: G, g2: G, h2: G) -> Self {
        Dleq { g1, h1, g2, h2, space: ChallengeSpace::full::<G::Scalar>() }
    }

    /// Knowledge of `x` with `y = g^x`, as the degenerate case `g1 = g2`.
    pub fn schnorr(y: G) -> Self {
        Self::new(G::generator(), y, G::generator(), y)
    }

    /// `M = Dec(ct)` via the key: `pk = g^sk` and `e/M = c^sk`.
    pub fn decrypts_with_key(pk: G, ct: &Ciphertext<G>, m: &G) -> Self {
        Self::new(G::generator(), pk, ct.c, ct.e.div(m))
    }

    /// `M = Dec(ct)` via the randomness: `c = g^a` and `e/M = pk^a`.
    pub fn decrypts_with_randomness(pk: G, ct: &Ciphertext<G>, m: &G) -> Self {
        Self::new(G::generator(), ct.c, pk, ct.e.div(m))
    }

    pub fn with_space(mut self, space: ChallengeSpace) -> Self {
        self.space = space;
        self
    }

    pub fn holds(&self, x: &G::Scalar) -> bool {
        self.g1.pow(x) == self.h1 && self.g2.pow(x) == self.h2
    }
}

impl<G: PrimeGroup> Protocol for Dleq<G> {
    const LABEL: &'static str = "dleq";
    const FIVE_MOVE: bool = false;

    type Witness = G::Scalar;
    type Nonce = G::Scalar;
    type SimNonce = G::Scalar;
    type State = G::Scalar;
    type First = (G, G);
    type Second = G::Scalar;
    type Third = ();

    fn space(&self) -> ChallengeSpace {
        self.space
    }

    fn nonce<R: Rng + ?Sized>(&self, rng: &mut R) -> G::Scalar {
        G::Scalar::random(rng)
    }

    fn first(&self, x: &G::Scalar, k: G::Scalar) -> Result<((G, G), G::Scalar), Error> {
        if !self.holds(x) {
            return Err(Error::Refused("witness does not satisfy the discrete-log equality"));
        }
        Ok(((self.g1.pow(&k), self.g2.pow(&k)), k))
    }

    fn second(&self, x: &G::Scalar, k: &mut G::Scalar, b: Challenge) -> Result<G::Scalar, Error> {
        Ok(*k + to_scalar::<G::Scalar>(b) * *x)
    }

    fn third(&self, _: &G::Scalar, _: &G::Scalar, _: Challenge) -> Result<(), Error> {
        Ok(())
    }

    fn check(&self, t: &Transcript<Self>) -> bool {
        let b = to_scalar::<G::Scalar>(t.b);
        let (a1, a2) = t.first;
        self.g1.pow(&t.second) == a1.op(&self.h1.pow(&b)) && self.g2.pow(&t.second) == a2.op(&self.h2.pow(&b))
    }

    fn sim_nonce<R: Rng + ?Sized>(&self, rng: &mut R) -> G::Scalar {
        G::Scalar::random(rng)
    }

    fn simulate_with(&self, b: Challenge, _c: Challenge, z: G::Scalar) -> Transcript<Self> {
        let bs = to_scalar::<G::Scalar>(b);
        let a1 = self.g1.pow(&z).div(&self.h1.pow(&bs));
        let a2 = self.g2.pow(&z).div(&self.h2.pow(&bs));
        Transcript { first: (a1, a2), b, second: z, c: 0, third: () }
    }
}

impl<G: PrimeGroup> Extract for Dleq<G> {
    type Extracted = G::Scalar;

    /// `x = (z1 − z2) / (b1 − b2)`.
    fn extract(&self, t1: &Transcript<Self>, t2: &Transcript<Self>) -> Result<G::Scalar, Error> {
        crate::sigma::extract::precheck(self, t1, t2)?;
        let db = to_scalar::<G::Scalar>(t1.b) - to_scalar::<G::Scalar>(t2.b);
        let inv = db.invert().ok_or(Error::Extraction("challenge difference not invertible"))?;
        Ok((t1.second - t2.second) * inv)
    }
}
