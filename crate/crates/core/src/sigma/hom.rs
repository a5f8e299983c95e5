//! Knowledge of a preimage under a group homomorphism:
//! `{s : f(s) = I}`.

use crate::groups::{Hom, PrimeGroup, Rng};
use crate::sigma::extract::{combine, precheck};
use crate::sigma::{to_scalar, Challenge, ChallengeSpace, Extract, Protocol, Transcript};
use crate::wire::Encode;
use crate::Error;

type Dom<H> = <H as Hom>::Domain;
type Cod<H> = <H as Hom>::Codomain;
type Scalar<H> = <Dom<H> as PrimeGroup>::Scalar;

#[derive(Clone, Debug)]
pub struct HomPreimage<H: Hom> {
    pub f: H,
    pub image: Cod<H>,
    pub space: ChallengeSpace,
}

impl<H: Hom> Encode for HomPreimage<H> {
    fn encode(&self, out: &mut Vec<u8>) {
        self.f.encode(out);
        self.image.encode(out);
        self.space.encode(out);
    }
}

impl<H: Hom> HomPreimage<H> {
    pub fn new(f: H, image: Cod<H>) -> Self {
        HomPreimage { f, image, space: ChallengeSpace::full::<Scalar<H>>() }
    }

    pub fn with_space(mut self, space: ChallengeSpace) -> Self {
        self.space = space;
        self
    }
}

impl<H: Hom> Protocol for HomPreimage<H> {
    const LABEL: &'static str = "hom-preimage";
    const FIVE_MOVE: bool = false;

    type Witness = Dom<H>;
    type Nonce = Dom<H>;
    type SimNonce = Dom<H>;
    type State = Dom<H>;
    type First = Cod<H>;
    type Second = Dom<H>;
    type Third = ();

    fn space(&self) -> ChallengeSpace {
        self.space
    }

    fn nonce<R: Rng + ?Sized>(&self, rng: &mut R) -> Dom<H> {
        Dom::<H>::random(rng)
    }

    /// `t1 = f(s')`.
    fn first(&self, s: &Dom<H>, s_prime: Dom<H>) -> Result<(Cod<H>, Dom<H>), Error> {
        if self.f.apply(s) != self.image {
            return Err(Error::Refused("witness is not a preimage"));
        }
        Ok((self.f.apply(&s_prime), s_prime))
    }

    /// `z = s' ∗ s^b`.
    fn second(&self, s: &Dom<H>, s_prime: &mut Dom<H>, b: Challenge) -> Result<Dom<H>, Error> {
        Ok(s_prime.op(&s.pow(&to_scalar(b))))
    }

    fn third(&self, _: &Dom<H>, _: &Dom<H>, _: Challenge) -> Result<(), Error> {
        Ok(())
    }

    /// `f(z) = t1 ∘ I^b`.
    fn check(&self, t: &Transcript<Self>) -> bool {
        self.f.apply(&t.second) == t.first.op(&self.image.pow(&to_scalar(t.b)))
    }

    fn sim_nonce<R: Rng + ?Sized>(&self, rng: &mut R) -> Dom<H> {
        Dom::<H>::random(rng)
    }

    /// `t1 = f(z) ∘ I^{-b}`.
    fn simulate_with(&self, b: Challenge, _c: Challenge, z: Dom<H>) -> Transcript<Self> {
        let t1 = self.f.apply(&z).div(&self.image.pow(&to_scalar(b)));
        Transcript { first: t1, b, second: z, c: 0, third: () }
    }
}

impl<H: Hom> Extract for HomPreimage<H> {
    type Extracted = Dom<H>;

    fn extract(&self, t1: &Transcript<Self>, t2: &Transcript<Self>) -> Result<Dom<H>, Error> {
        precheck(self, t1, t2)?;
        combine(&t1.second, &t2.second, t1.b, t2.b)
    }
}
