//! Confirmation and denial of an encrypted homomorphism preimage: the
//! plaintext `s` of `ct` satisfies `f(s) = I` (confirm) or `f(s) ≠ I`
//! (deny).
//!
//! The first message adds `t1 = f(s')` to the decryption-knowledge
//! commitment, binding the same `s'` on both sides. Confirmation accepts iff
//! `f(z) = t1 ∘ I^b`.
//!
//! Denial cannot use the mirrored check `f(z) ≠ t1 ∘ I^b` for every `b`: at
//! `b = 0` an honest prover always has `f(z) = t1`. The verifier therefore
//! demands equality at `b = 0` and inequality otherwise. A prover whose
//! statement is false can satisfy either branch but must commit to one
//! before seeing `b`, so denial runs with binary challenges (soundness error
//! 1/2) and is amplified by repetition.

use crate::groups::{Hom, PrimeGroup, Rng};
use crate::primitives::Ciphertext;
use crate::sigma::decrypt::DecState;
use crate::sigma::extract::{combine, precheck};
use crate::sigma::{to_scalar, Challenge, ChallengeSpace, DecKnowledge, DecWitness, Extract, Path, Protocol, Transcript};
use crate::wire::{Decode, Encode, Reader};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Confirm,
    Deny,
}

impl Encode for Mode {
    fn encode(&self, out: &mut Vec<u8>) {
        out.push(match self {
            Mode::Confirm => 0,
            Mode::Deny => 1,
        });
    }
}

impl Decode for Mode {
    fn decode(r: &mut Reader<'_>) -> Result<Self, Error> {
        match r.byte()? {
            0 => Ok(Mode::Confirm),
            1 => Ok(Mode::Deny),
            _ => Err(Error::Decode("unknown mode")),
        }
    }
}

type Dom<H> = <H as Hom>::Domain;
type Cod<H> = <H as Hom>::Codomain;

#[derive(Clone, Debug)]
pub struct ConfirmDeny<H: Hom> {
    pub f: H,
    pub image: Cod<H>,
    pub dec: DecKnowledge<Dom<H>>,
    pub mode: Mode,
}

impl<H: Hom> Encode for ConfirmDeny<H> {
    fn encode(&self, out: &mut Vec<u8>) {
        self.f.encode(out);
        self.image.encode(out);
        self.dec.encode(out);
        self.mode.encode(out);
    }
}

impl<H: Hom> ConfirmDeny<H> {
    /// Denial statements get binary challenges.
    pub fn new(f: H, image: Cod<H>, pk: Dom<H>, ct: Ciphertext<Dom<H>>, path: Path, mode: Mode) -> Self {
        let mut dec = DecKnowledge::new(pk, ct, path);
        if mode == Mode::Deny {
            dec.space = ChallengeSpace::BINARY;
        }
        ConfirmDeny { f, image, dec, mode }
    }

    pub fn with_space(mut self, space: ChallengeSpace) -> Self {
        self.dec.space = space;
        self
    }

    fn relation(&self, z: &Dom<H>, t1: &Cod<H>, b: Challenge) -> bool {
        let eq = self.f.apply(z) == t1.op(&self.image.pow(&to_scalar(b)));
        match self.mode {
            Mode::Confirm => eq,
            Mode::Deny => eq == (b == 0),
        }
    }
}

impl<H: Hom> Protocol for ConfirmDeny<H> {
    const LABEL: &'static str = "confirm-deny";
    const FIVE_MOVE: bool = true;

    type Witness = DecWitness<Dom<H>>;
    type Nonce = <DecKnowledge<Dom<H>> as Protocol>::Nonce;
    /// The decryption-knowledge simulator's nonce, plus a fresh preimage
    /// for the denial simulator's `t1`.
    type SimNonce = (<DecKnowledge<Dom<H>> as Protocol>::SimNonce, Dom<H>);
    type State = DecState<Dom<H>>;
    type First = (Cod<H>, Ciphertext<Dom<H>>);
    type Second = <DecKnowledge<Dom<H>> as Protocol>::Second;
    type Third = <DecKnowledge<Dom<H>> as Protocol>::Third;

    fn space(&self) -> ChallengeSpace {
        self.dec.space
    }

    fn inner_space(&self) -> ChallengeSpace {
        self.dec.inner_space()
    }

    fn nonce<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Nonce {
        self.dec.nonce(rng)
    }

    fn first(&self, w: &Self::Witness, nonce: Self::Nonce) -> Result<(Self::First, Self::State), Error> {
        let s = self.dec.plaintext(w)?;
        let holds = self.f.apply(&s) == self.image;
        match self.mode {
            Mode::Confirm if !holds => return Err(Error::Refused("statement is false: cannot confirm")),
            Mode::Deny if holds => return Err(Error::Refused("statement is true: cannot deny")),
            _ => {}
        }
        self.first_repeat(w, nonce)
    }

    fn first_repeat(&self, w: &Self::Witness, nonce: Self::Nonce) -> Result<(Self::First, Self::State), Error> {
        let (t2, st) = self.dec.first(w, nonce)?;
        Ok(((self.f.apply(&st.s_prime), t2), st))
    }

    fn second(&self, w: &Self::Witness, st: &mut Self::State, b: Challenge) -> Result<Self::Second, Error> {
        self.dec.second(w, st, b)
    }

    fn third(&self, w: &Self::Witness, st: &Self::State, c: Challenge) -> Result<Self::Third, Error> {
        self.dec.third(w, st, c)
    }

    fn check(&self, t: &Transcript<Self>) -> bool {
        let (t1, t2) = &t.first;
        let dec_t = Transcript { first: *t2, b: t.b, second: t.second, c: t.c, third: t.third };
        self.dec.check(&dec_t) && self.relation(&t.second.0, t1, t.b)
    }

    fn sim_nonce<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::SimNonce {
        (self.dec.sim_nonce(rng), Dom::<H>::random(rng))
    }

    /// Confirmation: `t1 = f(z) ∘ I^{-b}`. Denial: at `b = 0`, `t1 = f(z)`;
    /// otherwise `t1` is a random element of `f(G)` chosen independently of
    /// `z`, shifted by the generator in the negligible event that it hits
    /// the one value that fails verification.
    fn simulate_with(&self, b: Challenge, c: Challenge, (dec_nonce, x): Self::SimNonce) -> Transcript<Self> {
        let dt = self.dec.simulate_with(b, c, dec_nonce);
        let z = dt.second.0;
        let target = self.f.apply(&z).div(&self.image.pow(&to_scalar(b)));
        let t1 = match (self.mode, b) {
            (Mode::Confirm, _) | (Mode::Deny, 0) => target,
            (Mode::Deny, _) => {
                let t1 = self.f.apply(&x);
                if t1 == target {
                    self.f.apply(&x.op(&Dom::<H>::generator()))
                } else {
                    t1
                }
            }
        };
        Transcript { first: (t1, dt.first), b, second: dt.second, c, third: dt.third }
    }
}

impl<H: Hom> Extract for ConfirmDeny<H> {
    type Extracted = Dom<H>;

    fn extract(&self, t1: &Transcript<Self>, t2: &Transcript<Self>) -> Result<Dom<H>, Error> {
        precheck(self, t1, t2)?;
        combine(&t1.second.0, &t2.second.0, t1.b, t2.b)
    }
}
