//! Knowledge of the ElGamal decryption of a ciphertext:
//! `{s : s = Dec(ct)}`.
//!
//! The prover commits to `t2 = Enc(s'; a')`, answers `z = s' ∗ s^b`, and
//! then proves `z = Dec(t2 ∘ ct^b)` with a nested discrete-log equality.
//! That nested proof takes the decryption key (confirmer side) or the
//! combined randomness `a' + a·b` (signer side); the statement names which.

use crate::groups::{PrimeGroup, Rng, ScalarField};
use crate::primitives::elgamal::encrypt_with;
use crate::primitives::Ciphertext;
use crate::sigma::extract::{combine, precheck};
use crate::sigma::{to_scalar, Challenge, ChallengeSpace, Dleq, Extract, Protocol, Transcript};
use crate::wire::{Decode, Encode, Reader};
use crate::Error;

/// Which secret backs the nested proof.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Path {
    Key,
    Randomness,
}

impl Encode for Path {
    fn encode(&self, out: &mut Vec<u8>) {
        out.push(match self {
            Path::Key => 0,
            Path::Randomness => 1,
        });
    }
}

impl Decode for Path {
    fn decode(r: &mut Reader<'_>) -> Result<Self, Error> {
        match r.byte()? {
            0 => Ok(Path::Key),
            1 => Ok(Path::Randomness),
            _ => Err(Error::Decode("unknown witness path")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecWitness<G: PrimeGroup> {
    Key(G::Scalar),
    /// The plaintext and the encryption randomness.
    Randomness { s: G, a: G::Scalar },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecKnowledge<G: PrimeGroup> {
    pub pk: G,
    pub ct: Ciphertext<G>,
    pub path: Path,
    pub space: ChallengeSpace,
}

crate::wire_struct!(DecKnowledge<G: PrimeGroup> { pk, ct, path, space });

#[derive(Clone, Debug)]
pub struct DecState<G: PrimeGroup> {
    pub s_prime: G,
    a_prime: G::Scalar,
    k: G::Scalar,
    /// The plaintext of `ct`.
    s: G,
    /// Witness of the nested proof, set once `b` is known.
    inner: Option<(Dleq<G>, G::Scalar)>,
}

impl<G: PrimeGroup> DecKnowledge<G> {
    pub fn new(pk: G, ct: Ciphertext<G>, path: Path) -> Self {
        DecKnowledge { pk, ct, path, space: ChallengeSpace::full::<G::Scalar>() }
    }

    pub fn with_space(mut self, space: ChallengeSpace) -> Self {
        self.space = space;
        self
    }

    /// The nested statement `z = Dec(ct')` for `ct' = t2 ∘ ct^b`.
    pub fn inner_statement(&self, t2: &Ciphertext<G>, b: Challenge, z: &G) -> Dleq<G> {
        let shifted = t2.op(&self.ct.pow(&to_scalar(b)));
        match self.path {
            Path::Key => Dleq::decrypts_with_key(self.pk, &shifted, z),
            Path::Randomness => Dleq::decrypts_with_randomness(self.pk, &shifted, z),
        }
    }

    /// The plaintext the witness vouches for.
    pub fn plaintext(&self, w: &DecWitness<G>) -> Result<G, Error> {
        match (self.path, w) {
            (Path::Key, DecWitness::Key(sk)) => {
                if G::generator().pow(sk) != self.pk {
                    return Err(Error::Refused("key does not match the public key"));
                }
                Ok(self.ct.e.div(&self.ct.c.pow(sk)))
            }
            (Path::Randomness, DecWitness::Randomness { s, a }) => {
                if encrypt_with(&self.pk, s, a) != self.ct {
                    return Err(Error::Refused("randomness does not open the ciphertext"));
                }
                Ok(*s)
            }
            _ => Err(Error::Refused("witness kind does not match the statement")),
        }
    }
}

impl<G: PrimeGroup> Protocol for DecKnowledge<G> {
    const LABEL: &'static str = "decryption-knowledge";
    const FIVE_MOVE: bool = true;

    type Witness = DecWitness<G>;
    /// `(s', a', k)`: the committed plaintext, its randomness, and the
    /// nested proof's nonce.
    type Nonce = (G, G::Scalar, G::Scalar);
    /// `(z, ρ, nested response)`.
    type SimNonce = (G, G::Scalar, G::Scalar);
    type State = DecState<G>;
    type First = Ciphertext<G>;
    type Second = (G, (G, G));
    type Third = G::Scalar;

    fn space(&self) -> ChallengeSpace {
        self.space
    }

    fn inner_space(&self) -> ChallengeSpace {
        ChallengeSpace::full::<G::Scalar>()
    }

    fn nonce<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Nonce {
        (G::random(rng), G::Scalar::random(rng), G::Scalar::random(rng))
    }

    fn first(&self, w: &DecWitness<G>, (s_prime, a_prime, k): Self::Nonce) -> Result<(Ciphertext<G>, DecState<G>), Error> {
        let s = self.plaintext(w)?;
        let t2 = encrypt_with(&self.pk, &s_prime, &a_prime);
        Ok((t2, DecState { s_prime, a_prime, k, s, inner: None }))
    }

    fn second(&self, w: &DecWitness<G>, st: &mut DecState<G>, b: Challenge) -> Result<Self::Second, Error> {
        let bs: G::Scalar = to_scalar(b);
        let z = st.s_prime.op(&st.s.pow(&bs));
        let t2 = encrypt_with(&self.pk, &st.s_prime, &st.a_prime);
        let inner = self.inner_statement(&t2, b, &z).with_space(self.inner_space());
        let x = match w {
            DecWitness::Key(sk) => *sk,
            DecWitness::Randomness { a, .. } => st.a_prime + *a * bs,
        };
        let (commit, _) = inner.first(&x, st.k)?;
        st.inner = Some((inner, x));
        Ok((z, commit))
    }

    fn third(&self, _: &DecWitness<G>, st: &DecState<G>, c: Challenge) -> Result<G::Scalar, Error> {
        let (inner, x) = st.inner.as_ref().ok_or(Error::Refused("second move has not run"))?;
        let mut k = st.k;
        inner.second(x, &mut k, c)
    }

    fn check(&self, t: &Transcript<Self>) -> bool {
        let (z, commit) = &t.second;
        let inner = self.inner_statement(&t.first, t.b, z).with_space(self.inner_space());
        inner.check(&Transcript { first: *commit, b: t.c, second: t.third, c: 0, third: () })
    }

    fn sim_nonce<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::SimNonce {
        (G::random(rng), G::Scalar::random(rng), G::Scalar::random(rng))
    }

    /// `t2 = Enc(z; ρ) ∘ ct^{-b}`, then a simulated nested proof.
    fn simulate_with(&self, b: Challenge, c: Challenge, (z, rho, resp): Self::SimNonce) -> Transcript<Self> {
        let t2 = encrypt_with(&self.pk, &z, &rho).op(&self.ct.pow(&to_scalar(b)).inverse());
        let inner = self.inner_statement(&t2, b, &z).with_space(self.inner_space());
        let nested = inner.simulate_with(c, 0, resp);
        Transcript { first: t2, b, second: (z, nested.first), c, third: nested.second }
    }
}

impl<G: PrimeGroup> Extract for DecKnowledge<G> {
    type Extracted = G;

    /// The plaintext of `ct`: `u^x ∗ (z1^{-1} ∗ z2)^y`.
    fn extract(&self, t1: &Transcript<Self>, t2: &Transcript<Self>) -> Result<G, Error> {
        precheck(self, t1, t2)?;
        combine(&t1.second.0, &t2.second.0, t1.b, t2.b)
    }
}
