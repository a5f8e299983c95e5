//! Sigma protocols.
//!
//! Every protocol here fits one five-move shape: the prover sends `first`,
//! the verifier a challenge `b`, the prover `second`, the verifier a second
//! challenge `c`, and the prover `third`. Protocols with a nested proof (the
//! decryption-knowledge family) use all five moves; plain three-move
//! protocols set `Third = ()` and require `c = 0`.
//!
//! A statement type is itself the protocol: its methods take `&self`. All
//! prover randomness is drawn up front as an explicit nonce, which lets
//! tests enumerate it exhaustively on the toy backend and lets extractors
//! fork a prover by cloning its state.

mod challenge;
mod commit_decrypt;
mod compose;
mod confirm;
mod decrypt;
mod dleq;
pub mod extract;
pub mod fs;
mod hom;
mod nth_root;
pub mod session;

use std::fmt::Debug;

use crate::groups::Rng;
use crate::wire::{Decode, Encode};
use crate::Error;

pub use challenge::{Challenge, ChallengeSpace};
pub use commit_decrypt::{CommitDecrypt, CommitWitness};
pub use compose::{And, Either, Or, Repeated};
pub use confirm::{ConfirmDeny, Mode};
pub use decrypt::{DecKnowledge, DecWitness, Path};
pub use dleq::Dleq;
pub use extract::Extract;
pub use hom::HomPreimage;
pub use nth_root::NthRoot;

/// Message types that travel on the wire.
pub trait Message: Encode + Decode + Clone + Debug + PartialEq + Send + Sync {}
impl<T: Encode + Decode + Clone + Debug + PartialEq + Send + Sync> Message for T {}

pub trait Protocol: Clone + Debug + Encode + Send + Sync + Sized {
    /// Domain separation label; also names the statement kind on the wire.
    const LABEL: &'static str;
    /// Whether the second challenge is used.
    const FIVE_MOVE: bool;

    type Witness;
    type Nonce: Clone;
    type SimNonce: Clone;
    type State: Clone;
    type First: Message;
    type Second: Message;
    type Third: Message;

    /// Space of the first challenge `b`.
    fn space(&self) -> ChallengeSpace;

    /// Space of the second challenge `c`.
    fn inner_space(&self) -> ChallengeSpace {
        self.space()
    }

    fn nonce<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Nonce;

    /// Checks the witness and produces the first message. A witness that
    /// does not satisfy the relation is refused.
    fn first(&self, w: &Self::Witness, nonce: Self::Nonce) -> Result<(Self::First, Self::State), Error>;

    /// The first message of a further parallel copy, once `first` has
    /// accepted the same witness. Expensive witness checks may be skipped.
    fn first_repeat(&self, w: &Self::Witness, nonce: Self::Nonce) -> Result<(Self::First, Self::State), Error> {
        self.first(w, nonce)
    }

    fn second(&self, w: &Self::Witness, state: &mut Self::State, b: Challenge) -> Result<Self::Second, Error>;

    fn third(&self, w: &Self::Witness, state: &Self::State, c: Challenge) -> Result<Self::Third, Error>;

    /// The verification equations, assuming challenges are in range.
    fn check(&self, t: &Transcript<Self>) -> bool;

    fn sim_nonce<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::SimNonce;

    /// An accepting transcript at the given challenges, built without a
    /// witness.
    fn simulate_with(&self, b: Challenge, c: Challenge, nonce: Self::SimNonce) -> Transcript<Self>;

    fn simulate<R: Rng + ?Sized>(&self, b: Challenge, c: Challenge, rng: &mut R) -> Transcript<Self> {
        let nonce = self.sim_nonce(rng);
        self.simulate_with(b, c, nonce)
    }

    /// Full verification: challenge ranges plus [`check`](Self::check).
    fn verify(&self, t: &Transcript<Self>) -> bool {
        let c_ok = if Self::FIVE_MOVE { self.inner_space().contains(t.c) } else { t.c == 0 };
        self.space().contains(t.b) && c_ok && self.check(t)
    }

    /// Samples a second challenge, or zero for three-move protocols.
    fn sample_c<R: Rng + ?Sized>(&self, rng: &mut R) -> Challenge {
        if Self::FIVE_MOVE {
            self.inner_space().sample(rng)
        } else {
            0
        }
    }

    /// Runs the honest prover on fixed challenges and a fixed nonce.
    fn prove_with(
        &self,
        w: &Self::Witness,
        nonce: Self::Nonce,
        b: Challenge,
        c: Challenge,
    ) -> Result<Transcript<Self>, Error> {
        let (first, mut state) = self.first(w, nonce)?;
        let second = self.second(w, &mut state, b)?;
        let third = self.third(w, &state, c)?;
        Ok(Transcript { first, b, second, c, third })
    }
}

/// `(first, b, second, c, third)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Transcript<P: Protocol> {
    pub first: P::First,
    pub b: Challenge,
    pub second: P::Second,
    pub c: Challenge,
    pub third: P::Third,
}

crate::wire_struct!(Transcript<P: Protocol> { first, b, second, c, third });

/// Both roles in one process with an honest verifier.
pub fn run<P: Protocol, R: Rng + ?Sized>(
    stmt: &P,
    w: &P::Witness,
    rng: &mut R,
) -> Result<(Transcript<P>, bool), Error> {
    let nonce = stmt.nonce(rng);
    let (first, mut state) = stmt.first(w, nonce)?;
    let b = stmt.space().sample(rng);
    let second = stmt.second(w, &mut state, b)?;
    let c = stmt.sample_c(rng);
    let third = stmt.third(w, &state, c)?;
    let t = Transcript { first, b, second, c, third };
    let ok = stmt.verify(&t);
    Ok((t, ok))
}

/// Runs one prover to its first message, then answers two different
/// challenges from cloned state: the rewinding step of special soundness.
pub fn fork<P: Protocol, R: Rng + ?Sized>(
    stmt: &P,
    w: &P::Witness,
    b1: Challenge,
    b2: Challenge,
    rng: &mut R,
) -> Result<(Transcript<P>, Transcript<P>), Error> {
    let nonce = stmt.nonce(rng);
    let (first, state) = stmt.first(w, nonce)?;
    let mut run_branch = |b: Challenge, mut state: P::State| -> Result<Transcript<P>, Error> {
        let second = stmt.second(w, &mut state, b)?;
        let c = stmt.sample_c(rng);
        let third = stmt.third(w, &state, c)?;
        Ok(Transcript { first: first.clone(), b, second, c, third })
    };
    let t1 = run_branch(b1, state.clone())?;
    let t2 = run_branch(b2, state)?;
    Ok((t1, t2))
}

/// Challenge as a field element.
pub(crate) fn to_scalar<S: crate::groups::ScalarField>(b: Challenge) -> S {
    S::from_u128(b)
}

#[cfg(test)]
mod tests;
