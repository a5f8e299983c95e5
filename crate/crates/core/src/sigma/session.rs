//! Prover and verifier as separate state machines, for running a protocol
//! across a channel one message at a time.
//!
//! Optionally the verifier commits to its first challenge with a Pedersen
//! commitment before seeing the prover's first message, and opens it with
//! the challenge. This is the standard hardening for concurrent
//! composition; it is off unless requested.

use crate::groups::{Backend, Rng, ScalarField};
use crate::primitives::Pedersen;
use crate::sigma::{Challenge, Protocol, Transcript};
use crate::Error;

pub struct Prover<'a, P: Protocol> {
    stmt: &'a P,
    w: &'a P::Witness,
    state: Option<P::State>,
    moves: u8,
}

impl<'a, P: Protocol> Prover<'a, P> {
    pub fn new(stmt: &'a P, w: &'a P::Witness) -> Self {
        Prover { stmt, w, state: None, moves: 0 }
    }

    pub fn start<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<P::First, Error> {
        self.step(0)?;
        let (first, state) = self.stmt.first(self.w, self.stmt.nonce(rng))?;
        self.state = Some(state);
        Ok(first)
    }

    pub fn respond(&mut self, b: Challenge) -> Result<P::Second, Error> {
        self.step(1)?;
        if !self.stmt.space().contains(b) {
            return Err(Error::Refused("challenge out of range"));
        }
        let state = self.state.as_mut().expect("started");
        self.stmt.second(self.w, state, b)
    }

    pub fn finish(&mut self, c: Challenge) -> Result<P::Third, Error> {
        self.step(2)?;
        let state = self.state.as_ref().expect("started");
        self.stmt.third(self.w, state, c)
    }

    fn step(&mut self, expected: u8) -> Result<(), Error> {
        if self.moves != expected {
            return Err(Error::Refused("protocol message out of order"));
        }
        self.moves += 1;
        Ok(())
    }
}

pub struct Verifier<'a, P: Protocol> {
    stmt: &'a P,
    first: Option<P::First>,
    b: Option<Challenge>,
    second: Option<P::Second>,
    c: Option<Challenge>,
}

impl<'a, P: Protocol> Verifier<'a, P> {
    pub fn new(stmt: &'a P) -> Self {
        Verifier { stmt, first: None, b: None, second: None, c: None }
    }

    /// Pre-samples `b` and commits to it. The returned opening is sent
    /// along with `b` later.
    pub fn commit_challenge<B: Backend, R: Rng + ?Sized>(
        &mut self,
        rng: &mut R,
    ) -> (B::G1, B::Scalar) {
        let b = self.stmt.space().sample(rng);
        self.b = Some(b);
        let (com, opening) = Pedersen::<B>::commit_random(&B::Scalar::from_u128(b), rng);
        (com, opening)
    }

    pub fn receive_first<R: Rng + ?Sized>(&mut self, first: P::First, rng: &mut R) -> Result<Challenge, Error> {
        if self.first.is_some() {
            return Err(Error::Refused("first message already received"));
        }
        self.first = Some(first);
        Ok(*self.b.get_or_insert_with(|| self.stmt.space().sample(rng)))
    }

    pub fn receive_second<R: Rng + ?Sized>(&mut self, second: P::Second, rng: &mut R) -> Result<Challenge, Error> {
        if self.first.is_none() || self.second.is_some() {
            return Err(Error::Refused("protocol message out of order"));
        }
        self.second = Some(second);
        let c = self.stmt.sample_c(rng);
        self.c = Some(c);
        Ok(c)
    }

    /// The completed transcript and the verdict.
    pub fn receive_third(self, third: P::Third) -> Result<(Transcript<P>, bool), Error> {
        let (Some(first), Some(b), Some(second), Some(c)) = (self.first, self.b, self.second, self.c) else {
            return Err(Error::Refused("protocol message out of order"));
        };
        let t = Transcript { first, b, second, c, third };
        let ok = self.stmt.verify(&t);
        Ok((t, ok))
    }
}

/// Prover-side check of a committed challenge.
pub fn check_opening<B: Backend>(com: &B::G1, b: Challenge, opening: &B::Scalar) -> bool {
    Pedersen::<B>::open(com, &B::Scalar::from_u128(b), opening)
}
