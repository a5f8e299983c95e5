//! Composition: conjunction with a shared challenge, disjunction with a
//! split challenge, and parallel repetition of binary-challenge protocols.

use crate::groups::Rng;
use crate::sigma::{Challenge, ChallengeSpace, Protocol, Transcript};
use crate::wire::Encode;
use crate::Error;

/// Second challenge a component actually sees.
fn c_for<P: Protocol>(c: Challenge) -> Challenge {
    if P::FIVE_MOVE {
        c
    } else {
        0
    }
}

fn split<P: Protocol>(t: &Transcript<P>) -> (P::First, Challenge, P::Second, Challenge, P::Third) {
    (t.first.clone(), t.b, t.second.clone(), t.c, t.third.clone())
}

/// Both statements, proven in parallel under one challenge.
#[derive(Clone, Debug)]
pub struct And<P, Q> {
    pub left: P,
    pub right: Q,
}

impl<P: Encode, Q: Encode> Encode for And<P, Q> {
    fn encode(&self, out: &mut Vec<u8>) {
        self.left.encode(out);
        self.right.encode(out);
    }
}

impl<P: Protocol, Q: Protocol> And<P, Q> {
    pub fn new(left: P, right: Q) -> Result<Self, Error> {
        if left.space() != right.space() || (P::FIVE_MOVE && Q::FIVE_MOVE && left.inner_space() != right.inner_space())
        {
            return Err(Error::Parameter("conjuncts must share challenge spaces"));
        }
        Ok(And { left, right })
    }
}

impl<P: Protocol, Q: Protocol> Protocol for And<P, Q> {
    const LABEL: &'static str = "and";
    const FIVE_MOVE: bool = P::FIVE_MOVE || Q::FIVE_MOVE;

    type Witness = (P::Witness, Q::Witness);
    type Nonce = (P::Nonce, Q::Nonce);
    type SimNonce = (P::SimNonce, Q::SimNonce);
    type State = (P::State, Q::State);
    type First = (P::First, Q::First);
    type Second = (P::Second, Q::Second);
    type Third = (P::Third, Q::Third);

    fn space(&self) -> ChallengeSpace {
        self.left.space()
    }

    fn inner_space(&self) -> ChallengeSpace {
        if P::FIVE_MOVE {
            self.left.inner_space()
        } else {
            self.right.inner_space()
        }
    }

    fn nonce<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Nonce {
        (self.left.nonce(rng), self.right.nonce(rng))
    }

    fn first(&self, w: &Self::Witness, n: Self::Nonce) -> Result<(Self::First, Self::State), Error> {
        let (f1, s1) = self.left.first(&w.0, n.0)?;
        let (f2, s2) = self.right.first(&w.1, n.1)?;
        Ok(((f1, f2), (s1, s2)))
    }

    fn first_repeat(&self, w: &Self::Witness, n: Self::Nonce) -> Result<(Self::First, Self::State), Error> {
        let (f1, s1) = self.left.first_repeat(&w.0, n.0)?;
        let (f2, s2) = self.right.first_repeat(&w.1, n.1)?;
        Ok(((f1, f2), (s1, s2)))
    }

    fn second(&self, w: &Self::Witness, st: &mut Self::State, b: Challenge) -> Result<Self::Second, Error> {
        Ok((self.left.second(&w.0, &mut st.0, b)?, self.right.second(&w.1, &mut st.1, b)?))
    }

    fn third(&self, w: &Self::Witness, st: &Self::State, c: Challenge) -> Result<Self::Third, Error> {
        Ok((self.left.third(&w.0, &st.0, c_for::<P>(c))?, self.right.third(&w.1, &st.1, c_for::<Q>(c))?))
    }

    fn check(&self, t: &Transcript<Self>) -> bool {
        let (l, r) = self.parts(t);
        self.left.check(&l) && self.right.check(&r)
    }

    fn sim_nonce<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::SimNonce {
        (self.left.sim_nonce(rng), self.right.sim_nonce(rng))
    }

    fn simulate_with(&self, b: Challenge, c: Challenge, n: Self::SimNonce) -> Transcript<Self> {
        let l = self.left.simulate_with(b, c_for::<P>(c), n.0);
        let r = self.right.simulate_with(b, c_for::<Q>(c), n.1);
        Transcript { first: (l.first, r.first), b, second: (l.second, r.second), c, third: (l.third, r.third) }
    }
}

impl<P: Protocol, Q: Protocol> And<P, Q> {
    /// The component transcripts.
    pub fn parts(&self, t: &Transcript<Self>) -> (Transcript<P>, Transcript<Q>) {
        let l = Transcript {
            first: t.first.0.clone(),
            b: t.b,
            second: t.second.0.clone(),
            c: c_for::<P>(t.c),
            third: t.third.0.clone(),
        };
        let r = Transcript {
            first: t.first.1.clone(),
            b: t.b,
            second: t.second.1.clone(),
            c: c_for::<Q>(t.c),
            third: t.third.1.clone(),
        };
        (l, r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Either<L, R> {
    Left(L),
    Right(R),
}

/// At least one of two statements. The prover simulates the branch it has
/// no witness for at self-chosen challenges `(b_sim, c_sim)` and answers the
/// other branch at `b − b_sim` and `c − c_sim`. The transcript carries the
/// left branch's challenges; the verifier derives the right ones.
#[derive(Clone, Debug)]
pub struct Or<P, Q> {
    pub left: P,
    pub right: Q,
}

impl<P: Encode, Q: Encode> Encode for Or<P, Q> {
    fn encode(&self, out: &mut Vec<u8>) {
        self.left.encode(out);
        self.right.encode(out);
    }
}

impl<P: Protocol, Q: Protocol> Or<P, Q> {
    pub fn new(left: P, right: Q) -> Result<Self, Error> {
        if left.space() != right.space() || (Self::FIVE_MOVE && left.inner_space() != right.inner_space()) {
            return Err(Error::Parameter("disjuncts must share challenge spaces"));
        }
        Ok(Or { left, right })
    }
}

/// Prover-side state of an OR proof.
#[derive(Clone, Debug)]
pub enum OrState<P: Protocol, Q: Protocol> {
    Left(P::State, Transcript<Q>),
    Right(Transcript<P>, Q::State),
}

impl<P: Protocol, Q: Protocol> Protocol for Or<P, Q> {
    const LABEL: &'static str = "or";
    const FIVE_MOVE: bool = P::FIVE_MOVE || Q::FIVE_MOVE;

    type Witness = Either<P::Witness, Q::Witness>;
    /// Real-branch nonces for either side, simulated-branch nonces for either
    /// side, and the simulated branch's challenges.
    type Nonce = (P::Nonce, Q::Nonce, P::SimNonce, Q::SimNonce, Challenge, Challenge);
    /// Nonces for both simulators and the left branch's challenges.
    type SimNonce = (P::SimNonce, Q::SimNonce, Challenge, Challenge);
    type State = OrState<P, Q>;
    type First = (P::First, Q::First);
    /// `(b_left, left second, right second)`.
    type Second = (Challenge, P::Second, Q::Second);
    /// `(c_left, left third, right third)`.
    type Third = (Challenge, P::Third, Q::Third);

    fn space(&self) -> ChallengeSpace {
        self.left.space()
    }

    fn inner_space(&self) -> ChallengeSpace {
        if P::FIVE_MOVE {
            self.left.inner_space()
        } else {
            self.right.inner_space()
        }
    }

    fn nonce<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Nonce {
        (
            self.left.nonce(rng),
            self.right.nonce(rng),
            self.left.sim_nonce(rng),
            self.right.sim_nonce(rng),
            self.space().sample(rng),
            self.sample_c(rng),
        )
    }

    fn first(&self, w: &Self::Witness, n: Self::Nonce) -> Result<(Self::First, Self::State), Error> {
        let (pn, qn, psn, qsn, b_sim, c_sim) = n;
        match w {
            Either::Left(pw) => {
                let sim = self.right.simulate_with(b_sim, c_for::<Q>(c_sim), qsn);
                let (f, st) = self.left.first(pw, pn)?;
                Ok(((f, sim.first.clone()), OrState::Left(st, sim)))
            }
            Either::Right(qw) => {
                let sim = self.left.simulate_with(b_sim, c_for::<P>(c_sim), psn);
                let (f, st) = self.right.first(qw, qn)?;
                Ok(((sim.first.clone(), f), OrState::Right(sim, st)))
            }
        }
    }

    fn second(&self, w: &Self::Witness, st: &mut Self::State, b: Challenge) -> Result<Self::Second, Error> {
        let space = self.space();
        match (w, st) {
            (Either::Left(pw), OrState::Left(pst, sim)) => {
                let bl = space.sub(b, sim.b);
                Ok((bl, self.left.second(pw, pst, bl)?, sim.second.clone()))
            }
            (Either::Right(qw), OrState::Right(sim, qst)) => {
                let br = space.sub(b, sim.b);
                Ok((sim.b, sim.second.clone(), self.right.second(qw, qst, br)?))
            }
            _ => Err(Error::Refused("witness does not match prover state")),
        }
    }

    fn third(&self, w: &Self::Witness, st: &Self::State, c: Challenge) -> Result<Self::Third, Error> {
        let space = self.inner_space();
        match (w, st) {
            (Either::Left(pw), OrState::Left(pst, sim)) => {
                let cl = if Self::FIVE_MOVE { space.sub(c, sim.c) } else { 0 };
                Ok((cl, self.left.third(pw, pst, c_for::<P>(cl))?, sim.third.clone()))
            }
            (Either::Right(qw), OrState::Right(sim, qst)) => {
                let cr = if Self::FIVE_MOVE { space.sub(c, sim.c) } else { 0 };
                Ok((sim.c, sim.third.clone(), self.right.third(qw, qst, c_for::<Q>(cr))?))
            }
            _ => Err(Error::Refused("witness does not match prover state")),
        }
    }

    fn check(&self, t: &Transcript<Self>) -> bool {
        let (bl, cl) = (t.second.0, t.third.0);
        if !self.space().contains(bl) || (Self::FIVE_MOVE && !self.inner_space().contains(cl)) {
            return false;
        }
        if !Self::FIVE_MOVE && cl != 0 {
            return false;
        }
        let (l, r) = self.parts(t);
        self.left.verify(&l) && self.right.verify(&r)
    }

    fn sim_nonce<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::SimNonce {
        (self.left.sim_nonce(rng), self.right.sim_nonce(rng), self.space().sample(rng), self.sample_c(rng))
    }

    fn simulate_with(&self, b: Challenge, c: Challenge, n: Self::SimNonce) -> Transcript<Self> {
        let (psn, qsn, bl, cl) = n;
        let cl = if Self::FIVE_MOVE { cl } else { 0 };
        let br = self.space().sub(b, bl);
        let cr = if Self::FIVE_MOVE { self.inner_space().sub(c, cl) } else { 0 };
        let l = self.left.simulate_with(bl, c_for::<P>(cl), psn);
        let r = self.right.simulate_with(br, c_for::<Q>(cr), qsn);
        Transcript {
            first: (l.first, r.first),
            b,
            second: (bl, l.second, r.second),
            c,
            third: (cl, l.third, r.third),
        }
    }
}

impl<P: Protocol, Q: Protocol> Or<P, Q> {
    /// The branch transcripts with their derived challenges.
    pub fn parts(&self, t: &Transcript<Self>) -> (Transcript<P>, Transcript<Q>) {
        let (bl, cl) = (t.second.0, t.third.0);
        let br = self.space().sub(t.b, bl);
        let cr = if Self::FIVE_MOVE { self.inner_space().sub(t.c, cl) } else { 0 };
        let l = Transcript {
            first: t.first.0.clone(),
            b: bl,
            second: t.second.1.clone(),
            c: c_for::<P>(cl),
            third: t.third.1.clone(),
        };
        let r = Transcript {
            first: t.first.1.clone(),
            b: br,
            second: t.second.2.clone(),
            c: c_for::<Q>(cr),
            third: t.third.2.clone(),
        };
        (l, r)
    }
}

/// `k` parallel copies of a binary-challenge protocol. Bit `i` of `b` is
/// copy `i`'s challenge; the second challenge is shared.
#[derive(Clone, Debug)]
pub struct Repeated<P> {
    pub inner: P,
    pub copies: u32,
}

impl<P: Encode> Encode for Repeated<P> {
    fn encode(&self, out: &mut Vec<u8>) {
        self.inner.encode(out);
        self.copies.to_be_bytes().iter().for_each(|b| out.push(*b));
    }
}

impl<P: Protocol> Repeated<P> {
    pub fn new(inner: P, copies: u32) -> Result<Self, Error> {
        if inner.space() != ChallengeSpace::BINARY {
            return Err(Error::Parameter("repetition needs a binary challenge space"));
        }
        if copies == 0 || copies > 128 {
            return Err(Error::Parameter("between 1 and 128 copies"));
        }
        Ok(Repeated { inner, copies })
    }

    fn bit(b: Challenge, i: u32) -> Challenge {
        (b >> i) & 1
    }

    fn copy(&self, t: &Transcript<Self>, i: usize) -> Transcript<P> {
        Transcript {
            first: t.first[i].clone(),
            b: Self::bit(t.b, i as u32),
            second: t.second[i].clone(),
            c: t.c,
            third: t.third[i].clone(),
        }
    }
}

impl<P: Protocol> Protocol for Repeated<P> {
    const LABEL: &'static str = "repeated";
    const FIVE_MOVE: bool = P::FIVE_MOVE;

    type Witness = P::Witness;
    type Nonce = Vec<P::Nonce>;
    type SimNonce = Vec<P::SimNonce>;
    type State = Vec<P::State>;
    type First = Vec<P::First>;
    type Second = Vec<P::Second>;
    type Third = Vec<P::Third>;

    fn space(&self) -> ChallengeSpace {
        ChallengeSpace::bits(self.copies)
    }

    fn inner_space(&self) -> ChallengeSpace {
        self.inner.inner_space()
    }

    fn nonce<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Nonce {
        (0..self.copies).map(|_| self.inner.nonce(rng)).collect()
    }

    fn first(&self, w: &P::Witness, n: Self::Nonce) -> Result<(Self::First, Self::State), Error> {
        n.into_iter()
            .enumerate()
            .map(|(i, n)| if i == 0 { self.inner.first(w, n) } else { self.inner.first_repeat(w, n) })
            .collect::<Result<Vec<_>, _>>()
            .map(|v| v.into_iter().unzip())
    }

    fn second(&self, w: &P::Witness, st: &mut Self::State, b: Challenge) -> Result<Self::Second, Error> {
        st.iter_mut().enumerate().map(|(i, s)| self.inner.second(w, s, Self::bit(b, i as u32))).collect()
    }

    fn third(&self, w: &P::Witness, st: &Self::State, c: Challenge) -> Result<Self::Third, Error> {
        st.iter().map(|s| self.inner.third(w, s, c)).collect()
    }

    fn check(&self, t: &Transcript<Self>) -> bool {
        let k = self.copies as usize;
        t.first.len() == k
            && t.second.len() == k
            && t.third.len() == k
            && (0..k).all(|i| self.inner.check(&self.copy(t, i)))
    }

    fn sim_nonce<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::SimNonce {
        (0..self.copies).map(|_| self.inner.sim_nonce(rng)).collect()
    }

    fn simulate_with(&self, b: Challenge, c: Challenge, n: Self::SimNonce) -> Transcript<Self> {
        let parts: Vec<_> = n
            .into_iter()
            .enumerate()
            .map(|(i, n)| split(&self.inner.simulate_with(Self::bit(b, i as u32), c, n)))
            .collect();
        let mut t: Transcript<Self> = Transcript { first: Vec::new(), b, second: Vec::new(), c, third: Vec::new() };
        for (f, _, s, _, th) in parts {
            t.first.push(f);
            t.second.push(s);
            t.third.push(th);
        }
        t
    }
}

