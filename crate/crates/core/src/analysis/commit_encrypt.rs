//! The commit-and-encrypt hiding game behind the invisibility of CtEtS.
//!
//! The challenger draws distinct nonces `r0 ≠ r1` and bits `b, b'`, and
//! hands out `c = Commit(m_b, r_{1−b'})` together with `e = Enc(r_{b'})`.
//! The adversary wins when its bit differs from `b`. Pedersen commitments
//! are perfectly hiding, so no strategy that cannot decrypt `e` does better
//! than a coin.

use num_bigint::BigUint;
use rand::Rng as _;
use rand_chacha::ChaCha20Rng;

use crate::analysis::stats::{run_trials, GameReport, Kind, Outcome};
use crate::groups::{Backend, ScalarField};
use crate::primitives::{PaillierKeys, PaillierPublic, Pedersen};
use crate::wire::Encode;

pub struct Challenge<B: Backend> {
    pub c: B::G1,
    pub e: BigUint,
}

pub trait CeAdversary<B: Backend>: Sync {
    fn name(&self) -> &'static str;

    /// Two distinct message scalars.
    fn choose(&self, rng: &mut ChaCha20Rng) -> (B::Scalar, B::Scalar) {
        let m0 = B::Scalar::random(rng);
        loop {
            let m1 = B::Scalar::random(rng);
            if m1 != m0 {
                return (m0, m1);
            }
        }
    }

    /// The bit `b_a`; the adversary wins if it differs from `b`.
    fn guess(
        &self,
        pk: &PaillierPublic,
        messages: &(B::Scalar, B::Scalar),
        ch: &Challenge<B>,
        rng: &mut ChaCha20Rng,
    ) -> bool;
}

/// Reads the answer off the low bit of the encoded commitment.
pub struct CommitmentBit;

impl<B: Backend> CeAdversary<B> for CommitmentBit {
    fn name(&self) -> &'static str {
        "commitment-bit"
    }

    fn guess(&self, _: &PaillierPublic, _: &(B::Scalar, B::Scalar), ch: &Challenge<B>, _: &mut ChaCha20Rng) -> bool {
        ch.c.to_bytes().last().is_some_and(|x| x & 1 == 1)
    }
}

/// Compares the commitment against `g^{m0}`: the quotient is `h^r`, and the
/// adversary bets on the parity of the ciphertext matching the parity of
/// its encoding.
pub struct OpeningParity;

impl<B: Backend> CeAdversary<B> for OpeningParity {
    fn name(&self) -> &'static str {
        "opening-parity"
    }

    fn guess(&self, _: &PaillierPublic, (m0, _): &(B::Scalar, B::Scalar), ch: &Challenge<B>, _: &mut ChaCha20Rng) -> bool {
        let quotient = Pedersen::<B>::image(&ch.c, m0).to_bytes();
        let q = quotient.last().copied().unwrap_or(0) & 1;
        (q == 1) == ch.e.bit(0)
    }
}

pub struct CeGuess;

impl<B: Backend> CeAdversary<B> for CeGuess {
    fn name(&self) -> &'static str {
        "guess"
    }

    fn guess(&self, _: &PaillierPublic, _: &(B::Scalar, B::Scalar), _: &Challenge<B>, rng: &mut ChaCha20Rng) -> bool {
        rng.gen_bool(0.5)
    }
}

pub fn game<B: Backend, A: CeAdversary<B>>(adv: &A, trials: u64, seed: u64) -> GameReport {
    let tally = run_trials(trials, seed, |rng| {
        let keys = PaillierKeys::generate(B::PAILLIER_BITS, rng);
        let messages = adv.choose(rng);
        if messages.0 == messages.1 {
            return Outcome::Disqualified;
        }
        let r0 = B::Scalar::random(rng);
        let r1 = loop {
            let r1 = B::Scalar::random(rng);
            if r1 != r0 {
                break r1;
            }
        };
        let (b, b2) = (rng.gen_bool(0.5), rng.gen_bool(0.5));
        let m = if b { messages.1 } else { messages.0 };
        let (committed, encrypted) = if b2 { (r0, r1) } else { (r1, r0) };
        let ch = Challenge { c: Pedersen::<B>::commit(&m, &committed), e: keys.public.encrypt(&encrypted.to_biguint(), rng).0 };
        (adv.guess(&keys.public, &messages, &ch, rng) != b).into()
    });
    GameReport::new("commit-encrypt", "ctets", B::NAME, adv.name(), Kind::Distinguishing, tally)
}
