//! Exact zero-knowledge checks on the toy backend, the non-transferability
//! distinguisher, and the challenge-guessing cheating prover.
//!
//! On the toy backend every nonce space is small enough to enumerate, so
//! the honest and simulated transcript distributions at a fixed challenge
//! can be compared as exact histograms rather than estimated.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::analysis::stats::{run_trials, GameReport, Kind, Tally};
use crate::groups::{PrimeGroup, ToyElement, ToyScalar};
use crate::sigma::{Challenge, Protocol, Transcript};
use crate::wire::Encode;
use crate::Error;

/// Transcript encodings with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Distribution {
    pub counts: HashMap<Vec<u8>, u64>,
    pub total: u64,
}

impl Distribution {
    fn from_transcripts<P: Protocol>(ts: impl ParallelIterator<Item = Result<Transcript<P>, Error>>) -> Result<Self, Error> {
        ts.try_fold(Distribution::default, |mut d, t| {
            *d.counts.entry(t?.to_bytes()).or_default() += 1;
            d.total += 1;
            Ok(d)
        })
        .try_reduce(Distribution::default, |mut a, b| {
            for (k, v) in b.counts {
                *a.counts.entry(k).or_default() += v;
            }
            a.total += b.total;
            Ok(a)
        })
    }

    /// The honest prover's transcripts at `(b, c)`, one per nonce.
    pub fn honest<P: Protocol>(stmt: &P, w: &P::Witness, nonces: &[P::Nonce], b: Challenge, c: Challenge) -> Result<Self, Error>
    where
        P::Nonce: Send + Sync,
        P::Witness: Sync,
    {
        Self::from_transcripts(nonces.par_iter().map(|n| stmt.prove_with(w, n.clone(), b, c)))
    }

    /// The simulator's transcripts at `(b, c)`, one per simulator nonce.
    pub fn simulated<P: Protocol>(stmt: &P, nonces: &[P::SimNonce], b: Challenge, c: Challenge) -> Self
    where
        P::SimNonce: Send + Sync,
    {
        Self::from_transcripts(nonces.par_iter().map(|n| Ok(stmt.simulate_with(b, c, n.clone()))))
            .expect("simulation is infallible")
    }

    /// Equal as probability distributions: every transcript has the same
    /// relative frequency in both.
    pub fn same_as(&self, other: &Distribution) -> bool {
        self.counts.len() == other.counts.len()
            && self.counts.iter().all(|(k, &a)| {
                other.counts.get(k).is_some_and(|&b| a as u128 * other.total as u128 == b as u128 * self.total as u128)
            })
    }
}

/// The optimal distinguisher between `real` and `sim` given one transcript
/// drawn from either with probability 1/2: it answers with whichever
/// distribution gives the transcript more weight. Its exact success rate
/// is `Σ max(p_real, p_sim) / 2`; the report carries that rate as a
/// fraction over the common denominator `2·|real|·|sim|`.
pub fn distinguisher(real: &Distribution, sim: &Distribution, scheme: &str, backend: &str) -> GameReport {
    let weight = |d: &Distribution, k: &Vec<u8>| d.counts.get(k).copied().unwrap_or(0);
    let mut wins = 0u64;
    for k in real.counts.keys().chain(sim.counts.keys().filter(|k| !real.counts.contains_key(*k))) {
        wins += (weight(real, k) * sim.total).max(weight(sim, k) * real.total);
    }
    let trials = 2 * real.total * sim.total;
    let tally = Tally { wins, losses: trials - wins, disqualified: 0 };
    GameReport::new("non-transferability", scheme, backend, "maximum-likelihood", Kind::Distinguishing, tally)
}

/// A prover without a witness that guesses the challenge `b̂`, sends the
/// first message of a transcript simulated at `b̂`, and answers with its
/// response whatever challenge arrives. Only three-move protocols.
pub fn guessing_prover<P: Protocol>(stmt: &P, trials: u64, seed: u64) -> Result<GameReport, Error> {
    if P::FIVE_MOVE {
        return Err(Error::Parameter("the guessing prover drives three-move protocols"));
    }
    let tally = run_trials(trials, seed, |rng| {
        let guess = stmt.space().sample(rng);
        let sim = stmt.simulate(guess, 0, rng);
        let b = stmt.space().sample(rng);
        stmt.verify(&Transcript { b, ..sim }).into()
    });
    Ok(GameReport::new("soundness", P::LABEL, "toy", "challenge-guess", Kind::Success, tally))
}

/// Every element of the toy group.
pub fn toy_elements() -> Vec<ToyElement> {
    ToyElement::all().collect()
}

/// `G × Z_101 × Z_101`: the nonce space of the decryption-knowledge
/// protocol, for the prover and the simulator alike.
pub fn toy_triples() -> Vec<(ToyElement, ToyScalar, ToyScalar)> {
    let mut out = Vec::with_capacity(101 * 101 * 101);
    for g in ToyElement::all() {
        for a in ToyScalar::all() {
            for k in ToyScalar::all() {
                out.push((g, a, k));
            }
        }
    }
    out
}

/// Simulator nonces of a confirmation with the denial-only component fixed:
/// in confirm mode the simulator never reads it.
pub fn toy_confirm_sim_nonces() -> Vec<((ToyElement, ToyScalar, ToyScalar), ToyElement)> {
    toy_triples().into_iter().map(|n| (n, ToyElement::identity())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::stats::trial_rng;
    use crate::groups::{PairingHom, Toy};
    use crate::primitives::elgamal::encrypt;
    use crate::primitives::{BlsKeys, ElGamalKeys};
    use crate::sigma::{ChallengeSpace, ConfirmDeny, DecKnowledge, DecWitness, HomPreimage, Mode, Path};

    fn schnorr_like() -> (HomPreimage<PairingHom<Toy>>, ToyElement) {
        let mut rng = trial_rng(1, 0);
        let keys = BlsKeys::<Toy>::generate(&mut rng);
        let sig = keys.sign(b"m");
        let (f, i) = keys.public.compute(b"m", &sig.r);
        (HomPreimage::new(f, i), sig.s)
    }

    #[test]
    fn hom_preimage_transcripts_match_at_every_challenge() {
        let (stmt, w) = schnorr_like();
        let nonces = toy_elements();
        for b in 0..101 {
            let real = Distribution::honest(&stmt, &w, &nonces, b, 0).unwrap();
            let sim = Distribution::simulated(&stmt, &nonces, b, 0);
            assert_eq!(real.counts.len(), 101);
            assert!(real.same_as(&sim), "b = {b}");
        }
    }

    #[test]
    fn distinguisher_reads_zero_on_equal_and_one_half_on_disjoint() {
        let (stmt, w) = schnorr_like();
        let nonces = toy_elements();
        let real = Distribution::honest(&stmt, &w, &nonces, 5, 0).unwrap();
        let sim = Distribution::simulated(&stmt, &nonces, 5, 0);
        let r = distinguisher(&real, &sim, "hom-preimage", "toy");
        assert_eq!((r.advantage(), r.wins * 2, r.trials), (0.0, r.trials, 2 * 101 * 101));
        let other = Distribution::simulated(&stmt, &nonces, 6, 0);
        assert_eq!(distinguisher(&real, &other, "hom-preimage", "toy").advantage(), 0.5);
        // Half the support against all of it: the distinguisher wins with
        // (50·(1/50) + 51·(1/101))/2 = 76/101.
        let half = Distribution::honest(&stmt, &w, &nonces[..50], 5, 0).unwrap();
        let r = distinguisher(&half, &real, "hom-preimage", "toy");
        assert!((r.advantage() - (76.0 / 101.0 - 0.5)).abs() < 1e-12, "{r}");
        assert!(!half.same_as(&real));
    }

    #[test]
    fn decryption_knowledge_is_exact_on_both_paths() {
        let mut rng = trial_rng(2, 0);
        let keys = ElGamalKeys::<ToyElement>::generate(&mut rng);
        let s = ToyElement::random(&mut rng);
        let (ct, a) = encrypt(&keys.pk, &s, &mut rng);
        let nonces = toy_triples();
        for (path, w) in [(Path::Key, DecWitness::Key(keys.sk)), (Path::Randomness, DecWitness::Randomness { s, a })] {
            let stmt = DecKnowledge::new(keys.pk, ct, path);
            let (b, c) = (37, 64);
            let real = Distribution::honest(&stmt, &w, &nonces, b, c).unwrap();
            assert!(real.same_as(&Distribution::simulated(&stmt, &nonces, b, c)));
        }
    }

    #[test]
    fn confirm_simulator_ignores_the_denial_component() {
        let mut rng = trial_rng(3, 0);
        let signer = BlsKeys::<Toy>::generate(&mut rng);
        let confirmer = ElGamalKeys::<ToyElement>::generate(&mut rng);
        let sig = signer.sign(b"m");
        let (f, i) = signer.public.compute(b"m", &sig.r);
        let (ct, _) = encrypt(&confirmer.pk, &sig.s, &mut rng);
        let stmt = ConfirmDeny::new(f, i, confirmer.pk, ct, Path::Key, Mode::Confirm);
        for _ in 0..200 {
            let n = stmt.sim_nonce(&mut rng);
            let x = ToyElement::random(&mut rng);
            assert_eq!(stmt.simulate_with(3, 4, n.clone()).to_bytes(), stmt.simulate_with(3, 4, (n.0, x)).to_bytes());
        }
    }

    #[test]
    fn guessing_prover_hits_one_over_c() {
        let (stmt, _) = schnorr_like();
        assert!(!stmt.image.is_identity());
        for size in [2u128, 16] {
            let r = guessing_prover(&stmt.clone().with_space(ChallengeSpace::Range(size)), 2000, size as u64).unwrap();
            let (lo, hi) = r.rate_interval();
            let p = 1.0 / size as f64;
            assert!(lo <= p && p <= hi, "{r}");
        }
        let mut rng = trial_rng(4, 0);
        let keys = ElGamalKeys::<ToyElement>::generate(&mut rng);
        let (ct, _) = encrypt(&keys.pk, &ToyElement::generator(), &mut rng);
        assert!(guessing_prover(&DecKnowledge::new(keys.pk, ct, Path::Key), 1, 0).is_err());
    }
}
