//! Trial bookkeeping: per-trial randomness, tallies, Wilson intervals and
//! the report type every experiment returns.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

/// The randomness stream of trial `index` under `seed`. Streams are
/// independent, so results do not depend on how trials are scheduled.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Wilson score interval for `wins` successes in `trials` Bernoulli trials.
pub fn wilson(wins: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = wins as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // The bounds are exactly 0 and 1 at the extremes; rounding would leave
    // residue there.
    let lo = if wins == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if wins == trials { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Win,
    Loss,
    /// The adversary made a forbidden query; the trial is not scored.
    Disqualified,
}

impl From<bool> for Outcome {
    fn from(win: bool) -> Self {
        if win {
            Outcome::Win
        } else {
            Outcome::Loss
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub wins: u64,
    pub losses: u64,
    pub disqualified: u64,
}

impl Tally {
    pub fn scored(&self) -> u64 {
        self.wins + self.losses
    }

    fn add(mut self, o: Outcome) -> Self {
        match o {
            Outcome::Win => self.wins += 1,
            Outcome::Loss => self.losses += 1,
            Outcome::Disqualified => self.disqualified += 1,
        }
        self
    }
}

/// Runs `trials` independent trials, trial `i` on stream `trial_rng(seed, i)`.
pub fn run_trials<F>(trials: u64, seed: u64, f: F) -> Tally
where
    F: Fn(&mut ChaCha20Rng) -> Outcome + Sync,
{
    (0..trials)
        .into_par_iter()
        .map(|i| f(&mut trial_rng(seed, i)))
        .fold(Tally::default, Tally::add)
        .reduce(Tally::default, |a, b| Tally {
            wins: a.wins + b.wins,
            losses: a.losses + b.losses,
            disqualified: a.disqualified + b.disqualified,
        })
}

/// How the advantage is read off the win rate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// The adversary guesses a bit: advantage `|p − 1/2|`.
    Distinguishing,
    /// The adversary must produce something: advantage `p`.
    Forgery,
    /// A correctness experiment: the rate is the fraction that passed.
    Success,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Distinguishing => "distinguishing",
            Kind::Forgery => "forgery",
            Kind::Success => "success",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GameReport {
    pub experiment: String,
    pub scheme: String,
    pub backend: String,
    pub adversary: String,
    pub kind: Kind,
    /// Scored trials; disqualified ones are counted separately.
    pub trials: u64,
    pub wins: u64,
    pub disqualified: u64,
}

impl GameReport {
    pub fn new(experiment: &str, scheme: &str, backend: &str, adversary: &str, kind: Kind, tally: Tally) -> Self {
        GameReport {
            experiment: experiment.into(),
            scheme: scheme.into(),
            backend: backend.into(),
            adversary: adversary.into(),
            kind,
            trials: tally.scored(),
            wins: tally.wins,
            disqualified: tally.disqualified,
        }
    }

    pub fn rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.wins as f64 / self.trials as f64
        }
    }

    pub fn advantage(&self) -> f64 {
        match self.kind {
            Kind::Distinguishing => (self.rate() - 0.5).abs(),
            Kind::Forgery | Kind::Success => self.rate(),
        }
    }

    /// Wilson 95% interval of the win rate.
    pub fn rate_interval(&self) -> (f64, f64) {
        wilson(self.wins, self.trials)
    }

    /// The image of [`rate_interval`](Self::rate_interval) under the
    /// advantage map.
    pub fn advantage_interval(&self) -> (f64, f64) {
        let (lo, hi) = self.rate_interval();
        match self.kind {
            Kind::Distinguishing if lo <= 0.5 && hi >= 0.5 => (0.0, (0.5 - lo).max(hi - 0.5)),
            Kind::Distinguishing => {
                let (a, b) = ((lo - 0.5).abs(), (hi - 0.5).abs());
                (a.min(b), a.max(b))
            }
            Kind::Forgery | Kind::Success => (lo, hi),
        }
    }

    pub fn advantage_consistent_with_zero(&self) -> bool {
        self.advantage_interval().0 == 0.0
    }

    pub fn all_won(&self) -> bool {
        self.trials > 0 && self.wins == self.trials && self.disqualified == 0
    }

    /// One tab-separated `key=value` line.
    pub fn record(&self) -> String {
        let (lo, hi) = self.advantage_interval();
        format!(
            "experiment={}\tscheme={}\tbackend={}\tadversary={}\tkind={}\ttrials={}\twins={}\tdisqualified={}\tadvantage={:.6}\tci_low={:.6}\tci_high={:.6}",
            self.experiment,
            self.scheme,
            self.backend,
            self.adversary,
            self.kind.name(),
            self.trials,
            self.wins,
            self.disqualified,
            self.advantage(),
            lo,
            hi
        )
    }
}

impl fmt::Display for GameReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.advantage_interval();
        write!(
            f,
            "{} {}/{} [{}]: {}/{} wins, advantage {:.4} (95% CI [{:.4}, {:.4}])",
            self.experiment,
            self.scheme,
            self.backend,
            self.adversary,
            self.wins,
            self.trials,
            self.advantage(),
            lo,
            hi
        )?;
        if self.disqualified > 0 {
            write!(f, ", {} disqualified", self.disqualified)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;

    #[test]
    fn wilson_matches_closed_form_values() {
        // Reference values from statsmodels' proportion_confint(method="wilson").
        let (lo, hi) = wilson(0, 200);
        assert_eq!(lo, 0.0);
        assert!((hi - 0.018845).abs() < 1e-5, "{hi}");
        let (lo, hi) = wilson(100, 200);
        assert!((lo - 0.431360).abs() < 1e-5, "{lo}");
        assert!((hi - 0.568640).abs() < 1e-5, "{hi}");
        let (lo, hi) = wilson(200, 200);
        assert!((lo - 0.981155).abs() < 1e-5, "{lo}");
        assert_eq!(hi, 1.0);
    }

    #[test]
    fn distinguishing_interval_folds_around_half() {
        let t = Tally { wins: 100, losses: 100, disqualified: 0 };
        let r = GameReport::new("inv-cma", "x", "toy", "guess", Kind::Distinguishing, t);
        assert_eq!(r.advantage(), 0.0);
        assert!(r.advantage_consistent_with_zero());
        let t = Tally { wins: 200, losses: 0, disqualified: 0 };
        let r = GameReport::new("inv-cma", "x", "toy", "guess", Kind::Distinguishing, t);
        assert_eq!(r.advantage(), 0.5);
        let (lo, hi) = r.advantage_interval();
        assert!(lo > 0.48 && hi == 0.5);
        assert!(!r.advantage_consistent_with_zero());
    }

    #[test]
    fn trials_are_schedule_independent() {
        let f = |rng: &mut ChaCha20Rng| Outcome::from(rng.next_u32() % 3 == 0);
        assert_eq!(run_trials(500, 7, f), run_trials(500, 7, f));
        let serial = (0..500).map(|i| f(&mut trial_rng(7, i))).fold(Tally::default(), Tally::add);
        assert_eq!(run_trials(500, 7, f), serial);
    }

    #[test]
    fn record_has_every_field() {
        let t = Tally { wins: 3, losses: 1, disqualified: 2 };
        let r = GameReport::new("euf-cma", "new-ste", "bls12-381", "random", Kind::Forgery, t);
        let rec = r.record();
        for key in ["experiment=euf-cma", "scheme=new-ste", "trials=4", "wins=3", "disqualified=2", "advantage=0.750000"] {
            assert!(rec.contains(key), "{rec}");
        }
        assert!(r.to_string().contains("2 disqualified"));
    }
}
