//! Experiments for verifiable signcryption: completeness, unforgeability
//! against trivial strategies, and indistinguishability of a signcryption
//! from a random element of the signcryption space.

use rand::Rng as _;
use rand_chacha::ChaCha20Rng;

use crate::analysis::games::{accepts, Disqualified};
use crate::analysis::stats::{run_trials, GameReport, Kind, Outcome, Tally};
use crate::cdcs::Role;
use crate::groups::{Backend, MessageGroup, PrimeGroup, ScalarField};
use crate::primitives::elgamal::{encrypt, encrypt_with};
use crate::primitives::{BlsKeys, BlsPublic};
use crate::signcrypt::{
    self, receiver_validity_witness, sender_validity_witness, sig_extract, sig_verify, signcrypt, unsigncrypt,
    validity_statement, ReceiverKeys, ReceiverPublic, Signcryption,
};

const SCHEME: &str = "etste";

fn report<B: Backend>(experiment: &str, adversary: &str, kind: Kind, tally: Tally) -> GameReport {
    GameReport::new(experiment, SCHEME, B::NAME, adversary, kind, tally)
}

fn fork(rng: &mut ChaCha20Rng) -> ChaCha20Rng {
    rand::SeedableRng::from_rng(rng).expect("ChaCha never fails")
}

fn other_message<B: Backend>(m: &[u8], rng: &mut ChaCha20Rng) -> Vec<u8> {
    loop {
        let m2 = B::Msg::random_message(rng);
        if m2 != m {
            return m2;
        }
    }
}

/// One run of the completeness experiment:
///
/// 0. the receiver recovers `m`;
/// 1. the sender proves validity from its coins;
/// 2. the receiver proves validity from its keys;
/// 3. the receiver confirms `m` and denies a different message;
/// 4. the extracted signature and proof verify publicly on `m`;
///
/// and a uniform tuple from the signcryption space is rejected.
pub fn completeness_trial<B: Backend>(rng: &mut ChaCha20Rng) -> bool {
    let sender = BlsKeys::<B>::generate(rng);
    let receiver = ReceiverKeys::<B>::generate(rng);
    let (spk, rpk) = (sender.public, receiver.public());
    let m = B::Msg::random_message(rng);
    let Ok((mu, coins)) = signcrypt(&sender, &rpk, &m, rng) else { return false };
    let out0 = unsigncrypt(&receiver, &spk, &mu).as_deref() == Some(&m[..]);
    let out1 = sender_validity_witness(&spk, &rpk, &mu, &coins)
        .is_ok_and(|w| accepts(&validity_statement(&spk, &rpk, &mu, Role::Signer), &w, rng));
    let out2 = receiver_validity_witness(&receiver, &spk, &mu)
        .is_ok_and(|w| accepts(&validity_statement(&spk, &rpk, &mu, Role::Confirmer), &w, rng));
    let confirmed = signcrypt::confirm(&receiver, &spk, &mu, &m).is_ok_and(|(stmt, w)| accepts(&stmt, &w, rng));
    let m2 = other_message::<B>(&m, rng);
    let denied = signcrypt::deny(&receiver, &spk, &mu, &m2).is_ok_and(|(stmt, w)| accepts(&stmt, &w, rng));
    let out3 = confirmed && denied;
    let out4 = sig_extract(&receiver, &spk, &mu, &m, rng).is_some_and(|x| sig_verify(&spk, &rpk, &m, &x));
    // A sampled tuple is valid with probability 1/q, which is not negligible
    // on the toy group; the experiment is read as conditioned on invalidity.
    let psi = loop {
        let psi = Signcryption::<B>::sample(rng);
        if unsigncrypt(&receiver, &spk, &psi).is_none() {
            break psi;
        }
    };
    let rejected = signcrypt::confirm(&receiver, &spk, &psi, &m).is_err();
    out0 && out1 && out2 && out3 && out4 && rejected
}

pub fn completeness<B: Backend>(trials: u64, seed: u64) -> GameReport {
    let tally = run_trials(trials, seed, |rng| completeness_trial::<B>(rng).into());
    report::<B>("completeness", "honest", Kind::Success, tally)
}

/// Trivial forgery strategies. The forger holds the receiver's keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScForgeStrategy {
    /// A uniform well-formed tuple.
    RandomTuple,
    /// The message layer of one signcryption with the signature layer of
    /// another.
    Remix,
    /// The message layer re-encrypted to a new message, the rest kept.
    PadMaul,
}

impl ScForgeStrategy {
    pub const ALL: [ScForgeStrategy; 3] = [ScForgeStrategy::RandomTuple, ScForgeStrategy::Remix, ScForgeStrategy::PadMaul];

    pub fn name(self) -> &'static str {
        match self {
            ScForgeStrategy::RandomTuple => "random-tuple",
            ScForgeStrategy::Remix => "remix",
            ScForgeStrategy::PadMaul => "pad-maul",
        }
    }

    fn forge<B: Backend>(
        self,
        keys: &ReceiverKeys<B>,
        sign: &mut dyn FnMut(&[u8]) -> Signcryption<B>,
        rng: &mut ChaCha20Rng,
    ) -> Signcryption<B> {
        match self {
            ScForgeStrategy::RandomTuple => Signcryption::sample(rng),
            ScForgeStrategy::Remix => {
                let a = sign(&B::Msg::random_message(rng));
                let b = sign(&B::Msg::random_message(rng));
                Signcryption { e: a.e, ..b }
            }
            ScForgeStrategy::PadMaul => {
                let mu = sign(&B::Msg::random_message(rng));
                // Replace e by (c·g^δ, e·M'/M·pk^δ): an encryption of M'
                // under randomness shifted by δ.
                let target = B::Msg::encode_message(&B::Msg::random_message(rng)).expect("random messages encode");
                let m = keys.message.decrypt(&mu.e);
                let delta = <B::Msg as PrimeGroup>::Scalar::random(rng);
                let shift = encrypt_with(&keys.message.pk, &target.div(&m), &delta);
                Signcryption { e: mu.e.op(&shift), ..mu }
            }
        }
    }
}

/// The forger picks the receiver keys, may signcrypt any message, and wins
/// with a tuple that unsigncrypts to a message it never submitted.
pub fn euf_cma<B: Backend>(strategy: ScForgeStrategy, trials: u64, seed: u64) -> GameReport {
    let tally = run_trials(trials, seed, |rng| {
        let sender = BlsKeys::<B>::generate(rng);
        let receiver = ReceiverKeys::<B>::generate(rng);
        let rpk = receiver.public();
        let mut oracle_rng = fork(rng);
        let mut queried = Vec::new();
        let mut sign = |m: &[u8]| {
            queried.push(m.to_vec());
            signcrypt(&sender, &rpk, m, &mut oracle_rng).expect("random messages encode").0
        };
        let forged = strategy.forge(&receiver, &mut sign, rng);
        unsigncrypt(&receiver, &sender.public, &forged).is_some_and(|m| !queried.contains(&m)).into()
    });
    report::<B>("euf-cma", strategy.name(), Kind::Forgery, tally)
}

/// The oracles of the indistinguishability experiment.
pub struct ScOracles<B: Backend> {
    sender: BlsKeys<B>,
    receiver: ReceiverKeys<B>,
    rng: ChaCha20Rng,
    challenge: Option<Signcryption<B>>,
}

impl<B: Backend> ScOracles<B> {
    pub fn sender_pk(&self) -> &BlsPublic<B> {
        &self.sender.public
    }

    pub fn receiver_pk(&self) -> ReceiverPublic<B> {
        self.receiver.public()
    }

    fn check(&self, mu: &Signcryption<B>) -> Result<(), Disqualified> {
        if self.challenge.as_ref() == Some(mu) {
            Err(Disqualified)
        } else {
            Ok(())
        }
    }

    pub fn signcrypt(&mut self, m: &[u8]) -> Option<Signcryption<B>> {
        signcrypt(&self.sender, &self.receiver.public(), m, &mut self.rng).ok().map(|(mu, _)| mu)
    }

    /// The receiver's validity proof, as the adversary sees it accepted.
    pub fn prove_validity(&mut self, mu: &Signcryption<B>) -> Result<bool, Disqualified> {
        self.check(mu)?;
        let stmt = validity_statement(&self.sender.public, &self.receiver.public(), mu, Role::Confirmer);
        Ok(receiver_validity_witness(&self.receiver, &self.sender.public, mu).is_ok_and(|w| accepts(&stmt, &w, &mut self.rng)))
    }

    pub fn unsigncrypt(&mut self, mu: &Signcryption<B>) -> Result<Option<Vec<u8>>, Disqualified> {
        self.check(mu)?;
        Ok(unsigncrypt(&self.receiver, &self.sender.public, mu))
    }

    /// `Some(true)` for an accepted confirmation, `Some(false)` for an
    /// accepted denial, `None` when the receiver refuses both (an invalid
    /// signature layer).
    pub fn confirm_or_deny(&mut self, mu: &Signcryption<B>, m: &[u8]) -> Result<Option<bool>, Disqualified> {
        self.check(mu)?;
        if let Ok((stmt, w)) = signcrypt::confirm(&self.receiver, &self.sender.public, mu, m) {
            return Ok(Some(accepts(&stmt, &w, &mut self.rng)));
        }
        Ok(signcrypt::deny(&self.receiver, &self.sender.public, mu, m)
            .ok()
            .map(|(stmt, w)| !accepts(&stmt, &w, &mut self.rng)))
    }

    pub fn sig_extract(&mut self, mu: &Signcryption<B>, m: &[u8]) -> Result<Option<signcrypt::Extracted<B>>, Disqualified> {
        self.check(mu)?;
        Ok(sig_extract(&self.receiver, &self.sender.public, mu, m, &mut self.rng))
    }
}

pub trait ScAdversary<B: Backend> {
    fn name(&self) -> &'static str;

    fn choose(&mut self, o: &mut ScOracles<B>, rng: &mut ChaCha20Rng) -> Vec<u8>;

    /// Returns `true` for "real signcryption".
    fn guess(&mut self, challenge: &Signcryption<B>, o: &mut ScOracles<B>, rng: &mut ChaCha20Rng) -> Result<bool, Disqualified>;
}

/// Re-randomizes the message layer of the challenge and asks the receiver
/// to unsigncrypt it; an answer would expose a real signcryption.
#[derive(Clone, Copy, Debug, Default)]
pub struct MaulAndAsk;

impl<B: Backend> ScAdversary<B> for MaulAndAsk {
    fn name(&self) -> &'static str {
        "maul-and-ask"
    }

    fn choose(&mut self, _: &mut ScOracles<B>, rng: &mut ChaCha20Rng) -> Vec<u8> {
        B::Msg::random_message(rng)
    }

    fn guess(&mut self, c: &Signcryption<B>, o: &mut ScOracles<B>, rng: &mut ChaCha20Rng) -> Result<bool, Disqualified> {
        let (pad, _) = encrypt(&o.receiver_pk().message, &B::Msg::identity(), rng);
        let mauled = Signcryption { e: c.e.op(&pad), ..c.clone() };
        if mauled == *c {
            return Ok(rng.gen_bool(0.5));
        }
        Ok(match o.unsigncrypt(&mauled)? {
            Some(_) => true,
            None => rng.gen_bool(0.5),
        })
    }
}

/// Flips a coin.
#[derive(Clone, Copy, Debug, Default)]
pub struct ScGuess;

impl<B: Backend> ScAdversary<B> for ScGuess {
    fn name(&self) -> &'static str {
        "guess"
    }

    fn choose(&mut self, _: &mut ScOracles<B>, rng: &mut ChaCha20Rng) -> Vec<u8> {
        B::Msg::random_message(rng)
    }

    fn guess(&mut self, _: &Signcryption<B>, _: &mut ScOracles<B>, rng: &mut ChaCha20Rng) -> Result<bool, Disqualified> {
        Ok(rng.gen_bool(0.5))
    }
}

/// The challenge is a signcryption of the chosen message or a uniform
/// element of the signcryption space; every oracle refuses the challenge.
pub fn sind_cca<B, A, F>(make: F, trials: u64, seed: u64) -> GameReport
where
    B: Backend,
    A: ScAdversary<B>,
    F: Fn() -> A + Sync,
{
    let name = make().name();
    let tally = run_trials(trials, seed, |rng| {
        let mut o = ScOracles {
            sender: BlsKeys::generate(rng),
            receiver: ReceiverKeys::generate(rng),
            rng: fork(rng),
            challenge: None,
        };
        let mut adv = make();
        let m = adv.choose(&mut o, rng);
        let b = rng.gen_bool(0.5);
        let challenge = if b {
            match o.signcrypt(&m) {
                Some(mu) => mu,
                None => return Outcome::Disqualified,
            }
        } else {
            Signcryption::sample(rng)
        };
        o.challenge = Some(challenge.clone());
        match adv.guess(&challenge, &mut o, rng) {
            Ok(guess) => (guess == b).into(),
            Err(Disqualified) => Outcome::Disqualified,
        }
    });
    report::<B>("sind-cca", name, Kind::Distinguishing, tally)
}
