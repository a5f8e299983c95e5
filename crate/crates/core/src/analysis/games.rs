//! Security experiments for confirmer signatures.
//!
//! The challenger owns the keys, the challenge bit and the list of
//! forbidden queries. Adversaries see only [`Oracles`]. A query on a
//! forbidden `(μ, m)` pair is never answered: the trial is disqualified and
//! counted apart from wins and losses. The signer's confirmation is
//! forbidden on the challenge as well, like every other protocol oracle.

use rand::Rng as _;
use rand_chacha::ChaCha20Rng;

use crate::analysis::stats::{run_trials, GameReport, Kind, Outcome};
use crate::cdcs::{sconfirm, Cdcs, Denial, Parties};
use crate::groups::{Backend, Rng};
use crate::sigma::{run, Protocol};

/// A forbidden query was made.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Disqualified;

/// An honest run of `stmt`; whether the verifier accepted.
pub fn accepts<P: Protocol, R: Rng + ?Sized>(stmt: &P, w: &P::Witness, rng: &mut R) -> bool {
    run(stmt, w, rng).is_ok_and(|(_, ok)| ok)
}

/// A denial as the verifier sees it: either the signature fails a public
/// check, or the denial protocol runs and is accepted.
pub fn denial_accepts<S: Cdcs, R: Rng + ?Sized>(parties: &Parties<S>, m: &[u8], sig: &S::Signature, rng: &mut R) -> bool {
    match parties.deny(m, sig) {
        Err(_) => false,
        Ok(Denial::Evident) => S::deny_statement(&parties.signer_pk, &parties.confirmer_pk, m, sig).is_none(),
        Ok(Denial::Proof(stmt, w)) => accepts(&stmt, &w, rng),
    }
}

/// The query interface of the confirmer-signature experiments.
pub struct Oracles<S: Cdcs> {
    parties: Parties<S>,
    rng: ChaCha20Rng,
    issued: Vec<(Vec<u8>, S::Signature, S::Coins)>,
    forbidden: Vec<(S::Signature, Vec<u8>)>,
    queries: u64,
}

impl<S: Cdcs> Oracles<S> {
    pub fn new(parties: Parties<S>, rng: ChaCha20Rng) -> Self {
        Oracles { parties, rng, issued: Vec::new(), forbidden: Vec::new(), queries: 0 }
    }

    pub fn signer_pk(&self) -> &S::SignerPublic {
        &self.parties.signer_pk
    }

    pub fn confirmer_pk(&self) -> &S::ConfirmerPublic {
        &self.parties.confirmer_pk
    }

    /// Oracle queries answered so far.
    pub fn queries(&self) -> u64 {
        self.queries
    }

    fn check(&mut self, sig: &S::Signature, m: &[u8]) -> Result<(), Disqualified> {
        if self.forbidden.iter().any(|(s, fm)| s == sig && fm == m) {
            return Err(Disqualified);
        }
        self.queries += 1;
        Ok(())
    }

    fn forbid(&mut self, sig: &S::Signature, m: &[u8]) {
        self.forbidden.push((sig.clone(), m.to_vec()));
    }

    /// Signs without recording the coins for the adversary's use.
    fn sign_silently(&mut self, m: &[u8]) -> S::Signature {
        self.parties.sign(m, &mut self.rng).expect("the message family of the scheme is signable").0
    }

    pub fn sign(&mut self, m: &[u8]) -> S::Signature {
        self.queries += 1;
        let (sig, coins) = self.parties.sign(m, &mut self.rng).expect("the message family of the scheme is signable");
        self.issued.push((m.to_vec(), sig.clone(), coins));
        sig
    }

    /// The signer confirms a signature it issued. `None` if the signer holds
    /// no coins for `(μ, m)`.
    pub fn sconfirm(&mut self, sig: &S::Signature, m: &[u8]) -> Result<Option<bool>, Disqualified> {
        self.check(sig, m)?;
        let Some((_, _, coins)) = self.issued.iter().find(|(im, is, _)| im == m && is == sig) else {
            return Ok(None);
        };
        let (spk, cpk) = (&self.parties.signer_pk, &self.parties.confirmer_pk);
        Ok(Some(match sconfirm::<S>(spk, cpk, m, sig, coins) {
            Ok((stmt, w)) => accepts(&stmt, &w, &mut self.rng),
            Err(_) => false,
        }))
    }

    /// The confirmer runs confirmation if `μ` is valid on `m` and denial
    /// otherwise; the answer is the protocol the adversary saw accepted.
    pub fn confirm_or_deny(&mut self, sig: &S::Signature, m: &[u8]) -> Result<bool, Disqualified> {
        self.check(sig, m)?;
        if self.parties.verify(m, sig) {
            let (stmt, w) = self.parties.confirm(m, sig).expect("valid signatures can be confirmed");
            Ok(accepts(&stmt, &w, &mut self.rng))
        } else {
            Ok(!denial_accepts(&self.parties, m, sig, &mut self.rng))
        }
    }

    pub fn convert(&mut self, sig: &S::Signature, m: &[u8]) -> Result<Option<S::Converted>, Disqualified> {
        self.check(sig, m)?;
        Ok(self.parties.convert(m, sig, &mut self.rng))
    }
}

/// INV-CMA: tell which of two chosen messages the challenge signs.
pub trait InvAdversary<S: Cdcs> {
    fn name(&self) -> &'static str;

    /// Phase 1; returns two distinct messages.
    fn choose(&mut self, o: &mut Oracles<S>, rng: &mut ChaCha20Rng) -> (Vec<u8>, Vec<u8>);

    /// Phase 2; returns the guess for `b`.
    fn guess(&mut self, challenge: &S::Signature, o: &mut Oracles<S>, rng: &mut ChaCha20Rng) -> Result<bool, Disqualified>;
}

/// SINV-CMA: tell a signature on a chosen message from a random element of
/// the signature space.
pub trait SinvAdversary<S: Cdcs> {
    fn name(&self) -> &'static str;

    fn choose(&mut self, o: &mut Oracles<S>, rng: &mut ChaCha20Rng) -> Vec<u8>;

    /// Returns `true` for "real signature".
    fn guess(&mut self, challenge: &S::Signature, o: &mut Oracles<S>, rng: &mut ChaCha20Rng) -> Result<bool, Disqualified>;
}

/// EUF-CMA: the adversary picks the confirmer key and may ask for
/// signatures.
pub trait Forger<S: Cdcs> {
    fn name(&self) -> &'static str;

    fn confirmer(&mut self, rng: &mut ChaCha20Rng) -> S::ConfirmerKey {
        S::confirmer_keygen(rng)
    }

    fn forge(
        &mut self,
        spk: &S::SignerPublic,
        ck: &S::ConfirmerKey,
        sign: &mut dyn FnMut(&[u8]) -> S::Signature,
        rng: &mut ChaCha20Rng,
    ) -> (Vec<u8>, S::Signature);
}

/// How keys are drawn per trial.
#[derive(Clone, Debug)]
pub enum Keys<S: Cdcs> {
    /// Fresh signer and confirmer keys every trial.
    Fresh,
    /// Fresh signer keys, one confirmer key for all trials; for schemes
    /// whose confirmer key generation dominates the running time.
    SharedConfirmer(S::ConfirmerKey),
}

impl<S: Cdcs> Keys<S> {
    fn parties(&self, rng: &mut ChaCha20Rng) -> Parties<S> {
        match self {
            Keys::Fresh => Parties::generate(rng),
            Keys::SharedConfirmer(ck) => Parties::with_confirmer(ck.clone(), rng),
        }
    }
}

fn fork(rng: &mut ChaCha20Rng) -> ChaCha20Rng {
    rand::SeedableRng::from_rng(rng).expect("ChaCha never fails")
}

fn report<S: Cdcs>(experiment: &str, adversary: &str, kind: Kind, tally: crate::analysis::stats::Tally) -> GameReport {
    GameReport::new(experiment, S::NAME, <S::Backend as Backend>::NAME, adversary, kind, tally)
}

/// One run of the completeness experiment. Every step is checked the way
/// the party that receives it would check it:
///
/// 0. the confirmer's verification of `μ = sign(m)`;
/// 1. the signer's confirmation of `μ` from its coins;
/// 2. the confirmer's confirmation of `μ`;
/// 3. a denial of `ψ`, drawn from the signature space conditioned on being
///    invalid on `m`;
/// 4. conversion of `μ` and public verification of the result.
pub fn completeness_trial<S: Cdcs>(parties: &Parties<S>, rng: &mut ChaCha20Rng) -> bool {
    let m = S::random_message(rng);
    let Ok((mu, coins)) = parties.sign(&m, rng) else { return false };
    let out0 = parties.verify(&m, &mu);
    let out1 = parties.sconfirm(&m, &mu, &coins).is_ok_and(|(stmt, w)| accepts(&stmt, &w, rng));
    let out2 = parties.confirm(&m, &mu).is_ok_and(|(stmt, w)| accepts(&stmt, &w, rng));
    let psi = loop {
        let psi = S::sample(&parties.signer_pk, &parties.confirmer_pk, rng);
        if !parties.verify(&m, &psi) {
            break psi;
        }
    };
    let out3 = denial_accepts(parties, &m, &psi, rng);
    let out4 = parties.convert(&m, &mu, rng).is_some_and(|conv| parties.verify_converted(&m, &conv));
    out0 && out1 && out2 && out3 && out4
}

pub fn completeness<S: Cdcs>(keys: &Keys<S>, trials: u64, seed: u64) -> GameReport {
    let tally = run_trials(trials, seed, |rng| {
        let parties = keys.parties(rng);
        completeness_trial(&parties, rng).into()
    });
    report::<S>("completeness", "honest", Kind::Success, tally)
}

pub fn inv_cma<S, A, F>(make: F, keys: &Keys<S>, trials: u64, seed: u64) -> GameReport
where
    S: Cdcs,
    A: InvAdversary<S>,
    F: Fn() -> A + Sync,
{
    let name = make().name();
    let tally = run_trials(trials, seed, |rng| {
        let parties = keys.parties(rng);
        let mut o = Oracles::new(parties, fork(rng));
        let mut adv = make();
        let (m0, m1) = adv.choose(&mut o, rng);
        if m0 == m1 {
            return Outcome::Disqualified;
        }
        let b = rng.gen_bool(0.5);
        let challenge = o.sign_silently(if b { &m1 } else { &m0 });
        o.forbid(&challenge, &m0);
        o.forbid(&challenge, &m1);
        match adv.guess(&challenge, &mut o, rng) {
            Ok(guess) => (guess == b).into(),
            Err(Disqualified) => Outcome::Disqualified,
        }
    });
    report::<S>("inv-cma", name, Kind::Distinguishing, tally)
}

pub fn sinv_cma<S, A, F>(make: F, keys: &Keys<S>, trials: u64, seed: u64) -> GameReport
where
    S: Cdcs,
    A: SinvAdversary<S>,
    F: Fn() -> A + Sync,
{
    let name = make().name();
    let tally = run_trials(trials, seed, |rng| {
        let parties = keys.parties(rng);
        let mut o = Oracles::new(parties, fork(rng));
        let mut adv = make();
        let m = adv.choose(&mut o, rng);
        let b = rng.gen_bool(0.5);
        let challenge = if b { o.sign_silently(&m) } else { S::sample(o.signer_pk(), o.confirmer_pk(), rng) };
        o.forbid(&challenge, &m);
        match adv.guess(&challenge, &mut o, rng) {
            Ok(guess) => (guess == b).into(),
            Err(Disqualified) => Outcome::Disqualified,
        }
    });
    report::<S>("sinv-cma", name, Kind::Distinguishing, tally)
}

pub fn euf_cma<S, A, F>(make: F, trials: u64, seed: u64) -> GameReport
where
    S: Cdcs,
    A: Forger<S>,
    F: Fn() -> A + Sync,
{
    let name = make().name();
    let tally = run_trials(trials, seed, |rng| {
        let sk = S::signer_keygen(rng);
        let spk = S::signer_public(&sk);
        let mut adv = make();
        let ck = adv.confirmer(rng);
        let cpk = S::confirmer_public(&ck);
        let mut oracle_rng = fork(rng);
        let mut queried: Vec<Vec<u8>> = Vec::new();
        let mut sign = |m: &[u8]| {
            queried.push(m.to_vec());
            S::sign(&sk, &cpk, m, &mut oracle_rng).expect("the message family of the scheme is signable").0
        };
        let (m, sig) = adv.forge(&spk, &ck, &mut sign, rng);
        (!queried.contains(&m) && S::verify(&ck, &spk, &m, &sig)).into()
    });
    report::<S>("euf-cma", name, Kind::Forgery, tally)
}
