//! Concrete adversaries.
//!
//! [`Fact1`] is the re-encryption distinguisher: it multiplies the
//! challenge by an encryption of the identity and asks the confirmer to
//! convert the result. That is a different signature, so the query is
//! allowed; when the scheme signs nothing that the re-encryption changes,
//! the conversion reveals which message the challenge carries.

use rand::Rng as _;
use rand_chacha::ChaCha20Rng;

use crate::analysis::games::{Disqualified, Forger, InvAdversary, Oracles, SinvAdversary};
use crate::cdcs::{Cdcs, CtEaS, CtEaSSignature, CtEtS, CtEtSSignature, EtS, EtSSignature, NewStE, NewStESignature, PlainStE};
use crate::groups::{Backend, PrimeGroup, Rng, ScalarField};
use crate::primitives::elgamal::encrypt_with;
use crate::primitives::Ciphertext;

/// Schemes whose signatures carry a homomorphic ciphertext that anyone can
/// re-randomize.
pub trait Rerandomize: Cdcs {
    /// Multiplies the ciphertext part by a fresh encryption of the identity.
    fn rerandomize<R: Rng + ?Sized>(
        spk: &Self::SignerPublic,
        cpk: &Self::ConfirmerPublic,
        sig: &Self::Signature,
        rng: &mut R,
    ) -> Self::Signature;
}

fn identity_pad<G: PrimeGroup, R: Rng + ?Sized>(pk: &G, rng: &mut R) -> Ciphertext<G> {
    encrypt_with(pk, &G::identity(), &G::Scalar::random_nonzero(rng))
}

impl<B: Backend> Rerandomize for PlainStE<B> {
    fn rerandomize<R: Rng + ?Sized>(_: &Self::SignerPublic, cpk: &B::G1, sig: &Ciphertext<B::G1>, rng: &mut R) -> Ciphertext<B::G1> {
        sig.op(&identity_pad(cpk, rng))
    }
}

impl<B: Backend> Rerandomize for CtEaS<B> {
    fn rerandomize<R: Rng + ?Sized>(_: &Self::SignerPublic, cpk: &B::G1, sig: &CtEaSSignature<B>, rng: &mut R) -> CtEaSSignature<B> {
        CtEaSSignature { e: sig.e.op(&identity_pad(cpk, rng)), ..sig.clone() }
    }
}

impl<B: Backend> Rerandomize for NewStE<B> {
    fn rerandomize<R: Rng + ?Sized>(_: &Self::SignerPublic, cpk: &B::G1, sig: &NewStESignature<B>, rng: &mut R) -> NewStESignature<B> {
        let ct = sig.ciphertext().op(&identity_pad(cpk, rng));
        NewStESignature { c: ct.c, e: ct.e, r: sig.r.clone() }
    }
}

impl<B: Backend> Rerandomize for EtS<B> {
    fn rerandomize<R: Rng + ?Sized>(_: &Self::SignerPublic, cpk: &B::Msg, sig: &EtSSignature<B>, rng: &mut R) -> EtSSignature<B> {
        EtSSignature { ct: sig.ct.op(&identity_pad(cpk, rng)), sigma: sig.sigma }
    }
}

impl<B: Backend> Rerandomize for CtEtS<B> {
    /// Adds a fresh encryption of zero under Paillier.
    fn rerandomize<R: Rng + ?Sized>(
        _: &Self::SignerPublic,
        cpk: &Self::ConfirmerPublic,
        sig: &CtEtSSignature<B>,
        rng: &mut R,
    ) -> CtEtSSignature<B> {
        let zero = cpk.encrypt(&0u32.into(), rng).0;
        CtEtSSignature { e: cpk.add(&sig.e, &zero), ..sig.clone() }
    }
}

/// Re-randomizes until the result differs from the input, so the query is
/// never the forbidden challenge itself.
fn fresh_copy<S: Rerandomize>(o: &Oracles<S>, sig: &S::Signature, rng: &mut ChaCha20Rng) -> S::Signature {
    loop {
        let mauled = S::rerandomize(o.signer_pk(), o.confirmer_pk(), sig, rng);
        if &mauled != sig {
            return mauled;
        }
    }
}

fn two_messages<S: Cdcs>(rng: &mut ChaCha20Rng) -> (Vec<u8>, Vec<u8>) {
    let m0 = S::random_message(rng);
    loop {
        let m1 = S::random_message(rng);
        if m1 != m0 {
            return (m0, m1);
        }
    }
}

/// The re-encryption distinguisher. It remembers `m0` between phases.
#[derive(Clone, Debug, Default)]
pub struct Fact1 {
    m0: Vec<u8>,
}

impl Fact1 {
    pub fn new() -> Self {
        Self::default()
    }
}

/// Two messages no single signature is valid on: a signature obtained on
/// `m0` must not convert on `m1`. Small backends have hash collisions, and
/// the adversary screens them out with Phase-1 queries.
fn separated_pair<S: Cdcs>(o: &mut Oracles<S>, rng: &mut ChaCha20Rng) -> Result<(Vec<u8>, Vec<u8>), Disqualified> {
    loop {
        let (m0, m1) = two_messages::<S>(rng);
        let sig = o.sign(&m0);
        if o.convert(&sig, &m1)?.is_none() {
            return Ok((m0, m1));
        }
    }
}

impl<S: Rerandomize> InvAdversary<S> for Fact1 {
    fn name(&self) -> &'static str {
        "fact1-reencrypt"
    }

    fn choose(&mut self, o: &mut Oracles<S>, rng: &mut ChaCha20Rng) -> (Vec<u8>, Vec<u8>) {
        let (m0, m1) = separated_pair(o, rng).expect("nothing is forbidden in phase 1");
        self.m0 = m0.clone();
        (m0, m1)
    }

    /// Converts `μ'` on `m0`: an answer means `b = 0`, a refusal `b = 1`.
    fn guess(&mut self, challenge: &S::Signature, o: &mut Oracles<S>, rng: &mut ChaCha20Rng) -> Result<bool, Disqualified> {
        let mauled = fresh_copy(o, challenge, rng);
        Ok(o.convert(&mauled, &self.m0)?.is_none())
    }
}

impl<S: Rerandomize> SinvAdversary<S> for Fact1 {
    fn name(&self) -> &'static str {
        "fact1-reencrypt"
    }

    fn choose(&mut self, _: &mut Oracles<S>, rng: &mut ChaCha20Rng) -> Vec<u8> {
        self.m0 = S::random_message(rng);
        self.m0.clone()
    }

    /// A re-encrypted real signature converts; a random element does not.
    fn guess(&mut self, challenge: &S::Signature, o: &mut Oracles<S>, rng: &mut ChaCha20Rng) -> Result<bool, Disqualified> {
        let mauled = fresh_copy(o, challenge, rng);
        Ok(o.convert(&mauled, &self.m0)?.is_some())
    }
}

/// Ignores everything and flips a coin.
#[derive(Clone, Copy, Debug, Default)]
pub struct Guess;

impl<S: Cdcs> InvAdversary<S> for Guess {
    fn name(&self) -> &'static str {
        "guess"
    }

    fn choose(&mut self, _: &mut Oracles<S>, rng: &mut ChaCha20Rng) -> (Vec<u8>, Vec<u8>) {
        two_messages::<S>(rng)
    }

    fn guess(&mut self, _: &S::Signature, _: &mut Oracles<S>, rng: &mut ChaCha20Rng) -> Result<bool, Disqualified> {
        Ok(rng.gen_bool(0.5))
    }
}

impl<S: Cdcs> SinvAdversary<S> for Guess {
    fn name(&self) -> &'static str {
        "guess"
    }

    fn choose(&mut self, _: &mut Oracles<S>, rng: &mut ChaCha20Rng) -> Vec<u8> {
        S::random_message(rng)
    }

    fn guess(&mut self, _: &S::Signature, _: &mut Oracles<S>, rng: &mut ChaCha20Rng) -> Result<bool, Disqualified> {
        Ok(rng.gen_bool(0.5))
    }
}

/// Trivial forgery strategies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForgeStrategy {
    /// A uniform element of the signature space on a fresh message.
    RandomElement,
    /// A signature obtained on one message, claimed for another.
    Reuse,
    /// A re-encrypted signature obtained on one message, claimed for another.
    MauledReuse,
}

impl ForgeStrategy {
    pub const ALL: [ForgeStrategy; 3] = [ForgeStrategy::RandomElement, ForgeStrategy::Reuse, ForgeStrategy::MauledReuse];
}

impl<S: Rerandomize> Forger<S> for ForgeStrategy {
    fn name(&self) -> &'static str {
        match self {
            ForgeStrategy::RandomElement => "random-element",
            ForgeStrategy::Reuse => "reuse",
            ForgeStrategy::MauledReuse => "mauled-reuse",
        }
    }

    fn forge(
        &mut self,
        spk: &S::SignerPublic,
        ck: &S::ConfirmerKey,
        sign: &mut dyn FnMut(&[u8]) -> S::Signature,
        rng: &mut ChaCha20Rng,
    ) -> (Vec<u8>, S::Signature) {
        let cpk = S::confirmer_public(ck);
        let (m, target) = two_messages::<S>(rng);
        let sig = match self {
            ForgeStrategy::RandomElement => S::sample(spk, &cpk, rng),
            ForgeStrategy::Reuse => sign(&m),
            ForgeStrategy::MauledReuse => S::rerandomize(spk, &cpk, &sign(&m), rng),
        };
        (target, sig)
    }
}
