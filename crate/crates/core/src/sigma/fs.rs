//! Fiat–Shamir: both challenges come from SHA-256 over a domain tag, the
//! canonical statement bytes and every prover message so far.

use sha2::{Digest, Sha256};

use crate::groups::Rng;
use crate::sigma::{Challenge, ChallengeSpace, Protocol, Transcript};
use crate::wire::Encode;
use crate::Error;

/// `(first, second, third)`; the challenges are recomputed on verification.
#[derive(Clone, Debug, PartialEq)]
pub struct NiProof<P: Protocol> {
    pub first: P::First,
    pub second: P::Second,
    pub third: P::Third,
}

crate::wire_struct!(NiProof<P: Protocol> { first, second, third });

fn put(h: &mut Sha256, bytes: &[u8]) {
    h.update((bytes.len() as u64).to_be_bytes());
    h.update(bytes);
}

fn derive(space: ChallengeSpace, round: &[u8], prefix: &Sha256) -> Challenge {
    let mut h = prefix.clone();
    put(&mut h, round);
    space.from_digest(&h.finalize())
}

fn prefix<P: Protocol>(stmt: &P, domain: &[u8], first: &P::First) -> Sha256 {
    let mut h = Sha256::new();
    put(&mut h, b"osg-fiat-shamir-v1");
    put(&mut h, P::LABEL.as_bytes());
    put(&mut h, domain);
    put(&mut h, &stmt.to_bytes());
    put(&mut h, &first.to_bytes());
    h
}

fn challenge_b<P: Protocol>(stmt: &P, domain: &[u8], first: &P::First) -> Challenge {
    derive(stmt.space(), b"b", &prefix(stmt, domain, first))
}

fn challenge_c<P: Protocol>(stmt: &P, domain: &[u8], first: &P::First, b: Challenge, second: &P::Second) -> Challenge {
    if !P::FIVE_MOVE {
        return 0;
    }
    let mut h = prefix(stmt, domain, first);
    put(&mut h, &b.to_be_bytes());
    put(&mut h, &second.to_bytes());
    derive(stmt.inner_space(), b"c", &h)
}

pub fn prove<P: Protocol, R: Rng + ?Sized>(
    stmt: &P,
    w: &P::Witness,
    domain: &[u8],
    rng: &mut R,
) -> Result<NiProof<P>, Error> {
    let (first, mut state) = stmt.first(w, stmt.nonce(rng))?;
    let b = challenge_b(stmt, domain, &first);
    let second = stmt.second(w, &mut state, b)?;
    let c = challenge_c(stmt, domain, &first, b, &second);
    let third = stmt.third(w, &state, c)?;
    Ok(NiProof { first, second, third })
}

/// The interactive transcript the proof stands for.
pub fn transcript<P: Protocol>(stmt: &P, domain: &[u8], proof: &NiProof<P>) -> Transcript<P> {
    let b = challenge_b(stmt, domain, &proof.first);
    let c = challenge_c(stmt, domain, &proof.first, b, &proof.second);
    Transcript { first: proof.first.clone(), b, second: proof.second.clone(), c, third: proof.third.clone() }
}

pub fn verify<P: Protocol>(stmt: &P, domain: &[u8], proof: &NiProof<P>) -> bool {
    stmt.verify(&transcript(stmt, domain, proof))
}
