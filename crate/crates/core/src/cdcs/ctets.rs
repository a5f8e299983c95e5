//! Commit-then-encrypt-then-sign.
//!
//! The signer commits to `m` with Pedersen, `c = g^{H(m)}·h^ρ`, encrypts the
//! opening under Paillier, `e = Enc(ρ)`, and signs `e ‖ c`. Protocols only
//! run once the signature on `e ‖ c` checks out; otherwise the signature is
//! invalid on its face. Conversion reveals `ρ` together with the Paillier
//! randomness, so anyone can recheck `e` as well as `c`.

use std::marker::PhantomData;

use num_bigint::BigUint;

use crate::cdcs::{Cdcs, Role, DENY_COPIES};
use crate::groups::{Backend, PrimeGroup, Rng, ScalarField};
use crate::primitives::{BlsKeys, BlsPublic, ClassSSignature, PaillierKeys, PaillierPublic, Pedersen};
use crate::sigma::{CommitDecrypt, CommitWitness, Mode, Repeated};
use crate::wire::{Bytes, Encode};
use crate::Error;

const MESSAGE_DOMAIN: &[u8] = b"ctets-message";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CtEtS<B: Backend>(PhantomData<B>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CtEtSSignature<B: Backend> {
    pub c: B::G1,
    pub e: BigUint,
    pub sigma: B::G1,
}

crate::wire_struct!(CtEtSSignature<B: Backend> { c, e, sigma });

/// The signature plus the opening `ρ` and the Paillier randomness `u` with
/// `e = Enc(ρ; u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CtEtSConverted<B: Backend> {
    pub c: B::G1,
    pub e: BigUint,
    pub sigma: B::G1,
    pub r: BigUint,
    pub u: BigUint,
}

crate::wire_struct!(CtEtSConverted<B: Backend> { c, e, sigma, r, u });

/// The scalar committed to for message `m`.
pub fn message_scalar<B: Backend>(m: &[u8]) -> B::Scalar {
    B::Scalar::hash(MESSAGE_DOMAIN, m)
}

fn signed_string<B: Backend>(e: &BigUint, c: &B::G1) -> Vec<u8> {
    let mut out = e.to_bytes();
    c.encode(&mut out);
    out
}

fn signature_ok<B: Backend>(spk: &BlsPublic<B>, e: &BigUint, c: &B::G1, sigma: &B::G1) -> bool {
    spk.verify(&signed_string::<B>(e, c), &ClassSSignature::retrieve(*sigma, Bytes::default()))
}

fn opens<B: Backend>(c: &B::G1, m: &[u8], r: &BigUint) -> bool {
    r < &B::Scalar::order() && Pedersen::<B>::open(c, &message_scalar::<B>(m), &B::Scalar::from_biguint(r))
}

fn statement<B: Backend>(
    spk: &BlsPublic<B>,
    cpk: &PaillierPublic,
    m: &[u8],
    sig: &CtEtSSignature<B>,
    mode: Mode,
) -> Option<CommitDecrypt<B::G1>> {
    if !cpk.is_ciphertext(&sig.e) || !signature_ok(spk, &sig.e, &sig.c, &sig.sigma) {
        return None;
    }
    let image = Pedersen::<B>::image(&sig.c, &message_scalar::<B>(m));
    CommitDecrypt::new(Pedersen::<B>::h(), image, cpk.clone(), sig.e.clone(), mode).ok()
}

impl<B: Backend> Cdcs for CtEtS<B> {
    type Backend = B;
    const NAME: &'static str = "ctets";

    type SignerKey = BlsKeys<B>;
    type SignerPublic = BlsPublic<B>;
    type ConfirmerKey = PaillierKeys;
    type ConfirmerPublic = PaillierPublic;
    type Signature = CtEtSSignature<B>;
    /// The opening and its Paillier randomness.
    type Coins = (BigUint, BigUint);
    type Converted = CtEtSConverted<B>;
    type Confirm = CommitDecrypt<B::G1>;
    type Deny = Repeated<CommitDecrypt<B::G1>>;

    fn signer_keygen<R: Rng + ?Sized>(rng: &mut R) -> BlsKeys<B> {
        BlsKeys::generate(rng)
    }

    fn signer_public(sk: &BlsKeys<B>) -> BlsPublic<B> {
        sk.public
    }

    fn confirmer_keygen<R: Rng + ?Sized>(rng: &mut R) -> PaillierKeys {
        PaillierKeys::generate(B::PAILLIER_BITS, rng)
    }

    fn confirmer_public(ck: &PaillierKeys) -> PaillierPublic {
        ck.public.clone()
    }

    fn sign<R: Rng + ?Sized>(
        sk: &BlsKeys<B>,
        cpk: &PaillierPublic,
        m: &[u8],
        rng: &mut R,
    ) -> Result<(CtEtSSignature<B>, Self::Coins), Error> {
        let (c, r) = Pedersen::<B>::commit_random(&message_scalar::<B>(m), rng);
        let r = r.to_biguint();
        let (e, u) = cpk.encrypt(&r, rng);
        let sigma = sk.sign(&signed_string::<B>(&e, &c)).s;
        Ok((CtEtSSignature { c, e, sigma }, (r, u)))
    }

    fn verify(ck: &PaillierKeys, spk: &BlsPublic<B>, m: &[u8], sig: &CtEtSSignature<B>) -> bool {
        signature_ok(spk, &sig.e, &sig.c, &sig.sigma) && ck.decrypt(&sig.e).is_ok_and(|r| opens::<B>(&sig.c, m, &r))
    }

    fn verify_with_coins(
        spk: &BlsPublic<B>,
        cpk: &PaillierPublic,
        m: &[u8],
        sig: &CtEtSSignature<B>,
        (r, u): &Self::Coins,
    ) -> bool {
        signature_ok(spk, &sig.e, &sig.c, &sig.sigma) && cpk.encrypt_with(r, u) == sig.e && opens::<B>(&sig.c, m, r)
    }

    fn convert<R: Rng + ?Sized>(
        ck: &PaillierKeys,
        spk: &BlsPublic<B>,
        m: &[u8],
        sig: &CtEtSSignature<B>,
        _: &mut R,
    ) -> Option<CtEtSConverted<B>> {
        if !signature_ok(spk, &sig.e, &sig.c, &sig.sigma) {
            return None;
        }
        let (r, u) = ck.decrypt_full(&sig.e).ok()?;
        let conv = CtEtSConverted { c: sig.c, e: sig.e.clone(), sigma: sig.sigma, r, u };
        Self::verify_converted(spk, &ck.public, m, &conv).then_some(conv)
    }

    fn verify_converted(spk: &BlsPublic<B>, cpk: &PaillierPublic, m: &[u8], conv: &CtEtSConverted<B>) -> bool {
        signature_ok(spk, &conv.e, &conv.c, &conv.sigma)
            && opens::<B>(&conv.c, m, &conv.r)
            && cpk.is_ciphertext(&conv.e)
            && cpk.encrypt_with(&conv.r, &conv.u) == conv.e
    }

    /// Uniform commitment, ciphertext and signature part; the signature part
    /// fails the public check except with probability `1/ℓ`.
    /// `e` encrypts a uniform opening, as in signing. A ciphertext of a
    /// plaintext outside `[0, ℓ)` is not in the signature space: no opening
    /// exists for it, and the denial prover refuses it.
    fn sample<R: Rng + ?Sized>(_: &BlsPublic<B>, cpk: &PaillierPublic, rng: &mut R) -> CtEtSSignature<B> {
        let e = cpk.encrypt(&B::Scalar::random(rng).to_biguint(), rng).0;
        CtEtSSignature { c: B::G1::random(rng), e, sigma: B::G1::random(rng) }
    }

    fn confirm_statement(
        spk: &BlsPublic<B>,
        cpk: &PaillierPublic,
        m: &[u8],
        sig: &CtEtSSignature<B>,
        _: Role,
    ) -> Option<CommitDecrypt<B::G1>> {
        statement(spk, cpk, m, sig, Mode::Confirm)
    }

    fn deny_statement(spk: &BlsPublic<B>, cpk: &PaillierPublic, m: &[u8], sig: &CtEtSSignature<B>) -> Option<Self::Deny> {
        Repeated::new(statement(spk, cpk, m, sig, Mode::Deny)?, DENY_COPIES).ok()
    }

    fn sconfirm_witness((r, u): &Self::Coins) -> CommitWitness {
        CommitWitness::Opening { r: r.clone(), rho: u.clone() }
    }

    fn confirm_witness(ck: &PaillierKeys) -> CommitWitness {
        CommitWitness::Key(Box::new(ck.clone()))
    }

    fn deny_witness(ck: &PaillierKeys) -> CommitWitness {
        CommitWitness::Key(Box::new(ck.clone()))
    }
}
