//! Commit-then-encrypt-and-sign, classic form: `μ = (c, e, σ)` with a
//! Pedersen commitment `c = g^{H(m)}·h^ρ`, an ElGamal encryption `e` of the
//! opening element `h^ρ`, and a signature `σ` on `c` alone.
//!
//! Since `σ` does not cover `e`, multiplying `e` by an encryption of the
//! identity yields a different valid signature on the same message.

use std::marker::PhantomData;

use crate::cdcs::{random_pair, Cdcs, Role, DENY_COPIES};
use crate::groups::{Backend, PairingHom, PrimeGroup, Rng, ScalarField};
use crate::primitives::elgamal::{encrypt, encrypt_with};
use crate::primitives::{BlsKeys, BlsPublic, Ciphertext, ClassSSignature, ElGamalKeys, Pedersen};
use crate::sigma::{ConfirmDeny, DecWitness, Mode, Path, Repeated};
use crate::wire::{Bytes, Encode};
use crate::Error;

const MESSAGE_DOMAIN: &[u8] = b"cteas-message";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CtEaS<B: Backend>(PhantomData<B>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CtEaSSignature<B: Backend> {
    pub c: B::G1,
    pub e: Ciphertext<B::G1>,
    pub sigma: B::G1,
}

crate::wire_struct!(CtEaSSignature<B: Backend> { c, e, sigma });

/// `(c, σ, h^ρ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CtEaSConverted<B: Backend> {
    pub c: B::G1,
    pub sigma: B::G1,
    pub opening: B::G1,
}

crate::wire_struct!(CtEaSConverted<B: Backend> { c, sigma, opening });

fn image<B: Backend>(c: &B::G1, m: &[u8]) -> B::G1 {
    Pedersen::<B>::image(c, &B::Scalar::hash(MESSAGE_DOMAIN, m))
}

fn signature_ok<B: Backend>(spk: &BlsPublic<B>, c: &B::G1, sigma: &B::G1) -> bool {
    spk.verify(&c.to_bytes(), &ClassSSignature::retrieve(*sigma, Bytes::default()))
}

fn statement<B: Backend>(
    spk: &BlsPublic<B>,
    cpk: &B::G1,
    m: &[u8],
    sig: &CtEaSSignature<B>,
    path: Path,
    mode: Mode,
) -> Option<ConfirmDeny<PairingHom<B>>> {
    if !signature_ok(spk, &sig.c, &sig.sigma) {
        return None;
    }
    let f = PairingHom::new(B::G2::generator());
    let i = B::pairing(&image::<B>(&sig.c, m), &f.q);
    Some(ConfirmDeny::new(f, i, *cpk, sig.e, path, mode))
}

impl<B: Backend> Cdcs for CtEaS<B> {
    type Backend = B;
    const NAME: &'static str = "cteas";

    type SignerKey = BlsKeys<B>;
    type SignerPublic = BlsPublic<B>;
    type ConfirmerKey = ElGamalKeys<B::G1>;
    type ConfirmerPublic = B::G1;
    type Signature = CtEaSSignature<B>;
    /// The opening element `h^ρ` and the encryption randomness.
    type Coins = (B::G1, B::Scalar);
    type Converted = CtEaSConverted<B>;
    type Confirm = ConfirmDeny<PairingHom<B>>;
    type Deny = Repeated<ConfirmDeny<PairingHom<B>>>;

    fn signer_keygen<R: Rng + ?Sized>(rng: &mut R) -> BlsKeys<B> {
        BlsKeys::generate(rng)
    }

    fn signer_public(sk: &BlsKeys<B>) -> BlsPublic<B> {
        sk.public
    }

    fn confirmer_keygen<R: Rng + ?Sized>(rng: &mut R) -> ElGamalKeys<B::G1> {
        ElGamalKeys::generate(rng)
    }

    fn confirmer_public(ck: &ElGamalKeys<B::G1>) -> B::G1 {
        ck.pk
    }

    fn sign<R: Rng + ?Sized>(
        sk: &BlsKeys<B>,
        cpk: &B::G1,
        m: &[u8],
        rng: &mut R,
    ) -> Result<(CtEaSSignature<B>, Self::Coins), Error> {
        let (c, rho) = Pedersen::<B>::commit_random(&B::Scalar::hash(MESSAGE_DOMAIN, m), rng);
        let opening = Pedersen::<B>::h().pow(&rho);
        let (e, a) = encrypt(cpk, &opening, rng);
        let sigma = sk.sign(&c.to_bytes()).s;
        Ok((CtEaSSignature { c, e, sigma }, (opening, a)))
    }

    fn verify(ck: &ElGamalKeys<B::G1>, spk: &BlsPublic<B>, m: &[u8], sig: &CtEaSSignature<B>) -> bool {
        signature_ok(spk, &sig.c, &sig.sigma) && ck.decrypt(&sig.e) == image::<B>(&sig.c, m)
    }

    fn verify_with_coins(
        spk: &BlsPublic<B>,
        cpk: &B::G1,
        m: &[u8],
        sig: &CtEaSSignature<B>,
        (opening, a): &Self::Coins,
    ) -> bool {
        signature_ok(spk, &sig.c, &sig.sigma)
            && encrypt_with(cpk, opening, a) == sig.e
            && *opening == image::<B>(&sig.c, m)
    }

    fn convert<R: Rng + ?Sized>(
        ck: &ElGamalKeys<B::G1>,
        spk: &BlsPublic<B>,
        m: &[u8],
        sig: &CtEaSSignature<B>,
        _: &mut R,
    ) -> Option<CtEaSConverted<B>> {
        let conv = CtEaSConverted { c: sig.c, sigma: sig.sigma, opening: ck.decrypt(&sig.e) };
        Self::verify_converted(spk, &ck.pk, m, &conv).then_some(conv)
    }

    fn verify_converted(spk: &BlsPublic<B>, _: &B::G1, m: &[u8], conv: &CtEaSConverted<B>) -> bool {
        signature_ok(spk, &conv.c, &conv.sigma) && conv.opening == image::<B>(&conv.c, m)
    }

    fn sample<R: Rng + ?Sized>(_: &BlsPublic<B>, _: &B::G1, rng: &mut R) -> CtEaSSignature<B> {
        CtEaSSignature { c: B::G1::random(rng), e: random_pair(rng), sigma: B::G1::random(rng) }
    }

    fn confirm_statement(
        spk: &BlsPublic<B>,
        cpk: &B::G1,
        m: &[u8],
        sig: &CtEaSSignature<B>,
        role: Role,
    ) -> Option<Self::Confirm> {
        statement(spk, cpk, m, sig, role.path(), Mode::Confirm)
    }

    fn deny_statement(spk: &BlsPublic<B>, cpk: &B::G1, m: &[u8], sig: &CtEaSSignature<B>) -> Option<Self::Deny> {
        Repeated::new(statement(spk, cpk, m, sig, Path::Key, Mode::Deny)?, DENY_COPIES).ok()
    }

    fn sconfirm_witness(&(s, a): &Self::Coins) -> DecWitness<B::G1> {
        DecWitness::Randomness { s, a }
    }

    fn confirm_witness(ck: &ElGamalKeys<B::G1>) -> DecWitness<B::G1> {
        DecWitness::Key(ck.sk)
    }

    fn deny_witness(ck: &ElGamalKeys<B::G1>) -> DecWitness<B::G1> {
        DecWitness::Key(ck.sk)
    }
}
