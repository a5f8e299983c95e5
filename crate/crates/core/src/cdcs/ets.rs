//! Encrypt-then-sign: `μ = (ct, σ)` with `ct = Enc(m)` under the confirmer
//! key and `σ` a BLS signature on `ct`.
//!
//! Confirmation proves correct decryption. Denial runs the inequality proof
//! with the identity map `f(x) = x`. With that map the response at `b = 1`
//! reveals the true plaintext, so denial here discloses `Dec(ct)`; the other
//! schemes use the pairing and do not have this problem. Conversion publishes
//! a Fiat–Shamir proof that `ct` decrypts to `m`.

use std::marker::PhantomData;

use crate::cdcs::{Cdcs, Role, DENY_COPIES};
use crate::groups::{Backend, IdentityHom, MessageGroup, PrimeGroup, Rng};
use crate::primitives::elgamal::{encrypt, encrypt_with};
use crate::primitives::{BlsKeys, BlsPublic, Ciphertext, ClassSSignature, ElGamalKeys};
use crate::sigma::fs::{self, NiProof};
use crate::sigma::{ConfirmDeny, DecWitness, Dleq, Mode, Path, Repeated};
use crate::wire::{Bytes, Encode};
use crate::Error;

const CONVERT_DOMAIN: &[u8] = b"ets-convert";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EtS<B: Backend>(PhantomData<B>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtSSignature<B: Backend> {
    pub ct: Ciphertext<B::Msg>,
    pub sigma: B::G1,
}

crate::wire_struct!(EtSSignature<B: Backend> { ct, sigma });

#[derive(Clone, Debug, PartialEq)]
pub struct EtSConverted<B: Backend> {
    pub ct: Ciphertext<B::Msg>,
    pub sigma: B::G1,
    pub proof: NiProof<Dleq<B::Msg>>,
}

crate::wire_struct!(EtSConverted<B: Backend> { ct, sigma, proof });

fn signature_ok<B: Backend>(spk: &BlsPublic<B>, ct: &Ciphertext<B::Msg>, sigma: &B::G1) -> bool {
    spk.verify(&ct.to_bytes(), &ClassSSignature::retrieve(*sigma, Bytes::default()))
}

fn decryption_statement<B: Backend>(cpk: &B::Msg, ct: &Ciphertext<B::Msg>, msg: &B::Msg, role: Role) -> Dleq<B::Msg> {
    match role {
        Role::Confirmer => Dleq::decrypts_with_key(*cpk, ct, msg),
        Role::Signer => Dleq::decrypts_with_randomness(*cpk, ct, msg),
    }
}

impl<B: Backend> Cdcs for EtS<B> {
    type Backend = B;
    const NAME: &'static str = "ets";

    type SignerKey = BlsKeys<B>;
    type SignerPublic = BlsPublic<B>;
    type ConfirmerKey = ElGamalKeys<B::Msg>;
    type ConfirmerPublic = B::Msg;
    type Signature = EtSSignature<B>;
    /// The encryption randomness.
    type Coins = <B::Msg as PrimeGroup>::Scalar;
    type Converted = EtSConverted<B>;
    type Confirm = Dleq<B::Msg>;
    type Deny = Repeated<ConfirmDeny<IdentityHom<B::Msg>>>;

    fn signer_keygen<R: Rng + ?Sized>(rng: &mut R) -> BlsKeys<B> {
        BlsKeys::generate(rng)
    }

    fn signer_public(sk: &BlsKeys<B>) -> BlsPublic<B> {
        sk.public
    }

    fn confirmer_keygen<R: Rng + ?Sized>(rng: &mut R) -> ElGamalKeys<B::Msg> {
        ElGamalKeys::generate(rng)
    }

    fn confirmer_public(ck: &ElGamalKeys<B::Msg>) -> B::Msg {
        ck.pk
    }

    fn random_message<R: Rng + ?Sized>(rng: &mut R) -> Vec<u8> {
        B::Msg::random_message(rng)
    }

    fn sign<R: Rng + ?Sized>(
        sk: &BlsKeys<B>,
        cpk: &B::Msg,
        m: &[u8],
        rng: &mut R,
    ) -> Result<(EtSSignature<B>, Self::Coins), Error> {
        let msg = B::Msg::encode_message(m)?;
        let (ct, a) = encrypt(cpk, &msg, rng);
        let sigma = sk.sign(&ct.to_bytes()).s;
        Ok((EtSSignature { ct, sigma }, a))
    }

    fn verify(ck: &ElGamalKeys<B::Msg>, spk: &BlsPublic<B>, m: &[u8], sig: &EtSSignature<B>) -> bool {
        signature_ok(spk, &sig.ct, &sig.sigma) && B::Msg::encode_message(m).is_ok_and(|msg| ck.decrypt(&sig.ct) == msg)
    }

    fn verify_with_coins(
        spk: &BlsPublic<B>,
        cpk: &B::Msg,
        m: &[u8],
        sig: &EtSSignature<B>,
        a: &Self::Coins,
    ) -> bool {
        signature_ok(spk, &sig.ct, &sig.sigma)
            && B::Msg::encode_message(m).is_ok_and(|msg| encrypt_with(cpk, &msg, a) == sig.ct)
    }

    fn convert<R: Rng + ?Sized>(
        ck: &ElGamalKeys<B::Msg>,
        spk: &BlsPublic<B>,
        m: &[u8],
        sig: &EtSSignature<B>,
        rng: &mut R,
    ) -> Option<EtSConverted<B>> {
        if !Self::verify(ck, spk, m, sig) {
            return None;
        }
        let msg = B::Msg::encode_message(m).ok()?;
        let stmt = Dleq::decrypts_with_key(ck.pk, &sig.ct, &msg);
        let proof = fs::prove(&stmt, &ck.sk, CONVERT_DOMAIN, rng).ok()?;
        Some(EtSConverted { ct: sig.ct, sigma: sig.sigma, proof })
    }

    fn verify_converted(spk: &BlsPublic<B>, cpk: &B::Msg, m: &[u8], conv: &EtSConverted<B>) -> bool {
        let Ok(msg) = B::Msg::encode_message(m) else { return false };
        signature_ok(spk, &conv.ct, &conv.sigma)
            && fs::verify(&Dleq::decrypts_with_key(*cpk, &conv.ct, &msg), CONVERT_DOMAIN, &conv.proof)
    }

    /// A uniform ciphertext with a uniform signature part; the latter fails
    /// the public check except with probability `1/ℓ`.
    fn sample<R: Rng + ?Sized>(_: &BlsPublic<B>, _: &B::Msg, rng: &mut R) -> EtSSignature<B> {
        EtSSignature { ct: super::random_pair(rng), sigma: B::G1::random(rng) }
    }

    fn confirm_statement(
        spk: &BlsPublic<B>,
        cpk: &B::Msg,
        m: &[u8],
        sig: &EtSSignature<B>,
        role: Role,
    ) -> Option<Dleq<B::Msg>> {
        let msg = B::Msg::encode_message(m).ok()?;
        signature_ok(spk, &sig.ct, &sig.sigma).then(|| decryption_statement::<B>(cpk, &sig.ct, &msg, role))
    }

    fn deny_statement(spk: &BlsPublic<B>, cpk: &B::Msg, m: &[u8], sig: &EtSSignature<B>) -> Option<Self::Deny> {
        let msg = B::Msg::encode_message(m).ok()?;
        if !signature_ok(spk, &sig.ct, &sig.sigma) {
            return None;
        }
        let inner = ConfirmDeny::new(IdentityHom::new(), msg, *cpk, sig.ct, Path::Key, Mode::Deny);
        Repeated::new(inner, DENY_COPIES).ok()
    }

    fn sconfirm_witness(a: &Self::Coins) -> Self::Coins {
        *a
    }

    fn confirm_witness(ck: &ElGamalKeys<B::Msg>) -> Self::Coins {
        ck.sk
    }

    fn deny_witness(ck: &ElGamalKeys<B::Msg>) -> DecWitness<B::Msg> {
        DecWitness::Key(ck.sk)
    }
}
