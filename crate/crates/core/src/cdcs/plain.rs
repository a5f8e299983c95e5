//! Sign-then-encrypt in its plain form: `μ = Enc(s)` for a BLS signature
//! `s` on `m`. Nothing ties the ciphertext to anything signed, so anyone can
//! re-randomize `μ` into a fresh valid signature on the same message.

use std::marker::PhantomData;

use crate::cdcs::{random_pair, Cdcs, Role, DENY_COPIES};
use crate::groups::{Backend, PairingHom, Rng};
use crate::primitives::elgamal::encrypt;
use crate::primitives::{BlsKeys, BlsPublic, Ciphertext, ClassSSignature, ElGamalKeys};
use crate::sigma::{ConfirmDeny, DecWitness, Mode, Path, Repeated};
use crate::wire::Bytes;
use crate::Error;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PlainStE<B: Backend>(PhantomData<B>);

fn statement<B: Backend>(
    spk: &BlsPublic<B>,
    cpk: &B::G1,
    m: &[u8],
    sig: &Ciphertext<B::G1>,
    path: Path,
    mode: Mode,
) -> ConfirmDeny<PairingHom<B>> {
    let (f, i) = spk.compute(m, &Bytes::default());
    ConfirmDeny::new(f, i, *cpk, *sig, path, mode)
}

impl<B: Backend> Cdcs for PlainStE<B> {
    type Backend = B;
    const NAME: &'static str = "plain-ste";

    type SignerKey = BlsKeys<B>;
    type SignerPublic = BlsPublic<B>;
    type ConfirmerKey = ElGamalKeys<B::G1>;
    type ConfirmerPublic = B::G1;
    type Signature = Ciphertext<B::G1>;
    /// The BLS signature and the encryption randomness.
    type Coins = (B::G1, B::Scalar);
    type Converted = ClassSSignature<B>;
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
    ) -> Result<(Ciphertext<B::G1>, Self::Coins), Error> {
        let s = sk.sign(m).s;
        let (ct, a) = encrypt(cpk, &s, rng);
        Ok((ct, (s, a)))
    }

    fn verify(ck: &ElGamalKeys<B::G1>, spk: &BlsPublic<B>, m: &[u8], sig: &Ciphertext<B::G1>) -> bool {
        spk.verify(m, &ClassSSignature::retrieve(ck.decrypt(sig), Bytes::default()))
    }

    fn verify_with_coins(
        spk: &BlsPublic<B>,
        cpk: &B::G1,
        m: &[u8],
        sig: &Ciphertext<B::G1>,
        (s, a): &Self::Coins,
    ) -> bool {
        crate::primitives::elgamal::encrypt_with(cpk, s, a) == *sig
            && spk.verify(m, &ClassSSignature::retrieve(*s, Bytes::default()))
    }

    fn convert<R: Rng + ?Sized>(
        ck: &ElGamalKeys<B::G1>,
        spk: &BlsPublic<B>,
        m: &[u8],
        sig: &Ciphertext<B::G1>,
        _: &mut R,
    ) -> Option<ClassSSignature<B>> {
        let conv = ClassSSignature::retrieve(ck.decrypt(sig), Bytes::default());
        spk.verify(m, &conv).then_some(conv)
    }

    fn verify_converted(spk: &BlsPublic<B>, _: &B::G1, m: &[u8], conv: &ClassSSignature<B>) -> bool {
        spk.verify(m, conv)
    }

    fn sample<R: Rng + ?Sized>(_: &BlsPublic<B>, _: &B::G1, rng: &mut R) -> Ciphertext<B::G1> {
        random_pair(rng)
    }

    fn confirm_statement(
        spk: &BlsPublic<B>,
        cpk: &B::G1,
        m: &[u8],
        sig: &Ciphertext<B::G1>,
        role: Role,
    ) -> Option<Self::Confirm> {
        Some(statement(spk, cpk, m, sig, role.path(), Mode::Confirm))
    }

    fn deny_statement(spk: &BlsPublic<B>, cpk: &B::G1, m: &[u8], sig: &Ciphertext<B::G1>) -> Option<Self::Deny> {
        Repeated::new(statement(spk, cpk, m, sig, Path::Key, Mode::Deny), DENY_COPIES).ok()
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
