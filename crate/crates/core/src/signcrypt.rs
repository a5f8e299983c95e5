//! Verifiable signcryption by encrypt-then-sign-then-encrypt.
//!
//! The sender encrypts `m` to the receiver, `e = Enc(m)`, encapsulates a
//! key `k` as `c`, signs `c ‖ e` to get `(s, r)` and outputs
//! `μ = (e, c, s·k, r)`. The receiver decrypts both layers. Either party
//! can prove `μ` is well formed without revealing `m`; the receiver can
//! also confirm or deny that `μ` carries a given `m`, and can extract a
//! publicly verifiable signature together with a proof that `e` encrypts
//! `m`.

use crate::cdcs::{Role, DENY_COPIES};
use crate::groups::{Backend, MessageGroup, PairingHom, PrimeGroup, Rng, ScalarField};
use crate::primitives::elgamal::{dem_decrypt, dem_encrypt, encap_with, encrypt, encrypt_with};
use crate::primitives::{BlsKeys, BlsPublic, Ciphertext, ClassSSignature, ElGamalKeys};
use crate::sigma::fs::{self, NiProof};
use crate::sigma::{And, ChallengeSpace, ConfirmDeny, DecKnowledge, DecWitness, Dleq, Mode, Path, Repeated};
use crate::wire::{Bytes, Encode};
use crate::Error;

const EXTRACT_DOMAIN: &[u8] = b"signcrypt-extract";

/// The receiver's two independent key pairs: one for the message layer and
/// one for the key encapsulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReceiverKeys<B: Backend> {
    pub message: ElGamalKeys<B::Msg>,
    pub kem: ElGamalKeys<B::G1>,
}

crate::wire_struct!(ReceiverKeys<B: Backend> { message, kem });

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReceiverPublic<B: Backend> {
    pub message: B::Msg,
    pub kem: B::G1,
}

crate::wire_struct!(ReceiverPublic<B: Backend> { message, kem });

impl<B: Backend> ReceiverKeys<B> {
    pub fn generate<R: Rng + ?Sized>(rng: &mut R) -> Self {
        ReceiverKeys { message: ElGamalKeys::generate(rng), kem: ElGamalKeys::generate(rng) }
    }

    pub fn public(&self) -> ReceiverPublic<B> {
        ReceiverPublic { message: self.message.pk, kem: self.kem.pk }
    }
}

/// `(e, c, μ3, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signcryption<B: Backend> {
    pub e: Ciphertext<B::Msg>,
    pub c: B::G1,
    pub mu3: B::G1,
    pub r: Bytes,
}

crate::wire_struct!(Signcryption<B: Backend> { e, c, mu3, r });

impl<B: Backend> Signcryption<B> {
    /// The string the inner signature covers: `c ‖ e`.
    pub fn signed_string(&self) -> Vec<u8> {
        signed_string::<B>(&self.c, &self.e)
    }

    /// `(c, μ3)` as an ElGamal ciphertext of `s` under the KEM key.
    pub fn signature_layer(&self) -> Ciphertext<B::G1> {
        Ciphertext { c: self.c, e: self.mu3 }
    }

    /// A uniform well-formed tuple.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Signcryption {
            e: Ciphertext { c: B::Msg::random(rng), e: B::Msg::random(rng) },
            c: B::G1::random(rng),
            mu3: B::G1::random(rng),
            r: Bytes::default(),
        }
    }
}

fn signed_string<B: Backend>(c: &B::G1, e: &Ciphertext<B::Msg>) -> Vec<u8> {
    let mut out = c.to_bytes();
    e.encode(&mut out);
    out
}

/// What the sender keeps from signcrypting, enough to prove validity.
#[derive(Clone, Copy, Debug)]
pub struct SenderCoins<B: Backend> {
    pub m: B::Msg,
    pub a: <B::Msg as PrimeGroup>::Scalar,
    pub s: B::G1,
    pub k: B::Scalar,
}

crate::wire_struct!(SenderCoins<B: Backend> { m, a, s, k });

pub fn signcrypt<B: Backend, R: Rng + ?Sized>(
    sender: &BlsKeys<B>,
    receiver: &ReceiverPublic<B>,
    m: &[u8],
    rng: &mut R,
) -> Result<(Signcryption<B>, SenderCoins<B>), Error> {
    let msg = B::Msg::encode_message(m)?;
    let (e, a) = encrypt(&receiver.message, &msg, rng);
    let k = B::Scalar::random(rng);
    let (c, key) = encap_with(&receiver.kem, &k);
    let (s, r) = sender.sign(&signed_string::<B>(&c, &e)).convert();
    let mu = Signcryption { e, c, mu3: dem_encrypt(&key, &s), r };
    Ok((mu, SenderCoins { m: msg, a, s, k }))
}

fn signature_valid<B: Backend>(keys: &ReceiverKeys<B>, sender: &BlsPublic<B>, mu: &Signcryption<B>) -> bool {
    let s = dem_decrypt(&keys.kem.decap(&mu.c), &mu.mu3);
    sender.verify(&mu.signed_string(), &ClassSSignature::retrieve(s, mu.r.clone()))
}

/// The plaintext, or `None` if the inner signature fails or the message
/// layer does not decode.
pub fn unsigncrypt<B: Backend>(keys: &ReceiverKeys<B>, sender: &BlsPublic<B>, mu: &Signcryption<B>) -> Option<Vec<u8>> {
    if !signature_valid(keys, sender, mu) {
        return None;
    }
    keys.message.decrypt(&mu.e).decode_message()
}

pub type Validity<B> = And<DecKnowledge<<B as Backend>::Msg>, ConfirmDeny<PairingHom<B>>>;
pub type ValidityWitness<B> = (DecWitness<<B as Backend>::Msg>, DecWitness<<B as Backend>::G1>);
pub type Confirm<B> = And<Dleq<<B as Backend>::Msg>, ConfirmDeny<PairingHom<B>>>;
pub type Deny<B> = Repeated<And<ConfirmDeny<crate::groups::IdentityHom<<B as Backend>::Msg>>, ConfirmDeny<PairingHom<B>>>>;

fn signature_layer<B: Backend>(
    sender: &BlsPublic<B>,
    receiver: &ReceiverPublic<B>,
    mu: &Signcryption<B>,
    path: Path,
) -> ConfirmDeny<PairingHom<B>> {
    let (f, i) = sender.compute(&mu.signed_string(), &mu.r);
    ConfirmDeny::new(f, i, receiver.kem, mu.signature_layer(), path, Mode::Confirm)
}

/// Knowledge of the decryption of `e`, and that `(c, μ3, r)` hides a
/// valid signature on `c ‖ e`. The plaintext stays hidden.
pub fn validity_statement<B: Backend>(
    sender: &BlsPublic<B>,
    receiver: &ReceiverPublic<B>,
    mu: &Signcryption<B>,
    role: Role,
) -> Validity<B> {
    let path = match role {
        Role::Signer => Path::Randomness,
        Role::Confirmer => Path::Key,
    };
    let message = DecKnowledge::new(receiver.message, mu.e, path);
    And::new(message, signature_layer(sender, receiver, mu, path)).expect("both use the full challenge space")
}

pub fn sender_validity_witness<B: Backend>(
    sender: &BlsPublic<B>,
    receiver: &ReceiverPublic<B>,
    mu: &Signcryption<B>,
    coins: &SenderCoins<B>,
) -> Result<ValidityWitness<B>, Error> {
    let (c, key) = encap_with(&receiver.kem, &coins.k);
    let ok = encrypt_with(&receiver.message, &coins.m, &coins.a) == mu.e
        && c == mu.c
        && dem_encrypt(&key, &coins.s) == mu.mu3
        && sender.verify(&mu.signed_string(), &ClassSSignature::retrieve(coins.s, mu.r.clone()));
    if !ok {
        return Err(Error::Refused("coins do not match the signcryption"));
    }
    Ok((DecWitness::Randomness { s: coins.m, a: coins.a }, DecWitness::Randomness { s: coins.s, a: coins.k }))
}

pub fn receiver_validity_witness<B: Backend>(
    keys: &ReceiverKeys<B>,
    sender: &BlsPublic<B>,
    mu: &Signcryption<B>,
) -> Result<ValidityWitness<B>, Error> {
    if !signature_valid(keys, sender, mu) {
        return Err(Error::Refused("signcryption is invalid"));
    }
    Ok((DecWitness::Key(keys.message.sk), DecWitness::Key(keys.kem.sk)))
}

/// `e` decrypts to `m` and the signature layer is valid.
pub fn confirm_statement<B: Backend>(
    sender: &BlsPublic<B>,
    receiver: &ReceiverPublic<B>,
    mu: &Signcryption<B>,
    m: &[u8],
) -> Option<Confirm<B>> {
    let msg = B::Msg::encode_message(m).ok()?;
    let message = Dleq::decrypts_with_key(receiver.message, &mu.e, &msg);
    And::new(message, signature_layer(sender, receiver, mu, Path::Key)).ok()
}

/// `e` does not decrypt to `m`, and the signature layer is valid.
pub fn deny_statement<B: Backend>(
    sender: &BlsPublic<B>,
    receiver: &ReceiverPublic<B>,
    mu: &Signcryption<B>,
    m: &[u8],
) -> Option<Deny<B>> {
    let msg = B::Msg::encode_message(m).ok()?;
    let message =
        ConfirmDeny::new(crate::groups::IdentityHom::new(), msg, receiver.message, mu.e, Path::Key, Mode::Deny);
    let layer = signature_layer(sender, receiver, mu, Path::Key).with_space(ChallengeSpace::BINARY);
    Repeated::new(And::new(message, layer).ok()?, DENY_COPIES).ok()
}

pub fn confirm<B: Backend>(
    keys: &ReceiverKeys<B>,
    sender: &BlsPublic<B>,
    mu: &Signcryption<B>,
    m: &[u8],
) -> Result<(Confirm<B>, (<B::Msg as PrimeGroup>::Scalar, DecWitness<B::G1>)), Error> {
    if unsigncrypt(keys, sender, mu).as_deref() != Some(m) {
        return Err(Error::Refused("signcryption is invalid or carries another message"));
    }
    let stmt = confirm_statement(sender, &keys.public(), mu, m).ok_or(Error::Refused("message does not encode"))?;
    Ok((stmt, (keys.message.sk, DecWitness::Key(keys.kem.sk))))
}

pub fn deny<B: Backend>(
    keys: &ReceiverKeys<B>,
    sender: &BlsPublic<B>,
    mu: &Signcryption<B>,
    m: &[u8],
) -> Result<(Deny<B>, (DecWitness<B::Msg>, DecWitness<B::G1>)), Error> {
    if !signature_valid(keys, sender, mu) {
        return Err(Error::Refused("signature layer is invalid"));
    }
    let msg = B::Msg::encode_message(m)?;
    if keys.message.decrypt(&mu.e) == msg {
        return Err(Error::Refused("signcryption carries this message"));
    }
    let stmt = deny_statement(sender, &keys.public(), mu, m).ok_or(Error::Refused("message does not encode"))?;
    Ok((stmt, (DecWitness::Key(keys.message.sk), DecWitness::Key(keys.kem.sk))))
}

/// A publicly verifiable signature on `c ‖ e` plus a proof that `e`
/// encrypts `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct Extracted<B: Backend> {
    pub e: Ciphertext<B::Msg>,
    pub c: B::G1,
    pub s: B::G1,
    pub r: Bytes,
    pub proof: NiProof<Dleq<B::Msg>>,
}

crate::wire_struct!(Extracted<B: Backend> { e, c, s, r, proof });

pub fn sig_extract<B: Backend, R: Rng + ?Sized>(
    keys: &ReceiverKeys<B>,
    sender: &BlsPublic<B>,
    mu: &Signcryption<B>,
    m: &[u8],
    rng: &mut R,
) -> Option<Extracted<B>> {
    if unsigncrypt(keys, sender, mu).as_deref() != Some(m) {
        return None;
    }
    let msg = B::Msg::encode_message(m).ok()?;
    let stmt = Dleq::decrypts_with_key(keys.message.pk, &mu.e, &msg);
    let proof = fs::prove(&stmt, &keys.message.sk, EXTRACT_DOMAIN, rng).ok()?;
    let s = dem_decrypt(&keys.kem.decap(&mu.c), &mu.mu3);
    Some(Extracted { e: mu.e, c: mu.c, s, r: mu.r.clone(), proof })
}

pub fn sig_verify<B: Backend>(
    sender: &BlsPublic<B>,
    receiver: &ReceiverPublic<B>,
    m: &[u8],
    x: &Extracted<B>,
) -> bool {
    let Ok(msg) = B::Msg::encode_message(m) else { return false };
    sender.verify(&signed_string::<B>(&x.c, &x.e), &ClassSSignature::retrieve(x.s, x.r.clone()))
        && fs::verify(&Dleq::decrypts_with_key(receiver.message, &x.e, &msg), EXTRACT_DOMAIN, &x.proof)
}

#[cfg(test)]
mod tests;
