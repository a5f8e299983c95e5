//! Convertible designated confirmer signatures.
//!
//! A signer produces confirmer signatures that nobody can verify alone. The
//! designated confirmer (and the signer, right after signing) can prove
//! validity or invalidity interactively, and the confirmer can convert a
//! valid one into an ordinary publicly verifiable signature.
//!
//! Five constructions share the [`Cdcs`] interface:
//!
//! * [`PlainStE`]: ElGamal encryption of a BLS signature on `m`.
//! * [`CtEaS`]: Pedersen commitment to `m`, encrypted opening, signature on
//!   the commitment only.
//! * [`EtS`]: ElGamal encryption of `m`, signature on the ciphertext.
//! * [`NewStE`]: KEM/DEM, with the encapsulation signed alongside `m`.
//! * [`CtEtS`]: Pedersen commitment, Paillier-encrypted opening, signature
//!   on both.
//!
//! The first two are malleable and exist to be attacked.

mod cteas;
mod ctets;
mod ets;
mod newste;
mod plain;

use std::fmt::Debug;

use crate::groups::{Backend, PrimeGroup, Rng};
use crate::sigma::{Message, Protocol};
use crate::wire::{Decode, Encode};
use crate::Error;

pub use cteas::{CtEaS, CtEaSConverted, CtEaSSignature};
pub use ctets::{CtEtS, CtEtSConverted, CtEtSSignature};
pub use ets::{EtS, EtSConverted, EtSSignature};
pub use newste::{NewStE, NewStEConverted, NewStESignature};
pub use plain::PlainStE;

/// Parallel copies run by every denial protocol; soundness error `2^-40`.
pub const DENY_COPIES: u32 = 40;

/// Who runs a confirmation. The signer can only confirm a signature it just
/// produced, using the coins from signing; the confirmer uses its key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Signer,
    Confirmer,
}

impl Role {
    pub(crate) fn path(self) -> crate::sigma::Path {
        match self {
            Role::Signer => crate::sigma::Path::Randomness,
            Role::Confirmer => crate::sigma::Path::Key,
        }
    }
}

pub type Witness<P> = <P as Protocol>::Witness;

/// A convertible designated confirmer signature scheme.
///
/// The scheme type is a marker; all state lives in the keys and signatures.
pub trait Cdcs: Copy + Debug + Default + Send + Sync + 'static {
    type Backend: Backend;
    const NAME: &'static str;

    type SignerKey: Clone + Debug + Send + Sync + Encode + Decode;
    type SignerPublic: Message;
    type ConfirmerKey: Clone + Debug + Send + Sync + Encode + Decode;
    type ConfirmerPublic: Message;
    type Signature: Message;
    /// Private randomness from signing, kept by the signer for `sconfirm`.
    type Coins: Clone + Debug + Send + Sync;
    type Converted: Message;
    type Confirm: Protocol;
    type Deny: Protocol;

    fn signer_keygen<R: Rng + ?Sized>(rng: &mut R) -> Self::SignerKey;
    fn signer_public(sk: &Self::SignerKey) -> Self::SignerPublic;
    fn confirmer_keygen<R: Rng + ?Sized>(rng: &mut R) -> Self::ConfirmerKey;
    fn confirmer_public(ck: &Self::ConfirmerKey) -> Self::ConfirmerPublic;

    /// A message this scheme can sign, uniformly from a fixed family.
    fn random_message<R: Rng + ?Sized>(rng: &mut R) -> Vec<u8> {
        let mut m = vec![0u8; 16];
        rng.fill_bytes(&mut m);
        m
    }

    fn sign<R: Rng + ?Sized>(
        sk: &Self::SignerKey,
        cpk: &Self::ConfirmerPublic,
        m: &[u8],
        rng: &mut R,
    ) -> Result<(Self::Signature, Self::Coins), Error>;

    /// The confirmer's private validity check.
    fn verify(ck: &Self::ConfirmerKey, spk: &Self::SignerPublic, m: &[u8], sig: &Self::Signature) -> bool;

    /// The signer's check on a signature it produced, from the coins.
    fn verify_with_coins(
        spk: &Self::SignerPublic,
        cpk: &Self::ConfirmerPublic,
        m: &[u8],
        sig: &Self::Signature,
        coins: &Self::Coins,
    ) -> bool;

    /// An ordinary signature, or `None` if `sig` is invalid on `m`.
    fn convert<R: Rng + ?Sized>(
        ck: &Self::ConfirmerKey,
        spk: &Self::SignerPublic,
        m: &[u8],
        sig: &Self::Signature,
        rng: &mut R,
    ) -> Option<Self::Converted>;

    fn verify_converted(
        spk: &Self::SignerPublic,
        cpk: &Self::ConfirmerPublic,
        m: &[u8],
        conv: &Self::Converted,
    ) -> bool;

    /// A uniform element of the signature space.
    fn sample<R: Rng + ?Sized>(spk: &Self::SignerPublic, cpk: &Self::ConfirmerPublic, rng: &mut R) -> Self::Signature;

    /// The public statement of a confirmation, or `None` when the
    /// signature fails a public check and so cannot be confirmed.
    fn confirm_statement(
        spk: &Self::SignerPublic,
        cpk: &Self::ConfirmerPublic,
        m: &[u8],
        sig: &Self::Signature,
        role: Role,
    ) -> Option<Self::Confirm>;

    /// The public statement of a denial, or `None` when the signature fails
    /// a public check, in which case it is invalid without any proof.
    fn deny_statement(
        spk: &Self::SignerPublic,
        cpk: &Self::ConfirmerPublic,
        m: &[u8],
        sig: &Self::Signature,
    ) -> Option<Self::Deny>;

    /// The signer's witness for confirming a signature it just produced.
    fn sconfirm_witness(coins: &Self::Coins) -> Witness<Self::Confirm>;

    fn confirm_witness(ck: &Self::ConfirmerKey) -> Witness<Self::Confirm>;

    fn deny_witness(ck: &Self::ConfirmerKey) -> Witness<Self::Deny>;
}

/// All four keys of one signer–confirmer pair.
#[derive(Clone, Debug)]
pub struct Parties<S: Cdcs> {
    pub signer: S::SignerKey,
    pub signer_pk: S::SignerPublic,
    pub confirmer: S::ConfirmerKey,
    pub confirmer_pk: S::ConfirmerPublic,
}

impl<S: Cdcs> Parties<S> {
    pub fn generate<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let signer = S::signer_keygen(rng);
        let confirmer = S::confirmer_keygen(rng);
        Self::from_keys(signer, confirmer)
    }

    /// Fresh signer key, existing confirmer key.
    pub fn with_confirmer<R: Rng + ?Sized>(confirmer: S::ConfirmerKey, rng: &mut R) -> Self {
        Self::from_keys(S::signer_keygen(rng), confirmer)
    }

    pub fn from_keys(signer: S::SignerKey, confirmer: S::ConfirmerKey) -> Self {
        Parties {
            signer_pk: S::signer_public(&signer),
            confirmer_pk: S::confirmer_public(&confirmer),
            signer,
            confirmer,
        }
    }

    pub fn sign<R: Rng + ?Sized>(&self, m: &[u8], rng: &mut R) -> Result<(S::Signature, S::Coins), Error> {
        S::sign(&self.signer, &self.confirmer_pk, m, rng)
    }

    pub fn verify(&self, m: &[u8], sig: &S::Signature) -> bool {
        S::verify(&self.confirmer, &self.signer_pk, m, sig)
    }

    pub fn convert<R: Rng + ?Sized>(&self, m: &[u8], sig: &S::Signature, rng: &mut R) -> Option<S::Converted> {
        S::convert(&self.confirmer, &self.signer_pk, m, sig, rng)
    }

    pub fn verify_converted(&self, m: &[u8], conv: &S::Converted) -> bool {
        S::verify_converted(&self.signer_pk, &self.confirmer_pk, m, conv)
    }

    /// The confirmer's side of a confirmation. Refuses on invalid input.
    pub fn confirm(&self, m: &[u8], sig: &S::Signature) -> Result<(S::Confirm, Witness<S::Confirm>), Error> {
        if !self.verify(m, sig) {
            return Err(Error::Refused("signature is invalid"));
        }
        let stmt = S::confirm_statement(&self.signer_pk, &self.confirmer_pk, m, sig, Role::Confirmer)
            .ok_or(Error::Refused("signature fails the public check"))?;
        Ok((stmt, S::confirm_witness(&self.confirmer)))
    }

    /// The signer's confirmation of a signature it just produced.
    pub fn sconfirm(
        &self,
        m: &[u8],
        sig: &S::Signature,
        coins: &S::Coins,
    ) -> Result<(S::Confirm, Witness<S::Confirm>), Error> {
        sconfirm::<S>(&self.signer_pk, &self.confirmer_pk, m, sig, coins)
    }

    pub fn deny(&self, m: &[u8], sig: &S::Signature) -> Result<Denial<S>, Error> {
        if self.verify(m, sig) {
            return Err(Error::Refused("signature is valid"));
        }
        Ok(match S::deny_statement(&self.signer_pk, &self.confirmer_pk, m, sig) {
            None => Denial::Evident,
            Some(stmt) => Denial::Proof(stmt, S::deny_witness(&self.confirmer)),
        })
    }
}

pub fn sconfirm<S: Cdcs>(
    spk: &S::SignerPublic,
    cpk: &S::ConfirmerPublic,
    m: &[u8],
    sig: &S::Signature,
    coins: &S::Coins,
) -> Result<(S::Confirm, Witness<S::Confirm>), Error> {
    if !S::verify_with_coins(spk, cpk, m, sig, coins) {
        return Err(Error::Refused("coins do not match the signature"));
    }
    let stmt = S::confirm_statement(spk, cpk, m, sig, Role::Signer)
        .ok_or(Error::Refused("signature fails the public check"))?;
    Ok((stmt, S::sconfirm_witness(coins)))
}

/// How an invalid signature is denied.
pub enum Denial<S: Cdcs> {
    /// A public check already fails; no interaction is needed.
    Evident,
    Proof(S::Deny, Witness<S::Deny>),
}

/// `encode(x) ‖ m`: every encoding here is fixed width, so `m` always starts
/// at the same offset.
pub(crate) fn bind<T: Encode>(prefix: &T, m: &[u8]) -> Vec<u8> {
    let mut out = prefix.to_bytes();
    out.extend_from_slice(m);
    out
}

pub(crate) fn random_pair<G: PrimeGroup, R: Rng + ?Sized>(rng: &mut R) -> crate::primitives::Ciphertext<G> {
    crate::primitives::Ciphertext { c: G::random(rng), e: G::random(rng) }
}

#[cfg(test)]
mod tests;
