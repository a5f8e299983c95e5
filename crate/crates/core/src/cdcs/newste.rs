//! Sign-then-encrypt over KEM/DEM.
//!
//! The signer encapsulates a key `k` as `c`, signs `c ‖ m` to get `(s, r)`,
//! and outputs `μ = (c, s·k, r)`. Because `c` is signed, mauling the
//! ciphertext changes the signed string and the result no longer verifies.

use std::marker::PhantomData;

use crate::cdcs::{bind, Cdcs, Role, DENY_COPIES};
use crate::groups::{Backend, PairingHom, PrimeGroup, Rng, ScalarField};
use crate::primitives::elgamal::{dem_decrypt, dem_encrypt, encap_with};
use crate::primitives::{BlsKeys, BlsPublic, Ciphertext, ClassSSignature, ElGamalKeys};
use crate::sigma::{ConfirmDeny, DecWitness, Mode, Path, Repeated};
use crate::wire::Bytes;
use crate::Error;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NewStE<B: Backend>(PhantomData<B>);

/// `(c, e, r)`: encapsulation, DEM ciphertext of `s`, simulatable part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewStESignature<B: Backend> {
    pub c: B::G1,
    pub e: B::G1,
    pub r: Bytes,
}

crate::wire_struct!(NewStESignature<B: Backend> { c, e, r });

impl<B: Backend> NewStESignature<B> {
    /// `(c, e)` is an ElGamal ciphertext of `s` under the confirmer key.
    pub fn ciphertext(&self) -> Ciphertext<B::G1> {
        Ciphertext { c: self.c, e: self.e }
    }
}

/// A BLS signature on `c ‖ m`, together with `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewStEConverted<B: Backend> {
    pub c: B::G1,
    pub s: B::G1,
    pub r: Bytes,
}

crate::wire_struct!(NewStEConverted<B: Backend> { c, s, r });

fn statement<B: Backend>(
    spk: &BlsPublic<B>,
    cpk: &B::G1,
    m: &[u8],
    sig: &NewStESignature<B>,
    path: Path,
    mode: Mode,
) -> ConfirmDeny<PairingHom<B>> {
    let (f, i) = spk.compute(&bind(&sig.c, m), &sig.r);
    ConfirmDeny::new(f, i, *cpk, sig.ciphertext(), path, mode)
}

impl<B: Backend> Cdcs for NewStE<B> {
    type Backend = B;
    const NAME: &'static str = "new-ste";

    type SignerKey = BlsKeys<B>;
    type SignerPublic = BlsPublic<B>;
    type ConfirmerKey = ElGamalKeys<B::G1>;
    type ConfirmerPublic = B::G1;
    type Signature = NewStESignature<B>;
    /// The significant part `s` and the encapsulation exponent.
    type Coins = (B::G1, B::Scalar);
    type Converted = NewStEConverted<B>;
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
    ) -> Result<(NewStESignature<B>, Self::Coins), Error> {
        let a = B::Scalar::random(rng);
        let (c, k) = encap_with(cpk, &a);
        let (s, r) = sk.sign(&bind(&c, m)).convert();
        Ok((NewStESignature { c, e: dem_encrypt(&k, &s), r }, (s, a)))
    }

    fn verify(ck: &ElGamalKeys<B::G1>, spk: &BlsPublic<B>, m: &[u8], sig: &NewStESignature<B>) -> bool {
        let s = dem_decrypt(&ck.decap(&sig.c), &sig.e);
        spk.verify(&bind(&sig.c, m), &ClassSSignature::retrieve(s, sig.r.clone()))
    }

    fn verify_with_coins(
        spk: &BlsPublic<B>,
        cpk: &B::G1,
        m: &[u8],
        sig: &NewStESignature<B>,
        (s, a): &Self::Coins,
    ) -> bool {
        let (c, k) = encap_with(cpk, a);
        c == sig.c
            && dem_encrypt(&k, s) == sig.e
            && spk.verify(&bind(&c, m), &ClassSSignature::retrieve(*s, sig.r.clone()))
    }

    fn convert<R: Rng + ?Sized>(
        ck: &ElGamalKeys<B::G1>,
        spk: &BlsPublic<B>,
        m: &[u8],
        sig: &NewStESignature<B>,
        _: &mut R,
    ) -> Option<NewStEConverted<B>> {
        let s = dem_decrypt(&ck.decap(&sig.c), &sig.e);
        let conv = NewStEConverted { c: sig.c, s, r: sig.r.clone() };
        Self::verify_converted(spk, &ck.pk, m, &conv).then_some(conv)
    }

    fn verify_converted(spk: &BlsPublic<B>, _: &B::G1, m: &[u8], conv: &NewStEConverted<B>) -> bool {
        spk.verify(&bind(&conv.c, m), &ClassSSignature::retrieve(conv.s, conv.r.clone()))
    }

    /// Uniform `(c, e)` with the (empty) simulatable part.
    fn sample<R: Rng + ?Sized>(_: &BlsPublic<B>, _: &B::G1, rng: &mut R) -> NewStESignature<B> {
        NewStESignature { c: B::G1::random(rng), e: B::G1::random(rng), r: Bytes::default() }
    }

    fn confirm_statement(
        spk: &BlsPublic<B>,
        cpk: &B::G1,
        m: &[u8],
        sig: &NewStESignature<B>,
        role: Role,
    ) -> Option<Self::Confirm> {
        Some(statement(spk, cpk, m, sig, role.path(), Mode::Confirm))
    }

    fn deny_statement(spk: &BlsPublic<B>, cpk: &B::G1, m: &[u8], sig: &NewStESignature<B>) -> Option<Self::Deny> {
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
