//! BLS signatures as a class-𝕊 member.
//!
//! A signature splits into a significant part `s = H1(m)^sk ∈ G1` and a
//! simulatable part `r`, which is empty for BLS. Verification is the
//! homomorphism check `f(s) = I` with `f(x) = e(x, g2)` and
//! `I = e(H1(m), pk)`.

use crate::groups::{Backend, Hom, PairingHom, PrimeGroup, Rng, ScalarField};
use crate::wire::{Bytes, Decode, Encode, Reader};
use crate::Error;

const HASH_DOMAIN: &[u8] = b"bls-signature";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlsPublic<B: Backend> {
    pub pk: B::G2,
}

crate::wire_struct!(BlsPublic<B: Backend> { pk });

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlsKeys<B: Backend> {
    pub sk: B::Scalar,
    pub public: BlsPublic<B>,
}

impl<B: Backend> Encode for BlsKeys<B> {
    fn encode(&self, out: &mut Vec<u8>) {
        self.sk.encode(out);
    }
}

impl<B: Backend> Decode for BlsKeys<B> {
    fn decode(r: &mut Reader<'_>) -> Result<Self, Error> {
        let sk = B::Scalar::decode(r)?;
        BlsKeys::from_secret(sk)
    }
}

/// `(s, r)` as produced by `convert`; `retrieve` is the identity on this
/// representation since BLS carries nothing else.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSSignature<B: Backend> {
    pub s: B::G1,
    pub r: Bytes,
}

crate::wire_struct!(ClassSSignature<B: Backend> { s, r });

/// The point every signature on `msg` is an exponentiation of.
pub fn hash_message<B: Backend>(msg: &[u8]) -> B::G1 {
    B::hash_to_g1(HASH_DOMAIN, msg)
}

impl<B: Backend> BlsKeys<B> {
    pub fn generate<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_secret(B::Scalar::random_nonzero(rng)).expect("nonzero key")
    }

    pub fn from_secret(sk: B::Scalar) -> Result<Self, Error> {
        if num_traits::Zero::is_zero(&sk) {
            return Err(Error::Parameter("signing key must be nonzero"));
        }
        Ok(BlsKeys { sk, public: BlsPublic { pk: B::G2::generator().pow(&sk) } })
    }

    pub fn sign(&self, msg: &[u8]) -> ClassSSignature<B> {
        ClassSSignature { s: self.sign_point(&hash_message::<B>(msg)), r: Bytes::default() }
    }

    /// Signs an already hashed point.
    pub fn sign_point(&self, h: &B::G1) -> B::G1 {
        h.pow(&self.sk)
    }
}

impl<B: Backend> BlsPublic<B> {
    /// The pair `(f, I)` for `msg` and simulatable part `r`.
    pub fn compute(&self, msg: &[u8], _r: &Bytes) -> (PairingHom<B>, B::Gt) {
        let f = PairingHom::new(B::G2::generator());
        (f, B::pairing(&hash_message::<B>(msg), &self.pk))
    }

    pub fn verify(&self, msg: &[u8], sig: &ClassSSignature<B>) -> bool {
        if !sig.r.0.is_empty() {
            return false;
        }
        let (f, i) = self.compute(msg, &sig.r);
        f.apply(&sig.s) == i
    }
}

impl<B: Backend> ClassSSignature<B> {
    pub fn convert(&self) -> (B::G1, Bytes) {
        (self.s, self.r.clone())
    }

    pub fn retrieve(s: B::G1, r: Bytes) -> Self {
        ClassSSignature { s, r }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{Bls, Toy, ToyElement, ToyScalar};
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn zero_key_rejected() {
        assert!(BlsKeys::<Toy>::from_secret(ToyScalar::new(0)).is_err());
    }

    #[test]
    fn toy_signature_is_exponent_product() {
        let keys = BlsKeys::<Toy>::from_secret(ToyScalar::new(3)).unwrap();
        let h = ToyElement::from_log(ToyScalar::new(7));
        let s = keys.sign_point(&h);
        assert_eq!(s, ToyElement::from_log(ToyScalar::new(21)));
        let f = PairingHom::<Toy>::new(ToyElement::generator());
        let i = Toy::pairing(&h, &keys.public.pk);
        assert_eq!(f.apply(&s), i);
        assert_eq!(i, ToyElement::from_log(ToyScalar::new(21)));
    }

    #[test]
    fn only_the_true_s_verifies_on_toy() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let keys = BlsKeys::<Toy>::generate(&mut rng);
        let sig = keys.sign(b"m");
        let (f, i) = keys.public.compute(b"m", &sig.r);
        let hits: Vec<_> = ToyElement::all().filter(|s| f.apply(s) == i).collect();
        assert_eq!(hits, vec![sig.s]);
        assert_eq!(f.apply(&ToyElement::identity()), ToyElement::identity());
    }

    #[test]
    fn sign_verify_round_trip() {
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        for i in 0..100u32 {
            let keys = BlsKeys::<Toy>::generate(&mut rng);
            let msg = i.to_be_bytes();
            let sig = keys.sign(&msg);
            assert!(keys.public.verify(&msg, &sig));
            let (s, r) = sig.convert();
            assert_eq!(ClassSSignature::retrieve(s, r), sig);
        }
        let keys = BlsKeys::<Bls>::generate(&mut rng);
        let sig = keys.sign(b"production");
        assert!(keys.public.verify(b"production", &sig));
        assert!(!keys.public.verify(b"other", &sig));
    }

    #[test]
    fn nonempty_r_rejected() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let keys = BlsKeys::<Toy>::generate(&mut rng);
        let mut sig = keys.sign(b"m");
        sig.r = Bytes(vec![0]);
        assert!(!keys.public.verify(b"m", &sig));
    }
}
