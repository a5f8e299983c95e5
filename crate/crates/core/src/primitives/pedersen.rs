//! Pedersen commitments `c = g^m h^r`.
//!
//! The opening relation is the homomorphism `f(x) = h^x` with image
//! `I = c·g^{-m}`.

use std::marker::PhantomData;

use crate::groups::{Backend, PrimeGroup, Rng, ScalarField};

#[derive(Clone, Copy, Debug, Default)]
pub struct Pedersen<B: Backend>(PhantomData<B>);

impl<B: Backend> Pedersen<B> {
    pub fn h() -> B::G1 {
        B::pedersen_h()
    }

    pub fn commit(m: &B::Scalar, r: &B::Scalar) -> B::G1 {
        B::G1::generator().pow(m).op(&Self::h().pow(r))
    }

    pub fn commit_random<R: Rng + ?Sized>(m: &B::Scalar, rng: &mut R) -> (B::G1, B::Scalar) {
        let r = B::Scalar::random(rng);
        (Self::commit(m, &r), r)
    }

    pub fn open(c: &B::G1, m: &B::Scalar, r: &B::Scalar) -> bool {
        Self::commit(m, r) == *c
    }

    /// The image `I = c·g^{-m}` that an opening `r` must hit under `x ↦ h^x`.
    pub fn image(c: &B::G1, m: &B::Scalar) -> B::G1 {
        c.div(&B::G1::generator().pow(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{Toy, ToyElement, ToyScalar};
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn zero_opening_is_plain_exponent() {
        let m = ToyScalar::new(12);
        assert_eq!(Pedersen::<Toy>::commit(&m, &ToyScalar::zero()), ToyElement::from_log(m));
    }

    #[test]
    fn opening_relation() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        for _ in 0..100 {
            let m = ToyScalar::random(&mut rng);
            let (c, r) = Pedersen::<Toy>::commit_random(&m, &mut rng);
            assert!(Pedersen::<Toy>::open(&c, &m, &r));
            assert_eq!(Pedersen::<Toy>::h().pow(&r), Pedersen::<Toy>::image(&c, &m));
        }
    }

    #[test]
    fn every_message_is_consistent_with_every_commitment() {
        // Perfect hiding: each m has exactly one opening r, found by scanning.
        let c = ToyElement::from_log(ToyScalar::new(55));
        for m in ToyScalar::all() {
            let openings = ToyScalar::all().filter(|r| Pedersen::<Toy>::open(&c, &m, r)).count();
            assert_eq!(openings, 1);
        }
    }
}
