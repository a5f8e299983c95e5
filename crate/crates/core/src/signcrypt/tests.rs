use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use super::*;
use crate::groups::{Bls, Toy, ToyElement};
use crate::sigma::{run, Protocol};
use crate::wire::Decode;

fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

struct Setup<B: Backend> {
    sender: BlsKeys<B>,
    receiver: ReceiverKeys<B>,
}

impl<B: Backend> Setup<B> {
    fn new(rng: &mut ChaCha20Rng) -> Self {
        Setup { sender: BlsKeys::generate(rng), receiver: ReceiverKeys::generate(rng) }
    }

    fn signcrypt(&self, m: &[u8], rng: &mut ChaCha20Rng) -> (Signcryption<B>, SenderCoins<B>) {
        signcrypt(&self.sender, &self.receiver.public(), m, rng).unwrap()
    }
}

fn other<B: Backend>(m: &[u8], rng: &mut ChaCha20Rng) -> Vec<u8> {
    loop {
        let m2 = B::Msg::random_message(rng);
        if m2 != m {
            return m2;
        }
    }
}

fn full_suite<B: Backend>(rng: &mut ChaCha20Rng) {
    let s = Setup::<B>::new(rng);
    let (spk, rpk) = (s.sender.public, s.receiver.public());
    let m = B::Msg::random_message(rng);
    let (mu, coins) = s.signcrypt(&m, rng);
    assert_eq!(unsigncrypt(&s.receiver, &spk, &mu).unwrap(), m);
    assert_eq!(Signcryption::<B>::from_bytes(&mu.to_bytes()).unwrap(), mu);

    let stmt = validity_statement(&spk, &rpk, &mu, Role::Signer);
    let w = sender_validity_witness(&spk, &rpk, &mu, &coins).unwrap();
    assert!(run(&stmt, &w, rng).unwrap().1);
    let stmt = validity_statement(&spk, &rpk, &mu, Role::Confirmer);
    let w = receiver_validity_witness(&s.receiver, &spk, &mu).unwrap();
    assert!(run(&stmt, &w, rng).unwrap().1);

    let (stmt, w) = confirm(&s.receiver, &spk, &mu, &m).unwrap();
    assert!(run(&stmt, &w, rng).unwrap().1);
    let m2 = other::<B>(&m, rng);
    assert!(confirm(&s.receiver, &spk, &mu, &m2).is_err());
    assert!(deny(&s.receiver, &spk, &mu, &m).is_err());
    let (stmt, w) = deny(&s.receiver, &spk, &mu, &m2).unwrap();
    assert_eq!(stmt.to_bytes(), deny_statement(&spk, &rpk, &mu, &m2).unwrap().to_bytes());
    assert!(run(&stmt, &w, rng).unwrap().1);

    let x = sig_extract(&s.receiver, &spk, &mu, &m, rng).unwrap();
    assert!(sig_verify(&spk, &rpk, &m, &x));
    assert!(!sig_verify(&spk, &rpk, &m2, &x));
    assert!(spk.verify(&mu.signed_string(), &ClassSSignature::retrieve(x.s, x.r.clone())));
    assert_eq!(Extracted::<B>::from_bytes(&x.to_bytes()).unwrap(), x);
    assert!(sig_extract(&s.receiver, &spk, &mu, &m2, rng).is_none());
}

#[test]
fn toy_suite() {
    let mut rng = rng(1);
    for _ in 0..30 {
        full_suite::<Toy>(&mut rng);
    }
}

#[test]
fn production_suite() {
    full_suite::<Bls>(&mut rng(2));
}

#[test]
fn toy_byte_layout() {
    let mut rng = rng(3);
    let s = Setup::<Toy>::new(&mut rng);
    let (mu, _) = s.signcrypt(&[5], &mut rng);
    // Two elements for e, one each for c and μ3, and an empty r.
    assert_eq!(mu.to_bytes().len(), 2 + 2 + 2 + 2 + 4);
}

#[test]
fn swaps_and_perturbations_are_rejected() {
    let mut rng = rng(4);
    for _ in 0..100 {
        let s = Setup::<Toy>::new(&mut rng);
        let spk = s.sender.public;
        let (a, _) = s.signcrypt(&[1], &mut rng);
        let (b, _) = s.signcrypt(&[2], &mut rng);
        let mut bad = a.clone();
        bad.mu3 = bad.mu3.op(&ToyElement::generator());
        assert!(unsigncrypt(&s.receiver, &spk, &bad).is_none());
        // The toy hash has 101 outputs, so a swap verifies exactly when the
        // two signed strings collide.
        let swapped = Signcryption { e: b.e, ..a.clone() };
        let collides = crate::primitives::bls::hash_message::<Toy>(&swapped.signed_string())
            == crate::primitives::bls::hash_message::<Toy>(&a.signed_string());
        assert_eq!(unsigncrypt(&s.receiver, &spk, &swapped).is_some(), collides);
    }
}

#[test]
fn broken_signature_layer_refuses_confirmation() {
    let mut rng = rng(5);
    let s = Setup::<Toy>::new(&mut rng);
    let spk = s.sender.public;
    let (mut mu, _) = s.signcrypt(&[7], &mut rng);
    mu.mu3 = mu.mu3.op(&ToyElement::generator());
    for v in 0..101u8 {
        assert!(confirm(&s.receiver, &spk, &mu, &[v]).is_err());
        assert!(deny(&s.receiver, &spk, &mu, &[v]).is_err());
    }
    assert!(receiver_validity_witness(&s.receiver, &spk, &mu).is_err());
}

#[test]
fn validity_proof_rejected_on_mismatched_components() {
    let mut rng = rng(6);
    let s = Setup::<Bls>::new(&mut rng);
    let (spk, rpk) = (s.sender.public, s.receiver.public());
    let (a, _) = s.signcrypt(b"a", &mut rng);
    let (b, _) = s.signcrypt(b"b", &mut rng);
    let stmt = validity_statement(&spk, &rpk, &a, Role::Confirmer);
    let w = receiver_validity_witness(&s.receiver, &spk, &a).unwrap();
    let (t, ok) = run(&stmt, &w, &mut rng).unwrap();
    assert!(ok);
    let mixed = Signcryption { c: b.c, ..a.clone() };
    assert!(!validity_statement(&spk, &rpk, &mixed, Role::Confirmer).verify(&t));
    assert!(receiver_validity_witness(&s.receiver, &spk, &mixed).is_err());
}
