use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use super::*;
use crate::groups::{Bls, PrimeGroup, Toy, ToyElement};
use crate::primitives::elgamal::encrypt;
use crate::primitives::Ciphertext;
use crate::sigma::run;
use crate::wire::{Decode, Encode};

fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn other_message<S: Cdcs>(m: &[u8], rng: &mut ChaCha20Rng) -> Vec<u8> {
    loop {
        let m2 = S::random_message(rng);
        if m2 != m {
            return m2;
        }
    }
}

fn deny_accepts<S: Cdcs>(p: &Parties<S>, m: &[u8], sig: &S::Signature, rng: &mut ChaCha20Rng) -> bool {
    match p.deny(m, sig).unwrap() {
        Denial::Evident => S::deny_statement(&p.signer_pk, &p.confirmer_pk, m, sig).is_none(),
        Denial::Proof(stmt, w) => {
            let public = S::deny_statement(&p.signer_pk, &p.confirmer_pk, m, sig).unwrap();
            public.to_bytes() == stmt.to_bytes() && run(&public, &w, rng).unwrap().1
        }
    }
}

fn lifecycle<S: Cdcs>(p: &Parties<S>, rng: &mut ChaCha20Rng) {
    let m = S::random_message(rng);
    let (sig, coins) = p.sign(&m, rng).unwrap();
    assert!(p.verify(&m, &sig));
    assert!(S::verify_with_coins(&p.signer_pk, &p.confirmer_pk, &m, &sig, &coins));
    assert_eq!(S::Signature::from_bytes(&sig.to_bytes()).unwrap(), sig);

    let (stmt, w) = p.sconfirm(&m, &sig, &coins).unwrap();
    assert!(run(&stmt, &w, rng).unwrap().1);
    let (stmt, w) = p.confirm(&m, &sig).unwrap();
    let public = S::confirm_statement(&p.signer_pk, &p.confirmer_pk, &m, &sig, Role::Confirmer).unwrap();
    assert_eq!(public.to_bytes(), stmt.to_bytes());
    assert!(run(&public, &w, rng).unwrap().1);
    assert!(p.deny(&m, &sig).is_err());

    let conv = p.convert(&m, &sig, rng).unwrap();
    assert!(p.verify_converted(&m, &conv));
    assert_eq!(S::Converted::from_bytes(&conv.to_bytes()).unwrap(), conv);

    let m2 = other_message::<S>(&m, rng);
    if !p.verify(&m2, &sig) {
        assert!(!p.verify_converted(&m2, &conv));
        assert!(p.convert(&m2, &sig, rng).is_none());
        assert!(p.confirm(&m2, &sig).is_err());
        assert!(deny_accepts(p, &m2, &sig, rng));
    }

    let psi = S::sample(&p.signer_pk, &p.confirmer_pk, rng);
    if !p.verify(&m, &psi) {
        assert!(deny_accepts(p, &m, &psi, rng));
        assert!(p.convert(&m, &psi, rng).is_none());
    }
}

fn toy_lifecycle<S: Cdcs<Backend = Toy>>(seed: u64) {
    let mut rng = rng(seed);
    for _ in 0..30 {
        let p = Parties::<S>::generate(&mut rng);
        lifecycle(&p, &mut rng);
    }
}

#[test]
fn plain_ste_lifecycle() {
    toy_lifecycle::<PlainStE<Toy>>(1);
}

#[test]
fn new_ste_lifecycle() {
    toy_lifecycle::<NewStE<Toy>>(2);
}

#[test]
fn ets_lifecycle() {
    toy_lifecycle::<EtS<Toy>>(3);
}

#[test]
fn ctets_lifecycle() {
    toy_lifecycle::<CtEtS<Toy>>(4);
}

#[test]
fn cteas_lifecycle() {
    toy_lifecycle::<CtEaS<Toy>>(5);
}

#[test]
fn production_lifecycles() {
    let mut rng = rng(6);
    lifecycle(&Parties::<PlainStE<Bls>>::generate(&mut rng), &mut rng);
    lifecycle(&Parties::<NewStE<Bls>>::generate(&mut rng), &mut rng);
    lifecycle(&Parties::<EtS<Bls>>::generate(&mut rng), &mut rng);
    lifecycle(&Parties::<CtEaS<Bls>>::generate(&mut rng), &mut rng);
    lifecycle(&Parties::<CtEtS<Bls>>::generate(&mut rng), &mut rng);
}

fn refresh<G: PrimeGroup>(pk: &G, ct: &Ciphertext<G>, rng: &mut ChaCha20Rng) -> Ciphertext<G> {
    ct.op(&encrypt(pk, &G::identity(), rng).0)
}

#[test]
fn re_encryption_survives_in_malleable_schemes() {
    let mut rng = rng(7);
    for _ in 0..50 {
        let p = Parties::<PlainStE<Toy>>::generate(&mut rng);
        let m = PlainStE::<Toy>::random_message(&mut rng);
        let (sig, _) = p.sign(&m, &mut rng).unwrap();
        let mauled = refresh(&p.confirmer_pk, &sig, &mut rng);
        assert!(p.convert(&m, &mauled, &mut rng).is_some());

        let p = Parties::<CtEaS<Toy>>::generate(&mut rng);
        let (sig, _) = p.sign(&m, &mut rng).unwrap();
        let mauled = CtEaSSignature { e: refresh(&p.confirmer_pk, &sig.e, &mut rng), ..sig };
        assert!(p.convert(&m, &mauled, &mut rng).is_some());
    }
}

#[test]
fn re_encryption_fails_against_new_ste() {
    let mut rng = rng(8);
    let mut survived = 0;
    for _ in 0..20 {
        let p = Parties::<NewStE<Bls>>::generate(&mut rng);
        let m = b"message".to_vec();
        let (sig, _) = p.sign(&m, &mut rng).unwrap();
        let ct = refresh(&p.confirmer_pk, &sig.ciphertext(), &mut rng);
        let mauled = NewStESignature { c: ct.c, e: ct.e, r: sig.r.clone() };
        survived += p.convert(&m, &mauled, &mut rng).is_some() as u32;
    }
    assert_eq!(survived, 0);
}

#[test]
fn perturbed_new_ste_is_denied() {
    let mut rng = rng(9);
    for _ in 0..100 {
        let p = Parties::<NewStE<Toy>>::generate(&mut rng);
        let m = b"m".to_vec();
        let (mut sig, _) = p.sign(&m, &mut rng).unwrap();
        sig.e = sig.e.op(&ToyElement::generator());
        assert!(!p.verify(&m, &sig));
        assert!(deny_accepts(&p, &m, &sig, &mut rng));
    }
}

#[test]
fn random_new_ste_triples_are_invalid() {
    let mut rng = rng(10);
    let p = Parties::<NewStE<Toy>>::generate(&mut rng);
    let m = b"m".to_vec();
    let invalid = (0..1000).filter(|_| !p.verify(&m, &NewStE::<Toy>::sample(&p.signer_pk, &p.confirmer_pk, &mut rng))).count();
    // Exactly one `e` per `c` is valid, so the expected rate is 100/101.
    assert!(invalid >= 1000 - 1000 * 2 / 101, "{invalid}");
}

#[test]
fn encapsulations_differ_between_signatures() {
    let mut rng = rng(11);
    let p = Parties::<NewStE<Bls>>::generate(&mut rng);
    let cs: std::collections::HashSet<Vec<u8>> =
        (0..100).map(|_| p.sign(b"same", &mut rng).unwrap().0.c.to_bytes()).collect();
    assert_eq!(cs.len(), 100);
}

#[test]
fn confirm_replay_on_other_message_rejects() {
    let mut rng = rng(12);
    let p = Parties::<NewStE<Bls>>::generate(&mut rng);
    let (sig, _) = p.sign(b"one", &mut rng).unwrap();
    let (stmt, w) = p.confirm(b"one", &sig).unwrap();
    let (t, ok) = run(&stmt, &w, &mut rng).unwrap();
    assert!(ok);
    let other = NewStE::<Bls>::confirm_statement(&p.signer_pk, &p.confirmer_pk, b"two", &sig, Role::Confirmer).unwrap();
    assert!(!other.verify(&crate::sigma::Transcript { ..t }));
}

#[test]
fn ctets_swapped_ciphertexts_break_both() {
    let mut rng = rng(13);
    let p = Parties::<CtEtS<Toy>>::generate(&mut rng);
    let (a, _) = p.sign(b"a", &mut rng).unwrap();
    let (b, _) = p.sign(b"b", &mut rng).unwrap();
    let a2 = CtEtSSignature { e: b.e.clone(), ..a.clone() };
    let b2 = CtEtSSignature { e: a.e.clone(), ..b.clone() };
    assert!(!p.verify(b"a", &a2) && !p.verify(b"b", &b2));
    assert!(CtEtS::<Toy>::deny_statement(&p.signer_pk, &p.confirmer_pk, b"a", &a2).is_none());
    assert!(matches!(p.deny(b"a", &a2), Ok(Denial::Evident)));
}

#[test]
fn ets_tampered_conversion_rejected() {
    let mut rng = rng(14);
    let p = Parties::<EtS<Bls>>::generate(&mut rng);
    let m = EtS::<Bls>::random_message(&mut rng);
    let (sig, _) = p.sign(&m, &mut rng).unwrap();
    let conv = p.convert(&m, &sig, &mut rng).unwrap();
    let bytes = conv.to_bytes();
    for i in (0..bytes.len()).step_by(7) {
        let mut flipped = bytes.clone();
        flipped[i] ^= 0x10;
        if let Ok(c) = EtSConverted::<Bls>::from_bytes(&flipped) {
            assert!(!p.verify_converted(&m, &c), "flip at {i}");
        }
    }
}

#[test]
fn signer_confirmation_needs_matching_coins() {
    let mut rng = rng(15);
    let p = Parties::<NewStE<Toy>>::generate(&mut rng);
    let (sig, coins) = p.sign(b"x", &mut rng).unwrap();
    let (sig2, _) = p.sign(b"x", &mut rng).unwrap();
    assert!(p.sconfirm(b"x", &sig, &coins).is_ok());
    assert!(p.sconfirm(b"x", &sig2, &coins).is_err());
}
