use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use super::*;
use crate::groups::{
    Backend, Bls, BlsG1, Hom, IdentityHom, MessageGroup, PairingHom, PrimeGroup, ScalarField, Toy, ToyElement,
    ToyScalar,
};
use crate::primitives::elgamal::encrypt;
use crate::primitives::{BlsKeys, ElGamalKeys, PaillierKeys, Pedersen};
use crate::wire::{Decode, Encode};

fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn toy_sig_statement(rng: &mut ChaCha20Rng) -> (HomPreimage<PairingHom<Toy>>, ToyElement) {
    let keys = BlsKeys::<Toy>::generate(rng);
    let sig = keys.sign(b"msg");
    let (f, i) = keys.public.compute(b"msg", &sig.r);
    (HomPreimage::new(f, i), sig.s)
}

#[test]
fn hom_preimage_completeness_and_zero_challenge() {
    let mut rng = rng(1);
    for _ in 0..100 {
        let (stmt, s) = toy_sig_statement(&mut rng);
        let (_, ok) = run(&stmt, &s, &mut rng).unwrap();
        assert!(ok);
        let t = stmt.prove_with(&s, ToyElement::random(&mut rng), 0, 0).unwrap();
        assert_eq!(stmt.f.apply(&t.second), t.first);
    }
}

#[test]
fn hom_preimage_refuses_bad_witness() {
    let mut rng = rng(2);
    let (stmt, s) = toy_sig_statement(&mut rng);
    assert!(stmt.first(&s.op(&ToyElement::generator()), ToyElement::identity()).is_err());
}

#[test]
fn hom_preimage_on_bls() {
    let mut rng = rng(3);
    let keys = BlsKeys::<Bls>::generate(&mut rng);
    let sig = keys.sign(b"m");
    let (f, i) = keys.public.compute(b"m", &sig.r);
    let stmt = HomPreimage::new(f, i);
    let (t1, t2) = fork(&stmt, &sig.s, 5, 1 << 100, &mut rng).unwrap();
    assert_eq!(stmt.extract(&t1, &t2).unwrap(), sig.s);
    let sim = stmt.simulate(77, 0, &mut rng);
    assert!(stmt.verify(&sim));
}

#[test]
fn extraction_with_gap_four() {
    let mut rng = rng(4);
    let (stmt, s) = toy_sig_statement(&mut rng);
    let (t1, t2) = fork(&stmt, &s, 3, 7, &mut rng).unwrap();
    assert_eq!(stmt.extract(&t1, &t2).unwrap(), s);
    // By hand: s = (z1^{-1} z2)^{-25}.
    let d = t1.second.inverse().op(&t2.second);
    assert_eq!(d.pow(&(-ToyScalar::new(25))), s);
    assert!(stmt.extract(&t1, &t1).is_err());
}

fn toy_dec(rng: &mut ChaCha20Rng, path: Path) -> (DecKnowledge<ToyElement>, DecWitness<ToyElement>, ToyElement, ElGamalKeys<ToyElement>) {
    let keys = ElGamalKeys::<ToyElement>::generate(rng);
    let s = ToyElement::random(rng);
    let (ct, a) = encrypt(&keys.pk, &s, rng);
    let w = match path {
        Path::Key => DecWitness::Key(keys.sk),
        Path::Randomness => DecWitness::Randomness { s, a },
    };
    (DecKnowledge::new(keys.pk, ct, path), w, s, keys)
}

#[test]
fn decryption_knowledge_both_paths() {
    let mut rng = rng(5);
    for _ in 0..50 {
        let keys = ElGamalKeys::<ToyElement>::generate(&mut rng);
        let s = ToyElement::random(&mut rng);
        let (ct, a) = encrypt(&keys.pk, &s, &mut rng);
        let by_key = DecKnowledge::new(keys.pk, ct, Path::Key);
        let by_rand = DecKnowledge::new(keys.pk, ct, Path::Randomness);
        assert!(run(&by_key, &DecWitness::Key(keys.sk), &mut rng).unwrap().1);
        assert!(run(&by_rand, &DecWitness::Randomness { s, a }, &mut rng).unwrap().1);
        assert!(by_key.first(&DecWitness::Randomness { s, a }, by_key.nonce(&mut rng)).is_err());
    }
}

#[test]
fn decryption_knowledge_degenerate_and_extract() {
    let mut rng = rng(6);
    let (stmt, w, s, _) = toy_dec(&mut rng, Path::Key);
    let s_prime = ToyElement::random(&mut rng);
    let t = stmt.prove_with(&w, (s_prime, ToyScalar::new(0), ToyScalar::new(3)), 0, 9).unwrap();
    assert_eq!(t.first, crate::primitives::Ciphertext { c: ToyElement::identity(), e: s_prime });
    assert_eq!(t.second.0, s_prime);
    assert!(stmt.verify(&t));
    let (t0, t1) = fork(&stmt, &w, 0, 1, &mut rng).unwrap();
    assert_eq!(t0.second.0.inverse().op(&t1.second.0), s);
    assert_eq!(stmt.extract(&t0, &t1).unwrap(), s);
}

#[test]
fn decryption_knowledge_rejects_tampering() {
    let mut rng = rng(7);
    let (stmt, w, _, _) = toy_dec(&mut rng, Path::Randomness);
    let (t, ok) = run(&stmt, &w, &mut rng).unwrap();
    assert!(ok);
    let mut bad = t.clone();
    bad.second.0 = bad.second.0.op(&ToyElement::generator());
    assert!(!stmt.verify(&bad));
    let mut bad = t.clone();
    bad.third = bad.third + ToyScalar::new(1);
    assert!(!stmt.verify(&bad));
    let mut bad = t;
    bad.b = 101;
    assert!(!stmt.verify(&bad));
}

#[test]
fn simulations_verify() {
    let mut rng = rng(8);
    let (h, _) = toy_sig_statement(&mut rng);
    let (d, _, _, _) = toy_dec(&mut rng, Path::Key);
    for _ in 0..1000 {
        let (b, c) = (h.space().sample(&mut rng), d.inner_space().sample(&mut rng));
        assert!(h.verify(&h.simulate(b, 0, &mut rng)));
        assert!(d.verify(&d.simulate(b, c, &mut rng)));
    }
}

fn confirm_statement(
    rng: &mut ChaCha20Rng,
    mode: Mode,
) -> (ConfirmDeny<PairingHom<Toy>>, DecWitness<ToyElement>, ElGamalKeys<ToyElement>) {
    let signer = BlsKeys::<Toy>::generate(rng);
    let confirmer = ElGamalKeys::<ToyElement>::generate(rng);
    let sig = signer.sign(b"m");
    let (f, i) = signer.public.compute(b"m", &sig.r);
    let s = match mode {
        Mode::Confirm => sig.s,
        Mode::Deny => sig.s.op(&ToyElement::generator()),
    };
    let (ct, _) = encrypt(&confirmer.pk, &s, rng);
    let stmt = ConfirmDeny::new(f, i, confirmer.pk, ct, Path::Key, mode);
    (stmt, DecWitness::Key(confirmer.sk), confirmer)
}

#[test]
fn confirm_and_deny() {
    let mut rng = rng(9);
    for _ in 0..50 {
        let (c, w, _) = confirm_statement(&mut rng, Mode::Confirm);
        assert!(run(&c, &w, &mut rng).unwrap().1);
        let (d, w, _) = confirm_statement(&mut rng, Mode::Deny);
        assert_eq!(d.space(), ChallengeSpace::BINARY);
        assert!(run(&d, &w, &mut rng).unwrap().1);
        let rep = Repeated::new(d.clone(), 40).unwrap();
        assert!(run(&rep, &w, &mut rng).unwrap().1);
        assert!(rep.verify(&rep.simulate(rep.space().sample(&mut rng), 3, &mut rng)));
        assert!(d.verify(&d.simulate(1, 5, &mut rng)));
        assert!(d.verify(&d.simulate(0, 5, &mut rng)));
    }
}

#[test]
fn honest_prover_refuses_wrong_side() {
    let mut rng = rng(10);
    let (c, cw, _) = confirm_statement(&mut rng, Mode::Confirm);
    let as_deny = ConfirmDeny::new(c.f, c.image, c.dec.pk, c.dec.ct, Path::Key, Mode::Deny);
    assert!(matches!(as_deny.first(&cw, as_deny.nonce(&mut rng)), Err(crate::Error::Refused(_))));
    let (d, w, _) = confirm_statement(&mut rng, Mode::Deny);
    let as_confirm = ConfirmDeny::new(d.f, d.image, d.dec.pk, d.dec.ct, Path::Key, Mode::Confirm);
    assert!(as_confirm.first(&w, as_confirm.nonce(&mut rng)).is_err());
    // Repetition checks the witness once, on the first copy.
    let rep = Repeated::new(as_deny, 40).unwrap();
    assert!(matches!(rep.first(&cw, rep.nonce(&mut rng)), Err(crate::Error::Refused(_))));
}

#[test]
fn confirm_replayed_on_other_message_rejects() {
    let mut rng = rng(11);
    let signer = BlsKeys::<Toy>::generate(&mut rng);
    let confirmer = ElGamalKeys::<ToyElement>::generate(&mut rng);
    let sig = signer.sign(b"m");
    let (ct, _) = encrypt(&confirmer.pk, &sig.s, &mut rng);
    let (f, i) = signer.public.compute(b"m", &sig.r);
    let stmt = ConfirmDeny::new(f, i, confirmer.pk, ct, Path::Key, Mode::Confirm);
    let (t, ok) = run(&stmt, &DecWitness::Key(confirmer.sk), &mut rng).unwrap();
    assert!(ok);
    // Find a message whose hash differs on the toy group, then replay.
    let other = (0u32..).map(|i| i.to_be_bytes()).find(|m| signer.public.compute(m, &sig.r).1 != i).unwrap();
    let (f2, i2) = signer.public.compute(&other, &sig.r);
    let replay = ConfirmDeny::new(f2, i2, confirmer.pk, ct, Path::Key, Mode::Confirm);
    assert!(t.b == 0 || !replay.verify(&Transcript { first: t.first, b: t.b, second: t.second, c: t.c, third: t.third }));
}

#[test]
fn ets_style_denial_with_identity_map() {
    let mut rng = rng(12);
    let keys = ElGamalKeys::<ToyElement>::generate(&mut rng);
    let m = ToyElement::from_log(ToyScalar::new(4));
    let (ct, a) = encrypt(&keys.pk, &m, &mut rng);
    let claimed = ToyElement::from_log(ToyScalar::new(5));
    let f = IdentityHom::<ToyElement>::new();
    let deny = ConfirmDeny::new(f, claimed, keys.pk, ct, Path::Randomness, Mode::Deny);
    let rep = Repeated::new(deny, 40).unwrap();
    assert!(run(&rep, &DecWitness::Randomness { s: m, a }, &mut rng).unwrap().1);
    let wrong = ConfirmDeny::new(f, m, keys.pk, ct, Path::Key, Mode::Deny);
    assert!(wrong.first(&DecWitness::Key(keys.sk), wrong.nonce(&mut rng)).is_err());
}

#[test]
fn dleq_correct_decryption() {
    let mut rng = rng(13);
    let keys = ElGamalKeys::<ToyElement>::generate(&mut rng);
    let m = ToyElement::random(&mut rng);
    let (ct, a) = encrypt(&keys.pk, &m, &mut rng);
    let by_key = Dleq::decrypts_with_key(keys.pk, &ct, &m);
    let by_rand = Dleq::decrypts_with_randomness(keys.pk, &ct, &m);
    assert!(run(&by_key, &keys.sk, &mut rng).unwrap().1);
    assert!(run(&by_rand, &a, &mut rng).unwrap().1);
    let (t1, t2) = fork(&by_key, &keys.sk, 1, 2, &mut rng).unwrap();
    assert_eq!(by_key.extract(&t1, &t2).unwrap(), keys.sk);
    let wrong = Dleq::decrypts_with_key(keys.pk, &ct, &m.op(&ToyElement::generator()));
    assert!(wrong.first(&keys.sk, ToyScalar::new(1)).is_err());
}

#[test]
fn fiat_shamir_round_trip_and_binding() {
    let mut rng = rng(14);
    let keys = ElGamalKeys::<crate::groups::SecpPoint>::generate(&mut rng);
    let m = crate::groups::SecpPoint::encode_message(b"fs").unwrap();
    let (ct, _) = encrypt(&keys.pk, &m, &mut rng);
    let stmt = Dleq::decrypts_with_key(keys.pk, &ct, &m);
    let proof = fs::prove(&stmt, &keys.sk, b"domain", &mut rng).unwrap();
    assert!(fs::verify(&stmt, b"domain", &proof));
    assert!(!fs::verify(&stmt, b"other", &proof));
    let bytes = proof.to_bytes();
    let decoded = fs::NiProof::<Dleq<_>>::from_bytes(&bytes).unwrap();
    assert!(fs::verify(&stmt, b"domain", &decoded));
    for i in 0..bytes.len() {
        let mut flipped = bytes.clone();
        flipped[i] ^= 1;
        if let Ok(p) = fs::NiProof::<Dleq<_>>::from_bytes(&flipped) {
            assert!(!fs::verify(&stmt, b"domain", &p), "flip at byte {i} accepted");
        }
    }
    let other = fs::prove(&stmt, &keys.sk, b"domain", &mut rng).unwrap();
    assert_ne!(fs::transcript(&stmt, b"domain", &proof).b, fs::transcript(&stmt, b"domain", &other).b);
}

#[test]
fn fiat_shamir_five_move() {
    let mut rng = rng(15);
    let (stmt, w, _) = confirm_statement(&mut rng, Mode::Confirm);
    let proof = fs::prove(&stmt, &w, b"d", &mut rng).unwrap();
    assert!(fs::verify(&stmt, b"d", &proof));
    let t = fs::transcript(&stmt, b"d", &proof);
    assert!(stmt.inner_space().contains(t.c));
}

#[test]
fn and_composition_shares_the_challenge() {
    let mut rng = rng(16);
    let (d, dw, _, _) = toy_dec(&mut rng, Path::Key);
    let (h, s) = toy_sig_statement(&mut rng);
    let both = And::new(d, h).unwrap();
    let w = (dw, s);
    let (t, ok) = run(&both, &w, &mut rng).unwrap();
    assert!(ok);
    let (l, r) = both.parts(&t);
    assert_eq!(l.b, r.b);
    assert_eq!(r.c, 0);
    let mut bad = t;
    bad.second.1 = bad.second.1.op(&ToyElement::generator());
    assert!(!both.verify(&bad));
    assert!(both.verify(&both.simulate(4, 9, &mut rng)));
}

#[test]
fn or_composition_either_witness() {
    let mut rng = rng(17);
    let (h, s) = toy_sig_statement(&mut rng);
    let verifier_key = ElGamalKeys::<ToyElement>::generate(&mut rng);
    let dv = Or::new(h.clone(), Dleq::schnorr(verifier_key.pk)).unwrap();
    assert!(run(&dv, &Either::Left(s), &mut rng).unwrap().1);
    assert!(run(&dv, &Either::Right(verifier_key.sk), &mut rng).unwrap().1);
    // A false signature statement still gets an accepting proof from the
    // verifier's key.
    let false_stmt = HomPreimage::new(h.f, h.image.op(&ToyElement::generator()));
    let dv_false = Or::new(false_stmt, Dleq::schnorr(verifier_key.pk)).unwrap();
    assert!(run(&dv_false, &Either::Right(verifier_key.sk), &mut rng).unwrap().1);
    assert!(dv_false.verify(&dv_false.simulate(50, 0, &mut rng)));
    let other = ElGamalKeys::<ToyElement>::generate(&mut rng);
    assert!(run(&dv_false, &Either::Right(other.sk), &mut rng).is_err());
}

#[test]
fn or_of_five_move_protocols() {
    let mut rng = rng(18);
    let (d1, w1, _, _) = toy_dec(&mut rng, Path::Key);
    let (d2, _, _, _) = toy_dec(&mut rng, Path::Key);
    let or = Or::new(d1, d2).unwrap();
    let (t, ok) = run(&or, &Either::Left(w1), &mut rng).unwrap();
    assert!(ok);
    let (l, r) = or.parts(&t);
    assert_eq!(or.space().add(l.b, r.b), t.b);
    assert_eq!(or.inner_space().add(l.c, r.c), t.c);
    assert!(or.verify(&or.simulate(3, 4, &mut rng)));
}

#[test]
fn transcripts_round_trip() {
    let mut rng = rng(19);
    let (stmt, w, _) = confirm_statement(&mut rng, Mode::Confirm);
    let (t, _) = run(&stmt, &w, &mut rng).unwrap();
    let bytes = t.to_bytes();
    assert_eq!(Transcript::<ConfirmDeny<PairingHom<Toy>>>::from_bytes(&bytes).unwrap().to_bytes(), bytes);
}

fn toy_ctets(rng: &mut ChaCha20Rng, mode: Mode) -> (CommitDecrypt<ToyElement>, PaillierKeys, BigUint, BigUint) {
    let paillier = PaillierKeys::generate(Toy::PAILLIER_BITS, rng);
    let m = ToyScalar::random(rng);
    let (c, r) = Pedersen::<Toy>::commit_random(&m, rng);
    let committed = match mode {
        Mode::Confirm => m,
        Mode::Deny => m + ToyScalar::new(1),
    };
    let image = Pedersen::<Toy>::image(&c, &committed);
    let r_int = r.to_biguint();
    let (e, rho) = paillier.public.encrypt(&r_int, rng);
    let stmt = CommitDecrypt::new(Pedersen::<Toy>::h(), image, paillier.public.clone(), e, mode).unwrap();
    (stmt, paillier, r_int, rho)
}

#[test]
fn commit_decrypt_both_witnesses() {
    let mut rng = rng(20);
    for _ in 0..20 {
        let (stmt, keys, r, rho) = toy_ctets(&mut rng, Mode::Confirm);
        assert!(run(&stmt, &CommitWitness::Key(Box::new(keys)), &mut rng).unwrap().1);
        assert!(run(&stmt, &CommitWitness::Opening { r: r.clone(), rho }, &mut rng).unwrap().1);
        let bad = CommitWitness::Opening { r, rho: BigUint::default() };
        assert!(stmt.first(&bad, stmt.nonce(&mut rng)).is_err());
    }
}

#[test]
fn commit_decrypt_extract_and_simulate() {
    let mut rng = rng(21);
    let (stmt, keys, r, _) = toy_ctets(&mut rng, Mode::Confirm);
    let w = CommitWitness::Key(Box::new(keys));
    let (t1, t2) = fork(&stmt, &w, 10, 14, &mut rng).unwrap();
    let extracted = stmt.extract(&t1, &t2).unwrap();
    assert_eq!(extracted.to_biguint(), r);
    assert_eq!(stmt.h.pow(&extracted), stmt.image);
    assert!(stmt.verify(&stmt.simulate(33, 44, &mut rng)));
}

#[test]
fn commit_decrypt_denial() {
    let mut rng = rng(22);
    let (stmt, keys, _, _) = toy_ctets(&mut rng, Mode::Deny);
    let w = CommitWitness::Key(Box::new(keys));
    let rep = Repeated::new(stmt.clone(), 20).unwrap();
    assert!(run(&rep, &w, &mut rng).unwrap().1);
    assert!(stmt.verify(&stmt.simulate(1, 2, &mut rng)));
    let as_confirm = CommitDecrypt::new(stmt.h, stmt.image, stmt.pk.clone(), stmt.e.clone(), Mode::Confirm).unwrap();
    assert!(as_confirm.first(&w, as_confirm.nonce(&mut rng)).is_err());
}

#[test]
fn nth_root_extraction() {
    let mut rng = rng(23);
    let keys = PaillierKeys::generate(128, &mut rng);
    let rho = keys.public.random_unit(&mut rng);
    let u = rho.modpow(&keys.public.n, keys.public.n_squared());
    let stmt = NthRoot::new(keys.public.clone(), u, ChallengeSpace::Range(101));
    let (t1, t2) = fork(&stmt, &rho, 3, 98, &mut rng).unwrap();
    assert_eq!(stmt.extract(&t1, &t2).unwrap(), rho);
}

#[test]
fn sessions_match_run() {
    let mut rng = rng(24);
    let (stmt, w, _) = confirm_statement(&mut rng, Mode::Confirm);
    let mut prover = session::Prover::new(&stmt, &w);
    let mut verifier = session::Verifier::new(&stmt);
    let (com, opening) = verifier.commit_challenge::<Toy, _>(&mut rng);
    let first = prover.start(&mut rng).unwrap();
    let b = verifier.receive_first(first, &mut rng).unwrap();
    assert!(session::check_opening::<Toy>(&com, b, &opening));
    assert!(!session::check_opening::<Toy>(&com, (b + 1) % 101, &opening));
    let second = prover.respond(b).unwrap();
    let c = verifier.receive_second(second, &mut rng).unwrap();
    let third = prover.finish(c).unwrap();
    let (_, ok) = verifier.receive_third(third).unwrap();
    assert!(ok);
    assert!(prover.finish(c).is_err());
}

#[test]
fn production_confirm_deny() {
    let mut rng = rng(25);
    let signer = BlsKeys::<Bls>::generate(&mut rng);
    let confirmer = ElGamalKeys::<BlsG1>::generate(&mut rng);
    let sig = signer.sign(b"p");
    let (ct, a) = encrypt(&confirmer.pk, &sig.s, &mut rng);
    let (f, i) = signer.public.compute(b"p", &sig.r);
    let stmt = ConfirmDeny::new(f, i, confirmer.pk, ct, Path::Randomness, Mode::Confirm);
    assert_eq!(stmt.space(), ChallengeSpace::Wide);
    assert!(run(&stmt, &DecWitness::Randomness { s: sig.s, a }, &mut rng).unwrap().1);
    let (f2, i2) = signer.public.compute(b"q", &sig.r);
    let deny = Repeated::new(ConfirmDeny::new(f2, i2, confirmer.pk, ct, Path::Key, Mode::Deny), 40).unwrap();
    assert!(run(&deny, &DecWitness::Key(confirmer.sk), &mut rng).unwrap().1);
}
