//! The Damgård–Pedersen undeniable signature and its invisibility break.
//!
//! Parameters are primes `t` and `p = k·t + 1`, `g` of order `t` in `Z_p^*`
//! and a generator `α` of `Z_t^*`. The signer holds `x` with `h = g^x`; the
//! confirmer holds `ν` with `β = α^ν mod t`. A signature is an ElGamal
//! signature `(r, s)` on `H(m)` whose `s` part is ElGamal-encrypted in
//! `Z_t^*`: `(E1, E2) = (α^ρ, s·β^ρ)`.
//!
//! That encryption is multiplicatively homomorphic, so a single status query
//! on `(c1·E1, c2·E2, r)` tells whether `(α, β, c1, c2)` is a DDH tuple. The
//! repair signs `H(m ‖ E1)` instead, so any change to `E1` changes the
//! signed hash.

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use sha2::{Digest, Sha256};

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::analysis::stats::{run_trials, GameReport, Kind};
use crate::groups::Rng;

const HASH_DOMAIN: &[u8] = b"dp-message";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpParams {
    pub t: BigUint,
    pub p: BigUint,
    pub g: BigUint,
    pub alpha: BigUint,
}

/// Whether the signer hashes `m` alone or `m ‖ E1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Original,
    Repaired,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Original => "dp",
            Variant::Repaired => "dp-repaired",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpPublic {
    pub h: BigUint,
    pub beta: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpKeys {
    pub x: BigUint,
    pub nu: BigUint,
    pub public: DpPublic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpSignature {
    pub e1: BigUint,
    pub e2: BigUint,
    pub r: BigUint,
}

/// The signer's randomness: ElGamal nonce and encryption exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpCoins {
    pub b: BigUint,
    pub rho: BigUint,
    pub s: BigUint,
}

/// A converted signature: the plain ElGamal signature `(r, s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpConverted {
    pub r: BigUint,
    pub s: BigUint,
}

/// `(α, β, c1, c2)` with `c1 = α^y`; a yes-instance has `c2 = β^y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DdhInstance {
    pub c1: BigUint,
    pub c2: BigUint,
}

fn hex(s: &str) -> BigUint {
    BigUint::parse_bytes(s.as_bytes(), 16).expect("valid hex constant")
}

impl DpParams {
    /// `t = 101`, `p = 607 = 6·101 + 1`, `g = 64` of order 101, and `α = 2`,
    /// a primitive root mod 101.
    pub fn toy() -> Self {
        DpParams { t: 101u32.into(), p: 607u32.into(), g: 64u32.into(), alpha: 2u32.into() }
    }

    /// A 512-bit safe prime `t` and a 2047-bit prime `p = k·t + 1`.
    pub fn production() -> Self {
        DpParams {
            t: hex("cdbdecb14f7f4122c2dd759c2f15818521d7e4bc6ab68ce108894a96030076248a2cf7e16b0367c7f86869e8c5138c042670e7cceaa0bb9fae65ed471af3d997"),
            p: hex(concat!(
                "7b5d7e3140b3ac0a289e053a9f8de8820befd75fcaa21af075a944fc94584c32306a68827f264891de37802c262732de",
                "35441f29905ec78ed814d80724db118d6152455eb8b056139296ce11da05e8cbe8c8354b964f0cce4b08fc940e9f9a3f",
                "3d7fb98226c2ccf62a4def1e3fbcb55bb7246bcabdeea42294969755ea027999cc21d77f7f4739e98968e627ed05cc28",
                "59b88bb211a49d5acf4e6e2ad47f8dc0d5e412f96722813b3c869260d31aaa3629d08214543f6d890604c4ea2911ad3a",
                "b99613177d9d5cf2ce9bcfbb29e29921c32799f26ac6d1244a5dcc039133b3a468fd0fc2e9959fd14453d9d2ab691d77",
                "cc23e1adeec7b0f84d8471f620c7a96d"
            )),
            g: hex(concat!(
                "5f048842017f1fbf73e1da80f87faedc6fd68c643bea5c7be70c9784eb7ff9d699afcb87210b370e5ed330aad4b4da7b",
                "308b44f58fdb2385fe69def03a19609009bd8807c087e4033a8e7a6ff204319774d5502f18c5847276ed15f51fa9b412",
                "b78bef4d5f5c569745298f8fb7839f2169dec8deea8f4f72651cbac710e98d48c898621822069f27f8a8b4f5b806b0b5",
                "97c9f02b77016a6f8b804630834455e757f89c6f6cfb7e9143384d4c0b8bad253b6f14972b08dde7df626f86112d1cfe",
                "b0b15162e37cfc136ceb305f914854a5d752f802cd658ffc83e9f2844353996041b61a92f0afb02bc115af5080f50640",
                "4949b204793a157e4a076721f1ecd6a4"
            )),
            alpha: 5u32.into(),
        }
    }

    /// Byte width of an element of `Z_t`.
    fn width(&self) -> usize {
        (self.t.bits() as usize).div_ceil(8)
    }

    /// `H(m)` or `H(m ‖ E1)` reduced mod `t`. `E1` is encoded at fixed
    /// width, so the split between `m` and `E1` is unambiguous.
    pub fn hash(&self, variant: Variant, m: &[u8], e1: &BigUint) -> BigUint {
        let mut h = Sha256::new();
        h.update(HASH_DOMAIN);
        h.update((m.len() as u64).to_be_bytes());
        h.update(m);
        if variant == Variant::Repaired {
            let bytes = e1.to_bytes_be();
            h.update(vec![0u8; self.width().saturating_sub(bytes.len())]);
            h.update(bytes);
        }
        BigUint::from_bytes_be(&h.finalize()) % &self.t
    }

    /// Uniform in `[1, t)`.
    fn unit<R: Rng + ?Sized>(&self, rng: &mut R) -> BigUint {
        rng.gen_biguint_range(&BigUint::one(), &self.t)
    }

    /// Uniform exponent in `[0, t − 1)`, the order of `α`.
    fn alpha_exponent<R: Rng + ?Sized>(&self, rng: &mut R) -> BigUint {
        rng.gen_biguint_below(&(&self.t - 1u32))
    }

    fn inv_t(&self, a: &BigUint) -> BigUint {
        a.modpow(&(&self.t - 2u32), &self.t)
    }

    pub fn keygen<R: Rng + ?Sized>(&self, rng: &mut R) -> DpKeys {
        let x = self.unit(rng);
        let nu = self.alpha_exponent(rng);
        let public = DpPublic { h: self.g.modpow(&x, &self.p), beta: self.alpha.modpow(&nu, &self.t) };
        DpKeys { x, nu, public }
    }

    pub fn sign<R: Rng + ?Sized>(
        &self,
        keys: &DpKeys,
        variant: Variant,
        m: &[u8],
        rng: &mut R,
    ) -> (DpSignature, DpCoins) {
        let rho = self.alpha_exponent(rng);
        let e1 = self.alpha.modpow(&rho, &self.t);
        let hm = self.hash(variant, m, &e1);
        loop {
            let b = self.unit(rng);
            let r = self.g.modpow(&b, &self.p);
            let rx = (&r % &self.t) * &keys.x % &self.t;
            let s = (&hm + &self.t - rx) * self.inv_t(&b) % &self.t;
            if s.is_zero() {
                continue;
            }
            let e2 = &s * keys.public.beta.modpow(&rho, &self.t) % &self.t;
            return (DpSignature { e1, e2, r }, DpCoins { b, rho, s });
        }
    }

    /// Verification of the embedded ElGamal signature:
    /// `g^{H} = h^{r mod t}·r^s mod p` with `r` in the order-`t` subgroup.
    pub fn elgamal_verify(&self, pk: &DpPublic, hm: &BigUint, r: &BigUint, s: &BigUint) -> bool {
        if r.is_zero() || r >= &self.p || s.is_zero() || s >= &self.t || !r.modpow(&self.t, &self.p).is_one() {
            return false;
        }
        let lhs = self.g.modpow(hm, &self.p);
        let rhs = pk.h.modpow(&(r % &self.t), &self.p) * r.modpow(s, &self.p) % &self.p;
        lhs == rhs
    }

    fn in_units(&self, x: &BigUint) -> bool {
        !x.is_zero() && x < &self.t
    }

    /// `s = E2·E1^{-ν} mod t`, or `None` if `(E1, E2)` is malformed.
    fn decrypt(&self, keys: &DpKeys, sig: &DpSignature) -> Option<BigUint> {
        if !self.in_units(&sig.e1) || !self.in_units(&sig.e2) {
            return None;
        }
        let mask = sig.e1.modpow(&keys.nu, &self.t);
        Some(&sig.e2 * self.inv_t(&mask) % &self.t)
    }

    /// The status oracle: whether `sig` is a valid signature on `m`.
    pub fn status(&self, keys: &DpKeys, variant: Variant, m: &[u8], sig: &DpSignature) -> bool {
        self.convert(keys, variant, m, sig).is_some()
    }

    /// The signer's check from its coins.
    pub fn verify_with_coins(&self, pk: &DpPublic, variant: Variant, m: &[u8], sig: &DpSignature, coins: &DpCoins) -> bool {
        sig.e1 == self.alpha.modpow(&coins.rho, &self.t)
            && sig.e2 == &coins.s * pk.beta.modpow(&coins.rho, &self.t) % &self.t
            && sig.r == self.g.modpow(&coins.b, &self.p)
            && self.elgamal_verify(pk, &self.hash(variant, m, &sig.e1), &sig.r, &coins.s)
    }

    /// Decrypts `s`; the result is a plain ElGamal signature. For the
    /// repaired variant the verifier also needs `E1`, so it is kept.
    pub fn convert(&self, keys: &DpKeys, variant: Variant, m: &[u8], sig: &DpSignature) -> Option<(DpConverted, BigUint)> {
        let s = self.decrypt(keys, sig)?;
        let hm = self.hash(variant, m, &sig.e1);
        self.elgamal_verify(&keys.public, &hm, &sig.r, &s)
            .then(|| (DpConverted { r: sig.r.clone(), s }, sig.e1.clone()))
    }

    pub fn verify_converted(&self, pk: &DpPublic, variant: Variant, m: &[u8], conv: &DpConverted, e1: &BigUint) -> bool {
        self.elgamal_verify(pk, &self.hash(variant, m, e1), &conv.r, &conv.s)
    }

    /// A uniform element of the signature space: `E1, E2 ∈ Z_t^*` and `r`
    /// in the order-`t` subgroup of `Z_p^*`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> DpSignature {
        DpSignature { e1: self.unit(rng), e2: self.unit(rng), r: self.g.modpow(&self.unit(rng), &self.p) }
    }

    /// A DDH instance over `⟨α⟩ = Z_t^*` for the confirmer key `β`.
    pub fn ddh_instance<R: Rng + ?Sized>(&self, beta: &BigUint, yes: bool, rng: &mut R) -> DdhInstance {
        let y = loop {
            let y = self.alpha_exponent(rng);
            if !y.is_zero() {
                break y;
            }
        };
        let c1 = self.alpha.modpow(&y, &self.t);
        let target = beta.modpow(&y, &self.t);
        let c2 = if yes {
            target
        } else {
            loop {
                let c2 = self.alpha.modpow(&self.alpha_exponent(rng), &self.t);
                if c2 != target {
                    break c2;
                }
            }
        };
        DdhInstance { c1, c2 }
    }

    /// Multiplies `(E1, E2)` by `(c1, c2)`, leaving `r` alone.
    pub fn maul(&self, sig: &DpSignature, inst: &DdhInstance) -> DpSignature {
        DpSignature { e1: &sig.e1 * &inst.c1 % &self.t, e2: &sig.e2 * &inst.c2 % &self.t, r: sig.r.clone() }
    }

    /// Re-randomizes `(E1, E2)` with `(α^ρ', β^ρ')`.
    pub fn rerandomize(&self, pk: &DpPublic, sig: &DpSignature, rho: &BigUint) -> DpSignature {
        let inst = DdhInstance { c1: self.alpha.modpow(rho, &self.t), c2: pk.beta.modpow(rho, &self.t) };
        self.maul(sig, &inst)
    }

    pub fn is_instance(&self, inst: &DdhInstance) -> bool {
        self.in_units(&inst.c1) && self.in_units(&inst.c2)
    }
}

/// The adversary's side of the attack: one signature request, one status
/// query on the mauled signature. Returns the guess "yes-instance", or
/// `None` for a malformed instance.
pub fn dp_attack<O>(params: &DpParams, inst: &DdhInstance, mut sign: impl FnMut(&[u8]) -> DpSignature, mut status: O) -> Option<bool>
where
    O: FnMut(&[u8], &DpSignature) -> bool,
{
    if !params.is_instance(inst) {
        return None;
    }
    let m = b"any message";
    let sig = sign(m);
    Some(status(m, &params.maul(&sig, inst)))
}

/// Whether replacing `E1` by a mauled value leaves the repaired hash of `m`
/// unchanged, the one case where a mauled signature still validates.
pub fn repaired_hash_collides(params: &DpParams, m: &[u8], e1: &BigUint, e1_mauled: &BigUint) -> bool {
    params.hash(Variant::Repaired, m, e1) == params.hash(Variant::Repaired, m, e1_mauled)
}

/// Checks that `α` generates `Z_t^*` given the factorization of `t − 1`.
pub fn is_generator(alpha: &BigUint, t: &BigUint, factors: &[BigUint]) -> bool {
    let order = t - 1u32;
    factors.iter().all(|q| {
        let (e, rem) = order.div_rem(q);
        rem.is_zero() && !alpha.modpow(&e, t).is_one()
    })
}

impl DpParams {
    /// `"toy"` for the 101-element parameters, `"production"` otherwise.
    pub fn label(&self) -> &'static str {
        if self.t.bits() <= 16 {
            "toy"
        } else {
            "production"
        }
    }
}

/// Completeness for the DP scheme, which has no interactive protocols: the
/// status oracle accepts an honest signature, the signer's coins check out,
/// the conversion verifies, and a random invalid element is rejected both
/// by the oracle and by conversion.
pub fn completeness(params: &DpParams, variant: Variant, trials: u64, seed: u64) -> GameReport {
    let tally = run_trials(trials, seed, |rng| {
        let keys = params.keygen(rng);
        let m = rng.gen::<[u8; 16]>();
        let (sig, coins) = params.sign(&keys, variant, &m, rng);
        let out0 = params.status(&keys, variant, &m, &sig);
        let out1 = params.verify_with_coins(&keys.public, variant, &m, &sig, &coins);
        let psi = loop {
            let psi = params.sample(rng);
            if !params.status(&keys, variant, &m, &psi) {
                break psi;
            }
        };
        let out3 = params.convert(&keys, variant, &m, &psi).is_none();
        let out4 = params
            .convert(&keys, variant, &m, &sig)
            .is_some_and(|(conv, e1)| params.verify_converted(&keys.public, variant, &m, &conv, &e1));
        (out0 && out1 && out3 && out4).into()
    });
    GameReport::new("completeness", variant.name(), params.label(), "honest", Kind::Success, tally)
}

/// Runs [`dp_attack`] on fresh keys and a fresh yes- or no-instance; a win
/// is a correct decision.
pub fn ddh_decision(params: &DpParams, yes: bool, trials: u64, seed: u64) -> GameReport {
    let tally = run_trials(trials, seed, |rng| {
        let keys = params.keygen(rng);
        let inst = params.ddh_instance(&keys.public.beta, yes, rng);
        let mut signer = fork(rng);
        let guess = dp_attack(
            params,
            &inst,
            |m| params.sign(&keys, Variant::Original, m, &mut signer).0,
            |m, sig| params.status(&keys, Variant::Original, m, sig),
        );
        (guess == Some(yes)).into()
    });
    let adversary = if yes { "dp-maul/yes-instances" } else { "dp-maul/no-instances" };
    GameReport::new("ddh-decision", Variant::Original.name(), params.label(), adversary, Kind::Success, tally)
}

/// The attack's status query against the repaired scheme, on DDH
/// yes-instances (the ones the original accepts). A win is an "invalid"
/// answer.
pub fn repaired_rejects(params: &DpParams, trials: u64, seed: u64) -> GameReport {
    let tally = run_trials(trials, seed, |rng| {
        let keys = params.keygen(rng);
        let inst = params.ddh_instance(&keys.public.beta, true, rng);
        let mut signer = fork(rng);
        let guess = dp_attack(
            params,
            &inst,
            |m| params.sign(&keys, Variant::Repaired, m, &mut signer).0,
            |m, sig| params.status(&keys, Variant::Repaired, m, sig),
        );
        (guess == Some(false)).into()
    });
    GameReport::new("mauled-status", Variant::Repaired.name(), params.label(), "dp-maul", Kind::Success, tally)
}

fn fork(rng: &mut ChaCha20Rng) -> ChaCha20Rng {
    ChaCha20Rng::from_rng(rng).expect("ChaCha never fails")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(n: &BigUint) -> bool {
        glass_pumpkin::prime::strong_check_with(n, &mut ChaCha20Rng::seed_from_u64(99))
    }

    #[test]
    fn toy_parameters_are_well_formed() {
        let p = DpParams::toy();
        // 64 has order 101 mod 607; 2 is a primitive root mod 101 (100 = 2²·5²).
        assert_eq!(p.g.modpow(&101u32.into(), &p.p), BigUint::one());
        assert!(is_generator(&p.alpha, &p.t, &[2u32.into(), 5u32.into()]));
        assert!(!is_generator(&4u32.into(), &p.t, &[2u32.into(), 5u32.into()]));
        let powers: std::collections::BTreeSet<_> = (0..100u32).map(|k| p.alpha.modpow(&k.into(), &p.t)).collect();
        assert_eq!(powers.len(), 100);
    }

    #[test]
    fn production_parameters_are_well_formed() {
        let p = DpParams::production();
        assert_eq!(p.t.bits(), 512);
        assert_eq!(p.p.bits(), 2047);
        assert!(prime(&p.t) && prime(&p.p));
        let q = (&p.t - 1u32) >> 1;
        assert!(prime(&q), "t is a safe prime");
        assert!(((&p.p - 1u32) % &p.t).is_zero());
        assert!(!p.g.is_one() && p.g.modpow(&p.t, &p.p).is_one());
        assert!(is_generator(&p.alpha, &p.t, &[2u32.into(), q]));
    }

    #[test]
    fn honest_signatures_validate() {
        let params = DpParams::toy();
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        for variant in [Variant::Original, Variant::Repaired] {
            for i in 0..200u32 {
                let keys = params.keygen(&mut rng);
                let m = i.to_be_bytes();
                let (sig, coins) = params.sign(&keys, variant, &m, &mut rng);
                // ElGamal relation H = r·x + b·s mod t, checked directly.
                let hm = params.hash(variant, &m, &sig.e1);
                let rx = (&sig.r % &params.t) * &keys.x;
                assert_eq!((rx + &coins.b * &coins.s) % &params.t, hm);
                assert!(params.status(&keys, variant, &m, &sig));
                assert!(params.verify_with_coins(&keys.public, variant, &m, &sig, &coins));
                let (conv, e1) = params.convert(&keys, variant, &m, &sig).unwrap();
                assert!(params.verify_converted(&keys.public, variant, &m, &conv, &e1));
            }
        }
    }

    #[test]
    fn original_is_homomorphic_in_every_exponent() {
        let params = DpParams::toy();
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let keys = params.keygen(&mut rng);
        let (sig, _) = params.sign(&keys, Variant::Original, b"m", &mut rng);
        let wrong = DpSignature { e2: &sig.e2 * 2u32 % &params.t, ..sig.clone() };
        assert!(!params.status(&keys, Variant::Original, b"m", &wrong));
        for rho in 0..100u32 {
            let re = params.rerandomize(&keys.public, &sig, &rho.into());
            assert!(params.status(&keys, Variant::Original, b"m", &re));
            let re = params.rerandomize(&keys.public, &wrong, &rho.into());
            assert!(!params.status(&keys, Variant::Original, b"m", &re));
        }
    }

    #[test]
    fn attack_decides_ddh_on_toy() {
        let params = DpParams::toy();
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for i in 0..200 {
            let keys = params.keygen(&mut rng);
            let yes = i % 2 == 0;
            let inst = params.ddh_instance(&keys.public.beta, yes, &mut rng);
            let mut srng = ChaCha20Rng::seed_from_u64(i);
            let guess = dp_attack(
                &params,
                &inst,
                |m| params.sign(&keys, Variant::Original, m, &mut srng).0,
                |m, s| params.status(&keys, Variant::Original, m, s),
            );
            assert_eq!(guess, Some(yes));
        }
    }

    #[test]
    fn repair_rejects_mauling_unless_the_hash_collides() {
        let params = DpParams::toy();
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let m = b"any message";
        for _ in 0..300 {
            let keys = params.keygen(&mut rng);
            let inst = params.ddh_instance(&keys.public.beta, true, &mut rng);
            let (sig, _) = params.sign(&keys, Variant::Repaired, m, &mut rng);
            let mauled = params.maul(&sig, &inst);
            let collides = repaired_hash_collides(&params, m, &sig.e1, &mauled.e1);
            assert_eq!(params.status(&keys, Variant::Repaired, m, &mauled), collides);
        }
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        let params = DpParams::toy();
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let keys = params.keygen(&mut rng);
        let (sig, _) = params.sign(&keys, Variant::Original, b"m", &mut rng);
        let zero = DpSignature { e1: BigUint::zero(), ..sig.clone() };
        assert!(!params.status(&keys, Variant::Original, b"m", &zero));
        // 2 is not in the order-101 subgroup of Z_607^*.
        let outside = DpSignature { r: 2u32.into(), ..sig.clone() };
        assert!(!params.status(&keys, Variant::Original, b"m", &outside));
        assert_eq!(dp_attack(&params, &DdhInstance { c1: 0u32.into(), c2: 1u32.into() }, |_| sig.clone(), |_, _| true), None);
    }

    #[test]
    fn production_attack_and_repair() {
        let params = DpParams::production();
        let mut rng = ChaCha20Rng::seed_from_u64(6);
        let keys = params.keygen(&mut rng);
        for yes in [true, false] {
            let inst = params.ddh_instance(&keys.public.beta, yes, &mut rng);
            let mut srng = ChaCha20Rng::seed_from_u64(7);
            let guess = dp_attack(
                &params,
                &inst,
                |m| params.sign(&keys, Variant::Original, m, &mut srng).0,
                |m, s| params.status(&keys, Variant::Original, m, s),
            );
            assert_eq!(guess, Some(yes));
            let (sig, _) = params.sign(&keys, Variant::Repaired, b"m", &mut rng);
            assert!(params.status(&keys, Variant::Repaired, b"m", &sig));
            assert!(!params.status(&keys, Variant::Repaired, b"m", &params.maul(&sig, &inst)));
        }
    }

    #[test]
    fn reports() {
        let toy = DpParams::toy();
        for variant in [Variant::Original, Variant::Repaired] {
            assert!(completeness(&toy, variant, 100, 8).all_won());
        }
        assert!(ddh_decision(&toy, true, 100, 9).all_won());
        assert!(ddh_decision(&toy, false, 100, 10).all_won());
        let r = repaired_rejects(&DpParams::production(), 20, 11);
        assert!(r.all_won(), "{r}");
        assert_eq!(r.backend, "production");
    }
}
