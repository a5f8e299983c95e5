use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};
use std::thread;

const OSG: &str = env!("CARGO_BIN_EXE_osg");

struct Dir(PathBuf);

impl Dir {
    fn new(name: &str) -> Self {
        let p = std::env::temp_dir().join(format!("osg-cli-{}-{name}", std::process::id()));
        let _ = fs::remove_dir_all(&p);
        fs::create_dir_all(&p).unwrap();
        Dir(p)
    }

    fn p(&self, name: &str) -> String {
        self.0.join(name).to_str().unwrap().to_owned()
    }

    fn put(&self, name: &str, bytes: &[u8]) -> String {
        fs::write(self.0.join(name), bytes).unwrap();
        self.p(name)
    }
}

impl Drop for Dir {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn osg(args: &[&str]) -> Output {
    Command::new(OSG).args(args).env_remove("OSG_BACKEND").output().unwrap()
}

#[track_caller]
fn code(args: &[&str]) -> i32 {
    osg(args).status.code().unwrap()
}

#[track_caller]
fn ok(args: &[&str]) -> Output {
    let out = osg(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn flip_last(path: &str) {
    let mut b = fs::read(path).unwrap();
    *b.last_mut().unwrap() ^= 1;
    fs::write(path, b).unwrap();
}

#[test]
fn sign_confirm_deny_convert_on_every_scheme() {
    for scheme in ["plain-ste", "ets", "new-ste", "ctets", "cteas"] {
        let d = Dir::new(scheme);
        let (k, s) = (d.p("keys"), d.p("sig"));
        // EtS encrypts the message itself, and toy plaintexts are one byte.
        let m = d.put("m", &[7]);
        let m2 = d.put("m2", &[8]);
        ok(&["keygen", "--scheme", scheme, "--out", &k, "--seed", "1"]);
        ok(&["sign", "--scheme", scheme, "--keys", &k, "--msg-file", &m, "--out", &s, "--seed", "2"]);

        let t = d.p("confirm.t");
        ok(&["confirm", "--scheme", scheme, "--keys", &k, "--msg-file", &m, "--sig", &s, "--out", &t, "--seed", "3"]);
        ok(&["verify-transcript", "--scheme", scheme, "--keys", &k, "--protocol", "confirm", "--msg-file", &m, "--sig", &s, "--transcript", &t]);
        assert_eq!(code(&["deny", "--scheme", scheme, "--keys", &k, "--msg-file", &m, "--sig", &s]), 1, "{scheme}");
        assert_eq!(code(&["confirm", "--scheme", scheme, "--keys", &k, "--msg-file", &m2, "--sig", &s]), 1, "{scheme}");
        ok(&["deny", "--scheme", scheme, "--keys", &k, "--msg-file", &m2, "--sig", &s, "--seed", "4"]);

        let c = d.p("conv");
        ok(&["convert", "--scheme", scheme, "--keys", &k, "--msg-file", &m, "--sig", &s, "--out", &c, "--seed", "5"]);
        ok(&["verify-converted", "--scheme", scheme, "--keys", &k, "--msg-file", &m, "--converted", &c]);
        assert_eq!(code(&["verify-converted", "--scheme", scheme, "--keys", &k, "--msg-file", &m2, "--converted", &c]), 1);
        assert_eq!(code(&["convert", "--scheme", scheme, "--keys", &k, "--msg-file", &m2, "--sig", &s, "--out", &c]), 1);
    }
}

#[test]
fn denial_transcripts_replay_and_tampering_is_caught() {
    let d = Dir::new("deny");
    let (k, s, t) = (d.p("keys"), d.p("sig"), d.p("deny.t"));
    let m = d.put("m", b"one");
    let m2 = d.put("m2", b"two");
    ok(&["keygen", "--scheme", "new-ste", "--out", &k, "--seed", "1"]);
    ok(&["sign", "--scheme", "new-ste", "--keys", &k, "--msg-file", &m, "--out", &s, "--seed", "2"]);
    ok(&["deny", "--scheme", "new-ste", "--keys", &k, "--msg-file", &m2, "--sig", &s, "--out", &t, "--seed", "3"]);
    let replay = ["verify-transcript", "--scheme", "new-ste", "--keys", &k, "--protocol", "deny", "--msg-file", &m2, "--sig", &s, "--transcript", &t];
    ok(&replay);
    // The same transcript says nothing about the signed message.
    assert_eq!(code(&["verify-transcript", "--scheme", "new-ste", "--keys", &k, "--protocol", "deny", "--msg-file", &m, "--sig", &s, "--transcript", &t]), 1);
    assert_eq!(code(&["verify-transcript", "--scheme", "new-ste", "--keys", &k, "--protocol", "confirm", "--msg-file", &m2, "--sig", &s, "--transcript", &t]), 2);
    flip_last(&t);
    assert_ne!(code(&replay), 0);
}

#[test]
fn flipped_signature_bytes_are_rejected_or_undecodable() {
    let d = Dir::new("flip");
    let (k, s, c) = (d.p("keys"), d.p("sig"), d.p("conv"));
    let m = d.put("m", b"payload");
    ok(&["keygen", "--scheme", "ctets", "--out", &k, "--seed", "1"]);
    ok(&["sign", "--scheme", "ctets", "--keys", &k, "--msg-file", &m, "--out", &s, "--seed", "2"]);
    ok(&["convert", "--scheme", "ctets", "--keys", &k, "--msg-file", &m, "--sig", &s, "--out", &c, "--seed", "3"]);
    flip_last(&s);
    assert!(matches!(code(&["confirm", "--scheme", "ctets", "--keys", &k, "--msg-file", &m, "--sig", &s]), 1 | 2));
    flip_last(&c);
    assert!(matches!(code(&["verify-converted", "--scheme", "ctets", "--keys", &k, "--msg-file", &m, "--converted", &c]), 1 | 2));
}

#[test]
fn signcryption_flow() {
    let d = Dir::new("etste");
    let (k, mu, coins, x) = (d.p("keys"), d.p("mu"), d.p("coins"), d.p("x"));
    let m = d.put("m", &[42]);
    let m2 = d.put("m2", &[43]);
    ok(&["keygen", "--scheme", "etste", "--out", &k, "--seed", "1"]);
    ok(&["signcrypt", "--keys", &k, "--msg-file", &m, "--out", &mu, "--coins", &coins, "--seed", "2"]);
    assert_eq!(ok(&["unsigncrypt", "--keys", &k, "--in", &mu]).stdout, vec![42]);

    let t = d.p("validity.t");
    ok(&["prove-validity", "--keys", &k, "--in", &mu, "--by", "sender", "--coins", &coins, "--out", &t, "--seed", "3"]);
    ok(&["verify-transcript", "--scheme", "etste", "--keys", &k, "--protocol", "validity", "--by", "sender", "--sig", &mu, "--transcript", &t]);
    assert_eq!(code(&["verify-transcript", "--scheme", "etste", "--keys", &k, "--protocol", "validity", "--by", "receiver", "--sig", &mu, "--transcript", &t]), 1);
    ok(&["prove-validity", "--keys", &k, "--in", &mu, "--by", "receiver", "--seed", "4"]);
    assert_eq!(code(&["prove-validity", "--keys", &k, "--in", &mu, "--by", "sender"]), 2);

    ok(&["confirm", "--scheme", "etste", "--keys", &k, "--msg-file", &m, "--sig", &mu, "--seed", "5"]);
    ok(&["deny", "--scheme", "etste", "--keys", &k, "--msg-file", &m2, "--sig", &mu, "--seed", "6"]);
    assert_eq!(code(&["deny", "--scheme", "etste", "--keys", &k, "--msg-file", &m, "--sig", &mu]), 1);

    ok(&["sig-extract", "--keys", &k, "--in", &mu, "--msg-file", &m, "--out", &x, "--seed", "7"]);
    ok(&["sig-verify", "--keys", &k, "--in", &x, "--msg-file", &m]);
    assert_eq!(code(&["sig-verify", "--keys", &k, "--in", &x, "--msg-file", &m2]), 1);
    assert_eq!(code(&["sig-extract", "--keys", &k, "--in", &mu, "--msg-file", &m2, "--out", &x]), 1);

    flip_last(&mu);
    let out = osg(&["unsigncrypt", "--keys", &k, "--in", &mu]);
    assert!(matches!(out.status.code(), Some(1 | 2)) && out.stdout.is_empty());
}

fn pump(mut from: impl Read + Send + 'static, mut to: impl Write + Send + 'static) -> thread::JoinHandle<()> {
    thread::spawn(move || {
        let mut buf = [0u8; 4096];
        while let Ok(n) = from.read(&mut buf) {
            if n == 0 || to.write_all(&buf[..n]).and_then(|_| to.flush()).is_err() {
                break;
            }
        }
    })
}

/// Runs the prover and the verifier as two processes wired stdout to stdin.
fn two_processes(common: &[&str]) -> (i32, i32) {
    let spawn = |side: &str, seed: &str| {
        Command::new(OSG)
            .args(common)
            .args(["--side", side, "--seed", seed])
            .env_remove("OSG_BACKEND")
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .unwrap()
    };
    let mut prover = spawn("prover", "11");
    let mut verifier = spawn("verifier", "12");
    let a = pump(prover.stdout.take().unwrap(), verifier.stdin.take().unwrap());
    let b = pump(verifier.stdout.take().unwrap(), prover.stdin.take().unwrap());
    let v = verifier.wait().unwrap().code().unwrap();
    let p = prover.wait().unwrap().code().unwrap();
    a.join().unwrap();
    b.join().unwrap();
    (p, v)
}

#[test]
fn prover_and_verifier_run_as_separate_processes() {
    let d = Dir::new("pipe");
    let (k, s, t) = (d.p("keys"), d.p("sig"), d.p("t"));
    let m = d.put("m", b"piped");
    ok(&["keygen", "--scheme", "new-ste", "--out", &k, "--seed", "1"]);
    ok(&["sign", "--scheme", "new-ste", "--keys", &k, "--msg-file", &m, "--out", &s, "--seed", "2"]);
    let (p, v) = two_processes(&["confirm", "--scheme", "new-ste", "--keys", &k, "--msg-file", &m, "--sig", &s, "--out", &t]);
    assert_eq!((p, v), (0, 0));
    ok(&["verify-transcript", "--scheme", "new-ste", "--keys", &k, "--protocol", "confirm", "--msg-file", &m, "--sig", &s, "--transcript", &t]);

    // A prover asked to confirm a false statement refuses; the verifier sees
    // the channel close and reports an error rather than accepting.
    let m2 = d.put("m2", b"not piped");
    let (p, v) = two_processes(&["confirm", "--scheme", "new-ste", "--keys", &k, "--msg-file", &m2, "--sig", &s]);
    assert_eq!(p, 1);
    assert_ne!(v, 0);
}

#[test]
fn attack_and_game_reports() {
    let out = ok(&["attack", "fact1", "--target", "plain-ste", "--trials", "200", "--seed", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("wins=200") && text.contains("advantage=0.500000"), "{text}");

    let out = ok(&["game", "completeness", "--scheme", "ctets", "--trials", "100", "--seed", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("trials=100") && text.contains("wins=100"), "{text}");

    let out = ok(&["game", "inv-cma", "--scheme", "new-ste", "--adversary", "fact1", "--trials", "100", "--seed", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("wins=100\t"), "fact1 should not always win on new-ste: {text}");

    assert_eq!(code(&["attack", "fact1", "--trials", "5", "--seed", "1"]), 2);
    assert_eq!(code(&["game", "completeness", "--scheme", "ctets", "--trials", "5"]), 2);
    assert_eq!(code(&["game", "sind-cca", "--scheme", "ets", "--trials", "5", "--seed", "1"]), 2);
}

#[test]
fn usage_and_decode_errors_exit_two() {
    let d = Dir::new("usage");
    let k = d.p("keys");
    let m = d.put("m", b"x");
    let junk = d.put("junk", b"not an artifact");
    ok(&["keygen", "--scheme", "ets", "--out", &k, "--seed", "1"]);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["sign", "--scheme", "ets"]), 2);
    assert_eq!(code(&["sign", "--scheme", "nonesuch", "--keys", &k, "--msg-file", &m, "--out", &d.p("s")]), 2);
    assert_eq!(code(&["confirm", "--scheme", "ets", "--keys", &k, "--msg-file", &m, "--sig", &junk]), 2);
    assert_eq!(code(&["confirm", "--scheme", "ets", "--keys", &k, "--msg-file", &d.p("missing"), "--sig", &junk]), 2);
    // Keys made for one scheme or backend do not load under another.
    assert_eq!(code(&["sign", "--scheme", "new-ste", "--keys", &k, "--msg-file", &m, "--out", &d.p("s")]), 2);
    assert_eq!(code(&["sign", "--scheme", "ets", "--backend", "bls", "--keys", &k, "--msg-file", &m, "--out", &d.p("s")]), 2);
    assert_eq!(code(&["sign", "--scheme", "ets", "--keys", &k, "--msg-file", &d.put("long", b"two bytes"), "--out", &d.p("s")]), 2);
    assert_eq!(code(&["--help"]), 0);
    assert!(Path::new(&k).join("confirmer.pub").exists());
}

#[test]
fn production_backend_round_trip() {
    let d = Dir::new("bls");
    let (k, s, c) = (d.p("keys"), d.p("sig"), d.p("conv"));
    let m = d.put("m", b"production");
    let b = ["--backend", "bls12-381"];
    let run = |args: &[&str]| ok(&[args, &b[..]].concat());
    run(&["keygen", "--scheme", "new-ste", "--out", &k, "--seed", "1"]);
    run(&["sign", "--scheme", "new-ste", "--keys", &k, "--msg-file", &m, "--out", &s, "--seed", "2"]);
    run(&["confirm", "--scheme", "new-ste", "--keys", &k, "--msg-file", &m, "--sig", &s, "--seed", "3"]);
    run(&["convert", "--scheme", "new-ste", "--keys", &k, "--msg-file", &m, "--sig", &s, "--out", &c, "--seed", "4"]);
    run(&["verify-converted", "--scheme", "new-ste", "--keys", &k, "--msg-file", &m, "--converted", &c]);
    assert_eq!(code(&["verify-converted", "--scheme", "new-ste", "--keys", &k, "--msg-file", &m, "--converted", &c]), 2);
}
