//! Subcommands for the designated confirmer schemes. The confirmer never
//! needs the signer's secret key, so each command loads only the files its
//! party would hold.

use std::fs;
use std::path::{Path, PathBuf};

use opaque_sig::cdcs::{Cdcs, Role};
use opaque_sig::sigma::{Protocol, Transcript};
use rand_chacha::ChaCha20Rng;

use crate::envelope::{Context, Kind};
use crate::error::CliError;
use crate::session::{self, Side};

/// The conventional file names inside a key directory.
pub struct KeyDir(pub PathBuf);

impl KeyDir {
    pub fn file(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

pub fn read_message(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::io(path, e))
}

/// Writes an accepted transcript, then turns the verdict into an exit
/// status.
pub fn conclude<P: Protocol>(
    ctx: &Context,
    outcome: Option<(Transcript<P>, bool)>,
    kind: Kind,
    out: Option<&Path>,
    what: &str,
) -> Result<(), CliError> {
    let Some((t, ok)) = outcome else {
        eprintln!("{what}: proof sent");
        return Ok(());
    };
    if let Some(path) = out {
        ctx.write(path, kind, &t)?;
    }
    if ok {
        eprintln!("{what}: accepted");
        Ok(())
    } else {
        Err(CliError::rejected(format!("{what}: rejected")))
    }
}

struct Public<S: Cdcs> {
    spk: S::SignerPublic,
    cpk: S::ConfirmerPublic,
}

fn public<S: Cdcs>(ctx: &Context, keys: &KeyDir) -> Result<Public<S>, CliError> {
    Ok(Public {
        spk: ctx.read(&keys.file("signer.pub"), Kind::SignerPublic)?,
        cpk: ctx.read(&keys.file("confirmer.pub"), Kind::ConfirmerPublic)?,
    })
}

pub fn keygen<S: Cdcs>(ctx: &Context, out: &Path, rng: &mut ChaCha20Rng) -> Result<(), CliError> {
    fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let keys = KeyDir(out.to_path_buf());
    let sk = S::signer_keygen(rng);
    let ck = S::confirmer_keygen(rng);
    ctx.write(&keys.file("signer.key"), Kind::SignerKey, &sk)?;
    ctx.write(&keys.file("signer.pub"), Kind::SignerPublic, &S::signer_public(&sk))?;
    ctx.write(&keys.file("confirmer.key"), Kind::ConfirmerKey, &ck)?;
    ctx.write(&keys.file("confirmer.pub"), Kind::ConfirmerPublic, &S::confirmer_public(&ck))
}

pub fn sign<S: Cdcs>(ctx: &Context, keys: &KeyDir, m: &[u8], out: &Path, rng: &mut ChaCha20Rng) -> Result<(), CliError> {
    let sk: S::SignerKey = ctx.read(&keys.file("signer.key"), Kind::SignerKey)?;
    let cpk = ctx.read(&keys.file("confirmer.pub"), Kind::ConfirmerPublic)?;
    let (sig, _) = S::sign(&sk, &cpk, m, rng)?;
    ctx.write(out, Kind::Signature, &sig)
}

fn confirmer_key<S: Cdcs>(ctx: &Context, keys: &KeyDir) -> Result<S::ConfirmerKey, CliError> {
    ctx.read(&keys.file("confirmer.key"), Kind::ConfirmerKey)
}

pub fn confirm<S: Cdcs>(
    ctx: &Context,
    side: Side,
    keys: &KeyDir,
    m: &[u8],
    sig: &Path,
    out: Option<&Path>,
    rng: &mut ChaCha20Rng,
) -> Result<(), CliError> {
    let pk = public::<S>(ctx, keys)?;
    let sig: S::Signature = ctx.read(sig, Kind::Signature)?;
    let stmt = S::confirm_statement(&pk.spk, &pk.cpk, m, &sig, Role::Confirmer)
        .ok_or_else(|| CliError::rejected("the signature fails a public check"))?;
    let witness = || {
        let ck = confirmer_key::<S>(ctx, keys)?;
        if !S::verify(&ck, &pk.spk, m, &sig) {
            return Err(CliError::rejected("the signature is invalid: refusing to confirm"));
        }
        Ok(S::confirm_witness(&ck))
    };
    let outcome = session::run(ctx, side, &stmt, witness, rng)?;
    conclude(ctx, outcome, Kind::ConfirmTranscript, out, "confirmation")
}

pub fn deny<S: Cdcs>(
    ctx: &Context,
    side: Side,
    keys: &KeyDir,
    m: &[u8],
    sig: &Path,
    out: Option<&Path>,
    rng: &mut ChaCha20Rng,
) -> Result<(), CliError> {
    let pk = public::<S>(ctx, keys)?;
    let sig: S::Signature = ctx.read(sig, Kind::Signature)?;
    let Some(stmt) = S::deny_statement(&pk.spk, &pk.cpk, m, &sig) else {
        eprintln!("denial: the signature fails a public check, no proof needed");
        return Ok(());
    };
    let witness = || {
        let ck = confirmer_key::<S>(ctx, keys)?;
        if S::verify(&ck, &pk.spk, m, &sig) {
            return Err(CliError::rejected("the signature is valid: refusing to deny"));
        }
        Ok(S::deny_witness(&ck))
    };
    let outcome = session::run(ctx, side, &stmt, witness, rng)?;
    conclude(ctx, outcome, Kind::DenyTranscript, out, "denial")
}

pub fn convert<S: Cdcs>(
    ctx: &Context,
    keys: &KeyDir,
    m: &[u8],
    sig: &Path,
    out: &Path,
    rng: &mut ChaCha20Rng,
) -> Result<(), CliError> {
    let spk = ctx.read(&keys.file("signer.pub"), Kind::SignerPublic)?;
    let ck = confirmer_key::<S>(ctx, keys)?;
    let sig = ctx.read(sig, Kind::Signature)?;
    let conv = S::convert(&ck, &spk, m, &sig, rng).ok_or_else(|| CliError::rejected("the signature is invalid"))?;
    ctx.write(out, Kind::Converted, &conv)
}

pub fn verify_converted<S: Cdcs>(ctx: &Context, keys: &KeyDir, m: &[u8], conv: &Path) -> Result<(), CliError> {
    let pk = public::<S>(ctx, keys)?;
    let conv = ctx.read(conv, Kind::Converted)?;
    if S::verify_converted(&pk.spk, &pk.cpk, m, &conv) {
        eprintln!("converted signature: valid");
        Ok(())
    } else {
        Err(CliError::rejected("converted signature: invalid"))
    }
}

pub fn check_transcript<P: Protocol>(ctx: &Context, stmt: &P, kind: Kind, path: &Path) -> Result<(), CliError> {
    let t: Transcript<P> = ctx.read(path, kind)?;
    if stmt.verify(&t) {
        eprintln!("{}: accepted", kind.label());
        Ok(())
    } else {
        Err(CliError::rejected(format!("{}: rejected", kind.label())))
    }
}

pub fn verify_transcript<S: Cdcs>(
    ctx: &Context,
    denial: bool,
    keys: &KeyDir,
    m: &[u8],
    sig: &Path,
    transcript: &Path,
) -> Result<(), CliError> {
    let pk = public::<S>(ctx, keys)?;
    let sig: S::Signature = ctx.read(sig, Kind::Signature)?;
    let no_statement = || CliError::rejected("the signature fails a public check; no transcript applies");
    if denial {
        let stmt = S::deny_statement(&pk.spk, &pk.cpk, m, &sig).ok_or_else(no_statement)?;
        check_transcript(ctx, &stmt, Kind::DenyTranscript, transcript)
    } else {
        let stmt = S::confirm_statement(&pk.spk, &pk.cpk, m, &sig, Role::Confirmer).ok_or_else(no_statement)?;
        check_transcript(ctx, &stmt, Kind::ConfirmTranscript, transcript)
    }
}
