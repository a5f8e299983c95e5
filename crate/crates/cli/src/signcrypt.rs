//! Subcommands for verifiable signcryption.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use opaque_sig::cdcs::Role;
use opaque_sig::groups::Backend;
use opaque_sig::primitives::{BlsKeys, BlsPublic};
use opaque_sig::signcrypt::{self as sc, ReceiverKeys, ReceiverPublic, SenderCoins, Signcryption};
use rand_chacha::ChaCha20Rng;

use crate::cdcs::{check_transcript, conclude, KeyDir};
use crate::envelope::{Context, Kind};
use crate::error::CliError;
use crate::session::{self, Side};

/// Who proves validity: the sender from its coins, or the receiver from
/// its keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Party {
    Sender,
    Receiver,
}

impl Party {
    fn role(self) -> Role {
        match self {
            Party::Sender => Role::Signer,
            Party::Receiver => Role::Confirmer,
        }
    }
}

fn sender_pk<B: Backend>(ctx: &Context, keys: &KeyDir) -> Result<BlsPublic<B>, CliError> {
    ctx.read(&keys.file("sender.pub"), Kind::SenderPublic)
}

fn receiver_pk<B: Backend>(ctx: &Context, keys: &KeyDir) -> Result<ReceiverPublic<B>, CliError> {
    ctx.read(&keys.file("receiver.pub"), Kind::ReceiverPublic)
}

fn receiver_key<B: Backend>(ctx: &Context, keys: &KeyDir) -> Result<ReceiverKeys<B>, CliError> {
    ctx.read(&keys.file("receiver.key"), Kind::ReceiverKey)
}

pub fn keygen<B: Backend>(ctx: &Context, out: &Path, rng: &mut ChaCha20Rng) -> Result<(), CliError> {
    fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let keys = KeyDir(out.to_path_buf());
    let sender = BlsKeys::<B>::generate(rng);
    let receiver = ReceiverKeys::<B>::generate(rng);
    ctx.write(&keys.file("sender.key"), Kind::SenderKey, &sender)?;
    ctx.write(&keys.file("sender.pub"), Kind::SenderPublic, &sender.public)?;
    ctx.write(&keys.file("receiver.key"), Kind::ReceiverKey, &receiver)?;
    ctx.write(&keys.file("receiver.pub"), Kind::ReceiverPublic, &receiver.public())
}

pub fn signcrypt<B: Backend>(
    ctx: &Context,
    keys: &KeyDir,
    m: &[u8],
    out: &Path,
    coins_out: Option<&Path>,
    rng: &mut ChaCha20Rng,
) -> Result<(), CliError> {
    let sender: BlsKeys<B> = ctx.read(&keys.file("sender.key"), Kind::SenderKey)?;
    let (mu, coins) = sc::signcrypt(&sender, &receiver_pk(ctx, keys)?, m, rng)?;
    ctx.write(out, Kind::Signcryption, &mu)?;
    if let Some(path) = coins_out {
        ctx.write(path, Kind::SenderCoins, &coins)?;
    }
    Ok(())
}

pub fn unsigncrypt<B: Backend>(ctx: &Context, keys: &KeyDir, input: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let mu: Signcryption<B> = ctx.read(input, Kind::Signcryption)?;
    let m = sc::unsigncrypt(&receiver_key(ctx, keys)?, &sender_pk(ctx, keys)?, &mu)
        .ok_or_else(|| CliError::rejected("signcryption is invalid"))?;
    match out {
        Some(path) => fs::write(path, &m).map_err(|e| CliError::io(path, e)),
        None => io::stdout().write_all(&m).map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn prove_validity<B: Backend>(
    ctx: &Context,
    side: Side,
    by: Party,
    keys: &KeyDir,
    input: &Path,
    coins: Option<&Path>,
    out: Option<&Path>,
    rng: &mut ChaCha20Rng,
) -> Result<(), CliError> {
    let mu: Signcryption<B> = ctx.read(input, Kind::Signcryption)?;
    let (spk, rpk) = (sender_pk::<B>(ctx, keys)?, receiver_pk::<B>(ctx, keys)?);
    let stmt = sc::validity_statement(&spk, &rpk, &mu, by.role());
    let witness = || match by {
        Party::Sender => {
            let path = coins.ok_or_else(|| CliError::usage("the sender proves from its coins: pass --coins"))?;
            let coins: SenderCoins<B> = ctx.read(path, Kind::SenderCoins)?;
            Ok(sc::sender_validity_witness(&spk, &rpk, &mu, &coins)?)
        }
        Party::Receiver => Ok(sc::receiver_validity_witness(&receiver_key(ctx, keys)?, &spk, &mu)?),
    };
    let outcome = session::run(ctx, side, &stmt, witness, rng)?;
    conclude(ctx, outcome, Kind::ValidityTranscript, out, "validity")
}

pub fn confirm<B: Backend>(
    ctx: &Context,
    side: Side,
    keys: &KeyDir,
    m: &[u8],
    input: &Path,
    out: Option<&Path>,
    rng: &mut ChaCha20Rng,
) -> Result<(), CliError> {
    let mu: Signcryption<B> = ctx.read(input, Kind::Signcryption)?;
    let (spk, rpk) = (sender_pk::<B>(ctx, keys)?, receiver_pk::<B>(ctx, keys)?);
    let stmt = sc::confirm_statement(&spk, &rpk, &mu, m).ok_or_else(|| CliError::usage("message does not encode"))?;
    let witness = || Ok(sc::confirm(&receiver_key(ctx, keys)?, &spk, &mu, m)?.1);
    let outcome = session::run(ctx, side, &stmt, witness, rng)?;
    conclude(ctx, outcome, Kind::ConfirmTranscript, out, "confirmation")
}

pub fn deny<B: Backend>(
    ctx: &Context,
    side: Side,
    keys: &KeyDir,
    m: &[u8],
    input: &Path,
    out: Option<&Path>,
    rng: &mut ChaCha20Rng,
) -> Result<(), CliError> {
    let mu: Signcryption<B> = ctx.read(input, Kind::Signcryption)?;
    let (spk, rpk) = (sender_pk::<B>(ctx, keys)?, receiver_pk::<B>(ctx, keys)?);
    let stmt = sc::deny_statement(&spk, &rpk, &mu, m).ok_or_else(|| CliError::usage("message does not encode"))?;
    let witness = || Ok(sc::deny(&receiver_key(ctx, keys)?, &spk, &mu, m)?.1);
    let outcome = session::run(ctx, side, &stmt, witness, rng)?;
    conclude(ctx, outcome, Kind::DenyTranscript, out, "denial")
}

pub fn sig_extract<B: Backend>(
    ctx: &Context,
    keys: &KeyDir,
    input: &Path,
    m: &[u8],
    out: &Path,
    rng: &mut ChaCha20Rng,
) -> Result<(), CliError> {
    let mu: Signcryption<B> = ctx.read(input, Kind::Signcryption)?;
    let x = sc::sig_extract(&receiver_key(ctx, keys)?, &sender_pk(ctx, keys)?, &mu, m, rng)
        .ok_or_else(|| CliError::rejected("signcryption is invalid or carries another message"))?;
    ctx.write(out, Kind::Extracted, &x)
}

pub fn sig_verify<B: Backend>(ctx: &Context, keys: &KeyDir, m: &[u8], input: &Path) -> Result<(), CliError> {
    let x: sc::Extracted<B> = ctx.read(input, Kind::Extracted)?;
    if sc::sig_verify(&sender_pk(ctx, keys)?, &receiver_pk(ctx, keys)?, m, &x) {
        eprintln!("extracted signature: valid");
        Ok(())
    } else {
        Err(CliError::rejected("extracted signature: invalid"))
    }
}

/// Which protocol a stored transcript belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TranscriptOf {
    Confirm,
    Deny,
    Validity,
}

pub fn verify_transcript<B: Backend>(
    ctx: &Context,
    of: TranscriptOf,
    by: Party,
    keys: &KeyDir,
    m: Option<&[u8]>,
    input: &Path,
    transcript: &Path,
) -> Result<(), CliError> {
    let mu: Signcryption<B> = ctx.read(input, Kind::Signcryption)?;
    let (spk, rpk) = (sender_pk::<B>(ctx, keys)?, receiver_pk::<B>(ctx, keys)?);
    let message = || m.ok_or_else(|| CliError::usage("confirmation and denial transcripts need --msg-file"));
    let encodes = || CliError::usage("message does not encode");
    match of {
        TranscriptOf::Validity => {
            check_transcript(ctx, &sc::validity_statement(&spk, &rpk, &mu, by.role()), Kind::ValidityTranscript, transcript)
        }
        TranscriptOf::Confirm => {
            let stmt = sc::confirm_statement(&spk, &rpk, &mu, message()?).ok_or_else(encodes)?;
            check_transcript(ctx, &stmt, Kind::ConfirmTranscript, transcript)
        }
        TranscriptOf::Deny => {
            let stmt = sc::deny_statement(&spk, &rpk, &mu, message()?).ok_or_else(encodes)?;
            check_transcript(ctx, &stmt, Kind::DenyTranscript, transcript)
        }
    }
}
