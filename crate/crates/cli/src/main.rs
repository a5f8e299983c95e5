//! `osg`: keys, signatures, signcryptions and protocol runs on files, plus
//! the attack and game suites.
//!
//! Exit status: 0 on success, 1 when a verification fails or an honest
//! party refuses, 2 on usage, input or decoding errors.

mod analysis;
mod cdcs;
mod envelope;
mod error;
mod session;
mod signcrypt;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::analysis::{Attack, Experiment, Selection};
use crate::cdcs::{read_message, KeyDir};
use crate::envelope::{BackendId, Context, Scheme};
use crate::error::CliError;
use crate::session::Side;
use crate::signcrypt::{Party, TranscriptOf};

/// Calls `$f::<B>(args)` for the selected backend.
#[macro_export]
macro_rules! with_backend {
    ($backend:expr, $($f:ident)::+($($arg:expr),* $(,)?)) => {
        match $backend {
            $crate::envelope::BackendId::Toy => $($f)::+::<opaque_sig::groups::Toy>($($arg),*),
            $crate::envelope::BackendId::Bls => $($f)::+::<opaque_sig::groups::Bls>($($arg),*),
        }
    };
}

/// Calls `$f::<S>(args)` for the selected confirmer scheme and backend.
#[macro_export]
macro_rules! with_cdcs {
    ($scheme:expr, $backend:expr, $($f:ident)::+($($arg:expr),* $(,)?)) => {{
        use opaque_sig::cdcs::{CtEaS, CtEtS, EtS, NewStE, PlainStE};
        use opaque_sig::groups::{Bls, Toy};
        use $crate::envelope::{BackendId, Scheme};
        match ($scheme, $backend) {
            (Scheme::PlainSte, BackendId::Toy) => $($f)::+::<PlainStE<Toy>>($($arg),*),
            (Scheme::PlainSte, BackendId::Bls) => $($f)::+::<PlainStE<Bls>>($($arg),*),
            (Scheme::Ets, BackendId::Toy) => $($f)::+::<EtS<Toy>>($($arg),*),
            (Scheme::Ets, BackendId::Bls) => $($f)::+::<EtS<Bls>>($($arg),*),
            (Scheme::NewSte, BackendId::Toy) => $($f)::+::<NewStE<Toy>>($($arg),*),
            (Scheme::NewSte, BackendId::Bls) => $($f)::+::<NewStE<Bls>>($($arg),*),
            (Scheme::Ctets, BackendId::Toy) => $($f)::+::<CtEtS<Toy>>($($arg),*),
            (Scheme::Ctets, BackendId::Bls) => $($f)::+::<CtEtS<Bls>>($($arg),*),
            (Scheme::Cteas, BackendId::Toy) => $($f)::+::<CtEaS<Toy>>($($arg),*),
            (Scheme::Cteas, BackendId::Bls) => $($f)::+::<CtEaS<Bls>>($($arg),*),
            (other, _) => Err($crate::error::CliError::usage(format!(
                "{} is not a designated confirmer scheme",
                other.label()
            ))),
        }
    }};
}

#[derive(Parser)]
#[command(name = "osg", version, about = "Designated confirmer signatures and verifiable signcryption")]
struct Cli {
    /// Backend of the artifacts read and written.
    #[arg(long, global = true, env = "OSG_BACKEND", default_value = "toy", value_enum)]
    backend: BackendId,

    /// Seed for this run's randomness. Fresh entropy when absent, except
    /// for `attack` and `game`, which require it.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Key directory, as written by `keygen`.
    #[arg(long)]
    keys: PathBuf,
}

#[derive(Args)]
struct ProtocolArgs {
    #[arg(long, value_enum)]
    scheme: Scheme,
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    msg_file: PathBuf,
    /// Signature, or signcryption for `etste`.
    #[arg(long)]
    sig: PathBuf,
    /// Where to write the transcript.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "both")]
    side: Side,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a key pair for each party: signer and confirmer, or sender
    /// and receiver for `etste`.
    Keygen {
        #[arg(long, value_enum)]
        scheme: Scheme,
        #[arg(long)]
        out: PathBuf,
    },
    Sign {
        #[arg(long, value_enum)]
        scheme: Scheme,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        msg_file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Prove a signature valid, as the confirmer.
    Confirm(ProtocolArgs),
    /// Prove a signature invalid, as the confirmer.
    Deny(ProtocolArgs),
    Convert {
        #[arg(long, value_enum)]
        scheme: Scheme,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        msg_file: PathBuf,
        #[arg(long)]
        sig: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    VerifyConverted {
        #[arg(long, value_enum)]
        scheme: Scheme,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        msg_file: PathBuf,
        #[arg(long)]
        converted: PathBuf,
    },
    Signcrypt {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        msg_file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also keep the sender's coins, for proving validity later.
        #[arg(long)]
        coins: Option<PathBuf>,
    },
    /// Recover the message; it goes to stdout unless --out is given.
    Unsigncrypt {
        #[command(flatten)]
        common: Common,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    ProveValidity {
        #[command(flatten)]
        common: Common,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "receiver")]
        by: Party,
        /// The sender's coins; required with `--by sender` on the prover side.
        #[arg(long)]
        coins: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "both")]
        side: Side,
    },
    SigExtract {
        #[command(flatten)]
        common: Common,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        msg_file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    SigVerify {
        #[command(flatten)]
        common: Common,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        msg_file: PathBuf,
    },
    /// Re-check a stored transcript against the public statement.
    VerifyTranscript {
        #[arg(long, value_enum)]
        scheme: Scheme,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        protocol: TranscriptOf,
        #[arg(long, value_enum, default_value = "receiver")]
        by: Party,
        #[arg(long)]
        msg_file: Option<PathBuf>,
        #[arg(long)]
        sig: PathBuf,
        #[arg(long)]
        transcript: PathBuf,
    },
    /// Run a named attack and report its success.
    Attack {
        #[arg(value_enum)]
        attack: Attack,
        #[arg(long, value_enum)]
        target: Option<Scheme>,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        /// Feed the DDH attack non-DDH instances.
        #[arg(long)]
        no_instances: bool,
    },
    /// Run a security experiment against a chosen adversary.
    Game {
        #[arg(value_enum)]
        experiment: Experiment,
        #[arg(long, value_enum)]
        scheme: Scheme,
        #[arg(long)]
        adversary: Option<String>,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long)]
        no_instances: bool,
    },
}

fn protocol(args: &ProtocolArgs, denial: bool, backend: BackendId, rng: &mut ChaCha20Rng) -> Result<(), CliError> {
    let ctx = Context { scheme: args.scheme, backend };
    let keys = KeyDir(args.common.keys.clone());
    let m = read_message(&args.msg_file)?;
    let out = args.out.as_deref();
    match (args.scheme, denial) {
        (Scheme::Etste, false) => with_backend!(backend, signcrypt::confirm(&ctx, args.side, &keys, &m, &args.sig, out, rng)),
        (Scheme::Etste, true) => with_backend!(backend, signcrypt::deny(&ctx, args.side, &keys, &m, &args.sig, out, rng)),
        (s, false) => with_cdcs!(s, backend, cdcs::confirm(&ctx, args.side, &keys, &m, &args.sig, out, rng)),
        (s, true) => with_cdcs!(s, backend, cdcs::deny(&ctx, args.side, &keys, &m, &args.sig, out, rng)),
    }
}

fn report(sel: Selection) -> Result<(), CliError> {
    let r = analysis::run(&sel)?;
    println!("{r}");
    println!("{}", r.record());
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let backend = cli.backend;
    let mut rng = match cli.seed {
        Some(seed) => ChaCha20Rng::seed_from_u64(seed),
        None => ChaCha20Rng::from_entropy(),
    };
    let rng = &mut rng;
    let etste = Context { scheme: Scheme::Etste, backend };
    match cli.command {
        Command::Keygen { scheme, out } => {
            let ctx = Context { scheme, backend };
            match scheme {
                Scheme::Etste => with_backend!(backend, signcrypt::keygen(&ctx, &out, rng)),
                _ => with_cdcs!(scheme, backend, cdcs::keygen(&ctx, &out, rng)),
            }
        }
        Command::Sign { scheme, common, msg_file, out } => {
            let ctx = Context { scheme, backend };
            let m = read_message(&msg_file)?;
            with_cdcs!(scheme, backend, cdcs::sign(&ctx, &KeyDir(common.keys), &m, &out, rng))
        }
        Command::Confirm(args) => protocol(&args, false, backend, rng),
        Command::Deny(args) => protocol(&args, true, backend, rng),
        Command::Convert { scheme, common, msg_file, sig, out } => {
            let ctx = Context { scheme, backend };
            let m = read_message(&msg_file)?;
            with_cdcs!(scheme, backend, cdcs::convert(&ctx, &KeyDir(common.keys), &m, &sig, &out, rng))
        }
        Command::VerifyConverted { scheme, common, msg_file, converted } => {
            let ctx = Context { scheme, backend };
            let m = read_message(&msg_file)?;
            with_cdcs!(scheme, backend, cdcs::verify_converted(&ctx, &KeyDir(common.keys), &m, &converted))
        }
        Command::Signcrypt { common, msg_file, out, coins } => {
            let m = read_message(&msg_file)?;
            with_backend!(backend, signcrypt::signcrypt(&etste, &KeyDir(common.keys), &m, &out, coins.as_deref(), rng))
        }
        Command::Unsigncrypt { common, input, out } => {
            with_backend!(backend, signcrypt::unsigncrypt(&etste, &KeyDir(common.keys), &input, out.as_deref()))
        }
        Command::ProveValidity { common, input, by, coins, out, side } => with_backend!(
            backend,
            signcrypt::prove_validity(&etste, side, by, &KeyDir(common.keys), &input, coins.as_deref(), out.as_deref(), rng)
        ),
        Command::SigExtract { common, input, msg_file, out } => {
            let m = read_message(&msg_file)?;
            with_backend!(backend, signcrypt::sig_extract(&etste, &KeyDir(common.keys), &input, &m, &out, rng))
        }
        Command::SigVerify { common, input, msg_file } => {
            let m = read_message(&msg_file)?;
            with_backend!(backend, signcrypt::sig_verify(&etste, &KeyDir(common.keys), &m, &input))
        }
        Command::VerifyTranscript { scheme, common, protocol, by, msg_file, sig, transcript } => {
            let ctx = Context { scheme, backend };
            let keys = KeyDir(common.keys);
            let m = msg_file.as_deref().map(read_message).transpose()?;
            if scheme == Scheme::Etste {
                return with_backend!(
                    backend,
                    signcrypt::verify_transcript(&ctx, protocol, by, &keys, m.as_deref(), &sig, &transcript)
                );
            }
            if protocol == TranscriptOf::Validity {
                return Err(CliError::usage("validity transcripts belong to etste"));
            }
            let m = m.ok_or_else(|| CliError::usage("--msg-file is required"))?;
            let denial = protocol == TranscriptOf::Deny;
            with_cdcs!(scheme, backend, cdcs::verify_transcript(&ctx, denial, &keys, &m, &sig, &transcript))
        }
        Command::Attack { attack, target, trials, no_instances } => {
            let seed = cli.seed.ok_or_else(|| CliError::usage("attack needs --seed"))?;
            report(attack.selection(target, backend, trials, seed, no_instances)?)
        }
        Command::Game { experiment, scheme, adversary, trials, no_instances } => {
            let seed = cli.seed.ok_or_else(|| CliError::usage("game needs --seed"))?;
            report(Selection { experiment, scheme, backend, adversary, trials, seed, no_instances })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("osg: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
