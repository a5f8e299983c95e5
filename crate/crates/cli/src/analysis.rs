//! The `game` and `attack` subcommands: experiments from the analysis
//! module behind one selector, plus named presets for the attacks.

use clap::ValueEnum;
use opaque_sig::analysis::attacks::{Fact1, ForgeStrategy, Guess, Rerandomize};
use opaque_sig::analysis::commit_encrypt::{self, CeGuess, CommitmentBit, OpeningParity};
use opaque_sig::analysis::dp::{self, DpParams, Variant};
use opaque_sig::analysis::games::{self, Keys};
use opaque_sig::analysis::signcrypt_games::{self as scg, MaulAndAsk, ScForgeStrategy, ScGuess};
use opaque_sig::analysis::stats::GameReport;
use opaque_sig::groups::Backend;

use crate::envelope::{BackendId, Scheme};
use crate::error::CliError;
use crate::{with_backend, with_cdcs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    Completeness,
    InvCma,
    SinvCma,
    EufCma,
    SindCca,
    CommitEncrypt,
    DdhDecision,
    MauledStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Attack {
    /// Re-encrypt the challenge and ask for a conversion (INV-CMA).
    Fact1,
    /// Decide DDH instances through the status oracle of the DP scheme.
    DpMaul,
    /// Re-encrypt the message layer of a signcryption to another message.
    PadMaul,
    /// Maul the challenge signcryption and query the oracles (SIND-CCA).
    MaulAndAsk,
}

#[derive(Clone, Debug)]
pub struct Selection {
    pub experiment: Experiment,
    pub scheme: Scheme,
    pub backend: BackendId,
    pub adversary: Option<String>,
    pub trials: u64,
    pub seed: u64,
    /// For the DDH decision: run on non-DDH instances.
    pub no_instances: bool,
}

impl Attack {
    pub fn selection(self, target: Option<Scheme>, backend: BackendId, trials: u64, seed: u64, no_instances: bool) -> Result<Selection, CliError> {
        let (experiment, scheme, adversary) = match self {
            Attack::Fact1 => {
                let target = target.ok_or_else(|| CliError::usage("fact1 needs --target"))?;
                (Experiment::InvCma, target, "fact1")
            }
            Attack::DpMaul => (Experiment::DdhDecision, target.unwrap_or(Scheme::Dp), "dp-maul"),
            Attack::PadMaul => (Experiment::EufCma, target.unwrap_or(Scheme::Etste), "pad-maul"),
            Attack::MaulAndAsk => (Experiment::SindCca, target.unwrap_or(Scheme::Etste), "maul-and-ask"),
        };
        Ok(Selection { experiment, scheme, backend, adversary: Some(adversary.into()), trials, seed, no_instances })
    }
}

fn unknown(sel: &Selection, known: &[&str]) -> CliError {
    let name = sel.adversary.as_deref().unwrap_or("");
    CliError::usage(format!(
        "{:?} on {} has no adversary {name:?}; choose one of: {}",
        sel.experiment,
        sel.scheme.label(),
        known.join(", ")
    ))
}

fn adversary<'a>(sel: &'a Selection, default: &'a str) -> &'a str {
    sel.adversary.as_deref().unwrap_or(default)
}

fn cdcs_game<S: Rerandomize>(sel: &Selection) -> Result<GameReport, CliError> {
    let (trials, seed) = (sel.trials, sel.seed);
    Ok(match sel.experiment {
        Experiment::Completeness => games::completeness::<S>(&Keys::Fresh, trials, seed),
        Experiment::InvCma => match adversary(sel, "fact1") {
            "fact1" => games::inv_cma::<S, _, _>(Fact1::new, &Keys::Fresh, trials, seed),
            "guess" => games::inv_cma::<S, _, _>(|| Guess, &Keys::Fresh, trials, seed),
            _ => return Err(unknown(sel, &["fact1", "guess"])),
        },
        Experiment::SinvCma => match adversary(sel, "fact1") {
            "fact1" => games::sinv_cma::<S, _, _>(Fact1::new, &Keys::Fresh, trials, seed),
            "guess" => games::sinv_cma::<S, _, _>(|| Guess, &Keys::Fresh, trials, seed),
            _ => return Err(unknown(sel, &["fact1", "guess"])),
        },
        Experiment::EufCma => {
            let name = adversary(sel, "mauled-reuse");
            let strategy = ForgeStrategy::ALL
                .into_iter()
                .find(|s| games::Forger::<S>::name(s) == name)
                .ok_or_else(|| unknown(sel, &["random-element", "reuse", "mauled-reuse"]))?;
            games::euf_cma::<S, _, _>(move || strategy, trials, seed)
        }
        Experiment::CommitEncrypt if sel.scheme == Scheme::Ctets => commit_encrypt_game::<S::Backend>(sel)?,
        _ => return Err(not_for(sel)),
    })
}

fn commit_encrypt_game<B: Backend>(sel: &Selection) -> Result<GameReport, CliError> {
    let (trials, seed) = (sel.trials, sel.seed);
    Ok(match adversary(sel, "guess") {
        "commitment-bit" => commit_encrypt::game::<B, _>(&CommitmentBit, trials, seed),
        "opening-parity" => commit_encrypt::game::<B, _>(&OpeningParity, trials, seed),
        "guess" => commit_encrypt::game::<B, _>(&CeGuess, trials, seed),
        _ => return Err(unknown(sel, &["commitment-bit", "opening-parity", "guess"])),
    })
}

fn signcrypt_game<B: Backend>(sel: &Selection) -> Result<GameReport, CliError> {
    let (trials, seed) = (sel.trials, sel.seed);
    Ok(match sel.experiment {
        Experiment::Completeness => scg::completeness::<B>(trials, seed),
        Experiment::EufCma => {
            let name = adversary(sel, "pad-maul");
            let strategy = ScForgeStrategy::ALL
                .into_iter()
                .find(|s| s.name() == name)
                .ok_or_else(|| unknown(sel, &["random-tuple", "remix", "pad-maul"]))?;
            scg::euf_cma::<B>(strategy, trials, seed)
        }
        Experiment::SindCca => match adversary(sel, "maul-and-ask") {
            "maul-and-ask" => scg::sind_cca::<B, _, _>(|| MaulAndAsk, trials, seed),
            "guess" => scg::sind_cca::<B, _, _>(|| ScGuess, trials, seed),
            _ => return Err(unknown(sel, &["maul-and-ask", "guess"])),
        },
        _ => return Err(not_for(sel)),
    })
}

fn dp_params(backend: BackendId) -> DpParams {
    match backend {
        BackendId::Toy => DpParams::toy(),
        BackendId::Bls => DpParams::production(),
    }
}

fn dp_game(sel: &Selection, variant: Variant) -> Result<GameReport, CliError> {
    let params = dp_params(sel.backend);
    let (trials, seed) = (sel.trials, sel.seed);
    if adversary(sel, "dp-maul") != "dp-maul" {
        return Err(unknown(sel, &["dp-maul"]));
    }
    Ok(match (sel.experiment, variant) {
        (Experiment::Completeness, _) => dp::completeness(&params, variant, trials, seed),
        (Experiment::DdhDecision, Variant::Original) => dp::ddh_decision(&params, !sel.no_instances, trials, seed),
        (Experiment::MauledStatus, Variant::Repaired) => dp::repaired_rejects(&params, trials, seed),
        _ => return Err(not_for(sel)),
    })
}

fn not_for(sel: &Selection) -> CliError {
    CliError::usage(format!("{:?} is not defined for {}", sel.experiment, sel.scheme.label()))
}

pub fn run(sel: &Selection) -> Result<GameReport, CliError> {
    if sel.trials == 0 {
        return Err(CliError::usage("--trials must be positive"));
    }
    match sel.scheme {
        Scheme::Etste => with_backend!(sel.backend, signcrypt_game(sel)),
        Scheme::Dp => dp_game(sel, Variant::Original),
        Scheme::DpRepaired => dp_game(sel, Variant::Repaired),
        _ => with_cdcs!(sel.scheme, sel.backend, cdcs_game(sel)),
    }
}
