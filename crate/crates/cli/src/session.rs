//! Running a protocol in one process or split across two, each half
//! reading the other's framed messages from stdin and writing its own to
//! stdout.

use std::io::{self, Read, Write};

use clap::ValueEnum;
use opaque_sig::sigma::session::{Prover, Verifier};
use opaque_sig::sigma::{self, Protocol, Transcript};
use rand_chacha::ChaCha20Rng;

use crate::envelope::{Context, Kind};
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Side {
    /// Both roles in this process.
    Both,
    /// Prover half: challenges on stdin, prover messages on stdout.
    Prover,
    /// Verifier half: prover messages on stdin, challenges on stdout.
    Verifier,
}

pub fn prove<P: Protocol>(
    ctx: &Context,
    stmt: &P,
    w: &P::Witness,
    rng: &mut ChaCha20Rng,
    input: &mut impl Read,
    output: &mut impl Write,
) -> Result<(), CliError> {
    let mut prover = Prover::new(stmt, w);
    ctx.send(output, Kind::First, &prover.start(rng)?)?;
    let b = ctx.recv(input, Kind::Challenge)?;
    ctx.send(output, Kind::Second, &prover.respond(b)?)?;
    let c = ctx.recv(input, Kind::Challenge)?;
    ctx.send(output, Kind::Third, &prover.finish(c)?)
}

pub fn verify<P: Protocol>(
    ctx: &Context,
    stmt: &P,
    rng: &mut ChaCha20Rng,
    input: &mut impl Read,
    output: &mut impl Write,
) -> Result<(Transcript<P>, bool), CliError> {
    let mut verifier = Verifier::new(stmt);
    let b = verifier.receive_first(ctx.recv(input, Kind::First)?, rng)?;
    ctx.send(output, Kind::Challenge, &b)?;
    let c = verifier.receive_second(ctx.recv(input, Kind::Second)?, rng)?;
    ctx.send(output, Kind::Challenge, &c)?;
    Ok(verifier.receive_third(ctx.recv(input, Kind::Third)?)?)
}

/// The verdict of a session as seen from this process: `Some` on the
/// verifier side and in-process runs, `None` for the prover half.
pub fn run<P: Protocol>(
    ctx: &Context,
    side: Side,
    stmt: &P,
    witness: impl FnOnce() -> Result<P::Witness, CliError>,
    rng: &mut ChaCha20Rng,
) -> Result<Option<(Transcript<P>, bool)>, CliError> {
    match side {
        Side::Both => Ok(Some(sigma::run(stmt, &witness()?, rng)?)),
        Side::Prover => {
            prove(ctx, stmt, &witness()?, rng, &mut io::stdin().lock(), &mut io::stdout().lock())?;
            Ok(None)
        }
        Side::Verifier => verify(ctx, stmt, rng, &mut io::stdin().lock(), &mut io::stdout().lock()).map(Some),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::{BackendId, Scheme};
    use opaque_sig::cdcs::{Cdcs, NewStE, Parties};
    use opaque_sig::groups::Toy;
    use rand::SeedableRng;
    use std::io::{Cursor, Seek, SeekFrom};

    /// Replays a recorded prover against a fresh verifier, then feeds the
    /// verifier's challenges back; the verifier must sample the same ones.
    #[test]
    fn halves_interoperate_through_buffers() {
        let ctx = Context { scheme: Scheme::NewSte, backend: BackendId::Toy };
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let parties = Parties::<NewStE<Toy>>::generate(&mut rng);
        let m = NewStE::<Toy>::random_message(&mut rng);
        let (sig, _) = parties.sign(&m, &mut rng).unwrap();
        let (stmt, w) = parties.confirm(&m, &sig).unwrap();

        // Challenges the verifier will draw from seed 7.
        let mut challenges = Vec::new();
        let mut vrng = ChaCha20Rng::seed_from_u64(7);
        let b = stmt.space().sample(&mut vrng);
        let c = stmt.sample_c(&mut vrng);
        ctx.send(&mut challenges, Kind::Challenge, &b).unwrap();
        ctx.send(&mut challenges, Kind::Challenge, &c).unwrap();

        let mut messages = Cursor::new(Vec::new());
        prove(&ctx, &stmt, &w, &mut rng, &mut Cursor::new(challenges.clone()), &mut messages).unwrap();
        messages.seek(SeekFrom::Start(0)).unwrap();
        let mut sent = Vec::new();
        let (t, ok) = verify(&ctx, &stmt, &mut ChaCha20Rng::seed_from_u64(7), &mut messages, &mut sent).unwrap();
        assert!(ok && stmt.verify(&t));
        assert_eq!(sent, challenges);
    }

    #[test]
    fn truncated_session_aborts() {
        let ctx = Context { scheme: Scheme::NewSte, backend: BackendId::Toy };
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let parties = Parties::<NewStE<Toy>>::generate(&mut rng);
        let m = NewStE::<Toy>::random_message(&mut rng);
        let (sig, _) = parties.sign(&m, &mut rng).unwrap();
        let (stmt, _) = parties.confirm(&m, &sig).unwrap();
        let err = verify(&ctx, &stmt, &mut rng, &mut Cursor::new(vec![0, 0, 0, 9, 1]), &mut Vec::new()).unwrap_err();
        assert!(matches!(err, CliError::Session(_)), "{err}");
    }
}
