mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use commands::{CliError, CmdResult, FamilyArgs};
use output::{CommandResult, Format};

/// Exact rational tangle, knot, Gordian distance and graph end computations.
#[derive(Debug, Parser)]
#[command(name = "gordian", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rational tangles and continued fractions
    #[command(subcommand)]
    Tangle(TangleCmd),
    /// Rational knots and their invariants
    #[command(subcommand)]
    Knot(KnotCmd),
    /// The K_n family
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Certified Gordian distance bounds and paths
    #[command(subcommand)]
    Gordian(GordianCmd),
    /// End counts of infinite graphs
    #[command(subcommand)]
    Ends(EndsCmd),
}

#[derive(Debug, Subcommand)]
enum TangleCmd {
    /// Fraction of a twist word (`[0] +3 *2`) or continued fraction (`[2,3,4]`)
    Eval {
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
    /// Canonical continued fraction and word for p/q
    Canon {
        #[arg(allow_hyphen_values = true)]
        fraction: String,
    },
}

#[derive(Debug, Subcommand)]
enum KnotCmd {
    /// Class, parity and witness of N(p/q)
    Classify {
        #[arg(allow_hyphen_values = true)]
        fraction: String,
    },
    /// Whether N(a) and N(b) are the same knot
    Equiv {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Sphere-1 witness for the r(p/q)-move
    Witness {
        #[arg(allow_hyphen_values = true)]
        fraction: String,
    },
    /// Cover homology, e₂ and determinant of a fraction or `#`-joined knot
    Invariants {
        #[arg(allow_hyphen_values = true)]
        knot: String,
    },
}

#[derive(Debug, Subcommand)]
enum FamilyCmd {
    /// Conway polynomial and determinant of K_n
    Kn {
        #[arg(long)]
        n: u32,
    },
}

#[derive(Debug, Subcommand)]
enum GordianCmd {
    /// Lower bound on the move distance between two knots
    Bound {
        #[arg(long = "move")]
        mv: String,
        #[arg(long, allow_hyphen_values = true)]
        knot: String,
        #[arg(long, default_value = "unknot", allow_hyphen_values = true)]
        to: String,
    },
    /// The path U, Q, Q#Q, … for the move's witness Q
    Chain {
        #[arg(long = "move")]
        mv: String,
        #[arg(long)]
        m: usize,
    },
    /// Path whose vertices all lie at distance ≥ radius from the base
    CertifyEnd {
        #[arg(long = "move")]
        mv: String,
        #[arg(long)]
        radius: u64,
        /// start the base path at Q^from
        #[arg(long, default_value_t = 1)]
        from: usize,
    },
    /// Reroute a witness chain around a finite set of knots
    Avoid {
        #[arg(long = "move")]
        mv: String,
        #[arg(long, default_value_t = 2)]
        chain: usize,
        #[arg(long)]
        forbid: Vec<String>,
        /// also forbid the first N registered witnesses
        #[arg(long, default_value_t = 0)]
        forbid_prefix: usize,
    },
}

#[derive(Debug, Subcommand)]
enum EndsCmd {
    /// Component counts after a removal, or best catalog bounds without one
    Estimate {
        #[command(flatten)]
        family: FamilyArgs,
        /// none, ball:<n>, set:<a>|<b>, cliques:<i>,<j>
        #[arg(long)]
        removal: Option<String>,
        #[arg(long = "R", default_value_t = 8)]
        radius: u64,
        #[arg(long = "M", default_value_t = 4)]
        width: u64,
    },
    /// Closed-form end counts
    Exact {
        #[command(flatten)]
        family: FamilyArgs,
    },
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Tangle(TangleCmd::Eval { input }) => commands::tangle_eval(&input),
        Command::Tangle(TangleCmd::Canon { fraction }) => commands::tangle_canon(&fraction),
        Command::Knot(KnotCmd::Classify { fraction }) => commands::knot_classify(&fraction),
        Command::Knot(KnotCmd::Equiv { a, b }) => commands::knot_equiv(&a, &b),
        Command::Knot(KnotCmd::Witness { fraction }) => commands::knot_witness(&fraction),
        Command::Knot(KnotCmd::Invariants { knot }) => commands::knot_invariants(&knot),
        Command::Family(FamilyCmd::Kn { n }) => commands::family_kn(n),
        Command::Gordian(GordianCmd::Bound { mv, knot, to }) => {
            commands::gordian_bound(&mv, &knot, &to)
        }
        Command::Gordian(GordianCmd::Chain { mv, m }) => commands::gordian_chain(&mv, m),
        Command::Gordian(GordianCmd::CertifyEnd { mv, radius, from }) => {
            commands::gordian_certify_end(&mv, radius, from)
        }
        Command::Gordian(GordianCmd::Avoid {
            mv,
            chain,
            forbid,
            forbid_prefix,
        }) => commands::gordian_avoid(&mv, chain, &forbid, forbid_prefix),
        Command::Ends(EndsCmd::Estimate {
            family,
            removal,
            radius,
            width,
        }) => commands::ends_estimate(&family, removal.as_deref(), radius, width),
        Command::Ends(EndsCmd::Exact { family }) => commands::ends_exact(&family),
    }
}

/// Writes one document to stdout; a closed pipe is not an error.
fn emit(result: &CommandResult, format: Format) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", result.render(format).trim_end());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(std::io::stdout().lock(), "{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{}", e.render());
            let usage = CliError::Usage(e.kind().to_string());
            emit(&CommandResult::error(usage.to_string()), Format::Json);
            return ExitCode::from(usage.exit_code());
        }
    };
    match dispatch(cli.command) {
        Ok(payload) => {
            emit(&CommandResult::ok(payload), cli.format);
            ExitCode::SUCCESS
        }
        Err(e) => {
            emit(&CommandResult::error(e.to_string()), cli.format);
            ExitCode::from(e.exit_code())
        }
    }
}
