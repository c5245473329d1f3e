use std::path::PathBuf;
use std::process::exit;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use weilzeta::cli::{diagnostic, run, Command, RunConfig};
use weilzeta::Error;

#[derive(Parser)]
#[command(name = "weilzeta", version, about = "Zeta functions over finite fields and Weil checks")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Largest extension degree m to count over.
    #[arg(long, global = true, default_value_t = 3)]
    mmax: usize,
    /// Maximum number of tuples a single count may enumerate.
    #[arg(long, global = true, default_value_t = weilzeta::ffield::DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long = "rh-tol", global = true, default_value_t = 1e-9)]
    rh_tol: f64,
    #[arg(long = "weight-tol", global = true, default_value_t = 0.25)]
    weight_tol: f64,
    /// Require the dimgroup matrix to be symmetric with this determinant.
    #[arg(long = "det-check", global = true)]
    det_check: Option<BigInt>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Point counts N_1..N_mmax of a variety file.
    Count { input: PathBuf },
    /// Zeta function and Weil checks for a variety file.
    Weil {
        input: PathBuf,
        /// Betti numbers b_0,..,b_2n; derived for projective space and hypersurfaces.
        #[arg(long, value_delimiter = ',')]
        betti: Option<Vec<usize>>,
    },
    /// Character formula against brute force for y^2 = x^3 - x.
    Cm {
        #[arg(long, default_value_t = 5)]
        from: u64,
        #[arg(long, default_value_t = 97)]
        to: u64,
    },
    /// Endomorphism ring and Frobenius count of a lattice file.
    Lattice { input: PathBuf },
    /// Dimension group of a matrix file.
    Dimgroup { input: PathBuf },
}

fn main() {
    let cli = Cli::parse();
    let command = match cli.command {
        Cmd::Count { input } => Command::Count { input },
        Cmd::Weil { input, betti } => Command::Weil { input, betti },
        Cmd::Cm { from, to } => Command::Cm { from, to },
        Cmd::Lattice { input } => Command::Lattice { input },
        Cmd::Dimgroup { input } => Command::Dimgroup { input },
    };
    let c = cli.common;
    let cfg = RunConfig {
        command,
        m_max: c.mmax,
        budget: c.budget,
        rh_tol: c.rh_tol,
        weight_tol: c.weight_tol,
        det_check: c.det_check,
        out: c.out,
    };
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{}", diagnostic(&e));
            exit(e.exit_code());
        }
    };
    let text = report.render();
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                let e = Error::Io(format!("{}: {e}", path.display()));
                eprintln!("{}", diagnostic(&e));
                exit(e.exit_code());
            }
        }
        None => print!("{text}"),
    }
    exit(report.exit_code());
}
