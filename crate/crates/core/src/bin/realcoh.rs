use std::process::ExitCode;

use clap::{Parser, Subcommand};
use realcoh::cli::{self, CliError, Output, EXIT_OK, EXIT_ORACLE};

#[derive(Parser)]
#[command(name = "realcoh", about = "Galois cohomology of real reductive groups")]
struct Args {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tate cohomology of a torus, quasi-torus, or of π₁G
    Tate {
        file: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        json: bool,
    },
    /// H¹(ℝ, G) as orbits of reductive Kac labelings
    H1 {
        file: String,
        #[arg(long)]
        json: bool,
        /// print the cocycle representatives ν
        #[arg(long)]
        reps: bool,
        /// cross-check against the oracles
        #[arg(long)]
        oracle: bool,
    },
    /// π₀G(ℝ)
    Pi0 {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// the abelianization map H¹G → Ĥ¹π₁G
    Ab1 {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// oracle cross-checks (a spec, or the whole catalog) and exactness of sequences
    Verify {
        file: Option<String>,
        #[arg(long)]
        catalog: bool,
        #[arg(long)]
        json: bool,
    },
    /// list built-in examples
    Catalog {
        #[arg(long)]
        json: bool,
    },
}

fn run(args: Args) -> Result<(Output, bool, i32), CliError> {
    match args.cmd {
        Cmd::Tate { file, k, json } => Ok((cli::cmd_tate(&cli::read_input(&file)?, k)?, json, EXIT_OK)),
        Cmd::H1 { file, json, reps, oracle } => {
            let doc = cli::read_input(&file)?;
            let out = cli::cmd_h1(&doc, reps)?;
            if oracle {
                let (check, ok) = cli::cmd_verify(Some(&doc))?;
                if !ok {
                    return Err(cli::oracle_mismatch(&check));
                }
            }
            Ok((out, json, EXIT_OK))
        }
        Cmd::Pi0 { file, json } => Ok((cli::cmd_pi0(&cli::read_input(&file)?)?, json, EXIT_OK)),
        Cmd::Ab1 { file, json } => Ok((cli::cmd_ab1(&cli::read_input(&file)?)?, json, EXIT_OK)),
        Cmd::Verify { file, catalog, json } => {
            let doc = match (&file, catalog) {
                (Some(f), false) => Some(cli::read_input(f)?),
                (None, true) => None,
                _ => return Err(CliError::Invalid("give either a file or --catalog".into())),
            };
            let (out, ok) = cli::cmd_verify(doc.as_ref())?;
            Ok((out, json, if ok { EXIT_OK } else { EXIT_ORACLE }))
        }
        Cmd::Catalog { json } => Ok((cli::cmd_catalog(), json, EXIT_OK)),
    }
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok((out, json, code)) => {
            print!("{}", out.render(json));
            ExitCode::from(code as u8)
        }
        Err(e) => {
            if let CliError::OracleMismatch(report) = &e {
                print!("{report}");
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
