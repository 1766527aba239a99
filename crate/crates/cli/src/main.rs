use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use torus_zeta_cli::report::{self, DEFAULT_K, DEFAULT_TERMS};
use torus_zeta_cli::{check_k, check_terms, load, CliError, EXIT_CODES_HELP, EXIT_USAGE};

/// Entropy, periodic points and zeta functions of matrices over GF(q)[t].
///
/// FILE is a JSON problem such as
/// {"p": 7, "e": 1, "d": 2, "matrix": [[[6], [0]], [[0], [2]]]}.
#[derive(Parser)]
#[command(name = "torus-zeta", version, after_help = EXIT_CODES_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the zeta function is algebraic.
    Classify { file: PathBuf },
    /// Topological entropy and eigenvalue absolute values.
    Entropy { file: PathBuf },
    /// N_k for k = 1..K by the determinant and spectral routes.
    Nk {
        file: PathBuf,
        #[arg(long = "max", default_value_t = DEFAULT_K)]
        max: u64,
    },
    /// Closed form (if algebraic) and power series to z^T.
    Zeta {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TERMS)]
        terms: usize,
    },
    /// Everything above in one document.
    Report {
        file: PathBuf,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
        #[arg(long = "max", default_value_t = DEFAULT_K)]
        max: u64,
        #[arg(long, default_value_t = DEFAULT_TERMS)]
        terms: usize,
    },
}

fn run(cmd: Command) -> Result<String, CliError> {
    Ok(match cmd {
        Command::Classify { file } => report::classify_output(&report::analyze(&load(&file)?)?).to_json(),
        Command::Entropy { file } => report::entropy_output(&report::analyze(&load(&file)?)?).to_json(),
        Command::Nk { file, max } => {
            let k = check_k(max)?;
            report::nk_output(&report::analyze(&load(&file)?)?, k)?.to_json()
        }
        Command::Zeta { file, terms } => {
            let t = check_terms(terms)?;
            report::zeta_output(&report::analyze(&load(&file)?)?, t).to_json()
        }
        Command::Report { file, text, max, terms, .. } => {
            let (k, t) = (check_k(max)?, check_terms(terms)?);
            let a = report::analyze(&load(&file)?)?;
            if text {
                report::report_text(&a, k, t)?
            } else {
                report::report_output(&a, k, t)?.to_json()
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE as u8),
            };
        }
    };
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(torus_zeta_cli::EXIT_IO as u8);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("torus-zeta: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
