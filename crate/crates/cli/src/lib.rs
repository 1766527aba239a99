//! Library side of the `torus-zeta` command: problem parsing, analyses and
//! report rendering. `main.rs` only maps arguments and exit codes.

pub mod problem;
pub mod report;

use std::path::Path;

use thiserror::Error;

pub use problem::ProblemSpec;

/// Largest `--max` accepted by `nk`.
pub const MAX_K: u64 = 200;
/// Largest `--terms` accepted by `zeta`.
pub const MAX_TERMS: usize = 500;

pub const EXIT_MALFORMED: i32 = 1;
pub const EXIT_SINGULAR: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;
pub const EXIT_FIELD: i32 = 5;
pub const EXIT_IO: i32 = 6;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("limit exceeded: {0}")]
    Cap(String),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error(transparent)]
    Core(#[from] torus_zeta::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use torus_zeta::Error as E;
        match self {
            CliError::Malformed(_) => EXIT_MALFORMED,
            CliError::Cap(_) => EXIT_CAP,
            CliError::Io { .. } => EXIT_IO,
            CliError::Core(e) => match e {
                E::SingularMatrix | E::Singular => EXIT_SINGULAR,
                E::NotPrime(_) | E::ReducibleModulus(_) | E::DegreeMismatch { .. } => EXIT_FIELD,
                e if e.is_cap() => EXIT_CAP,
                _ => EXIT_INTERNAL,
            },
        }
    }
}

/// Exit code table shown by `--help`.
pub const EXIT_CODES_HELP: &str = "\
Exit codes:
   0  success
   1  malformed input (bad JSON, wrong shape, wrong coordinate count)
   2  singular matrix (det A = 0)
   3  limit exceeded (d > 8, entry degree > 32, --max > 200, --terms > 500)
   4  internal invariant violation
   5  invalid field (p not prime, modulus reducible or of wrong degree)
   6  input file unreadable
  64  usage error";

pub fn load(path: &Path) -> Result<ProblemSpec, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    ProblemSpec::parse(&bytes)
}

pub fn check_k(k: u64) -> Result<u64, CliError> {
    if k == 0 {
        return Err(CliError::Malformed("--max must be at least 1".into()));
    }
    if k > MAX_K {
        return Err(CliError::Cap(format!("--max {k} exceeds {MAX_K}")));
    }
    Ok(k)
}

pub fn check_terms(t: usize) -> Result<usize, CliError> {
    if t > MAX_TERMS {
        return Err(CliError::Cap(format!("--terms {t} exceeds {MAX_TERMS}")));
    }
    Ok(t)
}
