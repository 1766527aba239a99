//! Problem files: a matrix over `GF(p^e)[t]` in JSON.
//!
//! ```json
//! {"p": 7, "e": 1, "d": 2, "matrix": [[[6], [0]], [[0], [2]]]}
//! ```
//!
//! Entries are coefficient lists in `t`, lowest degree first. Over a prime
//! field a coefficient is an integer and an entry may be a bare integer;
//! over `GF(p^e)` each coefficient is a list of `e` integers in the power
//! basis of `modulus`. Residues are reduced mod `p` on input.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use torus_zeta::funfield::PolyT;
use torus_zeta::gf::{make_field, Gf};
use torus_zeta::polymat::{det, MatT, Matrix};
use torus_zeta::PolyRing;

use crate::CliError;

pub const MAX_DIM: usize = 8;
pub const MAX_ENTRY_DEGREE: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub p: u64,
    pub e: u32,
    /// Always resolved; the default modulus is filled in when absent.
    pub modulus: Vec<u64>,
    pub d: usize,
    /// `matrix[i][j][k]` is the coordinate vector of the `t^k` coefficient
    /// of entry `(i, j)`, with trailing zero coefficients trimmed.
    pub matrix: Vec<Vec<Vec<Vec<u64>>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    p: u64,
    e: u32,
    #[serde(default)]
    modulus: Option<Vec<i64>>,
    d: usize,
    matrix: Vec<Vec<Value>>,
}

#[derive(Serialize)]
struct RenderSpec<'a> {
    p: u64,
    e: u32,
    modulus: &'a [u64],
    d: usize,
    matrix: Vec<Vec<Vec<Value>>>,
}

fn malformed(msg: impl Into<String>) -> CliError {
    CliError::Malformed(msg.into())
}

fn residue(v: &Value, p: u64, at: &str) -> Result<u64, CliError> {
    let n = v
        .as_i64()
        .ok_or_else(|| malformed(format!("{at}: expected an integer, found {v}")))?;
    Ok(n.rem_euclid(p as i64) as u64)
}

fn coefficient(v: &Value, p: u64, e: u32, at: &str) -> Result<Vec<u64>, CliError> {
    match v {
        Value::Array(coords) => {
            if coords.len() != e as usize {
                return Err(malformed(format!("{at}: expected {e} coordinates, found {}", coords.len())));
            }
            coords.iter().map(|c| residue(c, p, at)).collect()
        }
        Value::Number(_) if e == 1 => Ok(vec![residue(v, p, at)?]),
        _ => Err(malformed(format!("{at}: expected a list of {e} integers"))),
    }
}

fn entry(v: &Value, p: u64, e: u32, at: &str) -> Result<Vec<Vec<u64>>, CliError> {
    let mut coeffs = match v {
        Value::Array(cs) => cs
            .iter()
            .enumerate()
            .map(|(k, c)| coefficient(c, p, e, &format!("{at}[{k}]")))
            .collect::<Result<Vec<_>, _>>()?,
        Value::Number(_) if e == 1 => vec![vec![residue(v, p, at)?]],
        _ => return Err(malformed(format!("{at}: expected a coefficient list"))),
    };
    while coeffs.last().is_some_and(|c| c.iter().all(|&x| x == 0)) {
        coeffs.pop();
    }
    if coeffs.len() > MAX_ENTRY_DEGREE + 1 {
        return Err(CliError::Cap(format!(
            "{at}: degree {} exceeds {MAX_ENTRY_DEGREE}",
            coeffs.len() - 1
        )));
    }
    Ok(coeffs)
}

impl ProblemSpec {
    /// Parse and validate without checking the determinant.
    pub fn parse_unchecked(bytes: &[u8]) -> Result<ProblemSpec, CliError> {
        let raw: RawSpec = serde_json::from_slice(bytes).map_err(|e| malformed(e.to_string()))?;
        let RawSpec { p, e, modulus, d, matrix } = raw;
        if e == 0 {
            return Err(malformed("e must be at least 1"));
        }
        if d == 0 {
            return Err(malformed("d must be at least 1"));
        }
        if d > MAX_DIM {
            return Err(CliError::Cap(format!("dimension {d} exceeds {MAX_DIM}")));
        }
        let modulus = modulus.map(|m| m.iter().map(|&c| c.rem_euclid(p.max(1) as i64) as u64).collect::<Vec<_>>());
        let field = make_field(p, e, modulus.as_deref())?;
        if matrix.len() != d || matrix.iter().any(|r| r.len() != d) {
            return Err(malformed(format!("matrix must be {d} x {d}")));
        }
        let matrix = matrix
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, v)| entry(v, p, e, &format!("matrix[{i}][{j}]")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ProblemSpec {
            p,
            e,
            modulus: field.modulus().to_vec(),
            d,
            matrix,
        })
    }

    /// Parse, validate, and reject singular matrices.
    pub fn parse(bytes: &[u8]) -> Result<ProblemSpec, CliError> {
        let spec = Self::parse_unchecked(bytes)?;
        let (ring, m) = spec.build()?;
        if det(&ring, &m).is_zero() {
            return Err(CliError::Core(torus_zeta::Error::SingularMatrix));
        }
        Ok(spec)
    }

    pub fn field(&self) -> Result<Gf, CliError> {
        Ok(make_field(self.p, self.e, Some(&self.modulus))?)
    }

    pub fn build(&self) -> Result<(PolyRing<Gf>, MatT), CliError> {
        let field = self.field()?;
        let ring = PolyRing::new(field.clone());
        let rows = self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|coeffs| -> PolyT {
                        ring.from_coeffs(coeffs.iter().map(|c| field.from_coords(c)).collect())
                    })
                    .collect()
            })
            .collect();
        let m = Matrix::from_rows(rows).ok_or_else(|| malformed("matrix is not square"))?;
        Ok((ring, m))
    }

    /// Canonical JSON value: modulus explicit, every entry a list, every
    /// coefficient an integer (`e = 1`) or an `e`-list.
    pub fn to_value(&self) -> Value {
        let coeff = |c: &Vec<u64>| -> Value {
            if self.e == 1 {
                Value::from(c[0])
            } else {
                Value::from(c.clone())
            }
        };
        let matrix = self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cs| {
                        if cs.is_empty() {
                            vec![coeff(&vec![0; self.e as usize])]
                        } else {
                            cs.iter().map(coeff).collect()
                        }
                    })
                    .collect()
            })
            .collect();
        serde_json::to_value(RenderSpec {
            p: self.p,
            e: self.e,
            modulus: &self.modulus,
            d: self.d,
            matrix,
        })
        .expect("problem serializes")
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("problem serializes")
    }

    /// Problem description for a matrix already in memory.
    pub fn from_matrix(ring: &PolyRing<Gf>, m: &MatT) -> ProblemSpec {
        let field = ring.base();
        let matrix = m
            .rows()
            .map(|row| {
                row.iter()
                    .map(|c| c.coeffs().iter().map(|&x| field.coords(x)).collect())
                    .collect()
            })
            .collect();
        ProblemSpec {
            p: field.p(),
            e: field.e(),
            modulus: field.modulus().to_vec(),
            d: m.dim(),
            matrix,
        }
    }
}
