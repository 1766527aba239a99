//! Entropy and periodic-point counts of `A` acting on `(F((1/t))/F[t])^d`.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::funfield::PolyT;
use crate::gf::Gf;
use crate::newton::abs_spectrum;
use crate::poly::PolyRing;
use crate::polymat::{bareiss_det, charpoly, det, identity, mat_mul, mat_sub, smith, MatT, Matrix};
use crate::ring::Ring;
use crate::spectral::SpectralData;

/// Largest exponent for which `q^e` is expanded into a decimal integer.
pub const RENDER_EXPONENT_CAP: u64 = 10_000;

/// Default enumeration cap for the brute-force fixed-point count.
pub const BRUTEFORCE_CAP: u64 = 1 << 20;

/// `h(A) = e * log q`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Entropy {
    pub e: u64,
    pub q: u64,
}

impl Entropy {
    pub fn nats(&self) -> f64 {
        self.e as f64 * (self.q as f64).ln()
    }
}

impl fmt::Display for Entropy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} log {} = {:.12}", self.e, self.q, self.nats())
    }
}

impl Serialize for Entropy {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("E", &self.e)?;
        m.serialize_entry("log_q", &format!("{:.12}", (self.q as f64).ln()))?;
        m.serialize_entry("h", &format!("{:.12}", self.nats()))?;
        m.end()
    }
}

/// A count that is either `0` or `q^e`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum NkValue {
    Zero,
    Exp(u64),
}

impl NkValue {
    pub fn exponent(&self) -> Option<u64> {
        match self {
            NkValue::Zero => None,
            NkValue::Exp(e) => Some(*e),
        }
    }

    /// `q^e` as an integer; `None` above [`RENDER_EXPONENT_CAP`].
    pub fn to_integer(&self, q: u64) -> Option<BigUint> {
        match self {
            NkValue::Zero => Some(BigUint::ZERO),
            NkValue::Exp(e) if *e <= RENDER_EXPONENT_CAP => Some(BigUint::from(q).pow(*e as u32)),
            NkValue::Exp(_) => None,
        }
    }
}

pub fn entropy(fq: &PolyRing<Gf>, a: &MatT) -> Result<Entropy> {
    if det(fq, a).is_zero() {
        return Err(Error::SingularMatrix);
    }
    let spectrum = abs_spectrum(fq, &charpoly(fq, a))?;
    Ok(Entropy {
        e: spectrum.r_exponent,
        q: fq.base().q(),
    })
}

fn value_of_det(d: &PolyT) -> NkValue {
    match d.degree() {
        None => NkValue::Zero,
        Some(e) => NkValue::Exp(e as u64),
    }
}

/// `|det(A^k - I)|`.
pub fn nk_direct(fq: &PolyRing<Gf>, a: &MatT, k: u64) -> NkValue {
    let b = crate::polymat::matpow_minus_identity(fq, a, k);
    value_of_det(&det(fq, &b))
}

/// `nk_direct` for `k = 1..=kmax`. Powers are formed sequentially and
/// determinants evaluated in parallel.
pub fn nk_direct_table(fq: &PolyRing<Gf>, a: &MatT, kmax: u64) -> Vec<NkValue> {
    let id = identity(fq, a.dim());
    let mut powers = Vec::with_capacity(kmax as usize);
    let mut cur = id.clone();
    for _ in 0..kmax {
        cur = mat_mul(fq, &cur, a);
        powers.push(mat_sub(fq, &cur, &id));
    }
    powers.par_iter().map(|b| value_of_det(&det(fq, b))).collect()
}

fn p_adic_part(p: u64, mut k: u64) -> u64 {
    let mut out = 1;
    while k.is_multiple_of(p) {
        k /= p;
        out *= p;
    }
    out
}

/// `N_k` from the spectral classification alone.
pub fn nk_spectral(sd: &SpectralData, k: u64) -> Result<NkValue> {
    if sd.rou_orders.keys().any(|m| k.is_multiple_of(*m)) {
        return Ok(NkValue::Zero);
    }
    let pk = p_adic_part(sd.field.p(), k) as i64;
    let wsum: i64 = sd.weights.iter().filter(|(&n, _)| k.is_multiple_of(n)).map(|(_, w)| w).sum();
    let exp = (k * sd.e_exponent) as i64 + pk * wsum;
    if exp < 0 {
        return Err(Error::Invariant(format!("negative exponent {exp} for N_{k}")));
    }
    Ok(NkValue::Exp(exp as u64))
}

/// `|det(B - I)|` through the Smith form of `B - I`.
pub fn fixed_points_smith(fq: &PolyRing<Gf>, b: &MatT) -> NkValue {
    let m = mat_sub(fq, b, &identity(fq, b.dim()));
    let sf = smith(fq, &m);
    if sf.rank() < b.dim() {
        return NkValue::Zero;
    }
    let e = sf.invariant_factors.iter().map(|f| f.len() as u64 - 1).sum();
    NkValue::Exp(e)
}

fn adjugate(fq: &PolyRing<Gf>, m: &MatT) -> MatT {
    let n = m.dim();
    let mut adj = Matrix::filled(n, fq.zero());
    if n == 1 {
        adj.set(0, 0, fq.one());
        return adj;
    }
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<Vec<PolyT>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m.get(r, c).clone()).collect())
                .collect();
            let minor = bareiss_det(fq, &Matrix::from_rows(rows).unwrap());
            adj.set(i, j, if (i + j) % 2 == 0 { minor } else { fq.neg(&minor) });
        }
    }
    adj
}

/// Count fixed points of `B` on `(F((1/t))/F[t])^d` by enumerating
/// `z` in `F[t]^d` and collecting the classes of `(B - I)^{-1} z` modulo
/// `F[t]^d`. Representatives of degree below `deg det(B - I)` suffice;
/// the count is recomputed one degree higher to confirm it is stable.
pub fn fixed_points_bruteforce(fq: &PolyRing<Gf>, b: &MatT, cap: u64) -> Result<u64> {
    let d = b.dim();
    let m = mat_sub(fq, b, &identity(fq, d));
    let dm = det(fq, &m);
    let Some(deg) = dm.degree() else {
        return Err(Error::Singular);
    };
    let bound = deg.max(1);
    let q = fq.base().q();
    let needed = (d * (bound + 1)) as u32;
    match q.checked_pow(needed) {
        Some(n) if n <= cap => {}
        _ => {
            return Err(Error::CapExceeded {
                needed: format!("{q}^{needed}"),
                cap,
            })
        }
    }
    let adj = adjugate(fq, &m);
    let count = |dd: usize| -> Result<u64> {
        let total = q.pow((d * dd) as u32);
        let mut seen: HashSet<Vec<PolyT>> = HashSet::new();
        for idx in 0..total {
            let mut rest = idx;
            let z: Vec<PolyT> = (0..d)
                .map(|_| {
                    let coeffs = (0..dd)
                        .map(|_| {
                            let c = fq.base().from_u64(rest % q);
                            rest /= q;
                            c
                        })
                        .collect();
                    fq.from_coeffs(coeffs)
                })
                .collect();
            let class = (0..d)
                .map(|i| {
                    let num = (0..d).fold(fq.zero(), |acc, j| fq.add(&acc, &fq.mul(adj.get(i, j), &z[j])));
                    fq.rem(&num, &dm)
                })
                .collect::<Result<Vec<_>>>()?;
            seen.insert(class);
        }
        Ok(seen.len() as u64)
    };
    let n = count(bound)?;
    let again = count(bound + 1)?;
    if n != again {
        return Err(Error::Invariant(format!("brute-force count grew from {n} to {again}")));
    }
    Ok(n)
}
