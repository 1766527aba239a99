//! The Artin–Mazur zeta function `exp(sum_k N_k z^k / k)`: algebraic versus
//! transcendental classification, the closed product form, and exact power
//! series truncations.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::dynamics::NkValue;
use crate::error::{Error, Result};
use crate::spectral::SpectralData;

/// Largest root-of-unity count for which subsets are enumerated.
pub const MAX_ROOTS_OF_UNITY: usize = 16;

/// `prod_L (1 - (q^e z)^L)^{gamma_L}`, keyed by `L`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZetaClosedForm {
    pub q: u64,
    pub e_exponent: u64,
    pub factors: BTreeMap<u64, Rational64>,
}

struct RatJson<'a>(&'a Rational64);

impl Serialize for RatJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("num", self.0.numer())?;
        m.serialize_entry("den", self.0.denom())?;
        m.end()
    }
}

impl Serialize for ZetaClosedForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let factors: BTreeMap<u64, RatJson> =
            self.factors.iter().map(|(&l, g)| (l, RatJson(g))).collect();
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("E", &self.e_exponent)?;
        m.serialize_entry("factors", &factors)?;
        m.serialize_entry("display", &self.display())?;
        m.end()
    }
}

impl ZetaClosedForm {
    fn factor_text(&self, l: u64, gamma: Rational64) -> String {
        let r = BigUint::from(self.q).pow(self.e_exponent as u32);
        let base = if r.is_one() { "z".to_string() } else { format!("{r}z") };
        let mut s = match (l, r.is_one()) {
            (1, _) => format!("(1-{base})"),
            (_, true) => format!("(1-z^{l})"),
            (_, false) => format!("(1-({base})^{l})"),
        };
        let g = gamma.abs();
        if g.is_integer() {
            if *g.numer() != 1 {
                let _ = write!(s, "^{}", g.numer());
            }
        } else {
            let _ = write!(s, "^{{{}/{}}}", g.numer(), g.denom());
        }
        s
    }

    /// Human-readable product, positive exponents over negative ones.
    pub fn display(&self) -> String {
        let num: Vec<String> = self
            .factors
            .iter()
            .filter(|(_, g)| **g > Rational64::zero())
            .map(|(&l, &g)| self.factor_text(l, g))
            .collect();
        let den: Vec<String> = self
            .factors
            .iter()
            .filter(|(_, g)| **g < Rational64::zero())
            .map(|(&l, &g)| self.factor_text(l, g))
            .collect();
        let top = if num.is_empty() { "1".to_string() } else { num.concat() };
        match den.len() {
            0 => top,
            1 if den[0].ends_with(')') => format!("{top}/{}", den[0]),
            _ => format!("{top}/({})", den.concat()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Certificate {
    /// A unit residue order divisible by no root-of-unity order.
    pub n: u64,
    /// Every root-of-unity order, with multiplicity.
    pub m_orders: Vec<u64>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "tag")]
pub enum ZetaResult {
    Algebraic {
        closed_form: ZetaClosedForm,
        radius_exponent: i64,
    },
    Transcendental {
        certificate: Certificate,
        radius_exponent: i64,
    },
}

impl ZetaResult {
    pub fn is_algebraic(&self) -> bool {
        matches!(self, ZetaResult::Algebraic { .. })
    }

    pub fn radius_exponent(&self) -> i64 {
        match self {
            ZetaResult::Algebraic { radius_exponent, .. }
            | ZetaResult::Transcendental { radius_exponent, .. } => *radius_exponent,
        }
    }
}

/// The least unit order that no root-of-unity order divides, if any.
fn obstruction(sd: &SpectralData) -> Option<u64> {
    sd.unit_orders
        .keys()
        .copied()
        .find(|n| !sd.rou_orders.keys().any(|m| n % m == 0))
}

pub fn classify(sd: &SpectralData) -> Result<ZetaResult> {
    let radius_exponent = -(sd.e_exponent as i64);
    Ok(match obstruction(sd) {
        None => ZetaResult::Algebraic {
            closed_form: closed_form(sd)?,
            radius_exponent,
        },
        Some(n) => ZetaResult::Transcendental {
            certificate: Certificate {
                n,
                m_orders: sd.rou_list(),
            },
            radius_exponent,
        },
    })
}

pub fn closed_form(sd: &SpectralData) -> Result<ZetaClosedForm> {
    if obstruction(sd).is_some() {
        return Err(Error::NotAlgebraic);
    }
    let orders = sd.rou_list();
    if orders.len() > MAX_ROOTS_OF_UNITY {
        return Err(Error::TooManyRootsOfUnity(orders.len()));
    }
    let mut factors = BTreeMap::from([(1u64, Rational64::from_integer(-1))]);
    for mask in 1u32..(1 << orders.len()) {
        let picked = orders.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1);
        let l = picked.clone().fold(1u64, |acc, (_, &m)| acc.lcm(&m));
        let sign = if mask.count_ones() % 2 == 1 { 1 } else { -1 };
        *factors.entry(l).or_insert_with(Rational64::zero) += Rational64::new(sign, l as i64);
    }
    factors.retain(|_, g| !g.is_zero());
    Ok(ZetaClosedForm {
        q: sd.field.q(),
        e_exponent: sd.e_exponent,
        factors,
    })
}

/// Coefficients `c_0..=c_T` of a power series.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesTrunc {
    pub coeffs: Vec<BigRational>,
}

impl SeriesTrunc {
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Coefficients as `"a"` or `"a/b"` strings.
    pub fn rendered(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

fn nk_integer(v: &NkValue, q: u64) -> BigInt {
    match v {
        NkValue::Zero => BigInt::zero(),
        NkValue::Exp(e) => BigInt::from(q).pow(*e as u32),
    }
}

/// `exp(sum N_k z^k / k)` to order `t`, from `nks[k - 1] = N_k`.
pub fn series_from_nk(nks: &[NkValue], q: u64, t: usize) -> SeriesTrunc {
    assert!(nks.len() >= t, "need N_1..N_{t}");
    let n: Vec<BigInt> = nks[..t].iter().map(|v| nk_integer(v, q)).collect();
    let mut c = vec![BigRational::one()];
    for m in 1..=t {
        let mut acc = BigRational::zero();
        for j in 1..=m {
            acc += &c[m - j] * &n[j - 1];
        }
        c.push(acc / BigInt::from(m));
    }
    SeriesTrunc { coeffs: c }
}

fn mul_trunc(a: &[BigRational], b: &[BigRational], t: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); t + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(t + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Expand the closed form by the generalized binomial theorem.
pub fn series_from_closed_form(cf: &ZetaClosedForm, t: usize) -> SeriesTrunc {
    let mut acc = vec![BigRational::zero(); t + 1];
    acc[0] = BigRational::one();
    let r = BigInt::from(cf.q).pow(cf.e_exponent as u32);
    for (&l, gamma) in &cf.factors {
        let g = BigRational::new(BigInt::from(*gamma.numer()), BigInt::from(*gamma.denom()));
        let rl = r.pow(l as u32);
        let mut f = vec![BigRational::zero(); t + 1];
        // binom(g, j) (-r^l)^j, built incrementally.
        let mut term = BigRational::one();
        let mut j = 0usize;
        while j * (l as usize) <= t {
            f[j * l as usize] = term.clone();
            let jj = BigInt::from(j as u64);
            term = term * (&g - BigRational::from_integer(jj.clone())) / BigRational::from_integer(jj + 1)
                * BigRational::from_integer(-rl.clone());
            j += 1;
        }
        acc = mul_trunc(&acc, &f, t);
    }
    SeriesTrunc { coeffs: acc }
}

/// Recover `N_1..N_T` from `c_0..c_T` by inverting the exponential
/// recurrence.
pub fn nk_from_series(s: &SeriesTrunc) -> Vec<BigRational> {
    let c = &s.coeffs;
    let mut n: Vec<BigRational> = Vec::with_capacity(c.len().saturating_sub(1));
    for k in 1..c.len() {
        let mut v = &c[k] * BigInt::from(k as u64);
        for j in 1..k {
            v -= &n[j - 1] * &c[k - j];
        }
        n.push(v);
    }
    n
}
