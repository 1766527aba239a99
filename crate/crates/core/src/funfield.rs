//! `F[t]` and `F(t)` with the valuation at infinity.
//!
//! `v(f) = deg(den) - deg(num)`, so `1/t` is a uniformizer and
//! `|f| = q^(-v(f))`. Absolute values never leave exact form: [`AbsExp`]
//! stores the exponent of `q`.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Rational64;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::{FElem, Gf};
use crate::poly::{Poly, PolyRing};
use crate::ring::{Domain, Field, Ring};

pub type PolyT = Poly<FElem>;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

/// `Zero`, or `q^exponent` for an exact rational exponent.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum AbsExp {
    Zero,
    Exp(Rational64),
}

impl AbsExp {
    pub fn from_int(e: i64) -> Self {
        AbsExp::Exp(Rational64::from_integer(e))
    }

    pub fn exponent(&self) -> Option<Rational64> {
        match self {
            AbsExp::Zero => None,
            AbsExp::Exp(r) => Some(*r),
        }
    }

    /// `|xy| = |x| |y|`.
    pub fn mul(&self, other: &AbsExp) -> AbsExp {
        match (self, other) {
            (AbsExp::Exp(a), AbsExp::Exp(b)) => AbsExp::Exp(a + b),
            _ => AbsExp::Zero,
        }
    }
}

impl PartialOrd for AbsExp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AbsExp {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (AbsExp::Zero, AbsExp::Zero) => Ordering::Equal,
            (AbsExp::Zero, _) => Ordering::Less,
            (_, AbsExp::Zero) => Ordering::Greater,
            (AbsExp::Exp(a), AbsExp::Exp(b)) => a.cmp(b),
        }
    }
}

impl Serialize for AbsExp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            AbsExp::Zero => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("zero", &true)?;
                m.end()
            }
            AbsExp::Exp(r) => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("num", r.numer())?;
                m.serialize_entry("den", r.denom())?;
                m.end()
            }
        }
    }
}

impl fmt::Display for AbsExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbsExp::Zero => write!(f, "0"),
            AbsExp::Exp(r) if r.is_integer() => write!(f, "q^{}", r.numer()),
            AbsExp::Exp(r) => write!(f, "q^({}/{})", r.numer(), r.denom()),
        }
    }
}

/// Rings whose elements have a valuation at infinity and a leading residue.
pub trait Valued: Ring {
    fn valuation(&self, a: &Self::Elem) -> Valuation;

    /// Residue of `a * t^v(a)` modulo the maximal ideal; `None` for zero.
    fn residue_unit(&self, a: &Self::Elem) -> Option<FElem>;

    /// Whether `a` lies in `F[t]`.
    fn is_integral(&self, a: &Self::Elem) -> bool;

    fn abs(&self, a: &Self::Elem) -> AbsExp {
        match self.valuation(a) {
            Valuation::Infinity => AbsExp::Zero,
            Valuation::Finite(v) => AbsExp::from_int(-v),
        }
    }
}

impl Valued for PolyRing<Gf> {
    fn valuation(&self, a: &PolyT) -> Valuation {
        match a.degree() {
            None => Valuation::Infinity,
            Some(d) => Valuation::Finite(-(d as i64)),
        }
    }

    fn residue_unit(&self, a: &PolyT) -> Option<FElem> {
        a.lc().copied()
    }

    fn is_integral(&self, _: &PolyT) -> bool {
        true
    }
}

/// An element of `F(t)` in lowest terms, denominator monic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: PolyT,
    den: PolyT,
}

impl RatFun {
    pub fn num(&self) -> &PolyT {
        &self.num
    }

    pub fn den(&self) -> &PolyT {
        &self.den
    }
}

#[derive(Clone, Debug)]
pub struct RatFunField {
    polys: PolyRing<Gf>,
}

impl RatFunField {
    pub fn new(field: Gf) -> Self {
        RatFunField {
            polys: PolyRing::new(field),
        }
    }

    pub fn polys(&self) -> &PolyRing<Gf> {
        &self.polys
    }

    pub fn field(&self) -> &Gf {
        self.polys.base()
    }

    pub fn t(&self) -> RatFun {
        self.from_poly(self.polys.x())
    }

    pub fn from_poly(&self, num: PolyT) -> RatFun {
        RatFun {
            num,
            den: self.polys.one(),
        }
    }

    /// `num / den` reduced to lowest terms with monic denominator.
    pub fn fraction(&self, num: &PolyT, den: &PolyT) -> Result<RatFun> {
        let r = &self.polys;
        let lc = *den.lc().ok_or(Error::DivisionByZero)?;
        if num.is_zero() {
            return Ok(self.zero());
        }
        let g = r.gcd(num, den)?;
        let num = r.div_exact(num, &g).expect("gcd divides numerator");
        let den = r.div_exact(den, &g).expect("gcd divides denominator");
        // g is monic, so den/g still has leading coefficient lc.
        let inv = r.base().inv(&lc).expect("nonzero leading coefficient");
        Ok(RatFun {
            num: r.scale(&num, &inv),
            den: r.scale(&den, &inv),
        })
    }

    /// `v(0) = Infinity`, otherwise `deg(den) - deg(num)`.
    pub fn valuation_of(&self, f: &RatFun) -> Valuation {
        self.valuation(f)
    }

    /// `lc(num) / lc(den)` for nonzero `f`.
    pub fn redunit(&self, f: &RatFun) -> Result<FElem> {
        self.residue_unit(f).ok_or(Error::ZeroInput("funfield"))
    }

    /// Resultant over `F(t)`: clears denominators to `F[t]` and runs the
    /// fraction-free subresultant sequence there.
    pub fn resultant(&self, f: &Poly<RatFun>, g: &Poly<RatFun>) -> Result<RatFun> {
        if f.is_zero() || g.is_zero() {
            return Err(Error::ZeroInput("polycore"));
        }
        let bivariate = PolyRing::new(self.polys.clone());
        let (fi, cf) = self.clear_denominators(f);
        let (gi, cg) = self.clear_denominators(g);
        let res = bivariate.subresultant(
            &bivariate.from_coeffs(fi),
            &bivariate.from_coeffs(gi),
        )?;
        let (df, dg) = ((f.len() - 1) as u64, (g.len() - 1) as u64);
        let scale = self
            .polys
            .mul(&self.polys.pow(&cf, dg), &self.polys.pow(&cg, df));
        self.fraction(&res, &scale)
    }

    /// `(coefficients * c, c)` with `c` the monic lcm of the denominators.
    pub fn clear_denominators(&self, f: &Poly<RatFun>) -> (Vec<PolyT>, PolyT) {
        let r = &self.polys;
        let lcm = f.coeffs().iter().fold(r.one(), |acc, c| {
            let g = r.gcd(&acc, &c.den).expect("denominators are nonzero");
            r.mul(&acc, &r.div_exact(&c.den, &g).unwrap())
        });
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| r.mul(&c.num, &r.div_exact(&lcm, &c.den).unwrap()))
            .collect();
        (coeffs, lcm)
    }
}

impl Ring for RatFunField {
    type Elem = RatFun;

    fn zero(&self) -> RatFun {
        RatFun {
            num: self.polys.zero(),
            den: self.polys.one(),
        }
    }

    fn one(&self) -> RatFun {
        self.from_poly(self.polys.one())
    }

    fn is_zero(&self, a: &RatFun) -> bool {
        a.num.is_zero()
    }

    fn add(&self, a: &RatFun, b: &RatFun) -> RatFun {
        let r = &self.polys;
        if r.is_one(&a.den) && r.is_one(&b.den) {
            return self.from_poly(r.add(&a.num, &b.num));
        }
        let num = r.add(&r.mul(&a.num, &b.den), &r.mul(&b.num, &a.den));
        self.fraction(&num, &r.mul(&a.den, &b.den)).unwrap()
    }

    fn neg(&self, a: &RatFun) -> RatFun {
        RatFun {
            num: self.polys.neg(&a.num),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &RatFun, b: &RatFun) -> RatFun {
        let r = &self.polys;
        if r.is_one(&a.den) && r.is_one(&b.den) {
            return self.from_poly(r.mul(&a.num, &b.num));
        }
        self.fraction(&r.mul(&a.num, &b.num), &r.mul(&a.den, &b.den))
            .unwrap()
    }

    fn from_int(&self, n: i64) -> RatFun {
        self.from_poly(self.polys.from_int(n))
    }

    fn characteristic(&self) -> u64 {
        self.polys.characteristic()
    }
}

impl Domain for RatFunField {
    fn div_exact(&self, a: &RatFun, b: &RatFun) -> Option<RatFun> {
        self.div(a, b)
    }
}

impl Field for RatFunField {
    fn inv(&self, a: &RatFun) -> Option<RatFun> {
        if a.num.is_zero() {
            return None;
        }
        self.fraction(&a.den, &a.num).ok()
    }
}

impl Valued for RatFunField {
    fn valuation(&self, f: &RatFun) -> Valuation {
        match f.num.degree() {
            None => Valuation::Infinity,
            Some(dn) => Valuation::Finite(f.den.degree().unwrap() as i64 - dn as i64),
        }
    }

    fn residue_unit(&self, f: &RatFun) -> Option<FElem> {
        let field = self.polys.base();
        let ln = f.num.lc()?;
        let ld = f.den.lc()?;
        field.div(ln, ld)
    }

    fn is_integral(&self, f: &RatFun) -> bool {
        self.polys.is_one(&f.den)
    }
}
