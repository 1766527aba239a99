//! Newton polygons with respect to the valuation at infinity.
//!
//! For `P = sum c_i X^i` the polygon is the lower convex hull of the points
//! `(i, v(c_i))`. A root attached to an edge of slope `s` has `v = -s`, so
//! `|root| = q^s`. Tests pin this convention through the mass balance
//! `sum slope * length = -v(c_0)`.

use num_rational::Rational64;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::funfield::{AbsExp, PolyT, Valuation, Valued};
use crate::gf::{FElem, Gf};
use crate::poly::{Poly, PolyRing};
use crate::ring::Ring;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Edge {
    pub slope: Rational64,
    pub length: u64,
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("slope_num", self.slope.numer())?;
        m.serialize_entry("slope_den", self.slope.denom())?;
        m.serialize_entry("length", &self.length)?;
        m.end()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NewtonPolygon {
    /// Slopes strictly increasing.
    pub edges: Vec<Edge>,
    /// Multiplicity of the root `0`, i.e. the index of the first nonzero
    /// coefficient.
    pub zero_roots: usize,
    /// Hull vertices `(i, v(c_i))`, left to right.
    pub vertices: Vec<(usize, i64)>,
}

impl NewtonPolygon {
    pub fn total_length(&self) -> u64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    /// `sum slope * length`; equals `-v(c_first)` for monic input.
    pub fn mass(&self) -> Rational64 {
        self.edges
            .iter()
            .map(|e| e.slope * Rational64::from_integer(e.length as i64))
            .sum()
    }

    /// The edge of slope zero, as `(start column, end column, height)`.
    pub fn flat_edge(&self) -> Option<(usize, usize, i64)> {
        self.vertices
            .windows(2)
            .find(|w| w[0].1 == w[1].1)
            .map(|w| (w[0].0, w[1].0, w[0].1))
    }
}

/// Lower convex hull of the valuation points of a monic polynomial.
pub fn polygon<R: Valued>(ring: &R, p: &Poly<R::Elem>) -> Result<NewtonPolygon> {
    let lc = p.lc().ok_or(Error::NonMonic)?;
    if !ring.is_one(lc) {
        return Err(Error::NonMonic);
    }
    let points: Vec<(usize, i64)> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| match ring.valuation(c) {
            Valuation::Finite(v) => Some((i, v)),
            Valuation::Infinity => None,
        })
        .collect();
    let zero_roots = points[0].0;
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // Drop b when it lies on or above the segment a -> pt.
            let cross = (b.0 as i128 - a.0 as i128) * (pt.1 as i128 - a.1 as i128)
                - (b.1 as i128 - a.1 as i128) * (pt.0 as i128 - a.0 as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let edges = hull
        .windows(2)
        .map(|w| {
            let len = (w[1].0 - w[0].0) as i64;
            Edge {
                slope: Rational64::new(w[1].1 - w[0].1, len),
                length: len as u64,
            }
        })
        .collect();
    Ok(NewtonPolygon {
        edges,
        zero_roots,
        vertices: hull,
    })
}

/// Absolute values of the roots with multiplicity, and the exponent `E` of
/// `prod max(1, |root|) = q^E`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct AbsSpectrum {
    pub entries: Vec<(AbsExp, u64)>,
    pub r_exponent: u64,
}

impl AbsSpectrum {
    pub fn unit_count(&self) -> u64 {
        self.entries
            .iter()
            .filter(|(a, _)| *a == AbsExp::from_int(0))
            .map(|(_, m)| m)
            .sum()
    }
}

pub fn abs_spectrum<R: Valued>(ring: &R, p: &Poly<R::Elem>) -> Result<AbsSpectrum> {
    let poly = polygon(ring, p)?;
    if poly.zero_roots > 0 {
        return Err(Error::ZeroRoot("newton"));
    }
    let mut rise = Rational64::from_integer(0);
    let entries = poly
        .edges
        .iter()
        .map(|e| {
            if e.slope > Rational64::from_integer(0) {
                rise += e.slope * Rational64::from_integer(e.length as i64);
            }
            (AbsExp::Exp(e.slope), e.length)
        })
        .collect();
    if !rise.is_integer() {
        return Err(Error::Invariant(format!("non-integral r-exponent {rise}")));
    }
    Ok(AbsSpectrum {
        entries,
        r_exponent: rise.to_integer() as u64,
    })
}

/// Residual polynomial of the slope-zero edge: its roots are the residues
/// of the unit roots of `p`, with multiplicity. Returns `1` when `p` has no
/// unit root.
pub fn unit_residual<R: Valued>(
    ring: &R,
    fq: &PolyRing<Gf>,
    p: &Poly<R::Elem>,
) -> Result<Poly<FElem>> {
    if p.coeffs().iter().any(|c| !ring.is_integral(c)) {
        return Err(Error::NonIntegral);
    }
    let poly = polygon(ring, p)?;
    let Some((start, end, height)) = poly.flat_edge() else {
        return Ok(fq.one());
    };
    let coeffs = (start..=end)
        .map(|i| {
            let c = &p.coeffs()[i];
            match ring.valuation(c) {
                Valuation::Finite(v) if v == height => ring.residue_unit(c).unwrap(),
                _ => fq.base().zero(),
            }
        })
        .collect();
    Ok(fq.from_coeffs(coeffs))
}

/// `unit_residual` for polynomials over `F[t]`.
pub fn unit_residual_integral(fq: &PolyRing<Gf>, p: &Poly<PolyT>) -> Result<Poly<FElem>> {
    unit_residual(fq, fq, p)
}
