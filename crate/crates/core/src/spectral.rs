//! Unit eigenvalues of a matrix over `F[t]`: the root-of-unity part, residue
//! orders, and grouped weights of the principal-unit parts.
//!
//! Write the characteristic polynomial as `P = sum_k t^k P_k(X)` with
//! `P_k` in `F[X]`. An element of the algebraic closure of `F` is a root of
//! `P` exactly when it is a common root of every `P_k`, so the root-of-unity
//! factor of `P` is the content `gcd_k P_k`, multiplicities included.
//!
//! The same expansion gives `deg_t P(z) = max { k : P_k(z) != 0 }` for `z`
//! algebraic over `F`, which turns `deg_t Res(P, X^n - 1)` into a sum over
//! gcd degrees with `X^n - 1` and avoids forming the resultant.

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::funfield::PolyT;
use crate::gf::{order_of_root, FElem, Gf};
use crate::newton::{abs_spectrum, unit_residual_integral};
use crate::poly::factor::factor;
use crate::poly::{Poly, PolyRing};
use crate::polymat::{charpoly, MatT};
use crate::ring::{Domain, Ring};

/// Polynomials in `X` over `F[t]`.
pub type PolyTX = Poly<PolyT>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralData {
    pub field: Gf,
    /// `r(A) = q^e_exponent`.
    pub e_exponent: u64,
    /// Residue order of each root-of-unity eigenvalue, with multiplicity.
    pub rou_orders: BTreeMap<u64, u64>,
    /// Residue order of each unit eigenvalue that is not a root of unity.
    pub unit_orders: BTreeMap<u64, u64>,
    /// `n -> w_n`: the product of `|principal unit part|` over the unit
    /// eigenvalues of residue order `n` is `q^w_n`.
    pub weights: BTreeMap<u64, i64>,
    pub g: Poly<FElem>,
    pub pprime: PolyTX,
}

impl SpectralData {
    /// Number of root-of-unity eigenvalues.
    pub fn m_count(&self) -> u64 {
        self.rou_orders.values().sum()
    }

    /// Number of unit eigenvalues that are not roots of unity.
    pub fn n_count(&self) -> u64 {
        self.unit_orders.values().sum()
    }

    /// Root-of-unity orders expanded with multiplicity, ascending.
    pub fn rou_list(&self) -> Vec<u64> {
        self.rou_orders
            .iter()
            .flat_map(|(&m, &mult)| std::iter::repeat_n(m, mult as usize))
            .collect()
    }
}

fn coords_of(field: &Gf, p: &Poly<FElem>) -> Vec<Vec<u64>> {
    p.coeffs().iter().map(|&c| field.coords(c)).collect()
}

impl Serialize for SpectralData {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(6))?;
        m.serialize_entry("E", &self.e_exponent)?;
        m.serialize_entry("rou_orders", &self.rou_orders)?;
        m.serialize_entry("unit_orders", &self.unit_orders)?;
        m.serialize_entry("weights", &self.weights)?;
        m.serialize_entry("G", &coords_of(&self.field, &self.g))?;
        let pp: Vec<Vec<Vec<u64>>> = self
            .pprime
            .coeffs()
            .iter()
            .map(|c| coords_of(&self.field, c))
            .collect();
        m.serialize_entry("Pprime", &pp)?;
        m.end()
    }
}

/// The `t^k` slices `P_k(X)`, for `k = 0..=max t-degree`.
fn t_slices(fq: &PolyRing<Gf>, p: &PolyTX) -> Vec<Poly<FElem>> {
    let top = p.coeffs().iter().map(|c| c.len()).max().unwrap_or(0);
    (0..top)
        .map(|k| {
            fq.from_coeffs(
                p.coeffs()
                    .iter()
                    .map(|c| c.coeff(k).copied().unwrap_or_else(|| fq.base().zero()))
                    .collect(),
            )
        })
        .collect()
}

/// Split a monic `P` with `P(0) != 0` as `G * Pprime`, where `G` in `F[X]`
/// carries the roots of unity and `Pprime` has none.
pub fn rou_split(fq: &PolyRing<Gf>, p: &PolyTX) -> Result<(Poly<FElem>, PolyTX)> {
    let ftx = PolyRing::new(fq.clone());
    if !ftx.is_monic(p) {
        return Err(Error::NonMonic);
    }
    if p.coeffs()[0].is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let mut g = fq.zero();
    for slice in t_slices(fq, p) {
        if !slice.is_zero() {
            g = if g.is_zero() { fq.monic(&slice)? } else { fq.gcd(&g, &slice)? };
        }
    }
    let lifted = ftx.from_coeffs(g.coeffs().iter().map(|&c| fq.constant(c)).collect());
    let pprime = ftx
        .div_exact(p, &lifted)
        .ok_or_else(|| Error::Invariant("content does not divide".into()))?;
    Ok((g, pprime))
}

/// Multiset of residue orders of the roots of `poly` in `F[X]`.
fn order_multiset(fq: &PolyRing<Gf>, poly: &Poly<FElem>) -> Result<BTreeMap<u64, u64>> {
    let mut out = BTreeMap::new();
    if poly.len() <= 1 {
        return Ok(out);
    }
    if fq.base().is_zero(&poly.coeffs()[0]) {
        return Err(Error::ZeroRoot("spectral"));
    }
    let p = fq.base().p();
    for (g, mult) in factor(fq, poly)? {
        let order = order_of_root(fq, &g)?;
        if order % p == 0 {
            return Err(Error::Invariant(format!("order {order} divisible by p")));
        }
        let q = fq.base().q();
        let group = q.pow(g.degree().unwrap() as u32) - 1;
        if !group.is_multiple_of(order) {
            return Err(Error::Invariant(format!("order {order} does not divide {group}")));
        }
        *out.entry(order).or_insert(0) += (g.len() as u64 - 1) * mult as u64;
    }
    Ok(out)
}

pub fn rou_orders(fq: &PolyRing<Gf>, g: &Poly<FElem>) -> Result<BTreeMap<u64, u64>> {
    order_multiset(fq, g)
}

pub fn unit_orders(fq: &PolyRing<Gf>, pprime: &PolyTX) -> Result<BTreeMap<u64, u64>> {
    let residual = unit_residual_integral(fq, pprime)?;
    order_multiset(fq, &residual)
}

/// `deg_t Res(P, X^n - 1)` for monic `P` without roots of unity.
pub fn res_degree(fq: &PolyRing<Gf>, p: &PolyTX, n: u64) -> Result<u64> {
    let slices = t_slices(fq, p);
    let d = slices.len() - 1;
    // prof[k + 1] = #{z : z^n = 1 and P_j(z) = 0 for all j > k}.
    let mut prof = vec![0u64; d + 2];
    prof[d + 1] = n;
    let mut h: Option<Poly<FElem>> = None;
    for k in (0..=d).rev() {
        let slice = &slices[k];
        h = match h {
            _ if slice.is_zero() => h,
            None => {
                let m = fq.monic(slice)?;
                if m.len() < 2 {
                    Some(fq.one())
                } else {
                    let xn = fq.modpow_u64(&fq.x(), n, &m)?;
                    Some(fq.gcd(&m, &fq.sub(&xn, &fq.one()))?)
                }
            }
            Some(cur) if cur.len() <= 1 => Some(cur),
            Some(cur) => Some(fq.gcd(&cur, slice)?),
        };
        prof[k] = h.as_ref().map_or(n, |g| g.len() as u64 - 1);
    }
    if prof[0] != 0 {
        return Err(Error::Invariant(format!("common root of unity of order dividing {n}")));
    }
    Ok((0..=d).map(|k| k as u64 * (prof[k + 1] - prof[k])).sum())
}

/// Invert `W(n) = sum_{n' | n} w_{n'}` over the given order set.
pub fn invert_weights(big_w: &BTreeMap<u64, i64>) -> Result<BTreeMap<u64, i64>> {
    let mut w: BTreeMap<u64, i64> = BTreeMap::new();
    for (&n, &wn) in big_w {
        let below: i64 = w.iter().filter(|(&d, _)| n % d == 0).map(|(_, v)| v).sum();
        let val = wn - below;
        if val >= 0 {
            return Err(Error::NonNegativeWeight { order: n, weight: val });
        }
        w.insert(n, val);
    }
    Ok(w)
}

pub fn weights(
    fq: &PolyRing<Gf>,
    pprime: &PolyTX,
    e_exponent: u64,
    orders: &BTreeMap<u64, u64>,
) -> Result<BTreeMap<u64, i64>> {
    let mut big_w = BTreeMap::new();
    for &n in orders.keys() {
        let deg = res_degree(fq, pprime, n)?;
        big_w.insert(n, deg as i64 - (n * e_exponent) as i64);
    }
    invert_weights(&big_w)
}

pub fn spectral_data(fq: &PolyRing<Gf>, a: &MatT) -> Result<SpectralData> {
    let p = charpoly(fq, a);
    if p.coeffs()[0].is_zero() {
        return Err(Error::SingularMatrix);
    }
    let spectrum = abs_spectrum(fq, &p)?;
    let (g, pprime) = rou_split(fq, &p)?;
    let rou = rou_orders(fq, &g)?;
    let unit = unit_orders(fq, &pprime)?;
    let w = weights(fq, &pprime, spectrum.r_exponent, &unit)?;
    let data = SpectralData {
        field: fq.base().clone(),
        e_exponent: spectrum.r_exponent,
        rou_orders: rou,
        unit_orders: unit,
        weights: w,
        g,
        pprime,
    };
    if data.m_count() + data.n_count() != spectrum.unit_count() {
        return Err(Error::Invariant(format!(
            "{} + {} unit eigenvalues, polygon has {}",
            data.m_count(),
            data.n_count(),
            spectrum.unit_count()
        )));
    }
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funfield::RatFunField;
    use crate::gf::make_field;
    use crate::polymat::Matrix;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn fq(p: u64, e: u32) -> PolyRing<Gf> {
        PolyRing::new(make_field(p, e, None).unwrap())
    }

    fn px(fq: &PolyRing<Gf>, coeffs: &[&[i64]]) -> PolyTX {
        PolyRing::new(fq.clone()).from_coeffs(coeffs.iter().map(|c| fq.from_ints(c)).collect())
    }

    fn companion(fq: &PolyRing<Gf>, p: &PolyTX) -> MatT {
        let d = p.len() - 1;
        let mut m = Matrix::filled(d, fq.zero());
        for i in 1..d {
            m.set(i, i - 1, fq.one());
        }
        for i in 0..d {
            m.set(i, d - 1, fq.neg(&p.coeffs()[i]));
        }
        m
    }

    /// Root-of-unity factor by iterated gcd with `X^(q^j) - X` over
    /// `F(t)[X]` for `j = 1..=deg P`. Only viable for tiny inputs: the
    /// `t`-degrees of `X^(q^j) mod P` grow like `q^j`.
    fn rou_split_frobenius(fq: &PolyRing<Gf>, p: &PolyTX) -> Poly<FElem> {
        let ftx = PolyRing::new(fq.clone());
        let k = RatFunField::new(fq.base().clone());
        let kx = PolyRing::new(k.clone());
        let lift = |f: &PolyTX| ftx.map(&kx, f, |c| k.from_poly(c.clone()));
        let d = p.len() as u32 - 1;
        let mut rem = p.clone();
        let mut g = fq.one();
        for j in 1..=d {
            let exp = BigUint::from(fq.base().q()).pow(j);
            while rem.len() >= 2 {
                let frob = ftx.modpow(&ftx.x(), &exp, &rem).unwrap();
                let diff = ftx.sub(&frob, &ftx.x());
                let h = if diff.is_zero() {
                    kx.monic(&lift(&rem)).unwrap()
                } else {
                    kx.gcd(&lift(&rem), &lift(&diff)).unwrap()
                };
                if h.len() == 1 {
                    break;
                }
                let hf = fq.from_coeffs(
                    h.coeffs()
                        .iter()
                        .map(|c| {
                            assert!(c.den().len() == 1 && c.num().len() <= 1, "gcd left F[X]");
                            c.num().coeff(0).copied().unwrap_or_else(|| fq.base().zero())
                        })
                        .collect(),
                );
                g = fq.mul(&g, &hf);
                let lifted = ftx.from_coeffs(hf.coeffs().iter().map(|&c| fq.constant(c)).collect());
                rem = ftx.div_exact(&rem, &lifted).unwrap();
            }
        }
        g
    }

    #[test]
    fn split_examples() {
        let f7 = fq(7, 1);
        let p = px(&f7, &[&[5], &[6], &[1]]);
        let (g, pp) = rou_split(&f7, &p).unwrap();
        assert_eq!(g, f7.from_ints(&[5, 6, 1]));
        assert_eq!(pp, px(&f7, &[&[1]]));

        let f2 = fq(2, 1);
        let cubic = px(&f2, &[&[0, 1], &[0, 0, 1], &[0, 0, 1], &[1]]);
        let (g, pp) = rou_split(&f2, &cubic).unwrap();
        assert_eq!(g, f2.one());
        assert_eq!(pp, cubic);

        let f5 = fq(5, 1);
        // (X - 1)(X - t) = X^2 - (t + 1) X + t
        let p = px(&f5, &[&[0, 1], &[-1, -1], &[1]]);
        let (g, pp) = rou_split(&f5, &p).unwrap();
        assert_eq!(g, f5.from_ints(&[-1, 1]));
        assert_eq!(pp, px(&f5, &[&[0, -1], &[1]]));

        assert_eq!(rou_split(&f5, &px(&f5, &[&[], &[1]])), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn split_keeps_multiplicity() {
        let f3 = fq(3, 1);
        let ftx = PolyRing::new(f3.clone());
        // (X + 1)^2 (X^2 + t X + 1) has the double root -1 only.
        let sq = px(&f3, &[&[1], &[2], &[1]]);
        let rest = px(&f3, &[&[1], &[0, 1], &[1]]);
        let p = ftx.mul(&sq, &rest);
        let (g, pp) = rou_split(&f3, &p).unwrap();
        assert_eq!(g, f3.from_ints(&[1, 2, 1]));
        assert_eq!(pp, rest);
        assert_eq!(rou_split_frobenius(&f3, &p), g);
    }

    #[test]
    fn order_examples() {
        let f7 = fq(7, 1);
        let rou = rou_orders(&f7, &f7.from_ints(&[5, 6, 1])).unwrap();
        assert_eq!(rou, BTreeMap::from([(2, 1), (3, 1)]));
        assert_eq!(rou_orders(&f7, &f7.from_ints(&[-1, 1])).unwrap(), BTreeMap::from([(1, 1)]));
        let f2 = fq(2, 1);
        assert_eq!(rou_orders(&f2, &f2.from_ints(&[1, 1, 1])).unwrap(), BTreeMap::from([(3, 2)]));

        let cubic = px(&f2, &[&[0, 1], &[0, 0, 1], &[0, 0, 1], &[1]]);
        assert_eq!(unit_orders(&f2, &cubic).unwrap(), BTreeMap::from([(1, 1)]));
        let f5 = fq(5, 1);
        assert!(unit_orders(&f5, &px(&f5, &[&[0, -1], &[1]])).unwrap().is_empty());
        // Valuations 0, -1, 0: slopes -1 and 1, no unit roots.
        assert!(unit_orders(&f2, &px(&f2, &[&[1], &[1, 1], &[1]])).unwrap().is_empty());
        // X^3 + t X^2 + t X + t has residual X^2 + X + 1 on its flat edge.
        let p = px(&f2, &[&[0, 1], &[0, 1], &[0, 1], &[1]]);
        assert_eq!(unit_orders(&f2, &p).unwrap(), BTreeMap::from([(3, 2)]));
    }

    #[test]
    fn weight_examples() {
        let f2 = fq(2, 1);
        let cubic = px(&f2, &[&[0, 1], &[0, 0, 1], &[0, 0, 1], &[1]]);
        assert_eq!(res_degree(&f2, &cubic, 1).unwrap(), 1);
        let w = weights(&f2, &cubic, 2, &BTreeMap::from([(1, 1)])).unwrap();
        assert_eq!(w, BTreeMap::from([(1, -1)]));

        assert_eq!(invert_weights(&BTreeMap::from([(1, -3)])).unwrap(), BTreeMap::from([(1, -3)]));
        assert_eq!(
            invert_weights(&BTreeMap::from([(1, -1), (3, -3)])).unwrap(),
            BTreeMap::from([(1, -1), (3, -2)])
        );
        assert_eq!(
            invert_weights(&BTreeMap::from([(1, -1), (3, -1)])),
            Err(Error::NonNegativeWeight { order: 3, weight: 0 })
        );
    }

    #[test]
    fn spectral_examples() {
        let f7 = fq(7, 1);
        let diag = Matrix::from_rows(vec![
            vec![f7.from_ints(&[6]), f7.zero()],
            vec![f7.zero(), f7.from_ints(&[2])],
        ])
        .unwrap();
        let s = spectral_data(&f7, &diag).unwrap();
        assert_eq!(s.e_exponent, 0);
        assert_eq!(s.rou_orders, BTreeMap::from([(2, 1), (3, 1)]));
        assert!(s.unit_orders.is_empty() && s.weights.is_empty());

        let f2 = fq(2, 1);
        let cubic = px(&f2, &[&[0, 1], &[0, 0, 1], &[0, 0, 1], &[1]]);
        let s = spectral_data(&f2, &companion(&f2, &cubic)).unwrap();
        assert_eq!(s.e_exponent, 2);
        assert!(s.rou_orders.is_empty());
        assert_eq!(s.unit_orders, BTreeMap::from([(1, 1)]));
        assert_eq!(s.weights, BTreeMap::from([(1, -1)]));

        for (p, e) in [(2, 1), (3, 2), (5, 1)] {
            let r = fq(p, e);
            let t = Matrix::from_rows(vec![vec![r.x()]]).unwrap();
            let s = spectral_data(&r, &t).unwrap();
            assert_eq!(s.e_exponent, 1);
            assert!(s.rou_orders.is_empty() && s.unit_orders.is_empty());
        }
        let zero = Matrix::from_rows(vec![vec![f7.zero()]]).unwrap();
        assert_eq!(spectral_data(&f7, &zero), Err(Error::SingularMatrix));
    }

    #[test]
    fn serializes_coordinates() {
        let f7 = fq(7, 1);
        let diag = Matrix::from_rows(vec![
            vec![f7.from_ints(&[6]), f7.zero()],
            vec![f7.zero(), f7.from_ints(&[2])],
        ])
        .unwrap();
        let json = serde_json::to_value(spectral_data(&f7, &diag).unwrap()).unwrap();
        assert_eq!(json["G"], serde_json::json!([[5], [6], [1]]));
        assert_eq!(json["rou_orders"], serde_json::json!({"2": 1, "3": 1}));
        assert_eq!(json["Pprime"], serde_json::json!([[[1]]]));
    }

    fn small_px(p: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(0..p, 0..=2), 1..=3)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn content_split_matches_frobenius(
            raw in small_px(2),
            rou in prop::collection::vec(0i64..2, 0..=2),
        ) {
            let f2 = fq(2, 1);
            let ftx = PolyRing::new(f2.clone());
            let mut coeffs: Vec<PolyT> = raw.iter().map(|c| f2.from_ints(c)).collect();
            coeffs.push(f2.one());
            let base = ftx.from_coeffs(coeffs);
            prop_assume!(!base.coeffs()[0].is_zero());
            let mut g = rou;
            g.insert(0, 1);
            g.push(1);
            let gpoly = px(&f2, &g.iter().map(|&c| if c == 0 { &[][..] } else { &[1][..] }).collect::<Vec<_>>());
            let p = ftx.mul(&base, &gpoly);
            let (g_content, pp) = rou_split(&f2, &p).unwrap();
            let lifted = ftx.from_coeffs(g_content.coeffs().iter().map(|&c| f2.constant(c)).collect());
            prop_assert_eq!(ftx.mul(&lifted, &pp), p.clone());
            prop_assert_eq!(rou_split_frobenius(&f2, &p), g_content);
        }

        #[test]
        fn res_degree_matches_subresultant(raw in small_px(3), n in 1u64..=8) {
            prop_assume!(n % 3 != 0);
            let f3 = fq(3, 1);
            let ftx = PolyRing::new(f3.clone());
            let mut coeffs: Vec<PolyT> = raw.iter().map(|c| f3.from_ints(c)).collect();
            coeffs.push(f3.one());
            let p = ftx.from_coeffs(coeffs);
            prop_assume!(!p.coeffs()[0].is_zero());
            let (_, pp) = rou_split(&f3, &p).unwrap();
            let xn = ftx.sub(&ftx.monomial(f3.one(), n as usize), &ftx.one());
            let res = ftx.subresultant(&pp, &xn).unwrap();
            prop_assert_eq!(res_degree(&f3, &pp, n).unwrap(), res.degree().unwrap() as u64);
        }

        #[test]
        fn spectral_invariants(
            raw in prop::collection::vec(prop::collection::vec(0i64..3, 0..=2), 4),
        ) {
            let f3 = fq(3, 1);
            let ftx = PolyRing::new(f3.clone());
            let a = Matrix::from_rows(vec![
                vec![f3.from_ints(&raw[0]), f3.from_ints(&raw[1])],
                vec![f3.from_ints(&raw[2]), f3.from_ints(&raw[3])],
            ]).unwrap();
            let p = charpoly(&f3, &a);
            prop_assume!(!p.coeffs()[0].is_zero());
            let s = spectral_data(&f3, &a).unwrap();
            prop_assert!(s.g.coeffs().len() as u64 == s.m_count() + 1);
            let lifted = ftx.from_coeffs(s.g.coeffs().iter().map(|&c| f3.constant(c)).collect());
            prop_assert_eq!(ftx.mul(&lifted, &s.pprime), p);
            for &n in s.unit_orders.keys() {
                prop_assert!(n % 3 != 0);
                let rebuilt: i64 = s.weights.iter().filter(|(&d, _)| n % d == 0).map(|(_, w)| w).sum();
                let deg = res_degree(&f3, &s.pprime, n).unwrap() as i64;
                prop_assert_eq!(deg, (n * s.e_exponent) as i64 + rebuilt);
            }
            prop_assert!(s.weights.values().all(|&w| w < 0));
        }
    }
}
