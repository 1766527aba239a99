//! Fraction-free resultants over integral domains.

use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};
use crate::ring::Domain;

impl<R: Domain> PolyRing<R> {
    /// `lc(b)^(deg a - deg b + 1) * a mod b`, computed without division.
    pub fn pseudo_rem(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Result<Poly<R::Elem>> {
        let lb = b.lc().ok_or(Error::DivisionByZero)?.clone();
        let k = &self.base;
        let db = b.len() - 1;
        if a.len() <= db {
            // Caller contract: deg a >= deg b; keep the scaling consistent anyway.
            return Ok(self.scale(a, &lb));
        }
        let delta = a.len() - 1 - db;
        let mut rem = a.coeffs().to_vec();
        let mut steps = 0;
        while rem.len() > db {
            let c = rem.pop().unwrap();
            let shift = rem.len() - db;
            for x in rem.iter_mut() {
                *x = k.mul(x, &lb);
            }
            for i in 0..db {
                let t = k.mul(&c, &b.coeffs()[i]);
                rem[shift + i] = k.sub(&rem[shift + i], &t);
            }
            steps += 1;
        }
        // Each elimination step scaled by lc(b) once; top up to delta + 1.
        let mut r = self.from_coeffs(rem);
        for _ in steps..delta + 1 {
            r = self.scale(&r, &lb);
        }
        Ok(r)
    }

    /// Resultant by the subresultant remainder sequence; every division is
    /// exact in `R`.
    pub fn subresultant(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Result<R::Elem> {
        if f.is_zero() || g.is_zero() {
            return Err(Error::ZeroInput("polycore"));
        }
        let k = &self.base;
        let exact = |a: &R::Elem, b: &R::Elem| {
            k.div_exact(a, b)
                .ok_or_else(|| Error::Invariant("inexact subresultant division".into()))
        };
        let (mut a, mut b) = (f.clone(), g.clone());
        let mut sign_negative = false;
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
            if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
                sign_negative = true;
            }
        }
        if b.len() == 1 {
            let r = k.pow(b.lc().unwrap(), (a.len() - 1) as u64);
            return Ok(if sign_negative { k.neg(&r) } else { r });
        }
        let mut lead = k.one();
        let mut h = k.one();
        loop {
            let (da, db) = (a.len() - 1, b.len() - 1);
            let delta = (da - db) as u64;
            if da % 2 == 1 && db % 2 == 1 {
                sign_negative = !sign_negative;
            }
            let r = self.pseudo_rem(&a, &b)?;
            if r.is_zero() {
                return Ok(k.zero());
            }
            let divisor = k.mul(&lead, &k.pow(&h, delta));
            let next: Vec<R::Elem> = r
                .coeffs()
                .iter()
                .map(|c| exact(c, &divisor))
                .collect::<Result<_>>()?;
            a = b;
            b = self.from_coeffs(next);
            lead = a.lc().unwrap().clone();
            h = if delta == 0 {
                h
            } else {
                exact(&k.pow(&lead, delta), &k.pow(&h, delta - 1))?
            };
            if b.len() == 1 {
                let da = (a.len() - 1) as u64;
                let num = k.pow(b.lc().unwrap(), da);
                let r = exact(&num, &k.pow(&h, da - 1))?;
                return Ok(if sign_negative { k.neg(&r) } else { r });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::gf::make_field;
    use crate::poly::PolyRing;
    use crate::polymat::{bareiss_det, Matrix};
    use crate::ring::Ring;
    use proptest::prelude::*;

    /// Sylvester-matrix determinant, an independent route to the resultant.
    fn sylvester<R: crate::ring::Domain>(
        ring: &PolyRing<R>,
        f: &crate::poly::Poly<R::Elem>,
        g: &crate::poly::Poly<R::Elem>,
    ) -> R::Elem {
        let (n, m) = (f.len() - 1, g.len() - 1);
        let size = n + m;
        let k = ring.base();
        let mut mat = Matrix::filled(size, k.zero());
        for row in 0..m {
            for (i, c) in f.coeffs().iter().rev().enumerate() {
                mat.set(row, row + i, c.clone());
            }
        }
        for row in 0..n {
            for (i, c) in g.coeffs().iter().rev().enumerate() {
                mat.set(m + row, row + i, c.clone());
            }
        }
        bareiss_det(k, &mat)
    }

    #[test]
    fn resultant_against_linear_factor_is_evaluation() {
        // Over GF(2)[t]: Res(X^3 + t^2 X^2 + t^2 X + t, X - 1) = f(1) = 1 + t.
        let fq = PolyRing::new(make_field(2, 1, None).unwrap());
        let fx = PolyRing::new(fq.clone());
        let t = fq.x();
        let t2 = fq.mul(&t, &t);
        let f = fx.from_coeffs(vec![t.clone(), t2.clone(), t2, fq.one()]);
        let g = fx.from_coeffs(vec![fq.from_ints(&[-1]), fq.one()]);
        assert_eq!(fx.subresultant(&f, &g).unwrap(), fq.from_ints(&[1, 1]));
        assert_eq!(sylvester(&fx, &f, &g), fq.from_ints(&[1, 1]));
    }

    fn bivariate(p: u64) -> impl Strategy<Value = Vec<Vec<i64>>> {
        let p = p as i64;
        prop::collection::vec(prop::collection::vec(0..p, 0..=3), 1..=5)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn subresultant_matches_sylvester(a in bivariate(3), b in bivariate(3)) {
            let fq = PolyRing::new(make_field(3, 1, None).unwrap());
            let fx = PolyRing::new(fq.clone());
            let f = fx.from_coeffs(a.iter().map(|c| fq.from_ints(c)).collect());
            let g = fx.from_coeffs(b.iter().map(|c| fq.from_ints(c)).collect());
            prop_assume!(!f.is_zero() && !g.is_zero());
            prop_assert_eq!(fx.subresultant(&f, &g).unwrap(), sylvester(&fx, &f, &g));
        }

        #[test]
        fn subresultant_matches_euclid_over_finite_field(a in prop::collection::vec(0i64..7, 1..7), b in prop::collection::vec(0i64..7, 1..7)) {
            let r = PolyRing::new(make_field(7, 1, None).unwrap());
            let (f, g) = (r.from_ints(&a), r.from_ints(&b));
            prop_assume!(!f.is_zero() && !g.is_zero());
            prop_assert_eq!(r.subresultant(&f, &g).unwrap(), r.resultant(&f, &g).unwrap());
        }
    }
}
