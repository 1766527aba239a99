//! Square matrices over `F[t]`: fraction-free determinants, characteristic
//! polynomials, powers, and Smith normal form.

use crate::funfield::PolyT;
use crate::gf::Gf;
use crate::poly::{Poly, PolyRing};
use crate::ring::{Domain, Ring};

/// Square matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<E> {
    n: usize,
    entries: Vec<E>,
}

pub type MatT = Matrix<PolyT>;

impl<E: Clone> Matrix<E> {
    pub fn filled(n: usize, value: E) -> Self {
        Matrix {
            n,
            entries: vec![value; n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Matrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: E) {
        self.entries[i * self.n + j] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[E]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.n {
                self.entries.swap(a * self.n + j, b * self.n + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.n {
                self.entries.swap(i * self.n + a, i * self.n + b);
            }
        }
    }

    /// Rows and columns permuted by `perm` (new index `i` takes old `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for &i in perm {
            for &j in perm {
                entries.push(self.get(i, j).clone());
            }
        }
        Matrix { n, entries }
    }

    pub fn map<F, T>(&self, f: F) -> Matrix<T>
    where
        F: Fn(&E) -> T,
    {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

pub fn identity<R: Ring>(ring: &R, n: usize) -> Matrix<R::Elem> {
    let mut m = Matrix::filled(n, ring.zero());
    for i in 0..n {
        m.set(i, i, ring.one());
    }
    m
}

pub fn mat_mul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let n = a.n;
    let mut out = Matrix::filled(n, ring.zero());
    for i in 0..n {
        for k in 0..n {
            let aik = a.get(i, k);
            if ring.is_zero(aik) {
                continue;
            }
            for j in 0..n {
                let t = ring.mul(aik, b.get(k, j));
                let s = ring.add(out.get(i, j), &t);
                out.set(i, j, s);
            }
        }
    }
    out
}

pub fn mat_sub<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    Matrix {
        n: a.n,
        entries: a
            .entries
            .iter()
            .zip(&b.entries)
            .map(|(x, y)| ring.sub(x, y))
            .collect(),
    }
}

pub fn block_diag<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let n = a.n + b.n;
    let mut m = Matrix::filled(n, ring.zero());
    for i in 0..a.n {
        for j in 0..a.n {
            m.set(i, j, a.get(i, j).clone());
        }
    }
    for i in 0..b.n {
        for j in 0..b.n {
            m.set(a.n + i, a.n + j, b.get(i, j).clone());
        }
    }
    m
}

/// Determinant by Bareiss elimination; every interior division is exact.
pub fn bareiss_det<R: Domain>(ring: &R, m: &Matrix<R::Elem>) -> R::Elem {
    let n = m.n;
    if n == 0 {
        return ring.one();
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        let Some(pivot) = (k..n).find(|&i| !ring.is_zero(a.get(i, k))) else {
            return ring.zero();
        };
        if pivot != k {
            a.swap_rows(pivot, k);
            negate = !negate;
        }
        let akk = a.get(k, k).clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let t = ring.sub(
                    &ring.mul(a.get(i, j), &akk),
                    &ring.mul(a.get(i, k), a.get(k, j)),
                );
                let v = ring
                    .div_exact(&t, &prev)
                    .expect("Bareiss division is exact");
                a.set(i, j, v);
            }
            a.set(i, k, ring.zero());
        }
        prev = akk;
    }
    let d = a.get(n - 1, n - 1).clone();
    if negate {
        ring.neg(&d)
    } else {
        d
    }
}

pub fn det(ring: &PolyRing<Gf>, a: &MatT) -> PolyT {
    bareiss_det(ring, a)
}

/// `det(X I - A)` as a polynomial in `X` with `F[t]` coefficients.
pub fn charpoly(ring: &PolyRing<Gf>, a: &MatT) -> Poly<PolyT> {
    let rx = PolyRing::new(ring.clone());
    let n = a.dim();
    let mut m = a.map(|c| rx.constant(ring.neg(c)));
    for i in 0..n {
        let d = rx.add(m.get(i, i), &rx.x());
        m.set(i, i, d);
    }
    bareiss_det(&rx, &m)
}

pub fn mat_pow<R: Ring>(ring: &R, a: &Matrix<R::Elem>, mut k: u64) -> Matrix<R::Elem> {
    let mut base = a.clone();
    let mut acc = identity(ring, a.n);
    while k > 0 {
        if k & 1 == 1 {
            acc = mat_mul(ring, &acc, &base);
        }
        k >>= 1;
        if k > 0 {
            base = mat_mul(ring, &base, &base);
        }
    }
    acc
}

/// `A^k - I` by binary powering.
pub fn matpow_minus_identity(ring: &PolyRing<Gf>, a: &MatT, k: u64) -> MatT {
    let p = mat_pow(ring, a, k);
    mat_sub(ring, &p, &identity(ring, a.dim()))
}

/// Invariant factors `b_1 | b_2 | ... | b_r`, all monic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SmithForm {
    pub invariant_factors: Vec<PolyT>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Smith normal form over the Euclidean domain `F[t]`.
pub fn smith(ring: &PolyRing<Gf>, b: &MatT) -> SmithForm {
    let n = b.dim();
    let mut m = b.clone();
    let mut factors = Vec::new();
    'outer: for k in 0..n {
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for i in k..n {
                for j in k..n {
                    if let Some(d) = m.get(i, j).degree() {
                        if best.is_none_or(|(_, _, bd)| d < bd) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                break 'outer;
            };
            m.swap_rows(k, pi);
            m.swap_cols(k, pj);
            let pivot = m.get(k, k).clone();
            let mut clean = true;
            for i in k + 1..n {
                if m.get(i, k).is_zero() {
                    continue;
                }
                let (q, r) = ring.div_rem(m.get(i, k), &pivot).unwrap();
                for j in k..n {
                    let v = ring.sub(m.get(i, j), &ring.mul(&q, m.get(k, j)));
                    m.set(i, j, v);
                }
                clean &= r.is_zero();
            }
            for j in k + 1..n {
                if m.get(k, j).is_zero() {
                    continue;
                }
                let (q, r) = ring.div_rem(m.get(k, j), &pivot).unwrap();
                for i in k..n {
                    let v = ring.sub(m.get(i, j), &ring.mul(&q, m.get(i, k)));
                    m.set(i, j, v);
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // Pivot must divide the rest of the block; otherwise fold the
            // offending row into row k and go again.
            let offending = (k + 1..n).find(|&i| {
                (k + 1..n).any(|j| !ring.rem(m.get(i, j), &pivot).unwrap().is_zero())
            });
            match offending {
                Some(i) => {
                    for j in k..n {
                        let v = ring.add(m.get(k, j), m.get(i, j));
                        m.set(k, j, v);
                    }
                }
                None => break,
            }
        }
        factors.push(ring.monic(m.get(k, k)).unwrap());
    }
    SmithForm {
        invariant_factors: factors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use proptest::prelude::*;

    fn ring(p: u64) -> PolyRing<Gf> {
        PolyRing::new(make_field(p, 1, None).unwrap())
    }

    fn mat(r: &PolyRing<Gf>, rows: &[&[&[i64]]]) -> MatT {
        Matrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|e| r.from_ints(e)).collect())
                .collect(),
        )
        .unwrap()
    }

    /// Cofactor expansion, an independent determinant.
    fn laplace<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> R::Elem {
        let n = m.dim();
        if n == 0 {
            return ring.one();
        }
        let mut acc = ring.zero();
        for j in 0..n {
            let minor: Vec<Vec<R::Elem>> = (1..n)
                .map(|i| (0..n).filter(|&c| c != j).map(|c| m.get(i, c).clone()).collect())
                .collect();
            let term = ring.mul(m.get(0, j), &laplace(ring, &Matrix::from_rows(minor).unwrap()));
            acc = if j % 2 == 0 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
        }
        acc
    }

    #[test]
    fn det_examples() {
        let r = ring(7);
        assert_eq!(det(&r, &mat(&r, &[&[&[0, 1], &[1]], &[&[1], &[0, 1]]])), r.from_ints(&[-1, 0, 1]));
        assert_eq!(det(&r, &identity(&r, 3)), r.one());
        let r2 = ring(2);
        assert_eq!(det(&r2, &mat(&r2, &[&[&[], &[0, 1]], &[&[1], &[1]]])), r2.x());
    }

    #[test]
    fn charpoly_examples() {
        let r2 = ring(2);
        let t = |e: &[i64]| r2.from_ints(e);
        // Companion of X^3 + t^2 X^2 + t^2 X + t.
        let comp = Matrix::from_rows(vec![
            vec![t(&[]), t(&[]), t(&[0, 1])],
            vec![t(&[1]), t(&[]), t(&[0, 0, 1])],
            vec![t(&[]), t(&[1]), t(&[0, 0, 1])],
        ])
        .unwrap();
        let cp = charpoly(&r2, &comp);
        let expected: Vec<PolyT> = vec![t(&[0, 1]), t(&[0, 0, 1]), t(&[0, 0, 1]), t(&[1])];
        assert_eq!(cp.coeffs(), expected.as_slice());

        let r7 = ring(7);
        let d = mat(&r7, &[&[&[6], &[]], &[&[], &[2]]]);
        let cp = charpoly(&r7, &d);
        let expected: Vec<PolyT> = vec![r7.from_ints(&[5]), r7.from_ints(&[6]), r7.one()];
        assert_eq!(cp.coeffs(), expected.as_slice());

        let single = mat(&r7, &[&[&[0, 1]]]);
        let cp = charpoly(&r7, &single);
        assert_eq!(cp.coeffs(), &[r7.from_ints(&[0, -1]), r7.one()]);
    }

    #[test]
    fn matrix_powers() {
        let r = ring(3);
        let a = mat(&r, &[&[&[0, 1]]]);
        assert_eq!(*matpow_minus_identity(&r, &a, 3).get(0, 0), r.from_ints(&[-1, 0, 0, 1]));
        let id = identity(&r, 3);
        for k in 1..5 {
            assert_eq!(matpow_minus_identity(&r, &id, k), Matrix::filled(3, r.zero()));
        }
        // [[0,t],[1,1]] over GF(2): det(A^2 - I) = det(A - I)^2.
        let r2 = ring(2);
        let a = mat(&r2, &[&[&[], &[0, 1]], &[&[1], &[1]]]);
        let d1 = det(&r2, &matpow_minus_identity(&r2, &a, 1));
        let d2 = det(&r2, &matpow_minus_identity(&r2, &a, 2));
        assert_eq!(d2, r2.mul(&d1, &d1));
        let naive = mat_mul(&r2, &a, &a);
        assert_eq!(mat_pow(&r2, &a, 2), naive);
    }

    #[test]
    fn smith_examples() {
        let r = ring(5);
        let s = smith(&r, &mat(&r, &[&[&[0, 1], &[]], &[&[], &[0, 0, 1]]]));
        assert_eq!(s.invariant_factors, vec![r.x(), r.from_ints(&[0, 0, 1])]);
        let s = smith(&r, &mat(&r, &[&[&[0, 1], &[]], &[&[], &[1, 1]]]));
        assert_eq!(s.invariant_factors, vec![r.one(), r.from_ints(&[0, 1, 1])]);
        let s = smith(&r, &mat(&r, &[&[&[]]]));
        assert_eq!(s.rank(), 0);
        assert!(s.invariant_factors.is_empty());
    }

    fn matrix_strategy(p: i64, n: usize) -> impl Strategy<Value = Vec<Vec<Vec<i64>>>> {
        prop::collection::vec(prop::collection::vec(prop::collection::vec(0..p, 0..=3), n), n)
    }

    fn build(r: &PolyRing<Gf>, raw: &[Vec<Vec<i64>>]) -> MatT {
        Matrix::from_rows(
            raw.iter().map(|row| row.iter().map(|e| r.from_ints(e)).collect()).collect(),
        )
        .unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn bareiss_matches_laplace(raw in matrix_strategy(3, 4)) {
            let r = ring(3);
            let a = build(&r, &raw);
            prop_assert_eq!(det(&r, &a), laplace(&r, &a));
        }

        #[test]
        fn charpoly_constant_term_is_signed_det(raw in matrix_strategy(5, 3)) {
            let r = ring(5);
            let a = build(&r, &raw);
            let cp = charpoly(&r, &a);
            prop_assert!(PolyRing::new(r.clone()).is_monic(&cp));
            prop_assert_eq!(cp.len(), 4);
            prop_assert_eq!(r.neg(&cp.coeffs()[0]), det(&r, &a));
        }

        #[test]
        fn smith_product_matches_det(raw in matrix_strategy(2, 3)) {
            let r = ring(2);
            let a = build(&r, &raw);
            let d = det(&r, &a);
            let s = smith(&r, &a);
            for w in s.invariant_factors.windows(2) {
                prop_assert!(r.rem(&w[1], &w[0]).unwrap().is_zero());
            }
            if d.is_zero() {
                prop_assert!(s.rank() < 3);
            } else {
                prop_assert_eq!(s.rank(), 3);
                let prod = s.invariant_factors.iter().fold(r.one(), |acc, b| r.mul(&acc, b));
                prop_assert_eq!(prod, r.monic(&d).unwrap());
            }
        }
    }
}
