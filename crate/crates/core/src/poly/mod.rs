//! Dense univariate polynomials over any [`Ring`].

pub mod factor;
pub mod resultant;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::ring::{Domain, Field, Ring};

/// Coefficients low-degree-first with no trailing zeros; the empty sequence
/// is the zero polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E> Poly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct PolyRing<R> {
    base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<R::Elem>) -> Poly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(&self, ints: &[i64]) -> Poly<R::Elem> {
        self.from_coeffs(ints.iter().map(|&n| self.base.from_int(n)).collect())
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(vec![c])
    }

    pub fn x(&self) -> Poly<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    pub fn monomial(&self, c: R::Elem, n: usize) -> Poly<R::Elem> {
        let mut coeffs = vec![self.base.zero(); n];
        coeffs.push(c);
        self.from_coeffs(coeffs)
    }

    /// Coefficient `i`, zero beyond the degree.
    pub fn coeff(&self, f: &Poly<R::Elem>, i: usize) -> R::Elem {
        f.coeffs.get(i).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn is_monic(&self, f: &Poly<R::Elem>) -> bool {
        f.lc().is_some_and(|c| self.base.is_one(c))
    }

    pub fn is_constant(&self, f: &Poly<R::Elem>) -> bool {
        f.coeffs.len() <= 1
    }

    pub fn eval(&self, f: &Poly<R::Elem>, x: &R::Elem) -> R::Elem {
        f.coeffs
            .iter()
            .rev()
            .fold(self.base.zero(), |acc, c| self.base.add(&self.base.mul(&acc, x), c))
    }

    pub fn scale(&self, f: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(f.coeffs.iter().map(|a| self.base.mul(a, c)).collect())
    }

    /// Multiplication by `X^n`.
    pub fn shift(&self, f: &Poly<R::Elem>, n: usize) -> Poly<R::Elem> {
        if f.is_zero() {
            return f.clone();
        }
        let mut coeffs = vec![self.base.zero(); n];
        coeffs.extend(f.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn derivative(&self, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        let coeffs = f
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.base.mul(c, &self.base.from_int(i as i64)))
            .collect();
        self.from_coeffs(coeffs)
    }

    /// Applies `map` to every coefficient.
    pub fn map<S: Ring>(
        &self,
        target: &PolyRing<S>,
        f: &Poly<R::Elem>,
        map: impl Fn(&R::Elem) -> S::Elem,
    ) -> Poly<S::Elem> {
        target.from_coeffs(f.coeffs.iter().map(map).collect())
    }

    /// Quotient and remainder by a monic divisor; valid over any ring.
    pub fn div_rem_monic(
        &self,
        a: &Poly<R::Elem>,
        m: &Poly<R::Elem>,
    ) -> Result<(Poly<R::Elem>, Poly<R::Elem>)> {
        if !self.is_monic(m) {
            return Err(Error::NonMonicModulus);
        }
        let dm = m.len() - 1;
        if a.len() <= dm {
            return Ok((self.zero(), a.clone()));
        }
        let mut rem = a.coeffs.clone();
        let mut quot = vec![self.base.zero(); a.len() - dm];
        for k in (dm..rem.len()).rev() {
            let c = std::mem::replace(&mut rem[k], self.base.zero());
            if self.base.is_zero(&c) {
                continue;
            }
            for i in 0..dm {
                let t = self.base.mul(&c, &m.coeffs[i]);
                rem[k - dm + i] = self.base.sub(&rem[k - dm + i], &t);
            }
            quot[k - dm] = c;
        }
        rem.truncate(dm);
        Ok((self.from_coeffs(quot), self.from_coeffs(rem)))
    }

    pub fn rem_monic(&self, a: &Poly<R::Elem>, m: &Poly<R::Elem>) -> Result<Poly<R::Elem>> {
        self.div_rem_monic(a, m).map(|(_, r)| r)
    }

    /// `base^n mod m` by square-and-multiply; `m` must be monic of degree >= 1.
    pub fn modpow(
        &self,
        base: &Poly<R::Elem>,
        n: &BigUint,
        m: &Poly<R::Elem>,
    ) -> Result<Poly<R::Elem>> {
        if !self.is_monic(m) || m.len() < 2 {
            return Err(Error::NonMonicModulus);
        }
        let b = self.rem_monic(base, m)?;
        let mut acc = self.rem_monic(&self.one(), m)?;
        for i in (0..n.bits()).rev() {
            acc = self.rem_monic(&self.mul(&acc, &acc), m)?;
            if n.bit(i) {
                acc = self.rem_monic(&self.mul(&acc, &b), m)?;
            }
        }
        Ok(acc)
    }

    pub fn modpow_u64(
        &self,
        base: &Poly<R::Elem>,
        n: u64,
        m: &Poly<R::Elem>,
    ) -> Result<Poly<R::Elem>> {
        self.modpow(base, &BigUint::from(n), m)
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly { coeffs: Vec::new() }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.coeffs.is_empty()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        a.coeffs.len() == 1 && self.base.is_one(&a.coeffs[0])
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = self.base.add(c, s);
        }
        self.from_coeffs(coeffs)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Poly {
            coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(),
        }
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.len().max(b.len());
        let coeffs = (0..n)
            .map(|i| match (a.coeffs.get(i), b.coeffs.get(i)) {
                (Some(x), Some(y)) => self.base.sub(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => self.base.neg(y),
                (None, None) => unreachable!(),
            })
            .collect();
        self.from_coeffs(coeffs)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut coeffs = vec![self.base.zero(); a.len() + b.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let t = self.base.mul(x, y);
                coeffs[i + j] = self.base.add(&coeffs[i + j], &t);
            }
        }
        self.from_coeffs(coeffs)
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
}

impl<R: Domain> Domain for PolyRing<R> {
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        let lb = b.lc()?;
        if a.is_zero() {
            return Some(self.zero());
        }
        if a.len() < b.len() {
            return None;
        }
        let db = b.len() - 1;
        let mut rem = a.coeffs.clone();
        let mut quot = vec![self.base.zero(); a.len() - db];
        for k in (db..rem.len()).rev() {
            let c = std::mem::replace(&mut rem[k], self.base.zero());
            if self.base.is_zero(&c) {
                continue;
            }
            let qc = self.base.div_exact(&c, lb)?;
            for i in 0..db {
                let t = self.base.mul(&qc, &b.coeffs[i]);
                rem[k - db + i] = self.base.sub(&rem[k - db + i], &t);
            }
            quot[k - db] = qc;
        }
        if rem.iter().any(|c| !self.base.is_zero(c)) {
            return None;
        }
        Some(self.from_coeffs(quot))
    }
}

impl<K: Field> PolyRing<K> {
    pub fn div_rem(
        &self,
        a: &Poly<K::Elem>,
        b: &Poly<K::Elem>,
    ) -> Result<(Poly<K::Elem>, Poly<K::Elem>)> {
        let lb = b.lc().ok_or(Error::DivisionByZero)?;
        let inv = self.base.inv(lb).ok_or(Error::DivisionByZero)?;
        let monic_b = self.scale(b, &inv);
        let (q, r) = self.div_rem_monic(a, &monic_b)?;
        Ok((self.scale(&q, &inv), r))
    }

    pub fn rem(&self, a: &Poly<K::Elem>, b: &Poly<K::Elem>) -> Result<Poly<K::Elem>> {
        self.div_rem(a, b).map(|(_, r)| r)
    }

    pub fn monic(&self, f: &Poly<K::Elem>) -> Result<Poly<K::Elem>> {
        let lc = f.lc().ok_or(Error::ZeroInput("polycore"))?;
        let inv = self.base.inv(lc).ok_or(Error::DivisionByZero)?;
        Ok(self.scale(f, &inv))
    }

    /// Monic gcd by the Euclidean remainder sequence.
    pub fn gcd(&self, f: &Poly<K::Elem>, g: &Poly<K::Elem>) -> Result<Poly<K::Elem>> {
        if f.is_zero() && g.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b)?;
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `Res(f, g) = lc(f)^deg(g) * prod_{f(x)=0} g(x)` over a field, by the
    /// Euclidean remainder sequence.
    pub fn resultant(&self, f: &Poly<K::Elem>, g: &Poly<K::Elem>) -> Result<K::Elem> {
        if f.is_zero() || g.is_zero() {
            return Err(Error::ZeroInput("polycore"));
        }
        let k = &self.base;
        let (mut a, mut b) = (f.clone(), g.clone());
        let mut acc = k.one();
        loop {
            let (n, m) = (a.len() - 1, b.len() - 1);
            if n == 0 {
                return Ok(k.mul(&acc, &k.pow(a.lc().unwrap(), m as u64)));
            }
            if m == 0 {
                return Ok(k.mul(&acc, &k.pow(b.lc().unwrap(), n as u64)));
            }
            let r = self.rem(&a, &b)?;
            if r.is_zero() {
                return Ok(k.zero());
            }
            let dr = r.len() - 1;
            if (n * m) % 2 == 1 {
                acc = k.neg(&acc);
            }
            acc = k.mul(&acc, &k.pow(b.lc().unwrap(), (n - dr) as u64));
            a = b;
            b = r;
        }
    }
}
