//! Finite fields `GF(p^e)` as quotient rings `GF(p)[X]/(modulus)`.
//!
//! Elements are packed into a `u64` as base-`p` digits (coordinate `i` is the
//! coefficient of `X^i` in the power basis of the modulus). Small fields get
//! log/antilog tables; everything else falls back to digit arithmetic.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};
use crate::ring::{Domain, Field, Ring};

/// Largest field order (and `q^delta - 1` for order computations) accepted.
pub const ORDER_CAP: u64 = 1 << 63;

/// Fields up to this order get multiplication tables.
const TABLE_LIMIT: u64 = 1 << 16;

/// Addition tables are built up to this order when `e > 1`.
const ADD_TABLE_LIMIT: u64 = 256;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct FElem(u64);

impl FElem {
    /// The packed base-`p` code of this element.
    pub fn code(self) -> u64 {
        self.0
    }
}

#[derive(Clone)]
pub struct Gf(Arc<GfInner>);

struct GfInner {
    p: u64,
    e: u32,
    q: u64,
    /// Monic, low-degree-first, length `e + 1`.
    modulus: Vec<u64>,
    tables: Option<MulTables>,
    add_table: Option<Vec<u32>>,
}

struct MulTables {
    exp: Vec<u64>,
    log: Vec<u32>,
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.0.p, self.0.e, self.0.modulus)
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus
    }
}

impl Eq for Gf {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n` by trial division, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `base^exp` if it stays below [`ORDER_CAP`].
pub fn capped_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp).filter(|&v| v < ORDER_CAP)
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Constructs `GF(p^e)`.
///
/// Without an explicit modulus the lexicographically smallest monic
/// irreducible of degree `e` is chosen, comparing coefficient sequences
/// low-degree-first. For `e = 1` the default modulus is `X`.
pub fn make_field(p: u64, e: u32, modulus: Option<&[u64]>) -> Result<Gf> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Err(Error::DegreeMismatch { expected: e });
    }
    let q = capped_pow(p, e).ok_or_else(|| Error::TooLarge(format!("{p}^{e}")))?;
    let modulus = match modulus {
        Some(m) => {
            let m: Vec<u64> = m.iter().map(|c| c % p).collect();
            if m.len() != e as usize + 1 || m[e as usize] != 1 {
                return Err(Error::DegreeMismatch { expected: e });
            }
            if e > 1 && !prime_field_irreducible(p, &m) {
                return Err(Error::ReducibleModulus(p));
            }
            m
        }
        None if e == 1 => vec![0, 1],
        None => smallest_irreducible(p, e),
    };
    Ok(Gf::build(p, e, q, modulus))
}

fn prime_field_irreducible(p: u64, m: &[u64]) -> bool {
    let fp = Gf::build(p, 1, p, vec![0, 1]);
    let ring = PolyRing::new(fp.clone());
    let f = ring.from_coeffs(m.iter().map(|&c| fp.from_u64(c)).collect());
    crate::poly::factor::is_irreducible(&ring, &f)
}

fn smallest_irreducible(p: u64, e: u32) -> Vec<u64> {
    let fp = Gf::build(p, 1, p, vec![0, 1]);
    let ring = PolyRing::new(fp.clone());
    let count = p.pow(e);
    // Counter digits are read most-significant-first as (c_0, c_1, ...), so
    // counting upward walks the low-degree-first lexicographic order.
    for n in 0..count {
        let mut digits = vec![0u64; e as usize];
        let mut rest = n;
        for i in (0..e as usize).rev() {
            digits[i] = rest % p;
            rest /= p;
        }
        if digits[0] == 0 {
            continue;
        }
        digits.push(1);
        let f = ring.from_coeffs(digits.iter().map(|&c| fp.from_u64(c)).collect());
        if crate::poly::factor::is_irreducible(&ring, &f) {
            return digits;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over GF(p)")
}

impl Gf {
    fn build(p: u64, e: u32, q: u64, modulus: Vec<u64>) -> Gf {
        let mut inner = GfInner {
            p,
            e,
            q,
            modulus,
            tables: None,
            add_table: None,
        };
        if e > 1 && q <= ADD_TABLE_LIMIT && p != 2 {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = inner.add_digits(a, b) as u32;
                }
            }
            inner.add_table = Some(table);
        }
        if e > 1 && q <= TABLE_LIMIT {
            inner.tables = Some(inner.build_tables());
        }
        Gf(Arc::new(inner))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn from_u64(&self, code: u64) -> FElem {
        FElem(code % self.0.q)
    }

    /// Element with the given power-basis coordinates (low-degree-first).
    /// Missing trailing coordinates are zero; residues are reduced mod `p`.
    pub fn from_coords(&self, coords: &[u64]) -> FElem {
        let p = self.0.p;
        let code = coords
            .iter()
            .take(self.0.e as usize)
            .rev()
            .fold(0u64, |acc, &c| acc * p + c % p);
        FElem(code)
    }

    /// Power-basis coordinates, always of length `e`.
    pub fn coords(&self, a: FElem) -> Vec<u64> {
        let p = self.0.p;
        let mut code = a.0;
        (0..self.0.e)
            .map(|_| {
                let d = code % p;
                code /= p;
                d
            })
            .collect()
    }

    /// All `q` elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FElem> {
        (0..self.0.q).map(FElem)
    }

    /// `a^(1/p)`, the inverse of Frobenius.
    pub fn pth_root(&self, a: FElem) -> FElem {
        self.pow(&a, self.0.q / self.0.p)
    }

    /// Multiplicative order of `a`.
    pub fn elem_order(&self, a: FElem) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::ZeroElement);
        }
        let group = self.0.q - 1;
        let mut n = group;
        for l in prime_factors(group) {
            while n.is_multiple_of(l) && self.is_one(&self.pow(&a, n / l)) {
                n /= l;
            }
        }
        Ok(n)
    }
}

impl GfInner {
    fn add_digits(&self, a: u64, b: u64) -> u64 {
        let p = self.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut scale = 1u64;
        for _ in 0..self.e {
            let d = (a % p + b % p) % p;
            out += d * scale;
            scale = scale.wrapping_mul(p);
            a /= p;
            b /= p;
        }
        out
    }

    fn neg_digits(&self, a: u64) -> u64 {
        let p = self.p;
        let mut a = a;
        let mut out = 0u64;
        let mut scale = 1u64;
        for _ in 0..self.e {
            let d = (p - a % p) % p;
            out += d * scale;
            scale = scale.wrapping_mul(p);
            a /= p;
        }
        out
    }

    fn unpack(&self, mut a: u64) -> Vec<u64> {
        (0..self.e)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn pack(&self, digits: &[u64]) -> u64 {
        digits.iter().rev().fold(0u64, |acc, &c| acc * self.p + c)
    }

    /// Schoolbook product reduced by the monic modulus.
    fn mul_digits(&self, a: u64, b: u64) -> u64 {
        let p = self.p;
        let e = self.e as usize;
        let x = self.unpack(a);
        let y = self.unpack(b);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mulmod(xi, yj, p)) % p;
            }
        }
        for k in (e..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..e {
                let sub = mulmod(c, self.modulus[i], p);
                prod[k - e + i] = (prod[k - e + i] + p - sub) % p;
            }
        }
        prod.truncate(e);
        self.pack(&prod)
    }

    fn pow_digits(&self, a: u64, mut n: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul_digits(acc, base);
            }
            base = self.mul_digits(base, base);
            n >>= 1;
        }
        acc
    }

    fn build_tables(&self) -> MulTables {
        let group = self.q - 1;
        let factors = prime_factors(group);
        let generator = (2..self.q)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&l| self.pow_digits(g, group / l) != 1)
            })
            .unwrap_or(1);
        let mut exp = vec![0u64; group as usize];
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u64;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = self.mul_digits(x, generator);
        }
        MulTables { exp, log }
    }
}

impl Ring for Gf {
    type Elem = FElem;

    fn zero(&self) -> FElem {
        FElem(0)
    }

    fn one(&self) -> FElem {
        FElem(1)
    }

    fn is_zero(&self, a: &FElem) -> bool {
        a.0 == 0
    }

    fn is_one(&self, a: &FElem) -> bool {
        a.0 == 1
    }

    fn add(&self, a: &FElem, b: &FElem) -> FElem {
        let inner = &*self.0;
        if inner.e == 1 {
            let s = a.0 + b.0;
            FElem(if s >= inner.p { s - inner.p } else { s })
        } else if inner.p == 2 {
            FElem(a.0 ^ b.0)
        } else if let Some(t) = &inner.add_table {
            FElem(t[(a.0 * inner.q + b.0) as usize] as u64)
        } else {
            FElem(inner.add_digits(a.0, b.0))
        }
    }

    fn neg(&self, a: &FElem) -> FElem {
        let inner = &*self.0;
        if inner.e == 1 {
            FElem(if a.0 == 0 { 0 } else { inner.p - a.0 })
        } else if inner.p == 2 {
            *a
        } else {
            FElem(inner.neg_digits(a.0))
        }
    }

    fn mul(&self, a: &FElem, b: &FElem) -> FElem {
        let inner = &*self.0;
        if a.0 == 0 || b.0 == 0 {
            return FElem(0);
        }
        if inner.e == 1 {
            return FElem(mulmod(a.0, b.0, inner.p));
        }
        match &inner.tables {
            Some(t) => {
                let n = t.exp.len();
                let i = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
                FElem(t.exp[if i >= n { i - n } else { i }])
            }
            None => FElem(inner.mul_digits(a.0, b.0)),
        }
    }

    fn from_int(&self, n: i64) -> FElem {
        let p = self.0.p as i128;
        FElem((n as i128).rem_euclid(p) as u64)
    }

    fn characteristic(&self) -> u64 {
        self.0.p
    }
}

impl Domain for Gf {
    fn div_exact(&self, a: &FElem, b: &FElem) -> Option<FElem> {
        self.div(a, b)
    }
}

impl Field for Gf {
    fn inv(&self, a: &FElem) -> Option<FElem> {
        if a.0 == 0 {
            return None;
        }
        let inner = &*self.0;
        if let Some(t) = &inner.tables {
            let n = t.exp.len();
            let l = t.log[a.0 as usize] as usize;
            return Some(FElem(t.exp[(n - l) % n]));
        }
        Some(self.pow(a, inner.q - 2))
    }
}

/// Multiplicative order of the coset of `X` in `F[X]/(g)` for an irreducible
/// `g != X`; this is the common order of every root of `g`.
pub fn order_of_root(ring: &PolyRing<Gf>, g: &Poly<FElem>) -> Result<u64> {
    let field = ring.base();
    let deg = g.degree().ok_or(Error::ZeroInput("gf"))?;
    if deg == 1 && field.is_zero(&g.coeffs()[0]) {
        return Err(Error::RootIsZero);
    }
    if !crate::poly::factor::is_irreducible(ring, g) {
        return Err(Error::Reducible);
    }
    let g = ring.monic(g)?;
    let group = capped_pow(field.q(), deg as u32)
        .ok_or_else(|| Error::TooLarge(format!("{}^{}", field.q(), deg)))?
        - 1;
    let x = ring.x();
    let is_one = |n: u64| -> Result<bool> { Ok(ring.is_one(&ring.modpow_u64(&x, n, &g)?)) };
    let mut n = group;
    for l in prime_factors(group) {
        while n % l == 0 && is_one(n / l)? {
            n /= l;
        }
    }
    Ok(n)
}
