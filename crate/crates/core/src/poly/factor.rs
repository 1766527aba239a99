//! Factorization over finite fields: squarefree decomposition with `p`-th
//! root descent, distinct-degree splitting, and equal-degree splitting.
//!
//! Equal-degree splitting is deterministic. Small fields enumerate
//! candidate splitting polynomials in code order; larger ones draw them from
//! a ChaCha8 stream seeded with [`EDF_SEED`].

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{FElem, Gf};
use crate::poly::{Poly, PolyRing};
use crate::ring::Ring;

/// Seed of the fallback splitting-polynomial stream.
pub const EDF_SEED: u64 = 0x5_eed0_fedf;

const ENUMERATION_MAX_Q: u64 = 9;
const ENUMERATION_MAX_DEGREE: usize = 16;

type FPoly = Poly<FElem>;

/// Irreducible factors with multiplicities, sorted by degree and then by
/// coefficient codes. The product of `factor^mult`, times `lc(f)`, is `f`.
pub fn factor(ring: &PolyRing<Gf>, f: &FPoly) -> Result<Vec<(FPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("polycore"));
    }
    let f = ring.monic(f)?;
    let mut out = Vec::new();
    for (part, mult) in squarefree(ring, &f)? {
        for (deg, block) in distinct_degree(ring, &part)? {
            for g in equal_degree(ring, &block, deg)? {
                out.push((g, mult));
            }
        }
    }
    sort_factors(&mut out);
    merge_equal(&mut out);
    Ok(out)
}

fn sort_key(f: &FPoly) -> (usize, Vec<u64>) {
    (f.len(), f.coeffs().iter().map(|c| c.code()).collect())
}

fn sort_factors(v: &mut [(FPoly, u32)]) {
    v.sort_by_key(|a| sort_key(&a.0));
}

fn merge_equal(v: &mut Vec<(FPoly, u32)>) {
    let mut merged: Vec<(FPoly, u32)> = Vec::with_capacity(v.len());
    for (g, m) in v.drain(..) {
        match merged.last_mut() {
            Some((h, n)) if *h == g => *n += m,
            _ => merged.push((g, m)),
        }
    }
    *v = merged;
}

/// Squarefree decomposition of a monic polynomial: pairs `(g_i, i)` with
/// `f = prod g_i^i`, every `g_i` squarefree, monic and nonconstant.
pub fn squarefree(ring: &PolyRing<Gf>, f: &FPoly) -> Result<Vec<(FPoly, u32)>> {
    let field = ring.base();
    let p = field.p() as usize;
    let mut out = Vec::new();
    if f.len() <= 1 {
        return Ok(out);
    }
    let df = ring.derivative(f);
    let mut c = ring.gcd(f, &df)?;
    let mut w = ring.div_exact_field(f, &c)?;
    let mut i = 1u32;
    while !ring.is_one(&w) {
        let y = ring.gcd(&w, &c)?;
        let fac = ring.div_exact_field(&w, &y)?;
        if !ring.is_one(&fac) {
            out.push((fac, i));
        }
        w = y;
        c = ring.div_exact_field(&c, &w)?;
        i += 1;
    }
    if !ring.is_one(&c) {
        // What remains has zero derivative, so it is a p-th power.
        let coeffs: Vec<FElem> = c
            .coeffs()
            .iter()
            .step_by(p)
            .map(|&a| field.pth_root(a))
            .collect();
        let root = ring.from_coeffs(coeffs);
        for (g, m) in squarefree(ring, &root)? {
            out.push((g, m * p as u32));
        }
    }
    Ok(out)
}

impl PolyRing<Gf> {
    fn div_exact_field(&self, a: &FPoly, b: &FPoly) -> Result<FPoly> {
        let (q, r) = self.div_rem(a, b)?;
        if !r.is_zero() {
            return Err(Error::Invariant("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// `f^q mod m`.
    fn frobenius_mod(&self, f: &FPoly, m: &FPoly) -> Result<FPoly> {
        self.modpow_u64(f, self.base().q(), m)
    }
}

/// Splits a squarefree monic polynomial into `(d, product of its irreducible
/// factors of degree d)`.
pub fn distinct_degree(ring: &PolyRing<Gf>, f: &FPoly) -> Result<Vec<(usize, FPoly)>> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = ring.x();
    let mut xq = x.clone();
    let mut d = 0;
    while rest.len() > 1 {
        d += 1;
        if 2 * d > rest.len() - 1 {
            out.push((rest.len() - 1, rest.clone()));
            break;
        }
        xq = ring.frobenius_mod(&ring.rem_monic(&xq, &rest)?, &rest)?;
        let g = ring.gcd(&rest, &ring.sub(&xq, &x))?;
        if g.len() > 1 {
            rest = ring.div_exact_field(&rest, &g)?;
            out.push((d, g));
        }
    }
    Ok(out)
}

/// Splits a product of distinct monic irreducibles of degree `d`.
pub fn equal_degree(ring: &PolyRing<Gf>, f: &FPoly, d: usize) -> Result<Vec<FPoly>> {
    let n = f.len() - 1;
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let field = ring.base();
    let mut candidates = SplitterStream::new(field, n);
    loop {
        let a = candidates.next_candidate(ring);
        let b = splitting_map(ring, &a, f, d)?;
        let g = ring.gcd(f, &b)?;
        if g.len() > 1 && g.len() < f.len() {
            let h = ring.div_exact_field(f, &g)?;
            let mut out = equal_degree(ring, &g, d)?;
            out.extend(equal_degree(ring, &h, d)?);
            return Ok(out);
        }
    }
}

/// Odd `q`: `a^((q^d-1)/2) - 1`. Even `q`: the absolute trace
/// `a + a^2 + ... + a^(2^(ed-1))` mod `f`.
fn splitting_map(ring: &PolyRing<Gf>, a: &FPoly, f: &FPoly, d: usize) -> Result<FPoly> {
    let field = ring.base();
    if field.p() == 2 {
        let steps = field.e() as usize * d;
        let mut term = ring.rem_monic(a, f)?;
        let mut acc = term.clone();
        for _ in 1..steps {
            term = ring.rem_monic(&ring.mul(&term, &term), f)?;
            acc = ring.add(&acc, &term);
        }
        Ok(acc)
    } else {
        let qd = BigUint::from(field.q()).pow(d as u32);
        let exp = (qd - BigUint::one()) / BigUint::from(2u32);
        let r = ring.modpow(a, &exp, f)?;
        Ok(ring.sub(&r, &ring.one()))
    }
}

enum SplitterStream {
    Enumerate { next: u64, q: u64, len: usize },
    Random { rng: ChaCha8Rng, q: u64, len: usize },
}

impl SplitterStream {
    fn new(field: &Gf, n: usize) -> Self {
        let q = field.q();
        if q <= ENUMERATION_MAX_Q && n <= ENUMERATION_MAX_DEGREE {
            // Skip the constants, which never split anything.
            SplitterStream::Enumerate { next: q, q, len: n }
        } else {
            SplitterStream::Random {
                rng: ChaCha8Rng::seed_from_u64(EDF_SEED),
                q,
                len: n,
            }
        }
    }

    fn next_candidate(&mut self, ring: &PolyRing<Gf>) -> FPoly {
        let field = ring.base();
        match self {
            SplitterStream::Enumerate { next, q, len } => {
                let mut code = *next;
                *next += 1;
                let mut coeffs = Vec::with_capacity(*len);
                for _ in 0..*len {
                    coeffs.push(field.from_u64(code % *q));
                    code /= *q;
                }
                ring.from_coeffs(coeffs)
            }
            SplitterStream::Random { rng, q, len } => {
                let coeffs = (0..*len).map(|_| field.from_u64(rng.gen_range(0..*q))).collect();
                ring.from_coeffs(coeffs)
            }
        }
    }
}

/// True when `f` has no factor of degree `<= deg f / 2`, i.e. when
/// `gcd(f, X^(q^i) - X) = 1` for every such `i`.
pub fn is_irreducible(ring: &PolyRing<Gf>, f: &FPoly) -> bool {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    let f = match ring.monic(f) {
        Ok(f) => f,
        Err(_) => return false,
    };
    let x = ring.x();
    let mut xq = x.clone();
    for _ in 1..=n / 2 {
        xq = match ring.frobenius_mod(&xq, &f) {
            Ok(v) => v,
            Err(_) => return false,
        };
        match ring.gcd(&f, &ring.sub(&xq, &x)) {
            Ok(g) if g.len() == 1 => {}
            _ => return false,
        }
    }
    true
}

/// Every monic irreducible polynomial of degree `d`, in code order.
pub fn monic_irreducibles(ring: &PolyRing<Gf>, d: usize) -> Vec<FPoly> {
    let field = ring.base();
    let q = field.q();
    let count = q.pow(d as u32);
    (0..count)
        .filter_map(|mut code| {
            let mut coeffs = Vec::with_capacity(d + 1);
            for _ in 0..d {
                coeffs.push(field.from_u64(code % q));
                code /= q;
            }
            coeffs.push(field.one());
            let f = ring.from_coeffs(coeffs);
            is_irreducible(ring, &f).then_some(f)
        })
        .collect()
}
