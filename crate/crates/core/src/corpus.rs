//! Seeded random matrices over `GF(q)[t]` for regression suites.
//!
//! The same seed always yields the same list. Five generation styles are
//! cycled so that unit eigenvalues, roots of unity and block structure
//! all appear with useful frequency.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::funfield::PolyT;
use crate::gf::{make_field, Gf};
use crate::poly::PolyRing;
use crate::polymat::{block_diag, det, MatT, Matrix};
use crate::ring::Ring;

pub const CORPUS_SEED: u64 = 0x7_ae7a_2026;
pub const CORPUS_SIZE: usize = 240;

/// `(p, e)` pairs cycled through by index.
pub const FIELDS: [(u64, u32); 6] = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)];

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Style {
    Uniform,
    Sparse,
    NearConstant,
    Block,
    LowDegree,
}

const STYLES: [Style; 5] = [
    Style::Uniform,
    Style::Sparse,
    Style::NearConstant,
    Style::Block,
    Style::LowDegree,
];

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub index: usize,
    pub style: Style,
    pub ring: PolyRing<Gf>,
    pub matrix: MatT,
}

impl CorpusEntry {
    pub fn q(&self) -> u64 {
        self.ring.base().q()
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Largest `t`-degree among the entries.
    pub fn max_entry_degree(&self) -> usize {
        self.matrix
            .rows()
            .flat_map(|r| r.iter())
            .filter_map(|c| c.degree())
            .max()
            .unwrap_or(0)
    }
}

struct Gen<'a> {
    rng: ChaCha8Rng,
    ring: &'a PolyRing<Gf>,
}

impl Gen<'_> {
    fn elem(&mut self, nonzero: bool) -> crate::gf::FElem {
        let q = self.ring.base().q();
        let lo = u64::from(nonzero);
        self.ring.base().from_u64(self.rng.gen_range(lo..q))
    }

    fn poly(&mut self, max_deg: usize) -> PolyT {
        let len = self.rng.gen_range(0..=max_deg + 1);
        let coeffs = (0..len).map(|_| self.elem(false)).collect();
        self.ring.from_coeffs(coeffs)
    }

    fn constant(&mut self) -> PolyT {
        let c = self.elem(false);
        self.ring.constant(c)
    }

    fn sparse(&mut self, max_deg: usize) -> PolyT {
        match self.rng.gen_range(0..4) {
            0 | 1 => self.ring.zero(),
            2 => self.constant(),
            _ => self.poly(max_deg),
        }
    }

    fn matrix(&mut self, d: usize, mut entry: impl FnMut(&mut Self) -> PolyT) -> MatT {
        let rows = (0..d).map(|_| (0..d).map(|_| entry(self)).collect()).collect();
        Matrix::from_rows(rows).unwrap()
    }

    fn near_constant(&mut self, d: usize) -> MatT {
        self.matrix(d, |g| {
            let c = g.constant();
            let s = match g.rng.gen_range(0..3) {
                0 => g.ring.zero(),
                1 => g.constant(),
                _ => g.poly(1),
            };
            let ts = g.ring.shift(&s, 1);
            g.ring.add(&c, &ts)
        })
    }

    fn draw(&mut self, style: Style) -> MatT {
        match style {
            Style::Uniform => {
                let d = self.rng.gen_range(1..=4);
                self.matrix(d, |g| g.poly(2))
            }
            Style::Sparse => {
                let d = self.rng.gen_range(2..=4);
                self.matrix(d, |g| g.sparse(2))
            }
            Style::NearConstant => {
                let d = self.rng.gen_range(1..=4);
                self.near_constant(d)
            }
            Style::Block => {
                let d1 = self.rng.gen_range(1..=2);
                let d2 = self.rng.gen_range(1..=2);
                let a = self.matrix(d1, |g| g.constant());
                let b = if self.rng.gen_bool(0.5) {
                    self.matrix(d2, |g| g.poly(2))
                } else {
                    self.near_constant(d2)
                };
                block_diag(self.ring, &a, &b)
            }
            Style::LowDegree => {
                let d = self.rng.gen_range(1..=2);
                self.matrix(d, |g| g.poly(1))
            }
        }
    }
}

/// `count` matrices with nonzero determinant. Entry `i` lives over
/// `FIELDS[i % 6]` and uses style `STYLES[(i / 6) % 5]`.
pub fn corpus(seed: u64, count: usize) -> Vec<CorpusEntry> {
    let rings: Vec<PolyRing<Gf>> = FIELDS
        .iter()
        .map(|&(p, e)| PolyRing::new(make_field(p, e, None).expect("corpus field")))
        .collect();
    (0..count)
        .map(|index| {
            let ring = &rings[index % FIELDS.len()];
            let style = STYLES[(index / FIELDS.len()) % STYLES.len()];
            let mut g = Gen {
                rng: ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)),
                ring,
            };
            let matrix = loop {
                let m = g.draw(style);
                if !det(ring, &m).is_zero() {
                    break m;
                }
            };
            CorpusEntry {
                index,
                style,
                ring: ring.clone(),
                matrix,
            }
        })
        .collect()
}
