//! Exact arithmetic for linear endomorphisms of the positive-characteristic
//! torus `(F((1/t)) / F[t])^d`.
//!
//! Given a square matrix `A` over `F[t]` with `F = GF(q)` and `det A != 0`,
//! this crate computes
//!
//! - the topological entropy `h(A) = E log q` from the Newton polygon of the
//!   characteristic polynomial,
//! - the isolated fixed-point counts `N_k(A) = |det(A^k - I)|`, both directly
//!   and from spectral data (root-of-unity orders, unit residue orders and
//!   grouped `p`-term weights),
//! - the classification of the Artin-Mazur zeta function
//!   `exp(sum N_k z^k / k)` as algebraic (with a canonical closed form) or
//!   transcendental (with a certificate), and exact truncations of its power
//!   series.
//!
//! Absolute values are carried symbolically as exponents of `q`; nothing in
//! the pipeline touches floating point except the decimal rendering of
//! `log q`.

pub mod corpus;
pub mod dynamics;
pub mod error;
pub mod funfield;
pub mod gf;
pub mod newton;
pub mod poly;
pub mod polymat;
pub mod ring;
pub mod spectral;
pub mod zeta;

pub use error::{Error, Result};
pub use gf::{make_field, FElem, Gf};
pub use poly::{Poly, PolyRing};
pub use ring::{Domain, Field, Ring};
