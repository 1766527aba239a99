use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. The display form carries the
/// originating module as a prefix.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gf: {0} is not prime")]
    NotPrime(u64),
    #[error("gf: modulus is reducible over GF({0})")]
    ReducibleModulus(u64),
    #[error("gf: modulus must be monic of degree {expected}")]
    DegreeMismatch { expected: u32 },
    #[error("gf: zero has no multiplicative order")]
    ZeroElement,
    #[error("gf: the root of X is zero")]
    RootIsZero,
    #[error("gf: polynomial is reducible")]
    Reducible,
    #[error("gf: {0} exceeds the 2^63 cap")]
    TooLarge(String),

    #[error("polycore: gcd(0, 0) is undefined")]
    BothZero,
    #[error("polycore: modulus must be monic of degree >= 1")]
    NonMonicModulus,
    #[error("{0}: zero input")]
    ZeroInput(&'static str),
    #[error("polycore: division by zero")]
    DivisionByZero,

    #[error("newton: polynomial is not monic")]
    NonMonic,
    #[error("{0}: polynomial has a zero root")]
    ZeroRoot(&'static str),
    #[error("newton: coefficients are not in F[t]")]
    NonIntegral,

    #[error("spectral: constant term is zero")]
    ZeroConstantTerm,
    #[error("spectral: weight for residue order {order} is {weight}, expected negative")]
    NonNegativeWeight { order: u64, weight: i64 },

    #[error("dynamics: matrix has zero determinant")]
    SingularMatrix,
    #[error("dynamics: B - I is singular")]
    Singular,
    #[error("dynamics: enumeration of {needed} vectors exceeds cap {cap}")]
    CapExceeded { needed: String, cap: u64 },

    #[error("zeta: zeta function is not in the algebraic case")]
    NotAlgebraic,
    #[error("zeta: {0} root-of-unity eigenvalues exceed the subset cap")]
    TooManyRootsOfUnity(usize),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors raised because an input exceeded a size cap.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::TooLarge(_) | Error::CapExceeded { .. } | Error::TooManyRootsOfUnity(_)
        )
    }
}
