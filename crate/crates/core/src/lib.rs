//! Exact computational algebra for matrix groups over Laurent polynomial
//! rings and their cyclotomic quotients.
//!
//! The library is organized around five layers:
//!
//! * [`laurent`] — sparse multivariate Laurent polynomials over arbitrary
//!   precision integers, the ring `R = Z[x1,x1^-1,...,xk,xk^-1]` together
//!   with the extra Laurent variable `t`.
//! * [`trunc`] — the shifted adic frame `Z[a1..ak, s]/((a)^c + (s)^D)`
//!   obtained from `x_i = 1 + a_i`, `t = 1 + s`; home of augmentation-order
//!   measurements and `(t-1)`-series coefficients.
//! * [`hnf`] / [`lattice`] — exact integer linear algebra (Hermite and Smith
//!   normal forms) and the lattice realization of the cyclotomic ideal
//!   `I(q)`, the product `I(q)*Sigma`, and powers of the augmentation ideal.
//! * [`quotient`] — the residue ring `S(q) = R/I(q)*Sigma` with exact
//!   structure-constant arithmetic, and Laurent polynomials in `t` over it.
//! * [`groups`] — the matrix generators, group words, evaluation over every
//!   supported coefficient ring, the `u*I + N` decomposition, power formula
//!   and order computation.

pub mod groups;
pub mod hnf;
pub mod lattice;
pub mod laurent;
pub mod matrix;
pub mod quotient;
pub mod rng;
pub mod trunc;

use thiserror::Error;

/// Errors produced by the algebra kernel.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("matrix dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("ring context mismatch: {0}")]
    ContextMismatch(String),

    #[error("assignment value for variable {0} is not invertible")]
    NonInvertibleAssignment(String),

    #[error("polynomial involves t where a t-free element is required")]
    UnexpectedT,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("generator rank must be at least 2, got {0}")]
    RankTooSmall(usize),

    #[error("rank {rank} exceeds the supported bound {max} for this operation")]
    RankTooLarge { rank: usize, max: usize },

    #[error("rank restriction violated: rank {rank} requires p + 1 >= rank, but q = {q} has p = {p}")]
    RankRestriction { rank: usize, q: u64, p: u64 },

    #[error("matrix is not of the form u*I + [lambda_i v]: {0}")]
    NotDecomposable(String),

    #[error(
        "ideal lattice did not stabilize below unit bound {ceiling}; \
         last two bases had {prev_rows} and {last_rows} rows"
    )]
    Unsaturated {
        ceiling: u32,
        prev_rows: usize,
        last_rows: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cache io: {0}")]
    CacheIo(#[from] std::io::Error),

    #[error("cache file malformed: {0}")]
    CacheFormat(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
