//! Exact scalar and polynomial arithmetic: arbitrary-precision rationals,
//! dense univariate polynomials, factorization over the rationals, and
//! Sturm-sequence real-root isolation.

mod factor;
mod polynomial;
mod rational;
mod roots;

pub use factor::{factor_over_rationals, squarefree_decomposition, FactorConfig, IrreducibleFactorization};
pub use polynomial::{parse_polynomial, poly_gcd, squarefree_part, Polynomial};
pub use rational::{int, parse_rational, rat, rational_content, Rational};
pub use roots::{isolate_real_roots, RootInterval};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("ZeroPolynomial: operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("FactorDegreeExceeded: squarefree component of degree {0} exceeds bound {1}")]
    FactorDegreeExceeded(usize, usize),
    #[error("IntegerFactorizationExceeded: trial division bound {0} hit while factoring {1}")]
    IntegerFactorizationExceeded(u64, String),
    #[error("BadPolynomial: {0}")]
    Parse(String),
}
