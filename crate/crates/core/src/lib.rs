//! Exact linear algebra over the rationals: canonical forms, matrix
//! pencils, and the stability theory of linear differential systems.
//!
//! Everything is computed in exact arithmetic — arbitrary-precision
//! rationals and polynomials over them. No floating point anywhere.

pub mod canonical;
pub mod matrices;
pub mod numeric;
pub mod oscillations;
pub mod pencil;
pub mod ring;
pub mod smith;

pub use canonical::{ElementaryDivisorList, JordanForm, RationalCanonicalForm};
pub use matrices::{Matrix, SymmetricMatrix};
pub use numeric::{FactorConfig, Polynomial, Rational, RootInterval};
pub use pencil::{Inertia, Pencil, PencilInvariants};
pub use smith::SmithDecomposition;
