//! Exact symbolic kernel for the generalized symmetries and conservation
//! laws of the (3+1)-dimensional heat equation `U_t = U_xx + U_yy + U_zz`.
//!
//! The algebra is generic over an exact coefficient field ([`Scalar`]). The
//! aliases below fix it to arbitrary-precision rationals, which is what every
//! reported result uses.

pub mod conslaw;
pub mod error;
pub mod exact;
pub mod jet;
pub mod liealg;
pub mod linalg;
pub mod parse;
pub mod scalar;
pub mod symmetry;

pub use error::{Error, ParseError, Result};
pub use scalar::{Fp, Scalar};
pub use symmetry::{OperatorWord, WordRelation};

/// Arbitrary-precision rational number, always stored reduced.
pub type Rational = num_rational::BigRational;
pub type Polynomial = exact::Poly<Rational>;
pub type DiffFunction = jet::DiffFn<Rational>;
pub type ReductionCertificate = jet::ReductionCertificate<Rational>;
pub type PointVectorField = liealg::PointVectorField<Rational>;
pub type ConservedVector = conslaw::ConservedVector<Rational>;
