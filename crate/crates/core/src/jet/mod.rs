//! Differential functions linear in U, total derivatives, and reduction
//! modulo the heat equation `U_t = U_xx + U_yy + U_zz`.

mod deriv;
mod difffn;
mod normal;

pub use deriv::DerivIndex;
pub use difffn::DiffFn;
pub use normal::{diff_equal, heat_equation, residual, ReductionCertificate};
