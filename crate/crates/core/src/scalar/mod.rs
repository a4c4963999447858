//! Exact scalar field: rational functions in `u = q^{1/2}` over `Q(i)`.

mod cyclotomic;
mod gaussian;
mod laurent;
mod qcomb;
mod ratfunc;

pub use gaussian::GaussianRational;
pub use laurent::LaurentPoly;
pub use qcomb::{q_binomial, q_integer, q_integer_factorial, q_pochhammer, q_pochhammer_ratio};
pub use ratfunc::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative length {0}")]
    NegativeLength(i64),
}
