//! Exact scalars, linear algebra and chart calculus.

pub mod calculus;
pub mod chart;
pub mod frame;
pub mod linalg;
pub mod poly;
pub mod ratfn;
pub mod tensor;

pub type Rational = num_rational::BigRational;

pub use calculus::*;
pub use chart::{parse_rational, Chart, ChartRef, Point};
pub use linalg::{determinant, inverse, linear_solve, null_space, rank, Matrix};
pub use poly::{Monomial, MultiPoly};
pub use ratfn::RationalFn;
pub use tensor::*;
