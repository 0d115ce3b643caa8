//! Exact arithmetic: polynomials and rational functions in q, truncated power
//! series, and multivariate polynomials in indexed variables.

pub mod mpoly;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod series;

pub use mpoly::{mpoly_substitute, Monomial, MultiPolynomial, MPoly, Var, VarKind, ZMultiPolynomial};
pub use poly::{DensePoly, QPolynomial, Scalar, ZPolynomial};
pub use ratfunc::QRationalFunction;
pub use series::TruncatedSeries;
