//! Sparse multivariate polynomials, box-truncated Taylor jets and the small
//! determinants built on them.

mod linalg;
mod mpoly;
mod multi_index;
mod series;

pub use linalg::{determinant, jacobian_det, jacobian_matrix, poly_determinant};
pub use mpoly::MPoly;
pub use multi_index::{binomial, factorial, falling_factorial, BoxIter, MultiIndex};
pub use series::{series_invert_box, series_mul_poly_truncated, series_mul_truncated, TruncSeries};
