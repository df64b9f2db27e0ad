//! Multidimensional Lagrange and Hermite interpolation on zero sets of
//! polynomial systems, built from local (Grothendieck) residues.
//!
//! The nodes of an interpolation problem are common zeros `w` of a square
//! system `p = (p_1, ..., p_n)`, each with an order vector `d_w`. At every node
//! the system factors as `p = H_w(z) * ((z_1-w_1)^d_1, ..., (z_n-w_n)^d_n)`, and
//! the interpolant is assembled from `det H_w` and the Taylor coefficients of
//! `1 / det H_w` at `w`.
//!
//! All algorithms are generic over [`numeric::Field`]; the aliases below fix
//! the two backends used by the command line tool.

pub mod cli;
pub mod error;
pub mod interpolation;
pub mod numeric;
pub mod oracle;
pub mod poly;
pub mod residue;

#[cfg(test)]
mod test_support;

pub use error::{Error, Result};
pub use numeric::{Backend, Field, GaussianRational, Scalar, Tolerance};
pub use poly::{MPoly, MultiIndex, TruncSeries};

pub use num_complex::Complex64;

pub type ExactPoly = MPoly<GaussianRational>;
pub type FloatPoly = MPoly<Complex64>;
pub type ExactSeries = TruncSeries<GaussianRational>;
pub type FloatSeries = TruncSeries<Complex64>;
pub type ExactNode = residue::Node<GaussianRational>;
pub type FloatNode = residue::Node<Complex64>;
pub type ExactProblem = interpolation::InterpProblem<GaussianRational>;
pub type FloatProblem = interpolation::InterpProblem<Complex64>;
