//! Generalized Jacobi functions and their fractional calculus.
//!
//! The crate covers Jacobi polynomials with real parameters, Gauss-Jacobi
//! quadrature, generalized Jacobi functions (GJFs) with closed-form
//! Riemann-Liouville and Caputo derivatives, weighted projections, and
//! diagonal Petrov-Galerkin solvers for fractional initial and boundary
//! value problems.

pub mod error;
pub mod fracops;
pub mod function;
pub mod gjf;
pub mod jacobi;
pub mod solvers;
pub mod specfun;

pub use error::{Error, Result};
pub use function::{RealFn, Singular};
