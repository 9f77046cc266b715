//! Exact computation of generalized Euler numbers and polynomials attached
//! to Dirichlet characters of odd modulus, alternating generalized power
//! sums, and zero-error verification of the three-variable symmetry
//! identities relating them.
//!
//! Everything is exact: scalars are arbitrary-precision rationals or
//! elements of cyclotomic fields, generating functions are truncated formal
//! power series over those fields, and every verification verdict is an
//! equality of canonical forms. No floating point appears anywhere.
//!
//! Module map:
//!
//! - [`exactnum`]: rationals and cyclotomic field elements.
//! - [`dirichlet`]: characters of odd modulus, conductor, primitivity.
//! - [`series`]: truncated exponential generating functions.
//! - [`euler`]: E_{n,chi}, E_{n,chi}(x), T_k(n,chi), and the quotient
//!   identity linking them.
//! - [`symmetry`]: the nine expansion forms and the eight theorem
//!   verifiers, by exhaustive grid evaluation.
//! - [`fermionic`]: finite-level shift-identity checks and p-adic
//!   convergence traces for rational-valued characters.

pub mod arith;
pub mod dirichlet;
pub mod error;
pub mod euler;
pub mod exactnum;
pub mod fermionic;
pub mod series;
pub mod symmetry;

pub use error::{Error, Result};
