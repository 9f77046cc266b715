//! Exact arithmetic scalars: arbitrary-precision rationals and elements of
//! cyclotomic fields Q(zeta_m). Everything downstream builds on these; no
//! floating point appears anywhere.

mod cyclotomic;
mod poly;
mod rational;

pub use crate::arith::euler_phi;
pub use cyclotomic::{cyclotomic_polynomial, CycNumber};
pub use rational::{binomial, factorial, Rational};
