//! Truncated formal power series in one variable over a fixed cyclotomic
//! field — the computational carrier of every generating function here.
//!
//! Coefficients are stored plain: `coeffs[n]` is the coefficient of t^n.
//! A function written as sum a_n t^n/n! therefore stores a_n/n!, and
//! [`TruncSeries::coeff_egf`] recovers a_n as n! * coeffs[n]. Products and
//! quotients are simplest in plain form; the factorial only appears at
//! extraction time.
//!
//! Everything is formal: truncation at a fixed order N, no convergence
//! questions anywhere.

use crate::error::{Error, Result};
use crate::exactnum::{factorial, CycNumber, Rational};

/// A power series truncated after t^N, with coefficients in Q(zeta_m).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    field_order: u64,
    coeffs: Vec<CycNumber>,
}

impl TruncSeries {
    /// The zero series at truncation order n.
    pub fn zero(truncation: usize, field_order: u64) -> Self {
        TruncSeries {
            field_order,
            coeffs: vec![CycNumber::zero(field_order); truncation + 1],
        }
    }

    /// The constant series 1.
    pub fn one(truncation: usize, field_order: u64) -> Self {
        let mut s = Self::zero(truncation, field_order);
        s.coeffs[0] = CycNumber::one(field_order);
        s
    }

    /// Builds a series from plain coefficients c_n (coefficient of t^n).
    pub fn from_coeffs(coeffs: Vec<CycNumber>, field_order: u64) -> Result<Self> {
        for c in &coeffs {
            if c.order() != field_order {
                return Err(Error::OrderMismatch {
                    left: c.order(),
                    right: field_order,
                });
            }
        }
        assert!(!coeffs.is_empty(), "a truncated series has at least one coefficient");
        Ok(TruncSeries {
            field_order,
            coeffs,
        })
    }

    /// The truncated exponential e^{ct}: coefficient of t^n is c^n/n!.
    pub fn exp_arg(c: &Rational, truncation: usize, field_order: u64) -> Self {
        let mut coeffs = Vec::with_capacity(truncation + 1);
        let mut acc = Rational::one();
        for n in 0..=truncation {
            if n > 0 {
                acc = acc * c / Rational::from(n as u64);
            }
            coeffs.push(CycNumber::from_rational(acc.clone(), field_order));
        }
        TruncSeries {
            field_order,
            coeffs,
        }
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn field_order(&self) -> u64 {
        self.field_order
    }

    /// Plain coefficient of t^n.
    pub fn coeff(&self, n: usize) -> Result<&CycNumber> {
        self.coeffs.get(n).ok_or(Error::CoefficientIndex {
            index: n,
            truncation: self.truncation_order(),
        })
    }

    /// EGF coefficient a_n = n! * (plain coefficient of t^n).
    pub fn coeff_egf(&self, n: usize) -> Result<CycNumber> {
        let c = self.coeff(n)?;
        Ok(c.scale(&Rational::from_integer(factorial(n))))
    }

    pub fn add(&self, rhs: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.add_unchecked(b))
            .collect();
        Ok(TruncSeries {
            field_order: self.field_order,
            coeffs,
        })
    }

    /// Adds a constant to the t^0 coefficient.
    pub fn add_constant(&self, c: &Rational) -> TruncSeries {
        let mut out = self.clone();
        out.coeffs[0] = out
            .coeffs[0]
            .add_unchecked(&CycNumber::from_rational(c.clone(), self.field_order));
        out
    }

    /// Scales every coefficient by a field element.
    pub fn scale(&self, c: &CycNumber) -> Result<TruncSeries> {
        if c.order() != self.field_order {
            return Err(Error::OrderMismatch {
                left: c.order(),
                right: self.field_order,
            });
        }
        let coeffs = self.coeffs.iter().map(|a| a.mul_unchecked(c)).collect();
        Ok(TruncSeries {
            field_order: self.field_order,
            coeffs,
        })
    }

    pub fn scale_rational(&self, r: &Rational) -> TruncSeries {
        TruncSeries {
            field_order: self.field_order,
            coeffs: self.coeffs.iter().map(|a| a.scale(r)).collect(),
        }
    }

    /// Cauchy product truncated at the shared order.
    pub fn mul(&self, rhs: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(rhs)?;
        let n = self.truncation_order();
        let mut coeffs = vec![CycNumber::zero(self.field_order); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j].add_assign_unchecked(&a.mul_unchecked(b));
                }
            }
        }
        Ok(TruncSeries {
            field_order: self.field_order,
            coeffs,
        })
    }

    /// The unique q with q * den = num up to the truncation order, by
    /// forward substitution. The denominator needs a nonzero constant term.
    pub fn div(&self, den: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(den)?;
        if den.coeffs[0].is_zero() {
            return Err(Error::NonUnitDenominator);
        }
        let lead_inv = den.coeffs[0].inv().expect("checked nonzero");
        let n = self.truncation_order();
        let mut q: Vec<CycNumber> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut acc = self.coeffs[i].clone();
            for (j, qj) in q.iter().enumerate() {
                if !qj.is_zero() && !den.coeffs[i - j].is_zero() {
                    acc = acc
                        .sub(&qj.mul_unchecked(&den.coeffs[i - j]))
                        .expect("orders match");
                }
            }
            q.push(acc.mul_unchecked(&lead_inv));
        }
        Ok(TruncSeries {
            field_order: self.field_order,
            coeffs: q,
        })
    }

    fn check_compatible(&self, rhs: &TruncSeries) -> Result<()> {
        if self.truncation_order() != rhs.truncation_order() {
            return Err(Error::TruncationMismatch {
                left: self.truncation_order(),
                right: rhs.truncation_order(),
            });
        }
        if self.field_order != rhs.field_order {
            return Err(Error::OrderMismatch {
                left: self.field_order,
                right: rhs.field_order,
            });
        }
        Ok(())
    }
}
