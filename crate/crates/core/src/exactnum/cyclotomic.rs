//! Exact arithmetic in cyclotomic fields Q(zeta_m).
//!
//! A `CycNumber` is a residue modulo the m-th cyclotomic polynomial Phi_m,
//! stored as exactly phi(m) rational coordinates. The remainder mod Phi_m is
//! unique, so equality of canonical forms is coefficient-wise comparison —
//! the property the identity verifier bottoms out in.
//!
//! Values of different orders are compared by lifting both to the least
//! common multiple order, substituting zeta_M^(M/m) for zeta_m. This is the
//! compatible system of roots zeta_m = zeta_M^(M/m); it preserves equality
//! of the algebraic numbers being denoted.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;

use super::poly::{self, QPoly};
use super::rational::Rational;
use crate::arith::{divisors, euler_phi, lcm};
use crate::error::{Error, Result};

/// Cache of cyclotomic polynomials, keyed by order, rational coefficients.
/// Read-mostly: every reduction and every fast-path product consults it.
static CYCLOTOMIC: LazyLock<RwLock<HashMap<u64, Arc<QPoly>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// The m-th cyclotomic polynomial as a rational-coefficient polynomial,
/// computed by exact division of x^m - 1 by the product of Phi_e over the
/// proper divisors e of m, and cached.
fn cyclo_poly(m: u64) -> Result<Arc<QPoly>> {
    if m == 0 {
        return Err(Error::ZeroCyclotomicOrder);
    }
    if let Some(p) = CYCLOTOMIC.read().unwrap().get(&m) {
        return Ok(Arc::clone(p));
    }
    let mut cache = CYCLOTOMIC.write().unwrap();
    // Fill ascending over divisors so every proper divisor is ready first.
    for e in divisors(m) {
        if cache.contains_key(&e) {
            continue;
        }
        let mut num: QPoly = vec![Rational::zero(); e as usize + 1];
        num[0] = -Rational::one();
        num[e as usize] = Rational::one();
        let mut den: QPoly = vec![Rational::one()];
        for d in divisors(e) {
            if d < e {
                den = poly::mul(&den, cache.get(&d).expect("divisor filled first"));
            }
        }
        let (quot, rem) = poly::divrem(&num, &den);
        debug_assert!(rem.is_empty(), "x^m - 1 must divide exactly");
        debug_assert_eq!(quot.len() as u64 - 1, euler_phi(e));
        cache.insert(e, Arc::new(quot));
    }
    Ok(Arc::clone(cache.get(&m).unwrap()))
}

/// The m-th cyclotomic polynomial Phi_m, monic with integer coefficients,
/// ascending by degree. Degree is phi(m).
pub fn cyclotomic_polynomial(m: u64) -> Result<Vec<BigInt>> {
    let p = cyclo_poly(m)?;
    Ok(p.iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.numer().clone()
        })
        .collect())
}

/// An element of the cyclotomic field Q(zeta_m) in canonical form.
///
/// `==` is representation equality and therefore requires equal orders;
/// use [`CycNumber::eq_lifted`] for the total cross-order predicate.
#[derive(Clone, PartialEq, Eq)]
pub struct CycNumber {
    order: u64,
    coeffs: Vec<Rational>,
}

impl CycNumber {
    fn from_poly(order: u64, mut p: QPoly) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let modulus = cyclo_poly(order).expect("order checked positive");
        poly::trim(&mut p);
        if poly::degree(&p).is_some_and(|d| d >= modulus.len() - 1) {
            let (_, rem) = poly::divrem(&p, &modulus);
            p = rem;
        }
        p.resize(euler_phi(order) as usize, Rational::zero());
        CycNumber { order, coeffs: p }
    }

    pub fn zero(order: u64) -> Self {
        Self::from_poly(order, Vec::new())
    }

    pub fn one(order: u64) -> Self {
        Self::from_poly(order, vec![Rational::one()])
    }

    pub fn from_rational(r: Rational, order: u64) -> Self {
        Self::from_poly(order, vec![r])
    }

    /// zeta_order^exp.
    pub fn root_of_unity(order: u64, exp: u64) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let e = (exp % order) as usize;
        let mut p = vec![Rational::zero(); e + 1];
        p[e] = Rational::one();
        Self::from_poly(order, p)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Canonical coordinates with respect to 1, zeta, ..., zeta^(phi(m)-1).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// The rational value, when the canonical form has no zeta component.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &CycNumber) -> Result<CycNumber> {
        self.check_order(rhs)?;
        Ok(self.add_unchecked(rhs))
    }

    pub fn sub(&self, rhs: &CycNumber) -> Result<CycNumber> {
        self.check_order(rhs)?;
        let mut coeffs = self.coeffs.clone();
        for (c, r) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= r;
        }
        Ok(CycNumber {
            order: self.order,
            coeffs,
        })
    }

    /// Product reduced modulo Phi_m. Both operands must share an order.
    pub fn mul(&self, rhs: &CycNumber) -> Result<CycNumber> {
        self.check_order(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    pub fn neg(&self) -> CycNumber {
        CycNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> CycNumber {
        CycNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on the
    /// representative polynomial and Phi_m.
    pub fn inv(&self) -> Result<CycNumber> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus = cyclo_poly(self.order)?;
        let mut rep = self.coeffs.clone();
        poly::trim(&mut rep);
        let (g, u, _) = poly::ext_gcd(&rep, &modulus);
        // Phi_m is irreducible and deg rep < deg Phi_m, so the gcd is a
        // nonzero rational constant.
        debug_assert_eq!(poly::degree(&g), Some(0));
        let scale = g[0].recip();
        let inv_poly: QPoly = u.iter().map(|c| c * &scale).collect();
        Ok(CycNumber::from_poly(self.order, inv_poly))
    }

    pub fn pow(&self, mut exp: u64) -> CycNumber {
        let mut base = self.clone();
        let mut acc = CycNumber::one(self.order);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Re-express in Q(zeta_target), substituting zeta_target^(target/m)
    /// for zeta_m. The current order must divide the target.
    pub fn lift_to(&self, target: u64) -> Result<CycNumber> {
        if target == 0 {
            return Err(Error::ZeroCyclotomicOrder);
        }
        if target % self.order != 0 {
            return Err(Error::NotLiftable {
                from: self.order,
                to: target,
            });
        }
        if target == self.order {
            return Ok(self.clone());
        }
        let step = (target / self.order) as usize;
        let mut p = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                p[i * step] = c.clone();
            }
        }
        Ok(CycNumber::from_poly(target, p))
    }

    /// True iff the two values denote the same algebraic number, comparing
    /// across orders by lifting both to the lcm order.
    pub fn eq_lifted(&self, other: &CycNumber) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let target = lcm(self.order, other.order);
        let a = self.lift_to(target).expect("lcm is a multiple");
        let b = other.lift_to(target).expect("lcm is a multiple");
        a.coeffs == b.coeffs
    }

    fn check_order(&self, rhs: &CycNumber) -> Result<()> {
        if self.order == rhs.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.order,
                right: rhs.order,
            })
        }
    }

    pub(crate) fn add_unchecked(&self, rhs: &CycNumber) -> CycNumber {
        debug_assert_eq!(self.order, rhs.order);
        let mut coeffs = self.coeffs.clone();
        for (c, r) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c += r;
        }
        CycNumber {
            order: self.order,
            coeffs,
        }
    }

    pub(crate) fn add_assign_unchecked(&mut self, rhs: &CycNumber) {
        debug_assert_eq!(self.order, rhs.order);
        for (c, r) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *c += r;
        }
    }

    pub(crate) fn mul_unchecked(&self, rhs: &CycNumber) -> CycNumber {
        debug_assert_eq!(self.order, rhs.order);
        let n = self.coeffs.len();
        if n == 1 {
            // Degree-1 field: plain rational multiplication.
            return CycNumber {
                order: self.order,
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        if n == 2 {
            // Quadratic field, the common case for small character orders:
            // with Phi = x^2 + c1 x + c0, reduce z^2 = -c0 - c1 z inline.
            let modulus = cyclo_poly(self.order).expect("order is positive");
            let (a0, a1) = (&self.coeffs[0], &self.coeffs[1]);
            let (b0, b1) = (&rhs.coeffs[0], &rhs.coeffs[1]);
            let cross = a1 * b1;
            let mut c0 = a0 * b0;
            let mut c1 = &(a0 * b1) + &(a1 * b0);
            if !cross.is_zero() {
                c0 -= &(&modulus[0] * &cross);
                c1 -= &(&modulus[1] * &cross);
            }
            return CycNumber {
                order: self.order,
                coeffs: vec![c0, c1],
            };
        }
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += &(a * b);
                }
            }
        }
        CycNumber::from_poly(self.order, prod)
    }
}

impl fmt::Display for CycNumber {
    /// Renders as "a0 + a1*z + a2*z^2 + ..." where z is zeta_order;
    /// zero terms are dropped and rationals print as "p/q".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self, self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(coeffs: &[i64]) -> Vec<BigInt> {
        coeffs.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn cyclotomic_base_cases() {
        assert_eq!(cyclotomic_polynomial(1).unwrap(), int(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2).unwrap(), int(&[1, 1]));
        assert!(cyclotomic_polynomial(0).is_err());
    }

    /// Oracle: divide x^4 - 1 by Phi_1 * Phi_2 with the raw polynomial
    /// division routine, independent of the cached recursion.
    #[test]
    fn cyclotomic_four_against_division_oracle() {
        let num: QPoly = vec![
            -Rational::one(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::one(),
        ];
        let phi1: QPoly = vec![-Rational::one(), Rational::one()];
        let phi2: QPoly = vec![Rational::one(), Rational::one()];
        let (expected, rem) = poly::divrem(&num, &poly::mul(&phi1, &phi2));
        assert!(rem.is_empty());
        let got: QPoly = cyclotomic_polynomial(4)
            .unwrap()
            .into_iter()
            .map(Rational::from)
            .collect();
        assert_eq!(got, expected);
        assert_eq!(got, vec![Rational::one(), Rational::zero(), Rational::one()]);
    }

    #[test]
    fn mul_identity_and_reduction() {
        let a = CycNumber::root_of_unity(4, 1);
        let one = CycNumber::one(4);
        assert_eq!(one.mul(&a).unwrap(), a);
        // zeta_4^2 = -1 under x^2 + 1
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq, CycNumber::from_rational(Rational::from(-1), 4));
    }

    #[test]
    fn mul_third_roots() {
        // (1 + z3)(1 + z3^2) = 1, using 1 + z3 + z3^2 = 0.
        let z = CycNumber::root_of_unity(3, 1);
        let a = CycNumber::one(3).add(&z).unwrap();
        let b = CycNumber::one(3).add(&z.mul(&z).unwrap()).unwrap();
        assert_eq!(a.mul(&b).unwrap(), CycNumber::one(3));
    }

    #[test]
    fn mul_order_mismatch_is_error() {
        let a = CycNumber::one(3);
        let b = CycNumber::one(4);
        assert!(matches!(a.mul(&b), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn inverse_examples() {
        let two = CycNumber::from_rational(Rational::from(2), 1);
        assert_eq!(
            two.inv().unwrap(),
            CycNumber::from_rational(Rational::from_ratio(1, 2), 1)
        );
        let z4 = CycNumber::root_of_unity(4, 1);
        assert_eq!(z4.inv().unwrap(), z4.neg());
        assert!(matches!(
            CycNumber::zero(12).inv(),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn eq_lifted_examples() {
        let one1 = CycNumber::one(1);
        let one4 = CycNumber::one(4);
        assert!(one1.eq_lifted(&one4));
        let z4 = CycNumber::root_of_unity(4, 1);
        assert!(!z4.eq_lifted(&z4.neg()));
        // zeta_6^2 equals zeta_3 once both sit in Q(zeta_6).
        let z6sq = CycNumber::root_of_unity(6, 2);
        let z3 = CycNumber::root_of_unity(3, 1);
        assert!(z6sq.eq_lifted(&z3));
    }

    #[test]
    fn roots_of_unity_have_exact_order() {
        for m in [1u64, 2, 3, 4, 5, 6, 8, 12] {
            let z = CycNumber::root_of_unity(m, 1);
            assert!(z.pow(m).eq_lifted(&CycNumber::one(1)), "zeta_{m}^{m} != 1");
            for k in 1..m {
                assert!(
                    !z.pow(k).eq_lifted(&CycNumber::one(1)),
                    "zeta_{m}^{k} == 1 too early"
                );
            }
        }
    }

    fn arb_cyc(order: u64) -> impl Strategy<Value = CycNumber> {
        let dim = euler_phi(order) as usize;
        proptest::collection::vec(-5i64..=5, dim).prop_map(move |v| {
            CycNumber::from_poly(order, v.into_iter().map(Rational::from).collect())
        })
    }

    fn arb_order() -> impl Strategy<Value = u64> {
        prop::sample::select(vec![1u64, 2, 3, 4, 5, 6, 8, 12])
    }

    fn arb_triple() -> impl Strategy<Value = (u64, CycNumber, CycNumber, CycNumber)> {
        arb_order().prop_flat_map(|m| (Just(m), arb_cyc(m), arb_cyc(m), arb_cyc(m)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        /// Field axioms, all as exact equalities of canonical forms.
        #[test]
        fn field_axioms((m, a, b, c) in arb_triple()) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            if !a.is_zero() {
                prop_assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), CycNumber::one(m));
            }
        }

        /// Lifting both operands to a common multiple order never changes
        /// an equality verdict.
        #[test]
        fn lifting_preserves_eq_verdict((m, a, b, _c) in arb_triple(), s in 1u64..=4) {
            let a_up = a.lift_to(m * s).unwrap();
            let b_up = b.lift_to(m * s).unwrap();
            prop_assert_eq!(a.eq_lifted(&b), a_up.eq_lifted(&b_up));
            prop_assert!(a.eq_lifted(&a_up));
        }
    }
}
