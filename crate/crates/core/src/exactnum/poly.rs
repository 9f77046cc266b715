//! Internal dense univariate polynomials over the rationals.
//!
//! Coefficients ascend by degree; the zero polynomial is the empty vector.
//! Only what the cyclotomic layer needs: multiplication, Euclidean division,
//! and the extended Euclidean algorithm for inverses modulo an irreducible.

use super::rational::Rational;

pub(crate) type QPoly = Vec<Rational>;

pub(crate) fn trim(p: &mut QPoly) {
    while p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
}

pub(crate) fn degree(p: &QPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub(crate) fn mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += &(ai * bj);
        }
    }
    trim(&mut out);
    out
}

/// Euclidean division: returns (quotient, remainder) with deg r < deg d.
/// Panics on a zero divisor.
pub(crate) fn divrem(num: &QPoly, den: &QPoly) -> (QPoly, QPoly) {
    let dd = degree(den).expect("polynomial division by zero");
    let lead_inv = den[dd].recip();
    let mut rem = num.clone();
    trim(&mut rem);
    if degree(&rem).map_or(true, |dn| dn < dd) {
        return (Vec::new(), rem);
    }
    let dn = degree(&rem).unwrap();
    let mut quot = vec![Rational::zero(); dn - dd + 1];
    while let Some(dr) = degree(&rem) {
        if dr < dd {
            break;
        }
        let factor = &rem[dr] * &lead_inv;
        let shift = dr - dd;
        for (i, di) in den.iter().enumerate() {
            if !di.is_zero() {
                rem[shift + i] -= &(&factor * di);
            }
        }
        quot[shift] = factor;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Extended Euclidean algorithm: returns (g, u, v) with u*a + v*b = g.
pub(crate) fn ext_gcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: QPoly = vec![Rational::one()];
    let mut s1: QPoly = Vec::new();
    let mut t0: QPoly = Vec::new();
    let mut t1: QPoly = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let next_s = sub(&s0, &mul(&q, &s1));
        let next_t = sub(&t0, &mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, next_s);
        t0 = std::mem::replace(&mut t1, next_t);
    }
    (r0, s0, t0)
}

fn sub(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, ai) in a.iter().enumerate() {
        out[i] += ai;
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] -= bi;
    }
    trim(&mut out);
    out
}
