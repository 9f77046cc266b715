//! Finite-level checks of the alternating-sum machinery behind the Euler
//! generating functions, restricted to rational-valued characters.
//!
//! Two kinds of check live here. The shift identity
//!
//!   sum_{j<M} (-1)^j f(j+s) + sum_{j<M} (-1)^j f(j)
//!     = sum_{a<s} (-1)^a (f(a) + f(M+a))
//!
//! holds exactly for odd s and odd M with f(z) = chi(z) z^n; it is the
//! finite-level shape of the functional equation that produces the
//! generating functions. And the alternating partial sums
//!
//!   S_N = sum_{j < d p^N} (-1)^j chi(j) j^n
//!
//! converge p-adically to E_{n,chi}; a [`ValuationTrace`] records S_N and
//! the valuation v_p(S_N - E_{n,chi}) level by level.
//!
//! Characters here must be rational-valued (order <= 2): valuations of
//! general cyclotomic values would need a choice of embedding into the
//! p-adic world, which this crate deliberately does not model. The prime p
//! must also be coprime to the modulus d, so that reduction mod d of the
//! summation range is unambiguous; traces carry that assumption with them.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{gcd, is_prime};
use crate::dirichlet::DirichletCharacter;
use crate::error::{Error, Result};
use crate::euler::euler_numbers;
use crate::exactnum::{binomial, Rational};

/// A p-adic valuation: finite, or infinite for the value zero.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    /// Total order with Infinite on top, matching "p-adically smaller means
    /// larger valuation".
    pub fn at_least(self, other: Valuation) -> bool {
        match (self, other) {
            (Valuation::Infinite, _) => true,
            (_, Valuation::Infinite) => false,
            (Valuation::Finite(a), Valuation::Finite(b)) => a >= b,
        }
    }
}

impl std::fmt::Display for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// v_p(q) = v_p(numerator) - v_p(denominator); infinite for q = 0.
pub fn vp(q: &Rational, p: u64) -> Valuation {
    assert!(is_prime(p), "vp requires a prime, got {p}");
    if q.is_zero() {
        return Valuation::Infinite;
    }
    Valuation::Finite(int_valuation(q.numer(), p) - int_valuation(q.denom(), p))
}

fn int_valuation(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&n, &p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Outcome of one finite-level shift-identity check.
#[derive(Clone, Debug)]
pub struct ShiftCheckReport {
    pub modulus: u64,
    pub char_index: usize,
    pub exponent: usize,
    pub shift: u64,
    pub limit: u64,
    pub lhs: Rational,
    pub rhs: Rational,
    pub pass: bool,
}

/// Checks, with f(z) = chi(z) z^n and 0^0 = 1, that
/// sum_{j<M} (-1)^j (f(j+s) + f(j)) equals sum_{a<s} (-1)^a (f(a) + f(M+a))
/// as an exact rational identity. Both s and M must be odd.
pub fn finite_level_shift_check(
    chi: &DirichletCharacter,
    n: usize,
    s: u64,
    m: u64,
) -> Result<ShiftCheckReport> {
    if !chi.is_rational_valued() {
        return Err(Error::UnsupportedCharacter(chi.order()));
    }
    if s % 2 == 0 || s == 0 {
        return Err(Error::EvenShift(s));
    }
    if m % 2 == 0 || m == 0 {
        return Err(Error::EvenLimit(m));
    }

    let f = |z: u64| -> Result<Rational> {
        let chi_z = chi.rational_value(z as i64)?;
        if chi_z.is_zero() {
            return Ok(Rational::zero());
        }
        Ok(chi_z * int_pow(z, n))
    };

    let mut lhs = Rational::zero();
    for j in 0..m {
        let term = f(j + s)? + f(j)?;
        if j % 2 == 0 {
            lhs += &term;
        } else {
            lhs -= &term;
        }
    }
    let mut rhs = Rational::zero();
    for a in 0..s {
        let term = f(a)? + f(m + a)?;
        if a % 2 == 0 {
            rhs += &term;
        } else {
            rhs -= &term;
        }
    }

    let pass = lhs == rhs;
    Ok(ShiftCheckReport {
        modulus: chi.modulus(),
        char_index: chi.index(),
        exponent: n,
        shift: s,
        limit: m,
        lhs,
        rhs,
        pass,
    })
}

/// z^n with 0^0 = 1.
fn int_pow(z: u64, n: usize) -> Rational {
    Rational::from_integer(BigInt::from(z).pow(n as u32))
}

/// One level of a convergence trace.
#[derive(Clone, Debug)]
pub struct TraceLevel {
    pub level: u32,
    pub partial_sum: Rational,
    pub valuation: Valuation,
}

/// Partial sums S_N = sum_{j < d p^N} (-1)^j chi(j) j^n and the valuations
/// v_p(S_N - E_{n,chi}), for N = 1..=levels.
#[derive(Clone, Debug)]
pub struct ValuationTrace {
    pub prime: u64,
    pub modulus: u64,
    pub char_index: usize,
    pub exponent: usize,
    pub euler_value: Rational,
    pub levels: Vec<TraceLevel>,
}

impl ValuationTrace {
    /// The trace assumes gcd(p, d) = 1; recorded so report consumers see
    /// the restriction alongside the data.
    pub const COPRIMALITY_NOTE: &'static str = "requires gcd(prime, modulus) = 1";
}

/// Computes a [`ValuationTrace`] for a rational-valued character, an odd
/// prime p coprime to the modulus, and exponent n.
pub fn convergence_trace(
    chi: &DirichletCharacter,
    n: usize,
    p: u64,
    levels: u32,
) -> Result<ValuationTrace> {
    if !chi.is_rational_valued() {
        return Err(Error::UnsupportedCharacter(chi.order()));
    }
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if gcd(p, chi.modulus()) != 1 {
        return Err(Error::PrimeDividesModulus {
            p,
            d: chi.modulus(),
        });
    }
    if levels == 0 {
        return Err(Error::ZeroLevels);
    }

    let euler_value = euler_numbers(chi, n)
        .value(n)
        .as_rational()
        .expect("rational-valued character yields rational Euler numbers");

    let mut out = Vec::with_capacity(levels as usize);
    let mut length = BigInt::from(chi.modulus());
    for level in 1..=levels {
        length *= p;
        let partial_sum = alternating_power_sum_upto(chi, n, &length);
        let valuation = vp(&(&partial_sum - &euler_value), p);
        out.push(TraceLevel {
            level,
            partial_sum,
            valuation,
        });
    }
    Ok(ValuationTrace {
        prime: p,
        modulus: chi.modulus(),
        char_index: chi.index(),
        exponent: n,
        euler_value,
        levels: out,
    })
}

/// sum_{j=0}^{L-1} (-1)^j chi(j) j^n for a rational-valued chi, by folding
/// over the period 2d of (-1)^j chi(j): complete blocks contribute
/// polynomially in the block index via exact power sums, and the tail is
/// summed directly. Exact for any L, cheap even for huge L.
pub fn alternating_power_sum_upto(chi: &DirichletCharacter, n: usize, length: &BigInt) -> Rational {
    use num_traits::ToPrimitive;
    let d = chi.modulus();
    let period = BigInt::from(2 * d);
    let (blocks, tail) = num_integer::Integer::div_rem(length, &period);
    let tail = tail.to_u64().expect("remainder below 2d fits in u64");

    let eps: Vec<Rational> = (0..2 * d)
        .map(|r| {
            let v = chi
                .rational_value(r as i64)
                .expect("caller checked rational-valued");
            if r % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect();

    // Complete blocks: sum_r eps_r sum_{q<blocks} (2d q + r)^n
    //   = sum_r eps_r sum_i C(n,i) (2d)^i r^{n-i} P_i(blocks).
    let mut total = Rational::zero();
    if !blocks.is_zero() {
        let power_sums = power_sums_below(&blocks, n);
        for (r, eps_r) in eps.iter().enumerate() {
            if eps_r.is_zero() {
                continue;
            }
            let mut inner = Rational::zero();
            for (i, p_i) in power_sums.iter().enumerate() {
                // r^{n-i} vanishes for r = 0 unless i = n (0^0 = 1).
                let c = Rational::from_integer(
                    binomial(n, i) * BigInt::from(2 * d).pow(i as u32)
                        * BigInt::from(r as u64).pow((n - i) as u32),
                );
                inner += &(&c * p_i);
            }
            total += &(eps_r * &inner);
        }
    }

    // Tail: j = 2d*blocks + r for r < tail.
    let offset = Rational::from_integer(&blocks * BigInt::from(2 * d));
    for (r, eps_r) in eps.iter().take(tail as usize).enumerate() {
        if eps_r.is_zero() {
            continue;
        }
        let base = &offset + &Rational::from(r as u64);
        let j_pow = if n == 0 {
            Rational::one()
        } else if base.is_zero() {
            Rational::zero()
        } else {
            base.pow(n as u32)
        };
        total += &(eps_r * &j_pow);
    }
    total
}

/// P_i(q) = sum_{t=0}^{q-1} t^i for i = 0..=n, with 0^0 = 1, via the
/// telescoping recurrence sum_{j<=i} C(i+1, j) P_j = q^{i+1}.
fn power_sums_below(q: &BigInt, n: usize) -> Vec<Rational> {
    let q = Rational::from_integer(q.clone());
    let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut acc = q.pow(i as u32 + 1);
        for (j, pj) in out.iter().enumerate() {
            acc = acc - Rational::from_integer(binomial(i + 1, j)) * pj;
        }
        out.push(acc / Rational::from((i + 1) as u64));
    }
    out
}
