//! Generalized Euler numbers E_{n,chi}, generalized Euler polynomials
//! E_{n,chi}(x), alternating generalized power sums T_k(n,chi), and the
//! quotient identity tying them together.
//!
//! The numbers come from the exponential generating function
//!
//!   2 * sum_{a=0}^{d-1} (-1)^a chi(a) e^{at} / (e^{dt} + 1)
//!     = sum_n E_{n,chi} t^n/n!,
//!
//! realized as a truncated series quotient; the denominator has constant
//! term 2, so the division is always defined. The polynomials are the
//! binomial shift E_{n,chi}(x) = sum_k C(n,k) E_{k,chi} x^{n-k}, accepting
//! any rational x. The power sums are the finite sums
//! T_k(n,chi) = sum_{a=0}^{n} (-1)^a chi(a) a^k with the convention
//! 0^0 = 1 (only visible for d = 1, where chi(0) = 1).
//!
//! Euler tables are cached per (modulus, character index) and rebuilt when
//! a higher degree is requested; verification sweeps hit the same character
//! thousands of times.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;
use num_traits::One;

use crate::dirichlet::DirichletCharacter;
use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial, CycNumber, Rational};
use crate::series::TruncSeries;

/// Values E_{0,chi} .. E_{N,chi} for one character.
#[derive(Clone, Debug)]
pub struct EulerTable {
    modulus: u64,
    char_index: usize,
    field_order: u64,
    values: Vec<CycNumber>,
}

impl EulerTable {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn char_index(&self) -> usize {
        self.char_index
    }

    pub fn field_order(&self) -> u64 {
        self.field_order
    }

    pub fn max_degree(&self) -> usize {
        self.values.len() - 1
    }

    /// E_{n,chi}.
    pub fn value(&self, n: usize) -> &CycNumber {
        &self.values[n]
    }

    pub fn values(&self) -> &[CycNumber] {
        &self.values
    }
}

/// Cache key: (modulus, character index).
type TableCache = HashMap<(u64, usize), Arc<EulerTable>>;

static TABLES: LazyLock<Mutex<TableCache>> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// The Euler numbers E_{n,chi} for n <= max_degree, from the cache when a
/// sufficiently deep table already exists. The fill is idempotent: readers
/// only ever observe completed tables.
pub fn euler_numbers(chi: &DirichletCharacter, max_degree: usize) -> Arc<EulerTable> {
    let key = (chi.modulus(), chi.index());
    let mut cache = TABLES.lock().unwrap();
    if let Some(table) = cache.get(&key) {
        if table.max_degree() >= max_degree {
            return Arc::clone(table);
        }
    }
    let table = Arc::new(compute_table(chi, max_degree));
    cache.insert(key, Arc::clone(&table));
    table
}

fn compute_table(chi: &DirichletCharacter, max_degree: usize) -> EulerTable {
    let quotient = euler_egf(chi, max_degree);
    let values = (0..=max_degree)
        .map(|n| quotient.coeff_egf(n).expect("degree within truncation"))
        .collect();
    EulerTable {
        modulus: chi.modulus(),
        char_index: chi.index(),
        field_order: chi.order(),
        values,
    }
}

/// The generating-function quotient 2 * S_chi(t) / (e^{dt} + 1) as a
/// truncated series, where S_chi(t) = sum_{a<d} (-1)^a chi(a) e^{at}.
pub fn euler_egf(chi: &DirichletCharacter, truncation: usize) -> TruncSeries {
    let numerator = char_exp_sum(chi, truncation).scale_rational(&Rational::from(2u64));
    let denominator = TruncSeries::exp_arg(
        &Rational::from(chi.modulus()),
        truncation,
        chi.order(),
    )
    .add_constant(&Rational::one());
    numerator.div(&denominator).expect("constant term is 2")
}

/// sum_{a=0}^{d-1} (-1)^a chi(a) e^{at}, truncated.
fn char_exp_sum(chi: &DirichletCharacter, truncation: usize) -> TruncSeries {
    let order = chi.order();
    let mut sum = TruncSeries::zero(truncation, order);
    for a in 0..chi.modulus() {
        let value = chi.value(a as i64);
        if value.is_zero() {
            continue;
        }
        let signed = if a % 2 == 1 { value.neg() } else { value };
        let exp = TruncSeries::exp_arg(&Rational::from(a), truncation, order);
        sum = sum
            .add(&exp.scale(&signed).expect("shared order"))
            .expect("shared truncation");
    }
    sum
}

/// E_{n,chi}(x) at rational x, via the binomial convolution against the
/// cached Euler table.
pub fn euler_polynomial(chi: &DirichletCharacter, n: usize, x: &Rational) -> CycNumber {
    let table = euler_numbers(chi, n);
    let mut acc = CycNumber::zero(chi.order());
    let mut x_pow = Rational::one();
    // Ascending powers of x; the matching Euler index is k = n - exponent.
    for x_exp in 0..=n {
        let k = n - x_exp;
        let c = Rational::from_integer(binomial(n, k)) * &x_pow;
        acc.add_assign_unchecked(&table.value(k).scale(&c));
        if x_exp < n {
            x_pow *= x;
        }
    }
    acc
}

/// E_{m,chi}(x) for every m <= max_degree, sharing one table walk.
pub fn euler_polynomial_values(
    chi: &DirichletCharacter,
    max_degree: usize,
    x: &Rational,
) -> Vec<CycNumber> {
    let table = euler_numbers(chi, max_degree);
    let mut x_pows = Vec::with_capacity(max_degree + 1);
    x_pows.push(Rational::one());
    for _ in 0..max_degree {
        x_pows.push(x_pows.last().unwrap() * x);
    }
    (0..=max_degree)
        .map(|m| {
            let mut acc = CycNumber::zero(chi.order());
            for k in 0..=m {
                let c = Rational::from_integer(binomial(m, k)) * &x_pows[m - k];
                acc.add_assign_unchecked(&table.value(k).scale(&c));
            }
            acc
        })
        .collect()
}

/// T_k(n,chi) = sum_{a=0}^{n} (-1)^a chi(a) a^k, with 0^0 = 1.
pub fn alt_power_sum(chi: &DirichletCharacter, k: usize, n: u64) -> CycNumber {
    alt_power_sum_row(chi, k, n).pop().expect("row is nonempty")
}

/// T_j(n,chi) for every j <= k_max, accumulated in a single pass over a.
pub fn alt_power_sum_row(chi: &DirichletCharacter, k_max: usize, n: u64) -> Vec<CycNumber> {
    let order = chi.order();
    let mut acc = vec![CycNumber::zero(order); k_max + 1];
    for a in 0..=n {
        let value = chi.value(a as i64);
        if value.is_zero() {
            continue;
        }
        let signed = if a % 2 == 1 { value.neg() } else { value };
        // Powers a^0 = 1 (the 0^0 = 1 convention), a^1, ..., a^k_max.
        let mut pow = BigInt::one();
        for entry in acc.iter_mut() {
            entry.add_assign_unchecked(&signed.scale(&Rational::from_integer(pow.clone())));
            pow *= a;
        }
    }
    acc
}

/// Outcome of checking the power-sum quotient identity for one (chi, w).
#[derive(Clone, Debug)]
pub struct PowerSumCheckReport {
    pub modulus: u64,
    pub char_index: usize,
    pub weight: u64,
    pub truncation: usize,
    pub pass: bool,
    /// Index of the first differing coefficient, when the check fails.
    pub first_mismatch: Option<usize>,
}

/// Verifies, coefficient by coefficient, that
///
///   (e^{wdt} + 1) * S_chi(t) / (e^{dt} + 1)
///     = sum_k T_k(wd - 1, chi) t^k/k!
///
/// for an odd weight w, at the given truncation order. The left side is a
/// series quotient; the right side comes from direct finite summation, so
/// the two routes are independent.
pub fn power_sum_series_check(
    chi: &DirichletCharacter,
    w: u64,
    truncation: usize,
) -> Result<PowerSumCheckReport> {
    if w % 2 == 0 {
        return Err(Error::EvenWeight(w));
    }
    let d = chi.modulus();
    let order = chi.order();

    let shift = TruncSeries::exp_arg(&Rational::from(w * d), truncation, order)
        .add_constant(&Rational::one());
    let numerator = shift.mul(&char_exp_sum(chi, truncation))?;
    let denominator = TruncSeries::exp_arg(&Rational::from(d), truncation, order)
        .add_constant(&Rational::one());
    let lhs = numerator.div(&denominator)?;

    let t_row = alt_power_sum_row(chi, truncation, w * d - 1);
    let rhs_coeffs: Vec<CycNumber> = t_row
        .into_iter()
        .enumerate()
        .map(|(k, t)| t.scale(&Rational::from_ratio(BigInt::one(), factorial(k))))
        .collect();
    let rhs = TruncSeries::from_coeffs(rhs_coeffs, order)?;

    let first_mismatch = (0..=truncation)
        .find(|&k| lhs.coeff(k).unwrap() != rhs.coeff(k).unwrap());
    Ok(PowerSumCheckReport {
        modulus: d,
        char_index: chi.index(),
        weight: w,
        truncation,
        pass: first_mismatch.is_none(),
        first_mismatch,
    })
}
