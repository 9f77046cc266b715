//! The nine expansion forms of the three-variable symmetric quotients, and
//! the eight theorem verifiers built on them.
//!
//! Each form is a finite expression in a weight triple (w1, w2, w3), a
//! degree n, a character chi, and zero to three rational arguments y_i:
//! multinomial sums over k+l+m = n, binomial sums over k, alternating
//! character sums over a < w*d, and one double character sum. Every form is
//! evaluated literally as that finite sum; no algebraic shortcut is taken,
//! so agreement between forms is genuine evidence.
//!
//! A theorem asserts that one form takes the same value at several
//! permutations of the weight triple. Each side is a polynomial of degree
//! at most n in every y variable, so exact agreement on the full grid
//! y_i in {0, 1, ..., n} certifies the polynomial identity itself.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::dirichlet::DirichletCharacter;
use crate::error::{Error, Result};
use crate::euler::{alt_power_sum_row, euler_numbers, EulerTable};
use crate::exactnum::{binomial, factorial, CycNumber, Rational};

/// Identifies one of the nine expansion forms.
///
/// `A*` forms expand the quotient family with denominator exponent i = 0..3
/// (A0 has three free arguments, A3 none); `C0`/`C1` are the single-argument
/// and argument-free two-orbit forms. The mixed-product family that would
/// duplicate these under weight substitution is intentionally absent.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FormId {
    A0,
    A1Sum,
    A1Char,
    A2Sum,
    A2Mixed,
    A2Char,
    A3,
    C0,
    C1,
}

impl FormId {
    pub const ALL: [FormId; 9] = [
        FormId::A0,
        FormId::A1Sum,
        FormId::A1Char,
        FormId::A2Sum,
        FormId::A2Mixed,
        FormId::A2Char,
        FormId::A3,
        FormId::C0,
        FormId::C1,
    ];

    /// Number of free rational arguments the form takes.
    pub fn arity(self) -> usize {
        match self {
            FormId::A0 => 3,
            FormId::A1Sum | FormId::A1Char => 2,
            FormId::A2Sum | FormId::A2Mixed | FormId::A2Char | FormId::C0 => 1,
            FormId::A3 | FormId::C1 => 0,
        }
    }

    /// Whether the weights must all be odd. Only the pure Euler-polynomial
    /// products A0 and C0 accept arbitrary positive weights.
    pub fn requires_odd_weights(self) -> bool {
        !matches!(self, FormId::A0 | FormId::C0)
    }
}

impl fmt::Display for FormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            FormId::A0 => "A0",
            FormId::A1Sum => "A1_SUM",
            FormId::A1Char => "A1_CHAR",
            FormId::A2Sum => "A2_SUM",
            FormId::A2Mixed => "A2_MIXED",
            FormId::A2Char => "A2_CHAR",
            FormId::A3 => "A3",
            FormId::C0 => "C0",
            FormId::C1 => "C1",
        };
        f.write_str(name)
    }
}

/// A permutation of the weight triple: slot j of the evaluated form reads
/// weight `w[perm[j]]`.
pub type Perm = [usize; 3];

pub const IDENTITY: Perm = [0, 1, 2];

/// All six permutations, lexicographic.
pub const ALL_PERMS: [Perm; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// The three cyclic permutations.
pub const CYCLIC_PERMS: [Perm; 3] = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];

pub fn apply_perm(p: Perm, w: [u64; 3]) -> [u64; 3] {
    [w[p[0]], w[p[1]], w[p[2]]]
}

/// Composition: applying `compose(s, t)` equals applying `s` to the weights
/// first and then evaluating with `t`.
pub fn compose(s: Perm, t: Perm) -> Perm {
    [s[t[0]], s[t[1]], s[t[2]]]
}

/// One concrete expression: a form with a weight permutation applied.
#[derive(Clone, Copy, Debug)]
pub struct ExpansionForm {
    pub id: FormId,
    pub perm: Perm,
}

impl ExpansionForm {
    pub fn new(id: FormId, perm: Perm) -> Self {
        ExpansionForm { id, perm }
    }
}

/// Exact multinomial coefficient n!/(k! l! m!); requires k + l + m = n.
pub fn multinomial(n: usize, k: usize, l: usize, m: usize) -> Result<Rational> {
    if k + l + m != n {
        return Err(Error::MultinomialIndices { n, k, l, m });
    }
    let num = factorial(n);
    let den = factorial(k) * factorial(l) * factorial(m);
    Ok(Rational::from_ratio(num, den))
}

/// Shared evaluation state for one (character, degree) pair: the Euler
/// table, memoized Euler-polynomial rows per rational argument, memoized
/// power-sum rows per summation limit, and the signed character period.
pub struct Evaluator<'a> {
    chi: &'a DirichletCharacter,
    max_degree: usize,
    table: Arc<EulerTable>,
    /// (-1)^a chi(a) for a in 0..2d; the sequence has period 2d.
    signed_period: Vec<CycNumber>,
    /// chi(a) for a in 0..d.
    value_row: Vec<CycNumber>,
    poly_rows: HashMap<Rational, Arc<Vec<CycNumber>>>,
    t_rows: HashMap<u64, Arc<Vec<CycNumber>>>,
    char_sum_rows: HashMap<(u64, Rational, Rational), Arc<Vec<CycNumber>>>,
    /// pascal[i][j] = C(i, j) for i <= max_degree.
    pascal: Vec<Vec<BigInt>>,
    /// u^0 .. u^max_degree per weight value.
    power_rows: HashMap<u64, Arc<Vec<BigInt>>>,
    /// Multinomial-times-weight-power tables, shared by every grid point
    /// of an expression.
    coeff_tables: HashMap<CoeffKey, Arc<Vec<Vec<Rational>>>>,
}

/// (u1, u2, u3, complementary powers, n).
type CoeffKey = (u64, u64, u64, bool, usize);

impl<'a> Evaluator<'a> {
    pub fn new(chi: &'a DirichletCharacter, max_degree: usize) -> Self {
        let d = chi.modulus();
        let table = euler_numbers(chi, max_degree);
        let value_row: Vec<CycNumber> = (0..d).map(|a| chi.value(a as i64)).collect();
        let signed_period = (0..2 * d)
            .map(|a| {
                let v = &value_row[(a % d) as usize];
                if a % 2 == 1 {
                    v.neg()
                } else {
                    v.clone()
                }
            })
            .collect();
        let mut pascal: Vec<Vec<BigInt>> = Vec::with_capacity(max_degree + 1);
        for i in 0..=max_degree {
            let mut row = vec![BigInt::from(1u64); i + 1];
            for j in 1..i {
                row[j] = &pascal[i - 1][j - 1] + &pascal[i - 1][j];
            }
            pascal.push(row);
        }
        Evaluator {
            chi,
            max_degree,
            table,
            signed_period,
            value_row,
            poly_rows: HashMap::new(),
            t_rows: HashMap::new(),
            char_sum_rows: HashMap::new(),
            pascal,
            power_rows: HashMap::new(),
            coeff_tables: HashMap::new(),
        }
    }

    /// table[k][l] = M(n;k,l,m) u1^a u2^b u3^c with m = n-k-l, where the
    /// exponents are (n-k, n-l, n-m) in complementary mode and (k, l, m)
    /// otherwise. Memoized per expression shape.
    fn coeff_table(
        &mut self,
        n: usize,
        u: [u64; 3],
        complementary: bool,
    ) -> Arc<Vec<Vec<Rational>>> {
        let key = (u[0], u[1], u[2], complementary, n);
        if let Some(table) = self.coeff_tables.get(&key) {
            return Arc::clone(table);
        }
        let p1 = self.power_row(u[0]);
        let p2 = self.power_row(u[1]);
        let p3 = self.power_row(u[2]);
        let mut table = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut row = Vec::with_capacity(n - k + 1);
            for l in 0..=n - k {
                let m = n - k - l;
                let multinomial = &self.pascal[n][k] * &self.pascal[n - k][l];
                let coeff = if complementary {
                    multinomial * &p1[n - k] * &p2[n - l] * &p3[n - m]
                } else {
                    multinomial * &p1[k] * &p2[l] * &p3[m]
                };
                row.push(Rational::from_integer(coeff));
            }
            table.push(row);
        }
        let table = Arc::new(table);
        self.coeff_tables.insert(key, Arc::clone(&table));
        table
    }

    /// u^0 .. u^max_degree, memoized per weight value.
    fn power_row(&mut self, u: u64) -> Arc<Vec<BigInt>> {
        if let Some(row) = self.power_rows.get(&u) {
            return Arc::clone(row);
        }
        let mut row = Vec::with_capacity(self.max_degree + 1);
        let mut acc = BigInt::from(1u64);
        row.push(acc.clone());
        for _ in 0..self.max_degree {
            acc *= u;
            row.push(acc.clone());
        }
        let row = Arc::new(row);
        self.power_rows.insert(u, Arc::clone(&row));
        row
    }

    pub fn character(&self) -> &DirichletCharacter {
        self.chi
    }

    /// (-1)^a chi(a), valid for any a >= 0.
    fn signed_value(&self, a: u64) -> &CycNumber {
        &self.signed_period[(a % (2 * self.chi.modulus())) as usize]
    }

    /// E_j(x) for j <= max_degree, memoized per argument.
    fn poly_row(&mut self, x: &Rational) -> Arc<Vec<CycNumber>> {
        if let Some(row) = self.poly_rows.get(x) {
            return Arc::clone(row);
        }
        let n = self.max_degree;
        let mut x_pows = Vec::with_capacity(n + 1);
        x_pows.push(Rational::one());
        for _ in 0..n {
            x_pows.push(x_pows.last().unwrap() * x);
        }
        let row: Vec<CycNumber> = (0..=n)
            .map(|m| {
                let mut acc = CycNumber::zero(self.chi.order());
                for k in 0..=m {
                    let c = Rational::from_integer(binomial(m, k)) * &x_pows[m - k];
                    acc.add_assign_unchecked(&self.table.value(k).scale(&c));
                }
                acc
            })
            .collect();
        let row = Arc::new(row);
        self.poly_rows.insert(x.clone(), Arc::clone(&row));
        row
    }

    /// T_j(limit) for j <= max_degree, memoized per limit.
    fn t_row(&mut self, limit: u64) -> Arc<Vec<CycNumber>> {
        if let Some(row) = self.t_rows.get(&limit) {
            return Arc::clone(row);
        }
        let row = Arc::new(alt_power_sum_row(self.chi, self.max_degree, limit));
        self.t_rows.insert(limit, Arc::clone(&row));
        row
    }

    /// The value of one expansion form at degree n, weights w (permutation
    /// applied here), and grid arguments y.
    pub fn expansion_value(
        &mut self,
        form: &ExpansionForm,
        n: usize,
        w: [u64; 3],
        y: &[Rational],
    ) -> Result<CycNumber> {
        if n > self.max_degree {
            return Err(Error::CoefficientIndex {
                index: n,
                truncation: self.max_degree,
            });
        }
        if w.contains(&0) {
            return Err(Error::ZeroWeight(w));
        }
        if form.id.arity() != y.len() {
            return Err(Error::ArityMismatch {
                expected: form.id.arity(),
                got: y.len(),
            });
        }
        let u = apply_perm(form.perm, w);
        if form.id.requires_odd_weights() {
            if let Some(&even) = u.iter().find(|&&v| v % 2 == 0) {
                return Err(Error::EvenWeight(even));
            }
        }
        let d = self.chi.modulus();
        let [u1, u2, u3] = u;
        Ok(match form.id {
            FormId::A0 => {
                let r1 = self.poly_row(&arg(u1, &y[0]));
                let r2 = self.poly_row(&arg(u2, &y[1]));
                let r3 = self.poly_row(&arg(u3, &y[2]));
                self.triple_sum_complementary(n, u, &r1, &r2, &r3)
            }
            FormId::A1Sum => {
                let r1 = self.poly_row(&arg(u1, &y[0]));
                let r2 = self.poly_row(&arg(u2, &y[1]));
                let t3 = self.t_row(u3 * d - 1);
                self.triple_sum_complementary(n, u, &r1, &r2, &t3)
            }
            FormId::A1Char => {
                // u3^n * sum_k C(n,k) E_k(u1 y1)
                //        * sum_{a<u3 d} (-1)^a chi(a) E_{n-k}(u2 y2 + (u2/u3) a)
                //        * u1^{n-k} u2^k
                let r1 = self.poly_row(&arg(u1, &y[0]));
                let base = arg(u2, &y[1]);
                let step = Rational::from_ratio(u2, u3);
                let inner = self.char_weighted_poly_sum(u3 * d, &base, &step);
                let p1 = self.power_row(u1);
                let p2 = self.power_row(u2);
                let mut acc = CycNumber::zero(self.chi.order());
                for k in 0..=n {
                    let c = Rational::from_integer(&self.pascal[n][k] * &p1[n - k] * &p2[k]);
                    acc.add_assign_unchecked(
                        &r1[k].mul_unchecked(&inner[n - k]).scale(&c),
                    );
                }
                acc.scale(&Rational::from(u3).pow(n as u32))
            }
            FormId::A2Sum => {
                let r1 = self.poly_row(&arg(u1, &y[0]));
                let t2 = self.t_row(u2 * d - 1);
                let t3 = self.t_row(u3 * d - 1);
                self.triple_sum_complementary(n, u, &r1, &t2, &t3)
            }
            FormId::A2Mixed => {
                // u2^n * sum_k C(n,k)
                //        * sum_{a<u2 d} (-1)^a chi(a) E_k(u1 y1 + (u1/u2) a)
                //        * T_{n-k}(u3 d - 1) * u1^{n-k} u3^k
                let base = arg(u1, &y[0]);
                let step = Rational::from_ratio(u1, u2);
                let inner = self.char_weighted_poly_sum(u2 * d, &base, &step);
                let t3 = self.t_row(u3 * d - 1);
                let p1 = self.power_row(u1);
                let p3 = self.power_row(u3);
                let mut acc = CycNumber::zero(self.chi.order());
                for k in 0..=n {
                    let c = Rational::from_integer(&self.pascal[n][k] * &p1[n - k] * &p3[k]);
                    acc.add_assign_unchecked(
                        &inner[k].mul_unchecked(&t3[n - k]).scale(&c),
                    );
                }
                acc.scale(&Rational::from(u2).pow(n as u32))
            }
            FormId::A2Char => {
                // (u2 u3)^n * sum_{a<u2 d} sum_{b<u3 d} (-1)^{a+b} chi(ab)
                //           * E_n(u1 y1 + (u1/u2) a + (u1/u3) b)
                let base = arg(u1, &y[0]);
                let step_a = Rational::from_ratio(u1, u2);
                let step_b = Rational::from_ratio(u1, u3);
                let mut acc = CycNumber::zero(self.chi.order());
                for a in 0..u2 * d {
                    if self.value_row[(a % d) as usize].is_zero() {
                        continue;
                    }
                    let x_a = &base + &(&step_a * &Rational::from(a));
                    for b in 0..u3 * d {
                        let ab = self.value_row[((a % d) * (b % d) % d) as usize].clone();
                        if ab.is_zero() {
                            continue;
                        }
                        let signed = if (a + b) % 2 == 1 { ab.neg() } else { ab };
                        let x = &x_a + &(&step_b * &Rational::from(b));
                        let row = self.poly_row(&x);
                        acc.add_assign_unchecked(&signed.mul_unchecked(&row[n]));
                    }
                }
                acc.scale(&Rational::from(u2 * u3).pow(n as u32))
            }
            FormId::A3 => {
                let t1 = self.t_row(u1 * d - 1);
                let t2 = self.t_row(u2 * d - 1);
                let t3 = self.t_row(u3 * d - 1);
                self.triple_sum_complementary(n, u, &t1, &t2, &t3)
            }
            FormId::C0 => {
                // sum_{k+l+m=n} M * E_k(u2 y) E_l(u3 y) E_m(u1 y)
                //             * u1^k u2^l u3^m
                let r2 = self.poly_row(&arg(u2, &y[0]));
                let r3 = self.poly_row(&arg(u3, &y[0]));
                let r1 = self.poly_row(&arg(u1, &y[0]));
                self.triple_sum_direct(n, u, &r2, &r3, &r1)
            }
            FormId::C1 => {
                // sum_{k+l+m=n} M * T_k(u2 d - 1) T_l(u3 d - 1) T_m(u1 d - 1)
                //             * u1^k u2^l u3^m
                let t2 = self.t_row(u2 * d - 1);
                let t3 = self.t_row(u3 * d - 1);
                let t1 = self.t_row(u1 * d - 1);
                self.triple_sum_direct(n, u, &t2, &t3, &t1)
            }
        })
    }

    /// sum_{a<limit} (-1)^a chi(a) E_j(base + step*a), all degrees j at
    /// once, memoized: grid sweeps revisit the same (limit, base, step).
    fn char_weighted_poly_sum(
        &mut self,
        limit: u64,
        base: &Rational,
        step: &Rational,
    ) -> Arc<Vec<CycNumber>> {
        let key = (limit, base.clone(), step.clone());
        if let Some(row) = self.char_sum_rows.get(&key) {
            return Arc::clone(row);
        }
        let n = self.max_degree;
        let mut acc = vec![CycNumber::zero(self.chi.order()); n + 1];
        let d = self.chi.modulus();
        for a in 0..limit {
            if self.value_row[(a % d) as usize].is_zero() {
                continue;
            }
            let x = base + &(step * &Rational::from(a));
            let row = self.poly_row(&x);
            let signed = self.signed_value(a).clone();
            for (entry, value) in acc.iter_mut().zip(row.iter()) {
                entry.add_assign_unchecked(&signed.mul_unchecked(value));
            }
        }
        let acc = Arc::new(acc);
        self.char_sum_rows.insert(key, Arc::clone(&acc));
        acc
    }

    /// sum_{k+l+m=n} M(n;k,l,m) F[k] G[l] H[m] u1^{l+m} u2^{k+m} u3^{k+l}.
    ///
    /// Since k+l+m = n, the weight powers are u1^{n-k} u2^{n-l} u3^{n-m};
    /// they live in the memoized coefficient table together with the
    /// multinomial.
    fn triple_sum_complementary(
        &mut self,
        n: usize,
        u: [u64; 3],
        f: &[CycNumber],
        g: &[CycNumber],
        h: &[CycNumber],
    ) -> CycNumber {
        let table = self.coeff_table(n, u, true);
        let mut acc = CycNumber::zero(self.chi.order());
        for k in 0..=n {
            if f[k].is_zero() {
                continue;
            }
            for l in 0..=n - k {
                let m = n - k - l;
                if g[l].is_zero() || h[m].is_zero() {
                    continue;
                }
                let term = f[k].mul_unchecked(&g[l]).mul_unchecked(&h[m]);
                acc.add_assign_unchecked(&term.scale(&table[k][l]));
            }
        }
        acc
    }

    /// sum_{k+l+m=n} M(n;k,l,m) F[k] G[l] H[m] u1^k u2^l u3^m.
    fn triple_sum_direct(
        &mut self,
        n: usize,
        u: [u64; 3],
        f: &[CycNumber],
        g: &[CycNumber],
        h: &[CycNumber],
    ) -> CycNumber {
        let table = self.coeff_table(n, u, false);
        let mut acc = CycNumber::zero(self.chi.order());
        for k in 0..=n {
            if f[k].is_zero() {
                continue;
            }
            for l in 0..=n - k {
                let m = n - k - l;
                if g[l].is_zero() || h[m].is_zero() {
                    continue;
                }
                let term = f[k].mul_unchecked(&g[l]).mul_unchecked(&h[m]);
                acc.add_assign_unchecked(&term.scale(&table[k][l]));
            }
        }
        acc
    }
}

fn arg(u: u64, y: &Rational) -> Rational {
    &Rational::from(u) * y
}

/// One-shot form evaluation; sweeps should hold an [`Evaluator`] instead.
pub fn expansion_value(
    form: &ExpansionForm,
    chi: &DirichletCharacter,
    n: usize,
    w: [u64; 3],
    y: &[Rational],
) -> Result<CycNumber> {
    Evaluator::new(chi, n).expansion_value(form, n, w, y)
}

/// The form and displayed weight permutations of one theorem.
///
/// Theorems 1-3 and 5 list the full six-element orbit; 4 and 6 list the
/// three cyclic images; 7 and 8 list a two-element orbit.
pub fn theorem_expressions(theorem: u8) -> Result<(FormId, Vec<Perm>)> {
    Ok(match theorem {
        1 => (FormId::A0, ALL_PERMS.to_vec()),
        2 => (FormId::A1Sum, ALL_PERMS.to_vec()),
        3 => (FormId::A1Char, ALL_PERMS.to_vec()),
        4 => (FormId::A2Sum, CYCLIC_PERMS.to_vec()),
        5 => (FormId::A2Mixed, ALL_PERMS.to_vec()),
        6 => (FormId::A2Char, CYCLIC_PERMS.to_vec()),
        7 => (FormId::C0, vec![[2, 0, 1], [1, 0, 2]]),
        8 => (FormId::C1, vec![[2, 0, 1], [1, 0, 2]]),
        other => return Err(Error::UnknownTheorem(other)),
    })
}

/// Whether a theorem restricts the weights to odd values. Theorems 1 and 7
/// accept any positive integers.
pub fn theorem_requires_odd_weights(theorem: u8) -> Result<bool> {
    Ok(theorem_expressions(theorem)?.0.requires_odd_weights())
}

pub fn theorem_arity(theorem: u8) -> Result<usize> {
    Ok(theorem_expressions(theorem)?.0.arity())
}

/// The full evaluation grid {0, 1, ..., n}^arity, row-major (first
/// coordinate slowest). Arity 0 yields the single empty point.
pub fn grid_points(n: usize, arity: usize) -> Vec<Vec<Rational>> {
    let mut points: Vec<Vec<Rational>> = vec![Vec::new()];
    for _ in 0..arity {
        let mut next = Vec::with_capacity(points.len() * (n + 1));
        for p in &points {
            for v in 0..=n {
                let mut q = p.clone();
                q.push(Rational::from(v as u64));
                next.push(q);
            }
        }
        points = next;
    }
    points
}

/// A located disagreement between two expressions of a report.
#[derive(Clone, Debug)]
pub struct Discrepancy {
    /// Indices of the two expressions that disagree.
    pub expressions: (usize, usize),
    pub grid_point: Vec<Rational>,
    pub left: CycNumber,
    pub right: CycNumber,
}

/// Structured outcome of verifying one theorem instance.
#[derive(Clone, Debug)]
pub struct SymmetryReport {
    pub theorem: u8,
    pub modulus: u64,
    pub char_index: usize,
    pub char_order: u64,
    pub conductor: u64,
    pub primitive: bool,
    pub degree: usize,
    pub weights: [u64; 3],
    /// Weight permutations of the evaluated expressions, in report order.
    pub perms: Vec<Perm>,
    pub grid_arity: usize,
    pub points_per_axis: usize,
    /// expression_values[e][p]: value of expression e at grid point p.
    pub expression_values: Vec<Vec<CycNumber>>,
    pub passed: bool,
    pub first_discrepancy: Option<Discrepancy>,
}

impl SymmetryReport {
    pub fn grid_size(&self) -> usize {
        self.points_per_axis.pow(self.grid_arity as u32)
    }
}

/// Test hook: adds 1 to the value of one expression at every grid point,
/// forcing a visible, located discrepancy.
#[derive(Clone, Copy, Debug)]
pub struct FaultInjection {
    pub expression: usize,
}

/// Verifies one theorem instance by exhaustive grid evaluation.
///
/// Every displayed expression of the theorem is evaluated at every point of
/// the grid y_i in {0..n}; the verdict is pass exactly when all expressions
/// agree everywhere. Each expression is a polynomial of degree <= n in each
/// y variable, so grid agreement implies the polynomial identity.
pub fn verify_theorem(
    theorem: u8,
    chi: &DirichletCharacter,
    n: usize,
    w: [u64; 3],
) -> Result<SymmetryReport> {
    verify_theorem_faulted(theorem, chi, n, w, None)
}

/// [`verify_theorem`] with an optional injected fault (test hook).
pub fn verify_theorem_faulted(
    theorem: u8,
    chi: &DirichletCharacter,
    n: usize,
    w: [u64; 3],
    fault: Option<FaultInjection>,
) -> Result<SymmetryReport> {
    let (form_id, perms) = theorem_expressions(theorem)?;
    if w.contains(&0) {
        return Err(Error::ZeroWeight(w));
    }
    if form_id.requires_odd_weights() {
        if let Some(&even) = w.iter().find(|&&v| v % 2 == 0) {
            return Err(Error::EvenWeight(even));
        }
    }

    let arity = form_id.arity();
    let points = grid_points(n, arity);
    let mut evaluator = Evaluator::new(chi, n);
    let one = CycNumber::one(chi.order());

    let mut expression_values: Vec<Vec<CycNumber>> = Vec::with_capacity(perms.len());
    for (e, &perm) in perms.iter().enumerate() {
        let form = ExpansionForm::new(form_id, perm);
        let mut row = Vec::with_capacity(points.len());
        for point in &points {
            let mut value = evaluator.expansion_value(&form, n, w, point)?;
            if fault.is_some_and(|f| f.expression == e) {
                value = value.add_unchecked(&one);
            }
            row.push(value);
        }
        expression_values.push(row);
    }

    let mut first_discrepancy = None;
    'outer: for (p, point) in points.iter().enumerate() {
        for e in 1..expression_values.len() {
            if expression_values[e][p] != expression_values[0][p] {
                first_discrepancy = Some(Discrepancy {
                    expressions: (0, e),
                    grid_point: point.clone(),
                    left: expression_values[0][p].clone(),
                    right: expression_values[e][p].clone(),
                });
                break 'outer;
            }
        }
    }

    Ok(SymmetryReport {
        theorem,
        modulus: chi.modulus(),
        char_index: chi.index(),
        char_order: chi.order(),
        conductor: chi.conductor(),
        primitive: chi.is_primitive(),
        degree: n,
        weights: w,
        perms,
        grid_arity: arity,
        points_per_axis: n + 1,
        passed: first_discrepancy.is_none(),
        expression_values,
        first_discrepancy,
    })
}

/// Outcome of checking that the different expansions of the same quotient
/// agree: the two-way pair {A1_SUM, A1_CHAR} on the (y1, y2) grid and the
/// three-way family {A2_SUM, A2_MIXED, A2_CHAR} on the y1 grid, all at the
/// identity permutation.
#[derive(Clone, Debug)]
pub struct CrossFormReport {
    pub modulus: u64,
    pub char_index: usize,
    pub degree: usize,
    pub weights: [u64; 3],
    pub pair_passed: bool,
    pub trio_passed: bool,
    pub first_discrepancy: Option<(FormId, FormId, Vec<Rational>)>,
}

impl CrossFormReport {
    pub fn passed(&self) -> bool {
        self.pair_passed && self.trio_passed
    }
}

/// Cross-expansion consistency check for odd weights w.
pub fn cross_form_check(
    chi: &DirichletCharacter,
    n: usize,
    w: [u64; 3],
) -> Result<CrossFormReport> {
    if w.contains(&0) {
        return Err(Error::ZeroWeight(w));
    }
    if let Some(&even) = w.iter().find(|&&v| v % 2 == 0) {
        return Err(Error::EvenWeight(even));
    }
    let mut evaluator = Evaluator::new(chi, n);
    let mut first_discrepancy = None;

    let mut pair_passed = true;
    'pair: for point in grid_points(n, 2) {
        let lhs = evaluator.expansion_value(
            &ExpansionForm::new(FormId::A1Sum, IDENTITY),
            n,
            w,
            &point,
        )?;
        let rhs = evaluator.expansion_value(
            &ExpansionForm::new(FormId::A1Char, IDENTITY),
            n,
            w,
            &point,
        )?;
        if lhs != rhs {
            pair_passed = false;
            first_discrepancy = Some((FormId::A1Sum, FormId::A1Char, point));
            break 'pair;
        }
    }

    let mut trio_passed = true;
    'trio: for point in grid_points(n, 1) {
        let sum = evaluator.expansion_value(
            &ExpansionForm::new(FormId::A2Sum, IDENTITY),
            n,
            w,
            &point,
        )?;
        for other in [FormId::A2Mixed, FormId::A2Char] {
            let rhs =
                evaluator.expansion_value(&ExpansionForm::new(other, IDENTITY), n, w, &point)?;
            if sum != rhs {
                trio_passed = false;
                if first_discrepancy.is_none() {
                    first_discrepancy = Some((FormId::A2Sum, other, point.clone()));
                }
                break 'trio;
            }
        }
    }

    Ok(CrossFormReport {
        modulus: chi.modulus(),
        char_index: chi.index(),
        degree: n,
        weights: w,
        pair_passed,
        trio_passed,
        first_discrepancy,
    })
}

/// Index-relabeling redundancy: the companion expressions obtained from the
/// non-displayed weight permutations are equal, as finite sums, to the
/// displayed ones.
///
/// For the A2_SUM form this is the swap of the last two weight slots
/// (relabeling l and m in the sum); for C1 it is invariance under cyclic
/// slot rotation (cyclic relabeling of k, l, m).
#[derive(Clone, Debug)]
pub struct RelabelingReport {
    pub modulus: u64,
    pub char_index: usize,
    pub degree: usize,
    pub weights: [u64; 3],
    pub a2_sum_passed: bool,
    pub c1_passed: bool,
}

impl RelabelingReport {
    pub fn passed(&self) -> bool {
        self.a2_sum_passed && self.c1_passed
    }
}

pub fn index_relabeling_check(
    chi: &DirichletCharacter,
    n: usize,
    w: [u64; 3],
) -> Result<RelabelingReport> {
    if w.contains(&0) {
        return Err(Error::ZeroWeight(w));
    }
    if let Some(&even) = w.iter().find(|&&v| v % 2 == 0) {
        return Err(Error::EvenWeight(even));
    }
    let mut evaluator = Evaluator::new(chi, n);

    // Swapping the last two slots of any permutation relabels l and m.
    let mut a2_sum_passed = true;
    'a2: for perm in CYCLIC_PERMS {
        let swapped = [perm[0], perm[2], perm[1]];
        for point in grid_points(n, 1) {
            let lhs = evaluator.expansion_value(
                &ExpansionForm::new(FormId::A2Sum, perm),
                n,
                w,
                &point,
            )?;
            let rhs = evaluator.expansion_value(
                &ExpansionForm::new(FormId::A2Sum, swapped),
                n,
                w,
                &point,
            )?;
            if lhs != rhs {
                a2_sum_passed = false;
                break 'a2;
            }
        }
    }

    // The C1 value is unchanged by cyclic rotation of the weight slots.
    let mut c1_passed = true;
    for start in [IDENTITY, [1, 0, 2]] {
        let base = evaluator.expansion_value(&ExpansionForm::new(FormId::C1, start), n, w, &[])?;
        for cyc in [CYCLIC_PERMS[1], CYCLIC_PERMS[2]] {
            let rotated = compose(start, cyc);
            let value =
                evaluator.expansion_value(&ExpansionForm::new(FormId::C1, rotated), n, w, &[])?;
            if value != base {
                c1_passed = false;
            }
        }
    }

    Ok(RelabelingReport {
        modulus: chi.modulus(),
        char_index: chi.index(),
        degree: n,
        weights: w,
        a2_sum_passed,
        c1_passed,
    })
}
