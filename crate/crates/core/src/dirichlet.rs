//! Dirichlet characters of odd modulus: construction, enumeration,
//! evaluation, conductor.
//!
//! Characters mod d are built by factoring d into odd prime powers; each
//! factor group (Z/p^k)* is cyclic, generated by the least primitive root,
//! so a character is determined by one exponent per factor. Enumeration
//! walks those exponent tuples in lexicographic order (factors sorted by
//! ascending prime), which fixes a deterministic index for every character.
//!
//! A character's `order` is the exact order of chi in the character group,
//! and values are stored as exponents: chi(a) = zeta_order^e_a for units a,
//! and 0 elsewhere. Modulus 1 is the edge case where every integer counts
//! as a unit, so the trivial character mod 1 is identically 1.

use crate::arith::{divisors, euler_phi, factorize, gcd, lcm};
use crate::error::{Error, Result};
use crate::exactnum::{CycNumber, Rational};

/// A Dirichlet character of odd modulus d, addressed externally by
/// (modulus, index) with index taken from the deterministic enumeration.
#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    modulus: u64,
    index: usize,
    order: u64,
    /// For each residue a in 0..d: Some(e) with chi(a) = zeta_order^e when
    /// gcd(a, d) = 1, None otherwise.
    exponents: Vec<Option<u64>>,
    conductor: u64,
    values: Vec<CycNumber>,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Position in the deterministic enumeration of characters mod d.
    pub fn index(&self) -> usize {
        self.index
    }

    /// Exact order of chi in the character group.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// The least f dividing d such that chi is trivial on every unit
    /// congruent to 1 mod f.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// chi takes values in {0, 1, -1} exactly when its order divides 2.
    pub fn is_rational_valued(&self) -> bool {
        self.order <= 2
    }

    /// chi(a), reducing a mod d; zero off the units.
    pub fn value(&self, a: i64) -> CycNumber {
        let idx = a.rem_euclid(self.modulus as i64) as usize;
        self.values[idx].clone()
    }

    /// Exponent e with chi(a) = zeta_order^e, or None off the units.
    pub fn exponent(&self, a: i64) -> Option<u64> {
        let idx = a.rem_euclid(self.modulus as i64) as usize;
        self.exponents[idx]
    }

    /// chi(a) as a rational, for characters of order <= 2.
    pub fn rational_value(&self, a: i64) -> Result<Rational> {
        if !self.is_rational_valued() {
            return Err(Error::UnsupportedCharacter(self.order));
        }
        Ok(match self.exponent(a) {
            None => Rational::zero(),
            Some(0) => Rational::one(),
            Some(_) => -Rational::one(),
        })
    }
}

/// All phi(d) characters of odd modulus d, in deterministic order.
/// Index 0 is always the trivial character.
pub fn enumerate_characters(d: u64) -> Result<Vec<DirichletCharacter>> {
    if d == 0 || d % 2 == 0 {
        return Err(Error::EvenModulus(d));
    }
    if d == 1 {
        return Ok(vec![DirichletCharacter {
            modulus: 1,
            index: 0,
            order: 1,
            exponents: vec![Some(0)],
            conductor: 1,
            values: vec![CycNumber::one(1)],
        }]);
    }

    let factors = factorize(d);
    let comps: Vec<Component> = factors
        .iter()
        .map(|&(p, k)| Component::new(p, k))
        .collect();
    let group_orders: Vec<u64> = comps.iter().map(|c| c.group_order).collect();
    let big_l = group_orders.iter().copied().fold(1, lcm);

    // Discrete logs of every unit of (Z/dZ)* with respect to each factor.
    let units: Vec<u64> = (1..d).filter(|&a| gcd(a, d) == 1).collect();
    let unit_logs: Vec<Vec<u64>> = units
        .iter()
        .map(|&a| comps.iter().map(|c| c.dlog[(a % c.modulus) as usize].unwrap()).collect())
        .collect();

    let count = euler_phi(d) as usize;
    let mut chars = Vec::with_capacity(count);
    for index in 0..count {
        // Decode index into the exponent tuple, first factor most significant.
        let mut rem = index as u64;
        let mut tuple = vec![0u64; comps.len()];
        for i in (0..comps.len()).rev() {
            tuple[i] = rem % group_orders[i];
            rem /= group_orders[i];
        }

        // Raw exponents to the common order L = lcm of the factor orders.
        let mut raw = vec![None; d as usize];
        for (ui, &a) in units.iter().enumerate() {
            let mut e: u128 = 0;
            for (i, c) in tuple.iter().enumerate() {
                e += (*c as u128) * (unit_logs[ui][i] as u128) * ((big_l / group_orders[i]) as u128);
            }
            raw[a as usize] = Some((e % big_l as u128) as u64);
        }

        // Exact order r of chi: lcm of the orders of its values.
        let order = units
            .iter()
            .map(|&a| big_l / gcd(big_l, raw[a as usize].unwrap()))
            .fold(1, lcm);

        // Rescale exponents from modulus L to modulus r.
        let exponents: Vec<Option<u64>> = raw
            .iter()
            .map(|e| e.map(|e| ((e as u128 * order as u128) / big_l as u128) as u64))
            .collect();

        let conductor = conductor_of(d, &units, &exponents);
        let values = (0..d as usize)
            .map(|a| match exponents[a] {
                Some(e) => CycNumber::root_of_unity(order, e),
                None => CycNumber::zero(order),
            })
            .collect();

        chars.push(DirichletCharacter {
            modulus: d,
            index,
            order,
            exponents,
            conductor,
            values,
        });
    }
    Ok(chars)
}

/// The character with the given index mod d.
pub fn character(d: u64, index: usize) -> Result<DirichletCharacter> {
    let all = enumerate_characters(d)?;
    let count = all.len();
    all.into_iter()
        .nth(index)
        .ok_or(Error::CharacterIndex {
            modulus: d,
            index,
            count,
        })
}

fn conductor_of(d: u64, units: &[u64], exponents: &[Option<u64>]) -> u64 {
    'next: for f in divisors(d) {
        for &a in units {
            if a % f == 1 % f && exponents[a as usize] != Some(0) {
                continue 'next;
            }
        }
        return f;
    }
    d
}

/// One odd prime-power factor of the modulus with its cyclic structure.
struct Component {
    modulus: u64,
    group_order: u64,
    /// dlog[a] = t with g^t = a mod p^k, for units a.
    dlog: Vec<Option<u64>>,
}

impl Component {
    fn new(p: u64, k: u32) -> Self {
        let modulus = p.pow(k);
        let group_order = euler_phi(modulus);
        let g = least_primitive_root(p, k);
        let mut dlog = vec![None; modulus as usize];
        let mut acc = 1u64;
        for t in 0..group_order {
            debug_assert!(dlog[acc as usize].is_none());
            dlog[acc as usize] = Some(t);
            acc = mulmod(acc, g, modulus);
        }
        Component {
            modulus,
            group_order,
            dlog,
        }
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Least primitive root mod p^k for an odd prime p. (Z/p^k)* is cyclic, so
/// one exists; candidates are tested by checking g^(phi/q) != 1 for every
/// prime q dividing phi.
fn least_primitive_root(p: u64, k: u32) -> u64 {
    let m = p.pow(k);
    let phi = euler_phi(m);
    let prime_factors: Vec<u64> = factorize(phi).into_iter().map(|(q, _)| q).collect();
    (2..m)
        .find(|&g| {
            gcd(g, m) == 1
                && prime_factors
                    .iter()
                    .all(|&q| powmod(g, phi / q, m) != 1)
        })
        .expect("odd prime powers have primitive roots")
}
