//! Factorization, divisor lattices and the classical multiplicative functions.
//!
//! Everything here works on a [`Factorization`] or a [`DivisorTable`], so a
//! modulus is factored once and then reused by every divisor-sum in the
//! crate. Functions on the divisors of `n` are plain `Vec<i64>` indexed in the
//! same ascending order as [`DivisorTable::as_slice`].

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Sorted prime-power decomposition of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

/// Factor `n` by trial division over a 2, 3, 5 wheel.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut factors = Vec::new();
    let mut m = n;
    for p in [2u64, 3, 5] {
        push_prime(&mut m, p, &mut factors);
    }
    // gaps between successive integers coprime to 30, starting at 7
    const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut i = 0;
    while p.saturating_mul(p) <= m {
        push_prime(&mut m, p, &mut factors);
        p += WHEEL[i];
        i = (i + 1) % WHEEL.len();
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(Factorization { n, factors })
}

fn push_prime(m: &mut u64, p: u64, factors: &mut Vec<(u64, u32)>) {
    let mut e = 0;
    while (*m).is_multiple_of(p) {
        *m /= p;
        e += 1;
    }
    if e > 0 {
        factors.push((p, e));
    }
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs with strictly ascending primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn divisors(&self) -> DivisorTable {
        divisors(self)
    }

    pub fn moebius(&self) -> i64 {
        moebius(self)
    }

    pub fn euler_phi(&self) -> u64 {
        euler_phi(self)
    }

    pub fn tau(&self) -> u64 {
        tau(self)
    }

    pub fn sigma(&self) -> u64 {
        sigma(self)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// All divisors of `n` in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorTable {
    n: u64,
    primes: Vec<u64>,
    divisors: Vec<u64>,
}

impl DivisorTable {
    pub fn new(n: u64) -> Result<Self> {
        Ok(factorize(n)?.divisors())
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    /// Never true: every table contains at least `1`.
    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.divisors
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.divisors.iter().copied()
    }

    /// Position of `d` in the table, if `d | n`.
    pub fn index_of(&self, d: u64) -> Option<usize> {
        self.divisors.binary_search(&d).ok()
    }

    /// `μ(m)` for any `m` whose prime factors all divide `n` (in particular `m | n`).
    pub fn mu_at(&self, mut m: u64) -> i64 {
        let mut sign = 1;
        for &p in &self.primes {
            if m.is_multiple_of(p) {
                m /= p;
                if m.is_multiple_of(p) {
                    return 0;
                }
                sign = -sign;
            }
        }
        debug_assert_eq!(m, 1, "argument has a prime factor not dividing n");
        sign
    }

    /// `φ(m)` for any `m` whose prime factors all divide `n`.
    pub fn phi_at(&self, m: u64) -> u64 {
        self.primes
            .iter()
            .filter(|&&p| m.is_multiple_of(p))
            .fold(m, |acc, &p| acc / p * (p - 1))
    }

    fn check_len(&self, values: &[i64]) -> Result<()> {
        if values.len() != self.len() {
            return Err(Error::DivisorMismatch {
                expected: self.len(),
                got: values.len(),
            });
        }
        Ok(())
    }
}

pub fn divisors(fac: &Factorization) -> DivisorTable {
    let mut divs = vec![1u64];
    for &(p, e) in &fac.factors {
        let len = divs.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    DivisorTable {
        n: fac.n,
        primes: fac.primes().collect(),
        divisors: divs,
    }
}

pub fn moebius(fac: &Factorization) -> i64 {
    if fac.factors.iter().any(|&(_, e)| e >= 2) {
        0
    } else if fac.factors.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn euler_phi(fac: &Factorization) -> u64 {
    fac.factors
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product()
}

pub fn tau(fac: &Factorization) -> u64 {
    fac.factors.iter().map(|&(_, e)| u64::from(e) + 1).product()
}

pub fn sigma(fac: &Factorization) -> u64 {
    fac.factors
        .iter()
        .map(|&(p, e)| (p.pow(e + 1) - 1) / (p - 1))
        .product()
}

/// `(k, n)` with the convention `(k, n) = gcd(k mod n, n)`, so `(0, n) = n`.
pub fn gcd_mod(k: i64, n: u64) -> u64 {
    debug_assert!(n > 0);
    let r = i128::from(k).rem_euclid(i128::from(n)) as u64;
    r.gcd(&n)
}

/// Möbius function of an arbitrary positive integer.
pub fn mu(n: u64) -> Result<i64> {
    Ok(factorize(n)?.moebius())
}

pub fn phi(n: u64) -> Result<u64> {
    Ok(factorize(n)?.euler_phi())
}

/// Ramanujan sum `c_n(k) = Σ_{e | (k,n)} e μ(n/e)`.
pub fn ramanujan_sum(n: u64, k: i64) -> Result<i64> {
    let table = DivisorTable::new(n)?;
    Ok(ramanujan_sum_with(&table, k))
}

pub(crate) fn ramanujan_sum_with(table: &DivisorTable, k: i64) -> i64 {
    let n = table.n();
    let g = gcd_mod(k, n);
    table
        .iter()
        .filter(|e| g.is_multiple_of(*e))
        .map(|e| e as i64 * table.mu_at(n / e))
        .sum()
}

/// `(f * g)(d) = Σ_{ab = d} f(a) g(b)` for every `d | n`.
pub fn dirichlet_convolve(table: &DivisorTable, f: &[i64], g: &[i64]) -> Result<Vec<i64>> {
    table.check_len(f)?;
    table.check_len(g)?;
    let divs = table.as_slice();
    Ok(divs
        .iter()
        .map(|&d| {
            divs.iter()
                .take_while(|&&a| a <= d)
                .enumerate()
                .filter(|&(_, &a)| d % a == 0)
                .map(|(i, &a)| f[i] * g[table.index_of(d / a).expect("divisor")])
                .sum()
        })
        .collect())
}

/// `(μ * f)(d) = Σ_{e | d} μ(d/e) f(e)` for every `d | n`.
pub fn moebius_invert(table: &DivisorTable, f: &[i64]) -> Result<Vec<i64>> {
    let mus: Vec<i64> = table.iter().map(|d| table.mu_at(d)).collect();
    dirichlet_convolve(table, &mus, f)
}

/// `d ↦ Σ_{e | d} g(e)`, the inverse of [`moebius_invert`].
pub fn summatory(table: &DivisorTable, g: &[i64]) -> Result<Vec<i64>> {
    table.check_len(g)?;
    let divs = table.as_slice();
    Ok(divs
        .iter()
        .map(|&d| {
            divs.iter()
                .zip(g)
                .take_while(|(&e, _)| e <= d)
                .filter(|(&e, _)| d % e == 0)
                .map(|(_, &v)| v)
                .sum()
        })
        .collect())
}
