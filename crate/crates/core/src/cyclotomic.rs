//! Exact arithmetic in `ℤ[ζ_L]`.
//!
//! A [`CyclotomicInteger`] at level `L` is stored as its residue modulo the
//! cyclotomic polynomial `Φ_L` in the power basis `1, ζ, …, ζ^(φ(L)−1)`.
//! Since `Φ_L` is irreducible this residue is unique, so ring equality at a
//! fixed level is plain vector equality. Values at different levels are
//! compared and combined after lifting both to the lcm of their levels.
//!
//! ```
//! use menon::cyclotomic::CyclotomicInteger;
//!
//! let z3 = CyclotomicInteger::root_of_unity(3, 1);
//! let sum = CyclotomicInteger::from_int(1) + &z3 + &(&z3 * &z3);
//! assert!(sum.is_zero());
//! ```

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;

use crate::arith::{factorize, DivisorTable};
use crate::error::{Error, Result};

/// Integer polynomial with ascending coefficients and no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![1] }
    }

    /// `x^d − 1`.
    pub fn x_pow_minus_one(d: usize) -> Self {
        let mut coeffs = vec![0; d + 1];
        coeffs[0] -= 1;
        coeffs[d] += 1;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Quotient and remainder by a monic divisor; both are exact over `ℤ`.
    pub fn div_rem_monic(&self, divisor: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (IntPolynomial::default(), self.clone());
        }
        let mut quot = vec![0; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &p) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] -= c * p;
            }
        }
        rem.truncate(dd);
        (IntPolynomial::new(quot), IntPolynomial::new(rem))
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return IntPolynomial::default();
        }
        let mut out = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

/// `Φ_L = ∏_{d | L} (x^d − 1)^{μ(L/d)}`, evaluated as one exact division.
pub fn cyclotomic_poly(level: u64) -> IntPolynomial {
    level_data(level).phi.clone()
}

fn compute_cyclotomic_poly(level: u64) -> IntPolynomial {
    let table = DivisorTable::new(level).expect("level is positive");
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for d in table.iter() {
        match table.mu_at(level / d) {
            1 => num = &num * &IntPolynomial::x_pow_minus_one(d as usize),
            -1 => den = &den * &IntPolynomial::x_pow_minus_one(d as usize),
            _ => {}
        }
    }
    let (q, r) = num.div_rem_monic(&den);
    debug_assert!(r.coeffs.is_empty());
    q
}

struct LevelData {
    phi: IntPolynomial,
    /// nonzero non-leading terms of Φ_L as (index, coefficient)
    tail: Vec<(usize, i64)>,
    degree: usize,
}

fn level_data(level: u64) -> Arc<LevelData> {
    assert!(level > 0, "cyclotomic level must be positive");
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<LevelData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(data) = cache.read().unwrap().get(&level) {
        return Arc::clone(data);
    }
    let phi = compute_cyclotomic_poly(level);
    let degree = phi.degree().expect("Φ_L is nonzero");
    let tail = phi.coeffs[..degree]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect();
    let data = Arc::new(LevelData { phi, tail, degree });
    Arc::clone(cache.write().unwrap().entry(level).or_insert(data))
}

/// Reduce `Σ v[i] x^i` modulo `Φ_L` in place and return the canonical vector.
fn reduce(data: &LevelData, mut v: Vec<i64>) -> Vec<i64> {
    let deg = data.degree;
    if v.len() < deg {
        v.resize(deg, 0);
        return v;
    }
    for i in (deg..v.len()).rev() {
        let c = v[i];
        if c == 0 {
            continue;
        }
        for &(j, p) in &data.tail {
            v[i - deg + j] -= c * p;
        }
    }
    v.truncate(deg);
    v
}

/// An element of `ℤ[ζ_L]` in canonical power-basis form.
#[derive(Debug, Clone)]
pub struct CyclotomicInteger {
    level: u64,
    coeffs: Vec<i64>,
}

impl CyclotomicInteger {
    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// An ordinary integer, at level 1.
    pub fn from_int(c: i64) -> Self {
        CyclotomicInteger {
            level: 1,
            coeffs: vec![c],
        }
    }

    /// `ζ_L^a`, with `a` taken modulo `L`.
    pub fn root_of_unity(level: u64, a: i64) -> Self {
        let t = a.rem_euclid(level as i64) as u64;
        let mut counts = vec![0; level as usize];
        counts[t as usize] = 1;
        Self::from_exponent_counts(level, counts)
    }

    /// `Σ_t counts[t] ζ_L^t` for a vector of any length (exponents past `L`
    /// wrap around since `ζ_L^L = 1`).
    pub fn from_exponent_counts(level: u64, counts: Vec<i64>) -> Self {
        let data = level_data(level);
        let l = level as usize;
        let mut v = counts;
        if v.len() > l {
            let tail = v.split_off(l);
            for (i, c) in tail.into_iter().enumerate() {
                v[i % l] += c;
            }
        }
        CyclotomicInteger {
            level,
            coeffs: reduce(&data, v),
        }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Power-basis coefficients, length `φ(level)`.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value as an ordinary integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    /// Same element, represented at level `target` (a multiple of the level).
    pub fn lift_to_level(&self, target: u64) -> Result<Self> {
        if target == 0 || !target.is_multiple_of(self.level) {
            return Err(Error::BadLift {
                from: self.level,
                to: target,
            });
        }
        if target == self.level {
            return Ok(self.clone());
        }
        let step = (target / self.level) as usize;
        let mut v = vec![0; target as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * step] = c;
        }
        Ok(CyclotomicInteger {
            level: target,
            coeffs: reduce(&level_data(target), v),
        })
    }

    fn lifted_pair(&self, other: &Self) -> (Self, Self) {
        let l = self.level.lcm(&other.level);
        (
            self.lift_to_level(l).expect("lcm is a multiple"),
            other.lift_to_level(l).expect("lcm is a multiple"),
        )
    }

    pub fn scale(&self, c: i64) -> Self {
        CyclotomicInteger {
            level: self.level,
            coeffs: self.coeffs.iter().map(|&x| x * c).collect(),
        }
    }

    /// Floating-point approximation, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let l = self.level as f64;
        self.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (i, &c)| {
                let theta = 2.0 * PI * i as f64 / l;
                (re + c as f64 * theta.cos(), im + c as f64 * theta.sin())
            })
    }
}

impl Default for CyclotomicInteger {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for CyclotomicInteger {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl PartialEq for CyclotomicInteger {
    fn eq(&self, other: &Self) -> bool {
        if self.level == other.level {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.lifted_pair(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CyclotomicInteger {}

impl Add for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn add(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        let (mut a, b) = self.lifted_pair(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }
}

impl Add<&CyclotomicInteger> for CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn add(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        &self + rhs
    }
}

impl Add for CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn add(self, rhs: CyclotomicInteger) -> CyclotomicInteger {
        &self + &rhs
    }
}

impl Neg for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn neg(self) -> CyclotomicInteger {
        self.scale(-1)
    }
}

impl Neg for CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn neg(self) -> CyclotomicInteger {
        self.scale(-1)
    }
}

impl Sub for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn sub(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        self + &(-rhs)
    }
}

impl Sub for CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn sub(self, rhs: CyclotomicInteger) -> CyclotomicInteger {
        &self - &rhs
    }
}

impl Mul for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn mul(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        let (a, b) = self.lifted_pair(rhs);
        let mut prod = vec![0; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        CyclotomicInteger {
            level: a.level,
            coeffs: reduce(&level_data(a.level), prod),
        }
    }
}

impl Mul for CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn mul(self, rhs: CyclotomicInteger) -> CyclotomicInteger {
        &self * &rhs
    }
}

impl std::iter::Sum for CyclotomicInteger {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, z| acc + z)
    }
}

/// Renders as a combination of `zeta(L)^a`, e.g. `-1 - zeta(3)^1`.
impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_integer() {
            return write!(f, "{c}");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => write!(f, "zeta({})^{i}", self.level)?,
                _ => write!(f, "{a}*zeta({})^{i}", self.level)?,
            }
        }
        Ok(())
    }
}

/// `φ(L)`, the rank of `ℤ[ζ_L]`.
pub fn rank(level: u64) -> usize {
    factorize(level).expect("level is positive").euler_phi() as usize
}
