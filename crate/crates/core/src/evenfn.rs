//! Integer-valued even functions modulo `n`.
//!
//! An even function satisfies `f(k) = f((k, n))`, so it is determined by its
//! values on the divisors of `n`. Each [`EvenFunction`] also carries its
//! Möbius transform `(μ*f)(d)`, which every closed form in
//! [`identities`](crate::identities) consumes; `f(k) = Σ_{d | (k,n)} (μ*f)(d)`.

use std::fmt;
use std::str::FromStr;

use crate::arith::{
    factorize, gcd_mod, moebius_invert, ramanujan_sum_with, DivisorTable, Factorization,
};
use crate::error::{Error, Result};

/// Default cap on the number of tuples enumerated by
/// [`EvenFunction::solution_count`].
pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenFunction {
    name: String,
    table: DivisorTable,
    values: Vec<i64>,
    mu_star: Vec<i64>,
}

impl EvenFunction {
    /// Build from the values `f(d)` on the divisors of `n`, ascending.
    pub fn from_divisor_values(n: u64, values: Vec<i64>) -> Result<Self> {
        let table = DivisorTable::new(n)?;
        let mu_star = moebius_invert(&table, &values)?;
        Ok(EvenFunction {
            name: "custom".into(),
            table,
            values,
            mu_star,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `k ↦ (k, n)`.
    pub fn gcd(n: u64) -> Result<Self> {
        Self::compose_gcd(n, |d| d as i64).map(|f| f.with_name("gcd"))
    }

    /// `k ↦ F((k, n))` for an arbitrary arithmetic function `F`.
    pub fn compose_gcd(n: u64, big_f: impl Fn(u64) -> i64) -> Result<Self> {
        let table = DivisorTable::new(n)?;
        let values = table.iter().map(big_f).collect();
        Self::from_divisor_values(n, values)
    }

    /// `k ↦ τ((k, n))`.
    pub fn tau_gcd(n: u64) -> Result<Self> {
        Self::compose_gcd(n, |d| tau_of(d) as i64).map(|f| f.with_name("tau_gcd"))
    }

    /// `k ↦ σ((k, n))`.
    pub fn sigma_gcd(n: u64) -> Result<Self> {
        Self::compose_gcd(n, |d| sigma_of(d) as i64).map(|f| f.with_name("sigma_gcd"))
    }

    /// `k ↦ [(k, n) = 1]`.
    pub fn unit_indicator(n: u64) -> Result<Self> {
        Self::compose_gcd(n, |d| i64::from(d == 1)).map(|f| f.with_name("unit_indicator"))
    }

    /// The Ramanujan sum `k ↦ c_n(k)`.
    pub fn ramanujan(n: u64) -> Result<Self> {
        let table = DivisorTable::new(n)?;
        let values = table
            .iter()
            .map(|d| ramanujan_sum_with(&table, d as i64))
            .collect();
        Ok(Self::from_divisor_values(n, values)?.with_name("ramanujan"))
    }

    /// `N(k)`: the number of `(x_1, …, x_q) ∈ (ℤ/nℤ)^q` with every
    /// `(x_i, n) = 1` and `x_1 + ⋯ + x_q ≡ k (mod n)`, by enumerating all
    /// `φ(n)^q` tuples.
    pub fn solution_count(n: u64, q: u32, budget: u128) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParam("q must be positive".into()));
        }
        let units: Vec<u64> = (0..n).filter(|&x| gcd_mod(x as i64, n) == 1).collect();
        let size = (units.len() as u128).checked_pow(q).unwrap_or(u128::MAX);
        if size > budget {
            return Err(Error::BudgetExceeded { size, budget });
        }
        let mut counts = vec![0i64; n as usize];
        let mut idx = vec![0usize; q as usize];
        'outer: loop {
            let sum = idx.iter().map(|&i| units[i]).sum::<u64>() % n;
            counts[sum as usize] += 1;
            for slot in idx.iter_mut().rev() {
                *slot += 1;
                if *slot < units.len() {
                    continue 'outer;
                }
                *slot = 0;
            }
            break;
        }
        let table = DivisorTable::new(n)?;
        let values = table.iter().map(|d| counts[(d % n) as usize]).collect();
        let f = Self::from_divisor_values(n, values)?.with_name(format!("nsolutions:q={q}"));
        debug_assert!((0..n).all(|k| f.eval(k as i64) == counts[k as usize]));
        Ok(f)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn modulus(&self) -> u64 {
        self.table.n()
    }

    pub fn divisors(&self) -> &DivisorTable {
        &self.table
    }

    /// `f(d)` for each `d | n`, ascending.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `(μ*f)(d)` for each `d | n`, ascending.
    pub fn mu_star(&self) -> &[i64] {
        &self.mu_star
    }

    /// `(μ*f)(d)`, or `None` if `d ∤ n`.
    pub fn mu_star_at(&self, d: u64) -> Option<i64> {
        self.table.index_of(d).map(|i| self.mu_star[i])
    }

    pub fn eval(&self, k: i64) -> i64 {
        let g = gcd_mod(k, self.modulus());
        self.values[self.table.index_of(g).expect("gcd divides n")]
    }
}

fn tau_of(d: u64) -> u64 {
    factorize(d).as_ref().map_or(0, Factorization::tau)
}

fn sigma_of(d: u64) -> u64 {
    factorize(d).as_ref().map_or(0, Factorization::sigma)
}

/// Names of the built-in even functions, as accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvenFnSpec {
    Gcd,
    Ramanujan,
    TauGcd,
    SigmaGcd,
    NSolutions { q: u32 },
    UnitIndicator,
}

impl EvenFnSpec {
    /// The family swept by the default verification runs.
    pub const STANDARD: [EvenFnSpec; 5] = [
        EvenFnSpec::Gcd,
        EvenFnSpec::Ramanujan,
        EvenFnSpec::TauGcd,
        EvenFnSpec::SigmaGcd,
        EvenFnSpec::UnitIndicator,
    ];

    pub fn build(self, n: u64, budget: u128) -> Result<EvenFunction> {
        match self {
            EvenFnSpec::Gcd => EvenFunction::gcd(n),
            EvenFnSpec::Ramanujan => EvenFunction::ramanujan(n),
            EvenFnSpec::TauGcd => EvenFunction::tau_gcd(n),
            EvenFnSpec::SigmaGcd => EvenFunction::sigma_gcd(n),
            EvenFnSpec::NSolutions { q } => EvenFunction::solution_count(n, q, budget),
            EvenFnSpec::UnitIndicator => EvenFunction::unit_indicator(n),
        }
    }
}

impl fmt::Display for EvenFnSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvenFnSpec::Gcd => write!(f, "gcd"),
            EvenFnSpec::Ramanujan => write!(f, "ramanujan"),
            EvenFnSpec::TauGcd => write!(f, "tau_gcd"),
            EvenFnSpec::SigmaGcd => write!(f, "sigma_gcd"),
            EvenFnSpec::NSolutions { q } => write!(f, "nsolutions:q={q}"),
            EvenFnSpec::UnitIndicator => write!(f, "unit_indicator"),
        }
    }
}

impl FromStr for EvenFnSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "gcd" => EvenFnSpec::Gcd,
            "ramanujan" => EvenFnSpec::Ramanujan,
            "tau_gcd" => EvenFnSpec::TauGcd,
            "sigma_gcd" => EvenFnSpec::SigmaGcd,
            "unit_indicator" => EvenFnSpec::UnitIndicator,
            _ => {
                let q = s
                    .strip_prefix("nsolutions:q=")
                    .and_then(|q| q.parse::<u32>().ok())
                    .filter(|&q| q > 0)
                    .ok_or_else(|| Error::InvalidParam(format!("unknown even function `{s}`")))?;
                EvenFnSpec::NSolutions { q }
            }
        })
    }
}
