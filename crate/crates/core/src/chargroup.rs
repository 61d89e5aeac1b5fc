//! The unit group `(ℤ/nℤ)*` and Dirichlet characters modulo `n`.
//!
//! [`UnitGroup`] fixes a canonical generator system: prime-power components
//! in ascending order, the smallest primitive root for odd prime powers, `3`
//! for the modulus 4, and the pair `(−1, 5)` for `2^a` with `a ≥ 3`. A
//! [`DirichletCharacter`] is an exponent vector against those generators, so
//! `χ(g_i) = ζ_{ord_i}^{e_i}`. Character values are exact
//! [`CyclotomicInteger`]s at the level of the character's order.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;

use crate::arith::{factorize, gcd_mod};
use crate::cyclotomic::CyclotomicInteger;
use crate::error::{Error, Result};

/// One cyclic (or, for `2^a`, bicyclic) factor of the unit group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub modulus: u64,
    /// Residues modulo `modulus`.
    pub generators: Vec<u64>,
    pub orders: Vec<u64>,
}

/// Canonical generator system of `(ℤ/nℤ)*` with a full discrete-log table.
pub struct UnitGroup {
    n: u64,
    components: Vec<Component>,
    orders: Vec<u64>,
    generator_units: Vec<u64>,
    /// `dlog[k * rank + i]` is the exponent of generator `i` in `k`; only
    /// meaningful for units.
    dlog: Vec<u32>,
}

impl fmt::Debug for UnitGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UnitGroup")
            .field("n", &self.n)
            .field("components", &self.components)
            .finish_non_exhaustive()
    }
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = u128::from(m);
    let mut acc = 1u128 % m128;
    let mut b = u128::from(base % m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Smallest positive primitive root modulo an odd prime power `p^a`.
fn smallest_primitive_root(p: u64, q: u64) -> u64 {
    let order = q / p * (p - 1);
    let order_primes: Vec<u64> = factorize(order).expect("positive").primes().collect();
    (2..q)
        .filter(|g| g % p != 0)
        .find(|&g| order_primes.iter().all(|&r| pow_mod(g, order / r, q) != 1))
        .expect("odd prime powers have primitive roots")
}

fn component_for(p: u64, a: u32) -> Component {
    let q = p.pow(a);
    let (generators, orders) = match (p, a) {
        (2, 1) => (vec![], vec![]),
        (2, 2) => (vec![3], vec![2]),
        (2, _) => (vec![q - 1, 5], vec![2, q / 4]),
        _ => (vec![smallest_primitive_root(p, q)], vec![q / p * (p - 1)]),
    };
    Component {
        modulus: q,
        generators,
        orders,
    }
}

/// Exponent vectors for every unit residue modulo the component modulus,
/// obtained by enumerating all generator powers.
fn component_dlog(c: &Component) -> Vec<Vec<u32>> {
    let q = c.modulus;
    let mut table = vec![Vec::new(); q as usize];
    let mut exps = vec![0u64; c.generators.len()];
    loop {
        let x = c
            .generators
            .iter()
            .zip(&exps)
            .fold(1 % q, |acc, (&g, &e)| acc * pow_mod(g, e, q) % q);
        table[x as usize] = exps.iter().map(|&e| e as u32).collect();
        // odometer over exponent vectors
        let mut i = exps.len();
        loop {
            if i == 0 {
                return table;
            }
            i -= 1;
            exps[i] += 1;
            if exps[i] < c.orders[i] {
                break;
            }
            exps[i] = 0;
        }
    }
}

/// Residue modulo `n` congruent to `x_i` modulo each pairwise-coprime `m_i`.
fn crt(parts: &[(u64, u64)], n: u64) -> u64 {
    let mut acc = 0u128;
    for &(x, m) in parts {
        let rest = n / m;
        // rest^{-1} mod m via extended gcd
        let inv = {
            let e = (rest as i128 % m as i128).extended_gcd(&(m as i128));
            e.x.rem_euclid(m as i128) as u128
        };
        acc = (acc + u128::from(x) * u128::from(rest) % u128::from(n) * inv) % u128::from(n);
    }
    acc as u64
}

impl UnitGroup {
    pub fn new(n: u64) -> Result<Self> {
        let fac = factorize(n)?;
        let components: Vec<Component> = fac
            .factors()
            .iter()
            .map(|&(p, a)| component_for(p, a))
            .collect();
        let orders: Vec<u64> = components.iter().flat_map(|c| c.orders.clone()).collect();
        let rank = orders.len();

        let moduli: Vec<u64> = components.iter().map(|c| c.modulus).collect();
        let mut generator_units = Vec::with_capacity(rank);
        for (ci, c) in components.iter().enumerate() {
            for &g in &c.generators {
                let parts: Vec<(u64, u64)> = moduli
                    .iter()
                    .enumerate()
                    .map(|(j, &m)| (if j == ci { g } else { 1 % m }, m))
                    .collect();
                generator_units.push(crt(&parts, n));
            }
        }

        let tables: Vec<Vec<Vec<u32>>> = components.iter().map(component_dlog).collect();
        let mut dlog = vec![0u32; n as usize * rank];
        for k in 0..n {
            if k.gcd(&n) != 1 {
                continue;
            }
            let row = &mut dlog[k as usize * rank..(k as usize + 1) * rank];
            let mut i = 0;
            for (c, t) in components.iter().zip(&tables) {
                for &e in &t[(k % c.modulus) as usize] {
                    row[i] = e;
                    i += 1;
                }
            }
        }

        Ok(UnitGroup {
            n,
            components,
            orders,
            generator_units,
            dlog,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Orders of all generators, in canonical order.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// The generators as residues modulo `n` (each is `1` in the other
    /// components).
    pub fn generator_units(&self) -> &[u64] {
        &self.generator_units
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn is_unit(&self, k: i64) -> bool {
        gcd_mod(k, self.n) == 1
    }

    /// Exponent vector of a unit, or `None` for non-units.
    pub fn dlog(&self, k: i64) -> Option<&[u32]> {
        if !self.is_unit(k) {
            return None;
        }
        let r = k.rem_euclid(self.n as i64) as usize;
        Some(&self.dlog[r * self.rank()..(r + 1) * self.rank()])
    }

    pub fn discrete_log(&self, k: i64) -> Result<Vec<u64>> {
        self.dlog(k)
            .map(|e| e.iter().map(|&x| u64::from(x)).collect())
            .ok_or(Error::NotUnit { k, n: self.n })
    }
}

pub fn unit_group(n: u64) -> Result<UnitGroup> {
    UnitGroup::new(n)
}

/// A Dirichlet character modulo `n`.
#[derive(Clone)]
pub struct DirichletCharacter {
    group: Arc<UnitGroup>,
    exponents: Vec<u64>,
    order: u64,
    /// `χ(g_i) = ζ_order^{steps[i]}`
    steps: Vec<u64>,
    conductor: OnceLock<u64>,
    primitive: OnceLock<Arc<DirichletCharacter>>,
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter {}

/// `chi(n=12;e=[1,0])`
impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi(n={};e=[", self.modulus())?;
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}

impl DirichletCharacter {
    pub fn new(group: Arc<UnitGroup>, exponents: Vec<u64>) -> Result<Self> {
        if exponents.len() != group.rank() {
            return Err(Error::InvalidParam(format!(
                "expected {} character exponents, got {}",
                group.rank(),
                exponents.len()
            )));
        }
        let exponents: Vec<u64> = exponents
            .iter()
            .zip(group.orders())
            .map(|(&e, &o)| e % o)
            .collect();
        let order = exponents
            .iter()
            .zip(group.orders())
            .fold(1u64, |acc, (&e, &o)| acc.lcm(&(o / o.gcd(&e))));
        let steps = exponents
            .iter()
            .zip(group.orders())
            .map(|(&e, &o)| e * order / o)
            .collect();
        Ok(DirichletCharacter {
            group,
            exponents,
            order,
            steps,
            conductor: OnceLock::new(),
            primitive: OnceLock::new(),
        })
    }

    pub fn principal(group: Arc<UnitGroup>) -> Self {
        let zeros = vec![0; group.rank()];
        Self::new(group, zeros).expect("rank matches")
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Order of `χ`; every value lies in `ℤ[ζ_order]`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_principal(&self) -> bool {
        self.order == 1
    }

    /// `t` with `χ(k) = ζ_order^t`, or `None` when `(k, n) > 1`.
    pub fn exponent_at(&self, k: i64) -> Option<u64> {
        let logs = self.group.dlog(k)?;
        let t = logs
            .iter()
            .zip(&self.steps)
            .fold(0u64, |acc, (&x, &s)| (acc + u64::from(x) * s) % self.order);
        Some(t)
    }

    pub fn eval(&self, k: i64) -> CyclotomicInteger {
        match self.exponent_at(k) {
            Some(t) => CyclotomicInteger::root_of_unity(self.order, t as i64),
            None => CyclotomicInteger::zero(),
        }
    }

    /// `Σ_{k=1..n} w(k) χ(k)`, accumulated exactly.
    pub fn weighted_sum(&self, mut weight: impl FnMut(u64) -> i64) -> CyclotomicInteger {
        let mut counts = vec![0i64; self.order as usize];
        for k in 1..=self.modulus() {
            if let Some(t) = self.exponent_at(k as i64) {
                counts[t as usize] += weight(k);
            }
        }
        CyclotomicInteger::from_exponent_counts(self.order, counts)
    }

    /// The least `d | n` with `χ(k) = 1` for every unit `k ≡ 1 (mod d)`.
    pub fn conductor(&self) -> u64 {
        *self.conductor.get_or_init(|| {
            let n = self.modulus();
            factorize(n)
                .expect("positive modulus")
                .divisors()
                .iter()
                .find(|&d| {
                    (0..n / d).all(|j| {
                        self.exponent_at((1 + j * d) as i64)
                            .is_none_or(|t| t == 0)
                    })
                })
                .expect("d = n always qualifies")
        })
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus()
    }

    /// The primitive character modulo the conductor that induces `χ`.
    pub fn induced_primitive(&self) -> Arc<DirichletCharacter> {
        Arc::clone(self.primitive.get_or_init(|| {
            let n = self.modulus();
            let d = self.conductor();
            if d == n {
                return Arc::new(self.clone());
            }
            let group = Arc::new(UnitGroup::new(d).expect("conductor is positive"));
            let exponents = group
                .generator_units()
                .iter()
                .zip(group.orders())
                .map(|(&u, &ord)| {
                    let t = (0..n / d)
                        .find_map(|j| self.exponent_at((u + j * d) as i64))
                        .expect("every unit mod d lifts to a unit mod n");
                    debug_assert_eq!(t * ord % self.order, 0);
                    t * ord / self.order
                })
                .collect();
            Arc::new(DirichletCharacter::new(group, exponents).expect("rank matches"))
        }))
    }

    /// `Σ_{k=1..n, k ≡ s (mod d)} χ(k)` for `d | n`.
    pub fn residue_class_sum(&self, d: u64, s: i64) -> Result<CyclotomicInteger> {
        let n = self.modulus();
        if d == 0 || !n.is_multiple_of(d) {
            return Err(Error::NotDivisor { d, n });
        }
        let start = s.rem_euclid(d as i64) as u64;
        let mut counts = vec![0i64; self.order as usize];
        for j in 0..n / d {
            if let Some(t) = self.exponent_at((start + j * d) as i64) {
                counts[t as usize] += 1;
            }
        }
        Ok(CyclotomicInteger::from_exponent_counts(self.order, counts))
    }
}

/// All `φ(n)` characters modulo `n`, in lexicographic exponent order; the
/// principal character comes first.
pub fn characters(n: u64) -> Result<Vec<DirichletCharacter>> {
    Ok(characters_of(&Arc::new(UnitGroup::new(n)?)))
}

pub fn characters_of(group: &Arc<UnitGroup>) -> Vec<DirichletCharacter> {
    let orders = group.orders();
    let mut out = Vec::with_capacity(group.order() as usize);
    let mut exps = vec![0u64; orders.len()];
    loop {
        out.push(DirichletCharacter::new(Arc::clone(group), exps.clone()).expect("rank matches"));
        let mut i = exps.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            exps[i] += 1;
            if exps[i] < orders[i] {
                break;
            }
            exps[i] = 0;
        }
    }
}

/// The `index`-th character modulo `n` in [`characters`] order.
pub fn character_by_index(n: u64, index: usize) -> Result<DirichletCharacter> {
    let group = Arc::new(UnitGroup::new(n)?);
    let total = group.order() as usize;
    if index >= total {
        return Err(Error::InvalidParam(format!(
            "character index {index} out of range: there are {total} characters mod {n}"
        )));
    }
    let mut rest = index as u64;
    let mut exps = vec![0u64; group.rank()];
    for (e, &o) in exps.iter_mut().zip(group.orders()).rev() {
        *e = rest % o;
        rest /= o;
    }
    DirichletCharacter::new(group, exps)
}
