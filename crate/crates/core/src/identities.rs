//! Left-hand sides by direct enumeration and right-hand sides in closed form
//! for the Menon-type identities, with exact comparison.
//!
//! Every left-hand side in this module is the definitional sum with no
//! shortcuts, so it serves as the oracle for the matching closed form.
//! Closed forms that divide by `φ(e)` or `φ(δd)` accumulate in exact
//! rationals and fail with [`Error::NonIntegral`] if the final scalar is not
//! an integer.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use num_integer::Integer;
use num_rational::Ratio;

use crate::arith::{factorize, gcd_mod, ramanujan_sum_with, DivisorTable};
use crate::chargroup::{characters_of, DirichletCharacter, UnitGroup};
use crate::cyclotomic::CyclotomicInteger;
use crate::error::{Error, Result};
use crate::evenfn::{EvenFnSpec, EvenFunction, DEFAULT_BUDGET};

type Rational = Ratio<i128>;

fn integral(q: Rational) -> Result<i64> {
    if !q.is_integer() {
        return Err(Error::NonIntegral(q.to_string()));
    }
    i64::try_from(q.to_integer()).map_err(|_| Error::NonIntegral(q.to_string()))
}

fn check_divides(d: u64, n: u64) -> Result<()> {
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::NotDivisor { d, n });
    }
    Ok(())
}

fn check_modulus(chi: &DirichletCharacter, n: u64) -> Result<()> {
    if chi.modulus() != n {
        return Err(Error::ModulusMismatch {
            chi: chi.modulus(),
            n,
        });
    }
    Ok(())
}

fn check_primitive(chi: &DirichletCharacter) -> Result<()> {
    if !chi.is_primitive() {
        return Err(Error::NotPrimitive {
            n: chi.modulus(),
            conductor: chi.conductor(),
        });
    }
    Ok(())
}

fn coprime(e: u64, s: i64) -> bool {
    gcd_mod(s, e) == 1
}

/// `Σ_{k=1..n, (k,n)=1, k ≡ r (mod d)} f(k − s)`.
pub fn restricted_sum(n: u64, d: u64, r: i64, s: i64, f: &EvenFunction) -> Result<i64> {
    check_divides(d, n)?;
    let r = r.rem_euclid(d as i64);
    Ok((1..=n as i64)
        .filter(|&k| gcd_mod(k, n) == 1 && k.rem_euclid(d as i64) == r)
        .map(|k| f.eval(k - s))
        .sum())
}

/// Closed form of [`restricted_sum`] for an arbitrary even function,
/// driven by `(μ*f)` on the divisors of `n`.
pub fn restricted_closed_form(n: u64, d: u64, r: i64, s: i64, f: &EvenFunction) -> Result<i64> {
    restricted_closed_form_with(n, d, r, s, |e| f.mu_star_at(e).expect("e divides n"))
}

/// Closed form of [`restricted_sum`] for `f(k) = (k, n)`, where `(μ*f)(e) = φ(e)`.
pub fn restricted_gcd_closed_form(n: u64, d: u64, r: i64, s: i64) -> Result<i64> {
    let table = DivisorTable::new(n)?;
    restricted_closed_form_with(n, d, r, s, |e| table.phi_at(e) as i64)
}

/// Closed form of [`restricted_sum`] for `f = c_n`, where `(μ*c_n)(e) = e μ(n/e)`.
pub fn restricted_ramanujan_closed_form(n: u64, d: u64, r: i64, s: i64) -> Result<i64> {
    let table = DivisorTable::new(n)?;
    restricted_closed_form_with(n, d, r, s, |e| e as i64 * table.mu_at(n / e))
}

fn restricted_closed_form_with(
    n: u64,
    d: u64,
    r: i64,
    s: i64,
    mu_star: impl Fn(u64) -> i64,
) -> Result<i64> {
    check_divides(d, n)?;
    if gcd_mod(r, d) != 1 {
        return Ok(0);
    }
    let table = DivisorTable::new(n)?;
    let mut sum = Rational::from_integer(0);
    for e in table.iter().filter(|&e| coprime(e, s)) {
        let g = e.gcd(&d);
        if (r - s).rem_euclid(g as i64) != 0 {
            continue;
        }
        sum += Rational::new(
            i128::from(mu_star(e)) * i128::from(table.phi_at(g)),
            i128::from(table.phi_at(e)),
        );
    }
    integral(sum * Rational::new(i128::from(table.phi_at(n)), i128::from(table.phi_at(d))))
}

/// Both sides of the Brauer–Rademacher identity
/// `Σ_{(k,n)=1} c_n(k − s) = μ(n) c_n(s)`.
pub fn brauer_rademacher(n: u64, s: i64) -> Result<(i64, i64)> {
    let table = DivisorTable::new(n)?;
    let c = EvenFunction::ramanujan(n)?;
    let lhs = (1..=n as i64)
        .filter(|&k| gcd_mod(k, n) == 1)
        .map(|k| c.eval(k - s))
        .sum();
    let rhs = table.mu_at(n) * ramanujan_sum_with(&table, s);
    Ok((lhs, rhs))
}

/// The intermediate form `φ(n) Σ_{e | n, (e,s)=1} e μ(n/e) / φ(e)`.
pub fn brauer_rademacher_divisor_form(n: u64, s: i64) -> Result<i64> {
    let table = DivisorTable::new(n)?;
    let sum: Rational = table
        .iter()
        .filter(|&e| coprime(e, s))
        .map(|e| {
            Rational::new(
                i128::from(e as i64 * table.mu_at(n / e)),
                i128::from(table.phi_at(e)),
            )
        })
        .sum();
    integral(sum * i128::from(table.phi_at(n)))
}

/// `Σ_{k=1..n} f(k − s) χ(k)`, accumulated exactly in `ℤ[ζ]`.
pub fn twisted_sum(
    n: u64,
    chi: &DirichletCharacter,
    s: i64,
    f: &EvenFunction,
) -> Result<CyclotomicInteger> {
    check_modulus(chi, n)?;
    if f.modulus() != n {
        return Err(Error::InvalidParam(format!(
            "even function is mod {}, expected mod {n}",
            f.modulus()
        )));
    }
    Ok(chi.weighted_sum(|k| f.eval(k as i64 - s)))
}

/// Shared shape of the character-twisted closed forms:
/// `φ(n) χ*(s) · scalar` where `scalar` is a rational sum over `δ | n/d`
/// with `(δ, s) = 1`. Zero whenever `χ*(s) = 0`, i.e. `(s, d) > 1`.
fn twisted_closed_form_with(
    n: u64,
    chi: &DirichletCharacter,
    s: i64,
    term: impl Fn(&DivisorTable, u64, u64) -> Rational,
) -> Result<CyclotomicInteger> {
    check_modulus(chi, n)?;
    let d = chi.conductor();
    let star = chi.induced_primitive().eval(s);
    if star.is_zero() {
        return Ok(star);
    }
    let table = DivisorTable::new(n)?;
    let sum: Rational = DivisorTable::new(n / d)?
        .iter()
        .filter(|&delta| coprime(delta, s))
        .map(|delta| term(&table, delta, d))
        .sum();
    let scalar = integral(sum * i128::from(table.phi_at(n)))?;
    Ok(star.scale(scalar))
}

/// Closed form of [`twisted_sum`]:
/// `φ(n) χ*(s) Σ_{δ | n/d, (δ,s)=1} (μ*f)(δd) / φ(δd)` with `d` the conductor.
pub fn twisted_closed_form(
    n: u64,
    chi: &DirichletCharacter,
    s: i64,
    f: &EvenFunction,
) -> Result<CyclotomicInteger> {
    twisted_closed_form_with(n, chi, s, |t, delta, d| {
        Rational::new(
            i128::from(f.mu_star_at(delta * d).expect("δd divides n")),
            i128::from(t.phi_at(delta * d)),
        )
    })
}

/// Closed form of [`twisted_sum`] for `f(k) = (k, n)`:
/// `φ(n) χ*(s) · #{δ | n/d : (δ, s) = 1}`.
pub fn twisted_gcd_closed_form(
    n: u64,
    chi: &DirichletCharacter,
    s: i64,
) -> Result<CyclotomicInteger> {
    twisted_closed_form_with(n, chi, s, |_, _, _| Rational::from_integer(1))
}

/// Closed form of [`twisted_sum`] for `f = c_n`:
/// `d φ(n) χ*(s) Σ_{δ | n/d, (δ,s)=1} δ μ(n/(δd)) / φ(δd)`.
pub fn twisted_ramanujan_closed_form(
    n: u64,
    chi: &DirichletCharacter,
    s: i64,
) -> Result<CyclotomicInteger> {
    twisted_closed_form_with(n, chi, s, |t, delta, d| {
        Rational::new(
            i128::from(d as i64 * delta as i64 * t.mu_at(n / (delta * d))),
            i128::from(t.phi_at(delta * d)),
        )
    })
}

/// For primitive `χ` modulo `n`: `Σ_{k=1..n} f(k − s) χ(k) = (μ*f)(n) χ(s)`.
pub fn primitive_closed_form(
    n: u64,
    chi: &DirichletCharacter,
    s: i64,
    f: &EvenFunction,
) -> Result<CyclotomicInteger> {
    check_modulus(chi, n)?;
    check_primitive(chi)?;
    Ok(chi.eval(s).scale(f.mu_star_at(n).expect("n divides n")))
}

/// For primitive `χ`: `Σ_{k=1..n} F((k − s, n)) χ(k) = (μ*F)(n) χ(s)`.
pub fn primitive_composition_closed_form(
    n: u64,
    chi: &DirichletCharacter,
    s: i64,
    big_f: ArithFn,
) -> Result<CyclotomicInteger> {
    check_modulus(chi, n)?;
    check_primitive(chi)?;
    Ok(chi.eval(s).scale(big_f.mu_star_at(n)?))
}

/// `Σ_{k=1..n, (k,n)=1} (k − s, n)` by direct summation.
pub fn menon_gcd_sum_naive(n: u64, s: i64) -> Result<i64> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    Ok((1..=n)
        .filter(|k| k.gcd(&n) == 1)
        .map(|k| gcd_mod(k as i64 - s, n) as i64)
        .sum())
}

/// `φ(n) · #{δ | n : (δ, s) = 1}`, from the factorization of `n` alone.
///
/// A divisor is coprime to `s` exactly when it avoids every prime dividing
/// `s`, so the count is `∏ (a_p + 1)` over the prime powers `p^a_p ‖ n`
/// with `p ∤ s`.
pub fn menon_gcd_sum_fast(n: u64, s: i64) -> Result<i64> {
    let fac = factorize(n)?;
    let count: u64 = fac
        .factors()
        .iter()
        .filter(|&&(p, _)| s.rem_euclid(p as i64) != 0)
        .map(|&(_, a)| u64::from(a) + 1)
        .product();
    Ok((fac.euler_phi() * count) as i64)
}

/// Arithmetic functions `F` used in `k ↦ F((k, n))` compositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArithFn {
    Tau,
    Sigma,
    Phi,
    Id,
}

impl ArithFn {
    pub const ALL: [ArithFn; 4] = [ArithFn::Tau, ArithFn::Sigma, ArithFn::Phi, ArithFn::Id];

    pub fn eval(self, m: u64) -> Result<i64> {
        let fac = factorize(m)?;
        Ok(match self {
            ArithFn::Tau => fac.tau(),
            ArithFn::Sigma => fac.sigma(),
            ArithFn::Phi => fac.euler_phi(),
            ArithFn::Id => m,
        } as i64)
    }

    /// `(μ*F)(m)`, by convolution over the divisors of `m`.
    pub fn mu_star_at(self, m: u64) -> Result<i64> {
        let table = DivisorTable::new(m)?;
        table
            .iter()
            .map(|e| Ok(table.mu_at(m / e) * self.eval(e)?))
            .sum()
    }

    /// The even function `k ↦ F((k, n))`.
    pub fn compose_gcd(self, n: u64) -> Result<EvenFunction> {
        let table = DivisorTable::new(n)?;
        let values = table
            .iter()
            .map(|d| self.eval(d))
            .collect::<Result<Vec<_>>>()?;
        Ok(EvenFunction::from_divisor_values(n, values)?.with_name(format!("{self}_gcd")))
    }
}

impl fmt::Display for ArithFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArithFn::Tau => "tau",
            ArithFn::Sigma => "sigma",
            ArithFn::Phi => "phi",
            ArithFn::Id => "id",
        })
    }
}

impl FromStr for ArithFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tau" => Ok(ArithFn::Tau),
            "sigma" => Ok(ArithFn::Sigma),
            "phi" => Ok(ArithFn::Phi),
            "id" => Ok(ArithFn::Id),
            _ => Err(Error::InvalidParam(format!(
                "unknown arithmetic function `{s}`"
            ))),
        }
    }
}

/// Both sides of `(μ*F)(n₁n₂) = (μ*F)(n₁)(μ*F)(n₂)` for coprime `n₁, n₂`.
pub fn multiplicativity_sides(big_f: ArithFn, n1: u64, n2: u64) -> Result<(i64, i64)> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::ZeroModulus);
    }
    if n1.gcd(&n2) != 1 {
        return Err(Error::NotCoprime { a: n1, b: n2 });
    }
    let lhs = big_f.mu_star_at(n1 * n2)?;
    let rhs = big_f.mu_star_at(n1)? * big_f.mu_star_at(n2)?;
    Ok((lhs, rhs))
}

pub fn multiplicativity_check(big_f: ArithFn, n1: u64, n2: u64) -> Result<bool> {
    multiplicativity_sides(big_f, n1, n2).map(|(a, b)| a == b)
}

/// Identity tags used in reports and on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    /// `T2_1`: restricted sum for a general even function.
    RestrictedEven,
    /// `C2_2`: restricted gcd-sum.
    RestrictedGcd,
    /// `C2_3`: restricted Ramanujan-sum sum.
    RestrictedRamanujan,
    /// `BRAUER_RADEMACHER`
    BrauerRademacher,
    /// `T2_4`: character-twisted sum for a general even function.
    TwistedEven,
    /// `C2_5`: character-twisted gcd-sum with shift `s`.
    TwistedGcd,
    /// `EQ_MENON_S`: shifted Menon sum, naive against the fast evaluator.
    MenonShifted,
    /// `C2_6`: character-twisted Ramanujan-sum sum.
    TwistedRamanujan,
    /// `T2_7`: primitive character, general even function.
    PrimitiveEven,
    /// `C2_8_SIGMA`
    PrimitiveSigma,
    /// `C2_8_TAU`
    PrimitiveTau,
    /// `ZHAO_CAO_1_1`: `Σ (k−1, n) χ(k) = φ(n) τ(n/d)`.
    ZhaoCao,
    /// `MENON_1_2`: `Σ_{(k,n)=1} (k−1, n) = φ(n) τ(n)`.
    Menon,
    /// `PRIMITIVE_1_3`: `Σ (k−1, n) χ(k) = φ(n)` for primitive `χ`.
    PrimitiveMenon,
    /// `MULT_REMARK`: multiplicativity of `n ↦ (μ*F)(n)`.
    Multiplicativity,
}

impl IdentityId {
    pub const ALL: [IdentityId; 15] = [
        IdentityId::RestrictedEven,
        IdentityId::RestrictedGcd,
        IdentityId::RestrictedRamanujan,
        IdentityId::BrauerRademacher,
        IdentityId::TwistedEven,
        IdentityId::TwistedGcd,
        IdentityId::MenonShifted,
        IdentityId::TwistedRamanujan,
        IdentityId::PrimitiveEven,
        IdentityId::PrimitiveSigma,
        IdentityId::PrimitiveTau,
        IdentityId::ZhaoCao,
        IdentityId::Menon,
        IdentityId::PrimitiveMenon,
        IdentityId::Multiplicativity,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            IdentityId::RestrictedEven => "T2_1",
            IdentityId::RestrictedGcd => "C2_2",
            IdentityId::RestrictedRamanujan => "C2_3",
            IdentityId::BrauerRademacher => "BRAUER_RADEMACHER",
            IdentityId::TwistedEven => "T2_4",
            IdentityId::TwistedGcd => "C2_5",
            IdentityId::MenonShifted => "EQ_MENON_S",
            IdentityId::TwistedRamanujan => "C2_6",
            IdentityId::PrimitiveEven => "T2_7",
            IdentityId::PrimitiveSigma => "C2_8_SIGMA",
            IdentityId::PrimitiveTau => "C2_8_TAU",
            IdentityId::ZhaoCao => "ZHAO_CAO_1_1",
            IdentityId::Menon => "MENON_1_2",
            IdentityId::PrimitiveMenon => "PRIMITIVE_1_3",
            IdentityId::Multiplicativity => "MULT_REMARK",
        }
    }

    /// Identities whose sweep ranges over every character mod `n`.
    pub fn uses_all_characters(self) -> bool {
        matches!(
            self,
            IdentityId::TwistedEven
                | IdentityId::TwistedGcd
                | IdentityId::TwistedRamanujan
                | IdentityId::ZhaoCao
        )
    }

    /// Identities that only apply to primitive characters.
    pub fn uses_primitive_characters(self) -> bool {
        matches!(
            self,
            IdentityId::PrimitiveEven
                | IdentityId::PrimitiveSigma
                | IdentityId::PrimitiveTau
                | IdentityId::PrimitiveMenon
        )
    }

    pub fn uses_shift(self) -> bool {
        !matches!(
            self,
            IdentityId::ZhaoCao
                | IdentityId::Menon
                | IdentityId::PrimitiveMenon
                | IdentityId::Multiplicativity
        )
    }

    /// Identities that take an even function parameter.
    pub fn uses_even_function(self) -> bool {
        matches!(
            self,
            IdentityId::RestrictedEven | IdentityId::TwistedEven | IdentityId::PrimitiveEven
        )
    }

    pub fn uses_residue_class(self) -> bool {
        matches!(
            self,
            IdentityId::RestrictedEven
                | IdentityId::RestrictedGcd
                | IdentityId::RestrictedRamanujan
        )
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParam(format!("unknown identity `{s}`")))
    }
}

/// Parameters of one check, stored exactly as supplied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    pub n: u64,
    /// Index into [`characters`](crate::chargroup::characters) order.
    pub chi: Option<usize>,
    pub d: Option<u64>,
    pub r: Option<i64>,
    pub s: Option<i64>,
    pub f: Option<EvenFnSpec>,
    /// `F` for the multiplicativity check.
    pub arith: Option<ArithFn>,
    /// Second factor for the multiplicativity check; `n` is the first.
    pub n2: Option<u64>,
}

impl Params {
    pub fn new(n: u64) -> Self {
        Params {
            n,
            chi: None,
            d: None,
            r: None,
            s: None,
            f: None,
            arith: None,
            n2: None,
        }
    }

    pub fn chi(mut self, chi: usize) -> Self {
        self.chi = Some(chi);
        self
    }

    pub fn d(mut self, d: u64) -> Self {
        self.d = Some(d);
        self
    }

    pub fn r(mut self, r: i64) -> Self {
        self.r = Some(r);
        self
    }

    pub fn s(mut self, s: i64) -> Self {
        self.s = Some(s);
        self
    }

    pub fn f(mut self, f: EvenFnSpec) -> Self {
        self.f = Some(f);
        self
    }

    pub fn arith(mut self, a: ArithFn) -> Self {
        self.arith = Some(a);
        self
    }

    pub fn n2(mut self, n2: u64) -> Self {
        self.n2 = Some(n2);
        self
    }
}

/// Outcome of one check. A mismatch is a normal outcome, not an error.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub identity: IdentityId,
    pub params: Params,
    pub lhs: CyclotomicInteger,
    pub rhs: CyclotomicInteger,
    pub equal: bool,
    pub lhs_micros: u64,
    pub rhs_micros: u64,
}

/// Per-modulus data shared by every check at that modulus.
pub struct ModulusContext {
    n: u64,
    budget: u128,
    characters: OnceLock<Vec<DirichletCharacter>>,
    functions: HashMap<EvenFnSpec, Arc<EvenFunction>>,
}

impl ModulusContext {
    pub fn new(n: u64) -> Result<Self> {
        Self::with_functions(n, &[], DEFAULT_BUDGET)
    }

    /// Context with the given even functions built up front.
    pub fn with_functions(n: u64, specs: &[EvenFnSpec], budget: u128) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        let functions = specs
            .iter()
            .map(|&spec| Ok((spec, Arc::new(spec.build(n, budget)?))))
            .collect::<Result<_>>()?;
        Ok(ModulusContext {
            n,
            budget,
            characters: OnceLock::new(),
            functions,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn characters(&self) -> &[DirichletCharacter] {
        self.characters.get_or_init(|| {
            characters_of(&Arc::new(UnitGroup::new(self.n).expect("positive modulus")))
        })
    }

    pub fn character(&self, index: usize) -> Result<&DirichletCharacter> {
        let chars = self.characters();
        chars.get(index).ok_or_else(|| {
            Error::InvalidParam(format!(
                "character index {index} out of range: there are {} characters mod {}",
                chars.len(),
                self.n
            ))
        })
    }

    pub fn function(&self, spec: EvenFnSpec) -> Result<Arc<EvenFunction>> {
        match self.functions.get(&spec) {
            Some(f) => Ok(Arc::clone(f)),
            None => Ok(Arc::new(spec.build(self.n, self.budget)?)),
        }
    }
}

/// Evaluate both sides of one identity and compare them exactly.
pub fn verify(identity: IdentityId, params: &Params) -> Result<IdentityReport> {
    let budget = DEFAULT_BUDGET;
    verify_with(
        identity,
        params,
        &ModulusContext::with_functions(params.n, &[], budget)?,
    )
}

/// [`verify`] against a prepared context for `params.n`.
pub fn verify_with(
    identity: IdentityId,
    params: &Params,
    ctx: &ModulusContext,
) -> Result<IdentityReport> {
    use IdentityId::*;

    let n = params.n;
    if identity != Multiplicativity && ctx.modulus() != n {
        return Err(Error::InvalidParam(format!(
            "context is for n = {}, parameters have n = {n}",
            ctx.modulus()
        )));
    }
    let s = || params.s.ok_or(Error::MissingParam("s"));
    let d = || params.d.ok_or(Error::MissingParam("d"));
    let r = || params.r.ok_or(Error::MissingParam("r"));
    let f = || ctx.function(params.f.ok_or(Error::MissingParam("f"))?);
    let chi = || ctx.character(params.chi.ok_or(Error::MissingParam("chi"))?);
    let primitive_chi = || {
        let c = chi()?;
        check_primitive(c)?;
        Ok::<_, Error>(c)
    };
    let int = |v: i64| CyclotomicInteger::from_int(v);

    let lhs_start = Instant::now();
    let (lhs, lhs_micros, rhs, rhs_micros);
    macro_rules! sides {
        ($l:expr, $r:expr) => {{
            lhs = $l;
            lhs_micros = lhs_start.elapsed().as_micros() as u64;
            let rhs_start = Instant::now();
            rhs = $r;
            rhs_micros = rhs_start.elapsed().as_micros() as u64;
        }};
    }

    match identity {
        RestrictedEven => {
            let func = f()?;
            sides!(
                int(restricted_sum(n, d()?, r()?, s()?, &func)?),
                int(restricted_closed_form(n, d()?, r()?, s()?, &func)?)
            )
        }
        RestrictedGcd => sides!(
            int(restricted_sum(
                n,
                d()?,
                r()?,
                s()?,
                &*ctx.function(EvenFnSpec::Gcd)?
            )?),
            int(restricted_gcd_closed_form(n, d()?, r()?, s()?)?)
        ),
        RestrictedRamanujan => sides!(
            int(restricted_sum(
                n,
                d()?,
                r()?,
                s()?,
                &*ctx.function(EvenFnSpec::Ramanujan)?
            )?),
            int(restricted_ramanujan_closed_form(n, d()?, r()?, s()?)?)
        ),
        BrauerRademacher => {
            let s = s()?;
            let table = DivisorTable::new(n)?;
            let c = ctx.function(EvenFnSpec::Ramanujan)?;
            sides!(
                int((1..=n as i64)
                    .filter(|&k| gcd_mod(k, n) == 1)
                    .map(|k| c.eval(k - s))
                    .sum()),
                int(table.mu_at(n) * ramanujan_sum_with(&table, s))
            )
        }
        TwistedEven => {
            let (c, func) = (chi()?, f()?);
            sides!(
                twisted_sum(n, c, s()?, &func)?,
                twisted_closed_form(n, c, s()?, &func)?
            )
        }
        TwistedGcd => {
            let c = chi()?;
            sides!(
                twisted_sum(n, c, s()?, &*ctx.function(EvenFnSpec::Gcd)?)?,
                twisted_gcd_closed_form(n, c, s()?)?
            )
        }
        TwistedRamanujan => {
            let c = chi()?;
            sides!(
                twisted_sum(n, c, s()?, &*ctx.function(EvenFnSpec::Ramanujan)?)?,
                twisted_ramanujan_closed_form(n, c, s()?)?
            )
        }
        MenonShifted => sides!(
            int(menon_gcd_sum_naive(n, s()?)?),
            int(menon_gcd_sum_fast(n, s()?)?)
        ),
        PrimitiveEven => {
            let (c, func) = (primitive_chi()?, f()?);
            sides!(
                twisted_sum(n, c, s()?, &func)?,
                primitive_closed_form(n, c, s()?, &func)?
            )
        }
        PrimitiveSigma | PrimitiveTau => {
            let c = primitive_chi()?;
            let (spec, big_f) = if identity == PrimitiveSigma {
                (EvenFnSpec::SigmaGcd, ArithFn::Sigma)
            } else {
                (EvenFnSpec::TauGcd, ArithFn::Tau)
            };
            sides!(
                twisted_sum(n, c, s()?, &*ctx.function(spec)?)?,
                primitive_composition_closed_form(n, c, s()?, big_f)?
            )
        }
        ZhaoCao => {
            let c = chi()?;
            let fac = factorize(n)?;
            sides!(
                twisted_sum(n, c, 1, &*ctx.function(EvenFnSpec::Gcd)?)?,
                int((fac.euler_phi() * factorize(n / c.conductor())?.tau()) as i64)
            )
        }
        Menon => {
            let fac = factorize(n)?;
            sides!(
                int(menon_gcd_sum_naive(n, 1)?),
                int((fac.euler_phi() * fac.tau()) as i64)
            )
        }
        PrimitiveMenon => {
            let c = primitive_chi()?;
            sides!(
                twisted_sum(n, c, 1, &*ctx.function(EvenFnSpec::Gcd)?)?,
                int(factorize(n)?.euler_phi() as i64)
            )
        }
        Multiplicativity => {
            let big_f = params.arith.ok_or(Error::MissingParam("arith"))?;
            let n2 = params.n2.ok_or(Error::MissingParam("n2"))?;
            if n.gcd(&n2) != 1 {
                return Err(Error::NotCoprime { a: n, b: n2 });
            }
            sides!(
                int(big_f.mu_star_at(n * n2)?),
                int(big_f.mu_star_at(n)? * big_f.mu_star_at(n2)?)
            )
        }
    }

    let equal = lhs == rhs;
    let mut params = params.clone();
    if let Some(s) = params.s.as_mut() {
        *s = s.rem_euclid(n as i64);
    }
    if let (Some(r), Some(d)) = (params.r.as_mut(), params.d) {
        *r = r.rem_euclid(d as i64);
    }
    Ok(IdentityReport {
        identity,
        params,
        lhs,
        rhs,
        equal,
        lhs_micros,
        rhs_micros,
    })
}
