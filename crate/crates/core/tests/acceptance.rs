//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every line is printed in order;
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use menon::arith::{divisors, factorize, gcd_mod, ramanujan_sum};
use menon::bench::bench_row;
use menon::cyclotomic::{cyclotomic_poly, IntPolynomial};
use menon::identities::{brauer_rademacher, menon_gcd_sum_fast, menon_gcd_sum_naive};
use menon::{
    run_sweep, verify_with, ArithFn, EvenFnSpec, IdentityId, IdentityReport, ModulusContext,
    Params, ShiftPolicy, SweepConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const SEED: u64 = 20_240_601;

fn sampled_shifts() -> ShiftPolicy {
    ShiftPolicy::Sample {
        count: 16,
        seed: SEED,
        full_up_to: 60,
    }
}

fn all_equal(reports: &[IdentityReport]) -> Outcome {
    match reports.iter().find(|r| !r.equal) {
        Some(r) => Err(format!(
            "{} {:?}: lhs {} rhs {}",
            r.identity, r.params, r.lhs, r.rhs
        )),
        None => Ok(format!("{} checks", reports.len())),
    }
}

fn within(limit: Duration, elapsed: Duration, outcome: Outcome) -> Outcome {
    let detail = outcome?;
    if elapsed > limit {
        return Err(format!(
            "{detail}, but took {elapsed:.1?} (limit {limit:?})"
        ));
    }
    Ok(detail)
}

fn sweep(
    ids: &[IdentityId],
    n_max: u64,
    shifts: ShiftPolicy,
    fns: &[EvenFnSpec],
) -> Vec<IdentityReport> {
    let config = SweepConfig::new(ids.to_vec(), 1, n_max)
        .shifts(shifts)
        .functions(fns.to_vec());
    run_sweep(&config).expect("valid sweep")
}

fn zhao_cao() -> Outcome {
    let start = Instant::now();
    let mut reports = Vec::new();
    for n in 1..=120 {
        let ctx = ModulusContext::new(n).unwrap();
        for i in 0..ctx.characters().len() {
            reports.push(verify_with(IdentityId::ZhaoCao, &Params::new(n).chi(i), &ctx).unwrap());
        }
    }
    within(
        Duration::from_secs(60),
        start.elapsed(),
        all_equal(&reports),
    )
}

fn menon() -> Outcome {
    let start = Instant::now();
    let mut reports = Vec::new();
    for n in 1..=5000 {
        let ctx = ModulusContext::new(n).unwrap();
        reports.push(verify_with(IdentityId::Menon, &Params::new(n), &ctx).unwrap());
    }
    within(
        Duration::from_secs(30),
        start.elapsed(),
        all_equal(&reports),
    )
}

fn primitive_menon() -> Outcome {
    all_equal(&sweep(
        &[IdentityId::PrimitiveMenon],
        120,
        ShiftPolicy::All,
        &[],
    ))
}

fn restricted_sweep() -> Outcome {
    let start = Instant::now();
    let reports = sweep(
        &[IdentityId::RestrictedEven],
        60,
        ShiftPolicy::All,
        &EvenFnSpec::STANDARD,
    );
    let zero_cases: Vec<_> = reports
        .iter()
        .filter(|r| gcd_mod(r.params.r.unwrap(), r.params.d.unwrap()) > 1)
        .collect();
    if let Some(r) = zero_cases
        .iter()
        .find(|r| !(r.lhs.is_zero() && r.rhs.is_zero()))
    {
        return Err(format!("non-zero (r,d)>1 case {:?}", r.params));
    }
    let detail = within(
        Duration::from_secs(300),
        start.elapsed(),
        all_equal(&reports),
    )?;
    Ok(format!(
        "{detail}, {} in the (r,d)>1 branch",
        zero_cases.len()
    ))
}

fn twisted_sweep() -> Outcome {
    let start = Instant::now();
    let mut reports = sweep(
        &[IdentityId::TwistedEven],
        120,
        sampled_shifts(),
        &EvenFnSpec::STANDARD,
    );
    reports.extend(sweep(
        &[IdentityId::TwistedEven],
        40,
        sampled_shifts(),
        &[
            EvenFnSpec::NSolutions { q: 2 },
            EvenFnSpec::NSolutions { q: 3 },
        ],
    ));
    within(
        Duration::from_secs(600),
        start.elapsed(),
        all_equal(&reports),
    )
}

fn primitive_sweep() -> Outcome {
    let general = sweep(
        &[IdentityId::PrimitiveEven],
        120,
        ShiftPolicy::All,
        &EvenFnSpec::STANDARD,
    );
    let composed = sweep(
        &[IdentityId::PrimitiveSigma, IdentityId::PrimitiveTau],
        120,
        ShiftPolicy::All,
        &[],
    );
    all_equal(&general)?;
    all_equal(&composed)?;
    let mut ctx = ModulusContext::new(1).unwrap();
    for r in &composed {
        let p = &r.params;
        if ctx.modulus() != p.n {
            ctx = ModulusContext::new(p.n).unwrap();
        }
        let chi_s = ctx.character(p.chi.unwrap()).unwrap().eval(p.s.unwrap());
        let expected = match r.identity {
            IdentityId::PrimitiveSigma => chi_s.scale(p.n as i64),
            _ => chi_s,
        };
        if r.lhs != expected {
            return Err(format!("{} {:?}: {} != {}", r.identity, p, r.lhs, expected));
        }
    }
    Ok(format!("{} checks", general.len() + composed.len()))
}

fn brauer_rademacher_suite() -> Outcome {
    let mut count = 0;
    for n in 1..=1000u64 {
        let n_i = n as i64;
        for s in [0, 1, 2, 3, n_i / 2, n_i - 1] {
            let (lhs, rhs) = brauer_rademacher(n, s).unwrap();
            let independent = factorize(n).unwrap().moebius() * ramanujan_sum(n, s).unwrap();
            if lhs != rhs || rhs != independent {
                return Err(format!("n={n} s={s}: {lhs} vs {rhs}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} checks"))
}

fn residue_classes_vanish() -> Outcome {
    let mut count = 0;
    for n in 1..=120 {
        let ctx = ModulusContext::new(n).unwrap();
        for chi in ctx.characters().iter().filter(|c| c.is_primitive()) {
            for d in divisors(&factorize(n).unwrap()).iter().filter(|&d| d < n) {
                for s in 0..d as i64 {
                    let sum = chi.residue_class_sum(d, s).unwrap();
                    if !sum.is_zero() {
                        return Err(format!("{chi} d={d} s={s}: {sum}"));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} residue classes"))
}

fn induced_agrees() -> Outcome {
    let mut count = 0;
    for n in 1..=120u64 {
        let ctx = ModulusContext::new(n).unwrap();
        for chi in ctx.characters() {
            let star = chi.induced_primitive();
            for k in (1..=n as i64).filter(|&k| gcd_mod(k, n) == 1) {
                if chi.eval(k) != star.eval(k) {
                    return Err(format!(
                        "{chi} at {k}: {} vs {star} {}",
                        chi.eval(k),
                        star.eval(k)
                    ));
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} characters"))
}

fn vanishing_remark() -> Outcome {
    let mut reports = sweep(
        &[IdentityId::TwistedEven],
        120,
        sampled_shifts(),
        &EvenFnSpec::STANDARD,
    );
    reports.extend(sweep(
        &[IdentityId::TwistedGcd, IdentityId::TwistedRamanujan],
        120,
        sampled_shifts(),
        &[],
    ));
    all_equal(&reports)?;
    let mut ctx = ModulusContext::new(1).unwrap();
    let mut count = 0;
    for r in &reports {
        let p = &r.params;
        if ctx.modulus() != p.n {
            ctx = ModulusContext::new(p.n).unwrap();
        }
        let d = ctx.character(p.chi.unwrap()).unwrap().conductor();
        if gcd_mod(p.s.unwrap(), d) > 1 {
            if !(r.lhs.is_zero() && r.rhs.is_zero()) {
                return Err(format!("{} {:?} does not vanish", r.identity, p));
            }
            count += 1;
        }
    }
    Ok(format!("{count} vanishing instances"))
}

fn cyclotomic_kernel() -> Outcome {
    for l in 1..=100u64 {
        let product = divisors(&factorize(l).unwrap())
            .iter()
            .fold(IntPolynomial::one(), |acc, d| &acc * &cyclotomic_poly(d));
        if product != IntPolynomial::x_pow_minus_one(l as usize) {
            return Err(format!("product of cyclotomic polynomials fails at L={l}"));
        }
    }
    for l in 1..=200u64 {
        let degree = cyclotomic_poly(l).degree().unwrap() as u64;
        if degree != factorize(l).unwrap().euler_phi() {
            return Err(format!("degree mismatch at L={l}"));
        }
    }
    Ok("L <= 100 products, L <= 200 degrees".into())
}

fn fast_path() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..200 {
        let n = rng.gen_range(1..=1_000_000u64);
        let s = rng.gen_range(-(n as i64)..=n as i64);
        let (naive, fast) = (
            menon_gcd_sum_naive(n, s).unwrap(),
            menon_gcd_sum_fast(n, s).unwrap(),
        );
        if naive != fast {
            return Err(format!("n={n} s={s}: naive {naive}, fast {fast}"));
        }
    }
    let mut speedups = Vec::new();
    for n in [1, 10_000, 1_000_000] {
        let row = bench_row(n, 1, 1).unwrap();
        if !row.equal {
            return Err(format!("bench row n={n} unequal"));
        }
        speedups.push(format!("n={n}: {:.0}x", row.speedup()));
    }
    Ok(format!(
        "200 random pairs (seed {SEED}); speedup {}",
        speedups.join(", ")
    ))
}

fn multiplicativity() -> Outcome {
    let reports = run_sweep(
        &SweepConfig::new(vec![IdentityId::Multiplicativity], 1, 120).arith(ArithFn::ALL.to_vec()),
    )
    .unwrap();
    all_equal(&reports)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("twisted Menon identity, every character mod n <= 120", zhao_cao),
        ("Menon identity, n <= 5000", menon),
        (
            "primitive characters give phi(n), n <= 120",
            primitive_menon,
        ),
        ("restricted sums, n <= 60, full grid", restricted_sweep),
        ("character-twisted sums, n <= 120", twisted_sweep),
        (
            "primitive closed forms with sigma and tau cases, n <= 120",
            primitive_sweep,
        ),
        ("Brauer-Rademacher, n <= 1000", brauer_rademacher_suite),
        (
            "primitive characters vanish on residue classes mod proper divisors",
            residue_classes_vanish,
        ),
        (
            "induced primitive character agrees on units",
            induced_agrees,
        ),
        ("twisted sums vanish when (s, d) > 1", vanishing_remark),
        ("cyclotomic polynomial kernel", cyclotomic_kernel),
        ("fast shifted Menon sum and benchmark", fast_path),
        (
            "multiplicativity of (mu*F)(n), n1*n2 <= 120",
            multiplicativity,
        ),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
