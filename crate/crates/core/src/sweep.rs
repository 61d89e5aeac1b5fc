//! Cartesian sweeps of identity checks over ranges of moduli.

use num_integer::Integer;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::DivisorTable;
use crate::error::{Error, Result};
use crate::evenfn::{EvenFnSpec, DEFAULT_BUDGET};
use crate::identities::{verify_with, ArithFn, IdentityId, IdentityReport, ModulusContext, Params};

/// Which shifts `s` to visit at each modulus `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShiftPolicy {
    /// Every `s ∈ [0, n)`.
    All,
    /// The listed shifts, at every modulus.
    List(Vec<i64>),
    /// All of `[0, n)` while `n ≤ full_up_to`, otherwise `count` distinct
    /// shifts drawn with a generator seeded by `seed` and `n`.
    Sample {
        count: usize,
        seed: u64,
        full_up_to: u64,
    },
}

impl ShiftPolicy {
    pub fn shifts(&self, n: u64) -> Vec<i64> {
        match self {
            ShiftPolicy::All => (0..n as i64).collect(),
            ShiftPolicy::List(list) => list.clone(),
            ShiftPolicy::Sample {
                count,
                seed,
                full_up_to,
            } => {
                if n <= *full_up_to || *count as u64 >= n {
                    return (0..n as i64).collect();
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                rng.set_stream(n);
                let mut picked: Vec<i64> = sample(&mut rng, n as usize, *count)
                    .into_iter()
                    .map(|i| i as i64)
                    .collect();
                picked.sort_unstable();
                picked
            }
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            ShiftPolicy::Sample { seed, .. } => Some(*seed),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub identities: Vec<IdentityId>,
    pub n_min: u64,
    pub n_max: u64,
    pub shifts: ShiftPolicy,
    /// Even functions for identities that take one.
    pub functions: Vec<EvenFnSpec>,
    /// Functions `F` for the multiplicativity check.
    pub arith: Vec<ArithFn>,
    /// Worker threads; 0 picks the available parallelism.
    pub jobs: usize,
    /// Enumeration limit for [`EvenFnSpec::NSolutions`].
    pub budget: u128,
}

impl SweepConfig {
    pub fn new(identities: Vec<IdentityId>, n_min: u64, n_max: u64) -> Self {
        SweepConfig {
            identities,
            n_min,
            n_max,
            shifts: ShiftPolicy::All,
            functions: EvenFnSpec::STANDARD.to_vec(),
            arith: ArithFn::ALL.to_vec(),
            jobs: 0,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn shifts(mut self, shifts: ShiftPolicy) -> Self {
        self.shifts = shifts;
        self
    }

    pub fn functions(mut self, functions: Vec<EvenFnSpec>) -> Self {
        self.functions = functions;
        self
    }

    pub fn arith(mut self, arith: Vec<ArithFn>) -> Self {
        self.arith = arith;
        self
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n_min == 0 {
            return Err(Error::InvalidParam("n_min must be at least 1".into()));
        }
        if self.n_min > self.n_max {
            return Err(Error::InvalidParam(format!(
                "empty range {}..{}",
                self.n_min, self.n_max
            )));
        }
        Ok(())
    }

    fn needs_functions(&self) -> bool {
        self.identities.iter().any(|id| id.uses_even_function())
    }
}

/// Parameter tuples for `identity` at modulus `n`, in emission order.
pub fn parameter_grid(
    identity: IdentityId,
    ctx: &ModulusContext,
    config: &SweepConfig,
) -> Vec<Params> {
    use IdentityId::*;

    let n = ctx.modulus();
    let base = Params::new(n);
    let shifts = if identity.uses_shift() {
        config.shifts.shifts(n)
    } else {
        Vec::new()
    };
    let with_f = |p: Params| -> Vec<Params> {
        if identity.uses_even_function() {
            config.functions.iter().map(|&f| p.clone().f(f)).collect()
        } else {
            vec![p]
        }
    };
    let with_s = |p: Params| -> Vec<Params> {
        shifts
            .iter()
            .flat_map(|&s| with_f(p.clone().s(s)))
            .collect()
    };
    let chis: Vec<usize> = if identity.uses_all_characters() || identity.uses_primitive_characters()
    {
        ctx.characters()
            .iter()
            .enumerate()
            .filter(|(_, c)| !identity.uses_primitive_characters() || c.is_primitive())
            .map(|(i, _)| i)
            .collect()
    } else {
        Vec::new()
    };

    match identity {
        RestrictedEven | RestrictedGcd | RestrictedRamanujan => {
            let divisors = DivisorTable::new(n).expect("positive modulus");
            divisors
                .iter()
                .flat_map(|d| (0..d as i64).map(move |r| (d, r)))
                .flat_map(|(d, r)| with_s(base.clone().d(d).r(r)))
                .collect()
        }
        BrauerRademacher | MenonShifted => with_s(base),
        TwistedEven | TwistedGcd | TwistedRamanujan | PrimitiveEven | PrimitiveSigma
        | PrimitiveTau => chis
            .into_iter()
            .flat_map(|i| with_s(base.clone().chi(i)))
            .collect(),
        ZhaoCao | PrimitiveMenon => chis.into_iter().map(|i| base.clone().chi(i)).collect(),
        Menon => vec![base],
        Multiplicativity => {
            let divisors = DivisorTable::new(n).expect("positive modulus");
            divisors
                .iter()
                .filter(|&n1| n1.gcd(&(n / n1)) == 1)
                .flat_map(|n1| {
                    config
                        .arith
                        .iter()
                        .map(move |&a| Params::new(n1).n2(n / n1).arith(a))
                })
                .collect()
        }
    }
}

/// Run every check described by `config`, returning reports in parameter
/// order: by modulus, then identity as listed, then grid order.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<IdentityReport>> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::InvalidParam(format!("cannot start worker pool: {e}")))?;
    pool.install(|| {
        let specs: &[EvenFnSpec] = if config.needs_functions() {
            &config.functions
        } else {
            &[]
        };
        let contexts = (config.n_min..=config.n_max)
            .into_par_iter()
            .map(|n| ModulusContext::with_functions(n, specs, config.budget))
            .collect::<Result<Vec<_>>>()?;
        let tasks: Vec<(usize, IdentityId, Params)> = contexts
            .par_iter()
            .enumerate()
            .flat_map_iter(|(i, ctx)| {
                config
                    .identities
                    .iter()
                    .flat_map(move |&id| {
                        parameter_grid(id, ctx, config)
                            .into_iter()
                            .map(move |p| (i, id, p))
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        tasks
            .par_iter()
            .map(|(i, id, p)| verify_with(*id, p, &contexts[*i]))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_shifts_are_reproducible() {
        let policy = ShiftPolicy::Sample {
            count: 16,
            seed: 7,
            full_up_to: 60,
        };
        assert_eq!(policy.shifts(10), (0..10).collect::<Vec<_>>());
        let a = policy.shifts(97);
        assert_eq!(a, policy.shifts(97));
        assert_eq!(a.len(), 16);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert!(a.iter().all(|&s| (0..97).contains(&s)));
        assert_ne!(a, policy.shifts(98));
    }

    #[test]
    fn grid_sizes() {
        let config = SweepConfig::new(vec![], 1, 1);
        let ctx = ModulusContext::new(6).unwrap();
        // divisors 1,2,3,6 give 12 (d, r) pairs, times 6 shifts, times 5 functions
        assert_eq!(
            parameter_grid(IdentityId::RestrictedEven, &ctx, &config).len(),
            12 * 6 * 5
        );
        assert_eq!(
            parameter_grid(IdentityId::TwistedGcd, &ctx, &config).len(),
            2 * 6
        );
        assert!(parameter_grid(IdentityId::PrimitiveTau, &ctx, &config).is_empty());
        assert_eq!(parameter_grid(IdentityId::Menon, &ctx, &config).len(), 1);
        // 1*6, 2*3, 3*2, 6*1 for each of four functions
        assert_eq!(
            parameter_grid(IdentityId::Multiplicativity, &ctx, &config).len(),
            16
        );
    }

    #[test]
    fn no_primitive_characters_when_n_is_2_mod_4() {
        let config = SweepConfig::new(vec![IdentityId::PrimitiveEven], 2, 2);
        assert!(run_sweep(&config).unwrap().is_empty());
    }

    #[test]
    fn sweep_order_does_not_depend_on_jobs() {
        let ids = vec![IdentityId::TwistedRamanujan, IdentityId::ZhaoCao];
        let one = run_sweep(&SweepConfig::new(ids.clone(), 1, 24).jobs(1)).unwrap();
        let many = run_sweep(&SweepConfig::new(ids, 1, 24).jobs(4)).unwrap();
        assert_eq!(one.len(), many.len());
        for (a, b) in one.iter().zip(&many) {
            assert_eq!(
                (a.identity, &a.params, &a.lhs),
                (b.identity, &b.params, &b.lhs)
            );
            assert!(a.equal);
        }
    }

    #[test]
    fn rejects_bad_ranges() {
        assert!(run_sweep(&SweepConfig::new(vec![IdentityId::Menon], 0, 3)).is_err());
        assert!(run_sweep(&SweepConfig::new(vec![IdentityId::Menon], 5, 3)).is_err());
    }
}
