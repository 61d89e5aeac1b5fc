use menon::arith::{divisors, factorize};
use menon::chargroup::characters;
use menon::identities::*;
use menon::EvenFunction;
use proptest::prelude::*;

/// `n`, a divisor `d`, and arbitrary values of an even function on the
/// divisors of `n`.
fn modulus_with_even_fn(max_n: u64) -> impl Strategy<Value = (u64, u64, Vec<i64>)> {
    (1..=max_n).prop_flat_map(|n| {
        let divs: Vec<u64> = divisors(&factorize(n).unwrap()).iter().collect();
        let len = divs.len();
        (
            Just(n),
            proptest::sample::select(divs),
            proptest::collection::vec(-50i64..50, len),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn restricted_closed_form_for_arbitrary_even_functions(
        (n, d, values) in modulus_with_even_fn(200),
        r in -300i64..300,
        s in -300i64..300,
    ) {
        let f = EvenFunction::from_divisor_values(n, values).unwrap();
        prop_assert_eq!(
            restricted_sum(n, d, r, s, &f).unwrap(),
            restricted_closed_form(n, d, r, s, &f).unwrap()
        );
    }

    #[test]
    fn twisted_closed_form_for_arbitrary_even_functions(
        (n, _d, values) in modulus_with_even_fn(90),
        idx in any::<prop::sample::Index>(),
        s in -200i64..200,
    ) {
        let f = EvenFunction::from_divisor_values(n, values).unwrap();
        let chars = characters(n).unwrap();
        let chi = idx.get(&chars);
        let lhs = twisted_sum(n, chi, s, &f).unwrap();
        prop_assert_eq!(&lhs, &twisted_closed_form(n, chi, s, &f).unwrap());
        if chi.is_primitive() {
            prop_assert_eq!(&lhs, &primitive_closed_form(n, chi, s, &f).unwrap());
        }
    }

    #[test]
    fn shifts_are_periodic(n in 1u64..150, s in -1000i64..1000, k in -5i64..5) {
        let t = s + k * n as i64;
        prop_assert_eq!(menon_gcd_sum_fast(n, s).unwrap(), menon_gcd_sum_fast(n, t).unwrap());
        prop_assert_eq!(brauer_rademacher(n, s).unwrap(), brauer_rademacher(n, t).unwrap());
    }

    #[test]
    fn fast_menon_matches_naive(n in 1u64..200_000, s in any::<i32>()) {
        prop_assert_eq!(
            menon_gcd_sum_fast(n, i64::from(s)).unwrap(),
            menon_gcd_sum_naive(n, i64::from(s)).unwrap()
        );
    }
}

#[test]
fn restricted_corollaries_match_general_form() {
    for n in 1..=48u64 {
        let gcd = EvenFunction::gcd(n).unwrap();
        let ram = EvenFunction::ramanujan(n).unwrap();
        for d in divisors(&factorize(n).unwrap()).iter() {
            for r in 0..d as i64 {
                for s in 0..n as i64 {
                    assert_eq!(
                        restricted_gcd_closed_form(n, d, r, s).unwrap(),
                        restricted_closed_form(n, d, r, s, &gcd).unwrap()
                    );
                    assert_eq!(
                        restricted_ramanujan_closed_form(n, d, r, s).unwrap(),
                        restricted_closed_form(n, d, r, s, &ram).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn twisted_corollaries_match_general_form() {
    for n in 1..=60u64 {
        let gcd = EvenFunction::gcd(n).unwrap();
        let ram = EvenFunction::ramanujan(n).unwrap();
        let sigma = ArithFn::Sigma.compose_gcd(n).unwrap();
        let tau = ArithFn::Tau.compose_gcd(n).unwrap();
        for chi in characters(n).unwrap() {
            for s in 0..n as i64 {
                assert_eq!(
                    twisted_gcd_closed_form(n, &chi, s).unwrap(),
                    twisted_closed_form(n, &chi, s, &gcd).unwrap()
                );
                assert_eq!(
                    twisted_ramanujan_closed_form(n, &chi, s).unwrap(),
                    twisted_closed_form(n, &chi, s, &ram).unwrap()
                );
                if chi.is_primitive() {
                    assert_eq!(
                        primitive_composition_closed_form(n, &chi, s, ArithFn::Sigma).unwrap(),
                        twisted_closed_form(n, &chi, s, &sigma).unwrap()
                    );
                    assert_eq!(
                        primitive_composition_closed_form(n, &chi, s, ArithFn::Tau).unwrap(),
                        twisted_closed_form(n, &chi, s, &tau).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn composed_transforms() {
    // (μ*σ)(n) = n, (μ*τ)(n) = 1, (μ*φ)(n) = Σ_{e|n} μ(n/e) φ(e)
    for n in 1..=300u64 {
        assert_eq!(ArithFn::Sigma.mu_star_at(n).unwrap(), n as i64);
        assert_eq!(ArithFn::Tau.mu_star_at(n).unwrap(), 1);
        let fac = factorize(n).unwrap();
        let brute: i64 = (1..=n)
            .filter(|e| n % e == 0)
            .map(|e| factorize(n / e).unwrap().moebius() * factorize(e).unwrap().euler_phi() as i64)
            .sum();
        assert_eq!(ArithFn::Phi.mu_star_at(n).unwrap(), brute);
        assert_eq!(ArithFn::Id.mu_star_at(n).unwrap(), fac.euler_phi() as i64);
    }
}

#[test]
fn ramanujan_reading_of_the_twisted_sum() {
    // Reading the summand as c_n(k − s) makes the closed form hold; the
    // alternative k ↦ c_k(n) is not even an even function mod n.
    let n = 12;
    let ram = EvenFunction::ramanujan(n).unwrap();
    for chi in characters(n).unwrap() {
        for s in 0..n as i64 {
            assert_eq!(
                twisted_sum(n, &chi, s, &ram).unwrap(),
                twisted_ramanujan_closed_form(n, &chi, s).unwrap()
            );
        }
    }
    let c = |k: u64, m: i64| menon::arith::ramanujan_sum(k, m).unwrap();
    assert_ne!(c(2, 12), c(14, 12));
}

#[test]
fn verify_reports_every_identity() {
    let n = 20;
    let ctx = ModulusContext::new(n).unwrap();
    let primitive = ctx
        .characters()
        .iter()
        .position(|c| c.is_primitive())
        .unwrap();
    for id in IdentityId::ALL {
        let mut p = Params::new(n);
        if id.uses_primitive_characters() {
            p = p.chi(primitive);
        } else if id.uses_all_characters() {
            p = p.chi(3);
        }
        if id.uses_shift() {
            p = p.s(7);
        }
        if id.uses_residue_class() {
            p = p.d(4).r(3);
        }
        if id.uses_even_function() {
            p = p.f(menon::EvenFnSpec::SigmaGcd);
        }
        if id == IdentityId::Multiplicativity {
            p = Params::new(4).n2(5).arith(ArithFn::Phi);
        }
        let rep = verify_with(id, &p, &ctx).unwrap();
        assert!(rep.equal, "{id}: {} vs {}", rep.lhs, rep.rhs);
    }
}
