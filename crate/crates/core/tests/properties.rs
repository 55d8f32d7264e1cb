mod common;

use num_bigint::BigUint;
use num_rational::BigRational;
use proptest::prelude::*;

use khs::abgroups::{self, direct_sum, GroupValue, Style, TorsionGroup};
use khs::cpbar::{cp_even_order, cp_range, CpExponentParts, CpMode};
use khs::homvanish::{hom_formal, FormalSpectrum};
use khs::numtheory::primes::odd_primes_up_to;
use khs::numtheory::{bernoulli_exact, bernoulli_mod, scan_irregular, vp, BigRat};
use khs::par::Execution;
use khs::stems::image_of_j_torsion;

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 691])
}

fn odd_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(odd_primes_up_to(300))
}

fn torsion() -> impl Strategy<Value = TorsionGroup> {
    prop::collection::vec((small_prime(), 1u32..4), 0..6).prop_map(TorsionGroup::from_factors)
}

fn group_value() -> impl Strategy<Value = GroupValue> {
    prop_oneof![
        4 => torsion().prop_map(GroupValue::exact),
        1 => (2u64..5000).prop_map(|n| GroupValue::order_only(BigUint::from(n), "order only")),
        1 => Just(GroupValue::unknown("unknown")),
        1 => Just(GroupValue::conjecturally_zero("a condition")),
    ]
}

fn cell() -> impl Strategy<Value = FormalSpectrum> {
    prop_oneof![
        (-12i64..40).prop_map(FormalSpectrum::ell),
        (-3i64..4).prop_map(FormalSpectrum::j),
    ]
}

fn spectrum() -> impl Strategy<Value = FormalSpectrum> {
    cell().prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..3).prop_map(FormalSpectrum::Wedge),
            (inner.clone(), inner).prop_map(|(a, b)| FormalSpectrum::cofiber(a, b)),
        ]
    })
}

proptest! {
    #[test]
    fn sum_is_commutative_and_associative(a in group_value(), b in group_value(), c in group_value()) {
        prop_assert_eq!(direct_sum([&a, &b]), direct_sum([&b, &a]));
        let left = direct_sum([&direct_sum([&a, &b]), &c]);
        let right = direct_sum([&a, &direct_sum([&b, &c])]);
        prop_assert_eq!(left.without_notes(), right.without_notes());
    }

    #[test]
    fn trivial_is_neutral(a in group_value()) {
        prop_assert_eq!(direct_sum([&a, &GroupValue::trivial()]), a);
    }

    #[test]
    fn order_is_multiplicative(a in torsion(), b in torsion()) {
        prop_assert_eq!(a.sum(&b).order(), a.order() * b.order());
    }

    #[test]
    fn primary_parts_recompose(a in torsion()) {
        let mut acc = TorsionGroup::trivial();
        for q in a.primes() {
            acc = acc.sum(&a.primary_part(q));
        }
        prop_assert_eq!(acc, a);
    }

    #[test]
    fn render_parse_round_trip(a in group_value()) {
        let text = a.render(Style::Ascii);
        let back = abgroups::parse(&text).unwrap();
        prop_assert_eq!(back.render(Style::Ascii), text);
        if let Some(g) = a.as_exact() {
            prop_assert_eq!(back.as_exact(), Some(g));
        }
    }

    #[test]
    fn json_round_trip(a in group_value()) {
        let json = serde_json::to_string(&a).unwrap();
        let back: GroupValue = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn bernoulli_mod_matches_exact(p in odd_prime(), k in 1u64..150) {
        let k = 2 * k;
        prop_assume!(k <= p.saturating_sub(3));
        prop_assert_eq!(Some(bernoulli_mod(k, p).unwrap()), bernoulli_exact(k as usize).mod_prime(p));
    }

    #[test]
    fn valuation_is_additive(a in 1i64..100_000, b in 1i64..100_000, c in 1i64..100_000, p in odd_prime()) {
        let x = BigRat::new(a, b);
        let y = BigRat::new(c, 7i64);
        let lhs = vp(&(x.clone() * y.clone()), p).unwrap();
        prop_assert_eq!(lhs, vp(&x, p).unwrap() + vp(&y, p).unwrap());
        let oracle = common::valuation(&BigRational::new(a.into(), b.into()), p);
        prop_assert_eq!(vp(&x, p).unwrap(), oracle);
    }

    #[test]
    fn image_of_j_support(p in odd_prime(), k in 1i64..5000) {
        let g = image_of_j_torsion(p, k).unwrap();
        prop_assert_eq!(g.is_trivial(), (k + 1) % (2 * (p as i64 - 1)) != 0);
    }

    #[test]
    fn vanishing_is_shift_invariant(x in spectrum(), y in spectrum(), k in -10i64..10) {
        for p in [3u64, 5, 7] {
            let plain = hom_formal(p, &x, &y).unwrap().verdict;
            let shifted = hom_formal(p, &x.suspend(k), &y.suspend(k)).unwrap().verdict;
            prop_assert_eq!(plain, shifted);
        }
    }

    #[test]
    fn vanishing_on_a_wedge_restricts(xs in prop::collection::vec(spectrum(), 1..4), y in spectrum()) {
        for p in [3u64, 5] {
            let whole = hom_formal(p, &FormalSpectrum::Wedge(xs.clone()), &y).unwrap();
            let parts: Vec<bool> = xs.iter().map(|x| hom_formal(p, x, &y).unwrap().is_zero()).collect();
            prop_assert_eq!(whole.is_zero(), parts.iter().all(|&z| z));
        }
    }

    #[test]
    fn literal_cp_order_is_the_exponent_formula(p in prop::sample::select(vec![5u64, 7, 11, 13]), t in 0i64..1000) {
        let r = cp_range(p).unwrap();
        let span = (r.even_order_max - r.even_exact_max) / 2;
        let degree = r.even_exact_max + 2 * (1 + t % span);
        let v = cp_even_order(p, degree, CpMode::Literal).unwrap();
        let e = CpExponentParts::new(p, degree as u64 / 2).exponent();
        prop_assert_eq!(v.order(), Some(BigUint::from(p).pow(e)));
        prop_assert_eq!(cp_even_order(p, degree, CpMode::Calibrated).unwrap(), v);
    }

    #[test]
    fn cp_modes_agree_in_the_exact_range(p in odd_prime(), t in 0i64..10_000) {
        let r = cp_range(p).unwrap();
        let degree = 2 * (t % (r.even_exact_max / 2 + 1));
        prop_assume!(p != 3);
        prop_assert_eq!(
            cp_even_order(p, degree, CpMode::Literal).unwrap(),
            cp_even_order(p, degree, CpMode::Calibrated).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scan_is_schedule_independent(max_p in 3u64..600, jobs in 1usize..6) {
        let seq = scan_irregular(max_p, Execution::Sequential);
        let par = scan_irregular(max_p, Execution::Parallel { jobs: Some(jobs) });
        prop_assert_eq!(&seq, &par);
        prop_assert!(seq.windows(2).all(|w| w[0].p < w[1].p));
    }
}

#[test]
fn power_sum_oracle_agrees_with_exact_numerators() {
    for p in odd_primes_up_to(300) {
        assert_eq!(
            common::power_sum_irregular_indices(p),
            common::exact_irregular_indices(p),
            "p={p}"
        );
    }
}

#[test]
fn trial_division_agrees_with_sieve() {
    let sieved = odd_primes_up_to(2000);
    let trial: Vec<u64> = (3..=2000).filter(|&n| common::trial_is_prime(n)).collect();
    assert_eq!(sieved, trial);
}
