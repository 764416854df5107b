mod common;

use std::sync::Arc;

use common::{on, uni};
use fuzzy_abduction::workbench::{LoadOptions, Problem, ProblemFile, RuleDef, SetDef, UniverseDef};
use fuzzy_abduction::{
    abduce_certainty, abduce_variation, build_relation, contraposed_relation, enumerate_solutions, gmp, FuzzySet,
    Implication, QuantizedSearch, Rule, Semantics, Shape, TNorm, Universe,
};
use proptest::prelude::*;

fn degree() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), Just(1.0), 0.0..=1.0f64]
}

fn tenth() -> impl Strategy<Value = f64> {
    (0..=10u32).prop_map(|k| k as f64 / 10.0)
}

fn tnorm() -> impl Strategy<Value = TNorm> {
    prop_oneof![Just(TNorm::Minimum), Just(TNorm::Product), Just(TNorm::Lukasiewicz)]
}

fn contrapositive() -> impl Strategy<Value = Implication> {
    prop_oneof![
        Just(Implication::Reichenbach),
        Just(Implication::KleeneDienes),
        Just(Implication::Lukasiewicz)
    ]
}

fn shape() -> impl Strategy<Value = Shape> {
    let sorted = |mut v: Vec<f64>| {
        v.sort_by(f64::total_cmp);
        v
    };
    prop_oneof![
        prop::collection::vec(-50.0..250.0f64, 3).prop_map(move |v| {
            let v = sorted(v);
            Shape::Triangular { a: v[0], b: v[1], c: v[2] }
        }),
        prop::collection::vec(-50.0..250.0f64, 4).prop_map(move |v| {
            let v = sorted(v);
            Shape::Trapezoidal { a: v[0], b: v[1], c: v[2], d: v[3] }
        }),
        (-50.0..250.0f64, 0.1..100.0f64).prop_map(|(center, width)| Shape::Gaussian { center, width }),
        (-50.0..250.0f64).prop_map(|point| Shape::Singleton { point }),
    ]
}

proptest! {
    #[test]
    fn sampled_degrees_stay_in_unit_interval(s in shape(), n in 2usize..60) {
        let u = Arc::new(Universe::uniform("t", 0.0, 200.0, n).unwrap());
        let set = FuzzySet::sample(&s, u).unwrap();
        prop_assert!(set.degrees().iter().all(|m| (0.0..=1.0).contains(m)));
    }

    #[test]
    fn triangular_peaks_on_grid(a in 0usize..20, db in 0usize..20, dc in 0usize..20) {
        let u = Arc::new(Universe::uniform("t", 0.0, 60.0, 61).unwrap());
        let (b, c) = (a + db, a + db + dc);
        let tri = Shape::Triangular { a: a as f64, b: b as f64, c: c as f64 };
        let set = FuzzySet::sample(&tri, u).unwrap();
        prop_assert_eq!(set.degrees()[b], 1.0);
    }

    #[test]
    fn complement_is_an_involution(mu in prop::collection::vec(degree(), 1..30)) {
        let s = on(&uni("x", mu.len()), &mu);
        prop_assert!(s.complement().complement().max_abs_diff(&s).unwrap() <= 1e-9);
    }

    #[test]
    fn compatibility_symmetric_and_core_sharing(
        a in prop::collection::vec(degree(), 8),
        b in prop::collection::vec(degree(), 8),
        shared in 0usize..8,
    ) {
        let u = uni("x", 8);
        let (sa, sb) = (on(&u, &a), on(&u, &b));
        prop_assert_eq!(sa.compatibility(&sb).unwrap(), sb.compatibility(&sa).unwrap());
        let (mut a, mut b) = (a, b);
        a[shared] = 1.0;
        b[shared] = 1.0;
        prop_assert_eq!(on(&u, &a).compatibility(&on(&u, &b)).unwrap(), 1.0);
    }

    #[test]
    fn gmp_is_monotone_and_bounded(
        a in prop::collection::vec(degree(), 5),
        b in prop::collection::vec(degree(), 4),
        low in prop::collection::vec(degree(), 5),
        bump in prop::collection::vec(degree(), 5),
        t in tnorm(),
        imp_idx in 0usize..Implication::ALL.len(),
    ) {
        let (u, v) = (uni("u", 5), uni("v", 4));
        let rel = fuzzy_abduction::Relation::from_implication(&on(&u, &a), &on(&v, &b), Implication::ALL[imp_idx]);
        let lo = on(&u, &low);
        let hi = lo.zip_with(&on(&u, &bump), |x, y| x.max(y)).unwrap();
        let out_lo = gmp(&rel, &lo, t).unwrap();
        let out_hi = gmp(&rel, &hi, t).unwrap();
        prop_assert!(out_lo.is_subset_of(&out_hi, 0.0));
        prop_assert!(out_hi.degrees().iter().all(|m| (0.0..=1.0).contains(m)));
    }

    #[test]
    fn certainty_abduction_is_contraposed_gmp(
        a in prop::collection::vec(degree(), 4),
        b in prop::collection::vec(degree(), 3),
        obs in prop::collection::vec(degree(), 3),
        s in contrapositive(),
        t in tnorm(),
    ) {
        let (u, v) = (uni("u", 4), uni("v", 3));
        let rule = Rule::new(on(&u, &a), on(&v, &b), Semantics::Certainty, s, t).unwrap();
        let b_prime = on(&v, &obs);
        let direct = abduce_certainty(&rule, &b_prime, t).unwrap();
        let via_gmp = gmp(&contraposed_relation(&rule), &b_prime, t).unwrap();
        prop_assert_eq!(direct.hypothesis.degrees(), via_gmp.degrees());
        prop_assert!(direct.hypothesis.degrees().iter().all(|m| (0.0..=1.0).contains(m)));
    }

    #[test]
    fn enumerated_solutions_round_trip(
        a in prop::collection::vec(tenth(), 3),
        b in prop::collection::vec(tenth(), 3),
        obs in prop::collection::vec(tenth(), 3),
        t in tnorm(),
    ) {
        let (u, v) = (uni("u", 3), uni("v", 3));
        let rel = fuzzy_abduction::Relation::from_implication(&on(&u, &a), &on(&v, &b), t.residuum());
        let found = enumerate_solutions(&rel, &on(&v, &obs), t, QuantizedSearch::default()).unwrap();
        for sol in &found.solutions {
            prop_assert!(gmp(&rel, sol, t).unwrap().max_abs_diff(&found.target).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn certainty_exact_results_appear_in_enumeration(
        a in prop::collection::vec(tenth(), 3),
        b in prop::collection::vec(tenth(), 3),
        obs in prop::collection::vec(tenth(), 3),
        s in contrapositive(),
    ) {
        let (u, v) = (uni("u", 3), uni("v", 3));
        let t = TNorm::Minimum;
        let rule = Rule::new(on(&u, &a), on(&v, &b), Semantics::Certainty, s, t).unwrap();
        let b_prime = on(&v, &obs);
        let res = abduce_certainty(&rule, &b_prime, t).unwrap();
        if res.roundtrip.is_exact() {
            let search = QuantizedSearch::default();
            let snapped = res.hypothesis.map(|x| search.snap(x));
            // only meaningful when snapping does not move the hypothesis
            if snapped.max_abs_diff(&res.hypothesis).unwrap() <= 1e-9 {
                let found = enumerate_solutions(&build_relation(&rule), &b_prime, t, search).unwrap();
                prop_assert!(found.solutions.iter().any(|x| x.max_abs_diff(&snapped).unwrap() <= 1e-9));
            }
        }
    }

    #[test]
    fn variation_bound_dominates_every_solution(
        a in prop::collection::vec(tenth(), 3),
        b in prop::collection::vec(tenth(), 2),
        obs in prop::collection::vec(tenth(), 2),
        t in tnorm(),
    ) {
        let (u, v) = (uni("u", 3), uni("v", 2));
        let rule = Rule::new(on(&u, &a), on(&v, &b), Semantics::Variation, t.residuum(), t).unwrap();
        let b_prime = on(&v, &obs);
        let bound = abduce_variation(&rule, &b_prime).unwrap().hypothesis;
        let found = enumerate_solutions(&build_relation(&rule), &b_prime, t, QuantizedSearch::default()).unwrap();
        for sol in &found.solutions {
            prop_assert!(sol.is_subset_of(&bound, 1e-9), "{} not under {}", sol, bound);
        }
    }

    #[test]
    fn problem_save_load_is_idempotent(
        shapes in prop::collection::vec(shape(), 2..5),
        points in 2usize..40,
        imp_idx in 0usize..4,
    ) {
        let s_family = [Implication::Reichenbach, Implication::Zadeh, Implication::KleeneDienes, Implication::Lukasiewicz];
        let file = ProblemFile {
            universes: vec![UniverseDef { name: "t".into(), lo: Some(0.0), hi: Some(200.0), points: Some(points), grid: None }],
            sets: shapes
                .iter()
                .enumerate()
                .map(|(i, s)| SetDef { name: format!("s{i}"), universe: "t".into(), shape: s.clone() })
                .collect(),
            rules: vec![RuleDef {
                name: "r".into(),
                antecedent: "s0".into(),
                consequent: "s1".into(),
                semantics: Semantics::Certainty,
                implication: s_family[imp_idx],
                tnorm: None,
            }],
            observations: vec!["s1".into()],
            scenarios: vec![],
        };
        let first = Problem::resolve(file, LoadOptions::default()).unwrap();
        let saved = first.to_json();
        let second = Problem::from_json(&saved, LoadOptions::default()).unwrap();
        prop_assert_eq!(&saved, &second.to_json());
        prop_assert_eq!(&first.sets, &second.sets);
        prop_assert_eq!(&first.rules, &second.rules);
    }
}

