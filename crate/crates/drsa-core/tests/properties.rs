//! Property tests over random tables: dominance axioms, approximation
//! dualities, induction guarantees, classification soundness, file-format
//! round trips and trade-off monotonicity.

mod common;

use std::collections::BTreeSet;

use drsa_core::compare::{align_rules, threshold_ratios, tradeoff_curve, TradeoffMetric};
use drsa_core::dominance::{
    approximation, dominated_set, dominates, dominating_set, lower_approximation,
    non_degenerate_unions, quality_gamma, upper_approximation, UnionKind,
};
use drsa_core::domlem::{induce, InduceParams};
use drsa_core::table::{
    read_isf, write_isf_to, Criterion, DecisionAttribute, InformationTable, Observation,
};
use drsa_core::{classify, covering_rules};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Strategy: a small random table as (criteria count, rows of (values, class
/// rank)), values on an integer grid so ties are common.
fn small_table_strategy() -> impl Strategy<Value = InformationTable> {
    (1usize..=3, 2usize..=4).prop_flat_map(|(k, n_classes)| {
        proptest::collection::vec(
            (
                proptest::collection::vec(0u32..=5, k),
                0usize..n_classes,
            ),
            1..=12,
        )
        .prop_map(move |rows| {
            let criteria = (0..k).map(|i| Criterion::gain(i, format!("q{i}"))).collect();
            let classes = (1..=n_classes).map(|c| c.to_string()).collect();
            let observations = rows
                .into_iter()
                .enumerate()
                .map(|(i, (values, rank))| {
                    Observation::new(
                        (i + 1).to_string(),
                        values.into_iter().map(f64::from).collect(),
                        rank,
                    )
                })
                .collect();
            InformationTable::new(criteria, DecisionAttribute::new("class", classes), observations)
                .unwrap()
        })
    })
}

proptest! {
    #[test]
    fn dominance_is_reflexive_and_transitive(table in small_table_strategy()) {
        let obs = table.observations();
        for x in obs {
            prop_assert!(dominates(x, x));
        }
        for a in obs {
            for b in obs {
                for c in obs {
                    if dominates(a, b) && dominates(b, c) {
                        prop_assert!(dominates(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn dominance_is_antisymmetric_up_to_ties(table in small_table_strategy()) {
        let obs = table.observations();
        for a in obs {
            for b in obs {
                if dominates(a, b) && dominates(b, a) {
                    prop_assert_eq!(&a.values, &b.values);
                }
            }
        }
    }

    #[test]
    fn cones_are_dual(table in small_table_strategy()) {
        for x in table.observations() {
            let dminus = dominated_set(&table, &x.id).unwrap();
            for y in dminus {
                let y_id = &table.observations()[y].id;
                let dplus_of_y = dominating_set(&table, y_id).unwrap();
                prop_assert!(dplus_of_y.contains(&table.index_of(&x.id).unwrap()));
            }
        }
    }

    #[test]
    fn rough_inclusion_and_complement_duality(table in small_table_strategy()) {
        let universe: BTreeSet<usize> = (0..table.len()).collect();
        for union in non_degenerate_unions(&table) {
            let result = approximation(&table, &union);
            prop_assert!(result.lower.is_subset(&union.members));
            prop_assert!(union.members.is_subset(&result.upper));
            prop_assert_eq!(
                &result.boundary,
                &result.upper.difference(&result.lower).copied().collect::<BTreeSet<_>>()
            );
            // upper(AtLeast t) = U \ lower(AtMost t-1), and symmetrically
            match union.kind {
                UnionKind::AtLeast => {
                    let complement = drsa_core::dominance::downward_union(
                        &table,
                        table.class_label(union.threshold - 1),
                    ).unwrap();
                    let lower_c = lower_approximation(&table, &complement);
                    let expect: BTreeSet<usize> =
                        universe.difference(&lower_c).copied().collect();
                    prop_assert_eq!(upper_approximation(&table, &union), expect);
                }
                UnionKind::AtMost => {
                    let complement = drsa_core::dominance::upward_union(
                        &table,
                        table.class_label(union.threshold + 1),
                    ).unwrap();
                    let lower_c = lower_approximation(&table, &complement);
                    let expect: BTreeSet<usize> =
                        universe.difference(&lower_c).copied().collect();
                    prop_assert_eq!(upper_approximation(&table, &union), expect);
                }
            }
        }
    }

    #[test]
    fn upward_unions_are_monotone(table in small_table_strategy()) {
        let unions: Vec<_> = non_degenerate_unions(&table)
            .into_iter()
            .filter(|u| u.kind == UnionKind::AtLeast)
            .collect();
        for pair in unions.windows(2) {
            // ascending thresholds: higher union is a subset
            prop_assert!(pair[1].members.is_subset(&pair[0].members));
        }
    }

    #[test]
    fn induced_rules_are_certain_covering_and_bounded(table in small_table_strategy()) {
        let ruleset = induce(&table, InduceParams::default()).unwrap();
        for rule in &ruleset.rules {
            // certain with respect to the certain region, even on
            // inconsistent tables
            let lower = common::brute_lower(&table, rule.consequent.kind, rule.consequent.class);
            let cover = common::brute_cover(&table, &rule.conditions);
            prop_assert!(cover.is_subset(&lower));
            prop_assert_eq!(rule.confidence, 100.0);
            prop_assert!(rule.strength > 0.0 && rule.strength <= 100.0);
            prop_assert!(rule.support <= rule.cover.len());
            let members = common::brute_members(&table, rule.consequent.kind, rule.consequent.class);
            prop_assert!(rule.support <= members.len());
        }
        // coverage: every lower-approximation object is covered by a rule of
        // its union (unfiltered induction)
        for union in non_degenerate_unions(&table) {
            if union.members.is_empty() || union.members.len() == table.len() {
                continue;
            }
            let lower = lower_approximation(&table, &union);
            for x in lower {
                let covered = ruleset.rules.iter().any(|r| {
                    r.consequent.kind == union.kind
                        && r.consequent.class == union.threshold
                        && r.covers(&table.observations()[x].values)
                });
                prop_assert!(covered, "object {x} of a lower approximation is uncovered");
            }
        }
    }

    #[test]
    fn induction_is_deterministic(table in small_table_strategy()) {
        let a = induce(&table, InduceParams::default()).unwrap();
        let b = induce(&table, InduceParams::default()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn gamma_is_one_iff_all_boundaries_empty(table in small_table_strategy()) {
        let gamma = quality_gamma(&table).unwrap();
        let all_empty = non_degenerate_unions(&table)
            .iter()
            .all(|u| approximation(&table, u).boundary.is_empty());
        prop_assert_eq!(gamma == 1.0, all_empty);
    }

    #[test]
    fn isf_round_trip_is_identity(
        seed in 0u64..1024,
        k in 1usize..=8,
        n in 1usize..=200,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut table = common::random_table(&mut rng, k, n, 3, 50);
        // sprinkle metadata and non-positional ids on a few rows
        if n >= 3 {
            let mut observations = table.observations().to_vec();
            observations[0].id = "geo one:2020-11-01".to_string();
            observations[0]
                .meta
                .insert("segment".to_string(), "North West corner".to_string());
            observations[2]
                .meta
                .insert("note".to_string(), "50% = half".to_string());
            table = InformationTable::new(
                table.criteria().to_vec(),
                table.decision().clone(),
                observations,
            ).unwrap();
        }
        let mut buf = Vec::new();
        write_isf_to(&table, &mut buf).unwrap();
        let reloaded = read_isf(buf.as_slice(), "prop.isf").unwrap();
        prop_assert_eq!(reloaded, table);
    }

    #[test]
    fn resubstitution_soundness_on_consistent_tables(seed in 0u64..512) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table = common::random_consistent_table(&mut rng, 3, 20, 3, 6);
        prop_assume!(quality_gamma(&table).unwrap() == 1.0);
        let ruleset = induce(&table, InduceParams::default()).unwrap();
        for obs in table.observations() {
            let result = classify(&ruleset, &obs.values).unwrap();
            prop_assert!(result.lower_bound <= obs.decision);
            prop_assert!(obs.decision <= result.upper_bound);
        }
    }

    #[test]
    fn classification_lower_bound_is_monotone(seed in 0u64..512) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table = common::random_table(&mut rng, 3, 15, 3, 6);
        let ruleset = induce(&table, InduceParams::default()).unwrap();
        use rand::Rng;
        for _ in 0..20 {
            let b: Vec<f64> = (0..3).map(|_| rng.gen_range(0..=6) as f64).collect();
            let a: Vec<f64> = b.iter().map(|v| v + rng.gen_range(0..=3) as f64).collect();
            let low_a = classify(&ruleset, &a).unwrap().lower_bound;
            let low_b = classify(&ruleset, &b).unwrap().lower_bound;
            prop_assert!(low_a >= low_b, "dominating observation got a lower bound below");
        }
    }

    #[test]
    fn covering_rules_match_direct_evaluation(table in small_table_strategy()) {
        let ruleset = induce(&table, InduceParams::default()).unwrap();
        for obs in table.observations() {
            let covering = covering_rules(&ruleset, &obs.values).unwrap();
            for (i, rule) in ruleset.rules.iter().enumerate() {
                prop_assert_eq!(covering.contains(&i), rule.covers(&obs.values));
            }
        }
    }

    #[test]
    fn tradeoff_counts_never_increase(seed in 0u64..256) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_table(&mut rng, 2, 10, 3, 4);
        let b = common::random_table(&mut rng, 2, 10, 3, 4);
        let mut rules_a = induce(&a, InduceParams::default()).unwrap();
        let mut rules_b = induce(&b, InduceParams::default()).unwrap();
        rules_a.source = "a".to_string();
        rules_b.source = "b".to_string();
        let thresholds = [0.0, 10.0, 25.0, 50.0, 75.0, 90.0, 100.0];
        for metric in [TradeoffMetric::Strength, TradeoffMetric::Confidence] {
            let points = tradeoff_curve(&[&rules_a, &rules_b], &thresholds, metric).unwrap();
            // independent recount per threshold
            for point in &points {
                let filter = |rs: &drsa_core::RuleSet| drsa_core::RuleSet {
                    rules: rs
                        .rules
                        .iter()
                        .filter(|r| match metric {
                            TradeoffMetric::Strength => r.strength >= point.threshold,
                            TradeoffMetric::Confidence => r.confidence >= point.threshold,
                        })
                        .cloned()
                        .collect(),
                    ..rs.clone()
                };
                let fa = filter(&rules_a);
                let fb = filter(&rules_b);
                let recount = align_rules(&[&fa, &fb]).unwrap().len();
                prop_assert_eq!(recount, point.comparable_count);
            }
            for pair in points.windows(2) {
                prop_assert!(pair[1].comparable_count <= pair[0].comparable_count);
            }
        }
    }

    #[test]
    fn identical_segments_align_with_unit_ratios(seed in 0u64..256) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table = common::random_table(&mut rng, 2, 10, 3, 4);
        let mut rules_a = induce(&table, InduceParams::default()).unwrap();
        let mut rules_b = rules_a.clone();
        rules_a.source = "a".to_string();
        rules_b.source = "b".to_string();
        for group in align_rules(&[&rules_a, &rules_b]).unwrap() {
            for ratio in threshold_ratios(&group) {
                if let Some(r) = ratio.ratio {
                    prop_assert_eq!(r, 1.0);
                }
            }
        }
    }
}
