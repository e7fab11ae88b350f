//! Brute-force oracles and table generators shared by the integration
//! suites. Everything here recomputes results directly from observation
//! values, independent of the library's cone/mask/induction machinery.
#![allow(dead_code)] // each test target compiles its own slice of this module

use std::collections::BTreeSet;
use std::path::PathBuf;

use drsa_core::dominance::UnionKind;
use drsa_core::domlem::{DecisionRule, ElementaryCondition};
use drsa_core::table::{Criterion, DecisionAttribute, InformationTable, Observation};
use rand::Rng;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .canonicalize()
        .expect("fixtures directory exists")
}

/// Componentwise gain-direction dominance on raw value vectors.
pub fn dominates_values(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

/// Members of the union, straight from the decision ranks.
pub fn brute_members(table: &InformationTable, kind: UnionKind, class: usize) -> BTreeSet<usize> {
    table
        .observations()
        .iter()
        .enumerate()
        .filter(|(_, o)| match kind {
            UnionKind::AtLeast => o.decision >= class,
            UnionKind::AtMost => o.decision <= class,
        })
        .map(|(i, _)| i)
        .collect()
}

/// Lower approximation from the definition: x stays iff nothing outside the
/// union sits in x's relevant cone.
pub fn brute_lower(table: &InformationTable, kind: UnionKind, class: usize) -> BTreeSet<usize> {
    let members = brute_members(table, kind, class);
    let obs = table.observations();
    (0..obs.len())
        .filter(|&x| {
            members.contains(&x)
                && (0..obs.len()).all(|y| {
                    members.contains(&y)
                        || match kind {
                            UnionKind::AtLeast => {
                                !dominates_values(&obs[y].values, &obs[x].values)
                            }
                            UnionKind::AtMost => {
                                !dominates_values(&obs[x].values, &obs[y].values)
                            }
                        }
                })
        })
        .collect()
}

/// Upper approximation from the definition: the opposite cone meets the
/// union.
pub fn brute_upper(table: &InformationTable, kind: UnionKind, class: usize) -> BTreeSet<usize> {
    let members = brute_members(table, kind, class);
    let obs = table.observations();
    (0..obs.len())
        .filter(|&x| {
            members.iter().any(|&y| match kind {
                UnionKind::AtLeast => dominates_values(&obs[x].values, &obs[y].values),
                UnionKind::AtMost => dominates_values(&obs[y].values, &obs[x].values),
            })
        })
        .collect()
}

/// Cover of a condition list, by direct evaluation.
pub fn brute_cover(table: &InformationTable, conditions: &[ElementaryCondition]) -> BTreeSet<usize> {
    table
        .observations()
        .iter()
        .enumerate()
        .filter(|(_, o)| conditions.iter().all(|c| c.satisfied_by(&o.values)))
        .map(|(i, _)| i)
        .collect()
}

/// Exhaustive enumeration of every minimal certain rule of one union:
/// all criterion subsets crossed with all data-value thresholds, kept when
/// the cover stays inside the lower approximation and no condition can be
/// dropped.
pub fn brute_force_minimal_certain_rules(
    table: &InformationTable,
    kind: UnionKind,
    class: usize,
) -> Vec<Vec<ElementaryCondition>> {
    let members = brute_members(table, kind, class);
    if members.is_empty() || members.len() == table.len() {
        return Vec::new();
    }
    let lower = brute_lower(table, kind, class);
    let k = table.criteria().len();
    let relation = match kind {
        UnionKind::AtLeast => drsa_core::domlem::Relation::Ge,
        UnionKind::AtMost => drsa_core::domlem::Relation::Le,
    };
    let thresholds: Vec<Vec<f64>> = (0..k)
        .map(|q| {
            let mut values: Vec<f64> =
                table.observations().iter().map(|o| o.values[q]).collect();
            values.sort_by(f64::total_cmp);
            values.dedup();
            values
        })
        .collect();

    let mut out: Vec<Vec<ElementaryCondition>> = Vec::new();
    // iterate criterion subsets as bitmasks
    for subset in 1u32..(1 << k) {
        let crits: Vec<usize> = (0..k).filter(|q| subset & (1 << q) != 0).collect();
        let mut choice = vec![0usize; crits.len()];
        loop {
            let conditions: Vec<ElementaryCondition> = crits
                .iter()
                .zip(&choice)
                .map(|(&q, &c)| ElementaryCondition {
                    criterion: q,
                    relation,
                    threshold: thresholds[q][c],
                })
                .collect();
            let cover = brute_cover(table, &conditions);
            if !cover.is_empty() && cover.is_subset(&lower) {
                let minimal = (0..conditions.len()).all(|drop| {
                    let rest: Vec<ElementaryCondition> = conditions
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != drop)
                        .map(|(_, c)| *c)
                        .collect();
                    let c = brute_cover(table, &rest);
                    c.is_empty() || !c.is_subset(&lower)
                });
                if minimal && !out.contains(&conditions) {
                    out.push(conditions);
                }
            }
            // advance the mixed-radix threshold choice
            let mut pos = 0;
            loop {
                if pos == choice.len() {
                    break;
                }
                choice[pos] += 1;
                if choice[pos] < thresholds[crits[pos]].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if pos == choice.len() {
                break;
            }
        }
    }
    out
}

/// True when `rule` appears in the oracle's enumeration for its union.
pub fn oracle_contains(oracle: &[Vec<ElementaryCondition>], rule: &DecisionRule) -> bool {
    oracle.iter().any(|conds| {
        conds.len() == rule.conditions.len()
            && conds.iter().all(|c| rule.conditions.contains(c))
    })
}

/// Random table with integer-grid values (ties are likely, which is what
/// exercises the dominance machinery).
pub fn random_table(
    rng: &mut impl Rng,
    n_criteria: usize,
    n_observations: usize,
    n_classes: usize,
    value_range: u32,
) -> InformationTable {
    let criteria = (0..n_criteria)
        .map(|i| Criterion::gain(i, format!("q{i}")))
        .collect();
    let classes = (1..=n_classes).map(|c| c.to_string()).collect();
    let decision = DecisionAttribute::new("class", classes);
    let observations = (0..n_observations)
        .map(|i| {
            let values = (0..n_criteria)
                .map(|_| rng.gen_range(0..=value_range) as f64)
                .collect();
            Observation::new((i + 1).to_string(), values, rng.gen_range(0..n_classes))
        })
        .collect();
    InformationTable::new(criteria, decision, observations).unwrap()
}

/// Random consistent table: the class is a monotone step function of the
/// value sum, so a dominating object never has a lower class.
pub fn random_consistent_table(
    rng: &mut impl Rng,
    n_criteria: usize,
    n_observations: usize,
    n_classes: usize,
    value_range: u32,
) -> InformationTable {
    let criteria: Vec<Criterion> = (0..n_criteria)
        .map(|i| Criterion::gain(i, format!("q{i}")))
        .collect();
    let classes: Vec<String> = (1..=n_classes).map(|c| c.to_string()).collect();
    let decision = DecisionAttribute::new("class", classes);
    let max_sum = (value_range as f64) * n_criteria as f64;
    let observations = (0..n_observations)
        .map(|i| {
            let values: Vec<f64> = (0..n_criteria)
                .map(|_| rng.gen_range(0..=value_range) as f64)
                .collect();
            let score = values.iter().sum::<f64>() / max_sum.max(1.0);
            let rank = ((score * n_classes as f64) as usize).min(n_classes - 1);
            Observation::new((i + 1).to_string(), values, rank)
        })
        .collect();
    InformationTable::new(criteria, decision, observations).unwrap()
}
