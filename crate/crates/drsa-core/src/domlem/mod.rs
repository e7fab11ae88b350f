//! Induction of certain decision rules from lower approximations, rule
//! metrics, filtering and minimality diagnostics.
//!
//! For every non-degenerate union the induction enumerates, for each object
//! of the union's lower approximation, all subset-minimal condition sets
//! drawn from that object's own values whose cover stays inside the lower
//! approximation. Every induced rule is therefore certain (confidence 100%
//! with respect to the certain region), grounded in an existing observation,
//! and minimal in the sense that no condition can be dropped. The full
//! profile of a seed object is always certain, so jointly the rules of a
//! union cover its entire lower approximation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::dominance::{non_degenerate_unions, ConeTable, ObjectSet, UnionKind};
use crate::mask::Mask;
use crate::table::{InformationTable, TableError};

mod rls;

pub use rls::{
    format_antecedent, format_consequent, format_rule, load_rls, parse_rls, write_rls,
    write_rls_to,
};

/// Comparison relation of an elementary condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Relation {
    Ge,
    Le,
}

impl Relation {
    pub fn holds(self, value: f64, threshold: f64) -> bool {
        match self {
            Relation::Ge => value >= threshold,
            Relation::Le => value <= threshold,
        }
    }

    fn for_kind(kind: UnionKind) -> Relation {
        match kind {
            UnionKind::AtLeast => Relation::Ge,
            UnionKind::AtMost => Relation::Le,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Ge => write!(f, ">="),
            Relation::Le => write!(f, "<="),
        }
    }
}

/// One `criterion relation threshold` condition.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ElementaryCondition {
    pub criterion: usize,
    pub relation: Relation,
    pub threshold: f64,
}

impl ElementaryCondition {
    pub fn ge(criterion: usize, threshold: f64) -> Self {
        ElementaryCondition {
            criterion,
            relation: Relation::Ge,
            threshold,
        }
    }

    pub fn le(criterion: usize, threshold: f64) -> Self {
        ElementaryCondition {
            criterion,
            relation: Relation::Le,
            threshold,
        }
    }

    pub fn satisfied_by(&self, values: &[f64]) -> bool {
        self.relation.holds(values[self.criterion], self.threshold)
    }
}

/// Rule consequent: membership of an upward or downward class union.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Consequent {
    pub kind: UnionKind,
    /// Rank of the threshold class.
    pub class: usize,
}

/// A certain decision rule with its cover and metrics.
///
/// `support` counts covered objects belonging to the consequent union,
/// `strength` is support as a percentage of the union size and `confidence`
/// is support as a percentage of the cover size. Rule sets parsed back from
/// `.rls` files carry their stored metrics and an empty cover; metrics can be
/// recomputed against a table with [`rule_metrics`].
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DecisionRule {
    pub conditions: Vec<ElementaryCondition>,
    pub consequent: Consequent,
    pub cover: ObjectSet,
    pub support: usize,
    pub strength: f64,
    pub confidence: f64,
}

impl DecisionRule {
    pub fn length(&self) -> usize {
        self.conditions.len()
    }

    pub fn covers(&self, values: &[f64]) -> bool {
        self.conditions.iter().all(|c| c.satisfied_by(values))
    }
}

/// Induction parameters: minimum rule strength (percent) and maximum rule
/// length (`None` means the criteria count).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct InduceParams {
    pub min_strength: f64,
    pub max_length: Option<usize>,
}

impl Default for InduceParams {
    fn default() -> Self {
        InduceParams {
            min_strength: 0.0,
            max_length: None,
        }
    }
}

impl InduceParams {
    pub fn new(min_strength: f64, max_length: usize) -> Self {
        InduceParams {
            min_strength,
            max_length: Some(max_length),
        }
    }
}

/// An induced (or parsed) rule set together with the vocabulary needed to
/// render and apply it: criterion names and the ordered class labels.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RuleSet {
    pub criteria: Vec<String>,
    pub decision: String,
    pub classes: Vec<String>,
    pub rules: Vec<DecisionRule>,
    pub params: InduceParams,
    pub source: String,
}

impl RuleSet {
    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn class_label(&self, rank: usize) -> &str {
        &self.classes[rank]
    }
}

#[derive(Debug, Error)]
pub enum DomlemError {
    #[error("cannot induce rules from an empty table")]
    EmptyTable,
    #[error("invalid induction parameters: {0}")]
    InvalidParams(String),
    #[error("rule references criterion {0} but the table has {1} criteria")]
    UnknownCriterion(usize, usize),
    #[error("rule references class rank {0} but the table has {1} classes")]
    UnknownClass(usize, usize),
    #[error(transparent)]
    InvalidTable(#[from] TableError),
    #[error("rule file: {0}")]
    RlsParse(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: std::path::PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl DomlemError {
    pub fn is_io(&self) -> bool {
        matches!(self, DomlemError::Io { .. })
    }
}

/// Induces the certain rules of every non-degenerate union, canonically
/// ordered, then applies the parameter filter.
pub fn induce(table: &InformationTable, params: InduceParams) -> Result<RuleSet, DomlemError> {
    if table.is_empty() {
        return Err(DomlemError::EmptyTable);
    }
    table.ensure_valid()?;
    let k = table.criteria().len();
    let max_length = params.max_length.unwrap_or(k);
    if max_length == 0 {
        return Err(DomlemError::InvalidParams(
            "max rule length must be at least 1".to_string(),
        ));
    }
    if max_length > k {
        return Err(DomlemError::InvalidParams(format!(
            "max rule length {max_length} exceeds the criteria count {k}"
        )));
    }
    if !(0.0..=100.0).contains(&params.min_strength) {
        return Err(DomlemError::InvalidParams(format!(
            "min strength {} is not a percentage",
            params.min_strength
        )));
    }

    let n = table.len();
    let cones = ConeTable::build(table);
    let unions = non_degenerate_unions(table);
    let mut rules = Vec::new();
    for kind in [UnionKind::AtMost, UnionKind::AtLeast] {
        let relation = Relation::for_kind(kind);
        if !unions.iter().any(|u| u.kind == kind) {
            continue;
        }
        // per-criterion cumulative satisfaction masks, shared by every
        // union of this direction
        let thresholds = ThresholdMasks::build(table, relation);
        for union in unions.iter().filter(|u| u.kind == kind) {
            let members = Mask::from_set(&union.members, n);
            let member_count = members.count();
            if member_count == 0 || member_count == n {
                // nothing to discriminate
                continue;
            }
            let lower = cones.lower_mask(union, &members);
            if lower.is_empty() {
                continue;
            }
            let mut seeds: Vec<usize> = lower.iter().collect();
            // identical profiles generate identical rules once
            let mut seen_profiles: BTreeSet<Vec<u64>> = BTreeSet::new();
            seeds.retain(|&seed| {
                let profile: Vec<u64> = table
                    .observation(seed)
                    .values
                    .iter()
                    .map(|v| v.to_bits())
                    .collect();
                seen_profiles.insert(profile)
            });
            let per_seed: Vec<Vec<Vec<usize>>> = seeds
                .par_iter()
                .map(|&seed| {
                    minimal_subsets_for_seed(table, &thresholds, seed, &lower, max_length)
                })
                .collect();

            // dedupe identical antecedents produced by different seeds
            let mut unique: BTreeSet<Vec<(usize, u64)>> = BTreeSet::new();
            for (seed, subsets) in seeds.iter().zip(per_seed) {
                let values = &table.observation(*seed).values;
                for crits in subsets {
                    let key: Vec<(usize, u64)> = crits
                        .iter()
                        .map(|&q| (q, values[q].to_bits()))
                        .collect();
                    unique.insert(key);
                }
            }
            let consequent = Consequent {
                kind: union.kind,
                class: union.threshold,
            };
            for key in unique {
                let conditions: Vec<ElementaryCondition> = key
                    .iter()
                    .map(|&(q, bits)| ElementaryCondition {
                        criterion: q,
                        relation,
                        threshold: f64::from_bits(bits),
                    })
                    .collect();
                let mut cover = thresholds
                    .satisfying(conditions[0].criterion, conditions[0].threshold)
                    .clone();
                for condition in &conditions[1..] {
                    cover.and_assign(
                        thresholds.satisfying(condition.criterion, condition.threshold),
                    );
                }
                let support = cover.intersection_count(&members);
                rules.push(DecisionRule {
                    cover: cover.iter().collect(),
                    support,
                    strength: 100.0 * support as f64 / member_count as f64,
                    confidence: 100.0 * support as f64 / cover.count() as f64,
                    conditions,
                    consequent,
                });
            }
        }
    }

    sort_canonical(&mut rules, table.n_classes());
    let rules = rules
        .into_iter()
        .filter(|r| r.strength >= params.min_strength && r.length() <= max_length)
        .collect();
    Ok(RuleSet {
        criteria: table.criteria().iter().map(|c| c.name.clone()).collect(),
        decision: table.decision().name.clone(),
        classes: table.decision().classes.clone(),
        rules,
        params: InduceParams {
            min_strength: params.min_strength,
            max_length: Some(max_length),
        },
        source: String::new(),
    })
}

/// Cumulative satisfaction masks per criterion: for each distinct value `v`
/// of criterion `q`, the set of objects with `value(x, q) ≥ v` (or `≤ v` for
/// downward rules). Lets every seed-grounded condition resolve to a
/// precomputed mask by binary search.
struct ThresholdMasks {
    uniques: Vec<Vec<f64>>,
    masks: Vec<Vec<Mask>>,
}

impl ThresholdMasks {
    fn build(table: &InformationTable, relation: Relation) -> Self {
        let k = table.criteria().len();
        let n = table.len();
        let mut uniques = Vec::with_capacity(k);
        let mut masks = Vec::with_capacity(k);
        for q in 0..k {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&x| total_order_bits(table.observation(x).values[q]));
            let mut values: Vec<f64> = Vec::new();
            let mut cumulative: Vec<Mask> = Vec::new();
            match relation {
                // build from the highest value down: each mask adds the
                // objects at its value to the mask above it
                Relation::Ge => {
                    let mut running = Mask::empty(n);
                    for &x in order.iter().rev() {
                        let v = table.observation(x).values[q];
                        if values.last().is_none_or(|last| *last != v) {
                            values.push(v);
                            cumulative.push(running.clone());
                        }
                        running.insert(x);
                        *cumulative.last_mut().unwrap() = running.clone();
                    }
                    values.reverse();
                    cumulative.reverse();
                }
                Relation::Le => {
                    let mut running = Mask::empty(n);
                    for &x in order.iter() {
                        let v = table.observation(x).values[q];
                        if values.last().is_none_or(|last| *last != v) {
                            values.push(v);
                            cumulative.push(running.clone());
                        }
                        running.insert(x);
                        *cumulative.last_mut().unwrap() = running.clone();
                    }
                }
            }
            uniques.push(values);
            masks.push(cumulative);
        }
        ThresholdMasks { uniques, masks }
    }

    /// Mask of objects satisfying `(criterion, relation, threshold)`;
    /// the threshold must be a value present in the column.
    fn satisfying(&self, criterion: usize, threshold: f64) -> &Mask {
        let uniques = &self.uniques[criterion];
        let at = uniques.partition_point(|v| *v < threshold);
        debug_assert!(
            at < uniques.len() && uniques[at] == threshold,
            "threshold {threshold} not drawn from the column"
        );
        &self.masks[criterion][at]
    }
}

/// All subset-minimal condition sets over the seed's own values whose cover
/// stays inside `lower`. Returned as lists of criterion ids.
fn minimal_subsets_for_seed(
    table: &InformationTable,
    thresholds: &ThresholdMasks,
    seed: usize,
    lower: &Mask,
    max_length: usize,
) -> Vec<Vec<usize>> {
    let k = table.criteria().len();
    let values = &table.observation(seed).values;
    let sat: Vec<&Mask> = (0..k).map(|q| thresholds.satisfying(q, values[q])).collect();

    let mut minimal: Vec<Vec<usize>> = Vec::new();
    let mut combo: Vec<usize> = Vec::new();
    for size in 1..=max_length.min(k) {
        combinations(k, size, &mut combo, &mut |crits| {
            if minimal.iter().any(|m| m.iter().all(|q| crits.contains(q))) {
                return; // strict superset of a certain set: not minimal
            }
            let mut cover = sat[crits[0]].clone();
            for &q in &crits[1..] {
                cover.and_assign(sat[q]);
            }
            if cover.is_subset(lower) {
                minimal.push(crits.to_vec());
            }
        });
    }
    minimal
}

fn combinations(k: usize, size: usize, current: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, k: usize, left: usize, current: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if left == 0 {
            f(current);
            return;
        }
        for q in start..=k - left {
            current.push(q);
            rec(q + 1, k, left - 1, current, f);
            current.pop();
        }
    }
    current.clear();
    rec(0, k, size, current, f);
}

/// Canonical rule order: downward unions first by ascending class, upward
/// unions by descending class (most specific consequent first in both
/// directions), then rule length, criterion ids and thresholds.
fn sort_canonical(rules: &mut [DecisionRule], n_classes: usize) {
    rules.sort_by_key(|rule| rule_key(rule, n_classes));
}

fn rule_key(rule: &DecisionRule, n_classes: usize) -> (u8, usize, usize, Vec<usize>, Vec<u64>) {
    let (kind, class) = match rule.consequent.kind {
        UnionKind::AtMost => (0u8, rule.consequent.class),
        UnionKind::AtLeast => (1u8, n_classes - 1 - rule.consequent.class),
    };
    let crits: Vec<usize> = rule.conditions.iter().map(|c| c.criterion).collect();
    let thresholds: Vec<u64> = rule
        .conditions
        .iter()
        .map(|c| total_order_bits(c.threshold))
        .collect();
    (kind, class, rule.length(), crits, thresholds)
}

/// Maps a float to bits whose unsigned order matches the float's total
/// order.
fn total_order_bits(value: f64) -> u64 {
    let bits = value.to_bits();
    if value.is_sign_negative() {
        !bits
    } else {
        bits | (1u64 << 63)
    }
}

/// Cover and metric values of one rule against a table.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleMetrics {
    pub cover: ObjectSet,
    pub support: usize,
    pub strength: f64,
    pub confidence: f64,
}

/// Recomputes cover, support, strength and confidence of an arbitrary rule.
pub fn rule_metrics(
    conditions: &[ElementaryCondition],
    consequent: &Consequent,
    table: &InformationTable,
) -> Result<RuleMetrics, DomlemError> {
    let k = table.criteria().len();
    for c in conditions {
        if c.criterion >= k {
            return Err(DomlemError::UnknownCriterion(c.criterion, k));
        }
    }
    if consequent.class >= table.n_classes() {
        return Err(DomlemError::UnknownClass(consequent.class, table.n_classes()));
    }
    let cover: ObjectSet = table
        .observations()
        .iter()
        .enumerate()
        .filter(|(_, obs)| conditions.iter().all(|c| c.satisfied_by(&obs.values)))
        .map(|(i, _)| i)
        .collect();
    let union = crate::dominance::union_by_rank(table, consequent.kind, consequent.class);
    let support = cover.intersection(&union.members).count();
    let strength = if union.members.is_empty() {
        0.0
    } else {
        100.0 * support as f64 / union.members.len() as f64
    };
    let confidence = if cover.is_empty() {
        0.0
    } else {
        100.0 * support as f64 / cover.len() as f64
    };
    Ok(RuleMetrics {
        cover,
        support,
        strength,
        confidence,
    })
}

/// Keeps the rules meeting both bounds, preserving order.
pub fn filter_rules(ruleset: &RuleSet, min_strength: f64, max_length: usize) -> RuleSet {
    let rules = ruleset
        .rules
        .iter()
        .filter(|r| r.strength >= min_strength && r.length() <= max_length)
        .cloned()
        .collect();
    RuleSet {
        rules,
        params: InduceParams::new(
            ruleset.params.min_strength.max(min_strength),
            ruleset
                .params
                .max_length
                .map_or(max_length, |m| m.min(max_length)),
        ),
        ..ruleset.clone()
    }
}

/// A minimality violation found by [`check_minimality`].
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum MinimalityDiagnostic {
    /// Dropping this condition keeps the rule inside the certain region.
    RedundantCondition { rule: usize, criterion: usize },
    /// The rule adds nothing over `by`: same consequent, identical cover,
    /// antecedent at least as specific.
    Subsumed { rule: usize, by: usize },
}

impl fmt::Display for MinimalityDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinimalityDiagnostic::RedundantCondition { rule, criterion } => {
                write!(f, "rule {rule}: condition on criterion {criterion} is redundant")
            }
            MinimalityDiagnostic::Subsumed { rule, by } => {
                write!(f, "rule {rule} is subsumed by rule {by}")
            }
        }
    }
}

/// Checks that every rule is condition-minimal and no rule is subsumed by
/// another. Empty diagnostics means the set is minimal.
pub fn check_minimality(
    ruleset: &RuleSet,
    table: &InformationTable,
) -> Result<Vec<MinimalityDiagnostic>, DomlemError> {
    let mut out = Vec::new();
    let mut lower_cache: BTreeMap<(UnionKind, usize), ObjectSet> = BTreeMap::new();
    let mut lower_of = |consequent: &Consequent| -> ObjectSet {
        lower_cache
            .entry((consequent.kind, consequent.class))
            .or_insert_with(|| {
                let union =
                    crate::dominance::union_by_rank(table, consequent.kind, consequent.class);
                crate::dominance::lower_approximation(table, &union)
            })
            .clone()
    };

    for (i, rule) in ruleset.rules.iter().enumerate() {
        let lower = lower_of(&rule.consequent);
        for (position, dropped) in rule.conditions.iter().enumerate() {
            if rule.conditions.len() == 1 {
                // an empty antecedent covers everything; only a content-degenerate
                // union could absorb it, and those produce no rules
                let universe: ObjectSet = (0..table.len()).collect();
                if universe == lower {
                    out.push(MinimalityDiagnostic::RedundantCondition {
                        rule: i,
                        criterion: dropped.criterion,
                    });
                }
                continue;
            }
            let rest: Vec<ElementaryCondition> = rule
                .conditions
                .iter()
                .enumerate()
                .filter(|(p, _)| *p != position)
                .map(|(_, c)| *c)
                .collect();
            let metrics = rule_metrics(&rest, &rule.consequent, table)?;
            if metrics.cover.is_subset(&lower) {
                out.push(MinimalityDiagnostic::RedundantCondition {
                    rule: i,
                    criterion: dropped.criterion,
                });
            }
        }
    }

    for i in 0..ruleset.rules.len() {
        for j in 0..ruleset.rules.len() {
            if i == j {
                continue;
            }
            let a = &ruleset.rules[i];
            let b = &ruleset.rules[j];
            if a.consequent != b.consequent || a.cover != b.cover {
                continue;
            }
            // a subsumed by b: a's antecedent implies b's
            if implies(&a.conditions, &b.conditions) {
                let mutual = implies(&b.conditions, &a.conditions);
                if !mutual || j < i {
                    out.push(MinimalityDiagnostic::Subsumed { rule: i, by: j });
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// True iff satisfying `specific` guarantees satisfying `general`.
fn implies(specific: &[ElementaryCondition], general: &[ElementaryCondition]) -> bool {
    general.iter().all(|g| {
        specific.iter().any(|s| {
            s.criterion == g.criterion
                && s.relation == g.relation
                && match s.relation {
                    Relation::Ge => s.threshold >= g.threshold,
                    Relation::Le => s.threshold <= g.threshold,
                }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demo::demo_table;
    use crate::testkit::{reference_rules, reference_ruleset};

    fn find<'a>(
        ruleset: &'a RuleSet,
        conds: &[(usize, f64)],
        consequent: &Consequent,
    ) -> Option<&'a DecisionRule> {
        ruleset.rules.iter().find(|r| {
            r.consequent == *consequent
                && r.conditions.len() == conds.len()
                && r.conditions
                    .iter()
                    .zip(conds)
                    .all(|(c, (q, thr))| c.criterion == *q && c.threshold == *thr)
        })
    }

    #[test]
    fn induced_set_contains_all_nine_reference_rules() {
        let table = demo_table();
        let ruleset = induce(&table, InduceParams::default()).unwrap();
        for (conds, consequent, support, strength) in reference_rules() {
            let rule = find(&ruleset, &conds, &consequent)
                .unwrap_or_else(|| panic!("missing rule {conds:?} -> {consequent:?}"));
            assert_eq!(rule.support, support);
            assert!(
                (rule.strength - strength).abs() <= 0.01,
                "strength {} vs {strength}",
                rule.strength
            );
            assert_eq!(rule.confidence, 100.0);
        }
    }

    #[test]
    fn strength_70_filter_keeps_exactly_two_rules() {
        let table = demo_table();
        let ruleset = induce(&table, InduceParams::default()).unwrap();
        let strong = filter_rules(&ruleset, 70.0, 5.min(table.criteria().len()));
        assert_eq!(strong.len(), 2);
        let refs = reference_rules();
        assert!(find(&strong, &refs[1].0, &refs[1].1).is_some(), "rule 2");
        assert!(find(&strong, &refs[4].0, &refs[4].1).is_some(), "rule 5");
    }

    #[test]
    fn every_induced_rule_is_certain() {
        let table = demo_table();
        let ruleset = induce(&table, InduceParams::default()).unwrap();
        assert!(!ruleset.is_empty());
        for rule in &ruleset.rules {
            assert_eq!(rule.confidence, 100.0);
            assert!(rule.support > 0);
        }
    }

    #[test]
    fn induction_is_deterministic_across_thread_counts() {
        let table = demo_table();
        let reference = induce(&table, InduceParams::default()).unwrap();
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| induce(&table, InduceParams::default()).unwrap());
        assert_eq!(single, reference);
        let again = induce(&table, InduceParams::default()).unwrap();
        assert_eq!(again, reference);
    }

    #[test]
    fn single_class_table_yields_no_rules() {
        let table = crate::table::InformationTable::new(
            vec![crate::table::Criterion::gain(0, "a")],
            crate::table::DecisionAttribute::new("d", vec!["1".into(), "2".into()]),
            vec![
                crate::table::Observation::new("x", vec![1.0], 0),
                crate::table::Observation::new("y", vec![2.0], 0),
            ],
        )
        .unwrap();
        let ruleset = induce(&table, InduceParams::default()).unwrap();
        assert!(ruleset.is_empty());
    }

    #[test]
    fn empty_table_and_zero_length_are_errors() {
        let table = crate::table::InformationTable::new(
            vec![crate::table::Criterion::gain(0, "a")],
            crate::table::DecisionAttribute::new("d", vec!["1".into(), "2".into()]),
            vec![],
        )
        .unwrap();
        assert!(matches!(
            induce(&table, InduceParams::default()),
            Err(DomlemError::EmptyTable)
        ));
        let table = demo_table();
        assert!(matches!(
            induce(&table, InduceParams::new(0.0, 0)),
            Err(DomlemError::InvalidParams(_))
        ));
    }

    #[test]
    fn metrics_of_reference_rule_1() {
        // (cases <= 269) and (positivity <= 1.71) -> at most tier 1
        let table = demo_table();
        let conditions = [
            ElementaryCondition::le(0, 269.0),
            ElementaryCondition::le(2, 1.71),
        ];
        let consequent = Consequent {
            kind: UnionKind::AtMost,
            class: 0,
        };
        let m = rule_metrics(&conditions, &consequent, &table).unwrap();
        assert_eq!(m.cover, ObjectSet::from([8, 9])); // x9, x10
        assert_eq!(m.support, 2);
        assert!((m.strength - 66.67).abs() <= 0.01);
        assert_eq!(m.confidence, 100.0);
    }

    #[test]
    fn metrics_of_reference_rule_3() {
        let table = demo_table();
        let conditions = [
            ElementaryCondition::le(0, 434.0),
            ElementaryCondition::le(2, 5.41),
        ];
        let consequent = Consequent {
            kind: UnionKind::AtMost,
            class: 1,
        };
        let m = rule_metrics(&conditions, &consequent, &table).unwrap();
        assert_eq!(m.cover, ObjectSet::from([5, 7, 8, 9])); // x6, x8, x9, x10
        assert_eq!(m.support, 4);
        assert!((m.strength - 57.14).abs() <= 0.01);
    }

    #[test]
    fn low_threshold_ge_rule_covers_everything() {
        let table = demo_table();
        let conditions = [ElementaryCondition::ge(0, 0.0)];
        let consequent = Consequent {
            kind: UnionKind::AtLeast,
            class: 1,
        };
        let m = rule_metrics(&conditions, &consequent, &table).unwrap();
        assert_eq!(m.cover.len(), 10);
    }

    #[test]
    fn filter_keeps_all_nine_at_25_percent_and_is_identity_at_zero() {
        let table = demo_table();
        let nine = reference_ruleset(&table);
        assert_eq!(filter_rules(&nine, 25.0, 5).len(), 9);
        assert_eq!(filter_rules(&nine, 0.0, 5).rules, nine.rules);
        let strong = filter_rules(&nine, 70.0, 5);
        assert_eq!(strong.len(), 2);
        assert_eq!(strong.rules[0].support, 5);
        assert_eq!(strong.rules[1].support, 3);
    }

    #[test]
    fn reference_rules_are_minimal() {
        let table = demo_table();
        let nine = reference_ruleset(&table);
        assert_eq!(check_minimality(&nine, &table).unwrap(), vec![]);
    }

    #[test]
    fn induced_set_is_minimal() {
        let table = demo_table();
        let ruleset = induce(&table, InduceParams::default()).unwrap();
        assert_eq!(check_minimality(&ruleset, &table).unwrap(), vec![]);
    }

    #[test]
    fn vacuous_condition_is_flagged_redundant() {
        let table = demo_table();
        let mut nine = reference_ruleset(&table);
        nine.rules[4]
            .conditions
            .push(ElementaryCondition::ge(2, 0.0));
        let diags = check_minimality(&nine, &table).unwrap();
        assert_eq!(
            diags,
            vec![MinimalityDiagnostic::RedundantCondition {
                rule: 4,
                criterion: 2
            }]
        );
    }

    #[test]
    fn duplicated_rule_is_flagged_subsumed_once() {
        let table = demo_table();
        let mut nine = reference_ruleset(&table);
        nine.rules.push(nine.rules[4].clone());
        let diags = check_minimality(&nine, &table).unwrap();
        assert_eq!(
            diags,
            vec![MinimalityDiagnostic::Subsumed { rule: 9, by: 4 }]
        );
    }

    #[test]
    fn rules_are_in_canonical_order() {
        let table = demo_table();
        let ruleset = induce(&table, InduceParams::default()).unwrap();
        let keys: Vec<_> = ruleset
            .rules
            .iter()
            .map(|r| rule_key(r, table.n_classes()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        // downward rules first, most specific consequent first
        assert_eq!(ruleset.rules[0].consequent.kind, UnionKind::AtMost);
        assert_eq!(ruleset.rules[0].consequent.class, 0);
    }
}
