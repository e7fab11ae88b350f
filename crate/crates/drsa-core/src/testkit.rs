//! Shared fixtures for unit tests: the nine reference rules of the worked
//! example, with their published support and strength values.

use crate::dominance::UnionKind;
use crate::domlem::{
    rule_metrics, Consequent, DecisionRule, ElementaryCondition, InduceParams, Relation, RuleSet,
};
use crate::table::InformationTable;

/// Antecedent as (criterion, threshold) pairs, consequent, support, strength.
pub(crate) type ReferenceRule = (Vec<(usize, f64)>, Consequent, usize, f64);

pub(crate) fn reference_rules() -> Vec<ReferenceRule> {
    let at_most = |class| Consequent {
        kind: UnionKind::AtMost,
        class,
    };
    let at_least = |class| Consequent {
        kind: UnionKind::AtLeast,
        class,
    };
    vec![
        (vec![(0, 269.0), (2, 1.71)], at_most(0), 2, 66.67),
        (vec![(1, 2.45)], at_most(1), 5, 71.43),
        (vec![(0, 434.0), (2, 5.41)], at_most(1), 4, 57.14),
        (vec![(0, 131.0)], at_most(1), 3, 42.86),
        (vec![(0, 195.0), (1, 2.48)], at_least(2), 3, 100.0),
        (vec![(0, 515.0)], at_least(2), 2, 66.67),
        (vec![(1, 2.82), (2, 1.43)], at_least(1), 3, 42.86),
        (vec![(0, 434.0)], at_least(1), 3, 42.86),
        (vec![(1, 1.65), (2, 5.41)], at_least(1), 3, 42.86),
    ]
}

/// The nine reference rules as a rule set, metrics recomputed from `table`,
/// in the published row order.
pub(crate) fn reference_ruleset(table: &InformationTable) -> RuleSet {
    let rules = reference_rules()
        .into_iter()
        .map(|(conds, consequent, _, _)| {
            let relation = match consequent.kind {
                UnionKind::AtLeast => Relation::Ge,
                UnionKind::AtMost => Relation::Le,
            };
            let conditions: Vec<ElementaryCondition> = conds
                .into_iter()
                .map(|(q, thr)| ElementaryCondition {
                    criterion: q,
                    relation,
                    threshold: thr,
                })
                .collect();
            let m = rule_metrics(&conditions, &consequent, table).unwrap();
            DecisionRule {
                conditions,
                consequent,
                cover: m.cover,
                support: m.support,
                strength: m.strength,
                confidence: m.confidence,
            }
        })
        .collect();
    RuleSet {
        criteria: table.criteria().iter().map(|c| c.name.clone()).collect(),
        decision: table.decision().name.clone(),
        classes: table.decision().classes.clone(),
        rules,
        params: InduceParams::default(),
        source: "reference".to_string(),
    }
}
