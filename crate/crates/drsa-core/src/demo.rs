//! Built-in worked example: a ten-observation table with three criteria and
//! three tiers, small enough to check every cone, union and rule by hand.

use crate::table::{Criterion, DecisionAttribute, InformationTable, Observation};

pub const DEMO_CRITERIA: [&str; 3] = ["Number of Cases", "Rate of Change", "Positivity Rate"];

const DEMO_ROWS: [(f64, f64, f64, &str); 10] = [
    (195.0, 2.48, 8.05, "3"),
    (92.0, 2.45, 7.89, "2"),
    (237.0, -2.74, 8.94, "2"),
    (515.0, 2.82, 1.43, "3"),
    (528.0, 7.54, 5.3, "3"),
    (434.0, 1.65, 5.41, "2"),
    (143.0, -3.15, 8.01, "1"),
    (75.0, 3.2, 5.25, "2"),
    (269.0, 2.33, 1.71, "1"),
    (131.0, 3.28, 1.03, "1"),
];

/// The worked-example table. Observation ids are "1".."10".
pub fn demo_table() -> InformationTable {
    let criteria = DEMO_CRITERIA
        .iter()
        .enumerate()
        .map(|(i, name)| Criterion::gain(i, *name))
        .collect();
    let decision =
        DecisionAttribute::new("Tier", vec!["1".into(), "2".into(), "3".into()]);
    let observations = DEMO_ROWS
        .iter()
        .enumerate()
        .map(|(i, (c1, c2, c3, tier))| {
            Observation::new(
                (i + 1).to_string(),
                vec![*c1, *c2, *c3],
                decision.class_index(tier).unwrap(),
            )
        })
        .collect();
    InformationTable::new(criteria, decision, observations).expect("demo table is well-formed")
}
