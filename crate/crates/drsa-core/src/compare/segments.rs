//! Splitting an observation table by segment and inducing one rule set per
//! part.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::domlem::{induce, InduceParams, RuleSet};
use crate::table::InformationTable;

use super::{CompareError, SEGMENT_META_KEY};

/// Partitions the table on the segment meta label. Every observation must
/// carry one; the parts are disjoint and jointly exhaustive.
pub fn split_by_segment(
    table: &InformationTable,
) -> Result<BTreeMap<String, InformationTable>, CompareError> {
    let mut unlabeled: Vec<String> = Vec::new();
    let mut positions: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, obs) in table.observations().iter().enumerate() {
        match obs.meta.get(SEGMENT_META_KEY) {
            Some(segment) if !segment.is_empty() => {
                positions.entry(segment).or_default().push(i)
            }
            _ => unlabeled.push(obs.id.clone()),
        }
    }
    if !unlabeled.is_empty() {
        let shown = unlabeled
            .iter()
            .take(10)
            .map(String::as_str)
            .collect::<Vec<_>>()
            .join(", ");
        return Err(CompareError::MissingSegmentLabels(unlabeled.len(), shown));
    }
    let mut parts = BTreeMap::new();
    for (segment, rows) in positions {
        parts.insert(segment.to_string(), table.restrict(&rows)?);
    }
    Ok(parts)
}

/// Per-segment events worth reporting.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum SegmentDiagnostic {
    /// All observations of the segment share one class; nothing to induce.
    SingleClass { segment: String },
}

impl fmt::Display for SegmentDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SegmentDiagnostic::SingleClass { segment } => {
                write!(f, "segment '{segment}' has a single decision class; empty rule set")
            }
        }
    }
}

/// Induces and filters one rule set per segment; the rule set's `source`
/// records the segment it came from.
pub fn extract_segment_rules(
    parts: &BTreeMap<String, InformationTable>,
    params: InduceParams,
) -> Result<(BTreeMap<String, RuleSet>, Vec<SegmentDiagnostic>), CompareError> {
    let entries: Vec<(&String, &InformationTable)> = parts.iter().collect();
    let induced: Vec<(String, RuleSet)> = entries
        .par_iter()
        .map(|(segment, part)| {
            let mut ruleset = induce(part, params)?;
            ruleset.source = (*segment).clone();
            Ok(((*segment).clone(), ruleset))
        })
        .collect::<Result<_, CompareError>>()?;

    let mut diagnostics = Vec::new();
    for (segment, part) in &entries {
        let distinct: BTreeSet<usize> =
            part.observations().iter().map(|o| o.decision).collect();
        if distinct.len() < 2 {
            diagnostics.push(SegmentDiagnostic::SingleClass {
                segment: (*segment).clone(),
            });
        }
    }
    Ok((induced.into_iter().collect(), diagnostics))
}
