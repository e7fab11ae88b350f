//! The full dataset build: criteria derivation, tier join, segment tagging.

use std::collections::BTreeMap;

use chrono::NaiveDate;

use crate::table::{
    sort_class_labels, Criterion, DecisionAttribute, InformationTable, Observation,
};

use super::cases::{aggregate_cases, AgeBandedCases};
use super::pressure::{nhs_pressure, TrustMappingWeight};
use super::series::{rate_of_change, rolling_average, DailySeries};
use super::tiers::{join_tiers, segment_of_region, TierInterval};
use super::{Diagnostics, PipelineDiagnostic, PipelineError};

/// All snapshot inputs, as loaded by [`super::load_snapshot_dir`].
#[derive(Debug, Clone, Default)]
pub struct SnapshotData {
    /// Age-banded daily cases per area.
    pub cases: AgeBandedCases,
    /// Daily positivity percentage per area.
    pub positivity: DailySeries,
    /// Daily occupied beds per trust.
    pub occupancy: DailySeries,
    /// Total beds per trust.
    pub capacity: BTreeMap<String, f64>,
    /// Trust → area probabilistic mapping.
    pub weights: Vec<TrustMappingWeight>,
    /// Legislated tier intervals.
    pub tiers: Vec<TierInterval>,
    /// Area → region lookup.
    pub regions: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineConfig {
    /// Rolling-average window in days.
    pub window: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig { window: 7 }
    }
}

/// A built dataset plus everything dropped or flagged on the way.
#[derive(Debug)]
pub struct BuildOutput {
    pub table: InformationTable,
    pub diagnostics: Diagnostics,
    /// (area, day) pairs dropped because a criterion or the tier was missing.
    pub dropped: usize,
}

pub const CRITERIA_NAMES: [&str; 5] = ["C1", "C2", "C3", "C4", "C5"];

/// Inner-joins the five criteria and the tier on (area, day), attaches the
/// segment label, and returns the observation table. Rows missing any value
/// are dropped and counted; areas without a region entry are dropped with a
/// diagnostic.
pub fn build_dataset(
    snapshot: &SnapshotData,
    config: &PipelineConfig,
) -> Result<BuildOutput, PipelineError> {
    let mut diagnostics = Vec::new();

    let cases = aggregate_cases(&snapshot.cases, config.window)?;
    let (c3, roc_diags) = rate_of_change(&cases.c1_raw, config.window)?;
    diagnostics.extend(roc_diags);
    let c4 = rolling_average(&snapshot.positivity, config.window)?;
    let (c5, pressure_diags) =
        nhs_pressure(&snapshot.occupancy, &snapshot.capacity, &snapshot.weights)?;
    diagnostics.extend(pressure_diags);

    // candidate grid: wherever C1 exists; count what each later join drops
    let candidates: Vec<(String, NaiveDate)> = cases
        .c1
        .iter()
        .map(|(geo, date, _)| (geo.to_string(), date))
        .collect();

    let mut surviving: Vec<(String, NaiveDate, Vec<f64>, bool)> = Vec::new();
    let mut missing_per_criterion: BTreeMap<&str, usize> = BTreeMap::new();
    for (geo, date) in &candidates {
        let c1 = cases.c1.get(geo, *date).expect("candidate came from C1");
        let sources = [
            ("C2", cases.c2.get(geo, *date)),
            ("C3", c3.get(geo, *date)),
            ("C4", c4.get(geo, *date)),
            ("C5", c5.get(geo, *date)),
        ];
        if let Some((name, _)) = sources.iter().find(|(_, point)| point.is_none()) {
            *missing_per_criterion.entry(name).or_default() += 1;
            continue;
        }
        let mut partial = c1.partial;
        let mut values = vec![c1.value];
        for (_, point) in sources {
            let point = point.unwrap();
            partial |= point.partial;
            values.push(point.value);
        }
        surviving.push((geo.clone(), *date, values, partial));
    }
    let mut dropped = candidates.len() - surviving.len();
    for (criterion, count) in missing_per_criterion {
        diagnostics.push(PipelineDiagnostic::MissingCriterion {
            criterion: criterion.to_string(),
            dropped: count,
        });
    }

    let grid: Vec<(String, NaiveDate)> = surviving
        .iter()
        .map(|(geo, date, _, _)| (geo.clone(), *date))
        .collect();
    let (tier_of, tier_diags) = join_tiers(&grid, &snapshot.tiers)?;
    diagnostics.extend(tier_diags);

    let mut classes: Vec<String> = snapshot.tiers.iter().map(|i| i.tier.clone()).collect();
    sort_class_labels(&mut classes);
    if classes.len() < 2 {
        // a one-tier legislation file cannot order anything
        return Err(PipelineError::EmptyJoin);
    }
    let decision = DecisionAttribute::new("Tier", classes);

    let mut observations = Vec::new();
    let mut unmapped: std::collections::BTreeSet<String> = Default::default();
    for (geo, date, values, partial) in surviving {
        let Some(tier) = tier_of.get(&(geo.clone(), date)) else {
            dropped += 1;
            continue;
        };
        let segment = snapshot
            .regions
            .get(&geo)
            .and_then(|region| segment_of_region(region));
        let Some(segment) = segment else {
            unmapped.insert(geo.clone());
            dropped += 1;
            continue;
        };
        let rank = decision.class_index(tier).expect("classes cover all tiers");
        let mut obs = Observation::new(format!("{geo}:{date}"), values, rank)
            .with_meta("ltla", geo.clone())
            .with_meta("date", date.to_string())
            .with_meta("segment", segment.to_string());
        if partial {
            obs = obs.with_meta("partial", "true");
        }
        observations.push(obs);
    }
    for ltla in unmapped {
        diagnostics.push(PipelineDiagnostic::UnmappedRegion { ltla });
    }
    if observations.is_empty() {
        return Err(PipelineError::EmptyJoin);
    }

    let criteria = CRITERIA_NAMES
        .iter()
        .enumerate()
        .map(|(i, name)| Criterion::gain(i, *name))
        .collect();
    let table = InformationTable::new(criteria, decision, observations)?;
    Ok(BuildOutput {
        table,
        diagnostics,
        dropped,
    })
}
