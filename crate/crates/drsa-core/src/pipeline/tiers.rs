//! Legislated tier intervals, the (area, day) → tier join, and the
//! region → segment grouping.

use std::collections::BTreeMap;
use std::fmt;

use chrono::NaiveDate;

use super::{Diagnostics, PipelineDiagnostic, PipelineError};

/// A legislated tier assignment, effective from `start` to `end` inclusive.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TierInterval {
    pub ltla_id: String,
    pub start: NaiveDate,
    pub end: NaiveDate,
    pub tier: String,
}

/// The three comparison segments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub enum Segment {
    North,
    SouthSansLondon,
    London,
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Segment::North => write!(f, "North"),
            Segment::SouthSansLondon => write!(f, "SouthSansLondon"),
            Segment::London => write!(f, "London"),
        }
    }
}

/// Segment of one of the nine English regions, `None` for anything else.
pub fn segment_of_region(region: &str) -> Option<Segment> {
    match region.trim() {
        "North East" | "North West" | "Yorkshire and The Humber" | "East Midlands"
        | "West Midlands" => Some(Segment::North),
        "East of England" | "South East" | "South West" => Some(Segment::SouthSansLondon),
        "London" => Some(Segment::London),
        _ => None,
    }
}

/// Tier per (area, day), as produced by [`join_tiers`].
pub type TierAssignments = BTreeMap<(String, NaiveDate), String>;

/// Validates intervals (start ≤ end, non-overlapping per area) and assigns
/// each (area, day) pair the tier of its covering interval. Uncovered pairs
/// are dropped and counted per area.
pub fn join_tiers(
    grid: &[(String, NaiveDate)],
    intervals: &[TierInterval],
) -> Result<(TierAssignments, Diagnostics), PipelineError> {
    let mut per_ltla: BTreeMap<&str, Vec<&TierInterval>> = BTreeMap::new();
    for interval in intervals {
        if interval.end < interval.start {
            return Err(PipelineError::InvalidInterval {
                ltla: interval.ltla_id.clone(),
                start: interval.start,
            });
        }
        per_ltla
            .entry(interval.ltla_id.as_str())
            .or_default()
            .push(interval);
    }
    for list in per_ltla.values_mut() {
        list.sort_by_key(|i| i.start);
        for pair in list.windows(2) {
            if pair[1].start <= pair[0].end {
                return Err(PipelineError::OverlappingIntervals {
                    ltla: pair[0].ltla_id.clone(),
                    date: pair[1].start,
                });
            }
        }
    }

    let mut out = BTreeMap::new();
    let mut uncovered: BTreeMap<&str, usize> = BTreeMap::new();
    for (ltla, date) in grid {
        let covering = per_ltla.get(ltla.as_str()).and_then(|list| {
            list.iter()
                .find(|i| i.start <= *date && *date <= i.end)
        });
        match covering {
            Some(interval) => {
                out.insert((ltla.clone(), *date), interval.tier.clone());
            }
            None => *uncovered.entry(ltla.as_str()).or_default() += 1,
        }
    }
    let mut diagnostics = Vec::new();
    for (ltla, days) in uncovered {
        diagnostics.push(PipelineDiagnostic::UncoveredTierDays {
            ltla: ltla.to_string(),
            days,
        });
    }
    Ok((out, diagnostics))
}
