//! NHS pressure: trust-level occupied-bed ratios mapped onto areas through
//! probabilistic many-to-many weights.

use std::collections::BTreeMap;

use super::series::DailySeries;
use super::{Diagnostics, PipelineDiagnostic, PipelineError};

/// Probabilistic share of a trust's activity attributed to one area.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TrustMappingWeight {
    pub trust_id: String,
    pub ltla_id: String,
    pub weight: f64,
}

/// Computes `pressure(ltla, day) = Σ weight(trust, ltla) · occupied/capacity`
/// with weights renormalized over the trusts reporting that day.
///
/// Trusts with zero or missing capacity are excluded with a diagnostic;
/// (ltla, day) pairs where no mapped trust reports stay absent and are
/// counted per area.
pub fn nhs_pressure(
    occupied: &DailySeries,
    capacity: &BTreeMap<String, f64>,
    weights: &[TrustMappingWeight],
) -> Result<(DailySeries, Diagnostics), PipelineError> {
    let mut diagnostics = Vec::new();

    let mut usable: BTreeMap<&str, f64> = BTreeMap::new();
    for trust in occupied.geos() {
        match capacity.get(trust) {
            Some(&beds) if beds > 0.0 => {
                usable.insert(trust, beds);
            }
            Some(_) => diagnostics.push(PipelineDiagnostic::TrustExcluded {
                trust: trust.to_string(),
                reason: "zero capacity".to_string(),
            }),
            None => diagnostics.push(PipelineDiagnostic::TrustExcluded {
                trust: trust.to_string(),
                reason: "capacity unknown".to_string(),
            }),
        }
    }

    // weights per area over usable trusts
    let mut per_ltla: BTreeMap<&str, Vec<(&str, f64)>> = BTreeMap::new();
    for w in weights {
        if w.weight <= 0.0 {
            continue;
        }
        if usable.contains_key(w.trust_id.as_str()) {
            per_ltla
                .entry(w.ltla_id.as_str())
                .or_default()
                .push((w.trust_id.as_str(), w.weight));
        }
    }

    let all_dates: std::collections::BTreeSet<chrono::NaiveDate> =
        occupied.iter().map(|(_, date, _)| date).collect();

    let mut out = DailySeries::new();
    for (ltla, trust_weights) in &per_ltla {
        let mut missing_days = 0usize;
        for &date in &all_dates {
            let mut weight_sum = 0.0;
            let mut value = 0.0;
            for (trust, weight) in trust_weights {
                if let Some(point) = occupied.get(trust, date) {
                    let ratio = point.value / usable[trust];
                    weight_sum += weight;
                    value += weight * ratio;
                }
            }
            if weight_sum > 0.0 {
                out.insert(*ltla, date, value / weight_sum)?;
            } else {
                missing_days += 1;
            }
        }
        if missing_days > 0 {
            diagnostics.push(PipelineDiagnostic::NoReportingTrust {
                ltla: ltla.to_string(),
                days: missing_days,
            });
        }
    }
    Ok((out, diagnostics))
}
