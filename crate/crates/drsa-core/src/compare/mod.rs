//! Segment-wise rule extraction, cross-segment alignment, threshold-ratio
//! reporting, trade-off analysis and exploratory statistics.

use thiserror::Error;

use crate::domlem::DomlemError;
use crate::table::TableError;

mod align;
mod segments;
mod stats;

pub use align::{
    align_rules, group_is_sound, threshold_ratios, tradeoff_curve, ComparableRuleGroup,
    SegmentRule, ThresholdRatio, TradeoffMetric, TradeoffPoint,
};
pub use segments::{extract_segment_rules, split_by_segment, SegmentDiagnostic};
pub use stats::{
    correlations, tier_distribution, BoxplotRow, CorrelationMatrix, DistributionReport,
    TierCountRow,
};

/// Meta key carrying the segment label, as written by the pipeline.
pub const SEGMENT_META_KEY: &str = "segment";
/// Meta key carrying the observation date.
pub const DATE_META_KEY: &str = "date";

#[derive(Debug, Error)]
pub enum CompareError {
    #[error("{0} observation(s) carry no segment label: {1}")]
    MissingSegmentLabels(usize, String),
    #[error("rule-set comparison needs at least 2 rule sets, got {0}")]
    TooFewRuleSets(usize),
    #[error("rule sets declare different class orders")]
    ClassOrderMismatch,
    #[error("correlations need at least 2 observations, got {0}")]
    TooFewObservations(usize),
    #[error("trade-off thresholds must be sorted ascending")]
    UnsortedThresholds,
    #[error(transparent)]
    Induction(#[from] DomlemError),
    #[error(transparent)]
    Table(#[from] TableError),
}
