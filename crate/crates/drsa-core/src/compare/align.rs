//! Cross-segment rule alignment: grouping rules that share a consequent and
//! an antecedent-criteria signature, threshold ratios and the
//! threshold/quantity trade-off curve.

use std::collections::BTreeMap;

use crate::dominance::UnionKind;
use crate::domlem::{DecisionRule, RuleSet};

use super::CompareError;

/// One segment's representative rule inside a comparable group.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SegmentRule {
    /// Thresholds in signature order.
    pub thresholds: Vec<f64>,
    pub support: usize,
    pub strength: f64,
}

/// Rules from different segments sharing a consequent and criteria signature.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ComparableRuleGroup {
    pub kind: UnionKind,
    pub class: usize,
    pub class_label: String,
    /// Criterion names, lexicographically ordered.
    pub signature: Vec<String>,
    pub per_segment: BTreeMap<String, SegmentRule>,
}

/// Groups the rules of two or more segments by (consequent, criteria
/// signature). A segment is represented by its strongest matching rule,
/// ties broken towards the less restrictive thresholds; groups present in
/// fewer than two segments are dropped.
pub fn align_rules(rulesets: &[&RuleSet]) -> Result<Vec<ComparableRuleGroup>, CompareError> {
    if rulesets.len() < 2 {
        return Err(CompareError::TooFewRuleSets(rulesets.len()));
    }
    let classes = &rulesets[0].classes;
    if rulesets.iter().any(|r| &r.classes != classes) {
        return Err(CompareError::ClassOrderMismatch);
    }

    type GroupKey = (UnionKind, usize, Vec<String>);
    let mut groups: BTreeMap<GroupKey, BTreeMap<String, SegmentRule>> = BTreeMap::new();

    for ruleset in rulesets {
        let segment = ruleset.source.clone();
        for rule in &ruleset.rules {
            let (signature, thresholds) = signature_of(rule, &ruleset.criteria);
            let key = (rule.consequent.kind, rule.consequent.class, signature);
            let candidate = SegmentRule {
                thresholds,
                support: rule.support,
                strength: rule.strength,
            };
            let entry = groups.entry(key).or_default();
            match entry.get(&segment) {
                Some(existing) if !better(&candidate, existing, rule.consequent.kind) => {}
                _ => {
                    entry.insert(segment.clone(), candidate);
                }
            }
        }
    }

    Ok(groups
        .into_iter()
        .filter(|(_, per_segment)| per_segment.len() >= 2)
        .map(|((kind, class, signature), per_segment)| ComparableRuleGroup {
            kind,
            class,
            class_label: classes[class].clone(),
            signature,
            per_segment,
        })
        .collect())
}

/// Criterion names sorted lexicographically, thresholds reordered to match.
fn signature_of(rule: &DecisionRule, criteria: &[String]) -> (Vec<String>, Vec<f64>) {
    let mut pairs: Vec<(&str, f64)> = rule
        .conditions
        .iter()
        .map(|c| (criteria[c.criterion].as_str(), c.threshold))
        .collect();
    pairs.sort_by(|a, b| a.0.cmp(b.0));
    (
        pairs.iter().map(|(name, _)| name.to_string()).collect(),
        pairs.iter().map(|(_, thr)| *thr).collect(),
    )
}

/// Representative preference: higher strength, then less restrictive
/// thresholds (lower for at-least rules, higher for at-most) in signature
/// order.
fn better(candidate: &SegmentRule, existing: &SegmentRule, kind: UnionKind) -> bool {
    if candidate.strength != existing.strength {
        return candidate.strength > existing.strength;
    }
    for (c, e) in candidate.thresholds.iter().zip(&existing.thresholds) {
        if c != e {
            return match kind {
                UnionKind::AtLeast => c < e,
                UnionKind::AtMost => c > e,
            };
        }
    }
    false
}

/// Pairwise threshold ratio of a single-criterion group.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ThresholdRatio {
    pub segment_a: String,
    pub segment_b: String,
    pub threshold_a: f64,
    pub threshold_b: f64,
    /// larger/smaller threshold; `None` when a zero threshold makes the
    /// ratio undefined.
    pub ratio: Option<f64>,
}

/// Ratios between every segment pair of a single-criterion group. Groups
/// with more than one criterion have no scalar ratio and yield an empty
/// list; their threshold vectors are compared side by side instead.
pub fn threshold_ratios(group: &ComparableRuleGroup) -> Vec<ThresholdRatio> {
    if group.signature.len() != 1 {
        return Vec::new();
    }
    let entries: Vec<(&String, f64)> = group
        .per_segment
        .iter()
        .map(|(segment, rule)| (segment, rule.thresholds[0]))
        .collect();
    let mut out = Vec::new();
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            let (seg_a, thr_a) = entries[i];
            let (seg_b, thr_b) = entries[j];
            let (larger, smaller) = if thr_a.abs() >= thr_b.abs() {
                (thr_a, thr_b)
            } else {
                (thr_b, thr_a)
            };
            let ratio = (smaller != 0.0).then(|| larger / smaller);
            out.push(ThresholdRatio {
                segment_a: seg_a.clone(),
                segment_b: seg_b.clone(),
                threshold_a: thr_a,
                threshold_b: thr_b,
                ratio,
            });
        }
    }
    out
}

/// Which metric the trade-off filter applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum TradeoffMetric {
    Strength,
    Confidence,
}

/// One point of the threshold/quantity trade-off.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct TradeoffPoint {
    pub threshold: f64,
    pub comparable_count: usize,
}

/// Counts comparable groups after filtering every rule set at each
/// threshold. Counts are non-increasing in the threshold.
pub fn tradeoff_curve(
    rulesets: &[&RuleSet],
    thresholds: &[f64],
    metric: TradeoffMetric,
) -> Result<Vec<TradeoffPoint>, CompareError> {
    if thresholds.windows(2).any(|w| w[0] > w[1]) {
        return Err(CompareError::UnsortedThresholds);
    }
    let mut points = Vec::with_capacity(thresholds.len());
    for &threshold in thresholds {
        let filtered: Vec<RuleSet> = rulesets
            .iter()
            .map(|ruleset| {
                let rules = ruleset
                    .rules
                    .iter()
                    .filter(|r| match metric {
                        TradeoffMetric::Strength => r.strength >= threshold,
                        TradeoffMetric::Confidence => r.confidence >= threshold,
                    })
                    .cloned()
                    .collect();
                RuleSet {
                    rules,
                    ..(*ruleset).clone()
                }
            })
            .collect();
        let refs: Vec<&RuleSet> = filtered.iter().collect();
        let comparable_count = align_rules(&refs)?.len();
        if let Some(previous) = points.last() {
            let previous: &TradeoffPoint = previous;
            debug_assert!(
                comparable_count <= previous.comparable_count,
                "trade-off counts must be non-increasing"
            );
        }
        points.push(TradeoffPoint {
            threshold,
            comparable_count,
        });
    }
    Ok(points)
}

/// True when every rule of the group's segments exists verbatim in its
/// segment's rule set (alignment soundness; used by tests and assertions).
pub fn group_is_sound(group: &ComparableRuleGroup, rulesets: &[&RuleSet]) -> bool {
    group.per_segment.iter().all(|(segment, seg_rule)| {
        rulesets
            .iter()
            .find(|r| &r.source == segment)
            .is_some_and(|ruleset| {
                ruleset.rules.iter().any(|rule| {
                    let (signature, thresholds) = signature_of(rule, &ruleset.criteria);
                    rule.consequent.kind == group.kind
                        && rule.consequent.class == group.class
                        && signature == group.signature
                        && thresholds == seg_rule.thresholds
                        && rule.support == seg_rule.support
                })
            })
    })
}
