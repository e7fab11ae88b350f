//! Applies an induced rule set to unseen observations, producing a class
//! interval and a recommended class.
//!
//! Covering at-least rules push the lower bound up, covering at-most rules
//! push the upper bound down. With no covering rule the full class range is
//! returned and flagged. When the two sides conflict the recommendation goes
//! to the side with the greater total support, ties to the lower class.

use thiserror::Error;

use crate::dominance::UnionKind;
use crate::domlem::RuleSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ClassifyFlag {
    /// No rule covers the observation.
    Uncovered,
    /// Covering rules imply a lower bound above the upper bound.
    Conflict,
}

impl std::fmt::Display for ClassifyFlag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassifyFlag::Uncovered => write!(f, "uncovered"),
            ClassifyFlag::Conflict => write!(f, "conflict"),
        }
    }
}

/// Interval classification of one observation. Bounds and recommendation are
/// class ranks in the rule set's declared order.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ClassificationResult {
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub recommended: usize,
    /// Indices of the covering rules within the rule set.
    pub covering: Vec<usize>,
    pub flags: Vec<ClassifyFlag>,
}

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("observation has {got} values but the rule set references {expected} criteria")]
    WidthMismatch { expected: usize, got: usize },
    #[error("rule set declares no classes")]
    NoClasses,
}

/// Indices of exactly the rules whose every condition the observation
/// satisfies.
pub fn covering_rules(ruleset: &RuleSet, values: &[f64]) -> Result<Vec<usize>, ClassifyError> {
    let width = ruleset.criteria.len();
    if values.len() < width {
        return Err(ClassifyError::WidthMismatch {
            expected: width,
            got: values.len(),
        });
    }
    Ok(ruleset
        .rules
        .iter()
        .enumerate()
        .filter(|(_, rule)| rule.covers(values))
        .map(|(i, _)| i)
        .collect())
}

/// Classifies one observation against a rule set.
pub fn classify(ruleset: &RuleSet, values: &[f64]) -> Result<ClassificationResult, ClassifyError> {
    let n_classes = ruleset.classes.len();
    if n_classes == 0 {
        return Err(ClassifyError::NoClasses);
    }
    let covering = covering_rules(ruleset, values)?;

    let mut lower: Option<usize> = None;
    let mut upper: Option<usize> = None;
    let mut support_at_least = 0usize;
    let mut support_at_most = 0usize;
    for &i in &covering {
        let rule = &ruleset.rules[i];
        match rule.consequent.kind {
            UnionKind::AtLeast => {
                lower = Some(lower.map_or(rule.consequent.class, |l| l.max(rule.consequent.class)));
                support_at_least += rule.support;
            }
            UnionKind::AtMost => {
                upper = Some(upper.map_or(rule.consequent.class, |u| u.min(rule.consequent.class)));
                support_at_most += rule.support;
            }
        }
    }

    let mut flags = Vec::new();
    if covering.is_empty() {
        flags.push(ClassifyFlag::Uncovered);
    }
    let lower_bound = lower.unwrap_or(0);
    let upper_bound = upper.unwrap_or(n_classes - 1);
    if lower_bound > upper_bound {
        flags.push(ClassifyFlag::Conflict);
    }

    let recommended = if covering.is_empty() {
        0
    } else if support_at_least > support_at_most {
        lower_bound
    } else if support_at_most > support_at_least {
        upper_bound
    } else {
        lower_bound.min(upper_bound)
    };

    Ok(ClassificationResult {
        lower_bound,
        upper_bound,
        recommended,
        covering,
        flags,
    })
}
