//! Dominance-based rough set analysis over ordinal observation tables.
//!
//! The crate covers the full path from raw snapshot files to comparable rule
//! sets: building an observation table ([`pipeline`]), dominance cones and
//! rough approximations ([`dominance`]), induction of certain decision rules
//! ([`domlem`]), application of rules to unseen observations ([`classify`]),
//! and cross-segment rule alignment and reporting ([`compare`]).

pub mod classify;
pub mod compare;
pub mod demo;
pub mod dominance;
pub mod domlem;
pub mod pipeline;
pub mod table;

mod mask;
#[cfg(test)]
mod testkit;

pub use classify::{classify, covering_rules, ClassificationResult, ClassifyError, ClassifyFlag};
pub use dominance::{
    approximation, dominated_set, dominates, dominating_set, downward_union, lower_approximation,
    non_degenerate_unions, quality_gamma, upper_approximation, upward_union, ApproximationResult,
    ClassUnion, DominanceError, ObjectSet, UnionKind,
};
pub use domlem::{
    check_minimality, filter_rules, induce, rule_metrics, Consequent, DecisionRule,
    DomlemError, ElementaryCondition, InduceParams, MinimalityDiagnostic, Relation,
    RuleMetrics, RuleSet,
};
pub use table::{
    Criterion, DecisionAttribute, Diagnostic, Direction, InformationTable, Observation,
    TableError,
};
