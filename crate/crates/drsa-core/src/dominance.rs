//! Dominance relation, dominance cones, class unions, rough approximations
//! and the quality-of-classification measure.
//!
//! All criteria are gain-direction: `x` dominates `y` iff `x` is at least as
//! high as `y` on every criterion. Ties count as dominance, so the relation
//! is reflexive.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::mask::Mask;
use crate::table::{InformationTable, Observation, TableError};

/// Set of observation positions within one table.
pub type ObjectSet = BTreeSet<usize>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum UnionKind {
    AtLeast,
    AtMost,
}

/// An upward (`AtLeast`) or downward (`AtMost`) union of decision classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassUnion {
    pub kind: UnionKind,
    /// Rank of the threshold class in the declared order.
    pub threshold: usize,
    pub members: ObjectSet,
}

impl ClassUnion {
    pub fn label<'t>(&self, table: &'t InformationTable) -> &'t str {
        table.class_label(self.threshold)
    }

    /// Degenerate unions cover the whole universe by declaration
    /// (`AtLeast` the lowest class, `AtMost` the highest).
    pub fn is_degenerate(&self, table: &InformationTable) -> bool {
        match self.kind {
            UnionKind::AtLeast => self.threshold == 0,
            UnionKind::AtMost => self.threshold + 1 == table.n_classes(),
        }
    }
}

/// Lower/upper approximation and boundary of one union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproximationResult {
    pub union: ClassUnion,
    pub lower: ObjectSet,
    pub upper: ObjectSet,
    pub boundary: ObjectSet,
}

#[derive(Debug, Error)]
pub enum DominanceError {
    #[error("unknown observation id '{0}'")]
    UnknownObservation(String),
    #[error("unknown class label '{0}'")]
    UnknownClass(String),
    #[error(transparent)]
    InvalidTable(#[from] TableError),
}

/// True iff `x` is at least as high as `y` on every criterion.
pub fn dominates(x: &Observation, y: &Observation) -> bool {
    debug_assert_eq!(x.values.len(), y.values.len());
    x.values.iter().zip(&y.values).all(|(a, b)| a >= b)
}

/// D⁺(x): positions of every observation dominating the one with id `id`,
/// including itself.
pub fn dominating_set(table: &InformationTable, id: &str) -> Result<ObjectSet, DominanceError> {
    let x = lookup(table, id)?;
    Ok(dominating_set_at(table, x))
}

/// D⁻(x): positions of every observation dominated by the one with id `id`,
/// including itself.
pub fn dominated_set(table: &InformationTable, id: &str) -> Result<ObjectSet, DominanceError> {
    let x = lookup(table, id)?;
    Ok(dominated_set_at(table, x))
}

pub(crate) fn dominating_set_at(table: &InformationTable, x: usize) -> ObjectSet {
    let obs = table.observations();
    (0..obs.len())
        .filter(|&y| dominates(&obs[y], &obs[x]))
        .collect()
}

pub(crate) fn dominated_set_at(table: &InformationTable, x: usize) -> ObjectSet {
    let obs = table.observations();
    (0..obs.len())
        .filter(|&y| dominates(&obs[x], &obs[y]))
        .collect()
}

fn lookup(table: &InformationTable, id: &str) -> Result<usize, DominanceError> {
    table
        .index_of(id)
        .ok_or_else(|| DominanceError::UnknownObservation(id.to_string()))
}

/// Union of objects whose class is at least `label`.
pub fn upward_union(
    table: &InformationTable,
    label: &str,
) -> Result<ClassUnion, DominanceError> {
    Ok(union_by_rank(table, UnionKind::AtLeast, class_rank(table, label)?))
}

/// Union of objects whose class is at most `label`.
pub fn downward_union(
    table: &InformationTable,
    label: &str,
) -> Result<ClassUnion, DominanceError> {
    Ok(union_by_rank(table, UnionKind::AtMost, class_rank(table, label)?))
}

fn class_rank(table: &InformationTable, label: &str) -> Result<usize, DominanceError> {
    table
        .decision()
        .class_index(label)
        .ok_or_else(|| DominanceError::UnknownClass(label.to_string()))
}

pub(crate) fn union_by_rank(
    table: &InformationTable,
    kind: UnionKind,
    threshold: usize,
) -> ClassUnion {
    let members = table
        .observations()
        .iter()
        .enumerate()
        .filter(|(_, obs)| match kind {
            UnionKind::AtLeast => obs.decision >= threshold,
            UnionKind::AtMost => obs.decision <= threshold,
        })
        .map(|(i, _)| i)
        .collect();
    ClassUnion {
        kind,
        threshold,
        members,
    }
}

/// Every non-degenerate union of the table: `AtLeast` each class above the
/// lowest and `AtMost` each class below the highest, in canonical order.
pub fn non_degenerate_unions(table: &InformationTable) -> Vec<ClassUnion> {
    let n = table.n_classes();
    let mut out = Vec::with_capacity(2 * n.saturating_sub(1));
    for t in 0..n.saturating_sub(1) {
        out.push(union_by_rank(table, UnionKind::AtMost, t));
    }
    for t in 1..n {
        out.push(union_by_rank(table, UnionKind::AtLeast, t));
    }
    out
}

/// Objects certainly belonging to the union: their whole relevant cone lies
/// inside it.
pub fn lower_approximation(table: &InformationTable, union: &ClassUnion) -> ObjectSet {
    let obs = table.observations();
    // D(x) ⊆ members, phrased as: nothing outside the union sits in x's cone
    (0..obs.len())
        .filter(|&x| {
            (0..obs.len()).all(|y| {
                union.members.contains(&y)
                    || match union.kind {
                        UnionKind::AtLeast => !dominates(&obs[y], &obs[x]),
                        UnionKind::AtMost => !dominates(&obs[x], &obs[y]),
                    }
            })
        })
        .collect()
}

/// Objects possibly belonging to the union: their opposite cone meets it.
pub fn upper_approximation(table: &InformationTable, union: &ClassUnion) -> ObjectSet {
    let obs = table.observations();
    (0..obs.len())
        .filter(|&x| {
            union.members.iter().any(|&y| match union.kind {
                UnionKind::AtLeast => dominates(&obs[x], &obs[y]),
                UnionKind::AtMost => dominates(&obs[y], &obs[x]),
            })
        })
        .collect()
}

/// Lower, upper and boundary of one union.
pub fn approximation(table: &InformationTable, union: &ClassUnion) -> ApproximationResult {
    let lower = lower_approximation(table, union);
    let upper = upper_approximation(table, union);
    let boundary = upper.difference(&lower).copied().collect();
    ApproximationResult {
        union: union.clone(),
        lower,
        upper,
        boundary,
    }
}

/// Quality of classification: the fraction of objects that belong to no
/// union's boundary. 1.0 iff the table is consistent.
pub fn quality_gamma(table: &InformationTable) -> Result<f64, DominanceError> {
    table.ensure_valid()?;
    let cones = ConeTable::build(table);
    let mut boundary = Mask::empty(table.len());
    for union in non_degenerate_unions(table) {
        let members = Mask::from_set(&union.members, table.len());
        let lower = cones.lower_mask(&union, &members);
        let upper = cones.upper_mask(&union, &members);
        for x in upper.iter() {
            if !lower.contains(x) {
                boundary.insert(x);
            }
        }
    }
    Ok(1.0 - boundary.count() as f64 / table.len() as f64)
}

/// Dominance cones for every object, as bit masks. Computed once and shared
/// by the approximation and induction paths.
pub(crate) struct ConeTable {
    pub dplus: Vec<Mask>,
    pub dminus: Vec<Mask>,
}

impl ConeTable {
    pub fn build(table: &InformationTable) -> Self {
        let obs = table.observations();
        let n = obs.len();
        let dplus: Vec<Mask> = (0..n)
            .into_par_iter()
            .map(|x| {
                let mut m = Mask::empty(n);
                for y in 0..n {
                    if dominates(&obs[y], &obs[x]) {
                        m.insert(y);
                    }
                }
                m
            })
            .collect();
        let dminus: Vec<Mask> = (0..n)
            .into_par_iter()
            .map(|x| {
                let mut m = Mask::empty(n);
                for y in 0..n {
                    if dominates(&obs[x], &obs[y]) {
                        m.insert(y);
                    }
                }
                m
            })
            .collect();
        ConeTable { dplus, dminus }
    }

    pub fn lower_mask(&self, union: &ClassUnion, members: &Mask) -> Mask {
        let cones = match union.kind {
            UnionKind::AtLeast => &self.dplus,
            UnionKind::AtMost => &self.dminus,
        };
        let mut out = Mask::empty(members.len());
        for x in members.iter() {
            if cones[x].is_subset(members) {
                out.insert(x);
            }
        }
        out
    }

    pub fn upper_mask(&self, union: &ClassUnion, members: &Mask) -> Mask {
        let cones = match union.kind {
            UnionKind::AtLeast => &self.dminus,
            UnionKind::AtMost => &self.dplus,
        };
        let mut out = Mask::empty(members.len());
        for (x, cone) in cones.iter().enumerate() {
            if cone.intersection_count(members) > 0 {
                out.insert(x);
            }
        }
        out
    }
}
