//! Information-table data model: preference-ordered criteria, an ordered
//! decision attribute and the observations every analysis runs over.
//!
//! Tables are immutable once constructed and safe to share across threads.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

mod csv;
mod isf;

pub use self::csv::{load_observations_csv, read_observations_csv, ColumnRole, CsvSchema};
pub use self::isf::{load_isf, read_isf, write_isf, write_isf_to};

/// Preference direction of a criterion. The analysis engine in this crate is
/// fixed to gain-direction semantics (higher value supports a higher class);
/// cost is representable in the file formats and reported by [`InformationTable::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Direction {
    Gain,
    Cost,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Gain => write!(f, "gain"),
            Direction::Cost => write!(f, "cost"),
        }
    }
}

/// A condition attribute with a preference direction and continuous scale.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Criterion {
    pub id: usize,
    pub name: String,
    pub direction: Direction,
}

impl Criterion {
    pub fn gain(id: usize, name: impl Into<String>) -> Self {
        Criterion {
            id,
            name: name.into(),
            direction: Direction::Gain,
        }
    }
}

/// The decision attribute: a name and the ordered list of class labels,
/// lowest first.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DecisionAttribute {
    pub name: String,
    pub classes: Vec<String>,
}

impl DecisionAttribute {
    pub fn new(name: impl Into<String>, classes: Vec<String>) -> Self {
        DecisionAttribute {
            name: name.into(),
            classes,
        }
    }

    /// Rank of a class label in the declared order.
    pub fn class_index(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c == label)
    }
}

/// One row of the table: an opaque id, one value per criterion, a decision
/// class (stored as its rank) and optional string metadata.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Observation {
    pub id: String,
    pub values: Vec<f64>,
    pub decision: usize,
    pub meta: BTreeMap<String, String>,
}

impl Observation {
    pub fn new(id: impl Into<String>, values: Vec<f64>, decision: usize) -> Self {
        Observation {
            id: id.into(),
            values,
            decision,
            meta: BTreeMap::new(),
        }
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.meta.insert(key.into(), value.into());
        self
    }
}

/// An immutable observation table.
#[derive(Debug, Clone, serde::Serialize)]
pub struct InformationTable {
    criteria: Vec<Criterion>,
    decision: DecisionAttribute,
    observations: Vec<Observation>,
    #[serde(skip)]
    id_index: HashMap<String, usize>,
}

impl PartialEq for InformationTable {
    fn eq(&self, other: &Self) -> bool {
        self.criteria == other.criteria
            && self.decision == other.decision
            && self.observations == other.observations
    }
}

impl InformationTable {
    /// Builds a table. Shape-breaking problems (value vector length mismatch,
    /// out-of-range decision rank) are rejected here; everything else is left
    /// to [`InformationTable::validate`].
    pub fn new(
        criteria: Vec<Criterion>,
        decision: DecisionAttribute,
        observations: Vec<Observation>,
    ) -> Result<Self, TableError> {
        for obs in &observations {
            if obs.values.len() != criteria.len() {
                return Err(TableError::Shape(format!(
                    "observation '{}' has {} values for {} criteria",
                    obs.id,
                    obs.values.len(),
                    criteria.len()
                )));
            }
            if obs.decision >= decision.classes.len() {
                return Err(TableError::Shape(format!(
                    "observation '{}' has decision rank {} but only {} classes are declared",
                    obs.id,
                    obs.decision,
                    decision.classes.len()
                )));
            }
        }
        let mut id_index = HashMap::with_capacity(observations.len());
        for (i, obs) in observations.iter().enumerate() {
            id_index.entry(obs.id.clone()).or_insert(i);
        }
        Ok(InformationTable {
            criteria,
            decision,
            observations,
            id_index,
        })
    }

    pub fn criteria(&self) -> &[Criterion] {
        &self.criteria
    }

    pub fn decision(&self) -> &DecisionAttribute {
        &self.decision
    }

    pub fn observations(&self) -> &[Observation] {
        &self.observations
    }

    /// Number of observations.
    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    pub fn n_classes(&self) -> usize {
        self.decision.classes.len()
    }

    pub fn class_label(&self, rank: usize) -> &str {
        &self.decision.classes[rank]
    }

    /// Position of the observation with the given id (first occurrence).
    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.id_index.get(id).copied()
    }

    pub fn observation(&self, index: usize) -> &Observation {
        &self.observations[index]
    }

    /// Checks every type invariant and returns one diagnostic per violation.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        for (i, c) in self.criteria.iter().enumerate() {
            if c.id != i {
                out.push(Diagnostic::NonContiguousCriterionId {
                    name: c.name.clone(),
                    id: c.id,
                    position: i,
                });
            }
            if c.name.trim().is_empty() {
                out.push(Diagnostic::EmptyCriterionName { position: i });
            }
            if c.direction != Direction::Gain {
                out.push(Diagnostic::CostDirection {
                    criterion: c.name.clone(),
                });
            }
        }
        for name in duplicates(self.criteria.iter().map(|c| c.name.as_str())) {
            out.push(Diagnostic::DuplicateCriterionName(name));
        }

        if self.decision.classes.len() < 2 {
            out.push(Diagnostic::TooFewClasses(self.decision.classes.len()));
        }
        for label in duplicates(self.decision.classes.iter().map(|c| c.as_str())) {
            out.push(Diagnostic::DuplicateClassLabel(label));
        }

        if self.observations.is_empty() {
            out.push(Diagnostic::EmptyTable);
        }
        for id in duplicates(self.observations.iter().map(|o| o.id.as_str())) {
            out.push(Diagnostic::DuplicateObservationId(id));
        }
        for obs in &self.observations {
            for (q, v) in obs.values.iter().enumerate() {
                if !v.is_finite() {
                    out.push(Diagnostic::NonFiniteValue {
                        observation: obs.id.clone(),
                        criterion: self.criteria[q].name.clone(),
                    });
                }
            }
        }
        out
    }

    /// Errors unless [`InformationTable::validate`] is clean; analysis entry
    /// points call this before trusting the table.
    pub fn ensure_valid(&self) -> Result<(), TableError> {
        let diagnostics = self.validate();
        if diagnostics.is_empty() {
            Ok(())
        } else {
            Err(TableError::Invalid { diagnostics })
        }
    }

    /// Restriction of the table to the given observation positions, keeping
    /// criteria and the declared class order.
    pub fn restrict(&self, positions: &[usize]) -> Result<InformationTable, TableError> {
        let observations = positions
            .iter()
            .map(|&i| self.observations[i].clone())
            .collect();
        InformationTable::new(self.criteria.clone(), self.decision.clone(), observations)
    }
}

/// A single invariant violation reported by [`InformationTable::validate`] or
/// as a loader warning.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum Diagnostic {
    NonContiguousCriterionId {
        name: String,
        id: usize,
        position: usize,
    },
    EmptyCriterionName {
        position: usize,
    },
    DuplicateCriterionName(String),
    CostDirection {
        criterion: String,
    },
    TooFewClasses(usize),
    DuplicateClassLabel(String),
    EmptyTable,
    DuplicateObservationId(String),
    NonFiniteValue {
        observation: String,
        criterion: String,
    },
    ExtraColumnIgnored(String),
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::NonContiguousCriterionId { name, id, position } => write!(
                f,
                "criterion '{name}' has id {id} but sits at position {position}"
            ),
            Diagnostic::EmptyCriterionName { position } => {
                write!(f, "criterion at position {position} has an empty name")
            }
            Diagnostic::DuplicateCriterionName(name) => {
                write!(f, "criterion name '{name}' is declared more than once")
            }
            Diagnostic::CostDirection { criterion } => write!(
                f,
                "criterion '{criterion}' is cost-direction; analysis supports gain only"
            ),
            Diagnostic::TooFewClasses(n) => {
                write!(f, "decision attribute declares {n} classes, need at least 2")
            }
            Diagnostic::DuplicateClassLabel(label) => {
                write!(f, "class label '{label}' is declared more than once")
            }
            Diagnostic::EmptyTable => write!(f, "table has no observations"),
            Diagnostic::DuplicateObservationId(id) => {
                write!(f, "observation id '{id}' occurs more than once")
            }
            Diagnostic::NonFiniteValue {
                observation,
                criterion,
            } => write!(
                f,
                "observation '{observation}' has a non-finite value for '{criterion}'"
            ),
            Diagnostic::ExtraColumnIgnored(name) => {
                write!(f, "column '{name}' is not mapped by the schema and was ignored")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    IsfParse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("row {row}: {message}")]
    CsvRow { row: usize, message: String },
    #[error("missing column '{0}'")]
    MissingColumn(String),
    #[error("csv error: {0}")]
    Csv(#[from] ::csv::Error),
    #[error("{0}")]
    Shape(String),
    #[error("table is invalid: {}", diagnostics.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid { diagnostics: Vec<Diagnostic> },
}

impl TableError {
    /// True when the failure is an I/O problem rather than bad content.
    pub fn is_io(&self) -> bool {
        matches!(self, TableError::Io { .. })
    }
}

fn duplicates<'a>(items: impl Iterator<Item = &'a str>) -> Vec<String> {
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for item in items {
        *counts.entry(item).or_default() += 1;
    }
    let mut dups: Vec<String> = counts
        .into_iter()
        .filter(|(_, n)| *n > 1)
        .map(|(name, _)| name.to_string())
        .collect();
    dups.sort_unstable();
    dups
}

/// Orders class labels the way the loaders do when no order is declared:
/// numerically when every label parses as a number, lexicographically
/// otherwise.
pub(crate) fn sort_class_labels(labels: &mut Vec<String>) {
    labels.sort_unstable();
    labels.dedup();
    if labels.iter().all(|l| l.parse::<f64>().is_ok()) {
        labels.sort_by(|a, b| {
            a.parse::<f64>()
                .unwrap()
                .total_cmp(&b.parse::<f64>().unwrap())
        });
    }
}
