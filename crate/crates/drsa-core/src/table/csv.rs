//! CSV observation loader driven by a column→role schema.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::Read;
use std::path::Path;

use super::{
    sort_class_labels, Criterion, DecisionAttribute, Diagnostic, InformationTable, Observation,
    TableError,
};

/// Role of one CSV column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnRole {
    /// Criterion with the given id (position in the criteria order).
    Criterion(usize),
    Decision,
    /// Metadata preserved verbatim under the given key.
    Meta(String),
    /// Column providing the observation id; positional when absent.
    Id,
}

/// Maps CSV header names to roles and optionally declares the class order.
#[derive(Debug, Clone, Default)]
pub struct CsvSchema {
    pub roles: BTreeMap<String, ColumnRole>,
    /// Declared class labels, lowest first. Inferred from the data
    /// (numeric-aware order) when `None`.
    pub classes: Option<Vec<String>>,
}

impl CsvSchema {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn criterion(mut self, column: impl Into<String>, id: usize) -> Self {
        self.roles.insert(column.into(), ColumnRole::Criterion(id));
        self
    }

    pub fn decision(mut self, column: impl Into<String>) -> Self {
        self.roles.insert(column.into(), ColumnRole::Decision);
        self
    }

    pub fn meta(mut self, column: impl Into<String>, key: impl Into<String>) -> Self {
        self.roles.insert(column.into(), ColumnRole::Meta(key.into()));
        self
    }

    pub fn id(mut self, column: impl Into<String>) -> Self {
        self.roles.insert(column.into(), ColumnRole::Id);
        self
    }

    pub fn classes(mut self, labels: Vec<String>) -> Self {
        self.classes = Some(labels);
        self
    }

    /// Convention schema used by the command line: the named decision column,
    /// meta columns (`id` doubles as the observation id), everything else a
    /// criterion in header order.
    pub fn by_convention(
        headers: &[String],
        decision_column: &str,
        meta_columns: &[String],
    ) -> Result<Self, TableError> {
        if !headers.iter().any(|h| h == decision_column) {
            return Err(TableError::MissingColumn(decision_column.to_string()));
        }
        let mut schema = CsvSchema::new();
        let mut next_criterion = 0;
        for header in headers {
            let role = if header == decision_column {
                ColumnRole::Decision
            } else if header == "id" {
                ColumnRole::Id
            } else if meta_columns.iter().any(|m| m == header) {
                ColumnRole::Meta(header.clone())
            } else {
                let id = next_criterion;
                next_criterion += 1;
                ColumnRole::Criterion(id)
            };
            schema.roles.insert(header.clone(), role);
        }
        Ok(schema)
    }

    fn criteria_columns(&self) -> Result<Vec<(&str, usize)>, TableError> {
        let mut cols: Vec<(&str, usize)> = self
            .roles
            .iter()
            .filter_map(|(name, role)| match role {
                ColumnRole::Criterion(id) => Some((name.as_str(), *id)),
                _ => None,
            })
            .collect();
        cols.sort_by_key(|(_, id)| *id);
        for (expect, (name, id)) in cols.iter().enumerate() {
            if *id != expect {
                return Err(TableError::Shape(format!(
                    "criterion ids must be contiguous from 0; column '{name}' has id {id}"
                )));
            }
        }
        Ok(cols)
    }

    fn decision_column(&self) -> Result<&str, TableError> {
        self.roles
            .iter()
            .find_map(|(name, role)| matches!(role, ColumnRole::Decision).then_some(name.as_str()))
            .ok_or_else(|| TableError::Shape("schema declares no decision column".to_string()))
    }
}

/// Loads observations from a CSV file.
pub fn load_observations_csv(
    path: impl AsRef<Path>,
    schema: &CsvSchema,
) -> Result<(InformationTable, Vec<Diagnostic>), TableError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| TableError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_observations_csv(file, schema)
}

/// Loads observations from any CSV reader. Returns the table plus warnings
/// (currently: ignored columns).
pub fn read_observations_csv(
    reader: impl Read,
    schema: &CsvSchema,
) -> Result<(InformationTable, Vec<Diagnostic>), TableError> {
    let mut csv_reader = ::csv::ReaderBuilder::new()
        .trim(::csv::Trim::All)
        .from_reader(reader);
    let headers: Vec<String> = csv_reader.headers()?.iter().map(str::to_string).collect();

    let criteria_columns = schema.criteria_columns()?;
    let decision_column = schema.decision_column()?;

    let mut warnings = Vec::new();
    let mut column_index: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, header) in headers.iter().enumerate() {
        if schema.roles.contains_key(header.as_str()) {
            column_index.insert(header.as_str(), i);
        } else {
            warnings.push(Diagnostic::ExtraColumnIgnored(header.clone()));
        }
    }
    for name in schema.roles.keys() {
        if !column_index.contains_key(name.as_str()) {
            return Err(TableError::MissingColumn(name.clone()));
        }
    }

    struct RawRow {
        row: usize,
        id: Option<String>,
        values: Vec<f64>,
        label: String,
        meta: BTreeMap<String, String>,
    }

    let mut rows: Vec<RawRow> = Vec::new();
    for (i, record) in csv_reader.records().enumerate() {
        let row = i + 2; // 1-based, counting the header line
        let record = record?;
        let field = |column: &str| -> &str { record.get(column_index[column]).unwrap_or("") };

        let mut values = Vec::with_capacity(criteria_columns.len());
        for (column, _) in &criteria_columns {
            let raw = field(column);
            let v: f64 = raw.parse().map_err(|_| TableError::CsvRow {
                row,
                message: format!("unparseable number '{raw}' in column '{column}'"),
            })?;
            values.push(v);
        }
        let label = field(decision_column).to_string();
        if let Some(classes) = &schema.classes {
            if !classes.contains(&label) {
                return Err(TableError::CsvRow {
                    row,
                    message: format!("unknown decision label '{label}'"),
                });
            }
        }
        let mut meta = BTreeMap::new();
        let mut id = None;
        for (column, role) in &schema.roles {
            match role {
                ColumnRole::Meta(key) => {
                    meta.insert(key.clone(), field(column).to_string());
                }
                ColumnRole::Id => id = Some(field(column).to_string()),
                _ => {}
            }
        }
        rows.push(RawRow {
            row,
            id,
            values,
            label,
            meta,
        });
    }

    let classes = match &schema.classes {
        Some(labels) => labels.clone(),
        None => {
            let mut labels: Vec<String> = rows.iter().map(|r| r.label.clone()).collect();
            sort_class_labels(&mut labels);
            labels
        }
    };
    let decision_name = decision_column.to_string();
    let decision = DecisionAttribute::new(decision_name, classes);

    let criteria = criteria_columns
        .iter()
        .map(|(name, id)| Criterion::gain(*id, *name))
        .collect();

    let mut observations = Vec::with_capacity(rows.len());
    for (position, raw) in rows.into_iter().enumerate() {
        let rank = decision.class_index(&raw.label).ok_or(TableError::CsvRow {
            row: raw.row,
            message: format!("unknown decision label '{}'", raw.label),
        })?;
        let mut obs = Observation::new(
            raw.id.unwrap_or_else(|| (position + 1).to_string()),
            raw.values,
            rank,
        );
        obs.meta = raw.meta;
        observations.push(obs);
    }
    let table = InformationTable::new(criteria, decision, observations)?;
    Ok((table, warnings))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demo;
    use crate::table::isf;

    const DEMO_CSV: &str = "\
cases,roc,positivity,Tier
195,2.48,8.05,3
92,2.45,7.89,2
237,-2.74,8.94,2
515,2.82,1.43,3
528,7.54,5.3,3
434,1.65,5.41,2
143,-3.15,8.01,1
75,3.2,5.25,2
269,2.33,1.71,1
131,3.28,1.03,1
";

    fn demo_schema() -> CsvSchema {
        CsvSchema::new()
            .criterion("cases", 0)
            .criterion("roc", 1)
            .criterion("positivity", 2)
            .decision("Tier")
            .classes(vec!["1".into(), "2".into(), "3".into()])
    }

    #[test]
    fn csv_route_matches_isf_route() {
        // same content, column names aside: observations must agree
        let (from_csv, warnings) =
            read_observations_csv(DEMO_CSV.as_bytes(), &demo_schema()).unwrap();
        assert!(warnings.is_empty());
        let reference = demo::demo_table();
        let mut buf = Vec::new();
        isf::write_isf_to(&reference, &mut buf).unwrap();
        let from_isf = isf::read_isf(buf.as_slice(), "demo.isf").unwrap();
        assert_eq!(from_csv.observations(), from_isf.observations());
        assert_eq!(from_csv.decision().classes, from_isf.decision().classes);
    }

    #[test]
    fn extra_column_is_dropped_with_warning() {
        let csv = "cases,roc,positivity,Tier,notes\n195,2.48,8.05,3,hello\n";
        let (table, warnings) = read_observations_csv(csv.as_bytes(), &demo_schema()).unwrap();
        assert_eq!(table.len(), 1);
        assert_eq!(
            warnings,
            vec![Diagnostic::ExtraColumnIgnored("notes".to_string())]
        );
    }

    #[test]
    fn unknown_tier_label_names_row() {
        let csv = "cases,roc,positivity,Tier\n195,2.48,8.05,3\n92,2.45,7.89,5\n";
        let err = read_observations_csv(csv.as_bytes(), &demo_schema()).unwrap_err();
        match err {
            TableError::CsvRow { row, message } => {
                assert_eq!(row, 3);
                assert!(message.contains("unknown decision label '5'"), "{message}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn unparseable_number_names_row() {
        let csv = "cases,roc,positivity,Tier\nabc,2.48,8.05,3\n";
        let err = read_observations_csv(csv.as_bytes(), &demo_schema()).unwrap_err();
        assert!(err.to_string().starts_with("row 2"), "{err}");
    }

    #[test]
    fn missing_column_rejected() {
        let csv = "cases,roc,Tier\n195,2.48,3\n";
        let err = read_observations_csv(csv.as_bytes(), &demo_schema()).unwrap_err();
        assert!(matches!(err, TableError::MissingColumn(name) if name == "positivity"));
    }

    #[test]
    fn convention_schema_maps_id_meta_and_criteria() {
        let csv = "id,ltla,date,segment,C1,C2,Tier\nE06:d1,E06,2020-11-01,North,10,4,2\n";
        let headers: Vec<String> = ["id", "ltla", "date", "segment", "C1", "C2", "Tier"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let schema = CsvSchema::by_convention(
            &headers,
            "Tier",
            &["ltla".into(), "date".into(), "segment".into()],
        )
        .unwrap();
        let (table, _) = read_observations_csv(csv.as_bytes(), &schema).unwrap();
        let obs = &table.observations()[0];
        assert_eq!(obs.id, "E06:d1");
        assert_eq!(obs.values, vec![10.0, 4.0]);
        assert_eq!(obs.meta["segment"], "North");
        assert_eq!(table.criteria()[0].name, "C1");
    }
}
