//! Input loading: tables from .isf/.csv and value rows for classification.

use std::path::Path;

use drsa_core::table::{load_isf, load_observations_csv, CsvSchema};
use drsa_core::{Diagnostic, InformationTable, RuleSet};

use crate::{CliError, TableArgs};

fn extension_of(path: &Path) -> Result<String, CliError> {
    path.extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
        .ok_or_else(|| {
            CliError::validation(format!(
                "cannot tell the format of '{}'; expected a .isf or .csv file",
                path.display()
            ))
        })
}

fn csv_headers(path: &Path) -> Result<Vec<String>, CliError> {
    let file = std::fs::File::open(path)
        .map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(file);
    Ok(reader
        .headers()
        .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?
        .iter()
        .map(str::to_string)
        .collect())
}

/// Loads an observation table from .isf or .csv by extension. CSV columns
/// follow the convention schema: the decision column, the segment column,
/// `ltla`/`date`/`partial` metadata and `id`; everything else is a criterion
/// in header order.
pub fn load_table(
    path: &Path,
    args: &TableArgs,
) -> Result<(InformationTable, Vec<Diagnostic>), CliError> {
    match extension_of(path)?.as_str() {
        "isf" => Ok((load_isf(path)?, Vec::new())),
        "csv" => {
            let headers = csv_headers(path)?;
            let meta = [
                args.segments.clone(),
                "ltla".to_string(),
                "date".to_string(),
                "partial".to_string(),
            ];
            let mut schema = CsvSchema::by_convention(&headers, &args.decision_col, &meta)?;
            if let Some(classes) = &args.classes {
                schema = schema.classes(classes.clone());
            }
            Ok(load_observations_csv(path, &schema)?)
        }
        other => Err(CliError::validation(format!(
            "unsupported table format '.{other}' for '{}'",
            path.display()
        ))),
    }
}

/// Rows to classify: (id, values in rule-set criteria order). CSV input
/// needs the rule set's criteria as columns but no decision column; ISF
/// input is a full table.
pub fn load_classification_rows(
    path: &Path,
    ruleset: &RuleSet,
) -> Result<Vec<(String, Vec<f64>)>, CliError> {
    match extension_of(path)?.as_str() {
        "isf" => {
            let table = load_isf(path)?;
            for name in &ruleset.criteria {
                if !table.criteria().iter().any(|c| &c.name == name) {
                    return Err(CliError::validation(format!(
                        "input table lacks criterion '{name}' referenced by the rule set"
                    )));
                }
            }
            // reorder values into the rule set's criteria order
            let order: Vec<usize> = ruleset
                .criteria
                .iter()
                .map(|name| {
                    table
                        .criteria()
                        .iter()
                        .position(|c| &c.name == name)
                        .unwrap()
                })
                .collect();
            Ok(table
                .observations()
                .iter()
                .map(|obs| {
                    let values = order.iter().map(|&q| obs.values[q]).collect();
                    (obs.id.clone(), values)
                })
                .collect())
        }
        "csv" => {
            let file = std::fs::File::open(path)
                .map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
            let mut reader = csv::ReaderBuilder::new()
                .trim(csv::Trim::All)
                .from_reader(file);
            let headers: Vec<String> =
                reader
                    .headers()
                    .map_err(|e| CliError::validation(e.to_string()))?
                    .iter()
                    .map(str::to_string)
                    .collect();
            let columns: Vec<usize> = ruleset
                .criteria
                .iter()
                .map(|name| {
                    headers.iter().position(|h| h == name).ok_or_else(|| {
                        CliError::validation(format!("missing criterion column '{name}'"))
                    })
                })
                .collect::<Result<_, _>>()?;
            let id_column = headers.iter().position(|h| h == "id");
            let mut rows = Vec::new();
            for (i, record) in reader.records().enumerate() {
                let row = i + 2;
                let record = record.map_err(|e| {
                    CliError::validation(format!("{}:{row}: {e}", path.display()))
                })?;
                let mut values = Vec::with_capacity(columns.len());
                for (&col, name) in columns.iter().zip(&ruleset.criteria) {
                    let raw = record.get(col).unwrap_or("");
                    let v: f64 = raw.parse().map_err(|_| {
                        CliError::validation(format!(
                            "{}:{row}: bad number '{raw}' in column '{name}'",
                            path.display()
                        ))
                    })?;
                    values.push(v);
                }
                let id = id_column
                    .and_then(|c| record.get(c))
                    .map(str::to_string)
                    .unwrap_or_else(|| (i + 1).to_string());
                rows.push((id, values));
            }
            Ok(rows)
        }
        other => Err(CliError::validation(format!(
            "unsupported observation format '.{other}'"
        ))),
    }
}
