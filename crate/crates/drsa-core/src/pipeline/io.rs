//! Loaders for the snapshot CSV files.
//!
//! Fixed schemas, one file per source:
//! - `cases.csv`      — ltla,date,age_band,count
//! - `positivity.csv` — ltla,date,percent
//! - `occupancy.csv`  — trust,date,occupied
//! - `capacity.csv`   — trust,beds
//! - `mapping.csv`    — trust,ltla,weight
//! - `tiers.csv`      — ltla,start,end,tier
//! - `regions.csv`    — ltla,region

use std::collections::BTreeMap;
use std::fs::File;
use std::path::Path;

use chrono::NaiveDate;

use super::build::SnapshotData;
use super::cases::AgeBandedCases;
use super::pressure::TrustMappingWeight;
use super::series::DailySeries;
use super::tiers::TierInterval;
use super::PipelineError;

fn open_csv(path: &Path) -> Result<csv::Reader<File>, PipelineError> {
    let file = File::open(path).map_err(|source| PipelineError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(file))
}

struct RowReader<'p> {
    path: &'p Path,
    headers: Vec<String>,
}

impl<'p> RowReader<'p> {
    fn new(path: &'p Path, reader: &mut csv::Reader<File>) -> Result<Self, PipelineError> {
        let headers = reader
            .headers()
            .map_err(|e| snapshot_err(path, 0, e.to_string()))?
            .iter()
            .map(str::to_string)
            .collect();
        Ok(RowReader { path, headers })
    }

    fn field<'r>(
        &self,
        record: &'r csv::StringRecord,
        row: usize,
        name: &str,
    ) -> Result<&'r str, PipelineError> {
        let index = self
            .headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| snapshot_err(self.path, 0, format!("missing column '{name}'")))?;
        record
            .get(index)
            .ok_or_else(|| snapshot_err(self.path, row, format!("missing value for '{name}'")))
    }

    fn date(
        &self,
        record: &csv::StringRecord,
        row: usize,
        name: &str,
    ) -> Result<NaiveDate, PipelineError> {
        let raw = self.field(record, row, name)?;
        raw.parse()
            .map_err(|_| snapshot_err(self.path, row, format!("bad date '{raw}' in '{name}'")))
    }

    fn number(
        &self,
        record: &csv::StringRecord,
        row: usize,
        name: &str,
    ) -> Result<f64, PipelineError> {
        let raw = self.field(record, row, name)?;
        raw.parse()
            .map_err(|_| snapshot_err(self.path, row, format!("bad number '{raw}' in '{name}'")))
    }
}

fn snapshot_err(path: &Path, row: usize, message: String) -> PipelineError {
    PipelineError::Snapshot {
        path: if row == 0 {
            path.display().to_string()
        } else {
            format!("{}:{row}", path.display())
        },
        message,
    }
}

fn for_each_record(
    path: &Path,
    mut f: impl FnMut(&RowReader, &csv::StringRecord, usize) -> Result<(), PipelineError>,
) -> Result<(), PipelineError> {
    let mut reader = open_csv(path)?;
    let rows = RowReader::new(path, &mut reader)?;
    for (i, record) in reader.records().enumerate() {
        let row = i + 2;
        let record = record.map_err(|e| snapshot_err(path, row, e.to_string()))?;
        f(&rows, &record, row)?;
    }
    Ok(())
}

pub fn load_age_banded_cases(path: impl AsRef<Path>) -> Result<AgeBandedCases, PipelineError> {
    let path = path.as_ref();
    let mut cases = AgeBandedCases::default();
    for_each_record(path, |rows, record, row| {
        let count = rows.number(record, row, "count")?;
        if count < 0.0 {
            return Err(snapshot_err(path, row, format!("negative count {count}")));
        }
        cases.push(
            rows.field(record, row, "ltla")?,
            rows.date(record, row, "date")?,
            rows.field(record, row, "age_band")?,
            count,
        );
        Ok(())
    })?;
    Ok(cases)
}

/// Loads a (geo, date, value) series; column names vary per file.
pub fn load_daily_series(
    path: impl AsRef<Path>,
    geo_column: &str,
    value_column: &str,
) -> Result<DailySeries, PipelineError> {
    let path = path.as_ref();
    let mut series = DailySeries::new();
    for_each_record(path, |rows, record, row| {
        series.insert(
            rows.field(record, row, geo_column)?,
            rows.date(record, row, "date")?,
            rows.number(record, row, value_column)?,
        )
    })?;
    Ok(series)
}

pub fn load_capacity(path: impl AsRef<Path>) -> Result<BTreeMap<String, f64>, PipelineError> {
    let path = path.as_ref();
    let mut capacity = BTreeMap::new();
    for_each_record(path, |rows, record, row| {
        capacity.insert(
            rows.field(record, row, "trust")?.to_string(),
            rows.number(record, row, "beds")?,
        );
        Ok(())
    })?;
    Ok(capacity)
}

pub fn load_weights(path: impl AsRef<Path>) -> Result<Vec<TrustMappingWeight>, PipelineError> {
    let path = path.as_ref();
    let mut weights = Vec::new();
    for_each_record(path, |rows, record, row| {
        let weight = rows.number(record, row, "weight")?;
        if !(0.0..=1.0).contains(&weight) {
            return Err(snapshot_err(path, row, format!("weight {weight} outside [0, 1]")));
        }
        weights.push(TrustMappingWeight {
            trust_id: rows.field(record, row, "trust")?.to_string(),
            ltla_id: rows.field(record, row, "ltla")?.to_string(),
            weight,
        });
        Ok(())
    })?;
    Ok(weights)
}

pub fn load_tier_intervals(path: impl AsRef<Path>) -> Result<Vec<TierInterval>, PipelineError> {
    let path = path.as_ref();
    let mut intervals = Vec::new();
    for_each_record(path, |rows, record, row| {
        intervals.push(TierInterval {
            ltla_id: rows.field(record, row, "ltla")?.to_string(),
            start: rows.date(record, row, "start")?,
            end: rows.date(record, row, "end")?,
            tier: rows.field(record, row, "tier")?.to_string(),
        });
        Ok(())
    })?;
    Ok(intervals)
}

pub fn load_regions(path: impl AsRef<Path>) -> Result<BTreeMap<String, String>, PipelineError> {
    let path = path.as_ref();
    let mut regions = BTreeMap::new();
    for_each_record(path, |rows, record, row| {
        regions.insert(
            rows.field(record, row, "ltla")?.to_string(),
            rows.field(record, row, "region")?.to_string(),
        );
        Ok(())
    })?;
    Ok(regions)
}

/// Loads all seven snapshot files from one directory by their fixed names.
pub fn load_snapshot_dir(dir: impl AsRef<Path>) -> Result<SnapshotData, PipelineError> {
    let dir = dir.as_ref();
    Ok(SnapshotData {
        cases: load_age_banded_cases(dir.join("cases.csv"))?,
        positivity: load_daily_series(dir.join("positivity.csv"), "ltla", "percent")?,
        occupancy: load_daily_series(dir.join("occupancy.csv"), "trust", "occupied")?,
        capacity: load_capacity(dir.join("capacity.csv"))?,
        weights: load_weights(dir.join("mapping.csv"))?,
        tiers: load_tier_intervals(dir.join("tiers.csv"))?,
        regions: load_regions(dir.join("regions.csv"))?,
    })
}
