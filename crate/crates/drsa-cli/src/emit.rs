//! Report writers: CSV tables and their JSON mirrors, byte-deterministic
//! for a given input.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use drsa_core::compare::{
    ComparableRuleGroup, CorrelationMatrix, DistributionReport, ThresholdRatio, TradeoffPoint,
};
use drsa_core::dominance::UnionKind;
use drsa_core::{ClassificationResult, InformationTable, RuleSet};

use crate::{CliError, FormatArg};

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::io(format!("cannot create '{}': {e}", dir.display())))
}

fn create(path: &Path) -> Result<File, CliError> {
    File::create(path).map_err(|e| CliError::io(format!("cannot write '{}': {e}", path.display())))
}

fn csv_writer(path: &Path) -> Result<csv::Writer<File>, CliError> {
    Ok(csv::Writer::from_writer(create(path)?))
}

fn finish(mut w: csv::Writer<File>, path: &Path) -> Result<(), CliError> {
    w.flush()
        .map_err(|e| CliError::io(format!("cannot write '{}': {e}", path.display())))
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<(), CliError> {
    let mut file = create(path)?;
    serde_json::to_writer_pretty(&mut file, value)
        .map_err(|e| CliError::io(format!("cannot write '{}': {e}", path.display())))?;
    file.write_all(b"\n")
        .map_err(|e| CliError::io(format!("cannot write '{}': {e}", path.display())))
}

fn announce(path: &Path) {
    eprintln!("wrote {}", path.display());
}

fn kind_token(kind: UnionKind) -> &'static str {
    match kind {
        UnionKind::AtLeast => "at-least",
        UnionKind::AtMost => "at-most",
    }
}

pub fn rules(dir: &Path, name: &str, ruleset: &RuleSet, format: FormatArg) -> Result<PathBuf, CliError> {
    let path = dir.join(format!("{name}.rls"));
    drsa_core::domlem::write_rls(ruleset, &path)?;
    announce(&path);
    if format == FormatArg::Json {
        let json_path = dir.join(format!("{name}.json"));
        write_json(&json_path, ruleset)?;
        announce(&json_path);
    }
    Ok(path)
}

pub fn observations_csv(dir: &Path, table: &InformationTable) -> Result<PathBuf, CliError> {
    let path = dir.join("observations.csv");
    let mut w = csv_writer(&path)?;
    let mut header = vec!["id", "ltla", "date", "segment", "partial"];
    for criterion in table.criteria() {
        header.push(&criterion.name);
    }
    header.push(&table.decision().name);
    w.write_record(&header).map_err(csv_err(&path))?;
    for obs in table.observations() {
        let mut record: Vec<String> = vec![
            obs.id.clone(),
            obs.meta.get("ltla").cloned().unwrap_or_default(),
            obs.meta.get("date").cloned().unwrap_or_default(),
            obs.meta.get("segment").cloned().unwrap_or_default(),
            obs.meta.get("partial").cloned().unwrap_or_default(),
        ];
        for v in &obs.values {
            record.push(v.to_string());
        }
        record.push(table.class_label(obs.decision).to_string());
        w.write_record(&record).map_err(csv_err(&path))?;
    }
    finish(w, &path)?;
    announce(&path);
    Ok(path)
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> CliError + '_ {
    move |e| CliError::io(format!("cannot write '{}': {e}", path.display()))
}

pub fn classifications(
    dir: &Path,
    rows: &[(String, ClassificationResult)],
    ruleset: &RuleSet,
    format: FormatArg,
) -> Result<(), CliError> {
    let path = dir.join("classifications.csv");
    let mut w = csv_writer(&path)?;
    w.write_record(["id", "lower", "upper", "recommended", "flags"])
        .map_err(csv_err(&path))?;
    for (id, result) in rows {
        let flags = result
            .flags
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join(";");
        w.write_record([
            id.as_str(),
            ruleset.class_label(result.lower_bound),
            ruleset.class_label(result.upper_bound),
            ruleset.class_label(result.recommended),
            &flags,
        ])
        .map_err(csv_err(&path))?;
    }
    finish(w, &path)?;
    announce(&path);

    if format == FormatArg::Json {
        let json_path = dir.join("classifications.json");
        let values: Vec<serde_json::Value> = rows
            .iter()
            .map(|(id, result)| {
                serde_json::json!({
                    "id": id,
                    "lower": ruleset.class_label(result.lower_bound),
                    "upper": ruleset.class_label(result.upper_bound),
                    "recommended": ruleset.class_label(result.recommended),
                    "flags": result.flags.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                    "covering_rules": result.covering,
                })
            })
            .collect();
        write_json(&json_path, &values)?;
        announce(&json_path);
    }
    Ok(())
}

pub fn groups(
    dir: &Path,
    groups: &[ComparableRuleGroup],
    format: FormatArg,
) -> Result<(), CliError> {
    let path = dir.join("groups.csv");
    let mut w = csv_writer(&path)?;
    w.write_record([
        "consequent",
        "class",
        "signature",
        "segment",
        "thresholds",
        "support",
        "strength",
    ])
    .map_err(csv_err(&path))?;
    for group in groups {
        for (segment, rule) in &group.per_segment {
            w.write_record([
                kind_token(group.kind),
                &group.class_label,
                &group.signature.join("+"),
                segment,
                &rule
                    .thresholds
                    .iter()
                    .map(f64::to_string)
                    .collect::<Vec<_>>()
                    .join("|"),
                &rule.support.to_string(),
                &format!("{:.2}", rule.strength),
            ])
            .map_err(csv_err(&path))?;
        }
    }
    finish(w, &path)?;
    announce(&path);
    if format == FormatArg::Json {
        let json_path = dir.join("groups.json");
        write_json(&json_path, &groups)?;
        announce(&json_path);
    }
    Ok(())
}

pub fn ratios(
    dir: &Path,
    rows: &[(UnionKind, String, String, ThresholdRatio)],
    format: FormatArg,
) -> Result<(), CliError> {
    let path = dir.join("ratios.csv");
    let mut w = csv_writer(&path)?;
    w.write_record([
        "consequent",
        "class",
        "criterion",
        "segment_a",
        "segment_b",
        "threshold_a",
        "threshold_b",
        "ratio",
    ])
    .map_err(csv_err(&path))?;
    for (kind, class, criterion, ratio) in rows {
        w.write_record([
            kind_token(*kind),
            class,
            criterion,
            &ratio.segment_a,
            &ratio.segment_b,
            &ratio.threshold_a.to_string(),
            &ratio.threshold_b.to_string(),
            &ratio.ratio.map(|r| format!("{r:.3}")).unwrap_or_default(),
        ])
        .map_err(csv_err(&path))?;
    }
    finish(w, &path)?;
    announce(&path);
    if format == FormatArg::Json {
        let json_path = dir.join("ratios.json");
        let values: Vec<serde_json::Value> = rows
            .iter()
            .map(|(kind, class, criterion, ratio)| {
                serde_json::json!({
                    "consequent": kind_token(*kind),
                    "class": class,
                    "criterion": criterion,
                    "ratio": ratio,
                })
            })
            .collect();
        write_json(&json_path, &values)?;
        announce(&json_path);
    }
    Ok(())
}

pub fn tradeoff(
    dir: &Path,
    points: &[TradeoffPoint],
    format: FormatArg,
) -> Result<(), CliError> {
    let path = dir.join("tradeoff.csv");
    let mut w = csv_writer(&path)?;
    w.write_record(["threshold", "comparable_count"])
        .map_err(csv_err(&path))?;
    for point in points {
        w.write_record([
            point.threshold.to_string(),
            point.comparable_count.to_string(),
        ])
        .map_err(csv_err(&path))?;
    }
    finish(w, &path)?;
    announce(&path);
    if format == FormatArg::Json {
        let json_path = dir.join("tradeoff.json");
        write_json(&json_path, &points)?;
        announce(&json_path);
    }
    Ok(())
}

pub fn correlations(
    dir: &Path,
    matrix: &CorrelationMatrix,
    format: FormatArg,
) -> Result<(), CliError> {
    let path = dir.join("correlations.csv");
    let mut w = csv_writer(&path)?;
    let mut header = vec![String::new()];
    header.extend(matrix.labels.iter().cloned());
    w.write_record(&header).map_err(csv_err(&path))?;
    for (i, label) in matrix.labels.iter().enumerate() {
        let mut record = vec![label.clone()];
        for j in 0..matrix.labels.len() {
            record.push(
                matrix
                    .r(i, j)
                    .map(|r| format!("{r:.4}"))
                    .unwrap_or_default(),
            );
        }
        w.write_record(&record).map_err(csv_err(&path))?;
    }
    finish(w, &path)?;
    announce(&path);
    if format == FormatArg::Json {
        let json_path = dir.join("correlations.json");
        write_json(&json_path, matrix)?;
        announce(&json_path);
    }
    Ok(())
}

pub fn distribution(
    dir: &Path,
    report: &DistributionReport,
    format: FormatArg,
) -> Result<(), CliError> {
    let path = dir.join("tier_shares.csv");
    let mut w = csv_writer(&path)?;
    w.write_record(["tier", "share_pct"]).map_err(csv_err(&path))?;
    for (label, share) in &report.shares {
        w.write_record([label.as_str(), &format!("{share:.2}")])
            .map_err(csv_err(&path))?;
    }
    finish(w, &path)?;
    announce(&path);

    let path = dir.join("tier_counts.csv");
    let mut w = csv_writer(&path)?;
    w.write_record(["date", "segment", "tier", "count"])
        .map_err(csv_err(&path))?;
    for row in &report.by_date_segment {
        w.write_record([
            row.date.as_str(),
            &row.segment,
            &row.class_label,
            &row.count.to_string(),
        ])
        .map_err(csv_err(&path))?;
    }
    finish(w, &path)?;
    announce(&path);

    let path = dir.join("tier_summaries.csv");
    let mut w = csv_writer(&path)?;
    w.write_record([
        "segment", "tier", "criterion", "n", "min", "q1", "median", "q3", "max",
    ])
    .map_err(csv_err(&path))?;
    for row in &report.summaries {
        w.write_record([
            row.segment.as_str(),
            &row.class_label,
            &row.criterion,
            &row.n.to_string(),
            &row.min.to_string(),
            &row.q1.to_string(),
            &row.median.to_string(),
            &row.q3.to_string(),
            &row.max.to_string(),
        ])
        .map_err(csv_err(&path))?;
    }
    finish(w, &path)?;
    announce(&path);

    if format == FormatArg::Json {
        let json_path = dir.join("distribution.json");
        write_json(&json_path, report)?;
        announce(&json_path);
    }
    Ok(())
}
