//! Subcommand implementations.

use std::path::Path;

use drsa_core::compare::{
    align_rules, correlations, extract_segment_rules, split_by_segment, threshold_ratios,
    tier_distribution, tradeoff_curve, ThresholdRatio, TradeoffMetric,
};
use drsa_core::demo::demo_table;
use drsa_core::dominance::{
    dominated_set, dominating_set, non_degenerate_unions, quality_gamma, UnionKind,
};
use drsa_core::classify::classify as classify_observation;
use drsa_core::domlem::{format_rule, induce as induce_rules, load_rls, InduceParams};
use drsa_core::pipeline::{build_dataset, load_snapshot_dir, PipelineConfig};
use drsa_core::table::write_isf;
use drsa_core::RuleSet;

use crate::{emit, load, CliError, MetricArg, OutputArgs, TableArgs};

fn params_of(min_strength: f64, max_length: Option<usize>) -> InduceParams {
    InduceParams {
        min_strength,
        max_length,
    }
}

fn stem_of(path: &Path) -> String {
    path.file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("rules")
        .to_string()
}

pub fn demo() -> Result<(), CliError> {
    let table = demo_table();
    println!("Observations ({} criteria, {} rows):", table.criteria().len(), table.len());
    let names: Vec<&str> = table.criteria().iter().map(|c| c.name.as_str()).collect();
    println!("  id  {}  {}", names.join("  "), table.decision().name);
    for obs in table.observations() {
        let values: Vec<String> = obs.values.iter().map(f64::to_string).collect();
        println!(
            "  x{:<3} {:>8} {:>8} {:>8}  {}",
            obs.id,
            values[0],
            values[1],
            values[2],
            table.class_label(obs.decision)
        );
    }

    println!("\nDominance cones (ids):");
    println!("  object  dominating       dominated");
    for obs in table.observations() {
        let show = |set: std::collections::BTreeSet<usize>| {
            set.iter()
                .map(|i| table.observation(*i).id.clone())
                .collect::<Vec<_>>()
                .join(", ")
        };
        println!(
            "  x{:<6} {{{}}}  {{{}}}",
            obs.id,
            show(dominating_set(&table, &obs.id).unwrap()),
            show(dominated_set(&table, &obs.id).unwrap()),
        );
    }

    println!("\nClass unions:");
    for union in non_degenerate_unions(&table) {
        let kind = match union.kind {
            UnionKind::AtLeast => "at least",
            UnionKind::AtMost => "at most",
        };
        let ids: Vec<String> = union
            .members
            .iter()
            .map(|i| table.observation(*i).id.clone())
            .collect();
        println!(
            "  {kind} {}: {{{}}} ({} objects)",
            union.label(&table),
            ids.join(", "),
            ids.len()
        );
    }
    println!(
        "\nQuality of classification: {:.2}",
        quality_gamma(&table).map_err(|e| CliError::validation(e.to_string()))?
    );

    let ruleset = induce_rules(&table, InduceParams::default())?;
    println!("\nCertain rules ({}):", ruleset.len());
    for rule in &ruleset.rules {
        println!("  {}", format_rule(rule, &ruleset));
    }
    Ok(())
}

pub fn pipeline(input: &Path, window: usize, output: &OutputArgs) -> Result<(), CliError> {
    let snapshot = load_snapshot_dir(input)?;
    let built = build_dataset(&snapshot, &PipelineConfig { window })?;
    for diagnostic in &built.diagnostics {
        eprintln!("note: {diagnostic}");
    }
    emit::ensure_dir(&output.out)?;
    emit::observations_csv(&output.out, &built.table)?;
    let isf_path = output.out.join("observations.isf");
    write_isf(&built.table, &isf_path)?;
    eprintln!("wrote {}", isf_path.display());
    println!(
        "built {} observations ({} dropped) over {} areas",
        built.table.len(),
        built.dropped,
        built
            .table
            .observations()
            .iter()
            .filter_map(|o| o.meta.get("ltla"))
            .collect::<std::collections::BTreeSet<_>>()
            .len()
    );
    Ok(())
}

pub fn induce(
    input: &Path,
    min_strength: f64,
    max_length: Option<usize>,
    table_args: &TableArgs,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let (table, warnings) = load::load_table(input, table_args)?;
    for warning in &warnings {
        eprintln!("note: {warning}");
    }
    let mut ruleset = induce_rules(&table, params_of(min_strength, max_length))?;
    ruleset.source = stem_of(input);
    emit::ensure_dir(&output.out)?;
    let name = ruleset.source.clone();
    emit::rules(&output.out, &name, &ruleset, output.format)?;
    println!("induced {} rules", ruleset.len());
    Ok(())
}

pub fn classify(
    rules_path: &Path,
    input: &Path,
    _table_args: &TableArgs,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let ruleset = load_rls(rules_path)?;
    let rows = load::load_classification_rows(input, &ruleset)?;
    let mut results = Vec::with_capacity(rows.len());
    for (id, values) in rows {
        let result = classify_observation(&ruleset, &values)?;
        results.push((id, result));
    }
    emit::ensure_dir(&output.out)?;
    emit::classifications(&output.out, &results, &ruleset, output.format)?;
    let flagged = results.iter().filter(|(_, r)| !r.flags.is_empty()).count();
    println!("classified {} observations ({flagged} flagged)", results.len());
    Ok(())
}

pub fn compare(
    input: &Path,
    min_strength: f64,
    max_length: Option<usize>,
    thresholds: &[f64],
    metric: MetricArg,
    table_args: &TableArgs,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let (table, warnings) = load::load_table(input, table_args)?;
    for warning in &warnings {
        eprintln!("note: {warning}");
    }
    let parts = split_by_segment(&table)?;
    let (rulesets, diagnostics) =
        extract_segment_rules(&parts, params_of(min_strength, max_length))?;
    for diagnostic in &diagnostics {
        eprintln!("note: {diagnostic}");
    }
    emit::ensure_dir(&output.out)?;
    for (segment, ruleset) in &rulesets {
        emit::rules(&output.out, &format!("rules_{segment}"), ruleset, output.format)?;
    }

    let refs: Vec<&RuleSet> = rulesets.values().collect();
    let groups = align_rules(&refs)?;
    emit::groups(&output.out, &groups, output.format)?;

    let mut ratio_rows: Vec<(UnionKind, String, String, ThresholdRatio)> = Vec::new();
    for group in &groups {
        for ratio in threshold_ratios(group) {
            ratio_rows.push((
                group.kind,
                group.class_label.clone(),
                group.signature[0].clone(),
                ratio,
            ));
        }
    }
    emit::ratios(&output.out, &ratio_rows, output.format)?;

    let tradeoff_metric = match metric {
        MetricArg::Strength => TradeoffMetric::Strength,
        MetricArg::Confidence => TradeoffMetric::Confidence,
    };
    let points = tradeoff_curve(&refs, thresholds, tradeoff_metric)?;
    emit::tradeoff(&output.out, &points, output.format)?;

    emit::correlations(&output.out, &correlations(&table)?, output.format)?;
    emit::distribution(&output.out, &tier_distribution(&table)?, output.format)?;

    println!(
        "{} segments, {} comparable groups, {} ratio pairs",
        rulesets.len(),
        groups.len(),
        ratio_rows.len()
    );
    Ok(())
}

pub fn eda(input: &Path, table_args: &TableArgs, output: &OutputArgs) -> Result<(), CliError> {
    let (table, warnings) = load::load_table(input, table_args)?;
    for warning in &warnings {
        eprintln!("note: {warning}");
    }
    emit::ensure_dir(&output.out)?;
    emit::correlations(&output.out, &correlations(&table)?, output.format)?;
    emit::distribution(&output.out, &tier_distribution(&table)?, output.format)?;
    println!("analyzed {} observations", table.len());
    Ok(())
}
