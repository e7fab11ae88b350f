//! Exploratory statistics: criterion/tier correlations and tier-distribution
//! summaries.

use std::collections::BTreeMap;

use crate::table::InformationTable;

use super::{CompareError, DATE_META_KEY, SEGMENT_META_KEY};

/// Pearson correlations among the criteria and the tier rank.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct CorrelationMatrix {
    pub labels: Vec<String>,
    /// Full symmetric matrix; `None` marks an undefined entry
    /// (zero-variance column).
    pub entries: Vec<Vec<Option<f64>>>,
}

impl CorrelationMatrix {
    pub fn r(&self, i: usize, j: usize) -> Option<f64> {
        self.entries[i][j]
    }

    pub fn by_label(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.labels.iter().position(|l| l == a)?;
        let j = self.labels.iter().position(|l| l == b)?;
        self.r(i, j)
    }
}

/// Pearson correlations for all pairs among the criteria and the decision,
/// the decision encoded as its 1-based class rank.
pub fn correlations(table: &InformationTable) -> Result<CorrelationMatrix, CompareError> {
    let n = table.len();
    if n < 2 {
        return Err(CompareError::TooFewObservations(n));
    }
    let k = table.criteria().len();
    let mut labels: Vec<String> = table.criteria().iter().map(|c| c.name.clone()).collect();
    labels.push(table.decision().name.clone());

    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(k + 1);
    for q in 0..k {
        columns.push(table.observations().iter().map(|o| o.values[q]).collect());
    }
    columns.push(
        table
            .observations()
            .iter()
            .map(|o| (o.decision + 1) as f64)
            .collect(),
    );

    let mut entries = vec![vec![None; k + 1]; k + 1];
    for i in 0..=k {
        for j in i..=k {
            let r = if i == j {
                // exactly 1 unless the column is constant
                if variance_is_zero(&columns[i]) {
                    None
                } else {
                    Some(1.0)
                }
            } else {
                pearson(&columns[i], &columns[j])
            };
            entries[i][j] = r;
            entries[j][i] = r;
        }
    }
    Ok(CorrelationMatrix { labels, entries })
}

fn variance_is_zero(x: &[f64]) -> bool {
    x.windows(2).all(|w| w[0] == w[1])
}

fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mean_x = x.iter().sum::<f64>() / n;
    let mean_y = y.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (a, b) in x.iter().zip(y) {
        let dx = a - mean_x;
        let dy = b - mean_y;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    if var_x == 0.0 || var_y == 0.0 {
        return None;
    }
    Some(cov / (var_x.sqrt() * var_y.sqrt()))
}

/// Tier counts for one (date, segment) cell.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct TierCountRow {
    pub date: String,
    pub segment: String,
    pub class_label: String,
    pub count: usize,
}

/// Five-number summary of one criterion within a (segment, tier) cell.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BoxplotRow {
    pub segment: String,
    pub class_label: String,
    pub criterion: String,
    pub n: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

/// Tier shares, density-over-time counts and box-plot summaries, shaped for
/// external plotting.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct DistributionReport {
    /// Percentage of observations per class, declared order, zeros included.
    pub shares: Vec<(String, f64)>,
    pub by_date_segment: Vec<TierCountRow>,
    pub summaries: Vec<BoxplotRow>,
}

/// Distribution statistics of the table. Observations without date or
/// segment metadata fall into an empty-string bucket rather than erroring.
pub fn tier_distribution(table: &InformationTable) -> Result<DistributionReport, CompareError> {
    let n = table.len();
    if n == 0 {
        return Err(CompareError::TooFewObservations(0));
    }
    let classes = &table.decision().classes;

    let mut class_counts = vec![0usize; classes.len()];
    for obs in table.observations() {
        class_counts[obs.decision] += 1;
    }
    let shares = classes
        .iter()
        .zip(&class_counts)
        .map(|(label, count)| (label.clone(), 100.0 * *count as f64 / n as f64))
        .collect();

    let mut date_cells: BTreeMap<(String, String, usize), usize> = BTreeMap::new();
    for obs in table.observations() {
        let date = obs.meta.get(DATE_META_KEY).cloned().unwrap_or_default();
        let segment = obs.meta.get(SEGMENT_META_KEY).cloned().unwrap_or_default();
        *date_cells.entry((date, segment, obs.decision)).or_default() += 1;
    }
    let by_date_segment = date_cells
        .into_iter()
        .map(|((date, segment, rank), count)| TierCountRow {
            date,
            segment,
            class_label: classes[rank].clone(),
            count,
        })
        .collect();

    let mut value_cells: BTreeMap<(String, usize, usize), Vec<f64>> = BTreeMap::new();
    for obs in table.observations() {
        let segment = obs.meta.get(SEGMENT_META_KEY).cloned().unwrap_or_default();
        for (q, value) in obs.values.iter().enumerate() {
            value_cells
                .entry((segment.clone(), obs.decision, q))
                .or_default()
                .push(*value);
        }
    }
    let mut summaries = Vec::with_capacity(value_cells.len());
    for ((segment, rank, q), mut values) in value_cells {
        values.sort_by(f64::total_cmp);
        summaries.push(BoxplotRow {
            segment,
            class_label: classes[rank].clone(),
            criterion: table.criteria()[q].name.clone(),
            n: values.len(),
            min: values[0],
            q1: quantile(&values, 0.25),
            median: quantile(&values, 0.5),
            q3: quantile(&values, 0.75),
            max: values[values.len() - 1],
        });
    }

    Ok(DistributionReport {
        shares,
        by_date_segment,
        summaries,
    })
}

/// Linear-interpolation quantile of a sorted slice (R default, type 7).
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::{Criterion, DecisionAttribute, InformationTable, Observation};

    fn tiny_table(values: &[(f64, f64, usize)]) -> InformationTable {
        let observations = values
            .iter()
            .enumerate()
            .map(|(i, (a, b, tier))| {
                Observation::new((i + 1).to_string(), vec![*a, *b], *tier)
            })
            .collect();
        InformationTable::new(
            vec![Criterion::gain(0, "A"), Criterion::gain(1, "B")],
            DecisionAttribute::new("Tier", vec!["1".into(), "2".into(), "3".into(), "4".into()]),
            observations,
        )
        .unwrap()
    }

    #[test]
    fn self_correlation_is_one() {
        let t = tiny_table(&[(1.0, 9.0, 0), (2.0, 7.0, 1), (3.0, 1.0, 2)]);
        let m = correlations(&t).unwrap();
        assert_eq!(m.by_label("A", "A"), Some(1.0));
    }

    #[test]
    fn linear_relations_give_plus_minus_one() {
        let rows: Vec<(f64, f64, usize)> =
            (1..=6).map(|i| (i as f64, 2.0 * i as f64, 0)).collect();
        let mut t = tiny_table(&rows);
        let m = correlations(&t).unwrap();
        assert!((m.by_label("A", "B").unwrap() - 1.0).abs() < 1e-12);

        let rows: Vec<(f64, f64, usize)> =
            (1..=6).map(|i| (i as f64, -(i as f64), 0)).collect();
        t = tiny_table(&rows);
        let m = correlations(&t).unwrap();
        assert!((m.by_label("A", "B").unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_variance_column_is_flagged_undefined() {
        let t = tiny_table(&[(5.0, 1.0, 0), (5.0, 2.0, 1)]);
        let m = correlations(&t).unwrap();
        assert_eq!(m.by_label("A", "B"), None);
        assert_eq!(m.by_label("A", "A"), None);
        let r = m.by_label("B", "Tier").unwrap();
        assert!((r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn too_few_observations_is_an_error() {
        let t = tiny_table(&[(1.0, 2.0, 0)]);
        assert!(matches!(
            correlations(&t),
            Err(CompareError::TooFewObservations(1))
        ));
    }

    #[test]
    fn shares_cover_all_classes_including_zero() {
        let t = tiny_table(&[(1.0, 1.0, 0), (1.0, 1.0, 1), (1.0, 1.0, 1), (1.0, 1.0, 2)]);
        let report = tier_distribution(&t).unwrap();
        let shares: Vec<f64> = report.shares.iter().map(|(_, s)| *s).collect();
        assert_eq!(shares, vec![25.0, 50.0, 25.0, 0.0]);
    }

    #[test]
    fn summaries_give_five_number_rows_per_segment_tier_criterion() {
        let mut t = tiny_table(&[
            (1.0, 10.0, 0),
            (2.0, 20.0, 0),
            (3.0, 30.0, 0),
            (4.0, 40.0, 0),
        ]);
        // attach one segment so the grouping is visible
        let observations: Vec<Observation> = t
            .observations()
            .iter()
            .map(|o| o.clone().with_meta("segment", "North").with_meta("date", "2020-11-01"))
            .collect();
        t = InformationTable::new(t.criteria().to_vec(), t.decision().clone(), observations)
            .unwrap();
        let report = tier_distribution(&t).unwrap();
        let row = report
            .summaries
            .iter()
            .find(|r| r.criterion == "A")
            .unwrap();
        assert_eq!(row.segment, "North");
        assert_eq!((row.min, row.max, row.n), (1.0, 4.0, 4));
        assert_eq!(row.median, 2.5);
        assert_eq!(row.q1, 1.75); // R type-7
        assert_eq!(row.q3, 3.25);
        assert_eq!(report.by_date_segment.len(), 1);
        assert_eq!(report.by_date_segment[0].count, 4);
    }
}
