//! Workload generators for the engine benchmarks.

use chrono::{Days, NaiveDate};
use drsa_core::pipeline::DailySeries;
use drsa_core::table::{Criterion, DecisionAttribute, InformationTable, Observation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random observation table shaped like the analysis data: five gain
/// criteria, four ordered classes assigned by a noisy monotone score.
pub fn synthetic_table(n_observations: usize, seed: u64) -> InformationTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_criteria = 5;
    let n_classes: i32 = 4;
    let criteria = (0..n_criteria)
        .map(|i| Criterion::gain(i, format!("C{}", i + 1)))
        .collect();
    let classes = (1..=n_classes).map(|c| c.to_string()).collect();
    let observations = (0..n_observations)
        .map(|i| {
            let values: Vec<f64> = (0..n_criteria)
                .map(|_| (rng.gen_range(0..400) as f64) / 4.0)
                .collect();
            let score = values.iter().sum::<f64>() / (100.0 * n_criteria as f64);
            let noise = rng.gen_range(-1i32..=1);
            let rank = ((score * f64::from(n_classes)) as i32 + noise).clamp(0, n_classes - 1);
            Observation::new((i + 1).to_string(), values, rank as usize)
        })
        .collect();
    InformationTable::new(
        criteria,
        DecisionAttribute::new("Tier", classes),
        observations,
    )
    .expect("generator produces well-formed tables")
}

/// Daily series with a weekly reporting dip, `n_geos` areas x `days` days.
pub fn synthetic_series(n_geos: usize, days: u64, seed: u64) -> DailySeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start: NaiveDate = "2020-11-01".parse().unwrap();
    let mut series = DailySeries::new();
    for geo in 0..n_geos {
        for offset in 0..days {
            let date = start.checked_add_days(Days::new(offset)).unwrap();
            let weekday_factor = if offset % 7 >= 5 { 0.4 } else { 1.0 };
            let value = weekday_factor * (50.0 + geo as f64 + rng.gen_range(0.0..20.0));
            series
                .insert(format!("G{geo:04}"), date, value)
                .expect("unique keys");
        }
    }
    series
}
