//! Benchmark harness: solver value against the oracle optimum on seeded
//! instances, with the known guarantee of each algorithm checked per trial.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::generate::{generate, GenConfig};
use crate::model::Instance;
use crate::oracle::{opt_welfare, EnumerationBudget};
use crate::solve::{solve, Algorithm};
use crate::valuation::Objective;

pub const CSV_HEADER: &str = "seed,algorithm,objective,balanced,alg_value,oracle_value,ratio";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub trials: u64,
    /// Trial `i` uses seed `seed + i`.
    pub seed: u64,
    pub gen: GenConfig,
    pub objective: Objective,
    pub balanced: bool,
    pub algorithm: Algorithm,
    pub budget: EnumerationBudget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub seed: u64,
    pub algorithm: String,
    pub objective: Objective,
    pub balanced: bool,
    pub alg_value: i64,
    pub oracle_value: i64,
}

impl BenchRow {
    /// `alg / opt` as an exact fraction; `0/0` reads as 1.
    pub fn ratio(&self) -> (i64, i64) {
        if self.alg_value == 0 && self.oracle_value == 0 {
            (1, 1)
        } else {
            (self.alg_value, self.oracle_value)
        }
    }

    pub fn to_csv(&self) -> String {
        let (num, den) = self.ratio();
        format!(
            "{},{},{},{},{},{},{}",
            self.seed,
            self.algorithm,
            self.objective,
            self.balanced,
            self.alg_value,
            self.oracle_value,
            render_ratio(num, den)
        )
    }
}

/// Decimal with 6 fractional digits, rounded half up; `inf` for a zero denominator.
pub fn render_ratio(num: i64, den: i64) -> String {
    if den == 0 {
        return "inf".into();
    }
    let scaled = (num as i128 * 2_000_000 + den as i128) / (2 * den as i128);
    format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchSummary {
    pub min: (i64, i64),
    pub mean: f64,
}

/// Checks the guarantee that applies to the solver that produced `row`.
fn check_bound(instance: &Instance, row: &BenchRow) -> Result<()> {
    let (n, m) = (instance.agents() as i128, instance.items() as i128);
    let (alg, opt) = (row.alg_value as i128, row.oracle_value as i128);
    let (ok, rule) = match row.algorithm.as_str() {
        "greedy" => {
            let factor = (m / n + 1).min(n);
            (alg * factor >= opt, format!("alg * {factor} >= opt"))
        }
        "scapegoat" => (n * alg >= (n - 1) * opt, format!("{n} * alg >= {} * opt", n - 1)),
        "setcover" => {
            let factor = (m as f64).ln() + 1.0;
            (alg as f64 <= factor * opt as f64 + 1e-9, format!("alg <= {factor:.6} * opt"))
        }
        _ => (alg == opt, "alg == opt".to_string()),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::BoundViolation {
            seed: row.seed,
            detail: format!("{} gave {alg}, oracle {opt}; expected {rule}", row.algorithm),
        })
    }
}

pub fn run_trial(config: &BenchConfig, seed: u64) -> Result<BenchRow> {
    let instance = generate(&config.gen.with_seed(seed))?;
    let report = solve(&instance, config.objective, config.balanced, config.algorithm)?;
    let (opt, _) = opt_welfare(&instance, config.objective, config.balanced, config.budget)?;
    let row = BenchRow {
        seed,
        algorithm: report.algorithm.to_string(),
        objective: config.objective,
        balanced: config.balanced,
        alg_value: report.welfare.get(),
        oracle_value: opt.get(),
    };
    check_bound(&instance, &row)?;
    Ok(row)
}

/// All trials in order; stops at the first failing trial.
pub fn run_bench(config: &BenchConfig) -> Result<(Vec<BenchRow>, BenchSummary)> {
    let rows = (0..config.trials)
        .map(|i| run_trial(config, config.seed.wrapping_add(i)))
        .collect::<Result<Vec<_>>>()?;
    let summary = summarize(&rows);
    Ok((rows, summary))
}

pub fn summarize(rows: &[BenchRow]) -> BenchSummary {
    let mut min = (1i64, 1i64);
    let mut sum = 0.0;
    for (i, row) in rows.iter().enumerate() {
        let r = row.ratio();
        // r < min, denominators non-negative; a zero denominator counts as +inf
        let less = r.1 != 0 && (min.1 == 0 || (r.0 as i128) * (min.1 as i128) < (min.0 as i128) * (r.1 as i128));
        if i == 0 || less {
            min = r;
        }
        sum += if r.1 == 0 { f64::INFINITY } else { r.0 as f64 / r.1 as f64 };
    }
    let mean = if rows.is_empty() { 1.0 } else { sum / rows.len() as f64 };
    BenchSummary { min, mean }
}

/// The whole CSV document: header, one line per row, summary line.
pub fn render_csv(config: &BenchConfig, rows: &[BenchRow], summary: &BenchSummary) -> String {
    let mut out = String::new();
    writeln!(out, "{CSV_HEADER}").unwrap();
    for row in rows {
        writeln!(out, "{}", row.to_csv()).unwrap();
    }
    let algorithm = rows.first().map_or(config.algorithm.as_str(), |r| r.algorithm.as_str());
    let min = render_ratio(summary.min.0, summary.min.1);
    writeln!(
        out,
        "summary,{algorithm},{},{},min={min},mean={:.6},{min}",
        config.objective, config.balanced, summary.mean
    )
    .unwrap();
    out
}
