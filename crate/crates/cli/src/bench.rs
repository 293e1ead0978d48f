//! RSHAR vs Apriori comparison: itemset counts per level, scan counts and
//! wall-clock time.

use std::fmt::Write as _;

use serde::Serialize;

use crate::config::{Algorithm, RunConfig};
use crate::pipeline::{run_pipeline, PipelineOutput};
use crate::PipelineError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgorithmReport {
    pub algorithm: String,
    pub full_scans_of_groups: u64,
    pub candidates_generated: u64,
    pub candidates_pruned: u64,
    pub itemsets_per_level: Vec<usize>,
    pub total_itemsets: usize,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub groups: usize,
    pub codes: usize,
    pub minsup: String,
    pub algorithms: Vec<AlgorithmReport>,
    /// Whether both algorithms returned identical itemsets; `None` if only one ran.
    pub agreement: Option<bool>,
    /// Apriori time divided by RSHAR time.
    pub speedup: Option<f64>,
    pub rules: usize,
}

impl BenchReport {
    pub fn from_output(o: &PipelineOutput) -> Self {
        let algorithms: Vec<AlgorithmReport> = o
            .runs
            .iter()
            .map(|r| AlgorithmReport {
                algorithm: r.algorithm.clone(),
                full_scans_of_groups: r.stats.full_scans_of_groups,
                candidates_generated: r.stats.candidates_generated,
                candidates_pruned: r.stats.candidates_pruned,
                itemsets_per_level: r.itemsets_per_level.clone(),
                total_itemsets: r.total_itemsets,
                elapsed_ms: r.stats.elapsed.as_secs_f64() * 1e3,
            })
            .collect();
        let time = |name: &str| algorithms.iter().find(|a| a.algorithm == name).map(|a| a.elapsed_ms);
        let speedup = match (time("rshar"), time("apriori")) {
            (Some(r), Some(a)) if r > 0.0 => Some(a / r),
            _ => None,
        };
        BenchReport {
            groups: o.view.len(),
            codes: o.view.code_universe().len(),
            minsup: o.config.minsup.to_string(),
            algorithms,
            agreement: o.agreement,
            speedup,
            rules: o.rules.len(),
        }
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "groups={} codes={} minsup={} rules={}",
            self.groups, self.codes, self.minsup, self.rules
        );
        let _ = writeln!(
            out,
            "{:<10} {:>6} {:>11} {:>9} {:>9} {:>11}  per level",
            "algorithm", "scans", "candidates", "pruned", "itemsets", "time (ms)"
        );
        for a in &self.algorithms {
            let levels: Vec<String> = a.itemsets_per_level.iter().map(ToString::to_string).collect();
            let _ = writeln!(
                out,
                "{:<10} {:>6} {:>11} {:>9} {:>9} {:>11.3}  [{}]",
                a.algorithm,
                a.full_scans_of_groups,
                a.candidates_generated,
                a.candidates_pruned,
                a.total_itemsets,
                a.elapsed_ms,
                levels.join(", ")
            );
        }
        if let Some(agree) = self.agreement {
            let _ = writeln!(out, "agreement: {agree}");
        }
        if let Some(s) = self.speedup {
            let _ = writeln!(out, "speedup (apriori / rshar): {s:.2}x");
        }
        out
    }
}

/// Runs both algorithms on the configured data and reports the comparison.
pub fn run_benchmark(config: &RunConfig) -> Result<(BenchReport, PipelineOutput), PipelineError> {
    let config = RunConfig {
        algorithm: Algorithm::Both,
        ..config.clone()
    };
    let output = run_pipeline(&config)?;
    Ok((BenchReport::from_output(&output), output))
}
