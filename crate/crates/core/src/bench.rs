//! Operation-count sweeps for the recurrence.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bubble::dense_model;
use crate::dp::{count_bound, recurrence};

#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub n: usize,
    pub op_count: u64,
    pub summary_op_count: u64,
    /// `Σ_j c_j² c_{j+1}²` for the instance.
    pub bound: u64,
    pub n4: u64,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl BenchRecord {
    pub fn within_bound(&self) -> bool {
        self.op_count <= self.bound.max(self.n4)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub seed: u64,
    pub records: Vec<BenchRecord>,
    /// Least-squares slope of `ln op_count` against `ln n`; absent with fewer
    /// than two sizes.
    pub fitted_exponent: Option<f64>,
}

impl BenchReport {
    /// Canonical JSON; wall times are left out.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Slope of the least-squares line through `(ln x, ln y)`.
pub fn fit_loglog(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let len = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / len;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Solves a dense model per size and records the recurrence counters.
pub fn run_bench(sizes: &[usize], seed: u64) -> BenchReport {
    let records: Vec<BenchRecord> = sizes
        .iter()
        .map(|&n| {
            let model = dense_model(n, seed);
            let start = Instant::now();
            let sol = recurrence::solve(&model, false);
            let wall_time = start.elapsed();
            BenchRecord {
                n,
                op_count: sol.op_count,
                summary_op_count: sol.summary_op_count,
                bound: count_bound(&model),
                n4: (n as u64).pow(4),
                wall_time,
            }
        })
        .collect();
    let points: Vec<(f64, f64)> = records
        .iter()
        .map(|r| (r.n as f64, r.op_count as f64))
        .collect();
    BenchReport {
        seed,
        fitted_exponent: fit_loglog(&points),
        records,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_recovers_power_law() {
        let pts: Vec<_> = [10.0, 20.0, 40.0].iter().map(|&x: &f64| (x, 3.0 * x.powi(4))).collect();
        assert!((fit_loglog(&pts).unwrap() - 4.0).abs() < 1e-9);
        assert_eq!(fit_loglog(&pts[..1]), None);
    }

    #[test]
    fn small_sweep_within_bounds() {
        let r = run_bench(&[16, 32], 5);
        assert_eq!(r.records.len(), 2);
        assert!(r.records.iter().all(BenchRecord::within_bound));
        assert!(r.fitted_exponent.is_some());
        assert_eq!(run_bench(&[16], 5).fitted_exponent, None);
    }
}
