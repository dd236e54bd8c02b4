//! Exhaustive checkers used as ground truth on small instances.

use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bubble::{random_model, realize_graph, BubbleModel, RandomModelParams};
use crate::dp::{solve_max_cut, solve_recurrence};
use crate::graph::{cut_size, Cut, Graph};

/// Largest graph [`brute_force_max_cut`] enumerates by default.
pub const BRUTE_FORCE_CAP: usize = 24;
/// Largest graph [`exhaustive_proper_interval_check`] permutes by default.
pub const ORDERING_CAP: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{what} refuses graphs with more than {cap} vertices (got {n})")]
pub struct TooLarge {
    pub what: &'static str,
    pub n: usize,
    pub cap: usize,
}

/// Maximum cut and one optimal side, by enumerating every cut with vertex 0
/// fixed in `S`, flipping one vertex at a time in Gray-code order.
pub fn brute_force_max_cut_with_cap(g: &Graph, cap: usize) -> Result<(u64, Cut), TooLarge> {
    let n = g.n();
    if n > cap.min(63) {
        return Err(TooLarge {
            what: "brute-force max cut",
            n,
            cap,
        });
    }
    if n <= 1 {
        return Ok((0, Cut::from_members(n, &(0..n).collect::<Vec<_>>())));
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | (1 << u)))
        .collect();

    let mut side = 1u64;
    let mut size = adj[0].count_ones() as i64;
    let (mut best, mut best_side) = (size, side);
    for step in 1u64..(1 << (n - 1)) {
        let v = step.trailing_zeros() as usize + 1;
        let bit = 1u64 << v;
        let same = (adj[v] & if side & bit != 0 { side } else { !side }).count_ones() as i64;
        let other = adj[v].count_ones() as i64 - same;
        size += same - other;
        side ^= bit;
        if size > best {
            best = size;
            best_side = side;
        }
    }
    let members: Vec<usize> = (0..n).filter(|&v| best_side >> v & 1 == 1).collect();
    Ok((best as u64, Cut::from_members(n, &members)))
}

pub fn brute_force_max_cut(g: &Graph) -> Result<u64, TooLarge> {
    brute_force_max_cut_with_cap(g, BRUTE_FORCE_CAP).map(|(v, _)| v)
}

/// Direct triple check of the umbrella property.
fn umbrella_by_definition(g: &Graph, order: &[usize]) -> bool {
    let n = order.len();
    (0..n).all(|p| {
        (p + 2..n).all(|t| {
            !g.has_edge(order[p], order[t])
                || (p + 1..t).all(|q| g.has_edge(order[p], order[q]) && g.has_edge(order[q], order[t]))
        })
    })
}

/// Whether any vertex order of `g` has the umbrella property.
pub fn exhaustive_proper_interval_check_with_cap(g: &Graph, cap: usize) -> Result<bool, TooLarge> {
    let n = g.n();
    if n > cap {
        return Err(TooLarge {
            what: "exhaustive ordering check",
            n,
            cap,
        });
    }
    Ok((0..n)
        .permutations(n)
        .any(|order| umbrella_by_definition(g, &order)))
}

pub fn exhaustive_proper_interval_check(g: &Graph) -> Result<bool, TooLarge> {
    exhaustive_proper_interval_check_with_cap(g, ORDERING_CAP)
}

#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub model: serde_json::Value,
    pub dp_value: u64,
    pub oracle_value: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub trials: usize,
    pub max_n: usize,
    pub seed: u64,
    /// Trials where the solver under test disagreed with brute force.
    pub mismatches: Vec<Mismatch>,
    /// Trials whose returned cut did not evaluate to the reported size.
    pub witness_failures: Vec<usize>,
    /// The prefix-count recurrence on the same instances, for comparison.
    pub recurrence_mismatches: Vec<Mismatch>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.witness_failures.is_empty()
    }

    /// Canonical JSON; leaves out the elapsed time.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// The instance drawn for `trial`: `(model seed, n, model)`.
pub fn verification_instance(seed: u64, trial: usize, max_n: usize) -> (u64, usize, BubbleModel) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    let n = rng.gen_range(1..=max_n.max(1));
    let model_seed: u64 = rng.gen();
    let params = RandomModelParams {
        empty_rate: [0.0, 0.2, 0.5][rng.gen_range(0..3)],
        ..Default::default()
    };
    (model_seed, n, random_model(n, model_seed, &params))
}

/// Compares `solver` against brute force on `trials` seeded random models.
///
/// `solver` returns a value and optionally a cut claimed to achieve it.
pub fn verify_dp_with<F>(trials: usize, max_n: usize, seed: u64, solver: F) -> Result<VerificationReport, TooLarge>
where
    F: Fn(&BubbleModel) -> (u64, Option<Cut>),
{
    if max_n > BRUTE_FORCE_CAP {
        return Err(TooLarge {
            what: "verification",
            n: max_n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let start = Instant::now();
    let mut report = VerificationReport {
        trials,
        max_n,
        seed,
        mismatches: Vec::new(),
        witness_failures: Vec::new(),
        recurrence_mismatches: Vec::new(),
        elapsed: Duration::ZERO,
    };
    for trial in 0..trials {
        let (model_seed, n, model) = verification_instance(seed, trial, max_n);
        let g = realize_graph(&model);
        let oracle_value = brute_force_max_cut(&g)?;
        let mismatch = |dp_value| Mismatch {
            trial,
            seed: model_seed,
            n,
            model: model.to_json_value(),
            dp_value,
            oracle_value,
        };
        let (value, cut) = solver(&model);
        if value != oracle_value {
            report.mismatches.push(mismatch(value));
        }
        if let Some(cut) = cut {
            if cut_size(&g, &cut).ok() != Some(value) {
                report.witness_failures.push(trial);
            }
        }
        let rec = solve_recurrence(&model, false).max_cut_size;
        if rec != oracle_value {
            report.recurrence_mismatches.push(mismatch(rec));
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// [`verify_dp_with`] using the exact solver and its reconstructed cuts.
pub fn verify_dp(trials: usize, max_n: usize, seed: u64) -> Result<VerificationReport, TooLarge> {
    verify_dp_with(trials, max_n, seed, |m| {
        let r = solve_max_cut(m, true).expect("small models stay within the state limit");
        (r.max_cut_size, r.cut)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::claw;

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_max_cut(&Graph::path(4)), Ok(3));
        assert_eq!(brute_force_max_cut(&Graph::complete(4)), Ok(4));
        assert_eq!(brute_force_max_cut(&Graph::empty(1)), Ok(0));
        assert_eq!(brute_force_max_cut(&Graph::empty(0)), Ok(0));
        assert_eq!(brute_force_max_cut(&Graph::cycle(5)), Ok(4));
    }

    #[test]
    fn brute_force_witness_matches() {
        let g = Graph::cycle(7);
        let (v, cut) = brute_force_max_cut_with_cap(&g, 24).unwrap();
        assert_eq!(cut_size(&g, &cut).unwrap(), v);
        assert!(cut.contains(0));
    }

    #[test]
    fn brute_force_refuses_over_cap() {
        let err = brute_force_max_cut(&Graph::empty(25)).unwrap_err();
        assert_eq!((err.n, err.cap), (25, 24));
        assert!(brute_force_max_cut_with_cap(&Graph::empty(5), 4).is_err());
    }

    #[test]
    fn complete_and_bipartite_closed_forms() {
        for n in 0..=10 {
            assert_eq!(brute_force_max_cut(&Graph::complete(n)).unwrap(), (n * n / 4) as u64);
        }
        let grid = Graph::new(6, [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert_eq!(brute_force_max_cut(&grid).unwrap(), 7);
    }

    #[test]
    fn ordering_check_examples() {
        assert_eq!(exhaustive_proper_interval_check(&claw()), Ok(false));
        assert_eq!(exhaustive_proper_interval_check(&Graph::cycle(4)), Ok(false));
        assert_eq!(exhaustive_proper_interval_check(&Graph::path(5)), Ok(true));
        assert_eq!(exhaustive_proper_interval_check(&Graph::empty(0)), Ok(true));
        assert!(exhaustive_proper_interval_check(&Graph::empty(9)).is_err());
    }

    #[test]
    fn verify_empty_and_tiny() {
        let r = verify_dp(0, 12, 42).unwrap();
        assert!(r.passed());
        assert_eq!(r.trials, 0);
        let r = verify_dp(20, 3, 0).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn verify_catches_a_broken_solver() {
        let r = verify_dp_with(30, 8, 1, |m| {
            let v = solve_max_cut(m, false).unwrap().max_cut_size;
            (v + u64::from(m.n() > 4), None)
        })
        .unwrap();
        assert!(!r.passed());
        assert!(r.mismatches.iter().all(|mm| mm.dp_value == mm.oracle_value + 1));
    }

    #[test]
    fn verify_refuses_large_max_n() {
        assert!(verify_dp(1, 25, 0).is_err());
    }
}
