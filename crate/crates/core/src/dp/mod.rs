//! Maximum cut on bubble models.
//!
//! [`solve_max_cut`] is exact and reconstructs an optimal cut. The
//! [`recurrence`] module holds the prefix-count recurrence with its operation
//! counters and tables; it returns an upper bound that can exceed the maximum
//! cut, which is why it is not the default solver.

pub mod profile;
pub mod recurrence;

use thiserror::Error;

pub use profile::ProfileLimits;
pub use recurrence::{
    calculate_opt, count_bound, cross_terms, row_gain, summarize_column, CrossTerms, RecurrenceSolution,
    RowShape,
};

use crate::bubble::BubbleModel;
use crate::graph::Cut;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("column {column} needs {work} profile transitions, limit is {limit}")]
    StateSpace { column: usize, work: u64, limit: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub max_cut_size: u64,
    /// An optimal cut of the realized graph, when requested.
    pub cut: Option<Cut>,
    pub op_count: u64,
    pub summary_op_count: u64,
}

/// Exact maximum cut of `realize_graph(m)`.
pub fn solve_max_cut(m: &BubbleModel, want_cut: bool) -> Result<SolveResult, SolveError> {
    profile::solve(m, want_cut, &ProfileLimits::default())
}

/// Runs the recurrence and packages it like [`solve_max_cut`]. The value is an
/// upper bound; the cut is the read-back of the tables and witnesses the value
/// only when the read-back is consistent.
pub fn solve_recurrence(m: &BubbleModel, want_cut: bool) -> SolveResult {
    let sol = recurrence::solve(m, want_cut);
    SolveResult {
        max_cut_size: sol.value,
        cut: sol.traceback.map(|t| t.cut),
        op_count: sol.op_count,
        summary_op_count: sol.summary_op_count,
    }
}
