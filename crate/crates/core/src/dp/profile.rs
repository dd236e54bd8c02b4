//! Exact maximum cut over bubble models by column profiles.
//!
//! Vertices sharing a bubble are twins, so a cut is determined up to symmetry
//! by how many members of each bubble it takes. The state of a column is that
//! count vector (its profile). Column `j - 1` only interacts with column `j`
//! through prefix sums of the profile at the rows of its own non-empty
//! bubbles, so each column is summarized by the best value per projected
//! prefix vector before moving left.
//!
//! The state space is the product of `size + 1` over the bubbles of a column,
//! which is polynomial for a bounded number of bubbles per column but not in
//! general. [`ProfileLimits::max_work`] caps the transitions per column.

use std::collections::HashMap;

use super::{SolveError, SolveResult};
use crate::bubble::BubbleModel;
use crate::graph::Cut;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProfileLimits {
    /// Largest `states × projected keys` allowed for a single column.
    pub max_work: u64,
}

impl Default for ProfileLimits {
    fn default() -> Self {
        ProfileLimits { max_work: 1 << 31 }
    }
}

/// Non-empty bubbles of one column.
struct ColumnPlan {
    rows: Vec<usize>,
    sizes: Vec<usize>,
}

impl ColumnPlan {
    fn new(m: &BubbleModel, j: usize) -> Self {
        let (rows, sizes) = (0..m.rows(j))
            .map(|i| (i, m.bubble_size(i, j)))
            .filter(|&(_, b)| b > 0)
            .unzip();
        ColumnPlan { rows, sizes }
    }

    fn empty() -> Self {
        ColumnPlan {
            rows: Vec::new(),
            sizes: Vec::new(),
        }
    }

    fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    fn state_count(&self) -> u64 {
        self.sizes
            .iter()
            .try_fold(1u64, |acc, &b| acc.checked_mul(b as u64 + 1))
            .unwrap_or(u64::MAX)
    }

    /// Vertices of this column on rows strictly before `row`.
    fn size_before(&self, row: usize) -> usize {
        self.rows
            .iter()
            .zip(&self.sizes)
            .take_while(|(&r, _)| r < row)
            .map(|(_, &b)| b)
            .sum()
    }
}

/// Steps through every count vector `0..=sizes[t]` in mixed-radix order.
fn advance(counts: &mut [usize], sizes: &[usize]) -> bool {
    for (c, &b) in counts.iter_mut().zip(sizes) {
        if *c < b {
            *c += 1;
            return true;
        }
        *c = 0;
    }
    false
}

/// Best value per projected key, in first-seen order.
struct Projection {
    keys: Vec<Vec<usize>>,
    values: Vec<i64>,
    /// State index in the owning column that attains the value.
    states: Vec<usize>,
    index: HashMap<Vec<usize>, usize>,
}

impl Projection {
    fn new() -> Self {
        Projection {
            keys: Vec::new(),
            values: Vec::new(),
            states: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn offer(&mut self, key: Vec<usize>, value: i64, state: usize) {
        match self.index.get(&key) {
            Some(&e) => {
                if value > self.values[e] {
                    self.values[e] = value;
                    self.states[e] = state;
                }
            }
            None => {
                self.index.insert(key.clone(), self.keys.len());
                self.keys.push(key);
                self.values.push(value);
                self.states.push(state);
            }
        }
    }

    fn len(&self) -> usize {
        self.keys.len()
    }
}

/// Prefix sums of `counts` taken at each row of `at`.
fn project(plan: &ColumnPlan, counts: &[usize], at: &[usize]) -> Vec<usize> {
    at.iter()
        .map(|&row| {
            plan.rows
                .iter()
                .zip(counts)
                .take_while(|(&r, _)| r < row)
                .map(|(_, &c)| c)
                .sum()
        })
        .collect()
}

fn decode(mut state: usize, sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .map(|&b| {
            let c = state % (b + 1);
            state /= b + 1;
            c
        })
        .collect()
}

/// Exact maximum cut of the graph realized by `m`.
pub fn solve(m: &BubbleModel, want_cut: bool, limits: &ProfileLimits) -> Result<SolveResult, SolveError> {
    let k = m.column_count();
    let plans: Vec<ColumnPlan> = (0..k).map(|j| ColumnPlan::new(m, j)).collect();
    let no_column = ColumnPlan::empty();

    let mut op_count = 0u64;
    let mut summary_op_count = 0u64;
    // For each column: best projection entry of the next column per state.
    let mut links: Vec<Vec<u32>> = vec![Vec::new(); k];
    let mut projections: Vec<Projection> = Vec::with_capacity(k + 1);

    // Column k is virtual: one state, empty key set, value 0.
    let mut next = Projection::new();
    next.offer(vec![0; plans.last().map_or(0, |p| p.rows.len())], 0, 0);
    let mut next_plan = &no_column;

    for j in (0..k).rev() {
        let plan = &plans[j];
        let left = if j == 0 { &no_column } else { &plans[j - 1] };
        let states = plan.state_count();
        let work = states.saturating_mul(next.len() as u64);
        if work > limits.max_work {
            return Err(SolveError::StateSpace {
                column: j,
                work,
                limit: limits.max_work,
            });
        }
        let total = plan.total() as i64;
        // Vertices of column j + 1 strictly above each bubble of column j.
        let above: Vec<i64> = plan
            .rows
            .iter()
            .map(|&r| next_plan.size_before(r) as i64)
            .collect();

        let mut link = Vec::with_capacity(states as usize);
        let mut here = Projection::new();
        let mut counts = vec![0usize; plan.sizes.len()];
        let mut state = 0usize;
        loop {
            summary_op_count += 1;
            let chosen: i64 = counts.iter().sum::<usize>() as i64;
            let internal = chosen * (total - chosen);
            let mut best = (i64::MIN, 0u32);
            for (e, key) in next.keys.iter().enumerate() {
                op_count += 1;
                let mut v = next.values[e];
                for t in 0..counts.len() {
                    let (c, b) = (counts[t] as i64, plan.sizes[t] as i64);
                    let p = key[t] as i64;
                    v += c * (above[t] - p) + (b - c) * p;
                }
                if v > best.0 {
                    best = (v, e as u32);
                }
            }
            link.push(best.1);
            here.offer(project(plan, &counts, &left.rows), internal + best.0, state);
            state += 1;
            if !advance(&mut counts, &plan.sizes) {
                break;
            }
        }
        links[j] = link;
        projections.push(std::mem::replace(&mut next, here));
        next_plan = plan;
    }

    // `next` now maps the empty key to the best state of column 0.
    let max_cut_size = next.values.first().copied().unwrap_or(0).max(0) as u64;
    projections.reverse();

    let cut = want_cut.then(|| {
        let mut cut = Cut::empty(m.n());
        let mut state = next.states.first().copied().unwrap_or(0);
        for j in 0..k {
            let counts = decode(state, &plans[j].sizes);
            for (&row, &c) in plans[j].rows.iter().zip(&counts) {
                for &v in &m.bubble(row, j)[..c] {
                    cut.set(v, true);
                }
            }
            let entry = links[j][state] as usize;
            state = projections.get(j).map_or(0, |p| p.states[entry]);
        }
        cut
    });

    Ok(SolveResult {
        max_cut_size,
        cut,
        op_count,
        summary_op_count,
    })
}
