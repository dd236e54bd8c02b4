//! Bubble-model construction from an umbrella ordering.
//!
//! Columns are maximal runs of the ordering that start at a vertex `a` and end
//! at its last neighbor. Every vertex of a column then sees a prefix of the
//! next column, so rows only have to respect, for each cross-column pair,
//! `row(right) < row(left)` exactly when the pair is an edge. Those conditions
//! are difference constraints over a DAG and the smallest feasible rows are
//! longest-path distances.

use std::collections::VecDeque;

use super::umbrella::umbrella_ordering;
use super::{validate_model, BubbleModel};
use crate::graph::Graph;

/// Builds a bubble model realizing `g`, or `None` when `g` is not a proper
/// interval graph. The result always passes [`validate_model`] against `g`.
pub fn build_bubble_model(g: &Graph) -> Option<BubbleModel> {
    let n = g.n();
    if n == 0 {
        return BubbleModel::new(0, Vec::new()).ok();
    }
    let ordering = umbrella_ordering(g)?;
    let order = ordering.order();
    let pos = ordering.positions();

    // Last position of each closed neighborhood, indexed by position.
    let reach: Vec<usize> = order
        .iter()
        .map(|&v| g.neighbors(v).iter().map(|&u| pos[u]).fold(pos[v], usize::max))
        .collect();

    let mut column_of = vec![0; n];
    let mut spans = Vec::new();
    let mut start = 0;
    while start < n {
        let end = reach[start];
        column_of[start..=end].fill(spans.len());
        spans.push((start, end));
        start = end + 1;
    }

    // Arcs between positions: (from, to, weight) meaning row[to] >= row[from] + weight.
    let mut arcs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut indegree = vec![0usize; n];
    let mut add_arc = |from: usize, to: usize, w: usize, arcs: &mut Vec<Vec<(usize, usize)>>| {
        arcs[from].push((to, w));
        indegree[to] += 1;
    };
    for (j, &(s, e)) in spans.iter().enumerate() {
        for p in s..e {
            add_arc(p, p + 1, 0, &mut arcs);
        }
        let Some(&(ns, ne)) = spans.get(j + 1) else {
            continue;
        };
        for p in s..=e {
            // Neighbors of `p` in the next column form the prefix ns..=reach[p].
            let seen = if reach[p] >= ns { reach[p] - ns + 1 } else { 0 };
            if seen > ne - ns + 1 {
                return None;
            }
            if seen > 0 {
                add_arc(ns + seen - 1, p, 1, &mut arcs);
            }
            if ns + seen <= ne {
                add_arc(p, ns + seen, 0, &mut arcs);
            }
        }
    }

    let mut row = vec![0usize; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&p| indegree[p] == 0).collect();
    let mut settled = 0;
    while let Some(p) = queue.pop_front() {
        settled += 1;
        for &(q, w) in &arcs[p] {
            row[q] = row[q].max(row[p] + w);
            indegree[q] -= 1;
            if indegree[q] == 0 {
                queue.push_back(q);
            }
        }
    }
    if settled < n {
        return None;
    }

    let mut columns: Vec<Vec<Vec<usize>>> = vec![Vec::new(); spans.len()];
    for p in 0..n {
        let column = &mut columns[column_of[p]];
        if column.len() <= row[p] {
            column.resize(row[p] + 1, Vec::new());
        }
        column[row[p]].push(order[p]);
    }
    let model = BubbleModel::new(n, columns).ok()?;
    validate_model(&model, Some(g)).ok()?;
    Some(model)
}
