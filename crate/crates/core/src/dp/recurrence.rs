//! The column-by-column recurrence over bubble prefixes.
//!
//! For column `j`, entry `F[i](x, x')` is the best cut of the subgraph made of
//! rows `0..=i` of column `j` plus every column right of `j`, subject to `x`
//! chosen vertices among rows `0..=i` of column `j` and `x'` among rows
//! `0..=i` of column `j + 1`. Row `i` adds bubble `(i, j)` and claims how many
//! vertices of bubble `(i, j + 1)` are chosen; the previous row is looked up
//! at the remaining budgets. The base entry of a column is the best value of
//! the next column's last row.
//!
//! Columns are scanned right to left and rows top to bottom. The claimed
//! count for bubble `(i, j + 1)` is never tied back to the cut stored in the
//! base entry, so the result is an upper bound on the maximum cut that can be
//! strictly larger; see [`crate::fixtures::recurrence_counterexample`].
//! [`Traceback::consistent`] reports whether the claims agree with the
//! per-column choices, in which case the value is exact and witnessed.

use serde::Serialize;
use thiserror::Error;

use crate::bubble::BubbleModel;
use crate::graph::Cut;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cross-term precondition violated: {0}")]
pub struct ContractError(pub &'static str);

/// Cut edges incident to bubble `(i, j)` inside the subproblem for row `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossTerms {
    /// Edges inside the bubble.
    pub within: i64,
    /// Edges to earlier rows of the same column.
    pub same_column: i64,
    /// Edges to earlier rows of the next column.
    pub next_column: i64,
}

impl CrossTerms {
    pub fn total(&self) -> i64 {
        self.within + self.same_column + self.next_column
    }
}

/// Sizes of the row being added.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowShape {
    /// `b_{i,j}`.
    pub size: usize,
    /// `b_{i,j+1}`.
    pub next_size: usize,
    /// Vertices in rows before `i` of column `j`.
    pub prefix: usize,
    /// Vertices in rows before `i` of column `j + 1`.
    pub next_prefix: usize,
}

/// Cut edges between bubble `(i, j)` with `chosen` members in `S` and the rest
/// of the row-`i` subproblem.
///
/// `x` and `x_next` are the totals over rows `0..=i` of columns `j` and `j + 1`;
/// `next_chosen` is the claimed count of bubble `(i, j + 1)`.
pub fn cross_terms(
    chosen: i64,
    next_chosen: i64,
    x: i64,
    x_next: i64,
    size: i64,
    prefix: i64,
    next_prefix: i64,
) -> Result<CrossTerms, ContractError> {
    if !(0..=size).contains(&chosen) {
        return Err(ContractError("chosen count outside the bubble"));
    }
    let before = x - chosen;
    let next_before = x_next - next_chosen;
    if !(0..=prefix).contains(&before) {
        return Err(ContractError("remaining same-column budget infeasible"));
    }
    if !(0..=next_prefix).contains(&next_before) {
        return Err(ContractError("remaining next-column budget infeasible"));
    }
    let rest = size - chosen;
    Ok(CrossTerms {
        within: chosen * rest,
        same_column: chosen * (prefix - before) + rest * before,
        next_column: chosen * (next_prefix - next_before) + rest * next_before,
    })
}

/// Closed form of the cut edges gained by adding bubble `(i, j)`; equal to
/// `cross_terms(..).total()` whenever its preconditions hold.
pub fn row_gain(chosen: i64, next_chosen: i64, x: i64, x_next: i64, size: i64, prefix: i64, next_prefix: i64) -> i64 {
    let (s, t) = (chosen, next_chosen);
    size * (x + x_next) - size * t + s * (prefix + next_prefix - 2 * x - 2 * x_next + s + 2 * t)
}

/// One row of a column table, holding `F[i](x, x')` for all
/// `x <= x_max`, `x' <= x_next_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowTable {
    /// Model row index, `None` for the base entry.
    pub row: Option<usize>,
    pub x_max: usize,
    pub x_next_max: usize,
    values: Vec<i64>,
    choice: Vec<(u32, u32)>,
}

impl RowTable {
    fn base(value: i64) -> Self {
        RowTable {
            row: None,
            x_max: 0,
            x_next_max: 0,
            values: vec![value],
            choice: vec![(0, 0)],
        }
    }

    fn index(&self, x: usize, x_next: usize) -> usize {
        x * (self.x_next_max + 1) + x_next
    }

    pub fn value(&self, x: usize, x_next: usize) -> Option<i64> {
        (x <= self.x_max && x_next <= self.x_next_max).then(|| self.values[self.index(x, x_next)])
    }

    /// `(chosen, next_chosen)` that produced the entry.
    pub fn choice(&self, x: usize, x_next: usize) -> Option<(usize, usize)> {
        (x <= self.x_max && x_next <= self.x_next_max).then(|| {
            let (s, t) = self.choice[self.index(x, x_next)];
            (s as usize, t as usize)
        })
    }
}

/// Evaluates one entry of the row being added from the previous row.
///
/// Returns the value, the lexicographically smallest maximizing
/// `(chosen, next_chosen)`, and the number of pairs examined; `None` when the
/// budgets admit no pair.
pub fn calculate_opt(
    prev: &RowTable,
    x: usize,
    x_next: usize,
    shape: RowShape,
) -> Option<(i64, (usize, usize), u64)> {
    let b = shape.size as i64;
    let bp = shape.prefix as i64;
    let bnp = shape.next_prefix as i64;
    let (xi, xni) = (x as i64, x_next as i64);
    let s_range = x.saturating_sub(shape.prefix)..=shape.size.min(x);
    let t_range = x_next.saturating_sub(shape.next_prefix)..=shape.next_size.min(x_next);

    let mut best: Option<(i64, (usize, usize))> = None;
    let mut ops = 0u64;
    for s in s_range {
        for t in t_range.clone() {
            ops += 1;
            let Some(sub) = prev.value(x - s, x_next - t) else {
                continue;
            };
            let (si, ti) = (s as i64, t as i64);
            let val = sub + row_gain(si, ti, xi, xni, b, bp, bnp) - b * (xi + xni);
            debug_assert_eq!(
                val + b * (xi + xni),
                sub + cross_terms(si, ti, xi, xni, b, bp, bnp)
                    .expect("enumerated pair satisfies preconditions")
                    .total()
            );
            if best.is_none_or(|(v, _)| val > v) {
                best = Some((val, (s, t)));
            }
        }
    }
    best.map(|(v, arg)| (v + b * (xi + xni), arg, ops))
}

/// Best entry of a final row, ties broken toward the smallest `(x, x')`.
pub fn summarize_column(last: &RowTable) -> (i64, (usize, usize), u64) {
    let mut best = (i64::MIN, (0, 0));
    let mut ops = 0;
    for x in 0..=last.x_max {
        for x_next in 0..=last.x_next_max {
            ops += 1;
            let v = last.values[last.index(x, x_next)];
            if v > best.0 {
                best = (v, (x, x_next));
            }
        }
    }
    (best.0, best.1, ops)
}

/// All rows computed for one column, with the column summary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnTable {
    pub column: usize,
    /// Base entry first, then one table per processed row. Rows whose bubble
    /// and next-column bubble are both empty leave the table unchanged and are
    /// not stored.
    pub rows: Vec<RowTable>,
    pub summary: i64,
    pub summary_argmax: (usize, usize),
}

/// Per-column choices read back from the tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Traceback {
    /// Each bubble's count comes from its own column's table.
    pub cut: Cut,
    /// `(row, column)` of next-column bubbles whose claimed count differs from
    /// the count chosen by that column's own table.
    pub conflicts: Vec<(usize, usize)>,
}

impl Traceback {
    pub fn consistent(&self) -> bool {
        self.conflicts.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct RecurrenceSolution {
    pub value: u64,
    /// Pairs examined inside [`calculate_opt`].
    pub op_count: u64,
    /// Entries examined by [`summarize_column`].
    pub summary_op_count: u64,
    pub tables: Vec<ColumnTable>,
    pub traceback: Option<Traceback>,
}

#[derive(Serialize)]
struct RowDump<'a> {
    row: Option<usize>,
    x_max: usize,
    x_next_max: usize,
    values: Vec<&'a [i64]>,
}

#[derive(Serialize)]
struct ColumnDump<'a> {
    column: usize,
    summary: i64,
    summary_argmax: (usize, usize),
    rows: Vec<RowDump<'a>>,
}

impl RecurrenceSolution {
    /// All table values as JSON, columns and rows 1-based, row `null` for the
    /// base entry.
    pub fn tables_json(&self) -> serde_json::Value {
        let dump: Vec<ColumnDump> = self
            .tables
            .iter()
            .map(|t| ColumnDump {
                column: t.column + 1,
                summary: t.summary,
                summary_argmax: t.summary_argmax,
                rows: t
                    .rows
                    .iter()
                    .map(|r| RowDump {
                        row: r.row.map(|i| i + 1),
                        x_max: r.x_max,
                        x_next_max: r.x_next_max,
                        values: r.values.chunks(r.x_next_max + 1).collect(),
                    })
                    .collect(),
            })
            .collect();
        serde_json::to_value(dump).expect("tables serialize")
    }
}

/// Shapes of the rows of column `j` that change the table.
fn row_shapes(m: &BubbleModel, j: usize) -> Vec<(usize, RowShape)> {
    let mut prefix = 0;
    let mut next_prefix = 0;
    let mut out = Vec::new();
    for i in 0..m.rows(j) {
        let shape = RowShape {
            size: m.bubble_size(i, j),
            next_size: m.bubble_size(i, j + 1),
            prefix,
            next_prefix,
        };
        prefix += shape.size;
        next_prefix += shape.next_size;
        if shape.size > 0 || shape.next_size > 0 {
            out.push((i, shape));
        }
    }
    out
}

fn column_table(m: &BubbleModel, j: usize, base: i64, ops: &mut u64, summary_ops: &mut u64) -> ColumnTable {
    let mut rows = vec![RowTable::base(base)];
    for (i, shape) in row_shapes(m, j) {
        let prev = rows.last().expect("base row present");
        let x_max = shape.prefix + shape.size;
        let x_next_max = shape.next_prefix + shape.next_size;
        let width = x_next_max + 1;
        let mut values = Vec::with_capacity((x_max + 1) * width);
        let mut choice = Vec::with_capacity((x_max + 1) * width);
        for x in 0..=x_max {
            for x_next in 0..=x_next_max {
                let (v, (s, t), n) =
                    calculate_opt(prev, x, x_next, shape).expect("enumerated budgets are feasible");
                *ops += n;
                values.push(v);
                choice.push((s as u32, t as u32));
            }
        }
        rows.push(RowTable {
            row: Some(i),
            x_max,
            x_next_max,
            values,
            choice,
        });
    }
    let (summary, summary_argmax, n) = summarize_column(rows.last().expect("base row present"));
    *summary_ops += n;
    ColumnTable {
        column: j,
        rows,
        summary,
        summary_argmax,
    }
}

/// Runs the recurrence on `m`. With `want_cut`, also reads back the choices.
pub fn solve(m: &BubbleModel, want_cut: bool) -> RecurrenceSolution {
    let k = m.column_count();
    let mut op_count = 0;
    let mut summary_op_count = 0;
    let mut tables: Vec<ColumnTable> = Vec::with_capacity(k);
    // Column k is virtual and empty, so its summary is 0.
    let mut base = 0;
    for j in (0..k).rev() {
        let table = column_table(m, j, base, &mut op_count, &mut summary_op_count);
        base = table.summary;
        tables.push(table);
    }
    tables.reverse();
    let value = base.max(0) as u64;
    let traceback = want_cut.then(|| read_back(m, &tables));
    RecurrenceSolution {
        value,
        op_count,
        summary_op_count,
        tables,
        traceback,
    }
}

fn read_back(m: &BubbleModel, tables: &[ColumnTable]) -> Traceback {
    let k = m.column_count();
    // own[j][i] and claimed[j][i] hold counts for bubble (i, j).
    let mut own: Vec<Vec<usize>> = (0..k).map(|j| vec![0; m.rows(j)]).collect();
    let mut claimed: Vec<Vec<Option<usize>>> = (0..=k).map(|j| vec![None; m.rows(j)]).collect();
    for table in tables {
        let j = table.column;
        let (mut x, mut x_next) = table.summary_argmax;
        for row in table.rows.iter().skip(1).rev() {
            let i = row.row.expect("non-base row");
            let (s, t) = row.choice(x, x_next).expect("traceback stays in range");
            own[j][i] = s;
            if let Some(slot) = claimed.get_mut(j + 1).and_then(|c| c.get_mut(i)) {
                *slot = Some(t);
            }
            x -= s;
            x_next -= t;
        }
        debug_assert_eq!((x, x_next), (0, 0));
    }

    let mut cut = Cut::empty(m.n());
    for (j, column) in own.iter().enumerate() {
        for (i, &count) in column.iter().enumerate() {
            for &v in &m.bubble(i, j)[..count] {
                cut.set(v, true);
            }
        }
    }
    let mut conflicts = Vec::new();
    for (j, column) in claimed.iter().enumerate().take(k) {
        for (i, claim) in column.iter().enumerate() {
            if claim.is_some_and(|c| c != own[j][i]) {
                conflicts.push((i, j));
            }
        }
    }
    Traceback { cut, conflicts }
}

/// `Σ_j c_j² c_{j+1}²` with the virtual column after the last one empty.
pub fn count_bound(m: &BubbleModel) -> u64 {
    (0..m.column_count())
        .map(|j| {
            let c = m.column_size(j) as u64;
            let d = m.column_size(j + 1) as u64;
            c * c * d * d
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{p3_model, recurrence_counterexample};

    #[test]
    fn cross_terms_examples() {
        let t = cross_terms(1, 1, 1, 1, 1, 1, 1).unwrap();
        assert_eq!((t.within, t.same_column, t.next_column), (0, 1, 1));
        for b in 0..5 {
            assert_eq!(cross_terms(0, 0, 0, 0, b, 3, 2).unwrap().total(), 0);
        }
        let t = cross_terms(2, 0, 2, 0, 3, 0, 0).unwrap();
        assert_eq!((t.within, t.same_column, t.next_column), (2, 0, 0));
    }

    #[test]
    fn cross_terms_rejects_infeasible() {
        assert!(cross_terms(4, 0, 4, 0, 3, 5, 0).is_err());
        assert!(cross_terms(0, 0, 2, 0, 3, 1, 0).is_err());
        assert!(cross_terms(0, 1, 0, 0, 3, 1, 0).is_err());
        assert!(cross_terms(0, 0, 0, 3, 3, 1, 2).is_err());
    }

    #[test]
    fn p3_entries() {
        let sol = solve(&p3_model(), false);
        let col = &sol.tables[0];
        // Rows of column 0: base, row 0, row 1.
        assert_eq!(col.rows.len(), 3);
        assert_eq!(col.rows[2].value(1, 0), Some(2));
        assert_eq!(col.rows[2].choice(1, 0), Some((1, 0)));
        assert_eq!(col.rows[1].value(1, 1), Some(0));
        assert_eq!(col.summary, 2);
        assert_eq!(sol.value, 2);
    }

    #[test]
    fn p3_calculate_opt_directly() {
        let sol = solve(&p3_model(), false);
        let row0 = &sol.tables[0].rows[1];
        let shape = RowShape {
            size: 1,
            next_size: 0,
            prefix: 1,
            next_prefix: 1,
        };
        let (v, arg, ops) = calculate_opt(row0, 1, 0, shape).unwrap();
        assert_eq!((v, arg), (2, (1, 0)));
        assert_eq!(ops, 2);
    }

    #[test]
    fn k3_single_bubble() {
        let m = BubbleModel::single_bubble(3);
        let sol = solve(&m, true);
        let row = &sol.tables[0].rows[1];
        for x in 0..=3 {
            assert_eq!(row.value(x, 0), Some(3 * x as i64 - (x * x) as i64));
        }
        assert_eq!(sol.tables[0].summary, 2);
        assert_eq!(sol.value, 2);
        assert!(sol.traceback.unwrap().consistent());
    }

    #[test]
    fn empty_model() {
        let sol = solve(&BubbleModel::single_bubble(0), true);
        assert_eq!(sol.value, 0);
        assert_eq!(sol.op_count, 0);
        assert_eq!(sol.traceback.unwrap().cut.len(), 0);
    }

    #[test]
    fn counterexample_overshoots_and_is_flagged() {
        let sol = solve(&recurrence_counterexample(), true);
        assert_eq!(sol.value, 3);
        let tb = sol.traceback.unwrap();
        assert!(!tb.consistent());
        assert_eq!(tb.conflicts, vec![(0, 1)]);
    }

    #[test]
    fn bounds() {
        assert_eq!(count_bound(&BubbleModel::single_bubble(7)), 0);
        assert_eq!(count_bound(&p3_model()), 4);
        let two = BubbleModel::new(3, vec![vec![vec![0, 1]], vec![vec![2]]]).unwrap();
        assert_eq!(count_bound(&two), 4);
    }

    #[test]
    fn p3_op_count() {
        // Column 1: 2 entries, 1 pair each. Column 0 row 0: 4 entries, 1 pair
        // each. Row 1: x in 0..=2 gives 1, 2, 1 same-column choices, times
        // two next-column budgets.
        let sol = solve(&p3_model(), false);
        assert_eq!(sol.op_count, 2 + 4 + 8);
    }

    #[test]
    fn table_dump_shape() {
        let sol = solve(&p3_model(), false);
        let dump = sol.tables_json();
        assert_eq!(dump[0]["column"], 1);
        assert_eq!(dump[0]["rows"][2]["values"][1][0], 2);
        assert_eq!(dump[1]["rows"][0]["row"], serde_json::Value::Null);
    }
}
