//! Bubble models of proper interval graphs.
//!
//! A bubble model places every vertex into exactly one bubble `B[i][j]`,
//! arranged in columns `j` with rows `i`. Bubbles may be empty. The realized
//! graph joins two vertices when they share a column, or when one sits in
//! the column directly right of the other on a strictly smaller row.
//!
//! Rust indices for rows and columns are 0-based. The JSON form uses 1-based
//! row numbers.

mod build;
mod random;
mod umbrella;

pub use build::build_bubble_model;
pub use random::{dense_model, random_model, RandomModelParams};
pub use umbrella::{is_umbrella, umbrella_ordering, UmbrellaOrdering};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// `Σ_j r_j` may not exceed this factor times `max(n, 1)²`.
pub const BUBBLE_COUNT_FACTOR: usize = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelViolation {
    #[error("duplicate vertex {0}")]
    DuplicateVertex(usize),
    #[error("missing vertex {0}")]
    MissingVertex(usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("model has no columns but {0} vertices")]
    NoColumns(usize),
    #[error("model has {count} bubbles, limit is {limit}")]
    TooManyBubbles { count: usize, limit: usize },
    #[error("model is on {model} vertices but the graph has {graph}")]
    VertexCountMismatch { model: usize, graph: usize },
    #[error("adjacency mismatch at {{{u},{v}}}: model has {}, graph has {}",
        if *.in_model { "an edge" } else { "a non-edge" },
        if *.in_model { "a non-edge" } else { "an edge" })]
    AdjacencyMismatch { u: usize, v: usize, in_model: bool },
}

#[derive(Debug, Error)]
pub enum ModelJsonError {
    #[error("invalid bubble-model JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("column {column}: row {row} is not strictly increasing or below 1")]
    BadRow { column: usize, row: usize },
    #[error(transparent)]
    Violation(#[from] ModelViolation),
}

/// A validated near-partition of `0..n` into bubbles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BubbleModel {
    n: usize,
    columns: Vec<Vec<Vec<usize>>>,
    position: Vec<(usize, usize)>,
}

impl BubbleModel {
    /// `columns[j][i]` holds the vertices of the bubble in column `j`, row `i`.
    /// Vertices inside each bubble are sorted.
    pub fn new(n: usize, mut columns: Vec<Vec<Vec<usize>>>) -> Result<Self, ModelViolation> {
        if n > 0 && columns.is_empty() {
            return Err(ModelViolation::NoColumns(n));
        }
        let count: usize = columns.iter().map(Vec::len).sum();
        let limit = BUBBLE_COUNT_FACTOR * n.max(1) * n.max(1);
        if count > limit {
            return Err(ModelViolation::TooManyBubbles { count, limit });
        }
        const UNSET: (usize, usize) = (usize::MAX, usize::MAX);
        let mut position = vec![UNSET; n];
        for (j, column) in columns.iter_mut().enumerate() {
            for (i, bubble) in column.iter_mut().enumerate() {
                bubble.sort_unstable();
                for &v in bubble.iter() {
                    if v >= n {
                        return Err(ModelViolation::VertexOutOfRange { vertex: v, n });
                    }
                    if position[v] != UNSET {
                        return Err(ModelViolation::DuplicateVertex(v));
                    }
                    position[v] = (j, i);
                }
            }
        }
        if let Some(v) = position.iter().position(|&p| p == UNSET) {
            return Err(ModelViolation::MissingVertex(v));
        }
        Ok(BubbleModel {
            n,
            columns,
            position,
        })
    }

    /// A model with one column and one bubble holding every vertex.
    pub fn single_bubble(n: usize) -> Self {
        if n == 0 {
            return BubbleModel::new(0, Vec::new()).expect("empty model");
        }
        BubbleModel::new(n, vec![vec![(0..n).collect()]]).expect("single bubble is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of columns `k`.
    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<Vec<usize>>] {
        &self.columns
    }

    /// Number of rows `r_j` of column `j`.
    pub fn rows(&self, j: usize) -> usize {
        self.columns.get(j).map_or(0, Vec::len)
    }

    pub fn bubble(&self, i: usize, j: usize) -> &[usize] {
        self.columns
            .get(j)
            .and_then(|c| c.get(i))
            .map_or(&[], |b| b.as_slice())
    }

    /// `b_{i,j}`; zero for bubbles outside the model.
    pub fn bubble_size(&self, i: usize, j: usize) -> usize {
        self.bubble(i, j).len()
    }

    /// `c_j`; zero for columns outside the model.
    pub fn column_size(&self, j: usize) -> usize {
        self.columns.get(j).map_or(0, |c| c.iter().map(Vec::len).sum())
    }

    /// `(j(v), i(v))`.
    pub fn position(&self, v: usize) -> (usize, usize) {
        self.position[v]
    }

    pub fn bubble_count(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        let (ju, iu) = self.position[u];
        let (jv, iv) = self.position[v];
        ju == jv || (ju == jv + 1 && iu < iv) || (jv == ju + 1 && iv < iu)
    }

    /// The same model with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, ModelViolation> {
        let columns = self
            .columns
            .iter()
            .map(|c| c.iter().map(|b| b.iter().map(|&v| perm[v]).collect()).collect())
            .collect();
        BubbleModel::new(self.n, columns)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ModelJson::from(self)).expect("model serializes")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(ModelJson::from(self)).expect("model serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ModelJsonError> {
        let raw: ModelJson = serde_json::from_str(text)?;
        raw.into_model()
    }
}

/// The graph `G(B)` defined by the model.
pub fn realize_graph(m: &BubbleModel) -> Graph {
    let mut edges = Vec::new();
    for (j, column) in m.columns.iter().enumerate() {
        let members: Vec<usize> = column.iter().flatten().copied().collect();
        for (a, &u) in members.iter().enumerate() {
            for &v in &members[a + 1..] {
                edges.push((u, v));
            }
        }
        if let Some(next) = m.columns.get(j + 1) {
            for (i, bubble) in column.iter().enumerate() {
                for right in next.iter().take(i) {
                    for &u in bubble {
                        for &v in right {
                            edges.push((u, v));
                        }
                    }
                }
            }
        }
    }
    Graph::new(m.n, edges).expect("realized graph is simple")
}

/// Checks that `m` realizes exactly `g`, returning the first differing pair.
///
/// Structural invariants are enforced when a [`BubbleModel`] is constructed;
/// with no graph this only re-checks them.
pub fn validate_model(m: &BubbleModel, g: Option<&Graph>) -> Result<(), ModelViolation> {
    BubbleModel::new(m.n, m.columns.clone())?;
    let Some(g) = g else {
        return Ok(());
    };
    if g.n() != m.n {
        return Err(ModelViolation::VertexCountMismatch {
            model: m.n,
            graph: g.n(),
        });
    }
    for u in 0..m.n {
        for v in u + 1..m.n {
            let in_model = m.adjacent(u, v);
            if in_model != g.has_edge(u, v) {
                return Err(ModelViolation::AdjacencyMismatch { u, v, in_model });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
struct BubbleJson {
    row: usize,
    vertices: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ModelJson {
    n: usize,
    columns: Vec<Vec<BubbleJson>>,
}

impl From<&BubbleModel> for ModelJson {
    fn from(m: &BubbleModel) -> Self {
        let columns = m
            .columns
            .iter()
            .map(|column| {
                let last = column.len().saturating_sub(1);
                column
                    .iter()
                    .enumerate()
                    .filter(|&(i, b)| !b.is_empty() || i == last)
                    .map(|(i, b)| BubbleJson {
                        row: i + 1,
                        vertices: b.clone(),
                    })
                    .collect()
            })
            .collect();
        ModelJson { n: m.n, columns }
    }
}

impl ModelJson {
    fn into_model(self) -> Result<BubbleModel, ModelJsonError> {
        let mut columns = Vec::with_capacity(self.columns.len());
        for (j, bubbles) in self.columns.into_iter().enumerate() {
            let mut column: Vec<Vec<usize>> = Vec::new();
            for b in bubbles {
                if b.row <= column.len() {
                    return Err(ModelJsonError::BadRow {
                        column: j + 1,
                        row: b.row,
                    });
                }
                column.resize(b.row - 1, Vec::new());
                column.push(b.vertices);
            }
            columns.push(column);
        }
        Ok(BubbleModel::new(self.n, columns)?)
    }
}
