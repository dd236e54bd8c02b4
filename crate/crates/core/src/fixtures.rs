//! Small named instances shared by tests, docs and the CLI.

use crate::bubble::BubbleModel;
use crate::graph::Graph;

/// `B[0][0] = {0}`, `B[1][0] = {1}`, `B[0][1] = {2}`; realizes the path 0-1-2.
pub fn p3_model() -> BubbleModel {
    BubbleModel::new(3, vec![vec![vec![0], vec![1]], vec![vec![2]]]).expect("valid")
}

/// `B[1][0] = {0}` and `B[0][1] = {1, 2}`, realizing a triangle.
///
/// The column recurrence scores this model at 3 although a triangle's maximum
/// cut is 2: the row of column 0 claims that neither vertex of column 1 is on
/// the `S` side while reusing the column-1 optimum that splits them.
pub fn recurrence_counterexample() -> BubbleModel {
    BubbleModel::new(3, vec![vec![vec![], vec![0]], vec![vec![1, 2]]]).expect("valid")
}

/// The star `K_{1,3}`.
pub fn claw() -> Graph {
    Graph::new(4, [(0, 1), (0, 2), (0, 3)]).expect("simple")
}
