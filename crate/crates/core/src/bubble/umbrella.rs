//! Umbrella orderings via lexicographic breadth-first search.

use crate::graph::Graph;

/// A vertex order in which every closed neighborhood is a contiguous block.
///
/// Equivalently, for positions `p < q < t`, an edge between the vertices at
/// `p` and `t` forces edges from both to the vertex at `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UmbrellaOrdering {
    order: Vec<usize>,
}

impl UmbrellaOrdering {
    /// Accepts `order` only if it is a permutation with the umbrella property.
    pub fn verified(g: &Graph, order: Vec<usize>) -> Option<Self> {
        is_umbrella(g, &order).then_some(UmbrellaOrdering { order })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// `positions()[v]` is the index of `v` in the order.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (p, &v) in self.order.iter().enumerate() {
            pos[v] = p;
        }
        pos
    }
}

/// O(n + m) check: `order` is a permutation and each closed neighborhood
/// occupies a contiguous range of positions.
pub fn is_umbrella(g: &Graph, order: &[usize]) -> bool {
    let n = g.n();
    if order.len() != n {
        return false;
    }
    let mut pos = vec![usize::MAX; n];
    for (p, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return false;
        }
        pos[v] = p;
    }
    (0..n).all(|v| {
        let (lo, hi) = g
            .neighbors(v)
            .iter()
            .fold((pos[v], pos[v]), |(lo, hi), &u| (lo.min(pos[u]), hi.max(pos[u])));
        hi - lo == g.degree(v)
    })
}

/// Lexicographic BFS by partition refinement. Ties go to the vertex that comes
/// first in `initial`.
fn lex_bfs(g: &Graph, initial: Vec<usize>) -> Vec<usize> {
    let n = g.n();
    let mut classes: Vec<Vec<usize>> = if n == 0 { Vec::new() } else { vec![initial] };
    let mut visited = vec![false; n];
    let mut mark = vec![false; n];
    let mut order = Vec::with_capacity(n);

    while let Some(first) = classes.first_mut() {
        let pivot = first.remove(0);
        if first.is_empty() {
            classes.remove(0);
        }
        visited[pivot] = true;
        order.push(pivot);

        for &u in g.neighbors(pivot) {
            if !visited[u] {
                mark[u] = true;
            }
        }
        let mut refined = Vec::with_capacity(classes.len() * 2);
        for class in classes.drain(..) {
            let (hit, miss): (Vec<usize>, Vec<usize>) = class.into_iter().partition(|&u| mark[u]);
            if !hit.is_empty() {
                refined.push(hit);
            }
            if !miss.is_empty() {
                refined.push(miss);
            }
        }
        classes = refined;
        for &u in g.neighbors(pivot) {
            mark[u] = false;
        }
    }
    order
}

/// LBFS+ sweep: ties go to the vertex appearing last in `previous`.
fn lex_bfs_plus(g: &Graph, previous: &[usize]) -> Vec<usize> {
    lex_bfs(g, previous.iter().rev().copied().collect())
}

/// Finds an umbrella ordering, or `None` if `g` is not a proper interval graph.
///
/// Runs an LBFS sweep from the lowest vertex id followed by two LBFS+ sweeps;
/// the final sweep is an umbrella ordering exactly when one exists. Every
/// returned ordering has been checked with [`is_umbrella`].
pub fn umbrella_ordering(g: &Graph) -> Option<UmbrellaOrdering> {
    let first = lex_bfs(g, (0..g.n()).collect());
    let second = lex_bfs_plus(g, &first);
    let third = lex_bfs_plus(g, &second);
    UmbrellaOrdering::verified(g, third)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn claw() -> Graph {
        Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn path_order() {
        let g = Graph::path(3);
        assert_eq!(umbrella_ordering(&g).unwrap().order(), &[0, 1, 2]);
        assert!(is_umbrella(&g, &[2, 1, 0]));
        assert!(!is_umbrella(&g, &[0, 2, 1]));
    }

    #[test]
    fn complete_graph_identity() {
        for n in 0..7 {
            let g = Graph::complete(n);
            let ord = umbrella_ordering(&g).unwrap();
            assert_eq!(ord.order(), (0..n).collect::<Vec<_>>().as_slice());
        }
    }

    #[test]
    fn rejects_claw_and_cycles() {
        assert!(umbrella_ordering(&claw()).is_none());
        assert!(umbrella_ordering(&Graph::cycle(4)).is_none());
        assert!(umbrella_ordering(&Graph::cycle(5)).is_none());
    }

    #[test]
    fn is_umbrella_rejects_non_permutations() {
        let g = Graph::path(3);
        assert!(!is_umbrella(&g, &[0, 1]));
        assert!(!is_umbrella(&g, &[0, 1, 1]));
        assert!(!is_umbrella(&g, &[0, 1, 3]));
    }

    #[test]
    fn disconnected_components_stay_contiguous() {
        let g = Graph::new(5, [(0, 3), (3, 4), (1, 2)]).unwrap();
        let ord = umbrella_ordering(&g).unwrap();
        assert!(is_umbrella(&g, ord.order()));
    }

    #[test]
    fn positions_invert_order() {
        let g = Graph::path(4);
        let ord = umbrella_ordering(&g).unwrap();
        let pos = ord.positions();
        for (p, &v) in ord.order().iter().enumerate() {
            assert_eq!(pos[v], p);
        }
    }
}
