//! Simple undirected graphs, cuts, and the edge-list text format.
//!
//! The edge-list format is a header line `n m` followed by exactly `m` lines
//! `u v`, each naming one undirected edge with `0 <= u, v < n` and `u != v`.

use std::collections::HashSet;
use std::fmt;
use std::io::Read;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {{{0},{1}}}")]
    DuplicateEdge(usize, usize),
    #[error("cut has length {cut} but the graph has {n} vertices")]
    LengthMismatch { cut: usize, n: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("missing header line \"n m\"")]
    MissingHeader,
    #[error("malformed header: expected two non-negative integers \"n m\"")]
    MalformedHeader,
    #[error("malformed edge line: expected two non-negative integers \"u v\"")]
    MalformedEdge,
    #[error("expected {expected} edge lines, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("unexpected content after the last edge")]
    TrailingContent,
    #[error("{0}")]
    Invalid(GraphError),
    #[error("input is not valid UTF-8 text")]
    Encoding,
    #[error("read failed: {0}")]
    Io(String),
}

/// A simple undirected graph on the dense vertex set `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edge_set: HashSet<(usize, usize)>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph, rejecting loops, parallel edges and out-of-range endpoints.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            edge_set: HashSet::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        let k = key(u, v);
        if !self.edge_set.insert(k) {
            return Err(GraphError::DuplicateEdge(k.0, k.1));
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_set.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edge_set.contains(&key(u, v))
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self.edge_set.iter().copied().collect();
        out.sort_unstable();
        out
    }

    /// The graph obtained by renaming vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        Graph::new(self.n, self.edge_set.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Canonical edge-list text: header, then edges with `u < v` in sorted order.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

/// Parses the edge-list format. Blank lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(ParseError {
        line: 1,
        kind: ParseErrorKind::MissingHeader,
    })?;
    let (n, m) = parse_pair(header).ok_or(ParseError {
        line: header_line,
        kind: ParseErrorKind::MalformedHeader,
    })?;

    let mut g = Graph::empty(n);
    let mut last_line = header_line;
    for found in 0..m {
        let Some((line, body)) = lines.next() else {
            return Err(ParseError {
                line: last_line + 1,
                kind: ParseErrorKind::EdgeCount { expected: m, found },
            });
        };
        last_line = line;
        let (u, v) = parse_pair(body).ok_or(ParseError {
            line,
            kind: ParseErrorKind::MalformedEdge,
        })?;
        g.insert_edge(u, v).map_err(|e| ParseError {
            line,
            kind: ParseErrorKind::Invalid(e),
        })?;
    }
    if let Some((line, _)) = lines.next() {
        return Err(ParseError {
            line,
            kind: ParseErrorKind::TrailingContent,
        });
    }
    for list in &mut g.adj {
        list.sort_unstable();
    }
    Ok(g)
}

/// Reads and parses an edge list from a byte stream.
pub fn read_edge_list<R: Read>(mut reader: R) -> Result<Graph, ParseError> {
    let mut bytes = Vec::new();
    reader.read_to_end(&mut bytes).map_err(|e| ParseError {
        line: 0,
        kind: ParseErrorKind::Io(e.to_string()),
    })?;
    let text = String::from_utf8(bytes).map_err(|_| ParseError {
        line: 0,
        kind: ParseErrorKind::Encoding,
    })?;
    parse_edge_list(&text)
}

/// One side `S` of a cut, stored as a membership bit per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cut {
    membership: Vec<bool>,
}

impl Cut {
    pub fn new(membership: Vec<bool>) -> Self {
        Cut { membership }
    }

    pub fn empty(n: usize) -> Self {
        Cut::new(vec![false; n])
    }

    pub fn from_members(n: usize, members: &[usize]) -> Self {
        let mut membership = vec![false; n];
        for &v in members {
            membership[v] = true;
        }
        Cut { membership }
    }

    pub fn len(&self) -> usize {
        self.membership.len()
    }

    pub fn is_empty(&self) -> bool {
        self.membership.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.membership[v]
    }

    pub fn set(&mut self, v: usize, inside: bool) {
        self.membership[v] = inside;
    }

    pub fn membership(&self) -> &[bool] {
        &self.membership
    }

    /// Vertices on the `S` side, ascending.
    pub fn members(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.membership[v]).collect()
    }
}

/// Number of edges with exactly one endpoint in `s`.
pub fn cut_size(g: &Graph, s: &Cut) -> Result<u64, GraphError> {
    if s.len() != g.n() {
        return Err(GraphError::LengthMismatch {
            cut: s.len(),
            n: g.n(),
        });
    }
    Ok(g
        .edge_set
        .iter()
        .filter(|&&(u, v)| s.contains(u) != s.contains(v))
        .count() as u64)
}

/// The other side of the cut.
pub fn complement_cut(s: &Cut) -> Cut {
    Cut::new(s.membership.iter().map(|&b| !b).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k4() -> Graph {
        Graph::complete(4)
    }

    #[test]
    fn parses_small_path() {
        let g = parse_edge_list("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn parses_isolated_vertex() {
        let g = parse_edge_list("1 0\n").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn accepts_reversed_orientation() {
        let g = parse_edge_list("3 2\n1 0\n2 1\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn rejects_loop() {
        let err = parse_edge_list("2 1\n0 0\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.kind, ParseErrorKind::Invalid(GraphError::Loop(0)));
    }

    #[test]
    fn rejects_duplicate_in_either_orientation() {
        let err = parse_edge_list("3 2\n0 1\n1 0\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert_eq!(err.kind, ParseErrorKind::Invalid(GraphError::DuplicateEdge(0, 1)));
    }

    #[test]
    fn rejects_out_of_range() {
        let err = parse_edge_list("2 1\n0 2\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(matches!(
            err.kind,
            ParseErrorKind::Invalid(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn rejects_bad_header_and_counts() {
        assert_eq!(parse_edge_list("").unwrap_err().kind, ParseErrorKind::MissingHeader);
        assert_eq!(parse_edge_list("3\n").unwrap_err().kind, ParseErrorKind::MalformedHeader);
        assert_eq!(
            parse_edge_list("3 2\n0 1\n").unwrap_err().kind,
            ParseErrorKind::EdgeCount { expected: 2, found: 1 }
        );
        let err = parse_edge_list("3 1\n0 1\n1 2\n").unwrap_err();
        assert_eq!((err.line, err.kind), (3, ParseErrorKind::TrailingContent));
        let err = parse_edge_list("3 1\n0 x\n").unwrap_err();
        assert_eq!((err.line, err.kind), (2, ParseErrorKind::MalformedEdge));
    }

    #[test]
    fn cut_size_examples() {
        let p3 = Graph::path(3);
        assert_eq!(cut_size(&p3, &Cut::from_members(3, &[1])).unwrap(), 2);
        assert_eq!(cut_size(&k4(), &Cut::empty(4)).unwrap(), 0);
        for pair in [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]] {
            assert_eq!(cut_size(&k4(), &Cut::from_members(4, &pair)).unwrap(), 4);
        }
    }

    #[test]
    fn cut_size_rejects_length_mismatch() {
        assert_eq!(
            cut_size(&k4(), &Cut::empty(3)),
            Err(GraphError::LengthMismatch { cut: 3, n: 4 })
        );
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement_cut(&Cut::from_members(3, &[1])).members(), vec![0, 2]);
        assert_eq!(complement_cut(&Cut::empty(2)).members(), vec![0, 1]);
    }

    #[test]
    fn empty_graph_serializes() {
        let g = Graph::empty(0);
        assert_eq!(g.to_edge_list(), "0 0\n");
        assert_eq!(parse_edge_list("0 0\n").unwrap(), g);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..10).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let len = pairs.len();
            proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
                let edges = pairs.iter().zip(&mask).filter(|(_, &m)| m).map(|(&e, _)| e);
                Graph::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn duality_and_range(g in arb_graph(), bits in proptest::collection::vec(any::<bool>(), 10)) {
            let s = Cut::new(bits[..g.n()].to_vec());
            let size = cut_size(&g, &s).unwrap();
            prop_assert_eq!(size, cut_size(&g, &complement_cut(&s)).unwrap());
            prop_assert!(size <= g.edge_count() as u64);
            prop_assert_eq!(complement_cut(&complement_cut(&s)), s);
        }

        #[test]
        fn edge_list_round_trip(g in arb_graph()) {
            let text = g.to_edge_list();
            let back = parse_edge_list(&text).unwrap();
            prop_assert_eq!(back.to_edge_list(), text);
            prop_assert_eq!(back, g);
        }
    }
}
