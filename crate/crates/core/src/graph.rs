//! Immutable simple undirected graphs with bitset adjacency.
//!
//! Vertices are 0-based internally. Every textual surface (edge lists, DOT,
//! JSON) renders them 1-based.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// A vertex of a [`Graph`], 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    /// From a 1-based label.
    pub fn from_label(label: usize) -> Option<Self> {
        label.checked_sub(1).map(VertexId)
    }

    pub fn index(self) -> usize {
        self.0
    }

    pub fn label(self) -> usize {
        self.0 + 1
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// How a vertex is shown to users: a plain 1-based number, or a
/// `(column, row)` pair for product graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexLabel {
    Plain(usize),
    Pair([usize; 2]),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Plain(v) => write!(f, "{v}"),
            VertexLabel::Pair([i, j]) => write!(f, "({i},{j})"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<VertexSet>,
}

impl Graph {
    /// Graph on `order` vertices with no edges.
    pub fn empty(order: usize) -> Self {
        Graph {
            adjacency: vec![VertexSet::new(order); order],
        }
    }

    /// Builds a graph from 0-based edges. Loops and out-of-range endpoints are
    /// rejected; repeated pairs collapse.
    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(order);
        for (u, v) in edges {
            for x in [u, v] {
                if x >= order {
                    return Err(Error::MalformedInput(format!(
                        "edge {}-{} has endpoint outside 1..={order}",
                        u + 1,
                        v + 1
                    )));
                }
            }
            if u == v {
                return Err(Error::MalformedInput(format!("loop at vertex {}", u + 1)));
            }
            g.adjacency[u].insert(v);
            g.adjacency[v].insert(u);
        }
        Ok(g)
    }

    /// Builds a graph from 1-based endpoint pairs.
    pub fn from_edge_list(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut zero_based = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == 0 || v == 0 || u > order || v > order {
                return Err(Error::MalformedInput(format!(
                    "edge {u}-{v} has endpoint outside 1..={order}"
                )));
            }
            zero_based.push((u - 1, v - 1));
        }
        Graph::from_edges(order, zero_based)
    }

    /// The path P_n with edges 12, 23, ..., (n-1)n.
    pub fn path(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder {
                order: n,
                reason: "a path needs at least one vertex",
            });
        }
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    /// The cycle C_n, n >= 3.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidOrder {
                order: n,
                reason: "a cycle needs at least three vertices",
            });
        }
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// The complete graph K_n.
    pub fn complete(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder {
                order: n,
                reason: "a complete graph needs at least one vertex",
            });
        }
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    fn check(&self, v: VertexId) -> Result<()> {
        if v.0 < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                label: v.label(),
                order: self.order(),
            })
        }
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        self.check(v)?;
        Ok(self.adjacency[v.0].len())
    }

    /// Neighbor row of vertex `v` (0-based index). Panics when out of range.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adjacency[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adjacency[u].contains(v)
    }

    /// Edges as 0-based pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.adjacency.iter().map(VertexSet::len).collect()
    }

    /// The graph obtained by renaming vertex `v` to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.order();
        let mut seen = VertexSet::new(n);
        if perm.len() != n || !perm.iter().all(|&p| p < n && seen.insert(p)) {
            return Err(Error::MalformedInput(
                "relabeling is not a permutation of the vertex set".into(),
            ));
        }
        Graph::from_edges(n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Edge-list text: `n m` then one 1-based `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.order(), self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{} {}", u + 1, v + 1);
        }
        out
    }

    /// Parses the edge-list text format. Blank lines and `#` comments are
    /// ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::MalformedInput("empty edge list".into()))?;
        let (n, m) = parse_pair(header)?;
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            edges.push(parse_pair(line)?);
        }
        if edges.len() != m {
            return Err(Error::MalformedInput(format!(
                "header declares {m} edges but {} were listed",
                edges.len()
            )));
        }
        Graph::from_edge_list(n, &edges)
    }

    /// Graphviz DOT, labeling vertex `v` with `label(v)`.
    pub fn to_dot_with<F>(&self, name: &str, label: F) -> String
    where
        F: Fn(VertexId) -> VertexLabel,
    {
        let mut out = format!("graph \"{name}\" {{\n");
        for v in 0..self.order() {
            let _ = writeln!(out, "  {} [label=\"{}\"];", v + 1, label(VertexId(v)));
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {} -- {};", u + 1, v + 1);
        }
        out.push_str("}\n");
        out
    }

    pub fn to_dot(&self, name: &str) -> String {
        self.to_dot_with(name, |v| VertexLabel::Plain(v.label()))
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(Error::MalformedInput(format!(
            "expected two non-negative integers, got {line:?}"
        ))),
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().map(|(u, v)| (u + 1, v + 1)).collect();
        f.debug_struct("Graph")
            .field("order", &self.order())
            .field("edges", &edges)
            .finish()
    }
}
