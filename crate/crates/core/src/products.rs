//! Cartesian and generalized hierarchical products.
//!
//! A product of `W` (order `w`) and `H` (order `h`) has vertices `(i, j)`
//! with column `i` in `1..=w` and row `j` in `1..=h`. Internally vertex
//! `(i, j)` has id `(i - 1) * h + (j - 1)`, so each column (a copy of `H`)
//! is a contiguous id range.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexLabel};
use crate::vertex_set::VertexSet;

/// Columns of `W` that receive a copy of `H`. 1-based, sorted, non-empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct RootSet(Vec<usize>);

impl RootSet {
    /// Normalizes `members` (sorted, deduplicated) and checks they lie in
    /// `1..=w`.
    pub fn new<I: IntoIterator<Item = usize>>(members: I, w: usize) -> Result<Self> {
        let root = RootSet::unchecked(members)?;
        root.check_within(w)?;
        Ok(root)
    }

    fn unchecked<I: IntoIterator<Item = usize>>(members: I) -> Result<Self> {
        let mut m: Vec<usize> = members.into_iter().collect();
        m.sort_unstable();
        m.dedup();
        if m.is_empty() {
            return Err(Error::InvalidRootSet("root set is empty".into()));
        }
        if m[0] == 0 {
            return Err(Error::InvalidRootSet("root labels are 1-based".into()));
        }
        Ok(RootSet(m))
    }

    /// Every column `1..=w`.
    pub fn full(w: usize) -> Result<Self> {
        RootSet::new(1..=w, w)
    }

    pub fn check_within(&self, w: usize) -> Result<()> {
        match self.0.last() {
            Some(&max) if max <= w => Ok(()),
            _ => Err(Error::InvalidRootSet(format!(
                "{self} is not a subset of 1..={w}"
            ))),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, column: usize) -> bool {
        self.0.binary_search(&column).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when this is every column of a `w`-vertex factor.
    pub fn is_full(&self, w: usize) -> bool {
        self.0.len() == w && self.0.last() == Some(&w)
    }
}

impl TryFrom<Vec<usize>> for RootSet {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        RootSet::unchecked(v)
    }
}

impl From<RootSet> for Vec<usize> {
    fn from(r: RootSet) -> Self {
        r.0
    }
}

impl fmt::Display for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A product vertex `(column, row)`, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct ProductVertex {
    pub column: usize,
    pub row: usize,
}

impl ProductVertex {
    pub const fn new(column: usize, row: usize) -> Self {
        ProductVertex { column, row }
    }
}

impl From<[usize; 2]> for ProductVertex {
    fn from([column, row]: [usize; 2]) -> Self {
        ProductVertex { column, row }
    }
}

impl From<ProductVertex> for [usize; 2] {
    fn from(p: ProductVertex) -> Self {
        [p.column, p.row]
    }
}

impl fmt::Display for ProductVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.column, self.row)
    }
}

/// Which columns carry `H`-edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Root {
    /// Every column: the Cartesian product.
    Full,
    Subset(RootSet),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductGraph {
    graph: Graph,
    w: usize,
    h: usize,
    root: Root,
}

/// `W(U) ⊓ H`: rows are copies of `W`; only root columns are copies of `H`.
pub fn hierarchical_product(outer: &Graph, root: &RootSet, inner: &Graph) -> Result<ProductGraph> {
    root.check_within(outer.order())?;
    build(outer, Root::Subset(root.clone()), inner)
}

/// `W □ H`.
pub fn cartesian_product(outer: &Graph, inner: &Graph) -> Result<ProductGraph> {
    build(outer, Root::Full, inner)
}

fn build(outer: &Graph, root: Root, inner: &Graph) -> Result<ProductGraph> {
    let (w, h) = (outer.order(), inner.order());
    if w == 0 || h == 0 {
        return Err(Error::InvalidOrder {
            order: 0,
            reason: "product factors must be non-empty",
        });
    }
    let id = |i: usize, j: usize| i * h + j;
    let rows = (0..h).flat_map(|j| outer.edges().map(move |(a, b)| (id(a, j), id(b, j))));
    let columns: Vec<usize> = match &root {
        Root::Full => (0..w).collect(),
        Root::Subset(u) => u.members().iter().map(|&c| c - 1).collect(),
    };
    let cols = columns
        .iter()
        .flat_map(|&i| inner.edges().map(move |(a, b)| (id(i, a), id(i, b))));
    let graph = Graph::from_edges(w * h, rows.chain(cols).collect::<Vec<_>>())?;
    Ok(ProductGraph { graph, w, h, root })
}

impl ProductGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Order of the outer factor (number of columns).
    pub fn w(&self) -> usize {
        self.w
    }

    /// Order of the inner factor (number of rows).
    pub fn h(&self) -> usize {
        self.h
    }

    pub fn root(&self) -> &Root {
        &self.root
    }

    pub fn is_root_column(&self, column: usize) -> bool {
        match &self.root {
            Root::Full => (1..=self.w).contains(&column),
            Root::Subset(u) => u.contains(column),
        }
    }

    /// The root set, materialized (all columns for a Cartesian product).
    pub fn root_set(&self) -> RootSet {
        match &self.root {
            Root::Full => RootSet((1..=self.w).collect()),
            Root::Subset(u) => u.clone(),
        }
    }

    pub fn id_of(&self, p: ProductVertex) -> Result<VertexId> {
        if p.column == 0 || p.column > self.w || p.row == 0 || p.row > self.h {
            return Err(Error::MalformedInput(format!(
                "product vertex {p} outside {}x{}",
                self.w, self.h
            )));
        }
        Ok(VertexId((p.column - 1) * self.h + (p.row - 1)))
    }

    pub fn label_of(&self, v: VertexId) -> Result<ProductVertex> {
        if v.0 >= self.graph.order() {
            return Err(Error::VertexOutOfRange {
                label: v.label(),
                order: self.graph.order(),
            });
        }
        Ok(ProductVertex::new(v.0 / self.h + 1, v.0 % self.h + 1))
    }

    pub fn vertex_label(&self, v: VertexId) -> VertexLabel {
        let p = ProductVertex::new(v.0 / self.h + 1, v.0 % self.h + 1);
        VertexLabel::Pair([p.column, p.row])
    }

    pub fn set_of<'a, I>(&self, vertices: I) -> Result<VertexSet>
    where
        I: IntoIterator<Item = &'a ProductVertex>,
    {
        let mut s = VertexSet::new(self.graph.order());
        for &p in vertices {
            s.insert(self.id_of(p)?.0);
        }
        Ok(s)
    }

    pub fn labels_of(&self, set: &VertexSet) -> Vec<ProductVertex> {
        set.iter()
            .map(|v| ProductVertex::new(v / self.h + 1, v % self.h + 1))
            .collect()
    }

    pub fn to_dot(&self, name: &str) -> String {
        self.graph.to_dot_with(name, |v| self.vertex_label(v))
    }
}
