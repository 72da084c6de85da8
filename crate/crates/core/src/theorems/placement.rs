//! Column maps that carry a construction from its canonical root set to an
//! isomorphic placement.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::products::{ProductVertex, RootSet};

/// An automorphism of the outer factor, applied to the column coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ColumnMap {
    Identity,
    /// `c -> w + 1 - c`, an automorphism of paths and cycles.
    Reflection,
    /// `c -> ((c - 1 + shift) mod w) + 1`, an automorphism of cycles.
    Rotation {
        shift: usize,
    },
    /// `c -> image[c - 1]`, any automorphism of a complete graph.
    Permutation {
        image: Vec<usize>,
    },
}

impl ColumnMap {
    pub fn apply(&self, column: usize, w: usize) -> usize {
        match self {
            ColumnMap::Identity => column,
            ColumnMap::Reflection => w + 1 - column,
            ColumnMap::Rotation { shift } => (column - 1 + shift) % w + 1,
            ColumnMap::Permutation { image } => image[column - 1],
        }
    }

    pub fn apply_vertex(&self, v: ProductVertex, w: usize) -> ProductVertex {
        ProductVertex::new(self.apply(v.column, w), v.row)
    }

    pub fn apply_root(&self, root: &RootSet, w: usize) -> Result<RootSet> {
        RootSet::new(root.members().iter().map(|&c| self.apply(c, w)), w)
    }

    /// The induced map on product vertex ids (column-major, height `h`).
    pub fn vertex_permutation(&self, w: usize, h: usize) -> Vec<usize> {
        (0..w * h)
            .map(|id| (self.apply(id / h + 1, w) - 1) * h + id % h)
            .collect()
    }

    /// Sends the sorted members of `from` onto the sorted members of `to`,
    /// and the remaining columns onto the remaining columns in order.
    pub fn permutation_between(from: &RootSet, to: &RootSet, w: usize) -> Result<Self> {
        if from.len() != to.len() {
            return Err(Error::InvalidRootSet(format!(
                "{from} and {to} differ in size"
            )));
        }
        let rest = |r: &RootSet| (1..=w).filter(|c| !r.contains(*c)).collect::<Vec<_>>();
        let mut image = vec![0; w];
        for (&a, &b) in from.members().iter().zip(to.members()) {
            image[a - 1] = b;
        }
        for (a, b) in rest(from).into_iter().zip(rest(to)) {
            image[a - 1] = b;
        }
        Ok(ColumnMap::Permutation { image })
    }
}

impl fmt::Display for ColumnMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColumnMap::Identity => write!(f, "identity"),
            ColumnMap::Reflection => write!(f, "reflection"),
            ColumnMap::Rotation { shift } => write!(f, "rotation by {shift}"),
            ColumnMap::Permutation { image } => write!(f, "permutation {image:?}"),
        }
    }
}
