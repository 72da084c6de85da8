//! Named graph families used as product factors.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solver::{zero_forcing_number, SearchBudget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorKind {
    Path,
    Cycle,
    Complete,
}

impl FactorKind {
    pub fn letter(self) -> char {
        match self {
            FactorKind::Path => 'P',
            FactorKind::Cycle => 'C',
            FactorKind::Complete => 'K',
        }
    }

    pub fn of(self, n: usize) -> Factor {
        match self {
            FactorKind::Path => Factor::Path(n),
            FactorKind::Cycle => Factor::Cycle(n),
            FactorKind::Complete => Factor::Complete(n),
        }
    }
}

/// A product factor: one of the three families, or an arbitrary graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Custom(Graph),
}

impl Factor {
    pub fn order(&self) -> usize {
        match self {
            Factor::Path(n) | Factor::Cycle(n) | Factor::Complete(n) => *n,
            Factor::Custom(g) => g.order(),
        }
    }

    pub fn kind(&self) -> Option<FactorKind> {
        match self {
            Factor::Path(_) => Some(FactorKind::Path),
            Factor::Cycle(_) => Some(FactorKind::Cycle),
            Factor::Complete(_) => Some(FactorKind::Complete),
            Factor::Custom(_) => None,
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        match self {
            Factor::Path(n) => Graph::path(*n),
            Factor::Cycle(n) => Graph::cycle(*n),
            Factor::Complete(n) => Graph::complete(*n),
            Factor::Custom(g) => Ok(g.clone()),
        }
    }

    /// A minimum zero forcing set, 1-based. Paths use an endpoint, cycles an
    /// adjacent pair, complete graphs all but one vertex; arbitrary graphs go
    /// to the exhaustive solver.
    pub fn minimum_forcing_set(&self, budget: &SearchBudget) -> Result<Vec<usize>> {
        // Validate the order through the graph constructors.
        let g = self.graph()?;
        match self {
            Factor::Path(_) => Ok(vec![1]),
            Factor::Cycle(_) => Ok(vec![1, 2]),
            Factor::Complete(n) => Ok((1..=(*n - 1).max(1)).collect()),
            Factor::Custom(_) => {
                let cert = zero_forcing_number(&g, budget)?;
                Ok(cert.witness.iter().map(|v| v + 1).collect())
            }
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Custom(g) => write!(f, "G[n={},m={}]", g.order(), g.edge_count()),
            named => write!(
                f,
                "{}{}",
                named.kind().expect("named").letter(),
                named.order()
            ),
        }
    }
}

impl Serialize for Factor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Factor {
    type Err = Error;

    /// `P4`, `c5`, `K3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('P') => FactorKind::Path,
            Some('C') => FactorKind::Cycle,
            Some('K') => FactorKind::Complete,
            _ => {
                return Err(Error::Parse(format!(
                    "unknown factor {s:?}; expected P, C or K"
                )))
            }
        };
        let n: usize = chars
            .as_str()
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("factor {s:?} needs a numeric order")))?;
        let factor = kind.of(n);
        factor.graph()?;
        Ok(factor)
    }
}
