//! Product expressions such as `P4({1,3}) x P3`.
//!
//! Grammar, case-insensitive, whitespace ignored:
//!
//! ```text
//! expr   := factor [ "(" "{" list "}" ")" ] [ "x" factor ]
//! factor := ("P" | "C" | "K") number
//! list   := number ("," number)*
//! ```
//!
//! A root set requires a right-hand factor. Without a root set, `A x B` is
//! the Cartesian product; a lone factor is the plain graph.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::family::Factor;
use crate::graph::{Graph, VertexId, VertexLabel};
use crate::products::{
    cartesian_product, hierarchical_product, ProductGraph, ProductVertex, RootSet,
};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductExpression {
    pub outer: Factor,
    pub root: Option<RootSet>,
    pub inner: Option<Factor>,
}

impl FromStr for ProductExpression {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let lower = compact.to_ascii_lowercase();
        let (left, right) = match lower.find('x') {
            Some(at) => (&compact[..at], Some(&compact[at + 1..])),
            None => (compact.as_str(), None),
        };
        if right.is_some_and(|r| r.to_ascii_lowercase().contains('x')) {
            return Err(Error::Parse(
                "only two-factor products are supported".into(),
            ));
        }
        let (outer_text, root_text) = match left.find('(') {
            Some(open) => {
                let body = left[open + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unclosed root set in {s:?}")))?;
                (&left[..open], Some(body))
            }
            None => (left, None),
        };
        let outer: Factor = outer_text.parse()?;
        let root = root_text
            .map(|body| {
                let list = body
                    .strip_prefix('{')
                    .and_then(|b| b.strip_suffix('}'))
                    .ok_or_else(|| {
                        Error::Parse(format!("root set must be written {{..}} in {s:?}"))
                    })?;
                let members = parse_numbers(list)?;
                RootSet::new(members, outer.order())
            })
            .transpose()?;
        let inner = right.map(str::parse::<Factor>).transpose()?;
        if root.is_some() && inner.is_none() {
            return Err(Error::Parse(format!(
                "root set given without a second factor in {s:?}"
            )));
        }
        Ok(ProductExpression { outer, root, inner })
    }
}

impl fmt::Display for ProductExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.outer)?;
        if let Some(r) = &self.root {
            write!(f, "({r})")?;
        }
        if let Some(h) = &self.inner {
            write!(f, " x {h}")?;
        }
        Ok(())
    }
}

fn parse_numbers(list: &str) -> Result<Vec<usize>> {
    list.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("expected a number, got {t:?}")))
        })
        .collect()
}

/// A built expression: a plain graph or a labeled product.
#[derive(Clone, Debug)]
pub enum Instance {
    Plain(Graph),
    Product(ProductGraph),
}

impl ProductExpression {
    pub fn build(&self) -> Result<Instance> {
        let outer = self.outer.graph()?;
        match (&self.inner, &self.root) {
            (None, _) => Ok(Instance::Plain(outer)),
            (Some(inner), None) => Ok(Instance::Product(cartesian_product(
                &outer,
                &inner.graph()?,
            )?)),
            (Some(inner), Some(root)) => Ok(Instance::Product(hierarchical_product(
                &outer,
                root,
                &inner.graph()?,
            )?)),
        }
    }
}

impl Instance {
    pub fn graph(&self) -> &Graph {
        match self {
            Instance::Plain(g) => g,
            Instance::Product(p) => p.graph(),
        }
    }

    pub fn label(&self, v: VertexId) -> VertexLabel {
        match self {
            Instance::Plain(_) => VertexLabel::Plain(v.label()),
            Instance::Product(p) => p.vertex_label(v),
        }
    }

    pub fn labels(&self, set: &VertexSet) -> Vec<VertexLabel> {
        set.iter().map(|v| self.label(VertexId(v))).collect()
    }

    /// Parses a vertex set: `(i,j),(i,j),...` for products, `1,3,4` for
    /// plain graphs. Surrounding braces are optional.
    pub fn parse_set(&self, text: &str) -> Result<VertexSet> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .unwrap_or(&compact);
        let g = self.graph();
        match self {
            Instance::Plain(_) => {
                let mut s = VertexSet::new(g.order());
                if body.is_empty() {
                    return Ok(s);
                }
                for label in parse_numbers(body)? {
                    let v = VertexId::from_label(label)
                        .filter(|v| v.0 < g.order())
                        .ok_or(Error::VertexOutOfRange {
                            label,
                            order: g.order(),
                        })?;
                    s.insert(v.0);
                }
                Ok(s)
            }
            Instance::Product(p) => {
                let pairs = parse_pairs(body)?;
                p.set_of(pairs.iter())
            }
        }
    }

    pub fn to_dot(&self, name: &str) -> String {
        match self {
            Instance::Plain(g) => g.to_dot(name),
            Instance::Product(p) => p.to_dot(name),
        }
    }
}

fn parse_pairs(body: &str) -> Result<Vec<ProductVertex>> {
    let mut out = Vec::new();
    let mut rest = body;
    while !rest.is_empty() {
        rest = rest.trim_start_matches(',');
        if rest.is_empty() {
            break;
        }
        let inner = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' at {rest:?}")))?;
        let close = inner
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed pair at {rest:?}")))?;
        match parse_numbers(&inner[..close])?.as_slice() {
            &[i, j] => out.push(ProductVertex::new(i, j)),
            _ => return Err(Error::Parse(format!("pair needs two numbers at {rest:?}"))),
        }
        rest = &inner[close + 1..];
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_hierarchical_expression() {
        let e: ProductExpression = "P4({1,3}) x P3".parse().unwrap();
        assert_eq!(e.outer, Factor::Path(4));
        assert_eq!(e.root.as_ref().unwrap().members(), &[1, 3]);
        assert_eq!(e.inner, Some(Factor::Path(3)));
        assert_eq!(e.to_string(), "P4({1,3}) x P3");
        let g = e.build().unwrap();
        assert_eq!(g.graph().edge_count(), 13);
    }

    #[test]
    fn case_and_whitespace_insensitive() {
        let a: ProductExpression = "k4( { 2 ,1 } )X k4".parse().unwrap();
        let b: ProductExpression = "K4({1,2}) x K4".parse().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cartesian_and_plain() {
        let e: ProductExpression = "P3 x C3".parse().unwrap();
        assert!(e.root.is_none());
        assert_eq!(e.build().unwrap().graph().edge_count(), 15);
        let e: ProductExpression = "c5".parse().unwrap();
        assert!(matches!(e.build().unwrap(), Instance::Plain(_)));
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "",
            "P4({1,3})",
            "P4({5}) x P3",
            "P4({1,3} x P3",
            "P4(1,3) x P3",
            "Q4 x P3",
            "P3 x P3 x P3",
            "P4({}) x P2",
        ] {
            assert!(
                bad.parse::<ProductExpression>().is_err(),
                "{bad:?} should not parse"
            );
        }
    }

    #[test]
    fn parses_vertex_sets() {
        let inst = "P3({1}) x C3"
            .parse::<ProductExpression>()
            .unwrap()
            .build()
            .unwrap();
        let s = inst.parse_set("(1,1),(1,2), (2,1)").unwrap();
        assert_eq!(s.to_vec(), vec![0, 1, 3]);
        assert!(inst.parse_set("(4,1)").is_err());
        assert!(inst.parse_set("(1,1,1)").is_err());
        let plain = "K5".parse::<ProductExpression>().unwrap().build().unwrap();
        assert_eq!(plain.parse_set("{1,2,5}").unwrap().to_vec(), vec![0, 1, 4]);
        assert!(plain.parse_set("6").is_err());
    }
}
