//! Zero-nonzero patterns, witness matrices and exact rank.
//!
//! Any symmetric matrix whose off-diagonal support is exactly the edge set
//! of `g` has rank at least `mr(g)`, so `n - rank` lower-bounds `Z(g)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::products::{hierarchical_product, RootSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cell {
    Zero,
    Nonzero,
    Free,
}

impl Cell {
    pub fn symbol(self) -> char {
        match self {
            Cell::Zero => '0',
            Cell::Nonzero => '*',
            Cell::Free => '?',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternMatrix {
    cells: Vec<Vec<Cell>>,
}

impl PatternMatrix {
    pub fn order(&self) -> usize {
        self.cells.len()
    }

    pub fn cell(&self, i: usize, j: usize) -> Cell {
        self.cells[i][j]
    }
}

impl fmt::Display for PatternMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.cells {
            let line: Vec<String> = row.iter().map(|c| c.symbol().to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

pub fn pattern_of(g: &Graph) -> PatternMatrix {
    let n = g.order();
    let cells = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match (i == j, g.has_edge(i, j)) {
                    (true, _) => Cell::Free,
                    (false, true) => Cell::Nonzero,
                    (false, false) => Cell::Zero,
                })
                .collect()
        })
        .collect();
    PatternMatrix { cells }
}

/// A square matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: Vec<Vec<BigRational>>,
}

impl RationalMatrix {
    pub fn zeros(n: usize) -> Self {
        RationalMatrix {
            rows: vec![vec![BigRational::zero(); n]; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.rows[i][i] = BigRational::one();
        }
        m
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedInput("matrix is not square".into()));
        }
        Ok(RationalMatrix {
            rows: rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| BigRational::from_integer(BigInt::from(x)))
                        .collect()
                })
                .collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        self.rows[i][j] = value;
    }

    /// Sets both `(i,j)` and `(j,i)`.
    pub fn set_symmetric(&mut self, i: usize, j: usize, value: i64) {
        let v = BigRational::from_integer(BigInt::from(value));
        self.rows[j][i] = v.clone();
        self.rows[i][j] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (i + 1..n).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    /// The matrix with row and column `v` moved to position `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.order();
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.rows[perm[i]][perm[j]] = self.rows[i][j].clone();
            }
        }
        out
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    /// One row per line, entries `p/q` (or `p` when integral), comma separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let rows: Vec<Vec<BigRational>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|line| {
                line.split(',')
                    .map(parse_rational)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedInput("matrix is not square".into()));
        }
        Ok(RationalMatrix { rows })
    }
}

fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational: {text:?}"));
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// True when `m` is symmetric and its off-diagonal support is exactly the
/// edge set of `g`. Diagonal entries are unconstrained.
pub fn matches_pattern(m: &RationalMatrix, g: &Graph) -> Result<bool> {
    let n = g.order();
    if m.order() != n {
        return Err(Error::ShapeMismatch {
            rows: m.order(),
            order: n,
        });
    }
    if !m.is_symmetric() {
        return Ok(false);
    }
    Ok((0..n).all(|i| (i + 1..n).all(|j| m.get(i, j).is_zero() != g.has_edge(i, j))))
}

/// Rank over the rationals by Gaussian elimination.
pub fn rank_exact(m: &RationalMatrix) -> usize {
    let mut a = m.rows.clone();
    let n = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = a[rank][col].recip();
        for r in rank + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            let (top, bottom) = a.split_at_mut(r);
            for (x, p) in bottom[0][col..cols].iter_mut().zip(&top[rank][col..cols]) {
                *x -= &factor * p;
            }
        }
        rank += 1;
    }
    rank
}

/// `order(g) - rank(m)`, a lower bound on `Z(g)` when `m` realizes the
/// pattern of `g`.
pub fn zf_lower_bound(g: &Graph, m: &RationalMatrix) -> Result<usize> {
    if !matches_pattern(m, g)? {
        return Err(Error::InvalidWitness);
    }
    Ok(g.order() - rank_exact(m))
}

/// `P2({1}) x Ph` with vertex `(1,k)` labeled `2k-1` and `(2,k)` labeled
/// `2k`, so consecutive label pairs form the rows of the product.
pub fn p2_ph_graph(h: usize) -> Result<Graph> {
    let p = hierarchical_product(&Graph::path(2)?, &RootSet::new([1], 2)?, &Graph::path(h)?)?;
    // Column-major id (i-1)h + (j-1) becomes 2(j-1) + (i-1).
    let perm: Vec<usize> = (0..2 * h).map(|id| 2 * (id % h) + id / h).collect();
    p.graph().permuted(&perm)
}

/// The witness matrix for `P2({1}) x Ph`, indexed as in [`p2_ph_graph`].
///
/// Starts from the 6x6 base for `h = 3` (entry `(5,3)` taken as `+1` so the
/// matrix is symmetric) and appends two rows and columns per extra row of
/// the product: 1 on the two new edges, and diagonal 0 when the new height
/// is even, -1 when odd.
pub fn p2_ph_witness_matrix(h: usize) -> Result<RationalMatrix> {
    if h < 3 {
        return Err(Error::out_of_hypothesis(
            "P2({1}) x Ph witness",
            format!("needs h >= 3, got h = {h}"),
        ));
    }
    let base: [[i64; 6]; 6] = [
        [-1, 1, 1, 0, 0, 0],
        [1, -1, 0, 0, 0, 0],
        [1, 0, 0, 1, 1, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 1, 0, -1, 1],
        [0, 0, 0, 0, 1, -1],
    ];
    let n = 2 * h;
    let mut m = RationalMatrix::zeros(n);
    for (i, row) in base.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            m.set(i, j, BigRational::from_integer(BigInt::from(x)));
        }
    }
    for height in 4..=h {
        // 0-based ids of the new root-column and non-root vertices.
        let (a, b) = (2 * height - 2, 2 * height - 1);
        let diagonal = if height % 2 == 0 { 0 } else { -1 };
        m.set_symmetric(a, a, diagonal);
        m.set_symmetric(b, b, diagonal);
        m.set_symmetric(a - 2, a, 1);
        m.set_symmetric(a, b, 1);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_of_small_graphs() {
        let star = Graph::from_edge_list(4, &[(1, 2), (2, 3), (2, 4)]).unwrap();
        let expected = "? * 0 0\n* ? * *\n0 * ? 0\n0 * 0 ?\n";
        assert_eq!(pattern_of(&star).to_string(), expected);
        let empty = pattern_of(&Graph::empty(3));
        assert!((0..3).all(|i| (0..3).all(|j| i == j || empty.cell(i, j) == Cell::Zero)));
        let k3 = pattern_of(&Graph::complete(3).unwrap());
        assert!((0..3).all(|i| (0..3).all(|j| i == j || k3.cell(i, j) == Cell::Nonzero)));
    }

    #[test]
    fn base_witness_matrices() {
        let h3 = p2_ph_witness_matrix(3).unwrap();
        assert_eq!(rank_exact(&h3), 4);
        let expected_h4 = RationalMatrix::from_integers(&[
            vec![-1, 1, 1, 0, 0, 0, 0, 0],
            vec![1, -1, 0, 0, 0, 0, 0, 0],
            vec![1, 0, 0, 1, 1, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 0, -1, 1, 1, 0],
            vec![0, 0, 0, 0, 1, -1, 0, 0],
            vec![0, 0, 0, 0, 1, 0, 0, 1],
            vec![0, 0, 0, 0, 0, 0, 1, 0],
        ])
        .unwrap();
        assert_eq!(p2_ph_witness_matrix(4).unwrap(), expected_h4);
        assert_eq!(rank_exact(&expected_h4), 6);
    }

    #[test]
    fn lower_bounds_for_small_heights() {
        for h in [3, 4] {
            let g = p2_ph_graph(h).unwrap();
            let m = p2_ph_witness_matrix(h).unwrap();
            assert_eq!(zf_lower_bound(&g, &m).unwrap(), 2);
        }
    }

    #[test]
    fn interleaved_labeling_of_two_column_product() {
        let g = p2_ph_graph(3).unwrap();
        let mut edges: Vec<_> = g.edges().map(|(u, v)| (u + 1, v + 1)).collect();
        edges.sort();
        assert_eq!(edges, vec![(1, 2), (1, 3), (3, 4), (3, 5), (5, 6)]);
    }

    #[test]
    fn witness_matches_pattern_through_h12() {
        for h in 3..=12 {
            let m = p2_ph_witness_matrix(h).unwrap();
            assert!(
                matches_pattern(&m, &p2_ph_graph(h).unwrap()).unwrap(),
                "h = {h}"
            );
        }
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(rank_exact(&RationalMatrix::zeros(5)), 0);
        assert_eq!(rank_exact(&RationalMatrix::identity(5)), 5);
        let p3 = Graph::path(3).unwrap();
        assert!(!matches_pattern(&RationalMatrix::zeros(3), &p3).unwrap());
        assert!(matches_pattern(&RationalMatrix::identity(3), &Graph::empty(3)).unwrap());
        assert_eq!(
            zf_lower_bound(&Graph::empty(3), &RationalMatrix::identity(3)).unwrap(),
            0
        );
        assert!(matches!(
            zf_lower_bound(&p3, &RationalMatrix::identity(3)),
            Err(Error::InvalidWitness)
        ));
        assert!(matches!(
            matches_pattern(&RationalMatrix::zeros(2), &p3),
            Err(Error::ShapeMismatch { rows: 2, order: 3 })
        ));
        assert!(p2_ph_witness_matrix(2).is_err());
    }

    #[test]
    fn asymmetric_matrix_fails_pattern() {
        let mut m = p2_ph_witness_matrix(3).unwrap();
        m.set(4, 2, BigRational::from_integer(BigInt::from(-1)));
        assert!(!matches_pattern(&m, &p2_ph_graph(3).unwrap()).unwrap());
    }

    #[test]
    fn csv_round_trip() {
        let mut m = RationalMatrix::identity(2);
        m.set(0, 1, BigRational::new(BigInt::from(-3), BigInt::from(4)));
        let text = m.to_csv();
        assert_eq!(text, "1,-3/4\n0,1\n");
        assert_eq!(RationalMatrix::from_csv(&text).unwrap(), m);
        assert!(RationalMatrix::from_csv("1,2\n3").is_err());
        assert!(RationalMatrix::from_csv("1/0").is_err());
    }
}
