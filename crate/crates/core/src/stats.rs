//! Filtration sizes up to dimension 2 and their growth with sample size.
//!
//! Counting works on adjacency bitsets, so it never materialises the
//! triangles and stays cheap for graphs far too dense to expand.

use crate::error::{Error, Result};
use crate::metric::{DistanceMatrix, Threshold};
use crate::scalar::Scalar;
use crate::tower::FilteredGraph;

/// Vertex, edge and triangle counts of a flag complex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SimplexCounts {
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
}

impl SimplexCounts {
    pub fn total(&self) -> usize {
        self.vertices + self.edges + self.triangles
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.vertices, self.edges, self.triangles]
    }
}

struct BitGraph {
    words: usize,
    rows: Vec<u64>,
}

impl BitGraph {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Self {
            words,
            rows: vec![0; n * words],
        }
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    fn connect(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }
}

fn count_flag(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> SimplexCounts {
    let mut g = BitGraph::new(n);
    let mut pairs = Vec::new();
    for (u, v) in edges {
        g.connect(u, v);
        pairs.push((u, v));
    }
    // each triangle is seen once from each of its three edges
    let seen: usize = pairs
        .iter()
        .map(|&(u, v)| {
            g.row(u)
                .iter()
                .zip(g.row(v))
                .map(|(a, b)| (a & b).count_ones() as usize)
                .sum::<usize>()
        })
        .sum();
    SimplexCounts {
        vertices: n,
        edges: pairs.len(),
        triangles: seen / 3,
    }
}

/// Counts of the flag complex of a filtered graph (its full filtration).
pub fn graph_counts<T: Scalar>(g: &FilteredGraph<T>) -> SimplexCounts {
    count_flag(g.n(), g.edges().iter().map(|e| (e.u, e.v)))
}

/// Counts of the Vietoris-Rips complex at `threshold`.
pub fn rips_counts<T: Scalar>(dm: &DistanceMatrix<T>, threshold: Threshold<T>) -> SimplexCounts {
    let n = dm.len();
    count_flag(
        n,
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| threshold.admits(dm.get(i, j))),
    )
}

/// Empirical exponent `(ln s2 - ln s1) / (ln n2 - ln n1)`.
pub fn growth_exponent(n1: usize, s1: usize, n2: usize, s2: usize) -> Result<f64> {
    if n1 == 0 || n2 == 0 || s1 == 0 || s2 == 0 {
        return Err(Error::GrowthUndefined("sizes must be positive"));
    }
    if n1 == n2 {
        return Err(Error::GrowthUndefined("both samples have the same number of points"));
    }
    let ln = |x: usize| (x as f64).ln();
    Ok((ln(s2) - ln(s1)) / (ln(n2) - ln(n1)))
}
