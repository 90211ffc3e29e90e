//! Abstract simplicial complexes with canonical storage.

use std::collections::BTreeSet;
use std::io::Write;

use crate::error::Result;

/// Downward-closed family of simplices (sorted vertex tuples) on
/// `{0..vertex_count-1}`, tracked up to `max_dim`.
///
/// Storage is canonical, so equality of values is equality of complexes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    vertex_count: usize,
    max_dim: usize,
    simplices: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn new(vertex_count: usize, max_dim: usize) -> Self {
        Self {
            vertex_count,
            max_dim,
            simplices: BTreeSet::new(),
        }
    }

    /// The full simplex on `vertex_count` vertices.
    pub fn full(vertex_count: usize, max_dim: usize) -> Self {
        let mut k = Self::new(vertex_count, max_dim);
        k.insert_closed(&(0..vertex_count).collect::<Vec<_>>());
        k
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.simplices.contains(simplex)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter()
    }

    /// Simplices of dimension `k`, in lexicographic order.
    pub fn simplices_of_dim(&self, k: usize) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter().filter(move |s| s.len() == k + 1)
    }

    /// Number of simplices in each dimension `0..=dimension()`.
    pub fn counts(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for s in &self.simplices {
            let d = s.len() - 1;
            if out.len() <= d {
                out.resize(d + 1, 0);
            }
            out[d] += 1;
        }
        out
    }

    /// Largest simplex dimension present, `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts()
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Inserts `simplex` (any order, duplicates collapsed) with all of its
    /// faces of dimension `<= max_dim`.
    pub fn insert_closed(&mut self, simplex: &[usize]) {
        let mut s: Vec<usize> = simplex.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.is_empty() {
            return;
        }
        debug_assert!(s.iter().all(|&v| v < self.vertex_count));
        let cap = self.max_dim + 1;
        if s.len() <= cap && self.simplices.contains(&s) {
            return;
        }
        let mut buf = Vec::with_capacity(cap);
        self.insert_subsets(&s, 0, &mut buf, cap);
    }

    fn insert_subsets(&mut self, s: &[usize], start: usize, buf: &mut Vec<usize>, cap: usize) {
        for i in start..s.len() {
            buf.push(s[i]);
            self.simplices.insert(buf.clone());
            if buf.len() < cap {
                self.insert_subsets(s, i + 1, buf, cap);
            }
            buf.pop();
        }
    }

    /// Every face of every stored simplex (up to `max_dim`) is stored.
    pub fn is_closed(&self) -> bool {
        self.simplices.iter().all(|s| {
            s.len() == 1
                || (0..s.len()).all(|i| {
                    let mut f = s.clone();
                    f.remove(i);
                    self.simplices.contains(&f)
                })
        })
    }

    /// One simplex per line, space-separated sorted vertices, lines sorted.
    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        for s in &self.simplices {
            let line: Vec<String> = s.iter().map(usize::to_string).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
