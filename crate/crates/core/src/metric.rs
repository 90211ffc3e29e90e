//! Finite metric spaces: point clouds, dense distance matrices, sorted edge
//! lists and the derived quantities the pipeline needs (enclosing radius,
//! quotient metric).

use std::cmp::Ordering;
use std::fmt;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::scalar::{fmt_scalar, Scalar};

/// Points in `R^dim`, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud<T> {
    dim: usize,
    coords: Vec<T>,
}

impl<T: Scalar> PointCloud<T> {
    pub fn new(points: Vec<Vec<T>>) -> Result<Self> {
        let dim = points.first().map(Vec::len).ok_or(Error::EmptyInput)?;
        if dim == 0 {
            return Err(Error::EmptyInput);
        }
        let mut coords = Vec::with_capacity(points.len() * dim);
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::RaggedRow {
                    row: i + 1,
                    expected: dim,
                    found: p.len(),
                });
            }
            if let Some(c) = p.iter().position(|x| !x.is_finite()) {
                return Err(Error::Parse {
                    row: i + 1,
                    column: c + 1,
                    message: "non-finite coordinate".into(),
                });
            }
            coords.extend_from_slice(p);
        }
        Ok(Self { dim, coords })
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[T] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[T]> {
        self.coords.chunks_exact(self.dim)
    }

    /// Reads one point per line, comma-separated. Blank lines are skipped;
    /// anything that is not a number (including a header row) is an error.
    pub fn read_csv<R: BufRead>(reader: R) -> Result<Self> {
        let mut points = Vec::new();
        let mut dim = None;
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let row = lineno + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let mut p = Vec::new();
            for (c, tok) in trimmed.split(',').enumerate() {
                let tok = tok.trim();
                let x: T = tok.parse().map_err(|_| Error::Parse {
                    row,
                    column: c + 1,
                    message: format!("not a number: {tok:?}"),
                })?;
                p.push(x);
            }
            match dim {
                None => dim = Some(p.len()),
                Some(d) if d != p.len() => {
                    return Err(Error::RaggedRow {
                        row,
                        expected: d,
                        found: p.len(),
                    })
                }
                _ => {}
            }
            points.push(p);
        }
        Self::new(points)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        for p in self.iter() {
            let row: Vec<String> = p.iter().map(|&x| fmt_scalar(x)).collect();
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// Dense symmetric distance matrix over `n` points.
#[derive(Clone, PartialEq)]
pub struct DistanceMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> fmt::Debug for DistanceMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_list();
        for i in 0..self.n {
            l.entry(&&self.data[i * self.n..(i + 1) * self.n]);
        }
        l.finish()
    }
}

impl<T: Scalar> DistanceMatrix<T> {
    /// Wraps row-major data of length `n * n`. No metric checks are made; see
    /// [`DistanceMatrix::validate`].
    pub fn from_raw(n: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for n = {n}, found {}",
                n * n,
                data.len()
            )));
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != n {
                return Err(Error::RaggedRow {
                    row: i + 1,
                    expected: n,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(Self { n, data })
    }

    /// Builds a symmetric matrix from `f(i, j)` evaluated for `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = f(i, j);
                data[i * n + j] = d;
                data[j * n + i] = d;
            }
        }
        Self { n, data }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Largest entry; zero for `n <= 1`.
    pub fn max_entry(&self) -> T {
        self.data.iter().fold(T::zero(), |m, &x| m.max(x))
    }

    /// Matrix restricted to `idx` (in the given order).
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), |a, b| self.get(idx[a], idx[b]))
    }

    /// Matrix of the relabeled space: entry `(perm[i], perm[j])` of the result
    /// equals entry `(i, j)` of `self`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut inv = vec![0; self.n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        Self::from_fn(self.n, |a, b| self.get(inv[a], inv[b]))
    }

    /// Scans for structural violations and, when `check_triangle` is set, for
    /// triangle-inequality violations (reported as warnings).
    pub fn validate(&self, check_triangle: bool) -> ValidationReport {
        let n = self.n;
        let mut report = ValidationReport::default();
        for i in 0..n {
            let dii = self.get(i, i);
            if !dii.is_finite() {
                report.violations.push(Violation::NonFinite { i, j: i });
            } else if dii != T::zero() {
                report.violations.push(Violation::NonzeroDiagonal { i });
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                let d = self.get(i, j);
                if !d.is_finite() {
                    if i < j {
                        report.violations.push(Violation::NonFinite { i, j });
                    }
                    continue;
                }
                if d < T::zero() {
                    report.violations.push(Violation::Negative { i, j });
                }
                if i < j && d != self.get(j, i) {
                    report.violations.push(Violation::Asymmetric { i, j });
                }
            }
        }
        if check_triangle && report.violations.is_empty() {
            for a in 0..n {
                for c in a + 1..n {
                    let dac = self.get(a, c);
                    for b in 0..n {
                        if b != a && b != c && dac > self.get(a, b) + self.get(b, c) {
                            report.triangle_warnings.push(TriangleWarning { a, via: b, c });
                        }
                    }
                }
            }
        }
        report
    }

    /// Fails on the first structural violation. Triangle warnings are not
    /// errors.
    pub fn validate_strict(&self) -> Result<()> {
        match self.validate(false).violations.first() {
            Some(v) => Err(Error::InvalidMatrix(v.to_string())),
            None => Ok(()),
        }
    }

    /// Reads the lower-triangular text format: line `k` holds `d[k][0..k]`
    /// separated by commas and/or whitespace. The (empty) row for point 0 may
    /// be present as a leading blank line or omitted.
    pub fn read_lower_triangular<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines: Vec<String> = reader.lines().collect::<std::io::Result<_>>()?;
        while lines.last().is_some_and(|l| l.trim().is_empty()) {
            lines.pop();
        }
        let skip = usize::from(lines.first().is_some_and(|l| l.trim().is_empty()));
        let n = lines.len() - skip + 1;
        let mut data = vec![T::zero(); n * n];
        for (k, line) in lines.iter().enumerate().skip(skip) {
            let row = k - skip + 1;
            let toks: Vec<&str> = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .collect();
            if toks.len() != row {
                return Err(Error::RaggedRow {
                    row: k + 1,
                    expected: row,
                    found: toks.len(),
                });
            }
            for (col, tok) in toks.iter().enumerate() {
                let d: T = tok.parse().map_err(|_| Error::Parse {
                    row: k + 1,
                    column: col + 1,
                    message: format!("not a number: {tok:?}"),
                })?;
                data[row * n + col] = d;
                data[col * n + row] = d;
            }
        }
        let dm = Self { n, data };
        dm.validate_strict()?;
        Ok(dm)
    }

    /// Writes the lower-triangular format without the leading empty row.
    pub fn write_lower_triangular<W: Write>(&self, mut w: W) -> Result<()> {
        for i in 1..self.n {
            let row: Vec<String> = (0..i).map(|j| fmt_scalar(self.get(i, j))).collect();
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// Euclidean distances. Each entry sums squared coordinate differences in
/// coordinate order, so the result does not depend on evaluation order.
pub fn pairwise_distances<T: Scalar>(pc: &PointCloud<T>) -> DistanceMatrix<T> {
    DistanceMatrix::from_fn(pc.len(), |i, j| euclidean(pc.point(i), pc.point(j)))
}

pub(crate) fn euclidean<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (&x, &y)| acc + (x - y) * (x - y))
        .sqrt()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Asymmetric { i: usize, j: usize },
    NonzeroDiagonal { i: usize },
    Negative { i: usize, j: usize },
    NonFinite { i: usize, j: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Asymmetric { i, j } => write!(f, "asymmetric entry at ({i},{j})"),
            Violation::NonzeroDiagonal { i } => write!(f, "nonzero diagonal at ({i},{i})"),
            Violation::Negative { i, j } => write!(f, "negative entry at ({i},{j})"),
            Violation::NonFinite { i, j } => write!(f, "non-finite entry at ({i},{j})"),
        }
    }
}

/// `d(a, c) > d(a, via) + d(via, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriangleWarning {
    pub a: usize,
    pub via: usize,
    pub c: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub triangle_warnings: Vec<TriangleWarning>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.triangle_warnings.is_empty()
    }
}

/// Upper bound on edge length kept in a [`SortedEdgeList`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Threshold<T> {
    Finite(T),
    Unbounded,
}

impl<T: Scalar> Threshold<T> {
    #[inline]
    pub fn admits(&self, d: T) -> bool {
        match *self {
            Threshold::Finite(t) => d <= t,
            Threshold::Unbounded => true,
        }
    }

    pub fn value(&self) -> Option<T> {
        match *self {
            Threshold::Finite(t) => Some(t),
            Threshold::Unbounded => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge<T> {
    pub u: usize,
    pub v: usize,
    pub dist: T,
}

/// Edges with `dist <= threshold`, ascending by distance then `(u, v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SortedEdgeList<T> {
    n: usize,
    edges: Vec<Edge<T>>,
    threshold: Threshold<T>,
}

impl<T: Scalar> SortedEdgeList<T> {
    /// Sorts arbitrary edges into canonical order, normalizing `u < v`.
    /// Self-loops are dropped.
    pub fn from_edges(n: usize, edges: Vec<Edge<T>>, threshold: Threshold<T>) -> Result<Self> {
        let mut out = Vec::with_capacity(edges.len());
        for e in edges {
            for x in [e.u, e.v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { index: x, n });
                }
            }
            if !(e.dist.is_finite() && e.dist >= T::zero()) {
                return Err(Error::InvalidMatrix(format!(
                    "edge ({}, {}) has invalid length {}",
                    e.u, e.v, e.dist
                )));
            }
            if e.u != e.v && threshold.admits(e.dist) {
                out.push(Edge {
                    u: e.u.min(e.v),
                    v: e.u.max(e.v),
                    dist: e.dist,
                });
            }
        }
        out.sort_by(edge_order);
        Ok(Self {
            n,
            edges: out,
            threshold,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn threshold(&self) -> Threshold<T> {
        self.threshold
    }

    /// Maximal runs of equal distance, in order.
    pub fn tie_batches(&self) -> impl Iterator<Item = &[Edge<T>]> {
        self.edges.chunk_by(|a, b| a.dist == b.dist)
    }
}

fn edge_order<T: Scalar>(a: &Edge<T>, b: &Edge<T>) -> Ordering {
    a.dist
        .cmp_finite(&b.dist)
        .then(a.u.cmp(&b.u))
        .then(a.v.cmp(&b.v))
}

pub fn sorted_edges<T: Scalar>(dm: &DistanceMatrix<T>, threshold: Threshold<T>) -> SortedEdgeList<T> {
    let n = dm.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let dist = dm.get(u, v);
            if threshold.admits(dist) {
                edges.push(Edge { u, v, dist });
            }
        }
    }
    edges.sort_by(edge_order);
    SortedEdgeList {
        n,
        edges,
        threshold,
    }
}

/// `min_x max_y d(x, y)`; zero for a single point.
pub fn enclosing_radius<T: Scalar>(dm: &DistanceMatrix<T>) -> T {
    if dm.is_empty() {
        return T::zero();
    }
    (0..dm.len())
        .map(|x| dm.row(x).iter().fold(T::zero(), |m, &d| m.max(d)))
        .fold(T::infinity(), |m, r| m.min(r))
}

/// Single-linkage distance between blocks: `min d(x, y)` over cross pairs.
pub fn quotient_metric<T: Scalar>(dm: &DistanceMatrix<T>, p: &Partition) -> Result<DistanceMatrix<T>> {
    if p.universe_size() != dm.len() {
        return Err(Error::InvalidPartition(format!(
            "partition of {} elements applied to {} points",
            p.universe_size(),
            dm.len()
        )));
    }
    let k = p.len();
    let mut data = vec![T::infinity(); k * k];
    for i in 0..k {
        data[i * k + i] = T::zero();
    }
    let n = dm.len();
    for x in 0..n {
        let bx = p.block_of(x);
        for y in x + 1..n {
            let by = p.block_of(y);
            if bx != by {
                let d = dm.get(x, y);
                if d < data[bx * k + by] {
                    data[bx * k + by] = d;
                    data[by * k + bx] = d;
                }
            }
        }
    }
    DistanceMatrix::from_raw(k, data)
}
