//! Z/2 persistent homology of filtered simplicial complexes.
//!
//! Filtrations are built from weighted graphs (flag / clique expansion) or
//! directly from a distance matrix (Vietoris-Rips), and reduced with the
//! standard column algorithm plus clearing.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::metric::{DistanceMatrix, Threshold};
use crate::scalar::{fmt_scalar, Scalar};
use crate::tower::FilteredGraph;

/// Largest point count accepted by [`rips_filtration`].
pub const DEFAULT_RIPS_CAP: usize = 2_000;

/// Largest complex (in simplices) accepted by [`betti`].
pub const DEFAULT_BETTI_CAP: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq)]
pub struct FilteredSimplex<T> {
    pub vertices: Vec<usize>,
    pub birth: T,
}

impl<T> FilteredSimplex<T> {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// Simplices in filtration order: by birth, then dimension, then vertices.
///
/// A complex produced by clique expansion up to dimension `max_dim` is
/// `truncated`: its homology is only complete below `max_dim`, so the barcode
/// reports degrees `0..max_dim`. A complex given in full reports every degree
/// up to `max_dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct FilteredComplex<T> {
    simplices: Vec<FilteredSimplex<T>>,
    max_dim: usize,
    truncated: bool,
}

impl<T: Scalar> FilteredComplex<T> {
    /// Sorts into filtration order and checks that every face is present and
    /// not born after its coface.
    pub fn new(mut simplices: Vec<FilteredSimplex<T>>, truncated: bool) -> Result<Self> {
        for s in &mut simplices {
            s.vertices.sort_unstable();
            if !s.birth.is_finite() {
                return Err(Error::InvalidMatrix(format!(
                    "simplex {:?} has non-finite birth",
                    s.vertices
                )));
            }
        }
        simplices.retain(|s| !s.vertices.is_empty());
        simplices.sort_by(|a, b| {
            a.birth
                .cmp_finite(&b.birth)
                .then(a.vertices.len().cmp(&b.vertices.len()))
                .then_with(|| a.vertices.cmp(&b.vertices))
        });
        let max_dim = simplices.iter().map(|s| s.dim()).max().unwrap_or(0);
        let fc = Self {
            simplices,
            max_dim,
            truncated,
        };
        fc.index_and_check()?;
        Ok(fc)
    }

    /// All simplices of a static complex, born at 0.
    pub fn from_static(k: &SimplicialComplex) -> Self {
        let simplices = k
            .iter()
            .map(|s| FilteredSimplex {
                vertices: s.clone(),
                birth: T::zero(),
            })
            .collect();
        Self::new(simplices, false).expect("static complexes are closed")
    }

    pub fn simplices(&self) -> &[FilteredSimplex<T>] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// Highest homological degree with a complete barcode.
    pub fn reported_degree(&self) -> Option<usize> {
        if self.truncated {
            self.max_dim.checked_sub(1)
        } else {
            Some(self.max_dim)
        }
    }

    /// Simplex counts per dimension `0..=max_dim`.
    pub fn counts(&self) -> Vec<usize> {
        let mut out = vec![0; self.max_dim + 1];
        for s in &self.simplices {
            out[s.dim()] += 1;
        }
        if self.simplices.is_empty() {
            out.clear();
        }
        out
    }

    /// Boundary columns (ascending face indices), validating face order.
    fn index_and_check(&self) -> Result<Vec<Vec<usize>>> {
        let mut index: HashMap<&[usize], usize> = HashMap::with_capacity(self.simplices.len());
        let mut columns = Vec::with_capacity(self.simplices.len());
        for (j, s) in self.simplices.iter().enumerate() {
            let mut col = Vec::with_capacity(s.vertices.len());
            if s.vertices.len() > 1 {
                let mut face = Vec::with_capacity(s.vertices.len() - 1);
                for skip in 0..s.vertices.len() {
                    face.clear();
                    face.extend(
                        s.vertices
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != skip)
                            .map(|(_, &v)| v),
                    );
                    match index.get(face.as_slice()) {
                        Some(&i) => col.push(i),
                        None => {
                            return Err(Error::FaceOrder {
                                simplex: s.vertices.clone(),
                                face: face.clone(),
                            })
                        }
                    }
                }
                col.sort_unstable();
            }
            index.insert(&s.vertices, j);
            columns.push(col);
        }
        Ok(columns)
    }
}

/// Clique filtration of a weighted graph: every clique on at most
/// `max_dim + 1` vertices, born at the largest of its edge weights.
fn clique_filtration<T: Scalar>(
    n: usize,
    edges: impl IntoIterator<Item = (usize, usize, T)>,
    max_dim: usize,
) -> FilteredComplex<T> {
    // upper[u] holds (v, w) for v > u, sorted by v
    let mut upper: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
    for (u, v, w) in edges {
        let (a, b) = (u.min(v), u.max(v));
        upper[a].push((b, w));
    }
    for list in &mut upper {
        list.sort_by_key(|&(v, _)| v);
        list.dedup_by_key(|&mut (v, _)| v);
    }
    let weight = |a: usize, b: usize| -> T {
        let (a, b) = (a.min(b), a.max(b));
        let list = &upper[a];
        list[list.binary_search_by_key(&b, |&(v, _)| v).expect("edge present")].1
    };
    let mut out: Vec<FilteredSimplex<T>> = (0..n)
        .map(|v| FilteredSimplex {
            vertices: vec![v],
            birth: T::zero(),
        })
        .collect();

    fn extend<T: Scalar>(
        clique: &mut Vec<usize>,
        birth: T,
        candidates: &[usize],
        upper: &[Vec<(usize, T)>],
        weight: &dyn Fn(usize, usize) -> T,
        cap: usize,
        out: &mut Vec<FilteredSimplex<T>>,
    ) {
        for (i, &w) in candidates.iter().enumerate() {
            let b = clique.iter().fold(birth, |m, &c| m.max(weight(c, w)));
            clique.push(w);
            out.push(FilteredSimplex {
                vertices: clique.clone(),
                birth: b,
            });
            if clique.len() < cap {
                // common higher neighbors of the clique and w
                let next: Vec<usize> = candidates[i + 1..]
                    .iter()
                    .copied()
                    .filter(|&x| upper[w].binary_search_by_key(&x, |&(v, _)| v).is_ok())
                    .collect();
                if !next.is_empty() {
                    extend(clique, b, &next, upper, weight, cap, out);
                }
            }
            clique.pop();
        }
    }

    if max_dim >= 1 {
        let mut clique = Vec::with_capacity(max_dim + 1);
        for v in 0..n {
            let cands: Vec<usize> = upper[v].iter().map(|&(x, _)| x).collect();
            clique.push(v);
            extend(&mut clique, T::zero(), &cands, &upper, &weight, max_dim + 1, &mut out);
            clique.pop();
        }
    }
    let mut fc = FilteredComplex::new(out, true).expect("clique expansions are closed");
    fc.max_dim = max_dim;
    fc
}

/// Flag filtration of a filtered graph, simplices up to dimension `max_dim`.
pub fn flag_filtration<T: Scalar>(g: &FilteredGraph<T>, max_dim: usize) -> FilteredComplex<T> {
    clique_filtration(g.n(), g.edges().iter().map(|e| (e.u, e.v, e.birth)), max_dim)
}

/// Vietoris-Rips filtration: simplices of diameter `<= threshold`, up to
/// dimension `max_dim`, born at their diameter.
pub fn rips_filtration<T: Scalar>(
    dm: &DistanceMatrix<T>,
    threshold: Threshold<T>,
    max_dim: usize,
) -> Result<FilteredComplex<T>> {
    let n = dm.len();
    if n > DEFAULT_RIPS_CAP {
        return Err(Error::CapExceeded {
            what: "points for Vietoris-Rips",
            size: n,
            cap: DEFAULT_RIPS_CAP,
        });
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter_map(|(u, v)| {
        let d = dm.get(u, v);
        threshold.admits(d).then_some((u, v, d))
    });
    Ok(clique_filtration(n, edges.collect::<Vec<_>>(), max_dim))
}

/// One persistence interval; `death` is `+inf` for essential classes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval<T> {
    pub degree: usize,
    pub birth: T,
    pub death: T,
}

impl<T: Scalar> Interval<T> {
    pub fn is_essential(&self) -> bool {
        self.death.is_infinite()
    }
}

/// Multiset of intervals, kept sorted by (degree, birth, death).
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Barcode<T> {
    intervals: Vec<Interval<T>>,
}

impl<T: Scalar> Barcode<T> {
    pub fn new(mut intervals: Vec<Interval<T>>) -> Self {
        intervals.sort_by(|a, b| {
            a.degree
                .cmp(&b.degree)
                .then(a.birth.cmp_finite(&b.birth))
                .then(a.death.cmp_finite(&b.death))
        });
        Self { intervals }
    }

    /// Builds from `(degree, birth, death)` triples.
    pub fn from_triples(triples: &[(usize, T, T)]) -> Self {
        Self::new(
            triples
                .iter()
                .map(|&(degree, birth, death)| Interval {
                    degree,
                    birth,
                    death,
                })
                .collect(),
        )
    }

    pub fn intervals(&self) -> &[Interval<T>] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// `(birth, death)` pairs in one degree.
    pub fn degree(&self, k: usize) -> Vec<(T, T)> {
        self.intervals
            .iter()
            .filter(|i| i.degree == k)
            .map(|i| (i.birth, i.death))
            .collect()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.intervals.iter().map(|i| i.degree).max()
    }

    /// Number of essential classes per degree.
    pub fn essential_counts(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for i in self.intervals.iter().filter(|i| i.is_essential()) {
            if out.len() <= i.degree {
                out.resize(i.degree + 1, 0);
            }
            out[i.degree] += 1;
        }
        out
    }

    /// Barcode with every endpoint replaced by its natural logarithm (0 maps
    /// to `-inf`). Multiplicative shifts become additive ones.
    pub fn log_rescale(&self) -> Result<Self> {
        let mut out = Vec::with_capacity(self.intervals.len());
        for i in &self.intervals {
            for x in [i.birth, i.death] {
                if x < T::zero() {
                    return Err(Error::NegativeEndpoint(x.to_f64_lossy()));
                }
            }
            out.push(Interval {
                degree: i.degree,
                birth: i.birth.ln(),
                death: i.death.ln(),
            });
        }
        Ok(Self::new(out))
    }

    /// `degree birth death` per line, `inf` for essential classes.
    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        for i in &self.intervals {
            writeln!(w, "{} {} {}", i.degree, fmt_scalar(i.birth), fmt_scalar(i.death))?;
        }
        Ok(())
    }

    pub fn read_text<R: BufRead>(reader: R) -> Result<Self> {
        let mut out = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let bad = |message: &str| Error::Format {
                format: "barcode",
                line: i + 1,
                message: message.into(),
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(bad("expected 3 fields"));
            }
            let degree = toks[0].parse().map_err(|_| bad("bad degree"))?;
            let birth: T = toks[1].parse().map_err(|_| bad("bad birth"))?;
            let death: T = if toks[2] == "inf" {
                T::infinity()
            } else {
                toks[2].parse().map_err(|_| bad("bad death"))?
            };
            if !(birth <= death) {
                return Err(bad("birth after death"));
            }
            out.push(Interval {
                degree,
                birth,
                death,
            });
        }
        Ok(Self::new(out))
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct PersistenceOptions {
    /// Keep intervals with `birth == death`.
    pub keep_zero_length: bool,
}

/// Barcode of a filtration, zero-length intervals omitted.
pub fn compute_persistence<T: Scalar>(fc: &FilteredComplex<T>) -> Result<Barcode<T>> {
    compute_persistence_with(fc, PersistenceOptions::default())
}

pub fn compute_persistence_with<T: Scalar>(
    fc: &FilteredComplex<T>,
    opts: PersistenceOptions,
) -> Result<Barcode<T>> {
    let mut columns = fc.index_and_check()?;
    let simplices = &fc.simplices;
    let m = simplices.len();
    let Some(top_degree) = fc.reported_degree() else {
        return Ok(Barcode::default());
    };
    let mut owner: Vec<Option<usize>> = vec![None; m];
    let mut cleared = vec![false; m];
    let mut intervals = Vec::new();
    // top dimension first so that pivots clear the columns below
    for dim in (1..=fc.max_dim).rev() {
        for j in 0..m {
            if simplices[j].dim() != dim || cleared[j] {
                continue;
            }
            let mut col = std::mem::take(&mut columns[j]);
            while let Some(&low) = col.last() {
                match owner[low] {
                    Some(k) => col = symmetric_difference(&col, &columns[k]),
                    None => break,
                }
            }
            if let Some(&low) = col.last() {
                owner[low] = Some(j);
                cleared[low] = true;
                let degree = dim - 1;
                let (birth, death) = (simplices[low].birth, simplices[j].birth);
                if degree <= top_degree && (opts.keep_zero_length || birth < death) {
                    intervals.push(Interval {
                        degree,
                        birth,
                        death,
                    });
                }
            }
            columns[j] = col;
        }
    }
    for (i, s) in simplices.iter().enumerate() {
        let d = s.dim();
        // essential: never a pivot, and its own column reduced to zero
        if d <= top_degree && owner[i].is_none() && columns[i].is_empty() {
            intervals.push(Interval {
                degree: d,
                birth: s.birth,
                death: T::infinity(),
            });
        }
    }
    Ok(Barcode::new(intervals))
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Z/2 Betti numbers, one entry per degree `0..=dimension`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    /// Entry for degree `k`, zero beyond the stored range.
    pub fn get(&self, k: usize) -> usize {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// Equal after dropping trailing zeros.
    pub fn same_as(&self, other: &BettiVector) -> bool {
        (0..self.0.len().max(other.0.len())).all(|k| self.get(k) == other.get(k))
    }
}

/// Betti numbers by Gaussian elimination on each boundary matrix over Z/2:
/// `b_k = dim C_k - rank d_k - rank d_{k+1}`.
pub fn betti(k: &SimplicialComplex) -> Result<BettiVector> {
    if k.len() > DEFAULT_BETTI_CAP {
        return Err(Error::CapExceeded {
            what: "simplices for Betti numbers",
            size: k.len(),
            cap: DEFAULT_BETTI_CAP,
        });
    }
    let counts = k.counts();
    if counts.is_empty() {
        return Ok(BettiVector::default());
    }
    let top = counts.len() - 1;
    let mut index: Vec<HashMap<&[usize], usize>> = vec![HashMap::new(); top + 1];
    for s in k.iter() {
        let d = s.len() - 1;
        let next = index[d].len();
        index[d].insert(s.as_slice(), next);
    }
    // rank[d] = rank of the boundary map C_d -> C_{d-1}
    let mut rank = vec![0usize; top + 2];
    for d in 1..=top {
        let words = counts[d - 1].div_ceil(64);
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(counts[d]);
        for s in k.simplices_of_dim(d) {
            let mut row = vec![0u64; words];
            for skip in 0..s.len() {
                let face: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                let f = index[d - 1][face.as_slice()];
                row[f / 64] ^= 1 << (f % 64);
            }
            rows.push(row);
        }
        rank[d] = gf2_rank(rows, words);
    }
    Ok(BettiVector(
        (0..=top).map(|d| counts[d] - rank[d] - rank[d + 1]).collect(),
    ))
}

fn gf2_rank(mut rows: Vec<Vec<u64>>, words: usize) -> usize {
    let mut rank = 0;
    for bit in 0..words * 64 {
        let (w, mask) = (bit / 64, 1u64 << (bit % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & mask != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & mask != 0 {
                row.iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= y);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{pairwise_distances, sorted_edges, PointCloud};
    use crate::tower::build_filtered_skeleton;

    fn sq4() -> DistanceMatrix<f64> {
        pairwise_distances(&PointCloud::read_csv("0,0\n1,0\n1,1\n0,1\n".as_bytes()).unwrap())
    }

    fn l3() -> DistanceMatrix<f64> {
        DistanceMatrix::from_fn(3, |i, j| (j - i) as f64)
    }

    #[test]
    fn flag_filtration_fixtures() {
        let g = build_filtered_skeleton(3, &sorted_edges(&l3(), Threshold::Unbounded)).unwrap();
        let fc = flag_filtration(&g, 2);
        let tri = fc.simplices().iter().find(|s| s.dim() == 2).unwrap();
        assert_eq!(tri.birth, 2.0);
        let empty = FilteredGraph::<f64>::new(3, vec![]).unwrap();
        assert_eq!(flag_filtration(&empty, 2).counts(), vec![3, 0, 0]);
        let full = FilteredGraph::new(
            4,
            sorted_edges(&sq4(), Threshold::Unbounded)
                .edges()
                .iter()
                .map(|e| crate::tower::FilteredEdge { u: e.u, v: e.v, birth: e.dist })
                .collect(),
        )
        .unwrap();
        let fc = flag_filtration(&full, 2);
        assert_eq!(fc.counts(), vec![4, 6, 4]);
        let r2 = 2f64.sqrt();
        assert!(fc.simplices().iter().filter(|s| s.dim() == 2).all(|s| s.birth == r2));
    }

    #[test]
    fn rips_fixtures() {
        let r2 = 2f64.sqrt();
        assert_eq!(rips_filtration(&sq4(), Threshold::Finite(r2), 2).unwrap().counts(), vec![4, 6, 4]);
        assert_eq!(rips_filtration(&sq4(), Threshold::Finite(0.5), 2).unwrap().counts(), vec![4, 0, 0]);
        let fc = rips_filtration(&l3(), Threshold::Finite(2.0), 2).unwrap();
        assert_eq!(fc.counts(), vec![3, 3, 1]);
        assert_eq!(fc.simplices().last().unwrap().birth, 2.0);
    }

    #[test]
    fn square_barcode() {
        let r2 = 2f64.sqrt();
        let fc = rips_filtration(&sq4(), Threshold::Unbounded, 2).unwrap();
        let bc = compute_persistence(&fc).unwrap();
        assert_eq!(bc.degree(1), vec![(1.0, r2)]);
        assert_eq!(
            bc.degree(0),
            vec![(0.0, 1.0), (0.0, 1.0), (0.0, 1.0), (0.0, f64::INFINITY)]
        );
        assert_eq!(bc.max_degree(), Some(1));
    }

    #[test]
    fn single_vertex_and_line() {
        let one = DistanceMatrix::<f64>::from_fn(1, |_, _| 0.0);
        let bc = compute_persistence(&rips_filtration(&one, Threshold::Unbounded, 1).unwrap()).unwrap();
        assert_eq!(bc.intervals(), &[Interval { degree: 0, birth: 0.0, death: f64::INFINITY }]);

        let g = build_filtered_skeleton(3, &sorted_edges(&l3(), Threshold::Unbounded)).unwrap();
        let bc = compute_persistence(&flag_filtration(&g, 2)).unwrap();
        assert_eq!(bc.degree(0), vec![(0.0, 1.0), (0.0, 1.0), (0.0, f64::INFINITY)]);
        assert!(bc.degree(1).is_empty());
    }

    #[test]
    fn zero_length_bars_kept_on_request() {
        let fc = rips_filtration(&sq4(), Threshold::Unbounded, 3).unwrap();
        let plain = compute_persistence(&fc).unwrap();
        let all = compute_persistence_with(&fc, PersistenceOptions { keep_zero_length: true }).unwrap();
        assert!(all.len() > plain.len());
        assert!(all.intervals().iter().any(|i| i.degree == 2 && i.birth == i.death));
    }

    #[test]
    fn face_order_violation_is_reported() {
        let bad = vec![
            FilteredSimplex { vertices: vec![0], birth: 0.0 },
            FilteredSimplex { vertices: vec![1], birth: 2.0 },
            FilteredSimplex { vertices: vec![0, 1], birth: 1.0 },
        ];
        match FilteredComplex::new(bad, false) {
            Err(Error::FaceOrder { simplex, face }) => {
                assert_eq!(simplex, vec![0, 1]);
                assert_eq!(face, vec![1]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn betti_fixtures() {
        let mut hollow = SimplicialComplex::new(3, 2);
        for e in [[0, 1], [1, 2], [0, 2]] {
            hollow.insert_closed(&e);
        }
        assert_eq!(betti(&hollow).unwrap(), BettiVector(vec![1, 1]));
        assert_eq!(betti(&SimplicialComplex::full(4, 3)).unwrap(), BettiVector(vec![1, 0, 0, 0]));
        let mut two = SimplicialComplex::new(2, 0);
        two.insert_closed(&[0]);
        two.insert_closed(&[1]);
        assert_eq!(betti(&two).unwrap(), BettiVector(vec![2]));
        // boundary of the tetrahedron is a 2-sphere
        let sphere = {
            let mut k = SimplicialComplex::new(4, 2);
            for t in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
                k.insert_closed(&t);
            }
            k
        };
        let b = betti(&sphere).unwrap();
        assert_eq!(b, BettiVector(vec![1, 0, 1]));
        assert_eq!(b.euler_characteristic(), sphere.euler_characteristic());
        let static_bc = compute_persistence(&FilteredComplex::<f64>::from_static(&sphere)).unwrap();
        assert_eq!(static_bc.essential_counts(), vec![1, 0, 1]);
    }

    #[test]
    fn barcode_text_round_trip() {
        let bc = compute_persistence(&rips_filtration(&sq4(), Threshold::Unbounded, 2).unwrap()).unwrap();
        let mut buf = Vec::new();
        bc.write_text(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.contains("0 0 inf"));
        assert_eq!(Barcode::<f64>::read_text(buf.as_slice()).unwrap(), bc);
        assert!(Barcode::<f64>::read_text("0 2 1\n".as_bytes()).is_err());
    }
}
