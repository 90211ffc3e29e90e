//! Persistent clique partitions from complete linkage.
//!
//! Two clusterings are provided over a [`SortedEdgeList`]:
//!
//! * [`complete_linkage`] is the textbook greedy algorithm: it merges a pair of
//!   clusters the moment the edge just processed makes every cross pair
//!   present. With ties its output depends on edge order.
//! * [`conservative_complete_linkage`] waits until a whole batch of equal
//!   distances has been seen, then merges each connected component of the
//!   cluster graph only if that component is a clique. The result depends only
//!   on the metric and every block of the partition at scale `r` has diameter
//!   at most `r`.
//!
//! Both track cluster adjacency by counting original edges between clusters:
//! clusters `A` and `B` have complete-linkage cost `<= d` exactly when
//! `edges[A][B] == size[A] * size[B]`.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::metric::{DistanceMatrix, Edge, SortedEdgeList};
use crate::partition::Partition;
use crate::scalar::{fmt_scalar, Scalar};
use crate::union_find::UnionFind;

/// `loser` was absorbed into `winner` at scale `dist`. Both are original point
/// indices that were cluster roots at the time of the merge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MergeEvent<T> {
    pub winner: usize,
    pub loser: usize,
    pub dist: T,
}

/// Sequence of merges; the persistent partition is read off with
/// [`MergeHistory::partition_at`].
#[derive(Clone, Debug, PartialEq)]
pub struct MergeHistory<T> {
    n: usize,
    events: Vec<MergeEvent<T>>,
}

impl<T: Scalar> MergeHistory<T> {
    pub fn new(n: usize, events: Vec<MergeEvent<T>>) -> Result<Self> {
        let mut uf = UnionFind::new(n);
        let mut last = T::neg_infinity();
        for e in &events {
            for x in [e.winner, e.loser] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { index: x, n });
                }
            }
            if e.dist < last {
                return Err(Error::InvalidPartition(
                    "merge distances must be nondecreasing".into(),
                ));
            }
            last = e.dist;
            if uf.union_into(e.loser, e.winner).is_none() {
                return Err(Error::InvalidPartition(format!(
                    "merge of {} into {} closes a cycle",
                    e.loser, e.winner
                )));
            }
        }
        Ok(Self { n, events })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn events(&self) -> &[MergeEvent<T>] {
        &self.events
    }

    /// Distinct merge distances, ascending.
    pub fn critical_scales(&self) -> Vec<T> {
        let mut out: Vec<T> = self.events.iter().map(|e| e.dist).collect();
        out.dedup();
        out
    }

    /// Partition whose blocks are the components of the merge forest restricted
    /// to events with `dist <= r`.
    pub fn partition_at(&self, r: T) -> Partition {
        let mut uf = UnionFind::new(self.n);
        for e in self.events.iter().take_while(|e| e.dist <= r) {
            uf.union_into(e.loser, e.winner);
        }
        let labels: Vec<usize> = (0..self.n).map(|x| uf.find(x)).collect();
        Partition::from_labels(&labels)
    }

    /// Writes one `winner loser dist` line per event.
    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        for e in &self.events {
            writeln!(w, "{} {} {}", e.winner, e.loser, fmt_scalar(e.dist))?;
        }
        Ok(())
    }

    pub fn read_text<R: BufRead>(n: usize, reader: R) -> Result<Self> {
        let mut events = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let bad = |message: String| Error::Format {
                format: "merge history",
                line: i + 1,
                message,
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(bad(format!("expected 3 fields, found {}", toks.len())));
            }
            let winner = toks[0].parse().map_err(|_| bad("bad winner".into()))?;
            let loser = toks[1].parse().map_err(|_| bad("bad loser".into()))?;
            let dist = toks[2].parse().map_err(|_| bad("bad distance".into()))?;
            events.push(MergeEvent {
                winner,
                loser,
                dist,
            });
        }
        Self::new(n, events)
    }
}

/// Union-find plus per-root cluster sizes and inter-cluster edge counts.
#[derive(Clone, Debug)]
pub struct ClusterState {
    uf: UnionFind,
    size: Vec<usize>,
    edges: Vec<HashMap<usize, usize>>,
}

impl ClusterState {
    pub fn new(n: usize) -> Self {
        Self {
            uf: UnionFind::new(n),
            size: vec![1; n],
            edges: vec![HashMap::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.size.len()
    }

    pub fn find(&mut self, x: usize) -> usize {
        self.uf.find(x)
    }

    /// Size of the cluster rooted at `root`.
    pub fn size(&self, root: usize) -> usize {
        self.size[root]
    }

    /// Number of original edges seen between the clusters rooted at `a`, `b`.
    pub fn edge_count(&self, a: usize, b: usize) -> usize {
        self.edges[a].get(&b).copied().unwrap_or(0)
    }

    /// Every cross pair of the two clusters has been seen.
    pub fn saturated(&self, a: usize, b: usize) -> bool {
        self.edge_count(a, b) == self.size[a] * self.size[b]
    }

    /// Current cluster roots, ascending.
    pub fn roots(&self) -> Vec<usize> {
        (0..self.n()).filter(|&x| self.uf.is_root(x)).collect()
    }

    /// Records an original edge. Returns the two roots when they differ.
    fn add_edge(&mut self, u: usize, v: usize) -> Option<(usize, usize)> {
        let ru = self.uf.find(u);
        let rv = self.uf.find(v);
        if ru == rv {
            return None;
        }
        *self.edges[ru].entry(rv).or_insert(0) += 1;
        *self.edges[rv].entry(ru).or_insert(0) += 1;
        Some((ru, rv))
    }

    /// Absorbs root `l` into root `w`, aggregating edge counts.
    fn merge(&mut self, w: usize, l: usize) {
        self.uf.union_into(l, w);
        self.size[w] += self.size[l];
        let lost = std::mem::take(&mut self.edges[l]);
        for (x, c) in lost {
            if x == w {
                continue;
            }
            *self.edges[w].entry(x).or_insert(0) += c;
            let xm = &mut self.edges[x];
            xm.remove(&l);
            *xm.entry(w).or_insert(0) += c;
        }
        self.edges[w].remove(&l);
    }

    /// Saturated neighbors of a root (its edges in the cluster graph).
    fn saturated_neighbors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        let sa = self.size[a];
        self.edges[a]
            .iter()
            .filter(move |&(&b, &c)| c == sa * self.size[b])
            .map(|(&b, _)| b)
    }
}

fn check_edges<T: Scalar>(n: usize, e: &SortedEdgeList<T>) -> Result<()> {
    for edge in e.edges() {
        let m = edge.u.max(edge.v);
        if m >= n {
            return Err(Error::VertexOutOfRange { index: m, n });
        }
    }
    Ok(())
}

/// Standard (greedy) complete linkage over a sorted edge stream.
///
/// The winner of a merge is the root with more distinct cluster neighbors,
/// ties going to the lower index.
pub fn complete_linkage<T: Scalar>(n: usize, e: &SortedEdgeList<T>) -> Result<MergeHistory<T>> {
    check_edges(n, e)?;
    let mut state = ClusterState::new(n);
    let mut events = Vec::new();
    for &Edge { u, v, dist } in e.edges() {
        let Some((ru, rv)) = state.add_edge(u, v) else {
            continue;
        };
        if state.saturated(ru, rv) {
            let (du, dv) = (state.edges[ru].len(), state.edges[rv].len());
            let (w, l) = if du > dv || (du == dv && ru < rv) {
                (ru, rv)
            } else {
                (rv, ru)
            };
            state.merge(w, l);
            events.push(MergeEvent {
                winner: w,
                loser: l,
                dist,
            });
        }
    }
    Ok(MergeHistory { n, events })
}

/// Incremental conservative complete linkage.
///
/// Feed every edge of a tie batch with [`ConservativeLinkage::add_edge`], then
/// call [`ConservativeLinkage::contractions`] once with the batch distance.
#[derive(Clone, Debug)]
pub struct ConservativeLinkage {
    state: ClusterState,
    touched: Vec<usize>,
    stamp: Vec<u32>,
    generation: u32,
}

impl ConservativeLinkage {
    pub fn new(n: usize) -> Self {
        Self {
            state: ClusterState::new(n),
            touched: Vec::new(),
            stamp: vec![0; n],
            generation: 0,
        }
    }

    pub fn state(&self) -> &ClusterState {
        &self.state
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.state.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { index: x, n });
            }
        }
        if let Some((ru, rv)) = self.state.add_edge(u, v) {
            self.touched.push(ru);
            self.touched.push(rv);
        }
        Ok(())
    }

    fn next_generation(&mut self) -> u32 {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 1;
        }
        self.generation
    }

    /// Merges every clique component of the cluster graph, repeating until no
    /// component merges. Only components reachable from roots touched since
    /// the last call are examined; every other component is unchanged from
    /// the previous fixed point and cannot merge.
    pub fn contractions<T: Scalar>(&mut self, d: T) -> Vec<MergeEvent<T>> {
        let mut frontier: Vec<usize> = std::mem::take(&mut self.touched)
            .into_iter()
            .map(|x| self.state.find(x))
            .collect();
        let mut out = Vec::new();
        loop {
            frontier.sort_unstable();
            frontier.dedup();
            let gen = self.next_generation();
            let mut components = Vec::new();
            for &start in &frontier {
                if self.stamp[start] == gen {
                    continue;
                }
                self.stamp[start] = gen;
                let mut comp = vec![start];
                let mut head = 0;
                while head < comp.len() {
                    let a = comp[head];
                    head += 1;
                    let next: Vec<usize> = self.state.saturated_neighbors(a).collect();
                    for b in next {
                        if self.stamp[b] != gen {
                            self.stamp[b] = gen;
                            comp.push(b);
                        }
                    }
                }
                if comp.len() >= 2 {
                    components.push(comp);
                }
            }
            // A component is a clique iff each member is saturated with all
            // m - 1 others; saturated neighbors never leave the component.
            let cliques: Vec<Vec<usize>> = components
                .into_iter()
                .filter(|comp| {
                    let m = comp.len();
                    comp.iter()
                        .all(|&a| self.state.saturated_neighbors(a).count() == m - 1)
                })
                .collect();
            if cliques.is_empty() {
                break;
            }
            frontier.clear();
            for mut comp in cliques {
                comp.sort_unstable();
                let w = *comp
                    .iter()
                    .max_by(|&&a, &&b| self.state.size[a].cmp(&self.state.size[b]).then(b.cmp(&a)))
                    .expect("nonempty component");
                for &l in comp.iter().filter(|&&x| x != w) {
                    self.state.merge(w, l);
                    out.push(MergeEvent {
                        winner: w,
                        loser: l,
                        dist: d,
                    });
                }
                frontier.push(w);
            }
        }
        out
    }
}

/// Conservative complete linkage over a sorted edge stream.
pub fn conservative_complete_linkage<T: Scalar>(
    n: usize,
    e: &SortedEdgeList<T>,
) -> Result<MergeHistory<T>> {
    check_edges(n, e)?;
    let mut cl = ConservativeLinkage::new(n);
    let mut events = Vec::new();
    for batch in e.tie_batches() {
        for edge in batch {
            cl.add_edge(edge.u, edge.v)?;
        }
        events.extend(cl.contractions(batch[0].dist));
    }
    Ok(MergeHistory { n, events })
}

/// Largest pairwise distance within `block`; zero for a singleton.
pub fn block_diameter<T: Scalar>(block: &[usize], dm: &DistanceMatrix<T>) -> Result<T> {
    if block.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut diam = T::zero();
    for (i, &x) in block.iter().enumerate() {
        if x >= dm.len() {
            return Err(Error::VertexOutOfRange { index: x, n: dm.len() });
        }
        for &y in &block[i + 1..] {
            diam = diam.max(dm.get(x, y));
        }
    }
    Ok(diam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{sorted_edges, Threshold};

    fn l3() -> DistanceMatrix<f64> {
        DistanceMatrix::from_fn(3, |i, j| (j - i) as f64)
    }

    fn sq4() -> DistanceMatrix<f64> {
        let p = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        DistanceMatrix::from_fn(4, |i, j| {
            let (a, b): ((f64, f64), (f64, f64)) = (p[i], p[j]);
            ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
        })
    }

    fn all_edges(dm: &DistanceMatrix<f64>) -> SortedEdgeList<f64> {
        sorted_edges(dm, Threshold::Unbounded)
    }

    #[test]
    fn standard_linkage_on_line() {
        let h = complete_linkage(3, &all_edges(&l3())).unwrap();
        let dists: Vec<f64> = h.events().iter().map(|e| e.dist).collect();
        assert_eq!(dists, vec![1.0, 2.0]);
        let p1 = h.partition_at(1.0);
        assert_eq!(p1.len(), 2);
        assert_eq!(p1.blocks()[0], vec![0, 1]);
        assert_eq!(h.partition_at(2.0).len(), 1);
    }

    #[test]
    fn conservative_linkage_on_line() {
        let h = conservative_complete_linkage(3, &all_edges(&l3())).unwrap();
        assert!(h.events().iter().all(|e| e.dist == 2.0));
        assert_eq!(h.events().len(), 2);
        assert_eq!(h.partition_at(1.0), Partition::singletons(3));
        assert_eq!(h.partition_at(2.0).blocks(), &[vec![0, 1, 2]]);
        assert_eq!(h.partition_at(0.5), Partition::singletons(3));
    }

    #[test]
    fn trivial_inputs() {
        let e = SortedEdgeList::<f64>::from_edges(1, vec![], Threshold::Unbounded).unwrap();
        assert!(complete_linkage(1, &e).unwrap().events().is_empty());
        assert!(conservative_complete_linkage(1, &e).unwrap().events().is_empty());
    }

    #[test]
    fn square_standard_linkage() {
        let h = complete_linkage(4, &all_edges(&sq4())).unwrap();
        let dists: Vec<f64> = h.events().iter().map(|e| e.dist).collect();
        assert_eq!(dists, vec![1.0, 1.0, 2f64.sqrt()]);
        // edges in order (0,1),(0,3),(1,2),(2,3): {0,1} then {2,3}
        assert_eq!(h.partition_at(1.0).blocks(), &[vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn square_conservative_linkage_waits() {
        // the 4-cycle at scale 1 is one non-clique component
        let h = conservative_complete_linkage(4, &all_edges(&sq4())).unwrap();
        assert_eq!(h.partition_at(1.0), Partition::singletons(4));
        assert_eq!(h.partition_at(2f64.sqrt()).len(), 1);
    }

    #[test]
    fn two_tight_pairs_merge_together() {
        let dm = DistanceMatrix::from_fn(4, |i, j| match (i, j) {
            (0, 1) | (2, 3) => 0.5,
            _ => 1.0 + (i + j) as f64 * 0.1,
        });
        let h = conservative_complete_linkage(4, &all_edges(&dm)).unwrap();
        let at_half: Vec<_> = h.events().iter().filter(|e| e.dist == 0.5).collect();
        assert_eq!(at_half.len(), 2);
        assert_eq!(h.partition_at(0.5).blocks(), &[vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn winner_is_larger_cluster() {
        // {0,1} forms at 1, then 2 joins at 3; the size-2 cluster must win
        let dm = DistanceMatrix::from_fn(3, |i, j| match (i, j) {
            (0, 1) => 1.0,
            _ => 3.0,
        });
        let h = conservative_complete_linkage(3, &all_edges(&dm)).unwrap();
        assert_eq!(h.events()[0].winner, 0);
        assert_eq!(h.events()[1], MergeEvent { winner: 0, loser: 2, dist: 3.0 });
    }

    #[test]
    fn out_of_range_endpoints_rejected() {
        let e = SortedEdgeList::from_edges(
            5,
            vec![Edge { u: 0, v: 4, dist: 1.0 }],
            Threshold::Unbounded,
        )
        .unwrap();
        assert!(complete_linkage(3, &e).is_err());
        assert!(conservative_complete_linkage(3, &e).is_err());
    }

    #[test]
    fn diameters() {
        assert_eq!(block_diameter(&[0, 1, 2], &l3()).unwrap(), 2.0);
        assert_eq!(block_diameter(&[1], &l3()).unwrap(), 0.0);
        assert_eq!(block_diameter(&[0, 2], &sq4()).unwrap(), 2f64.sqrt());
        assert!(block_diameter(&[], &l3()).is_err());
    }

    #[test]
    fn history_text_round_trip() {
        let h = conservative_complete_linkage(4, &all_edges(&sq4())).unwrap();
        let mut buf = Vec::new();
        h.write_text(&mut buf).unwrap();
        let back = MergeHistory::<f64>::read_text(4, buf.as_slice()).unwrap();
        assert_eq!(back, h);
        assert!(MergeHistory::<f64>::read_text(2, "0 1 1\n1 0 2\n".as_bytes()).is_err());
        assert!(MergeHistory::<f64>::read_text(2, "0 1 2\n0 1\n".as_bytes()).is_err());
    }

    #[test]
    fn saturation_invariant_holds_along_the_stream() {
        let dm = DistanceMatrix::from_fn(7, |i, j| ((i * 7 + j * 3) % 5 + 1) as f64);
        let e = all_edges(&dm);
        let mut cl = ConservativeLinkage::new(7);
        for batch in e.tie_batches() {
            let d = batch[0].dist;
            for edge in batch {
                cl.add_edge(edge.u, edge.v).unwrap();
                let st = cl.state();
                for &a in &st.roots() {
                    for &b in &st.roots() {
                        if a != b {
                            assert_eq!(st.edge_count(a, b), st.edge_count(b, a));
                            assert!(st.edge_count(a, b) <= st.size(a) * st.size(b));
                        }
                    }
                }
            }
            cl.contractions(d);
            let st = cl.state();
            let mut probe = st.clone();
            let root_of: Vec<usize> = (0..7).map(|x| probe.find(x)).collect();
            let roots = st.roots();
            assert_eq!(roots.iter().map(|&r| st.size(r)).sum::<usize>(), 7);
            // equality iff every cross pair is within the current scale
            for &a in &roots {
                for &b in &roots {
                    if a == b {
                        continue;
                    }
                    let all_close = (0..7)
                        .filter(|&x| root_of[x] == a)
                        .all(|x| (0..7).filter(|&y| root_of[y] == b).all(|y| dm.get(x, y) <= d));
                    assert_eq!(st.saturated(a, b), all_close);
                }
            }
        }
    }
}
