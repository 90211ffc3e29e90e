//! Turning the quotient tower into a filtration.
//!
//! As the scale grows, new edges enter the quotient complex and cluster merges
//! contract vertices. Each contraction `(u, v) -> v` is replaced by coning: the
//! survivor is joined to every active neighbor of the vertex that disappears,
//! which is then deactivated but kept in the complex. The result is a weighted
//! graph whose flag filtration has the same barcode as the tower.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::linkage::{ConservativeLinkage, MergeEvent, MergeHistory};
use crate::metric::SortedEdgeList;
use crate::scalar::{fmt_scalar, Scalar};
use crate::union_find::UnionFind;

/// An edge of a [`FilteredGraph`] with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FilteredEdge<T> {
    pub u: usize,
    pub v: usize,
    pub birth: T,
}

/// Weighted graph on `n` vertices (all born at 0) whose flag complex is the
/// filtration equivalent to the quotient tower.
#[derive(Clone, Debug, PartialEq)]
pub struct FilteredGraph<T> {
    n: usize,
    edges: Vec<FilteredEdge<T>>,
}

impl<T: Scalar> FilteredGraph<T> {
    /// Checks the invariants: endpoints in range, `u < v`, no repeated pair,
    /// births nondecreasing.
    pub fn new(n: usize, edges: Vec<FilteredEdge<T>>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut last = T::neg_infinity();
        for (i, e) in edges.iter().enumerate() {
            let bad = |message: String| Error::Format {
                format: "filtered graph",
                line: i + 2,
                message,
            };
            if e.v >= n || e.u >= e.v {
                return Err(bad(format!("invalid endpoints ({}, {})", e.u, e.v)));
            }
            if !seen.insert((e.u, e.v)) {
                return Err(bad(format!("duplicate edge ({}, {})", e.u, e.v)));
            }
            if !(e.birth >= last) || !e.birth.is_finite() {
                return Err(bad("births must be finite and nondecreasing".into()));
            }
            last = e.birth;
        }
        Ok(Self { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[FilteredEdge<T>] {
        &self.edges
    }

    /// Header `n <count>`, then `u v birth` per edge in recording order.
    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "n {}", self.n)?;
        for e in &self.edges {
            writeln!(w, "{} {} {}", e.u, e.v, fmt_scalar(e.birth))?;
        }
        Ok(())
    }

    pub fn read_text<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = reader.lines().enumerate();
        let bad = |line: usize, message: String| Error::Format {
            format: "filtered graph",
            line,
            message,
        };
        let n = loop {
            match lines.next() {
                None => return Err(bad(1, "missing header".into())),
                Some((_, l)) if l.as_ref().is_ok_and(|l| l.trim().is_empty()) => continue,
                Some((i, l)) => {
                    let l = l?;
                    let mut toks = l.split_whitespace();
                    match (toks.next(), toks.next().map(str::parse::<usize>), toks.next()) {
                        (Some("n"), Some(Ok(n)), None) => break n,
                        _ => return Err(bad(i + 1, "expected header \"n <count>\"".into())),
                    }
                }
            }
        };
        let mut edges = Vec::new();
        for (i, l) in lines {
            let l = l?;
            if l.trim().is_empty() {
                continue;
            }
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(bad(i + 1, format!("expected 3 fields, found {}", toks.len())));
            }
            let u = toks[0].parse().map_err(|_| bad(i + 1, "bad vertex".into()))?;
            let v = toks[1].parse().map_err(|_| bad(i + 1, "bad vertex".into()))?;
            let birth = toks[2].parse().map_err(|_| bad(i + 1, "bad birth".into()))?;
            edges.push(FilteredEdge { u, v, birth });
        }
        Self::new(n, edges)
    }

    /// Sparse distance export: `i j d` per edge, 0-based, space separated.
    pub fn write_sparse<W: Write>(&self, mut w: W) -> Result<()> {
        for e in &self.edges {
            writeln!(w, "{} {} {}", e.u, e.v, fmt_scalar(e.birth))?;
        }
        Ok(())
    }
}

/// Weighted 1-skeleton under construction, with the active vertex set and a
/// union-find that maps every original vertex to its current representative.
#[derive(Clone, Debug)]
pub struct Skeleton<T> {
    adj: Vec<BTreeMap<usize, usize>>,
    edges: Vec<FilteredEdge<T>>,
    active: Vec<bool>,
    uf: UnionFind,
}

impl<T: Scalar> Skeleton<T> {
    pub fn new(n: usize) -> Self {
        Self {
            adj: vec![BTreeMap::new(); n],
            edges: Vec::new(),
            active: vec![true; n],
            uf: UnionFind::new(n),
        }
    }

    pub fn n(&self) -> usize {
        self.active.len()
    }

    pub fn is_active(&self, x: usize) -> bool {
        self.active[x]
    }

    pub fn active_count(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }

    pub fn representative(&mut self, x: usize) -> usize {
        self.uf.find(x)
    }

    /// Birth of the edge between the current representatives of `u` and `v`.
    pub fn birth(&mut self, u: usize, v: usize) -> Option<T> {
        let (u, v) = (self.uf.find(u), self.uf.find(v));
        self.adj[u].get(&v).map(|&i| self.edges[i].birth)
    }

    /// Records an edge between the representatives of `u` and `v`, keeping
    /// the earlier birth if the edge already exists. No-op inside one class.
    pub fn add_edge(&mut self, u: usize, v: usize, d: T) {
        let u = self.uf.find(u);
        let v = self.uf.find(v);
        if u == v || !self.active[u] || !self.active[v] {
            return;
        }
        self.record(u, v, d);
    }

    fn record(&mut self, u: usize, v: usize, d: T) {
        match self.adj[u].get(&v) {
            Some(&i) => {
                if d < self.edges[i].birth {
                    self.edges[i].birth = d;
                }
            }
            None => {
                let i = self.edges.len();
                self.edges.push(FilteredEdge {
                    u: u.min(v),
                    v: u.max(v),
                    birth: d,
                });
                self.adj[u].insert(v, i);
                self.adj[v].insert(u, i);
            }
        }
    }

    fn active_star(&self, x: usize) -> Vec<usize> {
        self.adj[x]
            .keys()
            .copied()
            .filter(|&w| self.active[w])
            .collect()
    }

    /// Contracts the classes of `u` and `v` at scale `d`.
    ///
    /// The representative with the smaller active star is coned into the
    /// other one (equal stars: the lower index survives), then deactivated.
    /// Returns `(survivor, removed)`.
    pub fn contract(&mut self, u: usize, v: usize, d: T) -> Result<(usize, usize)> {
        let ru = self.uf.find(u);
        let rv = self.uf.find(v);
        if ru == rv {
            return Err(Error::Contract {
                u,
                v,
                reason: "already in the same class",
            });
        }
        let star_u = self.active_star(ru);
        let star_v = self.active_star(rv);
        let (survivor, removed, star) = match star_u.len().cmp(&star_v.len()) {
            std::cmp::Ordering::Less => (rv, ru, star_u),
            std::cmp::Ordering::Greater => (ru, rv, star_v),
            std::cmp::Ordering::Equal if ru < rv => (ru, rv, star_v),
            std::cmp::Ordering::Equal => (rv, ru, star_u),
        };
        for w in star {
            if w != survivor {
                self.record(survivor, w, d);
            }
        }
        self.active[removed] = false;
        self.uf.union_into(removed, survivor);
        Ok((survivor, removed))
    }

    pub fn into_graph(self) -> FilteredGraph<T> {
        FilteredGraph {
            n: self.active.len(),
            edges: self.edges,
        }
    }
}

/// Output of [`build_quotient`]: the filtered graph together with the
/// persistent partition that drove the contractions.
#[derive(Clone, Debug)]
pub struct QuotientBuild<T> {
    pub graph: FilteredGraph<T>,
    pub history: MergeHistory<T>,
    /// Active vertices after the last contraction.
    pub active_count: usize,
}

/// Runs conservative linkage and the skeleton side by side over the sorted
/// edge stream, applying the contractions of each tie batch at its distance.
pub fn build_quotient<T: Scalar>(n: usize, e: &SortedEdgeList<T>) -> Result<QuotientBuild<T>> {
    let mut linkage = ConservativeLinkage::new(n);
    let mut skeleton = Skeleton::new(n);
    let mut events: Vec<MergeEvent<T>> = Vec::new();
    for batch in e.tie_batches() {
        let d = batch[0].dist;
        for edge in batch {
            linkage.add_edge(edge.u, edge.v)?;
            skeleton.add_edge(edge.u, edge.v, edge.dist);
        }
        for ev in linkage.contractions(d) {
            skeleton.contract(ev.winner, ev.loser, ev.dist)?;
            events.push(ev);
        }
    }
    let active_count = skeleton.active_count();
    Ok(QuotientBuild {
        graph: skeleton.into_graph(),
        history: MergeHistory::new(n, events)?,
        active_count,
    })
}

/// Filtered 1-skeleton of the quotient tower.
pub fn build_filtered_skeleton<T: Scalar>(n: usize, e: &SortedEdgeList<T>) -> Result<FilteredGraph<T>> {
    build_quotient(n, e).map(|b| b.graph)
}
