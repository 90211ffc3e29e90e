//! Executable model of covers and the complexes built from them, for small
//! instances.
//!
//! Everything here enumerates subsets, so sizes are capped (see
//! [`LabConfig`]). These constructions are the reference the pipeline is
//! checked against, not part of it.

use std::collections::BTreeSet;
use std::io::Write;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::metric::{quotient_metric, DistanceMatrix};
use crate::partition::Partition;
use crate::scalar::Scalar;

/// Size limits for exhaustive constructions.
#[derive(Clone, Copy, Debug)]
pub struct LabConfig {
    /// Largest universe or index set accepted.
    pub cap: usize,
}

impl Default for LabConfig {
    fn default() -> Self {
        Self { cap: 15 }
    }
}

impl LabConfig {
    fn check(&self, what: &'static str, size: usize) -> Result<()> {
        if size > self.cap {
            return Err(Error::CapExceeded {
                what,
                size,
                cap: self.cap,
            });
        }
        Ok(())
    }
}

/// Indexed family of nonempty subsets whose union is `{0..universe_size-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cover {
    universe_size: usize,
    sets: Vec<BTreeSet<usize>>,
}

impl Cover {
    pub fn new(universe_size: usize, sets: Vec<BTreeSet<usize>>) -> Result<Self> {
        let mut covered = vec![false; universe_size];
        for s in &sets {
            if s.is_empty() {
                return Err(Error::EmptySet);
            }
            for &x in s {
                if x >= universe_size {
                    return Err(Error::VertexOutOfRange {
                        index: x,
                        n: universe_size,
                    });
                }
                covered[x] = true;
            }
        }
        if let Some(x) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidPartition(format!(
                "element {x} is not covered"
            )));
        }
        Ok(Self {
            universe_size,
            sets,
        })
    }

    pub fn from_slices(universe_size: usize, sets: &[&[usize]]) -> Result<Self> {
        Self::new(
            universe_size,
            sets.iter().map(|s| s.iter().copied().collect()).collect(),
        )
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn sets(&self) -> &[BTreeSet<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Inclusion relation `x R i <=> x in U_i`.
    pub fn inclusion_relation(&self) -> BinaryRelation {
        let mut r = BinaryRelation::empty(self.universe_size, self.sets.len());
        for (i, s) in self.sets.iter().enumerate() {
            for &x in s {
                r.set(x, i, true);
            }
        }
        r
    }

    /// The same sets in canonical order, for comparisons that ignore indexing.
    pub fn set_family(&self) -> BTreeSet<BTreeSet<usize>> {
        self.sets.iter().cloned().collect()
    }

    /// One set per line, sorted elements, lines sorted.
    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        let mut lines: Vec<String> = self
            .sets
            .iter()
            .map(|s| s.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        lines.sort();
        for l in lines {
            writeln!(w, "{l}")?;
        }
        Ok(())
    }
}

/// `R ⊆ X × Y` as a dense boolean matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryRelation {
    nx: usize,
    ny: usize,
    pairs: Vec<bool>,
}

impl BinaryRelation {
    pub fn empty(nx: usize, ny: usize) -> Self {
        Self {
            nx,
            ny,
            pairs: vec![false; nx * ny],
        }
    }

    pub fn full(nx: usize, ny: usize) -> Self {
        Self {
            nx,
            ny,
            pairs: vec![true; nx * ny],
        }
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.pairs[x * self.ny + y]
    }

    pub fn set(&mut self, x: usize, y: usize, related: bool) {
        self.pairs[x * self.ny + y] = related;
    }

    /// `R^op ⊆ Y × X`.
    pub fn transpose(&self) -> Self {
        let mut t = Self::empty(self.ny, self.nx);
        for x in 0..self.nx {
            for y in 0..self.ny {
                t.set(y, x, self.get(x, y));
            }
        }
        t
    }

    /// `{x : x R y}` for each `y`.
    fn columns(&self) -> Vec<Vec<usize>> {
        (0..self.ny)
            .map(|y| (0..self.nx).filter(|&x| self.get(x, y)).collect())
            .collect()
    }
}

/// Complex on `{0..vertex_count-1}` whose simplices are the subsets (of size
/// at most `max_dim + 1`) of the given witness sets.
fn complex_of_witnesses(vertex_count: usize, witnesses: &[Vec<usize>], max_dim: usize) -> SimplicialComplex {
    let mut k = SimplicialComplex::new(vertex_count, max_dim);
    for w in witnesses {
        k.insert_closed(w);
    }
    k
}

/// Dowker complexes `(C_X(R), C_Y(R))`: a set of `x`s is a simplex of `C_X`
/// when some `y` is related to all of them, and symmetrically for `C_Y`.
pub fn dowker_pair(
    r: &BinaryRelation,
    max_dim: usize,
    cfg: &LabConfig,
) -> Result<(SimplicialComplex, SimplicialComplex)> {
    cfg.check("relation domain", r.nx)?;
    cfg.check("relation codomain", r.ny)?;
    let cx = complex_of_witnesses(r.nx, &r.columns(), max_dim);
    let cy = complex_of_witnesses(r.ny, &r.transpose().columns(), max_dim);
    Ok((cx, cy))
}

/// Nerve: index subsets with nonempty common intersection.
pub fn nerve(c: &Cover, max_dim: usize, cfg: &LabConfig) -> Result<SimplicialComplex> {
    cfg.check("cover universe", c.universe_size)?;
    cfg.check("cover index set", c.len())?;
    let rel = c.inclusion_relation().transpose();
    Ok(complex_of_witnesses(c.len(), &rel.columns(), max_dim))
}

/// Co-nerve: subsets of the universe contained in a single cover set.
pub fn conerve(c: &Cover, max_dim: usize, cfg: &LabConfig) -> Result<SimplicialComplex> {
    cfg.check("cover universe", c.universe_size)?;
    cfg.check("cover index set", c.len())?;
    let sets: Vec<Vec<usize>> = c.sets.iter().map(|s| s.iter().copied().collect()).collect();
    Ok(complex_of_witnesses(c.universe_size, &sets, max_dim))
}

/// Closed balls `B(x, r)`, one per point, indexed by the point.
pub fn ball_cover<T: Scalar>(dm: &DistanceMatrix<T>, r: T) -> Cover {
    let n = dm.len();
    let sets = (0..n)
        .map(|x| (0..n).filter(|&y| dm.get(x, y) <= r).collect())
        .collect();
    Cover {
        universe_size: n,
        sets,
    }
}

/// Maximal cliques of the graph `d(x, y) <= r`, i.e. the maximal subsets of
/// diameter at most `r`, sorted lexicographically.
pub fn maximal_clique_cover<T: Scalar>(dm: &DistanceMatrix<T>, r: T, cfg: &LabConfig) -> Result<Cover> {
    let n = dm.len();
    cfg.check("points for maximal cliques", n)?;
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|x| (0..n).map(|y| x != y && dm.get(x, y) <= r).collect())
        .collect();
    let mut cliques = Vec::new();
    bron_kerbosch(&adj, &mut Vec::new(), (0..n).collect(), Vec::new(), &mut cliques);
    let mut sets: Vec<BTreeSet<usize>> = cliques.into_iter().map(|c| c.into_iter().collect()).collect();
    sets.sort();
    Cover::new(n, sets)
}

/// Pivoting Bron-Kerbosch enumeration of maximal cliques.
fn bron_kerbosch(
    adj: &[Vec<bool>],
    current: &mut Vec<usize>,
    candidates: Vec<usize>,
    excluded: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if candidates.is_empty() {
        if excluded.is_empty() {
            out.push(current.clone());
        }
        return;
    }
    let pivot = candidates
        .iter()
        .chain(&excluded)
        .copied()
        .max_by_key(|&u| candidates.iter().filter(|&&v| adj[u][v]).count())
        .expect("nonempty");
    let branch: Vec<usize> = candidates.iter().copied().filter(|&v| !adj[pivot][v]).collect();
    let mut candidates = candidates;
    let mut excluded = excluded;
    for v in branch {
        current.push(v);
        let c2 = candidates.iter().copied().filter(|&w| adj[v][w]).collect();
        let x2 = excluded.iter().copied().filter(|&w| adj[v][w]).collect();
        bron_kerbosch(adj, current, c2, x2, out);
        current.pop();
        candidates.retain(|&w| w != v);
        excluded.push(v);
    }
}

fn check_partition(universe: usize, p: &Partition) -> Result<()> {
    if p.universe_size() != universe {
        return Err(Error::InvalidPartition(format!(
            "partition of {} elements applied to a universe of {universe}",
            p.universe_size()
        )));
    }
    Ok(())
}

/// Cover of the blocks: set `i` holds the blocks meeting `U_i`.
pub fn quotient_cover_space(c: &Cover, p: &Partition) -> Result<Cover> {
    check_partition(c.universe_size, p)?;
    let sets = c
        .sets
        .iter()
        .map(|s| s.iter().map(|&x| p.block_of(x)).collect())
        .collect();
    Ok(Cover {
        universe_size: p.len(),
        sets,
    })
}

/// Cover of the universe indexed by blocks of the index partition: one union
/// per block.
pub fn quotient_cover_index(c: &Cover, p: &Partition) -> Result<Cover> {
    check_partition(c.len(), p)?;
    let sets = p
        .blocks()
        .iter()
        .map(|b| b.iter().flat_map(|&i| c.sets[i].iter().copied()).collect())
        .collect();
    Ok(Cover {
        universe_size: c.universe_size,
        sets,
    })
}

/// Cover of the original universe: each set of blocks replaced by the union of
/// those blocks. Indexing is unchanged.
pub fn pullback_cover(on_quotient: &Cover, p: &Partition) -> Result<Cover> {
    if on_quotient.universe_size != p.len() {
        return Err(Error::InvalidPartition(format!(
            "cover of {} blocks pulled back along a partition with {} blocks",
            on_quotient.universe_size,
            p.len()
        )));
    }
    let sets = on_quotient
        .sets
        .iter()
        .map(|s| s.iter().flat_map(|&b| p.blocks()[b].iter().copied()).collect())
        .collect();
    Ok(Cover {
        universe_size: p.universe_size(),
        sets,
    })
}

/// Saturation of every set by the partition: each set becomes the union of
/// the blocks it meets. Indexing is unchanged.
pub fn saturate(c: &Cover, p: &Partition) -> Result<Cover> {
    pullback_cover(&quotient_cover_space(c, p)?, p)
}

/// Maximal-clique cover of the quotient metric at scale `r`, pulled back to
/// the original points.
pub fn quotient_clique_cover<T: Scalar>(
    dm: &DistanceMatrix<T>,
    p: &Partition,
    r: T,
    cfg: &LabConfig,
) -> Result<Cover> {
    let q = quotient_metric(dm, p)?;
    pullback_cover(&maximal_clique_cover(&q, r, cfg)?, p)
}

/// Image of a complex under the block projection.
pub fn quotient_complex(k: &SimplicialComplex, p: &Partition) -> Result<SimplicialComplex> {
    check_partition(k.vertex_count(), p)?;
    let mut q = SimplicialComplex::new(p.len(), k.max_dim());
    for s in k.iter() {
        let image: Vec<usize> = s.iter().map(|&x| p.block_of(x)).collect();
        q.insert_closed(&image);
    }
    Ok(q)
}

/// Index map `j -> f(j)` with `V_j ⊆ U_{f(j)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementMap {
    pub map: Vec<usize>,
}

impl RefinementMap {
    /// True iff the map witnesses that `v` refines `u`.
    pub fn is_valid(&self, v: &Cover, u: &Cover) -> bool {
        self.map.len() == v.len()
            && self
                .map
                .iter()
                .zip(&v.sets)
                .all(|(&i, vj)| i < u.len() && vj.is_subset(&u.sets[i]))
    }
}

/// For each `V_j`, the lowest-index `U_i` containing it; `None` if some `V_j`
/// has no container.
pub fn find_refinement(v: &Cover, u: &Cover) -> Option<RefinementMap> {
    if v.universe_size != u.universe_size {
        return None;
    }
    v.sets
        .iter()
        .map(|vj| u.sets.iter().position(|ui| vj.is_subset(ui)))
        .collect::<Option<Vec<_>>>()
        .map(|map| RefinementMap { map })
}

/// All refinement maps from `v` into `u` (exponential; for tests on tiny
/// covers).
pub fn all_refinements(v: &Cover, u: &Cover) -> Vec<RefinementMap> {
    let choices: Vec<Vec<usize>> = v
        .sets
        .iter()
        .map(|vj| (0..u.len()).filter(|&i| vj.is_subset(&u.sets[i])).collect())
        .collect();
    let mut out = vec![Vec::new()];
    for c in &choices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                c.iter().map(move |&i| {
                    let mut m = prefix.clone();
                    m.push(i);
                    m
                })
            })
            .collect();
    }
    if v.universe_size != u.universe_size {
        out.clear();
    }
    out.into_iter().map(|map| RefinementMap { map }).collect()
}

/// Two refinement maps into `u` are contiguous when `U_{f(j)} ∩ U_{g(j)}` is
/// nonempty for every `j`.
pub fn contiguous(f: &RefinementMap, g: &RefinementMap, u: &Cover) -> bool {
    f.map.len() == g.map.len()
        && f.map
            .iter()
            .zip(&g.map)
            .all(|(&a, &b)| u.sets[a].intersection(&u.sets[b]).next().is_some())
}
