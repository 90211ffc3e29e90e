mod common;

use common::{any_metric, distinct_distances, generic_metric, labels, metric_and_perm, tie_metric};
use proptest::prelude::*;
use qrips::linkage::{block_diameter, complete_linkage, conservative_complete_linkage, ConservativeLinkage};
use qrips::metric::{enclosing_radius, quotient_metric, sorted_edges, Threshold};
use qrips::partition::Partition;
use qrips::union_find::UnionFind;
use qrips::{DistanceMatrix, MergeHistory};

fn conservative(dm: &DistanceMatrix) -> MergeHistory {
    conservative_complete_linkage(dm.len(), &sorted_edges(dm, Threshold::Unbounded)).unwrap()
}

proptest! {
    #[test]
    fn quotient_by_singletons_is_identity(dm in any_metric(12)) {
        prop_assert_eq!(quotient_metric(&dm, &Partition::singletons(dm.len())).unwrap(), dm);
    }

    #[test]
    fn quotient_never_increases_distances((dm, l) in any_metric(12).prop_flat_map(|dm| {
        let n = dm.len();
        (Just(dm), labels(n))
    })) {
        let p = Partition::from_labels(&l);
        let q = quotient_metric(&dm, &p).unwrap();
        for x in 0..dm.len() {
            for y in 0..dm.len() {
                let (a, b) = (p.block_of(x), p.block_of(y));
                if a != b {
                    prop_assert!(q.get(a, b) <= dm.get(x, y));
                }
            }
        }
        // brute-force minimum over cross pairs
        for a in 0..p.len() {
            for b in 0..p.len() {
                if a == b {
                    continue;
                }
                let m = p.blocks()[a]
                    .iter()
                    .flat_map(|&x| p.blocks()[b].iter().map(move |&y| (x, y)))
                    .map(|(x, y)| dm.get(x, y))
                    .fold(f64::INFINITY, f64::min);
                prop_assert_eq!(q.get(a, b), m);
            }
        }
    }

    #[test]
    fn sorted_edges_are_sorted_and_complete(dm in any_metric(15), pick in 0.0f64..1.0) {
        let ds = distinct_distances(&dm);
        let t = ds[((ds.len() - 1) as f64 * pick) as usize];
        let e = sorted_edges(&dm, Threshold::Finite(t));
        let n = dm.len();
        let expected = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| dm.get(i, j) <= t).count();
        prop_assert_eq!(e.len(), expected);
        for w in e.edges().windows(2) {
            prop_assert!((w[0].dist, w[0].u, w[0].v) < (w[1].dist, w[1].u, w[1].v));
        }
        for edge in e.edges() {
            prop_assert!(edge.u < edge.v && edge.dist == dm.get(edge.u, edge.v));
        }
    }

    #[test]
    fn enclosing_radius_bounds(dm in any_metric(15)) {
        let r = enclosing_radius(&dm);
        prop_assert!(r <= dm.max_entry());
        for x in 0..dm.len() {
            prop_assert!(r <= dm.row(x).iter().copied().fold(0.0, f64::max));
        }
    }

    #[test]
    fn blocks_respect_the_diameter_bound(dm in any_metric(20)) {
        let h = conservative(&dm);
        for r in h.critical_scales() {
            for b in h.partition_at(r).blocks() {
                prop_assert!(block_diameter(b, &dm).unwrap() <= r);
            }
        }
    }

    #[test]
    fn partitions_only_coarsen(dm in any_metric(20)) {
        let h = conservative(&dm);
        let scales = distinct_distances(&dm);
        for w in scales.windows(2) {
            prop_assert!(h.partition_at(w[0]).refines(&h.partition_at(w[1])));
        }
    }

    #[test]
    fn partitions_are_label_independent((dm, perm) in metric_and_perm(16)) {
        let h = conservative(&dm);
        let h2 = conservative(&dm.relabel(&perm));
        for r in distinct_distances(&dm) {
            prop_assert_eq!(h.partition_at(r).relabel(&perm), h2.partition_at(r));
        }
    }

    #[test]
    fn agrees_with_complete_linkage_without_ties(dm in generic_metric(20)) {
        let n = dm.len();
        let ds = distinct_distances(&dm);
        prop_assume!(ds.len() == n * (n - 1) / 2);
        let e = sorted_edges(&dm, Threshold::Unbounded);
        let c = conservative_complete_linkage(n, &e).unwrap();
        let s = complete_linkage(n, &e).unwrap();
        for r in ds {
            prop_assert_eq!(c.partition_at(r), s.partition_at(r));
        }
    }

    #[test]
    fn saturation_matches_cross_pairs(dm in tie_metric(14)) {
        let n = dm.len();
        let e = sorted_edges(&dm, Threshold::Unbounded);
        let mut lk = ConservativeLinkage::new(n);
        for batch in e.tie_batches() {
            let d = batch[0].dist;
            for edge in batch {
                lk.add_edge(edge.u, edge.v).unwrap();
            }
            lk.contractions(d);
            let mut st = lk.state().clone();
            let roots = st.roots();
            let members = |st: &mut qrips::linkage::ClusterState, r: usize| -> Vec<usize> {
                (0..n).filter(|&x| st.find(x) == r).collect()
            };
            for (i, &a) in roots.iter().enumerate() {
                for &b in &roots[i + 1..] {
                    let (ma, mb) = (members(&mut st, a), members(&mut st, b));
                    let close = ma.iter().flat_map(|&x| mb.iter().map(move |&y| (x, y))).filter(|&(x, y)| dm.get(x, y) <= d).count();
                    prop_assert_eq!(st.edge_count(a, b), close);
                    prop_assert!(close <= st.size(a) * st.size(b));
                    prop_assert_eq!(st.saturated(a, b), close == ma.len() * mb.len());
                }
            }
        }
    }

    #[test]
    fn history_text_round_trips(dm in any_metric(12)) {
        let h = conservative(&dm);
        let mut buf = Vec::new();
        h.write_text(&mut buf).unwrap();
        let back = MergeHistory::read_text(dm.len(), buf.as_slice()).unwrap();
        prop_assert_eq!(back.events(), h.events());
    }
}

/// Connected components of the threshold graph.
fn single_linkage(dm: &DistanceMatrix, r: f64) -> Partition {
    let n = dm.len();
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if dm.get(i, j) <= r {
                let (a, b) = (uf.find(i), uf.find(j));
                if a != b {
                    uf.union_into(b, a);
                }
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
    Partition::from_labels(&labels)
}

#[test]
fn single_linkage_breaks_the_diameter_bound_on_the_line() {
    let dm = DistanceMatrix::from_fn(3, |i, j| (j - i) as f64);
    let p = single_linkage(&dm, 1.0);
    assert_eq!(p.len(), 1);
    assert_eq!(block_diameter(&p.blocks()[0], &dm).unwrap(), 2.0);
    // conservative linkage keeps all three apart at the same scale
    assert_eq!(conservative(&dm).partition_at(1.0), Partition::singletons(3));
}

#[test]
fn duplicates_merge_at_zero() {
    let dm = DistanceMatrix::from_rows(vec![vec![0.0, 0.0, 3.0], vec![0.0, 0.0, 3.0], vec![3.0, 3.0, 0.0]]).unwrap();
    let h = conservative(&dm);
    assert_eq!(h.events()[0].dist, 0.0);
    assert_eq!(h.partition_at(0.0).blocks(), &[vec![0, 1], vec![2]]);
}
