mod common;

use std::collections::BTreeSet;

use common::{distinct_distances, generic_metric, labels};
use proptest::prelude::*;
use qrips::covers::{
    all_refinements, ball_cover, conerve, contiguous, dowker_pair, find_refinement, maximal_clique_cover, nerve,
    pullback_cover, quotient_clique_cover, quotient_complex, quotient_cover_index, quotient_cover_space, saturate,
    BinaryRelation, Cover, LabConfig,
};
use qrips::linkage::conservative_complete_linkage;
use qrips::metric::{sorted_edges, Threshold};
use qrips::partition::Partition;
use qrips::persistence::betti;

const CFG: LabConfig = LabConfig { cap: 15 };

fn relation() -> impl Strategy<Value = BinaryRelation> {
    (1..=7usize, 1..=7usize, 0.2f64..0.8).prop_flat_map(|(nx, ny, p)| {
        proptest::collection::vec(proptest::bool::weighted(p), nx * ny).prop_map(move |bits| {
            let mut r = BinaryRelation::empty(nx, ny);
            for (i, b) in bits.into_iter().enumerate() {
                r.set(i / ny, i % ny, b);
            }
            r
        })
    })
}

fn cover(max_n: usize, max_k: usize) -> impl Strategy<Value = Cover> {
    (1..=max_n).prop_flat_map(move |n| cover_on(n, max_k))
}

fn cover_on(n: usize, max_k: usize) -> impl Strategy<Value = Cover> {
    (1..=max_k).prop_flat_map(move |k| {
        let masks = proptest::collection::vec(1u32..(1 << n), k);
        (masks, proptest::collection::vec(0..k, n)).prop_map(move |(masks, home)| {
            let mut sets: Vec<BTreeSet<usize>> =
                masks.iter().map(|m| (0..n).filter(|&x| m >> x & 1 == 1).collect()).collect();
            for (x, &i) in home.iter().enumerate() {
                sets[i].insert(x);
            }
            Cover::new(n, sets).unwrap()
        })
    })
}

fn cover_with_partitions() -> impl Strategy<Value = (Cover, Partition, Partition)> {
    cover(8, 6).prop_flat_map(|c| {
        let (n, k) = (c.universe_size(), c.len());
        (Just(c), labels(n), labels(k))
            .prop_map(|(c, a, b)| (c, Partition::from_labels(&a), Partition::from_labels(&b)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn dowker_duality(r in relation()) {
        let (cx, cy) = dowker_pair(&r, 7, &CFG).unwrap();
        prop_assert!(betti(&cx).unwrap().same_as(&betti(&cy).unwrap()));
        let (tx, ty) = dowker_pair(&r.transpose(), 7, &CFG).unwrap();
        prop_assert_eq!((tx, ty), (cy, cx));
    }

    #[test]
    fn quotients_commute((c, p, pi) in cover_with_partitions()) {
        let top = 8;
        prop_assert_eq!(
            quotient_complex(&conerve(&c, top, &CFG).unwrap(), &p).unwrap(),
            conerve(&quotient_cover_space(&c, &p).unwrap(), top, &CFG).unwrap()
        );
        prop_assert_eq!(
            quotient_complex(&nerve(&c, top, &CFG).unwrap(), &pi).unwrap(),
            nerve(&quotient_cover_index(&c, &pi).unwrap(), top, &CFG).unwrap()
        );
    }

    #[test]
    fn pullback_keeps_the_nerve((c, p, _) in cover_with_partitions()) {
        let q = quotient_cover_space(&c, &p).unwrap();
        prop_assert_eq!(
            nerve(&pullback_cover(&q, &p).unwrap(), 8, &CFG).unwrap(),
            nerve(&q, 8, &CFG).unwrap()
        );
    }

    #[test]
    fn ball_covers_are_self_dual(dm in generic_metric(9)) {
        for r in distinct_distances(&dm) {
            let b = ball_cover(&dm, r);
            prop_assert_eq!(conerve(&b, 9, &CFG).unwrap(), nerve(&b, 9, &CFG).unwrap());
        }
    }

    #[test]
    fn clique_cover_conerve_is_rips(dm in generic_metric(9)) {
        for r in distinct_distances(&dm) {
            let k = conerve(&maximal_clique_cover(&dm, r, &CFG).unwrap(), 9, &CFG).unwrap();
            let n = dm.len();
            // every subset of diameter <= r, and nothing else
            for mask in 1u32..(1 << n) {
                let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                let diam = s.iter().flat_map(|&a| s.iter().map(move |&b| (a, b))).map(|(a, b)| dm.get(a, b)).fold(0.0, f64::max);
                prop_assert_eq!(k.contains(&s), diam <= r);
            }
        }
    }

    #[test]
    fn approximating_refinements_exist(dm in generic_metric(10)) {
        let h = conservative_complete_linkage(dm.len(), &sorted_edges(&dm, Threshold::Unbounded)).unwrap();
        for r in distinct_distances(&dm) {
            let p = h.partition_at(r);
            let m = maximal_clique_cover(&dm, r, &CFG).unwrap();
            let m3 = maximal_clique_cover(&dm, 3.0 * r, &CFG).unwrap();
            let b = ball_cover(&dm, r);
            let mp = saturate(&m, &p).unwrap();
            let bp = saturate(&b, &p).unwrap();
            let mq = quotient_clique_cover(&dm, &p, r, &CFG).unwrap();
            prop_assert!(find_refinement(&m, &b).is_some());
            prop_assert!(find_refinement(&b, &maximal_clique_cover(&dm, 2.0 * r, &CFG).unwrap()).is_some());
            prop_assert!(find_refinement(&m, &mp).is_some());
            prop_assert!(find_refinement(&mp, &m3).is_some());
            prop_assert!(find_refinement(&b, &bp).is_some());
            prop_assert!(find_refinement(&bp, &ball_cover(&dm, 2.0 * r)).is_some());
            prop_assert!(find_refinement(&m, &mq).is_some());
            prop_assert!(find_refinement(&mq, &m3).is_some());
        }
    }

    #[test]
    fn refinements_are_pairwise_contiguous((v, u) in (1..=4usize).prop_flat_map(|n| (cover_on(n, 4), cover_on(n, 4)))) {
        let all = all_refinements(&v, &u);
        prop_assert_eq!(all.is_empty(), find_refinement(&v, &u).is_none());
        for f in &all {
            prop_assert!(f.is_valid(&v, &u));
            for g in &all {
                prop_assert!(contiguous(f, g, &u));
            }
        }
    }
}

#[test]
fn caps_are_enforced() {
    let wide = Cover::new(16, vec![(0..16).collect()]).unwrap();
    assert!(nerve(&wide, 1, &CFG).is_err());
    assert!(nerve(&wide, 1, &LabConfig { cap: 16 }).is_ok());
}

#[test]
fn cover_text_is_sorted() {
    let c = Cover::from_slices(3, &[&[2, 1], &[0, 2]]).unwrap();
    let mut buf = Vec::new();
    c.write_text(&mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap(), "0 2\n1 2\n");
}
