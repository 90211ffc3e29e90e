#![allow(dead_code)]

use proptest::prelude::*;
use qrips::metric::pairwise_distances;
use qrips::{DistanceMatrix, PointCloud};

/// Points with continuous coordinates; ties are unlikely.
pub fn generic_metric(max_n: usize) -> impl Strategy<Value = DistanceMatrix> {
    (2..=max_n, 1..=3usize).prop_flat_map(|(n, dim)| {
        proptest::collection::vec(proptest::collection::vec(-10.0f64..10.0, dim), n)
            .prop_map(|pts| pairwise_distances(&PointCloud::new(pts).unwrap()))
    })
}

/// Points on a small integer grid; many exact ties and some duplicates.
pub fn tie_metric(max_n: usize) -> impl Strategy<Value = DistanceMatrix> {
    (2..=max_n, 1..=3usize).prop_flat_map(|(n, dim)| {
        proptest::collection::vec(proptest::collection::vec(0u8..4, dim), n).prop_map(|pts| {
            let pts = pts.into_iter().map(|p| p.into_iter().map(f64::from).collect()).collect();
            pairwise_distances(&PointCloud::new(pts).unwrap())
        })
    })
}

pub fn any_metric(max_n: usize) -> impl Strategy<Value = DistanceMatrix> {
    prop_oneof![generic_metric(max_n), tie_metric(max_n)]
}

/// Metric together with a permutation of its points.
pub fn metric_and_perm(max_n: usize) -> impl Strategy<Value = (DistanceMatrix, Vec<usize>)> {
    tie_metric(max_n).prop_flat_map(|dm| {
        let n = dm.len();
        (Just(dm), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

/// Block labels for a partition of `n` elements.
pub fn labels(n: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..n.max(1), n)
}

pub fn distinct_distances(dm: &DistanceMatrix) -> Vec<f64> {
    let n = dm.len();
    let mut d: Vec<f64> = (0..n).flat_map(|i| (i + 1..n).map(move |j| dm.get(i, j))).collect();
    d.sort_by(f64::total_cmp);
    d.dedup();
    d
}
