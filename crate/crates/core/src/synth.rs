//! Seeded point-cloud generators.
//!
//! All generators use ChaCha8 so a seed gives the same points on every
//! platform.

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::metric::PointCloud;
use crate::scalar::Scalar;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn cloud<T: Scalar>(points: Vec<Vec<f64>>) -> PointCloud<T> {
    let points = points
        .into_iter()
        .map(|p| p.into_iter().map(T::lit).collect())
        .collect();
    PointCloud::new(points).expect("generators emit rectangular data")
}

/// `n` points on the unit circle at uniform random angles.
pub fn circle<T: Scalar>(n: usize, seed: u64) -> PointCloud<T> {
    let mut r = rng(seed);
    let angle = Uniform::new(0.0, std::f64::consts::TAU);
    cloud(
        (0..n)
            .map(|_| {
                let t = angle.sample(&mut r);
                vec![t.cos(), t.sin()]
            })
            .collect(),
    )
}

/// `n` points on the torus of revolution with tube centre radius 2 and tube
/// radius 1, both angles uniform.
pub fn torus<T: Scalar>(n: usize, seed: u64) -> PointCloud<T> {
    let (c, a) = (2.0, 1.0);
    let mut r = rng(seed);
    let angle = Uniform::new(0.0, std::f64::consts::TAU);
    cloud(
        (0..n)
            .map(|_| {
                let u = angle.sample(&mut r);
                let v = angle.sample(&mut r);
                let ring = c + a * v.cos();
                vec![ring * u.cos(), ring * u.sin(), a * v.sin()]
            })
            .collect(),
    )
}

/// `n` points uniform on the unit 2-sphere.
pub fn sphere<T: Scalar>(n: usize, seed: u64) -> PointCloud<T> {
    let mut r = rng(seed);
    let height = Uniform::new_inclusive(-1.0, 1.0);
    let angle = Uniform::new(0.0, std::f64::consts::TAU);
    cloud(
        (0..n)
            .map(|_| {
                // uniform height gives uniform area on the sphere
                let z: f64 = height.sample(&mut r);
                let t = angle.sample(&mut r);
                let s = (1.0 - z * z).sqrt();
                vec![s * t.cos(), s * t.sin(), z]
            })
            .collect(),
    )
}

/// `n` points uniform in `[0, 1]^dim`.
pub fn uniform_cube<T: Scalar>(n: usize, dim: usize, seed: u64) -> PointCloud<T> {
    let mut r = rng(seed);
    let coord = Uniform::new(0.0, 1.0);
    cloud(
        (0..n)
            .map(|_| (0..dim).map(|_| coord.sample(&mut r)).collect())
            .collect(),
    )
}

/// `n` distinct points of the integer grid `{0..side-1}^dim`, uniformly at
/// random. Distances tie heavily.
pub fn integer_grid<T: Scalar>(n: usize, side: usize, dim: usize, seed: u64) -> PointCloud<T> {
    let cells = side.checked_pow(dim as u32).unwrap_or(usize::MAX);
    assert!(n <= cells, "grid has {cells} cells, asked for {n} points");
    let mut r = rng(seed);
    let coord = Uniform::new(0, side);
    let mut seen = std::collections::HashSet::new();
    let mut pts = Vec::with_capacity(n);
    while pts.len() < n {
        let p: Vec<usize> = (0..dim).map(|_| coord.sample(&mut r)).collect();
        if seen.insert(p.clone()) {
            pts.push(p.into_iter().map(|c| c as f64).collect());
        }
    }
    cloud(pts)
}
