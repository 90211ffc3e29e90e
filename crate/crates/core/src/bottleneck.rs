//! Bottleneck distances between barcodes.
//!
//! The additive distance is the usual one. The multiplicative distance is the
//! same matching problem on log-rescaled endpoints, reported as a ratio: two
//! barcodes at multiplicative distance `c` are `ln c`-close after taking logs.
//! Ratios are computed directly (`max(x/y, y/x)`) rather than through
//! `exp(ln x - ln y)` so exact ratios such as `6 / 2` stay exact.

use crate::error::{Error, Result};
use crate::persistence::Barcode;
use crate::scalar::Scalar;

trait Cost<T> {
    /// Cost of matching `(b1, d1)` with `(b2, d2)`.
    fn pair(&self, p: (T, T), q: (T, T)) -> T;
    /// Cost of sending `(b, d)` to the diagonal.
    fn diagonal(&self, p: (T, T)) -> T;
    /// Cost of matching two essential classes born at `b1`, `b2`.
    fn births(&self, b1: T, b2: T) -> T;
    /// Distance between identical barcodes.
    fn identity(&self) -> T;
}

struct Additive;

impl<T: Scalar> Cost<T> for Additive {
    fn pair(&self, p: (T, T), q: (T, T)) -> T {
        (p.0 - q.0).abs().max((p.1 - q.1).abs())
    }

    fn diagonal(&self, p: (T, T)) -> T {
        (p.1 - p.0) / T::lit(2.0)
    }

    fn births(&self, b1: T, b2: T) -> T {
        (b1 - b2).abs()
    }

    fn identity(&self) -> T {
        T::zero()
    }
}

struct Multiplicative;

impl Multiplicative {
    /// `max(x/y, y/x)` with `0/0 := 1` and `x/0 := inf`.
    fn ratio<T: Scalar>(x: T, y: T) -> T {
        if x == y {
            T::one()
        } else if x == T::zero() || y == T::zero() {
            T::infinity()
        } else {
            (x / y).max(y / x)
        }
    }
}

impl<T: Scalar> Cost<T> for Multiplicative {
    fn pair(&self, p: (T, T), q: (T, T)) -> T {
        Self::ratio(p.0, q.0).max(Self::ratio(p.1, q.1))
    }

    fn diagonal(&self, p: (T, T)) -> T {
        // half the log-length: sqrt(death / birth)
        Self::ratio(p.0, p.1).sqrt()
    }

    fn births(&self, b1: T, b2: T) -> T {
        Self::ratio(b1, b2)
    }

    fn identity(&self) -> T {
        T::one()
    }
}

/// Additive bottleneck distance in one degree. Essential classes must match
/// essential classes; differing counts give `+inf`.
pub fn bottleneck<T: Scalar>(a: &Barcode<T>, b: &Barcode<T>, degree: usize) -> T {
    distance(&Additive, a, b, degree)
}

/// Multiplicative bottleneck distance (a ratio `>= 1`) in one degree.
///
/// An endpoint 0 matched against 0 costs nothing, against a positive value
/// costs `+inf`. Sending a bar to the diagonal costs `sqrt(death / birth)`.
pub fn multiplicative_bottleneck<T: Scalar>(a: &Barcode<T>, b: &Barcode<T>, degree: usize) -> Result<T> {
    for bc in [a, b] {
        for i in bc.intervals() {
            if i.birth < T::zero() {
                return Err(Error::NegativeEndpoint(i.birth.to_f64_lossy()));
            }
        }
    }
    Ok(distance(&Multiplicative, a, b, degree))
}

fn distance<T: Scalar, C: Cost<T>>(cost: &C, a: &Barcode<T>, b: &Barcode<T>, degree: usize) -> T {
    let split = |bc: &Barcode<T>| {
        let mut finite = Vec::new();
        let mut essential = Vec::new();
        for (birth, death) in bc.degree(degree) {
            if death.is_infinite() {
                essential.push(birth);
            } else {
                finite.push((birth, death));
            }
        }
        (finite, essential)
    };
    let (fa, ea) = split(a);
    let (fb, eb) = split(b);
    if ea.len() != eb.len() {
        return T::infinity();
    }
    // sorted pairing is optimal for matching points on a line
    let essential = ea
        .iter()
        .zip(&eb)
        .fold(cost.identity(), |m, (&x, &y)| m.max(cost.births(x, y)));
    essential.max(finite_distance(cost, &fa, &fb))
}

fn finite_distance<T: Scalar, C: Cost<T>>(cost: &C, a: &[(T, T)], b: &[(T, T)]) -> T {
    let (p, q) = (a.len(), b.len());
    let pair: Vec<Vec<T>> = a.iter().map(|&x| b.iter().map(|&y| cost.pair(x, y)).collect()).collect();
    let diag_a: Vec<T> = a.iter().map(|&x| cost.diagonal(x)).collect();
    let diag_b: Vec<T> = b.iter().map(|&y| cost.diagonal(y)).collect();

    let mut candidates: Vec<T> = pair
        .iter()
        .flatten()
        .chain(&diag_a)
        .chain(&diag_b)
        .copied()
        .filter(|c| c.is_finite())
        .collect();
    candidates.push(cost.identity());
    candidates.sort_by(|x, y| x.cmp_finite(y));
    candidates.dedup();

    // left: a_0..a_p, then diagonal copies of b; right: b_0..b_q, then
    // diagonal copies of a
    let feasible = |eps: T| {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); p + q];
        for i in 0..p {
            for j in 0..q {
                if pair[i][j] <= eps {
                    adj[i].push(j);
                }
            }
            if diag_a[i] <= eps {
                adj[i].push(q + i);
            }
        }
        for j in 0..q {
            if diag_b[j] <= eps {
                adj[p + j].push(j);
            }
            adj[p + j].extend(q..q + p);
        }
        max_matching(&adj, p + q) == p + q
    };

    // the largest finite candidate is feasible unless some bar can only be
    // matched at infinite cost
    let (mut lo, mut hi) = (0, candidates.len());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if lo == candidates.len() {
        T::infinity()
    } else {
        candidates[lo]
    }
}

/// Hopcroft-Karp maximum matching size for a bipartite graph given as
/// left-vertex adjacency lists into `0..right`.
pub(crate) fn max_matching(adj: &[Vec<usize>], right: usize) -> usize {
    const NIL: usize = usize::MAX;
    let left = adj.len();
    let mut match_l = vec![NIL; left];
    let mut match_r = vec![NIL; right];
    let mut dist = vec![0usize; left];
    let mut size = 0;
    loop {
        // BFS layering from free left vertices
        let mut queue = std::collections::VecDeque::new();
        for u in 0..left {
            if match_l[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_r[v];
                if w == NIL {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        fn augment(
            u: usize,
            adj: &[Vec<usize>],
            match_l: &mut [usize],
            match_r: &mut [usize],
            dist: &mut [usize],
        ) -> bool {
            for &v in &adj[u] {
                let w = match_r[v];
                if w == usize::MAX
                    || (dist[w] == dist[u] + 1 && augment(w, adj, match_l, match_r, dist))
                {
                    match_l[u] = v;
                    match_r[v] = u;
                    return true;
                }
            }
            dist[u] = usize::MAX;
            false
        }
        for u in 0..left {
            if match_l[u] == NIL && augment(u, adj, &mut match_l, &mut match_r, &mut dist) {
                size += 1;
            }
        }
    }
    size
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bc(t: &[(usize, f64, f64)]) -> Barcode<f64> {
        Barcode::from_triples(t)
    }

    #[test]
    fn additive_fixtures() {
        let a = bc(&[(1, 1.0, 3.0), (0, 0.0, f64::INFINITY)]);
        assert_eq!(bottleneck(&a, &a, 1), 0.0);
        assert_eq!(bottleneck(&a, &a, 0), 0.0);
        assert_eq!(bottleneck(&bc(&[(1, 1.0, 3.0)]), &bc(&[(1, 1.0, 4.0)]), 1), 1.0);
        assert_eq!(bottleneck(&bc(&[(1, 1.0, 3.0)]), &bc(&[]), 1), 1.0);
        assert_eq!(bottleneck(&bc(&[]), &bc(&[]), 1), 0.0);
    }

    #[test]
    fn essential_classes() {
        let one = bc(&[(0, 0.0, f64::INFINITY)]);
        let two = bc(&[(0, 0.0, f64::INFINITY), (0, 1.0, f64::INFINITY)]);
        assert_eq!(bottleneck(&one, &two, 0), f64::INFINITY);
        let shifted = bc(&[(0, 0.5, f64::INFINITY)]);
        assert_eq!(bottleneck(&one, &shifted, 0), 0.5);
        // finite against essential is forbidden
        let fin = bc(&[(0, 0.0, 5.0)]);
        assert_eq!(bottleneck(&one, &fin, 0), f64::INFINITY);
    }

    #[test]
    fn multiplicative_fixtures() {
        let a = bc(&[(1, 1.0, 4.0)]);
        assert_eq!(multiplicative_bottleneck(&a, &a, 1).unwrap(), 1.0);
        assert_eq!(
            multiplicative_bottleneck(&bc(&[(0, 0.0, 2.0)]), &bc(&[(0, 0.0, 6.0)]), 0).unwrap(),
            3.0
        );
        assert_eq!(multiplicative_bottleneck(&a, &bc(&[(1, 2.0, 8.0)]), 1).unwrap(), 2.0);
        // zero birth cannot go to the diagonal
        assert_eq!(
            multiplicative_bottleneck(&bc(&[(0, 0.0, 2.0)]), &bc(&[]), 0).unwrap(),
            f64::INFINITY
        );
        assert!(multiplicative_bottleneck(&bc(&[(1, -1.0, 2.0)]), &a, 1).is_err());
    }

    #[test]
    fn multiplicative_is_exp_of_log_rescaled_additive() {
        let a = bc(&[(1, 1.0, 4.0), (1, 2.0, 3.0), (1, 5.0, 9.0)]);
        let b = bc(&[(1, 1.5, 5.0), (1, 6.0, 7.0)]);
        let m = multiplicative_bottleneck(&a, &b, 1).unwrap();
        let l = bottleneck(&a.log_rescale().unwrap(), &b.log_rescale().unwrap(), 1);
        assert!((m.ln() - l).abs() < 1e-12, "{m} vs exp({l})");
    }

    #[test]
    fn matching_sizes() {
        assert_eq!(max_matching(&[vec![0, 1], vec![0], vec![1]], 2), 2);
        assert_eq!(max_matching(&[vec![], vec![]], 1), 0);
        assert_eq!(max_matching(&[vec![1], vec![0, 1]], 2), 2);
    }
}
