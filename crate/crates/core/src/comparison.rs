//! Distances between filtering functions and between persistence diagrams.
//!
//! Two routes for comparing filtrations are implemented side by side: the
//! direct route through the synthesized filtering functions (L-infinity, and
//! on circles a pseudo-distance over monotone cyclic correspondences) and
//! the classical route through sub-level persistence diagrams and the
//! bottleneck distance. The circle fixtures demonstrate that the direct
//! route separates filtrations the diagram route cannot.

use num_traits::Float;

use crate::error::{Error, Result};
use crate::space::SampledSpace;
use crate::synthesis::FilteringFunction;

/// A finite multiset of (birth, death) pairs plus essential classes.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram<F> {
    pub degree: u8,
    /// birth < death for every pair
    pub finite_pairs: Vec<(F, F)>,
    /// birth values of classes that never die
    pub essential: Vec<F>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Preserving,
    Reversing,
}

/// A monotone correspondence between two cyclically ordered sequences of the
/// same space, realizing a pseudo-distance value.
#[derive(Debug, Clone)]
pub struct CyclicCorrespondence {
    pub orientation: Orientation,
    /// matched (position in first sequence, position in second sequence),
    /// cyclically monotone and covering both sequences
    pub pairs: Vec<(usize, usize)>,
}

/// Max-norm distance between two functions on the same space.
pub fn linf_distance<F: Float>(
    a: &FilteringFunction<F>,
    b: &FilteringFunction<F>,
) -> Result<F> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            got: b.dim(),
            expected: a.dim(),
        });
    }
    if a.point_count() != b.point_count() {
        return Err(Error::SpaceMismatch {
            got: b.point_count(),
            expected: a.point_count(),
        });
    }
    let mut worst = F::zero();
    for (x, y) in a.values().iter().zip(b.values().iter()) {
        let d = (*x - *y).abs();
        if d > worst {
            worst = d;
        }
    }
    Ok(worst)
}

/// The cyclic order of a space whose neighborhood graph is a single cycle.
pub fn cycle_order<F: Float>(space: &SampledSpace<F>) -> Result<Vec<usize>> {
    let n = space.point_count();
    if n < 3 {
        return Err(Error::UnsupportedTopology(format!(
            "cycle needs at least 3 points, got {n}"
        )));
    }
    for p in 0..n {
        if space.neighbors(p).len() != 2 {
            return Err(Error::UnsupportedTopology(format!(
                "point {p} has {} neighbors, expected 2",
                space.neighbors(p).len()
            )));
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut prev = usize::MAX;
    let mut current = 0usize;
    loop {
        order.push(current);
        let ns = space.neighbors(current);
        let next = if ns[0] != prev { ns[0] } else { ns[1] };
        prev = current;
        current = next;
        if current == 0 {
            break;
        }
        if order.len() > n {
            return Err(Error::UnsupportedTopology(
                "neighborhood graph is not a single cycle".into(),
            ));
        }
    }
    if order.len() != n {
        return Err(Error::UnsupportedTopology(
            "neighborhood graph is not a single cycle".into(),
        ));
    }
    Ok(order)
}

/// Pinned discrete-Frechet-style min-max cost between two length-(n+1)
/// closed walks.
fn coupling_cost<F: Float>(a: &[F], b: &[F]) -> F {
    let rows = a.len();
    let cols = b.len();
    let mut dp = vec![F::infinity(); rows * cols];
    for i in 0..rows {
        for j in 0..cols {
            let cost = (a[i] - b[j]).abs();
            let best_prev = if i == 0 && j == 0 {
                F::zero()
            } else {
                let mut m = F::infinity();
                if i > 0 {
                    m = m.min(dp[(i - 1) * cols + j]);
                    if j > 0 {
                        m = m.min(dp[(i - 1) * cols + j - 1]);
                    }
                }
                if j > 0 {
                    m = m.min(dp[i * cols + j - 1]);
                }
                m
            };
            dp[i * cols + j] = cost.max(best_prev);
        }
    }
    dp[rows * cols - 1]
}

fn rotated<F: Float>(seq: &[F], offset: usize) -> Vec<F> {
    let n = seq.len();
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        out.push(seq[(offset + k) % n]);
    }
    out
}

/// Pseudo-distance between two 1-D functions on a cycle space: the minimum
/// over monotone cyclic correspondences (both orientations, all offsets) of
/// the largest matched value difference. A lower bound for the natural
/// pseudo-distance of the sampled functions that converges under refinement.
pub fn pseudo_distance_cycle<F: Float>(
    space: &SampledSpace<F>,
    a: &FilteringFunction<F>,
    b: &FilteringFunction<F>,
) -> Result<F> {
    Ok(pseudo_distance_cycle_with_witness(space, a, b)?.0)
}

/// As [`pseudo_distance_cycle`], also returning a realizing correspondence.
pub fn pseudo_distance_cycle_with_witness<F: Float>(
    space: &SampledSpace<F>,
    a: &FilteringFunction<F>,
    b: &FilteringFunction<F>,
) -> Result<(F, CyclicCorrespondence)> {
    if a.dim() != 1 || b.dim() != 1 {
        return Err(Error::DimensionMismatch {
            got: a.dim().max(b.dim()),
            expected: 1,
        });
    }
    if a.point_count() != space.point_count() || b.point_count() != space.point_count() {
        return Err(Error::SpaceMismatch {
            got: a.point_count(),
            expected: space.point_count(),
        });
    }
    let order = cycle_order(space)?;
    let n = order.len();
    let seq_a: Vec<F> = order.iter().map(|&p| a.scalar(p)).collect();
    let seq_b_fwd: Vec<F> = order.iter().map(|&p| b.scalar(p)).collect();
    let seq_b_rev: Vec<F> = seq_b_fwd.iter().rev().copied().collect();

    let mut closed_a = seq_a.clone();
    closed_a.push(seq_a[0]);

    let mut best = F::infinity();
    let mut best_config = (Orientation::Preserving, 0usize);
    for (orientation, seq_b) in [
        (Orientation::Preserving, &seq_b_fwd),
        (Orientation::Reversing, &seq_b_rev),
    ] {
        for offset in 0..n {
            let closed_b = rotated(seq_b, offset);
            let cost = coupling_cost(&closed_a, &closed_b);
            if cost < best {
                best = cost;
                best_config = (orientation, offset);
            }
        }
    }

    // reconstruct a correspondence for the best configuration
    let (orientation, offset) = best_config;
    let seq_b = match orientation {
        Orientation::Preserving => &seq_b_fwd,
        Orientation::Reversing => &seq_b_rev,
    };
    let closed_b = rotated(seq_b, offset);
    let pairs = backtrack_pairs(&closed_a, &closed_b, n, offset, orientation);
    Ok((
        best,
        CyclicCorrespondence {
            orientation,
            pairs,
        },
    ))
}

fn backtrack_pairs<F: Float>(
    a: &[F],
    b: &[F],
    n: usize,
    offset: usize,
    orientation: Orientation,
) -> Vec<(usize, usize)> {
    let rows = a.len();
    let cols = b.len();
    let mut dp = vec![F::infinity(); rows * cols];
    for i in 0..rows {
        for j in 0..cols {
            let cost = (a[i] - b[j]).abs();
            let best_prev = if i == 0 && j == 0 {
                F::zero()
            } else {
                let mut m = F::infinity();
                if i > 0 {
                    m = m.min(dp[(i - 1) * cols + j]);
                    if j > 0 {
                        m = m.min(dp[(i - 1) * cols + j - 1]);
                    }
                }
                if j > 0 {
                    m = m.min(dp[i * cols + j - 1]);
                }
                m
            };
            dp[i * cols + j] = cost.max(best_prev);
        }
    }
    let mut pairs = Vec::new();
    let (mut i, mut j) = (rows - 1, cols - 1);
    loop {
        // report positions in the original cyclic sequences
        let bj = match orientation {
            Orientation::Preserving => (offset + j) % n,
            Orientation::Reversing => (n - 1 - ((offset + j) % n)) % n,
        };
        pairs.push((i % n, bj));
        if i == 0 && j == 0 {
            break;
        }
        let mut next = (i, j);
        let mut best = F::infinity();
        if i > 0 && dp[(i - 1) * cols + j] < best {
            best = dp[(i - 1) * cols + j];
            next = (i - 1, j);
        }
        if j > 0 && dp[i * cols + j - 1] < best {
            best = dp[i * cols + j - 1];
            next = (i, j - 1);
        }
        if i > 0 && j > 0 && dp[(i - 1) * cols + j - 1] <= best {
            next = (i - 1, j - 1);
        }
        (i, j) = next;
    }
    pairs.reverse();
    pairs
}

/// Degree-0 sub-level persistence by the elder rule: points enter by
/// increasing value (ties by id), components merge through neighbor edges,
/// and at each merge the younger component dies.
pub fn sublevel_pd0<F: Float>(
    space: &SampledSpace<F>,
    phi: &FilteringFunction<F>,
) -> Result<PersistenceDiagram<F>> {
    if phi.dim() != 1 {
        return Err(Error::DimensionMismatch {
            got: phi.dim(),
            expected: 1,
        });
    }
    if phi.point_count() != space.point_count() {
        return Err(Error::SpaceMismatch {
            got: phi.point_count(),
            expected: space.point_count(),
        });
    }
    let n = space.point_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&p, &q| {
        phi.scalar(p)
            .partial_cmp(&phi.scalar(q))
            .unwrap()
            .then(p.cmp(&q))
    });

    let mut parent: Vec<usize> = (0..n).collect();
    let mut birth: Vec<F> = vec![F::nan(); n];
    let birth_id: Vec<usize> = (0..n).collect();
    let mut active = vec![false; n];

    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    let mut finite_pairs = Vec::new();
    for &p in &order {
        active[p] = true;
        birth[p] = phi.scalar(p);
        for &q in space.neighbors(p) {
            if !active[q] {
                continue;
            }
            let rp = find(&mut parent, p);
            let rq = find(&mut parent, q);
            if rp == rq {
                continue;
            }
            // older root: smaller birth, ties by smaller entry id
            let (older, younger) = if (birth[rp], birth_id[rp]) < (birth[rq], birth_id[rq]) {
                (rp, rq)
            } else {
                (rq, rp)
            };
            let death = phi.scalar(p);
            if birth[younger] < death {
                finite_pairs.push((birth[younger], death));
            }
            parent[younger] = older;
        }
    }

    let root = find(&mut parent, 0);
    let connected = (0..n).all(|p| find(&mut parent, p) == root);
    if !connected {
        return Err(Error::UnsupportedTopology(
            "sub-level persistence requires a connected space".into(),
        ));
    }
    finite_pairs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(PersistenceDiagram {
        degree: 0,
        finite_pairs,
        essential: vec![birth[root]],
    })
}

/// Degree-1 sub-level persistence on a cycle space: the single loop appears
/// when the last point enters.
pub fn essential_h1_cycle<F: Float>(
    space: &SampledSpace<F>,
    phi: &FilteringFunction<F>,
) -> Result<PersistenceDiagram<F>> {
    if phi.dim() != 1 {
        return Err(Error::DimensionMismatch {
            got: phi.dim(),
            expected: 1,
        });
    }
    cycle_order(space)?;
    let max = phi
        .values()
        .iter()
        .copied()
        .fold(F::neg_infinity(), F::max);
    Ok(PersistenceDiagram {
        degree: 1,
        finite_pairs: Vec::new(),
        essential: vec![max],
    })
}

fn diagonal_cost<F: Float>(pair: (F, F)) -> F {
    (pair.1 - pair.0) / (F::one() + F::one())
}

fn pair_cost<F: Float>(a: (F, F), b: (F, F)) -> F {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

/// Whether all finite pairs can be partially matched within cost `t`
/// (unmatched pairs pay their diagonal cost).
fn feasible<F: Float>(left: &[(F, F)], right: &[(F, F)], t: F) -> bool {
    let nl = left.len();
    let nr = right.len();
    // left side: nl real + nr diagonal slots; right side: nr real + nl slots
    let total_left = nl + nr;
    let total_right = nr + nl;
    let adjacency = |l: usize| -> Vec<usize> {
        let mut out = Vec::new();
        if l < nl {
            for j in 0..nr {
                if pair_cost(left[l], right[j]) <= t {
                    out.push(j);
                }
            }
            if diagonal_cost(left[l]) <= t {
                out.push(nr + l);
            }
        } else {
            let j = l - nl; // diagonal slot for right[j]
            if diagonal_cost(right[j]) <= t {
                out.push(j);
            }
            // diagonal matched to diagonal is free
            for k in nr..total_right {
                out.push(k);
            }
        }
        out
    };

    let mut match_right = vec![usize::MAX; total_right];
    fn augment(
        l: usize,
        adjacency: &dyn Fn(usize) -> Vec<usize>,
        match_right: &mut [usize],
        seen: &mut [bool],
    ) -> bool {
        for r in adjacency(l) {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            if match_right[r] == usize::MAX
                || augment(match_right[r], adjacency, match_right, seen)
            {
                match_right[r] = l;
                return true;
            }
        }
        false
    }
    let mut matched = 0;
    for l in 0..total_left {
        let mut seen = vec![false; total_right];
        if augment(l, &adjacency, &mut match_right, &mut seen) {
            matched += 1;
        }
    }
    matched == total_left
}

/// Exact bottleneck distance between two diagrams of the same degree.
///
/// Essential classes are matched to essential classes by sorted pairing; a
/// count mismatch makes the distance infinite. The finite part is found by
/// binary search over candidate costs with bipartite feasibility testing.
pub fn bottleneck<F: Float>(
    a: &PersistenceDiagram<F>,
    b: &PersistenceDiagram<F>,
) -> Result<F> {
    if a.degree != b.degree {
        return Err(Error::DegreeMismatch(a.degree, b.degree));
    }
    if a.essential.len() != b.essential.len() {
        return Ok(F::infinity());
    }
    let mut ea = a.essential.clone();
    let mut eb = b.essential.clone();
    ea.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eb.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let essential_cost = ea
        .iter()
        .zip(eb.iter())
        .map(|(x, y)| (*x - *y).abs())
        .fold(F::zero(), F::max);

    // candidate costs: every pairwise cost and every diagonal cost
    let mut candidates = vec![F::zero()];
    for &p in &a.finite_pairs {
        candidates.push(diagonal_cost(p));
        for &q in &b.finite_pairs {
            candidates.push(pair_cost(p, q));
        }
    }
    for &q in &b.finite_pairs {
        candidates.push(diagonal_cost(q));
    }
    candidates.sort_by(|x, y| x.partial_cmp(y).unwrap());
    candidates.dedup();

    let mut lo = 0usize;
    let mut hi = candidates.len() - 1;
    debug_assert!(feasible(&a.finite_pairs, &b.finite_pairs, candidates[hi]));
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(&a.finite_pairs, &b.finite_pairs, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(essential_cost.max(candidates[lo]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{chain_space, cycle_space};

    #[test]
    fn linf_basics() {
        let a = FilteringFunction::from_scalar(vec![0.0, 1.0, 2.0]);
        let b = FilteringFunction::from_scalar(vec![0.5, 1.5, 2.5]);
        assert_eq!(linf_distance(&a, &a).unwrap(), 0.0);
        assert_eq!(linf_distance(&a, &b).unwrap(), 0.5);
    }

    #[test]
    fn monotone_chain_has_no_finite_pairs() {
        let space = chain_space(5, 1.0, 1.0).unwrap();
        let phi = FilteringFunction::from_scalar(vec![0.0, 1.0, 2.0, 3.0, 4.0]);
        let pd = sublevel_pd0(&space, &phi).unwrap();
        assert!(pd.finite_pairs.is_empty());
        assert_eq!(pd.essential, vec![0.0]);
    }

    #[test]
    fn w_shaped_chain() {
        // minima 0.0 and 0.5, middle maximum 2.0
        let space = chain_space(5, 1.0, 1.0).unwrap();
        let phi = FilteringFunction::from_scalar(vec![0.0, 2.0, 0.5, 1.0, 3.0]);
        let pd = sublevel_pd0(&space, &phi).unwrap();
        assert_eq!(pd.finite_pairs, vec![(0.5, 2.0)]);
        assert_eq!(pd.essential, vec![0.0]);
    }

    #[test]
    fn cycle_rotation_has_zero_pseudo_distance() {
        let space = cycle_space(8, 1.0, 1.0).unwrap();
        let values: Vec<f64> = vec![0.0, 1.0, 2.0, 3.0, 4.0, 3.0, 2.0, 1.0];
        let a = FilteringFunction::from_scalar(values.clone());
        for rot in 0..8 {
            let rotated: Vec<f64> = (0..8).map(|k| values[(k + rot) % 8]).collect();
            let b = FilteringFunction::from_scalar(rotated);
            assert_eq!(pseudo_distance_cycle(&space, &a, &b).unwrap(), 0.0);
        }
        let reversed = FilteringFunction::from_scalar(values.iter().rev().copied().collect());
        assert_eq!(pseudo_distance_cycle(&space, &a, &reversed).unwrap(), 0.0);
    }

    #[test]
    fn pseudo_distance_bounded_by_linf() {
        let space = cycle_space(6, 1.0, 1.0).unwrap();
        let a = FilteringFunction::from_scalar(vec![0.0, 1.0, 2.0, 1.0, 3.0, 1.5]);
        let b = FilteringFunction::from_scalar(vec![0.5, 1.0, 2.5, 1.0, 2.0, 1.0]);
        let pseudo = pseudo_distance_cycle(&space, &a, &b).unwrap();
        let linf = linf_distance(&a, &b).unwrap();
        assert!(pseudo <= linf);
    }

    #[test]
    fn chain_is_not_a_cycle() {
        let space = chain_space(5, 1.0, 1.0).unwrap();
        let a = FilteringFunction::from_scalar(vec![0.0; 5]);
        assert!(matches!(
            pseudo_distance_cycle(&space, &a, &a),
            Err(Error::UnsupportedTopology(_))
        ));
        assert!(matches!(
            essential_h1_cycle(&space, &a),
            Err(Error::UnsupportedTopology(_))
        ));
    }

    #[test]
    fn h1_on_cycle() {
        let space = cycle_space(6, 1.0, 1.0).unwrap();
        let constant = FilteringFunction::from_scalar(vec![2.0; 6]);
        let pd = essential_h1_cycle(&space, &constant).unwrap();
        assert_eq!(pd.degree, 1);
        assert_eq!(pd.essential, vec![2.0]);
        let height = FilteringFunction::from_scalar(vec![0.0, 1.0, 2.0, 3.0, 2.0, 1.0]);
        assert_eq!(
            essential_h1_cycle(&space, &height).unwrap().essential,
            vec![3.0]
        );
    }

    #[test]
    fn bottleneck_identical_and_diagonal() {
        let d1 = PersistenceDiagram {
            degree: 0,
            finite_pairs: vec![(0.0, 2.0)],
            essential: vec![0.0],
        };
        assert_eq!(bottleneck(&d1, &d1).unwrap(), 0.0);
        let empty = PersistenceDiagram {
            degree: 0,
            finite_pairs: vec![],
            essential: vec![0.0],
        };
        // (0,2) retires to the diagonal at cost 1
        assert_eq!(bottleneck(&d1, &empty).unwrap(), 1.0);
    }

    #[test]
    fn bottleneck_essential_mismatch_is_infinite() {
        let d1 = PersistenceDiagram {
            degree: 1,
            finite_pairs: vec![],
            essential: vec![1.0],
        };
        let d2 = PersistenceDiagram {
            degree: 1,
            finite_pairs: vec![],
            essential: vec![1.0, 2.0],
        };
        assert!(bottleneck(&d1, &d2).unwrap().is_infinite());
    }

    #[test]
    fn bottleneck_matching_beats_diagonal() {
        let d1 = PersistenceDiagram {
            degree: 0,
            finite_pairs: vec![(0.0, 10.0), (1.0, 2.0)],
            essential: vec![],
        };
        let d2 = PersistenceDiagram {
            degree: 0,
            finite_pairs: vec![(0.5, 10.0)],
            essential: vec![],
        };
        // (0,10) matches (0.5,10) at 0.5; (1,2) retires at 0.5
        assert_eq!(bottleneck(&d1, &d2).unwrap(), 0.5);
    }
}
