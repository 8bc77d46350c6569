//! Reference fixtures and random generators.
//!
//! The named fixtures pin down small geometries with known behavior: a jump
//! discontinuity in a 1-D index, a tangency that breaks finite stability, a
//! product grid that breaks completeness at exactly one cell, a pair of
//! circle filtrations that persistence diagrams cannot tell apart, and a
//! smooth function on a chain for modulus experiments. The random
//! generators produce connected spaces and stable filtrations for bulk
//! round-trip testing.

use std::sync::Arc;

use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::filtration::{Filtration1D, FiltrationND, Index1D};
use crate::space::{chain_space, cycle_space, Metric, SampledSpace};
use crate::subset::Subset;
use crate::synthesis::FilteringFunction;

/// A 1-D filtration on the interval [0, 2] whose index set is
/// {-1} followed by an even subdivision of [0, 1]. The set at index 0 is a
/// single point while the sets at positive indices are intervals [0, i + 1],
/// so the filtration is stable but its set-valued map jumps at 0: the
/// Hausdorff gap between consecutive sets stays near 1 no matter how fine
/// the sampling.
pub fn interval_jump_fixture<F: Float>(resolution: F, steps: usize) -> Result<Filtration1D<F>> {
    if steps == 0 {
        return Err(Error::BadFixtureParameter("steps must be positive".into()));
    }
    let count = to_count(F::from(2.0).unwrap() / resolution)? + 1;
    let space = Arc::new(chain_space(count, resolution, resolution)?);

    let mut index_values = vec![-F::one()];
    for k in 0..=steps {
        index_values.push(F::from(k).unwrap() / F::from(steps).unwrap());
    }
    let index = Index1D::new(index_values)?;

    let mut sets = vec![Subset::empty(count), Subset::from_indices(count, [0])];
    for k in 1..=steps {
        let i = k as f64 / steps as f64;
        let cutoff = to_count(F::from(i + 1.0).unwrap() / resolution)?;
        sets.push(Subset::from_indices(count, 0..=cutoff.min(count - 1)));
    }
    Filtration1D::new(space, index, sets)
}

/// A grid sampling of the disk of radius 3 filtered by four sets: empty, a
/// unit disk centered at (-1, 0), the left half of the disk, and the whole
/// disk. The small disk is internally tangent to the half-plane boundary at
/// the origin, so nesting holds but finite stability fails there: the
/// origin lies in the second set but not in the interior of the third.
pub struct TangentDiskFixture<F> {
    pub filtration: Filtration1D<F>,
    /// id of the origin, the point witnessing the stability failure
    pub tangency: usize,
}

pub fn tangent_disk_fixture<F: Float>(resolution: F) -> Result<TangentDiskFixture<F>> {
    let m = to_count(F::one() / resolution)? as i64;
    let radius = 3 * m;

    let mut points = Vec::new();
    let mut coords = Vec::new();
    let mut tangency = None;
    for a in -radius..=radius {
        for b in -radius..=radius {
            if a * a + b * b > radius * radius {
                continue;
            }
            if a == 0 && b == 0 {
                tangency = Some(points.len());
            }
            points.push(vec![
                F::from(a).unwrap() * resolution,
                F::from(b).unwrap() * resolution,
            ]);
            coords.push((a, b));
        }
    }
    let tangency = tangency.expect("origin is a grid point");
    let space = Arc::new(SampledSpace::from_points(&points, Metric::Euclidean, resolution)?);
    let n = points.len();

    let small_disk = Subset::from_indices(
        n,
        coords
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| (a + m) * (a + m) + b * b <= m * m)
            .map(|(id, _)| id),
    );
    let half = Subset::from_indices(
        n,
        coords
            .iter()
            .enumerate()
            .filter(|(_, &(a, _))| a <= 0)
            .map(|(id, _)| id),
    );
    let sets = vec![Subset::empty(n), small_disk, half, Subset::full(n)];

    let index = Index1D::new(vec![
        F::zero(),
        F::one(),
        F::from(2.0).unwrap(),
        F::from(3.0).unwrap(),
    ])?;
    let filtration = Filtration1D::new(space.clone(), index, sets)?;

    if !filtration.set(1).contains(tangency) {
        return Err(Error::FixtureIntegrity(
            "tangency point missing from the small disk".into(),
        ));
    }
    let outside_half = space
        .neighbors(tangency)
        .iter()
        .any(|&q| !filtration.set(2).contains(q));
    if !outside_half {
        return Err(Error::FixtureIntegrity(
            "tangency point has no neighbor outside the half disk".into(),
        ));
    }
    Ok(TangentDiskFixture { filtration, tangency })
}

/// A 2-D filtration over the rectangle [0, 4] x [0, 2] (grid spacing 1/4)
/// with axes {0, 1, 2} x {0, 1, 2}. Every cell is the intersection of its
/// two axis slices except (1, 1), which is a strict subset of it, so
/// completeness fails at exactly that cell while nesting and stability hold.
pub fn incomplete_grid_fixture<F: Float>() -> Result<FiltrationND<F>> {
    let resolution = F::from(0.25).unwrap();
    let cols = 17i64; // x = a / 4, a in 0..=16
    let rows = 9i64; // y = b / 4, b in 0..=8

    let mut points = Vec::new();
    let mut coords = Vec::new();
    for a in 0..cols {
        for b in 0..rows {
            points.push(vec![
                F::from(a).unwrap() * resolution,
                F::from(b).unwrap() * resolution,
            ]);
            coords.push((a, b));
        }
    }
    let space = Arc::new(SampledSpace::from_points(&points, Metric::Euclidean, resolution)?);
    let n = points.len();

    // axis slices: x <= 2.5 on the first axis, y <= 1.25 on the second
    let slice = |pred: &dyn Fn(i64, i64) -> bool| {
        Subset::from_indices(
            n,
            coords
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| pred(a, b))
                .map(|(id, _)| id),
        )
    };
    let x_slices = [Subset::empty(n), slice(&|a, _| a <= 10), Subset::full(n)];
    let y_slices = [Subset::empty(n), slice(&|_, b| b <= 5), Subset::full(n)];

    let mut sets = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            if (i, j) == (1, 1) {
                sets.push(slice(&|a, b| a <= 4 && b <= 4));
            } else {
                sets.push(x_slices[i].intersection(&y_slices[j]));
            }
        }
    }

    let axis = || Index1D::new(vec![F::zero(), F::one(), F::from(2.0).unwrap()]);
    FiltrationND::new(space, vec![axis()?, axis()?], sets)
}

/// Two filtrations of the same circle whose synthesized filtering functions
/// have identical sub-level persistence in degrees 0 and 1 but differ as
/// functions: no monotone cyclic correspondence aligns them closely, so the
/// pseudo-distance separates what bottleneck distance cannot.
pub struct CirclePairFixture<F> {
    pub first: Filtration1D<F>,
    pub second: Filtration1D<F>,
    /// ids (in either circle, they share the space) of the critical samples
    /// of the first filtration used by the separation bound
    pub min_two: usize,
    pub min_three: usize,
    pub max_four: usize,
    pub max_five: usize,
}

// Critical values around each circle and arc lengths between consecutive
// criticals, per 256 samples; both sum to a full turn. The heights are
// piecewise linear in the sample index. For every local extremum the two
// flanking slopes agree between the circles up to mirror, and so do the
// distances to the nearest strictly higher region, which makes the
// synthesized functions' saddle heights and therefore their persistence
// diagrams agree bitwise. The index set refines the grid just below the two
// middle peaks (at 3.75 and 4.25) to pin their synthesized heights close to
// each other: that keeps the separation bound small while the cost of
// flattening either peak stays large.
const CIRCLE_LEVELS_Q: [i64; 9] = [0, 4, 8, 12, 15, 16, 17, 20, 24]; // quarters
const CIRCLE_VALUES_A: [i64; 6] = [1, 6, 3, 4, 2, 5];
const CIRCLE_ARCS_A: [i64; 6] = [60, 36, 28, 32, 36, 64];
const CIRCLE_VALUES_B: [i64; 6] = [1, 6, 2, 4, 3, 5];
const CIRCLE_ARCS_B: [i64; 6] = [60, 48, 32, 28, 24, 64];

fn circle_sets(n: usize, values: &[i64; 6], arcs: &[i64; 6], k: i64) -> Vec<Subset> {
    // sample j on the arc from value va to vb at offset t has height
    // va + (vb - va) * t / len; membership in {height <= q / 4} is the
    // integer comparison 4 * va * len + 4 * (vb - va) * t <= q * len
    let mut starts = [0i64; 6];
    for m in 1..6 {
        starts[m] = starts[m - 1] + arcs[m - 1] * k;
    }
    let mut sets = Vec::with_capacity(CIRCLE_LEVELS_Q.len());
    for &q in &CIRCLE_LEVELS_Q {
        let mut set = Subset::empty(n);
        for j in 0..n as i64 {
            let m = (0..6)
                .rev()
                .find(|&m| starts[m] <= j)
                .expect("sample belongs to an arc");
            let t = j - starts[m];
            let len = arcs[m] * k;
            let va = values[m];
            let vb = values[(m + 1) % 6];
            if 4 * va * len + 4 * (vb - va) * t <= q * len {
                set.insert(j as usize);
            }
        }
        sets.push(set);
    }
    sets
}

pub fn circle_pair_fixture<F: Float>(n: usize) -> Result<CirclePairFixture<F>> {
    if n == 0 || n % 256 != 0 {
        return Err(Error::BadFixtureParameter(format!(
            "circle pair needs a positive multiple of 256 samples, got {n}"
        )));
    }
    let k = (n / 256) as i64;
    let spacing = F::from(12.0).unwrap() / F::from(n).unwrap();
    let space = Arc::new(cycle_space(n, spacing, spacing)?);

    let index = || {
        Index1D::new(
            CIRCLE_LEVELS_Q
                .iter()
                .map(|&q| F::from(q).unwrap() / F::from(4).unwrap())
                .collect::<Vec<F>>(),
        )
    };
    let first = Filtration1D::new(
        space.clone(),
        index()?,
        circle_sets(n, &CIRCLE_VALUES_A, &CIRCLE_ARCS_A, k),
    )?;
    let second = Filtration1D::new(
        space.clone(),
        index()?,
        circle_sets(n, &CIRCLE_VALUES_B, &CIRCLE_ARCS_B, k),
    )?;

    let position = |value: i64| -> usize {
        let m = CIRCLE_VALUES_A.iter().position(|&v| v == value).unwrap();
        let offset: i64 = CIRCLE_ARCS_A[..m].iter().map(|&a| a * k).sum();
        offset as usize
    };
    Ok(CirclePairFixture {
        first,
        second,
        min_two: position(2),
        min_three: position(3),
        max_four: position(4),
        max_five: position(5),
    })
}

/// A chain sampling of [0, 2] carrying sin(pi x / 2), a 1-Lipschitz-scaled
/// smooth function (Lipschitz constant pi / 2) for modulus convergence
/// experiments.
pub fn smooth_chain_fixture<F: Float>(
    resolution: F,
) -> Result<(Arc<SampledSpace<F>>, FilteringFunction<F>)> {
    let count = to_count(F::from(2.0).unwrap() / resolution)? + 1;
    let space = Arc::new(chain_space(count, resolution, resolution)?);
    let half_pi = F::from(std::f64::consts::FRAC_PI_2).unwrap();
    let values = (0..count)
        .map(|j| (half_pi * F::from(j).unwrap() * resolution).sin())
        .collect();
    Ok((space, FilteringFunction::from_scalar(values)))
}

/// A connected random space: points uniform in the unit square with the
/// resolution set to the longest minimum-spanning-tree edge, so the
/// neighborhood graph is connected by construction.
pub fn random_space<F: Float>(seed: u64, count: usize) -> Result<SampledSpace<F>> {
    if count < 2 {
        return Err(Error::BadFixtureParameter(
            "random space needs at least 2 points".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Vec<F>> = (0..count)
        .map(|_| {
            vec![
                F::from(rng.gen_range(0.0..1.0)).unwrap(),
                F::from(rng.gen_range(0.0..1.0)).unwrap(),
            ]
        })
        .collect();

    let dist = |p: &[F], q: &[F]| {
        let dx = p[0] - q[0];
        let dy = p[1] - q[1];
        (dx * dx + dy * dy).sqrt()
    };
    // Prim's algorithm; the longest edge added is the connectivity threshold
    let mut in_tree = vec![false; count];
    let mut best = vec![F::infinity(); count];
    in_tree[0] = true;
    for q in 1..count {
        best[q] = dist(&points[0], &points[q]);
    }
    let mut resolution = F::zero();
    for _ in 1..count {
        let next = (0..count)
            .filter(|&q| !in_tree[q])
            .min_by(|&a, &b| best[a].partial_cmp(&best[b]).unwrap())
            .unwrap();
        resolution = resolution.max(best[next]);
        in_tree[next] = true;
        for q in 0..count {
            if !in_tree[q] {
                best[q] = best[q].min(dist(&points[next], &points[q]));
            }
        }
    }
    SampledSpace::from_points(&points, Metric::Euclidean, resolution)
}

/// A random stable filtration on a given space. Each level contains the
/// dilation (set plus all its neighbors) of the previous one, which is
/// exactly the finite stability condition, plus random extra points. The
/// index is 0, 1, 2, ... and growth stops once the full space is reached,
/// so the filtration may have fewer levels than `max_levels`.
pub fn random_stable_filtration<F: Float>(
    space: Arc<SampledSpace<F>>,
    seed: u64,
    max_levels: usize,
) -> Result<Filtration1D<F>> {
    if max_levels < 2 {
        return Err(Error::BadFixtureParameter(
            "a filtration needs at least 2 levels".into(),
        ));
    }
    let n = space.point_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut sets = vec![Subset::empty(n)];
    let mut current = Subset::empty(n);
    current.insert(rng.gen_range(0..n));
    while !current.is_full() && sets.len() + 1 < max_levels {
        sets.push(current.clone());
        let mut next = current.clone();
        for p in current.iter() {
            for &q in space.neighbors(p) {
                next.insert(q);
            }
        }
        for p in 0..n {
            if rng.gen_bool(0.05) {
                next.insert(p);
            }
        }
        current = next;
    }
    sets.push(Subset::full(n));

    let index = Index1D::new((0..sets.len()).map(|i| F::from(i).unwrap()).collect())?;
    Filtration1D::new(space, index, sets)
}

fn to_count<F: Float>(value: F) -> Result<usize> {
    let rounded = value.round();
    if (value - rounded).abs() > F::from(1e-9).unwrap() {
        return Err(Error::BadFixtureParameter(
            "resolution does not evenly divide the fixture extent".into(),
        ));
    }
    rounded
        .to_usize()
        .ok_or_else(|| Error::BadFixtureParameter("count out of range".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_jump_is_stable_with_a_hausdorff_gap() {
        let f = interval_jump_fixture::<f64>(0.1, 10).unwrap();
        assert!(f.check_stability_finite().unwrap().passed());
        let profile = f.continuity_profile().unwrap();
        // empty -> single point is flagged; single point -> interval jumps
        assert!(profile[0].flagged);
        assert!(profile[1].dh_sets >= 1.0 - 2.0 * 0.1);
    }

    #[test]
    fn tangent_disk_fails_stability_at_the_origin() {
        let fixture = tangent_disk_fixture::<f64>(0.5).unwrap();
        assert!(fixture.filtration.check_nesting(true).passed());
        let report = fixture.filtration.check_stability_finite().unwrap();
        assert_eq!(report.violations.len(), 1);
        let v = &report.violations[0];
        assert_eq!(v.positions, vec![1, 2]);
        assert_eq!(v.points, vec![fixture.tangency]);
    }

    #[test]
    fn incomplete_grid_fails_only_at_the_middle_cell() {
        let f = incomplete_grid_fixture::<f64>().unwrap();
        assert!(f.check_nesting(true).passed());
        assert!(f.check_stability_nd().unwrap().passed());
        let report = f.check_completeness().unwrap();
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].positions, vec![1, 1]);
    }

    #[test]
    fn circle_pair_filtrations_are_stable() {
        let pair = circle_pair_fixture::<f64>(256).unwrap();
        assert!(pair.first.check_stability_finite().unwrap().passed());
        assert!(pair.second.check_stability_finite().unwrap().passed());
        assert!(pair.first.sets() != pair.second.sets());
        assert!(circle_pair_fixture::<f64>(100).is_err());
    }

    #[test]
    fn random_space_is_connected() {
        for seed in 0..5 {
            let space = random_space::<f64>(seed, 40).unwrap();
            assert!(space.is_connected());
        }
    }

    #[test]
    fn random_filtrations_are_stable() {
        for seed in 0..5 {
            let space = Arc::new(random_space::<f64>(seed, 30).unwrap());
            let f = random_stable_filtration(space, seed ^ 0xabcd, 8).unwrap();
            assert!(f.check_stability_finite().unwrap().passed());
            assert!(f.len() >= 2);
        }
    }
}
