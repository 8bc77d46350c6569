//! Discretized model of a compact metric space.
//!
//! A [`SampledSpace`] is a finite metric space together with a resolution
//! `eps`; two distinct points are neighbors when their distance is at most
//! `eps`. Interior, closure and boundary of subsets are defined through this
//! neighborhood graph, which makes every topological predicate decidable at
//! the chosen resolution.

use std::collections::BinaryHeap;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::subset::Subset;

/// Metric used when constructing a space from point coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Euclidean,
    /// Shortest-path distance over the eps-neighborhood graph of the
    /// Euclidean metric, with Euclidean edge lengths.
    Geodesic,
}

#[derive(Debug, Clone)]
pub struct SampledSpace<F> {
    point_count: usize,
    dist: Vec<F>,
    resolution: F,
    diameter: F,
    neighbors: Vec<Vec<usize>>,
}

/// Above this size the O(n^3) triangle-inequality check is skipped by default.
pub const TRIANGLE_CHECK_LIMIT: usize = 2000;

impl<F: Float> SampledSpace<F> {
    /// Builds a space from an explicit distance matrix (row-major, n*n).
    ///
    /// Symmetry and the identity axiom are always checked. The triangle
    /// inequality is checked when `check_triangle` asks for it (`None` means
    /// on below [`TRIANGLE_CHECK_LIMIT`] points, off above).
    pub fn from_matrix(
        dist: Vec<F>,
        point_count: usize,
        resolution: F,
        check_triangle: Option<bool>,
    ) -> Result<Self> {
        if point_count == 0 {
            return Err(Error::EmptySpace);
        }
        if resolution <= F::zero() {
            return Err(Error::BadResolution);
        }
        assert_eq!(dist.len(), point_count * point_count);
        for i in 0..point_count {
            if dist[i * point_count + i] != F::zero() {
                return Err(Error::BadDiagonal { i, j: i });
            }
            for j in (i + 1)..point_count {
                let dij = dist[i * point_count + j];
                if dij != dist[j * point_count + i] {
                    return Err(Error::AsymmetricMatrix { i, j });
                }
                if dij <= F::zero() {
                    return Err(Error::BadDiagonal { i, j });
                }
            }
        }
        let check = check_triangle.unwrap_or(point_count < TRIANGLE_CHECK_LIMIT);
        if check {
            // a few ulps of slack: distances rounded through sqrt or text
            // serialization can overshoot collinear sums
            let slack = F::from(8.0).unwrap() * F::epsilon();
            for i in 0..point_count {
                for j in 0..point_count {
                    let dij = dist[i * point_count + j];
                    for k in 0..point_count {
                        let through = dij + dist[j * point_count + k];
                        if dist[i * point_count + k] > through + through * slack {
                            return Err(Error::TriangleViolation { i, j, k });
                        }
                    }
                }
            }
        }
        Ok(Self::from_checked_matrix(dist, point_count, resolution))
    }

    fn from_checked_matrix(dist: Vec<F>, point_count: usize, resolution: F) -> Self {
        let mut diameter = F::zero();
        for &d in &dist {
            if d > diameter {
                diameter = d;
            }
        }
        let mut neighbors = vec![Vec::new(); point_count];
        for p in 0..point_count {
            for q in 0..point_count {
                if p != q && dist[p * point_count + q] <= resolution {
                    neighbors[p].push(q);
                }
            }
        }
        SampledSpace {
            point_count,
            dist,
            resolution,
            diameter,
            neighbors,
        }
    }

    /// Builds a space from coordinates in R^k.
    pub fn from_points(points: &[Vec<F>], metric: Metric, resolution: F) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySpace);
        }
        if resolution <= F::zero() {
            return Err(Error::BadResolution);
        }
        let n = points.len();
        let mut dist = vec![F::zero(); n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = euclidean(&points[i], &points[j]);
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        if metric == Metric::Geodesic {
            dist = geodesic_from_euclidean(&dist, n, resolution)?;
        }
        // metrics by construction; no triangle check needed
        Ok(Self::from_checked_matrix(dist, n, resolution))
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    pub fn resolution(&self) -> F {
        self.resolution
    }

    pub fn diameter(&self) -> F {
        self.diameter
    }

    pub fn dist(&self, p: usize, q: usize) -> F {
        self.dist[p * self.point_count + q]
    }

    pub fn neighbors(&self, p: usize) -> &[usize] {
        &self.neighbors[p]
    }

    pub fn dist_matrix(&self) -> &[F] {
        &self.dist
    }

    fn check_subset(&self, x: &Subset) -> Result<()> {
        if x.ambient_len() != self.point_count {
            return Err(Error::IndexOutOfRange {
                index: x.ambient_len(),
                count: self.point_count,
            });
        }
        Ok(())
    }

    /// Whether the eps-neighborhood graph is connected.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.point_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut visited = 1;
        while let Some(p) = stack.pop() {
            for &q in &self.neighbors[p] {
                if !seen[q] {
                    seen[q] = true;
                    visited += 1;
                    stack.push(q);
                }
            }
        }
        visited == self.point_count
    }

    /// int(X): points of X all of whose neighbors lie in X.
    pub fn interior(&self, x: &Subset) -> Result<Subset> {
        self.check_subset(x)?;
        let mut out = Subset::empty(self.point_count);
        for p in x.iter() {
            if self.neighbors[p].iter().all(|&q| x.contains(q)) {
                out.insert(p);
            }
        }
        Ok(out)
    }

    /// cl(X^c), computed as the complement of int(X).
    pub fn closure_complement(&self, x: &Subset) -> Result<Subset> {
        Ok(self.interior(x)?.complement())
    }

    /// The boundary of X: X minus int(X).
    pub fn boundary(&self, x: &Subset) -> Result<Subset> {
        Ok(x.intersection(&self.closure_complement(x)?))
    }

    /// Distance from a point to a subset; infinity for the empty set.
    ///
    /// The infinite sentinel mirrors the exclusion of the empty set from the
    /// Hausdorff distance's domain; callers must branch before arithmetic.
    pub fn dist_point_set(&self, p: usize, x: &Subset) -> Result<F> {
        if p >= self.point_count {
            return Err(Error::IndexOutOfRange {
                index: p,
                count: self.point_count,
            });
        }
        self.check_subset(x)?;
        let mut best = F::infinity();
        for q in x.iter() {
            let d = self.dist(p, q);
            if d < best {
                best = d;
            }
        }
        Ok(best)
    }

    /// Hausdorff distance between two subsets.
    ///
    /// Zero when both are empty; infinity when exactly one is empty.
    pub fn hausdorff(&self, x: &Subset, y: &Subset) -> Result<F> {
        self.check_subset(x)?;
        self.check_subset(y)?;
        match (x.is_empty(), y.is_empty()) {
            (true, true) => return Ok(F::zero()),
            (true, false) | (false, true) => return Ok(F::infinity()),
            _ => {}
        }
        let mut worst = F::zero();
        for p in x.iter() {
            let d = self.dist_point_set(p, y)?;
            if d > worst {
                worst = d;
            }
        }
        for q in y.iter() {
            let d = self.dist_point_set(q, x)?;
            if d > worst {
                worst = d;
            }
        }
        Ok(worst)
    }

    /// Distance from every point to the auxiliary star point: diam(K)/2.
    pub fn star_distance(&self) -> Result<F> {
        if self.diameter <= F::zero() {
            return Err(Error::DegenerateSpace);
        }
        Ok(self.diameter / (F::one() + F::one()))
    }
}

fn euclidean<F: Float>(a: &[F], b: &[F]) -> F {
    let mut acc = F::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        let d = *x - *y;
        acc = acc + d * d;
    }
    acc.sqrt()
}

/// All-pairs shortest path over the eps-graph with Euclidean edge weights.
fn geodesic_from_euclidean<F: Float>(dist: &[F], n: usize, resolution: F) -> Result<Vec<F>> {
    let mut adj: Vec<Vec<(usize, F)>> = vec![Vec::new(); n];
    for p in 0..n {
        for q in 0..n {
            if p != q && dist[p * n + q] <= resolution {
                adj[p].push((q, dist[p * n + q]));
            }
        }
    }
    let mut out = vec![F::infinity(); n * n];
    for src in 0..n {
        let mut d = vec![F::infinity(); n];
        d[src] = F::zero();
        let mut heap: BinaryHeap<HeapEntry<F>> = BinaryHeap::new();
        heap.push(HeapEntry {
            cost: F::zero(),
            node: src,
        });
        while let Some(HeapEntry { cost, node }) = heap.pop() {
            if cost > d[node] {
                continue;
            }
            for &(next, w) in &adj[node] {
                let c = cost + w;
                if c < d[next] {
                    d[next] = c;
                    heap.push(HeapEntry { cost: c, node: next });
                }
            }
        }
        if d.iter().any(|v| v.is_infinite()) {
            return Err(Error::Disconnected);
        }
        out[src * n..(src + 1) * n].copy_from_slice(&d);
    }
    Ok(out)
}

struct HeapEntry<F> {
    cost: F,
    node: usize,
}

impl<F: Float> PartialEq for HeapEntry<F> {
    fn eq(&self, other: &Self) -> bool {
        self.cost == other.cost && self.node == other.node
    }
}
impl<F: Float> Eq for HeapEntry<F> {}
impl<F: Float> PartialOrd for HeapEntry<F> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl<F: Float> Ord for HeapEntry<F> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // min-heap on cost
        other
            .cost
            .partial_cmp(&self.cost)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// A uniform chain of `count` points with the given spacing.
pub fn chain_space<F: Float>(count: usize, spacing: F, resolution: F) -> Result<SampledSpace<F>> {
    let mut dist = vec![F::zero(); count * count];
    for i in 0..count {
        for j in 0..count {
            let gap = if i > j { i - j } else { j - i };
            dist[i * count + j] = F::from(gap).unwrap() * spacing;
        }
    }
    SampledSpace::from_matrix(dist, count, resolution, Some(false))
}

/// A uniform cycle of `count` points with geodesic distances that are exact
/// multiples of `spacing`.
pub fn cycle_space<F: Float>(count: usize, spacing: F, resolution: F) -> Result<SampledSpace<F>> {
    let mut dist = vec![F::zero(); count * count];
    for i in 0..count {
        for j in 0..count {
            let gap = if i > j { i - j } else { j - i };
            let hops = gap.min(count - gap);
            let h = F::from(hops).unwrap();
            dist[i * count + j] = h * spacing;
        }
    }
    SampledSpace::from_matrix(dist, count, resolution, Some(false))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain5() -> SampledSpace<f64> {
        chain_space(5, 1.0, 1.0).unwrap()
    }

    #[test]
    fn interior_of_full_and_empty() {
        let s = chain5();
        let full = Subset::full(5);
        let empty = Subset::empty(5);
        assert_eq!(s.interior(&full).unwrap(), full);
        assert_eq!(s.interior(&empty).unwrap(), empty);
    }

    #[test]
    fn interior_chain_prefix() {
        // chain of 5 points spacing 1, eps = 1, X = {0,1,2}
        let s = chain5();
        let x = Subset::from_indices(5, [0, 1, 2]);
        assert_eq!(s.interior(&x).unwrap().to_indices(), vec![0, 1]);
        assert_eq!(
            s.closure_complement(&x).unwrap().to_indices(),
            vec![2, 3, 4]
        );
        assert_eq!(s.boundary(&x).unwrap().to_indices(), vec![2]);
    }

    #[test]
    fn boundary_of_full_and_empty() {
        let s = chain5();
        assert!(s.boundary(&Subset::full(5)).unwrap().is_empty());
        assert!(s.boundary(&Subset::empty(5)).unwrap().is_empty());
    }

    #[test]
    fn point_set_distance() {
        let s = chain5();
        let x = Subset::from_indices(5, [0, 1]);
        assert_eq!(s.dist_point_set(4, &x).unwrap(), 3.0);
        assert_eq!(s.dist_point_set(1, &x).unwrap(), 0.0);
        assert!(s
            .dist_point_set(2, &Subset::empty(5))
            .unwrap()
            .is_infinite());
    }

    #[test]
    fn hausdorff_examples() {
        let s = chain5();
        let x = Subset::from_indices(5, [0]);
        let y = Subset::from_indices(5, [0, 4]);
        assert_eq!(s.hausdorff(&x, &y).unwrap(), 4.0);
        assert_eq!(s.hausdorff(&x, &x).unwrap(), 0.0);
        assert!(s.hausdorff(&Subset::empty(5), &y).unwrap().is_infinite());
        assert_eq!(
            s.hausdorff(&Subset::empty(5), &Subset::empty(5)).unwrap(),
            0.0
        );
    }

    #[test]
    fn star_distance_is_half_diameter() {
        let s = chain5();
        assert_eq!(s.star_distance().unwrap(), 2.0);
        let single = SampledSpace::from_matrix(vec![0.0], 1, 1.0, None).unwrap();
        assert!(matches!(
            single.star_distance(),
            Err(Error::DegenerateSpace)
        ));
    }

    #[test]
    fn triangle_check_rejects_bad_matrix() {
        // d(0,2) = 10 > d(0,1) + d(1,2) = 2
        let dist = vec![0.0, 1.0, 10.0, 1.0, 0.0, 1.0, 10.0, 1.0, 0.0];
        assert!(matches!(
            SampledSpace::from_matrix(dist, 3, 1.0, None),
            Err(Error::TriangleViolation { .. })
        ));
    }

    #[test]
    fn geodesic_circle_distances() {
        // 8 points on the unit circle; geodesic wraps around
        let n = 8;
        let points: Vec<Vec<f64>> = (0..n)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                vec![t.cos(), t.sin()]
            })
            .collect();
        let chord = (points[0][0] - points[1][0]).hypot(points[0][1] - points[1][1]);
        let s = SampledSpace::from_points(&points, Metric::Geodesic, chord * 1.01).unwrap();
        assert!((s.dist(0, 4) - 4.0 * chord).abs() < 1e-12);
        assert!((s.dist(0, 7) - chord).abs() < 1e-12);
    }
}
