//! 1-D and n-D filtrations of a sampled space, plus the validators for the
//! hypotheses under which a filtering function can be synthesized: nesting,
//! finite stability (K_i contained in the interior of K_j for i < j) and,
//! in the multi-parameter case, completeness.

use std::sync::Arc;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::space::SampledSpace;
use crate::subset::Subset;

/// A strictly increasing finite index set I of real values.
#[derive(Debug, Clone, PartialEq)]
pub struct Index1D<F> {
    values: Vec<F>,
}

impl<F: Float> Index1D<F> {
    pub fn new(values: Vec<F>) -> Result<Self> {
        if values.len() < 2 || values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadIndexSet);
        }
        Ok(Index1D { values })
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> F {
        self.values[0]
    }

    pub fn max(&self) -> F {
        *self.values.last().unwrap()
    }

    /// Smallest index above the minimum.
    pub fn second_min(&self) -> F {
        self.values[1]
    }

    /// Largest index below the maximum.
    pub fn second_max(&self) -> F {
        self.values[self.values.len() - 2]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    Nesting,
    StabilityB,
    Completeness,
    Continuity,
    /// A sub-level set of a candidate filtering function differs from the
    /// filtration's set at some index.
    Induction,
}

/// One validator finding, with enough context to locate it: the offending
/// index values, their grid positions, and witness points.
#[derive(Debug, Clone)]
pub struct Violation<F> {
    pub kind: ViolationKind,
    pub indices: Vec<F>,
    pub positions: Vec<usize>,
    pub points: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct ValidationReport<F> {
    pub violations: Vec<Violation<F>>,
}

impl<F> ValidationReport<F> {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn merge(&mut self, other: ValidationReport<F>) {
        self.violations.extend(other.violations);
    }
}

/// A finite 1-D filtration: nested subsets indexed by [`Index1D`], with the
/// empty set first and the full space last.
#[derive(Debug, Clone)]
pub struct Filtration1D<F> {
    space: Arc<SampledSpace<F>>,
    index: Index1D<F>,
    sets: Vec<Subset>,
}

impl<F: Float> Filtration1D<F> {
    pub fn new(
        space: Arc<SampledSpace<F>>,
        index: Index1D<F>,
        sets: Vec<Subset>,
    ) -> Result<Self> {
        if sets.len() != index.len() {
            return Err(Error::SetCountMismatch {
                sets: sets.len(),
                indices: index.len(),
            });
        }
        let n = space.point_count();
        if sets.iter().any(|s| s.ambient_len() != n) {
            return Err(Error::IndexOutOfRange { index: 0, count: n });
        }
        if !sets[0].is_empty() || !sets.last().unwrap().is_full() {
            return Err(Error::EndpointSets);
        }
        Ok(Filtration1D { space, index, sets })
    }

    pub fn space(&self) -> &Arc<SampledSpace<F>> {
        &self.space
    }

    pub fn index(&self) -> &Index1D<F> {
        &self.index
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn set(&self, level: usize) -> &Subset {
        &self.sets[level]
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Only the empty set and the full space.
    pub fn is_trivial(&self) -> bool {
        self.sets.len() == 2
    }

    /// Checks K_i subset of K_j for i < j. Consecutive pairs suffice by
    /// transitivity; `all_pairs` forces the full quadratic check.
    pub fn check_nesting(&self, all_pairs: bool) -> ValidationReport<F> {
        let mut violations = Vec::new();
        let pairs: Vec<(usize, usize)> = if all_pairs {
            (0..self.len())
                .flat_map(|a| ((a + 1)..self.len()).map(move |b| (a, b)))
                .collect()
        } else {
            (1..self.len()).map(|b| (b - 1, b)).collect()
        };
        for (a, b) in pairs {
            if !self.sets[a].is_subset(&self.sets[b]) {
                violations.push(Violation {
                    kind: ViolationKind::Nesting,
                    indices: vec![self.index.values()[a], self.index.values()[b]],
                    positions: vec![a, b],
                    points: self.sets[a].difference(&self.sets[b]).to_indices(),
                });
            }
        }
        ValidationReport { violations }
    }

    /// Finite stability: K_i subset of int(K_j) for every consecutive pair.
    /// Consecutive pairs suffice because interior is monotone and nesting has
    /// already been checked.
    pub fn check_stability_finite(&self) -> Result<ValidationReport<F>> {
        let nesting = self.check_nesting(false);
        if !nesting.passed() {
            return Err(Error::NotNested(nesting.violations.len()));
        }
        let mut violations = Vec::new();
        for b in 1..self.len() {
            let a = b - 1;
            let interior = self.space.interior(&self.sets[b])?;
            if !self.sets[a].is_subset(&interior) {
                violations.push(Violation {
                    kind: ViolationKind::StabilityB,
                    indices: vec![self.index.values()[a], self.index.values()[b]],
                    positions: vec![a, b],
                    points: self.sets[a].difference(&interior).to_indices(),
                });
            }
        }
        Ok(ValidationReport { violations })
    }

    /// Hausdorff variation across consecutive index pairs, for both the sets
    /// and the closures of their complements. A diagnostic for sampled
    /// compact index sets: it reports raw data and does not declare
    /// pass/fail. Entries with an empty side carry the infinite sentinel and
    /// are flagged.
    pub fn continuity_profile(&self) -> Result<Vec<ProfileEntry<F>>> {
        let nesting = self.check_nesting(false);
        if !nesting.passed() {
            return Err(Error::NotNested(nesting.violations.len()));
        }
        let mut out = Vec::with_capacity(self.len() - 1);
        for b in 1..self.len() {
            let a = b - 1;
            let dh_sets = self.space.hausdorff(&self.sets[a], &self.sets[b])?;
            let cl_a = self.space.closure_complement(&self.sets[a])?;
            let cl_b = self.space.closure_complement(&self.sets[b])?;
            let dh_closures = self.space.hausdorff(&cl_a, &cl_b)?;
            let flagged = (self.sets[a].is_empty() != self.sets[b].is_empty())
                || (cl_a.is_empty() != cl_b.is_empty());
            out.push(ProfileEntry {
                index_gap: self.index.values()[b] - self.index.values()[a],
                dh_sets,
                dh_closures,
                flagged,
            });
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ProfileEntry<F> {
    pub index_gap: F,
    pub dh_sets: F,
    pub dh_closures: F,
    /// One side of a comparison was empty; the infinite sentinel is present
    /// and the entry should not be read as a modulus sample.
    pub flagged: bool,
}

/// An n-D filtration over the full grid I_1 x ... x I_n, stored row-major
/// with the last axis varying fastest.
#[derive(Debug, Clone)]
pub struct FiltrationND<F> {
    space: Arc<SampledSpace<F>>,
    axes: Vec<Index1D<F>>,
    sets: Vec<Subset>,
}

impl<F: Float> FiltrationND<F> {
    pub fn new(
        space: Arc<SampledSpace<F>>,
        axes: Vec<Index1D<F>>,
        sets: Vec<Subset>,
    ) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::BadIndexSet);
        }
        let cells: usize = axes.iter().map(|a| a.len()).product();
        if sets.len() != cells {
            return Err(Error::SetCountMismatch {
                sets: sets.len(),
                indices: cells,
            });
        }
        let n = space.point_count();
        if sets.iter().any(|s| s.ambient_len() != n) {
            return Err(Error::IndexOutOfRange { index: 0, count: n });
        }
        let f = FiltrationND { space, axes, sets };
        let min_cell = vec![0; f.axes.len()];
        let max_cell: Vec<usize> = f.axes.iter().map(|a| a.len() - 1).collect();
        if !f.set(&min_cell).is_empty() || !f.set(&max_cell).is_full() {
            return Err(Error::EndpointSets);
        }
        Ok(f)
    }

    pub fn space(&self) -> &Arc<SampledSpace<F>> {
        &self.space
    }

    pub fn axes(&self) -> &[Index1D<F>] {
        &self.axes
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn cell_count(&self) -> usize {
        self.sets.len()
    }

    fn linear(&self, cell: &[usize]) -> usize {
        debug_assert_eq!(cell.len(), self.axes.len());
        let mut idx = 0;
        for (k, &c) in cell.iter().enumerate() {
            idx = idx * self.axes[k].len() + c;
        }
        idx
    }

    pub fn set(&self, cell: &[usize]) -> &Subset {
        &self.sets[self.linear(cell)]
    }

    /// Iterates the grid in row-major order.
    pub fn cells(&self) -> GridIter {
        GridIter::new(self.axes.iter().map(|a| a.len()).collect())
    }

    /// The index values of a grid cell.
    pub fn cell_values(&self, cell: &[usize]) -> Vec<F> {
        cell.iter()
            .enumerate()
            .map(|(k, &c)| self.axes[k].values()[c])
            .collect()
    }

    /// Nesting over covering pairs of the grid order (sufficient by
    /// transitivity); `all_pairs` forces every comparable pair.
    pub fn check_nesting(&self, all_pairs: bool) -> ValidationReport<F> {
        let mut violations = Vec::new();
        if all_pairs {
            let cells: Vec<Vec<usize>> = self.cells().collect();
            for a in &cells {
                for b in &cells {
                    if a != b && a.iter().zip(b.iter()).all(|(x, y)| x <= y) {
                        self.nesting_pair(a, b, &mut violations);
                    }
                }
            }
        } else {
            for cell in self.cells() {
                for axis in 0..self.axes.len() {
                    if cell[axis] + 1 < self.axes[axis].len() {
                        let mut next = cell.clone();
                        next[axis] += 1;
                        self.nesting_pair(&cell, &next, &mut violations);
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    fn nesting_pair(&self, a: &[usize], b: &[usize], violations: &mut Vec<Violation<F>>) {
        let sa = self.set(a);
        let sb = self.set(b);
        if !sa.is_subset(sb) {
            let mut indices = self.cell_values(a);
            indices.extend(self.cell_values(b));
            let mut positions = a.to_vec();
            positions.extend_from_slice(b);
            violations.push(Violation {
                kind: ViolationKind::Nesting,
                indices,
                positions,
                points: sa.difference(sb).to_indices(),
            });
        }
    }

    /// The 1-D filtration along axis `j`, read off the grid with all other
    /// coordinates at their maxima.
    pub fn axis_filtration(&self, j: usize) -> Result<Filtration1D<F>> {
        if j >= self.axes.len() {
            return Err(Error::DimensionMismatch {
                got: j,
                expected: self.axes.len(),
            });
        }
        let mut sets = Vec::with_capacity(self.axes[j].len());
        for h in 0..self.axes[j].len() {
            let cell: Vec<usize> = (0..self.axes.len())
                .map(|k| if k == j { h } else { self.axes[k].len() - 1 })
                .collect();
            sets.push(self.set(&cell).clone());
        }
        Filtration1D::new(self.space.clone(), self.axes[j].clone(), sets)
    }

    /// Runs the finite stability check on every axis filtration.
    pub fn check_stability_nd(&self) -> Result<ValidationReport<F>> {
        let nesting = self.check_nesting(false);
        if !nesting.passed() {
            return Err(Error::NotNested(nesting.violations.len()));
        }
        let mut report = ValidationReport {
            violations: Vec::new(),
        };
        for j in 0..self.axes.len() {
            report.merge(self.axis_filtration(j)?.check_stability_finite()?);
        }
        Ok(report)
    }

    /// Completeness: every grid set must equal the intersection of its axis
    /// slices. Under nesting the set is always contained in the intersection,
    /// so violations are strict subsets and the witnesses are the missing
    /// points.
    pub fn check_completeness(&self) -> Result<ValidationReport<F>> {
        let nesting = self.check_nesting(false);
        if !nesting.passed() {
            return Err(Error::NotNested(nesting.violations.len()));
        }
        let axis_filts: Vec<Filtration1D<F>> = (0..self.axes.len())
            .map(|j| self.axis_filtration(j))
            .collect::<Result<_>>()?;
        let mut violations = Vec::new();
        for cell in self.cells() {
            let mut expected = axis_filts[0].set(cell[0]).clone();
            for (j, filt) in axis_filts.iter().enumerate().skip(1) {
                expected = expected.intersection(filt.set(cell[j]));
            }
            let actual = self.set(&cell);
            if *actual != expected {
                violations.push(Violation {
                    kind: ViolationKind::Completeness,
                    indices: self.cell_values(&cell),
                    positions: cell.clone(),
                    points: expected.symmetric_difference(actual).to_indices(),
                });
            }
        }
        Ok(ValidationReport { violations })
    }
}

/// Row-major iterator over a multi-dimensional grid.
pub struct GridIter {
    dims: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl GridIter {
    fn new(dims: Vec<usize>) -> Self {
        let next = if dims.iter().all(|&d| d > 0) {
            Some(vec![0; dims.len()])
        } else {
            None
        };
        GridIter { dims, next }
    }
}

impl Iterator for GridIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.clone()?;
        let mut bump = current.clone();
        let mut axis = self.dims.len();
        loop {
            if axis == 0 {
                self.next = None;
                break;
            }
            axis -= 1;
            bump[axis] += 1;
            if bump[axis] < self.dims[axis] {
                self.next = Some(bump);
                break;
            }
            bump[axis] = 0;
        }
        Some(current)
    }
}
