//! Constructive synthesis of a filtering function from a stable filtration.
//!
//! For every point the pair (alpha, beta) locates the point between the
//! largest set whose interior misses it and the smallest set containing it.
//! The filtering function interpolates between the two index values with
//! weights given by the distances to the corresponding sets, which makes the
//! sub-level round-trip exact at every index.

use num_traits::Float;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::filtration::{
    Filtration1D, FiltrationND, ValidationReport, Violation, ViolationKind,
};
use crate::space::SampledSpace;
use crate::subset::Subset;

/// Per-point pair of index positions (into the filtration's index set):
/// alpha is the largest level whose interior misses the point, beta the
/// smallest level containing it.
#[derive(Debug, Clone)]
pub struct AlphaBeta {
    alpha_pos: Vec<usize>,
    beta_pos: Vec<usize>,
}

impl AlphaBeta {
    pub fn alpha_pos(&self, p: usize) -> usize {
        self.alpha_pos[p]
    }

    pub fn beta_pos(&self, p: usize) -> usize {
        self.beta_pos[p]
    }

    pub fn alpha<F: Float>(&self, f: &Filtration1D<F>, p: usize) -> F {
        f.index().values()[self.alpha_pos[p]]
    }

    pub fn beta<F: Float>(&self, f: &Filtration1D<F>, p: usize) -> F {
        f.index().values()[self.beta_pos[p]]
    }
}

/// A synthesized (or loaded) filtering function: one real value per point
/// and dimension, point-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteringFunction<F> {
    dim: usize,
    values: Vec<F>,
}

impl<F: Float> FilteringFunction<F> {
    pub fn new(dim: usize, values: Vec<F>) -> Result<Self> {
        if dim == 0 || values.len() % dim != 0 {
            return Err(Error::DimensionMismatch { got: dim, expected: 1 });
        }
        Ok(FilteringFunction { dim, values })
    }

    pub fn from_scalar(values: Vec<F>) -> Self {
        FilteringFunction { dim: 1, values }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point_count(&self) -> usize {
        self.values.len() / self.dim
    }

    pub fn value(&self, p: usize, component: usize) -> F {
        self.values[p * self.dim + component]
    }

    /// Scalar value of a 1-D function.
    pub fn scalar(&self, p: usize) -> F {
        debug_assert_eq!(self.dim, 1);
        self.values[p]
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn point(&self, p: usize) -> &[F] {
        &self.values[p * self.dim..(p + 1) * self.dim]
    }
}

fn require_stable<F: Float>(f: &Filtration1D<F>) -> Result<()> {
    let stability = f.check_stability_finite()?;
    if !stability.passed() {
        return Err(Error::NotStable(stability.violations.len()));
    }
    Ok(())
}

/// Computes alpha and beta for every point of a nested, stable filtration.
pub fn alpha_beta<F: Float>(f: &Filtration1D<F>) -> Result<AlphaBeta> {
    require_stable(f)?;
    let space = f.space();
    let interiors: Vec<Subset> = f
        .sets()
        .iter()
        .map(|s| space.interior(s))
        .collect::<Result<_>>()?;
    let levels = f.len();
    let n = space.point_count();
    let mut alpha_pos = vec![0usize; n];
    let mut beta_pos = vec![0usize; n];
    for p in 0..n {
        // i_max is always in B(P) since the last set is the full space
        let beta = (0..levels).find(|&k| f.set(k).contains(p)).unwrap();
        // i_min is always in A(P) since the first set is empty
        let alpha = (0..levels).rev().find(|&k| !interiors[k].contains(p)).unwrap();
        if alpha > beta {
            // contradicts the filtration being stable; modeling bug
            return Err(Error::AlphaBetaRange { point: p });
        }
        alpha_pos[p] = alpha;
        beta_pos[p] = beta;
    }
    Ok(AlphaBeta { alpha_pos, beta_pos })
}

/// Precomputed per-level sets used by the phi formula.
struct PhiContext<'a, F> {
    f: &'a Filtration1D<F>,
    closure_complements: Vec<Subset>,
    star: F,
}

impl<'a, F: Float> PhiContext<'a, F> {
    fn new(f: &'a Filtration1D<F>) -> Result<Self> {
        let space = f.space();
        let closure_complements = f
            .sets()
            .iter()
            .map(|s| space.closure_complement(s))
            .collect::<Result<_>>()?;
        let star = space.star_distance()?;
        Ok(PhiContext {
            f,
            closure_complements,
            star,
        })
    }

    fn phi(&self, ab: &AlphaBeta, p: usize) -> Result<F> {
        let f = self.f;
        let values = f.index().values();
        let last = f.len() - 1;
        if f.is_trivial() {
            return Ok(values[last]);
        }
        let a = ab.alpha_pos(p);
        let b = ab.beta_pos(p);
        let alpha = values[a];
        let beta = values[b];
        if a == 0 {
            if b == last {
                return Err(Error::AlphaBetaRange { point: p });
            }
            return Ok(beta);
        }
        if b == last {
            let dk = f.space().dist_point_set(p, f.set(a))?;
            if dk.is_infinite() {
                // K_alpha duplicates the empty set; any value in (alpha, beta]
                // keeps the round-trip exact
                return Ok(beta);
            }
            return Ok((alpha * self.star + beta * dk) / (self.star + dk));
        }
        if a == b {
            return Ok(alpha);
        }
        let dcl = f.space().dist_point_set(p, &self.closure_complements[b])?;
        let dk = f.space().dist_point_set(p, f.set(a))?;
        if dcl.is_infinite() || dk.is_infinite() {
            // duplicate full/empty slices; beta keeps the round-trip exact
            return Ok(beta);
        }
        if dcl == F::zero() && dk == F::zero() {
            return Err(Error::ResolutionDegeneracy { point: p });
        }
        Ok((alpha * dcl + beta * dk) / (dcl + dk))
    }
}

/// The four-case filtering value at a single point.
pub fn phi_point<F: Float>(f: &Filtration1D<F>, ab: &AlphaBeta, p: usize) -> Result<F> {
    PhiContext::new(f)?.phi(ab, p)
}

/// Synthesizes the 1-D filtering function inducing a stable filtration.
pub fn induce_1d<F: Float + Send + Sync>(f: &Filtration1D<F>) -> Result<FilteringFunction<F>> {
    let ab = alpha_beta(f)?;
    if f.is_trivial() {
        let v = f.index().max();
        return Ok(FilteringFunction::from_scalar(vec![
            v;
            f.space().point_count()
        ]));
    }
    let ctx = PhiContext::new(f)?;
    let values: Vec<F> = (0..f.space().point_count())
        .into_par_iter()
        .map(|p| ctx.phi(&ab, p))
        .collect::<Result<_>>()?;
    Ok(FilteringFunction::from_scalar(values))
}

/// Synthesizes the n-D filtering function of a stable and complete
/// filtration, one component per axis filtration.
pub fn induce_nd<F: Float + Send + Sync>(f: &FiltrationND<F>) -> Result<FilteringFunction<F>> {
    let stability = f.check_stability_nd()?;
    if !stability.passed() {
        return Err(Error::NotStable(stability.violations.len()));
    }
    let completeness = f.check_completeness()?;
    if !completeness.passed() {
        return Err(Error::NotComplete(completeness.violations.len()));
    }
    let dim = f.dim();
    let n = f.space().point_count();
    let mut components = Vec::with_capacity(dim);
    for j in 0..dim {
        components.push(induce_1d(&f.axis_filtration(j)?)?);
    }
    let mut values = vec![F::zero(); n * dim];
    for p in 0..n {
        for (j, c) in components.iter().enumerate() {
            values[p * dim + j] = c.scalar(p);
        }
    }
    FilteringFunction::new(dim, values)
}

/// Sub-level set {P : phi(P) <= i componentwise}; comparison is exact.
pub fn sublevel_sets<F: Float>(
    space: &SampledSpace<F>,
    phi: &FilteringFunction<F>,
    index: &[F],
) -> Result<Subset> {
    if index.len() != phi.dim() {
        return Err(Error::DimensionMismatch {
            got: index.len(),
            expected: phi.dim(),
        });
    }
    if phi.point_count() != space.point_count() {
        return Err(Error::SpaceMismatch {
            got: phi.point_count(),
            expected: space.point_count(),
        });
    }
    let mut out = Subset::empty(space.point_count());
    for p in 0..space.point_count() {
        if phi.point(p).iter().zip(index.iter()).all(|(v, i)| v <= i) {
            out.insert(p);
        }
    }
    Ok(out)
}

/// Compares the sub-level sets of `phi` against the filtration at every
/// index; witnesses are symmetric differences.
pub fn verify_induction_1d<F: Float>(
    f: &Filtration1D<F>,
    phi: &FilteringFunction<F>,
) -> Result<ValidationReport<F>> {
    let mut violations = Vec::new();
    for (k, &i) in f.index().values().iter().enumerate() {
        let sub = sublevel_sets(f.space(), phi, &[i])?;
        if sub != *f.set(k) {
            violations.push(Violation {
                kind: ViolationKind::Induction,
                indices: vec![i],
                positions: vec![k],
                points: sub.symmetric_difference(f.set(k)).to_indices(),
            });
        }
    }
    Ok(ValidationReport { violations })
}

/// Grid version of [`verify_induction_1d`].
pub fn verify_induction_nd<F: Float>(
    f: &FiltrationND<F>,
    phi: &FilteringFunction<F>,
) -> Result<ValidationReport<F>> {
    let mut violations = Vec::new();
    for cell in f.cells() {
        let index = f.cell_values(&cell);
        let sub = sublevel_sets(f.space(), phi, &index)?;
        if sub != *f.set(&cell) {
            violations.push(Violation {
                kind: ViolationKind::Induction,
                indices: index,
                positions: cell.clone(),
                points: sub.symmetric_difference(f.set(&cell)).to_indices(),
            });
        }
    }
    Ok(ValidationReport { violations })
}

/// Max variation of a 1-D function over neighbor pairs; the discrete
/// surrogate for a modulus of continuity.
pub fn discrete_modulus<F: Float>(space: &SampledSpace<F>, phi: &FilteringFunction<F>) -> Result<F> {
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
    let mut worst = F::zero();
    for p in 0..space.point_count() {
        for &q in space.neighbors(p) {
            let d = (phi.scalar(p) - phi.scalar(q)).abs();
            if d > worst {
                worst = d;
            }
        }
    }
    Ok(worst)
}
