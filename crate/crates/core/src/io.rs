//! JSON file formats for spaces, filtrations, functions and diagrams.
//!
//! All files are plain JSON with f64 scalars. A filtration file either
//! inlines its space or names another file by path, resolved relative to
//! the filtration file's directory. Grid cells are keyed by their integer
//! positions formatted as `(i1,...,in)`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::comparison::PersistenceDiagram;
use crate::error::{Error, Result};
use crate::filtration::{Filtration1D, FiltrationND, Index1D};
use crate::space::{Metric, SampledSpace};
use crate::subset::Subset;
use crate::synthesis::FilteringFunction;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dist: Option<Vec<Vec<f64>>>,
    /// "euclidean" | "geodesic" | "explicit"
    pub metric: String,
    pub resolution: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceRef {
    Path(String),
    Inline(SpaceFile),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiltrationFile {
    pub space: SpaceRef,
    pub axes: Vec<Vec<f64>>,
    pub sets: BTreeMap<String, Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionFile {
    pub dim: usize,
    /// one row per point, `dim` components each
    pub values: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramFile {
    pub degree: u8,
    pub pairs: Vec<(f64, f64)>,
    pub essential: Vec<f64>,
}

/// Either arity of filtration, as read from a file.
#[derive(Debug, Clone)]
pub enum LoadedFiltration {
    One(Filtration1D<f64>),
    Multi(FiltrationND<f64>),
}

impl LoadedFiltration {
    pub fn space(&self) -> &Arc<SampledSpace<f64>> {
        match self {
            LoadedFiltration::One(f) => f.space(),
            LoadedFiltration::Multi(f) => f.space(),
        }
    }
}

pub fn format_cell(cell: &[usize]) -> String {
    let inner: Vec<String> = cell.iter().map(|i| i.to_string()).collect();
    format!("({})", inner.join(","))
}

pub fn parse_cell(key: &str) -> Result<Vec<usize>> {
    let trimmed = key.trim();
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("grid key {key:?} is not parenthesized")))?;
    inner
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad grid coordinate in key {key:?}")))
        })
        .collect()
}

pub fn space_from_file(file: &SpaceFile) -> Result<SampledSpace<f64>> {
    match file.metric.as_str() {
        "euclidean" | "geodesic" => {
            let points = file.points.as_ref().ok_or_else(|| {
                Error::Parse(format!("metric {:?} requires \"points\"", file.metric))
            })?;
            let metric = if file.metric == "euclidean" {
                Metric::Euclidean
            } else {
                Metric::Geodesic
            };
            SampledSpace::from_points(points, metric, file.resolution)
        }
        "explicit" => {
            let rows = file
                .dist
                .as_ref()
                .ok_or_else(|| Error::Parse("metric \"explicit\" requires \"dist\"".into()))?;
            let n = rows.len();
            if rows.iter().any(|r| r.len() != n) {
                return Err(Error::Parse("distance matrix is not square".into()));
            }
            let flat: Vec<f64> = rows.iter().flatten().copied().collect();
            SampledSpace::from_matrix(flat, n, file.resolution, None)
        }
        other => Err(Error::Parse(format!("unknown metric {other:?}"))),
    }
}

pub fn space_to_file(space: &SampledSpace<f64>) -> SpaceFile {
    let n = space.point_count();
    let rows = (0..n)
        .map(|i| (0..n).map(|j| space.dist(i, j)).collect())
        .collect();
    SpaceFile {
        points: None,
        dist: Some(rows),
        metric: "explicit".into(),
        resolution: space.resolution(),
    }
}

pub fn load_space(path: &Path) -> Result<SampledSpace<f64>> {
    let file: SpaceFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    space_from_file(&file)
}

pub fn save_space(space: &SampledSpace<f64>, path: &Path) -> Result<()> {
    std::fs::write(path, serde_json::to_string(&space_to_file(space))?)?;
    Ok(())
}

fn resolve_space(reference: &SpaceRef, base_dir: &Path) -> Result<SampledSpace<f64>> {
    match reference {
        SpaceRef::Path(rel) => load_space(&base_dir.join(rel)),
        SpaceRef::Inline(file) => space_from_file(file),
    }
}

pub fn load_filtration(path: &Path) -> Result<LoadedFiltration> {
    let file: FiltrationFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let base_dir = path.parent().unwrap_or_else(|| Path::new("."));
    let space = Arc::new(resolve_space(&file.space, base_dir)?);
    let n = space.point_count();

    if file.axes.is_empty() {
        return Err(Error::BadIndexSet);
    }
    let axes: Vec<Index1D<f64>> = file
        .axes
        .iter()
        .map(|values| Index1D::new(values.clone()))
        .collect::<Result<_>>()?;

    let dims: Vec<usize> = axes.iter().map(|a| a.len()).collect();
    let mut sets = Vec::new();
    let mut cell = vec![0usize; dims.len()];
    loop {
        let key = format_cell(&cell);
        let ids = file
            .sets
            .get(&key)
            .ok_or_else(|| Error::MissingGridCell(cell.clone()))?;
        sets.push(Subset::from_indices(n, ids.iter().copied()));
        // advance row-major, last axis fastest
        let mut axis = dims.len();
        loop {
            if axis == 0 {
                break;
            }
            axis -= 1;
            cell[axis] += 1;
            if cell[axis] < dims[axis] {
                break;
            }
            cell[axis] = 0;
        }
        if cell.iter().all(|&c| c == 0) {
            break;
        }
    }
    for (key, ids) in &file.sets {
        let parsed = parse_cell(key)?;
        if parsed.len() != dims.len() {
            return Err(Error::Parse(format!(
                "grid key {key:?} has arity {}, axes have {}",
                parsed.len(),
                dims.len()
            )));
        }
        if parsed.iter().zip(dims.iter()).any(|(&c, &d)| c >= d) {
            return Err(Error::Parse(format!("grid key {key:?} is out of range")));
        }
        if ids.iter().any(|&id| id >= n) {
            return Err(Error::IndexOutOfRange {
                index: *ids.iter().max().unwrap(),
                count: n,
            });
        }
    }

    if axes.len() == 1 {
        let mut axes = axes;
        Ok(LoadedFiltration::One(Filtration1D::new(
            space,
            axes.pop().unwrap(),
            sets,
        )?))
    } else {
        Ok(LoadedFiltration::Multi(FiltrationND::new(space, axes, sets)?))
    }
}

fn filtration_file_1d(f: &Filtration1D<f64>) -> FiltrationFile {
    let mut sets = BTreeMap::new();
    for (level, set) in f.sets().iter().enumerate() {
        sets.insert(format_cell(&[level]), set.to_indices());
    }
    FiltrationFile {
        space: SpaceRef::Inline(space_to_file(f.space())),
        axes: vec![f.index().values().to_vec()],
        sets,
    }
}

fn filtration_file_nd(f: &FiltrationND<f64>) -> FiltrationFile {
    let mut sets = BTreeMap::new();
    for cell in f.cells() {
        sets.insert(format_cell(&cell), f.set(&cell).to_indices());
    }
    FiltrationFile {
        space: SpaceRef::Inline(space_to_file(f.space())),
        axes: f.axes().iter().map(|a| a.values().to_vec()).collect(),
        sets,
    }
}

pub fn save_filtration_1d(f: &Filtration1D<f64>, path: &Path) -> Result<()> {
    std::fs::write(path, serde_json::to_string(&filtration_file_1d(f))?)?;
    Ok(())
}

pub fn save_filtration_nd(f: &FiltrationND<f64>, path: &Path) -> Result<()> {
    std::fs::write(path, serde_json::to_string(&filtration_file_nd(f))?)?;
    Ok(())
}

pub fn load_function(path: &Path) -> Result<FilteringFunction<f64>> {
    let file: FunctionFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    if file.values.iter().any(|row| row.len() != file.dim) {
        return Err(Error::Parse(format!(
            "function rows must have {} components",
            file.dim
        )));
    }
    FilteringFunction::new(file.dim, file.values.into_iter().flatten().collect())
}

pub fn save_function(f: &FilteringFunction<f64>, path: &Path) -> Result<()> {
    let file = FunctionFile {
        dim: f.dim(),
        values: (0..f.point_count()).map(|p| f.point(p).to_vec()).collect(),
    };
    std::fs::write(path, serde_json::to_string(&file)?)?;
    Ok(())
}

pub fn load_diagram(path: &Path) -> Result<PersistenceDiagram<f64>> {
    let file: DiagramFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    Ok(PersistenceDiagram {
        degree: file.degree,
        finite_pairs: file.pairs,
        essential: file.essential,
    })
}

pub fn save_diagram(d: &PersistenceDiagram<f64>, path: &Path) -> Result<()> {
    let file = DiagramFile {
        degree: d.degree,
        pairs: d.finite_pairs.clone(),
        essential: d.essential.clone(),
    };
    std::fs::write(path, serde_json::to_string(&file)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::chain_space;

    #[test]
    fn cell_key_roundtrip() {
        assert_eq!(format_cell(&[3]), "(3)");
        assert_eq!(format_cell(&[1, 0, 2]), "(1,0,2)");
        assert_eq!(parse_cell("(1,0,2)").unwrap(), vec![1, 0, 2]);
        assert_eq!(parse_cell("( 4 , 5 )").unwrap(), vec![4, 5]);
        assert!(parse_cell("1,2").is_err());
        assert!(parse_cell("(x)").is_err());
    }

    #[test]
    fn filtration_file_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let space = Arc::new(chain_space::<f64>(4, 1.0, 1.0).unwrap());
        let f = Filtration1D::new(
            space,
            Index1D::new(vec![0.0, 1.0, 2.0]).unwrap(),
            vec![
                Subset::empty(4),
                Subset::from_indices(4, [0, 1]),
                Subset::full(4),
            ],
        )
        .unwrap();
        let path = dir.path().join("filtration.json");
        save_filtration_1d(&f, &path).unwrap();
        match load_filtration(&path).unwrap() {
            LoadedFiltration::One(g) => {
                assert_eq!(g.index().values(), f.index().values());
                assert_eq!(g.sets(), f.sets());
            }
            LoadedFiltration::Multi(_) => panic!("expected a 1-D filtration"),
        }
    }

    #[test]
    fn space_reference_by_path() {
        let dir = tempfile::tempdir().unwrap();
        let space = chain_space::<f64>(3, 1.0, 1.0).unwrap();
        save_space(&space, &dir.path().join("space.json")).unwrap();
        let file = FiltrationFile {
            space: SpaceRef::Path("space.json".into()),
            axes: vec![vec![0.0, 1.0]],
            sets: BTreeMap::from([
                ("(0)".into(), vec![]),
                ("(1)".into(), vec![0, 1, 2]),
            ]),
        };
        let path = dir.path().join("filtration.json");
        std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
        let loaded = load_filtration(&path).unwrap();
        assert_eq!(loaded.space().point_count(), 3);
    }

    #[test]
    fn function_file_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let f = FilteringFunction::new(2, vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        let path = dir.path().join("function.json");
        save_function(&f, &path).unwrap();
        let g = load_function(&path).unwrap();
        assert_eq!(g.dim(), 2);
        assert_eq!(g.values(), f.values());
    }
}
