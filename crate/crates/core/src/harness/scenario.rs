use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::geom::{GeomError, Point, Polygon, Terrain};
use crate::oracle::accessibility;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioMeta {
    /// Fatness bound the terrain is meant to satisfy.
    pub fatness: f64,
    /// Refuse to hunt unless the terrain is regular for `fatness`.
    pub strict: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_step: Option<f64>,
}

impl Default for ScenarioMeta {
    fn default() -> Self {
        ScenarioMeta { fatness: 2.0, strict: true, sample_step: None }
    }
}

/// A terrain with a start and a treasure, validated on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    terrain: Terrain,
    start: Point,
    treasure: Point,
    meta: ScenarioMeta,
}

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("cannot access {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed scenario file: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("cannot serialize scenario: {0}")]
    Serialize(#[from] toml::ser::Error),
    #[error("terrain invariant violated: {0}")]
    Terrain(#[from] GeomError),
    #[error("start {0} must lie in the terrain")]
    StartOutside(Point),
    #[error("treasure {0} must be an interior point of the terrain")]
    TreasureNotInterior(Point),
    #[error("meta.{field} is invalid: {reason}")]
    Meta { field: &'static str, reason: String },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ObstacleFile {
    vertices: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    start: [f64; 2],
    treasure: [f64; 2],
    outer: Vec<[f64; 2]>,
    meta: ScenarioMeta,
    #[serde(default, rename = "obstacle", skip_serializing_if = "Vec::is_empty")]
    obstacles: Vec<ObstacleFile>,
}

fn to_pair(p: Point) -> [f64; 2] {
    [p.x, p.y]
}

fn ring(pts: &[[f64; 2]]) -> Result<Polygon, GeomError> {
    Polygon::new(pts.iter().map(|&[x, y]| Point::new(x, y)).collect())
}

impl Scenario {
    pub fn new(terrain: Terrain, start: Point, treasure: Point, meta: ScenarioMeta) -> Result<Self, ScenarioError> {
        if !(meta.fatness > 1.0) {
            return Err(ScenarioError::Meta { field: "fatness", reason: format!("must exceed 1, got {}", meta.fatness) });
        }
        if let Some(s) = meta.sample_step {
            if !(s > 0.0) {
                return Err(ScenarioError::Meta { field: "sample_step", reason: format!("must be positive, got {s}") });
            }
        }
        if !terrain.contains(start) {
            return Err(ScenarioError::StartOutside(start));
        }
        if accessibility(&terrain, treasure).is_err() {
            return Err(ScenarioError::TreasureNotInterior(treasure));
        }
        Ok(Scenario { terrain, start, treasure, meta })
    }

    pub fn terrain(&self) -> &Terrain {
        &self.terrain
    }

    pub fn start(&self) -> Point {
        self.start
    }

    pub fn treasure(&self) -> Point {
        self.treasure
    }

    pub fn meta(&self) -> &ScenarioMeta {
        &self.meta
    }

    pub fn from_toml(text: &str) -> Result<Self, ScenarioError> {
        let f: ScenarioFile = toml::from_str(text)?;
        let outer = ring(&f.outer)?;
        let obstacles = f.obstacles.iter().map(|o| ring(&o.vertices)).collect::<Result<Vec<_>, _>>()?;
        let terrain = Terrain::new(outer, obstacles)?;
        Scenario::new(terrain, Point::new(f.start[0], f.start[1]), Point::new(f.treasure[0], f.treasure[1]), f.meta)
    }

    /// TOML text; floats are written in shortest round-trip form, so loading
    /// the result reproduces every coordinate bit for bit.
    pub fn to_toml(&self) -> Result<String, ScenarioError> {
        let f = ScenarioFile {
            start: to_pair(self.start),
            treasure: to_pair(self.treasure),
            outer: self.terrain.outer().vertices().iter().copied().map(to_pair).collect(),
            meta: self.meta,
            obstacles: self
                .terrain
                .obstacles()
                .iter()
                .map(|o| ObstacleFile { vertices: o.vertices().iter().copied().map(to_pair).collect() })
                .collect(),
        };
        Ok(toml::to_string(&f)?)
    }
}

pub fn load_scenario(path: &Path) -> Result<Scenario, HarnessError> {
    let text = fs::read_to_string(path).map_err(|source| ScenarioError::Io { path: path.to_owned(), source })?;
    Ok(Scenario::from_toml(&text)?)
}

pub fn save_scenario(s: &Scenario, path: &Path) -> Result<(), HarnessError> {
    let text = s.to_toml()?;
    fs::write(path, text).map_err(|source| ScenarioError::Io { path: path.to_owned(), source })?;
    Ok(())
}
