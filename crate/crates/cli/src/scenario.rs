//! Scenario file format: a point set with optional tolerance, frame
//! specification, and step budget. JSON, one object per file.

use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use planeform_core::geom::{Configuration, Mat3, DEFAULT_TOL};
use planeform_core::{Point3, Schoenflies};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioFile {
    pub points: Vec<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frames: Option<FrameSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_steps: Option<usize>,
    /// Seed used to generate the scenario, echoed for reproducibility.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameSpec {
    Random { seed: u64 },
    Symmetric { label: String, seed: u64 },
    Explicit { frames: Vec<ExplicitFrame> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExplicitFrame {
    /// Row-major orthogonal orientation matrix.
    pub orientation: [[f64; 3]; 3],
    pub scale: f64,
}

impl ExplicitFrame {
    pub fn orientation_matrix(&self) -> Mat3 {
        Mat3::new(
            self.orientation[0][0],
            self.orientation[0][1],
            self.orientation[0][2],
            self.orientation[1][0],
            self.orientation[1][1],
            self.orientation[1][2],
            self.orientation[2][0],
            self.orientation[2][1],
            self.orientation[2][2],
        )
    }
}

impl ScenarioFile {
    pub fn from_configuration(cfg: &Configuration) -> Self {
        ScenarioFile {
            points: cfg.points().iter().map(|p| [p.x, p.y, p.z]).collect(),
            tol: Some(cfg.tol()),
            frames: None,
            max_steps: None,
            seed: None,
            name: None,
        }
    }

    /// Builds the configuration; `tol_override` wins over the file value.
    pub fn configuration(&self, tol_override: Option<f64>) -> Result<Configuration> {
        let tol = tol_override.or(self.tol).unwrap_or(DEFAULT_TOL);
        let pts: Vec<Point3> =
            self.points.iter().map(|p| Point3::new(p[0], p[1], p[2])).collect();
        Configuration::new(pts, tol).map_err(|e| anyhow!("invalid scenario: {e}"))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text)
            .with_context(|| format!("parsing scenario {}", path.display()))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)
            .with_context(|| format!("writing {}", path.display()))
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

/// Frame flag syntax: `random:<seed>`, `symmetric:<label>:<seed>`, or
/// `file:<path>` (a JSON list of explicit frames).
pub fn parse_frame_flag(s: &str) -> Result<FrameSpec> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["random", seed] => Ok(FrameSpec::Random { seed: seed.parse()? }),
        ["symmetric", label, seed] => {
            Schoenflies::from_str(label)
                .map_err(|_| anyhow!("unknown Schoenflies label `{label}`"))?;
            Ok(FrameSpec::Symmetric { label: label.to_string(), seed: seed.parse()? })
        }
        ["file", path] => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading frames file {path}"))?;
            let frames: Vec<ExplicitFrame> = serde_json::from_str(&text)?;
            Ok(FrameSpec::Explicit { frames })
        }
        _ => bail!("invalid --frames `{s}`; expected random:<seed>, symmetric:<label>:<seed>, or file:<path>"),
    }
}
