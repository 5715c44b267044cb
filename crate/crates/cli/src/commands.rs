//! Command logic, exit-code free; the binary maps results to exit codes.

use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Result};
use planeform_core::geom::Configuration;
use planeform_core::sim::{self, FrameAssignment, LocalFrame, Outcome};
use planeform_core::{oracle, polyhedra, symmetricity, symmetry, Error, Schoenflies};

use crate::report::{self, AnalyzeReport};
use crate::scenario::{FrameSpec, ScenarioFile};
use crate::shape;
use crate::trace;

pub fn cmd_gen(shape_name: &str, seed: u64, tol: Option<f64>) -> Result<ScenarioFile> {
    let shape = shape::parse_shape(shape_name)?;
    let cfg = polyhedra::generate(&shape, seed).map_err(|e| anyhow!("generation failed: {e}"))?;
    let mut file = ScenarioFile::from_configuration(&cfg);
    if let Some(t) = tol {
        file.tol = Some(t);
    }
    file.seed = Some(seed);
    file.name = Some(shape_name.to_string());
    Ok(file)
}

pub fn cmd_analyze(path: &Path, tol: Option<f64>) -> Result<AnalyzeReport> {
    let file = ScenarioFile::load(path)?;
    let cfg = file.configuration(tol)?;
    report::analyze(&cfg)
}

/// Resolves a frame specification against a configuration; returns the
/// assignment, a description for the trace header, and the monitor subgroup
/// for symmetric frames.
pub fn resolve_frames(
    cfg: &Configuration,
    spec: &FrameSpec,
) -> Result<(FrameAssignment, String, Option<Vec<planeform_core::OrthoMap>>)> {
    match spec {
        FrameSpec::Random { seed } => {
            Ok((sim::random_frames(cfg, *seed), format!("random:{seed}"), None))
        }
        FrameSpec::Symmetric { label, seed } => {
            let label = Schoenflies::from_str(label)
                .map_err(|_| anyhow!("unknown Schoenflies label `{label}`"))?;
            let rho = symmetricity::symmetricity(cfg)
                .map_err(|e| anyhow!("symmetricity failed: {e}"))?;
            let witness = rho.witness(label).ok_or_else(|| {
                let valid: Vec<String> =
                    rho.all.iter().map(|l| l.to_string()).collect();
                anyhow!(
                    "label {label} is not in the symmetricity; valid witnesses: [{}]",
                    valid.join(", ")
                )
            })?;
            let witness = witness.to_vec();
            let frames = sim::symmetric_frames(cfg, &witness, *seed)
                .map_err(|e| anyhow!("symmetric frame construction failed: {e}"))?;
            Ok((frames, format!("symmetric:{label}:{seed}"), Some(witness)))
        }
        FrameSpec::Explicit { frames } => {
            if frames.len() != cfg.len() {
                bail!("explicit frames count {} does not match n = {}", frames.len(), cfg.len());
            }
            let assignment = FrameAssignment {
                frames: frames
                    .iter()
                    .zip(cfg.points().iter())
                    .map(|(f, p)| LocalFrame {
                        origin: *p,
                        orientation: f.orientation_matrix(),
                        scale: f.scale,
                    })
                    .collect(),
            };
            Ok((assignment, "explicit".to_string(), None))
        }
    }
}

pub struct RunResult {
    pub exit_code: i32,
    pub outcome: String,
    pub steps: usize,
}

pub fn cmd_run(
    path: &Path,
    frames_flag: Option<FrameSpec>,
    seed: Option<u64>,
    max_steps_flag: Option<usize>,
    tol: Option<f64>,
    out: Option<&Path>,
) -> Result<RunResult> {
    let file = ScenarioFile::load(path)?;
    let cfg = file.configuration(tol)?;
    let spec = frames_flag
        .or(file.frames.clone())
        .unwrap_or(FrameSpec::Random { seed: seed.or(file.seed).unwrap_or(0) });
    let (frames, desc, monitor) = resolve_frames(&cfg, &spec)?;
    let max_steps = max_steps_flag.or(file.max_steps).unwrap_or(100);

    match sim::run(&cfg, &frames, max_steps, monitor.as_deref()) {
        Ok(trace_data) => {
            if let Some(out) = out {
                trace::write_trace(out, &trace_data, &desc, max_steps)?;
            }
            let (exit_code, outcome) = match trace_data.outcome {
                Outcome::Terminated(_) => (0, trace::outcome_string(&trace_data.outcome)),
                Outcome::StepLimit => (2, trace::outcome_string(&trace_data.outcome)),
                Outcome::SymmetryTrapped => (3, trace::outcome_string(&trace_data.outcome)),
            };
            Ok(RunResult { exit_code, outcome, steps: trace_data.steps.len() })
        }
        Err(Error::Collision { step }) => Ok(RunResult {
            exit_code: 4,
            outcome: format!("collision:{step}"),
            steps: step + 1,
        }),
        Err(e) => Err(anyhow!("run failed: {e}")),
    }
}

pub fn cmd_verify(path: &Path) -> Result<()> {
    let (header, records) = trace::read_trace(path)?;
    trace::verify_trace(&header, &records)
}

/// Differential comparison of the analytic pipeline against the brute-force
/// oracles; errors describe the first mismatch.
pub fn cmd_oracle_compare(path: &Path, tol: Option<f64>) -> Result<String> {
    let file = ScenarioFile::load(path)?;
    let cfg = file.configuration(tol)?;
    if cfg.len() > 60 {
        bail!("oracle-compare caps n at 60; got {}", cfg.len());
    }
    let mut summary = String::new();

    // Symmetry group.
    let detected = symmetry::detect_symmetries(&cfg).map_err(|e| anyhow!("detect: {e}"))?;
    let reference = oracle::oracle_group(&cfg).map_err(|e| anyhow!("oracle group: {e}"))?;
    if detected.order() != reference.len() {
        bail!(
            "group order mismatch: detected {}, oracle {}",
            detected.order(),
            reference.len()
        );
    }
    for el in detected.elements() {
        if !reference.iter().any(|f| el.linear_approx_eq(f, 1e-6)) {
            bail!("detected element missing from oracle group");
        }
    }
    summary.push_str(&format!(
        "group: {} of order {} (oracle agrees)\n",
        detected.label(),
        detected.order()
    ));

    // Subgroup lattice and free actions, within the oracle's order cap.
    if detected.order() <= 48 {
        let subs = symmetricity::enumerate_subgroups(&detected);
        let oracle_subs = oracle::oracle_subgroups(detected.elements())
            .map_err(|e| anyhow!("oracle subgroups: {e}"))?;
        if subs.len() != oracle_subs.len() {
            bail!("subgroup count mismatch: {} vs oracle {}", subs.len(), oracle_subs.len());
        }
        let rho = symmetricity::symmetricity(&cfg)?;
        let mut oracle_labels: Vec<Schoenflies> = Vec::new();
        for indices in &oracle_subs {
            let maps: Vec<planeform_core::OrthoMap> =
                indices.iter().map(|&i| detected.elements()[i]).collect();
            if oracle::oracle_free_orbits(&cfg, &maps)? {
                let label = symmetry::classify(&maps)?;
                if !oracle_labels.contains(&label) {
                    oracle_labels.push(label);
                }
            }
        }
        oracle_labels.sort();
        if !rho.center_occupied && rho.all != oracle_labels {
            bail!("symmetricity mismatch: {:?} vs oracle {:?}", rho.all, oracle_labels);
        }
        summary.push_str(&format!(
            "subgroups: {} (oracle agrees); free labels: {}\n",
            subs.len(),
            oracle_labels.len()
        ));
    } else {
        summary.push_str("subgroups: skipped (order above the oracle cap of 48)\n");
    }
    Ok(summary)
}
