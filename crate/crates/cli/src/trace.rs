//! Line-delimited execution trace format: one JSON header line, then one
//! record per executed cycle. Streamable and diff-able.

use std::io::{BufRead, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use planeform_core::geom::Configuration;
use planeform_core::sim::{ExecutionTrace, Outcome};
use planeform_core::{symmetry, Point3};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceHeader {
    pub n: usize,
    pub tol: f64,
    /// Human-readable description of the frame assignment, seeds included.
    pub frames: String,
    pub max_steps: usize,
    pub outcome: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceRecord {
    pub step: usize,
    pub phase: String,
    pub positions: Vec<[f64; 3]>,
    pub theta: String,
    pub gamma: String,
    pub terminated: bool,
}

pub fn outcome_string(outcome: &Outcome) -> String {
    match outcome {
        Outcome::Terminated(step) => format!("terminated:{step}"),
        Outcome::StepLimit => "step-limit".to_string(),
        Outcome::SymmetryTrapped => "symmetry-trapped".to_string(),
    }
}

/// Writes the header and one record per step.
pub fn write_trace(
    path: &Path,
    trace: &ExecutionTrace,
    frames_desc: &str,
    max_steps: usize,
) -> Result<()> {
    let file = std::fs::File::create(path)
        .with_context(|| format!("creating trace {}", path.display()))?;
    let mut out = std::io::BufWriter::new(file);
    let header = TraceHeader {
        n: trace.steps.first().map_or(0, |s| s.positions.len()),
        tol: trace.tol,
        frames: frames_desc.to_string(),
        max_steps,
        outcome: outcome_string(&trace.outcome),
    };
    serde_json::to_writer(&mut out, &header)?;
    out.write_all(b"\n")?;
    let last = trace.steps.len().saturating_sub(1);
    for (i, step) in trace.steps.iter().enumerate() {
        let record = TraceRecord {
            step: i,
            phase: step.phase.map_or_else(|| "Stuck".to_string(), |p| p.to_string()),
            positions: step.positions.iter().map(|p| [p.x, p.y, p.z]).collect(),
            theta: step.theta.map_or_else(|| "?".to_string(), |l| l.to_string()),
            gamma: step.gamma.map_or_else(|| "?".to_string(), |l| l.to_string()),
            terminated: matches!(trace.outcome, Outcome::Terminated(_)) && i == last,
        };
        serde_json::to_writer(&mut out, &record)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_trace(path: &Path) -> Result<(TraceHeader, Vec<TraceRecord>)> {
    let file = std::fs::File::open(path)
        .with_context(|| format!("opening trace {}", path.display()))?;
    let mut lines = std::io::BufReader::new(file).lines();
    let header_line = lines
        .next()
        .transpose()?
        .context("empty trace file")?;
    let header: TraceHeader =
        serde_json::from_str(&header_line).context("parsing trace header")?;
    let mut records = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: TraceRecord = serde_json::from_str(&line)
            .with_context(|| format!("parsing trace record on line {}", lineno + 2))?;
        records.push(record);
    }
    Ok((header, records))
}

/// Re-checks trace invariants: step continuity, constant robot count, no
/// multiplicity at any step, labels re-detected from the positions, and the
/// terminal conditions on the final record.
pub fn verify_trace(header: &TraceHeader, records: &[TraceRecord]) -> Result<()> {
    if records.is_empty() {
        bail!("trace has no records");
    }
    for (i, r) in records.iter().enumerate() {
        if r.step != i {
            bail!("step discontinuity at record {i}: found step {}", r.step);
        }
        if r.positions.len() != header.n {
            bail!("record {i} has {} positions, expected {}", r.positions.len(), header.n);
        }
        let pts: Vec<Point3> =
            r.positions.iter().map(|p| Point3::new(p[0], p[1], p[2])).collect();
        let cfg = Configuration::new(pts, header.tol)
            .map_err(|e| anyhow::anyhow!("record {i}: {e}"))?;
        if !cfg.is_distinct() {
            bail!("multiplicity at step {i}");
        }
        if r.theta != "?" {
            match symmetry::detect_symmetries(&cfg) {
                Ok(group) => {
                    if group.label().to_string() != r.theta {
                        bail!(
                            "step {i}: recorded theta {} but detected {}",
                            r.theta,
                            group.label()
                        );
                    }
                    let gamma = symmetry::rotation_group(&group);
                    if r.gamma != "?" && gamma.label().to_string() != r.gamma {
                        bail!(
                            "step {i}: recorded gamma {} but detected {}",
                            r.gamma,
                            gamma.label()
                        );
                    }
                }
                Err(e) => bail!("step {i}: symmetry detection failed: {e}"),
            }
        }
        if r.terminated {
            if i != records.len() - 1 {
                bail!("terminated flag on non-final record {i}");
            }
            if planeform_core::geom::coplanar(&cfg).is_none() {
                bail!("terminal configuration is not coplanar");
            }
        }
    }
    Ok(())
}
