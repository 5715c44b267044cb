//! FSYNC executor with adversarial local frames.
//!
//! Each cycle, every robot receives the snapshot transformed into its own
//! frame (origin at its position, frozen orientation and scale), computes an
//! intent with [`formation::step`], and all intents apply simultaneously.
//! Frame origins track the robots; orientations and scales never change.
//!
//! On configurations the algorithm cannot handle (unsolvable structure), the
//! robots stay put; this is exactly what exhibits the symmetry-trapped
//! executions on unsolvable instances.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::formation::{self, MoveIntent, Phase};
use crate::geom::{coplanar, Configuration, Mat3, OrthoMap, Point3};
use crate::rngutil;
use crate::schoenflies::Schoenflies;
use crate::symmetry;
use crate::Result;

/// A robot's local coordinate system: origin at the robot, arbitrary
/// orthogonal orientation (either handedness), positive scale.
#[derive(Debug, Clone, Copy)]
pub struct LocalFrame {
    pub origin: Point3,
    pub orientation: Mat3,
    pub scale: f64,
}

impl LocalFrame {
    pub fn to_local(&self, p: &Point3) -> Point3 {
        (self.orientation.transpose() * (p - self.origin)) / self.scale
    }

    pub fn to_global(&self, q: &Point3) -> Point3 {
        self.origin + self.orientation * (q * self.scale)
    }
}

/// One frame per robot, index-aligned with the configuration.
#[derive(Debug, Clone)]
pub struct FrameAssignment {
    pub frames: Vec<LocalFrame>,
}

/// Independent uniform frames: random orientation with either handedness
/// equally likely, scale uniform in [0.5, 2]. Deterministic in the seed.
pub fn random_frames(cfg: &Configuration, seed: u64) -> FrameAssignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let frames = cfg
        .points()
        .iter()
        .map(|p| {
            let mut orientation = rngutil::uniform_rotation(&mut rng);
            if rng.gen::<bool>() {
                // Flip handedness.
                orientation = orientation * Mat3::from_diagonal(&Point3::new(1.0, 1.0, -1.0));
            }
            let scale = rng.gen_range(0.5..2.0);
            LocalFrame { origin: *p, orientation, scale }
        })
        .collect();
    FrameAssignment { frames }
}

/// Frames realizing a symmetric arrangement: within each orbit of the
/// witness subgroup, one seed robot gets a random frame and the robot at
/// `g * p` gets `g` applied to the seed's frame (improper `g` flips the
/// handedness). The subgroup must act freely on the configuration.
pub fn symmetric_frames(
    cfg: &Configuration,
    witness: &[OrthoMap],
    seed: u64,
) -> Result<FrameAssignment> {
    let eps = cfg.abs_tol();
    let center = witness.first().map(|m| m.fixed_point).unwrap_or_else(Point3::zeros);
    let centered: Vec<Point3> = cfg.points().iter().map(|p| p - center).collect();
    let mut perms: Vec<Vec<usize>> = Vec::with_capacity(witness.len());
    for map in witness {
        let perm = symmetry::permutation_of(&map.linear, &centered, eps)
            .ok_or(Error::GroupActionMismatch)?;
        if !map.is_identity(1e-9) && perm.iter().enumerate().any(|(i, &j)| i == j) {
            return Err(Error::NotFreeAction);
        }
        perms.push(perm);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = cfg.len();
    let mut frames: Vec<Option<LocalFrame>> = vec![None; n];
    for start in 0..n {
        if frames[start].is_some() {
            continue;
        }
        let mut orientation = rngutil::uniform_rotation(&mut rng);
        if rng.gen::<bool>() {
            orientation = orientation * Mat3::from_diagonal(&Point3::new(1.0, 1.0, -1.0));
        }
        let scale = rng.gen_range(0.5..2.0);
        for (map, perm) in witness.iter().zip(perms.iter()) {
            let target = perm[start];
            if frames[target].is_none() {
                frames[target] = Some(LocalFrame {
                    origin: cfg.points()[target],
                    orientation: map.linear * orientation,
                    scale,
                });
            }
        }
    }
    Ok(FrameAssignment { frames: frames.into_iter().map(|f| f.unwrap()).collect() })
}

/// Why an execution stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Reached a terminal configuration (coplanar, distinct, all-stay) at
    /// the recorded step.
    Terminated(usize),
    /// Step budget exhausted.
    StepLimit,
    /// Step budget exhausted while the registered monitor subgroup held in
    /// every configuration.
    SymmetryTrapped,
}

/// One executed cycle.
#[derive(Debug, Clone)]
pub struct TraceStep {
    pub positions: Vec<Point3>,
    /// Global destinations the robots computed this cycle.
    pub intents: Vec<Point3>,
    /// The fired phase; `None` when the algorithm rejected the configuration
    /// (unsolvable structure) and everyone stayed.
    pub phase: Option<Phase>,
    pub theta: Option<Schoenflies>,
    pub gamma: Option<Schoenflies>,
}

/// A full execution record.
#[derive(Debug, Clone)]
pub struct ExecutionTrace {
    pub steps: Vec<TraceStep>,
    pub outcome: Outcome,
    pub tol: f64,
}

/// Runs the FSYNC execution from `cfg0` under the given frames.
///
/// Terminates on a terminal configuration, on the step limit, or flags a
/// symmetry trap when `monitor` is given and every configuration in the
/// trace stayed invariant under it. A multiplicity produced mid-run is a
/// correctness violation and surfaces as an error.
pub fn run(
    cfg0: &Configuration,
    frames: &FrameAssignment,
    max_steps: usize,
    monitor: Option<&[OrthoMap]>,
) -> Result<ExecutionTrace> {
    let n = cfg0.len();
    if n < 4 {
        return Err(Error::DegenerateConfiguration);
    }
    if !cfg0.is_distinct() {
        return Err(Error::CoincidentPoints);
    }
    if frames.frames.len() != n {
        return Err(Error::GroupActionMismatch);
    }
    let mut positions: Vec<Point3> = cfg0.points().to_vec();
    let mut frames: Vec<LocalFrame> = frames.frames.clone();
    let mut steps: Vec<TraceStep> = Vec::new();

    for step_index in 0..=max_steps {
        let cfg = Configuration::new(positions.clone(), cfg0.tol())?;
        let (labels, phase, intents) = cycle(&cfg, &frames)?;
        let global: Vec<Point3> = intents
            .iter()
            .zip(frames.iter())
            .map(|(intent, frame)| frame.to_global(&intent.destination))
            .collect();
        let all_stay = global
            .iter()
            .zip(positions.iter())
            .all(|(d, p)| (d - p).norm() <= cfg.abs_tol());
        steps.push(TraceStep {
            positions: positions.clone(),
            intents: global.clone(),
            phase,
            theta: labels.map(|(t, _)| t),
            gamma: labels.map(|(_, g)| g),
        });

        if all_stay && coplanar(&cfg).is_some() && cfg.is_distinct() {
            return Ok(ExecutionTrace {
                steps,
                outcome: Outcome::Terminated(step_index),
                tol: cfg0.tol(),
            });
        }
        if step_index == max_steps {
            break;
        }
        positions = global;
        let next = Configuration::new(positions.clone(), cfg0.tol())?;
        if !next.is_distinct() {
            return Err(Error::Collision { step: step_index });
        }
        for (frame, p) in frames.iter_mut().zip(positions.iter()) {
            frame.origin = *p;
        }
    }

    let trace = ExecutionTrace { steps, outcome: Outcome::StepLimit, tol: cfg0.tol() };
    let outcome = match monitor {
        Some(h) if symmetry_monitor(&trace, h) => Outcome::SymmetryTrapped,
        _ => Outcome::StepLimit,
    };
    Ok(ExecutionTrace { outcome, ..trace })
}

/// Computes every robot's intent for one cycle against the same snapshot.
#[allow(clippy::type_complexity)]
fn cycle(
    cfg: &Configuration,
    frames: &[LocalFrame],
) -> Result<(Option<(Schoenflies, Schoenflies)>, Option<Phase>, Vec<MoveIntent>)> {
    let labels = match symmetry::detect_symmetries(cfg) {
        Ok(theta) => {
            let gamma = symmetry::rotation_group(&theta);
            Some((theta.label(), gamma.label()))
        }
        Err(_) => None,
    };
    let phase = match formation::dispatch(cfg) {
        Ok(p) => Some(p),
        Err(Error::UnsolvableStructure) => None,
        Err(e) => return Err(e),
    };
    let mut intents: Vec<MoveIntent> = Vec::with_capacity(cfg.len());
    for (i, frame) in frames.iter().enumerate() {
        let local_points: Vec<Point3> =
            cfg.points().iter().map(|p| frame.to_local(p)).collect();
        let local_cfg = Configuration::new(local_points, cfg.tol())?;
        let intent = match formation::step(&local_cfg, i) {
            Ok(m) => m,
            Err(Error::UnsolvableStructure) => MoveIntent::stay(local_cfg.points()[i]),
            Err(e) => return Err(e),
        };
        intents.push(intent);
    }
    Ok((labels, phase, intents))
}

/// True iff every configuration in the trace is invariant under every
/// element of the subgroup.
pub fn symmetry_monitor(trace: &ExecutionTrace, subgroup: &[OrthoMap]) -> bool {
    for step in &trace.steps {
        let Ok(cfg) = Configuration::new(step.positions.clone(), trace.tol) else {
            return false;
        };
        let center = subgroup
            .first()
            .map(|m| m.fixed_point)
            .unwrap_or_else(Point3::zeros);
        let centered: Vec<Point3> = step.positions.iter().map(|p| p - center).collect();
        for map in subgroup {
            if symmetry::permutation_of(&map.linear, &centered, cfg.abs_tol()).is_none() {
                return false;
            }
        }
    }
    true
}

/// Terminal check: coplanar, pairwise distinct, and a fixed point of the
/// algorithm under the given frames (identity-oriented frames by default).
pub fn verify_terminal(cfg: &Configuration, frames: Option<&FrameAssignment>) -> bool {
    if !cfg.is_distinct() || coplanar(cfg).is_none() {
        return false;
    }
    let owned;
    let frames = match frames {
        Some(f) => f,
        None => {
            owned = FrameAssignment {
                frames: cfg
                    .points()
                    .iter()
                    .map(|p| LocalFrame {
                        origin: *p,
                        orientation: Mat3::identity(),
                        scale: 1.0,
                    })
                    .collect(),
            };
            &owned
        }
    };
    match cycle(cfg, &frames.frames) {
        Ok((_, _, intents)) => intents
            .iter()
            .zip(frames.frames.iter())
            .zip(cfg.points().iter())
            .all(|((intent, frame), p)| {
                (frame.to_global(&intent.destination) - p).norm() <= cfg.abs_tol()
            }),
        Err(_) => false,
    }
}
