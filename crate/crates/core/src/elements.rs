//! Analysis of single orthogonal matrices: kind, axis, angle.
//!
//! Every element of a finite orthogonal group is one of: identity, rotation,
//! reflection, inversion, or rotoreflection. Detected elements are snapped to
//! exact axis-angle form so group closure holds bit-stably.

// Float math via traits: inherent methods are std-only.
#[allow(unused_imports)]
use nalgebra::ComplexField;

use crate::error::Error;
use crate::geom::{lex_non_negative, reflection_across, rotation_about, Mat3, Point3};
use crate::Result;

const TWO_PI: f64 = 2.0 * core::f64::consts::PI;

/// Classification of one orthogonal matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ElementKind {
    Identity,
    /// Proper rotation; `angle` in (0, 2pi) about the canonically signed axis.
    Rotation { axis: Point3, angle: f64 },
    /// Reflection through the plane with the given unit normal.
    Reflection { normal: Point3 },
    /// Central inversion.
    Inversion,
    /// Rotation by `angle` about `axis` composed with reflection through the
    /// plane perpendicular to `axis`; `angle` in (0, 2pi) excluding pi.
    Rotoreflection { axis: Point3, angle: f64 },
}

impl ElementKind {
    /// Rebuilds the exact matrix.
    pub fn matrix(&self) -> Mat3 {
        match self {
            ElementKind::Identity => Mat3::identity(),
            ElementKind::Rotation { axis, angle } => rotation_about(axis, *angle),
            ElementKind::Reflection { normal } => reflection_across(normal),
            ElementKind::Inversion => -Mat3::identity(),
            ElementKind::Rotoreflection { axis, angle } => {
                reflection_across(axis) * rotation_about(axis, *angle)
            }
        }
    }

    pub fn is_proper(&self) -> bool {
        matches!(self, ElementKind::Identity | ElementKind::Rotation { .. })
    }
}

/// Angular tolerance used when interpreting measured matrices.
const ANGLE_EPS: f64 = 1e-6;

/// Classifies an orthogonal matrix (`M^T M = I` within `eps`).
pub fn analyze(m: &Mat3, eps: f64) -> Result<ElementKind> {
    let gram = m.transpose() * m;
    if crate::geom::max_abs_diff(&gram, &Mat3::identity()) > eps.max(1e-7) {
        return Err(Error::UnknownFamily);
    }
    let det = m.determinant();
    if det > 0.0 {
        let (axis, angle) = proper_axis_angle(m);
        if angle <= ANGLE_EPS || angle >= TWO_PI - ANGLE_EPS {
            Ok(ElementKind::Identity)
        } else {
            Ok(ElementKind::Rotation { axis, angle })
        }
    } else {
        // -M is proper; M = -R(u, t) with the rotoreflection angle t - pi.
        let neg = -m;
        let (axis, angle) = proper_axis_angle(&neg);
        if angle <= ANGLE_EPS || angle >= TWO_PI - ANGLE_EPS {
            return Ok(ElementKind::Inversion);
        }
        if (angle - core::f64::consts::PI).abs() <= ANGLE_EPS {
            return Ok(ElementKind::Reflection { normal: axis });
        }
        let mut roto = angle - core::f64::consts::PI;
        if roto < 0.0 {
            roto += TWO_PI;
        }
        // Canonical sign of the axis also flips the angle; proper_axis_angle
        // already canonicalized, so no more work here.
        Ok(ElementKind::Rotoreflection { axis, angle: roto })
    }
}

/// Axis (canonical sign) and angle in (0, 2pi) of a proper rotation matrix.
fn proper_axis_angle(m: &Mat3) -> (Point3, f64) {
    let cos = ((m.trace() - 1.0) * 0.5).clamp(-1.0, 1.0);
    let angle = cos.acos(); // in [0, pi]
    if angle <= ANGLE_EPS {
        return (Point3::z(), 0.0);
    }
    let axis = if core::f64::consts::PI - angle <= 1e-4 {
        // Near pi the skew part vanishes; take the dominant column of M + I.
        let s = m + Mat3::identity();
        let mut best = s.column(0).into_owned();
        for c in 1..3 {
            if s.column(c).norm() > best.norm() {
                best = s.column(c).into_owned();
            }
        }
        best.normalize()
    } else {
        Point3::new(
            m[(2, 1)] - m[(1, 2)],
            m[(0, 2)] - m[(2, 0)],
            m[(1, 0)] - m[(0, 1)],
        )
        .normalize()
    };
    // Canonical sign; flipping the axis negates the angle.
    if lex_non_negative(&axis) {
        (axis, angle)
    } else {
        let mut a = TWO_PI - angle;
        if a >= TWO_PI {
            a = 0.0;
        }
        (-axis, a)
    }
}

/// Snaps `angle` to the nearest `2 pi p / q` with `q <= q_max`, returning
/// the snapped angle and the reduced denominator.
pub fn snap_angle(angle: f64, q_max: u32) -> (f64, u32) {
    let mut best = (angle, 1u32);
    let mut best_err = f64::INFINITY;
    for q in 1..=q_max.max(1) {
        let p = (angle * q as f64 / TWO_PI).round();
        let snapped = TWO_PI * p / q as f64;
        let err = (snapped - angle).abs();
        if err + 1e-15 < best_err {
            best_err = err;
            let g = gcd(p as u64, q as u64).max(1) as u32;
            best = (snapped, q / g.max(1));
        }
    }
    best
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Snapped copy of an analyzed element: the angle is moved to the nearest
/// rational multiple of a full turn with denominator at most `q_max`.
pub fn snap(kind: &ElementKind, q_max: u32) -> ElementKind {
    match kind {
        ElementKind::Rotation { axis, angle } => {
            let (a, _) = snap_angle(*angle, q_max);
            ElementKind::Rotation { axis: *axis, angle: a }
        }
        ElementKind::Rotoreflection { axis, angle } => {
            let (a, _) = snap_angle(*angle, q_max);
            if a.abs() <= 1e-12 || (a - TWO_PI).abs() <= 1e-12 {
                ElementKind::Reflection { normal: *axis }
            } else if (a - core::f64::consts::PI).abs() <= 1e-12 {
                ElementKind::Inversion
            } else {
                ElementKind::Rotoreflection { axis: *axis, angle: a }
            }
        }
        other => *other,
    }
}

/// True when `u` and `v` span the same line.
pub fn same_axis(u: &Point3, v: &Point3, eps: f64) -> bool {
    u.cross(v).norm() <= eps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_recovers_kinds() {
        let eps = 1e-9;
        assert_eq!(analyze(&Mat3::identity(), eps).unwrap(), ElementKind::Identity);
        assert_eq!(analyze(&(-Mat3::identity()), eps).unwrap(), ElementKind::Inversion);

        let axis = Point3::new(0.0, 0.0, 1.0);
        let rot = rotation_about(&axis, TWO_PI / 5.0);
        match analyze(&rot, eps).unwrap() {
            ElementKind::Rotation { axis: a, angle } => {
                assert!((a - axis).norm() < 1e-12);
                assert!((angle - TWO_PI / 5.0).abs() < 1e-12);
            }
            other => panic!("expected rotation, got {other:?}"),
        }

        let refl = reflection_across(&axis);
        match analyze(&refl, eps).unwrap() {
            ElementKind::Reflection { normal } => assert!(same_axis(&normal, &axis, 1e-12)),
            other => panic!("expected reflection, got {other:?}"),
        }

        // S4 about z: rotate pi/2, then reflect across z = 0.
        let s4 = reflection_across(&axis) * rotation_about(&axis, core::f64::consts::FRAC_PI_2);
        match analyze(&s4, eps).unwrap() {
            ElementKind::Rotoreflection { axis: a, angle } => {
                assert!(same_axis(&a, &axis, 1e-12));
                let half_pi = core::f64::consts::FRAC_PI_2;
                assert!((angle - half_pi).abs() < 1e-9 || (angle - 3.0 * half_pi).abs() < 1e-9);
            }
            other => panic!("expected rotoreflection, got {other:?}"),
        }
    }

    #[test]
    fn rebuild_round_trips() {
        let axis = Point3::new(1.0, 2.0, -0.5).normalize();
        for kind in [
            ElementKind::Rotation { axis, angle: TWO_PI / 7.0 },
            ElementKind::Reflection { normal: axis },
            ElementKind::Rotoreflection { axis, angle: TWO_PI / 6.0 },
        ] {
            let m = kind.matrix();
            let back = analyze(&m, 1e-9).unwrap();
            let m2 = back.matrix();
            assert!(crate::geom::max_abs_diff(&m, &m2) < 1e-9, "{kind:?}");
        }
    }

    #[test]
    fn snapping_hits_exact_fractions() {
        let noisy = TWO_PI / 3.0 + 3e-8;
        let (snapped, q) = snap_angle(noisy, 16);
        assert!((snapped - TWO_PI / 3.0).abs() < 1e-15);
        assert_eq!(q, 3);
    }

    #[test]
    fn rotation_by_pi_axis_recovery() {
        let axis = Point3::new(0.3, -0.7, 0.64).normalize();
        let rot = rotation_about(&axis, core::f64::consts::PI);
        match analyze(&rot, 1e-9).unwrap() {
            ElementKind::Rotation { axis: a, angle } => {
                assert!(same_axis(&a, &axis, 1e-9));
                assert!((angle - core::f64::consts::PI).abs() < 1e-9);
            }
            other => panic!("expected rotation, got {other:?}"),
        }
    }
}
