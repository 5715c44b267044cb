//! Tolerance-based geometric primitives.
//!
//! All predicates share a single relative tolerance `tol` carried by the
//! [`Configuration`]; absolute comparisons scale it by the configuration
//! diameter. Coordinates are dimensionless.

use alloc::vec::Vec;

// Float math via traits: inherent methods are std-only.
#[allow(unused_imports)]
use nalgebra::{ComplexField, Matrix3, Vector3};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::rngutil;
use crate::Result;

/// A position in 3D-space.
pub type Point3 = Vector3<f64>;

/// 3x3 real matrix.
pub type Mat3 = Matrix3<f64>;

/// Default relative tolerance threaded through all predicates.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A finite multiset of points with its tolerance context.
///
/// Point indices are bookkeeping only: no operation's result may depend on
/// the input order.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    points: Vec<Point3>,
    tol: f64,
    diameter: f64,
}

impl Configuration {
    /// Builds a configuration, validating that every coordinate is finite and
    /// the relative tolerance is positive.
    pub fn new(points: Vec<Point3>, tol: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyConfiguration);
        }
        if points.iter().any(|p| !p.x.is_finite() || !p.y.is_finite() || !p.z.is_finite()) {
            return Err(Error::NonFiniteCoordinate);
        }
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(Error::InvalidTolerance);
        }
        let mut diameter = 0.0f64;
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                diameter = diameter.max((points[i] - points[j]).norm());
            }
        }
        Ok(Self { points, tol, diameter })
    }

    /// Builds a configuration with [`DEFAULT_TOL`].
    pub fn with_default_tol(points: Vec<Point3>) -> Result<Self> {
        Self::new(points, DEFAULT_TOL)
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Relative tolerance.
    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Largest pairwise distance.
    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Absolute tolerance: `tol * diameter`.
    pub fn abs_tol(&self) -> f64 {
        self.tol * self.diameter
    }

    /// True when all points are pairwise farther apart than the absolute
    /// tolerance.
    pub fn is_distinct(&self) -> bool {
        let eps = self.abs_tol();
        for i in 0..self.points.len() {
            for j in (i + 1)..self.points.len() {
                if (self.points[i] - self.points[j]).norm() <= eps {
                    return false;
                }
            }
        }
        true
    }

    /// The same point set under a different point order or transform.
    pub fn with_points(&self, points: Vec<Point3>) -> Result<Self> {
        Self::new(points, self.tol)
    }

    /// Index of a point within `abs_tol` of `p`, if any.
    pub fn position_of(&self, p: &Point3) -> Option<usize> {
        let eps = self.abs_tol();
        self.points.iter().position(|q| (q - p).norm() <= eps)
    }
}

/// A ball given by center and radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ball {
    pub center: Point3,
    pub radius: f64,
}

impl Ball {
    /// Containment with a small relative slack (independent of the
    /// configuration tolerance; used only to stabilize support computations).
    fn contains(&self, p: &Point3) -> bool {
        (p - self.center).norm() <= self.radius * (1.0 + 1e-12) + 1e-300
    }
}

/// An oriented plane `{ p : normal . p = offset }` with unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plane {
    pub normal: Point3,
    pub offset: f64,
}

impl Plane {
    /// Plane through `point` with the given (non-zero) normal direction,
    /// canonically oriented.
    pub fn through(point: &Point3, normal: &Point3) -> Self {
        let mut n = normal.normalize();
        if !lex_non_negative(&n) {
            n = -n;
        }
        Plane { normal: n, offset: n.dot(point) }
    }

    /// Signed distance from `p` to the plane.
    pub fn signed_distance(&self, p: &Point3) -> f64 {
        self.normal.dot(p) - self.offset
    }

    /// Orthogonal projection of `p` onto the plane.
    pub fn project(&self, p: &Point3) -> Point3 {
        p - self.normal * self.signed_distance(p)
    }

    /// True when the two planes coincide within `eps` (as point sets, i.e.
    /// up to normal sign).
    pub fn approx_eq(&self, other: &Plane, eps: f64) -> bool {
        let same = (self.normal - other.normal).norm() <= eps && (self.offset - other.offset).abs() <= eps;
        let flipped =
            (self.normal + other.normal).norm() <= eps && (self.offset + other.offset).abs() <= eps;
        same || flipped
    }
}

/// Orthogonal projection of `p` onto `plane`.
pub fn project_to_plane(p: &Point3, plane: &Plane) -> Point3 {
    plane.project(p)
}

/// An orthogonal map about a fixed point: `p -> fixed + linear * (p - fixed)`.
///
/// The linear part satisfies `M^T M = I`; its determinant is `+1` for
/// rotations and `-1` for reflections, the inversion, and rotoreflections.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthoMap {
    pub linear: Mat3,
    pub fixed_point: Point3,
}

impl OrthoMap {
    pub fn new(linear: Mat3, fixed_point: Point3) -> Self {
        OrthoMap { linear, fixed_point }
    }

    pub fn identity(fixed_point: Point3) -> Self {
        OrthoMap { linear: Mat3::identity(), fixed_point }
    }

    /// Applies the affine action.
    pub fn apply(&self, p: &Point3) -> Point3 {
        self.fixed_point + self.linear * (p - self.fixed_point)
    }

    /// Composition `self . other` (apply `other` first). Both maps must share
    /// the fixed point for the result to be a map about the same point.
    pub fn compose(&self, other: &OrthoMap) -> OrthoMap {
        OrthoMap { linear: self.linear * other.linear, fixed_point: self.fixed_point }
    }

    /// Inverse map (transpose of the linear part).
    pub fn inverse(&self) -> OrthoMap {
        OrthoMap { linear: self.linear.transpose(), fixed_point: self.fixed_point }
    }

    pub fn det(&self) -> f64 {
        self.linear.determinant()
    }

    pub fn is_identity(&self, eps: f64) -> bool {
        max_abs_diff(&self.linear, &Mat3::identity()) <= eps
    }

    /// Entry-wise comparison of the linear parts.
    pub fn linear_approx_eq(&self, other: &OrthoMap, eps: f64) -> bool {
        max_abs_diff(&self.linear, &other.linear) <= eps
    }
}

pub(crate) fn max_abs_diff(a: &Mat3, b: &Mat3) -> f64 {
    let mut m = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            m = m.max((a[(i, j)] - b[(i, j)]).abs());
        }
    }
    m
}

/// True when the first component of `v` larger than `eps` in magnitude is
/// positive (ties treated as zero). Used to pick canonical signs.
pub(crate) fn lex_non_negative(v: &Point3) -> bool {
    const EPS: f64 = 1e-12;
    for c in [v.x, v.y, v.z] {
        if c > EPS {
            return true;
        }
        if c < -EPS {
            return false;
        }
    }
    true
}

/// Smallest enclosing ball.
///
/// Randomized incremental (move-to-front) over support sets of size at most
/// four; the shuffle is seeded from a permutation-invariant hash of the
/// coordinates so results are reproducible.
pub fn seb(cfg: &Configuration) -> Result<Ball> {
    if cfg.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    let mut pts: Vec<Point3> = cfg.points().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(rngutil::point_set_hash(cfg.points()));
    pts.shuffle(&mut rng);
    let n = pts.len();
    let mut boundary: Vec<Point3> = Vec::with_capacity(4);
    Ok(welzl(&pts, n, &mut boundary))
}

fn welzl(pts: &[Point3], n: usize, boundary: &mut Vec<Point3>) -> Ball {
    if n == 0 || boundary.len() == 4 {
        return min_ball_small(boundary);
    }
    let p = pts[n - 1];
    let b = welzl(pts, n - 1, boundary);
    if b.radius >= 0.0 && b.contains(&p) {
        return b;
    }
    boundary.push(p);
    let b = welzl(pts, n - 1, boundary);
    boundary.pop();
    b
}

/// Exact smallest enclosing ball of at most four points, by support-set
/// enumeration. Also serves as the recursion base of `welzl`.
pub(crate) fn min_ball_small(pts: &[Point3]) -> Ball {
    debug_assert!(pts.len() <= 4);
    if pts.is_empty() {
        return Ball { center: Point3::zeros(), radius: -1.0 };
    }
    let mut best: Option<Ball> = None;
    let n = pts.len();
    for mask in 1u32..(1 << n) {
        let support: Vec<Point3> =
            (0..n).filter(|i| mask & (1 << i) != 0).map(|i| pts[i]).collect();
        if let Some(b) = circumball(&support) {
            if pts.iter().all(|p| b.contains(p)) {
                if best.map_or(true, |bb| b.radius < bb.radius) {
                    best = Some(b);
                }
            }
        }
    }
    // All subsets degenerate cannot happen for <= 4 points: singletons always
    // produce a ball.
    best.unwrap_or(Ball { center: pts[0], radius: 0.0 })
}

/// Smallest ball with all given points on its sphere (center in their affine
/// hull). `None` when the points are affinely dependent.
fn circumball(pts: &[Point3]) -> Option<Ball> {
    match pts.len() {
        1 => Some(Ball { center: pts[0], radius: 0.0 }),
        2 => {
            let c = (pts[0] + pts[1]) * 0.5;
            Some(Ball { center: c, radius: (pts[0] - c).norm() })
        }
        3 => {
            let v1 = pts[1] - pts[0];
            let v2 = pts[2] - pts[0];
            let a = v1.dot(&v1);
            let b = v1.dot(&v2);
            let c = v2.dot(&v2);
            let det = a * c - b * b;
            let scale = a.max(c);
            if det.abs() <= 1e-14 * scale * scale {
                return None; // collinear
            }
            let alpha = (c * (a * 0.5) - b * (c * 0.5)) / det;
            let beta = (a * (c * 0.5) - b * (a * 0.5)) / det;
            let center = pts[0] + v1 * alpha + v2 * beta;
            Some(Ball { center, radius: (pts[0] - center).norm() })
        }
        4 => {
            let v1 = pts[1] - pts[0];
            let v2 = pts[2] - pts[0];
            let v3 = pts[3] - pts[0];
            let m = Mat3::from_rows(&[v1.transpose(), v2.transpose(), v3.transpose()]);
            let rhs = Point3::new(v1.norm_squared(), v2.norm_squared(), v3.norm_squared()) * 0.5;
            let det = m.determinant();
            let scale = v1.norm().max(v2.norm()).max(v3.norm());
            if det.abs() <= 1e-14 * scale * scale * scale {
                return None; // coplanar
            }
            let center = pts[0] + m.try_inverse()? * rhs;
            Some(Ball { center, radius: (pts[0] - center).norm() })
        }
        _ => None,
    }
}

/// Innermost empty ball: centered at the SEB center, touching the nearest
/// point.
pub fn innermost_empty_ball(cfg: &Configuration) -> Result<Ball> {
    let b = seb(cfg)?;
    let radius = cfg
        .points()
        .iter()
        .map(|p| (p - b.center).norm())
        .fold(f64::INFINITY, f64::min);
    Ok(Ball { center: b.center, radius })
}

/// Fitting plane when the whole configuration is within `tol * diameter` of
/// one plane; `None` otherwise. The normal is canonically oriented so planes
/// compare equal across observers.
pub fn coplanar(cfg: &Configuration) -> Option<Plane> {
    let pts = cfg.points();
    let centroid: Point3 = pts.iter().sum::<Point3>() / pts.len() as f64;
    if pts.len() <= 2 || cfg.diameter() == 0.0 {
        // A line (or a point) lies in a plane; complete to a canonical one.
        let dir = pts
            .iter()
            .map(|p| p - centroid)
            .max_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap())
            .unwrap_or_else(Point3::zeros);
        let normal = any_perpendicular(&dir);
        return Some(Plane::through(&centroid, &normal));
    }
    // Best-conditioned triangle: farthest point from the centroid, then the
    // point maximizing the spanned area.
    let p0 = *pts
        .iter()
        .max_by(|a, b| {
            ((*a) - centroid).norm().partial_cmp(&((*b) - centroid).norm()).unwrap()
        })
        .unwrap();
    let d0 = p0 - centroid;
    let (p1, area) = pts
        .iter()
        .map(|p| (*p, d0.cross(&(p - centroid)).norm()))
        .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .unwrap();
    if area <= cfg.abs_tol() * cfg.diameter() {
        // Collinear within tolerance.
        let normal = any_perpendicular(&d0);
        return Some(Plane::through(&centroid, &normal));
    }
    let normal = d0.cross(&(p1 - centroid));
    let plane = Plane::through(&centroid, &normal);
    let max_dev = pts.iter().map(|p| plane.signed_distance(p).abs()).fold(0.0, f64::max);
    if max_dev <= cfg.abs_tol() {
        Some(plane)
    } else {
        None
    }
}

/// Some unit vector perpendicular to `v` (canonical for degenerate `v`).
pub(crate) fn any_perpendicular(v: &Point3) -> Point3 {
    if v.norm() == 0.0 {
        return Point3::z();
    }
    let e = if v.x.abs() <= v.y.abs() && v.x.abs() <= v.z.abs() {
        Point3::x()
    } else if v.y.abs() <= v.z.abs() {
        Point3::y()
    } else {
        Point3::z()
    };
    v.cross(&e).normalize()
}

/// Rotation by `angle` about the axis direction `axis` (unit).
pub fn rotation_about(axis: &Point3, angle: f64) -> Mat3 {
    let (s, c) = (angle.sin(), angle.cos());
    let u = *axis;
    let ux = Mat3::new(0.0, -u.z, u.y, u.z, 0.0, -u.x, -u.y, u.x, 0.0);
    Mat3::identity() * c + ux * s + u * u.transpose() * (1.0 - c)
}

/// Reflection through the plane with unit normal `normal`.
pub fn reflection_across(normal: &Point3) -> Mat3 {
    Mat3::identity() - normal * normal.transpose() * 2.0
}
