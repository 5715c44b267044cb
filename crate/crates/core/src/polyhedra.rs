//! Canonical polyhedron templates and configuration generators.
//!
//! All named shapes are produced with unit circumradius. The four polyhedra
//! recognized by the symmetry-breaking step (regular tetrahedron, regular
//! octahedron, regular dodecahedron, icosidodecahedron) carry congruence
//! tests against these templates.

use alloc::vec;
use alloc::vec::Vec;

// Float math via traits: inherent methods are std-only.
#[allow(unused_imports)]
use nalgebra::ComplexField;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::families;
use crate::geom::{Configuration, Point3};
use crate::rngutil;
use crate::schoenflies::Schoenflies;
use crate::Result;

/// The polyhedra that can appear as the innermost orbit when the rotation
/// group is 3D and the configuration is solvable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BreakablePolyhedron {
    Tetrahedron,
    Octahedron,
    Dodecahedron,
    Icosidodecahedron,
}

impl BreakablePolyhedron {
    pub fn vertex_count(&self) -> usize {
        match self {
            BreakablePolyhedron::Tetrahedron => 4,
            BreakablePolyhedron::Octahedron => 6,
            BreakablePolyhedron::Dodecahedron => 20,
            BreakablePolyhedron::Icosidodecahedron => 30,
        }
    }

    pub fn template(&self) -> Vec<Point3> {
        match self {
            BreakablePolyhedron::Tetrahedron => tetrahedron_vertices(),
            BreakablePolyhedron::Octahedron => octahedron_vertices(),
            BreakablePolyhedron::Dodecahedron => dodecahedron_vertices(),
            BreakablePolyhedron::Icosidodecahedron => icosidodecahedron_vertices(),
        }
    }
}

fn golden() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

fn normalized(mut pts: Vec<Point3>) -> Vec<Point3> {
    let r = pts.iter().map(|p| p.norm()).fold(0.0, f64::max);
    for p in &mut pts {
        *p /= r;
    }
    pts
}

pub fn tetrahedron_vertices() -> Vec<Point3> {
    normalized(vec![
        Point3::new(1., 1., 1.),
        Point3::new(1., -1., -1.),
        Point3::new(-1., 1., -1.),
        Point3::new(-1., -1., 1.),
    ])
}

pub fn octahedron_vertices() -> Vec<Point3> {
    vec![
        Point3::new(1., 0., 0.),
        Point3::new(-1., 0., 0.),
        Point3::new(0., 1., 0.),
        Point3::new(0., -1., 0.),
        Point3::new(0., 0., 1.),
        Point3::new(0., 0., -1.),
    ]
}

pub fn cube_vertices() -> Vec<Point3> {
    let mut pts = Vec::with_capacity(8);
    for sx in [-1.0, 1.0] {
        for sy in [-1.0, 1.0] {
            for sz in [-1.0, 1.0] {
                pts.push(Point3::new(sx, sy, sz));
            }
        }
    }
    normalized(pts)
}

pub fn icosahedron_vertices() -> Vec<Point3> {
    let phi = golden();
    let mut pts = Vec::with_capacity(12);
    for s1 in [-1.0, 1.0] {
        for s2 in [-1.0, 1.0] {
            pts.push(Point3::new(0.0, s1, s2 * phi));
            pts.push(Point3::new(s1, s2 * phi, 0.0));
            pts.push(Point3::new(s1 * phi, 0.0, s2));
        }
    }
    normalized(pts)
}

pub fn dodecahedron_vertices() -> Vec<Point3> {
    let phi = golden();
    let inv = 1.0 / phi;
    let mut pts = Vec::with_capacity(20);
    for sx in [-1.0, 1.0] {
        for sy in [-1.0, 1.0] {
            for sz in [-1.0, 1.0] {
                pts.push(Point3::new(sx, sy, sz));
            }
        }
    }
    for s1 in [-1.0, 1.0] {
        for s2 in [-1.0, 1.0] {
            pts.push(Point3::new(0.0, s1 * inv, s2 * phi));
            pts.push(Point3::new(s1 * inv, s2 * phi, 0.0));
            pts.push(Point3::new(s1 * phi, 0.0, s2 * inv));
        }
    }
    normalized(pts)
}

pub fn icosidodecahedron_vertices() -> Vec<Point3> {
    let phi = golden();
    let mut pts = Vec::with_capacity(30);
    for s in [-1.0, 1.0] {
        pts.push(Point3::new(0.0, 0.0, s * phi));
        pts.push(Point3::new(0.0, s * phi, 0.0));
        pts.push(Point3::new(s * phi, 0.0, 0.0));
    }
    for s1 in [-1.0, 1.0] {
        for s2 in [-1.0, 1.0] {
            for s3 in [-1.0, 1.0] {
                let (a, b, c) = (s1 * 0.5, s2 * phi / 2.0, s3 * phi * phi / 2.0);
                pts.push(Point3::new(a, b, c));
                pts.push(Point3::new(b, c, a));
                pts.push(Point3::new(c, a, b));
            }
        }
    }
    normalized(pts)
}

fn cfg(points: Vec<Point3>) -> Configuration {
    Configuration::with_default_tol(points).expect("canonical shapes are valid")
}

pub fn tetrahedron() -> Configuration {
    cfg(tetrahedron_vertices())
}

pub fn octahedron() -> Configuration {
    cfg(octahedron_vertices())
}

pub fn cube() -> Configuration {
    cfg(cube_vertices())
}

pub fn dodecahedron() -> Configuration {
    cfg(dodecahedron_vertices())
}

pub fn icosahedron() -> Configuration {
    cfg(icosahedron_vertices())
}

pub fn icosidodecahedron() -> Configuration {
    cfg(icosidodecahedron_vertices())
}

/// Prism over a regular k-gon with height `h`, unit circumradius.
pub fn prism(k: u32, h: f64) -> Result<Configuration> {
    if k < 3 || !(h > 0.0) || h >= 2.0 {
        return Err(Error::UnknownLabel);
    }
    let r = (1.0 - h * h / 4.0).sqrt();
    let mut pts = Vec::with_capacity(2 * k as usize);
    for j in 0..k {
        let a = 2.0 * core::f64::consts::PI * j as f64 / k as f64;
        for s in [-1.0, 1.0] {
            pts.push(Point3::new(r * a.cos(), r * a.sin(), s * h / 2.0));
        }
    }
    Configuration::with_default_tol(pts)
}

/// Antiprism over a regular k-gon with height `h` (top gon twisted by pi/k),
/// unit circumradius.
pub fn antiprism(k: u32, h: f64) -> Result<Configuration> {
    if k < 3 || !(h > 0.0) || h >= 2.0 {
        return Err(Error::UnknownLabel);
    }
    let r = (1.0 - h * h / 4.0).sqrt();
    let twist = core::f64::consts::PI / k as f64;
    let mut pts = Vec::with_capacity(2 * k as usize);
    for j in 0..k {
        let a = 2.0 * core::f64::consts::PI * j as f64 / k as f64;
        pts.push(Point3::new(r * a.cos(), r * a.sin(), -h / 2.0));
        pts.push(Point3::new(r * (a + twist).cos(), r * (a + twist).sin(), h / 2.0));
    }
    Configuration::with_default_tol(pts)
}

/// Pyramid: regular k-gon base plus apex, all on the unit sphere.
pub fn pyramid(k: u32) -> Result<Configuration> {
    if k < 3 {
        return Err(Error::UnknownLabel);
    }
    let base_z = -0.35;
    let r = (1.0 - base_z * base_z).sqrt();
    let mut pts = vec![Point3::new(0.0, 0.0, 1.0)];
    for j in 0..k {
        let a = 2.0 * core::f64::consts::PI * j as f64 / k as f64;
        pts.push(Point3::new(r * a.cos(), r * a.sin(), base_z));
    }
    Configuration::with_default_tol(pts)
}

/// `n` seeded random points in the unit ball with a minimum separation.
pub fn random(n: usize, seed: u64) -> Result<Configuration> {
    if n == 0 {
        return Err(Error::EmptyConfiguration);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x72616e646f6d);
    let mut pts: Vec<Point3> = Vec::with_capacity(n);
    while pts.len() < n {
        let dir = rngutil::uniform_unit(&mut rng);
        let r: f64 = rng.gen_range(0.15..1.0f64);
        let p = dir * r;
        if pts.iter().all(|q| (q - p).norm() > 0.05) {
            pts.push(p);
        }
    }
    Configuration::with_default_tol(pts)
}

/// A configuration whose symmetry group contains the given label acting
/// freely: `orbits` full-size orbits of the canonical group, seeded away from
/// every rotation axis and mirror plane.
pub fn random_symmetric(label: Schoenflies, orbits: usize, seed: u64) -> Result<Configuration> {
    if orbits == 0 {
        return Err(Error::EmptyConfiguration);
    }
    let group = families::canonical_group(label)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x73796d6d);
    let mut pts: Vec<Point3> = Vec::new();
    for orbit in 0..orbits {
        let base_r = 0.55 + 0.4 * (orbit as f64 + rng.gen_range(0.0..0.4)) / orbits as f64;
        let mut margin = 0.25;
        let mut tries = 0usize;
        loop {
            tries += 1;
            if tries % 64 == 0 {
                margin *= 0.5;
            }
            let dir = rngutil::uniform_unit(&mut rng);
            let s = dir * base_r;
            if !clears_fixed_sets(&group, &s, margin * base_r) {
                continue;
            }
            let orbit_pts: Vec<Point3> =
                group.elements().iter().map(|g| g.apply(&s)).collect();
            let sep = 0.02 * base_r;
            let mut ok = orbit_pts.iter().enumerate().all(|(i, p)| {
                orbit_pts[i + 1..].iter().all(|q| (p - q).norm() > sep)
            });
            ok = ok
                && orbit_pts
                    .iter()
                    .all(|p| pts.iter().all(|q| (p - q).norm() > sep));
            if ok {
                pts.extend(orbit_pts);
                break;
            }
        }
    }
    Configuration::with_default_tol(pts)
}

/// True when `p` is farther than `margin` from every rotation axis,
/// rotoreflection axis, and mirror plane of the group.
fn clears_fixed_sets(group: &crate::symmetry::PointGroup, p: &Point3, margin: f64) -> bool {
    let c = group.center();
    let q = p - c;
    for (axis, _) in group.axes().iter().chain(group.rotoreflection_axes()) {
        if (q - axis * axis.dot(&q)).norm() <= margin {
            return false;
        }
    }
    for mirror in group.mirrors() {
        if mirror.signed_distance(p).abs() <= margin {
            return false;
        }
    }
    q.norm() > margin
}

/// Shapes understood by the scenario generator.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Tetrahedron,
    Octahedron,
    Cube,
    Dodecahedron,
    Icosahedron,
    Icosidodecahedron,
    Prism { k: u32, h: f64 },
    Antiprism { k: u32, h: f64 },
    Pyramid { k: u32 },
    Random { n: usize },
    RandomSymmetric { label: Schoenflies, orbits: usize },
}

/// Builds the configuration for a shape; `seed` drives the random variants.
pub fn generate(shape: &Shape, seed: u64) -> Result<Configuration> {
    match shape {
        Shape::Tetrahedron => Ok(tetrahedron()),
        Shape::Octahedron => Ok(octahedron()),
        Shape::Cube => Ok(cube()),
        Shape::Dodecahedron => Ok(dodecahedron()),
        Shape::Icosahedron => Ok(icosahedron()),
        Shape::Icosidodecahedron => Ok(icosidodecahedron()),
        Shape::Prism { k, h } => prism(*k, *h),
        Shape::Antiprism { k, h } => antiprism(*k, *h),
        Shape::Pyramid { k } => pyramid(*k),
        Shape::Random { n } => random(*n, seed),
        Shape::RandomSymmetric { label, orbits } => random_symmetric(*label, *orbits, seed),
    }
}

/// Minimum pairwise distance; the edge length for the regular templates and
/// the icosidodecahedron.
pub fn edge_length(points: &[Point3]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            best = best.min((points[i] - points[j]).norm());
        }
    }
    best
}

/// Congruence of a point set (about `center`) with one of the four
/// symmetry-breaking polyhedra: same cardinality, common circumradius, and
/// matching sorted distance multiset after radius normalization.
pub fn matches_breakable(points: &[Point3], center: &Point3, tol: f64) -> Option<BreakablePolyhedron> {
    let kind = match points.len() {
        4 => BreakablePolyhedron::Tetrahedron,
        6 => BreakablePolyhedron::Octahedron,
        20 => BreakablePolyhedron::Dodecahedron,
        30 => BreakablePolyhedron::Icosidodecahedron,
        _ => return None,
    };
    let radii: Vec<f64> = points.iter().map(|p| (p - center).norm()).collect();
    let r = radii.iter().sum::<f64>() / radii.len() as f64;
    if r <= 0.0 || radii.iter().any(|x| (x - r).abs() > tol.max(1e-12) * r.max(1.0) * 10.0) {
        return None;
    }
    let dist_multiset = |pts: &[Point3], scale: f64| -> Vec<f64> {
        let mut d = Vec::with_capacity(pts.len() * (pts.len() - 1) / 2);
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                d.push((pts[i] - pts[j]).norm() / scale);
            }
        }
        d.sort_by(|a, b| a.partial_cmp(b).unwrap());
        d
    };
    let shifted: Vec<Point3> = points.iter().map(|p| p - center).collect();
    let ours = dist_multiset(&shifted, r);
    let template = kind.template();
    let theirs = dist_multiset(&template, 1.0);
    let eps = tol.max(1e-12) * 100.0 + 1e-9;
    if ours.iter().zip(theirs.iter()).all(|(a, b)| (a - b).abs() <= eps) {
        Some(kind)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn templates_are_unit_circumradius_and_right_sized() {
        for (pts, n) in [
            (tetrahedron_vertices(), 4),
            (octahedron_vertices(), 6),
            (cube_vertices(), 8),
            (dodecahedron_vertices(), 20),
            (icosahedron_vertices(), 12),
            (icosidodecahedron_vertices(), 30),
        ] {
            assert_eq!(pts.len(), n);
            for p in &pts {
                assert!((p.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn breakable_recognition() {
        let c = Point3::zeros();
        assert_eq!(
            matches_breakable(&tetrahedron_vertices(), &c, 1e-9),
            Some(BreakablePolyhedron::Tetrahedron)
        );
        assert_eq!(
            matches_breakable(&icosidodecahedron_vertices(), &c, 1e-9),
            Some(BreakablePolyhedron::Icosidodecahedron)
        );
        // A cube is not a symmetry-breakable orbit.
        assert_eq!(matches_breakable(&cube_vertices(), &c, 1e-9), None);
        // Scaled and shifted copies still match.
        let moved: Vec<Point3> = octahedron_vertices()
            .iter()
            .map(|p| p * 2.5 + Point3::new(1., 2., 3.))
            .collect();
        assert_eq!(
            matches_breakable(&moved, &Point3::new(1., 2., 3.), 1e-9),
            Some(BreakablePolyhedron::Octahedron)
        );
    }

    #[test]
    fn random_symmetric_orbit_sizes() {
        let cfg = random_symmetric(Schoenflies::Cv(3), 2, 7).unwrap();
        assert_eq!(cfg.len(), 12);
        assert!(cfg.is_distinct());
    }
}
