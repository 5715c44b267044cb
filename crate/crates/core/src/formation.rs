//! The oblivious plane formation algorithm.
//!
//! [`step`] is the common algorithm every robot runs: a pure function from a
//! snapshot (the full point set expressed in the robot's own frame, its own
//! position at the origin) to a move intent in the same frame. Dispatch
//! picks the applicable phase by ordered predicates; robots not addressed by
//! the firing phase stay put.
//!
//! Movement phases, in dispatch order: escape the ball center, pull a
//! breakable polyhedral orbit inward, pull the occupied mirror orbit inward
//! (shrinking a blocking outer orbit), go-to-center symmetry breaking,
//! mirror removal via a thin fictitious prism, prism twisting, and the final
//! simultaneous landing.
//!
//! Wherever the underlying procedure says "select one of" (a face, a nearest
//! vertex), the robot picks the candidate minimizing lexicographic
//! coordinates in its own frame; determinism per robot, with the adversary
//! keeping full control through the frame choice.

use alloc::vec;
use alloc::vec::Vec;

// Float math via traits: inherent methods are std-only.
#[allow(unused_imports)]
use nalgebra::{ComplexField, RealField};

use crate::error::Error;
use crate::geom::{
    self, innermost_empty_ball, rotation_about, seb, Configuration, Plane, Point3,
};
use crate::hull;
use crate::orbits::{ordered_decomposition, OrbitDecomposition};
use crate::polyhedra::{self, BreakablePolyhedron};
use crate::rngutil;
use crate::schoenflies::Schoenflies;
use crate::symmetry::{rotation_group, PointGroup};
use crate::Result;

/// Phase labels; exactly one applies to any valid snapshot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Terminal,
    PrepCenter,
    PrepType1,
    PrepType2,
    GoToCenter,
    RemoveMirror,
    TwistPrism,
    FinalLanding,
}

impl core::fmt::Display for Phase {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let s = match self {
            Phase::Terminal => "Terminal",
            Phase::PrepCenter => "PrepCenter",
            Phase::PrepType1 => "PrepType1",
            Phase::PrepType2 => "PrepType2",
            Phase::GoToCenter => "GoToCenter",
            Phase::RemoveMirror => "RemoveMirror",
            Phase::TwistPrism => "TwistPrism",
            Phase::FinalLanding => "FinalLanding",
        };
        write!(f, "{s}")
    }
}

/// Which candidate rule produced a destination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Stay,
    EscapeCenter,
    RadialInward,
    MirrorInward,
    AxisShrink,
    FaceApproach,
    PrismVertex,
    Twist,
    TwistReduced,
    LandFoot,
    LandOffset,
    LandCircle,
}

/// Destination in the observing robot's frame, with the rule that fired.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoveIntent {
    pub destination: Point3,
    pub rule: Rule,
}

impl MoveIntent {
    pub fn stay(position: Point3) -> Self {
        MoveIntent { destination: position, rule: Rule::Stay }
    }

    pub fn is_stay(&self) -> bool {
        self.rule == Rule::Stay
    }
}

/// Shared per-snapshot analysis.
struct Scene {
    center: Point3,
    eps: f64,
    inner_radius: f64,
    theta: PointGroup,
    gamma: PointGroup,
    decomp: OrbitDecomposition,
}

fn analyze(cfg: &Configuration) -> Result<Scene> {
    let decomp = ordered_decomposition(cfg)?;
    let theta = decomp.group.clone();
    let gamma = rotation_group(&theta);
    let inner = innermost_empty_ball(cfg)?;
    Ok(Scene {
        center: theta.center(),
        eps: cfg.abs_tol(),
        inner_radius: inner.radius,
        theta,
        gamma,
        decomp,
    })
}

impl Scene {
    fn orbit_radius(&self, cfg: &Configuration, orbit: usize) -> f64 {
        let idxs = &self.decomp.orbits[orbit];
        idxs.iter().map(|&i| (cfg.points()[i] - self.center).norm()).sum::<f64>()
            / idxs.len() as f64
    }

    /// All members within tolerance of the horizontal mirror plane.
    fn mirror_resident(&self, cfg: &Configuration, orbit: usize, plane: &Plane) -> bool {
        self.decomp.orbits[orbit]
            .iter()
            .all(|&i| plane.signed_distance(&cfg.points()[i]).abs() <= self.eps)
    }

    /// All members within tolerance of the principal axis line.
    fn axis_resident(&self, cfg: &Configuration, orbit: usize, axis: &Point3) -> bool {
        self.decomp.orbits[orbit].iter().all(|&i| {
            let rel = cfg.points()[i] - self.center;
            (rel - axis * axis.dot(&rel)).norm() <= self.eps
        })
    }

    /// First orbit congruent to one of the four breakable polyhedra.
    fn first_breakable(&self, cfg: &Configuration) -> Option<(usize, BreakablePolyhedron)> {
        self.decomp.orbits.iter().enumerate().find_map(|(oi, orbit)| {
            let pts: Vec<Point3> = orbit.iter().map(|&i| cfg.points()[i]).collect();
            polyhedra::matches_breakable(&pts, &self.center, cfg.tol()).map(|k| (oi, k))
        })
    }

    /// Orbit indices whose members include two off-axis points sharing a
    /// perpendicular foot on the plane through the center orthogonal to the
    /// principal axis.
    fn prism_orbits(&self, cfg: &Configuration, axis: &Point3) -> Vec<usize> {
        let plane = Plane::through(&self.center, axis);
        let mut out = Vec::new();
        for (oi, orbit) in self.decomp.orbits.iter().enumerate() {
            let feet: Vec<(Point3, bool)> = orbit
                .iter()
                .map(|&i| {
                    let p = cfg.points()[i];
                    let rel = p - self.center;
                    let off_axis = (rel - axis * axis.dot(&rel)).norm() > self.eps;
                    (plane.project(&p), off_axis)
                })
                .collect();
            'pairs: for a in 0..feet.len() {
                for b in (a + 1)..feet.len() {
                    if feet[a].1 && feet[b].1 && (feet[a].0 - feet[b].0).norm() <= self.eps {
                        out.push(oi);
                        break 'pairs;
                    }
                }
            }
        }
        out
    }
}

/// Ordered phase dispatch.
pub fn dispatch(cfg: &Configuration) -> Result<Phase> {
    if !cfg.is_distinct() {
        return Err(Error::CoincidentPoints);
    }
    if geom::coplanar(cfg).is_some() {
        return Ok(Phase::Terminal);
    }
    let center = seb(cfg)?.center;
    if cfg.points().iter().any(|p| (p - center).norm() <= cfg.abs_tol()) {
        return Ok(Phase::PrepCenter);
    }
    let scene = analyze(cfg)?;

    if scene.gamma.label().is_3d_rotation_group() {
        return match scene.first_breakable(cfg) {
            Some((0, _)) => Ok(Phase::GoToCenter),
            Some((_, _)) => Ok(Phase::PrepType1),
            None => Err(Error::UnsolvableStructure),
        };
    }

    let cyclic_or_dihedral = matches!(scene.gamma.label(), Schoenflies::C(k) if k >= 3)
        || matches!(scene.gamma.label(), Schoenflies::D(_));
    if cyclic_or_dihedral {
        if let Some(hm) = scene.theta.horizontal_mirror() {
            let occupied: Vec<usize> = (0..scene.decomp.orbits.len())
                .filter(|&oi| scene.mirror_resident(cfg, oi, &hm))
                .collect();
            if !occupied.is_empty() {
                let r0 = scene.orbit_radius(cfg, 0);
                let innermost_is_mirror = occupied.contains(&0);
                let strictly_inside = (1..scene.decomp.orbits.len())
                    .all(|oi| scene.orbit_radius(cfg, oi) > r0 + scene.eps);
                if innermost_is_mirror && strictly_inside {
                    return Ok(Phase::RemoveMirror);
                }
                return Ok(Phase::PrepType2);
            }
        }
    }

    if matches!(scene.gamma.label(), Schoenflies::D(_)) {
        let axis = scene.gamma.principal_axis().ok_or(Error::NoPrincipalAxis)?;
        if !scene.prism_orbits(cfg, &axis).is_empty() {
            return Ok(Phase::TwistPrism);
        }
    }
    Ok(Phase::FinalLanding)
}

/// Escape move for the robot sitting on the ball center: a destination
/// strictly inside the innermost empty ball of the remaining robots, off
/// every rotation axis and mirror plane of their symmetry group.
pub fn prep_center(cfg: &Configuration) -> Result<MoveIntent> {
    let center = seb(cfg)?.center;
    let eps = cfg.abs_tol();
    let center_idx = cfg
        .points()
        .iter()
        .position(|p| (p - center).norm() <= eps)
        .ok_or(Error::CenterNotOccupied)?;
    let rest: Vec<Point3> = cfg
        .points()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != center_idx)
        .map(|(_, p)| *p)
        .collect();
    let rest_cfg = cfg.with_points(rest)?;
    let inner = innermost_empty_ball(&rest_cfg)?;
    let radius = inner.radius * 0.25;
    let margin = cfg.tol() * inner.radius;

    // Fixed sets of the remaining robots' symmetry group; a collinear rest
    // set degenerates to its supporting line.
    let (axes, mirrors): (Vec<Point3>, Vec<Plane>) =
        match crate::symmetry::detect_symmetries(&rest_cfg) {
            Ok(g) => {
                let mut axes: Vec<Point3> =
                    g.axes().iter().map(|(a, _)| *a).collect();
                axes.extend(g.rotoreflection_axes().iter().map(|(a, _)| *a));
                (axes, g.mirrors().to_vec())
            }
            Err(Error::DegenerateConfiguration) => {
                let dir = rest_cfg.points()[rest_cfg.len() - 1] - rest_cfg.points()[0];
                (vec![dir.normalize()], Vec::new())
            }
            Err(e) => return Err(e),
        };

    let clears = |dir: &Point3| -> bool {
        let p = inner.center + dir * radius;
        let rel = p - inner.center;
        for a in &axes {
            if (rel - a * a.dot(&rel)).norm() <= margin {
                return false;
            }
        }
        for m in &mirrors {
            if m.signed_distance(&p).abs() <= margin {
                return false;
            }
        }
        true
    };

    // Fixed direction sequence in the robot's own frame: lattice directions,
    // then a deterministic random sweep. Fixed sets have measure zero, so
    // the scan terminates.
    for dir in direction_sequence(cfg) {
        if clears(&dir) {
            return Ok(MoveIntent {
                destination: inner.center + dir * radius,
                rule: Rule::EscapeCenter,
            });
        }
    }
    Err(Error::UnsolvableStructure)
}

fn direction_sequence(cfg: &Configuration) -> impl Iterator<Item = Point3> {
    let mut dirs: Vec<Point3> = Vec::with_capacity(128);
    for x in -1i32..=1 {
        for y in -1i32..=1 {
            for z in -1i32..=1 {
                if (x, y, z) != (0, 0, 0) {
                    dirs.push(Point3::new(x as f64, y as f64, z as f64).normalize());
                }
            }
        }
    }
    use rand::SeedableRng;
    let mut rng =
        rand_chacha::ChaCha8Rng::seed_from_u64(rngutil::point_set_hash(cfg.points()));
    for _ in 0..512 {
        dirs.push(rngutil::uniform_unit(&mut rng));
    }
    dirs.into_iter()
}

/// Pulls the first breakable polyhedral orbit radially inward to half the
/// innermost empty ball radius; shape preserved by uniform scaling.
pub fn prep_type1(cfg: &Configuration, own: usize) -> Result<MoveIntent> {
    let scene = analyze(cfg)?;
    let (orbit, _) = scene.first_breakable(cfg).ok_or(Error::UnsolvableStructure)?;
    let p = cfg.points()[own];
    if !scene.decomp.orbits[orbit].contains(&own) {
        return Ok(MoveIntent::stay(p));
    }
    let rel = p - scene.center;
    let target = scene.inner_radius * 0.5;
    Ok(MoveIntent {
        destination: scene.center + rel * (target / rel.norm()),
        rule: Rule::RadialInward,
    })
}

/// Pulls the first occupied-mirror orbit inward along the mirror plane; a
/// designated off-mirror, off-axis orbit shrinks its distance to the
/// principal axis tenfold so the symmetry group is kept.
pub fn prep_type2(cfg: &Configuration, own: usize) -> Result<MoveIntent> {
    let scene = analyze(cfg)?;
    let hm = scene.theta.horizontal_mirror().ok_or(Error::NoPrincipalAxis)?;
    let axis = scene.theta.principal_axis().ok_or(Error::NoPrincipalAxis)?;
    let p = cfg.points()[own];

    let mirror_orbit = (0..scene.decomp.orbits.len())
        .find(|&oi| scene.mirror_resident(cfg, oi, &hm))
        .ok_or(Error::UnsolvableStructure)?;
    if scene.decomp.orbits[mirror_orbit].contains(&own) {
        let rel = p - scene.center;
        let target = scene.inner_radius * 0.5;
        return Ok(MoveIntent {
            destination: scene.center + rel * (target / rel.norm()),
            rule: Rule::MirrorInward,
        });
    }
    let shrink_orbit = (0..scene.decomp.orbits.len()).find(|&oi| {
        !scene.mirror_resident(cfg, oi, &hm) && !scene.axis_resident(cfg, oi, &axis)
    });
    if let Some(oi) = shrink_orbit {
        if scene.decomp.orbits[oi].contains(&own) {
            let rel = p - scene.center;
            let axial = axis * axis.dot(&rel);
            let radial = rel - axial;
            return Ok(MoveIntent {
                destination: scene.center + axial + radial * 0.1,
                rule: Rule::AxisShrink,
            });
        }
    }
    Ok(MoveIntent::stay(p))
}

/// Go-to-center symmetry breaking: members of the innermost polyhedral orbit
/// move to a point just short of an adjacent face center.
pub fn go_to_center(cfg: &Configuration, own: usize) -> Result<MoveIntent> {
    let scene = analyze(cfg)?;
    let p = cfg.points()[own];
    let orbit = &scene.decomp.orbits[0];
    let pts: Vec<Point3> = orbit.iter().map(|&i| cfg.points()[i]).collect();
    let kind = polyhedra::matches_breakable(&pts, &scene.center, cfg.tol())
        .ok_or(Error::UnsolvableStructure)?;
    let Some(own_local) = orbit.iter().position(|&i| i == own) else {
        return Ok(MoveIntent::stay(p));
    };
    let sub = Configuration::new(pts.clone(), cfg.tol())?;
    let faces = hull::hull_face_adjacency(&sub)?;
    let edge = polyhedra::edge_length(&pts);
    let epsilon = edge / 100.0;

    let mut candidates: Vec<Point3> = faces.incident[own_local]
        .iter()
        .map(|&fi| &faces.faces[fi])
        .filter(|face| {
            kind != BreakablePolyhedron::Icosidodecahedron || face.vertices.len() == 5
        })
        .map(|face| face.centroid)
        .collect();
    // Deterministic per-robot pick: lexicographically smallest centroid in
    // the observer's frame.
    candidates.sort_by(|a, b| (a.x, a.y, a.z).partial_cmp(&(b.x, b.y, b.z)).unwrap());
    let c = *candidates.first().ok_or(Error::UnsolvableStructure)?;
    let toward = (c - p).normalize();
    Ok(MoveIntent { destination: c - toward * epsilon, rule: Rule::FaceApproach })
}

/// Dimensions of the fictitious prism inscribed in a ball of radius `r_i`:
/// side edge `s` with base edge `s / 10`.
pub fn fictitious_prism_side(r_i: f64, k: u32) -> f64 {
    let sinp = (core::f64::consts::PI / k as f64).sin();
    r_i / (0.25 + 1.0 / (400.0 * sinp * sinp)).sqrt()
}

/// Mirror removal: each robot of the occupied-mirror orbit moves to the
/// nearest vertex of a thin fictitious prism inscribed in the innermost
/// empty ball, its regular k-gon bases parallel to the mirror and one side
/// edge in the plane through the center and the robot itself. The two
/// nearest vertices (up and down) are tied; the robot's own frame breaks the
/// tie lexicographically.
pub fn phase1_remove_mirror(cfg: &Configuration, own: usize) -> Result<MoveIntent> {
    let scene = analyze(cfg)?;
    let axis = scene.theta.principal_axis().ok_or(Error::NoPrincipalAxis)?;
    let hm = scene.theta.horizontal_mirror().ok_or(Error::NoPrincipalAxis)?;
    let k = scene.theta.principal_fold().max(2);
    let p = cfg.points()[own];
    if !scene.mirror_resident(cfg, 0, &hm) || !scene.decomp.orbits[0].contains(&own) {
        return Ok(MoveIntent::stay(p));
    }
    let r_i = scene.inner_radius;
    let side = fictitious_prism_side(r_i, k);
    let base_radius = side / (20.0 * (core::f64::consts::PI / k as f64).sin());

    let rel = p - scene.center;
    let planar = rel - axis * axis.dot(&rel);
    let e = planar.normalize();
    let up = scene.center + e * base_radius + axis * (side * 0.5);
    let down = scene.center + e * base_radius - axis * (side * 0.5);
    let destination = if (up.x, up.y, up.z) < (down.x, down.y, down.z) { up } else { down };
    Ok(MoveIntent { destination, rule: Rule::PrismVertex })
}

/// Prism twisting: robots of orbits with coinciding perpendicular feet
/// circulate about the principal axis toward their nearest point of the
/// reference orbit, by half the azimuthal offset (a third on the fallback).
pub fn phase2_twist(cfg: &Configuration, own: usize) -> Result<MoveIntent> {
    let scene = analyze(cfg)?;
    let axis = scene.gamma.principal_axis().ok_or(Error::NoPrincipalAxis)?;
    let p = cfg.points()[own];
    let prisms = scene.prism_orbits(cfg, &axis);
    let own_orbit = scene.decomp.orbit_of(own);
    if !prisms.contains(&own_orbit) {
        return Ok(MoveIntent::stay(p));
    }
    let reference = (0..scene.decomp.orbits.len())
        .find(|oi| {
            !prisms.contains(oi) && !scene.axis_resident(cfg, *oi, &axis)
        })
        .ok_or(Error::UnsolvableStructure)?;
    let ref_pts: Vec<Point3> =
        scene.decomp.orbits[reference].iter().map(|&i| cfg.points()[i]).collect();

    let angle_of = |q: &Point3| -> Result<f64> { twist_offset(&scene, &axis, q, &ref_pts, cfg) };

    // Everyone can recompute all twisted positions, so the fallback decision
    // is common knowledge: if half-offsets still leave coinciding feet, use
    // a third of the offset instead.
    let mut post: Vec<Point3> = cfg.points().to_vec();
    for &oi in &prisms {
        for &i in &scene.decomp.orbits[oi] {
            let q = cfg.points()[i];
            let alpha = angle_of(&q)? * 0.5;
            post[i] = scene.center + rotation_about(&axis, alpha) * (q - scene.center);
        }
    }
    let plane = Plane::through(&scene.center, &axis);
    let reduced = {
        let post_cfg = cfg.with_points(post)?;
        let mut coincide = false;
        'outer: for &oi in &prisms {
            let orbit = &scene.decomp.orbits[oi];
            for a in 0..orbit.len() {
                for b in (a + 1)..orbit.len() {
                    let fa = plane.project(&post_cfg.points()[orbit[a]]);
                    let fb = plane.project(&post_cfg.points()[orbit[b]]);
                    if (fa - fb).norm() <= scene.eps {
                        coincide = true;
                        break 'outer;
                    }
                }
            }
        }
        coincide
    };

    let offset = angle_of(&p)?;
    let alpha = if reduced { offset / 3.0 } else { offset / 2.0 };
    Ok(MoveIntent {
        destination: scene.center + rotation_about(&axis, alpha) * (p - scene.center),
        rule: if reduced { Rule::TwistReduced } else { Rule::Twist },
    })
}

/// Signed azimuthal offset from `q` to its nearest reference point about the
/// axis, skipping reference points at the same azimuth.
fn twist_offset(
    scene: &Scene,
    axis: &Point3,
    q: &Point3,
    reference: &[Point3],
    cfg: &Configuration,
) -> Result<f64> {
    let e1 = geom::any_perpendicular(axis);
    let e2 = axis.cross(&e1);
    let az = |p: &Point3| -> f64 {
        let rel = p - scene.center;
        rel.dot(&e2).atan2(rel.dot(&e1))
    };
    let eps_ang = crate::orbits::angle_eps(cfg);
    let qa = az(q);
    let mut sorted: Vec<(f64, f64)> = reference
        .iter()
        .map(|r| {
            let mut d = az(r) - qa;
            while d > core::f64::consts::PI {
                d -= 2.0 * core::f64::consts::PI;
            }
            while d <= -core::f64::consts::PI {
                d += 2.0 * core::f64::consts::PI;
            }
            ((r - q).norm(), d)
        })
        .collect();
    sorted.sort_by(|a, b| {
        (a.0, a.1.abs()).partial_cmp(&(b.0, b.1.abs())).unwrap()
    });
    sorted
        .into_iter()
        .find(|(_, d)| d.abs() > eps_ang)
        .map(|(_, d)| d)
        .ok_or(Error::UnsolvableStructure)
}

/// The plane all robots agree to land on.
pub fn phase4_target_plane(cfg: &Configuration) -> Result<Plane> {
    let scene = analyze(cfg)?;
    target_plane(&scene, cfg)
}

fn target_plane(scene: &Scene, cfg: &Configuration) -> Result<Plane> {
    let center = scene.center;
    match scene.theta.label() {
        Schoenflies::Ch(2) => {
            // Vertical plane through the axis containing the first off-axis
            // orbit; its four (or two) members are coplanar with the axis.
            let axis = scene.theta.principal_axis().ok_or(Error::NoPrincipalAxis)?;
            for orbit in &scene.decomp.orbits {
                let rep = cfg.points()[orbit[0]] - center;
                let planar = rep - axis * axis.dot(&rep);
                if planar.norm() > scene.eps {
                    let normal = axis.cross(&planar.normalize());
                    return Ok(Plane::through(&center, &normal));
                }
            }
            Err(Error::DegenerateConfiguration)
        }
        Schoenflies::S(_) => {
            let axis = scene.theta.principal_axis().ok_or(Error::NoPrincipalAxis)?;
            Ok(Plane::through(&center, &axis))
        }
        Schoenflies::Cs | Schoenflies::Ci => pair_spanned_plane(scene, cfg),
        Schoenflies::C1 => {
            // Plane through the first three canonically ordered robots,
            // extended past collinear degeneracies.
            let ordered: Vec<Point3> = scene
                .decomp
                .orbits
                .iter()
                .flat_map(|o| o.iter().map(|&i| cfg.points()[i]))
                .collect();
            let a = ordered[0];
            let b = ordered[1];
            for c in ordered.iter().skip(2) {
                let normal = (b - a).cross(&(c - a));
                if normal.norm() > scene.eps * cfg.diameter() {
                    return Ok(Plane::through(&a, &normal));
                }
            }
            Err(Error::DegenerateConfiguration)
        }
        _ => {
            let axis = scene.gamma.principal_axis().ok_or(Error::NoPrincipalAxis)?;
            Ok(Plane::through(&center, &axis))
        }
    }
}

/// Cs and Ci target plane: spanned by the minimal-index 2-orbits (for Cs a
/// pair line plus a canonical point when only one pair exists). Candidates
/// that would leave another pair perpendicular to the plane are skipped, so
/// no pair projects onto a single point.
fn pair_spanned_plane(scene: &Scene, cfg: &Configuration) -> Result<Plane> {
    let center = scene.center;
    let pair_dirs: Vec<(usize, Point3, Point3)> = scene
        .decomp
        .orbits
        .iter()
        .enumerate()
        .filter(|(_, o)| o.len() == 2)
        .map(|(oi, o)| {
            let a = cfg.points()[o[0]];
            let b = cfg.points()[o[1]];
            (oi, (a - b).normalize(), a)
        })
        .collect();
    if pair_dirs.is_empty() {
        return Err(Error::DegenerateConfiguration);
    }
    let (_, dir0, anchor0) = pair_dirs[0];
    let no_pair_along = |normal: &Point3| -> bool {
        pair_dirs.iter().all(|(_, d, _)| d.cross(normal).norm() > 1e-9)
    };

    let mut fallback: Option<Plane> = None;
    // Later pairs first, then any canonically ordered point off the line.
    for (_, d, a) in pair_dirs.iter().skip(1) {
        if d.cross(&dir0).norm() > 1e-9 {
            let normal = dir0.cross(&((a - anchor0).normalize()));
            if normal.norm() > 1e-12 {
                let plane = Plane::through(&anchor0, &normal.normalize());
                if no_pair_along(&plane.normal) {
                    return Ok(plane);
                }
                fallback.get_or_insert(plane);
            }
        }
    }
    for orbit in &scene.decomp.orbits {
        for &i in orbit {
            let q = cfg.points()[i];
            let offset = q - anchor0;
            let normal = dir0.cross(&offset);
            if normal.norm() > scene.eps * cfg.diameter().max(1.0) {
                let plane = Plane::through(&anchor0, &normal.normalize());
                if no_pair_along(&plane.normal) {
                    return Ok(plane);
                }
                fallback.get_or_insert(plane);
            }
        }
    }
    let _ = center;
    fallback.ok_or(Error::DegenerateConfiguration)
}

/// Destinations for every robot in the final landing cycle, index-aligned
/// with the configuration.
///
/// Feet of perpendiculars are the default; orbits whose members share a foot
/// (axis pairs and their generalizations) take a small offset toward the
/// projection of their nearest reference-orbit point; remaining cross-orbit
/// ties go to nested circles shrinking with the orbit index.
pub fn phase5_destinations(cfg: &Configuration) -> Result<Vec<Point3>> {
    let scene = analyze(cfg)?;
    let plane = target_plane(&scene, cfg)?;
    let eps = scene.eps;
    let r_i = scene.inner_radius;
    let n = cfg.len();

    // Reference orbit for coincidence classes: first orbit with pairwise
    // distinct feet, resolved lazily.
    let reference_orbit = || -> Result<Vec<Point3>> {
        for orbit in &scene.decomp.orbits {
            let feet: Vec<Point3> =
                orbit.iter().map(|&i| plane.project(&cfg.points()[i])).collect();
            let distinct = (0..feet.len()).all(|a| {
                (a + 1..feet.len()).all(|b| (feet[a] - feet[b]).norm() > eps)
            });
            if distinct {
                return Ok(orbit.iter().map(|&i| cfg.points()[i]).collect());
            }
        }
        Err(Error::UnsolvableStructure)
    };

    let mut destinations: Vec<Option<Point3>> = vec![None; n];
    let mut assigned: Vec<Point3> = Vec::with_capacity(n);
    for (orbit_rank, orbit) in scene.decomp.orbits.iter().enumerate() {
        let feet: Vec<Point3> =
            orbit.iter().map(|&i| plane.project(&cfg.points()[i])).collect();
        // Coincidence classes within the orbit.
        let mut class: Vec<usize> = (0..orbit.len()).collect();
        for a in 0..orbit.len() {
            for b in (a + 1)..orbit.len() {
                if (feet[a] - feet[b]).norm() <= eps {
                    let (ca, cb) = (class[a], class[b]);
                    if ca != cb {
                        for c in class.iter_mut() {
                            if *c == cb {
                                *c = ca;
                            }
                        }
                    }
                }
            }
        }
        let mut targets: Vec<Point3> = feet.clone();
        for class_id in 0..orbit.len() {
            let members: Vec<usize> =
                (0..orbit.len()).filter(|&m| class[m] == class_id).collect();
            if members.len() <= 1 {
                continue;
            }
            // Shared foot: virtual positions offset toward the projection
            // of each member's nearest reference point.
            let reference = reference_orbit()?;
            for &m in &members {
                let p = cfg.points()[orbit[m]];
                let foot = feet[m];
                let mut by_dist: Vec<(f64, Point3)> = reference
                    .iter()
                    .map(|r| ((r - p).norm(), plane.project(r)))
                    .collect();
                by_dist.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
                let dir = by_dist
                    .iter()
                    .map(|(_, proj)| proj - foot)
                    .find(|d| d.norm() > eps)
                    .ok_or(Error::UnsolvableStructure)?;
                targets[m] = foot + dir.normalize() * (r_i / 100.0);
            }
            for a in 0..members.len() {
                for b in (a + 1)..members.len() {
                    if (targets[members[a]] - targets[members[b]]).norm() <= eps {
                        return Err(Error::UnsolvableStructure);
                    }
                }
            }
        }

        // Cross-orbit collisions: nested circles shrinking with the orbit
        // index.
        for (m, &i) in orbit.iter().enumerate() {
            let mut dest = targets[m];
            if assigned.iter().any(|d| (d - dest).norm() <= eps) {
                let mut circle = f64::INFINITY;
                for d in &assigned {
                    let dist = (d - dest).norm();
                    if dist > eps {
                        circle = circle.min(dist);
                    }
                }
                if !circle.is_finite() {
                    circle = r_i.max(eps * 2.0);
                }
                let radius = circle * 0.5f64.powi(orbit_rank as i32 + 1);
                let dir = circle_direction(&scene, cfg, &plane, &dest, &assigned, eps)?;
                dest += dir * radius;
            }
            destinations[i] = Some(dest);
            assigned.push(dest);
        }
    }

    let out: Vec<Point3> = destinations.into_iter().map(|d| d.unwrap()).collect();

    // Pairwise distinctness and equivariance are postconditions; violations
    // indicate an unresolvable symmetry leak.
    for a in 0..n {
        for b in (a + 1)..n {
            if (out[a] - out[b]).norm() <= eps {
                return Err(Error::UnsolvableStructure);
            }
        }
    }
    for g in scene.theta.elements() {
        for d in &out {
            let img = g.apply(d);
            if !out.iter().any(|e| (e - img).norm() <= eps.max(1e-12) * 4.0) {
                return Err(Error::NonEquivariantResolution);
            }
        }
    }
    Ok(out)
}

/// Direction from a collided foot: toward the projection of the ball
/// center, or toward the projection of the first canonically ordered robot
/// with a distinct projection when the foot sits on the center's projection.
fn circle_direction(
    scene: &Scene,
    cfg: &Configuration,
    plane: &Plane,
    foot: &Point3,
    _assigned: &[Point3],
    eps: f64,
) -> Result<Point3> {
    let center_proj = plane.project(&scene.center);
    let toward = center_proj - foot;
    if toward.norm() > eps {
        return Ok(toward.normalize());
    }
    for orbit in &scene.decomp.orbits {
        for &i in orbit {
            let proj = plane.project(&cfg.points()[i]);
            let d = proj - foot;
            if d.norm() > eps {
                return Ok(d.normalize());
            }
        }
    }
    Err(Error::DegenerateConfiguration)
}

/// The common algorithm: dispatch, then delegate; robots not addressed by
/// the firing phase stay.
pub fn step(cfg: &Configuration, own: usize) -> Result<MoveIntent> {
    let position = cfg.points()[own];
    match dispatch(cfg)? {
        Phase::Terminal => Ok(MoveIntent::stay(position)),
        Phase::PrepCenter => {
            let center = seb(cfg)?.center;
            if (position - center).norm() <= cfg.abs_tol() {
                prep_center(cfg)
            } else {
                Ok(MoveIntent::stay(position))
            }
        }
        Phase::PrepType1 => prep_type1(cfg, own),
        Phase::PrepType2 => prep_type2(cfg, own),
        Phase::GoToCenter => go_to_center(cfg, own),
        Phase::RemoveMirror => phase1_remove_mirror(cfg, own),
        Phase::TwistPrism => phase2_twist(cfg, own),
        Phase::FinalLanding => {
            let dests = phase5_destinations(cfg)?;
            let destination = dests[own];
            let rule = if (destination - position).norm() <= cfg.abs_tol() {
                Rule::Stay
            } else {
                Rule::LandFoot
            };
            Ok(MoveIntent { destination, rule })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra;

    #[test]
    fn coplanar_distinct_is_terminal() {
        let cfg = Configuration::with_default_tol(vec![
            Point3::new(0., 0., 0.),
            Point3::new(1., 0., 0.),
            Point3::new(0., 1., 0.),
            Point3::new(1., 1., 0.),
            Point3::new(0.3, 0.7, 0.),
        ])
        .unwrap();
        assert_eq!(dispatch(&cfg).unwrap(), Phase::Terminal);
        let intent = step(&cfg, 2).unwrap();
        assert!(intent.is_stay());
    }

    #[test]
    fn octahedron_dispatches_to_go_to_center() {
        let cfg = polyhedra::octahedron();
        assert_eq!(dispatch(&cfg).unwrap(), Phase::GoToCenter);
    }

    #[test]
    fn cube_alone_is_unsolvable_structure() {
        let cfg = polyhedra::cube();
        assert_eq!(dispatch(&cfg).unwrap_err(), Error::UnsolvableStructure);
    }

    #[test]
    fn occupied_center_dispatches_to_prep() {
        let mut pts = polyhedra::cube_vertices();
        pts.push(Point3::zeros());
        let cfg = Configuration::with_default_tol(pts).unwrap();
        assert_eq!(dispatch(&cfg).unwrap(), Phase::PrepCenter);
        let intent = prep_center(&cfg).unwrap();
        // Destination clear of all 13 rotation axes and 9 mirrors of the
        // cube's symmetry group, strictly inside the innermost empty ball.
        let rest = polyhedra::cube();
        let g = crate::symmetry::detect_symmetries(&rest).unwrap();
        let d = intent.destination;
        assert!(d.norm() < 1.0 - 1e-6);
        for (a, _) in g.axes() {
            assert!((d - a * a.dot(&d)).norm() > 1e-12);
        }
        for m in g.mirrors() {
            assert!(m.signed_distance(&d).abs() > 1e-12);
        }
    }

    #[test]
    fn go_to_center_moves_toward_adjacent_face() {
        let cfg = polyhedra::octahedron();
        let intent = go_to_center(&cfg, 0).unwrap();
        assert_eq!(intent.rule, Rule::FaceApproach);
        // Octahedron edge = sqrt(2); destination sits epsilon short of a
        // face centroid at distance edge/100 along the approach segment.
        let own = cfg.points()[0];
        let sub = cfg.clone();
        let faces = hull::hull_face_adjacency(&sub).unwrap();
        let hit = faces
            .faces
            .iter()
            .any(|f| {
                let c = f.centroid;
                let eps_len = (c - intent.destination).norm();
                (eps_len - 2f64.sqrt() / 100.0).abs() < 1e-9
                    && (c - own).normalize().dot(&(c - intent.destination).normalize()) > 0.999
            });
        assert!(hit);
    }

    #[test]
    fn prism_dimensions_satisfy_inscription() {
        // r_I = 1, k = 4: the side edge solves the inscription constraint,
        // checked numerically: vertices on the unit sphere with base edge a
        // tenth of the side edge.
        let s = fictitious_prism_side(1.0, 4);
        let rho = s / (20.0 * (core::f64::consts::PI / 4.0).sin());
        let vertex_radius = (rho * rho + s * s / 4.0).sqrt();
        assert!((vertex_radius - 1.0).abs() < 1e-12);
        let base_edge = 2.0 * rho * (core::f64::consts::PI / 4.0).sin();
        assert!((base_edge - s / 10.0).abs() < 1e-12);
        let explicit = 2.0 / (1.0 + 4.0 * (core::f64::consts::PI / 4.0).sin().powi(2) / 100.0).sqrt();
        assert!((s - explicit).abs() < 1e-12);
    }
}
