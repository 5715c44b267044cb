//! Orbit decomposition under the symmetry group and chirality-free local
//! views.
//!
//! The decomposition is totally ordered: orbits sort by distance from the SEB
//! center, ties broken by the orbit's shared local view. The local view of a
//! robot is the sequence of (altitude, latitude, longitude) triples of all
//! robots, minimized over the choice of a prime meridian and over both
//! longitude orientations, so it is invariant under every orthogonal map
//! about the center, proper or improper.

use alloc::vec;
use alloc::vec::Vec;

// Float math via traits: inherent methods are std-only.
#[allow(unused_imports)]
use nalgebra::RealField;

use crate::error::Error;
use crate::geom::{seb, Configuration, Point3};
use crate::symmetry::{self, PointGroup};
use crate::Result;

const TWO_PI: f64 = 2.0 * core::f64::consts::PI;

/// Canonical (altitude, latitude, longitude) encoding of a snapshot from one
/// robot's viewpoint; the first triple is the observer's own.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalView {
    triples: Vec<[f64; 3]>,
}

/// Tolerant lexicographic triple comparison: altitudes compare with
/// `eps_len`, angles with `eps_ang`. Exact float comparison would let
/// rounding noise in equal altitudes scramble the sequence differently in
/// every frame.
fn cmp_triple(a: &[f64; 3], b: &[f64; 3], eps_len: f64, eps_ang: f64) -> core::cmp::Ordering {
    for (idx, eps) in [(0, eps_len), (1, eps_ang), (2, eps_ang)] {
        let (x, y) = (a[idx], b[idx]);
        if (x - y).abs() > eps {
            return x.partial_cmp(&y).unwrap();
        }
    }
    core::cmp::Ordering::Equal
}

impl LocalView {
    pub fn triples(&self) -> &[[f64; 3]] {
        &self.triples
    }

    /// Tolerant lexicographic comparison; lengths and altitudes compare with
    /// `eps_len`, angles with `eps_ang`.
    pub fn cmp_tol(&self, other: &LocalView, eps_len: f64, eps_ang: f64) -> core::cmp::Ordering {
        use core::cmp::Ordering;
        match self.triples.len().cmp(&other.triples.len()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.triples.iter().zip(other.triples.iter()) {
            match cmp_triple(a, b, eps_len, eps_ang) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }

    pub fn approx_eq(&self, other: &LocalView, eps_len: f64, eps_ang: f64) -> bool {
        self.cmp_tol(other, eps_len, eps_ang) == core::cmp::Ordering::Equal
    }
}

/// Angular tolerance paired with a configuration's relative tolerance.
pub(crate) fn angle_eps(cfg: &Configuration) -> f64 {
    (cfg.tol() * 100.0).max(1e-12)
}

/// The view from `observer` (a point index). North is the ray from the SEB
/// center through the observer; both longitude orientations are tried, so
/// mirror-image observers see equal views.
pub fn local_view(cfg: &Configuration, observer: usize) -> Result<LocalView> {
    let n = cfg.len();
    if n < 2 {
        return Err(Error::DegenerateConfiguration);
    }
    let center = seb(cfg)?.center;
    let eps = cfg.abs_tol();
    let rel_obs = cfg.points()[observer] - center;
    if rel_obs.norm() <= eps {
        return Err(Error::ObserverAtCenter);
    }
    let north = rel_obs.normalize();

    // Altitude, latitude, and the off-axis component of every robot.
    let mut alt = vec![0.0f64; n];
    let mut lat = vec![0.0f64; n];
    let mut perp: Vec<Point3> = vec![Point3::zeros(); n];
    for (i, p) in cfg.points().iter().enumerate() {
        let rel = p - center;
        alt[i] = rel.norm();
        let axial = rel.dot(&north);
        let off = rel - north * axial;
        lat[i] = off.norm().atan2(axial);
        perp[i] = off;
    }

    let meridian_candidates: Vec<usize> = (0..n).filter(|&i| perp[i].norm() > eps).collect();
    let observer_triple = [alt[observer], 0.0, 0.0];
    let eps_ang = angle_eps(cfg);

    if meridian_candidates.is_empty() {
        // Everything on the observer's axis: longitudes are all zero.
        let mut rest: Vec<[f64; 3]> =
            (0..n).filter(|&i| i != observer).map(|i| [alt[i], lat[i], 0.0]).collect();
        rest.sort_by(|a, b| cmp_triple(a, b, eps, eps_ang));
        let mut triples = vec![observer_triple];
        triples.extend(rest);
        return Ok(LocalView { triples });
    }
    let mut best: Option<LocalView> = None;
    for &m in &meridian_candidates {
        let e1 = perp[m].normalize();
        for orientation in [1.0f64, -1.0] {
            let e2 = north.cross(&e1) * orientation;
            let mut rest: Vec<[f64; 3]> = Vec::with_capacity(n - 1);
            for i in 0..n {
                if i == observer {
                    continue;
                }
                let lon = if perp[i].norm() <= eps {
                    0.0
                } else {
                    let mut a = perp[i].dot(&e2).atan2(perp[i].dot(&e1));
                    if a < 0.0 {
                        a += TWO_PI;
                    }
                    // Snap a full turn back to zero so the meridian robot
                    // itself reads longitude 0 in both orientations.
                    if TWO_PI - a <= eps_ang {
                        a = 0.0;
                    }
                    a
                };
                rest.push([alt[i], lat[i], lon]);
            }
            rest.sort_by(|a, b| cmp_triple(a, b, eps, eps_ang));
            let mut triples = vec![observer_triple];
            triples.extend(rest);
            let cand = LocalView { triples };
            let replace = match &best {
                None => true,
                Some(b) => cand.cmp_tol(b, eps, eps_ang) == core::cmp::Ordering::Less,
            };
            if replace {
                best = Some(cand);
            }
        }
    }
    Ok(best.expect("at least one meridian candidate"))
}

/// The orbit partition of the configuration under a group that acts on it.
/// Orbits are index sets; the partition is returned sorted by smallest
/// member for determinism, carrying no canonical order.
pub fn orbits(cfg: &Configuration, group: &PointGroup) -> Result<Vec<Vec<usize>>> {
    let eps = cfg.abs_tol();
    let center = group.center();
    let centered: Vec<Point3> = cfg.points().iter().map(|p| p - center).collect();
    let mut parent: Vec<usize> = (0..cfg.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for map in group.elements() {
        let perm = symmetry::permutation_of(&map.linear, &centered, eps)
            .ok_or(Error::GroupActionMismatch)?;
        for (i, &j) in perm.iter().enumerate() {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri] = rj;
            }
        }
    }
    let mut buckets: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..cfg.len() {
        let r = find(&mut parent, i);
        match buckets.iter_mut().find(|(root, _)| *root == r) {
            Some((_, v)) => v.push(i),
            None => buckets.push((r, vec![i])),
        }
    }
    let mut parts: Vec<Vec<usize>> = buckets.into_iter().map(|(_, v)| v).collect();
    parts.sort_by_key(|v| v[0]);
    Ok(parts)
}

/// An ordered orbit decomposition together with the detected group.
#[derive(Debug, Clone)]
pub struct OrbitDecomposition {
    /// Orbits in canonical order: innermost first, outermost last.
    pub orbits: Vec<Vec<usize>>,
    pub group: PointGroup,
}

impl OrbitDecomposition {
    /// Index of the orbit containing point `i`.
    pub fn orbit_of(&self, i: usize) -> usize {
        self.orbits
            .iter()
            .position(|orbit| orbit.contains(&i))
            .expect("every point belongs to an orbit")
    }
}

/// Detects the symmetry group and orders the orbit partition: primarily by
/// distance from the center ascending, ties broken by comparing the orbits'
/// shared local views. Views are only computed when a radius tie occurs.
pub fn ordered_decomposition(cfg: &Configuration) -> Result<OrbitDecomposition> {
    if !cfg.is_distinct() {
        return Err(Error::CoincidentPoints);
    }
    let group = symmetry::detect_symmetries(cfg)?;
    let center = group.center();
    let eps = cfg.abs_tol();
    if cfg.points().iter().any(|p| (p - center).norm() <= eps) {
        return Err(Error::PointAtCenter);
    }
    let mut parts = orbits(cfg, &group)?;
    let radius = |orbit: &Vec<usize>| -> f64 {
        let r: f64 = orbit.iter().map(|&i| (cfg.points()[i] - center).norm()).sum();
        r / orbit.len() as f64
    };
    parts.sort_by(|a, b| radius(a).partial_cmp(&radius(b)).unwrap());

    // Resolve radius ties by the shared local view of each tied orbit.
    let eps_ang = angle_eps(cfg);
    let mut i = 0;
    while i < parts.len() {
        let mut j = i + 1;
        while j < parts.len() && (radius(&parts[j]) - radius(&parts[i])).abs() <= eps {
            j += 1;
        }
        if j - i > 1 {
            let mut keyed: Vec<(LocalView, Vec<usize>)> = Vec::with_capacity(j - i);
            for orbit in parts[i..j].iter() {
                keyed.push((local_view(cfg, orbit[0])?, orbit.clone()));
            }
            keyed.sort_by(|a, b| a.0.cmp_tol(&b.0, eps, eps_ang));
            for (slot, (_, orbit)) in keyed.into_iter().enumerate() {
                parts[i + slot] = orbit;
            }
        }
        i = j;
    }
    Ok(OrbitDecomposition { orbits: parts, group })
}
