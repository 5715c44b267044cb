//! Convex hull faces with coplanar facets merged into polygons.
//!
//! The symmetry-breaking step needs, per vertex, the incident faces of the
//! polyhedron the innermost orbit forms. Triangulated hull output would
//! misreport adjacency for the dodecahedron and icosidodecahedron, so facets
//! sharing a supporting plane are merged before adjacency is reported.
//! Inputs are small (at most a few dozen points), so faces are found by
//! plane enumeration over point triples.

use alloc::vec::Vec;

// Float math via traits: inherent methods are std-only.
#[allow(unused_imports)]
use nalgebra::RealField;

use crate::error::Error;
use crate::geom::{Configuration, Plane, Point3};
use crate::Result;

/// A polygonal hull face: vertex indices in cyclic order, centroid, and the
/// outward-oriented supporting plane.
#[derive(Debug, Clone)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub centroid: Point3,
    pub plane: Plane,
}

/// Faces of the convex hull plus, per input point, the indices of its
/// incident faces.
#[derive(Debug, Clone)]
pub struct HullFaces {
    pub faces: Vec<Face>,
    pub incident: Vec<Vec<usize>>,
}

/// Computes the merged hull faces of a configuration in convex position.
///
/// Errors: coplanar input has no 3D hull; a point that is not a hull vertex
/// (strictly interior, or interior to a face or edge) violates convex
/// position.
pub fn hull_face_adjacency(cfg: &Configuration) -> Result<HullFaces> {
    let pts = cfg.points();
    let n = pts.len();
    if n < 4 {
        return Err(Error::CoplanarHull);
    }
    if !cfg.is_distinct() {
        return Err(Error::CoincidentPoints);
    }
    if crate::geom::coplanar(cfg).is_some() {
        return Err(Error::CoplanarHull);
    }
    let eps = cfg.abs_tol().max(1e-12 * cfg.diameter());

    let mut faces: Vec<Face> = Vec::new();
    let mut seen: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let normal = (pts[j] - pts[i]).cross(&(pts[k] - pts[i]));
                if normal.norm() <= eps * cfg.diameter() {
                    continue; // collinear triple
                }
                let unit = normal.normalize();
                let offset = unit.dot(&pts[i]);
                let mut above = false;
                let mut below = false;
                let mut members: Vec<usize> = Vec::new();
                for (idx, p) in pts.iter().enumerate() {
                    let sd = unit.dot(p) - offset;
                    if sd > eps {
                        above = true;
                    } else if sd < -eps {
                        below = true;
                    } else {
                        members.push(idx);
                    }
                    if above && below {
                        break;
                    }
                }
                if above && below {
                    continue;
                }
                members.sort_unstable();
                if seen.contains(&members) {
                    continue;
                }
                seen.push(members.clone());
                // Outward orientation: no point on the positive side.
                let outward = if above { -unit } else { unit };
                faces.push(build_face(pts, members, &outward, eps)?);
            }
        }
    }

    let mut incident: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    for (fi, face) in faces.iter().enumerate() {
        for &v in &face.vertices {
            incident[v].push(fi);
        }
    }
    if incident.iter().any(|fs| fs.is_empty()) {
        return Err(Error::NotConvexPosition);
    }
    Ok(HullFaces { faces, incident })
}

/// Orders the face polygon and verifies every member is a vertex of it.
fn build_face(pts: &[Point3], members: Vec<usize>, outward: &Point3, eps: f64) -> Result<Face> {
    let centroid =
        members.iter().map(|&i| pts[i]).sum::<Point3>() / members.len() as f64;
    let e1 = crate::geom::any_perpendicular(outward);
    let e2 = outward.cross(&e1);
    let mut ordered: Vec<(f64, usize)> = members
        .iter()
        .map(|&i| {
            let rel = pts[i] - centroid;
            (rel.dot(&e2).atan2(rel.dot(&e1)), i)
        })
        .collect();
    ordered.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let cycle: Vec<usize> = ordered.iter().map(|&(_, i)| i).collect();

    // Convex position within the face: every member must be a strict corner
    // of the polygon (no point interior to the face or on an edge).
    let m = cycle.len();
    if m >= 3 {
        for idx in 0..m {
            let prev = pts[cycle[(idx + m - 1) % m]];
            let here = pts[cycle[idx]];
            let next = pts[cycle[(idx + 1) % m]];
            let turn = (here - prev).cross(&(next - here)).dot(outward);
            let scale = (here - prev).norm() * (next - here).norm();
            if turn <= eps * scale.max(1e-300) {
                return Err(Error::NotConvexPosition);
            }
        }
    }
    Ok(Face {
        vertices: cycle,
        centroid,
        plane: Plane { normal: *outward, offset: outward.dot(&centroid) },
    })
}
