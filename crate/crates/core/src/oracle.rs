//! Slow, self-contained brute-force oracles for differential testing.
//!
//! Nothing here shares code with the main modules: matching, closure, and
//! ball construction are reimplemented in the most literal way.

use alloc::vec;
use alloc::vec::Vec;

// Float math via traits: inherent methods are std-only.
#[allow(unused_imports)]
use nalgebra::ComplexField;

use crate::error::Error;
use crate::geom::{Ball, Configuration, Mat3, OrthoMap, Point3};
use crate::Result;

/// Smallest enclosing ball by exhaustive support-set enumeration.
pub fn oracle_seb(cfg: &Configuration) -> Result<Ball> {
    let pts = cfg.points();
    if pts.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    let n = pts.len();
    let mut best: Option<Ball> = None;
    let mut consider = |b: Option<Ball>| {
        if let Some(b) = b {
            let covers = pts
                .iter()
                .all(|p| (p - b.center).norm() <= b.radius * (1.0 + 1e-10) + 1e-300);
            if covers && best.map_or(true, |bb| b.radius < bb.radius) {
                best = Some(b);
            }
        }
    };
    for i in 0..n {
        consider(Some(Ball { center: pts[i], radius: 0.0 }));
        for j in (i + 1)..n {
            let c = (pts[i] + pts[j]) * 0.5;
            consider(Some(Ball { center: c, radius: (pts[i] - c).norm() }));
            for k in (j + 1)..n {
                consider(circum3(&pts[i], &pts[j], &pts[k]));
                for l in (k + 1)..n {
                    consider(circum4(&pts[i], &pts[j], &pts[k], &pts[l]));
                }
            }
        }
    }
    best.ok_or(Error::DegenerateConfiguration)
}

fn circum3(a: &Point3, b: &Point3, c: &Point3) -> Option<Ball> {
    let v1 = b - a;
    let v2 = c - a;
    let g11 = v1.dot(&v1);
    let g12 = v1.dot(&v2);
    let g22 = v2.dot(&v2);
    let det = g11 * g22 - g12 * g12;
    if det.abs() <= 1e-14 * g11.max(g22).powi(2) {
        return None;
    }
    let x = (g22 * g11 * 0.5 - g12 * g22 * 0.5) / det;
    let y = (g11 * g22 * 0.5 - g12 * g11 * 0.5) / det;
    let center = a + v1 * x + v2 * y;
    Some(Ball { center, radius: (a - center).norm() })
}

fn circum4(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> Option<Ball> {
    let v1 = b - a;
    let v2 = c - a;
    let v3 = d - a;
    let m = Mat3::from_rows(&[v1.transpose(), v2.transpose(), v3.transpose()]);
    if m.determinant().abs() <= 1e-14 * v1.norm().max(v2.norm()).max(v3.norm()).powi(3) {
        return None;
    }
    let rhs = Point3::new(v1.norm_squared(), v2.norm_squared(), v3.norm_squared()) * 0.5;
    let center = a + m.try_inverse()? * rhs;
    Some(Ball { center, radius: (a - center).norm() })
}

/// Every orthogonal map about the SEB center permuting the configuration,
/// found by mapping one fixed non-degenerate triple (center and two points)
/// to every congruent triple, with both handedness choices, and filtering by
/// full set preservation.
pub fn oracle_group(cfg: &Configuration) -> Result<Vec<OrthoMap>> {
    if cfg.len() < 2 {
        return Err(Error::DegenerateConfiguration);
    }
    if !cfg.is_distinct() {
        return Err(Error::CoincidentPoints);
    }
    let center = oracle_seb(cfg)?.center;
    let eps = cfg.abs_tol().max(1e-12);
    let centered: Vec<Point3> = cfg
        .points()
        .iter()
        .map(|p| p - center)
        .filter(|q| q.norm() > eps)
        .collect();

    // First non-degenerate anchor triple in input order.
    let mut anchor: Option<(usize, usize)> = None;
    'outer: for i in 0..centered.len() {
        for j in 0..centered.len() {
            if i == j {
                continue;
            }
            if centered[i].cross(&centered[j]).norm() > eps * centered[i].norm() {
                anchor = Some((i, j));
                break 'outer;
            }
        }
    }
    let (ai, aj) = anchor.ok_or(Error::DegenerateConfiguration)?;
    let (a, b) = (centered[ai], centered[aj]);
    let frame_a = orthonormal_frame(&a, &b);

    let mut found: Vec<Mat3> = Vec::new();
    for k in 0..centered.len() {
        for l in 0..centered.len() {
            if k == l {
                continue;
            }
            let (x, y) = (centered[k], centered[l]);
            if (x.norm() - a.norm()).abs() > eps
                || (y.norm() - b.norm()).abs() > eps
                || (x.dot(&y) - a.dot(&b)).abs() > eps * (a.norm() + b.norm())
            {
                continue;
            }
            let frame_x = orthonormal_frame(&x, &y);
            for flip in [1.0f64, -1.0] {
                let mut fx = frame_x;
                fx.set_column(2, &(frame_x.column(2) * flip));
                let cand = fx * frame_a.transpose();
                if preserves_set(&cand, &centered, eps)
                    && !found.iter().any(|m| mat_close(m, &cand, 1e-6))
                {
                    found.push(cand);
                }
            }
        }
    }

    // Closure must hold for a symmetry group.
    for g in &found {
        for h in &found {
            let gh = g * h;
            if !found.iter().any(|m| mat_close(m, &gh, 1e-5)) {
                return Err(Error::InconsistentTolerance);
            }
        }
    }
    Ok(found.into_iter().map(|m| OrthoMap::new(m, center)).collect())
}

fn orthonormal_frame(u: &Point3, v: &Point3) -> Mat3 {
    let e1 = u / u.norm();
    let w = v - e1 * e1.dot(v);
    let e2 = w / w.norm();
    let e3 = e1.cross(&e2);
    Mat3::from_columns(&[e1, e2, e3])
}

fn mat_close(a: &Mat3, b: &Mat3, eps: f64) -> bool {
    (0..3).all(|i| (0..3).all(|j| (a[(i, j)] - b[(i, j)]).abs() <= eps))
}

fn preserves_set(m: &Mat3, pts: &[Point3], eps: f64) -> bool {
    let mut taken = vec![false; pts.len()];
    for p in pts {
        let img = m * p;
        let mut hit = None;
        for (j, q) in pts.iter().enumerate() {
            if !taken[j] && (img - q).norm() <= eps {
                hit = Some(j);
                break;
            }
        }
        match hit {
            Some(j) => taken[j] = true,
            None => return false,
        }
    }
    true
}

/// All subgroups of a group of order at most 48, by closing every subset of
/// up to three elements. Abelian subgroups of orthogonal groups have rank at
/// most three, so three generators are complete; completeness is certified
/// by a fixed-point check: extending any found subgroup by any outside
/// element lands on a found subgroup.
pub fn oracle_subgroups(group: &[OrthoMap]) -> Result<Vec<Vec<usize>>> {
    let n = group.len();
    if n > 48 {
        return Err(Error::GroupTooLarge);
    }
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let prod = group[i].linear * group[j].linear;
            table[i][j] = (0..n)
                .find(|&k| mat_close(&group[k].linear, &prod, 1e-6))
                .ok_or(Error::InconsistentTolerance)?;
        }
    }
    let close_set = |seed: &[usize]| -> Vec<usize> {
        let mut members: Vec<usize> = seed.to_vec();
        members.sort_unstable();
        members.dedup();
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            i += 1;
            for j in 0..members.len() {
                let y = members[j];
                for p in [table[x][y], table[y][x]] {
                    if !members.contains(&p) {
                        members.push(p);
                    }
                }
            }
        }
        members.sort_unstable();
        members
    };

    let identity = (0..n)
        .find(|&i| mat_close(&group[i].linear, &Mat3::identity(), 1e-6))
        .ok_or(Error::UnknownFamily)?;
    let mut subgroups: Vec<Vec<usize>> = vec![vec![identity]];
    let push = |s: Vec<usize>, subgroups: &mut Vec<Vec<usize>>| {
        if !subgroups.contains(&s) {
            subgroups.push(s);
        }
    };
    for a in 0..n {
        push(close_set(&[a]), &mut subgroups);
        for b in (a + 1)..n {
            push(close_set(&[a, b]), &mut subgroups);
            for c in (b + 1)..n {
                push(close_set(&[a, b, c]), &mut subgroups);
            }
        }
    }
    // Fixed-point completeness certificate.
    for sub in subgroups.clone() {
        for e in 0..n {
            if !sub.contains(&e) {
                let mut seed = sub.clone();
                seed.push(e);
                let ext = close_set(&seed);
                debug_assert!(subgroups.contains(&ext), "subgroup lattice not closed");
                push(ext, &mut subgroups);
            }
        }
    }
    subgroups.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(subgroups)
}

/// Directly computes all orbits under the subgroup and checks each size
/// equals the subgroup order.
pub fn oracle_free_orbits(cfg: &Configuration, subgroup: &[OrthoMap]) -> Result<bool> {
    let eps = cfg.abs_tol().max(1e-12);
    let pts = cfg.points();
    let mut seen = vec![false; pts.len()];
    for start in 0..pts.len() {
        if seen[start] {
            continue;
        }
        let mut orbit: Vec<usize> = Vec::new();
        for map in subgroup {
            let img = map.apply(&pts[start]);
            let j = (0..pts.len())
                .find(|&j| (pts[j] - img).norm() <= eps)
                .ok_or(Error::GroupActionMismatch)?;
            if !orbit.contains(&j) {
                orbit.push(j);
            }
        }
        if orbit.len() != subgroup.len() {
            return Ok(false);
        }
        for j in orbit {
            seen[j] = true;
        }
    }
    Ok(true)
}
