//! Detection and Schoenflies classification of the symmetry group of a point
//! set.
//!
//! [`detect_symmetries`] returns the set of all orthogonal maps about the SEB
//! center that send the point set to itself within tolerance; because it is
//! the set of *all* such maps, it is the full symmetry group. Candidates are
//! generated from an anchored non-degenerate point pair, snapped to exact
//! axis-angle form, and verified closed under composition.

use alloc::vec;
use alloc::vec::Vec;

use crate::elements::{self, ElementKind};
use crate::error::Error;
use crate::geom::{seb, Configuration, Mat3, OrthoMap, Plane, Point3};
use crate::schoenflies::Schoenflies;
use crate::Result;

/// A finite group of orthogonal maps about a common fixed point, classified
/// into one of the seventeen Schoenflies families.
#[derive(Debug, Clone)]
pub struct PointGroup {
    elements: Vec<OrthoMap>,
    label: Schoenflies,
    center: Point3,
    eps: f64,
    principal_axis: Option<Point3>,
    axes: Vec<(Point3, u32)>,
    mirrors: Vec<Plane>,
    rotoreflection_axes: Vec<(Point3, u32)>,
    has_inversion: bool,
    horizontal_mirror: Option<Plane>,
}

impl PointGroup {
    /// All group elements, identity included.
    pub fn elements(&self) -> &[OrthoMap] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn label(&self) -> Schoenflies {
        self.label
    }

    /// Common fixed point of all elements.
    pub fn center(&self) -> Point3 {
        self.center
    }

    /// Absolute tolerance the group was built with.
    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Principal axis for the cyclic, dihedral, and rotoreflection families.
    pub fn principal_axis(&self) -> Option<Point3> {
        self.principal_axis
    }

    /// Proper rotation axes with their maximal folds.
    pub fn axes(&self) -> &[(Point3, u32)] {
        &self.axes
    }

    /// Mirror planes (through the center).
    pub fn mirrors(&self) -> &[Plane] {
        &self.mirrors
    }

    /// Rotoreflection axes with the largest reduced angle denominator, e.g.
    /// `(axis, 4)` for an S4 axis.
    pub fn rotoreflection_axes(&self) -> &[(Point3, u32)] {
        &self.rotoreflection_axes
    }

    pub fn has_inversion(&self) -> bool {
        self.has_inversion
    }

    /// The mirror plane perpendicular to the principal axis, when both exist.
    pub fn horizontal_mirror(&self) -> Option<Plane> {
        self.horizontal_mirror
    }

    /// Fold of the principal axis (1 when there is none).
    pub fn principal_fold(&self) -> u32 {
        let Some(u) = self.principal_axis else { return 1 };
        self.axes
            .iter()
            .find(|(a, _)| elements::same_axis(a, &u, 1e-6))
            .map(|(_, f)| *f)
            .unwrap_or(1)
    }

    /// Builds a group from raw linear parts about `center`.
    ///
    /// `context` supplies the point set (centered on `center`) used to pick a
    /// canonical principal axis for the D2 families, where the group alone
    /// does not distinguish its three 2-fold axes.
    pub fn from_maps(
        linears: &[Mat3],
        center: Point3,
        eps: f64,
        context: Option<&[Point3]>,
    ) -> Result<Self> {
        classify_maps(linears, center, eps, context)
    }
}

/// Schoenflies label of a closed finite orthogonal group given by its linear
/// parts.
pub fn classify(maps: &[OrthoMap]) -> Result<Schoenflies> {
    let center = maps.first().map(|m| m.fixed_point).unwrap_or_else(Point3::zeros);
    let linears: Vec<Mat3> = maps.iter().map(|m| m.linear).collect();
    Ok(classify_maps(&linears, center, 1e-9, None)?.label)
}

/// The proper-rotation subgroup, relabeled.
pub fn rotation_group(group: &PointGroup) -> PointGroup {
    let proper: Vec<Mat3> = group
        .elements
        .iter()
        .filter(|m| m.det() > 0.0)
        .map(|m| m.linear)
        .collect();
    let mut rotated = classify_maps(&proper, group.center, group.eps, None)
        .expect("proper part of a valid group is a valid group");
    // Inherit the principal axis when it survives as a proper axis, so the
    // rotation group agrees with the full group on the common frame.
    if let Some(u) = group.principal_axis {
        if rotated.axes.iter().any(|(a, _)| elements::same_axis(a, &u, 1e-6)) {
            rotated.principal_axis = Some(u);
        }
    }
    rotated
}

/// Element-level subgroup test; both groups must share their fixed point.
pub fn is_subgroup(sub: &PointGroup, sup: &PointGroup) -> Result<bool> {
    let eps = sub.eps.max(sup.eps).max(1e-12);
    if (sub.center - sup.center).norm() > eps {
        return Err(Error::MismatchedFixedPoints);
    }
    let entry_eps = 1e-6;
    Ok(sub.elements.iter().all(|e| {
        sup.elements.iter().any(|f| e.linear_approx_eq(f, entry_eps))
    }))
}

/// True iff the element set contains a mirror perpendicular to the principal
/// axis. Groups without a principal axis report `false`.
pub fn has_horizontal_mirror(group: &PointGroup) -> bool {
    group.horizontal_mirror.is_some()
}

/// Computes the full symmetry group of a configuration.
///
/// Every returned map fixes the SEB center. A point lying exactly on the
/// center is allowed (it is fixed by all candidates) but the remaining points
/// must span more than a line, otherwise the symmetry group is not finite.
pub fn detect_symmetries(cfg: &Configuration) -> Result<PointGroup> {
    if !cfg.is_distinct() {
        return Err(Error::CoincidentPoints);
    }
    let center = seb(cfg)?.center;
    let eps = cfg.abs_tol();
    let mut centered: Vec<Point3> = Vec::with_capacity(cfg.len());
    for p in cfg.points() {
        let q = p - center;
        if q.norm() > eps {
            centered.push(q);
        }
    }
    let linears = detect_centered(&centered, eps, cfg.len())?;
    classify_maps(&linears, center, eps, Some(&centered))
}

/// Candidate generation and verification over centered points.
fn detect_centered(centered: &[Point3], eps: f64, n_total: usize) -> Result<Vec<Mat3>> {
    if centered.len() < 2 {
        return Err(Error::DegenerateConfiguration);
    }
    // Deterministic, order-independent anchor: smallest radius, ties by
    // lexicographic coordinates.
    let mut order: Vec<usize> = (0..centered.len()).collect();
    order.sort_by(|&i, &j| {
        let ki = (centered[i].norm(), centered[i].x, centered[i].y, centered[i].z);
        let kj = (centered[j].norm(), centered[j].x, centered[j].y, centered[j].z);
        ki.partial_cmp(&kj).unwrap()
    });
    let a = centered[order[0]];
    let b = match order.iter().skip(1).map(|&i| centered[i]).find(|q| {
        a.cross(q).norm() / a.norm() > eps.max(1e-13)
    }) {
        Some(q) => q,
        None => return Err(Error::DegenerateConfiguration),
    };

    let base = triad(&a, &b).ok_or(Error::DegenerateConfiguration)?;
    let ra = a.norm();
    let rb = b.norm();
    let dot_ab = a.dot(&b);
    let dot_eps = eps * (ra + rb).max(1.0);

    let xs: Vec<usize> =
        (0..centered.len()).filter(|&i| (centered[i].norm() - ra).abs() <= eps).collect();
    let ys: Vec<usize> =
        (0..centered.len()).filter(|&i| (centered[i].norm() - rb).abs() <= eps).collect();

    let mut accepted: Vec<Mat3> = Vec::new();
    for &xi in &xs {
        for &yi in &ys {
            let x = centered[xi];
            let y = centered[yi];
            if (x.dot(&y) - dot_ab).abs() > dot_eps {
                continue;
            }
            let Some(target) = triad(&x, &y) else { continue };
            // Proper candidate and its mirror image through the target plane.
            let proper = target * base.transpose();
            let improper = flip_third(&target) * base.transpose();
            for cand in [proper, improper] {
                if accepted.iter().any(|m| crate::geom::max_abs_diff(m, &cand) <= 1e-6) {
                    continue;
                }
                if permutes(&cand, centered, eps) {
                    accepted.push(cand);
                }
            }
        }
    }

    // Snap angles to rational multiples of a full turn and rebuild each map
    // in exact axis-angle form so that closure holds bit-stably.
    let q_max = (2 * n_total as u32).max(8);
    let mut snapped: Vec<Mat3> = Vec::with_capacity(accepted.len());
    for m in &accepted {
        let kind = elements::analyze(m, eps.max(1e-9))?;
        let exact = elements::snap(&kind, q_max).matrix();
        let keep = if permutes(&exact, centered, eps) { exact } else { *m };
        if !snapped.iter().any(|s| crate::geom::max_abs_diff(s, &keep) <= 1e-9) {
            snapped.push(keep);
        }
    }

    // Axial families reach order 4k with k at most n; polyhedral families
    // top out at 120.
    if snapped.len() > (4 * n_total + 8).max(130) {
        return Err(Error::InconsistentTolerance);
    }
    // Closure check.
    for g in &snapped {
        for h in &snapped {
            let gh = g * h;
            if !snapped.iter().any(|s| crate::geom::max_abs_diff(s, &gh) <= 1e-6) {
                return Err(Error::InconsistentTolerance);
            }
        }
    }
    Ok(snapped)
}

/// Orthonormal triad with `u` as first column and `v` in the first two
/// columns' span.
fn triad(u: &Point3, v: &Point3) -> Option<Mat3> {
    let e1 = u.normalize();
    let w = v - e1 * e1.dot(v);
    if w.norm() <= 1e-13 * v.norm().max(1.0) {
        return None;
    }
    let e2 = w.normalize();
    let e3 = e1.cross(&e2);
    Some(Mat3::from_columns(&[e1, e2, e3]))
}

fn flip_third(t: &Mat3) -> Mat3 {
    let c0 = t.column(0).into_owned();
    let c1 = t.column(1).into_owned();
    let c2 = -t.column(2).into_owned();
    Mat3::from_columns(&[c0, c1, c2])
}

/// True when `m` maps the centered point set bijectively onto itself within
/// `eps`. Early-exits on the first unmatched point.
pub(crate) fn permutes(m: &Mat3, centered: &[Point3], eps: f64) -> bool {
    permutation_of(m, centered, eps).is_some()
}

/// The permutation induced by `m` on the centered point set, if any:
/// `m * centered[i]` matches `centered[perm[i]]` within `eps`, bijectively.
pub fn permutation_of(m: &Mat3, centered: &[Point3], eps: f64) -> Option<Vec<usize>> {
    let n = centered.len();
    let mut used = vec![false; n];
    let mut perm = vec![0usize; n];
    let eps = eps.max(1e-13);
    for (i, q) in centered.iter().enumerate() {
        let img = m * q;
        let mut best: Option<(usize, f64)> = None;
        for (j, r) in centered.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = (img - r).norm();
            if d <= eps && best.map_or(true, |(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        match best {
            Some((j, _)) => {
                used[j] = true;
                perm[i] = j;
            }
            None => return None,
        }
    }
    Some(perm)
}

/// Builds group metadata and the Schoenflies label from a closed element set.
fn classify_maps(
    linears: &[Mat3],
    center: Point3,
    eps: f64,
    context: Option<&[Point3]>,
) -> Result<PointGroup> {
    if linears.is_empty() {
        return Err(Error::UnknownFamily);
    }
    let axis_eps = 1e-6;
    let mut kinds: Vec<ElementKind> = Vec::with_capacity(linears.len());
    for m in linears {
        kinds.push(elements::analyze(m, eps.max(1e-9))?);
    }
    if !kinds.iter().any(|k| matches!(k, ElementKind::Identity)) {
        return Err(Error::UnknownFamily);
    }

    // Proper axes with folds.
    let mut axes: Vec<(Point3, Vec<f64>)> = Vec::new();
    let mut mirrors: Vec<Point3> = Vec::new();
    let mut rotoreflections: Vec<(Point3, u32)> = Vec::new();
    let mut has_inversion = false;
    for k in &kinds {
        match k {
            ElementKind::Rotation { axis, angle } => {
                match axes.iter_mut().find(|(a, _)| elements::same_axis(a, axis, axis_eps)) {
                    Some((_, angles)) => angles.push(*angle),
                    None => axes.push((*axis, vec![*angle])),
                }
            }
            ElementKind::Reflection { normal } => {
                if !mirrors.iter().any(|n| elements::same_axis(n, normal, axis_eps)) {
                    mirrors.push(*normal);
                }
            }
            ElementKind::Inversion => has_inversion = true,
            ElementKind::Rotoreflection { axis, angle } => {
                let (_, q) = elements::snap_angle(*angle, 2 * linears.len() as u32 + 4);
                match rotoreflections
                    .iter_mut()
                    .find(|(a, _)| elements::same_axis(a, axis, axis_eps))
                {
                    Some((_, qq)) => *qq = (*qq).max(q),
                    None => rotoreflections.push((*axis, q)),
                }
            }
            ElementKind::Identity => {}
        }
    }
    let mut axes: Vec<(Point3, u32)> =
        axes.into_iter().map(|(a, angles)| (a, angles.len() as u32 + 1)).collect();
    axes.sort_by(|(a, fa), (b, fb)| {
        fb.cmp(fa).then_with(|| (a.x, a.y, a.z).partial_cmp(&(b.x, b.y, b.z)).unwrap())
    });
    mirrors.sort_by(|a, b| (a.x, a.y, a.z).partial_cmp(&(b.x, b.y, b.z)).unwrap());

    let order = linears.len();
    let improper_count = kinds.iter().filter(|k| !k.is_proper()).count();
    let high_axes = axes.iter().filter(|(_, f)| *f >= 3).count();

    let mut principal: Option<Point3> = None;
    let label = if axes.is_empty() {
        match (order, has_inversion, mirrors.len()) {
            (1, false, 0) => Schoenflies::C1,
            (2, true, 0) => Schoenflies::Ci,
            (2, false, 1) => Schoenflies::Cs,
            _ => return Err(Error::UnknownFamily),
        }
    } else if high_axes >= 2 {
        let count = |f: u32| axes.iter().filter(|(_, ff)| *ff == f).count();
        let (n2, n3, n4, n5) = (count(2), count(3), count(4), count(5));
        match (n2, n3, n4, n5, order) {
            (3, 4, 0, 0, 12) => Schoenflies::T,
            (3, 4, 0, 0, 24) if has_inversion => Schoenflies::Th,
            (3, 4, 0, 0, 24) => Schoenflies::Td,
            (6, 4, 3, 0, 24) => Schoenflies::O,
            (6, 4, 3, 0, 48) => Schoenflies::Oh,
            (15, 10, 0, 6, 60) => Schoenflies::I,
            (15, 10, 0, 6, 120) => Schoenflies::Ih,
            _ => return Err(Error::UnknownFamily),
        }
    } else {
        let max_fold = axes.iter().map(|(_, f)| *f).max().unwrap();
        let dihedral = if max_fold >= 3 {
            let u = axes[0].0;
            let perp2 = axes
                .iter()
                .filter(|(a, f)| *f == 2 && a.dot(&u).abs() <= axis_eps)
                .count();
            perp2 as u32 == max_fold && axes.len() as u32 == max_fold + 1
        } else {
            axes.len() == 3
        };
        if dihedral {
            let l = max_fold;
            principal = Some(axes[0].0);
            if l == 2 {
                // The three 2-fold axes are interchangeable; pick canonically.
                principal = Some(pick_d2_principal(&axes, &mirrors, &rotoreflections, context));
            }
            if improper_count == 0 {
                Schoenflies::D(l)
            } else {
                let u = principal.unwrap();
                let sigma_h = mirrors.iter().any(|n| elements::same_axis(n, &u, axis_eps));
                if sigma_h {
                    Schoenflies::Dh(l)
                } else {
                    Schoenflies::Dv(l)
                }
            }
        } else {
            if axes.len() != 1 {
                return Err(Error::UnknownFamily);
            }
            let k = max_fold;
            let u = axes[0].0;
            principal = Some(u);
            if improper_count == 0 {
                Schoenflies::C(k)
            } else if mirrors.iter().any(|n| elements::same_axis(n, &u, axis_eps)) {
                Schoenflies::Ch(k)
            } else if mirrors.len() as u32 == k
                && mirrors.iter().all(|n| n.dot(&u).abs() <= axis_eps)
            {
                Schoenflies::Cv(k)
            } else if mirrors.is_empty()
                && rotoreflections.iter().any(|(a, _)| elements::same_axis(a, &u, axis_eps))
            {
                Schoenflies::S(order as u32)
            } else {
                return Err(Error::UnknownFamily);
            }
        }
    };

    if label.order() as usize != order || !label.is_valid() {
        return Err(Error::UnknownFamily);
    }

    // For the pure rotoreflection family the principal axis is the
    // rotoreflection axis (it coincides with the single proper axis).
    let horizontal_mirror = principal.and_then(|u| {
        mirrors
            .iter()
            .find(|n| elements::same_axis(n, &u, axis_eps))
            .map(|n| Plane::through(&center, n))
    });

    let elements: Vec<OrthoMap> =
        linears.iter().map(|m| OrthoMap::new(*m, center)).collect();
    let mirrors: Vec<Plane> = mirrors.iter().map(|n| Plane::through(&center, n)).collect();
    Ok(PointGroup {
        elements,
        label,
        center,
        eps,
        principal_axis: principal,
        axes,
        mirrors,
        rotoreflection_axes: rotoreflections,
        has_inversion,
        horizontal_mirror,
    })
}

/// Canonical principal axis for the D2 families. An S4 axis is structurally
/// distinguished (D2v); otherwise the configuration decides: smallest sorted
/// multiset of cylindrical radii, ties broken by the number of mirrors
/// through the axis, then by lexicographic axis comparison.
fn pick_d2_principal(
    axes: &[(Point3, u32)],
    mirrors: &[Point3],
    rotoreflections: &[(Point3, u32)],
    context: Option<&[Point3]>,
) -> Point3 {
    if let Some((a, _)) = rotoreflections.iter().find(|(_, q)| *q == 4) {
        return *a;
    }
    let mut best: Option<(Point3, Vec<f64>, usize)> = None;
    for (u, _) in axes {
        let radii: Vec<f64> = match context {
            Some(pts) => {
                let mut r: Vec<f64> =
                    pts.iter().map(|p| (p - u * u.dot(p)).norm()).collect();
                r.sort_by(|a, b| a.partial_cmp(b).unwrap());
                r
            }
            None => Vec::new(),
        };
        let vertical_mirrors =
            mirrors.iter().filter(|n| n.dot(u).abs() <= 1e-6).count();
        let better = match &best {
            None => true,
            Some((bu, bradii, bm)) => {
                match lex_cmp(&radii, bradii, 1e-9) {
                    core::cmp::Ordering::Less => true,
                    core::cmp::Ordering::Greater => false,
                    core::cmp::Ordering::Equal => match vertical_mirrors.cmp(bm).reverse() {
                        core::cmp::Ordering::Less => true,
                        core::cmp::Ordering::Greater => false,
                        core::cmp::Ordering::Equal => {
                            (u.x, u.y, u.z).partial_cmp(&(bu.x, bu.y, bu.z)).unwrap()
                                == core::cmp::Ordering::Less
                        }
                    },
                }
            }
        };
        if better {
            best = Some((*u, radii, vertical_mirrors));
        }
    }
    best.expect("dihedral group has axes").0
}

fn lex_cmp(a: &[f64], b: &[f64], eps: f64) -> core::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        if (x - y).abs() > eps {
            return x.partial_cmp(y).unwrap();
        }
    }
    a.len().cmp(&b.len())
}
