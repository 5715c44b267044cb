//! Canonical matrix realizations of the seventeen symmetry families and the
//! label-level subgroup relation.
//!
//! `canonical_group(label)` builds the standard arrangement (principal axis
//! along z, a secondary 2-fold axis along x where applicable) by closing a
//! small generator set. The label-level relation `label_le(g, h)` holds when
//! the canonical realization of `h` contains a subgroup classified as `g`;
//! this realizes embeddings concretely and in particular gives a
//! rotoreflection target group no pure mirror to grant.

use alloc::vec::Vec;

// Float math via traits: inherent methods are std-only.
#[allow(unused_imports)]
use nalgebra::ComplexField;

use crate::error::Error;
use crate::geom::{reflection_across, rotation_about, Mat3, Point3};
use crate::schoenflies::Schoenflies;
use crate::symmetry::PointGroup;
use crate::symmetricity::enumerate_subgroups;
use crate::Result;

/// Closes a generator set under multiplication.
pub(crate) fn close_generators(generators: &[Mat3], cap: usize) -> Result<Vec<Mat3>> {
    let mut elements: Vec<Mat3> = alloc::vec![Mat3::identity()];
    let mut frontier: Vec<Mat3> = Vec::new();
    for g in generators {
        if !contains(&elements, g) {
            elements.push(*g);
            frontier.push(*g);
        }
    }
    while let Some(g) = frontier.pop() {
        let snapshot: Vec<Mat3> = elements.clone();
        for h in &snapshot {
            for prod in [g * h, h * g] {
                if !contains(&elements, &prod) {
                    elements.push(prod);
                    frontier.push(prod);
                }
            }
        }
        if elements.len() > cap {
            return Err(Error::UnknownFamily);
        }
    }
    Ok(elements)
}

fn contains(set: &[Mat3], m: &Mat3) -> bool {
    set.iter().any(|s| crate::geom::max_abs_diff(s, m) <= 1e-9)
}

/// The standard matrix group for a label, centered at the origin.
pub fn canonical_group(label: Schoenflies) -> Result<PointGroup> {
    if !label.is_valid() {
        return Err(Error::UnknownLabel);
    }
    let z = Point3::z();
    let x = Point3::x();
    let tau = 2.0 * core::f64::consts::PI;
    let pi = core::f64::consts::PI;
    // Cyclic coordinate permutation: a 3-fold rotation about (1,1,1).
    let c3_diag = Mat3::new(0., 0., 1., 1., 0., 0., 0., 1., 0.);
    let c2z = Mat3::from_diagonal(&Point3::new(-1., -1., 1.));
    let swap_xy = Mat3::new(0., 1., 0., 1., 0., 0., 0., 0., 1.);
    let inv = -Mat3::identity();

    let mut gens: Vec<Mat3> = Vec::new();
    match label {
        Schoenflies::C1 => {}
        Schoenflies::Ci => gens.push(inv),
        Schoenflies::Cs => gens.push(reflection_across(&z)),
        Schoenflies::C(k) => gens.push(rotation_about(&z, tau / k as f64)),
        Schoenflies::Ch(k) => {
            gens.push(rotation_about(&z, tau / k as f64));
            gens.push(reflection_across(&z));
        }
        Schoenflies::Cv(k) => {
            gens.push(rotation_about(&z, tau / k as f64));
            gens.push(reflection_across(&x));
        }
        Schoenflies::D(l) => {
            gens.push(rotation_about(&z, tau / l as f64));
            gens.push(rotation_about(&x, pi));
        }
        Schoenflies::Dh(l) => {
            gens.push(rotation_about(&z, tau / l as f64));
            gens.push(rotation_about(&x, pi));
            gens.push(reflection_across(&z));
        }
        Schoenflies::Dv(l) => {
            gens.push(reflection_across(&z) * rotation_about(&z, pi / l as f64));
            gens.push(rotation_about(&x, pi));
        }
        Schoenflies::S(m) => {
            gens.push(reflection_across(&z) * rotation_about(&z, tau / m as f64));
        }
        Schoenflies::T => gens.extend([c3_diag, c2z]),
        Schoenflies::Td => gens.extend([c3_diag, c2z, swap_xy]),
        Schoenflies::Th => gens.extend([c3_diag, c2z, inv]),
        Schoenflies::O => {
            gens.extend([c3_diag, rotation_about(&z, tau / 4.0)]);
        }
        Schoenflies::Oh => {
            gens.extend([c3_diag, rotation_about(&z, tau / 4.0), inv]);
        }
        Schoenflies::I | Schoenflies::Ih => {
            let phi = (1.0 + 5f64.sqrt()) / 2.0;
            let vertex_axis = Point3::new(0.0, 1.0, phi).normalize();
            gens.push(rotation_about(&vertex_axis, tau / 5.0));
            gens.push(c2z);
            if label == Schoenflies::Ih {
                gens.push(inv);
            }
        }
    }
    let elements = close_generators(&gens, label.order() as usize + 8)?;
    let group = PointGroup::from_maps(&elements, Point3::zeros(), 1e-9, None)?;
    if group.label() != label {
        return Err(Error::UnknownFamily);
    }
    Ok(group)
}

/// Label-level subgroup relation `g <= h` through concrete subgroups of the
/// canonical realization of `h`.
pub fn label_le(g: Schoenflies, h: Schoenflies) -> Result<bool> {
    if g == h {
        return Ok(true);
    }
    if g.order() > h.order() || h.order() % g.order() != 0 {
        return Ok(false);
    }
    Ok(subgroup_labels(h)?.contains(&g))
}

/// All labels realized by subgroups of the canonical group of `h`.
pub fn subgroup_labels(h: Schoenflies) -> Result<Vec<Schoenflies>> {
    let group = canonical_group(h)?;
    let subs = enumerate_subgroups(&group);
    let mut labels: Vec<Schoenflies> = Vec::new();
    for indices in &subs {
        let maps: Vec<Mat3> =
            indices.iter().map(|&i| group.elements()[i].linear).collect();
        let label = PointGroup::from_maps(&maps, group.center(), group.eps(), None)?.label();
        if !labels.contains(&label) {
            labels.push(label);
        }
    }
    labels.sort();
    Ok(labels)
}
