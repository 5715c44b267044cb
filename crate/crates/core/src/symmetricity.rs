//! Symmetricity: the set of symmetry groups the robots can never break.
//!
//! A label belongs to the symmetricity of a configuration exactly when some
//! subgroup of the full symmetry group with that label acts freely on the
//! points, i.e. no non-identity element fixes a robot; equivalently every
//! orbit of the subgroup has full group size. Both criteria are computed and
//! compared. Solvability of plane formation is decided from the symmetricity
//! per the characterization: no polyhedral family, no `Ckh` with k >= 3, and
//! no `Dlh` may act freely.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::geom::{seb, Configuration, OrthoMap, Point3};
use crate::schoenflies::Schoenflies;
use crate::symmetry::{self, PointGroup};
use crate::Result;

/// Largest group order accepted by the subgroup lattice construction.
pub const MAX_SUBGROUP_ORDER: usize = 128;

/// All subgroups of the group, as sorted index sets into
/// `group.elements()`. Complete for any order up to
/// [`MAX_SUBGROUP_ORDER`]: the lattice is grown by extending each known
/// subgroup with one outside element and closing, which reaches every
/// subgroup through a chain of one-generator extensions; a fixed point of
/// this process contains every subgroup.
pub fn enumerate_subgroups(group: &PointGroup) -> Vec<Vec<usize>> {
    try_enumerate_subgroups(group).expect("group within supported order")
}

pub fn try_enumerate_subgroups(group: &PointGroup) -> Result<Vec<Vec<usize>>> {
    let n = group.order();
    if n > MAX_SUBGROUP_ORDER {
        return Err(Error::GroupTooLarge);
    }
    let table = product_table(group)?;
    let identity = (0..n)
        .find(|&i| group.elements()[i].is_identity(1e-6))
        .ok_or(Error::UnknownFamily)?;

    let trivial = Mask::single(identity);
    let mut known: Vec<Mask> = vec![trivial];
    let mut queue: Vec<Mask> = vec![trivial];
    while let Some(h) = queue.pop() {
        let mut covered = h;
        for e in 0..n {
            if covered.contains(e) {
                continue;
            }
            let extended = close(&h, e, &table, n);
            // Every element of the coset h*e generates the same extension.
            for i in 0..n {
                if h.contains(i) {
                    covered.insert(table[i][e]);
                }
            }
            if !known.contains(&extended) {
                known.push(extended);
                queue.push(extended);
            }
        }
    }
    let mut subgroups: Vec<Vec<usize>> = known.iter().map(|m| m.indices(n)).collect();
    subgroups.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(subgroups)
}

/// Index-level multiplication table; errors when the element set is not
/// closed within tolerance.
fn product_table(group: &PointGroup) -> Result<Vec<Vec<usize>>> {
    let n = group.order();
    let elements = group.elements();
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let prod = elements[i].compose(&elements[j]);
            let k = (0..n)
                .find(|&k| elements[k].linear_approx_eq(&prod, 1e-6))
                .ok_or(Error::InconsistentTolerance)?;
            table[i][j] = k;
        }
    }
    Ok(table)
}

/// Bitmask over at most 128 group elements.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Mask([u64; 2]);

impl Mask {
    fn single(i: usize) -> Mask {
        let mut m = Mask([0; 2]);
        m.insert(i);
        m
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }
    fn is_subset(&self, other: &Mask) -> bool {
        (self.0[0] & !other.0[0]) == 0 && (self.0[1] & !other.0[1]) == 0
    }
    fn indices(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|&i| self.contains(i)).collect()
    }
}

/// Closure of `h` extended by element `e` under the multiplication table.
fn close(h: &Mask, e: usize, table: &[Vec<usize>], n: usize) -> Mask {
    let mut mask = *h;
    mask.insert(e);
    let mut members: Vec<usize> = mask.indices(n);
    let mut next = 0usize;
    while next < members.len() {
        let x = members[next];
        next += 1;
        for idx in 0..members.len() {
            let y = members[idx];
            for p in [table[x][y], table[y][x]] {
                if !mask.contains(p) {
                    mask.insert(p);
                    members.push(p);
                }
            }
        }
    }
    mask
}

/// The symmetricity of a configuration.
#[derive(Debug, Clone)]
pub struct Symmetricity {
    /// Every label with a freely acting subgroup, sorted; downward closed.
    pub all: Vec<Schoenflies>,
    /// Labels in `all` without a proper supergroup in `all`.
    pub maximal: Vec<Schoenflies>,
    /// One concrete freely acting subgroup per label in `all`.
    pub witnesses: Vec<(Schoenflies, Vec<OrthoMap>)>,
    /// Set when a robot occupies the SEB center, which forces `{C1}`.
    pub center_occupied: bool,
}

impl Symmetricity {
    pub fn witness(&self, label: Schoenflies) -> Option<&[OrthoMap]> {
        self.witnesses
            .iter()
            .find(|(l, _)| *l == label)
            .map(|(_, w)| w.as_slice())
    }
}

/// Computes the symmetricity via subgroup enumeration and the free-action
/// criterion.
pub fn symmetricity(cfg: &Configuration) -> Result<Symmetricity> {
    if !cfg.is_distinct() {
        return Err(Error::CoincidentPoints);
    }
    let center = seb(cfg)?.center;
    let eps = cfg.abs_tol();
    if cfg.points().iter().any(|p| (p - center).norm() <= eps) {
        // Every non-identity orthogonal map fixes the center, so no group
        // beyond C1 acts freely.
        return Ok(Symmetricity {
            all: vec![Schoenflies::C1],
            maximal: vec![Schoenflies::C1],
            witnesses: vec![(Schoenflies::C1, vec![OrthoMap::identity(center)])],
            center_occupied: true,
        });
    }
    let theta = symmetry::detect_symmetries(cfg)?;
    let subgroups = try_enumerate_subgroups(&theta)?;
    let centered: Vec<Point3> = cfg.points().iter().map(|p| p - center).collect();

    let mut free_sets: Vec<(Vec<usize>, Schoenflies)> = Vec::new();
    for indices in &subgroups {
        let maps: Vec<OrthoMap> =
            indices.iter().map(|&i| theta.elements()[i]).collect();
        let by_fixed_points = acts_freely_by_fixed_points(&maps, &centered, eps);
        let by_orbit_sizes = acts_freely_by_orbit_sizes(&maps, &centered, eps)?;
        if by_fixed_points != by_orbit_sizes {
            return Err(Error::InconsistentTolerance);
        }
        if by_fixed_points {
            let label = symmetry::classify(&maps)?;
            free_sets.push((indices.clone(), label));
        }
    }

    let mut all: Vec<Schoenflies> = Vec::new();
    let mut witnesses: Vec<(Schoenflies, Vec<OrthoMap>)> = Vec::new();
    for (indices, label) in &free_sets {
        if !all.contains(label) {
            all.push(*label);
            witnesses
                .push((*label, indices.iter().map(|&i| theta.elements()[i]).collect()));
        }
    }
    all.sort();
    witnesses.sort_by_key(|(l, _)| *l);

    // A label is dominated when it appears as a proper subgroup of some
    // freely acting subgroup; the lattice is restricted to subgroups present
    // in theta. Rotoreflection labels are only dominated within their own
    // family: the published symmetricity sets keep S_m next to mirror-bearing
    // supergroups (the cube's S4 stands beside C4h and D2v).
    let mut dominated: Vec<Schoenflies> = Vec::new();
    for (big, big_label) in &free_sets {
        let big_mask = mask_of(big);
        for (small, small_label) in &free_sets {
            if matches!(small_label, Schoenflies::S(_))
                && !matches!(big_label, Schoenflies::S(_))
            {
                continue;
            }
            if small.len() < big.len() && mask_of(small).is_subset(&big_mask) {
                if !dominated.contains(small_label) {
                    dominated.push(*small_label);
                }
            }
        }
    }
    let maximal: Vec<Schoenflies> =
        all.iter().copied().filter(|l| !dominated.contains(l)).collect();

    Ok(Symmetricity { all, maximal, witnesses, center_occupied: false })
}

fn mask_of(indices: &[usize]) -> Mask {
    let mut m = Mask([0; 2]);
    for &i in indices {
        m.insert(i);
    }
    m
}

/// No non-identity element fixes a point: for rotations the axis is
/// unoccupied, for reflections the plane, for the inversion and
/// rotoreflections the center.
fn acts_freely_by_fixed_points(maps: &[OrthoMap], centered: &[Point3], eps: f64) -> bool {
    for map in maps {
        if map.is_identity(1e-6) {
            continue;
        }
        for q in centered {
            if (map.linear * q - q).norm() <= eps.max(1e-13) {
                return false;
            }
        }
    }
    true
}

/// Every orbit has full group size.
fn acts_freely_by_orbit_sizes(
    maps: &[OrthoMap],
    centered: &[Point3],
    eps: f64,
) -> Result<bool> {
    let n = centered.len();
    let mut assigned = vec![usize::MAX; n];
    let mut orbit_count = 0usize;
    for start in 0..n {
        if assigned[start] != usize::MAX {
            continue;
        }
        let orbit_id = orbit_count;
        orbit_count += 1;
        let mut size = 0usize;
        for map in maps {
            let img = map.linear * centered[start];
            let j = nearest_index(&img, centered, eps).ok_or(Error::GroupActionMismatch)?;
            if assigned[j] == usize::MAX {
                assigned[j] = orbit_id;
                size += 1;
            } else if assigned[j] != orbit_id {
                return Err(Error::GroupActionMismatch);
            }
        }
        if size != maps.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn nearest_index(p: &Point3, pts: &[Point3], eps: f64) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, q) in pts.iter().enumerate() {
        let d = (p - q).norm();
        if d <= eps.max(1e-13) && best.map_or(true, |(_, bd)| d < bd) {
            best = Some((i, d));
        }
    }
    best.map(|(i, _)| i)
}

/// Solvability verdict with its certificate.
#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// First forbidden label found in the symmetricity.
    Forbidden(Schoenflies),
    /// The full maximal symmetricity of a solvable instance.
    Maximal(Vec<Schoenflies>),
}

/// Decides plane-formation solvability: true iff the symmetricity contains
/// none of T, Td, Th, O, Oh, I, Ih, `Ckh` (k >= 3), `Dlh`.
pub fn is_solvable(cfg: &Configuration) -> Result<(bool, Certificate)> {
    if cfg.len() < 4 {
        return Err(Error::DegenerateConfiguration);
    }
    let rho = symmetricity(cfg)?;
    // Scan in the order the forbidden families are listed in the
    // characterization: polyhedral groups first, then Ckh by k, then Dlh by l.
    let polyhedral = [
        Schoenflies::T,
        Schoenflies::Td,
        Schoenflies::Th,
        Schoenflies::O,
        Schoenflies::Oh,
        Schoenflies::I,
        Schoenflies::Ih,
    ];
    for label in polyhedral {
        if rho.all.contains(&label) {
            return Ok((false, Certificate::Forbidden(label)));
        }
    }
    let mut ckh: Vec<u32> = rho
        .all
        .iter()
        .filter_map(|l| match l {
            Schoenflies::Ch(k) if *k >= 3 => Some(*k),
            _ => None,
        })
        .collect();
    ckh.sort_unstable();
    if let Some(&k) = ckh.first() {
        return Ok((false, Certificate::Forbidden(Schoenflies::Ch(k))));
    }
    let mut dlh: Vec<u32> = rho
        .all
        .iter()
        .filter_map(|l| match l {
            Schoenflies::Dh(l) => Some(*l),
            _ => None,
        })
        .collect();
    dlh.sort_unstable();
    if let Some(&l) = dlh.first() {
        return Ok((false, Certificate::Forbidden(Schoenflies::Dh(l))));
    }
    Ok((true, Certificate::Maximal(rho.maximal)))
}
