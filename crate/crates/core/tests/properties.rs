//! Property-based invariants over randomized configurations and transforms.

use proptest::prelude::*;

use planeform_core::geom::{
    coplanar, innermost_empty_ball, reflection_across, rotation_about, seb, Configuration,
    Point3,
};
use planeform_core::orbits::{local_view, ordered_decomposition};
use planeform_core::symmetricity::symmetricity;
use planeform_core::{polyhedra, symmetry, Schoenflies};

fn finite_point() -> impl Strategy<Value = Point3> {
    (
        prop::num::f64::NORMAL.prop_map(|x| (x % 10.0).abs() - 5.0),
        -5.0..5.0f64,
        -5.0..5.0f64,
    )
        .prop_map(|(x, y, z)| Point3::new(x, y, z))
}

fn point_cloud(min: usize, max: usize) -> impl Strategy<Value = Vec<Point3>> {
    prop::collection::vec(finite_point(), min..=max).prop_filter("distinct", |pts| {
        pts.iter().enumerate().all(|(i, p)| {
            pts[i + 1..].iter().all(|q| (p - q).norm() > 1e-3)
        })
    })
}

fn random_orthogonal() -> impl Strategy<Value = planeform_core::geom::Mat3> {
    (0.0..core::f64::consts::PI, -1.0..1.0f64, 0.0..core::f64::consts::TAU, any::<bool>())
        .prop_map(|(angle, z, phi, flip)| {
            let r = (1.0 - z * z).max(0.0).sqrt();
            let axis = Point3::new(r * phi.cos(), r * phi.sin(), z);
            let rot = rotation_about(&axis, angle);
            if flip {
                rot * reflection_across(&Point3::z())
            } else {
                rot
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn seb_is_permutation_invariant_and_equivariant(
        pts in point_cloud(2, 16),
        map in random_orthogonal(),
        shift in finite_point(),
    ) {
        let cfg = Configuration::with_default_tol(pts.clone()).unwrap();
        let ball = seb(&cfg).unwrap();
        prop_assert!(cfg.points().iter().all(|p| (p - ball.center).norm() <= ball.radius * (1.0 + 1e-9) + 1e-12));

        let mut rev = pts.clone();
        rev.reverse();
        let ball_rev = seb(&Configuration::with_default_tol(rev).unwrap()).unwrap();
        prop_assert!((ball.center - ball_rev.center).norm() <= 1e-7 * ball.radius.max(1.0));

        let moved: Vec<Point3> = pts.iter().map(|p| map * p + shift).collect();
        let ball_moved = seb(&Configuration::with_default_tol(moved).unwrap()).unwrap();
        let expected = map * ball.center + shift;
        prop_assert!((ball_moved.center - expected).norm() <= 1e-6 * ball.radius.max(1.0));
        prop_assert!((ball_moved.radius - ball.radius).abs() <= 1e-6 * ball.radius.max(1.0));
    }

    #[test]
    fn innermost_radius_bounded_by_seb(pts in point_cloud(1, 16)) {
        let cfg = Configuration::with_default_tol(pts).unwrap();
        let outer = seb(&cfg).unwrap();
        let inner = innermost_empty_ball(&cfg).unwrap();
        prop_assert!(inner.radius <= outer.radius * (1.0 + 1e-9) + 1e-12);
        // Equality exactly for spherical sets.
        let spherical = cfg
            .points()
            .iter()
            .all(|p| ((p - outer.center).norm() - outer.radius).abs() <= 1e-9 * outer.radius.max(1.0));
        let equal = (outer.radius - inner.radius).abs() <= 1e-9 * outer.radius.max(1.0);
        prop_assert_eq!(spherical, equal);
    }

    #[test]
    fn projected_points_are_coplanar(
        pts in point_cloud(3, 12),
        map in random_orthogonal(),
    ) {
        // Project arbitrary points to a random plane; coplanar must accept.
        let normal = map * Point3::z();
        let plane = planeform_core::Plane::through(&Point3::new(0.3, -0.2, 0.9), &normal);
        let flat: Vec<Point3> = pts.iter().map(|p| plane.project(p)).collect();
        let distinct = flat
            .iter()
            .enumerate()
            .all(|(i, p)| flat[i + 1..].iter().all(|q| (p - q).norm() > 1e-6));
        prop_assume!(distinct);
        let cfg = Configuration::with_default_tol(flat).unwrap();
        prop_assert!(coplanar(&cfg).is_some());
    }

    #[test]
    fn local_view_is_chirality_free(
        seed in 0u64..500,
        map in random_orthogonal(),
    ) {
        // The whole scene transformed by any orthogonal map about the center
        // leaves every robot's view unchanged, including improper maps.
        let cfg = polyhedra::random_symmetric(Schoenflies::Cv(3), 1, seed).unwrap();
        let center = seb(&cfg).unwrap().center;
        let moved: Vec<Point3> =
            cfg.points().iter().map(|p| center + map * (p - center)).collect();
        let cfg_moved = Configuration::with_default_tol(moved).unwrap();
        for i in 0..cfg.len() {
            let a = local_view(&cfg, i).unwrap();
            let b = local_view(&cfg_moved, i).unwrap();
            prop_assert!(
                a.approx_eq(&b, cfg.abs_tol().max(1e-9), 1e-6),
                "observer {} view changed under orthogonal transform",
                i
            );
        }
    }

    #[test]
    fn classification_is_conjugation_invariant(
        seed in 0u64..300,
        map in random_orthogonal(),
        scale in 0.25..4.0f64,
    ) {
        let labels = [Schoenflies::Cv(4), Schoenflies::D(3), Schoenflies::S(4), Schoenflies::Ch(2)];
        let label = labels[(seed % 4) as usize];
        let cfg = polyhedra::random_symmetric(label, 1, seed).unwrap();
        let theta = symmetry::detect_symmetries(&cfg).unwrap();
        let moved: Vec<Point3> = cfg.points().iter().map(|p| map * (p * scale)).collect();
        let theta_moved =
            symmetry::detect_symmetries(&Configuration::with_default_tol(moved).unwrap()).unwrap();
        prop_assert_eq!(theta.label(), theta_moved.label());
    }

    #[test]
    fn rho_is_similarity_invariant(
        seed in 0u64..200,
        map in random_orthogonal(),
        scale in 0.25..4.0f64,
    ) {
        let labels = [Schoenflies::Cv(3), Schoenflies::Dv(2), Schoenflies::S(6), Schoenflies::Ci];
        let label = labels[(seed % 4) as usize];
        // Low-order labels need several orbits to span more than a line.
        let orbits = if label.order() < 4 { 3 } else { 1 };
        let cfg = polyhedra::random_symmetric(label, orbits, seed).unwrap();
        let rho = symmetricity(&cfg).unwrap();
        let moved: Vec<Point3> =
            cfg.points().iter().map(|p| map * (p * scale) + Point3::new(1.0, -2.0, 0.5)).collect();
        let rho_moved = symmetricity(&Configuration::with_default_tol(moved).unwrap()).unwrap();
        prop_assert_eq!(rho.all, rho_moved.all);
        prop_assert_eq!(rho.maximal, rho_moved.maximal);
    }
}

#[test]
fn gamma_divides_theta_with_index_one_or_two() {
    for (label, orbits, seed) in [
        (Schoenflies::C(5), 1, 1u64),
        (Schoenflies::Ch(3), 1, 2),
        (Schoenflies::Cv(2), 2, 3),
        (Schoenflies::D(6), 1, 4),
        (Schoenflies::Dh(2), 1, 5),
        (Schoenflies::Dv(4), 1, 6),
        (Schoenflies::S(10), 1, 7),
        (Schoenflies::Ci, 2, 8),
        (Schoenflies::Cs, 3, 9),
        (Schoenflies::T, 1, 10),
        (Schoenflies::Th, 1, 11),
    ] {
        let cfg = polyhedra::random_symmetric(label, orbits, seed).unwrap();
        let theta = symmetry::detect_symmetries(&cfg).unwrap();
        let gamma = symmetry::rotation_group(&theta);
        assert_eq!(theta.order() % gamma.order(), 0, "{label}");
        let index = theta.order() / gamma.order();
        assert!(index == 1 || index == 2, "{label}: index {index}");
        if matches!(theta.label(), Schoenflies::C1 | Schoenflies::Ci | Schoenflies::Cs) {
            assert_eq!(gamma.label(), Schoenflies::C1, "{label}");
        }
    }
}

#[test]
fn orbit_sizes_divide_group_order_and_order_is_input_independent() {
    for seed in 0..12u64 {
        let label = [Schoenflies::Cv(3), Schoenflies::D(4), Schoenflies::S(8)][seed as usize % 3];
        let cfg = polyhedra::random_symmetric(label, 2, seed).unwrap();
        let d = ordered_decomposition(&cfg).unwrap();
        for orbit in &d.orbits {
            assert_eq!(d.group.order() % orbit.len(), 0);
        }
    }
}

#[test]
fn downward_closure_of_symmetricity() {
    // Every subgroup of every witness is itself a free-action witness, so
    // its label must appear in `all`.
    for (label, seed) in [(Schoenflies::Dv(3), 0u64), (Schoenflies::Ch(2), 1), (Schoenflies::T, 2)] {
        let cfg = polyhedra::random_symmetric(label, 1, seed).unwrap();
        let rho = symmetricity(&cfg).unwrap();
        for (witness_label, maps) in &rho.witnesses {
            let group = symmetry::PointGroup::from_maps(
                &maps.iter().map(|m| m.linear).collect::<Vec<_>>(),
                maps[0].fixed_point,
                cfg.abs_tol(),
                None,
            )
            .unwrap();
            assert_eq!(group.label(), *witness_label);
            for sub in planeform_core::symmetricity::enumerate_subgroups(&group) {
                let sub_maps: Vec<_> = sub.iter().map(|&i| group.elements()[i]).collect();
                let sub_label = symmetry::classify(&sub_maps).unwrap();
                assert!(
                    rho.all.contains(&sub_label),
                    "{label}: {sub_label} below {witness_label} missing from rho"
                );
            }
        }
    }
}

#[test]
fn theta_in_rho_iff_theta_acts_freely() {
    // A free orbit of the canonical group realizes theta itself in rho.
    let cfg = polyhedra::random_symmetric(Schoenflies::Dv(2), 1, 5).unwrap();
    let theta = symmetry::detect_symmetries(&cfg).unwrap();
    assert_eq!(theta.label(), Schoenflies::Dv(2));
    let rho = symmetricity(&cfg).unwrap();
    assert!(rho.all.contains(&Schoenflies::Dv(2)));
    // The cube's theta (Oh) has occupied axes, so Oh is not in rho.
    let rho_cube = symmetricity(&polyhedra::cube()).unwrap();
    assert!(!rho_cube.all.contains(&Schoenflies::Oh));
}
