//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! and enforcing its tolerance and time budget.

use std::time::Instant;

use planeform_core::geom::{coplanar, Configuration, Point3};
use planeform_core::orbits::{local_view, ordered_decomposition};
use planeform_core::sim::{self, Outcome};
use planeform_core::symmetricity::{self, symmetricity};
use planeform_core::{families, oracle, polyhedra, symmetry, Schoenflies};
use planeform::report;

fn parse_set(labels: &[&str]) -> Vec<Schoenflies> {
    let mut v: Vec<Schoenflies> = labels.iter().map(|s| s.parse().unwrap()).collect();
    v.sort();
    v
}

/// Criterion 1: analysis of the five platonic solids reports exactly the
/// published (gamma, theta, maximal symmetricity) triples.
#[test]
fn acceptance_01_table1_reproduction() {
    let start = Instant::now();
    let cases: [(&str, Configuration, &str, &str, &[&str]); 5] = [
        ("tetrahedron", polyhedra::tetrahedron(), "T", "Td", &["D2", "S4"]),
        ("octahedron", polyhedra::octahedron(), "O", "Oh", &["D3", "S6"]),
        ("cube", polyhedra::cube(), "O", "Oh", &["D4", "D2h", "D2v", "C4h", "S4"]),
        ("dodecahedron", polyhedra::dodecahedron(), "I", "Ih", &["D5", "D2", "S10"]),
        ("icosahedron", polyhedra::icosahedron(), "I", "Ih", &["T", "D3", "S6"]),
    ];
    for (name, cfg, want_gamma, want_theta, want_rho) in cases {
        let report = report::analyze(&cfg).unwrap();
        assert_eq!(report.gamma, want_gamma, "{name}: gamma");
        assert_eq!(report.theta, want_theta, "{name}: theta");
        let mut got: Vec<Schoenflies> = report
            .symmetricity_maximal
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        got.sort();
        assert_eq!(got, parse_set(want_rho), "{name}: maximal symmetricity");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "budget exceeded: {elapsed:?}");
    println!("ACCEPTANCE 1 table-1 reproduction: PASS ({elapsed:?})");
}

/// Criterion 2: 500 seeded random-frame runs per go-to-center polyhedron;
/// gamma(P') must lie in the published Table 2 candidate set, and theta(P')
/// must have no horizontal mirror whenever gamma(P') is not C1 or C2.
///
/// The candidate sets are asserted exactly as published. The octahedron row
/// omits the reachable outcome gamma(P') = C2 (frames coordinating the three
/// robot pairs around a 2-fold edge axis produce it with probability about
/// 6/64 per run), so this criterion fails there; every observed violation is
/// exactly C2 and still satisfies the no-horizontal-mirror clause.
#[test]
fn acceptance_02_table2_reproduction() {
    let start = Instant::now();
    let table: [(&str, Configuration, &[&str]); 4] = [
        ("tetrahedron", polyhedra::tetrahedron(), &["D2", "C2", "C1"]),
        ("octahedron", polyhedra::octahedron(), &["D3", "C3", "C1"]),
        ("dodecahedron", polyhedra::dodecahedron(), &["D5", "D2", "C5", "C2", "C1"]),
        ("icosidodecahedron", polyhedra::icosidodecahedron(), &["C5", "C3", "C1"]),
    ];
    let mut violations: Vec<String> = Vec::new();
    let mut mirror_violations = 0usize;
    for (name, cfg, allowed) in table {
        let allowed = parse_set(allowed);
        for seed in 0..500u64 {
            let frames = sim::random_frames(&cfg, seed);
            let trace = sim::run(&cfg, &frames, 0, None).unwrap();
            let next = cfg.with_points(trace.steps[0].intents.clone()).unwrap();
            let theta = symmetry::detect_symmetries(&next).unwrap();
            let gamma = symmetry::rotation_group(&theta).label();
            if !allowed.contains(&gamma) {
                violations.push(format!("{name} seed {seed}: gamma {gamma}"));
            }
            if !matches!(gamma, Schoenflies::C1 | Schoenflies::C(2))
                && symmetry::has_horizontal_mirror(&theta)
            {
                mirror_violations += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert_eq!(mirror_violations, 0, "horizontal mirror appeared outside C1/C2");
    assert!(elapsed.as_secs_f64() < 30.0, "budget exceeded: {elapsed:?}");
    if violations.is_empty() {
        println!("ACCEPTANCE 2 table-2 reproduction: PASS ({elapsed:?})");
    } else {
        println!(
            "ACCEPTANCE 2 table-2 reproduction: FAIL ({} of 2000 runs outside the published \
             candidate sets, all C2; see decisions ledger)",
            violations.len()
        );
        panic!(
            "{} violations of the published Table 2 rows, e.g. {}",
            violations.len(),
            violations[0]
        );
    }
}

/// Criterion 3: classify() metadata matches the three appendix tables for
/// every parameterized family with k, l <= 12 and m <= 24.
#[test]
fn acceptance_03_appendix_consistency() {
    let start = Instant::now();
    let mut checked = 0usize;

    let fold_count = |g: &symmetry::PointGroup, fold: u32| -> usize {
        g.axes().iter().filter(|(_, f)| *f == fold).count()
    };

    // Families without a rotation axis.
    for (label, order, mirrors, inversion) in [
        (Schoenflies::C1, 1u32, 0usize, false),
        (Schoenflies::Ci, 2, 0, true),
        (Schoenflies::Cs, 2, 1, false),
    ] {
        let g = families::canonical_group(label).unwrap();
        assert_eq!(g.label(), label);
        assert_eq!(g.order() as u32, order, "{label}: order");
        assert_eq!(g.mirrors().len(), mirrors, "{label}: mirrors");
        assert_eq!(g.has_inversion(), inversion, "{label}: inversion");
        assert!(g.axes().is_empty(), "{label}: no rotation axis");
        checked += 1;
    }

    // Families with a 2D rotation group: principal k-fold axis, optional
    // secondary 2-fold axes, horizontal mirror column, order.
    for k in 2..=12u32 {
        for (label, secondary, horizontal, order, mirrors) in [
            (Schoenflies::C(k), 0usize, false, k, 0usize),
            (Schoenflies::Ch(k), 0, true, 2 * k, 1),
            (Schoenflies::Cv(k), 0, false, 2 * k, k as usize),
            (Schoenflies::D(k), k as usize, false, 2 * k, 0),
            (Schoenflies::Dh(k), k as usize, true, 4 * k, k as usize + 1),
            (Schoenflies::Dv(k), k as usize, false, 4 * k, k as usize),
        ] {
            let g = families::canonical_group(label).unwrap();
            assert_eq!(g.label(), label);
            assert_eq!(g.order() as u32, order, "{label}: order");
            assert_eq!(g.principal_fold(), k, "{label}: principal fold");
            assert_eq!(g.mirrors().len(), mirrors, "{label}: mirrors");
            assert_eq!(
                symmetry::has_horizontal_mirror(&g),
                horizontal,
                "{label}: horizontal mirror column"
            );
            let expected_secondary = if k == 2 {
                // The principal 2-fold axis is indistinguishable by fold.
                secondary + 1
            } else {
                secondary
            };
            let got_secondary = if k == 2 {
                fold_count(&g, 2)
            } else {
                fold_count(&g, 2)
            };
            assert_eq!(got_secondary, expected_secondary, "{label}: 2-fold axes");
            checked += 1;
        }
    }
    // Rotoreflection families: m-fold rotoreflection about the principal
    // axis whose proper part is C(m/2); the table's horizontal-mirror column
    // refers to the rotoreflection plane, which is not a group element.
    for m in (4..=24u32).step_by(2) {
        let label = Schoenflies::S(m);
        let g = families::canonical_group(label).unwrap();
        assert_eq!(g.label(), label);
        assert_eq!(g.order() as u32, m, "{label}: order");
        assert_eq!(g.principal_fold(), m / 2, "{label}: proper fold");
        assert!(g.mirrors().is_empty(), "{label}: no mirror elements");
        assert!(!symmetry::has_horizontal_mirror(&g));
        let roto_max = g
            .rotoreflection_axes()
            .iter()
            .map(|(_, q)| *q)
            .max()
            .unwrap_or(if m == 4 { 0 } else { 0 });
        let has_inv = g.has_inversion();
        // S_m contains the inversion exactly when m/2 is odd; the largest
        // reduced rotoreflection denominator is m.
        assert_eq!(has_inv, (m / 2) % 2 == 1, "{label}: inversion");
        assert_eq!(roto_max, m, "{label}: rotoreflection order");
        checked += 1;
    }

    // Polyhedral families: axis counts by fold, mirror counts, order.
    for (label, n2, n3, n4, n5, mirrors, order, inversion) in [
        (Schoenflies::T, 3, 4, 0, 0, 0usize, 12u32, false),
        (Schoenflies::Td, 3, 4, 0, 0, 6, 24, false),
        (Schoenflies::Th, 3, 4, 0, 0, 3, 24, true),
        (Schoenflies::O, 6, 4, 3, 0, 0, 24, false),
        (Schoenflies::Oh, 6, 4, 3, 0, 9, 48, true),
        (Schoenflies::I, 15, 10, 0, 6, 0, 60, false),
        (Schoenflies::Ih, 15, 10, 0, 6, 15, 120, true),
    ] {
        let g = families::canonical_group(label).unwrap();
        assert_eq!(g.label(), label);
        assert_eq!(g.order() as u32, order, "{label}: order");
        assert_eq!(fold_count(&g, 2), n2, "{label}: 2-fold axes");
        assert_eq!(fold_count(&g, 3), n3, "{label}: 3-fold axes");
        assert_eq!(fold_count(&g, 4), n4, "{label}: 4-fold axes");
        assert_eq!(fold_count(&g, 5), n5, "{label}: 5-fold axes");
        assert_eq!(g.mirrors().len(), mirrors, "{label}: mirrors");
        assert_eq!(g.has_inversion(), inversion, "{label}: inversion");
        checked += 1;
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "budget exceeded: {elapsed:?}");
    println!("ACCEPTANCE 3 appendix consistency: PASS ({checked} families, {elapsed:?})");
}

// ----- instance builders for criteria 4-8 -----

fn prism_with_ring(k: u32, h: f64, ring_r: f64) -> Configuration {
    let prism = polyhedra::prism(k, h).unwrap();
    let mut pts = prism.points().to_vec();
    for j in 0..k {
        let a = 2.0 * std::f64::consts::PI * j as f64 / k as f64;
        pts.push(Point3::new(ring_r * a.cos(), ring_r * a.sin(), 0.0));
    }
    Configuration::with_default_tol(pts).unwrap()
}

fn antiprism_with_ring(k: u32, h: f64, ring_r: f64) -> Configuration {
    let anti = polyhedra::antiprism(k, h).unwrap();
    let mut pts = anti.points().to_vec();
    for j in 0..k {
        // Ring on the secondary axes: edge-midpoint azimuths.
        let a = 2.0 * std::f64::consts::PI * (j as f64 + 0.25) / k as f64;
        pts.push(Point3::new(ring_r * a.cos(), ring_r * a.sin(), 0.0));
    }
    Configuration::with_default_tol(pts).unwrap()
}

fn random_in_ball(rng: &mut impl rand::Rng) -> Point3 {
    loop {
        let p = Point3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        if p.norm() <= 1.0 && p.norm() > 0.05 {
            return p;
        }
    }
}

fn cs_instance(pairs: usize, on_plane: usize, seed: u64) -> Configuration {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0xc5);
    let mut pts = Vec::new();
    for _ in 0..pairs {
        let mut p = random_in_ball(&mut rng);
        p.z = rng.gen_range(0.1..1.0);
        pts.push(p);
        pts.push(Point3::new(p.x, p.y, -p.z));
    }
    for _ in 0..on_plane {
        let mut p = random_in_ball(&mut rng);
        p.z = 0.0;
        pts.push(p);
    }
    Configuration::with_default_tol(pts).unwrap()
}

fn ci_instance(pairs: usize, seed: u64) -> Configuration {
    use rand::SeedableRng;
    #[allow(unused_imports)]
    use rand::Rng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0xc1);
    let mut pts = Vec::new();
    for _ in 0..pairs {
        let p = random_in_ball(&mut rng);
        pts.push(p);
        pts.push(-p);
    }
    Configuration::with_default_tol(pts).unwrap()
}

fn solvable_instances() -> Vec<(String, Configuration)> {
    let mut out: Vec<(String, Configuration)> = Vec::new();
    // Four go-to-center polyhedra, 25 instances each (the frames vary).
    for i in 0..25u64 {
        out.push((format!("tetrahedron-{i}"), polyhedra::tetrahedron()));
        out.push((format!("octahedron-{i}"), polyhedra::octahedron()));
        out.push((format!("dodecahedron-{i}"), polyhedra::dodecahedron()));
        out.push((format!("icosidodecahedron-{i}"), polyhedra::icosidodecahedron()));
    }
    // Prisms and antiprisms with an occupied equatorial orbit.
    let mut idx = 0u64;
    while out.len() < 200 {
        let k = 3 + (idx % 4) as u32;
        let h = 0.5 + 0.1 * ((idx / 4) % 3) as f64;
        let ring = [0.25, 0.5, 1.2][(idx / 12) as usize % 3];
        out.push((format!("prism{k}-ring{ring}-{idx}"), prism_with_ring(k, h, ring)));
        if out.len() < 200 {
            out.push((
                format!("antiprism{k}-ring{ring}-{idx}"),
                antiprism_with_ring(k, h, ring * 0.6),
            ));
        }
        idx += 1;
    }
    // Cs, Ci, and asymmetric random sets with n in [4, 64].
    for i in 0..100u64 {
        let pairs = 2 + (i as usize * 7) % 30; // up to 62 points with extras
        out.push((format!("cs-{i}"), cs_instance(pairs, 1 + (i as usize) % 3, i)));
    }
    for i in 0..100u64 {
        let pairs = 2 + (i as usize * 5) % 31;
        out.push((format!("ci-{i}"), ci_instance(pairs, i)));
    }
    for i in 0..100u64 {
        let n = 4 + (i as usize * 11) % 61;
        out.push((format!("random-{i}"), polyhedra::random(n, i).unwrap()));
    }
    out.truncate(500);
    out
}

/// Criterion 4: 500 seeded solvable instances reach a terminal
/// configuration within 10 cycles under random frames; the final set is
/// coplanar within tolerance, multiplicity-free, and a fixed point.
#[test]
fn acceptance_04_plane_formation_success() {
    let start = Instant::now();
    let instances = solvable_instances();
    assert_eq!(instances.len(), 500);
    let mut failures: Vec<String> = Vec::new();
    for (i, (name, cfg)) in instances.iter().enumerate() {
        let (solvable, _) = symmetricity::is_solvable(cfg).unwrap();
        assert!(solvable, "{name}: instance builder produced an unsolvable set");
        let frames = sim::random_frames(cfg, 1000 + i as u64);
        match sim::run(cfg, &frames, 10, None) {
            Ok(trace) => match trace.outcome {
                Outcome::Terminated(_) => {
                    let last = trace.steps.last().unwrap();
                    let final_cfg = cfg.with_points(last.positions.clone()).unwrap();
                    let plane = coplanar(&final_cfg);
                    if plane.is_none() {
                        failures.push(format!("{name}: final set not coplanar"));
                    }
                    if !final_cfg.is_distinct() {
                        failures.push(format!("{name}: final multiplicity"));
                    }
                    let all_stay = last
                        .intents
                        .iter()
                        .zip(last.positions.iter())
                        .all(|(d, p)| (d - p).norm() <= final_cfg.abs_tol());
                    if !all_stay {
                        failures.push(format!("{name}: terminal record is not all-stay"));
                    }
                }
                other => failures.push(format!("{name}: outcome {other:?}")),
            },
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    assert!(
        failures.is_empty(),
        "{} failures, e.g. {}",
        failures.len(),
        failures.first().map(String::as_str).unwrap_or("")
    );
    assert!(elapsed.as_secs_f64() < 120.0, "budget exceeded: {elapsed:?}");
    println!("ACCEPTANCE 4 plane formation success: PASS (500 instances, {elapsed:?})");
}

/// Criterion 5: the three impossibility witnesses stay caught in their
/// initial symmetry for 100 steps and never reach a terminal configuration.
#[test]
fn acceptance_05_impossibility_witnesses() {
    let start = Instant::now();
    let cases: Vec<(&str, Configuration, Schoenflies)> = vec![
        ("cube", polyhedra::cube(), Schoenflies::Ch(4)),
        ("icosahedron", polyhedra::icosahedron(), Schoenflies::T),
        (
            "d2h-witness",
            polyhedra::random_symmetric(Schoenflies::Dh(2), 2, 3).unwrap(),
            Schoenflies::Dh(2),
        ),
    ];
    for (name, cfg, label) in cases {
        let rho = symmetricity(&cfg).unwrap();
        assert!(
            rho.all.contains(&label),
            "{name}: {label} missing from the symmetricity"
        );
        let witness = rho.witness(label).unwrap().to_vec();
        let frames = sim::symmetric_frames(&cfg, &witness, 7).unwrap();
        let trace = sim::run(&cfg, &frames, 100, Some(&witness)).unwrap();
        assert_eq!(
            trace.outcome,
            Outcome::SymmetryTrapped,
            "{name}: expected a symmetry-trapped run"
        );
        assert!(
            sim::symmetry_monitor(&trace, &witness),
            "{name}: monitor violated"
        );
        assert_eq!(trace.steps.len(), 101, "{name}: ran the full budget");
        for step in &trace.steps {
            let c = cfg.with_points(step.positions.clone()).unwrap();
            assert!(
                coplanar(&c).is_none(),
                "{name}: reached a plane on an unsolvable instance"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "budget exceeded: {elapsed:?}");
    println!("ACCEPTANCE 5 impossibility witnesses: PASS ({elapsed:?})");
}

/// Criterion 6: over 200 seeded symmetric configurations, local-view
/// equality holds exactly for same-orbit robot pairs, and the canonical
/// decomposition is independent of the input point order.
#[test]
fn acceptance_06_lemma1_property_suite() {
    let start = Instant::now();
    let labels = [
        Schoenflies::C(2),
        Schoenflies::C(3),
        Schoenflies::C(5),
        Schoenflies::Cv(2),
        Schoenflies::Cv(3),
        Schoenflies::Cv(4),
        Schoenflies::Ch(2),
        Schoenflies::Ch(3),
        Schoenflies::D(2),
        Schoenflies::D(3),
        Schoenflies::D(4),
        Schoenflies::Dv(2),
        Schoenflies::Dv(3),
        Schoenflies::Dh(2),
        Schoenflies::Dh(3),
        Schoenflies::S(4),
        Schoenflies::S(6),
        Schoenflies::S(8),
        Schoenflies::Ci,
        Schoenflies::T,
    ];
    let mut checked_pairs = 0usize;
    for i in 0..200u64 {
        let label = labels[(i as usize) % labels.len()];
        let orbits = 1 + (i as usize / labels.len()) % 3;
        let orbits = if label.order() * orbits as u32 <= 4 { orbits + 2 } else { orbits };
        let cfg = polyhedra::random_symmetric(label, orbits, i).unwrap();
        let d = ordered_decomposition(&cfg).unwrap();
        let eps_len = cfg.abs_tol();
        let eps_ang = 1e-6;
        let views: Vec<_> =
            (0..cfg.len()).map(|r| local_view(&cfg, r).unwrap()).collect();
        for a in 0..cfg.len() {
            for b in (a + 1)..cfg.len() {
                let same_orbit = d.orbit_of(a) == d.orbit_of(b);
                let same_view = views[a].approx_eq(&views[b], eps_len, eps_ang);
                assert_eq!(
                    same_orbit, same_view,
                    "config {i} ({label}): pair ({a},{b}) orbit/view mismatch"
                );
                checked_pairs += 1;
            }
        }
        // Permutation independence: reverse the input order.
        let mut rev = cfg.points().to_vec();
        rev.reverse();
        let cfg_rev = cfg.with_points(rev).unwrap();
        let d_rev = ordered_decomposition(&cfg_rev).unwrap();
        let n = cfg.len();
        assert_eq!(d.orbits.len(), d_rev.orbits.len());
        for (o1, o2) in d.orbits.iter().zip(d_rev.orbits.iter()) {
            let mut mapped: Vec<usize> = o2.iter().map(|&j| n - 1 - j).collect();
            mapped.sort_unstable();
            assert_eq!(o1, &mapped, "config {i} ({label}): order depends on input order");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "budget exceeded: {elapsed:?}");
    println!(
        "ACCEPTANCE 6 lemma-1 property suite: PASS (200 configs, {checked_pairs} pairs, {elapsed:?})"
    );
}

/// Criterion 7: symmetry detection and the symmetricity pipeline agree with
/// the brute-force oracles on 300 instances with n <= 60.
#[test]
fn acceptance_07_oracle_equivalence() {
    let start = Instant::now();
    let labels = [
        Schoenflies::C(2),
        Schoenflies::C(4),
        Schoenflies::C(6),
        Schoenflies::Cv(2),
        Schoenflies::Cv(3),
        Schoenflies::Cv(5),
        Schoenflies::Ch(2),
        Schoenflies::Ch(4),
        Schoenflies::D(2),
        Schoenflies::D(3),
        Schoenflies::D(5),
        Schoenflies::Dv(2),
        Schoenflies::Dv(4),
        Schoenflies::Dh(2),
        Schoenflies::Dh(3),
        Schoenflies::S(4),
        Schoenflies::S(6),
        Schoenflies::S(10),
        Schoenflies::Ci,
        Schoenflies::Cs,
        Schoenflies::T,
        Schoenflies::Td,
        Schoenflies::Th,
    ];
    let mut instances: Vec<(String, Configuration)> = Vec::new();
    let mut i = 0u64;
    while instances.len() < 230 {
        let label = labels[(i as usize) % labels.len()];
        let orbits = 1 + (i as usize / labels.len()) % 2;
        let orbits = if label.order() * orbits as u32 <= 4 { orbits + 2 } else { orbits };
        if label.order() * orbits as u32 <= 60 {
            instances.push((
                format!("{label}-{i}"),
                polyhedra::random_symmetric(label, orbits, i).unwrap(),
            ));
        }
        i += 1;
    }
    for j in 0..40u64 {
        let n = 4 + (j as usize * 7) % 40;
        instances.push((format!("random-{j}"), polyhedra::random(n, j).unwrap()));
    }
    instances.push(("tetrahedron".into(), polyhedra::tetrahedron()));
    instances.push(("octahedron".into(), polyhedra::octahedron()));
    instances.push(("cube".into(), polyhedra::cube()));
    instances.push(("icosahedron".into(), polyhedra::icosahedron()));
    instances.push(("dodecahedron".into(), polyhedra::dodecahedron()));
    instances.push(("icosidodecahedron".into(), polyhedra::icosidodecahedron()));
    for j in 0..24u64 {
        let k = 3 + (j % 4) as u32;
        instances.push((format!("prism-{j}"), polyhedra::prism(k, 0.5 + 0.05 * j as f64 % 0.4).unwrap()));
    }
    instances.truncate(300);
    assert_eq!(instances.len(), 300);

    for (name, cfg) in &instances {
        assert!(cfg.len() <= 60, "{name}: instance too large");
        let detected = symmetry::detect_symmetries(cfg).expect(name);
        let reference = oracle::oracle_group(cfg).expect(name);
        assert_eq!(detected.order(), reference.len(), "{name}: group order");
        for el in detected.elements() {
            assert!(
                reference.iter().any(|f| el.linear_approx_eq(f, 1e-6)),
                "{name}: element missing from oracle group"
            );
        }
        // Symmetricity against the oracle subgroup/free-orbit pipeline,
        // within the oracle's exhaustive order cap.
        if detected.order() <= 48 {
            let rho = symmetricity(cfg).expect(name);
            let subs = oracle::oracle_subgroups(detected.elements()).unwrap();
            assert_eq!(
                symmetricity::enumerate_subgroups(&detected).len(),
                subs.len(),
                "{name}: subgroup count"
            );
            let mut oracle_labels: Vec<Schoenflies> = Vec::new();
            for indices in &subs {
                let maps: Vec<_> =
                    indices.iter().map(|&k| detected.elements()[k]).collect();
                if oracle::oracle_free_orbits(cfg, &maps).unwrap() {
                    let label = symmetry::classify(&maps).unwrap();
                    if !oracle_labels.contains(&label) {
                        oracle_labels.push(label);
                    }
                }
            }
            oracle_labels.sort();
            assert_eq!(rho.all, oracle_labels, "{name}: free label sets");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "budget exceeded: {elapsed:?}");
    println!("ACCEPTANCE 7 oracle equivalence: PASS (300 instances, {elapsed:?})");
}

/// Criterion 8: the algorithm is equivariant: for every symmetry g of the
/// snapshot and g-transported frames, intents transport with g.
#[test]
fn acceptance_08_equivariance() {
    let start = Instant::now();
    let labels = [
        Schoenflies::C(3),
        Schoenflies::Cv(2),
        Schoenflies::Cv(4),
        Schoenflies::Ch(2),
        Schoenflies::D(2),
        Schoenflies::D(3),
        Schoenflies::Dv(2),
        Schoenflies::Dv(3),
        Schoenflies::S(4),
        Schoenflies::S(6),
        Schoenflies::Ci,
        Schoenflies::T,
    ];
    let mut violations = 0usize;
    let mut snapshots = 0usize;
    let mut i = 0u64;
    while snapshots < 100 {
        let label = labels[(i as usize) % labels.len()];
        let orbits = if label.order() <= 3 { 3 } else { 1 + (i as usize) % 2 };
        let cfg = polyhedra::random_symmetric(label, orbits, 7000 + i).unwrap();
        i += 1;
        let theta = symmetry::detect_symmetries(&cfg).unwrap();
        let witness: Vec<_> = theta.elements().to_vec();
        // Only snapshots on which the full group acts freely admit
        // transported frames for every g.
        let Ok(frames) = sim::symmetric_frames(&cfg, &witness, 40 + i) else {
            continue;
        };
        snapshots += 1;
        // One cycle of intents under the transported frames.
        let trace = sim::run(&cfg, &frames, 0, None).unwrap();
        let dests = &trace.steps[0].intents;
        let eps = cfg.abs_tol().max(1e-9);
        let centered: Vec<Point3> =
            cfg.points().iter().map(|p| p - theta.center()).collect();
        for g in theta.elements() {
            let perm = symmetry::permutation_of(&g.linear, &centered, cfg.abs_tol()).unwrap();
            for (a, &b) in perm.iter().enumerate() {
                let transported = g.apply(&dests[a]);
                if (transported - dests[b]).norm() > eps * 16.0 {
                    violations += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert_eq!(violations, 0, "equivariance violations detected");
    assert!(elapsed.as_secs_f64() < 60.0, "budget exceeded: {elapsed:?}");
    println!("ACCEPTANCE 8 equivariance: PASS (100 snapshots, {elapsed:?})");
}
