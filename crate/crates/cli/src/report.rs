//! Analysis report: symmetry structure and solvability of a configuration.

use anyhow::Result;
use planeform_core::geom::{innermost_empty_ball, seb, Configuration};
use planeform_core::orbits;
use planeform_core::symmetricity::{self, Certificate};
use planeform_core::{symmetry, Point3};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub n: usize,
    pub tol: f64,
    pub center: [f64; 3],
    pub radius_inner: f64,
    pub radius_outer: f64,
    pub spherical: bool,
    pub theta: String,
    pub gamma: String,
    pub center_occupied: bool,
    /// Orbit sizes in canonical order (by radius when the center is
    /// occupied, since the canonical order needs an empty center).
    pub orbit_sizes: Vec<usize>,
    pub symmetricity_all: Vec<String>,
    pub symmetricity_maximal: Vec<String>,
    pub solvable: bool,
    /// Forbidden label when unsolvable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
}

pub fn analyze(cfg: &Configuration) -> Result<AnalyzeReport> {
    let outer = seb(cfg)?;
    let inner = innermost_empty_ball(cfg)?;
    let theta = symmetry::detect_symmetries(cfg)?;
    let gamma = symmetry::rotation_group(&theta);
    let rho = symmetricity::symmetricity(cfg)?;

    let orbit_sizes: Vec<usize> = match orbits::ordered_decomposition(cfg) {
        Ok(d) => d.orbits.iter().map(|o| o.len()).collect(),
        Err(planeform_core::Error::PointAtCenter) => {
            let mut parts = orbits::orbits(cfg, &theta)?;
            let radius = |orbit: &Vec<usize>| -> f64 {
                orbit
                    .iter()
                    .map(|&i| (cfg.points()[i] - outer.center).norm())
                    .sum::<f64>()
                    / orbit.len() as f64
            };
            parts.sort_by(|a, b| radius(a).partial_cmp(&radius(b)).unwrap());
            parts.iter().map(|o| o.len()).collect()
        }
        Err(e) => return Err(e.into()),
    };

    let (solvable, certificate) = if cfg.len() >= 4 {
        let (ok, cert) = symmetricity::is_solvable(cfg)?;
        match cert {
            Certificate::Forbidden(label) => (ok, Some(label.to_string())),
            Certificate::Maximal(_) => (ok, None),
        }
    } else {
        (false, None)
    };

    Ok(AnalyzeReport {
        n: cfg.len(),
        tol: cfg.tol(),
        center: [outer.center.x, outer.center.y, outer.center.z],
        radius_inner: inner.radius,
        radius_outer: outer.radius,
        spherical: (outer.radius - inner.radius).abs() <= cfg.abs_tol(),
        theta: theta.label().to_string(),
        gamma: gamma.label().to_string(),
        center_occupied: rho.center_occupied,
        orbit_sizes,
        symmetricity_all: rho.all.iter().map(|l| l.to_string()).collect(),
        symmetricity_maximal: rho.maximal.iter().map(|l| l.to_string()).collect(),
        solvable,
        certificate,
    })
}

impl AnalyzeReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let center = Point3::new(self.center[0], self.center[1], self.center[2]);
        s.push_str(&format!("n: {}\n", self.n));
        s.push_str(&format!("tol: {}\n", self.tol));
        s.push_str(&format!("center: [{}, {}, {}]\n", center.x, center.y, center.z));
        s.push_str(&format!("radius_inner: {}\n", self.radius_inner));
        s.push_str(&format!("radius_outer: {}\n", self.radius_outer));
        s.push_str(&format!("spherical: {}\n", self.spherical));
        s.push_str(&format!("theta: {}\n", self.theta));
        s.push_str(&format!("gamma: {}\n", self.gamma));
        if self.center_occupied {
            s.push_str("center_occupied: true\n");
        }
        let sizes: Vec<String> = self.orbit_sizes.iter().map(|n| n.to_string()).collect();
        s.push_str(&format!("orbits: [{}]\n", sizes.join(", ")));
        s.push_str(&format!("symmetricity_all: [{}]\n", self.symmetricity_all.join(", ")));
        s.push_str(&format!(
            "symmetricity_maximal: [{}]\n",
            self.symmetricity_maximal.join(", ")
        ));
        s.push_str(&format!("solvable: {}\n", if self.solvable { "yes" } else { "no" }));
        if let Some(c) = &self.certificate {
            s.push_str(&format!("certificate: {c}\n"));
        }
        s
    }
}
