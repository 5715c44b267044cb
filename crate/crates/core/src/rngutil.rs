//! Seeding and sampling helpers.

use alloc::vec::Vec;

// Float math via traits: inherent methods are std-only.
#[allow(unused_imports)]
use nalgebra::ComplexField;
use rand::Rng;

use crate::geom::{Mat3, Point3};

/// FNV-1a over the coordinate bit patterns in sorted order, so the hash is
/// independent of the input point order.
pub fn point_set_hash(points: &[Point3]) -> u64 {
    let mut rows: Vec<[u64; 3]> =
        points.iter().map(|p| [p.x.to_bits(), p.y.to_bits(), p.z.to_bits()]).collect();
    rows.sort_unstable();
    let mut h: u64 = 0xcbf29ce484222325;
    for row in rows {
        for w in row {
            for byte in w.to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        }
    }
    h
}

/// Uniform random rotation (Shoemake's quaternion method).
pub fn uniform_rotation<R: Rng>(rng: &mut R) -> Mat3 {
    let u1: f64 = rng.gen();
    let u2: f64 = rng.gen();
    let u3: f64 = rng.gen();
    let two_pi = 2.0 * core::f64::consts::PI;
    let a = (1.0 - u1).sqrt();
    let b = u1.sqrt();
    let (w, x, y, z) = (
        a * (two_pi * u2).sin(),
        a * (two_pi * u2).cos(),
        b * (two_pi * u3).sin(),
        b * (two_pi * u3).cos(),
    );
    quat_to_matrix(w, x, y, z)
}

fn quat_to_matrix(w: f64, x: f64, y: f64, z: f64) -> Mat3 {
    Mat3::new(
        1.0 - 2.0 * (y * y + z * z),
        2.0 * (x * y - w * z),
        2.0 * (x * z + w * y),
        2.0 * (x * y + w * z),
        1.0 - 2.0 * (x * x + z * z),
        2.0 * (y * z - w * x),
        2.0 * (x * z - w * y),
        2.0 * (y * z + w * x),
        1.0 - 2.0 * (x * x + y * y),
    )
}

/// Uniform random unit vector.
pub fn uniform_unit<R: Rng>(rng: &mut R) -> Point3 {
    let z: f64 = rng.gen_range(-1.0..1.0);
    let phi: f64 = rng.gen_range(0.0..2.0 * core::f64::consts::PI);
    let r = (1.0 - z * z).max(0.0).sqrt();
    Point3::new(r * phi.cos(), r * phi.sin(), z)
}
