//! Plane formation by fully-synchronous mobile robots without chirality.
//!
//! A configuration of anonymous robots in 3D-space is a finite point set. Each
//! robot observes the others in its own local coordinate frame (arbitrary
//! origin, orientation, handedness, and scale), computes a destination with a
//! common algorithm, and all robots move simultaneously. This crate provides:
//!
//! - tolerance-based geometric primitives ([`geom`], [`hull`]),
//! - detection and Schoenflies classification of the full symmetry group of a
//!   point set ([`symmetry`], [`schoenflies`]),
//! - orbit decompositions and chirality-free local views ([`orbits`]),
//! - symmetricity (the symmetry the robots can never break) and the
//!   solvability predicate for plane formation ([`symmetricity`]),
//! - the plane formation algorithm itself as a pure function from a local
//!   snapshot to a move intent ([`formation`]),
//! - an FSYNC executor with adversarial frame assignments ([`sim`]),
//! - slow brute-force oracles for differential testing ([`oracle`]).
//!
//! The crate is `no_std` (`alloc` only); all operations are pure functions of
//! their inputs.

#![no_std]

extern crate alloc;

pub mod error;
pub mod geom;
pub mod hull;
pub mod schoenflies;
mod elements;
pub mod symmetry;
pub mod families;
pub mod polyhedra;
pub mod orbits;
pub mod symmetricity;
pub mod formation;
pub mod sim;
pub mod oracle;
pub(crate) mod rngutil;

pub use error::Error;
pub use geom::{Ball, Configuration, OrthoMap, Plane, Point3};
pub use schoenflies::Schoenflies;
pub use symmetry::PointGroup;

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
