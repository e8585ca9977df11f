//! Numerical verification engine for complex structures on induced Hopf
//! S³-bundles over Sasakian manifolds.
//!
//! Every manifold in this crate is a level set `F(x) = 0` in a Euclidean space
//! and every tensor field is an ambient formula evaluated pointwise. Derivatives
//! are taken in forward mode with dual numbers, so Lie brackets, exterior
//! derivatives and Nijenhuis tensors are exact up to floating-point roundoff.
//!
//! The crate is organized bottom-up:
//!
//! - [`algebra`]: quaternions, octonions, quaternionic vectors and moment maps.
//! - [`geometry`]: dual numbers, level-set manifolds, fields and first-order calculus.
//! - [`sasaki`]: Sasakian and 3-Sasakian structures with an axiom verifier.
//! - [`hopf`]: induced Hopf bundles, the almost complex structure `J` and its
//!   integrability checks.
//! - [`instances`]: the catalog of concrete manifolds and the convention audit.
//! - [`report`]: structured residual reports with deterministic JSON output.
//! - [`probe`]: parallel per-point evaluation with order-stable aggregation.

pub mod algebra;
pub mod error;
pub mod geometry;
pub mod hopf;
pub mod instances;
pub mod probe;
pub mod report;
pub mod sasaki;

pub use algebra::{Octonion, Quaternion, QuaternionVector};
pub use error::{Error, Result};
pub use geometry::{
    EndoRef, EndomorphismField, FieldRef, LevelSetManifold, OneForm, Point, Real, Scalar, Tolerances, VectorField,
};
pub use hopf::{FiberMatrix, HopfBundleInstance, JStructure};
pub use instances::{ConventionPoint, InstanceDescriptor, InstanceKind};
pub use probe::ProbeConfig;
pub use report::{CheckRecord, CheckStatus, VerificationReport};
pub use sasaki::{SasakianStructure, ThreeSasakianTriple};
