//! The catalog of concrete manifolds, their verification suites and the
//! convention audit.
//!
//! | kind              | manifold                              | `n` means            |
//! |-------------------|---------------------------------------|----------------------|
//! | `circle`          | `S¹` with its trivial Sasakian structure | unused            |
//! | `sphere`          | round `Sⁿ`, `n` odd                   | sphere dimension     |
//! | `three_sasaki`    | `S^{4n+3}` with `ξᵢ = −qᵢx`           | quaternionic rank    |
//! | `product`         | `Sⁿ × S³`, flat connection            | base dimension (odd) |
//! | `stiefel_complex` | `V₂(ℂⁿ⁺¹)` as `μ⁻¹(0) ∩ S^{4n+3}`      | `n ≥ 1`              |
//! | `stiefel_real`    | `Ṽ₄(ℝⁿ⁺¹)` as `ν⁻¹(0) ∩ S^{4n+3}`      | `n ≥ 3`              |
//! | `g2`              | `G₂` as special 3-frames in `ℝ⁷`      | unused               |
//! | `spin7`           | `Spin(7)/Sp(1)` as Cayley 4-frames     | unused               |

mod audit;
mod catalog;
mod checks;
mod convention;
pub mod frames;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use audit::{convention_audit, AuditReport, AuditRow, GUARANTEED_CHECKS};
pub use catalog::{
    embed_block, g2_instance, product_instance, spin7_instance, stiefel_complex, stiefel_real, CayleyFrames, G2Frames,
    MuLevelSet, NuLevelSet, ProductSpheres,
};
pub use checks::{ids, manifold_checks, verify_instance};
pub use convention::ConventionPoint;

use crate::error::{Error, Result};
use crate::geometry::LevelSetManifold;
use crate::hopf::HopfBundleInstance;
use crate::sasaki::{self, SasakianStructure, ThreeSasakianTriple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceKind {
    Circle,
    Sphere,
    ThreeSasaki,
    Product,
    StiefelComplex,
    StiefelReal,
    G2,
    Spin7,
}

impl InstanceKind {
    pub const ALL: [InstanceKind; 8] = [
        InstanceKind::Circle,
        InstanceKind::Sphere,
        InstanceKind::ThreeSasaki,
        InstanceKind::Product,
        InstanceKind::StiefelComplex,
        InstanceKind::StiefelReal,
        InstanceKind::G2,
        InstanceKind::Spin7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InstanceKind::Circle => "circle",
            InstanceKind::Sphere => "sphere",
            InstanceKind::ThreeSasaki => "three_sasaki",
            InstanceKind::Product => "product",
            InstanceKind::StiefelComplex => "stiefel_complex",
            InstanceKind::StiefelReal => "stiefel_real",
            InstanceKind::G2 => "g2",
            InstanceKind::Spin7 => "spin7",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            InstanceKind::Circle => "S^1 with xi = -ix, phi = 0",
            InstanceKind::Sphere => "round S^n (n odd) with xi = -ix, phi = P(i.)",
            InstanceKind::ThreeSasaki => "S^(4n+3) with xi_i = -q_i x",
            InstanceKind::Product => "S^n x S^3 (n odd), flat Hopf bundle",
            InstanceKind::StiefelComplex => "V2(C^(n+1)) as {|h| = 1, mu(h) = 0}, n >= 1",
            InstanceKind::StiefelReal => "V4(R^(n+1)) as {|h| = 1, nu(h) = 0}, n >= 3",
            InstanceKind::G2 => "G2 as frames (e1, e2, e4) in R^7 with e4 orthogonal to e1 e2",
            InstanceKind::Spin7 => "Spin(7)/Sp(1) as Cayley 4-frames in R^8",
        }
    }

    pub fn default_n(self) -> usize {
        match self {
            InstanceKind::Circle | InstanceKind::G2 | InstanceKind::Spin7 => 0,
            InstanceKind::Sphere => 3,
            InstanceKind::ThreeSasaki => 1,
            InstanceKind::Product => 1,
            InstanceKind::StiefelComplex => 2,
            InstanceKind::StiefelReal => 3,
        }
    }

    /// Whether the kind carries a Hopf bundle and hence a convention lattice.
    pub fn has_bundle(self) -> bool {
        matches!(
            self,
            InstanceKind::Product | InstanceKind::StiefelComplex | InstanceKind::StiefelReal
        )
    }
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InstanceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        InstanceKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownInstance(s.to_string()))
    }
}

/// A constructed instance with whichever structures it carries.
#[derive(Clone)]
pub struct InstanceDescriptor {
    pub kind: InstanceKind,
    pub n: usize,
    pub convention: ConventionPoint,
    pub name: String,
    pub manifold: LevelSetManifold,
    pub expected_dim: usize,
    pub bundle: Option<HopfBundleInstance>,
    pub sasakian: Option<SasakianStructure>,
    pub triple: Option<ThreeSasakianTriple>,
    /// Completion sign of the Spin(7) instance.
    pub cayley_sign: f64,
}

impl fmt::Debug for InstanceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InstanceDescriptor")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("convention", &self.convention)
            .field("expected_dim", &self.expected_dim)
            .finish()
    }
}

impl InstanceDescriptor {
    /// Constructs the instance without probing regularity.
    pub fn construct(kind: InstanceKind, n: usize, convention: ConventionPoint) -> Result<Self> {
        let mut d = InstanceDescriptor {
            kind,
            n,
            convention,
            name: String::new(),
            manifold: LevelSetManifold::unit_sphere(2),
            expected_dim: 0,
            bundle: None,
            sasakian: None,
            triple: None,
            cayley_sign: if convention.negate_xi3 { 1.0 } else { -1.0 },
        };
        match kind {
            InstanceKind::Circle => {
                let s = sasaki::trivial_circle_sasaki();
                d.manifold = s.manifold.clone();
                d.sasakian = Some(s);
            }
            InstanceKind::Sphere => {
                let s = sasaki::standard_sphere_sasaki(n)?;
                d.manifold = s.manifold.clone();
                d.sasakian = Some(s);
            }
            InstanceKind::ThreeSasaki => {
                let t = sasaki::sphere_three_sasaki(n);
                d.manifold = t.manifold.clone();
                d.triple = Some(t);
            }
            InstanceKind::Product => {
                let (m, b) = product_instance(n, &convention)?;
                d.manifold = m;
                d.bundle = Some(b);
            }
            InstanceKind::StiefelComplex => {
                let (m, b) = stiefel_complex(n, &convention)?;
                d.manifold = m;
                d.bundle = Some(b);
            }
            InstanceKind::StiefelReal => {
                let (m, b) = stiefel_real(n, &convention)?;
                d.manifold = m;
                d.bundle = Some(b);
            }
            InstanceKind::G2 => d.manifold = g2_instance(),
            InstanceKind::Spin7 => d.manifold = spin7_instance(d.cayley_sign),
        }
        d.expected_dim = d.manifold.expected_dim();
        d.name = match kind {
            InstanceKind::Circle | InstanceKind::G2 | InstanceKind::Spin7 => kind.name().to_string(),
            _ => format!("{} n={n}", kind.name()),
        };
        if kind.has_bundle() {
            d.name = format!("{} [convention {}]", d.name, convention.index());
        }
        Ok(d)
    }

    /// [`InstanceDescriptor::construct`] plus a regularity probe: the Jacobian
    /// corank must equal the declared dimension at a few sampled points.
    pub fn build(kind: InstanceKind, n: usize, convention: ConventionPoint) -> Result<Self> {
        let d = Self::construct(kind, n, convention)?;
        let probes = d.manifold.sample(3, 0x9e37_79b9)?;
        for p in &probes.points {
            d.manifold.check_regular(p)?;
        }
        Ok(d)
    }
}
