//! Quaternions, octonions and the two quaternionic moment maps.
//!
//! All types are generic over [`Real`](crate::geometry::Real) so the same code
//! evaluates constraint maps on plain floats and on dual numbers.
//!
//! Conventions used throughout the crate:
//!
//! - `i·j = k`, `j·k = i`, `k·i = j`.
//! - A quaternion `w + x i + y j + z k` is stored as `[w, x, y, z]`; a vector
//!   `h ∈ ℍⁿ⁺¹` is flattened to `ℝ^{4n+4}` in that order. Left multiplication
//!   by `i` is then the standard complex structure of `ℂ^{2n+2}` on the pairs
//!   `(w, x)` and `(y, z)`.
//! - "Left" actions multiply every entry on the left, "right" actions on the
//!   right. Both are provided under distinct names.

mod moment;
mod octonion;
mod quaternion;

pub use moment::{moment_mu, moment_mu_flat, moment_nu, moment_nu_flat, QuaternionVector};
pub use octonion::{associator, omul, triple_cross, Octonion};
pub use quaternion::{qmul, Quaternion};
