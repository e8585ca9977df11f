use serde::{Deserialize, Serialize};

/// One vertex of the sign-convention lattice. All flags `false` is the default.
///
/// - `left_verticals`: vertical fields `ξᵢ(h) = −qᵢh` instead of `ξᵢ(h) = hqᵢ`.
/// - `negate_xi3`: replace `ξ₃` by `−ξ₃` (a single sign flip, which breaks the
///   bracket convention). On the Spin(7) instance this flag selects the
///   completion sign `s = +1` instead of `s = −1`.
/// - `negate_reeb`: `ξ* = +ih` instead of `ξ* = −ih`.
/// - `negate_phi`: `φ̂` from left multiplication by `−i` instead of `i`.
/// - `skip_conjugation`: embed frames as `(u₁ + j u₂)/√2` instead of
///   `(u₁ + j ū₂)/√2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(default)]
pub struct ConventionPoint {
    pub left_verticals: bool,
    pub negate_xi3: bool,
    pub negate_reeb: bool,
    pub negate_phi: bool,
    pub skip_conjugation: bool,
}

impl ConventionPoint {
    pub const COUNT: usize = 32;

    pub fn from_index(index: usize) -> Self {
        let bit = |b: usize| index & (1 << b) != 0;
        ConventionPoint {
            left_verticals: bit(0),
            negate_xi3: bit(1),
            negate_reeb: bit(2),
            negate_phi: bit(3),
            skip_conjugation: bit(4),
        }
    }

    pub fn index(&self) -> usize {
        [
            self.left_verticals,
            self.negate_xi3,
            self.negate_reeb,
            self.negate_phi,
            self.skip_conjugation,
        ]
        .iter()
        .enumerate()
        .map(|(b, &f)| (f as usize) << b)
        .sum()
    }

    pub fn all() -> impl Iterator<Item = ConventionPoint> {
        (0..Self::COUNT).map(Self::from_index)
    }

    /// Short human-readable form, e.g. `xi_i = h q_i, xi* = -ih, phi = i, conj`.
    pub fn label(&self) -> String {
        let verticals = match (self.left_verticals, self.negate_xi3) {
            (false, false) => "xi_i = h q_i",
            (false, true) => "xi_i = h q_i, xi_3 negated",
            (true, false) => "xi_i = -q_i h",
            (true, true) => "xi_i = -q_i h, xi_3 negated",
        };
        format!(
            "{verticals}; xi* = {}ih; phi = {}i; {}",
            if self.negate_reeb { "+" } else { "-" },
            if self.negate_phi { "-" } else { "" },
            if self.skip_conjugation { "no conj" } else { "conj" }
        )
    }
}
