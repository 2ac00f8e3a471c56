//! Stretch constants used to decide pass or fail in verification.

use crate::geom::Epsilon;

/// Constants of the stretch analysis.
///
/// `c_s` bounds how far a point sits from its node's representative, in units
/// of ε times the node's scale. The others chain from it:
///
/// * `c_u = 4 c_s / (1 - 2 c_s ε)` for unit disk graphs,
/// * `c_2 = c_s (2 + c_u ε)`,
/// * `c_1 = c_2 + 2 c_s + 2 c_2 c_s ε`,
/// * `c_d = c_1 + c_u + c_1 c_u ε` for disk graphs.
///
/// `c_u` is only finite for `ε < 1/(2 c_s)`, and for ε near that pole the
/// bound `1 + c ε` grows past the trivial stretch of a connected path, so
/// bounds are floored at [`StretchConstants::FLOOR`] for `ε >= 1/8` and set
/// to the floor when the denominator is not positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StretchConstants {
    pub c_s: f64,
    pub c_u: f64,
    pub c_1: f64,
    pub c_2: f64,
    pub c_d: f64,
    /// False when `1 - 2 c_s ε <= 0` and the chain has no finite value.
    pub finite: bool,
    pub eps: f64,
}

impl StretchConstants {
    pub const FLOOR: f64 = 3.0;

    pub fn for_eps(eps: Epsilon) -> Self {
        let e = eps.value();
        let c_s = 2.0 * std::f64::consts::SQRT_2;
        let denom = 1.0 - 2.0 * c_s * e;
        if denom <= 0.0 {
            let inf = f64::INFINITY;
            return StretchConstants { c_s, c_u: inf, c_1: inf, c_2: inf, c_d: inf, finite: false, eps: e };
        }
        let c_u = 4.0 * c_s / denom;
        let c_2 = c_s * (2.0 + c_u * e);
        let c_1 = c_2 + 2.0 * c_s + 2.0 * c_2 * c_s * e;
        let c_d = c_1 + c_u + c_1 * c_u * e;
        StretchConstants { c_s, c_u, c_1, c_2, c_d, finite: true, eps: e }
    }

    fn clamp(&self, c: f64) -> f64 {
        if !self.finite {
            return Self::FLOOR;
        }
        let b = 1.0 + c * self.eps;
        if self.eps >= 0.125 {
            b.max(Self::FLOOR)
        } else {
            b
        }
    }

    /// Edge-wise stretch bound for the unit-disk spanner.
    pub fn udg_bound(&self) -> f64 {
        self.clamp(self.c_u)
    }

    /// Edge-wise stretch bound for the disk-graph spanner.
    pub fn dg_bound(&self) -> f64 {
        self.clamp(self.c_d)
    }

    /// Bound of the modified Yao graph.
    pub fn yao_bound(&self) -> f64 {
        1.0 + self.eps
    }
}
