use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use super::vector::{format_scalar, Scalar};

/// An exact angle in `[0, 2π)`, stored as a nonzero `(c, s)` pair that is
/// proportional to `(cos, sin)` in the coordinates of one circle.
///
/// Keys are only meaningful relative to the circle that produced them.
/// Ordering never needs the circle's basis lengths: stretching the two axes by
/// positive factors preserves both the half-plane and the cross-product sign.
#[derive(Clone)]
pub struct AngleKey {
    c: Scalar,
    s: Scalar,
}

impl AngleKey {
    /// Panics if both components are zero.
    pub fn new(c: Scalar, s: Scalar) -> Self {
        assert!(
            !(c.is_zero() && s.is_zero()),
            "AngleKey requires a nonzero (c, s) pair"
        );
        AngleKey { c, s }
    }

    pub fn zero() -> Self {
        AngleKey::new(super::int(1), Scalar::zero())
    }

    pub fn pi() -> Self {
        AngleKey::new(super::int(-1), Scalar::zero())
    }

    pub fn c(&self) -> &Scalar {
        &self.c
    }

    pub fn s(&self) -> &Scalar {
        &self.s
    }

    /// `false` for `[0, π)`, `true` for `[π, 2π)`.
    fn lower_half(&self) -> bool {
        self.s.is_negative() || (self.s.is_zero() && self.c.is_negative())
    }

    /// Angle lies in the closed interval `[0, π]`.
    pub fn at_most_pi(&self) -> bool {
        !self.s.is_negative()
    }

    /// Angle lies in `[0, π)`.
    pub fn below_pi(&self) -> bool {
        !self.lower_half()
    }

    pub fn is_zero_angle(&self) -> bool {
        self.s.is_zero() && self.c.is_positive()
    }

    pub fn is_pi(&self) -> bool {
        self.s.is_zero() && self.c.is_negative()
    }

    /// The antipodal angle, `α + π`.
    pub fn opposite(&self) -> AngleKey {
        AngleKey {
            c: -&self.c,
            s: -&self.s,
        }
    }

    /// Sign of the cross product `c₁·s₂ − c₂·s₁`.
    pub fn cross_sign(&self, other: &AngleKey) -> Ordering {
        (&self.c * &other.s - &other.c * &self.s).cmp(&Scalar::zero())
    }

    /// Approximate angle in radians, for display and plotting only.
    pub fn approx_radians(&self) -> f64 {
        use num_traits::ToPrimitive;
        let c = self.c.to_f64().unwrap_or(0.0);
        let s = self.s.to_f64().unwrap_or(0.0);
        let a = s.atan2(c);
        if a < 0.0 {
            a + std::f64::consts::TAU
        } else {
            a
        }
    }
}

impl PartialEq for AngleKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for AngleKey {}

impl PartialOrd for AngleKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AngleKey {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.lower_half().cmp(&other.lower_half()) {
            // same half-plane: a positive cross product means `other` is further counterclockwise
            Ordering::Equal => other.cross_sign(self),
            unequal => unequal,
        }
    }
}

impl fmt::Debug for AngleKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AngleKey({}, {} ≈ {:.4})",
            format_scalar(&self.c),
            format_scalar(&self.s),
            self.approx_radians()
        )
    }
}
