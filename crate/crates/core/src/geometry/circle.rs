use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{affine_dim, complement_basis, edge_vectors, AngleKey, Scalar, Vector};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CircleMode {
    /// Every direction on the circle is perpendicular to the simplex.
    #[serde(rename = "perp")]
    Perpendicular,
    /// The simplex spans a hyperplane; `u` is its normal and `w` lies inside it.
    #[serde(rename = "codim1")]
    Codim1,
}

/// A circle of directions `γ(α) ∝ cos α·û + sin α·ŵ` anchored at a point of a
/// simplex's affine hull.
///
/// `γ(0)` is `u` and `γ(π)` is `−u`. Angles on the circle are exchanged as
/// [`AngleKey`]s whose components are coefficients of `u` and `w`, so
/// [`DirectionCircle::direction`] is a positive multiple of the true unit
/// direction at that angle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionCircle {
    base: Vector,
    u: Vector,
    w: Vector,
    mode: CircleMode,
}

impl DirectionCircle {
    pub fn new(base: Vector, u: Vector, w: Vector, mode: CircleMode) -> Result<Self> {
        if u.dim() != base.dim() || w.dim() != base.dim() {
            return Err(Error::InvalidInput("circle vectors have mismatched dimensions".into()));
        }
        if u.is_zero() || w.is_zero() {
            return Err(Error::InvalidInput("circle spanning vectors must be nonzero".into()));
        }
        if !u.dot(&w).is_zero() {
            return Err(Error::InvalidInput("circle spanning vectors must be orthogonal".into()));
        }
        Ok(DirectionCircle { base, u, w, mode })
    }

    /// Maximally perpendicular circle around `points` starting at `s`, with
    /// the second spanning vector chosen by deterministic basis completion.
    pub fn deterministic(points: &[Vector], s: &Vector) -> Result<Self> {
        let d = s.dim();
        let aff = affine_dim(points)?;
        if aff == d {
            return Err(Error::NoPerpendicular(Default::default()));
        }
        let base = points[0].clone();
        if aff + 1 == d {
            let w = codim1_partner(s)?;
            // s must still be the hyperplane normal
            if edge_vectors(points).iter().any(|e| !e.dot(s).is_zero()) {
                return Err(Error::InvalidInput("direction is not perpendicular to the simplex".into()));
            }
            return DirectionCircle::new(base, s.clone(), w, CircleMode::Codim1);
        }
        let basis = complement_basis(points, Some(s))?;
        DirectionCircle::new(base, s.clone(), basis[1].clone(), CircleMode::Perpendicular)
    }

    pub fn base(&self) -> &Vector {
        &self.base
    }

    pub fn u(&self) -> &Vector {
        &self.u
    }

    pub fn w(&self) -> &Vector {
        &self.w
    }

    pub fn mode(&self) -> CircleMode {
        self.mode
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// Same directions, anchored at another point.
    pub fn rebased(&self, base: Vector) -> DirectionCircle {
        DirectionCircle {
            base,
            ..self.clone()
        }
    }

    /// Positive multiple of `γ(α)` for the angle `key`.
    pub fn direction(&self, key: &AngleKey) -> Vector {
        self.u.scale(key.c()).add_scaled(key.s(), &self.w)
    }

    /// The key of `α + π/2`.
    pub fn quarter_turn(&self, key: &AngleKey) -> AngleKey {
        AngleKey::new(
            -(key.s() * self.w.norm_squared()),
            key.c() * self.u.norm_squared(),
        )
    }

    /// Coordinates `(⟨p − c, u⟩, ⟨p − c, w⟩)` of a point in the circle's plane.
    pub fn project(&self, p: &Vector) -> (Scalar, Scalar) {
        let rel = p - &self.base;
        (rel.dot(&self.u), rel.dot(&self.w))
    }

    /// The γ-normal of `p`: the angle at which a halfspace rotating around the
    /// simplex first has `p` on its boundary, with exterior normal `γ(α)`.
    ///
    /// For a point with projection `(a, b)` the normal is `−b·u + a·w`; a point
    /// projecting onto the base gets angle 0. In codimension-one mode the
    /// answer is `γ(0)` when `p` is on or above the hyperplane and `γ(π)`
    /// otherwise.
    pub fn gamma_normal(&self, p: &Vector) -> (AngleKey, Vector) {
        let (a, b) = self.project(p);
        match self.mode {
            CircleMode::Codim1 => {
                if a >= Scalar::zero() {
                    (AngleKey::zero(), self.u.clone())
                } else {
                    (AngleKey::pi(), -&self.u)
                }
            }
            CircleMode::Perpendicular => {
                if a.is_zero() && b.is_zero() {
                    return (AngleKey::zero(), self.u.clone());
                }
                let key = AngleKey::new(-b, a);
                let dir = self.direction(&key);
                (key, dir)
            }
        }
    }

    /// True when `p` projects onto the base point of a perpendicular circle.
    pub fn projects_to_base(&self, p: &Vector) -> bool {
        let (a, b) = self.project(p);
        self.mode == CircleMode::Perpendicular && a.is_zero() && b.is_zero()
    }
}

/// First standard basis vector made orthogonal to `u`.
fn codim1_partner(u: &Vector) -> Result<Vector> {
    (0..u.dim())
        .map(|k| Vector::basis(u.dim(), k).reject_from(u))
        .find(|v| !v.is_zero())
        .ok_or_else(|| Error::InvalidInput("ambient dimension must be at least 2".into()))
}
