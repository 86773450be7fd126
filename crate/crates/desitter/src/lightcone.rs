//! Stereographic projection of the future light cone, the normalized
//! lightlike lift `L(x)`, the null 4-vector `W(x, y)`, and the quadrics of
//! `CP^3` that parameterize oriented spacelike and timelike planes.

use num_complex::Complex64;

use crate::error::LightconeError;
use crate::lorentz::{lorentz_dot, lorentz_dot_c, null_epsilon, CVec4, Vec4};

/// A point of the Riemann sphere: a finite complex number or infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtendedComplex {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            ExtendedComplex::Finite(z) => Some(z),
            ExtendedComplex::Infinity => None,
        }
    }

    pub fn is_infinity(self) -> bool {
        matches!(self, ExtendedComplex::Infinity)
    }
}

impl From<Complex64> for ExtendedComplex {
    fn from(z: Complex64) -> Self {
        ExtendedComplex::Finite(z)
    }
}

/// A point of `CP^3`, held as a nonzero representative of its class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectivePoint {
    rep: CVec4,
}

impl ProjectivePoint {
    pub fn new(rep: CVec4) -> Result<Self, LightconeError> {
        if rep.euclid_norm() == 0.0 {
            return Err(LightconeError::ZeroRepresentative);
        }
        Ok(ProjectivePoint { rep })
    }

    pub fn representative(&self) -> &CVec4 {
        &self.rep
    }
}

/// Tolerance below which two generator values count as coincident.
pub fn separation_epsilon(x: Complex64, y: Complex64) -> f64 {
    1e-10 * (1.0 + x.norm() + y.norm())
}

/// Stereographic image of a lightlike ray, `(L2 + i L3)/(L1 - L4)`,
/// with no causal checks. Invariant under rescaling by any nonzero real,
/// including negative scales.
pub fn ray_stereographic(l: &Vec4) -> ExtendedComplex {
    let denom = l[0] - l[3];
    let num = Complex64::new(l[1], l[2]);
    // the ray through (1,0,0,1) is the only one sent to infinity
    if denom.abs() <= 1e-14 * l.euclid_norm().max(1.0) {
        ExtendedComplex::Infinity
    } else {
        ExtendedComplex::Finite(num / denom)
    }
}

/// Stereographic projection of a future-directed lightlike vector.
pub fn stereographic(l: &Vec4) -> Result<ExtendedComplex, LightconeError> {
    let q = lorentz_dot(l, l);
    if q.abs() > null_epsilon(l) {
        return Err(LightconeError::NotLightlike { q });
    }
    if l[0] <= 0.0 {
        return Err(LightconeError::PastDirected { t: l[0] });
    }
    Ok(ray_stereographic(l))
}

/// The normalized lightlike lift `L(x) = (1 + x conj(x), x + conj(x),
/// -i(x - conj(x)), -1 + x conj(x))`.
///
/// Always future directed, and `stereographic(lift(x)) = x`. The lift of
/// infinity is fixed to the representative `(1, 0, 0, 1)`.
pub fn lift(x: ExtendedComplex) -> Vec4 {
    match x {
        ExtendedComplex::Infinity => Vec4::new(1.0, 0.0, 0.0, 1.0),
        ExtendedComplex::Finite(z) => {
            let r2 = z.norm_sqr();
            Vec4::new(1.0 + r2, 2.0 * z.re, 2.0 * z.im, -1.0 + r2)
        }
    }
}

/// The complex null vector `W(x, y) = (1 + x conj(y), x + conj(y),
/// -i(x - conj(y)), -1 + x conj(y))`.
///
/// With its conjugate it spans the spacelike plane orthogonal to the rays
/// `L(x)` and `L(y)`. Satisfies `<W,W> = 0`, `<W,conj W> = 2|x-y|^2` and
/// `W(y,x) = conj(W(x,y))`. The infinity conventions are
/// `W(x, inf) = (x, 1, i, x)` and `W(inf, y) = (conj y, 1, -i, conj y)`;
/// `W(inf, inf)` is rejected.
pub fn pair_to_w(x: ExtendedComplex, y: ExtendedComplex) -> Result<CVec4, LightconeError> {
    let i = Complex64::I;
    let one = Complex64::ONE;
    match (x, y) {
        (ExtendedComplex::Infinity, ExtendedComplex::Infinity) => {
            Err(LightconeError::DoubleInfinity)
        }
        (ExtendedComplex::Finite(x), ExtendedComplex::Infinity) => {
            Ok(CVec4::new(x, one, i, x))
        }
        (ExtendedComplex::Infinity, ExtendedComplex::Finite(y)) => {
            let yb = y.conj();
            Ok(CVec4::new(yb, one, -i, yb))
        }
        (ExtendedComplex::Finite(x), ExtendedComplex::Finite(y)) => {
            let sep = (x - y).norm();
            if sep <= separation_epsilon(x, y) {
                return Err(LightconeError::DegeneratePair { sep });
            }
            Ok(w_unchecked(x, y))
        }
    }
}

/// `W(x, y)` for finite arguments without the separation check; callers that
/// mask degenerate nodes use this directly.
pub fn w_unchecked(x: Complex64, y: Complex64) -> CVec4 {
    let i = Complex64::I;
    let yb = y.conj();
    CVec4::new(
        Complex64::ONE + x * yb,
        x + yb,
        -i * (x - yb),
        -Complex64::ONE + x * yb,
    )
}

/// Which quadric of `CP^3` a projective point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadricClass {
    /// `<Z,Z> = 0` and `<Z,conj Z> > 0`: an oriented spacelike plane.
    Space,
    /// `<Z,conj Z> = 0` and `<Z,Z> != 0`: an oriented timelike plane.
    Time,
    Neither,
}

/// Membership test for the two quadrics; invariant under rescaling the
/// representative.
pub fn quadric_membership(z: &ProjectivePoint) -> QuadricClass {
    let rep = z.representative();
    let scale = {
        let n = rep.euclid_norm();
        (n * n).max(1e-300)
    };
    let zz = lorentz_dot_c(rep, rep);
    let zzbar = lorentz_dot_c(rep, &rep.conj());
    let eps = 1e-9 * scale;
    if zz.norm() <= eps && zzbar.re > eps {
        QuadricClass::Space
    } else if zzbar.norm() <= eps && zz.norm() > eps {
        QuadricClass::Time
    } else {
        QuadricClass::Neither
    }
}

/// The bijection from an oriented isotropic plane `span{L1, L2}` to the
/// point `[W(st(L1), st(L2))]` of the spacelike quadric.
pub fn plane_to_quadric(l1: &Vec4, l2: &Vec4) -> Result<ProjectivePoint, LightconeError> {
    let x = stereographic(l1)?;
    let y = stereographic(l2)?;
    let w = pair_to_w(x, y).map_err(|e| match e {
        LightconeError::DegeneratePair { .. } | LightconeError::DoubleInfinity => {
            LightconeError::DegeneratePlane
        }
        other => other,
    })?;
    ProjectivePoint::new(w)
}
