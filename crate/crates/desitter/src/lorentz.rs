//! Minkowski 4-space `R^4_1` with signature `(-,+,+,+)` and its
//! complexification.
//!
//! The first component is the timelike one. The complex-bilinear extension
//! of the inner product does **not** conjugate either argument; pairing a
//! vector with its own conjugate is how real quantities are recovered.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::error::LorentzError;

/// A point or vector of `R^4_1`. Component `0` is timelike.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec4(pub [f64; 4]);

/// A vector of the complexified space `C^4`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CVec4(pub [Complex64; 4]);

impl Vec4 {
    pub const fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        Vec4([x1, x2, x3, x4])
    }

    /// Canonical basis vector `e_i` (0-indexed; `e(0)` is timelike).
    pub fn e(i: usize) -> Self {
        let mut c = [0.0; 4];
        c[i] = 1.0;
        Vec4(c)
    }

    pub fn zero() -> Self {
        Vec4([0.0; 4])
    }

    /// Euclidean norm, used only for scale estimates and degeneracy tests.
    pub fn euclid_norm(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn complexify(&self) -> CVec4 {
        CVec4([
            Complex64::new(self.0[0], 0.0),
            Complex64::new(self.0[1], 0.0),
            Complex64::new(self.0[2], 0.0),
            Complex64::new(self.0[3], 0.0),
        ])
    }
}

impl CVec4 {
    pub const fn new(z1: Complex64, z2: Complex64, z3: Complex64, z4: Complex64) -> Self {
        CVec4([z1, z2, z3, z4])
    }

    pub fn zero() -> Self {
        CVec4([Complex64::ZERO; 4])
    }

    pub fn conj(&self) -> Self {
        CVec4([
            self.0[0].conj(),
            self.0[1].conj(),
            self.0[2].conj(),
            self.0[3].conj(),
        ])
    }

    /// Componentwise real part, as a real vector.
    pub fn re(&self) -> Vec4 {
        Vec4([self.0[0].re, self.0[1].re, self.0[2].re, self.0[3].re])
    }

    /// Componentwise imaginary part, as a real vector.
    pub fn im(&self) -> Vec4 {
        Vec4([self.0[0].im, self.0[1].im, self.0[2].im, self.0[3].im])
    }

    pub fn euclid_norm(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

impl Index<usize> for Vec4 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Index<usize> for CVec4 {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

macro_rules! componentwise {
    ($t:ty, $s:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                let mut c = self.0;
                for i in 0..4 {
                    c[i] = c[i] + rhs.0[i];
                }
                Self(c)
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                let mut c = self.0;
                for i in 0..4 {
                    c[i] = c[i] - rhs.0[i];
                }
                Self(c)
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                let mut c = self.0;
                for i in 0..4 {
                    c[i] = -c[i];
                }
                Self(c)
            }
        }
        impl Mul<$s> for $t {
            type Output = $t;
            fn mul(self, rhs: $s) -> $t {
                let mut c = self.0;
                for i in 0..4 {
                    c[i] = c[i] * rhs;
                }
                Self(c)
            }
        }
    };
}

componentwise!(Vec4, f64);
componentwise!(CVec4, Complex64);

impl Mul<f64> for CVec4 {
    type Output = CVec4;
    fn mul(self, rhs: f64) -> CVec4 {
        self * Complex64::new(rhs, 0.0)
    }
}

impl Mul<CVec4> for Complex64 {
    type Output = CVec4;
    fn mul(self, rhs: CVec4) -> CVec4 {
        rhs * self
    }
}

impl Mul<Vec4> for f64 {
    type Output = Vec4;
    fn mul(self, rhs: Vec4) -> Vec4 {
        rhs * self
    }
}

impl Mul<Vec4> for Complex64 {
    type Output = CVec4;
    fn mul(self, rhs: Vec4) -> CVec4 {
        rhs.complexify() * self
    }
}

/// The Lorentz inner product `-a1 b1 + a2 b2 + a3 b3 + a4 b4`.
pub fn lorentz_dot(a: &Vec4, b: &Vec4) -> f64 {
    -a.0[0] * b.0[0] + a.0[1] * b.0[1] + a.0[2] * b.0[2] + a.0[3] * b.0[3]
}

/// Complex-bilinear extension of [`lorentz_dot`] to `C^4`.
///
/// No argument is conjugated: `dot_c(Z, Z)` can vanish for nonzero `Z`
/// (null vectors), while `dot_c(Z, conj(Z))` is always real.
pub fn lorentz_dot_c(a: &CVec4, b: &CVec4) -> Complex64 {
    -a.0[0] * b.0[0] + a.0[1] * b.0[1] + a.0[2] * b.0[2] + a.0[3] * b.0[3]
}

/// Relative tolerance for deciding lightlike-ness of `v` from `<v,v>`.
pub fn null_epsilon(v: &Vec4) -> f64 {
    let n = v.euclid_norm();
    1e-9 * (n * n).max(1.0)
}

/// Sign classification of a nonzero vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CausalCharacter {
    Timelike,
    Spacelike,
    Lightlike,
}

/// Causal character together with time orientation.
///
/// `future_directed` is `None` for spacelike vectors, where the notion does
/// not apply.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CausalClass {
    pub character: CausalCharacter,
    pub future_directed: Option<bool>,
}

/// Classify a nonzero vector by the sign of `<v,v>`, with tolerance
/// [`null_epsilon`]. Non-spacelike vectors are future directed when their
/// time component is positive.
pub fn causal_character(v: &Vec4) -> Result<CausalClass, LorentzError> {
    if v.euclid_norm() == 0.0 {
        return Err(LorentzError::ZeroVector);
    }
    let q = lorentz_dot(v, v);
    let eps = null_epsilon(v);
    let character = if q.abs() <= eps {
        CausalCharacter::Lightlike
    } else if q < 0.0 {
        CausalCharacter::Timelike
    } else {
        CausalCharacter::Spacelike
    };
    let future_directed = match character {
        CausalCharacter::Spacelike => None,
        _ => Some(v.0[0] > 0.0),
    };
    Ok(CausalClass {
        character,
        future_directed,
    })
}

fn det4(m: &[[f64; 4]; 4]) -> f64 {
    // cofactor expansion along the first row via 3x3 minors
    let minor = |r: [usize; 3], c: [usize; 3]| -> f64 {
        m[r[0]][c[0]] * (m[r[1]][c[1]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[1]])
            - m[r[0]][c[1]] * (m[r[1]][c[0]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[0]])
            + m[r[0]][c[2]] * (m[r[1]][c[0]] * m[r[2]][c[1]] - m[r[1]][c[1]] * m[r[2]][c[0]])
    };
    m[0][0] * minor([1, 2, 3], [1, 2, 3]) - m[0][1] * minor([1, 2, 3], [0, 2, 3])
        + m[0][2] * minor([1, 2, 3], [0, 1, 3])
        - m[0][3] * minor([1, 2, 3], [0, 1, 2])
}

/// Orientation of an ordered basis against the canonical one.
///
/// Returns `+1`/`-1` as the sign of `det[b1 b2 b3 b4]`; a determinant that is
/// negligible against the basis scale is a degenerate basis.
pub fn basis_orientation(
    b1: &Vec4,
    b2: &Vec4,
    b3: &Vec4,
    b4: &Vec4,
) -> Result<i32, LorentzError> {
    let cols = [b1, b2, b3, b4];
    let mut m = [[0.0; 4]; 4];
    for (j, b) in cols.iter().enumerate() {
        for i in 0..4 {
            m[i][j] = b.0[i];
        }
    }
    let det = det4(&m);
    let scale: f64 = cols.iter().map(|b| b.euclid_norm().max(1e-300)).product();
    if det.abs() <= 1e-10 * scale {
        return Err(LorentzError::DegenerateBasis { det });
    }
    Ok(if det > 0.0 { 1 } else { -1 })
}

/// The null basis `c1..c4` of the complexified space.
///
/// Every member is null for the bilinear form; the only nonzero pairings are
/// `<c1,c4> = -2` and `<c2,c3> = 2`.
pub fn c_basis() -> [CVec4; 4] {
    let o = Complex64::ZERO;
    let one = Complex64::ONE;
    let i = Complex64::I;
    [
        CVec4::new(one, o, o, -one),
        CVec4::new(o, one, -i, o),
        CVec4::new(o, one, i, o),
        CVec4::new(one, o, o, one),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_basics() {
        let e1 = Vec4::e(0);
        assert_eq!(lorentz_dot(&e1, &e1), -1.0);
        let l = Vec4::new(1.0, 1.0, 0.0, 0.0);
        assert_eq!(lorentz_dot(&l, &l), 0.0);
        // equals -2|1-i|^2 through the lightlike-ray identity
        let a = Vec4::new(2.0, 2.0, 0.0, 0.0);
        let b = Vec4::new(2.0, 0.0, 2.0, 0.0);
        assert_eq!(lorentz_dot(&a, &b), -4.0);
    }

    #[test]
    fn causal_classification() {
        let l = causal_character(&Vec4::new(1.0, 0.0, 0.0, -1.0)).unwrap();
        assert_eq!(l.character, CausalCharacter::Lightlike);
        assert_eq!(l.future_directed, Some(true));

        let s = causal_character(&Vec4::new(0.0, 1.0, 0.0, 0.0)).unwrap();
        assert_eq!(s.character, CausalCharacter::Spacelike);
        assert_eq!(s.future_directed, None);

        let t = causal_character(&Vec4::new(-2.0, 1.0, 0.0, 0.0)).unwrap();
        assert_eq!(t.character, CausalCharacter::Timelike);
        assert_eq!(t.future_directed, Some(false));

        assert!(causal_character(&Vec4::zero()).is_err());
    }

    #[test]
    fn orientation_signs() {
        let e: Vec<Vec4> = (0..4).map(Vec4::e).collect();
        assert_eq!(basis_orientation(&e[0], &e[1], &e[2], &e[3]).unwrap(), 1);
        assert_eq!(basis_orientation(&e[0], &e[1], &e[3], &e[2]).unwrap(), -1);
        let b1 = e[0] + e[1];
        assert_eq!(basis_orientation(&b1, &e[1], &e[2], &e[3]).unwrap(), 1);
        assert!(basis_orientation(&e[0], &e[0], &e[2], &e[3]).is_err());
    }

    #[test]
    fn c_basis_gram_matrix() {
        let c = c_basis();
        let expected = [
            [0.0, 0.0, 0.0, -2.0],
            [0.0, 0.0, 2.0, 0.0],
            [0.0, 2.0, 0.0, 0.0],
            [-2.0, 0.0, 0.0, 0.0],
        ];
        for i in 0..4 {
            for j in 0..4 {
                let g = lorentz_dot_c(&c[i], &c[j]);
                assert!(
                    (g - Complex64::new(expected[i][j], 0.0)).norm() == 0.0,
                    "C[{i}][{j}] = {g}"
                );
            }
            assert_eq!(lorentz_dot_c(&c[i], &c[i]), Complex64::ZERO);
        }
    }
}
