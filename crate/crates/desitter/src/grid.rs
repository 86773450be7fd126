//! Rectangular parameter grids and sampled fields.
//!
//! A [`Field`] stores one value per node plus a validity mask. Finite
//! differences are second order: 3-point central stencils inside, 3-point
//! (first derivative) or 4-point (second derivative) one-sided stencils at
//! the boundary. Where a stencil would cross a masked-out node the opposite
//! one-sided stencil is tried; if none fits, the output node is masked out.
//!
//! One thing that bit us early: composing `d_du` with itself is *not* second
//! order near the boundary, because the truncation constant jumps between the
//! one-sided and central rows and the second pass divides that jump by `h`.
//! Same-axis second derivatives therefore go through the direct stencils
//! [`Field::d_duu`] / [`Field::d_dvv`]; mixed ones compose across different
//! axes, which is safe.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::GridError;
use crate::lorentz::{CVec4, Vec4};

/// A uniform rectangular grid on `[u_min, u_max] x [v_min, v_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: f64,
    pub v_max: f64,
    pub nu: usize,
    pub nv: usize,
}

impl Grid {
    pub fn new(
        u_min: f64,
        u_max: f64,
        v_min: f64,
        v_max: f64,
        nu: usize,
        nv: usize,
    ) -> Result<Self, GridError> {
        if nu < 5 || nv < 5 {
            return Err(GridError::TooFewNodes { nu, nv });
        }
        if !(u_min < u_max && v_min < v_max)
            || !u_min.is_finite()
            || !u_max.is_finite()
            || !v_min.is_finite()
            || !v_max.is_finite()
        {
            return Err(GridError::BadExtent);
        }
        Ok(Grid {
            u_min,
            u_max,
            v_min,
            v_max,
            nu,
            nv,
        })
    }

    /// The default desk-scale grid: 201 x 201 on `[-1,1]^2`, `h = 0.01`.
    pub fn default_square() -> Self {
        Grid::new(-1.0, 1.0, -1.0, 1.0, 201, 201).unwrap()
    }

    pub fn h_u(&self) -> f64 {
        (self.u_max - self.u_min) / (self.nu - 1) as f64
    }

    pub fn h_v(&self) -> f64 {
        (self.v_max - self.v_min) / (self.nv - 1) as f64
    }

    pub fn nodes(&self) -> usize {
        self.nu * self.nv
    }

    pub fn u(&self, i: usize) -> f64 {
        self.u_min + self.h_u() * i as f64
    }

    pub fn v(&self, j: usize) -> f64 {
        self.v_min + self.h_v() * j as f64
    }

    /// Flat index of node `(i, j)`; `i` runs along `u` and fastest.
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.nu + i
    }

    pub fn w(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(self.u(i), self.v(j))
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        let eps_u = 1e-12 * (1.0 + self.u_max.abs() + self.u_min.abs());
        let eps_v = 1e-12 * (1.0 + self.v_max.abs() + self.v_min.abs());
        u >= self.u_min - eps_u
            && u <= self.u_max + eps_u
            && v >= self.v_min - eps_v
            && v <= self.v_max + eps_v
    }

    /// Node nearest to the point `(u, v)`.
    pub fn nearest_node(&self, u: f64, v: f64) -> (usize, usize) {
        let i = ((u - self.u_min) / self.h_u()).round().clamp(0.0, (self.nu - 1) as f64);
        let j = ((v - self.v_min) / self.h_v()).round().clamp(0.0, (self.nv - 1) as f64);
        (i as usize, j as usize)
    }
}

/// Value types a field can carry: closed under the linear operations the
/// stencils need, with a norm for residual statistics.
pub trait FieldValue: Copy {
    fn zero() -> Self;
    fn add(self, rhs: Self) -> Self;
    fn sub(self, rhs: Self) -> Self;
    fn scale(self, s: f64) -> Self;
    fn norm(self) -> f64;
    fn is_finite(self) -> bool;
}

impl FieldValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(self, rhs: Self) -> Self {
        self + rhs
    }
    fn sub(self, rhs: Self) -> Self {
        self - rhs
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn norm(self) -> f64 {
        self.abs()
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

impl FieldValue for Complex64 {
    fn zero() -> Self {
        Complex64::ZERO
    }
    fn add(self, rhs: Self) -> Self {
        self + rhs
    }
    fn sub(self, rhs: Self) -> Self {
        self - rhs
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn norm(self) -> f64 {
        Complex64::norm(self)
    }
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl FieldValue for Vec4 {
    fn zero() -> Self {
        Vec4::zero()
    }
    fn add(self, rhs: Self) -> Self {
        self + rhs
    }
    fn sub(self, rhs: Self) -> Self {
        self - rhs
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn norm(self) -> f64 {
        self.euclid_norm()
    }
    fn is_finite(self) -> bool {
        Vec4::is_finite(&self)
    }
}

impl FieldValue for CVec4 {
    fn zero() -> Self {
        CVec4::zero()
    }
    fn add(self, rhs: Self) -> Self {
        self + rhs
    }
    fn sub(self, rhs: Self) -> Self {
        self - rhs
    }
    fn scale(self, s: f64) -> Self {
        self * Complex64::new(s, 0.0)
    }
    fn norm(self) -> f64 {
        self.euclid_norm()
    }
    fn is_finite(self) -> bool {
        CVec4::is_finite(&self)
    }
}

/// A sampled field over a [`Grid`] with a per-node validity mask.
#[derive(Debug, Clone, PartialEq)]
pub struct Field<T> {
    pub grid: Grid,
    values: Vec<T>,
    mask: Vec<bool>,
}

/// Complex scalar samples; the workhorse type.
pub type ScalarField = Field<Complex64>;
/// Real scalar samples (conformal factors, angles, curvatures).
pub type RealField = Field<f64>;
/// Fields of real 4-vectors (frames).
pub type VectorField = Field<Vec4>;
/// Fields of complex 4-vectors (`W` and friends).
pub type CVectorField = Field<CVec4>;

#[derive(Clone, Copy)]
enum Axis {
    U,
    V,
}

impl<T: FieldValue> Field<T> {
    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64) -> T) -> Self {
        let mut values = Vec::with_capacity(grid.nodes());
        for j in 0..grid.nv {
            for i in 0..grid.nu {
                values.push(f(grid.u(i), grid.v(j)));
            }
        }
        Field {
            grid,
            values,
            mask: vec![true; grid.nodes()],
        }
    }

    pub fn constant(grid: Grid, value: T) -> Self {
        Field {
            grid,
            values: vec![value; grid.nodes()],
            mask: vec![true; grid.nodes()],
        }
    }

    pub fn from_values(grid: Grid, values: Vec<T>) -> Result<Self, GridError> {
        if values.len() != grid.nodes() {
            return Err(GridError::LengthMismatch {
                len: values.len(),
                nodes: grid.nodes(),
            });
        }
        Ok(Field {
            grid,
            values,
            mask: vec![true; grid.nodes()],
        })
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[self.grid.idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        let idx = self.grid.idx(i, j);
        self.values[idx] = value;
    }

    pub fn is_valid(&self, i: usize, j: usize) -> bool {
        self.mask[self.grid.idx(i, j)]
    }

    pub fn set_valid(&mut self, i: usize, j: usize, valid: bool) {
        let idx = self.grid.idx(i, j);
        self.mask[idx] = valid;
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn set_mask(&mut self, mask: Vec<bool>) -> Result<(), GridError> {
        if mask.len() != self.grid.nodes() {
            return Err(GridError::LengthMismatch {
                len: mask.len(),
                nodes: self.grid.nodes(),
            });
        }
        self.mask = mask;
        Ok(())
    }

    /// Restrict the mask to nodes valid in both fields.
    pub fn intersect_mask(&mut self, other: &[bool]) {
        for (m, o) in self.mask.iter_mut().zip(other) {
            *m = *m && *o;
        }
    }

    pub fn valid_count(&self) -> usize {
        self.mask.iter().filter(|m| **m).count()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn map<U: FieldValue>(&self, f: impl Fn(T) -> U) -> Field<U> {
        Field {
            grid: self.grid,
            values: self.values.iter().map(|v| f(*v)).collect(),
            mask: self.mask.clone(),
        }
    }

    /// Combine two fields node by node; the result is valid where both are.
    pub fn zip_map<U: FieldValue, V: FieldValue>(
        &self,
        other: &Field<U>,
        f: impl Fn(T, U) -> V,
    ) -> Field<V> {
        assert_eq!(self.grid, other.grid, "zip_map needs a shared grid");
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| f(*a, *b))
            .collect();
        let mask = self
            .mask
            .iter()
            .zip(&other.mask)
            .map(|(a, b)| *a && *b)
            .collect();
        Field {
            grid: self.grid,
            values,
            mask,
        }
    }

    /// Visit every masked-in node as `(i, j, value)`.
    pub fn for_each_valid(&self, mut f: impl FnMut(usize, usize, T)) {
        for j in 0..self.grid.nv {
            for i in 0..self.grid.nu {
                if self.mask[self.grid.idx(i, j)] {
                    f(i, j, self.values[self.grid.idx(i, j)]);
                }
            }
        }
    }

    fn stencil_1st(&self, axis: Axis, i: usize, j: usize, h: f64) -> Option<T> {
        let n = match axis {
            Axis::U => self.grid.nu,
            Axis::V => self.grid.nv,
        };
        let pos = match axis {
            Axis::U => i,
            Axis::V => j,
        };
        let at = |p: usize| -> Option<T> {
            let (ii, jj) = match axis {
                Axis::U => (p, j),
                Axis::V => (i, p),
            };
            let idx = self.grid.idx(ii, jj);
            if self.mask[idx] {
                Some(self.values[idx])
            } else {
                None
            }
        };
        // central first, then forward/backward one-sided
        if pos >= 1 && pos + 1 < n {
            if let (Some(a), Some(b)) = (at(pos - 1), at(pos + 1)) {
                return Some(b.sub(a).scale(0.5 / h));
            }
        }
        if pos + 2 < n {
            if let (Some(f0), Some(f1), Some(f2)) = (at(pos), at(pos + 1), at(pos + 2)) {
                // (-3 f0 + 4 f1 - f2) / 2h
                return Some(
                    f1.scale(4.0).sub(f0.scale(3.0)).sub(f2).scale(0.5 / h),
                );
            }
        }
        if pos >= 2 {
            if let (Some(f0), Some(f1), Some(f2)) = (at(pos), at(pos - 1), at(pos - 2)) {
                return Some(
                    f0.scale(3.0).sub(f1.scale(4.0)).add(f2).scale(0.5 / h),
                );
            }
        }
        None
    }

    fn stencil_2nd(&self, axis: Axis, i: usize, j: usize, h: f64) -> Option<T> {
        let n = match axis {
            Axis::U => self.grid.nu,
            Axis::V => self.grid.nv,
        };
        let pos = match axis {
            Axis::U => i,
            Axis::V => j,
        };
        let at = |p: usize| -> Option<T> {
            let (ii, jj) = match axis {
                Axis::U => (p, j),
                Axis::V => (i, p),
            };
            let idx = self.grid.idx(ii, jj);
            if self.mask[idx] {
                Some(self.values[idx])
            } else {
                None
            }
        };
        let h2 = h * h;
        if pos >= 1 && pos + 1 < n {
            if let (Some(a), Some(m), Some(b)) = (at(pos - 1), at(pos), at(pos + 1)) {
                return Some(a.add(b).sub(m.scale(2.0)).scale(1.0 / h2));
            }
        }
        if pos + 3 < n {
            if let (Some(f0), Some(f1), Some(f2), Some(f3)) =
                (at(pos), at(pos + 1), at(pos + 2), at(pos + 3))
            {
                // (2 f0 - 5 f1 + 4 f2 - f3) / h^2
                return Some(
                    f0.scale(2.0)
                        .sub(f1.scale(5.0))
                        .add(f2.scale(4.0))
                        .sub(f3)
                        .scale(1.0 / h2),
                );
            }
        }
        if pos >= 3 {
            if let (Some(f0), Some(f1), Some(f2), Some(f3)) =
                (at(pos), at(pos - 1), at(pos - 2), at(pos - 3))
            {
                return Some(
                    f0.scale(2.0)
                        .sub(f1.scale(5.0))
                        .add(f2.scale(4.0))
                        .sub(f3)
                        .scale(1.0 / h2),
                );
            }
        }
        None
    }

    fn derive(&self, axis: Axis, order: u8) -> Field<T> {
        let h = match axis {
            Axis::U => self.grid.h_u(),
            Axis::V => self.grid.h_v(),
        };
        let mut out = Field {
            grid: self.grid,
            values: vec![T::zero(); self.grid.nodes()],
            mask: vec![false; self.grid.nodes()],
        };
        for j in 0..self.grid.nv {
            for i in 0..self.grid.nu {
                let idx = self.grid.idx(i, j);
                if !self.mask[idx] {
                    continue;
                }
                let d = match order {
                    1 => self.stencil_1st(axis, i, j, h),
                    _ => self.stencil_2nd(axis, i, j, h),
                };
                if let Some(v) = d {
                    out.values[idx] = v;
                    out.mask[idx] = true;
                }
            }
        }
        out
    }

    /// First partial along `u`.
    pub fn d_du(&self) -> Field<T> {
        self.derive(Axis::U, 1)
    }

    /// First partial along `v`.
    pub fn d_dv(&self) -> Field<T> {
        self.derive(Axis::V, 1)
    }

    /// Second partial along `u`, by a direct stencil.
    pub fn d_duu(&self) -> Field<T> {
        self.derive(Axis::U, 2)
    }

    /// Second partial along `v`, by a direct stencil.
    pub fn d_dvv(&self) -> Field<T> {
        self.derive(Axis::V, 2)
    }

    /// Mixed second partial, composed across the two axes.
    pub fn d_dudv(&self) -> Field<T> {
        self.d_du().d_dv()
    }

    /// 5-point Laplacian `F_uu + F_vv`.
    pub fn laplacian(&self) -> Field<T> {
        let a = self.d_duu();
        let b = self.d_dvv();
        a.zip_map(&b, |x, y| x.add(y))
    }

    /// Largest node norm over the mask; 0 for an empty mask.
    pub fn max_norm(&self) -> f64 {
        let mut m = 0.0f64;
        self.for_each_valid(|_, _, v| m = m.max(v.norm()));
        m
    }

    /// Bilinear interpolation at `(u, v)`; the four surrounding nodes must
    /// be inside the grid and masked in.
    pub fn interpolate(&self, u: f64, v: f64) -> Result<T, GridError> {
        if !self.grid.contains(u, v) {
            return Err(GridError::PathOutsideDomain { u, v });
        }
        let hu = self.grid.h_u();
        let hv = self.grid.h_v();
        let fi = ((u - self.grid.u_min) / hu).clamp(0.0, (self.grid.nu - 1) as f64);
        let fj = ((v - self.grid.v_min) / hv).clamp(0.0, (self.grid.nv - 1) as f64);
        let i0 = (fi.floor() as usize).min(self.grid.nu - 2);
        let j0 = (fj.floor() as usize).min(self.grid.nv - 2);
        let s = fi - i0 as f64;
        let t = fj - j0 as f64;
        for (di, dj) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            if !self.mask[self.grid.idx(i0 + di, j0 + dj)] {
                return Err(GridError::PathOutsideDomain { u, v });
            }
        }
        let f00 = self.get(i0, j0);
        let f10 = self.get(i0 + 1, j0);
        let f01 = self.get(i0, j0 + 1);
        let f11 = self.get(i0 + 1, j0 + 1);
        let a = f00.scale((1.0 - s) * (1.0 - t));
        let b = f10.scale(s * (1.0 - t));
        let c = f01.scale((1.0 - s) * t);
        let d = f11.scale(s * t);
        Ok(a.add(b).add(c).add(d))
    }
}

impl ScalarField {
    /// Sample a function of the complex coordinate `w = u + iv`.
    pub fn from_w_fn(grid: Grid, f: impl Fn(Complex64) -> Complex64) -> Self {
        Field::from_fn(grid, |u, v| f(Complex64::new(u, v)))
    }

    /// Wirtinger derivative `F_w = (F_u - i F_v)/2`.
    pub fn d_dw(&self) -> ScalarField {
        let fu = self.d_du();
        let fv = self.d_dv();
        fu.zip_map(&fv, |a, b| (a - Complex64::I * b) * 0.5)
    }

    /// Conjugate Wirtinger derivative `F_wbar = (F_u + i F_v)/2`.
    pub fn d_dwbar(&self) -> ScalarField {
        let fu = self.d_du();
        let fv = self.d_dv();
        fu.zip_map(&fv, |a, b| (a + Complex64::I * b) * 0.5)
    }

    /// Second Wirtinger derivative `F_ww = (F_uu - F_vv - 2i F_uv)/4`,
    /// assembled from direct same-axis stencils and one cross-axis
    /// composition so it stays second order up to the boundary.
    pub fn d_dw2(&self) -> ScalarField {
        let fuu = self.d_duu();
        let fvv = self.d_dvv();
        let fuv = self.d_dudv();
        let a = fuu.zip_map(&fvv, |x, y| x - y);
        a.zip_map(&fuv, |x, y| (x - 2.0 * Complex64::I * y) * 0.25)
    }

    pub fn conj_field(&self) -> ScalarField {
        self.map(|z| z.conj())
    }

    pub fn re_field(&self) -> RealField {
        self.map(|z| z.re)
    }

    pub fn im_field(&self) -> RealField {
        self.map(|z| z.im)
    }
}

impl RealField {
    pub fn into_complex(&self) -> ScalarField {
        self.map(|x| Complex64::new(x, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Grid {
        Grid::new(-1.0, 1.0, -1.0, 1.0, 41, 41).unwrap()
    }

    #[test]
    fn grid_invariants() {
        assert!(Grid::new(0.0, 1.0, 0.0, 1.0, 4, 10).is_err());
        assert!(Grid::new(1.0, 0.0, 0.0, 1.0, 10, 10).is_err());
        let g = Grid::default_square();
        assert!((g.h_u() - 0.01).abs() < 1e-15);
        assert_eq!(g.nodes(), 201 * 201);
    }

    #[test]
    fn linear_fields_differentiate_exactly() {
        let f = Field::from_fn(grid(), |u, _| Complex64::new(u, 0.0));
        let du = f.d_du();
        du.for_each_valid(|_, _, v| assert!((v - Complex64::ONE).norm() < 1e-13));
        let dv = f.d_dv();
        dv.for_each_valid(|_, _, v| assert!(v.norm() < 1e-13));

        let c = Field::constant(grid(), Complex64::new(3.0, -1.0));
        c.d_du()
            .for_each_valid(|_, _, v| assert!(v.norm() == 0.0));
    }

    #[test]
    fn exponential_derivative_error_is_second_order() {
        let f = |g: Grid| Field::from_fn(g, |u, _| Complex64::new(u.exp(), 0.0));
        let err = |g: Grid| {
            let d = f(g).d_du();
            let mut e = 0.0f64;
            d.for_each_valid(|i, _, v| e = e.max((v.re - g.u(i).exp()).abs()));
            e
        };
        let g1 = Grid::new(-1.0, 1.0, -1.0, 1.0, 51, 51).unwrap();
        let g2 = Grid::new(-1.0, 1.0, -1.0, 1.0, 101, 101).unwrap();
        let e1 = err(g1);
        let e2 = err(g2);
        assert!(e1 <= g1.h_u() * g1.h_u() * std::f64::consts::E * 1.5);
        assert!(e1 / e2 >= 3.5, "order loss: {e1:e} vs {e2:e}");
    }

    #[test]
    fn wirtinger_on_holomorphic_and_antiholomorphic() {
        let g = grid();
        let f = ScalarField::from_w_fn(g, |w| w);
        f.d_dw()
            .for_each_valid(|_, _, v| assert!((v - Complex64::ONE).norm() < 1e-12));
        f.d_dwbar()
            .for_each_valid(|_, _, v| assert!(v.norm() < 1e-12));

        let fbar = ScalarField::from_w_fn(g, |w| w.conj());
        fbar.d_dw()
            .for_each_valid(|_, _, v| assert!(v.norm() < 1e-12));
        fbar.d_dwbar()
            .for_each_valid(|_, _, v| assert!((v - Complex64::ONE).norm() < 1e-12));
    }

    #[test]
    fn wirtinger_square_value() {
        let g = grid();
        let f = ScalarField::from_w_fn(g, |w| w * w);
        let dw = f.d_dw();
        let (i, j) = g.nearest_node(1.0, 1.0);
        // analytic derivative 2w at w = 1+i; quadratic, so exact up to rounding
        let got = dw.get(i, j);
        assert!((got - Complex64::new(2.0, 2.0)).norm() < 1e-11);
    }

    #[test]
    fn conjugation_symmetry_of_wirtinger() {
        let g = grid();
        let f = ScalarField::from_w_fn(g, |w| (w * Complex64::new(0.3, 1.2)).exp());
        let lhs = f.d_dwbar();
        let rhs = f.conj_field().d_dw().conj_field();
        lhs.zip_map(&rhs, |a, b| a - b)
            .for_each_valid(|_, _, v| assert!(v.norm() < 1e-12));
    }

    #[test]
    fn second_derivatives_direct_stencils() {
        let g = grid();
        let f = Field::from_fn(g, |u, v| Complex64::new(u * u + 3.0 * v * v, u * v));
        f.d_duu()
            .for_each_valid(|_, _, x| assert!((x - Complex64::new(2.0, 0.0)).norm() < 1e-9));
        f.d_dvv()
            .for_each_valid(|_, _, x| assert!((x - Complex64::new(6.0, 0.0)).norm() < 1e-9));
        f.d_dudv()
            .for_each_valid(|_, _, x| assert!((x - Complex64::new(0.0, 1.0)).norm() < 1e-9));
    }

    #[test]
    fn mask_shrinks_across_holes() {
        let g = grid();
        let mut f = Field::from_fn(g, |u, _| Complex64::new(u * u, 0.0));
        f.set_valid(20, 20, false);
        let du = f.d_du();
        // the hole itself stays masked out
        assert!(!du.is_valid(20, 20));
        // neighbours fall back to one-sided stencils and stay second order
        assert!(du.is_valid(19, 20));
        assert!((du.get(19, 20).re - 2.0 * g.u(19)).abs() < 1e-9);
        assert!(du.is_valid(21, 20));
        assert!((du.get(21, 20).re - 2.0 * g.u(21)).abs() < 1e-9);
    }

    #[test]
    fn interpolation_is_exact_on_bilinear_data() {
        let g = grid();
        let f = Field::from_fn(g, |u, v| Complex64::new(2.0 + u * v, u - v));
        let got = f.interpolate(0.123, -0.456).unwrap();
        let want = Complex64::new(2.0 + 0.123 * -0.456, 0.123 + 0.456);
        assert!((got - want).norm() < 1e-13);
        assert!(f.interpolate(1.5, 0.0).is_err());
    }
}
