//! Plane vectors, 2×2 matrices and affine maps.
//!
//! Everything here only needs ring (or field) operations, so the types are
//! generic over [`num_traits::Num`] and work with exact rationals as well as
//! floats. Metric helpers (norms, angles) require [`Scalar`].

use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{Num, Zero};

use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec2<T> {
    pub x: T,
    pub y: T,
}

impl<T> Vec2<T> {
    #[inline]
    pub const fn new(x: T, y: T) -> Self {
        Vec2 { x, y }
    }
}

impl<T: Num + Copy> Vec2<T> {
    #[inline]
    pub fn zero() -> Self {
        Vec2::new(T::zero(), T::zero())
    }

    #[inline]
    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y
    }

    /// `det(self, other)`, the signed area spanned by the two vectors.
    #[inline]
    pub fn cross(self, other: Self) -> T {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn scale(self, k: T) -> Self {
        Vec2::new(self.x * k, self.y * k)
    }

    /// Rotation by +90°.
    #[inline]
    pub fn perp(self) -> Self
    where
        T: Neg<Output = T>,
    {
        Vec2::new(-self.y, self.x)
    }
}

impl<T: Scalar> Vec2<T> {
    #[inline]
    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_sq(self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn angle(self) -> T {
        self.y.atan2(self.x)
    }

    #[inline]
    pub fn from_angle(theta: T) -> Self {
        Vec2::new(theta.cos(), theta.sin())
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Complex multiplication, identifying the plane with ℂ.
    #[inline]
    pub fn cmul(self, other: Self) -> Self {
        Vec2::new(self.x * other.x - self.y * other.y, self.x * other.y + self.y * other.x)
    }
}

impl<T: Num + Copy> Add for Vec2<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Num + Copy> Sub for Vec2<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Num + Copy + Neg<Output = T>> Neg for Vec2<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Vec2::new(-self.x, -self.y)
    }
}

impl<T: Num + Copy> Mul<T> for Vec2<T> {
    type Output = Self;
    #[inline]
    fn mul(self, k: T) -> Self {
        self.scale(k)
    }
}

impl<T: Num + Copy> AddAssign for Vec2<T> {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Num + Copy> SubAssign for Vec2<T> {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

/// Row-major 2×2 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2<T> {
    pub rows: [[T; 2]; 2],
}

impl<T: Num + Copy> Mat2<T> {
    #[inline]
    pub const fn new(a11: T, a12: T, a21: T, a22: T) -> Self {
        Mat2 {
            rows: [[a11, a12], [a21, a22]],
        }
    }

    pub fn identity() -> Self {
        Mat2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn diag(a: T, b: T) -> Self {
        Mat2::new(a, T::zero(), T::zero(), b)
    }

    /// Matrix whose columns are `c1` and `c2`.
    pub fn from_cols(c1: Vec2<T>, c2: Vec2<T>) -> Self {
        Mat2::new(c1.x, c2.x, c1.y, c2.y)
    }

    #[inline]
    pub fn col(&self, j: usize) -> Vec2<T> {
        Vec2::new(self.rows[0][j], self.rows[1][j])
    }

    #[inline]
    pub fn det(&self) -> T {
        self.rows[0][0] * self.rows[1][1] - self.rows[0][1] * self.rows[1][0]
    }

    #[inline]
    pub fn apply(&self, v: Vec2<T>) -> Vec2<T> {
        Vec2::new(
            self.rows[0][0] * v.x + self.rows[0][1] * v.y,
            self.rows[1][0] * v.x + self.rows[1][1] * v.y,
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        let a = &self.rows;
        let b = &o.rows;
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }

    /// Inverse, or `None` when the determinant is exactly zero.
    pub fn inverse(&self) -> Option<Self>
    where
        T: Neg<Output = T>,
    {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let a = &self.rows;
        Some(Mat2::new(a[1][1] / d, -a[0][1] / d, -a[1][0] / d, a[0][0] / d))
    }

    pub fn map<U: Num + Copy>(&self, f: impl Fn(T) -> U) -> Mat2<U> {
        let a = &self.rows;
        Mat2::new(f(a[0][0]), f(a[0][1]), f(a[1][0]), f(a[1][1]))
    }
}

impl<T: Scalar> Mat2<T> {
    pub fn rotation(theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        Mat2::new(c, -s, s, c)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> T {
        self.rows.iter().flatten().fold(T::zero(), |m, &v| m.max(v.abs()))
    }
}

/// Affine map `z ↦ A z + b` of the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineMap<T> {
    pub linear: Mat2<T>,
    pub offset: Vec2<T>,
}

impl<T: Num + Copy> AffineMap<T> {
    pub const fn new(linear: Mat2<T>, offset: Vec2<T>) -> Self {
        AffineMap { linear, offset }
    }

    pub fn identity() -> Self {
        AffineMap::new(Mat2::identity(), Vec2::zero())
    }

    pub fn linear(linear: Mat2<T>) -> Self {
        AffineMap::new(linear, Vec2::zero())
    }

    pub fn translation(offset: Vec2<T>) -> Self {
        AffineMap::new(Mat2::identity(), offset)
    }

    #[inline]
    pub fn apply(&self, z: Vec2<T>) -> Vec2<T> {
        self.linear.apply(z) + self.offset
    }

    /// Linear part only; how derivative vectors transform.
    #[inline]
    pub fn apply_vector(&self, v: Vec2<T>) -> Vec2<T> {
        self.linear.apply(v)
    }

    #[inline]
    pub fn det(&self) -> T {
        self.linear.det()
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &Self) -> Self {
        AffineMap::new(
            self.linear.mul(&inner.linear),
            self.linear.apply(inner.offset) + self.offset,
        )
    }

    pub fn inverse(&self) -> Option<Self>
    where
        T: Neg<Output = T>,
    {
        let inv = self.linear.inverse()?;
        Some(AffineMap::new(inv, -inv.apply(self.offset)))
    }

    /// `self ∘ inner ∘ self⁻¹`.
    pub fn conjugate(&self, inner: &Self) -> Option<Self>
    where
        T: Neg<Output = T>,
    {
        Some(self.compose(inner).compose(&self.inverse()?))
    }
}

impl<T: Zero + Copy + Num> Default for AffineMap<T> {
    fn default() -> Self {
        Self::identity()
    }
}

/// Euclidean frame `(γ_s, i γ_s)` of an arc-length parameterized curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrenetFrame<T> {
    pub tangent: Vec2<T>,
    pub normal: Vec2<T>,
}

impl<T: Scalar> FrenetFrame<T> {
    /// Frame from any non-zero velocity; `None` for a zero vector.
    pub fn from_velocity(v: Vec2<T>) -> Option<Self> {
        let n = v.norm();
        if !(n > T::zero()) || !n.is_finite() {
            return None;
        }
        let tangent = v.scale(n.recip());
        Some(FrenetFrame {
            tangent,
            normal: tangent.perp(),
        })
    }

    pub fn det(&self) -> T {
        self.tangent.cross(self.normal)
    }
}
