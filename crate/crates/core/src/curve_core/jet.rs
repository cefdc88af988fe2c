use crate::geom::{AffineMap, Vec2};
use crate::scalar::{c, Scalar};

/// Position and the first four parameter derivatives at one parameter value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet<T> {
    pub p: Vec2<T>,
    pub d1: Vec2<T>,
    pub d2: Vec2<T>,
    pub d3: Vec2<T>,
    pub d4: Vec2<T>,
}

/// Signed curvature radius; `Infinite` at inflections and on straight pieces.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Radius<T> {
    Finite(T),
    Infinite,
}

impl<T: Scalar> Radius<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            Radius::Finite(r) => Some(r),
            Radius::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Radius::Infinite)
    }

    /// Signed curvature `1/ρ`, zero for the infinite sentinel.
    pub fn curvature(self) -> T {
        match self {
            Radius::Finite(r) => r.recip(),
            Radius::Infinite => T::zero(),
        }
    }
}

/// `ρ` together with its first two arc-length derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadiusJet<T> {
    pub rho: T,
    pub rho_s: T,
    pub rho_ss: T,
}

impl<T: Scalar> Jet<T> {
    pub fn speed(&self) -> T {
        self.d1.norm()
    }

    /// `det(γ', γ'')`.
    pub fn det12(&self) -> T {
        self.d1.cross(self.d2)
    }

    pub fn map(&self, m: &AffineMap<T>) -> Self {
        Jet {
            p: m.apply(self.p),
            d1: m.apply_vector(self.d1),
            d2: m.apply_vector(self.d2),
            d3: m.apply_vector(self.d3),
            d4: m.apply_vector(self.d4),
        }
    }

    /// `|γ'|³ / det(γ', γ'')`, with the infinite sentinel when the
    /// determinant is indistinguishable from zero.
    pub fn radius(&self) -> Radius<T> {
        let v = self.speed();
        let det = self.det12();
        let scale = v * self.d2.norm();
        if det == T::zero() || det.abs() <= scale * T::noise() {
            return Radius::Infinite;
        }
        Radius::Finite(v * v * v / det)
    }

    /// `ρ`, `dρ/ds`, `d²ρ/ds²` from the parameter derivatives.
    pub fn radius_jet(&self) -> Option<RadiusJet<T>> {
        let rho = self.radius().finite()?;
        let (d1, d2, d3, d4) = (self.d1, self.d2, self.d3, self.d4);
        let v = d1.norm();
        let g12 = d1.dot(d2);
        let vd = g12 / v;
        let vdd = (d2.dot(d2) + d1.dot(d3)) / v - g12 * g12 / (v * v * v);
        let det = d1.cross(d2);
        let det_d = d1.cross(d3);
        let det_dd = d2.cross(d3) + d1.cross(d4);
        let v2 = v * v;
        let v3 = v2 * v;
        let (two, three, six) = (c::<T>(2.0), c::<T>(3.0), c::<T>(6.0));
        let rho_t = three * v2 * vd / det - v3 * det_d / (det * det);
        let rho_tt = six * v * vd * vd / det + three * v2 * vdd / det
            - six * v2 * vd * det_d / (det * det)
            - v3 * det_dd / (det * det)
            + two * v3 * det_d * det_d / (det * det * det);
        Some(RadiusJet {
            rho,
            rho_s: rho_t / v,
            rho_ss: (rho_tt * v - rho_t * vd) / v3,
        })
    }
}
