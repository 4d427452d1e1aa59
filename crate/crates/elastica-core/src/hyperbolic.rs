//! The upper half-plane with metric g = (dy1² + dy2²)/y2².
//!
//! Tangent vectors are stored by their components in the global chart.

use crate::math;
use crate::{Error, Result};

/// A point (y1, y2) with y2 > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint {
    y1: f64,
    y2: f64,
}

impl HPoint {
    pub fn new(y1: f64, y2: f64) -> Result<Self> {
        if !(y2 > 0.0) || !y1.is_finite() || !y2.is_finite() {
            return Err(Error::OffHalfPlane { y1, y2 });
        }
        Ok(HPoint { y1, y2 })
    }

    pub fn y1(&self) -> f64 {
        self.y1
    }

    pub fn y2(&self) -> f64 {
        self.y2
    }

    pub fn xy(&self) -> [f64; 2] {
        [self.y1, self.y2]
    }

    pub fn dilate(&self, r: f64) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::Domain("dilation factor must be positive"));
        }
        HPoint::new(r * self.y1, r * self.y2)
    }

    pub fn translate_h(&self, p: f64) -> Self {
        HPoint { y1: self.y1 - p, y2: self.y2 }
    }
}

/// A tangent vector at `base`, components (v1, v2) in the chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVec {
    pub base: HPoint,
    pub v: [f64; 2],
}

impl TangentVec {
    pub fn new(base: HPoint, v1: f64, v2: f64) -> Self {
        TangentVec { base, v: [v1, v2] }
    }

    pub fn zero(base: HPoint) -> Self {
        TangentVec { base, v: [0.0, 0.0] }
    }

    pub fn v1(&self) -> f64 {
        self.v[0]
    }

    pub fn v2(&self) -> f64 {
        self.v[1]
    }

    pub fn norm_g(&self) -> f64 {
        math::hypot(self.v[0], self.v[1]) / self.base.y2
    }

    pub fn scale(&self, s: f64) -> Self {
        TangentVec { base: self.base, v: [s * self.v[0], s * self.v[1]] }
    }
}

/// ⟨u, v⟩_g at `p`.
pub fn inner(p: &HPoint, u: &TangentVec, v: &TangentVec) -> Result<f64> {
    if u.base != *p || v.base != *p {
        return Err(Error::BaseMismatch);
    }
    Ok(inner_raw(p.y2, u.v, v.v))
}

#[inline]
pub(crate) fn inner_raw(y2: f64, u: [f64; 2], v: [f64; 2]) -> f64 {
    (u[0] * v[0] + u[1] * v[1]) / (y2 * y2)
}

/// Γᵏᵢⱼ indexed as `[k][i][j]` (zero-based, so `[1][0][0]` is Γ²₁₁).
pub fn christoffel(p: &HPoint) -> [[[f64; 2]; 2]; 2] {
    let a = 1.0 / p.y2;
    let mut g = [[[0.0; 2]; 2]; 2];
    g[0][0][1] = -a;
    g[0][1][0] = -a;
    g[1][0][0] = a;
    g[1][1][1] = -a;
    g
}

/// ∇_{ḟ} X along a curve f, given X and the parameter derivative of its components.
pub fn covariant_derivative(
    curve_point: &HPoint,
    curve_velocity: &TangentVec,
    x: &TangentVec,
    dx: [f64; 2],
) -> Result<TangentVec> {
    if curve_velocity.base != *curve_point || x.base != *curve_point {
        return Err(Error::BaseMismatch);
    }
    let v = covariant_raw(curve_point.y2, curve_velocity.v, x.v, dx);
    Ok(TangentVec { base: *curve_point, v })
}

#[inline]
pub(crate) fn covariant_raw(y2: f64, fd: [f64; 2], x: [f64; 2], dx: [f64; 2]) -> [f64; 2] {
    [
        dx[0] - (x[0] * fd[1] + x[1] * fd[0]) / y2,
        dx[1] + (x[0] * fd[0] - x[1] * fd[1]) / y2,
    ]
}

/// arccosh(1 + |p − q|²/(2 p2 q2)), evaluated through the half-angle form
/// 2·asinh(|p − q| / (2√(p2 q2))) which keeps precision for nearby points.
pub fn geodesic_distance(p: &HPoint, q: &HPoint) -> f64 {
    distance_raw(p.xy(), q.xy())
}

#[inline]
pub(crate) fn distance_raw(p: [f64; 2], q: [f64; 2]) -> f64 {
    let e = math::hypot(p[0] - q[0], p[1] - q[1]);
    2.0 * math::asinh(e / (2.0 * math::sqrt(p[1] * q[1])))
}

/// Euclidean disk occupied by the closed hyperbolic ball of radius `rho`
/// about `center`: returns (Euclidean center, Euclidean radius).
pub fn ball_in_chart(center: &HPoint, rho: f64) -> Result<(HPoint, f64)> {
    if !(rho >= 0.0) {
        return Err(Error::Domain("ball radius must be non-negative"));
    }
    let c = HPoint::new(center.y1, center.y2 * math::cosh(rho))?;
    Ok((c, center.y2 * math::sinh(rho)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(a: f64, b: f64) -> HPoint {
        HPoint::new(a, b).unwrap()
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(HPoint::new(0.0, 0.0).is_err());
        assert!(HPoint::new(0.0, -1.0).is_err());
        assert!(HPoint::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn inner_examples() {
        let p = pt(0.0, 1.0);
        let e1 = TangentVec::new(p, 1.0, 0.0);
        assert_eq!(inner(&p, &e1, &e1).unwrap(), 1.0);

        let p = pt(0.0, 2.0);
        let e1 = TangentVec::new(p, 1.0, 0.0);
        assert_eq!(inner(&p, &e1, &e1).unwrap(), 0.25);

        let p = pt(3.0, 0.5);
        let a = TangentVec::new(p, 1.0, 0.0);
        let b = TangentVec::new(p, 0.0, 1.0);
        assert_eq!(inner(&p, &a, &b).unwrap(), 0.0);
    }

    #[test]
    fn inner_checks_base() {
        let p = pt(0.0, 1.0);
        let q = pt(0.0, 2.0);
        let a = TangentVec::new(q, 1.0, 0.0);
        assert_eq!(inner(&p, &a, &a), Err(Error::BaseMismatch));
    }

    #[test]
    fn christoffel_values() {
        let g = christoffel(&pt(0.0, 1.0));
        assert_eq!(g[1][0][0], 1.0);
        assert_eq!(g[0][0][1], -1.0);
        assert_eq!(g[1][1][1], -1.0);
        assert_eq!(g[0][0][0], 0.0);
        assert_eq!(g[0][1][1], 0.0);
        assert_eq!(g[1][0][1], 0.0);
        assert_eq!(christoffel(&pt(5.0, 1.0)), g);

        let g = christoffel(&pt(0.0, 2.0));
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(g[k][i][j], g[k][j][i]);
                    let v = g[k][i][j];
                    assert!(v == 0.0 || v.abs() == 0.5);
                }
            }
        }
    }

    #[test]
    fn covariant_derivative_agrees_with_christoffel_contraction() {
        let p = pt(0.3, 0.7);
        let g = christoffel(&p);
        let fd = [0.4, -1.1];
        let x = [2.0, 0.5];
        let dx = [0.1, 0.2];
        let got = covariant_raw(p.y2(), fd, x, dx);
        for k in 0..2 {
            let mut want = dx[k];
            for i in 0..2 {
                for j in 0..2 {
                    want += g[k][i][j] * fd[i] * x[j];
                }
            }
            assert!((got[k] - want).abs() < 1e-15);
        }
    }

    #[test]
    fn vertical_line_is_geodesic() {
        // f(t) = (0, e^t): velocity (0, e^t), its derivative (0, e^t).
        for &t in &[-1.0f64, 0.0, 0.7] {
            let y = libm::exp(t);
            let p = pt(0.0, y);
            let vel = TangentVec::new(p, 0.0, y);
            let a = covariant_derivative(&p, &vel, &vel, [0.0, y]).unwrap();
            assert!(a.v1().abs() < 1e-15 && a.v2().abs() < 1e-15);
        }
    }

    #[test]
    fn horizontal_constant_field() {
        let p = pt(2.0, 1.0);
        let vel = TangentVec::new(p, 1.0, 0.0);
        let a = covariant_derivative(&p, &vel, &vel, [0.0, 0.0]).unwrap();
        assert_eq!(a.v, [0.0, 1.0]);
    }

    #[test]
    fn distance_examples() {
        let d = geodesic_distance(&pt(0.0, 1.0), &pt(0.0, core::f64::consts::E));
        assert!((d - 1.0).abs() < 1e-15);
        assert_eq!(geodesic_distance(&pt(1.0, 2.0), &pt(1.0, 2.0)), 0.0);
        let d = geodesic_distance(&pt(0.0, 1.0), &pt(1.0, 1.0));
        assert!((d - libm::acosh(1.5)).abs() < 1e-15);
    }

    #[test]
    fn ball_boundary_is_at_distance_rho() {
        let c = pt(0.4, 1.3);
        let rho = 0.8;
        let (e, r) = ball_in_chart(&c, rho).unwrap();
        for k in 0..16 {
            let th = k as f64 * 0.4;
            let q = pt(e.y1() + r * libm::cos(th), e.y2() + r * libm::sin(th));
            assert!((geodesic_distance(&c, &q) - rho).abs() < 1e-12);
        }
    }
}
