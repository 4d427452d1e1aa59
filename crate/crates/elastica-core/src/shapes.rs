//! Initial curves.

use alloc::vec::Vec;

use crate::curve::{CurveGeometry, DiscreteCurve};
use crate::hyperbolic::HPoint;
use crate::math::{self, TAU};
use crate::{Error, Result};

/// One harmonic: a·cos(kθ) + b·sin(kθ), per chart component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierTerm {
    pub k: u32,
    pub a: [f64; 2],
    pub b: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub enum CurveKind {
    Circle { center_y: f64, radius: f64 },
    PerturbedCircle { center_y: f64, radius: f64, mode: u32, amplitude: f64 },
    Fourier { terms: Vec<FourierTerm> },
}

pub fn make_curve(kind: &CurveKind, n: usize) -> Result<DiscreteCurve> {
    match kind {
        CurveKind::Circle { center_y, radius } => circle(*center_y, *radius, n),
        CurveKind::PerturbedCircle { center_y, radius, mode, amplitude } => {
            perturbed_circle(*center_y, *radius, *mode, *amplitude, n)
        }
        CurveKind::Fourier { terms } => fourier(terms, n),
    }
}

fn finish(xy: Vec<[f64; 2]>) -> Result<DiscreteCurve> {
    let c = DiscreteCurve::from_xy(xy)?;
    CurveGeometry::new(&c)?;
    Ok(c)
}

fn angle(i: usize, n: usize) -> f64 {
    TAU * i as f64 / n as f64
}

/// Euclidean circle with center (0, center_y), sampled uniformly in angle
/// starting from the top point.
pub fn circle(center_y: f64, radius: f64, n: usize) -> Result<DiscreteCurve> {
    perturbed_circle(center_y, radius, 0, 0.0, n)
}

/// Circle plus amplitude·sin(mode·θ) along the outward Euclidean normal.
pub fn perturbed_circle(center_y: f64, radius: f64, mode: u32, amplitude: f64, n: usize) -> Result<DiscreteCurve> {
    if !(radius > 0.0) {
        return Err(Error::Domain("radius must be positive"));
    }
    let xy = (0..n)
        .map(|i| {
            let th = angle(i, n);
            let r = radius + amplitude * math::sin(mode as f64 * th);
            [r * math::sin(th), center_y + r * math::cos(th)]
        })
        .collect();
    finish(xy)
}

pub fn fourier(terms: &[FourierTerm], n: usize) -> Result<DiscreteCurve> {
    if terms.is_empty() {
        return Err(Error::EmptyCurve);
    }
    let xy = (0..n)
        .map(|i| {
            let th = angle(i, n);
            let mut p = [0.0; 2];
            for t in terms {
                let (s, c) = (math::sin(t.k as f64 * th), math::cos(t.k as f64 * th));
                for d in 0..2 {
                    p[d] += t.a[d] * c + t.b[d] * s;
                }
            }
            p
        })
        .collect();
    finish(xy)
}

/// Euclidean circle centred on (0, center_y) whose constant curvature
/// satisfies |κ|² = 2(1 + λ), i.e. a critical point of E_λ.
pub fn critical_circle(lambda: f64, center_y: f64, n: usize) -> Result<DiscreteCurve> {
    if !(lambda >= 0.0) {
        return Err(Error::Domain("lambda must be non-negative"));
    }
    circle(center_y, center_y / math::sqrt(2.0 * (1.0 + lambda)), n)
}

/// Geodesic circle of hyperbolic radius `rho` about `center`, sampled at
/// equal hyperbolic arclength.
pub fn geodesic_circle(center: HPoint, rho: f64, n: usize) -> Result<DiscreteCurve> {
    if !(rho > 0.0) {
        return Err(Error::Domain("radius must be positive"));
    }
    // Cayley transform of a centred disk circle, then move i to the center.
    let w = math::sinh(rho / 2.0) / math::cosh(rho / 2.0);
    let xy = (0..n)
        .map(|i| {
            let th = angle(i, n);
            let (wr, wi) = (w * math::cos(th), w * math::sin(th));
            // z = i(1 + w)/(1 − w)
            let den = (1.0 - wr) * (1.0 - wr) + wi * wi;
            let re = -2.0 * wi / den;
            let im = (1.0 - wr * wr - wi * wi) / den;
            [center.y1() + center.y2() * re, center.y2() * im]
        })
        .collect();
    finish(xy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::total_length;
    use crate::hyperbolic::geodesic_distance;

    #[test]
    fn zero_amplitude_is_the_circle() {
        let a = circle(1.4, 1.0, 64).unwrap();
        let b = perturbed_circle(1.4, 1.0, 3, 0.0, 64).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_fourier_is_an_error() {
        assert_eq!(fourier(&[], 64), Err(Error::EmptyCurve));
    }

    #[test]
    fn circle_below_axis_is_rejected() {
        assert!(circle(0.5, 1.0, 64).is_err());
        assert!(circle(2.0, -1.0, 64).is_err());
    }

    #[test]
    fn fourier_reproduces_circle() {
        let terms = [
            FourierTerm { k: 0, a: [0.0, 1.5], b: [0.0; 2] },
            FourierTerm { k: 1, a: [0.0, 1.0], b: [1.0, 0.0] },
        ];
        let f = fourier(&terms, 32).unwrap();
        let c = circle(1.5, 1.0, 32).unwrap();
        for (p, q) in f.xy().iter().zip(c.xy()) {
            assert!((p[0] - q[0]).abs() < 1e-15 && (p[1] - q[1]).abs() < 1e-15);
        }
    }

    #[test]
    fn geodesic_circle_is_equidistant() {
        let c0 = HPoint::new(0.3, 1.7).unwrap();
        let c = geodesic_circle(c0, 0.9, 64).unwrap();
        for p in c.points() {
            assert!((geodesic_distance(&c0, &p) - 0.9).abs() < 1e-13);
        }
        // Central differences shrink each speed by sinc(2π/N).
        let g = CurveGeometry::new(&geodesic_circle(c0, 0.9, 256).unwrap()).unwrap();
        let l = total_length(&g);
        assert!((l - TAU * math::sinh(0.9)).abs() < 1e-3);
    }
}
