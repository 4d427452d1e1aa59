//! Closed curves sampled at x_i = i/N and their discrete differential
//! geometry.
//!
//! Derivatives in x are periodic central differences; s-derivatives follow
//! by the chain rule with ds = |∂_x f|_g dx.

use alloc::vec;
use alloc::vec::Vec;

use crate::fd;
use crate::hyperbolic::{covariant_raw, inner_raw, HPoint, TangentVec};
use crate::math;
use crate::spline::{gauss8, Metric, PeriodicSpline};
use crate::{Error, Result};

pub const MIN_SAMPLES: usize = 16;
/// A sample whose line element drops below this fraction of the mean is
/// treated as a loss of immersion.
pub const IMMERSION_RATIO: f64 = 1e-8;
/// Depth of the cached (∇⊥_s)^m κ stack (m = 0..=DEPTH).
pub const PERP_DEPTH: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteCurve {
    xy: Vec<[f64; 2]>,
}

impl DiscreteCurve {
    pub fn new(points: Vec<HPoint>) -> Result<Self> {
        check_count(points.len())?;
        Ok(DiscreteCurve { xy: points.iter().map(HPoint::xy).collect() })
    }

    /// Builds from chart coordinates, rejecting points off the half-plane.
    pub fn from_xy(xy: Vec<[f64; 2]>) -> Result<Self> {
        check_count(xy.len())?;
        for p in &xy {
            HPoint::new(p[0], p[1])?;
        }
        Ok(DiscreteCurve { xy })
    }

    pub fn n_samples(&self) -> usize {
        self.xy.len()
    }

    pub fn xy(&self) -> &[[f64; 2]] {
        &self.xy
    }

    pub fn point(&self, i: usize) -> HPoint {
        let p = self.xy[i % self.xy.len()];
        HPoint::new(p[0], p[1]).expect("validated on construction")
    }

    pub fn points(&self) -> Vec<HPoint> {
        (0..self.xy.len()).map(|i| self.point(i)).collect()
    }

    pub fn h(&self) -> f64 {
        1.0 / self.xy.len() as f64
    }

    pub fn dilate(&self, r: f64) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::Domain("dilation factor must be positive"));
        }
        DiscreteCurve::from_xy(self.xy.iter().map(|p| [r * p[0], r * p[1]]).collect())
    }

    pub fn translate_h(&self, p: f64) -> Self {
        DiscreteCurve { xy: self.xy.iter().map(|q| [q[0] - p, q[1]]).collect() }
    }

    pub fn min_y2(&self) -> f64 {
        self.xy.iter().map(|p| p[1]).fold(f64::INFINITY, f64::min)
    }
}

fn check_count(n: usize) -> Result<()> {
    if n < MIN_SAMPLES || !n.is_multiple_of(2) {
        return Err(Error::BadSampleCount(n));
    }
    Ok(())
}

pub(crate) fn spread(v: &[f64]) -> f64 {
    let (mut lo, mut hi, mut sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
    for &x in v {
        lo = lo.min(x);
        hi = hi.max(x);
        sum += x;
    }
    (hi - lo) / (sum / v.len() as f64)
}

/// Per-sample geometry of a discrete curve.
#[derive(Debug, Clone)]
pub struct CurveGeometry {
    pub(crate) xy: Vec<[f64; 2]>,
    pub(crate) fp: Vec<[f64; 2]>,
    pub(crate) fpp: Vec<[f64; 2]>,
    pub(crate) h: f64,
    /// Line element |∂_x f|_g.
    pub ds: Vec<f64>,
    /// Unit tangent ∂_s f.
    pub tangent: Vec<TangentVec>,
    pub kappa: Vec<TangentVec>,
    pub kappa_norm: Vec<f64>,
    /// (∇⊥_s)^m κ for m = 0..=PERP_DEPTH.
    pub nabla_perp_kappa: Vec<Vec<TangentVec>>,
}

impl CurveGeometry {
    pub fn new(c: &DiscreteCurve) -> Result<Self> {
        let xy = c.xy.clone();
        let n = xy.len();
        let h = c.h();
        let fp = fd::d1(&xy, h);
        let fpp = fd::d2(&xy, h);

        let ds: Vec<f64> = (0..n).map(|i| math::hypot(fp[i][0], fp[i][1]) / xy[i][1]).collect();
        let mean = ds.iter().sum::<f64>() / n as f64;
        for (i, &d) in ds.iter().enumerate() {
            if !(d >= IMMERSION_RATIO * mean) || !(mean > 0.0) {
                return Err(Error::NotImmersed { index: i, ds: d, mean_ds: mean });
            }
        }

        let mut t = Vec::with_capacity(n);
        let mut k = Vec::with_capacity(n);
        for i in 0..n {
            let [p1, p2] = fp[i];
            let [q1, q2] = fpp[i];
            let y = xy[i][1];
            let e = math::hypot(p1, p2);
            let g = ds[i];
            // derivative of the line element in x
            let gp = (p1 * q1 + p2 * q2) / (e * y) - e * p2 / (y * y);
            let s1 = [p1 / g, p2 / g];
            let ss = [
                q1 / (g * g) - p1 * gp / (g * g * g),
                q2 / (g * g) - p2 * gp / (g * g * g),
            ];
            t.push(s1);
            k.push([
                ss[0] - 2.0 / y * s1[0] * s1[1],
                ss[1] + (s1[0] * s1[0] - s1[1] * s1[1]) / y,
            ]);
        }

        let base: Vec<HPoint> = c.points();
        let wrap = |v: &[[f64; 2]]| -> Vec<TangentVec> {
            v.iter().zip(&base).map(|(a, b)| TangentVec { base: *b, v: *a }).collect()
        };
        let kappa_norm: Vec<f64> = (0..n).map(|i| math::sqrt(inner_raw(xy[i][1], k[i], k[i]))).collect();

        let mut geom = CurveGeometry {
            tangent: wrap(&t),
            kappa: wrap(&k),
            kappa_norm,
            nabla_perp_kappa: Vec::new(),
            ds,
            xy,
            fp,
            fpp,
            h,
        };
        let mut stack = vec![k];
        for m in 0..PERP_DEPTH {
            let next = geom.perp_raw(&stack[m]);
            stack.push(next);
        }
        geom.nabla_perp_kappa = stack.iter().map(|v| wrap(v)).collect();
        Ok(geom)
    }

    pub fn n_samples(&self) -> usize {
        self.xy.len()
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn points(&self) -> Vec<HPoint> {
        self.tangent.iter().map(|t| t.base).collect()
    }

    pub(crate) fn t_raw(&self, i: usize) -> [f64; 2] {
        self.tangent[i].v
    }

    pub(crate) fn k_raw(&self) -> Vec<[f64; 2]> {
        self.kappa.iter().map(|v| v.v).collect()
    }

    pub(crate) fn ip(&self, i: usize, a: [f64; 2], b: [f64; 2]) -> f64 {
        inner_raw(self.xy[i][1], a, b)
    }

    /// ∇_{∂_s} X for a field given by chart components.
    pub(crate) fn nabla_s_raw(&self, x: &[[f64; 2]]) -> Vec<[f64; 2]> {
        let dx = fd::d1(x, self.h);
        (0..x.len())
            .map(|i| {
                let c = covariant_raw(self.xy[i][1], self.fp[i], x[i], dx[i]);
                [c[0] / self.ds[i], c[1] / self.ds[i]]
            })
            .collect()
    }

    /// Removes the component along ∂_s f.
    pub(crate) fn normal_part(&self, x: &[[f64; 2]]) -> Vec<[f64; 2]> {
        (0..x.len())
            .map(|i| {
                let t = self.t_raw(i);
                let a = self.ip(i, x[i], t);
                [x[i][0] - a * t[0], x[i][1] - a * t[1]]
            })
            .collect()
    }

    pub(crate) fn perp_raw(&self, x: &[[f64; 2]]) -> Vec<[f64; 2]> {
        self.normal_part(&self.nabla_s_raw(x))
    }

    /// (∇⊥_s)^m κ; served from the cache up to PERP_DEPTH.
    pub fn perp_kappa(&self, m: usize) -> Vec<TangentVec> {
        if m <= PERP_DEPTH {
            return self.nabla_perp_kappa[m].clone();
        }
        let mut v: Vec<[f64; 2]> = self.nabla_perp_kappa[PERP_DEPTH].iter().map(|t| t.v).collect();
        for _ in PERP_DEPTH..m {
            v = self.perp_raw(&v);
        }
        self.wrap(&v)
    }

    pub(crate) fn wrap(&self, v: &[[f64; 2]]) -> Vec<TangentVec> {
        v.iter().zip(&self.tangent).map(|(a, t)| TangentVec { base: t.base, v: *a }).collect()
    }

    pub(crate) fn unwrap_field(&self, field: &[TangentVec]) -> Result<Vec<[f64; 2]>> {
        let n = self.n_samples();
        if field.len() != n {
            return Err(Error::GridMismatch { expected: n, got: field.len() });
        }
        field
            .iter()
            .zip(&self.tangent)
            .map(|(f, t)| if f.base == t.base { Ok(f.v) } else { Err(Error::BaseMismatch) })
            .collect()
    }

    /// Trapezoid rule for ∫ w ds over the closed curve.
    pub(crate) fn integrate(&self, w: impl Fn(usize) -> f64) -> f64 {
        (0..self.n_samples()).map(|i| w(i) * self.ds[i]).sum::<f64>() * self.h
    }
}

/// ∇⊥_s X = ∇_s X − ⟨∇_s X, ∂_s f⟩_g ∂_s f.
pub fn nabla_s_perp(geom: &CurveGeometry, field: &[TangentVec]) -> Result<Vec<TangentVec>> {
    let x = geom.unwrap_field(field)?;
    Ok(geom.wrap(&geom.perp_raw(&x)))
}

pub fn total_length(geom: &CurveGeometry) -> f64 {
    geom.integrate(|_| 1.0)
}

pub fn total_abs_curvature(geom: &CurveGeometry) -> f64 {
    geom.integrate(|i| geom.kappa_norm[i])
}

/// Hyperbolic length of the periodic cubic spline through the samples.
/// Unlike the trapezoid sum of central-difference line elements this does
/// not depend on how the samples are spaced along the curve (to O(N⁻⁴)).
pub fn spline_length(c: &DiscreteCurve) -> Result<f64> {
    let s = PeriodicSpline::new(c.xy())?;
    Ok(s.segment_lengths(Metric::Hyperbolic).iter().sum())
}

/// Resamples so that the discrete line element is the same at every sample.
pub fn reparametrize_constant_speed(c: &DiscreteCurve) -> Result<DiscreteCurve> {
    CurveGeometry::new(c)?;
    resample(c, Metric::Hyperbolic)
}

/// Same, with Euclidean speed |∂_x f|.
pub(crate) fn reparametrize_euclidean(c: &DiscreteCurve) -> Result<DiscreteCurve> {
    CurveGeometry::new(c)?;
    resample(c, Metric::Euclidean)
}

fn central_speed(xy: &[[f64; 2]], metric: Metric) -> Vec<f64> {
    let d = fd::d1(xy, 1.0 / xy.len() as f64);
    d.iter()
        .zip(xy)
        .map(|(v, p)| {
            let e = math::hypot(v[0], v[1]);
            match metric {
                Metric::Hyperbolic => e / p[1],
                Metric::Euclidean => e,
            }
        })
        .collect()
}

const RESAMPLE_TOL: f64 = 1e-12;
const RESAMPLE_ITERS: usize = 40;

fn resample(c: &DiscreteCurve, metric: Metric) -> Result<DiscreteCurve> {
    let n = c.n_samples();
    let h = c.h();
    if spread(&central_speed(c.xy(), metric)) < RESAMPLE_TOL {
        return Ok(c.clone());
    }
    let s = PeriodicSpline::new(c.xy())?;
    let seg = s.segment_lengths(metric);
    let mut cum = vec![0.0; n + 1];
    for i in 0..n {
        cum[i + 1] = cum[i] + seg[i];
    }
    let total = cum[n];

    let invert = |phi: f64| -> f64 {
        let phi = phi.clamp(0.0, total);
        let i = match cum.binary_search_by(|v| v.partial_cmp(&phi).unwrap()) {
            Ok(k) => k.min(n - 1),
            Err(k) => k.saturating_sub(1).min(n - 1),
        };
        let lo = i as f64 * h;
        let mut u = lo + h * (phi - cum[i]) / seg[i];
        for _ in 0..8 {
            let f = cum[i] + gauss8(lo, u, |v| s.speed(v, metric)) - phi;
            u -= f / s.speed(u, metric);
            u = u.clamp(lo, lo + h);
        }
        u
    };

    // Arclength targets; sample 0 stays put. Each pass nudges the targets
    // by the integrated relative speed error, which leaves a smooth
    // residual that shrinks geometrically.
    let mut phi: Vec<f64> = (0..n).map(|k| k as f64 * total / n as f64).collect();
    let mut best: Option<(f64, Vec<[f64; 2]>)> = None;
    for _ in 0..RESAMPLE_ITERS {
        let pts: Vec<[f64; 2]> = phi.iter().map(|&p| s.eval(invert(p))).collect();
        let sp = central_speed(&pts, metric);
        let sd = spread(&sp);
        let done = sd < RESAMPLE_TOL;
        let improved = best.as_ref().is_none_or(|(b, _)| sd < *b);
        if improved {
            best = Some((sd, pts));
        } else {
            break;
        }
        if done {
            break;
        }
        let mean = sp.iter().sum::<f64>() / n as f64;
        let r: Vec<f64> = sp.iter().map(|v| v / mean - 1.0).collect();
        let mut acc = 0.0;
        for k in 1..n {
            acc -= total * h * 0.5 * (r[k - 1] + r[k]);
            phi[k] += acc;
        }
    }
    let (_, pts) = best.expect("at least one pass");
    DiscreteCurve::from_xy(pts)
}
