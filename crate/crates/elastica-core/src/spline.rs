//! Periodic cubic splines through 2-D samples on the uniform grid u_i = i/N,
//! u ∈ [0, 1).

use alloc::vec;
use alloc::vec::Vec;

use crate::banded::CyclicBandedSpd;
use crate::math;
use crate::Result;

// 8-point Gauss–Legendre rule on [-1, 1].
const GL_X: [f64; 8] = [
    -0.960_289_856_497_536_2,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];
const GL_W: [f64; 8] = [
    0.101_228_536_290_376_26,
    0.222_381_034_453_374_48,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362,
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_48,
    0.101_228_536_290_376_26,
];

/// ∫_a^b g(u) du by 8-point Gauss–Legendre.
pub(crate) fn gauss8(a: f64, b: f64, mut g: impl FnMut(f64) -> f64) -> f64 {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let mut s = 0.0;
    for k in 0..8 {
        s += GL_W[k] * g(c + r * GL_X[k]);
    }
    s * r
}

#[derive(Debug, Clone)]
pub struct PeriodicSpline {
    h: f64,
    y: Vec<[f64; 2]>,
    m: Vec<[f64; 2]>,
}

impl PeriodicSpline {
    pub fn new(values: &[[f64; 2]]) -> Result<Self> {
        let n = values.len();
        let h = 1.0 / n as f64;
        let mut a = CyclicBandedSpd::new(n, 1)?;
        for i in 0..n {
            a.set(i, i, 4.0);
            a.set(i, (i + 1) % n, 1.0);
        }
        let chol = a.factor()?;
        let mut m = vec![[0.0; 2]; n];
        for c in 0..2 {
            let mut rhs: Vec<f64> = (0..n)
                .map(|i| {
                    let yp = values[(i + 1) % n][c];
                    let ym = values[(i + n - 1) % n][c];
                    6.0 * (yp - 2.0 * values[i][c] + ym) / (h * h)
                })
                .collect();
            chol.solve_in_place(&mut rhs)?;
            for i in 0..n {
                m[i][c] = rhs[i];
            }
        }
        Ok(PeriodicSpline { h, y: values.to_vec(), m })
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    fn locate(&self, u: f64) -> (usize, f64) {
        let n = self.y.len();
        let w = u - libm::floor(u);
        let s = w * n as f64;
        let mut i = libm::floor(s) as usize;
        if i >= n {
            i = n - 1;
        }
        (i, s - i as f64)
    }

    pub fn eval(&self, u: f64) -> [f64; 2] {
        let n = self.y.len();
        let (i, t) = self.locate(u);
        let j = (i + 1) % n;
        let s = 1.0 - t;
        let h2 = self.h * self.h / 6.0;
        let mut out = [0.0; 2];
        for c in 0..2 {
            out[c] = s * self.y[i][c]
                + t * self.y[j][c]
                + h2 * ((s * s * s - s) * self.m[i][c] + (t * t * t - t) * self.m[j][c]);
        }
        out
    }

    pub fn deriv(&self, u: f64) -> [f64; 2] {
        let n = self.y.len();
        let (i, t) = self.locate(u);
        let j = (i + 1) % n;
        let s = 1.0 - t;
        let h6 = self.h / 6.0;
        let mut out = [0.0; 2];
        for c in 0..2 {
            out[c] = (self.y[j][c] - self.y[i][c]) / self.h
                + h6 * (-(3.0 * s * s - 1.0) * self.m[i][c] + (3.0 * t * t - 1.0) * self.m[j][c]);
        }
        out
    }

    /// Speed |S'(u)| in the chosen metric.
    pub(crate) fn speed(&self, u: f64, metric: Metric) -> f64 {
        let d = self.deriv(u);
        let e = math::hypot(d[0], d[1]);
        match metric {
            Metric::Hyperbolic => e / self.eval(u)[1],
            Metric::Euclidean => e,
        }
    }

    /// Arclength of each segment [u_i, u_{i+1}].
    pub(crate) fn segment_lengths(&self, metric: Metric) -> Vec<f64> {
        let n = self.y.len();
        (0..n)
            .map(|i| {
                let a = i as f64 * self.h;
                gauss8(a, a + self.h, |u| self.speed(u, metric))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Metric {
    Hyperbolic,
    Euclidean,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(n: usize) -> Vec<[f64; 2]> {
        (0..n)
            .map(|i| {
                let th = math::TAU * i as f64 / n as f64;
                [math::sin(th), 2.0 + math::cos(th)]
            })
            .collect()
    }

    #[test]
    fn interpolates_nodes() {
        let pts = circle(32);
        let s = PeriodicSpline::new(&pts).unwrap();
        for (i, p) in pts.iter().enumerate() {
            let q = s.eval(i as f64 / 32.0);
            assert!((q[0] - p[0]).abs() < 1e-14 && (q[1] - p[1]).abs() < 1e-14);
        }
    }

    #[test]
    fn fourth_order_accuracy() {
        let mut errs = Vec::new();
        for &n in &[32usize, 64, 128] {
            let s = PeriodicSpline::new(&circle(n)).unwrap();
            let mut e: f64 = 0.0;
            for k in 0..997 {
                let u = (k as f64 + 0.37) / 997.0;
                let th = math::TAU * u;
                let q = s.eval(u);
                e = e.max((q[0] - math::sin(th)).abs()).max((q[1] - 2.0 - math::cos(th)).abs());
            }
            errs.push(e);
        }
        for w in errs.windows(2) {
            let order = libm::log2(w[0] / w[1]);
            assert!(order > 3.8, "order {order}");
        }
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let s = PeriodicSpline::new(&circle(40)).unwrap();
        let h = 1e-6;
        for &u in &[0.0, 0.013, 0.5, 0.999] {
            let d = s.deriv(u);
            let a = s.eval(u + h);
            let b = s.eval(u - h);
            for c in 0..2 {
                assert!((d[c] - (a[c] - b[c]) / (2.0 * h)).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn euclidean_circumference() {
        let s = PeriodicSpline::new(&circle(64)).unwrap();
        let l: f64 = s.segment_lengths(Metric::Euclidean).iter().sum();
        assert!((l - math::TAU).abs() < 1e-6);
    }
}
