//! Equal-chord gauge.
//!
//! The discrete energy depends on where the samples sit along the curve, so
//! purely normal motion lets the samples drift toward whatever spacing the
//! discretization error happens to favour, and a normal flow never settles.
//! Here neighbouring samples are held at equal hyperbolic distance. A normal
//! speed u determines a tangential speed τ = L·u through the linearized
//! constraint, and the energy gradient restricted to this gauge is
//!
//!   G = (∂E·n + Lᵀ(∂E·T)) / (ds·h).
//!
//! After a finite step the constraint is restored by a Newton projection
//! that only moves samples tangentially.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector, Dyn, LU};

use crate::curve::{reparametrize_constant_speed, spread, CurveGeometry, DiscreteCurve};
use crate::energy::{energy_differential, unit_normals};
use crate::math;
use crate::{Error, Result};

/// Hyperbolic distances between consecutive samples and their gradients
/// with respect to the first (`d0`) and second (`d1`) endpoint.
struct Chords {
    d: Vec<f64>,
    d0: Vec<[f64; 2]>,
    d1: Vec<[f64; 2]>,
}

fn chords(xy: &[[f64; 2]]) -> Chords {
    let n = xy.len();
    let mut out = Chords { d: Vec::with_capacity(n), d0: Vec::with_capacity(n), d1: Vec::with_capacity(n) };
    for i in 0..n {
        let a = xy[i];
        let b = xy[(i + 1) % n];
        let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
        let s = dx * dx + dy * dy;
        let yy = a[1] * b[1];
        let z = s / (2.0 * yy);
        out.d.push(2.0 * math::asinh(math::sqrt(s) / (2.0 * math::sqrt(yy))));
        // d = arccosh(1 + z), d' = 1/sqrt(z(2 + z))
        let w = 1.0 / math::sqrt(z * (2.0 + z));
        out.d1.push([w * dx / yy, w * (dy / yy - s / (2.0 * yy * b[1]))]);
        out.d0.push([-w * dx / yy, w * (-dy / yy - s / (2.0 * yy * a[1]))]);
    }
    out
}

pub fn chord_lengths(c: &DiscreteCurve) -> Vec<f64> {
    chords(c.xy()).d
}

/// (max − min)/mean of the chord lengths.
pub fn chord_spread(c: &DiscreteCurve) -> f64 {
    spread(&chord_lengths(c))
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

// Rows i < n: R_i τ_i + S_i τ_{i+1} − c; row n: Σ τ_i.
fn bordered(r: &[f64], s: &[f64]) -> DMatrix<f64> {
    let n = r.len();
    let mut b = DMatrix::zeros(n + 1, n + 1);
    for i in 0..n {
        b[(i, i)] += r[i];
        b[(i, (i + 1) % n)] += s[i];
        b[(i, n)] = -1.0;
        b[(n, i)] = 1.0;
    }
    b
}

fn solve(lu: &LU<f64, Dyn, Dyn>, rhs: Vec<f64>) -> Result<Vec<f64>> {
    let n = rhs.len();
    let x = lu.solve(&DVector::from_vec(rhs)).ok_or(Error::Singular)?;
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Singular);
    }
    Ok(x.as_slice()[..n - 1].to_vec())
}

/// Linearized gauge at one curve.
#[derive(Debug, Clone)]
pub struct Gauge {
    tangents: Vec<[f64; 2]>,
    normals: Vec<[f64; 2]>,
    p: Vec<f64>,
    q: Vec<f64>,
    lu: LU<f64, Dyn, Dyn>,
    lu_t: LU<f64, Dyn, Dyn>,
}

impl Gauge {
    pub fn new(geom: &CurveGeometry) -> Result<Self> {
        let n = geom.n_samples();
        let tangents: Vec<[f64; 2]> = (0..n).map(|i| geom.t_raw(i)).collect();
        let normals = unit_normals(geom);
        let ch = chords(&geom.xy);
        let mut r = Vec::with_capacity(n);
        let mut s = Vec::with_capacity(n);
        let mut p = Vec::with_capacity(n);
        let mut q = Vec::with_capacity(n);
        for i in 0..n {
            let j = (i + 1) % n;
            r.push(dot(ch.d0[i], tangents[i]));
            s.push(dot(ch.d1[i], tangents[j]));
            p.push(dot(ch.d0[i], normals[i]));
            q.push(dot(ch.d1[i], normals[j]));
        }
        let b = bordered(&r, &s);
        let lu_t = b.transpose().lu();
        let lu = b.lu();
        Ok(Gauge { tangents, normals, p, q, lu, lu_t })
    }

    pub fn tangents(&self) -> &[[f64; 2]] {
        &self.tangents
    }

    pub fn normals(&self) -> &[[f64; 2]] {
        &self.normals
    }

    /// Tangential speeds (mean zero) keeping the chords equal to first order
    /// under the normal speeds `u`.
    pub fn slave(&self, u: &[f64]) -> Result<Vec<f64>> {
        let n = self.p.len();
        if u.len() != n {
            return Err(Error::GridMismatch { expected: n, got: u.len() });
        }
        let mut rhs: Vec<f64> = (0..n).map(|i| -(self.p[i] * u[i] + self.q[i] * u[(i + 1) % n])).collect();
        rhs.push(0.0);
        solve(&self.lu, rhs)
    }

    /// Adjoint of [`Gauge::slave`] in the plain Euclidean pairing.
    pub fn slave_adjoint(&self, w: &[f64]) -> Result<Vec<f64>> {
        let n = self.p.len();
        if w.len() != n {
            return Err(Error::GridMismatch { expected: n, got: w.len() });
        }
        let mut rhs = w.to_vec();
        rhs.push(0.0);
        let z = solve(&self.lu_t, rhs)?;
        Ok((0..n).map(|j| -(self.p[j] * z[j] + self.q[(j + n - 1) % n] * z[(j + n - 1) % n])).collect())
    }
}

/// Gradient of E_λ on the gauge, as normal speeds.
#[derive(Debug, Clone)]
pub struct GaugeGradient {
    /// G_i, the coefficient of the unit normal.
    pub normal_speed: Vec<f64>,
    /// Quadrature weights ds_i·h of the L²(ds) pairing.
    pub weights: Vec<f64>,
    pub grad_l2: f64,
    pub gauge: Gauge,
}

impl GaugeGradient {
    pub fn new(geom: &CurveGeometry, lambda: f64) -> Result<Self> {
        let n = geom.n_samples();
        let h = geom.h();
        let gauge = Gauge::new(geom)?;
        let de = energy_differential(geom, lambda);
        let gn: Vec<f64> = (0..n).map(|i| dot(de[i], gauge.normals[i])).collect();
        let gt: Vec<f64> = (0..n).map(|i| dot(de[i], gauge.tangents[i])).collect();
        let lt = gauge.slave_adjoint(&gt)?;
        let weights: Vec<f64> = geom.ds.iter().map(|d| d * h).collect();
        let normal_speed: Vec<f64> = (0..n).map(|i| (gn[i] + lt[i]) / weights[i]).collect();
        let grad_l2 = math::sqrt((0..n).map(|i| normal_speed[i] * normal_speed[i] * weights[i]).sum());
        Ok(GaugeGradient { normal_speed, weights, grad_l2, gauge })
    }

    /// Displacement u·n + (L u)·T in chart components.
    pub fn displacement(&self, u: &[f64]) -> Result<Vec<[f64; 2]>> {
        let tau = self.gauge.slave(u)?;
        let (t, nr) = (&self.gauge.tangents, &self.gauge.normals);
        Ok((0..u.len())
            .map(|i| [u[i] * nr[i][0] + tau[i] * t[i][0], u[i] * nr[i][1] + tau[i] * t[i][1]])
            .collect())
    }
}

pub const PROJECT_TOL: f64 = 1e-12;
const PROJECT_ITERS: usize = 25;

/// Moves samples along the curve's tangents until all chords agree to
/// `PROJECT_TOL` relative.
pub fn project(c: &DiscreteCurve) -> Result<DiscreteCurve> {
    let mut xy = c.xy().to_vec();
    for _ in 0..PROJECT_ITERS {
        let ch = chords(&xy);
        let n = xy.len();
        let mean = ch.d.iter().sum::<f64>() / n as f64;
        let worst = ch.d.iter().map(|d| math::abs(d - mean)).fold(0.0, f64::max);
        if worst <= PROJECT_TOL * mean {
            return DiscreteCurve::from_xy(xy);
        }
        let geom = CurveGeometry::new(&DiscreteCurve::from_xy(xy.clone())?)?;
        let t: Vec<[f64; 2]> = (0..n).map(|i| geom.t_raw(i)).collect();
        let r: Vec<f64> = (0..n).map(|i| dot(ch.d0[i], t[i])).collect();
        let s: Vec<f64> = (0..n).map(|i| dot(ch.d1[i], t[(i + 1) % n])).collect();
        let mut rhs: Vec<f64> = ch.d.iter().map(|d| mean - d).collect();
        rhs.push(0.0);
        let tau = solve(&bordered(&r, &s).lu(), rhs)?;
        for i in 0..n {
            xy[i][0] += tau[i] * t[i][0];
            xy[i][1] += tau[i] * t[i][1];
        }
    }
    Err(Error::Domain("gauge projection did not converge"))
}

/// Resamples at nearly equal arclength, then projects onto the gauge.
pub fn enter_gauge(c: &DiscreteCurve) -> Result<DiscreteCurve> {
    project(&reparametrize_constant_speed(c)?)
}
