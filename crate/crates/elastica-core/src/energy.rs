//! Elastic energies, their gradient, norms of κ, and the Willmore energy of
//! the surface of revolution generated by a curve.
//!
//! The discrete energy is E_λ = h·Σ (½|κ_i|² + λ)·ds_i with κ from central
//! differences. With p = ∂_x f, q = ∂_x² f, m = |p| and c = p × q, the
//! integrand has the closed form
//!
//!   k = y₂·c/m³ + p₁/m,  |κ|_g = |k|,  e = (½k² + λ)·m/y₂,
//!
//! which is differentiated exactly to get ∂E_λ/∂f_j.

use alloc::vec;
use alloc::vec::Vec;

use crate::curve::{reparametrize_euclidean, total_abs_curvature, total_length, CurveGeometry, DiscreteCurve};
use crate::hyperbolic::TangentVec;
use crate::math::{self, TAU};
use crate::{Error, Result};

pub const S0_HALF_PLANE: f64 = -1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyReport {
    pub elastic: f64,
    pub penalized: f64,
    pub length: f64,
    pub total_abs_curv: f64,
    pub grad_l2: f64,
    pub lambda: f64,
}

impl EnergyReport {
    /// Energies of `geom` with `grad_l2` taken from [`gradient`].
    pub fn new(geom: &CurveGeometry, lambda: f64) -> Self {
        let g = gradient(geom, lambda);
        Self::with_grad(geom, lambda, l2_norm(geom, &g.values).unwrap_or(f64::NAN))
    }

    /// Energies of `geom` with a gradient norm computed elsewhere.
    pub fn with_grad(geom: &CurveGeometry, lambda: f64, grad_l2: f64) -> Self {
        let elastic = elastic_energy(geom);
        let length = total_length(geom);
        EnergyReport {
            elastic,
            penalized: elastic + lambda * length,
            length,
            total_abs_curv: total_abs_curvature(geom),
            grad_l2,
            lambda,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradientField {
    pub values: Vec<TangentVec>,
}

/// ½∫|κ|²_g ds.
pub fn elastic_energy(geom: &CurveGeometry) -> f64 {
    geom.integrate(|i| 0.5 * geom.kappa_norm[i] * geom.kappa_norm[i])
}

/// ½∫(|κ|²_g + 2λ) ds.
pub fn penalized_energy(geom: &CurveGeometry, lambda: f64) -> f64 {
    elastic_energy(geom) + lambda * total_length(geom)
}

struct Partials {
    dep: [f64; 2],
    deq: [f64; 2],
    dey: f64,
}

fn partials(p: [f64; 2], q: [f64; 2], y: f64, lambda: f64) -> Partials {
    let m = math::hypot(p[0], p[1]);
    let m3 = m * m * m;
    let c = p[0] * q[1] - p[1] * q[0];
    let k = y * c / m3 + p[0] / m;
    let dky = c / m3;
    let dkq = [-y * p[1] / m3, y * p[0] / m3];
    let a = 3.0 * y * c / (m3 * m * m);
    let dkp = [
        y * q[1] / m3 - a * p[0] + 1.0 / m - p[0] * p[0] / m3,
        -y * q[0] / m3 - a * p[1] - p[0] * p[1] / m3,
    ];
    let w = 0.5 * k * k + lambda;
    let km = k * m / y;
    Partials {
        dep: [km * dkp[0] + w * p[0] / (m * y), km * dkp[1] + w * p[1] / (m * y)],
        deq: [km * dkq[0], km * dkq[1]],
        dey: km * dky - w * m / (y * y),
    }
}

/// ∂E_λ/∂f_j of the discrete energy, per sample, in chart components.
pub fn energy_differential(geom: &CurveGeometry, lambda: f64) -> Vec<[f64; 2]> {
    let n = geom.n_samples();
    let h = geom.h();
    let parts: Vec<Partials> = (0..n)
        .map(|i| partials(geom.fp[i], geom.fpp[i], geom.xy[i][1], lambda))
        .collect();
    let mut out = vec![[0.0; 2]; n];
    for j in 0..n {
        let (a, b) = ((j + n - 1) % n, (j + 1) % n);
        for c in 0..2 {
            out[j][c] = h
                * ((parts[a].dep[c] - parts[b].dep[c]) / (2.0 * h)
                    + (parts[a].deq[c] - 2.0 * parts[j].deq[c] + parts[b].deq[c]) / (h * h));
        }
        out[j][1] += h * parts[j].dey;
    }
    out
}

/// Unit normal (in g) at each sample, rotating ∂_s f by +90°.
pub(crate) fn unit_normals(geom: &CurveGeometry) -> Vec<[f64; 2]> {
    (0..geom.n_samples())
        .map(|i| {
            let t = geom.t_raw(i);
            [-t[1], t[0]]
        })
        .collect()
}

/// L²(ds) gradient of the discrete E_λ along normal variations: the normal
/// field G with dE_λ(V) = ∫⟨G, V⟩_g ds exactly for every normal V.
pub fn gradient(geom: &CurveGeometry, lambda: f64) -> GradientField {
    let de = energy_differential(geom, lambda);
    let nr = unit_normals(geom);
    let h = geom.h();
    let v: Vec<[f64; 2]> = (0..geom.n_samples())
        .map(|i| {
            // dE(V) = Σ de·V = Σ ⟨G, V⟩_g ds_i h, and n is g-unit.
            let s = (de[i][0] * nr[i][0] + de[i][1] * nr[i][1]) / (geom.ds[i] * h);
            [s * nr[i][0], s * nr[i][1]]
        })
        .collect();
    GradientField { values: geom.wrap(&v) }
}

/// Pointwise evaluation of (∇⊥_s)²κ + ½|κ|²κ − λκ + S₀κ.
pub fn gradient_formula(geom: &CurveGeometry, lambda: f64, s0: f64) -> GradientField {
    let k = &geom.nabla_perp_kappa[0];
    let k2 = &geom.nabla_perp_kappa[2];
    let v: Vec<[f64; 2]> = (0..geom.n_samples())
        .map(|i| {
            let a = 0.5 * geom.kappa_norm[i] * geom.kappa_norm[i] - lambda + s0;
            [k2[i].v[0] + a * k[i].v[0], k2[i].v[1] + a * k[i].v[1]]
        })
        .collect();
    GradientField { values: geom.wrap(&v) }
}

/// sqrt(∫|X|²_g ds).
pub fn l2_norm(geom: &CurveGeometry, field: &[TangentVec]) -> Result<f64> {
    let x = geom.unwrap_field(field)?;
    Ok(math::sqrt(geom.integrate(|i| geom.ip(i, x[i], x[i]))))
}

/// ‖|κ|_g‖ in L^p(ds); `p = f64::INFINITY` gives the maximum.
pub fn lp_norm_kappa(geom: &CurveGeometry, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::Domain("p must be at least 1"));
    }
    if p == f64::INFINITY {
        return Ok(geom.kappa_norm.iter().cloned().fold(0.0, f64::max));
    }
    let s = geom.integrate(|i| math::powf(geom.kappa_norm[i], p));
    Ok(math::powf(s, 1.0 / p))
}

/// (Σ_{j ≤ k} ‖(∇⊥_s)^j κ‖²_{L²})^{1/2}.
pub fn sobolev_norm_kappa(geom: &CurveGeometry, k: usize) -> f64 {
    let mut s = 0.0;
    for j in 0..=k {
        let f = geom.perp_kappa(j);
        s += geom.integrate(|i| geom.ip(i, f[i].v, f[i].v));
    }
    math::sqrt(s)
}

/// Lower bound on the length of any closed curve with E ≤ e0, from
/// 2π ≤ ∫|κ| ds ≤ √L·√(2E).
pub fn fenchel_length_lower_bound(e0: f64) -> Result<f64> {
    if !(e0 > 0.0) {
        return Err(Error::Domain("energy bound must be positive"));
    }
    Ok(TAU * TAU / (2.0 * e0))
}

/// W = (π/2)∫(γ₁''γ₂' − γ₂''γ₁' + γ₁'/γ₂)² γ₂ dσ for γ parametrized by
/// Euclidean arclength σ.
pub fn willmore_of_revolution(c: &DiscreteCurve) -> Result<f64> {
    let e = reparametrize_euclidean(c)?;
    let geom = CurveGeometry::new(&e)?;
    let h = geom.h();
    let mut s = 0.0;
    for i in 0..geom.n_samples() {
        let [p1, p2] = geom.fp[i];
        let [q1, q2] = geom.fpp[i];
        let m = math::hypot(p1, p2);
        let t = [p1 / m, p2 / m];
        let pq = (p1 * q1 + p2 * q2) / (m * m);
        let tt = [(q1 - pq * p1) / (m * m), (q2 - pq * p2) / (m * m)];
        let y = geom.xy[i][1];
        let a = tt[0] * t[1] - tt[1] * t[0] + t[0] / y;
        s += a * a * y * m;
    }
    Ok(0.5 * core::f64::consts::PI * s * h)
}

/// Both sides of the elastica/Willmore correspondence on one curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WillmoreRelation {
    pub elastic: f64,
    pub willmore: f64,
    /// W/E with E = ½∫|κ|² ds; π for closed curves.
    pub w_over_e: f64,
    /// E/W; the constant 2/π holds only for the energy ∫|κ|² ds without the ½.
    pub e_over_w: f64,
    /// e_over_w − 2/π.
    pub two_over_pi_gap: f64,
}

pub fn willmore_relation(c: &DiscreteCurve) -> Result<WillmoreRelation> {
    let geom = CurveGeometry::new(c)?;
    let e = elastic_energy(&geom);
    let w = willmore_of_revolution(c)?;
    Ok(WillmoreRelation {
        elastic: e,
        willmore: w,
        w_over_e: w / e,
        e_over_w: e / w,
        two_over_pi_gap: e / w - 2.0 / core::f64::consts::PI,
    })
}
