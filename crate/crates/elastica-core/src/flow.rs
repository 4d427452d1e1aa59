//! L²-gradient flow ∂_t f = −∇E_λ(f).
//!
//! Each step moves the samples by a normal speed u solving
//!
//!   (M + Δt·K) u = −Δt·M·G,   M = diag(ds_i·h),  K = D₂ diag(M/ds⁴) D₂,
//!
//! where G is the gradient and D₂ the periodic (1, −2, 1)/h² stencil. K is
//! the leading fourth-order part of the flow with its coefficient
//! y₂⁴/|∂_x f|⁴ frozen at the current curve; everything else is explicit.
//! With redistribution on (the default), u also drags a tangential speed
//! that keeps neighbouring samples equidistant, G is the gradient on that
//! gauge (see [`crate::gauge`]), and the gauge is restored exactly every
//! `redistribute_every` accepted steps. Steps that do not decrease E_λ by a
//! fixed fraction of the predicted amount are rejected and retried with
//! half the step.

use alloc::boxed::Box;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::banded::CyclicBandedSpd;
use crate::curve::{CurveGeometry, DiscreteCurve};
use crate::energy::{energy_differential, unit_normals, EnergyReport};
use crate::gauge::{enter_gauge, project, GaugeGradient};
use crate::math;
use crate::{Error, Result};

pub const MIN_DT: f64 = 1e-14;
const ROUNDOFF_ULPS: f64 = 16.0;

#[derive(Debug, Clone, PartialEq)]
pub struct FlowConfig {
    pub lambda: f64,
    pub n_samples: usize,
    /// `None` picks 1e−4·(mean ds)² from the initial curve.
    pub dt_init: Option<f64>,
    pub t_end: f64,
    pub grad_tol: f64,
    /// 0 turns redistribution off: samples then move purely normally.
    pub redistribute_every: u32,
    pub energy_backtrack: bool,
    pub max_dt_growth: f64,
    /// Accept only if ΔE ≤ σ·(predicted ΔE).
    pub sufficient_decrease: f64,
    pub y2_floor: f64,
    pub max_steps: u64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig {
            lambda: 0.1,
            n_samples: 256,
            dt_init: None,
            t_end: 1e4,
            grad_tol: 1e-5,
            redistribute_every: 1,
            energy_backtrack: true,
            max_dt_growth: 1.5,
            sufficient_decrease: 0.5,
            y2_floor: 1e-12,
            max_steps: 100_000,
        }
    }
}

impl FlowConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m| Err(Error::Domain(m));
        if !(self.lambda >= 0.0) || !self.lambda.is_finite() {
            return bad("lambda must be a finite non-negative number");
        }
        if self.n_samples < crate::curve::MIN_SAMPLES || !self.n_samples.is_multiple_of(2) {
            return Err(Error::BadSampleCount(self.n_samples));
        }
        if !(self.t_end > 0.0) {
            return bad("t_end must be positive");
        }
        if let Some(dt) = self.dt_init {
            if !(dt > 0.0) || !dt.is_finite() {
                return bad("dt_init must be positive");
            }
            if dt > self.t_end {
                return bad("dt_init must not exceed t_end");
            }
        }
        if !(self.grad_tol > 0.0) {
            return bad("grad_tol must be positive");
        }
        if !(self.max_dt_growth >= 1.0) || !self.max_dt_growth.is_finite() {
            return bad("max_dt_growth must be at least 1");
        }
        if !(self.sufficient_decrease >= 0.0 && self.sufficient_decrease < 1.0) {
            return bad("sufficient_decrease must lie in [0, 1)");
        }
        if !(self.y2_floor > 0.0) {
            return bad("y2_floor must be positive");
        }
        if self.max_steps == 0 {
            return bad("max_steps must be positive");
        }
        Ok(())
    }

    fn gauge(&self) -> bool {
        self.redistribute_every > 0
    }
}

/// 1e−4·(mean ds)², the default initial step.
pub fn default_dt(c: &DiscreteCurve) -> Result<f64> {
    let g = CurveGeometry::new(c)?;
    let m = g.ds.iter().sum::<f64>() / g.ds.len() as f64;
    Ok(1e-4 * m * m)
}

#[derive(Debug)]
enum Descent {
    Gauge(Box<GaugeGradient>),
    Normal { speed: Vec<f64>, weights: Vec<f64>, normals: Vec<[f64; 2]> },
}

impl Descent {
    fn new(geom: &CurveGeometry, lambda: f64, gauge: bool) -> Result<Self> {
        if gauge {
            return Ok(Descent::Gauge(Box::new(GaugeGradient::new(geom, lambda)?)));
        }
        let h = geom.h();
        let de = energy_differential(geom, lambda);
        let normals = unit_normals(geom);
        let weights: Vec<f64> = geom.ds.iter().map(|d| d * h).collect();
        let speed = (0..de.len())
            .map(|i| (de[i][0] * normals[i][0] + de[i][1] * normals[i][1]) / weights[i])
            .collect();
        Ok(Descent::Normal { speed, weights, normals })
    }

    fn speed(&self) -> &[f64] {
        match self {
            Descent::Gauge(g) => &g.normal_speed,
            Descent::Normal { speed, .. } => speed,
        }
    }

    fn weights(&self) -> &[f64] {
        match self {
            Descent::Gauge(g) => &g.weights,
            Descent::Normal { weights, .. } => weights,
        }
    }

    fn grad_l2(&self) -> f64 {
        let (s, w) = (self.speed(), self.weights());
        math::sqrt(s.iter().zip(w).map(|(a, b)| a * a * b).sum())
    }

    fn displacement(&self, u: &[f64]) -> Result<Vec<[f64; 2]>> {
        match self {
            Descent::Gauge(g) => g.displacement(u),
            Descent::Normal { normals, .. } => {
                Ok(u.iter().zip(normals).map(|(a, n)| [a * n[0], a * n[1]]).collect())
            }
        }
    }

    /// Solves (M + dt·K) u = −dt·M·G.
    fn implicit_speed(&self, ds: &[f64], dt: f64) -> Result<Vec<f64>> {
        let (g, m) = (self.speed(), self.weights());
        let n = g.len();
        let h = 1.0 / n as f64;
        let h4 = h * h * h * h;
        let w = [1.0, -2.0, 1.0];
        let mut a = CyclicBandedSpd::new(n, 2)?;
        for k in 0..n {
            a.add(k, k, m[k]);
            let d2 = ds[k] * ds[k];
            let c = dt * m[k] / (d2 * d2 * h4);
            for i in 0..3 {
                for j in i..3 {
                    a.add((k + n + i - 1) % n, (k + n + j - 1) % n, w[i] * w[j] * c);
                }
            }
        }
        let rhs: Vec<f64> = (0..n).map(|i| -dt * m[i] * g[i]).collect();
        a.factor()?.solve(&rhs)
    }
}

#[derive(Debug, Clone)]
pub struct FlowState {
    pub t: f64,
    pub curve: DiscreteCurve,
    /// Energies of `curve`; `grad_l2` is the norm of the gradient the flow
    /// descends (on the gauge when redistribution is on).
    pub report: EnergyReport,
    /// Step to try next.
    pub dt: f64,
    pub steps_accepted: u64,
    pub steps_rejected: u64,
    ds: Arc<Vec<f64>>,
    descent: Arc<Descent>,
}

impl FlowState {
    /// Wraps `curve` as a state at t = 0 without touching its samples.
    pub fn new(curve: DiscreteCurve, config: &FlowConfig) -> Result<Self> {
        config.validate()?;
        let dt = match config.dt_init {
            Some(dt) => dt,
            None => default_dt(&curve)?,
        };
        let (geom, descent) = evaluate(&curve, config)?;
        let report = EnergyReport::with_grad(&geom, config.lambda, descent.grad_l2());
        Ok(FlowState {
            t: 0.0,
            curve,
            report,
            dt,
            steps_accepted: 0,
            steps_rejected: 0,
            ds: Arc::new(geom.ds),
            descent: Arc::new(descent),
        })
    }

    /// Gradient values G_i (coefficients of the unit normal).
    pub fn gradient_speed(&self) -> &[f64] {
        self.descent.speed()
    }
}

fn evaluate(curve: &DiscreteCurve, config: &FlowConfig) -> Result<(CurveGeometry, Descent)> {
    let geom = CurveGeometry::new(curve)?;
    let d = Descent::new(&geom, config.lambda, config.gauge())?;
    Ok((geom, d))
}

/// A failed step or run, with the last accepted state.
#[derive(Debug, Clone)]
pub struct FlowError {
    pub error: Error,
    pub last: Box<FlowState>,
}

impl fmt::Display for FlowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (last good state at t = {})", self.error, self.last.t)
    }
}

impl core::error::Error for FlowError {}

/// One accepted step, retrying with halved dt as needed.
pub fn step(state: &FlowState, config: &FlowConfig) -> core::result::Result<FlowState, FlowError> {
    step_capped(state, config, f64::INFINITY)
}

fn step_capped(state: &FlowState, config: &FlowConfig, dt_cap: f64) -> core::result::Result<FlowState, FlowError> {
    let fail = |error| FlowError { error, last: Box::new(state.clone()) };
    let mut dt = state.dt.min(dt_cap);
    let mut rejected = state.steps_rejected;
    loop {
        if dt < MIN_DT {
            return Err(fail(Error::Stiffness { dt }));
        }
        match try_step(state, config, dt) {
            Ok(Some(mut next)) => {
                next.steps_rejected = rejected;
                next.dt = dt * config.max_dt_growth;
                return Ok(next);
            }
            Ok(None) | Err(_) => {
                dt *= 0.5;
                rejected += 1;
            }
        }
    }
}

fn try_step(state: &FlowState, config: &FlowConfig, dt: f64) -> Result<Option<FlowState>> {
    let d = &state.descent;
    let u = d.implicit_speed(&state.ds, dt)?;
    let disp = d.displacement(&u)?;
    let xy: Vec<[f64; 2]> = state.curve.xy().iter().zip(&disp).map(|(p, v)| [p[0] + v[0], p[1] + v[1]]).collect();
    if xy.iter().any(|p| !(p[1] > config.y2_floor)) {
        return Ok(None);
    }
    let mut curve = DiscreteCurve::from_xy(xy)?;
    let accepted = state.steps_accepted + 1;
    if config.gauge() && accepted.is_multiple_of(config.redistribute_every as u64) {
        curve = project(&curve)?;
    }
    let (geom, descent) = evaluate(&curve, config)?;
    let report = EnergyReport::with_grad(&geom, config.lambda, descent.grad_l2());
    if config.energy_backtrack {
        let predicted: f64 = d.speed().iter().zip(d.weights()).zip(&u).map(|((g, m), u)| g * m * u).sum();
        // Below a few ulps of E the comparison is noise; without the slack dt
        // collapses once the predicted decrease falls under roundoff.
        let slack = ROUNDOFF_ULPS * f64::EPSILON * state.report.penalized.abs().max(1.0);
        if !(report.penalized <= state.report.penalized + config.sufficient_decrease * predicted + slack) {
            return Ok(None);
        }
    }
    Ok(Some(FlowState {
        t: state.t + dt,
        curve,
        report,
        dt,
        steps_accepted: accepted,
        steps_rejected: state.steps_rejected,
        ds: Arc::new(geom.ds),
        descent: Arc::new(descent),
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    GradTol,
    TEnd,
    MaxSteps,
}

impl Termination {
    pub fn as_str(&self) -> &'static str {
        match self {
            Termination::GradTol => "grad_tol",
            Termination::TEnd => "t_end",
            Termination::MaxSteps => "max_steps",
        }
    }
}

/// Starting state of a run: the initial curve moved onto the gauge when
/// redistribution is on.
pub fn initial_state(config: &FlowConfig, initial: &DiscreteCurve) -> Result<FlowState> {
    config.validate()?;
    if initial.n_samples() != config.n_samples {
        return Err(Error::GridMismatch { expected: config.n_samples, got: initial.n_samples() });
    }
    let curve = if config.gauge() { enter_gauge(initial)? } else { initial.clone() };
    let mut cfg = config.clone();
    if cfg.dt_init.is_none() {
        cfg.dt_init = Some(default_dt(initial)?);
    }
    FlowState::new(curve, &cfg)
}

/// Runs to `t_end`, `grad_tol` or `max_steps`, handing every state
/// (including the first) to `observe`.
pub fn run_observed(
    config: &FlowConfig,
    initial: &DiscreteCurve,
    mut observe: impl FnMut(&FlowState),
) -> core::result::Result<(FlowState, Termination), FlowError> {
    let mut state = initial_state(config, initial)
        .map_err(|error| FlowError { error, last: Box::new(raw_state(initial)) })?;
    observe(&state);
    let t_eps = 1e-12 * config.t_end;
    loop {
        if state.report.grad_l2 < config.grad_tol {
            return Ok((state, Termination::GradTol));
        }
        if state.t >= config.t_end - t_eps {
            return Ok((state, Termination::TEnd));
        }
        if state.steps_accepted >= config.max_steps {
            return Ok((state, Termination::MaxSteps));
        }
        state = step_capped(&state, config, config.t_end - state.t)?;
        observe(&state);
    }
}

// Placeholder for failures before any state could be evaluated.
fn raw_state(curve: &DiscreteCurve) -> FlowState {
    let nan = f64::NAN;
    FlowState {
        t: 0.0,
        curve: curve.clone(),
        report: EnergyReport { elastic: nan, penalized: nan, length: nan, total_abs_curv: nan, grad_l2: nan, lambda: nan },
        dt: nan,
        steps_accepted: 0,
        steps_rejected: 0,
        ds: Arc::new(Vec::new()),
        descent: Arc::new(Descent::Normal { speed: Vec::new(), weights: Vec::new(), normals: Vec::new() }),
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    /// First state, every `snapshot_every`-th accepted state, and the last.
    pub snapshots: Vec<FlowState>,
    /// (t, report) for every accepted state, starting at t = 0.
    pub log: Vec<(f64, EnergyReport)>,
    pub termination: Termination,
}

pub fn run(
    config: &FlowConfig,
    initial: &DiscreteCurve,
    snapshot_every: u64,
) -> core::result::Result<Trajectory, FlowError> {
    let mut snapshots = Vec::new();
    let mut log = Vec::new();
    let every = snapshot_every.max(1);
    let (last, termination) = run_observed(config, initial, |s| {
        log.push((s.t, s.report));
        if s.steps_accepted % every == 0 {
            snapshots.push(s.clone());
        }
    })?;
    if snapshots.last().map(|s| s.steps_accepted) != Some(last.steps_accepted) {
        snapshots.push(last);
    }
    Ok(Trajectory { snapshots, log, termination })
}

/// True iff the gradient norm is below `tol`.
pub fn detect_critical(report: &EnergyReport, tol: f64) -> bool {
    tol == f64::INFINITY || report.grad_l2 < tol
}

/// Translates horizontally and dilates so that the sample nearest the
/// median of the y1-coordinates lands on (0, 2·l0). Returns the curve and
/// (p, α) with new = α·(old − (p, 0)).
pub fn normalize_subconvergence(c: &DiscreteCurve, l0: f64) -> Result<(DiscreteCurve, f64, f64)> {
    if !(l0 > 0.0) {
        return Err(Error::Domain("reference length must be positive"));
    }
    let xy = c.xy();
    let n = xy.len();
    let mut xs: Vec<f64> = xy.iter().map(|p| p[0]).collect();
    xs.sort_by(|a, b| a.total_cmp(b));
    let median = 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
    let mut best = 0;
    for i in 1..n {
        if math::abs(xy[i][0] - median) < math::abs(xy[best][0] - median) {
            best = i;
        }
    }
    let p = xy[best][0];
    let alpha = 2.0 * l0 / xy[best][1];
    let out: Vec<[f64; 2]> = xy.iter().map(|q| [alpha * (q[0] - p), alpha * q[1]]).collect();
    Ok((DiscreteCurve::from_xy(out)?, p, alpha))
}
