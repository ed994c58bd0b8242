//! Real levels by scanning `g(s) = residual_real(s, Z/(2s))` along the
//! constraint hyperbola and bisecting each sign change.

use std::f64::consts::FRAC_PI_4;

use crate::error::{Error, Result};
use crate::matching::real_state;
use crate::model::{BoundState, ModelParams, WaveVector};
use crate::roots::{bisect, extremum, straddles};

use super::sort_levels;

/// Scan range along the hyperbola.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketOptions {
    pub s_min: f64,
    pub s_max: f64,
    /// Levels above this energy are not sought; shrinks the `s` range.
    pub e_max: f64,
}

impl Default for BracketOptions {
    fn default() -> Self {
        Self { s_min: 1e-6, s_max: 12.0, e_max: f64::INFINITY }
    }
}

/// Result of one sweep: level positions plus what the sweep covered.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketSweep {
    /// `s` of each level, ascending (so energies descend).
    pub roots: Vec<f64>,
    pub s_range: (f64, f64),
    pub t_range: (f64, f64),
    pub grid_points: usize,
    /// Steps that had to exceed the phase-resolution bound.
    pub underresolved_steps: usize,
    /// Largest `|g|` at a root relative to `s|sinh σ| + t`.
    pub max_residual: f64,
    z: f64,
}

impl BracketSweep {
    /// Bound states, ascending in energy.
    pub fn levels(&self, params: &ModelParams) -> Vec<BoundState> {
        let mut out: Vec<BoundState> = self
            .roots
            .iter()
            .map(|&s| real_state(WaveVector::on_hyperbola(s, self.z), params))
            .collect();
        sort_levels(&mut out);
        out
    }
}

/// `g`, `dg/ds` and step hints at one point of the hyperbola.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolaSample {
    pub g: f64,
    pub slope: f64,
    /// Magnitude of the two terms of `g`, for relative residuals.
    pub scale: f64,
    /// Largest `s` increment keeping the phases `σ`, `τ` within `π/4`.
    pub phase_step: f64,
    /// `ln(s|sinh σ|/t)` and its `s`-derivative; the sign of `g` is locked
    /// while the former stays positive.
    pub dominance: f64,
    pub dominance_slope: f64,
}

/// `ln|sinh x|` without overflow.
fn ln_abs_sinh(x: f64) -> f64 {
    let a = x.abs();
    if a < 20.0 {
        a.sinh().ln()
    } else {
        a - std::f64::consts::LN_2 + (-(-2.0 * a).exp()).ln_1p()
    }
}

/// Samples `g(s) = s sinh σ + t sin τ` with `t = Z/(2s)`.
pub fn hyperbola_residual(params: &ModelParams, s: f64) -> HyperbolaSample {
    let om = params.omega();
    let t = params.z() / (2.0 * s);
    let sigma = 2.0 * (s - t * om);
    let tau = 2.0 * (s * om + t);
    let (sh, ch) = (sigma.sinh(), sigma.cosh());
    let (sn, cs) = tau.sin_cos();
    let g = s * sh + t * sn;
    let d_sigma = 2.0 * (1.0 + om * t / s);
    let d_tau = 2.0 * (om - t / s);
    let d_t = -t / s;
    let slope = sh + s * ch * d_sigma + d_t * sn + t * cs * d_tau;
    let phase_step = FRAC_PI_4 / d_sigma.abs().max(d_tau.abs()).max(1e-300);
    let dominance = s.ln() + ln_abs_sinh(sigma) - t.ln();
    let coth = if sigma.abs() > 20.0 { sigma.signum() } else { 1.0 / sigma.tanh() };
    let dominance_slope = 2.0 / s + coth * d_sigma;
    HyperbolaSample { g, slope, scale: (s * sh).abs() + t, phase_step, dominance, dominance_slope }
}

const MAX_STEP: f64 = 0.02;

/// Lower end of the `s` range implied by `E ≤ e_max`.
fn s_for_energy(e_max: f64, z: f64) -> f64 {
    if e_max == f64::INFINITY {
        return 0.0;
    }
    let root = e_max.hypot(z);
    let s2 = if e_max > 0.0 { z * z / (2.0 * (e_max + root)) } else { 0.5 * (root - e_max) };
    s2.sqrt()
}

/// Sweeps the hyperbola and returns every sign change of `g`.
pub fn bracket_sweep(params: &ModelParams, opts: &BracketOptions) -> Result<BracketSweep> {
    let z = params.z();
    if !(z > 0.0) {
        return Err(Error::Domain("the hyperbola scan needs Z > 0".into()));
    }
    if !(opts.s_min > 0.0 && opts.s_max > opts.s_min) || opts.e_max.is_nan() {
        return Err(Error::Domain(format!(
            "invalid scan range s in ({}, {}], e_max = {}",
            opts.s_min, opts.s_max, opts.e_max
        )));
    }
    let lo = opts.s_min.max(s_for_energy(opts.e_max, z));
    let hi = opts.s_max;
    let mut sweep = BracketSweep {
        roots: Vec::new(),
        s_range: (lo, hi),
        t_range: (z / (2.0 * hi), z / (2.0 * lo)),
        grid_points: 0,
        underresolved_steps: 0,
        max_residual: 0.0,
        z,
    };
    if lo >= hi {
        return Ok(sweep);
    }
    let g = |s: f64| hyperbola_residual(params, s).g;
    let dg = |s: f64| hyperbola_residual(params, s).slope;

    let mut s0 = lo;
    let mut a = hyperbola_residual(params, s0);
    while s0 < hi {
        let mut step = a.phase_step.min(MAX_STEP);
        if a.dominance > 1.0 && a.dominance_slope.is_finite() {
            // Sign of g cannot change while s|sinh σ| > t.
            let safe = 0.5 * a.dominance / a.dominance_slope.abs().max(1e-300);
            step = step.max(safe.min(s0));
        }
        let floor = 1e-13 * s0;
        if step < floor {
            sweep.underresolved_steps += 1;
            step = floor;
        }
        let s1 = (s0 + step).min(hi);
        let b = hyperbola_residual(params, s1);
        sweep.grid_points += 1;
        if straddles(a.g, b.g) {
            sweep.roots.push(bisect(g, s0, s1, a.g));
        } else if a.slope.is_finite()
            && b.slope.is_finite()
            && straddles(a.slope, b.slope)
            && a.dominance < 1.0
        {
            let se = extremum(dg, s0, s1, a.slope);
            let ge = g(se);
            if straddles(a.g, ge) {
                sweep.roots.push(bisect(g, s0, se, a.g));
                sweep.roots.push(bisect(g, se, s1, ge));
            }
        }
        s0 = s1;
        a = b;
    }
    if sweep.underresolved_steps > 0 {
        log::warn!(
            "hyperbola scan: {} steps exceeded the phase bound (Z = {}, omega = {})",
            sweep.underresolved_steps,
            z,
            params.omega()
        );
    }
    for &s in &sweep.roots {
        let h = hyperbola_residual(params, s);
        sweep.max_residual = sweep.max_residual.max(h.g.abs() / h.scale);
    }
    log::debug!(
        "hyperbola scan: {} levels, {} grid points, t in [{:.4e}, {:.4e}]",
        sweep.roots.len(),
        sweep.grid_points,
        sweep.t_range.0,
        sweep.t_range.1
    );
    Ok(sweep)
}

/// Real levels for `s ∈ [10⁻⁶, s_max]`, ascending in energy.
pub fn real_spectrum_bracket(params: &ModelParams, s_max: f64) -> Result<Vec<BoundState>> {
    let opts = BracketOptions { s_max, ..BracketOptions::default() };
    Ok(bracket_sweep(params, &opts)?.levels(params))
}
