//! Real levels, complex pairs, level counts and critical couplings.

mod bracket;
mod complex;
mod critical;
mod lattice;

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::constraint::Separation;
use crate::error::{Error, Result};
use crate::model::{BoundState, LevelKind, ModelParams, WaveVector};

pub use bracket::{
    bracket_sweep, hyperbola_residual, real_spectrum_bracket, BracketOptions, BracketSweep,
    HyperbolaSample,
};
pub use complex::{complex_spectrum, complex_spectrum_with, ComplexOptions};
pub use critical::{critical_couplings, tracking_ceiling, CriticalCoupling};
pub use lattice::{
    lattice_k_cover, lattice_spectrum_with, real_spectrum_lattice, trace_loci, IntersectionFailure, LatticeOptions,
    LatticeSpectrum, LocusPoint,
};

/// Rectangle of the complex energy plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyWindow {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl EnergyWindow {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let all_finite = [re_min, re_max, im_min, im_max].iter().all(|v| v.is_finite());
        if !all_finite || re_min >= re_max || im_min >= im_max {
            return Err(Error::Domain(format!(
                "invalid window [{re_min}, {re_max}] x [{im_min}, {im_max}]"
            )));
        }
        Ok(Self { re_min, re_max, im_min, im_max })
    }

    /// `[re_min, re_max] × [−half_height, half_height]`.
    pub fn symmetric(re_min: f64, re_max: f64, half_height: f64) -> Result<Self> {
        Self::new(re_min, re_max, -half_height, half_height)
    }

    pub fn contains(&self, e: Complex64) -> bool {
        (self.re_min..=self.re_max).contains(&e.re) && (self.im_min..=self.im_max).contains(&e.im)
    }
}

impl Default for EnergyWindow {
    fn default() -> Self {
        Self { re_min: 0.0, re_max: 2000.0, im_min: -200.0, im_max: 200.0 }
    }
}

/// How a report was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Hermitian,
    Bracket,
    Lattice,
    ArgumentPrinciple,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Hermitian => "hermitian",
            Method::Bracket => "bracket",
            Method::Lattice => "lattice",
            Method::ArgumentPrinciple => "argument-principle",
        }
    }
}

/// Cross-checks and residuals attached to a report.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Diagnostics {
    pub method: Option<Method>,
    /// Zero count from the argument principle over the whole window.
    pub argument_count: Option<usize>,
    /// Largest relative residual among the reported roots.
    pub max_residual: f64,
    /// Largest `|E' − conj E|/max(1, |E|)` over matched conjugate pairs.
    pub pairing_error: f64,
    pub cells: usize,
    pub jitter_events: usize,
    /// `t` range swept by the real-axis scan.
    pub t_range: Option<(f64, f64)>,
    pub separation: Option<Separation>,
    pub notes: Vec<String>,
}

/// Outcome of a spectral computation.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub params: ModelParams,
    /// Ascending in energy.
    pub real_levels: Vec<BoundState>,
    /// Upper (`Im E > 0`) members of conjugate pairs, ascending in `Re E`.
    pub complex_pairs: Vec<Complex64>,
    pub window: Option<EnergyWindow>,
    pub diagnostics: Diagnostics,
}

/// `E_n = (n+1)²π²/4` up to `e_max`, valid for every ω at `Z = 0`.
pub fn hermitian_spectrum(params: &ModelParams, e_max: f64) -> Result<Vec<BoundState>> {
    if params.z() != 0.0 {
        return Err(Error::Domain(format!("hermitian spectrum needs Z = 0, got {}", params.z())));
    }
    if !e_max.is_finite() {
        return Err(Error::Domain("hermitian spectrum needs a finite e_max".into()));
    }
    let mut out = Vec::new();
    for n in 1.. {
        let t = n as f64 * FRAC_PI_2;
        if t * t > e_max {
            break;
        }
        let state = crate::matching::real_state(WaveVector { s: 0.0, t }, params);
        out.push(BoundState { energy: Complex64::new(hermitian_level(n - 1), 0.0), ..state });
    }
    Ok(out)
}

/// `(n+1)²π²/4`.
pub fn hermitian_level(n: usize) -> f64 {
    let m = (n + 1) as f64;
    m * m * PI * PI / 4.0
}

/// Number of real levels with `E ≤ e_max`.
pub fn count_real(params: &ModelParams, e_max: f64) -> Result<usize> {
    if params.z() == 0.0 {
        return Ok(hermitian_spectrum(params, e_max)?.len());
    }
    let opts = BracketOptions { e_max, ..BracketOptions::default() };
    Ok(bracket_sweep(params, &opts)?.roots.len())
}

/// Report of the real levels below `e_max` by the closed form at `Z = 0`
/// or the hyperbola scan otherwise.
pub fn real_spectrum_report(params: &ModelParams, opts: &BracketOptions) -> Result<SpectrumReport> {
    if params.z() == 0.0 {
        let levels = hermitian_spectrum(params, opts.e_max)?;
        return Ok(SpectrumReport {
            params: *params,
            real_levels: levels,
            complex_pairs: Vec::new(),
            window: None,
            diagnostics: Diagnostics { method: Some(Method::Hermitian), ..Diagnostics::default() },
        });
    }
    let sweep = bracket_sweep(params, opts)?;
    let max_residual = sweep.max_residual;
    let t_range = Some(sweep.t_range);
    let separation = if params.omega() != 0.0 {
        crate::constraint::asymptotic_separation(params).ok()
    } else {
        None
    };
    Ok(SpectrumReport {
        params: *params,
        real_levels: sweep.levels(params),
        complex_pairs: Vec::new(),
        window: None,
        diagnostics: Diagnostics {
            method: Some(Method::Bracket),
            max_residual,
            t_range,
            separation,
            ..Diagnostics::default()
        },
    })
}

pub(crate) fn sort_levels(levels: &mut [BoundState]) {
    levels.sort_by(|a, b| a.energy.re.total_cmp(&b.energy.re));
    debug_assert!(levels.iter().all(|l| l.kind == LevelKind::Real));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(z: f64, om: f64) -> ModelParams {
        ModelParams::new(z, om).unwrap()
    }

    #[test]
    fn hermitian_examples() {
        let expect = [2.467_401_100_272_339_5, 9.869_604_401_089_358, 22.206_609_902_451_056];
        for om in [0.0, 0.5] {
            let lv = hermitian_spectrum(&params(0.0, om), 30.0).unwrap();
            assert_eq!(lv.len(), 3);
            for (l, e) in lv.iter().zip(expect) {
                assert!((l.energy.re - e).abs() < 1e-12);
                assert_eq!(l.wave.unwrap().s, 0.0);
            }
        }
        assert!(hermitian_spectrum(&params(0.0, 0.0), 1.0).unwrap().is_empty());
        assert!(hermitian_spectrum(&params(1.0, 0.0), 1.0).is_err());
    }

    #[test]
    fn hermitian_count() {
        assert_eq!(count_real(&params(0.0, 0.0), 100.0).unwrap(), 6);
    }

    #[test]
    fn window_validation() {
        assert!(EnergyWindow::new(1.0, 0.0, -1.0, 1.0).is_err());
        assert!(EnergyWindow::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(EnergyWindow::new(0.0, f64::NAN, -1.0, 1.0).is_err());
        assert!(EnergyWindow::symmetric(0.0, 1.0, 2.0).unwrap().contains(Complex64::new(0.5, -1.0)));
    }
}
