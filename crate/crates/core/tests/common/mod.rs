//! Randomized invariants shared by the property tests and the acceptance
//! gate. Each check builds its own runner and returns the first failure.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use ptwell_core::constraint::{quadratic_residual, HyperbolaBranch};
use ptwell_core::matching::{
    matching_determinant, quantization_eval, residual_real, residual_rotated, ThetaCurveSpec,
};
use ptwell_core::model::{
    energy_from_sigma_tau, energy_from_st, lattice_compose, lattice_decompose, omega_factor,
    sigma_tau_from_st, st_from_sigma_tau,
};
use ptwell_core::spectrum::{bracket_sweep, complex_spectrum, BracketOptions, EnergyWindow};
use ptwell_core::{LatticeIndex, ModelParams, RotatedPoint, Sign, WaveVector};

pub const CASES: u32 = 1000;

pub type Check = fn(u32) -> Result<(), String>;

/// Every invariant with its name.
pub const SUITE: &[(&str, Check)] = &[
    ("st roundtrip", st_roundtrip),
    ("energy consistency", energy_consistency),
    ("lattice roundtrip", lattice_roundtrip),
    ("omega factor consistency", omega_factor_consistency),
    ("omega factor magnitude", omega_factor_magnitude),
    ("hyperbola preservation", hyperbola_preservation),
    ("zero-set equivalence", zero_set_equivalence),
    ("conjugation symmetry", conjugation_symmetry),
    ("lattice self-consistency", lattice_self_consistency),
    ("rotated residual factorization", rotated_residual_factorization),
    ("envelope bound", envelope_bound),
    ("reduction at zero shift", reduction_at_zero_shift),
    ("branch membership and back-map", branch_membership),
    ("window root accounting", window_root_accounting),
];

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

fn report<T: std::fmt::Debug>(
    r: Result<(), proptest::test_runner::TestError<T>>,
) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn sign() -> impl Strategy<Value = Sign> {
    any::<bool>().prop_map(|b| if b { Sign::Plus } else { Sign::Minus })
}

fn params(z: f64, omega: f64) -> ModelParams {
    ModelParams::new(z, omega).expect("valid parameters")
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

pub fn st_roundtrip(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&(0.0..20.0f64, 0.0..20.0f64, -2.0..2.0f64), |(s, t, om)| {
        let p = params(1.0, om);
        let w = WaveVector::new(s, t).unwrap();
        let back = st_from_sigma_tau(sigma_tau_from_st(w, &p), &p);
        let back = back.map_err(|e| TestCaseError::fail(e.to_string()))?;
        let tol = 1e-12 * (1.0 + s + t);
        check((back.s - s).abs() <= tol && (back.t - t).abs() <= tol, || {
            format!("({s}, {t}) at {om} came back as ({}, {})", back.s, back.t)
        })
    }))
}

pub fn energy_consistency(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&(0.0..20.0f64, 0.0..20.0f64, -2.0..2.0f64), |(s, t, om)| {
        let p = params(1.0, om);
        let w = WaveVector { s, t };
        let e_rot = energy_from_sigma_tau(sigma_tau_from_st(w, &p), &p);
        let e = energy_from_st(w);
        check((e_rot - e).abs() <= 1e-12 * (1.0 + s * s + t * t), || format!("{e_rot} vs {e}"))
    }))
}

pub fn lattice_roundtrip(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&(-100.0..400.0f64), |tau| {
        let idx = lattice_decompose(tau);
        let back = lattice_compose(idx);
        check((0.0..=1.0).contains(&idx.xi), || format!("xi {} out of range", idx.xi))?;
        check((back - tau).abs() <= 1e-12 * tau.abs().max(1.0), || format!("{tau} -> {idx:?} -> {back}"))
    }))
}

pub fn omega_factor_consistency(cases: u32) -> Result<(), String> {
    let strategy = (-5i64..=50, sign(), sign(), 1e-6..0.999f64);
    report(runner(cases).run(&strategy, |(k, p, q, xi)| {
        let omega = omega_factor(p, xi);
        let tau = lattice_compose(LatticeIndex { k, p, q, xi });
        let rho = -1.0 / tau.sin();
        // d(−1/sin τ)/dτ ≈ Ω², with τ known to a few ulps.
        let tol = 1e-12 * omega.abs() + 4.0 * f64::EPSILON * tau.abs() * omega * omega;
        check((omega - rho).abs() <= tol, || format!("Omega {omega} vs rho {rho} at tau {tau}"))?;
        let back = lattice_decompose(tau);
        check(back.k == k && back.p == p && back.q == q && (back.xi - xi).abs() <= 1e-9, || {
            format!("({k}, {p:?}, {q:?}, {xi}) decomposed to {back:?}")
        })
    }))
}

pub fn omega_factor_magnitude(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&(sign(), 0.0..1.0f64), |(p, xi)| {
        let omega = omega_factor(p, xi);
        check(omega.abs() >= 1.0 && Sign::of(omega) == p, || format!("Omega({p:?}, {xi}) = {omega}"))
    }))
}

pub fn hyperbola_preservation(cases: u32) -> Result<(), String> {
    let strategy = (1e-3..10.0f64, 1e-3..20.0f64, 1e-3..2.0f64, any::<bool>());
    report(runner(cases).run(&strategy, |(s, z, w, negative)| {
        let om = if negative { -w } else { w };
        let p = params(z, om);
        let point = WaveVector::on_hyperbola(s, z);
        let r = sigma_tau_from_st(point, &p);
        let q = quadratic_residual(r, &p).unwrap();
        let scale = r.sigma * r.sigma + r.tau * r.tau + ptwell_core::constraint::y_squared(&p);
        check(q.abs() <= 1e-10 * scale.max(1.0), || format!("residual {q} at {r:?}"))
    }))
}

/// On `2st = Z` the determinant equals the real residual identically.
pub fn zero_set_equivalence(cases: u32) -> Result<(), String> {
    let strategy = (0.0..8.0f64, 0.0..40.0f64, -1.0..1.0f64);
    report(runner(cases).run(&strategy, |(s, t, om)| {
        let p = params(2.0 * s * t, om);
        let w = WaveVector { s, t };
        let g = residual_real(w, &p);
        let d = matching_determinant(Complex64::new(energy_from_st(w), 0.0), &p);
        let sigma = sigma_tau_from_st(w, &p).sigma;
        let scale = s * sigma.cosh() + t + 1.0;
        check((d.re - g).abs() <= 1e-10 * scale && d.im.abs() <= 1e-10 * scale, || {
            format!("D = {d}, residual = {g} at ({s}, {t}), omega = {om}")
        })
    }))
}

pub fn conjugation_symmetry(cases: u32) -> Result<(), String> {
    let strategy = (-100.0..1000.0f64, -100.0..100.0f64, 0.0..5.0f64, -1.0..1.0f64);
    report(runner(cases).run(&strategy, |(re, im, z, om)| {
        let p = params(z, om);
        let e = Complex64::new(re, im);
        let f = quantization_eval(e, &p);
        let fc = quantization_eval(e.conj(), &p);
        check((fc.value - f.value.conj()).norm() <= 1e-12 * f.scale, || {
            format!("F(conj E) = {}, conj F(E) = {} at {e}", fc.value, f.value.conj())
        })?;
        // D itself only away from the cuts Im E = ∓Z, Re E > 0.
        if (im.abs() - z).abs() > 1e-3 {
            let d = matching_determinant(e, &p);
            let dc = matching_determinant(e.conj(), &p);
            let scale = f.scale * e.norm().max(z).max(1.0);
            check((dc - d.conj()).norm() <= 1e-12 * scale, || format!("D(conj E) = {dc}, conj D(E) = {}", d.conj()))?;
        }
        Ok(())
    }))
}

/// Real levels of a random model, for checks on matched points.
fn levels(z: f64, om: f64) -> Vec<WaveVector> {
    let p = params(z, om);
    let opts = BracketOptions { e_max: 400.0, ..BracketOptions::default() };
    bracket_sweep(&p, &opts).unwrap().roots.iter().map(|&s| WaveVector::on_hyperbola(s, z)).collect()
}

/// At a matched point the Θ-curve through it has the lattice parameters
/// of its own τ.
pub fn lattice_self_consistency(cases: u32) -> Result<(), String> {
    let strategy = (0.2..8.0f64, -0.3..0.3f64, any::<prop::sample::Index>());
    report(runner(cases).run(&strategy, |(z, om, pick)| {
        let lv = levels(z, om);
        prop_assume!(!lv.is_empty());
        let w = lv[pick.index(lv.len())];
        let p = params(z, om);
        let r = sigma_tau_from_st(w, &p);
        let idx = lattice_decompose(r.tau);
        prop_assume!(idx.xi < 1.0);
        // Ω for which Θ_Ω passes through (σ, τ).
        let needed = w.t / (w.s * r.sigma.sinh());
        let lattice = idx.omega_factor();
        check(Sign::of(needed) == idx.p && (needed - lattice).abs() <= 1e-9 * lattice.abs(), || {
            format!("point {r:?} needs Omega {needed}, lattice gives {lattice} ({idx:?})")
        })?;
        let spec = ThetaCurveSpec::new(idx.p, idx.xi, om).unwrap();
        let theta = spec.eval(r.sigma);
        let slope = spec.derivative(r.sigma).abs().max(1.0);
        check((theta - r.tau).abs() <= 1e-8 * slope * r.tau.abs().max(1.0), || {
            format!("Theta({}) = {theta}, tau = {}", r.sigma, r.tau)
        })
    }))
}

/// On a lattice, `residual_rotated = (1 − Ωω sinh σ)(τ − Θ(σ))`.
pub fn rotated_residual_factorization(cases: u32) -> Result<(), String> {
    let strategy = (0i64..30, sign(), sign(), 0.01..0.99f64, -1.0..1.0f64, -8.0..8.0f64);
    report(runner(cases).run(&strategy, |(k, p, q, xi, om, sigma)| {
        let tau = lattice_compose(LatticeIndex { k, p, q, xi });
        let spec = ThetaCurveSpec::new(p, xi, om).unwrap();
        let den = 1.0 - spec.omega_factor() * om * sigma.sinh();
        prop_assume!(den.abs() > 1e-6);
        let model = params(1.0, om);
        let lhs = residual_rotated(RotatedPoint::new(sigma, tau), &model).unwrap();
        let rhs = den * (tau - spec.eval(sigma));
        let scale = tau.abs() * den.abs() + (sigma * spec.omega_factor() * sigma.sinh()).abs() + 1.0;
        check((lhs - rhs).abs() <= 1e-9 * scale, || format!("{lhs} vs {rhs}"))
    }))
}

/// At ω = 0 matched points lie on or above `|σ sinh σ|`, inside the
/// `|Ω| = 1` parabola.
pub fn envelope_bound(cases: u32) -> Result<(), String> {
    let strategy = (0.05..12.0f64, any::<prop::sample::Index>());
    report(runner(cases).run(&strategy, |(z, pick)| {
        let lv = levels(z, 0.0);
        prop_assume!(!lv.is_empty());
        let w = lv[pick.index(lv.len())];
        let r = sigma_tau_from_st(w, &params(z, 0.0));
        let envelope = (r.sigma * r.sigma.sinh()).abs();
        check(r.tau > 0.0 && r.tau >= envelope * (1.0 - 1e-9), || {
            format!("matched {r:?} is outside the parabola ({envelope})")
        })
    }))
}

pub fn reduction_at_zero_shift(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&(0.0..15.0f64, 0.0..50.0f64), |(s, t)| {
        let g = residual_real(WaveVector { s, t }, &params(2.0 * s * t, 0.0));
        let direct = s * (2.0 * s).sinh() + t * (2.0 * t).sin();
        check((g - direct).abs() <= 1e-14 * (s * (2.0 * s).cosh() + t + 1.0), || format!("{g} vs {direct}"))
    }))
}

pub fn branch_membership(cases: u32) -> Result<(), String> {
    let strategy = (1e-3..10.0f64, 1e-2..3.0f64, any::<bool>(), -50.0..50.0f64);
    report(runner(cases).run(&strategy, |(z, w, negative, free)| {
        let om = if negative { -w } else { w };
        let p = params(z, om);
        let branch = HyperbolaBranch::for_params(p).unwrap();
        let r = branch.point(free).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let q = quadratic_residual(r, &p).unwrap();
        let scale = r.sigma * r.sigma + r.tau * r.tau + ptwell_core::constraint::y_squared(&p);
        check(q.abs() <= 1e-9 * scale, || format!("residual {q} at {r:?}"))?;
        let back = branch.wave(free).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check((2.0 * back.s * back.t - z).abs() <= 1e-9 * z.max(1.0), || {
            format!("({}, {}) misses 2st = {z}", back.s, back.t)
        })
    }))
}

/// Complex-window solver: conjugate pairing, counts, ordering and real
/// roots agreeing with the hyperbola scan.
pub fn window_root_accounting(cases: u32) -> Result<(), String> {
    let strategy = (0.0..6.0f64, -0.5..0.5f64, 0.0..300.0f64, 5.0..100.0f64, 1.0..30.0f64);
    report(runner(cases).run(&strategy, |(z, om, re0, width, half)| {
        let p = params(z, om);
        let window = EnergyWindow::symmetric(re0, re0 + width, half).unwrap();
        let rep = complex_spectrum(&p, window).map_err(|e| TestCaseError::fail(format!("{window:?}: {e}")))?;
        let d = &rep.diagnostics;
        let located = rep.real_levels.len() + 2 * rep.complex_pairs.len();
        let outside = d.notes.iter().filter(|n| n.contains("outside the window")).count();
        check(d.argument_count == Some(located + outside), || {
            format!("count {:?} vs {located} located (+{outside} unpaired) in {window:?}", d.argument_count)
        })?;
        check(d.pairing_error <= 1e-8, || format!("pairing error {}", d.pairing_error))?;
        check(rep.complex_pairs.iter().all(|e| e.im > 0.0), || "pair member below the axis".into())?;
        let energies: Vec<f64> = rep.real_levels.iter().map(|l| l.energy.re).collect();
        check(energies.windows(2).all(|w| w[1] - w[0] > 1e-8 * w[1].abs().max(1.0)), || {
            format!("real levels not strictly ascending: {energies:?}")
        })?;
        if z > 0.0 {
            let searched = rep.window.unwrap();
            let scan = bracket_sweep(&p, &BracketOptions { e_max: searched.re_max, ..BracketOptions::default() })
                .unwrap()
                .levels(&p);
            let expected: Vec<f64> = scan
                .iter()
                .map(|l| l.energy.re)
                .filter(|&e| e >= searched.re_min)
                .collect();
            check(expected.len() == energies.len(), || format!("scan {expected:?} vs window {energies:?}"))?;
            for (a, b) in expected.iter().zip(&energies) {
                check((a - b).abs() <= 1e-8 * a.abs().max(1.0), || format!("scan {a} vs window {b}"))?;
            }
        } else {
            for l in &rep.real_levels {
                let n = (2.0 * l.energy.re.sqrt() / PI).round();
                let exact = n * n * PI * PI / 4.0;
                check((l.energy.re - exact).abs() <= 1e-8 * exact, || format!("{} is not Hermitian", l.energy.re))?;
            }
            check(rep.complex_pairs.is_empty(), || "complex pair at Z = 0".into())?;
        }
        Ok(())
    }))
}
