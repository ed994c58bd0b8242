//! Sampled curves for re-plotting the Θ family, the traced solution loci,
//! the hyperbola branch and its asymptotics.

use std::collections::BTreeMap;

use ptwell_core::constraint::{hyperbola_asymptote, hyperbola_offset};
use ptwell_core::matching::{envelope_asymptote, theta_curve, ThetaCurveSpec};
use ptwell_core::model::sigma_tau_from_st;
use ptwell_core::spectrum::{lattice_k_cover, real_spectrum_lattice, trace_loci, LocusPoint};
use ptwell_core::{ModelParams, Sign, WaveVector};

use crate::args::{CurvesArgs, Family};
use crate::error::CliError;
use crate::numfmt::round_sig;
use crate::report::{CurveDoc, CurvesDoc, ParamsDoc};

/// Asymptotic forms are only evaluated left of this σ.
const ASYMPTOTIC_EDGE: f64 = -2.0;
/// Stripes traced by the intersection family at ω = 0.
const UNSHIFTED_STRIPES: usize = 10;
/// Hyperbola samples per curve.
const HYPERBOLA_SAMPLES: usize = 2000;

pub fn emit_curves(params: &ModelParams, args: &CurvesArgs) -> Result<CurvesDoc, CliError> {
    if args.samples < 2 {
        return Err(CliError::InvalidFlag("--samples must be at least 2".into()));
    }
    if !(args.sigma_max > 0.0) {
        return Err(CliError::InvalidFlag("--sigma-max must be positive".into()));
    }
    if args.xi_samples < 2 {
        return Err(CliError::InvalidFlag("--xi-samples must be at least 2".into()));
    }
    let (family, curves) = match args.family {
        Family::Theta => ("theta", theta_family(params, args)?),
        Family::Oval => ("oval", oval_family(params, args)?),
        Family::Intersection => ("intersection", intersection_family(params, args)?),
    };
    let curves = curves
        .into_iter()
        .filter(|c| !c.points.is_empty())
        .map(|c| CurveDoc { points: c.points.iter().map(|&[x, y]| [round_sig(x), round_sig(y)]).collect(), ..c })
        .collect();
    Ok(CurvesDoc { family: family.into(), params: ParamsDoc::from(params), curves })
}

fn sign_of(p: i8) -> Sign {
    if p < 0 {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

fn sign_label(p: Sign) -> &'static str {
    match p {
        Sign::Plus => "+1",
        Sign::Minus => "-1",
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> impl DoubleEndedIterator<Item = f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(move |i| if i + 1 == n { hi } else { lo + step * i as f64 })
}

/// Θ-curves for every requested `(p, ξ)`, split at the vertical asymptote,
/// plus the two envelope asymptotes when `ω ≠ 0`.
fn theta_family(params: &ModelParams, args: &CurvesArgs) -> Result<Vec<CurveDoc>, CliError> {
    let omega = params.omega();
    let mut out = Vec::new();
    for &p in &args.p {
        for &xi in &args.xi {
            let spec = ThetaCurveSpec::new(sign_of(p), xi, omega)
                .map_err(|e| CliError::InvalidFlag(e.to_string()))?;
            let label = format!("theta p={} xi={xi}", sign_label(spec.p));
            out.extend(theta_segments(&spec, &label, args.sigma_max, args.samples));
        }
    }
    if omega != 0.0 {
        out.extend(envelope_curves(omega, args.sigma_max, args.samples));
    }
    Ok(out)
}

fn theta_segments(spec: &ThetaCurveSpec, label: &str, sigma_max: f64, samples: usize) -> Vec<CurveDoc> {
    let pole = spec.pole();
    let mut segments = vec![Vec::new()];
    let mut prev: Option<f64> = None;
    for sigma in grid(-sigma_max, sigma_max, samples) {
        let crossed = matches!((prev, pole), (Some(a), Some(p)) if (a - p) * (sigma - p) <= 0.0);
        if crossed && !segments.last().is_some_and(Vec::is_empty) {
            segments.push(Vec::new());
        }
        prev = Some(sigma);
        if let Ok(tau) = theta_curve(spec, sigma) {
            segments.last_mut().expect("segment list is never empty").push([sigma, tau]);
        }
    }
    let split = segments.len() > 1;
    segments
        .into_iter()
        .enumerate()
        .map(|(i, points)| CurveDoc {
            label: if split { format!("{label} segment {}", i + 1) } else { label.to_owned() },
            points,
        })
        .collect()
}

/// Upper (`p = −1`) and lower (`p = +1`) envelope asymptotes in the
/// unmirrored plane.
fn envelope_curves(omega: f64, sigma_max: f64, samples: usize) -> Vec<CurveDoc> {
    let mirror = if omega < 0.0 { -1.0 } else { 1.0 };
    [(Sign::Minus, "upper"), (Sign::Plus, "lower")]
        .into_iter()
        .map(|(branch, name)| CurveDoc {
            label: format!("envelope asymptote {name}"),
            points: grid(-sigma_max.max(-ASYMPTOTIC_EDGE + 1.0), ASYMPTOTIC_EDGE, samples)
                .filter_map(|s| envelope_asymptote(s, omega, branch).ok().map(|tau| [mirror * s, tau]))
                .collect(),
        })
        .collect()
}

/// Traced loci grouped by quarter stripe `(k, p, q)`.
fn locus_curves(points: &[LocusPoint]) -> Vec<CurveDoc> {
    let mut groups: BTreeMap<(i64, i8, i8), Vec<[f64; 2]>> = BTreeMap::new();
    for pt in points {
        let key = (pt.index.k, pt.index.p.value() as i8, pt.index.q.value() as i8);
        groups.entry(key).or_default().push([pt.sigma, pt.tau]);
    }
    groups
        .into_iter()
        .map(|((k, p, q), points)| CurveDoc {
            label: format!("locus k={k} p={} q={}", sign_label(sign_of(p)), sign_label(sign_of(q))),
            points,
        })
        .collect()
}

/// The branch `2st = Z` in the `(σ, τ)` plane for `τ` in `[tau_lo, tau_hi]`,
/// sampled uniformly in `τ`. Along the branch `τ = 2ωs + Z/s`; the root
/// with small `s` always exists, the large-`s` root only for `ω > 0`, where
/// both meet at the vertex `τ = √(8ωZ)`.
fn hyperbola_curve(params: &ModelParams, tau_lo: f64, tau_hi: f64) -> CurveDoc {
    let (z, om) = (params.z(), params.omega());
    let point = |s: f64| {
        let r = sigma_tau_from_st(WaveVector::on_hyperbola(s, z), params);
        [r.sigma, r.tau]
    };
    let radical = |tau: f64| {
        let disc = tau * tau - 8.0 * om * z;
        (disc >= 0.0).then(|| disc.sqrt())
    };
    let mut points: Vec<[f64; 2]> = grid(tau_lo, tau_hi, HYPERBOLA_SAMPLES)
        .rev()
        .filter_map(|tau| radical(tau).filter(|r| tau + r > 0.0).map(|r| point(2.0 * z / (tau + r))))
        .collect();
    if om > 0.0 {
        points.extend(
            grid(tau_lo, tau_hi, HYPERBOLA_SAMPLES).filter_map(|tau| radical(tau).map(|r| point((tau + r) / (4.0 * om)))),
        );
    }
    CurveDoc { label: "hyperbola".into(), points }
}

fn tau_span(points: &[LocusPoint]) -> Option<(f64, f64)> {
    let lo = points.iter().map(|p| p.tau).reduce(f64::min)?;
    let hi = points.iter().map(|p| p.tau).reduce(f64::max)?;
    Some((lo, hi))
}

/// Locus of one stripe and the hyperbola across it.
fn oval_family(params: &ModelParams, args: &CurvesArgs) -> Result<Vec<CurveDoc>, CliError> {
    if args.stripe < 0 {
        return Err(CliError::InvalidFlag("--stripe must be non-negative".into()));
    }
    let loci = trace_loci(params, args.stripe, args.stripe, args.xi_samples);
    let mut out = locus_curves(&loci);
    if params.z() > 0.0 {
        let pi = std::f64::consts::PI;
        let lo = 2.0 * pi * args.stripe as f64;
        out.push(hyperbola_curve(params, lo, lo + 2.0 * pi));
    }
    Ok(out)
}

/// Loci of stripes `0..=k_max`, the hyperbola, its crossings with the loci,
/// the asymptotes and the hyperbola offset from the diagonal.
fn intersection_family(params: &ModelParams, args: &CurvesArgs) -> Result<Vec<CurveDoc>, CliError> {
    if params.z() <= 0.0 {
        return Err(CliError::InvalidFlag("the intersection family needs Z > 0".into()));
    }
    let omega = params.omega();
    let k_max = match args.kmax {
        Some(k) => k,
        None if omega == 0.0 => UNSHIFTED_STRIPES,
        None => lattice_k_cover(params)?,
    };
    let loci = trace_loci(params, 0, k_max as i64, args.xi_samples);
    let mut out = locus_curves(&loci);
    if let Some((_, hi)) = tau_span(&loci) {
        out.push(hyperbola_curve(params, 0.0, hi));
    }
    let lattice = real_spectrum_lattice(params, k_max)?;
    out.push(CurveDoc {
        label: "crossings".into(),
        points: lattice
            .levels
            .iter()
            .filter_map(|l| l.wave)
            .map(|w| sigma_tau_from_st(w, params))
            .map(|r| [r.sigma, r.tau])
            .collect(),
    });
    for f in &lattice.failures {
        log::warn!("unresolved crossing near sigma = {}, tau = {}: {}", f.sigma, f.tau, f.reason);
    }
    if omega != 0.0 {
        let sigma_max = loci.iter().map(|p| p.sigma.abs()).fold(args.sigma_max, f64::max);
        out.extend(envelope_curves(omega, sigma_max, args.samples));
        let mirror = if omega < 0.0 { -1.0 } else { 1.0 };
        let left = grid(-sigma_max.max(-ASYMPTOTIC_EDGE + 1.0), ASYMPTOTIC_EDGE, args.samples);
        let samples: Vec<f64> = left.collect();
        out.push(CurveDoc {
            label: "hyperbola asymptote".into(),
            points: samples
                .iter()
                .filter_map(|&s| hyperbola_asymptote(s, params).ok().map(|tau| [mirror * s, tau]))
                .collect(),
        });
        out.push(CurveDoc {
            label: "hyperbola deviation".into(),
            points: samples
                .iter()
                .filter_map(|&s| hyperbola_offset(s, params).ok().map(|d| [mirror * s, d]))
                .collect(),
        });
    }
    Ok(out)
}
