//! Real levels by the moving-lattice construction.
//!
//! On the lattice `L(p, ξ)` the factor `ϱ(τ) = −1/sin τ` is frozen to
//! `Ω(p, ξ)`, so the matching condition becomes `τ = Θ_(p,ξ)(σ)` with `τ`
//! restricted to the lattice values. Sweeping ξ traces the solution loci
//! quarter-stripe by quarter-stripe; walking the loci in order of τ and
//! watching the side of the constraint hyperbola locates every crossing,
//! which is then refined by Newton on `(residual_real, 2st − Z)`.
//!
//! Negative ω is mapped to `|ω|` by `σ → −σ`.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_8, TAU};

use crate::constraint::{asymptotic_separation, reflected_branch, xi_branch};
use crate::error::{Error, Result};
use crate::matching::{real_state, ThetaCurveSpec};
use crate::model::{
    lattice_compose, sigma_tau_from_st, st_raw, BoundState, LatticeIndex, ModelParams,
    RotatedPoint, Sign, WaveVector,
};
use crate::roots::{bisect, extremum, straddles};

use super::bracket::hyperbola_residual;
use super::sort_levels;

/// Resolution of the ξ sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeOptions {
    pub k_max: usize,
    /// Number of ξ intervals per quarter stripe.
    pub xi_samples: usize,
    /// Bisection depth in ξ when the number of locus points changes.
    pub fold_depth: u32,
    /// Bisection depth in ξ when a locus segment grazes the hyperbola.
    pub graze_depth: u32,
}

impl Default for LatticeOptions {
    fn default() -> Self {
        Self { k_max: 10, xi_samples: 96, fold_depth: 40, graze_depth: 10 }
    }
}

/// One traced point of a solution locus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocusPoint {
    pub index: LatticeIndex,
    pub sigma: f64,
    pub tau: f64,
}

/// A crossing that could not be refined to a matched state.
#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionFailure {
    pub sigma: f64,
    pub tau: f64,
    pub reason: String,
}

/// Levels found by the lattice construction with its bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpectrum {
    /// Ascending in energy.
    pub levels: Vec<BoundState>,
    pub failures: Vec<IntersectionFailure>,
    pub scans: usize,
    pub folds: usize,
}

impl LatticeSpectrum {
    /// The levels, or an error when any crossing failed to converge.
    pub fn into_levels(self) -> Result<Vec<BoundState>> {
        match self.failures.first() {
            None => Ok(self.levels),
            Some(f) => Err(Error::IntersectionFailed {
                failures: self.failures.len(),
                sigma: f.sigma,
                tau: f.tau,
            }),
        }
    }
}

/// Working frame: `ω̃ = |ω|`, `σ̃ = sign(ω)·σ` (identity for `ω ≥ 0`).
#[derive(Debug, Clone, Copy)]
struct Frame {
    params: ModelParams,
    w: f64,
    mirrored: bool,
}

impl Frame {
    fn new(params: &ModelParams) -> Self {
        Self { params: *params, w: params.omega().abs(), mirrored: params.omega() < 0.0 }
    }

    fn spec(&self, p: Sign, xi: f64) -> ThetaCurveSpec {
        ThetaCurveSpec { p, xi, omega: self.w }
    }

    fn unmirror(&self, sigma: f64) -> f64 {
        if self.mirrored {
            -sigma
        } else {
            sigma
        }
    }

    /// Signed distance-like function whose zero set is the hyperbola branch.
    fn side(&self, sigma: f64, tau: f64) -> f64 {
        let p = &self.params;
        if p.omega() > 0.0 {
            tau - xi_branch(sigma, p).unwrap_or(f64::NAN)
        } else if p.omega() < 0.0 {
            sigma - reflected_branch(tau, p).unwrap_or(f64::NAN)
        } else {
            0.5 * sigma * tau - p.z()
        }
    }
}

const MAX_SIGMA_STEP: f64 = 0.05;

/// Records the crossings of the lattice values by a monotone piece of Θ.
fn crossings_on_monotone(
    spec: &ThetaCurveSpec,
    (xa, ta): (f64, f64),
    (xb, tb): (f64, f64),
    levels: &[f64],
    out: &mut [Vec<f64>],
) {
    let (lo, hi) = if ta <= tb { (ta, tb) } else { (tb, ta) };
    let first = levels.partition_point(|&l| l <= lo);
    let last = levels.partition_point(|&l| l <= hi);
    for (j, &level) in levels.iter().enumerate().take(last).skip(first) {
        let root = bisect(|x| spec.eval(x) - level, xa, xb, ta - level);
        out[j].push(root);
    }
}

/// Walks `σ` from `a` towards `b` keeping `ΔΘ ≤ π/8`, collecting every `σ`
/// with `Θ(σ)` equal to one of `levels`. With `open_end` the walk stops
/// once Θ climbs past the top level (towards a pole or `+∞`).
fn march(spec: &ThetaCurveSpec, a: f64, b: f64, open_end: bool, levels: &[f64], out: &mut [Vec<f64>]) {
    let cap = levels.last().copied().unwrap_or(0.0) + 1.0;
    let mut x = a;
    let mut th = spec.eval(x);
    let mut d = spec.derivative(x);
    for _ in 0..10_000_000 {
        let mut h = (FRAC_PI_8 / d.abs().max(1e-300)).min(MAX_SIGMA_STEP);
        h = h.max(1e-13 * (1.0 + x.abs()));
        let mut x1 = x + h;
        let mut last = false;
        if open_end && b.is_finite() {
            x1 = x1.min(x + 0.5 * (b - x));
        } else if x1 >= b {
            x1 = b;
            last = true;
        }
        let th1 = spec.eval(x1);
        let d1 = spec.derivative(x1);
        if !th1.is_finite() {
            break;
        }
        if d.is_finite() && d1.is_finite() && straddles(d, d1) {
            let xe = extremum(|s| spec.derivative(s), x, x1, d);
            let te = spec.eval(xe);
            crossings_on_monotone(spec, (x, th), (xe, te), levels, out);
            crossings_on_monotone(spec, (xe, te), (x1, th1), levels, out);
        } else {
            crossings_on_monotone(spec, (x, th), (x1, th1), levels, out);
        }
        if last || (open_end && th1 > cap && d1 > 0.0) {
            break;
        }
        x = x1;
        th = th1;
        d = d1;
    }
}

/// `σ` values solving `Θ_(p,ξ)(σ) = level` for each of the ascending
/// `levels` (all positive), in the working frame.
fn scan(spec: &ThetaCurveSpec, levels: &[f64]) -> Vec<Vec<f64>> {
    let mut out = vec![Vec::new(); levels.len()];
    let Some(&top) = levels.last() else {
        return out;
    };
    let cap = top + 1.0;
    let c = spec.inverse_factor();
    let w = spec.omega;
    if w == 0.0 {
        if c > 0.0 {
            // Θ = σ sinh σ / c is even.
            march(spec, 0.0, f64::INFINITY, true, levels, &mut out);
            for roots in out.iter_mut() {
                let mirrored: Vec<f64> = roots.iter().map(|r| -r).collect();
                roots.extend(mirrored);
            }
        }
    } else {
        let pole = (c / w).asinh();
        let mut left = -(w * cap + 2.0);
        while spec.eval(left) <= cap && left > -1e6 {
            left = 2.0 * left - 1.0;
        }
        march(spec, left, pole, true, levels, &mut out);
        if c < 0.0 {
            // Small positive bump of Θ right of the pole.
            march(spec, 0.0, (-w * c).asinh(), false, levels, &mut out);
        }
    }
    for roots in out.iter_mut() {
        roots.sort_by(f64::total_cmp);
    }
    out
}

type Key = (i64, Sign, Sign);

#[derive(Debug, Clone)]
struct Slice {
    key: Key,
    xi: f64,
    tau: f64,
    roots: Vec<f64>,
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    a: (f64, f64, f64),
    b: (f64, f64, f64),
}

struct Tracer {
    frame: Frame,
    opts: LatticeOptions,
    scans: usize,
    folds: usize,
}

const XI_MAX: f64 = 1.0 - 1e-10;

impl Tracer {
    fn xi_grid(&self) -> Vec<f64> {
        let m = self.opts.xi_samples.max(2);
        (0..=m)
            .map(|j| {
                let u = 1.0 - j as f64 / m as f64;
                XI_MAX * (1.0 - u * u)
            })
            .collect()
    }

    fn slice(&mut self, key: Key, xi: f64) -> Slice {
        let (k, p, q) = key;
        let tau = lattice_compose(LatticeIndex { k, p, q, xi });
        self.scans += 1;
        let roots = scan(&self.frame.spec(p, xi), &[tau]).pop().unwrap_or_default();
        Slice { key, xi, tau, roots }
    }

    /// Slices of every quarter stripe `k ∈ [k_lo, k_hi]` on the ξ grid.
    fn sweep(&mut self, k_lo: i64, k_hi: i64) -> HashMap<Key, Vec<Slice>> {
        let mut map: HashMap<Key, Vec<Slice>> = HashMap::new();
        for xi in self.xi_grid() {
            for p in [Sign::Minus, Sign::Plus] {
                let mut keys = Vec::new();
                let mut taus = Vec::new();
                for k in k_lo..=k_hi {
                    let qs: &[Sign] = if xi == 0.0 { &[Sign::Minus] } else { &[Sign::Minus, Sign::Plus] };
                    for &q in qs {
                        let tau = lattice_compose(LatticeIndex { k, p, q, xi });
                        if tau > 0.0 {
                            keys.push((k, p, q));
                            taus.push(tau);
                        }
                    }
                }
                let mut order: Vec<usize> = (0..taus.len()).collect();
                order.sort_by(|&i, &j| taus[i].total_cmp(&taus[j]));
                let sorted: Vec<f64> = order.iter().map(|&i| taus[i]).collect();
                self.scans += 1;
                let found = scan(&self.frame.spec(p, xi), &sorted);
                for (slot, roots) in order.into_iter().zip(found) {
                    let key = keys[slot];
                    let tau = taus[slot];
                    if xi == 0.0 {
                        let twin = (key.0, key.1, Sign::Plus);
                        map.entry(twin).or_default().push(Slice { key: twin, xi, tau, roots: roots.clone() });
                    }
                    map.entry(key).or_default().push(Slice { key, xi, tau, roots });
                }
            }
        }
        map
    }

    /// Slices ordered by increasing τ through stripes `k_lo..=k_hi`.
    fn chain(map: &HashMap<Key, Vec<Slice>>, k_lo: i64, k_hi: i64) -> Vec<Slice> {
        let mut out = Vec::new();
        for k in k_lo..=k_hi {
            for (p, q) in [
                (Sign::Minus, Sign::Minus),
                (Sign::Minus, Sign::Plus),
                (Sign::Plus, Sign::Minus),
                (Sign::Plus, Sign::Plus),
            ] {
                let Some(slices) = map.get(&(k, p, q)) else { continue };
                let mut ordered = slices.clone();
                ordered.sort_by(|a, b| a.tau.total_cmp(&b.tau));
                out.extend(ordered);
            }
        }
        out
    }

    fn link(&mut self, a: &Slice, b: &Slice, fold_left: u32, graze_left: u32, out: &mut Vec<Candidate>) {
        let same_quarter = a.key == b.key && a.xi != b.xi;
        let side = |s: f64, t: f64| self.frame.side(s, t);
        if a.roots.len() == b.roots.len() {
            let mut graze = false;
            let mut found = Vec::new();
            for (&sa, &sb) in a.roots.iter().zip(&b.roots) {
                let (ha, hb) = (side(sa, a.tau), side(sb, b.tau));
                if !(ha.is_finite() && hb.is_finite()) {
                    continue;
                }
                if straddles(ha, hb) {
                    found.push(Candidate { a: (sa, a.tau, ha), b: (sb, b.tau, hb) });
                } else if ha.abs().min(hb.abs()) < (ha - hb).abs() {
                    graze = true;
                }
            }
            if graze && same_quarter && graze_left > 0 {
                let mid = self.slice(a.key, 0.5 * (a.xi + b.xi));
                self.link(a, &mid, fold_left, graze_left - 1, out);
                self.link(&mid, b, fold_left, graze_left - 1, out);
            } else {
                out.extend(found);
            }
            return;
        }
        if same_quarter && fold_left > 0 {
            let mid = self.slice(a.key, 0.5 * (a.xi + b.xi));
            self.link(a, &mid, fold_left - 1, graze_left, out);
            self.link(&mid, b, fold_left - 1, graze_left, out);
            return;
        }
        // The fold sits inside an unresolvable ξ gap: drop the closest
        // adjacent pairs of the richer slice, noting hyperbola crossings on
        // the fold cap between them.
        self.folds += 1;
        let (mut rich, poor, rich_is_a) = if a.roots.len() > b.roots.len() {
            (a.clone(), b, true)
        } else {
            (b.clone(), a, false)
        };
        while rich.roots.len() >= poor.roots.len() + 2 {
            let i = (0..rich.roots.len() - 1)
                .min_by(|&i, &j| {
                    (rich.roots[i + 1] - rich.roots[i]).total_cmp(&(rich.roots[j + 1] - rich.roots[j]))
                })
                .unwrap_or(0);
            let (s0, s1) = (rich.roots[i], rich.roots[i + 1]);
            let (h0, h1) = (side(s0, rich.tau), side(s1, rich.tau));
            if h0.is_finite() && h1.is_finite() && straddles(h0, h1) {
                out.push(Candidate { a: (s0, rich.tau, h0), b: (s1, rich.tau, h1) });
            }
            rich.roots.drain(i..=i + 1);
        }
        if rich.roots.len() != poor.roots.len() {
            log::warn!(
                "lattice: odd change of locus count at tau = {:.6} ({} vs {})",
                rich.tau,
                rich.roots.len(),
                poor.roots.len()
            );
            while rich.roots.len() > poor.roots.len() {
                rich.roots.pop();
            }
        }
        let (a2, b2) = if rich_is_a { (&rich, poor) } else { (poor, &rich) };
        if a2.roots.len() == b2.roots.len() {
            self.link(a2, b2, 0, 0, out);
        }
    }
}

fn newton_2d(params: &ModelParams, mut s: f64, mut t: f64) -> Option<(f64, f64)> {
    let z = params.z();
    let om = params.omega();
    for _ in 0..80 {
        let r = sigma_tau_from_st(WaveVector { s, t }, params);
        let (sh, ch) = (r.sigma.sinh(), r.sigma.cosh());
        let (sn, cs) = r.tau.sin_cos();
        let f1 = s * sh + t * sn;
        let f2 = 2.0 * s * t - z;
        let j11 = sh + 2.0 * s * ch + 2.0 * om * t * cs;
        let j12 = -2.0 * om * s * ch + sn + 2.0 * t * cs;
        let (j21, j22) = (2.0 * t, 2.0 * s);
        let det = j11 * j22 - j12 * j21;
        if !det.is_finite() || det == 0.0 {
            return None;
        }
        let mut ds = (f1 * j22 - f2 * j12) / det;
        let mut dt = (j11 * f2 - j21 * f1) / det;
        while s - ds <= 0.0 || t - dt <= 0.0 {
            ds *= 0.5;
            dt *= 0.5;
            if ds.abs() + dt.abs() < 1e-300 {
                return None;
            }
        }
        s -= ds;
        t -= dt;
        if ds.abs() + dt.abs() <= 4.0 * f64::EPSILON * (s + t) {
            break;
        }
    }
    (s.is_finite() && t.is_finite()).then_some((s, t))
}

/// Newton along the hyperbola `t = Z/(2s)`.
fn polish_on_hyperbola(params: &ModelParams, mut s: f64) -> f64 {
    for _ in 0..30 {
        let h = hyperbola_residual(params, s);
        if h.slope == 0.0 || !h.slope.is_finite() {
            break;
        }
        let ds = h.g / h.slope;
        if (s - ds) <= 0.0 || ds.abs() > 0.1 * s {
            break;
        }
        s -= ds;
        if ds.abs() <= 2.0 * f64::EPSILON * s {
            break;
        }
    }
    s
}

/// `s` of the hyperbola point nearest (in the `s/t` sense) to `(s, t)`.
fn project(params: &ModelParams, s: f64, t: f64) -> Option<f64> {
    (s > 0.0 && t > 0.0).then(|| (s * params.z() / (2.0 * t)).sqrt())
}

impl Frame {
    fn refine(&self, c: &Candidate) -> std::result::Result<f64, IntersectionFailure> {
        let p = &self.params;
        let (sa, ta, ha) = c.a;
        let (sb, tb, hb) = c.b;
        let lam = ha / (ha - hb);
        let sig0 = sa + lam * (sb - sa);
        let tau0 = ta + lam * (tb - ta);
        let fail = |reason: &str| IntersectionFailure {
            sigma: self.unmirror(sig0),
            tau: tau0,
            reason: reason.to_string(),
        };
        let (s0, t0) = st_raw(RotatedPoint::new(self.unmirror(sig0), tau0), p.omega());
        let (s0, t0) = (s0.max(1e-300), t0.max(1e-300));
        let span = (sb - sa).abs().max((tb - ta).abs()).max(1e-6 * (1.0 + ta.abs()));
        let accept = |s: f64| -> bool {
            let w = WaveVector::on_hyperbola(s, p.z());
            let r = sigma_tau_from_st(w, p);
            let sig = self.unmirror(r.sigma);
            let h = hyperbola_residual(p, s);
            h.g.abs() <= 1e-9 * h.scale
                && (sig - sig0).abs() <= 3.0 * span
                && (r.tau - tau0).abs() <= 3.0 * span
        };
        if let Some((s, t)) = newton_2d(p, s0, t0) {
            let s = polish_on_hyperbola(p, project(p, s, t).unwrap_or(s));
            if accept(s) {
                return Ok(s);
            }
        }
        // Fall back to bisection along the hyperbola between the projected
        // segment ends.
        let ends: Vec<f64> = [(sa, ta), (sb, tb)]
            .iter()
            .filter_map(|&(sg, tu)| {
                let (s, t) = st_raw(RotatedPoint::new(self.unmirror(sg), tu), p.omega());
                project(p, s, t)
            })
            .collect();
        if ends.len() == 2 {
            let lo = ends[0].min(ends[1]) * 0.9;
            let hi = ends[0].max(ends[1]) * 1.1;
            let g = |s: f64| hyperbola_residual(p, s).g;
            let n = 64;
            let mut prev = (lo, g(lo));
            let mut best: Option<f64> = None;
            for i in 1..=n {
                let x = lo + (hi - lo) * i as f64 / n as f64;
                let gx = g(x);
                if straddles(prev.1, gx) {
                    let r = bisect(g, prev.0, x, prev.1);
                    let dist = |s: f64| {
                        let r = sigma_tau_from_st(WaveVector::on_hyperbola(s, p.z()), p);
                        (self.unmirror(r.sigma) - sig0).abs() + (r.tau - tau0).abs()
                    };
                    if best.is_none_or(|b| dist(r) < dist(b)) {
                        best = Some(r);
                    }
                }
                prev = (x, gx);
            }
            if let Some(s) = best.filter(|&s| accept(s)) {
                return Ok(s);
            }
        }
        Err(fail("Newton and hyperbola bisection both failed"))
    }
}

/// Stripe count that covers every real level when `ω ≠ 0`, from the
/// asymptotic separation point.
pub fn lattice_k_cover(params: &ModelParams) -> Result<usize> {
    let sep = asymptotic_separation(params)?;
    Ok((sep.tau / TAU).ceil() as usize + 1)
}

/// Real levels with `τ` in stripes `0..=k_max` by the lattice construction.
pub fn real_spectrum_lattice(params: &ModelParams, k_max: usize) -> Result<LatticeSpectrum> {
    lattice_spectrum_with(params, &LatticeOptions { k_max, ..LatticeOptions::default() })
}

/// [`real_spectrum_lattice`] with explicit resolution.
pub fn lattice_spectrum_with(params: &ModelParams, opts: &LatticeOptions) -> Result<LatticeSpectrum> {
    if opts.k_max < 1 {
        return Err(Error::Domain("k_max must be at least 1".into()));
    }
    if params.z() <= 0.0 {
        return Err(Error::Domain("the lattice construction needs Z > 0".into()));
    }
    let frame = Frame::new(params);
    let mut tracer = Tracer { frame, opts: *opts, scans: 0, folds: 0 };
    let k_hi = opts.k_max as i64;
    let map = tracer.sweep(0, k_hi);
    let chain = Tracer::chain(&map, 0, k_hi);
    let mut candidates = Vec::new();
    for pair in chain.windows(2) {
        tracer.link(&pair[0], &pair[1], opts.fold_depth, opts.graze_depth, &mut candidates);
    }
    let mut found = Vec::new();
    let mut failures = Vec::new();
    for c in &candidates {
        match frame.refine(c) {
            Ok(s) => found.push(s),
            Err(f) => failures.push(f),
        }
    }
    found.sort_by(f64::total_cmp);
    found.dedup_by(|a, b| (*a - *b).abs() <= 1e-10 * b.abs());
    let mut levels: Vec<BoundState> = found
        .into_iter()
        .map(|s| real_state(WaveVector::on_hyperbola(s, params.z()), params))
        .collect();
    sort_levels(&mut levels);
    log::debug!(
        "lattice: {} candidates, {} levels, {} scans, {} folds, {} failures",
        candidates.len(),
        levels.len(),
        tracer.scans,
        tracer.folds,
        failures.len()
    );
    Ok(LatticeSpectrum { levels, failures, scans: tracer.scans, folds: tracer.folds })
}

/// Locus points of stripes `k_lo..=k_hi`, in the unmirrored plane, ordered
/// by quarter stripe and ξ.
pub fn trace_loci(params: &ModelParams, k_lo: i64, k_hi: i64, xi_samples: usize) -> Vec<LocusPoint> {
    let frame = Frame::new(params);
    let opts = LatticeOptions { xi_samples, ..LatticeOptions::default() };
    let mut tracer = Tracer { frame, opts, scans: 0, folds: 0 };
    let map = tracer.sweep(k_lo, k_hi);
    let chain = Tracer::chain(&map, k_lo, k_hi);
    let mut out = Vec::new();
    for sl in chain {
        let (k, p, q) = sl.key;
        for &s in &sl.roots {
            out.push(LocusPoint {
                index: LatticeIndex { k, p, q, xi: sl.xi },
                sigma: frame.unmirror(s),
                tau: sl.tau,
            });
        }
    }
    out
}
