//! Zeros of the quantization function in a rectangle of the energy plane:
//! argument-principle counting on cell boundaries, recursive subdivision
//! and Newton refinement.

use std::f64::consts::{FRAC_PI_4, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matching::{quantization_eval, real_state, wave_numbers, QuantizationEval};
use crate::model::{ModelParams, WaveVector};

use super::{sort_levels, Diagnostics, EnergyWindow, Method, SpectrumReport};

/// Tuning of the rectangle solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexOptions {
    /// Roots closer than this to the real axis are reported as real.
    pub real_axis_tol: f64,
    /// Maximum distance between a complex root and its partner's conjugate.
    pub pairing_tol: f64,
    /// Attempts at shifting the outer window when a zero sits on it.
    pub max_jitter: usize,
}

impl Default for ComplexOptions {
    fn default() -> Self {
        Self { real_axis_tol: 1e-8, pairing_tol: 1e-8, max_jitter: 6 }
    }
}

#[derive(Debug, Clone, Copy)]
struct Rect {
    re0: f64,
    re1: f64,
    im0: f64,
    im1: f64,
}

impl Rect {
    fn from_window(w: &EnergyWindow) -> Self {
        Self { re0: w.re_min, re1: w.re_max, im0: w.im_min, im1: w.im_max }
    }

    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.re0, self.im0),
            Complex64::new(self.re1, self.im0),
            Complex64::new(self.re1, self.im1),
            Complex64::new(self.re0, self.im1),
        ]
    }

    fn center(&self) -> Complex64 {
        Complex64::new(0.5 * (self.re0 + self.re1), 0.5 * (self.im0 + self.im1))
    }

    fn width(&self) -> f64 {
        self.re1 - self.re0
    }

    fn height(&self) -> f64 {
        self.im1 - self.im0
    }

    fn contains(&self, z: Complex64, slack: f64) -> bool {
        z.re >= self.re0 - slack
            && z.re <= self.re1 + slack
            && z.im >= self.im0 - slack
            && z.im <= self.im1 + slack
    }

    fn magnitude(&self) -> f64 {
        self.re0.abs().max(self.re1.abs()).max(self.im0.abs()).max(self.im1.abs()).max(1.0)
    }

    /// Splits across the longer side at `frac` of its length.
    fn split(&self, frac: f64) -> (Rect, Rect) {
        if self.width() >= self.height() {
            let cut = self.re0 + frac * self.width();
            (Rect { re1: cut, ..*self }, Rect { re0: cut, ..*self })
        } else {
            let mut cut = self.im0 + frac * self.height();
            // Real roots must never sit on a cut.
            if cut.abs() < 1e-3 * self.height() {
                cut += 2e-3 * self.height();
            }
            (Rect { im1: cut, ..*self }, Rect { im0: cut, ..*self })
        }
    }
}

struct Solver<'a> {
    params: &'a ModelParams,
    opts: ComplexOptions,
    cells: usize,
    splits: usize,
}

/// Phase change of `F` along a straight segment, or the point where a zero
/// sits on the segment.
enum Edge {
    Phase(f64),
    Crossing(Complex64),
}

const MIN_SEGMENT: f64 = 1e-9;

impl<'a> Solver<'a> {
    fn eval(&self, z: Complex64) -> QuantizationEval {
        quantization_eval(z, self.params)
    }

    fn edge_phase(&self, z0: Complex64, z1: Complex64) -> Edge {
        let f0 = self.eval(z0);
        let f1 = self.eval(z1);
        // Seed segments short enough for the local oscillation rate.
        let (kp, km) = wave_numbers(0.5 * (z0 + z1), self.params.z());
        let kmin = kp.norm().min(km.norm()).max(1.0);
        let rate = (1.0 + self.params.omega().abs()) / kmin;
        let n = (((z1 - z0).norm() * rate / FRAC_PI_4).ceil() as usize).clamp(1, 1 << 16);
        let mut total = 0.0;
        let mut prev = (z0, f0);
        for i in 1..=n {
            let z = if i == n { z1 } else { z0 + (z1 - z0) * (i as f64 / n as f64) };
            let f = if i == n { f1 } else { self.eval(z) };
            match self.segment(prev.0, z, prev.1, f, 0) {
                Edge::Phase(d) => total += d,
                crossing => return crossing,
            }
            prev = (z, f);
        }
        Edge::Phase(total)
    }

    fn segment(
        &self,
        z0: Complex64,
        z1: Complex64,
        f0: QuantizationEval,
        f1: QuantizationEval,
        depth: u32,
    ) -> Edge {
        let len = (z1 - z0).norm();
        let log_rate = |f: &QuantizationEval| (f.derivative / f.value).norm();
        let arg = (f1.value / f0.value).arg();
        let smooth = arg.abs() < FRAC_PI_4
            && log_rate(&f0) * len < FRAC_PI_4
            && log_rate(&f1) * len < FRAC_PI_4;
        if smooth || f0.value.norm() == 0.0 || f1.value.norm() == 0.0 {
            if f0.value.norm() == 0.0 || f1.value.norm() == 0.0 {
                return Edge::Crossing(if f0.value.norm() == 0.0 { z0 } else { z1 });
            }
            return Edge::Phase(arg);
        }
        let scale = z0.norm().max(z1.norm()).max(1.0);
        if len < MIN_SEGMENT * scale || depth > 60 {
            return Edge::Crossing(0.5 * (z0 + z1));
        }
        let zm = 0.5 * (z0 + z1);
        let fm = self.eval(zm);
        match self.segment(z0, zm, f0, fm, depth + 1) {
            Edge::Phase(a) => match self.segment(zm, z1, fm, f1, depth + 1) {
                Edge::Phase(b) => Edge::Phase(a + b),
                c => c,
            },
            c => c,
        }
    }

    /// Number of zeros inside `r` by the argument principle.
    fn count(&mut self, r: &Rect) -> std::result::Result<usize, Complex64> {
        self.cells += 1;
        let c = r.corners();
        let mut total = 0.0;
        for i in 0..4 {
            match self.edge_phase(c[i], c[(i + 1) % 4]) {
                Edge::Phase(d) => total += d,
                Edge::Crossing(z) => return Err(z),
            }
        }
        let n = (total / TAU).round();
        if n < 0.0 || (total - n * TAU).abs() > 0.25 {
            return Err(r.center());
        }
        Ok(n as usize)
    }

    fn newton(&self, start: Complex64, cell: &Rect) -> Option<Complex64> {
        let mut z = start;
        let max_step = cell.width().hypot(cell.height());
        for _ in 0..100 {
            let q = self.eval(z);
            if q.derivative.norm() == 0.0 || !q.value.is_finite() {
                return None;
            }
            let mut dz = q.value / q.derivative;
            if dz.norm() > max_step {
                dz *= max_step / dz.norm();
            }
            z -= dz;
            if dz.norm() <= 4.0 * f64::EPSILON * z.norm().max(1.0) {
                break;
            }
        }
        let q = self.eval(z);
        let converged = q.value.norm() <= 1e-10 * q.scale.max(f64::MIN_POSITIVE);
        let slack = 1e-9 * cell.magnitude();
        (converged && cell.contains(z, slack)).then_some(z)
    }

    fn split_fraction(&mut self) -> f64 {
        self.splits += 1;
        // Low-discrepancy offsets keep cuts away from symmetric positions.
        let golden = 0.618_033_988_749_895;
        0.5 + 0.12 * ((self.splits as f64 * golden).fract() - 0.5)
    }

    /// Splits `r` and counts both halves, retrying other cut positions when
    /// a zero lands on the cut.
    fn split_counted(&mut self, r: &Rect, n: usize) -> Result<[(Rect, usize); 2]> {
        let mut last = r.center();
        for _ in 0..8 {
            let (a, b) = r.split(self.split_fraction());
            let (na, nb) = match (self.count(&a), self.count(&b)) {
                (Ok(na), Ok(nb)) => (na, nb),
                (Err(z), _) | (_, Err(z)) => {
                    last = z;
                    continue;
                }
            };
            if na + nb != n {
                last = r.center();
                continue;
            }
            return Ok([(a, na), (b, nb)]);
        }
        Err(Error::BoundaryCrossing { near: last })
    }

    fn locate(&mut self, r: Rect, n: usize, out: &mut Vec<Complex64>) -> Result<()> {
        if n == 0 {
            return Ok(());
        }
        let tiny = r.width().max(r.height()) < 1e-12 * r.magnitude();
        if n == 1 {
            if let Some(z) = self.newton(r.center(), &r) {
                out.push(z);
                return Ok(());
            }
            if tiny {
                return Err(Error::NoConvergence { near: r.center() });
            }
        } else if tiny {
            // Coalesced zeros at an exceptional point.
            out.extend(std::iter::repeat_n(r.center(), n));
            return Ok(());
        }
        for (half, m) in self.split_counted(&r, n)? {
            self.locate(half, m, out)?;
        }
        Ok(())
    }

    fn polish_real(&self, e0: f64) -> f64 {
        let mut e = e0;
        for _ in 0..50 {
            let q = self.eval(Complex64::new(e, 0.0));
            if q.derivative.re == 0.0 {
                break;
            }
            let de = q.value.re / q.derivative.re;
            e -= de;
            if de.abs() <= 2.0 * f64::EPSILON * e.abs().max(1.0) {
                break;
            }
        }
        e
    }
}

/// Zeros of the quantization function in `window` with default options.
pub fn complex_spectrum(params: &ModelParams, window: EnergyWindow) -> Result<SpectrumReport> {
    complex_spectrum_with(params, window, &ComplexOptions::default())
}

/// Zeros of the quantization function in `window`.
pub fn complex_spectrum_with(
    params: &ModelParams,
    window: EnergyWindow,
    opts: &ComplexOptions,
) -> Result<SpectrumReport> {
    let window = EnergyWindow::new(window.re_min, window.re_max, window.im_min, window.im_max)?;
    let mut solver = Solver { params, opts: *opts, cells: 0, splits: 0 };
    let mut rect = Rect::from_window(&window);
    let mut jitter_events = 0;
    let total = loop {
        match solver.count(&rect) {
            Ok(n) => break n,
            Err(near) => {
                if jitter_events >= solver.opts.max_jitter {
                    return Err(Error::BoundaryCrossing { near });
                }
                jitter_events += 1;
                let pad = 1e-6 * (1.0 + jitter_events as f64) * rect.magnitude();
                log::info!("zero near the window boundary at {near}; widening by {pad:e}");
                rect = Rect {
                    re0: rect.re0 - pad,
                    re1: rect.re1 + pad,
                    im0: rect.im0 - pad,
                    im1: rect.im1 + pad,
                };
            }
        }
    };
    let mut roots = Vec::with_capacity(total);
    solver.locate(rect, total, &mut roots)?;
    if roots.len() != total {
        return Err(Error::CountMismatch { counted: total, located: roots.len() });
    }

    let mut real = Vec::new();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    let mut max_residual: f64 = 0.0;
    for z in roots {
        if z.im.abs() < solver.opts.real_axis_tol {
            let e = solver.polish_real(z.re);
            let q = solver.eval(Complex64::new(e, 0.0));
            max_residual = max_residual.max(q.value.norm() / q.scale);
            real.push(e);
        } else {
            let q = solver.eval(z);
            max_residual = max_residual.max(q.value.norm() / q.scale);
            if z.im > 0.0 {
                upper.push(z);
            } else {
                lower.push(z);
            }
        }
    }

    let mut notes = Vec::new();
    let inside = |z: Complex64| {
        z.re >= rect.re0 && z.re <= rect.re1 && z.im >= rect.im0 && z.im <= rect.im1
    };
    let mut pairs = Vec::new();
    let mut pairing_error: f64 = 0.0;
    let mut used = vec![false; lower.len()];
    for &z in &upper {
        let partner = lower
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .min_by(|a, b| (a.1 - z.conj()).norm().total_cmp(&(b.1 - z.conj()).norm()));
        match partner {
            Some((i, w)) if (w - z.conj()).norm() <= solver.opts.pairing_tol * z.norm().max(1.0) => {
                used[i] = true;
                pairing_error = pairing_error.max((w - z.conj()).norm() / z.norm().max(1.0));
                pairs.push(z);
            }
            _ if inside(z.conj()) => return Err(Error::UnpairedRoot { root: z }),
            _ => notes.push(format!("root {z} has its conjugate outside the window")),
        }
    }
    for (i, &w) in lower.iter().enumerate() {
        if !used[i] {
            if inside(w.conj()) {
                return Err(Error::UnpairedRoot { root: w });
            }
            notes.push(format!("root {w} has its conjugate outside the window"));
        }
    }
    pairs.sort_by(|a, b| a.re.total_cmp(&b.re));

    let z = params.z();
    let mut real_levels: Vec<_> = real
        .into_iter()
        .map(|e| {
            let (kp, _) = wave_numbers(Complex64::new(e, 0.0), z);
            let w = WaveVector { s: kp.re.max(0.0), t: (-kp.im).max(0.0) };
            let mut st = real_state(w, params);
            st.energy = Complex64::new(e, 0.0);
            st
        })
        .collect();
    sort_levels(&mut real_levels);
    if jitter_events > 0 {
        notes.push(format!("outer window widened {jitter_events} time(s) to clear a boundary zero"));
    }
    log::debug!(
        "argument principle: {total} zeros, {} real, {} pairs, {} cells",
        real_levels.len(),
        pairs.len(),
        solver.cells
    );
    let searched = EnergyWindow { re_min: rect.re0, re_max: rect.re1, im_min: rect.im0, im_max: rect.im1 };
    Ok(SpectrumReport {
        params: *params,
        real_levels,
        complex_pairs: pairs,
        window: Some(searched),
        diagnostics: Diagnostics {
            method: Some(Method::ArgumentPrinciple),
            argument_count: Some(total),
            max_residual,
            pairing_error,
            cells: solver.cells,
            jitter_events,
            notes,
            ..Diagnostics::default()
        },
    })
}
