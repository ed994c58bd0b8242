//! The coupling constraint `2st = Z` seen in the rotated `(σ, τ)` plane.
//!
//! For `ω > 0` the physical branch is the graph `τ = Ξ(σ)`. For `ω < 0` it
//! is `σ = Υ(τ)`; mirroring `σ → −σ, ω → −ω` turns it into the reflected
//! branch `σ̃ = Σ(τ)` that lives on the same side as the `ω > 0` picture.

use crate::error::{Error, Result};
use crate::model::{st_raw, ModelParams, RotatedPoint, WaveVector};

/// Which explicit solution of the rotated quadratic a point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchKind {
    /// `τ = Ξ(σ)`, `ω > 0`.
    Xi,
    /// `σ = Υ(τ)`, `ω < 0`.
    Upsilon,
    /// `σ̃ = Σ(τ) = −Υ(τ)`, `ω < 0` after mirroring.
    Reflected,
}

/// The physical hyperbola branch for a given parameter set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolaBranch {
    pub params: ModelParams,
    pub kind: BranchKind,
}

impl HyperbolaBranch {
    /// `Xi` for `ω > 0`, `Reflected` for `ω < 0`.
    pub fn for_params(params: ModelParams) -> Result<Self> {
        let kind = if params.omega() > 0.0 {
            BranchKind::Xi
        } else if params.omega() < 0.0 {
            BranchKind::Reflected
        } else {
            return Err(Error::Domain("the rotated hyperbola degenerates at omega = 0".into()));
        };
        Ok(Self { params, kind })
    }

    /// Point of the branch at the free coordinate (σ for `Xi`, τ otherwise),
    /// expressed in the unmirrored plane.
    pub fn point(&self, free: f64) -> Result<RotatedPoint> {
        Ok(match self.kind {
            BranchKind::Xi => RotatedPoint::new(free, xi_branch(free, &self.params)?),
            BranchKind::Upsilon => RotatedPoint::new(upsilon_branch(free, &self.params)?, free),
            BranchKind::Reflected => RotatedPoint::new(-reflected_branch(free, &self.params)?, free),
        })
    }

    /// Wave vector of the branch point at `free`.
    pub fn wave(&self, free: f64) -> Result<WaveVector> {
        let (s, t) = st_raw(self.point(free)?, self.params.omega());
        WaveVector::new(s, t)
    }
}

fn require_nonzero_omega(params: &ModelParams) -> Result<()> {
    if params.omega() == 0.0 {
        Err(Error::Domain("the rotated quadratic needs omega != 0; use 2st = Z".into()))
    } else {
        Ok(())
    }
}

/// Signed `X² = 4Z/(sin 2φ cos²φ) = 2Z(1+ω²)²/ω`.
pub fn x_squared(params: &ModelParams) -> f64 {
    let w = params.omega();
    2.0 * params.z() * (1.0 + w * w).powi(2) / w
}

/// `τ² + 2τσ cot 2φ − σ² − X²`, zero exactly on `2st = Z`.
pub fn quadratic_residual(r: RotatedPoint, params: &ModelParams) -> Result<f64> {
    require_nonzero_omega(params)?;
    let w = params.omega();
    let cot = (1.0 - w * w) / (2.0 * w);
    let RotatedPoint { sigma, tau } = r;
    Ok(tau * tau + 2.0 * tau * sigma * cot - sigma * sigma - x_squared(params))
}

/// `½(ω + 1/ω)` for `|ω|`.
fn half_sum(w: f64) -> f64 {
    0.5 * (w + 1.0 / w)
}

/// Larger root of `x² − 2βux − (u² + c) = 0` given `β`, `u` and `c ≥ 0`,
/// i.e. `βu + √(β²u² + u² + c)`, computed without cancellation.
fn upper_root(beta: f64, u: f64, radicand: f64) -> f64 {
    let root = radicand.sqrt();
    let lin = beta * u;
    if lin >= 0.0 {
        lin + root
    } else {
        // Product of the two roots is −(u² + c) = lin² − radicand.
        (lin * lin - radicand) / (lin - root)
    }
}

/// `Ξ(σ) = ½(ω − 1/ω)σ + ½√((ω + 1/ω)²σ² + 4X²)`, the `τ > 0` branch for
/// `ω > 0`.
pub fn xi_branch(sigma: f64, params: &ModelParams) -> Result<f64> {
    let w = params.omega();
    if !(w > 0.0) {
        return Err(Error::Domain(format!("xi_branch needs omega > 0, got {w}")));
    }
    let a = half_sum(w);
    Ok(upper_root(0.5 * (w - 1.0 / w), sigma, a * a * sigma * sigma + x_squared(params)))
}

/// Positive `Y² = |4Z/(sin 2φ cos²φ)|`.
pub fn y_squared(params: &ModelParams) -> f64 {
    x_squared(params).abs()
}

/// `Υ(τ) = ½(1/ω − ω)τ + ½√((ω + 1/ω)²τ² + 4Y²)`, the `σ > 0` branch for
/// `ω < 0`.
pub fn upsilon_branch(tau: f64, params: &ModelParams) -> Result<f64> {
    let w = params.omega();
    if !(w < 0.0) {
        return Err(Error::Domain(format!("upsilon_branch needs omega < 0, got {w}")));
    }
    let a = half_sum(w);
    Ok(upper_root(0.5 * (1.0 / w - w), tau, a * a * tau * tau + y_squared(params)))
}

/// `Σ(τ) = ½(1/ω̃ − ω̃)τ − ½√((ω̃ + 1/ω̃)²τ² + 4Y²)` with `ω̃ = |ω|`, the
/// mirror image `−Υ(τ)`.
pub fn reflected_branch(tau: f64, params: &ModelParams) -> Result<f64> {
    if !(params.omega() < 0.0) {
        return Err(Error::Domain(format!(
            "reflected_branch needs omega < 0, got {}",
            params.omega()
        )));
    }
    Ok(-upsilon_branch(tau, params)?)
}

/// `τ` on the reflected branch as a function of the mirrored `σ̃`, valid
/// where `(ω̃+1/ω̃)²σ̃²/4 ≥ Y²`; takes the root on the `σ̃ < 0` side.
pub fn reflected_tau(sigma_mirrored: f64, params: &ModelParams) -> Result<f64> {
    let w = params.omega().abs();
    if params.omega() >= 0.0 {
        return Err(Error::Domain("reflected_tau needs omega < 0".into()));
    }
    let a = half_sum(w);
    let disc = a * a * sigma_mirrored * sigma_mirrored - y_squared(params);
    if disc < 0.0 {
        return Err(Error::Domain(format!("sigma {sigma_mirrored} is inside the reflected gap")));
    }
    Ok(-0.5 * (1.0 / w - w) * sigma_mirrored + disc.sqrt())
}

fn check_asymptote_domain(sigma: f64, params: &ModelParams) -> Result<()> {
    require_nonzero_omega(params)?;
    if !(sigma < -2.0) {
        return Err(Error::Domain(format!("hyperbola asymptote needs sigma < -2, got {sigma}")));
    }
    Ok(())
}

/// Exact offset `τ_branch(σ) + σ/|ω|` of the branch from the diagonal for
/// `σ < 0` (mirrored `σ̃` when `ω < 0`).
pub fn hyperbola_offset(sigma: f64, params: &ModelParams) -> Result<f64> {
    require_nonzero_omega(params)?;
    let a = half_sum(params.omega().abs());
    let m = a * sigma.abs();
    let x2 = y_squared(params);
    if params.omega() > 0.0 {
        Ok(x2 / ((m * m + x2).sqrt() + m))
    } else {
        let disc = m * m - x2;
        if disc < 0.0 {
            return Err(Error::Domain(format!("sigma {sigma} is inside the reflected gap")));
        }
        Ok(-x2 / (m + disc.sqrt()))
    }
}

/// `−σ/|ω| ∓ |X²|/((|ω| + 1/|ω|)σ)` for `sign ω = ±1`.
pub fn hyperbola_asymptote(sigma: f64, params: &ModelParams) -> Result<f64> {
    check_asymptote_domain(sigma, params)?;
    let w = params.omega();
    let sign = w.signum();
    Ok(-sigma / w.abs() - sign * y_squared(params) / ((w.abs() + 1.0 / w.abs()) * sigma))
}

/// Point beyond which no real level can exist.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Separation {
    /// `σ*` in the working frame (mirrored when `ω < 0`).
    pub sigma: f64,
    pub tau: f64,
    /// Wave vector of the hyperbola at `σ*`; real levels need `s > s*`.
    pub wave: WaveVector,
}

impl Separation {
    pub fn energy(&self) -> f64 {
        crate::model::energy_from_st(self.wave)
    }
}

/// Largest offset of the solution loci from the diagonal at `σ` (mirrored
/// frame), attained on the upper envelope `Θ_(−1,0)`; infinite while
/// `|ω sinh σ| ≤ 1`.
pub fn envelope_offset_bound(sigma: f64, omega: f64) -> f64 {
    let w = omega.abs();
    let excess = w * sigma.sinh().abs() - 1.0;
    if excess <= 0.0 {
        f64::INFINITY
    } else {
        sigma.abs() * (1.0 + w * w) / (w * excess)
    }
}

const SEPARATION_FLOOR: f64 = -50.0;
const SEPARATION_CEILING: f64 = -2.0;
const SEPARATION_STEP: f64 = 0.01;

/// `σ*`: past it (towards `−∞`) the envelope offset stays below half the
/// hyperbola offset, so the loci cannot reach the hyperbola.
pub fn asymptotic_separation(params: &ModelParams) -> Result<Separation> {
    require_nonzero_omega(params)?;
    if params.z() <= 0.0 {
        return Err(Error::Domain("separation needs Z > 0".into()));
    }
    let separated = |sigma: f64| -> bool {
        match hyperbola_offset(sigma, params) {
            Ok(h) => envelope_offset_bound(sigma, params.omega()) < 0.5 * h.abs(),
            Err(_) => false,
        }
    };
    if !separated(SEPARATION_FLOOR) {
        return Err(Error::Domain(format!(
            "no separation below sigma = {SEPARATION_FLOOR} for Z = {}, omega = {}",
            params.z(),
            params.omega()
        )));
    }
    let mut good = SEPARATION_FLOOR;
    let mut bad = SEPARATION_CEILING;
    let mut x = SEPARATION_FLOOR;
    while x < SEPARATION_CEILING {
        let next = (x + SEPARATION_STEP).min(SEPARATION_CEILING);
        if !separated(next) {
            bad = next;
            break;
        }
        good = next;
        x = next;
    }
    if good >= SEPARATION_CEILING {
        bad = good;
    }
    while bad - good > 1e-12 * good.abs().max(1.0) {
        let mid = 0.5 * (good + bad);
        if separated(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    let sigma = good;
    let w = params.omega();
    let (tau, point) = if w > 0.0 {
        let tau = xi_branch(sigma, params)?;
        (tau, RotatedPoint::new(sigma, tau))
    } else {
        let tau = reflected_tau(sigma, params)?;
        (tau, RotatedPoint::new(-sigma, tau))
    };
    let (s, t) = st_raw(point, w);
    Ok(Separation { sigma, tau, wave: WaveVector::new(s.max(0.0), t.max(0.0))? })
}
