//! Domain types and the closed-form coordinate maps between the wave
//! vector `(s, t)`, the scaled rotated pair `(σ, τ)` and the lattice
//! index `(k, p, q, ξ)`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Coupling strength and contour shift of one model instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    z: f64,
    omega: f64,
    phi: f64,
}

impl ModelParams {
    /// Builds the parameter set; `z` must be finite and non-negative,
    /// `omega` finite.
    pub fn new(z: f64, omega: f64) -> Result<Self> {
        if !z.is_finite() || z < 0.0 {
            return Err(Error::Domain(format!("coupling Z must be finite and >= 0, got {z}")));
        }
        if !omega.is_finite() {
            return Err(Error::Domain(format!("shift omega must be finite, got {omega}")));
        }
        Ok(Self { z, omega, phi: omega.atan() })
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Rotation angle `arctan ω`, always inside `(−π/2, π/2)`.
    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `cos 2φ`, in the rational form `(1−ω²)/(1+ω²)`.
    pub fn cos_2phi(&self) -> f64 {
        let w2 = self.omega * self.omega;
        (1.0 - w2) / (1.0 + w2)
    }

    /// `sin 2φ = 2ω/(1+ω²)`.
    pub fn sin_2phi(&self) -> f64 {
        2.0 * self.omega / (1.0 + self.omega * self.omega)
    }

    /// `cos²φ = 1/(1+ω²)`.
    pub fn cos2_phi(&self) -> f64 {
        1.0 / (1.0 + self.omega * self.omega)
    }

    /// The same coupling with the contour mirrored, `ω → −ω`.
    pub fn mirrored(&self) -> Self {
        Self { z: self.z, omega: -self.omega, phi: -self.phi }
    }
}

/// Real pair `(s, t)` with `κ = s − it`, restricted to the first quadrant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveVector {
    pub s: f64,
    pub t: f64,
}

impl WaveVector {
    /// Checked constructor: both components finite and non-negative.
    pub fn new(s: f64, t: f64) -> Result<Self> {
        if s.is_finite() && t.is_finite() && s >= 0.0 && t >= 0.0 {
            Ok(Self { s, t })
        } else {
            Err(Error::NonPhysical { s, t })
        }
    }

    /// Point of the constraint hyperbola `2st = Z` with the given `s > 0`.
    pub fn on_hyperbola(s: f64, z: f64) -> Self {
        Self { s, t: z / (2.0 * s) }
    }
}

/// Scaled rotated coordinates of the matching plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotatedPoint {
    pub sigma: f64,
    pub tau: f64,
}

impl RotatedPoint {
    pub fn new(sigma: f64, tau: f64) -> Self {
        Self { sigma, tau }
    }
}

/// A sign taking the values ±1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Minus => -1.0,
            Sign::Plus => 1.0,
        }
    }

    pub fn of(x: f64) -> Self {
        if x < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }
}

/// Position of `τ` on the moving lattice,
/// `τ = (2k+1)π + pπ/2 + qπξ/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeIndex {
    pub k: i64,
    pub p: Sign,
    pub q: Sign,
    pub xi: f64,
}

impl LatticeIndex {
    pub fn omega_factor(&self) -> f64 {
        omega_factor(self.p, self.xi)
    }
}

/// Whether a level sits on the real axis or belongs to a conjugate pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelKind {
    Real,
    ComplexPairMember,
}

/// One eigenstate of the well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    /// Wave vector, present for real levels.
    pub wave: Option<WaveVector>,
    pub energy: Complex64,
    /// Slope `A` at the matching point; `None` for complex levels and for
    /// real levels with a node at `iω`.
    pub slope: Option<f64>,
    pub r_minus: Option<Complex64>,
    pub r_plus: Option<Complex64>,
    pub kind: LevelKind,
}

impl BoundState {
    pub fn real_energy(&self) -> f64 {
        self.energy.re
    }
}

/// `κ = s − it`.
pub fn kappa_from_st(w: WaveVector) -> Complex64 {
    Complex64::new(w.s, -w.t)
}

/// `E = t² − s²`.
pub fn energy_from_st(w: WaveVector) -> f64 {
    (w.t - w.s) * (w.t + w.s)
}

/// Rotation by φ followed by the `2/cos φ` scaling:
/// `σ = 2(s − tω)`, `τ = 2(sω + t)`.
pub fn sigma_tau_from_st(w: WaveVector, params: &ModelParams) -> RotatedPoint {
    let om = params.omega();
    RotatedPoint { sigma: 2.0 * (w.s - w.t * om), tau: 2.0 * (w.s * om + w.t) }
}

/// Unchecked inverse of [`sigma_tau_from_st`]; may leave the quadrant.
pub fn st_raw(r: RotatedPoint, omega: f64) -> (f64, f64) {
    let d = 2.0 * (1.0 + omega * omega);
    ((r.sigma + r.tau * omega) / d, (r.tau - r.sigma * omega) / d)
}

/// Inverse of [`sigma_tau_from_st`], rejecting points outside `s, t ≥ 0`.
pub fn st_from_sigma_tau(r: RotatedPoint, params: &ModelParams) -> Result<WaveVector> {
    let (s, t) = st_raw(r, params.omega());
    WaveVector::new(s, t)
}

/// `E = ¼[(τ²−σ²)cos2φ − 2στ sin2φ]cos²φ`.
pub fn energy_from_sigma_tau(r: RotatedPoint, params: &ModelParams) -> f64 {
    let RotatedPoint { sigma, tau } = r;
    0.25 * ((tau - sigma) * (tau + sigma) * params.cos_2phi()
        - 2.0 * sigma * tau * params.sin_2phi())
        * params.cos2_phi()
}

/// `τ = (2k+1)π + pπ/2 + qπξ/2`.
pub fn lattice_compose(idx: LatticeIndex) -> f64 {
    (2 * idx.k + 1) as f64 * PI + idx.p.value() * FRAC_PI_2 + idx.q.value() * FRAC_PI_2 * idx.xi
}

/// Canonical lattice index of `τ`.
///
/// Points where `ξ = 0` get `q = −1`. The multiples of π (poles of
/// `ϱ = −1/sin τ`) have no representative with `ξ < 1`; they are returned
/// with `q = −1` and `ξ = 1`.
pub fn lattice_decompose(tau: f64) -> LatticeIndex {
    let k = (tau / (2.0 * PI)).floor();
    let r = tau - (2.0 * k + 1.0) * PI;
    let (p, d) = if r >= 0.0 { (Sign::Plus, r - FRAC_PI_2) } else { (Sign::Minus, r + FRAC_PI_2) };
    let q = if d > 0.0 { Sign::Plus } else { Sign::Minus };
    let xi = (d.abs() / FRAC_PI_2).min(1.0);
    LatticeIndex { k: k as i64, p, q, xi }
}

/// `Ω(p, ξ) = p / cos(πξ/2)`.
pub fn omega_factor(p: Sign, xi: f64) -> f64 {
    p.value() / (FRAC_PI_2 * xi).cos()
}
