//! Forms of the matching condition at the corner `x₀ = iω` of the bent
//! contour: the compact real residual, its rotated lattice form, the
//! Θ-curve families and the complex quantization determinant.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{
    kappa_from_st, omega_factor, sigma_tau_from_st, BoundState, LevelKind, ModelParams,
    RotatedPoint, Sign, WaveVector,
};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Refuse `ϱ(τ) = −1/sin τ` when `|sin τ|` drops below this.
pub const RHO_POLE_TOL: f64 = 1e-14;
/// `|ψ(iω)|` below this counts as a node.
pub const NODE_TOL: f64 = 1e-12;
/// Distance from a vertical asymptote of Θ inside which evaluation fails.
pub const ASYMPTOTE_TOL: f64 = 1e-12;

/// `s·sinh σ + t·sin τ`; vanishes exactly on matched states.
pub fn residual_real(w: WaveVector, params: &ModelParams) -> f64 {
    let r = sigma_tau_from_st(w, params);
    w.s * r.sigma.sinh() + w.t * r.tau.sin()
}

/// `τ(1 − ϱωsinh σ) − σ(ω + ϱ sinh σ)` with `ϱ = −1/sin τ`.
pub fn residual_rotated(r: RotatedPoint, params: &ModelParams) -> Result<f64> {
    let sin_tau = r.tau.sin();
    if sin_tau.abs() < RHO_POLE_TOL {
        return Err(Error::RhoPole { tau: r.tau });
    }
    let rho = -1.0 / sin_tau;
    let om = params.omega();
    let sh = r.sigma.sinh();
    let den = 1.0 - rho * om * sh;
    if den.abs() < ASYMPTOTE_TOL * (rho * om * sh).abs().max(1.0) {
        return Err(Error::Asymptote { sigma: r.sigma });
    }
    Ok(r.tau * den - r.sigma * (om + rho * sh))
}

/// One member `(p, ξ)` of the Θ-curve family at a given shift ω.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaCurveSpec {
    pub p: Sign,
    pub xi: f64,
    pub omega: f64,
}

impl ThetaCurveSpec {
    pub fn new(p: Sign, xi: f64, omega: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&xi) {
            return Err(Error::Domain(format!("xi must lie in [0, 1), got {xi}")));
        }
        if !omega.is_finite() {
            return Err(Error::Domain(format!("omega must be finite, got {omega}")));
        }
        Ok(Self { p, xi, omega })
    }

    /// `Ω(p, ξ)`.
    pub fn omega_factor(&self) -> f64 {
        omega_factor(self.p, self.xi)
    }

    /// `1/Ω = p·cos(πξ/2)`, finite everywhere including `ξ → 1`.
    pub fn inverse_factor(&self) -> f64 {
        self.p.value() * (std::f64::consts::FRAC_PI_2 * self.xi).cos()
    }

    /// Location of the vertical asymptote, `arcsinh(1/(ωΩ))`, if any.
    pub fn pole(&self) -> Option<f64> {
        (self.omega != 0.0).then(|| (self.inverse_factor() / self.omega).asinh())
    }

    /// `Θ(σ)` without the asymptote guard.
    pub fn eval(&self, sigma: f64) -> f64 {
        let c = self.inverse_factor();
        let sh = sigma.sinh();
        sigma * (self.omega * c + sh) / (c - self.omega * sh)
    }

    /// `dΘ/dσ`.
    pub fn derivative(&self, sigma: f64) -> f64 {
        let c = self.inverse_factor();
        let om = self.omega;
        let (sh, ch) = (sigma.sinh(), sigma.cosh());
        let u = om * c + sh;
        let v = c - om * sh;
        u / v + sigma * c * (1.0 + om * om) * ch / (v * v)
    }

    /// `Θ(σ) + σ/ω = σ(1+ω²)/(ω(1 − Ωω sinh σ))`, the offset from the
    /// diagonal asymptote `τ = −σ/ω`; requires `ω ≠ 0`.
    pub fn diagonal_offset(&self, sigma: f64) -> f64 {
        let c = self.inverse_factor();
        let om = self.omega;
        sigma * (1.0 + om * om) * c / (om * (c - om * sigma.sinh()))
    }
}

/// `Θ_(p,ξ)(σ) = σ(ω + Ω sinh σ)/(1 − Ωω sinh σ)`.
pub fn theta_curve(spec: &ThetaCurveSpec, sigma: f64) -> Result<f64> {
    if let Some(pole) = spec.pole() {
        if (sigma - pole).abs() < ASYMPTOTE_TOL {
            return Err(Error::Asymptote { sigma });
        }
    }
    Ok(spec.eval(sigma))
}

fn check_envelope_domain(sigma: f64, omega: f64) -> Result<()> {
    if omega == 0.0 || !omega.is_finite() {
        return Err(Error::Domain("envelope asymptote needs omega != 0".into()));
    }
    if !(sigma < -2.0) {
        return Err(Error::Domain(format!("envelope asymptote needs sigma < -2, got {sigma}")));
    }
    Ok(())
}

/// First-order correction of the `ξ = 0` envelope `Θ_(p,0)` about the
/// diagonal `τ = −σ/|ω|`: `−p·σ(1+ω²)/(ω² sinh σ)`.
pub fn envelope_correction(sigma: f64, omega: f64, branch: Sign) -> Result<f64> {
    check_envelope_domain(sigma, omega)?;
    let w2 = omega * omega;
    Ok(-branch.value() * sigma * (1.0 + w2) / (w2 * sigma.sinh()))
}

/// Leading asymptotic form of the envelope `Θ_(p,0)` for `σ ≪ −1`,
/// `−σ/|ω| − p·(σ/|ω|)(|ω| + 1/|ω|)/sinh σ`; `p = −1` is the upper envelope.
/// For `ω < 0` it describes the mirrored curves (`σ → −σ`).
pub fn envelope_asymptote(sigma: f64, omega: f64, branch: Sign) -> Result<f64> {
    let corr = envelope_correction(sigma, omega, branch)?;
    Ok(-sigma / omega.abs() + corr)
}

/// Principal square root with an accurate small real part.
pub fn csqrt(z: Complex64) -> Complex64 {
    if z.re == 0.0 && z.im == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let r = z.norm();
    if z.re >= 0.0 {
        let a = (0.5 * (r + z.re)).sqrt();
        Complex64::new(a, z.im / (2.0 * a))
    } else {
        let b = (0.5 * (r - z.re)).sqrt();
        let b = if z.im >= 0.0 { b } else { -b };
        Complex64::new(z.im / (2.0 * b), b)
    }
}

/// Wave numbers `(κ₊, κ₋) = (√(−E − iZ), √(−E + iZ))`.
pub fn wave_numbers(energy: Complex64, z: f64) -> (Complex64, Complex64) {
    (csqrt(-energy - I * z), csqrt(-energy + I * z))
}

/// `κ₊cosh(κ₊(1−iω))sinh(κ₋(1+iω)) + κ₋cosh(κ₋(1+iω))sinh(κ₊(1−iω))`.
///
/// Zeros at `κ₊κ₋ = 0` are spurious; [`quantization_function`] divides
/// them out.
pub fn matching_determinant(energy: Complex64, params: &ModelParams) -> Complex64 {
    let (kp, km) = wave_numbers(energy, params.z());
    determinant_from_kappas(kp, km, params.omega())
}

pub(crate) fn determinant_from_kappas(kp: Complex64, km: Complex64, omega: f64) -> Complex64 {
    let sum = kp + km;
    let diff = kappa_difference(kp, km);
    let u = sum + I * omega * diff;
    let v = -diff - I * omega * sum;
    0.5 * (sum * u.sinh() + diff * v.sinh())
}

/// `κ₋ − κ₊`, via `2iZ/(κ₊ + κ₋)` when that avoids cancellation.
fn kappa_difference(kp: Complex64, km: Complex64) -> Complex64 {
    let sum = kp + km;
    let sq = km * km - kp * kp;
    if sum.norm() > 0.0 && (km - kp).norm() < 0.5 * sum.norm() {
        sq / sum
    } else {
        km - kp
    }
}

/// Value, `E`-derivative and term scale of the quantization function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantizationEval {
    pub value: Complex64,
    pub derivative: Complex64,
    /// Bound on the magnitude of the terms that make up `value`.
    pub scale: f64,
}

/// `F(E) = D(E)/(κ₊κ₋)`, entire in `E` and free of the branch ambiguity of
/// the wave numbers.
pub fn quantization_function(energy: Complex64, params: &ModelParams) -> Complex64 {
    quantization_eval(energy, params).value
}

const SMALL_KAPPA: f64 = 0.1;

/// Evaluates `F`, `dF/dE` and the term scale together.
pub fn quantization_eval(energy: Complex64, params: &ModelParams) -> QuantizationEval {
    let (kp, km) = wave_numbers(energy, params.z());
    let om = params.omega();
    if kp.norm().min(km.norm()) < SMALL_KAPPA {
        return quantization_small(kp, km, om);
    }
    let prod = kp * km;
    let sum = kp + km;
    let diff = kappa_difference(kp, km);
    let u = sum + I * om * diff;
    let v = -diff - I * om * sum;
    let (sh_u, ch_u) = (u.sinh(), u.cosh());
    let (sh_v, ch_v) = (v.sinh(), v.cosh());
    let first = 0.5 * sum * sh_u;
    let second = 0.5 * diff * sh_v;
    let d = first + second;

    let d_sum = -sum / (2.0 * prod);
    let d_diff = diff / (2.0 * prod);
    let d_u = d_sum + I * om * d_diff;
    let d_v = -d_diff - I * om * d_sum;
    let d_d = 0.5 * (d_sum * sh_u + sum * ch_u * d_u + d_diff * sh_v + diff * ch_v * d_v);

    let value = d / prod;
    let derivative = (d_d - value * energy / prod) / prod;
    let scale = 0.5 * (sum.norm() * u.re.cosh() + diff.norm() * v.re.cosh()) / prod.norm();
    QuantizationEval { value, derivative, scale }
}

/// `sinh z / z`.
fn shc(z: Complex64) -> Complex64 {
    if z.norm() < 0.1 {
        let z2 = z * z;
        let mut term = Complex64::new(1.0, 0.0);
        let mut acc = term;
        for n in 1..8 {
            term *= z2 / ((2 * n * (2 * n + 1)) as f64);
            acc += term;
        }
        acc
    } else {
        z.sinh() / z
    }
}

/// `(z cosh z − sinh z)/z³`.
fn shc_slope(z: Complex64) -> Complex64 {
    if z.norm() < 0.5 {
        let z2 = z * z;
        let mut pow = Complex64::new(1.0, 0.0);
        let mut fact = 6.0;
        let mut acc = Complex64::new(0.0, 0.0);
        for n in 1..10 {
            if n > 1 {
                fact *= ((2 * n) * (2 * n + 1)) as f64;
                pow *= z2;
            }
            acc += pow * ((2 * n) as f64 / fact);
        }
        acc
    } else {
        (z * z.cosh() - z.sinh()) / (z * z * z)
    }
}

fn quantization_small(kp: Complex64, km: Complex64, omega: f64) -> QuantizationEval {
    let a = Complex64::new(1.0, -omega);
    let b = Complex64::new(1.0, omega);
    let (za, zb) = (kp * a, km * b);
    let c_plus = za.cosh();
    let c_minus = zb.cosh();
    let s_plus = a * shc(za);
    let s_minus = b * shc(zb);
    let value = c_plus * s_minus + c_minus * s_plus;

    let dc_plus = -0.5 * a * s_plus;
    let dc_minus = -0.5 * b * s_minus;
    let ds_plus = -0.5 * a * a * a * shc_slope(za);
    let ds_minus = -0.5 * b * b * b * shc_slope(zb);
    let derivative = dc_plus * s_minus + c_plus * ds_minus + dc_minus * s_plus + c_minus * ds_plus;
    let scale = za.re.cosh() * b.norm() * zb.norm().cosh() + zb.re.cosh() * a.norm() * za.norm().cosh();
    QuantizationEval { value, derivative, scale }
}

/// `coth w`, stable for large `|Re w|`.
fn coth(w: Complex64) -> Complex64 {
    if w.re < 0.0 {
        return -coth(-w);
    }
    let e = (-2.0 * w).exp();
    (1.0 + e) / (1.0 - e)
}

/// `|sinh w|` without overflow for moderate arguments.
fn sinh_norm(w: Complex64) -> f64 {
    w.re.sinh().hypot(w.im.sin())
}

/// Argument `κ*(1+iω)` of the left-half solution at the matching point.
fn left_argument(w: WaveVector, omega: f64) -> Complex64 {
    kappa_from_st(w).conj() * Complex64::new(1.0, omega)
}

/// Slope parameter `A = Im[κ* coth(κ*(1+iω))]`.
pub fn amplitude_a(w: WaveVector, params: &ModelParams) -> Result<f64> {
    let arg = left_argument(w, params.omega());
    let magnitude = sinh_norm(arg);
    if magnitude < NODE_TOL {
        return Err(Error::NodeAtMatchingPoint { magnitude });
    }
    Ok((kappa_from_st(w).conj() * coth(arg)).im)
}

/// Normalization amplitudes `(R₋, R₊)` fixing `ψ(iω) = 1`.
pub fn normalization(w: WaveVector, params: &ModelParams) -> Result<(Complex64, Complex64)> {
    let arg = left_argument(w, params.omega());
    let magnitude = sinh_norm(arg);
    if magnitude < NODE_TOL {
        return Err(Error::NodeAtMatchingPoint { magnitude });
    }
    let r_minus = arg.sinh().inv();
    Ok((r_minus, r_minus.conj()))
}

/// Real level carried by a matched wave vector.
pub fn real_state(w: WaveVector, params: &ModelParams) -> BoundState {
    let amps = normalization(w, params).ok();
    BoundState {
        wave: Some(w),
        energy: Complex64::new(crate::model::energy_from_st(w), 0.0),
        slope: amplitude_a(w, params).ok(),
        r_minus: amps.map(|a| a.0),
        r_plus: amps.map(|a| a.1),
        kind: LevelKind::Real,
    }
}

/// Level whose energy left the real axis.
pub fn complex_state(energy: Complex64) -> BoundState {
    BoundState {
        wave: None,
        energy,
        slope: None,
        r_minus: None,
        r_plus: None,
        kind: LevelKind::ComplexPairMember,
    }
}

const CONTOUR_TOL: f64 = 1e-12;

/// `ψ(x)` on the contour: `R₋ sinh κ*(1+x)` on the left segment from −1 to
/// iω, `R₊ sinh κ(1−x)` on the right segment from iω to 1.
pub fn wavefunction_eval(state: &BoundState, params: &ModelParams, x: Complex64) -> Result<Complex64> {
    let (w, r_minus, r_plus) = match (state.wave, state.r_minus, state.r_plus) {
        (Some(w), Some(rm), Some(rp)) => (w, rm, rp),
        _ => {
            return Err(Error::Domain(
                "wave function needs a real level with defined normalization".into(),
            ))
        }
    };
    let om = params.omega();
    let tol = CONTOUR_TOL * (1.0 + om.abs());
    let kappa = kappa_from_st(w);
    if (-1.0 - tol..=tol).contains(&x.re) && (x.im - om * (1.0 + x.re)).abs() <= tol {
        Ok(r_minus * (kappa.conj() * (1.0 + x)).sinh())
    } else if (-tol..=1.0 + tol).contains(&x.re) && (x.im - om * (1.0 - x.re)).abs() <= tol {
        Ok(r_plus * (kappa * (1.0 - x)).sinh())
    } else {
        Err(Error::OffContour { x })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn params(z: f64, om: f64) -> ModelParams {
        ModelParams::new(z, om).unwrap()
    }

    fn wv(s: f64, t: f64) -> WaveVector {
        WaveVector::new(s, t).unwrap()
    }

    #[test]
    fn residual_real_examples() {
        assert!(residual_real(wv(0.0, FRAC_PI_2), &params(0.0, 0.0)).abs() < 1e-15);
        let r = residual_real(wv(1.0, 1.0), &params(2.0, 0.0));
        assert!((r - 4.536_157_834_672_70).abs() < 1e-12, "{r}");
        for n in 1..40 {
            let t = n as f64 * FRAC_PI_2;
            let r = residual_real(wv(0.0, t), &params(0.0, 0.0));
            assert!(r.abs() < 1e-15 * t * t, "{n}: {r}");
        }
    }

    #[test]
    fn residual_rotated_examples() {
        let r = residual_rotated(RotatedPoint::new(0.0, 1.5 * PI), &params(0.0, 0.0)).unwrap();
        assert!((r - 1.5 * PI).abs() < 1e-14);
        let r = residual_rotated(RotatedPoint::new(2.0, 1.75 * PI), &params(0.0, 0.0)).unwrap();
        assert!((r - (-4.760_523_211_440_4)).abs() < 1e-9, "{r}");
        assert!(matches!(
            residual_rotated(RotatedPoint::new(1.0, 2.0 * PI), &params(0.0, 0.0)),
            Err(Error::RhoPole { .. })
        ));
    }

    #[test]
    fn theta_curve_examples() {
        let spec = ThetaCurveSpec::new(Sign::Plus, 0.0, 0.0).unwrap();
        assert!((theta_curve(&spec, 1.0).unwrap() - 1f64.sinh()).abs() < 1e-15);
        let spec = ThetaCurveSpec::new(Sign::Minus, 0.3, 0.4).unwrap();
        assert_eq!(theta_curve(&spec, 0.0).unwrap(), 0.0);
        let spec = ThetaCurveSpec::new(Sign::Plus, 0.0, 0.06).unwrap();
        let pole = spec.pole().unwrap();
        assert!((pole - 3.507_456_684_744_3).abs() < 1e-9, "{pole}");
        assert!(matches!(theta_curve(&spec, pole), Err(Error::Asymptote { .. })));
        assert!(ThetaCurveSpec::new(Sign::Plus, 1.0, 0.1).is_err());
    }

    #[test]
    fn theta_derivative_matches_difference_quotient() {
        let spec = ThetaCurveSpec::new(Sign::Minus, 0.4, 0.3).unwrap();
        for &x in &[-6.0, -2.0, -0.5, 0.7, 2.5] {
            let h = 1e-6;
            let fd = (spec.eval(x + h) - spec.eval(x - h)) / (2.0 * h);
            let an = spec.derivative(x);
            assert!((fd - an).abs() < 1e-6 * (1.0 + an.abs()), "{x}: {fd} vs {an}");
        }
    }

    #[test]
    fn diagonal_offset_is_exact() {
        let spec = ThetaCurveSpec::new(Sign::Plus, 0.2, 0.15).unwrap();
        for &x in &[-8.0, -3.0, 1.0] {
            let lhs = spec.eval(x) + x / 0.15;
            assert!((lhs - spec.diagonal_offset(x)).abs() < 1e-11 * (1.0 + x.abs() / 0.15));
        }
    }

    #[test]
    fn envelope_asymptote_examples() {
        // Leading term of the exact offset σ(1+ω²)/(ω(1 − Ωω sinh σ)).
        let up = envelope_asymptote(-5.0, 0.1, Sign::Minus).unwrap();
        assert!((up - 56.805_635_444).abs() < 1e-6, "{up}");
        let lo = envelope_asymptote(-5.0, 0.1, Sign::Plus).unwrap();
        assert!((up - lo - 13.611_270_889).abs() < 1e-6);
        let a = envelope_asymptote(-10.0, 1.0, Sign::Minus).unwrap();
        assert!((a - 10.0 - 20.0 / 10f64.sinh()).abs() < 1e-12);
        assert!(envelope_asymptote(-5.0, 0.0, Sign::Plus).is_err());
        assert!(envelope_asymptote(-1.0, 0.1, Sign::Plus).is_err());
    }

    #[test]
    fn determinant_examples() {
        let d = matching_determinant(Complex64::new(PI * PI / 4.0, 0.0), &params(0.0, 0.0));
        assert!(d.norm() < 1e-14);
        let d = matching_determinant(Complex64::new(1.0, 0.0), &params(0.0, 0.0));
        assert!((d - Complex64::new(-2f64.sin(), 0.0)).norm() < 1e-15, "{d}");
        let d = matching_determinant(Complex64::new(PI * PI / 4.0, 0.0), &params(0.0, 0.3));
        assert!(d.norm() < 1e-13, "{d}");
    }

    #[test]
    fn stable_form_matches_literal_determinant() {
        let (a, b) = (Complex64::new(1.0, -0.2), Complex64::new(1.0, 0.2));
        for &(kp, km) in &[
            (Complex64::new(0.4, -2.1), Complex64::new(0.7, 1.3)),
            (Complex64::new(3.0, -0.1), Complex64::new(3.0, 0.1)),
            (Complex64::new(0.01, -9.0), Complex64::new(0.01, 9.0)),
        ] {
            let literal = kp * (kp * a).cosh() * (km * b).sinh() + km * (km * b).cosh() * (kp * a).sinh();
            let stable = determinant_from_kappas(kp, km, 0.2);
            assert!((literal - stable).norm() < 1e-12 * (1.0 + literal.norm()), "{literal} vs {stable}");
        }
    }

    #[test]
    fn determinant_flips_sign_under_branch_change() {
        let kp = Complex64::new(0.4, -2.1);
        let km = Complex64::new(0.7, 1.3);
        let d = determinant_from_kappas(kp, km, 0.2);
        let d1 = determinant_from_kappas(-kp, km, 0.2);
        let d2 = determinant_from_kappas(kp, -km, 0.2);
        assert!((d + d1).norm() < 1e-12 * d.norm());
        assert!((d + d2).norm() < 1e-12 * d.norm());
        // D/(κ₊κ₋) is unchanged.
        assert!((d / (kp * km) - d1 / (-kp * km)).norm() < 1e-12 * d.norm());
    }

    #[test]
    fn quantization_paths_agree() {
        let p = params(0.3, 0.4);
        for &e in &[Complex64::new(0.02, 0.01), Complex64::new(-0.3, 0.2), Complex64::new(0.31, -0.04)] {
            let (kp, km) = wave_numbers(e, p.z());
            let direct = determinant_from_kappas(kp, km, p.omega()) / (kp * km);
            let q = quantization_eval(e, &p);
            assert!((q.value - direct).norm() < 1e-12 * q.scale, "{e}");
        }
    }

    #[test]
    fn quantization_derivative_matches_difference_quotient() {
        for &(z, om) in &[(1.0, 0.1), (0.0, 0.5), (3.0, -0.2), (0.05, 0.0)] {
            let p = params(z, om);
            for &e in &[
                Complex64::new(0.01, 0.02),
                Complex64::new(5.0, 1.0),
                Complex64::new(-2.0, 0.3),
                Complex64::new(300.0, -20.0),
            ] {
                let h = 1e-6 * (1.0 + e.norm());
                let fd = (quantization_function(e + h, &p) - quantization_function(e - h, &p)) / (2.0 * h);
                let q = quantization_eval(e, &p);
                assert!(
                    (fd - q.derivative).norm() < 1e-6 * (q.derivative.norm() + q.scale / (1.0 + e.norm())),
                    "{z} {om} {e}: {fd} vs {}",
                    q.derivative
                );
            }
        }
    }

    #[test]
    fn csqrt_principal_branch() {
        let r = csqrt(Complex64::new(-13000.0, -0.5));
        assert!(r.re > 0.0 && r.im < 0.0);
        assert!((r * r - Complex64::new(-13000.0, -0.5)).norm() < 1e-11);
        let b = (0.5 * (Complex64::new(-13000.0, -0.5).norm() + 13000.0)).sqrt();
        assert!((r.re - 0.5 / (2.0 * b)).abs() < 1e-16 * r.re);
        assert_eq!(csqrt(Complex64::new(-4.0, 0.0)), Complex64::new(0.0, 2.0));
    }

    #[test]
    fn amplitude_examples() {
        let a = amplitude_a(wv(0.0, FRAC_PI_2), &params(0.0, 0.0)).unwrap();
        assert!(a.abs() < 1e-15);
        assert!(matches!(
            amplitude_a(wv(0.0, PI), &params(0.0, 0.0)),
            Err(Error::NodeAtMatchingPoint { .. })
        ));
    }

    #[test]
    fn wavefunction_boundary_values() {
        let p = params(1.0, 0.3);
        let w = wv(0.4, 1.25);
        let st = real_state(w, &p);
        let at = |x| wavefunction_eval(&st, &p, x).unwrap();
        assert!(at(Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!(at(Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((at(Complex64::new(0.0, 0.3)) - 1.0).norm() < 1e-14);
        assert!(at(Complex64::new(-0.5, 0.15)).is_finite());
        assert!(matches!(
            wavefunction_eval(&st, &p, Complex64::new(0.5, 0.0)),
            Err(Error::OffContour { .. })
        ));
    }
}
