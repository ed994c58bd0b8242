//! Scalar bracketing helpers shared by the real-axis solvers.

fn same_side(a: f64, b: f64) -> bool {
    (a < 0.0) == (b < 0.0)
}

/// Bisects a sign change of `f` on `[a, b]` down to adjacent floats.
/// `fa` is `f(a)`; a sign change is assumed.
pub fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a.min(b) || m >= a.max(b) {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if same_side(fm, fa) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Location of the interior extremum of `f` on `[a, b]`, given the slope
/// `df` with opposite signs at the two ends.
pub fn extremum(df: impl Fn(f64) -> f64, a: f64, b: f64, dfa: f64) -> f64 {
    bisect(df, a, b, dfa)
}

/// Whether two samples straddle zero under the convention `sign(0) = +`.
pub fn straddles(fa: f64, fb: f64) -> bool {
    !same_side(fa, fb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_cos_root() {
        let r = bisect(f64::cos, 0.0, 3.0, 1.0);
        assert!((r - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn extremum_of_parabola() {
        let x = extremum(|x| 2.0 * (x - 0.3), -1.0, 2.0, -2.6);
        assert!((x - 0.3).abs() < 1e-15);
    }

    #[test]
    fn straddle_convention() {
        assert!(straddles(-1.0, 0.0));
        assert!(!straddles(0.0, 2.0));
    }
}
