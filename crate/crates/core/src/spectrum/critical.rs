//! Couplings at which a pair of real levels merges and leaves the real
//! axis, located by bisection on the real-level count.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::ModelParams;

use super::bracket::{bracket_sweep, BracketOptions};

/// One exceptional point in the coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalCoupling {
    /// 1-based index of the merging pair.
    pub pair: usize,
    /// Midpoint of the final bracket.
    pub z: f64,
    pub bracket: (f64, f64),
    /// Energy ceiling of the counting window.
    pub e_track: f64,
}

const Z_STEP: f64 = 0.05;
const Z_LIMIT: f64 = 400.0;
const Z_RESOLUTION: f64 = 1e-4;

/// Counting ceiling for pair `n`, halfway (in `E`) between the unperturbed
/// levels `2n` and `2n+1`.
pub fn tracking_ceiling(n: usize) -> f64 {
    let a = (2 * n + 1) as f64;
    let b = (2 * n + 2) as f64;
    (a * a + b * b) * PI * PI / 8.0
}

fn count_below(z: f64, omega: f64, e_max: f64) -> Result<usize> {
    let params = ModelParams::new(z, omega)?;
    let opts = BracketOptions { e_max, ..BracketOptions::default() };
    Ok(bracket_sweep(&params, &opts)?.roots.len())
}

/// `Z_1 < … < Z_n_pairs` for the given contour shift.
pub fn critical_couplings(omega: f64, n_pairs: usize) -> Result<Vec<CriticalCoupling>> {
    if n_pairs < 1 {
        return Err(Error::Domain("n_pairs must be at least 1".into()));
    }
    let mut out: Vec<CriticalCoupling> = Vec::with_capacity(n_pairs);
    let mut z_start = Z_STEP;
    for pair in 1..=n_pairs {
        let e_track = tracking_ceiling(pair);
        let mut lo = z_start;
        let start = count_below(lo, omega, e_track)?;
        let mut hi = lo;
        let mut end = start;
        while end == start {
            hi = lo + Z_STEP;
            if hi > Z_LIMIT {
                return Err(Error::Domain(format!(
                    "no merger of pair {pair} below Z = {Z_LIMIT} at omega = {omega}"
                )));
            }
            end = count_below(hi, omega, e_track)?;
            if end == start {
                lo = hi;
            }
        }
        if end + 2 != start {
            return Err(Error::WindowTooSmall { pair, from: start, to: end });
        }
        while hi - lo > Z_RESOLUTION {
            let mid = 0.5 * (lo + hi);
            let c = count_below(mid, omega, e_track)?;
            if c == start {
                lo = mid;
            } else if c == end {
                hi = mid;
            } else {
                return Err(Error::WindowTooSmall { pair, from: start, to: c });
            }
        }
        let z = 0.5 * (lo + hi);
        log::info!("pair {pair}: Z in [{lo:.6}, {hi:.6}] (count {start} -> {end} below E = {e_track:.3})");
        out.push(CriticalCoupling { pair, z, bracket: (lo, hi), e_track });
        z_start = hi + Z_RESOLUTION;
    }
    Ok(out)
}
