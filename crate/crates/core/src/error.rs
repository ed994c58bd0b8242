use thiserror::Error;

/// Failures raised by the solver layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Domain(String),

    #[error("sin(tau) vanishes at tau = {tau}; rho(tau) has a pole")]
    RhoPole { tau: f64 },

    #[error("sigma = {sigma} sits on the vertical asymptote of the curve")]
    Asymptote { sigma: f64 },

    #[error("wave function has a node at the matching point (|sinh| = {magnitude:e})")]
    NodeAtMatchingPoint { magnitude: f64 },

    #[error("coordinate {x} is not on the bent contour")]
    OffContour { x: num_complex::Complex64 },

    #[error("point (s = {s}, t = {t}) lies outside the physical quadrant")]
    NonPhysical { s: f64, t: f64 },

    #[error("a zero of the determinant lies on the boundary of the search window near {near}")]
    BoundaryCrossing { near: num_complex::Complex64 },

    #[error("argument principle counted {counted} zeros but {located} were located")]
    CountMismatch { counted: usize, located: usize },

    #[error("complex root {root} has no conjugate partner inside the window")]
    UnpairedRoot { root: num_complex::Complex64 },

    #[error("root refinement did not converge near {near}")]
    NoConvergence { near: num_complex::Complex64 },

    #[error("{failures} locus/hyperbola intersection(s) failed to converge, first near sigma = {sigma}, tau = {tau}")]
    IntersectionFailed { failures: usize, sigma: f64, tau: f64 },

    #[error("tracking window for pair {pair} is too small: real count went from {from} to {to}")]
    WindowTooSmall { pair: usize, from: usize, to: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
