//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_E_MAX: f64 = 2000.0;
pub const DEFAULT_S_MAX: f64 = 12.0;

#[derive(Debug, Parser)]
#[command(name = "ptwell", version, about = "Spectrum of the PT-symmetric square well with a shifted matching point")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Real levels below an energy cap.
    Spectrum(SpectrumArgs),
    /// Number of real levels below an energy cap.
    Count(CountArgs),
    /// Real levels and complex pairs inside a rectangle of the energy plane.
    Complex(ComplexArgs),
    /// Couplings at which the lowest level pairs turn complex.
    Critical(CriticalArgs),
    /// Sampled curves for re-plotting the Θ family, loci and hyperbola.
    Curves(CurvesArgs),
    /// Real spectra over a grid of couplings and shifts.
    Sweep(SweepArgs),
}

impl Command {
    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::Spectrum(a) => &a.output,
            Command::Count(a) => &a.output,
            Command::Complex(a) => &a.output,
            Command::Critical(a) => &a.output,
            Command::Curves(a) => &a.output,
            Command::Sweep(a) => &a.output,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// File of `key = value` lines naming flags; flags given on the command
    /// line take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Coupling strength.
    #[arg(long = "Z", visible_alias = "z", default_value_t = 1.0, value_parser = finite)]
    pub z: f64,
    /// Imaginary shift of the matching point.
    #[arg(long, default_value_t = 0.0, value_parser = finite)]
    pub omega: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RealMethod {
    Bracket,
    Lattice,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true, args_override_self = true)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Energy cap; defaults to 2000 when the real spectrum is unbounded
    /// (Z = 0 or ω = 0), otherwise only the s cap applies.
    #[arg(long, value_parser = finite)]
    pub emax: Option<f64>,
    /// Largest s scanned along the hyperbola.
    #[arg(long, default_value_t = DEFAULT_S_MAX, value_parser = finite)]
    pub smax: f64,
    #[arg(long, value_enum, default_value_t = RealMethod::Bracket)]
    pub method: RealMethod,
    /// Highest lattice stripe; defaults to the separation cover.
    #[arg(long)]
    pub kmax: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true, args_override_self = true)]
pub struct CountArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = DEFAULT_E_MAX, value_parser = finite)]
    pub emax: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// `re_min,re_max,im_min,im_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowArg(pub [f64; 4]);

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true, args_override_self = true)]
pub struct ComplexArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Search rectangle as `re_min,re_max,im_min,im_max`.
    #[arg(long, default_value = "0,2000,-200,200", value_parser = window, allow_hyphen_values = true)]
    pub window: WindowArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true, args_override_self = true)]
pub struct CriticalArgs {
    #[arg(long, default_value_t = 0.0, value_parser = finite)]
    pub omega: f64,
    /// Number of level pairs to follow.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Θ-curves at the requested (p, ξ) values.
    Theta,
    /// Solution locus of one stripe with the hyperbola across it.
    Oval,
    /// Loci, hyperbola, asymptotes, crossings and hyperbola deviation.
    Intersection,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true, args_override_self = true)]
pub struct CurvesArgs {
    #[arg(long, value_enum, default_value_t = Family::Theta)]
    pub family: Family,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Curve parameters ξ in [0, 1).
    #[arg(long, value_delimiter = ',', default_value = "0,0.5,0.9,0.99", value_parser = finite)]
    pub xi: Vec<f64>,
    /// Curve branches p, each +1 or -1.
    #[arg(long, value_delimiter = ',', default_value = "1", value_parser = branch, allow_hyphen_values = true)]
    pub p: Vec<i8>,
    /// Stripe traced by the oval family.
    #[arg(long, default_value_t = 30)]
    pub stripe: i64,
    /// Highest stripe traced by the intersection family.
    #[arg(long)]
    pub kmax: Option<usize>,
    /// Half-width of the sampled σ range.
    #[arg(long, default_value_t = 6.0, value_parser = finite)]
    pub sigma_max: f64,
    /// Points per sampled curve.
    #[arg(long, default_value_t = 801)]
    pub samples: usize,
    /// ξ resolution of traced loci.
    #[arg(long, default_value_t = 64)]
    pub xi_samples: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true, args_override_self = true)]
pub struct SweepArgs {
    /// Couplings, comma separated.
    #[arg(long = "Z", visible_alias = "z", value_delimiter = ',', default_value = "1", value_parser = finite)]
    pub z: Vec<f64>,
    /// Shifts, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0", value_parser = finite, allow_hyphen_values = true)]
    pub omega: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_E_MAX, value_parser = finite)]
    pub emax: f64,
    #[arg(long, default_value_t = DEFAULT_S_MAX, value_parser = finite)]
    pub smax: f64,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn finite(text: &str) -> Result<f64, String> {
    let x: f64 = text.trim().parse().map_err(|e| format!("{text:?} is not a number: {e}"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{text:?} is not finite"))
    }
}

fn window(text: &str) -> Result<WindowArg, String> {
    let parts: Vec<f64> = text.split(',').map(finite).collect::<Result<_, _>>()?;
    let bounds: [f64; 4] = parts
        .try_into()
        .map_err(|_| format!("window {text:?} needs four values re_min,re_max,im_min,im_max"))?;
    Ok(WindowArg(bounds))
}

fn branch(text: &str) -> Result<i8, String> {
    match text.trim() {
        "1" | "+1" | "+" => Ok(1),
        "-1" | "-" => Ok(-1),
        other => Err(format!("branch {other:?} must be +1 or -1")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn later_flags_override_earlier_ones() {
        let cli = Cli::try_parse_from(["ptwell", "count", "--Z", "3", "--omega", "-0.2", "--z", "2"]).unwrap();
        let Command::Count(a) = cli.command else { panic!() };
        assert_eq!((a.model.z, a.model.omega), (2.0, -0.2));
    }

    #[test]
    fn lists_and_windows_parse() {
        let cli = Cli::try_parse_from(["ptwell", "curves", "--xi", "0,0.5", "--p", "-1,1"]).unwrap();
        let Command::Curves(a) = cli.command else { panic!() };
        assert_eq!(a.xi, [0.0, 0.5]);
        assert_eq!(a.p, [-1, 1]);
        let cli = Cli::try_parse_from(["ptwell", "complex", "--window", "-5,10,-1,1"]).unwrap();
        let Command::Complex(a) = cli.command else { panic!() };
        assert_eq!(a.window.0, [-5.0, 10.0, -1.0, 1.0]);
    }

    #[test]
    fn non_finite_values_are_rejected() {
        assert!(Cli::try_parse_from(["ptwell", "count", "--emax", "inf"]).is_err());
        assert!(Cli::try_parse_from(["ptwell", "count", "--omega", "NaN"]).is_err());
        assert!(Cli::try_parse_from(["ptwell", "complex", "--window", "0,1,2"]).is_err());
    }
}
