//! Dispatch of a parsed command to the solvers and the writers.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;

use ptwell_core::spectrum::{
    complex_spectrum, count_real, critical_couplings, hermitian_spectrum, lattice_k_cover,
    real_spectrum_lattice, real_spectrum_report, BracketOptions, Diagnostics, EnergyWindow, Method,
    SpectrumReport,
};
use ptwell_core::ModelParams;

use crate::args::{
    Command, ComplexArgs, CountArgs, CriticalArgs, Format, ModelArgs, OutputArgs, RealMethod,
    SpectrumArgs, SweepArgs, DEFAULT_E_MAX,
};
use crate::curves::emit_curves;
use crate::error::CliError;
use crate::numfmt::{round_sig, to_json};
use crate::report::{CountDoc, CouplingDoc, CriticalDoc, ParamsDoc, ReportDoc, SweepDoc, SweepPointDoc};

type Table = (Vec<&'static str>, Vec<Vec<String>>);

pub fn run(command: &Command) -> Result<(), CliError> {
    let output = command.output();
    match command {
        Command::Spectrum(a) => {
            let doc = ReportDoc::from(&spectrum(a)?);
            emit(output, &doc, || doc.rows())
        }
        Command::Count(a) => {
            let doc = count(a)?;
            emit(output, &doc, || doc.rows())
        }
        Command::Complex(a) => {
            let doc = ReportDoc::from(&complex(a)?);
            emit(output, &doc, || doc.rows())
        }
        Command::Critical(a) => {
            let doc = critical(a)?;
            emit(output, &doc, || doc.rows())
        }
        Command::Curves(a) => {
            let doc = emit_curves(&model(&a.model)?, a)?;
            emit(output, &doc, || doc.rows())
        }
        Command::Sweep(a) => {
            let doc = sweep(a)?;
            emit(output, &doc, || doc.rows())
        }
    }
}

fn model(m: &ModelArgs) -> Result<ModelParams, CliError> {
    params(m.z, m.omega)
}

fn params(z: f64, omega: f64) -> Result<ModelParams, CliError> {
    ModelParams::new(z, omega).map_err(|e| CliError::InvalidFlag(e.to_string()))
}

fn positive(name: &str, x: f64) -> Result<f64, CliError> {
    if x > 0.0 {
        Ok(x)
    } else {
        Err(CliError::InvalidFlag(format!("--{name} must be positive, got {x}")))
    }
}

fn real_levels(p: &ModelParams, e_max: Option<f64>, s_max: f64) -> Result<SpectrumReport, CliError> {
    let e_max = match e_max {
        Some(e) => positive("emax", e)?,
        None if p.z() == 0.0 || p.omega() == 0.0 => DEFAULT_E_MAX,
        None => f64::INFINITY,
    };
    let opts = BracketOptions { s_max: positive("smax", s_max)?, e_max, ..BracketOptions::default() };
    Ok(real_spectrum_report(p, &opts)?)
}

fn spectrum(a: &SpectrumArgs) -> Result<SpectrumReport, CliError> {
    let p = model(&a.model)?;
    if a.method == RealMethod::Bracket || p.z() == 0.0 {
        return real_levels(&p, a.emax, a.smax);
    }
    let k_max = match a.kmax {
        Some(k) => k,
        None if p.omega() == 0.0 => {
            return Err(CliError::InvalidFlag("--method lattice at omega = 0 needs --kmax".into()))
        }
        None => lattice_k_cover(&p)?,
    };
    let lattice = real_spectrum_lattice(&p, k_max)?;
    let notes = lattice
        .failures
        .iter()
        .map(|f| format!("unresolved crossing near sigma = {}, tau = {}: {}", f.sigma, f.tau, f.reason))
        .collect();
    let e_max = a.emax.map_or(Ok(f64::INFINITY), |e| positive("emax", e))?;
    let levels = lattice.levels.into_iter().filter(|l| l.energy.re <= e_max).collect();
    Ok(SpectrumReport {
        params: p,
        real_levels: levels,
        complex_pairs: Vec::new(),
        window: None,
        diagnostics: Diagnostics { method: Some(Method::Lattice), notes, ..Diagnostics::default() },
    })
}

fn count(a: &CountArgs) -> Result<CountDoc, CliError> {
    let p = model(&a.model)?;
    let count = count_real(&p, positive("emax", a.emax)?)?;
    Ok(CountDoc { params: ParamsDoc::from(&p), e_max: round_sig(a.emax), count })
}

fn complex(a: &ComplexArgs) -> Result<SpectrumReport, CliError> {
    let p = model(&a.model)?;
    let [re_min, re_max, im_min, im_max] = a.window.0;
    let window =
        EnergyWindow::new(re_min, re_max, im_min, im_max).map_err(|e| CliError::InvalidFlag(e.to_string()))?;
    if p.z() == 0.0 {
        let levels = hermitian_spectrum(&p, re_max)?
            .into_iter()
            .filter(|l| l.energy.re >= re_min)
            .collect();
        return Ok(SpectrumReport {
            params: p,
            real_levels: levels,
            complex_pairs: Vec::new(),
            window: Some(window),
            diagnostics: Diagnostics { method: Some(Method::Hermitian), ..Diagnostics::default() },
        });
    }
    Ok(complex_spectrum(&p, window)?)
}

fn critical(a: &CriticalArgs) -> Result<CriticalDoc, CliError> {
    if a.n == 0 {
        return Err(CliError::InvalidFlag("--n must be at least 1".into()));
    }
    params(0.0, a.omega)?;
    let couplings = critical_couplings(a.omega, a.n)?;
    Ok(CriticalDoc { omega: round_sig(a.omega), couplings: couplings.iter().map(CouplingDoc::from).collect() })
}

fn sweep(a: &SweepArgs) -> Result<SweepDoc, CliError> {
    if a.jobs == 0 {
        return Err(CliError::InvalidFlag("--jobs must be at least 1".into()));
    }
    let e_max = positive("emax", a.emax)?;
    let grid: Vec<ModelParams> = a
        .z
        .iter()
        .flat_map(|&z| a.omega.iter().map(move |&om| (z, om)))
        .map(|(z, om)| params(z, om))
        .collect::<Result<_, _>>()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs)
        .build()
        .map_err(|e| CliError::InvalidFlag(format!("--jobs: {e}")))?;
    let reports: Vec<SpectrumReport> =
        pool.install(|| grid.par_iter().map(|p| real_levels(p, Some(e_max), a.smax)).collect::<Result<_, _>>())?;
    let points = reports
        .iter()
        .map(|r| SweepPointDoc {
            z: round_sig(r.params.z()),
            omega: round_sig(r.params.omega()),
            count: r.real_levels.len(),
            levels: r.real_levels.iter().map(|l| round_sig(l.energy.re)).collect(),
        })
        .collect();
    Ok(SweepDoc { e_max: round_sig(e_max), s_max: round_sig(a.smax), points })
}

fn emit<T: serde::Serialize>(output: &OutputArgs, doc: &T, rows: impl FnOnce() -> Table) -> Result<(), CliError> {
    let bytes = match output.format {
        Format::Json => to_json(doc)?,
        Format::Csv => {
            let (header, rows) = rows();
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header)?;
            for row in rows {
                w.write_record(&row)?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))?
        }
    };
    match &output.output {
        Some(path) => write_file(path, &bytes),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(&bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let file = File::create(path)
        .map_err(|e| CliError::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    let mut w = BufWriter::new(file);
    w.write_all(bytes)?;
    w.flush()?;
    Ok(())
}
