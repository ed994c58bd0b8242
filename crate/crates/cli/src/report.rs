//! Serializable documents written by each command. Every number is rounded
//! to the printed precision on construction, so a document re-parsed from
//! its own JSON compares equal.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use ptwell_core::constraint::Separation;
use ptwell_core::model::energy_from_st;
use ptwell_core::spectrum::{CriticalCoupling, Diagnostics, EnergyWindow, SpectrumReport};
use ptwell_core::{BoundState, ModelParams};

use crate::numfmt::{cell, round_sig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsDoc {
    #[serde(rename = "Z")]
    pub z: f64,
    pub omega: f64,
    pub phi: f64,
}

impl From<&ModelParams> for ParamsDoc {
    fn from(p: &ModelParams) -> Self {
        Self { z: round_sig(p.z()), omega: round_sig(p.omega()), phi: round_sig(p.phi()) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelDoc {
    pub n: usize,
    pub s: f64,
    pub t: f64,
    #[serde(rename = "E")]
    pub e: f64,
    #[serde(rename = "A")]
    pub a: Option<f64>,
}

impl LevelDoc {
    fn new(n: usize, level: &BoundState) -> Self {
        let (s, t) = level.wave.map_or((f64::NAN, f64::NAN), |w| (w.s, w.t));
        Self {
            n,
            s: round_sig(s),
            t: round_sig(t),
            e: round_sig(level.energy.re),
            a: level.slope.map(round_sig),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairDoc {
    pub re: f64,
    pub im: f64,
}

impl From<&Complex64> for PairDoc {
    fn from(e: &Complex64) -> Self {
        Self { re: round_sig(e.re), im: round_sig(e.im.abs()) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowDoc {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl From<&EnergyWindow> for WindowDoc {
    fn from(w: &EnergyWindow) -> Self {
        Self {
            re_min: round_sig(w.re_min),
            re_max: round_sig(w.re_max),
            im_min: round_sig(w.im_min),
            im_max: round_sig(w.im_max),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparationDoc {
    pub sigma: f64,
    pub tau: f64,
    pub s: f64,
    pub t: f64,
    #[serde(rename = "E")]
    pub e: f64,
}

impl From<&Separation> for SeparationDoc {
    fn from(sep: &Separation) -> Self {
        Self {
            sigma: round_sig(sep.sigma),
            tau: round_sig(sep.tau),
            s: round_sig(sep.wave.s),
            t: round_sig(sep.wave.t),
            e: round_sig(energy_from_st(sep.wave)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsDoc {
    pub method: Option<String>,
    pub argument_count: Option<usize>,
    pub max_residual: f64,
    pub pairing_error: f64,
    pub cells: usize,
    pub jitter_events: usize,
    pub t_range: Option<[f64; 2]>,
    pub separation: Option<SeparationDoc>,
    pub notes: Vec<String>,
}

impl From<&Diagnostics> for DiagnosticsDoc {
    fn from(d: &Diagnostics) -> Self {
        Self {
            method: d.method.map(|m| m.name().to_owned()),
            argument_count: d.argument_count,
            max_residual: round_sig(d.max_residual),
            pairing_error: round_sig(d.pairing_error),
            cells: d.cells,
            jitter_events: d.jitter_events,
            t_range: d.t_range.map(|(lo, hi)| [round_sig(lo), round_sig(hi)]),
            separation: d.separation.as_ref().map(SeparationDoc::from),
            notes: d.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub params: ParamsDoc,
    pub real_levels: Vec<LevelDoc>,
    pub complex_pairs: Vec<PairDoc>,
    pub window: Option<WindowDoc>,
    pub diagnostics: DiagnosticsDoc,
}

impl From<&SpectrumReport> for ReportDoc {
    fn from(r: &SpectrumReport) -> Self {
        Self {
            params: ParamsDoc::from(&r.params),
            real_levels: r.real_levels.iter().enumerate().map(|(n, l)| LevelDoc::new(n, l)).collect(),
            complex_pairs: r.complex_pairs.iter().map(PairDoc::from).collect(),
            window: r.window.as_ref().map(WindowDoc::from),
            diagnostics: DiagnosticsDoc::from(&r.diagnostics),
        }
    }
}

impl ReportDoc {
    /// One row per level: `kind,n,s,t,re,im,A`.
    pub fn rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let header = vec!["kind", "n", "s", "t", "re", "im", "A"];
        let real = self.real_levels.iter().map(|l| {
            vec![
                "real".into(),
                l.n.to_string(),
                cell(l.s),
                cell(l.t),
                cell(l.e),
                "0".into(),
                l.a.map(cell).unwrap_or_default(),
            ]
        });
        let pairs = self.complex_pairs.iter().enumerate().map(|(n, p)| {
            vec![
                "complex".into(),
                n.to_string(),
                String::new(),
                String::new(),
                cell(p.re),
                cell(p.im),
                String::new(),
            ]
        });
        (header, real.chain(pairs).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountDoc {
    pub params: ParamsDoc,
    pub e_max: f64,
    pub count: usize,
}

impl CountDoc {
    pub fn rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        (
            vec!["Z", "omega", "e_max", "count"],
            vec![vec![cell(self.params.z), cell(self.params.omega), cell(self.e_max), self.count.to_string()]],
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CouplingDoc {
    pub pair: usize,
    #[serde(rename = "Z")]
    pub z: f64,
    pub lo: f64,
    pub hi: f64,
    pub e_track: f64,
}

impl From<&CriticalCoupling> for CouplingDoc {
    fn from(c: &CriticalCoupling) -> Self {
        Self {
            pair: c.pair,
            z: round_sig(c.z),
            lo: round_sig(c.bracket.0),
            hi: round_sig(c.bracket.1),
            e_track: round_sig(c.e_track),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalDoc {
    pub omega: f64,
    pub couplings: Vec<CouplingDoc>,
}

impl CriticalDoc {
    pub fn rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let rows = self
            .couplings
            .iter()
            .map(|c| {
                vec![cell(self.omega), c.pair.to_string(), cell(c.z), cell(c.lo), cell(c.hi), cell(c.e_track)]
            })
            .collect();
        (vec!["omega", "pair", "Z", "lo", "hi", "e_track"], rows)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPointDoc {
    #[serde(rename = "Z")]
    pub z: f64,
    pub omega: f64,
    pub count: usize,
    pub levels: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepDoc {
    pub e_max: f64,
    pub s_max: f64,
    pub points: Vec<SweepPointDoc>,
}

impl SweepDoc {
    /// One row per level: `Z,omega,n,E`.
    pub fn rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let rows = self
            .points
            .iter()
            .flat_map(|p| {
                p.levels
                    .iter()
                    .enumerate()
                    .map(move |(n, &e)| vec![cell(p.z), cell(p.omega), n.to_string(), cell(e)])
            })
            .collect();
        (vec!["Z", "omega", "n", "E"], rows)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveDoc {
    pub label: String,
    /// `(σ, τ)` pairs, or `(σ, offset)` for deviation data.
    pub points: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvesDoc {
    pub family: String,
    pub params: ParamsDoc,
    pub curves: Vec<CurveDoc>,
}

impl CurvesDoc {
    /// One row per sample: `curve,sigma,tau`.
    pub fn rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let rows = self
            .curves
            .iter()
            .flat_map(|c| c.points.iter().map(move |&[x, y]| vec![c.label.clone(), cell(x), cell(y)]))
            .collect();
        (vec!["curve", "sigma", "tau"], rows)
    }
}
