use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

use indmorse::complex::Simplex;
use indmorse::homotopy::HomotopyType;
use indmorse::matching::{CriticalFVector, Matching};

#[derive(Debug, Default, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub edges: usize,
    pub chordal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Serialize)]
pub struct OracleCheck {
    pub betti: Vec<usize>,
    pub torsion_free: Vec<bool>,
    pub consistent: bool,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum GammaCheck {
    Checked { gamma: usize, bound_holds: bool },
    Skipped { reason: String },
}

#[derive(Debug, Default, Serialize)]
pub struct Timings {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_ms: Option<f64>,
}

/// Everything `analyze` reports. Without timings the output depends only on
/// the input graph and flags.
#[derive(Debug, Default, Serialize)]
pub struct AnalysisReport {
    pub graph: GraphSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<Value>,
    pub mode: &'static str,
    pub driver: &'static str,
    pub critical_f: Option<CriticalFVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub special_zero: Option<Simplex>,
    pub homotopy: Option<HomotopyType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Matching>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<GammaCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

pub fn describe(homotopy: &HomotopyType) -> String {
    match homotopy {
        HomotopyType::Collapsible => "collapsible".into(),
        HomotopyType::Unclassified(why) => format!("unclassified ({why})"),
        HomotopyType::WedgeOfSpheres(counts) => {
            let parts: Vec<String> = counts
                .counts()
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0u8.into())
                .map(|(d, c)| format!("{c} x S^{d}"))
                .collect();
            format!("wedge of {}", parts.join(" + "))
        }
    }
}

impl AnalysisReport {
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        let g = &self.graph;
        let _ = writeln!(
            out,
            "graph         {} vertices, {} edges, chordal: {}",
            g.n, g.edges, g.chordal
        );
        if let Some(grid) = &g.grid {
            let _ = writeln!(out, "grid sizes    {grid:?}");
        }
        let _ = writeln!(out, "pipeline      {} / {}", self.mode, self.driver);
        if let Some(f) = &self.critical_f {
            let _ = writeln!(out, "critical f    {f}");
        }
        if let Some(z) = self.special_zero {
            let _ = writeln!(out, "special zero  {z:?}");
        }
        if let Some(h) = &self.homotopy {
            let _ = writeln!(out, "homotopy      {}", describe(h));
        }
        if let Some(o) = &self.oracle {
            let _ = writeln!(
                out,
                "homology      betti {:?}, torsion-free {}, consistent {}",
                o.betti,
                o.torsion_free.iter().all(|&t| t),
                o.consistent
            );
        }
        match &self.gamma {
            Some(GammaCheck::Checked { gamma, bound_holds }) => {
                let _ = writeln!(out, "domination    γ = {gamma}, bound holds: {bound_holds}");
            }
            Some(GammaCheck::Skipped { reason }) => {
                let _ = writeln!(out, "domination    skipped ({reason})");
            }
            None => {}
        }
        if let Some(t) = &self.timings {
            if let Some(ms) = t.total_ms {
                let _ = writeln!(out, "time          {ms:.3} ms");
            }
        }
        out
    }
}
