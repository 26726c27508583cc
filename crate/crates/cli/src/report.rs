use std::fmt;

use serde::Serialize;
use tcreal_core::{CertificateKind, Decision, Mode, Realization, Reason};

/// Summary of one check or build.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub input: Vec<u32>,
    pub mode: Mode,
    pub realizable: bool,
    pub reason: Reason,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSummary>,
    pub millis: f64,
}

#[derive(Debug, Serialize)]
pub struct OutputSummary {
    pub n: usize,
    pub m: usize,
    pub max_label: u32,
    pub shared_edges: usize,
    pub certificate: CertificateKind,
    /// `None` when verification was skipped.
    pub verified: Option<bool>,
}

impl RunReport {
    pub fn new(input: Vec<u32>, decision: Decision, millis: f64) -> Self {
        RunReport {
            input,
            mode: decision.mode,
            realizable: decision.realizable,
            reason: decision.reason,
            output: None,
            millis,
        }
    }

    pub fn with_output(mut self, r: &Realization, verified: Option<bool>) -> Self {
        self.output = Some(OutputSummary {
            n: r.graph.vertex_count(),
            m: r.graph.edge_count(),
            max_label: r.labeling.max_label(),
            shared_edges: r.certificate.shared.len(),
            certificate: r.certificate.kind(),
            verified,
        });
        self
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let input: Vec<String> = self.input.iter().map(u32::to_string).collect();
        let verdict = if self.realizable {
            "realizable"
        } else {
            "not realizable"
        };
        write!(
            f,
            "({}) {}: {verdict} [{}]",
            input.join(" "),
            self.mode,
            self.reason
        )?;
        if let Some(o) = &self.output {
            write!(
                f,
                "; n={} m={} max_label={} shared={} certificate={}",
                o.n, o.m, o.max_label, o.shared_edges, o.certificate
            )?;
            match o.verified {
                Some(true) => write!(f, " verified")?,
                Some(false) => write!(f, " VERIFICATION FAILED")?,
                None => {}
            }
        }
        write!(f, " ({:.3} ms)", self.millis)
    }
}
