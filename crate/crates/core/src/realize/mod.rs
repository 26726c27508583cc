//! Decision and construction of temporally connected realizations.

mod fixtures;
mod nonstrict;
mod plan;
mod replay;

use serde::{Deserialize, Serialize};

use crate::degseq::DegreeSequence;
use crate::graphstore::{Certificate, LabeledMultigraph, Mode};
use crate::labeling::{label_plain_tree, pivot_label, TemporalLabeling};
use crate::verify;

use plan::Planner;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealizeError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Reason {
    NotGraphical,
    NotMultigraphical,
    TooFewEdges,
    BoundaryFailsC4,
    TwoLeaves,
    OkC4Pivotable,
    OkOneSharedEdge,
    OkTwoEdgeDisjoint,
    OkSmallN,
    /// Non-strict only: a zero entry with more than one vertex.
    IsolatedVertex,
    /// Non-strict only: a connected realization exists.
    OkSpanningTree,
}

impl std::fmt::Display for Reason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub realizable: bool,
    pub mode: Mode,
    pub reason: Reason,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    /// Re-check residual (multi)graphicality after every descent step and
    /// verify the finished certificate and labeling. Quadratic.
    pub debug_checks: bool,
    /// Report matching pairs in the certificate when the construction tracks them.
    pub keep_matching_pairs: bool,
}

impl Default for BuildOptions {
    /// `debug_checks` follows the `TCREAL_DEBUG_ASSERT=1` environment variable.
    fn default() -> Self {
        BuildOptions {
            debug_checks: std::env::var("TCREAL_DEBUG_ASSERT").is_ok_and(|v| v == "1"),
            keep_matching_pairs: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Realization {
    pub graph: LabeledMultigraph,
    pub certificate: Certificate,
    pub labeling: TemporalLabeling,
    pub decision: Decision,
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone)]
pub enum TcOutcome {
    Realized(Realization),
    NotRealizable(Decision),
}

#[derive(Debug, Clone)]
pub struct NonStrictRealization {
    pub graph: LabeledMultigraph,
    /// Edge ids of the spanning tree that carries label 1.
    pub tree: Vec<u32>,
    pub labeling: TemporalLabeling,
    pub decision: Decision,
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone)]
pub enum NonStrictOutcome {
    Realized(NonStrictRealization),
    NotRealizable(Decision),
}

fn characterizable(d: &DegreeSequence, mode: Mode) -> Result<(), Reason> {
    match mode {
        Mode::Simple if !d.is_graphical() => Err(Reason::NotGraphical),
        Mode::Multi if !d.is_multigraphical() => Err(Reason::NotMultigraphical),
        _ => Ok(()),
    }
}

/// Decides whether `d` has a realization admitting a proper, simple,
/// temporally connected labeling. O(n).
pub fn check_tc_realizable(d: &DegreeSequence, mode: Mode) -> Decision {
    let decide = |realizable, reason| Decision {
        realizable,
        mode,
        reason,
    };
    if let Err(reason) = characterizable(d, mode) {
        return decide(false, reason);
    }
    let n = d.len() as i64;
    if n == 0 {
        return decide(true, Reason::OkSmallN);
    }
    let m = d.edge_count() as i64;
    let d1 = d.max().unwrap_or(0) as i64;
    let dn = d.min().unwrap_or(0);
    if m < 2 * n - 4 {
        return decide(false, Reason::TooFewEdges);
    }
    if m == 2 * n - 4 {
        let ok = match mode {
            Mode::Simple => d1 < n - 1 && dn >= 2,
            Mode::Multi => dn >= 2,
        };
        return if ok {
            decide(true, Reason::OkC4Pivotable)
        } else {
            decide(false, Reason::BoundaryFailsC4)
        };
    }
    if n <= 2 {
        return decide(true, Reason::OkSmallN);
    }
    let second_last = d.get_from_end(1).unwrap_or(0);
    if second_last >= 2 && dn >= 1 {
        if d.sum() >= 4 * (n as u64 - 1) && dn >= 2 {
            decide(true, Reason::OkTwoEdgeDisjoint)
        } else {
            decide(true, Reason::OkOneSharedEdge)
        }
    } else {
        decide(false, Reason::TwoLeaves)
    }
}

/// Decides the non-strict variant: labels may repeat and paths may use equal
/// labels, so any connected realization will do.
pub fn check_nonstrict(d: &DegreeSequence, mode: Mode) -> Decision {
    let decide = |realizable, reason| Decision {
        realizable,
        mode,
        reason,
    };
    if let Err(reason) = characterizable(d, mode) {
        return decide(false, reason);
    }
    let n = d.len() as u64;
    if n <= 1 {
        return decide(true, Reason::OkSmallN);
    }
    if d.edge_count() < n - 1 {
        return decide(false, Reason::TooFewEdges);
    }
    if d.min() == Some(0) {
        return decide(false, Reason::IsolatedVertex);
    }
    decide(true, Reason::OkSpanningTree)
}

fn precondition(ok: bool, msg: &str) -> Result<(), RealizeError> {
    if ok {
        Ok(())
    } else {
        Err(RealizeError::Precondition(msg.to_string()))
    }
}

struct Built {
    graph: LabeledMultigraph,
    certificate: Certificate,
}

fn run(
    d: &DegreeSequence,
    mode: Mode,
    opts: BuildOptions,
    descend: fn(&mut Planner) -> Result<(), RealizeError>,
) -> Result<Built, RealizeError> {
    let mut planner = Planner::new(d, opts.debug_checks);
    descend(&mut planner)?;
    let plan = planner.finish();
    let replay::Replayed {
        mut graph,
        central,
        pairs,
    } = replay::replay(&plan, mode, d.len(), d.edge_count() as usize)?;
    let map = graph.compact();
    let pairs = if opts.keep_matching_pairs {
        pairs.and_then(|p| {
            let remap = |e: u32| map.get(e as usize).copied().flatten();
            Some([
                (remap(p[0].0)?, remap(p[0].1)?),
                (remap(p[1].0)?, remap(p[1].1)?),
            ])
        })
    } else {
        None
    };
    let mut certificate = Certificate::from_graph(&graph, central);
    certificate.matching_pairs = pairs;
    if !same_degrees(&graph, d) {
        return Err(RealizeError::Internal(
            "degree sequence of the output differs".into(),
        ));
    }
    if opts.debug_checks {
        graph.validate_report().map_err(RealizeError::Internal)?;
        verify::check_certificate(&graph, &certificate).map_err(RealizeError::Internal)?;
    }
    Ok(Built { graph, certificate })
}

/// Counting comparison of the graph's degrees with `d`. O(n + max degree).
fn same_degrees(g: &LabeledMultigraph, d: &DegreeSequence) -> bool {
    if g.vertex_count() != d.len() {
        return false;
    }
    let top = d.max().unwrap_or(0) as usize;
    let mut count = vec![0i64; top + 1];
    for (value, c) in d.buckets() {
        count[value as usize] += c as i64;
    }
    for v in 0..g.vertex_count() as u32 {
        let deg = g.degree(v) as usize;
        if deg > top {
            return false;
        }
        count[deg] -= 1;
    }
    count.iter().all(|&c| c == 0)
}

fn graphical(d: &DegreeSequence) -> bool {
    d.is_graphical()
}

/// Two edge-disjoint spanning trees. Needs a graphical `d` with sum at least
/// `4(n-1)`, minimum at least 2 and `n >= 4`.
pub fn build_two_edst(
    d: &DegreeSequence,
) -> Result<(LabeledMultigraph, Certificate), RealizeError> {
    let n = d.len() as u64;
    precondition(graphical(d), "sequence is not graphical")?;
    precondition(n >= 4 && d.sum() >= 4 * (n - 1), "sum below 4(n-1)")?;
    precondition(d.min().unwrap_or(0) >= 2, "minimum degree below 2")?;
    let b = run(d, Mode::Simple, BuildOptions::default(), Planner::two_edst)?;
    Ok((b.graph, b.certificate))
}

/// Multigraph version of [`build_two_edst`]; needs `n >= 2`.
pub fn build_two_edst_multi(
    d: &DegreeSequence,
) -> Result<(LabeledMultigraph, Certificate), RealizeError> {
    let n = d.len() as u64;
    precondition(d.is_multigraphical(), "sequence is not multigraphical")?;
    precondition(n >= 2 && d.sum() >= 4 * (n - 1), "sum below 4(n-1)")?;
    precondition(d.min().unwrap_or(0) >= 2, "minimum degree below 2")?;
    let b = run(
        d,
        Mode::Multi,
        BuildOptions::default(),
        Planner::two_edst_multi,
    )?;
    Ok((b.graph, b.certificate))
}

fn one_shared_preconditions(d: &DegreeSequence) -> Result<(), RealizeError> {
    let n = d.len() as u64;
    if n <= 2 {
        return Ok(());
    }
    precondition(d.sum() + 2 >= 4 * (n - 1), "sum below 4(n-1)-2")?;
    precondition(
        d.get_from_end(1).unwrap_or(0) >= 2 && d.min().unwrap_or(0) >= 1,
        "more than one vertex of degree below 2",
    )
}

/// Two spanning trees sharing at most one edge.
pub fn build_one_shared(
    d: &DegreeSequence,
) -> Result<(LabeledMultigraph, Certificate), RealizeError> {
    precondition(graphical(d), "sequence is not graphical")?;
    one_shared_preconditions(d)?;
    let b = run(
        d,
        Mode::Simple,
        BuildOptions::default(),
        Planner::one_shared,
    )?;
    Ok((b.graph, b.certificate))
}

pub fn build_one_shared_multi(
    d: &DegreeSequence,
) -> Result<(LabeledMultigraph, Certificate), RealizeError> {
    precondition(d.is_multigraphical(), "sequence is not multigraphical")?;
    precondition(
        d.len() != 2 || d.min().unwrap_or(0) >= 1,
        "two isolated vertices",
    )?;
    one_shared_preconditions(d)?;
    let b = run(
        d,
        Mode::Multi,
        BuildOptions::default(),
        Planner::one_shared_multi,
    )?;
    Ok((b.graph, b.certificate))
}

/// Two spanning trees sharing two edges of an induced 4-cycle.
pub fn build_c4_pivotable(
    d: &DegreeSequence,
) -> Result<(LabeledMultigraph, Certificate), RealizeError> {
    let n = d.len() as u64;
    precondition(graphical(d), "sequence is not graphical")?;
    precondition(n >= 4 && d.sum() + 4 == 4 * (n - 1), "sum is not 4(n-1)-4")?;
    precondition(d.min().unwrap_or(0) >= 2, "minimum degree below 2")?;
    precondition(
        (d.max().unwrap_or(0) as u64) < n - 1,
        "a vertex is adjacent to all others",
    )?;
    let b = run(d, Mode::Simple, BuildOptions::default(), Planner::c4)?;
    Ok((b.graph, b.certificate))
}

pub fn build_c4_pivotable_multi(
    d: &DegreeSequence,
) -> Result<(LabeledMultigraph, Certificate), RealizeError> {
    let n = d.len() as u64;
    precondition(d.is_multigraphical(), "sequence is not multigraphical")?;
    precondition(n >= 4 && d.sum() + 4 == 4 * (n - 1), "sum is not 4(n-1)-4")?;
    precondition(d.min().unwrap_or(0) >= 2, "minimum degree below 2")?;
    let b = run(d, Mode::Multi, BuildOptions::default(), Planner::c4_multi)?;
    Ok((b.graph, b.certificate))
}

pub fn realize_tc(d: &DegreeSequence, mode: Mode) -> Result<TcOutcome, RealizeError> {
    realize_tc_with(d, mode, BuildOptions::default())
}

/// Decides, and if realizable builds the graph, certificate and labeling.
pub fn realize_tc_with(
    d: &DegreeSequence,
    mode: Mode,
    opts: BuildOptions,
) -> Result<TcOutcome, RealizeError> {
    let decision = check_tc_realizable(d, mode);
    if !decision.realizable {
        return Ok(TcOutcome::NotRealizable(decision));
    }
    let descend: fn(&mut Planner) -> Result<(), RealizeError> = match (decision.reason, mode) {
        (Reason::OkC4Pivotable, Mode::Simple) => Planner::c4,
        (Reason::OkC4Pivotable, Mode::Multi) => Planner::c4_multi,
        (_, Mode::Simple) => Planner::one_shared,
        (_, Mode::Multi) => Planner::one_shared_multi,
    };
    let Built {
        mut graph,
        certificate,
    } = run(d, mode, opts, descend)?;
    let labeling =
        pivot_label(&graph, &certificate).map_err(|e| RealizeError::Internal(e.to_string()))?;
    labeling.apply_to(&mut graph);
    if opts.debug_checks {
        for check in [
            verify::check_proper(&graph, &labeling),
            verify::check_simple(&graph, &labeling),
            verify::check_tc(&graph, &labeling),
        ] {
            check.map_err(|v| RealizeError::Internal(v.to_string()))?;
        }
    }
    Ok(TcOutcome::Realized(Realization {
        graph,
        certificate,
        labeling,
        decision,
    }))
}

/// Builds a connected realization labeled 1 on a spanning tree and with
/// distinct larger labels elsewhere.
pub fn realize_nonstrict(d: &DegreeSequence, mode: Mode) -> Result<NonStrictOutcome, RealizeError> {
    let decision = check_nonstrict(d, mode);
    if !decision.realizable {
        return Ok(NonStrictOutcome::NotRealizable(decision));
    }
    let mut planner = Planner::new(d, false);
    match mode {
        Mode::Simple => planner.any_simple()?,
        Mode::Multi => planner.any_multi()?,
    }
    let mut graph =
        replay::replay(&planner.finish(), mode, d.len(), d.edge_count() as usize)?.graph;
    nonstrict::connect(&mut graph)?;
    graph.compact();
    if !same_degrees(&graph, d) {
        return Err(RealizeError::Internal(
            "degree sequence of the output differs".into(),
        ));
    }
    let tree = nonstrict::bfs_tree(&graph)
        .ok_or_else(|| RealizeError::Internal("graph is still disconnected".into()))?;
    let labeling =
        label_plain_tree(&graph, &tree).map_err(|e| RealizeError::Internal(e.to_string()))?;
    labeling.apply_to(&mut graph);
    Ok(NonStrictOutcome::Realized(NonStrictRealization {
        graph,
        tree,
        labeling,
        decision,
    }))
}
