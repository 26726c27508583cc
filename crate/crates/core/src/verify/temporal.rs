//! Labeling properties and temporal reachability.

use std::fmt;

use crate::graphstore::LabeledMultigraph;
use crate::labeling::TemporalLabeling;

/// The first property violation found by a check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Unlabeled {
        edge: u32,
    },
    SharedLabel {
        vertex: u32,
        a: u32,
        b: u32,
        label: u32,
    },
    Unreachable {
        from: u32,
        to: u32,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Unlabeled { edge } => write!(f, "edge {edge} has no label"),
            Violation::SharedLabel {
                vertex,
                a,
                b,
                label,
            } => write!(
                f,
                "edges {a} and {b} meet at vertex {vertex} and both carry label {label}"
            ),
            Violation::Unreachable { from, to } => {
                write!(f, "no temporal path from vertex {from} to vertex {to}")
            }
        }
    }
}

/// Every live edge carries exactly one label.
pub fn check_simple(g: &LabeledMultigraph, lab: &TemporalLabeling) -> Result<(), Violation> {
    for (id, _) in g.edges() {
        if lab.get(id).is_none() {
            return Err(Violation::Unlabeled { edge: id });
        }
    }
    Ok(())
}

pub fn is_simple(g: &LabeledMultigraph, lab: &TemporalLabeling) -> bool {
    check_simple(g, lab).is_ok()
}

/// No two edges sharing an endpoint carry the same label.
pub fn check_proper(g: &LabeledMultigraph, lab: &TemporalLabeling) -> Result<(), Violation> {
    check_simple(g, lab)?;
    let mut at_vertex: Vec<(u32, u32)> = Vec::new();
    for v in 0..g.vertex_count() as u32 {
        at_vertex.clear();
        at_vertex.extend(g.incident(v).iter().map(|&e| (lab.get(e).unwrap_or(0), e)));
        at_vertex.sort_unstable();
        if let Some(w) = at_vertex.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Violation::SharedLabel {
                vertex: v,
                a: w[0].1,
                b: w[1].1,
                label: w[0].0,
            });
        }
    }
    Ok(())
}

pub fn is_proper(g: &LabeledMultigraph, lab: &TemporalLabeling) -> bool {
    check_proper(g, lab).is_ok()
}

/// Live edges as `(label, u, v)`, sorted by label. Unlabeled edges are dropped.
fn temporal_edges(g: &LabeledMultigraph, lab: &TemporalLabeling) -> Vec<(u32, u32, u32)> {
    let mut out: Vec<(u32, u32, u32)> = g
        .edges()
        .filter_map(|(id, e)| lab.get(id).map(|t| (t, e.u, e.v)))
        .collect();
    out.sort_unstable();
    out
}

/// Earliest arrival from `src` under strictly increasing labels. The source
/// arrives at time 0; `None` means unreachable.
pub fn earliest_arrival(
    g: &LabeledMultigraph,
    lab: &TemporalLabeling,
    src: u32,
) -> Vec<Option<u32>> {
    arrival_over(g.vertex_count(), &temporal_edges(g, lab), src)
}

fn arrival_over(n: usize, sorted: &[(u32, u32, u32)], src: u32) -> Vec<Option<u32>> {
    let mut arr: Vec<Option<u32>> = vec![None; n];
    arr[src as usize] = Some(0);
    for &(t, u, v) in sorted {
        // Within one label, an arrival at exactly `t` cannot be extended.
        if arr[u as usize].is_some_and(|a| a < t) && arr[v as usize].is_none_or(|b| b > t) {
            arr[v as usize] = Some(t);
        }
        if arr[v as usize].is_some_and(|a| a < t) && arr[u as usize].is_none_or(|b| b > t) {
            arr[u as usize] = Some(t);
        }
    }
    arr
}

/// Earliest arrival times for every ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityTable {
    pub rows: Vec<Vec<Option<u32>>>,
}

impl ReachabilityTable {
    pub fn compute(g: &LabeledMultigraph, lab: &TemporalLabeling) -> Self {
        let sorted = temporal_edges(g, lab);
        let n = g.vertex_count();
        ReachabilityTable {
            rows: (0..n as u32).map(|s| arrival_over(n, &sorted, s)).collect(),
        }
    }

    pub fn first_unreachable(&self) -> Option<(u32, u32)> {
        self.rows.iter().enumerate().find_map(|(s, row)| {
            row.iter()
                .position(Option::is_none)
                .map(|t| (s as u32, t as u32))
        })
    }
}

/// Temporal connectivity by the arrival-time route, one source at a time.
pub fn is_tc_by_arrival(g: &LabeledMultigraph, lab: &TemporalLabeling) -> bool {
    ReachabilityTable::compute(g, lab)
        .first_unreachable()
        .is_none()
}

/// Fixed-width bitset rows, one per vertex.
struct Rows {
    words: usize,
    bits: Vec<u64>,
}

impl Rows {
    fn identity(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        for v in 0..n {
            bits[v * words + v / 64] |= 1 << (v % 64);
        }
        Rows { words, bits }
    }

    fn row(&self, v: u32) -> &[u64] {
        &self.bits[v as usize * self.words..(v as usize + 1) * self.words]
    }

    fn union_into(&mut self, dst: u32, src: &[u64]) {
        let w = self.words;
        for (d, s) in self.bits[dst as usize * w..(dst as usize + 1) * w]
            .iter_mut()
            .zip(src)
        {
            *d |= s;
        }
    }

    fn first_missing(&self, n: usize) -> Option<(u32, u32)> {
        for v in 0..n {
            for s in 0..n {
                if self.bits[v * self.words + s / 64] & (1 << (s % 64)) == 0 {
                    return Some((s as u32, v as u32));
                }
            }
        }
        None
    }
}

/// Temporal connectivity (strict), checked by sweeping label groups in order
/// and keeping for each vertex the set of sources that have reached it.
pub fn check_tc(g: &LabeledMultigraph, lab: &TemporalLabeling) -> Result<(), Violation> {
    check_simple(g, lab)?;
    let n = g.vertex_count();
    let sorted = temporal_edges(g, lab);
    let mut rows = Rows::identity(n);
    let mut pending: Vec<(u32, Vec<u64>)> = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let t = sorted[i].0;
        let mut j = i;
        // Snapshot the whole group first so equal labels never chain.
        while j < sorted.len() && sorted[j].0 == t {
            let (_, u, v) = sorted[j];
            pending.push((v, rows.row(u).to_vec()));
            pending.push((u, rows.row(v).to_vec()));
            j += 1;
        }
        for (dst, src) in pending.drain(..) {
            rows.union_into(dst, &src);
        }
        i = j;
    }
    match rows.first_missing(n) {
        Some((from, to)) => Err(Violation::Unreachable { from, to }),
        None => Ok(()),
    }
}

pub fn is_tc(g: &LabeledMultigraph, lab: &TemporalLabeling) -> bool {
    check_tc(g, lab).is_ok()
}

/// Temporal connectivity when paths may reuse a label (non-decreasing times).
/// Each label group spreads reach sets across its connected pieces.
pub fn is_tc_nonstrict(g: &LabeledMultigraph, lab: &TemporalLabeling) -> bool {
    if check_simple(g, lab).is_err() {
        return false;
    }
    let n = g.vertex_count();
    let sorted = temporal_edges(g, lab);
    let mut rows = Rows::identity(n);
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    let mut i = 0;
    while i < sorted.len() {
        let t = sorted[i].0;
        let mut j = i;
        let mut touched: Vec<u32> = Vec::new();
        while j < sorted.len() && sorted[j].0 == t {
            let (_, u, v) = sorted[j];
            touched.push(u);
            touched.push(v);
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a as usize] = b;
            }
            j += 1;
        }
        // Union of reach sets per piece, then hand it to every member.
        let mut merged: std::collections::HashMap<u32, Vec<u64>> = std::collections::HashMap::new();
        for &v in &touched {
            let r = find(&mut parent, v);
            let row = rows.row(v).to_vec();
            let acc = merged.entry(r).or_insert_with(|| vec![0; rows.words]);
            for (a, b) in acc.iter_mut().zip(&row) {
                *a |= b;
            }
        }
        for &v in &touched {
            let r = find(&mut parent, v);
            let acc = merged[&r].clone();
            rows.union_into(v, &acc);
        }
        for &v in &touched {
            parent[v as usize] = v;
        }
        i = j;
    }
    rows.first_missing(n).is_none()
}
