//! Time labels for constructed realizations.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphstore::{Certificate, LabeledMultigraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelingError {
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("tree does not span the graph")]
    NotSpanning,
}

/// One label per edge id; `None` only for tombstoned ids.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TemporalLabeling {
    labels: Vec<Option<u32>>,
    max_label: u32,
}

impl TemporalLabeling {
    pub fn from_labels(labels: Vec<Option<u32>>) -> Self {
        let max_label = labels.iter().flatten().copied().max().unwrap_or(0);
        TemporalLabeling { labels, max_label }
    }

    /// Reads the labels stored on the graph's edges.
    pub fn from_graph(g: &LabeledMultigraph) -> Self {
        let mut labels = vec![None; g.edge_id_bound()];
        for (id, e) in g.edges() {
            labels[id as usize] = e.label;
        }
        Self::from_labels(labels)
    }

    /// Writes the labels onto the graph's edges.
    pub fn apply_to(&self, g: &mut LabeledMultigraph) {
        g.set_labels(&self.labels).expect("labels are positive");
    }

    pub fn get(&self, e: u32) -> Option<u32> {
        self.labels.get(e as usize).copied().flatten()
    }

    pub fn max_label(&self) -> u32 {
        self.max_label
    }

    pub fn labels(&self) -> &[Option<u32>] {
        &self.labels
    }

    /// Applies `f` to every label, e.g. an order-preserving remap.
    pub fn map(&self, mut f: impl FnMut(u32) -> u32) -> Self {
        Self::from_labels(self.labels.iter().map(|l| l.map(&mut f)).collect())
    }
}

/// Pivot labeling: every vertex travels up the first tree to the central
/// structure, crosses it, and the second tree carries it back down.
///
/// The roots are vertex 0 when the trees are edge-disjoint, the two ends of
/// the shared edge, or the four central-cycle vertices. Edges in neither tree
/// get fresh labels above everything else.
pub fn pivot_label(
    g: &LabeledMultigraph,
    cert: &Certificate,
) -> Result<TemporalLabeling, LabelingError> {
    let n = g.vertex_count();
    let bound = g.edge_id_bound();
    let bad = |msg: &str| LabelingError::InvalidCertificate(msg.to_string());

    // Per edge id: IN_T1 | IN_T2 | CENTRAL.
    let mut flags = vec![0u8; bound];
    for (set, bit) in [(&cert.tree1, IN_T1), (&cert.tree2, IN_T2)] {
        for &e in set {
            if g.edge(e).is_none() {
                return Err(bad("tree refers to a missing edge"));
            }
            flags[e as usize] |= bit;
        }
    }

    let mut labels: Vec<Option<u32>> = vec![None; bound];
    let roots: Vec<u32>;
    // Central labels are assigned after the up phase; remember the edges.
    let mut central_pairs: Vec<Vec<u32>> = Vec::new();

    if let Some(cycle) = cert.central_cycle {
        let mut cyc_edges = [0u32; 4];
        for i in 0..4 {
            let (a, b) = (cycle[i], cycle[(i + 1) % 4]);
            if a as usize >= n || b as usize >= n {
                return Err(bad("central cycle vertex out of range"));
            }
            cyc_edges[i] = g
                .incident(a)
                .iter()
                .copied()
                .find(|&e| g.edge(e).is_some_and(|ed| ed.other(a) == b))
                .ok_or_else(|| bad("central cycle edge missing"))?;
            flags[cyc_edges[i] as usize] |= CENTRAL;
        }
        let (p, q) = (
            vec![cyc_edges[0], cyc_edges[2]],
            vec![cyc_edges[1], cyc_edges[3]],
        );
        let first_p = p.iter().min() < q.iter().min();
        central_pairs = if first_p { vec![p, q] } else { vec![q, p] };
        roots = cycle.to_vec();
    } else {
        match cert.shared.as_slice() {
            [] => roots = if n > 0 { vec![0] } else { vec![] },
            [s] => {
                let e = g.edge(*s).ok_or_else(|| bad("shared edge missing"))?;
                flags[*s as usize] |= CENTRAL;
                central_pairs = vec![vec![*s]];
                roots = vec![e.u, e.v];
            }
            _ => return Err(bad("more than one shared edge without a central cycle")),
        }
    }

    for &f in &flags {
        if f == IN_T1 | IN_T2 {
            return Err(bad("edge in both trees outside the central structure"));
        }
    }

    // Up phase: BFS discovery order over the first tree, labeled in reverse so
    // labels grow towards the roots.
    let up = tree_bfs(g, &roots, &flags, IN_T1)
        .ok_or_else(|| bad("first tree is not a spanning tree"))?;
    let t_r = up.len() as u32;
    for (k, &e) in up.iter().enumerate() {
        labels[e as usize] = Some(t_r - k as u32);
    }

    let mut next = t_r + 1;
    for pair in &central_pairs {
        for &e in pair {
            labels[e as usize] = Some(next);
        }
        next += 1;
    }

    // Down phase: BFS discovery order over the second tree.
    let down = tree_bfs(g, &roots, &flags, IN_T2)
        .ok_or_else(|| bad("second tree is not a spanning tree"))?;
    for &e in &down {
        labels[e as usize] = Some(next);
        next += 1;
    }

    for (id, _) in g.edges() {
        if labels[id as usize].is_none() {
            labels[id as usize] = Some(next);
            next += 1;
        }
    }
    Ok(TemporalLabeling::from_labels(labels))
}

const IN_T1: u8 = 1;
const IN_T2: u8 = 2;
const CENTRAL: u8 = 4;

/// BFS from all roots at once over non-central edges carrying `bit`.
/// Returns the tree edges in discovery order, or `None` if those edges do not
/// form a forest with one root per component covering every vertex.
fn tree_bfs(g: &LabeledMultigraph, roots: &[u32], flags: &[u8], bit: u8) -> Option<Vec<u32>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut parent_edge = vec![u32::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    for &r in roots {
        if seen[r as usize] {
            return None;
        }
        seen[r as usize] = true;
        queue.push_back(r);
    }
    let mut order = Vec::with_capacity(n.saturating_sub(roots.len()));
    while let Some(v) = queue.pop_front() {
        for &e in g.incident(v) {
            if flags[e as usize] & (bit | CENTRAL) != bit || e == parent_edge[v as usize] {
                continue;
            }
            let w = g.edge(e)?.other(v);
            if seen[w as usize] {
                // A cycle, or a path joining two roots.
                return None;
            }
            seen[w as usize] = true;
            parent_edge[w as usize] = e;
            order.push(e);
            queue.push_back(w);
        }
    }
    seen.iter().all(|&s| s).then_some(order)
}

/// Non-strict helper: tree edges get label 1, every other edge a distinct
/// label from 2 upwards.
pub fn label_plain_tree(
    g: &LabeledMultigraph,
    tree: &[u32],
) -> Result<TemporalLabeling, LabelingError> {
    let n = g.vertex_count();
    if tree.len() + 1 != n.max(1) {
        return Err(LabelingError::NotSpanning);
    }
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    let mut labels = vec![None; g.edge_id_bound()];
    for &e in tree {
        let edge = g.edge(e).ok_or(LabelingError::NotSpanning)?;
        let (a, b) = (find(&mut parent, edge.u), find(&mut parent, edge.v));
        if a == b {
            return Err(LabelingError::NotSpanning);
        }
        parent[a as usize] = b;
        labels[e as usize] = Some(1);
    }
    let mut next = 2;
    for (id, _) in g.edges() {
        if labels[id as usize].is_none() {
            labels[id as usize] = Some(next);
            next += 1;
        }
    }
    Ok(TemporalLabeling::from_labels(labels))
}
