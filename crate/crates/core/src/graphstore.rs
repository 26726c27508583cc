//! Multigraph storage with a degree-indexed bucket index.
//!
//! Vertices are dense `u32` ids assigned in creation order. Every edge, parallel
//! or not, has its own id; removed edges leave a tombstone until [`LabeledMultigraph::compact`].

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

const NIL: u32 = u32::MAX;

/// Incident edge ids; most vertices in the constructions have degree at most 4.
type Incidence = SmallVec<[u32; 4]>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Simple,
    Multi,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Simple => "simple",
            Mode::Multi => "multi",
        })
    }
}

/// Membership of an edge in the two certificate trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TreeFlags {
    #[default]
    None,
    T1,
    T2,
    Both,
}

impl TreeFlags {
    pub fn in_t1(self) -> bool {
        matches!(self, TreeFlags::T1 | TreeFlags::Both)
    }

    pub fn in_t2(self) -> bool {
        matches!(self, TreeFlags::T2 | TreeFlags::Both)
    }

    pub fn from_membership(t1: bool, t2: bool) -> Self {
        match (t1, t2) {
            (false, false) => TreeFlags::None,
            (true, false) => TreeFlags::T1,
            (false, true) => TreeFlags::T2,
            (true, true) => TreeFlags::Both,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} does not exist")]
    UnknownVertex(u32),
    #[error("edge {0} does not exist")]
    UnknownEdge(u32),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("parallel edge {0}-{1} in simple mode")]
    ParallelEdge(u32, u32),
    #[error("no vertex of degree {0}")]
    NoVertexOfDegree(u32),
    #[error("label 0 on edge {0}; labels are positive")]
    ZeroLabel(u32),
    #[error("duplicate edge id {0}")]
    DuplicateEdgeId(u32),
    #[error("malformed graph file: {0}")]
    Format(String),
}

/// A live edge record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
    pub tree: TreeFlags,
    pub label: Option<u32>,
}

impl Edge {
    /// The endpoint opposite `x`.
    pub fn other(&self, x: u32) -> u32 {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Clone)]
struct Slot {
    edge: Edge,
    alive: bool,
    // Positions of this edge inside adj[u] and adj[v].
    pos_u: u32,
    pos_v: u32,
}

/// Counters for the primitives the constructions rely on.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpStats {
    pub vertices_added: u64,
    pub edges_added: u64,
    pub edges_removed: u64,
    pub lookups: u64,
    pub bucket_visits: u64,
}

impl OpStats {
    pub fn total(&self) -> u64 {
        self.vertices_added
            + self.edges_added
            + self.edges_removed
            + self.lookups
            + self.bucket_visits
    }
}

/// Vertex/edge store with tree flags, optional labels and degree buckets.
#[derive(Debug, Clone)]
pub struct LabeledMultigraph {
    mode: Mode,
    slots: Vec<Slot>,
    adj: Vec<Incidence>,
    live_edges: usize,
    // Degree buckets: one FIFO doubly-linked list of vertices per degree value.
    bucket_head: Vec<u32>,
    bucket_tail: Vec<u32>,
    vprev: Vec<u32>,
    vnext: Vec<u32>,
    stats: OpStats,
}

impl LabeledMultigraph {
    pub fn new(mode: Mode) -> Self {
        LabeledMultigraph {
            mode,
            slots: Vec::new(),
            adj: Vec::new(),
            live_edges: 0,
            bucket_head: Vec::new(),
            bucket_tail: Vec::new(),
            vprev: Vec::new(),
            vnext: Vec::new(),
            stats: OpStats::default(),
        }
    }

    pub fn with_vertices(mode: Mode, n: usize) -> Self {
        let mut g = Self::new(mode);
        for _ in 0..n {
            g.add_vertex();
        }
        g
    }

    /// Reserves room for `n` vertices and `m` edges in total.
    pub fn reserve(&mut self, n: usize, m: usize) {
        let more_v = n.saturating_sub(self.adj.len());
        self.adj.reserve(more_v);
        self.vprev.reserve(more_v);
        self.vnext.reserve(more_v);
        self.slots.reserve(m.saturating_sub(self.slots.len()));
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.live_edges
    }

    /// One past the largest edge id ever issued (tombstones included).
    pub fn edge_id_bound(&self) -> usize {
        self.slots.len()
    }

    pub fn stats(&self) -> OpStats {
        self.stats
    }

    pub fn degree(&self, v: u32) -> u32 {
        self.adj[v as usize].len() as u32
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.adj.iter().map(|a| a.len() as u32).collect()
    }

    pub fn incident(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn edge(&self, e: u32) -> Option<&Edge> {
        self.slots
            .get(e as usize)
            .filter(|s| s.alive)
            .map(|s| &s.edge)
    }

    /// Live edges with their ids, in id order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, &Edge)> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, s)| s.alive)
            .map(|(i, s)| (i as u32, &s.edge))
    }

    pub fn set_tree(&mut self, e: u32, tree: TreeFlags) -> Result<(), GraphError> {
        self.slot_mut(e)?.edge.tree = tree;
        Ok(())
    }

    pub fn set_label(&mut self, e: u32, label: Option<u32>) -> Result<(), GraphError> {
        if label == Some(0) {
            return Err(GraphError::ZeroLabel(e));
        }
        self.slot_mut(e)?.edge.label = label;
        Ok(())
    }

    /// Sets the label of every live edge `e` to `labels[e]` (`None` past the end).
    pub fn set_labels(&mut self, labels: &[Option<u32>]) -> Result<(), GraphError> {
        for (id, slot) in self.slots.iter_mut().enumerate() {
            if !slot.alive {
                continue;
            }
            let label = labels.get(id).copied().flatten();
            if label == Some(0) {
                return Err(GraphError::ZeroLabel(id as u32));
            }
            slot.edge.label = label;
        }
        Ok(())
    }

    pub fn add_vertex(&mut self) -> u32 {
        let v = self.adj.len() as u32;
        self.adj.push(Incidence::new());
        self.vprev.push(NIL);
        self.vnext.push(NIL);
        self.bucket_push(v, 0);
        self.stats.vertices_added += 1;
        v
    }

    /// Adds an edge; rejects self-loops, and parallel edges in simple mode.
    pub fn add_edge(&mut self, u: u32, v: u32, tree: TreeFlags) -> Result<u32, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.mode == Mode::Simple && self.has_edge(u, v) {
            return Err(GraphError::ParallelEdge(u, v));
        }
        Ok(self.add_edge_unchecked(u, v, tree))
    }

    /// Adds an edge without the parallel-edge scan. Callers guarantee validity.
    pub(crate) fn add_edge_unchecked(&mut self, u: u32, v: u32, tree: TreeFlags) -> u32 {
        debug_assert!(u != v);
        let id = self.slots.len() as u32;
        let pos_u = self.adj[u as usize].len() as u32;
        let pos_v = self.adj[v as usize].len() as u32;
        self.bucket_remove(u);
        self.bucket_remove(v);
        self.adj[u as usize].push(id);
        self.adj[v as usize].push(id);
        self.bucket_push(u, pos_u + 1);
        self.bucket_push(v, pos_v + 1);
        self.slots.push(Slot {
            edge: Edge {
                u,
                v,
                tree,
                label: None,
            },
            alive: true,
            pos_u,
            pos_v,
        });
        self.live_edges += 1;
        self.stats.edges_added += 1;
        id
    }

    /// Removes an edge in O(1); its id becomes a tombstone.
    pub fn remove_edge(&mut self, e: u32) -> Result<Edge, GraphError> {
        let slot = self.slot(e)?.clone();
        let Edge { u, v, .. } = slot.edge;
        self.bucket_remove(u);
        self.bucket_remove(v);
        self.detach(u, slot.pos_u);
        self.detach(v, slot.pos_v);
        self.bucket_push(u, self.adj[u as usize].len() as u32);
        self.bucket_push(v, self.adj[v as usize].len() as u32);
        self.slots[e as usize].alive = false;
        self.live_edges -= 1;
        self.stats.edges_removed += 1;
        Ok(slot.edge)
    }

    /// Scans the smaller adjacency list of the two endpoints.
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        let (a, b) = if self.adj[u as usize].len() <= self.adj[v as usize].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a as usize]
            .iter()
            .any(|&e| self.slots[e as usize].edge.other(a) == b)
    }

    /// Number of parallel copies of the edge `uv`.
    pub fn multiplicity(&self, u: u32, v: u32) -> usize {
        self.adj[u as usize]
            .iter()
            .filter(|&&e| self.slots[e as usize].edge.other(u) == v)
            .count()
    }

    /// Representative of degree bucket `x`: the vertex that has held degree `x`
    /// the longest. O(1).
    pub fn find_vertex_with_degree(&mut self, x: u32) -> Result<u32, GraphError> {
        self.find_vertex_with_degree_excluding(x, NIL)
    }

    /// As [`Self::find_vertex_with_degree`], skipping `exclude`.
    pub fn find_vertex_with_degree_excluding(
        &mut self,
        x: u32,
        exclude: u32,
    ) -> Result<u32, GraphError> {
        self.stats.lookups += 1;
        let mut v = self.bucket_head.get(x as usize).copied().unwrap_or(NIL);
        self.stats.bucket_visits += 1;
        if v != NIL && v == exclude {
            v = self.vnext[v as usize];
            self.stats.bucket_visits += 1;
        }
        if v == NIL {
            Err(GraphError::NoVertexOfDegree(x))
        } else {
            Ok(v)
        }
    }

    /// Adds a vertex joined to one vertex of each requested current degree.
    ///
    /// Targets are looked up against the degrees as they change during the
    /// call, largest requested degree first. Without `allow_repeat_target`
    /// (and always in simple mode) the targets must be distinct vertices. On
    /// error the graph is left unchanged.
    pub fn attach_vertex(
        &mut self,
        target_degrees: &[u32],
        allow_repeat_target: bool,
    ) -> Result<(u32, Vec<u32>), GraphError> {
        let flags = vec![TreeFlags::None; target_degrees.len()];
        self.attach_vertex_flagged(target_degrees, &flags, allow_repeat_target)
    }

    /// As [`Self::attach_vertex`], with a tree flag per target.
    pub fn attach_vertex_flagged(
        &mut self,
        target_degrees: &[u32],
        flags: &[TreeFlags],
        allow_repeat_target: bool,
    ) -> Result<(u32, Vec<u32>), GraphError> {
        assert_eq!(target_degrees.len(), flags.len(), "one flag per target");
        let targets: Vec<(u32, TreeFlags)> = target_degrees
            .iter()
            .copied()
            .zip(flags.iter().copied())
            .collect();
        let mut edges = vec![NIL; targets.len()];
        let w = self.attach_targets(&targets, allow_repeat_target, |i, e| edges[i] = e)?;
        Ok((w, edges))
    }

    /// Attach without intermediate allocation when the targets are already
    /// in non-increasing degree order. `on_edge(i, e)` reports the edge made
    /// for target `i`.
    pub(crate) fn attach_targets(
        &mut self,
        targets: &[(u32, TreeFlags)],
        allow_repeat_target: bool,
        on_edge: impl FnMut(usize, u32),
    ) -> Result<u32, GraphError> {
        let repeat = allow_repeat_target && self.mode == Mode::Multi;
        if !repeat && targets.windows(2).any(|p| p[0].0 < p[1].0) {
            let mut order: Vec<usize> = (0..targets.len()).collect();
            order.sort_by(|&a, &b| targets[b].0.cmp(&targets[a].0));
            self.attach_in_order(targets, Some(&order), repeat, on_edge)
        } else {
            self.attach_in_order(targets, None, repeat, on_edge)
        }
    }

    fn attach_in_order(
        &mut self,
        targets: &[(u32, TreeFlags)],
        order: Option<&[usize]>,
        repeat: bool,
        mut on_edge: impl FnMut(usize, u32),
    ) -> Result<u32, GraphError> {
        let w = self.add_vertex();
        let first_edge = self.slots.len();
        let mut last_target = NIL;
        for step in 0..targets.len() {
            let i = order.map_or(step, |o| o[step]);
            let (degree, flag) = targets[i];
            let found = self
                .find_vertex_with_degree_excluding(degree, w)
                .and_then(|t| {
                    // Descending lookups cannot revisit a target; a repeat can
                    // only come from equal requested degrees in a bad state.
                    if !repeat && step > 0 && t == last_target {
                        Err(GraphError::ParallelEdge(w, t))
                    } else {
                        Ok(t)
                    }
                });
            match found {
                Ok(t) => {
                    on_edge(i, self.add_edge_unchecked(w, t, flag));
                    last_target = t;
                }
                Err(err) => {
                    self.rollback_attach(w, first_edge);
                    return Err(err);
                }
            }
        }
        Ok(w)
    }

    fn rollback_attach(&mut self, w: u32, first_edge: usize) {
        for e in (first_edge..self.slots.len()).rev() {
            let _ = self.remove_edge(e as u32);
        }
        // The new edges were the last ones issued, so their ids can be reused.
        self.slots.truncate(first_edge);
        self.pop_isolated_vertex(w);
    }

    /// Removes the most recently added vertex, which must be isolated.
    fn pop_isolated_vertex(&mut self, w: u32) {
        debug_assert_eq!(w as usize + 1, self.adj.len());
        debug_assert!(self.adj[w as usize].is_empty());
        self.bucket_remove(w);
        self.adj.pop();
        self.vprev.pop();
        self.vnext.pop();
    }

    /// Replaces edge `e = uv` by a new vertex `w` with edges `uw` and `wv`.
    /// Both new edges start unflagged.
    pub fn subdivide_edge(&mut self, e: u32) -> Result<(u32, u32, u32), GraphError> {
        let old = self.remove_edge(e)?;
        let w = self.add_vertex();
        let a = self.add_edge_unchecked(old.u, w, TreeFlags::None);
        let b = self.add_edge_unchecked(w, old.v, TreeFlags::None);
        Ok((w, a, b))
    }

    /// Moves the `from` end of edge `e` to `to`, keeping the id, flags and
    /// label. No parallel-edge check.
    pub(crate) fn reroute_edge(&mut self, e: u32, from: u32, to: u32) -> Result<(), GraphError> {
        self.check_vertex(to)?;
        let slot = self.slot(e)?.clone();
        let at_u = slot.edge.u == from;
        if !at_u && slot.edge.v != from {
            return Err(GraphError::UnknownVertex(from));
        }
        if slot.edge.other(from) == to {
            return Err(GraphError::SelfLoop(to));
        }
        let pos = if at_u { slot.pos_u } else { slot.pos_v };
        self.bucket_remove(from);
        self.detach(from, pos);
        self.bucket_push(from, self.adj[from as usize].len() as u32);
        self.bucket_remove(to);
        let new_pos = self.adj[to as usize].len() as u32;
        self.adj[to as usize].push(e);
        self.bucket_push(to, new_pos + 1);
        let s = &mut self.slots[e as usize];
        if at_u {
            s.edge.u = to;
            s.pos_u = new_pos;
        } else {
            s.edge.v = to;
            s.pos_v = new_pos;
        }
        Ok(())
    }

    /// Subdivision that keeps id `e` for the half `uw`. Returns `w` and the id
    /// of the new half `wv`, which starts unflagged.
    pub(crate) fn split_edge(&mut self, e: u32) -> Result<(u32, u32), GraphError> {
        let v = self.slot(e)?.edge.v;
        let w = self.add_vertex();
        self.reroute_edge(e, v, w)?;
        let f = self.add_edge_unchecked(w, v, TreeFlags::None);
        Ok((w, f))
    }

    /// Renumbers live edges densely, preserving their relative order.
    /// Returns the old-id to new-id map (`None` for tombstones).
    pub fn compact(&mut self) -> Vec<Option<u32>> {
        let mut map = vec![None; self.slots.len()];
        let mut next = 0u32;
        for (old, slot) in self.slots.iter().enumerate() {
            if slot.alive {
                map[old] = Some(next);
                next += 1;
            }
        }
        if next as usize == self.slots.len() {
            return map;
        }
        self.slots.retain(|s| s.alive);
        for list in &mut self.adj {
            for e in list.iter_mut() {
                *e = map[*e as usize].expect("adjacency refers to a live edge");
            }
        }
        map
    }

    /// True iff all structural invariants hold.
    pub fn validate(&self) -> bool {
        self.validate_report().is_ok()
    }

    pub fn validate_report(&self) -> Result<(), String> {
        let n = self.adj.len();
        let mut live = 0usize;
        for (id, slot) in self.slots.iter().enumerate() {
            if !slot.alive {
                continue;
            }
            live += 1;
            let Edge { u, v, label, .. } = slot.edge;
            if u as usize >= n || v as usize >= n {
                return Err(format!("edge {id} has an endpoint out of range"));
            }
            if u == v {
                return Err(format!("edge {id} is a self-loop"));
            }
            if label == Some(0) {
                return Err(format!("edge {id} has label 0"));
            }
            let at_u = self.adj[u as usize].get(slot.pos_u as usize);
            let at_v = self.adj[v as usize].get(slot.pos_v as usize);
            if at_u != Some(&(id as u32)) || at_v != Some(&(id as u32)) {
                return Err(format!("edge {id} has stale adjacency positions"));
            }
        }
        if live != self.live_edges {
            return Err("live edge count mismatch".into());
        }
        let incidences: usize = self.adj.iter().map(|a| a.len()).sum();
        if incidences != 2 * live {
            return Err("adjacency lists hold extra entries".into());
        }
        if self.mode == Mode::Simple {
            let mut seen = std::collections::HashSet::new();
            for (_, e) in self.edges() {
                if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                    return Err(format!("parallel edge {}-{} in simple mode", e.u, e.v));
                }
            }
        }
        // Every vertex sits in exactly the bucket of its degree.
        let mut placed = vec![false; n];
        for (d, &head) in self.bucket_head.iter().enumerate() {
            let mut prev = NIL;
            let mut v = head;
            while v != NIL {
                if v as usize >= n || placed[v as usize] {
                    return Err(format!("bucket {d} is corrupt"));
                }
                if self.adj[v as usize].len() != d {
                    return Err(format!(
                        "vertex {v} is in bucket {d} with degree {}",
                        self.adj[v as usize].len()
                    ));
                }
                if self.vprev[v as usize] != prev {
                    return Err(format!("bucket {d} has a broken back link"));
                }
                placed[v as usize] = true;
                prev = v;
                v = self.vnext[v as usize];
            }
            if self.bucket_tail[d] != prev {
                return Err(format!("bucket {d} has a stale tail"));
            }
        }
        if let Some(v) = placed.iter().position(|p| !p) {
            return Err(format!("vertex {v} is missing from the degree buckets"));
        }
        Ok(())
    }

    /// Test hook: moves a vertex into the wrong bucket.
    #[doc(hidden)]
    pub fn corrupt_bucket_for_tests(&mut self, v: u32) {
        let d = self.degree(v);
        self.bucket_remove(v);
        self.bucket_push(v, d + 1);
    }

    /// Test hook: flips the mode flag without checking the edges.
    #[doc(hidden)]
    pub fn force_mode_for_tests(&mut self, mode: Mode) {
        self.mode = mode;
    }

    // ---- internals ----

    fn check_vertex(&self, v: u32) -> Result<(), GraphError> {
        if (v as usize) < self.adj.len() {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    fn slot(&self, e: u32) -> Result<&Slot, GraphError> {
        self.slots
            .get(e as usize)
            .filter(|s| s.alive)
            .ok_or(GraphError::UnknownEdge(e))
    }

    fn slot_mut(&mut self, e: u32) -> Result<&mut Slot, GraphError> {
        self.slots
            .get_mut(e as usize)
            .filter(|s| s.alive)
            .ok_or(GraphError::UnknownEdge(e))
    }

    /// swap_remove the entry at `pos` of adj[x] and fix the moved edge's position.
    fn detach(&mut self, x: u32, pos: u32) {
        let list = &mut self.adj[x as usize];
        list.swap_remove(pos as usize);
        if let Some(&moved) = list.get(pos as usize) {
            let slot = &mut self.slots[moved as usize];
            // No self-loops, so exactly one endpoint is `x`.
            if slot.edge.u == x {
                slot.pos_u = pos;
            } else {
                slot.pos_v = pos;
            }
        }
    }

    fn bucket_push(&mut self, v: u32, d: u32) {
        let d = d as usize;
        if d >= self.bucket_head.len() {
            self.bucket_head.resize(d + 1, NIL);
            self.bucket_tail.resize(d + 1, NIL);
        }
        let tail = self.bucket_tail[d];
        self.vprev[v as usize] = tail;
        self.vnext[v as usize] = NIL;
        if tail == NIL {
            self.bucket_head[d] = v;
        } else {
            self.vnext[tail as usize] = v;
        }
        self.bucket_tail[d] = v;
        self.stats.bucket_visits += 1;
    }

    fn bucket_remove(&mut self, v: u32) {
        let d = self.adj[v as usize].len();
        let (p, nx) = (self.vprev[v as usize], self.vnext[v as usize]);
        if p == NIL {
            self.bucket_head[d] = nx;
        } else {
            self.vnext[p as usize] = nx;
        }
        if nx == NIL {
            self.bucket_tail[d] = p;
        } else {
            self.vprev[nx as usize] = p;
        }
        self.stats.bucket_visits += 1;
    }

    // ---- export / import ----

    pub fn to_json_value(&self, central_cycle: Option<[u32; 4]>) -> GraphFile {
        GraphFile {
            mode: self.mode,
            n: self.vertex_count(),
            edges: self
                .edges()
                .map(|(id, e)| EdgeRecord {
                    id,
                    u: e.u,
                    v: e.v,
                    tree: e.tree,
                    label: e.label,
                })
                .collect(),
            central_cycle,
        }
    }

    pub fn to_json(&self, central_cycle: Option<[u32; 4]>) -> String {
        serde_json::to_string_pretty(&self.to_json_value(central_cycle))
            .expect("graph serialization cannot fail")
    }

    /// Parses the JSON export. Edge ids must be unique; they are renumbered
    /// densely in increasing id order.
    pub fn from_json(text: &str) -> Result<(Self, Option<[u32; 4]>), GraphError> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| GraphError::Format(e.to_string()))?;
        Self::from_graph_file(&file)
    }

    pub fn from_graph_file(file: &GraphFile) -> Result<(Self, Option<[u32; 4]>), GraphError> {
        let mut records: Vec<&EdgeRecord> = file.edges.iter().collect();
        records.sort_by_key(|r| r.id);
        if let Some(w) = records.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(GraphError::DuplicateEdgeId(w[0].id));
        }
        let mut g = Self::with_vertices(file.mode, file.n);
        for r in records {
            let e = g.add_edge(r.u, r.v, r.tree)?;
            g.set_label(e, r.label)?;
        }
        if let Some(cycle) = file.central_cycle {
            for v in cycle {
                g.check_vertex(v)?;
            }
        }
        Ok((g, file.central_cycle))
    }

    /// Graphviz rendering: labels on edges, trees as colors, central cycle
    /// vertices double-circled.
    pub fn to_dot(&self, central_cycle: Option<[u32; 4]>) -> String {
        let mut out = String::from("graph G {\n  node [shape=circle];\n");
        for v in 0..self.vertex_count() as u32 {
            let shape = if central_cycle.is_some_and(|c| c.contains(&v)) {
                " [shape=doublecircle]"
            } else {
                ""
            };
            let _ = writeln!(out, "  {v}{shape};");
        }
        for (id, e) in self.edges() {
            let color = match e.tree {
                TreeFlags::None => "gray",
                TreeFlags::T1 => "blue",
                TreeFlags::T2 => "red",
                TreeFlags::Both => "purple",
            };
            let label = e.label.map_or_else(|| "-".to_string(), |l| l.to_string());
            let _ = writeln!(
                out,
                "  {} -- {} [id=\"e{id}\", label=\"{label}\", color={color}];",
                e.u, e.v
            );
        }
        out.push_str("}\n");
        out
    }
}

/// On-disk graph format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub mode: Mode,
    pub n: usize,
    pub edges: Vec<EdgeRecord>,
    #[serde(default)]
    pub central_cycle: Option<[u32; 4]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub id: u32,
    pub u: u32,
    pub v: u32,
    #[serde(default)]
    pub tree: TreeFlags,
    #[serde(default)]
    pub label: Option<u32>,
}

/// Structural witness: two spanning trees, their shared edges, and for
/// C4-pivotable outputs the central cycle.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Certificate {
    pub tree1: Vec<u32>,
    pub tree2: Vec<u32>,
    pub shared: Vec<u32>,
    pub central_cycle: Option<[u32; 4]>,
    /// Two pairs `(tree1 edge, tree2 edge)`, each a matching.
    pub matching_pairs: Option<[(u32, u32); 2]>,
}

impl Certificate {
    /// Reads the tree sets off the edge flags.
    pub fn from_graph(g: &LabeledMultigraph, central_cycle: Option<[u32; 4]>) -> Self {
        let mut cert = Certificate {
            central_cycle,
            ..Default::default()
        };
        for (id, e) in g.edges() {
            if e.tree.in_t1() {
                cert.tree1.push(id);
            }
            if e.tree.in_t2() {
                cert.tree2.push(id);
            }
            if e.tree == TreeFlags::Both {
                cert.shared.push(id);
            }
        }
        cert
    }

    pub fn kind(&self) -> CertificateKind {
        match (self.central_cycle.is_some(), self.shared.len()) {
            (true, _) => CertificateKind::C4Pivotable,
            (false, 0) => CertificateKind::EdgeDisjoint,
            _ => CertificateKind::OneShared,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    EdgeDisjoint,
    OneShared,
    C4Pivotable,
}

impl std::fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CertificateKind::EdgeDisjoint => "edge_disjoint",
            CertificateKind::OneShared => "one_shared",
            CertificateKind::C4Pivotable => "c4_pivotable",
        })
    }
}
