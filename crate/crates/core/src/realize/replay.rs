//! The build half: start from the base graph and undo the reductions.

use crate::graphstore::{LabeledMultigraph, Mode, TreeFlags};

use super::fixtures::{self, HEXAGON_CYCLE, HEXAGON_EDGES, HEXAGON_FLAGS};
use super::plan::{Plan, Step};
use super::RealizeError;

pub(crate) struct Replayed {
    pub graph: LabeledMultigraph,
    pub central: Option<[u32; 4]>,
    pub pairs: Option<[(u32, u32); 2]>,
}

struct Replayer {
    g: LabeledMultigraph,
    central: Option<[u32; 4]>,
    pairs: Option<[(u32, u32); 2]>,
    t2_matching: Option<(u32, u32)>,
}

fn internal(msg: impl Into<String>) -> RealizeError {
    RealizeError::Internal(msg.into())
}

fn graph_err(step: &Step, e: crate::graphstore::GraphError) -> RealizeError {
    internal(format!("replaying {step:?}: {e}"))
}

pub(crate) fn replay(
    plan: &Plan,
    mode: Mode,
    n: usize,
    m: usize,
) -> Result<Replayed, RealizeError> {
    let mut g = LabeledMultigraph::new(mode);
    g.reserve(n, m);
    let mut r = Replayer {
        g,
        central: None,
        pairs: None,
        t2_matching: None,
    };
    for step in plan.steps.iter().rev() {
        r.apply(plan, step)?;
    }
    Ok(Replayed {
        graph: r.g,
        central: r.central,
        pairs: r.pairs,
    })
}

impl Replayer {
    fn find(&mut self, step: &Step, degree: u32) -> Result<u32, RealizeError> {
        self.g
            .find_vertex_with_degree(degree)
            .map_err(|e| graph_err(step, e))
    }

    fn edge_ends(&self, e: u32) -> Result<(u32, u32), RealizeError> {
        self.g
            .edge(e)
            .map(|ed| (ed.u, ed.v))
            .ok_or_else(|| internal(format!("tracked edge {e} is gone")))
    }

    fn apply(&mut self, plan: &Plan, step: &Step) -> Result<(), RealizeError> {
        match *step {
            Step::Base(kind) => {
                if self.g.vertex_count() != 0 {
                    return Err(internal("base step after other steps"));
                }
                let base = fixtures::base_graph(kind);
                for _ in 0..base.n {
                    self.g.add_vertex();
                }
                let mut ids = Vec::with_capacity(base.edges.len());
                for &(u, v, t) in &base.edges {
                    ids.push(self.g.add_edge(u, v, t).map_err(|e| graph_err(step, e))?);
                }
                self.central = base.central;
                self.pairs = base.pairs.map(|p| p.map(|(a, b)| (ids[a], ids[b])));
                self.t2_matching = base.t2_matching.map(|(a, b)| (ids[a], ids[b]));
            }
            Step::Attach { start, len, repeat } => {
                let slice = &plan.targets[start as usize..(start + len) as usize];
                self.g
                    .attach_targets(slice, repeat, |_, _| {})
                    .map_err(|e| graph_err(step, e))?;
            }
            Step::EdstSubdivide { hub } => {
                let h = self.find(step, hub)?;
                let (a, b) = self
                    .t2_matching
                    .ok_or_else(|| internal("no tracked second-tree matching"))?;
                let (ea, eb) = (self.edge_ends(a)?, self.edge_ends(b)?);
                let (target, keep) = if ea.0 != h && ea.1 != h {
                    (a, b)
                } else {
                    (b, a)
                };
                let ends = if target == a { ea } else { eb };
                if ends.0 == h || ends.1 == h {
                    return Err(internal("both tracked matching edges touch the hub"));
                }
                let uw = target;
                let (w, wv) = self.g.split_edge(target).map_err(|e| graph_err(step, e))?;
                self.g
                    .set_tree(uw, TreeFlags::T2)
                    .map_err(|e| graph_err(step, e))?;
                self.g
                    .set_tree(wv, TreeFlags::T2)
                    .map_err(|e| graph_err(step, e))?;
                self.g
                    .add_edge(h, w, TreeFlags::T1)
                    .map_err(|e| graph_err(step, e))?;
                self.t2_matching = Some((uw, keep));
            }
            Step::Surplus { a, b } => {
                let x = self.find(step, a)?;
                let y = self
                    .g
                    .find_vertex_with_degree_excluding(b, x)
                    .map_err(|e| graph_err(step, e))?;
                self.g
                    .add_edge(x, y, TreeFlags::None)
                    .map_err(|e| graph_err(step, e))?;
            }
            Step::Wheel { hub, len } => {
                let h = self.find(step, hub)?;
                let first = self.g.vertex_count() as u32;
                for _ in 0..len {
                    self.g.add_vertex();
                }
                for i in 0..len {
                    let c = first + i;
                    let spoke = if i == 0 { TreeFlags::T1 } else { TreeFlags::T2 };
                    self.g
                        .add_edge(h, c, spoke)
                        .map_err(|e| graph_err(step, e))?;
                    let (next, rim) = if i + 1 == len {
                        (first, TreeFlags::T2)
                    } else {
                        (c + 1, TreeFlags::T1)
                    };
                    self.g
                        .add_edge(c, next, rim)
                        .map_err(|e| graph_err(step, e))?;
                }
            }
            Step::C4Hexagon { hub } => {
                let h = self.find(step, hub)?;
                let first = self.g.vertex_count() as u32;
                for _ in 0..6 {
                    self.g.add_vertex();
                }
                let map = |x: u32| if x == 0 { h } else { first + x - 1 };
                for (&(u, v), &t) in HEXAGON_EDGES.iter().zip(&HEXAGON_FLAGS) {
                    self.g
                        .add_edge(map(u), map(v), t)
                        .map_err(|e| graph_err(step, e))?;
                }
                self.central = Some(HEXAGON_CYCLE.map(map));
            }
            Step::C4Triangle { hub } => {
                let h = self.find(step, hub)?;
                let x = self.g.add_vertex();
                let y = self.g.add_vertex();
                let z = self.g.add_vertex();
                for (u, v, t) in [
                    (h, x, TreeFlags::T1),
                    (x, y, TreeFlags::Both),
                    (y, z, TreeFlags::Both),
                    (z, h, TreeFlags::T2),
                ] {
                    self.g.add_edge(u, v, t).map_err(|e| graph_err(step, e))?;
                }
                self.central = Some([h, x, y, z]);
            }
            Step::MergeMatching => {
                let [(e1, e2), (f1, f2)] =
                    self.pairs.ok_or_else(|| internal("no matching pairs"))?;
                let (p, q) = self.edge_ends(e1)?;
                let (x, y) = self.edge_ends(e2)?;
                let (f1u, f1v) = self.edge_ends(f1)?;
                let (f2u, f2v) = self.edge_ends(f2)?;
                // e1 = pq becomes pv* and e2 = xy becomes xv*, keeping their ids.
                let s = self.g.add_vertex();
                let (pv, xv) = (e1, e2);
                self.g
                    .reroute_edge(e1, q, s)
                    .map_err(|e| graph_err(step, e))?;
                self.g
                    .reroute_edge(e2, y, s)
                    .map_err(|e| graph_err(step, e))?;
                self.g
                    .set_tree(pv, TreeFlags::T1)
                    .map_err(|e| graph_err(step, e))?;
                self.g
                    .set_tree(xv, TreeFlags::T2)
                    .map_err(|e| graph_err(step, e))?;
                let qv = self
                    .g
                    .add_edge(q, s, TreeFlags::T1)
                    .map_err(|e| graph_err(step, e))?;
                let yv = self
                    .g
                    .add_edge(y, s, TreeFlags::T2)
                    .map_err(|e| graph_err(step, e))?;
                let avoids = |a: u32, (u, v): (u32, u32)| a != u && a != v;
                let second_for_f1 = if avoids(x, (f1u, f1v)) { xv } else { yv };
                let first_for_f2 = if avoids(p, (f2u, f2v)) { pv } else { qv };
                self.pairs = Some([(f1, second_for_f1), (first_for_f2, f2)]);
            }
            Step::SubdivideT1 => {
                let e = self
                    .g
                    .edges()
                    .find(|(_, ed)| ed.tree == TreeFlags::T1)
                    .map(|(id, _)| id)
                    .ok_or_else(|| internal("no first-tree edge to subdivide"))?;
                let uw = e;
                let (_, wv) = self.g.split_edge(e).map_err(|e| graph_err(step, e))?;
                self.g
                    .set_tree(uw, TreeFlags::Both)
                    .map_err(|e| graph_err(step, e))?;
                self.g
                    .set_tree(wv, TreeFlags::T1)
                    .map_err(|e| graph_err(step, e))?;
            }
            Step::IsolatedVertex => {
                self.g.add_vertex();
            }
            Step::AddEdgeBetween { a, b } => {
                let x = self.find(step, a)?;
                let y = self
                    .g
                    .find_vertex_with_degree_excluding(b, x)
                    .map_err(|e| graph_err(step, e))?;
                self.g
                    .add_edge(x, y, TreeFlags::None)
                    .map_err(|e| graph_err(step, e))?;
            }
        }
        Ok(())
    }
}
