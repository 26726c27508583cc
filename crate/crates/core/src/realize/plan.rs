//! The descent half of every construction.
//!
//! Each inductive construction shrinks the degree sequence step by step until
//! it reaches a fixed base graph. The planner performs those reductions on a
//! bucket [`DegreeSequence`] and records one [`Step`] per reduction; the
//! replayer later builds the base and undoes the reductions in reverse order.
//! Steps refer to vertices only by their degree at replay time.

use crate::degseq::DegreeSequence;
use crate::graphstore::TreeFlags;

use super::RealizeError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Base {
    Empty,
    Single,
    /// `k` parallel copies of one edge.
    Parallel(u32),
    K4,
    Triangle,
    C4,
    Multi332,
    D6,
    D7,
    D8,
    C4N8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Step {
    Base(Base),
    /// New vertex joined to vertices of the listed degrees
    /// (`Plan::targets[start..start + len]`).
    Attach {
        start: u32,
        len: u32,
        repeat: bool,
    },
    /// New degree-3 vertex on a second-tree edge away from `hub`, plus an edge to `hub`.
    EdstSubdivide {
        hub: u32,
    },
    /// One extra edge between vertices of degrees `a` and `b`.
    Surplus {
        a: u32,
        b: u32,
    },
    /// Cycle of `len` new vertices, each joined to `hub`.
    Wheel {
        hub: u32,
        len: u32,
    },
    /// Six new degree-3 vertices hung off `hub`; introduces the central cycle.
    C4Hexagon {
        hub: u32,
    },
    /// Three new degree-2 vertices closing a 4-cycle through `hub`.
    C4Triangle {
        hub: u32,
    },
    /// Subdivide both edges of a matching pair and identify the new vertices.
    MergeMatching,
    /// New degree-2 vertex on a first-tree edge; one half becomes shared.
    SubdivideT1,
    IsolatedVertex,
    AddEdgeBetween {
        a: u32,
        b: u32,
    },
}

#[derive(Debug, Default)]
pub(crate) struct Plan {
    pub steps: Vec<Step>,
    pub targets: Vec<(u32, TreeFlags)>,
}

pub(crate) struct Planner {
    pub seq: DegreeSequence,
    pub plan: Plan,
    checks: bool,
}

fn internal(msg: impl Into<String>) -> RealizeError {
    RealizeError::Internal(msg.into())
}

/// `4(n - 1) + offset` as a signed quantity.
fn quad(n: usize, offset: i64) -> i64 {
    4 * (n as i64 - 1) + offset
}

impl Planner {
    pub fn new(seq: &DegreeSequence, checks: bool) -> Self {
        Planner {
            seq: seq.clone(),
            plan: Plan::default(),
            checks,
        }
    }

    pub fn finish(self) -> Plan {
        self.plan
    }

    fn n(&self) -> usize {
        self.seq.len()
    }

    fn sum(&self) -> i64 {
        self.seq.sum() as i64
    }

    fn min(&self) -> u32 {
        self.seq.min().unwrap_or(0)
    }

    fn max(&self) -> u32 {
        self.seq.max().unwrap_or(0)
    }

    fn push(&mut self, step: Step) {
        self.plan.steps.push(step);
    }

    fn base(&mut self, base: Base, expected: &[u32]) -> Result<(), RealizeError> {
        if self.seq.entries() != expected {
            return Err(internal(format!(
                "reached base {base:?} with ({}), expected {expected:?}",
                self.seq
            )));
        }
        self.push(Step::Base(base));
        Ok(())
    }

    fn attach(&mut self, targets: impl IntoIterator<Item = (u32, TreeFlags)>, repeat: bool) {
        let start = self.plan.targets.len() as u32;
        self.plan.targets.extend(targets);
        let len = self.plan.targets.len() as u32 - start;
        self.push(Step::Attach { start, len, repeat });
    }

    /// Graphical laying off of the last entry `k`: the new vertex will join
    /// vertices of the first `k` degrees. The first two edges go to the first
    /// and second tree when `flagged`.
    fn lay_off_last(&mut self, flagged: bool) -> Result<(), RealizeError> {
        let k = self
            .seq
            .pop_last()
            .ok_or_else(|| internal("lay-off on an empty sequence"))?;
        let start = self.plan.targets.len() as u32;
        let mut remaining = k;
        for (value, count) in self.seq.buckets() {
            if remaining == 0 {
                break;
            }
            let take = remaining.min(count);
            for _ in 0..take {
                let i = self.plan.targets.len() as u32 - start;
                let flag = match (flagged, i) {
                    (true, 0) => TreeFlags::T1,
                    (true, 1) => TreeFlags::T2,
                    _ => TreeFlags::None,
                };
                self.plan.targets.push((value - 1, flag));
            }
            remaining -= take;
        }
        self.seq
            .decrement_first(k as usize)
            .map_err(|e| internal(format!("lay-off of {k}: {e}")))?;
        self.push(Step::Attach {
            start,
            len: k,
            repeat: false,
        });
        Ok(())
    }

    fn debug_check(&self, graphical: bool, what: &str) -> Result<(), RealizeError> {
        if !self.checks {
            return Ok(());
        }
        let ok = if graphical {
            self.seq.is_graphical()
        } else {
            self.seq.is_multigraphical()
        };
        if ok {
            Ok(())
        } else {
            Err(internal(format!(
                "{what}: residual ({}) lost (multi)graphicality",
                self.seq
            )))
        }
    }

    /// Graphical, sum at least 4(n-1), minimum at least 2: two edge-disjoint trees.
    pub fn two_edst(&mut self) -> Result<(), RealizeError> {
        loop {
            let n = self.n();
            if n == 4 {
                return self.base(Base::K4, &[3, 3, 3, 3]);
            }
            let dn = self.min();
            if n < 4 || dn < 2 || self.sum() < quad(n, 0) {
                return Err(internal(format!(
                    "two-tree descent left its domain at ({})",
                    self.seq
                )));
            }
            if self.sum() == quad(n, 0) && dn == 3 {
                let d1 = self.max();
                self.seq
                    .replace_one(d1, d1 - 1)
                    .map_err(|e| internal(e.to_string()))?;
                self.seq.pop_last();
                self.push(Step::EdstSubdivide { hub: d1 - 1 });
            } else {
                self.lay_off_last(true)?;
            }
            self.debug_check(true, "two-tree descent")?;
        }
    }

    /// Multigraphical, sum at least 4(n-1), minimum at least 2.
    pub fn two_edst_multi(&mut self) -> Result<(), RealizeError> {
        while self.sum() > quad(self.n(), 0) {
            let (a, b) = {
                let mut top = self.seq.buckets();
                let (a, ca) = top
                    .next()
                    .ok_or_else(|| internal("empty sequence in surplus loop"))?;
                let b = if ca >= 2 {
                    a
                } else {
                    top.next().map_or(0, |(v, _)| v)
                };
                (a, b)
            };
            if b < 3 {
                return Err(internal(format!(
                    "surplus edge would drop below 2 at ({})",
                    self.seq
                )));
            }
            self.seq
                .decrement_first(2)
                .map_err(|e| internal(e.to_string()))?;
            self.push(Step::Surplus { a: a - 1, b: b - 1 });
        }
        self.debug_check(false, "surplus removal")?;
        loop {
            let n = self.n();
            if n == 2 {
                return self.base(Base::Parallel(2), &[2, 2]);
            }
            if n == 3 && self.seq.entries() == [3, 3, 2] {
                return self.base(Base::Multi332, &[3, 3, 2]);
            }
            match self.min() {
                3 => return self.two_edst(),
                2 => {
                    self.seq.pop_last();
                    let d1 = self.max();
                    self.seq
                        .replace_one(d1, d1 - 1)
                        .map_err(|e| internal(e.to_string()))?;
                    let top = self.max();
                    self.seq
                        .replace_one(top, top - 1)
                        .map_err(|e| internal(e.to_string()))?;
                    self.attach([(top - 1, TreeFlags::T2), (d1 - 1, TreeFlags::T1)], true);
                }
                _ => {
                    return Err(internal(format!(
                        "multigraph two-tree descent left its domain at ({})",
                        self.seq
                    )))
                }
            }
            self.debug_check(false, "multigraph two-tree descent")?;
        }
    }

    fn small(&mut self, multi: bool) -> Result<(), RealizeError> {
        match self.n() {
            0 => self.base(Base::Empty, &[]),
            1 => self.base(Base::Single, &[0]),
            _ => {
                let k = self.max();
                if k == 0 || (!multi && k != 1) {
                    return Err(internal(format!("no small base for ({})", self.seq)));
                }
                self.base(Base::Parallel(k), &[k, k])
            }
        }
    }

    /// Removes a trailing 1 and records a pendant edge, shared by both trees.
    fn pendant(&mut self) -> Result<(), RealizeError> {
        self.seq.pop_last();
        let d1 = self.max();
        self.seq
            .replace_one(d1, d1 - 1)
            .map_err(|e| internal(e.to_string()))?;
        self.attach([(d1 - 1, TreeFlags::Both)], false);
        Ok(())
    }

    /// Graphical, sum at least 4(n-1)-2, at most one vertex of degree below 2:
    /// two spanning trees sharing at most one edge.
    pub fn one_shared(&mut self) -> Result<(), RealizeError> {
        if self.n() <= 2 {
            return self.small(false);
        }
        if self.min() == 1 {
            self.pendant()?;
            self.debug_check(true, "pendant removal")?;
            return self.two_edst();
        }
        if self.sum() >= quad(self.n(), 0) {
            return self.two_edst();
        }
        if self.sum() != quad(self.n(), -2) {
            return Err(internal(format!(
                "one-shared descent left its domain at ({})",
                self.seq
            )));
        }
        while self.min() == 2 {
            if self.n() == 3 {
                return self.base(Base::Triangle, &[2, 2, 2]);
            }
            self.lay_off_last(true)?;
            self.debug_check(true, "one-shared lay-off")?;
        }
        if self.min() != 3 {
            return Err(internal(format!(
                "one-shared descent expected a 3 at ({})",
                self.seq
            )));
        }
        let n = self.n();
        let d1 = self.max();
        let d2 = self.seq.get(1).unwrap_or(0);
        if d2 == 3 {
            // (n-3, 3, ..., 3)
            if d1 as usize + 3 != n {
                return Err(internal(format!(
                    "unexpected all-threes shape ({})",
                    self.seq
                )));
            }
            return match n {
                6 => self.base(Base::D6, &[3; 6]),
                7 => self.base(Base::D7, &[4, 3, 3, 3, 3, 3, 3]),
                8 => self.base(Base::D8, &[5, 3, 3, 3, 3, 3, 3, 3]),
                _ => {
                    self.push(Step::Wheel {
                        hub: 3,
                        len: n as u32 - 6,
                    });
                    self.seq = DegreeSequence::normalize(&[3; 6]);
                    self.base(Base::D6, &[3; 6])
                }
            };
        }
        // Replace d1 and d1-1 threes by a single 1; the threes become a cycle
        // around the vertex that held the 1.
        self.seq.pop_first();
        self.seq
            .remove_value(3, d1 - 1)
            .map_err(|_| internal(format!("too few threes for the wheel at d1={d1}")))?;
        self.seq.push(1);
        self.push(Step::Wheel {
            hub: 1,
            len: d1 - 1,
        });
        self.debug_check(true, "wheel removal")?;
        self.pendant()?;
        self.debug_check(true, "pendant removal")?;
        self.two_edst()
    }

    pub fn one_shared_multi(&mut self) -> Result<(), RealizeError> {
        if self.n() <= 2 {
            return self.small(true);
        }
        if self.min() == 1 {
            self.pendant()?;
            self.debug_check(false, "pendant removal")?;
            return self.two_edst_multi();
        }
        if self.sum() >= quad(self.n(), 0) {
            return self.two_edst_multi();
        }
        if self.sum() != quad(self.n(), -2) {
            return Err(internal(format!(
                "one-shared descent left its domain at ({})",
                self.seq
            )));
        }
        match self.min() {
            3 => {
                if self.checks && !self.seq.is_graphical() {
                    return Err(internal(format!("({}) expected graphical", self.seq)));
                }
                self.one_shared()
            }
            2 => {
                self.seq.pop_last();
                self.push(Step::SubdivideT1);
                self.debug_check(false, "subdivision removal")?;
                self.two_edst_multi()
            }
            _ => Err(internal(format!(
                "one-shared descent left its domain at ({})",
                self.seq
            ))),
        }
    }

    /// Graphical, sum 4(n-1)-4, d1 < n-1, minimum at least 2: C4-pivotable.
    pub fn c4(&mut self) -> Result<(), RealizeError> {
        loop {
            let n = self.n();
            if n == 4 {
                return self.base(Base::C4, &[2, 2, 2, 2]);
            }
            let (d1, dn) = (self.max(), self.min());
            if n < 4 || self.sum() != quad(n, -4) {
                return Err(internal(format!(
                    "C4 descent left its domain at ({})",
                    self.seq
                )));
            }
            match dn {
                2 => self.lay_off_last(true)?,
                3 if d1 <= 4 => {
                    let fours = self.seq.count_of(4);
                    if self.seq.count_of(3) != 8 || fours as usize + 8 != n {
                        return Err(internal(format!("unexpected shape ({})", self.seq)));
                    }
                    for _ in 0..fours {
                        self.push(Step::MergeMatching);
                    }
                    self.seq = DegreeSequence::normalize(&[3; 8]);
                    return self.base(Base::C4N8, &[3; 8]);
                }
                3 => {
                    self.seq
                        .remove_value(3, 6)
                        .map_err(|_| internal(format!("too few threes at ({})", self.seq)))?;
                    self.seq
                        .replace_one(d1, d1 - 2)
                        .map_err(|e| internal(e.to_string()))?;
                    self.push(Step::C4Hexagon { hub: d1 - 2 });
                    self.debug_check(true, "hexagon removal")?;
                    return self.two_edst();
                }
                _ => {
                    return Err(internal(format!(
                        "C4 descent expected a 2 or 3 at ({})",
                        self.seq
                    )))
                }
            }
            self.debug_check(true, "C4 lay-off")?;
        }
    }

    pub fn c4_multi(&mut self) -> Result<(), RealizeError> {
        let n = self.n();
        let third_last = self.seq.get_from_end(2).unwrap_or(0);
        let special = matches!(
            self.seq.entries().as_slice(),
            [2, 2, 2, 2] | [3, 3, 2, 2, 2]
        );
        if (n >= 3 && third_last >= 3) || special {
            if self.checks && !self.seq.is_graphical() {
                return Err(internal(format!("({}) expected graphical", self.seq)));
            }
            return self.c4();
        }
        self.seq
            .remove_value(2, 3)
            .map_err(|_| internal(format!("expected three 2s in ({})", self.seq)))?;
        let d1 = self.max();
        if d1 < 4 {
            return Err(internal(format!("hub degree too small in ({})", self.seq)));
        }
        self.seq
            .replace_one(d1, d1 - 2)
            .map_err(|e| internal(e.to_string()))?;
        self.push(Step::C4Triangle { hub: d1 - 2 });
        self.debug_check(false, "triangle removal")?;
        self.two_edst_multi()
    }

    /// Havel-Hakimi down to nothing; the result may be disconnected.
    pub fn any_simple(&mut self) -> Result<(), RealizeError> {
        while !self.seq.is_empty() {
            self.lay_off_last(false)?;
        }
        self.push(Step::Base(Base::Empty));
        Ok(())
    }

    /// Multigraph laying off, one edge between the largest and smallest
    /// positive entries at a time.
    pub fn any_multi(&mut self) -> Result<(), RealizeError> {
        while !self.seq.is_empty() {
            let dn = self.min();
            if dn == 0 {
                self.seq.pop_last();
                self.push(Step::IsolatedVertex);
                continue;
            }
            let d1 = self.max();
            if self.n() < 2 {
                return Err(internal("lone positive entry"));
            }
            self.seq
                .replace_one(d1, d1 - 1)
                .map_err(|e| internal(e.to_string()))?;
            self.seq
                .replace_one(dn, dn - 1)
                .map_err(|e| internal(e.to_string()))?;
            self.push(Step::AddEdgeBetween {
                a: d1 - 1,
                b: dn - 1,
            });
        }
        self.push(Step::Base(Base::Empty));
        Ok(())
    }
}
