//! Brute-force TC-realizability for tiny sequences.
//!
//! Enumerates every realization up to isomorphism, then searches edge orders:
//! a bijective labeling is an ordering of the edges, and under distinct labels
//! each edge `uv` merges the reach sets of `u` and `v`.

use std::collections::HashSet;

use thiserror::Error;

use crate::degseq::DegreeSequence;
use crate::graphstore::Mode;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("sequence has {n} entries and {m} edges; caps are n <= {cap_n}, m <= {cap_m}")]
    CapsExceeded {
        n: usize,
        m: usize,
        cap_n: usize,
        cap_m: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    pub max_n: usize,
    pub max_m: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps { max_n: 6, max_m: 9 }
    }
}

/// An edge multiset on vertices `0..n`, as `(u, v)` with `u < v`, sorted.
pub type EdgeList = Vec<(u8, u8)>;

/// True iff some realization of `d` has a proper simple labeling that is
/// temporally connected under strict paths.
pub fn oracle_tc_realizable_sequence(
    d: &DegreeSequence,
    mode: Mode,
    caps: OracleCaps,
) -> Result<bool, OracleError> {
    let n = d.len();
    let m = d.edge_count() as usize;
    // The reach sets are packed 8 bits per vertex into a u64.
    if n > caps.max_n || m > caps.max_m || n > 8 || m > 31 {
        return Err(OracleError::CapsExceeded {
            n,
            m,
            cap_n: caps.max_n,
            cap_m: caps.max_m,
        });
    }
    if n <= 1 {
        return Ok(true);
    }
    let realizations = enumerate_realizations(&d.entries(), mode);
    Ok(realizations.iter().any(|edges| has_tc_order(n, edges)))
}

/// All realizations of `degrees` (entries in the given vertex order), one per
/// isomorphism class. Multigraph mode allows parallel edges, never loops.
pub fn enumerate_realizations(degrees: &[u32], mode: Mode) -> Vec<EdgeList> {
    let n = degrees.len();
    if degrees.iter().sum::<u32>() % 2 == 1 {
        return Vec::new();
    }
    let pairs: Vec<(u8, u8)> = (0..n as u8)
        .flat_map(|u| (u + 1..n as u8).map(move |v| (u, v)))
        .collect();
    let mut residual = degrees.to_vec();
    let mut current = Vec::new();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let perms = degree_preserving_permutations(degrees);
    let mut emit = |edges: &EdgeList| {
        if seen.insert(canonical_form(n, edges, &perms)) {
            out.push(edges.clone());
        }
    };
    enumerate_rec(&pairs, 0, &mut residual, &mut current, mode, &mut emit);
    out
}

fn enumerate_rec(
    pairs: &[(u8, u8)],
    at: usize,
    residual: &mut [u32],
    current: &mut EdgeList,
    mode: Mode,
    emit: &mut impl FnMut(&EdgeList),
) {
    if at == pairs.len() {
        if residual.iter().all(|&r| r == 0) {
            emit(current);
        }
        return;
    }
    let (u, v) = pairs[at];
    let (ru, rv) = (residual[u as usize], residual[v as usize]);
    let cap = match mode {
        Mode::Simple => ru.min(rv).min(1),
        Mode::Multi => ru.min(rv),
    };
    // Once the last pair of `u` is decided, `u` must be saturated.
    let last_for_u = at + 1 == pairs.len() || pairs[at + 1].0 != u;
    for k in (0..=cap).rev() {
        if last_for_u && ru - k != 0 {
            continue;
        }
        residual[u as usize] -= k;
        residual[v as usize] -= k;
        for _ in 0..k {
            current.push((u, v));
        }
        enumerate_rec(pairs, at + 1, residual, current, mode, emit);
        current.truncate(current.len() - k as usize);
        residual[u as usize] += k;
        residual[v as usize] += k;
    }
}

/// Permutations of `0..n` that map each vertex to one of equal degree.
fn degree_preserving_permutations(degrees: &[u32]) -> Vec<Vec<u8>> {
    let n = degrees.len();
    let mut out = Vec::new();
    let mut perm = vec![0u8; n];
    let mut used = vec![false; n];
    fn rec(i: usize, degrees: &[u32], perm: &mut [u8], used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if i == degrees.len() {
            out.push(perm.to_vec());
            return;
        }
        for j in 0..degrees.len() {
            if !used[j] && degrees[j] == degrees[i] {
                used[j] = true;
                perm[i] = j as u8;
                rec(i + 1, degrees, perm, used, out);
                used[j] = false;
            }
        }
    }
    rec(0, degrees, &mut perm, &mut used, &mut out);
    out
}

/// Lexicographically smallest sorted edge list over all permutations.
fn canonical_form(_n: usize, edges: &EdgeList, perms: &[Vec<u8>]) -> EdgeList {
    let mut best: Option<EdgeList> = None;
    let mut buf = Vec::with_capacity(edges.len());
    for p in perms {
        buf.clear();
        buf.extend(edges.iter().map(|&(u, v)| {
            let (a, b) = (p[u as usize], p[v as usize]);
            (a.min(b), a.max(b))
        }));
        buf.sort_unstable();
        if best.as_ref().is_none_or(|b| buf < *b) {
            best = Some(buf.clone());
        }
    }
    best.unwrap_or_default()
}

/// Is there an ordering of `edges` under which every vertex reaches every
/// other by a path of increasing positions?
pub fn has_tc_order(n: usize, edges: &EdgeList) -> bool {
    if n <= 1 {
        return true;
    }
    let full: u8 = if n == 8 { u8::MAX } else { (1u8 << n) - 1 };
    let mut reach: u64 = 0;
    for v in 0..n {
        reach |= 1u64 << (8 * v + v);
    }
    let mut failed = HashSet::new();
    order_search(n, edges, full, 0, reach, &mut failed)
}

fn row(reach: u64, v: u8) -> u8 {
    (reach >> (8 * v as u32)) as u8
}

fn order_search(
    n: usize,
    edges: &EdgeList,
    full: u8,
    used: u32,
    reach: u64,
    failed: &mut HashSet<(u32, u64)>,
) -> bool {
    if (0..n as u8).all(|v| row(reach, v) == full) {
        return true;
    }
    if failed.contains(&(used, reach)) {
        return false;
    }
    // A vertex that still misses a source and has no unused edge is stuck.
    let mut has_unused = 0u8;
    for (i, &(u, v)) in edges.iter().enumerate() {
        if used & (1 << i) == 0 {
            has_unused |= (1 << u) | (1 << v);
        }
    }
    for v in 0..n as u8 {
        if row(reach, v) != full && has_unused & (1 << v) == 0 {
            failed.insert((used, reach));
            return false;
        }
    }
    for (i, &(u, v)) in edges.iter().enumerate() {
        if used & (1 << i) != 0 {
            continue;
        }
        // Parallel copies are interchangeable; try only the first unused one.
        if i > 0 && edges[i - 1] == (u, v) && used & (1 << (i - 1)) == 0 {
            continue;
        }
        let (ru, rv) = (row(reach, u), row(reach, v));
        // An edge that changes nothing now can always be placed later instead.
        if ru == rv {
            continue;
        }
        let merged = (ru | rv) as u64;
        let mut next = reach;
        next &= !(0xFFu64 << (8 * u as u32));
        next &= !(0xFFu64 << (8 * v as u32));
        next |= merged << (8 * u as u32);
        next |= merged << (8 * v as u32);
        if order_search(n, edges, full, used | (1 << i), next, failed) {
            return true;
        }
    }
    failed.insert((used, reach));
    false
}

/// Tie-allowing variant for cross-checking the bijection shortcut: tries every
/// proper labeling with values in `1..=m`, ties allowed between non-adjacent
/// edges. Exponential in `m`; meant for `m <= 5`.
pub fn has_tc_labeling_with_ties(n: usize, edges: &EdgeList) -> bool {
    if n <= 1 {
        return true;
    }
    let m = edges.len();
    let mut labels = vec![1u32; m];
    loop {
        if is_proper_list(edges, &labels) && is_tc_list(n, edges, &labels) {
            return true;
        }
        // Odometer over 1..=m.
        let mut i = 0;
        loop {
            if i == m {
                return false;
            }
            if labels[i] < m as u32 {
                labels[i] += 1;
                break;
            }
            labels[i] = 1;
            i += 1;
        }
    }
}

fn is_proper_list(edges: &EdgeList, labels: &[u32]) -> bool {
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = (edges[i], edges[j]);
            let adjacent = a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
            if adjacent && labels[i] == labels[j] {
                return false;
            }
        }
    }
    true
}

fn is_tc_list(n: usize, edges: &EdgeList, labels: &[u32]) -> bool {
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by_key(|&i| labels[i]);
    let mut reach: Vec<u32> = (0..n).map(|v| 1 << v).collect();
    let mut i = 0;
    while i < order.len() {
        let t = labels[order[i]];
        let snapshot = reach.clone();
        while i < order.len() && labels[order[i]] == t {
            let (u, v) = edges[order[i]];
            let merged = snapshot[u as usize] | snapshot[v as usize];
            reach[u as usize] |= merged;
            reach[v as usize] |= merged;
            i += 1;
        }
    }
    reach.iter().all(|&r| r == (1 << n) - 1)
}

/// Every non-increasing sequence of length `n` that is graphical (simple mode,
/// entries at most `n - 1`) or multigraphical (entries at most `2n`).
pub fn enumerate_sequences(n: usize, mode: Mode) -> Vec<DegreeSequence> {
    let cap = match mode {
        Mode::Simple => n.saturating_sub(1) as u32,
        Mode::Multi => 2 * n as u32,
    };
    enumerate_sequences_capped(n, mode, cap, usize::MAX)
}

/// As [`enumerate_sequences`] with explicit bounds on entries and edge count.
pub fn enumerate_sequences_capped(
    n: usize,
    mode: Mode,
    max_degree: u32,
    max_m: usize,
) -> Vec<DegreeSequence> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, hi: u32, budget: u64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in (0..=hi.min(budget as u32)).rev() {
            cur.push(v);
            rec(n, v, budget - v as u64, cur, out);
            cur.pop();
        }
    }
    let budget = (max_m as u64).saturating_mul(2).min(u32::MAX as u64);
    let mut raw = Vec::new();
    rec(n, max_degree, budget, &mut cur, &mut raw);
    for values in raw {
        let d = DegreeSequence::normalize(&values);
        let ok = match mode {
            Mode::Simple => d.is_graphical(),
            Mode::Multi => d.is_multigraphical(),
        };
        if ok {
            out.push(d);
        }
    }
    out.reverse();
    out
}
