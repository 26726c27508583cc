//! Degree sequences stored as a doubly-linked list of `(value, count)` buckets.
//!
//! The bucket list is sorted by strictly decreasing value, so the sequence is
//! always non-increasing without any explicit re-sorting. Laying off an entry
//! of value `x` touches at most `x + 1` buckets.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

const NIL: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DegSeqError {
    #[error("index {index} out of range for a sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("entry {degree} cannot be laid off onto {others} other entries")]
    DegreeTooLarge { degree: u32, others: usize },
    #[error("entry at index {0} is zero")]
    ZeroEntry(usize),
    #[error("sequence is not graphical")]
    NotGraphical,
    #[error("sequence is not multigraphical")]
    NotMultigraphical,
    #[error("no entry of value {0}")]
    MissingValue(u32),
    #[error("cannot parse `{0}` as a degree")]
    Parse(String),
}

#[derive(Debug, Clone, Copy)]
struct Bucket {
    value: u32,
    count: u32,
    prev: u32,
    next: u32,
}

/// A non-increasing sequence of non-negative degrees.
#[derive(Clone)]
pub struct DegreeSequence {
    nodes: Vec<Bucket>,
    free: Vec<u32>,
    head: u32,
    tail: u32,
    len: usize,
    sum: u64,
    ops: u64,
}

impl DegreeSequence {
    pub fn empty() -> Self {
        DegreeSequence {
            nodes: Vec::new(),
            free: Vec::new(),
            head: NIL,
            tail: NIL,
            len: 0,
            sum: 0,
            ops: 0,
        }
    }

    /// Sorts `values` non-increasingly and builds the bucket list.
    pub fn normalize(values: &[u32]) -> Self {
        let mut sorted = values.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut seq = Self::empty();
        for chunk in sorted.chunk_by(|a, b| a == b) {
            seq.append_bucket(chunk[0], chunk.len() as u32);
        }
        seq
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn sum(&self) -> u64 {
        self.sum
    }

    /// Number of edges in any realization.
    pub fn edge_count(&self) -> u64 {
        self.sum / 2
    }

    /// Bucket-node touches performed by mutating operations so far.
    pub fn ops(&self) -> u64 {
        self.ops
    }

    pub fn max(&self) -> Option<u32> {
        (self.head != NIL).then(|| self.nodes[self.head as usize].value)
    }

    pub fn min(&self) -> Option<u32> {
        (self.tail != NIL).then(|| self.nodes[self.tail as usize].value)
    }

    /// The entry at 0-based position `index`. Walks the bucket list.
    pub fn get(&self, index: usize) -> Option<u32> {
        if index >= self.len {
            return None;
        }
        let mut seen = 0usize;
        for (value, count) in self.buckets() {
            seen += count as usize;
            if index < seen {
                return Some(value);
            }
        }
        None
    }

    /// The entry at position `index` counted from the end (`0` is the last entry).
    pub fn get_from_end(&self, index: usize) -> Option<u32> {
        if index >= self.len {
            return None;
        }
        let mut seen = 0usize;
        let mut node = self.tail;
        while node != NIL {
            let b = self.nodes[node as usize];
            seen += b.count as usize;
            if index < seen {
                return Some(b.value);
            }
            node = b.prev;
        }
        None
    }

    /// `(value, count)` pairs in decreasing value order.
    pub fn buckets(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let mut node = self.head;
        std::iter::from_fn(move || {
            if node == NIL {
                return None;
            }
            let b = self.nodes[node as usize];
            node = b.next;
            Some((b.value, b.count))
        })
    }

    pub fn entries(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.len);
        for (value, count) in self.buckets() {
            out.extend(std::iter::repeat_n(value, count as usize));
        }
        out
    }

    /// Number of entries with the given value.
    pub fn count_of(&self, value: u32) -> u32 {
        self.buckets()
            .find(|&(v, _)| v == value)
            .map_or(0, |(_, c)| c)
    }

    /// Erdős–Gallai test, linear in `n`.
    pub fn is_graphical(&self) -> bool {
        if self.sum % 2 == 1 {
            return false;
        }
        let d = self.entries();
        let n = d.len();
        if n == 0 {
            return true;
        }
        if d[0] as usize > n - 1 {
            return false;
        }
        // suffix[i] = d[i] + ... + d[n-1]
        let mut suffix = vec![0u64; n + 1];
        for i in (0..n).rev() {
            suffix[i] = suffix[i + 1] + d[i] as u64;
        }
        let mut prefix = 0u64;
        // `big` = number of entries with value >= r; shrinks as r grows.
        let mut big = n;
        for r in 1..n {
            prefix += d[r - 1] as u64;
            while big > 0 && (d[big - 1] as usize) < r {
                big -= 1;
            }
            // Entries at positions r..n: those before `big` contribute r, the rest themselves.
            let split = big.max(r);
            let rhs = (r * (r - 1)) as u64 + (r * (split - r)) as u64 + suffix[split];
            if prefix > rhs {
                return false;
            }
        }
        true
    }

    /// Even sum and `d_1 <= sum - d_1`.
    pub fn is_multigraphical(&self) -> bool {
        if self.sum % 2 == 1 {
            return false;
        }
        let d1 = self.max().unwrap_or(0) as u64;
        d1 <= self.sum - d1
    }

    /// Removes the entry at 0-based `index` and decrements the first `d_index`
    /// remaining entries (the Havel–Hakimi laying-off step).
    pub fn lay_off_graphical(&self, index: usize) -> Result<DegreeSequence, DegSeqError> {
        let value = self.get(index).ok_or(DegSeqError::IndexOutOfRange {
            index,
            len: self.len,
        })?;
        if value as usize >= self.len {
            return Err(DegSeqError::DegreeTooLarge {
                degree: value,
                others: self.len - 1,
            });
        }
        let mut out = self.clone();
        out.remove_one(value)?;
        out.decrement_first(value as usize)?;
        Ok(out)
    }

    /// Lays off a single edge between the first entry and the entry at 0-based
    /// `index` (`index >= 1`).
    pub fn lay_off_multigraphical(&self, index: usize) -> Result<DegreeSequence, DegSeqError> {
        if index == 0 || index >= self.len {
            return Err(DegSeqError::IndexOutOfRange {
                index,
                len: self.len,
            });
        }
        let first = self.max().unwrap_or(0);
        let other = self.get(index).unwrap_or(0);
        if other == 0 {
            return Err(DegSeqError::ZeroEntry(index));
        }
        let mut out = self.clone();
        out.replace_one(first, first - 1)?;
        out.replace_one(other, other - 1)?;
        Ok(out)
    }

    // ---- in-place primitives used by the constructions ----

    /// Removes and returns the last (smallest) entry.
    pub fn pop_last(&mut self) -> Option<u32> {
        let value = self.min()?;
        self.remove_one(value).ok()?;
        Some(value)
    }

    /// Removes and returns the first (largest) entry.
    pub fn pop_first(&mut self) -> Option<u32> {
        let value = self.max()?;
        self.remove_one(value).ok()?;
        Some(value)
    }

    /// Inserts one entry of `value`.
    pub fn push(&mut self, value: u32) {
        self.ops += 1;
        // Locate from whichever end is closer in value; constructions only
        // insert near the ends.
        let mut node = self.tail;
        while node != NIL && self.nodes[node as usize].value < value {
            self.ops += 1;
            node = self.nodes[node as usize].prev;
        }
        // `node` is the last bucket with value >= `value`, or NIL.
        if node != NIL && self.nodes[node as usize].value == value {
            self.nodes[node as usize].count += 1;
        } else {
            self.insert_after(node, value, 1);
        }
        self.len += 1;
        self.sum += value as u64;
    }

    /// Removes `count` entries of `value`.
    pub fn remove_value(&mut self, value: u32, count: u32) -> Result<(), DegSeqError> {
        let node = self
            .find_node(value)
            .ok_or(DegSeqError::MissingValue(value))?;
        let b = &mut self.nodes[node as usize];
        if b.count < count {
            return Err(DegSeqError::MissingValue(value));
        }
        b.count -= count;
        if b.count == 0 {
            self.unlink(node);
        }
        self.len -= count as usize;
        self.sum -= value as u64 * count as u64;
        Ok(())
    }

    /// Removes one entry of `value`.
    pub fn remove_one(&mut self, value: u32) -> Result<(), DegSeqError> {
        self.remove_value(value, 1)
    }

    /// Changes one entry of value `old` to `new`.
    pub fn replace_one(&mut self, old: u32, new: u32) -> Result<(), DegSeqError> {
        let node = self.find_node(old).ok_or(DegSeqError::MissingValue(old))?;
        if old == new {
            return Ok(());
        }
        // Walk from the old bucket towards the new value's position.
        let mut anchor = node;
        if new < old {
            // Last bucket with value >= new, starting at `node`.
            loop {
                let next = self.nodes[anchor as usize].next;
                if next == NIL || self.nodes[next as usize].value < new {
                    break;
                }
                self.ops += 1;
                anchor = next;
            }
        } else {
            anchor = self.nodes[node as usize].prev;
            while anchor != NIL && self.nodes[anchor as usize].value < new {
                self.ops += 1;
                anchor = self.nodes[anchor as usize].prev;
            }
        }
        if anchor != NIL && self.nodes[anchor as usize].value == new {
            self.nodes[anchor as usize].count += 1;
        } else {
            self.insert_after(anchor, new, 1);
        }
        let b = &mut self.nodes[node as usize];
        b.count -= 1;
        if b.count == 0 {
            self.unlink(node);
        }
        self.sum = self.sum - old as u64 + new as u64;
        Ok(())
    }

    /// Decrements the first `k` entries. Decremented entries of a split bucket
    /// land after the untouched entries of equal value, so order stays stable.
    pub fn decrement_first(&mut self, k: usize) -> Result<(), DegSeqError> {
        if k == 0 {
            return Ok(());
        }
        if k > self.len {
            return Err(DegSeqError::DegreeTooLarge {
                degree: k as u32,
                others: self.len,
            });
        }
        // Collect the touched buckets, front to back.
        let mut touched: Vec<(u32, u32)> = Vec::new();
        let mut remaining = k as u32;
        let mut node = self.head;
        while remaining > 0 {
            self.ops += 1;
            let b = self.nodes[node as usize];
            if b.value == 0 {
                return Err(DegSeqError::ZeroEntry(k - remaining as usize));
            }
            let take = remaining.min(b.count);
            touched.push((node, take));
            remaining -= take;
            node = b.next;
        }
        // Apply back to front so each bucket's successor is already final.
        for &(node, take) in touched.iter().rev() {
            self.ops += 1;
            let b = self.nodes[node as usize];
            let lowered = b.value - 1;
            let next = b.next;
            if take == b.count {
                if next != NIL && self.nodes[next as usize].value == lowered {
                    self.nodes[next as usize].count += take;
                    self.unlink(node);
                } else {
                    self.nodes[node as usize].value = lowered;
                }
            } else {
                self.nodes[node as usize].count -= take;
                if next != NIL && self.nodes[next as usize].value == lowered {
                    self.nodes[next as usize].count += take;
                } else {
                    self.insert_after(node, lowered, take);
                }
            }
        }
        self.sum -= k as u64;
        Ok(())
    }

    // ---- list internals ----

    fn find_node(&self, value: u32) -> Option<u32> {
        // Constructions look up values near either end; scan from the nearer one.
        let (hi, lo) = (self.max()?, self.min()?);
        if value > hi || value < lo {
            return None;
        }
        let mut node;
        if hi - value <= value - lo {
            node = self.head;
            while node != NIL && self.nodes[node as usize].value > value {
                node = self.nodes[node as usize].next;
            }
        } else {
            node = self.tail;
            while node != NIL && self.nodes[node as usize].value < value {
                node = self.nodes[node as usize].prev;
            }
        }
        (node != NIL && self.nodes[node as usize].value == value).then_some(node)
    }

    fn alloc(&mut self, value: u32, count: u32) -> u32 {
        let bucket = Bucket {
            value,
            count,
            prev: NIL,
            next: NIL,
        };
        if let Some(idx) = self.free.pop() {
            self.nodes[idx as usize] = bucket;
            idx
        } else {
            self.nodes.push(bucket);
            (self.nodes.len() - 1) as u32
        }
    }

    fn append_bucket(&mut self, value: u32, count: u32) {
        self.insert_after(self.tail, value, count);
        self.len += count as usize;
        self.sum += value as u64 * count as u64;
    }

    /// Links a new bucket after `anchor` (or at the head when `anchor` is NIL).
    fn insert_after(&mut self, anchor: u32, value: u32, count: u32) -> u32 {
        let idx = self.alloc(value, count);
        let next = if anchor == NIL {
            self.head
        } else {
            self.nodes[anchor as usize].next
        };
        self.nodes[idx as usize].prev = anchor;
        self.nodes[idx as usize].next = next;
        if anchor == NIL {
            self.head = idx;
        } else {
            self.nodes[anchor as usize].next = idx;
        }
        if next == NIL {
            self.tail = idx;
        } else {
            self.nodes[next as usize].prev = idx;
        }
        idx
    }

    fn unlink(&mut self, node: u32) {
        let Bucket { prev, next, .. } = self.nodes[node as usize];
        if prev == NIL {
            self.head = next;
        } else {
            self.nodes[prev as usize].next = next;
        }
        if next == NIL {
            self.tail = prev;
        } else {
            self.nodes[next as usize].prev = prev;
        }
        self.free.push(node);
    }

    /// Checks the bucket invariants: strictly decreasing values, positive
    /// counts, consistent links, and cached `len`/`sum`.
    pub fn check_invariants(&self) -> bool {
        let mut len = 0usize;
        let mut sum = 0u64;
        let mut prev = NIL;
        let mut node = self.head;
        let mut last_value: Option<u32> = None;
        while node != NIL {
            let b = self.nodes[node as usize];
            if b.prev != prev || b.count == 0 {
                return false;
            }
            if let Some(v) = last_value {
                if b.value >= v {
                    return false;
                }
            }
            last_value = Some(b.value);
            len += b.count as usize;
            sum += b.value as u64 * b.count as u64;
            prev = node;
            node = b.next;
        }
        prev == self.tail && len == self.len && sum == self.sum
    }
}

impl Default for DegreeSequence {
    fn default() -> Self {
        Self::empty()
    }
}

impl PartialEq for DegreeSequence {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.buckets().eq(other.buckets())
    }
}

impl Eq for DegreeSequence {}

impl fmt::Debug for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DegreeSequence{:?}", self.entries())
    }
}

/// Space-separated sorted form, e.g. `3 3 2 2`.
impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (value, count) in self.buckets() {
            for _ in 0..count {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{value}")?;
                first = false;
            }
        }
        Ok(())
    }
}

/// Parses integers separated by whitespace and/or commas; order is irrelevant.
impl FromStr for DegreeSequence {
    type Err = DegSeqError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|_| DegSeqError::Parse(tok.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::normalize(&values))
    }
}

impl From<&[u32]> for DegreeSequence {
    fn from(values: &[u32]) -> Self {
        Self::normalize(values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(values: &[u32]) -> DegreeSequence {
        DegreeSequence::normalize(values)
    }

    /// Backtracking search for a simple graph with the given degrees.
    fn brute_force_graphical(d: &[u32]) -> bool {
        fn go(residual: &mut Vec<u32>, pairs: &[(usize, usize)], at: usize) -> bool {
            if residual.iter().all(|&r| r == 0) {
                return true;
            }
            if at == pairs.len() {
                return false;
            }
            let (u, v) = pairs[at];
            // Vertex u is finished once all its pairs are decided.
            if residual[u] > 0 && residual[v] > 0 {
                residual[u] -= 1;
                residual[v] -= 1;
                if go(residual, pairs, at + 1) {
                    return true;
                }
                residual[u] += 1;
                residual[v] += 1;
            }
            let last_for_u = at + 1 == pairs.len() || pairs[at + 1].0 != u;
            if last_for_u && residual[u] > 0 {
                return false;
            }
            go(residual, pairs, at + 1)
        }
        let n = d.len();
        let pairs: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        go(&mut d.to_vec(), &pairs, 0)
    }

    fn all_sequences(n: usize, max: u32) -> Vec<Vec<u32>> {
        fn rec(n: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            let hi = cur.last().copied().unwrap_or(max);
            for v in 0..=hi {
                cur.push(v);
                rec(n, max, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, max, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn normalize_sorts_and_buckets() {
        let d = seq(&[2, 3, 2, 3]);
        assert_eq!(d.entries(), vec![3, 3, 2, 2]);
        assert_eq!(d.buckets().collect::<Vec<_>>(), vec![(3, 2), (2, 2)]);
        assert!(d.check_invariants());
        let e = seq(&[]);
        assert_eq!(e.len(), 0);
        assert!(e.is_empty());
        assert_eq!(seq(&[0, 0]).entries(), vec![0, 0]);
    }

    #[test]
    fn graphical_examples() {
        assert!(seq(&[3, 3, 3, 3]).is_graphical());
        assert!(seq(&[3, 1, 1, 1]).is_graphical());
        assert!(!seq(&[3, 3, 1, 1]).is_graphical());
        assert!(!brute_force_graphical(&[3, 3, 1, 1]));
        assert!(seq(&[]).is_graphical());
    }

    #[test]
    fn multigraphical_examples() {
        assert!(seq(&[4, 2, 2]).is_multigraphical());
        assert!(seq(&[2, 2]).is_multigraphical());
        assert!(!seq(&[5, 1]).is_multigraphical());
        assert!(seq(&[]).is_multigraphical());
    }

    #[test]
    fn graphical_lay_off_examples() {
        assert_eq!(
            seq(&[2, 2, 2, 2]).lay_off_graphical(3).unwrap(),
            seq(&[2, 1, 1])
        );
        assert_eq!(seq(&[1, 1]).lay_off_graphical(1).unwrap(), seq(&[0]));
        assert_eq!(
            seq(&[3, 2, 2, 1]).lay_off_graphical(3).unwrap(),
            seq(&[2, 2, 2])
        );
    }

    #[test]
    fn graphical_lay_off_errors() {
        assert!(matches!(
            seq(&[1, 1]).lay_off_graphical(2),
            Err(DegSeqError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            seq(&[3, 1, 1]).lay_off_graphical(0),
            Err(DegSeqError::DegreeTooLarge { .. })
        ));
    }

    #[test]
    fn multigraphical_lay_off_examples() {
        assert_eq!(
            seq(&[2, 2]).lay_off_multigraphical(1).unwrap(),
            seq(&[1, 1])
        );
        assert_eq!(
            seq(&[3, 3, 2]).lay_off_multigraphical(1).unwrap(),
            seq(&[2, 2, 2])
        );
        assert_eq!(
            seq(&[4, 2, 2]).lay_off_multigraphical(2).unwrap(),
            seq(&[3, 2, 1])
        );
        assert_eq!(
            seq(&[2, 0]).lay_off_multigraphical(1),
            Err(DegSeqError::ZeroEntry(1))
        );
        assert!(seq(&[2, 2]).lay_off_multigraphical(0).is_err());
        assert!(seq(&[2, 2]).lay_off_multigraphical(2).is_err());
    }

    #[test]
    fn parse_and_display() {
        let d: DegreeSequence = "2, 3 2,3".parse().unwrap();
        assert_eq!(d.to_string(), "3 3 2 2");
        assert!("2 x 2".parse::<DegreeSequence>().is_err());
        assert_eq!("".parse::<DegreeSequence>().unwrap().len(), 0);
    }

    #[test]
    fn in_place_primitives_keep_invariants() {
        let mut d = seq(&[5, 4, 4, 3, 3, 3, 2]);
        d.decrement_first(4).unwrap();
        assert_eq!(d.entries(), vec![4, 3, 3, 3, 3, 2, 2]);
        d.replace_one(4, 2).unwrap();
        assert_eq!(d.entries(), vec![3, 3, 3, 3, 2, 2, 2]);
        d.push(1);
        d.push(6);
        assert_eq!(d.entries(), vec![6, 3, 3, 3, 3, 2, 2, 2, 1]);
        d.remove_value(3, 3).unwrap();
        assert_eq!(d.pop_last(), Some(1));
        assert_eq!(d.pop_first(), Some(6));
        assert_eq!(d.entries(), vec![3, 2, 2, 2]);
        assert!(d.check_invariants());
        assert_eq!(d.get(0), Some(3));
        assert_eq!(d.get_from_end(3), Some(3));
        assert_eq!(d.count_of(2), 3);
    }

    #[test]
    fn erdos_gallai_matches_brute_force_up_to_six() {
        for n in 0..=6 {
            for values in all_sequences(n, n.saturating_sub(1) as u32 + 1) {
                let even = values.iter().sum::<u32>() % 2 == 0;
                let expected = even && brute_force_graphical(&values);
                assert_eq!(seq(&values).is_graphical(), expected, "{values:?}");
            }
        }
    }

    #[test]
    fn residuals_stay_graphical_up_to_eight() {
        for n in 2..=8 {
            for values in all_sequences(n, n as u32 - 1) {
                let d = seq(&values);
                if !d.is_graphical() {
                    continue;
                }
                assert!(d.is_multigraphical(), "{values:?}");
                if d.min().unwrap() >= 1 {
                    let r = d.lay_off_graphical(n - 1).unwrap();
                    assert!(r.is_graphical(), "{values:?} -> {r:?}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn bucket_round_trip(values in proptest::collection::vec(0u32..12, 0..40)) {
            let d = seq(&values);
            prop_assert!(d.check_invariants());
            prop_assert_eq!(DegreeSequence::normalize(&d.entries()), d.clone());
            prop_assert_eq!(d.sum(), values.iter().map(|&v| v as u64).sum::<u64>());
        }

        #[test]
        fn multigraphical_lay_off_preserves_multigraphicality(
            values in proptest::collection::vec(1u32..9, 2..12),
            pick in 1usize..12,
        ) {
            let d = seq(&values);
            prop_assume!(d.is_multigraphical());
            let j = 1 + pick % (d.len() - 1);
            let r = d.lay_off_multigraphical(j).unwrap();
            prop_assert!(r.check_invariants());
            prop_assert!(r.is_multigraphical());
        }

        #[test]
        fn decrement_first_matches_sorted_vec(
            values in proptest::collection::vec(1u32..9, 1..20),
            k in 0usize..20,
        ) {
            let mut d = seq(&values);
            let k = k.min(d.len());
            let mut expected = d.entries();
            for e in expected.iter_mut().take(k) {
                *e -= 1;
            }
            expected.sort_unstable_by(|a, b| b.cmp(a));
            d.decrement_first(k).unwrap();
            prop_assert!(d.check_invariants());
            prop_assert_eq!(d.entries(), expected);
        }
    }
}
