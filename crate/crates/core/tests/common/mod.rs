#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tcreal_core::verify;
use tcreal_core::{DegreeSequence, LabeledMultigraph, Mode, Realization};

/// Sorted-degree comparison, independent of the bucket structure.
pub fn degrees_match(g: &LabeledMultigraph, d: &DegreeSequence) -> bool {
    let mut got = g.degrees();
    got.sort_unstable_by(|a, b| b.cmp(a));
    got == d.entries()
}

/// Every output property that a realization must satisfy, as one message.
pub fn audit(d: &DegreeSequence, r: &Realization) -> Result<(), String> {
    let g = &r.graph;
    if !degrees_match(g, d) {
        return Err(format!("degrees {:?} do not realize ({d})", g.degrees()));
    }
    g.validate_report()?;
    verify::check_proper(g, &r.labeling).map_err(|v| format!("not proper: {v}"))?;
    verify::check_simple(g, &r.labeling).map_err(|v| format!("not simple: {v}"))?;
    verify::check_tc(g, &r.labeling).map_err(|v| format!("not TC: {v}"))?;
    verify::check_certificate(g, &r.certificate)?;
    Ok(())
}

/// Degree sequence of a random graph on `n` vertices with about `m` edges.
/// In simple mode repeated pairs are skipped.
pub fn random_sequence(rng: &mut StdRng, n: usize, m: usize, mode: Mode) -> DegreeSequence {
    let mut deg = vec![0u32; n];
    let mut seen = std::collections::HashSet::new();
    if n >= 2 {
        for _ in 0..m {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u == v {
                continue;
            }
            let key = (u.min(v), u.max(v));
            if mode == Mode::Simple && !seen.insert(key) {
                continue;
            }
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    DegreeSequence::normalize(&deg)
}

/// Random sequences that the decision procedure accepts, spread over the
/// boundary (`m = 2n-4`), the tight one-shared range and denser inputs.
pub fn random_realizable(seed: u64, count: usize, max_n: usize, mode: Mode) -> Vec<DegreeSequence> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(1..=max_n);
        let extra = match rng.random_range(0..4) {
            0 => 0,
            1 => rng.random_range(0..4),
            2 => rng.random_range(0..=n),
            _ => rng.random_range(0..=3 * n),
        };
        let m = (2 * n + extra).saturating_sub(4);
        let d = random_sequence(&mut rng, n, m, mode);
        if tcreal_core::check_tc_realizable(&d, mode).realizable {
            out.push(d);
        }
    }
    out
}
