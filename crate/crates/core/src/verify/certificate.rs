//! Structural checks for certificates.

use crate::graphstore::{Certificate, LabeledMultigraph};

pub fn validate_certificate(g: &LabeledMultigraph, cert: &Certificate) -> bool {
    check_certificate(g, cert).is_ok()
}

/// Checks both trees, the shared-edge set, the central cycle and the matching
/// pairs. Returns a description of the first failure.
pub fn check_certificate(g: &LabeledMultigraph, cert: &Certificate) -> Result<(), String> {
    let bound = g.edge_id_bound();
    let mut in_t1 = vec![false; bound];
    let mut in_t2 = vec![false; bound];
    mark_tree(g, &cert.tree1, &mut in_t1, "tree1")?;
    mark_tree(g, &cert.tree2, &mut in_t2, "tree2")?;
    spanning_tree(g, &cert.tree1).map_err(|e| format!("tree1: {e}"))?;
    spanning_tree(g, &cert.tree2).map_err(|e| format!("tree2: {e}"))?;

    let mut shared: Vec<u32> = cert.shared.clone();
    shared.sort_unstable();
    if shared.windows(2).any(|w| w[0] == w[1]) {
        return Err("shared set repeats an edge".into());
    }
    let mut expected: Vec<u32> = cert
        .tree1
        .iter()
        .copied()
        .filter(|&e| in_t2[e as usize])
        .collect();
    expected.sort_unstable();
    if shared != expected {
        return Err("shared set differs from the intersection of the trees".into());
    }
    if shared.len() > 2 {
        return Err(format!("{} shared edges", shared.len()));
    }

    let mut on_cycle = vec![false; bound];
    match cert.central_cycle {
        None if shared.len() == 2 => {
            return Err("two shared edges but no central cycle".into());
        }
        None => {}
        Some(cycle) => {
            if shared.len() != 2 {
                return Err("central cycle present but the trees do not share two edges".into());
            }
            let n = g.vertex_count() as u32;
            if cycle.iter().any(|&v| v >= n) {
                return Err("central cycle vertex out of range".into());
            }
            let mut distinct = cycle;
            distinct.sort_unstable();
            if distinct.windows(2).any(|w| w[0] == w[1]) {
                return Err("central cycle repeats a vertex".into());
            }
            for i in 0..4 {
                let (a, b) = (cycle[i], cycle[(i + 1) % 4]);
                let edges = edges_between(g, a, b);
                if edges.len() != 1 {
                    return Err(format!(
                        "cycle edge {a}-{b} has multiplicity {}",
                        edges.len()
                    ));
                }
                on_cycle[edges[0] as usize] = true;
            }
            for (a, b) in [(cycle[0], cycle[2]), (cycle[1], cycle[3])] {
                if !edges_between(g, a, b).is_empty() {
                    return Err(format!("central cycle has chord {a}-{b}"));
                }
            }
            if shared.iter().any(|&e| !on_cycle[e as usize]) {
                return Err("a shared edge is not on the central cycle".into());
            }
        }
    }

    if let Some(pairs) = cert.matching_pairs {
        let mut all = [pairs[0].0, pairs[0].1, pairs[1].0, pairs[1].1];
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err("matching pairs reuse an edge".into());
        }
        for (a, b) in pairs {
            let (ea, eb) = match (g.edge(a), g.edge(b)) {
                (Some(ea), Some(eb)) => (ea, eb),
                _ => return Err("matching pair refers to a missing edge".into()),
            };
            if !in_t1[a as usize] || on_cycle[a as usize] {
                return Err(format!(
                    "matching edge {a} is not a tree1 edge off the cycle"
                ));
            }
            if !in_t2[b as usize] || on_cycle[b as usize] {
                return Err(format!(
                    "matching edge {b} is not a tree2 edge off the cycle"
                ));
            }
            if [ea.u, ea.v].iter().any(|x| *x == eb.u || *x == eb.v) {
                return Err(format!("matching pair {a},{b} shares an endpoint"));
            }
        }
    }
    Ok(())
}

fn mark_tree(
    g: &LabeledMultigraph,
    tree: &[u32],
    mark: &mut [bool],
    name: &str,
) -> Result<(), String> {
    for &e in tree {
        if g.edge(e).is_none() {
            return Err(format!("{name} refers to missing edge {e}"));
        }
        if std::mem::replace(&mut mark[e as usize], true) {
            return Err(format!("{name} lists edge {e} twice"));
        }
    }
    Ok(())
}

/// `n - 1` edges and no cycle, which together mean connected and spanning.
fn spanning_tree(g: &LabeledMultigraph, tree: &[u32]) -> Result<(), String> {
    let n = g.vertex_count();
    if tree.len() != n.saturating_sub(1) {
        return Err(format!("{} edges for {n} vertices", tree.len()));
    }
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    for &e in tree {
        let edge = g.edge(e).expect("checked by mark_tree");
        let (a, b) = (find(&mut parent, edge.u), find(&mut parent, edge.v));
        if a == b {
            return Err(format!("edge {e} closes a cycle"));
        }
        parent[a as usize] = b;
    }
    Ok(())
}

fn edges_between(g: &LabeledMultigraph, a: u32, b: u32) -> Vec<u32> {
    g.incident(a)
        .iter()
        .copied()
        .filter(|&e| g.edge(e).is_some_and(|ed| ed.other(a) == b))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphstore::{Mode, TreeFlags};

    fn graph(n: usize, edges: &[(u32, u32, TreeFlags)]) -> LabeledMultigraph {
        let mut g = LabeledMultigraph::with_vertices(Mode::Simple, n);
        for &(u, v, t) in edges {
            g.add_edge(u, v, t).unwrap();
        }
        g
    }

    fn k4() -> LabeledMultigraph {
        use TreeFlags::{T1, T2};
        graph(
            4,
            &[
                (0, 1, T1),
                (0, 2, T2),
                (0, 3, T2),
                (1, 2, T1),
                (1, 3, T2),
                (2, 3, T1),
            ],
        )
    }

    #[test]
    fn k4_with_disjoint_trees() {
        let g = k4();
        assert_eq!(
            check_certificate(&g, &Certificate::from_graph(&g, None)),
            Ok(())
        );
    }

    #[test]
    fn chord_in_central_cycle_is_rejected() {
        use TreeFlags::{Both, T1, T2};
        let g = graph(
            4,
            &[
                (0, 1, Both),
                (1, 2, T1),
                (2, 3, Both),
                (3, 0, T2),
                (0, 2, TreeFlags::None),
            ],
        );
        let cert = Certificate::from_graph(&g, Some([0, 1, 2, 3]));
        assert!(check_certificate(&g, &cert).unwrap_err().contains("chord"));
        let h = graph(4, &[(0, 1, Both), (1, 2, T1), (2, 3, Both), (3, 0, T2)]);
        assert!(validate_certificate(
            &h,
            &Certificate::from_graph(&h, Some([0, 1, 2, 3]))
        ));
    }

    #[test]
    fn three_shared_edges_are_rejected() {
        use TreeFlags::Both;
        let g = graph(4, &[(0, 1, Both), (1, 2, Both), (2, 3, Both)]);
        let cert = Certificate::from_graph(&g, None);
        assert!(check_certificate(&g, &cert)
            .unwrap_err()
            .contains("3 shared"));
    }

    #[test]
    fn mutations_are_rejected() {
        let g = k4();
        let good = Certificate::from_graph(&g, None);

        let mut dropped = good.clone();
        dropped.tree1.pop();
        assert!(!validate_certificate(&g, &dropped));

        let mut inflated = good.clone();
        inflated.shared.push(0);
        assert!(!validate_certificate(&g, &inflated));

        let mut twice = good.clone();
        twice.tree2.push(twice.tree2[0]);
        assert!(!validate_certificate(&g, &twice));

        let mut cyclic = good.clone();
        // Swap a tree1 edge for another that closes the triangle 0-1-2.
        cyclic.tree1 = vec![0, 1, 3];
        assert!(!validate_certificate(&g, &cyclic));

        let mut cycle_without_sharing = good;
        cycle_without_sharing.central_cycle = Some([0, 1, 2, 3]);
        assert!(!validate_certificate(&g, &cycle_without_sharing));
    }

    #[test]
    fn matching_pairs_are_checked() {
        use TreeFlags::{Both, T1, T2};
        // C4 0-1-2-3 plus pendant paths to make room for off-cycle edges.
        let g = graph(
            8,
            &[
                (0, 1, Both),
                (1, 2, T1),
                (2, 3, Both),
                (3, 0, T2),
                (0, 4, T1),
                (4, 5, T2),
                (1, 5, T1),
                (2, 6, T1),
                (6, 7, T2),
                (3, 7, T1),
                (0, 5, T2),
                (2, 7, T2),
            ],
        );
        let mut cert = Certificate::from_graph(&g, Some([0, 1, 2, 3]));
        assert_eq!(check_certificate(&g, &cert), Ok(()));
        cert.matching_pairs = Some([(4, 8), (7, 5)]);
        assert_eq!(check_certificate(&g, &cert), Ok(()));
        cert.matching_pairs = Some([(4, 5), (7, 8)]);
        assert!(check_certificate(&g, &cert)
            .unwrap_err()
            .contains("shares an endpoint"));
        cert.matching_pairs = Some([(1, 8), (7, 5)]);
        assert!(check_certificate(&g, &cert)
            .unwrap_err()
            .contains("off the cycle"));
    }
}
