//! Connecting an arbitrary realization with degree-preserving 2-switches.

use std::collections::VecDeque;

use crate::graphstore::LabeledMultigraph;

use super::RealizeError;

struct Component {
    spare: Vec<u32>,
    tree_edge: Option<u32>,
}

/// BFS forest: per component, its non-forest edges and one forest edge.
fn components(g: &LabeledMultigraph) -> Vec<Component> {
    let n = g.vertex_count();
    let mut comp = vec![u32::MAX; n];
    let mut in_forest = vec![false; g.edge_id_bound()];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n as u32 {
        if comp[s as usize] != u32::MAX {
            continue;
        }
        let c = out.len() as u32;
        comp[s as usize] = c;
        queue.push_back(s);
        let mut tree_edge = None;
        while let Some(v) = queue.pop_front() {
            for &e in g.incident(v) {
                let w = g.edge(e).expect("live incident edge").other(v);
                if comp[w as usize] == u32::MAX {
                    comp[w as usize] = c;
                    in_forest[e as usize] = true;
                    tree_edge.get_or_insert(e);
                    queue.push_back(w);
                }
            }
        }
        out.push(Component {
            spare: Vec::new(),
            tree_edge,
        });
    }
    for (id, e) in g.edges() {
        if !in_forest[id as usize] {
            out[comp[e.u as usize] as usize].spare.push(id);
        }
    }
    out
}

/// Makes `g` connected without changing any degree. Requires at least
/// `n - 1` edges and no isolated vertex (unless `n <= 1`).
pub(crate) fn connect(g: &mut LabeledMultigraph) -> Result<(), RealizeError> {
    let mut comps = components(g);
    if comps.len() <= 1 {
        return Ok(());
    }
    comps.sort_by_key(|c| std::cmp::Reverse(c.spare.len()));
    let mut iter = comps.into_iter();
    let mut big = iter.next().expect("at least two components");
    for mut other in iter {
        let internal =
            |what: &str| RealizeError::Internal(format!("cannot connect components: {what}"));
        // A non-forest edge ab from one side and a forest edge cd from the
        // other; ab, cd become ac, bd.
        let (ab, cd) = if let Some(ab) = big.spare.pop() {
            (
                ab,
                other.tree_edge.ok_or_else(|| internal("isolated vertex"))?,
            )
        } else {
            let ab = other.spare.pop().ok_or_else(|| internal("too few edges"))?;
            (
                ab,
                big.tree_edge.ok_or_else(|| internal("isolated vertex"))?,
            )
        };
        let (a, b) = ends(g, ab);
        let (c, _) = ends(g, cd);
        // ab becomes ac and cd becomes bd; the two sides lie in different
        // components, so neither can duplicate an existing edge.
        g.reroute_edge(ab, b, c)
            .map_err(|e| internal(&e.to_string()))?;
        g.reroute_edge(cd, c, b)
            .map_err(|e| internal(&e.to_string()))?;
        debug_assert_eq!(ends(g, ab), (a, c));
        big.tree_edge = Some(ab);
        big.spare.append(&mut other.spare);
    }
    Ok(())
}

fn ends(g: &LabeledMultigraph, e: u32) -> (u32, u32) {
    let edge = g.edge(e).expect("live edge");
    (edge.u, edge.v)
}

/// Edge ids of a BFS spanning tree rooted at 0, or `None` if disconnected.
pub(crate) fn bfs_tree(g: &LabeledMultigraph) -> Option<Vec<u32>> {
    let n = g.vertex_count();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut seen = vec![false; n];
    let mut tree = Vec::with_capacity(n - 1);
    let mut queue = VecDeque::from([0u32]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &e in g.incident(v) {
            let w = g.edge(e)?.other(v);
            if !seen[w as usize] {
                seen[w as usize] = true;
                tree.push(e);
                queue.push_back(w);
            }
        }
    }
    (tree.len() + 1 == n).then_some(tree)
}
