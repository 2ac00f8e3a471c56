//! 3/2-approximation of the diameter over a separator tree.
//!
//! Every tree node `t` gets an augmented graph `H(t)`: the spanner induced on
//! `V(t)` plus a clique on the boundary `B(t)` whose weights are exact spanner
//! distances, handed down from the parent. Shortest paths inside `H(t)` then
//! equal shortest paths in the whole spanner.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{components, sssp, Adjacency, SpannerGraph};
use crate::separator::SeparatorTree;

/// `B(root) = ∅` and `B(t) = (S(P(t)) ∪ B(P(t))) ∩ V(t)`, each sorted.
pub fn boundary_sets(tree: &SeparatorTree) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); tree.nodes.len()];
    // preorder: parents come first
    for (id, t) in tree.nodes.iter().enumerate() {
        if let Some(p) = t.parent {
            let parent = &tree.nodes[p];
            let mut b: Vec<usize> = parent
                .separator
                .iter()
                .chain(&out[p])
                .copied()
                .filter(|v| t.vertices.binary_search(v).is_ok())
                .collect();
            b.sort_unstable();
            b.dedup();
            out[id] = b;
        }
    }
    out
}

/// Exact spanner distances between boundary vertices, keyed by `(min, max)`.
/// Infinite entries mark pairs in different components.
pub type BoundaryWeights = HashMap<(usize, usize), f64>;

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// `H(t)` over local indices `0..vertices.len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedGraph {
    /// Global vertex of each local index, sorted.
    pub vertices: Vec<usize>,
    pub adj: Adjacency,
    pub clique_edges: usize,
}

impl AugmentedGraph {
    pub fn local(&self, v: usize) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn distances_from(&self, v: usize) -> Option<Vec<f64>> {
        self.local(v).map(|s| sssp(&self.adj, s))
    }
}

/// Induced spanner edges on `V(t)` plus the boundary clique of `t` with
/// weights from `weights`; a missing pair is an induction order error.
pub fn build_augmented_graph(
    spanner_adj: &Adjacency,
    tree: &SeparatorTree,
    node: usize,
    boundary: &[usize],
    weights: &BoundaryWeights,
) -> Result<AugmentedGraph> {
    let vertices = tree.nodes[node].vertices.clone();
    let mut adj: Adjacency = vertices
        .iter()
        .map(|&v| {
            spanner_adj[v].iter().filter_map(|&(w, wt)| vertices.binary_search(&w).ok().map(|l| (l, wt))).collect()
        })
        .collect();
    let mut clique_edges = 0;
    for (i, &a) in boundary.iter().enumerate() {
        for &b in &boundary[i + 1..] {
            let w = *weights.get(&key(a, b)).ok_or(Error::InductionOrderViolation(a, b))?;
            if w.is_finite() {
                let (la, lb) = (vertices.binary_search(&a).unwrap(), vertices.binary_search(&b).unwrap());
                adj[la].push((lb, w));
                adj[lb].push((la, w));
                clique_edges += 1;
            }
        }
    }
    Ok(AugmentedGraph { vertices, adj, clique_edges })
}

/// Top-down pass over the tree. `visit` receives each node with `H(t)` and
/// the distance rows from `S(t)` (empty at leaves).
fn walk(spanner: &SpannerGraph, tree: &SeparatorTree, mut visit: impl FnMut(usize, &AugmentedGraph, &[Vec<f64>])) -> Result<()> {
    let adj = spanner.adjacency();
    let boundary = boundary_sets(tree);
    let mut pending: Vec<Option<BoundaryWeights>> = vec![None; tree.nodes.len()];
    pending[0] = Some(BoundaryWeights::new());
    for (id, t) in tree.nodes.iter().enumerate() {
        let weights = pending[id].take().unwrap_or_default();
        let h = build_augmented_graph(&adj, tree, id, &boundary[id], &weights)?;
        let rows: Vec<Vec<f64>> = t.separator.iter().map(|&s| h.distances_from(s).unwrap()).collect();
        visit(id, &h, &rows);
        for c in t.children.into_iter().flatten() {
            let bc = &boundary[c];
            let mut w = BoundaryWeights::new();
            for (i, &a) in bc.iter().enumerate() {
                for &b in &bc[i + 1..] {
                    let d = match (t.separator.binary_search(&a), t.separator.binary_search(&b)) {
                        (Ok(sa), _) => rows[sa][h.local(b).unwrap()],
                        (_, Ok(sb)) => rows[sb][h.local(a).unwrap()],
                        _ => *weights.get(&key(a, b)).ok_or(Error::InductionOrderViolation(a, b))?,
                    };
                    w.insert(key(a, b), d);
                }
            }
            pending[c] = Some(w);
        }
    }
    Ok(())
}

/// Augmented graphs of every node, in preorder.
pub fn augmented_graphs(spanner: &SpannerGraph, tree: &SeparatorTree) -> Result<Vec<AugmentedGraph>> {
    let mut out = Vec::with_capacity(tree.nodes.len());
    walk(spanner, tree, |_, h, _| out.push(h.clone()))?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiameterReport {
    /// Largest estimate over all components.
    pub dia: f64,
    /// Estimate per connected component, indexed by component label.
    pub per_component: Vec<f64>,
}

/// At every internal node: the farthest distance seen from `S(t)`, and the
/// farthest distance from the vertex `z` most remote from `S(t)` into the
/// other child. Leaves are solved exactly. Disconnected spanners are an error
/// unless `per_component` is set, in which case `z` is chosen per component.
pub fn estimate_diameter(spanner: &SpannerGraph, tree: &SeparatorTree, per_component: bool) -> Result<DiameterReport> {
    let comp = components(spanner.n, &spanner.adjacency());
    let count = comp.iter().max().map_or(0, |&c| c + 1);
    if count > 1 && !per_component {
        return Err(Error::DisconnectedGraph);
    }
    let mut est = vec![0.0f64; count];
    walk(spanner, tree, |id, h, rows| {
        let t = &tree.nodes[id];
        let mut note = |from: usize, d: &[f64]| {
            let far = d.iter().copied().filter(|x| x.is_finite()).fold(0.0, f64::max);
            let c = comp[h.vertices[from]];
            est[c] = est[c].max(far);
        };
        let Some([c0, c1]) = t.children else {
            for s in 0..h.vertices.len() {
                note(s, &sssp(&h.adj, s));
            }
            return;
        };
        for (row, &s) in rows.iter().zip(&t.separator) {
            note(h.local(s).unwrap(), row);
        }
        // z per component: largest distance to the separator, then smallest index
        let mut z: HashMap<usize, (f64, usize, usize)> = HashMap::new();
        for (j, &c) in [c0, c1].iter().enumerate() {
            for &v in &tree.nodes[c].vertices {
                if t.separator.binary_search(&v).is_ok() {
                    continue;
                }
                let l = h.local(v).unwrap();
                let clo = rows.iter().map(|r| r[l]).fold(f64::INFINITY, f64::min);
                let e = z.entry(comp[v]).or_insert((clo, v, j));
                if clo > e.0 || (clo == e.0 && v < e.1) {
                    *e = (clo, v, j);
                }
            }
        }
        let mut zs: Vec<_> = z.into_values().collect();
        zs.sort_by_key(|e| e.1);
        for (_, v, j) in zs {
            let d = h.distances_from(v).unwrap();
            let other = &tree.nodes[[c0, c1][1 - j]].vertices;
            let far = other.iter().map(|&w| d[h.local(w).unwrap()]).filter(|x| x.is_finite()).fold(0.0, f64::max);
            est[comp[v]] = est[comp[v]].max(far);
        }
    })?;
    let dia = est.iter().copied().fold(0.0, f64::max);
    Ok(DiameterReport { dia, per_component: est })
}

/// Largest relative gap between `d_H(t)(u, v)` and `d_G(u, v)` over sampled
/// pairs: for every node, up to `sources` vertices spread over `V(t)`, each
/// against every vertex of `V(t)`.
pub fn check_distance_preservation(spanner: &SpannerGraph, tree: &SeparatorTree, sources: usize) -> Result<f64> {
    let adj = spanner.adjacency();
    let mut exact: HashMap<usize, Vec<f64>> = HashMap::new();
    let mut worst: f64 = 0.0;
    walk(spanner, tree, |_, h, _| {
        let n = h.vertices.len();
        let step = n.div_ceil(sources.max(1)).max(1);
        for s in (0..n).step_by(step) {
            let g = exact.entry(h.vertices[s]).or_insert_with(|| sssp(&adj, h.vertices[s]));
            let d = sssp(&h.adj, s);
            for (l, &v) in h.vertices.iter().enumerate() {
                let (a, b) = (d[l], g[v]);
                let gap = if a == b { 0.0 } else if a.is_finite() && b.is_finite() { (a - b).abs() / b.max(f64::MIN_POSITIVE) } else { f64::INFINITY };
                worst = worst.max(gap);
            }
        }
    })?;
    Ok(worst)
}
