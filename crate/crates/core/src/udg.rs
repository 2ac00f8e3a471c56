//! Spanner for unit disk graphs.
//!
//! Every interesting node links its representative to the representatives of
//! its close pseudo-neighborhood, one edge per cone. Roots additionally get
//! one far edge (a bichromatic closest pair) to every root in the annulus
//! `(2 - √2ε, 2 + √2ε]` around them whose points reach theirs.

use std::collections::{BTreeSet, HashMap};
use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::geom::{cone_index, Epsilon, Instance, Point};
use crate::graph::{Edge, SpannerGraph, FAR_EDGE_TAG};
use crate::kdtree::KdTree;
use crate::quadforest::{build_compressed_forest, CompressedForest, NodeId};

/// Keep the closest candidate per cone around `rep`, ties to the smaller index.
/// Output is ordered by cone.
pub fn sparsify_by_cones(inst: &Instance, rep: usize, candidates: &[usize], eps: Epsilon) -> Result<Vec<usize>> {
    let apex = inst.point(rep);
    let mut best: Vec<Option<(f64, usize)>> = vec![None; eps.inverse() as usize];
    for &c in candidates {
        let p = inst.point(c);
        let k = cone_index(apex, p, eps)? as usize;
        let d = apex.dist2(&p);
        match best[k] {
            Some((bd, bi)) if bd < d || (bd == d && bi <= c) => {}
            _ => best[k] = Some((d, c)),
        }
    }
    Ok(best.into_iter().flatten().map(|(_, c)| c).collect())
}

/// Closest pair between two point sets: `(a, b, distance)`, minimizing the
/// distance and then `(a, b)` lexicographically.
pub fn bichromatic_closest_pair(points: &[Point], a: &[usize], b: &[usize]) -> Result<(usize, usize, f64)> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let swap = a.len() > b.len();
    let (query, indexed) = if swap { (b, a) } else { (a, b) };
    let tree = KdTree::from_indices(points, indexed);
    let mut best: Option<(f64, usize, usize)> = None;
    for &q in query {
        let (d2, i) = tree.nearest(points[q]).expect("indexed side is nonempty");
        let cand = if swap { (d2, i, q) } else { (d2, q, i) };
        let better = match best {
            None => true,
            Some(old) => cand.0 < old.0 || (cand.0 == old.0 && (cand.1, cand.2) < (old.1, old.2)),
        };
        if better {
            best = Some(cand);
        }
    }
    let (d2, x, y) = best.unwrap();
    Ok((x, y, d2.sqrt()))
}

/// Roots hashed by the integer coordinates of their ε-grid cell.
struct RootGrid {
    cells: HashMap<(i64, i64), NodeId>,
    cell: f64,
}

impl RootGrid {
    fn new(forest: &CompressedForest, inst: &Instance) -> Self {
        let cell = forest.eps.value();
        let cells = forest
            .roots
            .iter()
            .map(|&r| {
                let c = forest.node_square(inst, r).corner();
                (((c.x / cell).round() as i64, (c.y / cell).round() as i64), r)
            })
            .collect();
        RootGrid { cells, cell }
    }

    /// Roots other than `r` whose square centers lie within `(lo, hi]` of `r`'s,
    /// in increasing id order.
    fn around(&self, forest: &CompressedForest, inst: &Instance, r: NodeId, lo: f64, hi: f64) -> Vec<NodeId> {
        let c = forest.node_square(inst, r).corner();
        let (ci, cj) = ((c.x / self.cell).round() as i64, (c.y / self.cell).round() as i64);
        let reach = (hi / self.cell).ceil() as i64;
        let mut out = Vec::new();
        for di in -reach..=reach {
            for dj in -reach..=reach {
                if let Some(&o) = self.cells.get(&(ci + di, cj + dj)) {
                    let d = ((di * di + dj * dj) as f64).sqrt() * self.cell;
                    if o != r && d > lo && d <= hi {
                        out.push(o);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Close pseudo-neighborhood of every node of a unit-disk forest.
///
/// Roots see the roots within center distance `2 - √2ε`. A child starts from
/// its parent's set plus the parent and walks down: a node is opened while it
/// branches above the child's depth and its representative is within
/// `(1 + √2ε)·2^-d_b`; a node where the walk stops is kept if its
/// representative is within `(1 + √2ε)·2^-d_t` of the child's.
pub fn close_pseudo_neighborhoods(forest: &CompressedForest, inst: &Instance) -> Vec<Vec<NodeId>> {
    let eps = forest.eps.value();
    let slack = SQRT_2 * eps;
    let grid = RootGrid::new(forest, inst);
    let mut out: Vec<Vec<NodeId>> = vec![Vec::new(); forest.len()];
    for &r in &forest.roots {
        out[r] = grid.around(forest, inst, r, f64::NEG_INFINITY, 2.0 - slack);
    }
    let mut stack = Vec::new();
    for t in forest.preorder() {
        let Some(p) = forest.node(t).parent else { continue };
        let dt = forest.node(t).depth;
        let pt = inst.point(forest.node(t).rep);
        let mut found = BTreeSet::new();
        stack.clear();
        stack.extend(out[p].iter().cloned());
        stack.push(p);
        while let Some(b) = stack.pop() {
            if b == t {
                continue;
            }
            let nb = forest.node(b);
            let d = inst.point(nb.rep).dist(&pt);
            match nb.split_depth {
                Some(s) if s < dt => {
                    if d <= (1.0 + slack) * (-(nb.depth as f64)).exp2() {
                        stack.extend(nb.children.iter().cloned());
                    }
                }
                _ => {
                    if nb.depth <= dt && d <= (1.0 + slack) * (-(dt as f64)).exp2() {
                        found.insert(b);
                    }
                }
            }
        }
        out[t] = found.into_iter().collect();
    }
    out
}

/// One bichromatic closest pair per pair of roots in each other's annulus,
/// kept when the two disks intersect.
pub fn far_neighborhood_edges(forest: &CompressedForest, inst: &Instance) -> Vec<Edge> {
    let slack = SQRT_2 * forest.eps.value();
    let grid = RootGrid::new(forest, inst);
    let mut edges = Vec::new();
    for &r in &forest.roots {
        for o in grid.around(forest, inst, r, 2.0 - slack, 2.0 + slack) {
            if o < r {
                continue;
            }
            let (a, b, _) = bichromatic_closest_pair(inst.points(), forest.members(r), forest.members(o))
                .expect("roots are nonempty");
            if inst.disks_intersect(a, b) {
                edges.push(SpannerGraph::geometric_edge(inst, a, b, FAR_EDGE_TAG));
            }
        }
    }
    edges
}

/// Spanner plus the structures it was built from.
#[derive(Debug, Clone)]
pub struct UdgBuild {
    pub spanner: SpannerGraph,
    pub forest: CompressedForest,
    pub neighborhoods: Vec<Vec<NodeId>>,
    /// Close edges emitted by each node before deduplication.
    pub close_per_node: Vec<usize>,
    pub far_edges: usize,
}

fn check_unit(inst: &Instance) -> Result<()> {
    let r0 = inst.radius(0);
    match inst.radii().iter().position(|&r| r != r0) {
        Some(i) => Err(Error::NotUnitInstance(i)),
        None => Ok(()),
    }
}

pub fn build_udg_spanner(inst: &Instance, eps: Epsilon) -> Result<SpannerGraph> {
    Ok(build_udg_detailed(inst, eps)?.spanner)
}

/// Unit-disk spanner of `inst`. All radii must be equal; the construction
/// runs on the normalized copy and weights are distances in `inst`.
pub fn build_udg_detailed(inst: &Instance, eps: Epsilon) -> Result<UdgBuild> {
    check_unit(inst)?;
    let norm = inst.normalized()?;
    let forest = build_compressed_forest(&norm, eps)?;
    let neighborhoods = close_pseudo_neighborhoods(&forest, &norm);
    let mut edges = Vec::new();
    let mut close_per_node = vec![0; forest.len()];
    for t in forest.preorder() {
        let rt = forest.node(t).rep;
        let reps: Vec<usize> = neighborhoods[t].iter().map(|&b| forest.node(b).rep).filter(|&r| r != rt).collect();
        for rb in sparsify_by_cones(&norm, rt, &reps, eps)? {
            if norm.disks_intersect(rt, rb) {
                edges.push(SpannerGraph::geometric_edge(inst, rt, rb, forest.node(t).depth as i32));
                close_per_node[t] += 1;
            }
        }
    }
    let far = far_neighborhood_edges(&forest, &norm);
    let far_edges = far.len();
    edges.extend(far.into_iter().map(|e| SpannerGraph::geometric_edge(inst, e.u, e.v, e.depth_tag)));
    Ok(UdgBuild {
        spanner: SpannerGraph::from_edges(inst.len(), edges),
        forest,
        neighborhoods,
        close_per_node,
        far_edges,
    })
}
