//! Spanner for disk graphs with arbitrary radii.
//!
//! A disk of level `l` (radius in `[2^-l, 2^-l+1)`) joins the quad-dissection
//! at depth `l`. Close edges are cone-sparsified exactly as for unit disks, at
//! every node's depth. Far edges leave a root `t` through ordered buckets:
//! `bucket([α, β], t)` lists the square of `t` and of each of its ancestors,
//! every one translated by `(εα·2^-d, εβ·2^-d)` at its own depth `d`. Only the
//! shortest edge per bucket is kept.

use std::collections::BTreeMap;
use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::geom::{Epsilon, Instance, Point, Square};
use crate::graph::{Edge, SpannerGraph};
use crate::kdtree::KdTree;
use crate::quadforest::{build_compressed_forest, CompressedForest, NodeId};
use crate::udg::sparsify_by_cones;

/// Level `l` with `2^-l <= r < 2^-l+1`.
pub fn disk_level(r: f64) -> Result<u32> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidRadius { index: 0, radius: r });
    }
    if r > 1.0 {
        return Err(Error::NotNormalized(r));
    }
    let mut l = 0u32;
    while (-(l as f64)).exp2() > r {
        l += 1;
    }
    Ok(l)
}

/// Shift indices allowed for buckets: both coordinates within `2ε⁻¹` in
/// absolute value and at least one of them at `(2ε)⁻¹` or beyond.
pub fn valid_shift(alpha: i64, beta: i64, eps: Epsilon) -> bool {
    let inv = eps.inverse() as i64;
    let (a, b) = (alpha.abs(), beta.abs());
    a <= 2 * inv && b <= 2 * inv && a.max(b) * 2 >= inv
}

/// Translate `sq`, a square of depth `depth`, by `(εα·2^-depth, εβ·2^-depth)`.
pub fn shift_square(sq: Square, depth: u32, alpha: i64, beta: i64, eps: Epsilon) -> Result<Square> {
    if !valid_shift(alpha, beta, eps) {
        return Err(Error::InvalidShift { alpha, beta });
    }
    let step = eps.value() * (-(depth as f64)).exp2();
    let c = Point::new(sq.center.x + alpha as f64 * step, sq.center.y + beta as f64 * step);
    Ok(Square { center: c, side: sq.side })
}

/// Where a far edge lands: shift `(alpha, beta)` of the ancestor `position`
/// levels above `root`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BucketAssignment {
    pub root: NodeId,
    pub alpha: i64,
    pub beta: i64,
    pub position: u32,
    pub square: Square,
}

/// Disk-graph forest together with the deepest root above every point.
#[derive(Debug, Clone)]
pub struct DgForest {
    pub forest: CompressedForest,
    /// Deepest root whose range holds each point, indexed by point.
    pub root_of: Vec<NodeId>,
}

impl DgForest {
    pub fn build(inst: &Instance, eps: Epsilon) -> Result<Self> {
        let base = build_compressed_forest(inst, eps)?;
        let forest = base.split_roots_by_radius(inst)?;
        let mut root_of = vec![usize::MAX; inst.len()];
        // nested roots come later in preorder, so they overwrite their containers
        for &r in &forest.roots {
            for &p in forest.members(r) {
                root_of[p] = r;
            }
        }
        Ok(DgForest { forest, root_of })
    }

    /// Γ ancestor square `position` levels above `root`, or `None` above depth 0.
    pub fn ancestor_square(&self, inst: &Instance, root: NodeId, position: u32) -> Option<Square> {
        let n = self.forest.node(root);
        let depth = n.depth.checked_sub(position)?;
        Some(self.forest.square_at(inst.point(n.rep), depth))
    }

    fn in_root(&self, root: NodeId, p: usize, pos: &[usize]) -> bool {
        let n = self.forest.node(root);
        n.lo <= pos[p] && pos[p] < n.hi
    }
}

/// Membership oracle: is `p` inside `S([alpha, beta], ancestor_position(root))`?
pub fn point_in_shift(
    dgf: &DgForest,
    inst: &Instance,
    p: Point,
    root: NodeId,
    alpha: i64,
    beta: i64,
    position: u32,
) -> bool {
    let eps = dgf.forest.eps;
    let Some(anc) = dgf.ancestor_square(inst, root, position) else {
        return false;
    };
    let depth = dgf.forest.node(root).depth - position;
    match shift_square(anc, depth, alpha, beta, eps) {
        Ok(sq) => sq.contains(p),
        Err(_) => false,
    }
}

/// Every `(alpha, beta, position)` whose shifted square holds `p`, in scan order.
pub fn scan_shifts(dgf: &DgForest, inst: &Instance, p: Point, root: NodeId) -> Vec<(i64, i64, u32)> {
    let inv = dgf.forest.eps.inverse() as i64;
    let mut out = Vec::new();
    for position in 0..=dgf.forest.node(root).depth {
        for alpha in -2 * inv..=2 * inv {
            for beta in -2 * inv..=2 * inv {
                if valid_shift(alpha, beta, dgf.forest.eps) && point_in_shift(dgf, inst, p, root, alpha, beta, position) {
                    out.push((alpha, beta, position));
                }
            }
        }
    }
    out
}

/// Position whose distance class holds `dist` for a root at `depth`:
/// the `j` with `2^(j-depth) < dist <= 2^(j-depth+1)`.
fn distance_class(dist: f64, depth: u32) -> u32 {
    let mut j = 0u32;
    while dist > ((j as f64) - depth as f64 + 1.0).exp2() {
        j += 1;
    }
    j
}

/// Bucket of the far edge `(u, v)` leaving `root`: the position comes from the
/// distance class of the edge, the shift from the offset of `v` against that
/// ancestor's corner. The returned square contains `v`.
pub fn assign_edge_to_bucket(
    dgf: &DgForest,
    inst: &Instance,
    root: NodeId,
    u: usize,
    v: usize,
) -> Result<BucketAssignment> {
    let eps = dgf.forest.eps;
    let depth = dgf.forest.node(root).depth;
    let pv = inst.point(v);
    let dist = inst.point(u).dist(&pv);
    if dist <= (-(depth as f64)).exp2() {
        return Err(Error::NotFarEdge(u, v));
    }
    let position = distance_class(dist, depth);
    let at = |alpha: i64, beta: i64, position: u32| -> Option<BucketAssignment> {
        let anc = dgf.ancestor_square(inst, root, position)?;
        let sq = shift_square(anc, depth - position, alpha, beta, eps).ok()?;
        sq.contains(pv).then_some(BucketAssignment { root, alpha, beta, position, square: sq })
    };
    if let Some(anc) = dgf.ancestor_square(inst, root, position) {
        let corner = anc.corner();
        let a0 = ((pv.x - corner.x) / anc.side).floor() as i64;
        let b0 = ((pv.y - corner.y) / anc.side).floor() as i64;
        // rounding can land one cell off
        for (da, db) in [(0, 0), (-1, 0), (1, 0), (0, -1), (0, 1), (-1, -1), (-1, 1), (1, -1), (1, 1)] {
            if let Some(b) = at(a0 + da, b0 + db, position) {
                return Ok(b);
            }
        }
    }
    match scan_shifts(dgf, inst, pv, root).first() {
        Some(&(alpha, beta, position)) => Ok(at(alpha, beta, position).expect("scanned shift holds v")),
        None => Err(Error::InvalidShift {
            alpha: ((pv.x - inst.point(u).x) / eps.value()).round() as i64,
            beta: ((pv.y - inst.point(u).y) / eps.value()).round() as i64,
        }),
    }
}

/// Key of a bucket: `(root, alpha, beta)`.
pub type BucketKey = (NodeId, i64, i64);

/// Shortest edge found in a bucket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BucketEdge {
    pub u: usize,
    pub v: usize,
    pub dist: f64,
    pub position: u32,
}

/// Per-bucket minima plus bookkeeping used by verification.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FarBuckets {
    pub minima: BTreeMap<BucketKey, BucketEdge>,
    /// Largest position used in any bucket.
    pub max_position: u32,
    /// Number of far edges routed into buckets.
    pub routed: usize,
}

impl FarBuckets {
    fn offer(&mut self, b: &BucketAssignment, u: usize, v: usize, dist: f64) {
        self.routed += 1;
        self.max_position = self.max_position.max(b.position);
        let cand = BucketEdge { u, v, dist, position: b.position };
        let key = (b.root, b.alpha, b.beta);
        let better = |old: &BucketEdge| {
            let k = |e: &BucketEdge| (e.u.min(e.v), e.u.max(e.v));
            cand.dist < old.dist || (cand.dist == old.dist && k(&cand) < k(old))
        };
        match self.minima.get(&key) {
            Some(old) if !better(old) => {}
            _ => {
                self.minima.insert(key, cand);
            }
        }
    }

    pub fn edges(&self, inst: &Instance) -> Vec<Edge> {
        self.minima
            .values()
            .map(|e| SpannerGraph::geometric_edge(inst, e.u, e.v, crate::graph::FAR_EDGE_TAG))
            .collect()
    }
}

/// Orientations of `(a, b)` to route: smaller radius first, both when equal.
fn orientations(inst: &Instance, a: usize, b: usize) -> impl Iterator<Item = (usize, usize)> {
    let (ra, rb) = (inst.radius(a), inst.radius(b));
    let first = if ra <= rb { Some((a, b)) } else { None };
    let second = if rb <= ra { Some((b, a)) } else { None };
    first.into_iter().chain(second)
}

fn route(dgf: &DgForest, inst: &Instance, pos: &[usize], u: usize, v: usize, out: &mut FarBuckets) -> Result<()> {
    let root = dgf.root_of[u];
    if dgf.in_root(root, v, pos) {
        return Ok(());
    }
    match assign_edge_to_bucket(dgf, inst, root, u, v) {
        Ok(b) => {
            out.offer(&b, u, v, inst.point(u).dist(&inst.point(v)));
            Ok(())
        }
        Err(Error::NotFarEdge(..)) => Ok(()),
        Err(e) => Err(e),
    }
}

/// Far edges from the full edge list of the disk graph.
pub fn far_neighborhood_buckets(dgf: &DgForest, inst: &Instance, graph_edges: &[Edge]) -> Result<FarBuckets> {
    let pos = dgf.forest.positions();
    let mut out = FarBuckets::default();
    for e in graph_edges {
        for (u, v) in orientations(inst, e.u, e.v) {
            route(dgf, inst, &pos, u, v, &mut out)?;
        }
    }
    Ok(out)
}

/// Far edges without a materialized edge list: every root queries a spatial
/// index for disks reaching its members.
pub fn far_buckets_by_range(dgf: &DgForest, inst: &Instance) -> Result<FarBuckets> {
    let pos = dgf.forest.positions();
    let all: Vec<usize> = (0..inst.len()).collect();
    let tree = KdTree::from_indices(inst.points(), &all);
    let rmax = inst.max_radius();
    let mut out = FarBuckets::default();
    for &root in &dgf.forest.roots {
        for &u in dgf.forest.members(root) {
            if dgf.root_of[u] != root {
                continue;
            }
            let ru = inst.radius(u);
            for v in tree.within_radius(inst.point(u), ru + rmax) {
                if v == u || inst.radius(v) < ru || !inst.disks_intersect(u, v) {
                    continue;
                }
                route(dgf, inst, &pos, u, v, &mut out)?;
            }
        }
    }
    Ok(out)
}

/// All disk-intersection edges, found through a spatial index.
pub fn intersection_edges(inst: &Instance) -> Vec<Edge> {
    let all: Vec<usize> = (0..inst.len()).collect();
    let tree = KdTree::from_indices(inst.points(), &all);
    let rmax = inst.max_radius();
    let mut edges = Vec::new();
    for u in 0..inst.len() {
        for v in tree.within_radius(inst.point(u), inst.radius(u) + rmax) {
            if v > u && inst.disks_intersect(u, v) {
                edges.push(SpannerGraph::geometric_edge(inst, u, v, 0));
            }
        }
    }
    edges
}

/// Close edges: every node links its representative to the cone-nearest
/// representatives of the nodes around it at its own depth.
pub fn close_edges(dgf: &DgForest, inst: &Instance) -> Result<Vec<Edge>> {
    let forest = &dgf.forest;
    let eps = forest.eps;
    let slack = SQRT_2 * eps.value();
    let mut depths: Vec<u32> = forest.nodes.iter().map(|n| n.depth).collect();
    depths.sort_unstable();
    depths.dedup();

    let mut edges = Vec::new();
    for &d in &depths {
        let covering: Vec<NodeId> = (0..forest.len()).filter(|&id| forest.node(id).covers(d)).collect();
        // the tree is keyed by node id so duplicates of one rep cannot collide
        let items: Vec<(Point, usize)> = covering.iter().map(|&id| (inst.point(forest.node(id).rep), id)).collect();
        let tree = KdTree::new(items);
        let reach = if d == 0 { 2.0 } else { (1.0 + slack) * (-(d as f64)).exp2() };
        for &t in covering.iter().filter(|&&id| forest.node(id).depth == d) {
            let rt = forest.node(t).rep;
            let pt = inst.point(rt);
            let ct = forest.square_at(pt, d).center;
            let mut cands = Vec::new();
            for b in tree.within_radius(pt, reach) {
                if b == t {
                    continue;
                }
                let rb = forest.node(b).rep;
                if d == 0 {
                    let cb = forest.square_at(inst.point(rb), 0).center;
                    if ct.dist(&cb) > 2.0 - slack {
                        continue;
                    }
                }
                cands.push(rb);
            }
            for rb in sparsify_by_cones(inst, rt, &cands, eps)? {
                if inst.disks_intersect(rt, rb) {
                    edges.push(SpannerGraph::geometric_edge(inst, rt, rb, d as i32));
                }
            }
        }
    }
    Ok(edges)
}

/// Diagnostic output of a disk-graph build.
#[derive(Debug, Clone)]
pub struct DgBuild {
    pub spanner: SpannerGraph,
    pub forest: DgForest,
    pub buckets: FarBuckets,
}

/// Disk-graph spanner of `inst`, computed on its normalized copy.
pub fn build_dg_spanner(inst: &Instance, eps: Epsilon) -> Result<SpannerGraph> {
    Ok(build_dg_detailed(inst, eps)?.spanner)
}

pub fn build_dg_detailed(inst: &Instance, eps: Epsilon) -> Result<DgBuild> {
    let norm = inst.normalized()?;
    let dgf = DgForest::build(&norm, eps)?;
    let mut edges = close_edges(&dgf, &norm)?;
    let g = intersection_edges(&norm);
    let buckets = far_neighborhood_buckets(&dgf, &norm, &g)?;
    edges.extend(buckets.edges(&norm));
    let edges = edges.into_iter().map(|e| SpannerGraph::geometric_edge(inst, e.u, e.v, e.depth_tag));
    Ok(DgBuild { spanner: SpannerGraph::from_edges(inst.len(), edges), forest: dgf, buckets })
}
