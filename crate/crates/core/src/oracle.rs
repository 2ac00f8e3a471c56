//! Brute-force ground truth used by verification and tests.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geom::{Epsilon, Instance, Point};
use crate::graph::{sssp, sssp_bounded, Adjacency, SpannerGraph};
use crate::quadforest::CompressedForest;

/// Limits on the quadratic oracles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub max_points: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_points: 5000 }
    }
}

/// Full disk intersection graph by testing every pair.
pub fn build_intersection_graph(inst: &Instance) -> Result<SpannerGraph> {
    build_intersection_graph_with(inst, OracleConfig::default())
}

pub fn build_intersection_graph_with(inst: &Instance, cfg: OracleConfig) -> Result<SpannerGraph> {
    let n = inst.len();
    if n > cfg.max_points {
        return Err(Error::OracleTooLarge(n, cfg.max_points));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if inst.disks_intersect(u, v) {
                edges.push(SpannerGraph::geometric_edge(inst, u, v, 0));
            }
        }
    }
    Ok(SpannerGraph { n, edges })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sources {
    All,
    Set(Vec<usize>),
}

/// Distance rows from the requested sources; unreachable entries are infinite.
pub fn shortest_paths(g: &SpannerGraph, sources: &Sources) -> Vec<Vec<f64>> {
    let adj = g.adjacency();
    match sources {
        Sources::All => (0..g.n).map(|s| sssp(&adj, s)).collect(),
        Sources::Set(s) => s.iter().map(|&s| sssp(&adj, s)).collect(),
    }
}

/// Largest finite shortest-path distance over all pairs.
pub fn exact_diameter(g: &SpannerGraph) -> f64 {
    let adj = g.adjacency();
    (0..g.n)
        .map(|s| sssp(&adj, s).into_iter().filter(|d| d.is_finite()).fold(0.0, f64::max))
        .fold(0.0, f64::max)
}

/// Worst edge-wise detour of a spanner against its graph.
#[derive(Debug, Clone, PartialEq)]
pub struct StretchReport {
    pub max_ratio: f64,
    /// G-edge attaining `max_ratio`.
    pub witness: Option<(usize, usize)>,
    pub bound: f64,
    pub pass: bool,
}

/// For every edge `(u, v)` of `g`, compare `d_gp(u, v)` with `d(u, v)`.
pub fn verify_stretch(g: &SpannerGraph, gp: &SpannerGraph, bound: f64) -> Result<StretchReport> {
    for e in &gp.edges {
        if !g.has_edge(e.u, e.v) {
            return Err(Error::NotSubgraph(e.u, e.v));
        }
    }
    let adj: Adjacency = gp.adjacency();
    let mut by_source: BTreeMap<usize, Vec<(usize, f64)>> = BTreeMap::new();
    for e in &g.edges {
        by_source.entry(e.u).or_default().push((e.v, e.weight));
    }
    let mut max_ratio = if g.edges.is_empty() { 1.0 } else { 0.0 };
    let mut witness = None;
    for (&u, targets) in &by_source {
        let far = targets.iter().map(|t| t.1).fold(0.0, f64::max);
        // distances up to the limit are exact; beyond it rerun unbounded
        let limit = far * bound.max(1.0) * 2.0;
        let mut dist = sssp_bounded(&adj, u, limit);
        if targets.iter().any(|&(v, _)| !(dist[v] <= limit)) {
            dist = sssp(&adj, u);
        }
        for &(v, w) in targets {
            let ratio = if w > 0.0 { dist[v] / w } else { 1.0 };
            if ratio > max_ratio {
                max_ratio = ratio;
                witness = Some((u, v));
            }
        }
    }
    Ok(StretchReport { max_ratio, witness, bound, pass: max_ratio <= bound })
}

/// Quadratic closest pair between two point sets, same tie rule as the fast path.
pub fn brute_bcp(points: &[Point], a: &[usize], b: &[usize]) -> Result<(usize, usize, f64)> {
    let mut best: Option<(f64, usize, usize)> = None;
    for &x in a {
        for &y in b {
            let c = (points[x].dist2(&points[y]), x, y);
            if best.is_none_or(|o| c.0 < o.0 || (c.0 == o.0 && (c.1, c.2) < (o.1, o.2))) {
                best = Some(c);
            }
        }
    }
    let (d2, x, y) = best.ok_or(Error::EmptySet)?;
    Ok((x, y, d2.sqrt()))
}

/// Node of a compressed quad-dissection in comparable form.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalNode {
    pub depth: u32,
    pub corner: Point,
    pub side: f64,
    pub points: Vec<usize>,
}

fn sort_canonical(mut v: Vec<CanonicalNode>) -> Vec<CanonicalNode> {
    v.sort_by(|a, b| a.points.cmp(&b.points).then(a.depth.cmp(&b.depth)));
    v
}

/// Recursive 4-way subdivision of the ε-grid cells of a normalized instance,
/// keeping only the nodes whose point set differs from their parent's.
pub fn naive_quadtree(inst: &Instance, eps: Epsilon) -> Vec<CanonicalNode> {
    let side = eps.value();
    let mut cells: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for (i, p) in inst.points().iter().enumerate() {
        cells.entry(((p.x / side).floor() as i64, (p.y / side).floor() as i64)).or_default().push(i);
    }
    let mut out = Vec::new();
    // (corner, side, depth, points, depth at which the point set appeared)
    let mut work: Vec<(Point, f64, u32, Vec<usize>, u32)> = cells
        .into_iter()
        .map(|((i, j), pts)| (Point::new(i as f64 * side, j as f64 * side), side, 0, pts, 0))
        .collect();
    while let Some((corner, s, depth, pts, born)) = work.pop() {
        if depth == born {
            let mut sorted = pts.clone();
            sorted.sort_unstable();
            out.push(CanonicalNode { depth, corner, side: s, points: sorted });
        }
        if pts.len() == 1 {
            continue;
        }
        let h = s / 2.0;
        let mid = Point::new(corner.x + h, corner.y + h);
        let mut quads: [Vec<usize>; 4] = Default::default();
        for &i in &pts {
            let p = inst.point(i);
            let q = (p.x >= mid.x) as usize * 2 + (p.y >= mid.y) as usize;
            quads[q].push(i);
        }
        let nonempty = quads.iter().filter(|q| !q.is_empty()).count();
        for (q, sub) in quads.into_iter().enumerate() {
            if sub.is_empty() {
                continue;
            }
            let c = Point::new(corner.x + if q >= 2 { h } else { 0.0 }, corner.y + if q % 2 == 1 { h } else { 0.0 });
            let born = if nonempty > 1 { depth + 1 } else { born };
            work.push((c, h, depth + 1, sub, born));
        }
    }
    sort_canonical(out)
}

/// The same canonical form read off a built forest.
pub fn canonical_forest(forest: &CompressedForest, inst: &Instance) -> Vec<CanonicalNode> {
    let out = forest
        .preorder()
        .map(|id| {
            let sq = forest.node_square(inst, id);
            let mut points = forest.members(id).to_vec();
            points.sort_unstable();
            CanonicalNode { depth: forest.node(id).depth, corner: sq.corner(), side: sq.side, points }
        })
        .collect();
    sort_canonical(out)
}
