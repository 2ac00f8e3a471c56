//! Vertex-separator decomposition of a spanner by alternating double line
//! separators.
//!
//! Each tree node holds a vertex set `V(t)` and a separator `S(t) ⊆ V(t)`.
//! Inside a node, rectangles are cut along x and y in turn while one piece
//! still holds at least two thirds of `V(t)`; the pieces are then grouped
//! into two sides and the endpoints of crossing edges on the side with fewer
//! of them form `S(t)`. The children follow the usual labeling
//! `V(t₀) = V₁ ∪ (S(t) ∩ N(V₁))`.

use std::cmp::Reverse;
use std::fmt::Write as _;

use crate::error::{Error, Result, Witness};
use crate::geom::{Epsilon, Instance, Point};
use crate::graph::SpannerGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Vertical lines, cutting along x.
    Vertical,
    /// Horizontal lines, cutting along y.
    Horizontal,
}

impl Axis {
    pub fn coord(self, p: Point) -> f64 {
        match self {
            Axis::Vertical => p.x,
            Axis::Horizontal => p.y,
        }
    }

    pub fn flip(self) -> Axis {
        match self {
            Axis::Vertical => Axis::Horizontal,
            Axis::Horizontal => Axis::Vertical,
        }
    }
}

/// Axis-aligned box with the forest level that sets its gap scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rectangle {
    pub xlo: f64,
    pub xhi: f64,
    pub ylo: f64,
    pub yhi: f64,
    pub level: i32,
}

impl Rectangle {
    pub fn bounding(points: impl IntoIterator<Item = Point>, level: i32) -> Self {
        let mut r = Rectangle { xlo: f64::MAX, xhi: f64::MIN, ylo: f64::MAX, yhi: f64::MIN, level };
        for p in points {
            r.xlo = r.xlo.min(p.x);
            r.xhi = r.xhi.max(p.x);
            r.ylo = r.ylo.min(p.y);
            r.yhi = r.yhi.max(p.y);
        }
        r
    }

    /// Piece `k` (0 below `l1`, 1 between, 2 from `l2` on) of a cut along `axis`.
    fn slab(&self, axis: Axis, l1: f64, l2: f64, k: usize) -> Rectangle {
        let (lo, hi) = match axis {
            Axis::Vertical => (self.xlo, self.xhi),
            Axis::Horizontal => (self.ylo, self.yhi),
        };
        let (a, b) = match k {
            0 => (lo, l1.min(hi)),
            1 => (l1.max(lo), l2.min(hi)),
            _ => (l2.max(lo), hi),
        };
        match axis {
            Axis::Vertical => Rectangle { xlo: a, xhi: b, ..*self },
            Axis::Horizontal => Rectangle { ylo: a, yhi: b, ..*self },
        }
    }
}

/// Number of points per block of the coordinate partition: ⌈√n·ε^{-3/2}⌉.
pub fn block_size(n: usize, eps: Epsilon) -> usize {
    let inv = eps.inverse() as f64;
    ((n as f64).sqrt() * inv * inv.sqrt()).ceil().max(1.0) as usize
}

/// Two lines across `rect` perpendicular to `axis`, returned in increasing
/// order. Points with coordinate below the first line fall left, points at or
/// beyond the second fall right.
///
/// From the median, gaps between consecutive coordinates are scanned outward
/// within the median's block. A gap of length at least `4·unit·2^-l` places
/// the line `2·unit·2^-l` inside it. Without one the line sits on the block
/// boundary (or past the last point when the block is the last one).
pub fn double_line_separator(rect: &Rectangle, axis: Axis, points: &[Point], n: usize, eps: Epsilon, unit: f64) -> Result<(f64, f64)> {
    let mut c: Vec<f64> = points.iter().map(|&p| axis.coord(p)).collect();
    c.sort_unstable_by(f64::total_cmp);
    let len = c.len();
    if len < 2 || c[0] == c[len - 1] {
        return Err(Error::DegenerateAxis);
    }
    let h = unit * 2f64.powi(-rect.level);
    let k = block_size(n, eps);
    let blocks = (len / k).max(1);
    let m = len / 2;
    let b = (m / k).min(blocks - 1);
    let b0 = b * k;
    let b1 = if b == blocks - 1 { len } else { b0 + k };
    // gap i lies between c[i - 1] and c[i]
    let wide = |i: usize| c[i] - c[i - 1] >= 4.0 * h;
    let l1 = (b0.max(1)..=m).rev().find(|&i| wide(i)).map_or(c[b0], |i| c[i] - 2.0 * h);
    let l2 = (m..=b1.min(len - 1)).find(|&i| wide(i)).map_or(if b1 < len { c[b1] } else { f64::INFINITY }, |i| c[i - 1] + 2.0 * h);
    Ok((l1.min(l2), l1.max(l2)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeparatorConfig {
    pub leaf_max: usize,
}

impl Default for SeparatorConfig {
    fn default() -> Self {
        SeparatorConfig { leaf_max: 32 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparatorNode {
    pub parent: Option<usize>,
    /// `V(t)`, sorted.
    pub vertices: Vec<usize>,
    /// `S(t)`, sorted; empty at leaves.
    pub separator: Vec<usize>,
    pub children: Option<[usize; 2]>,
}

impl SeparatorNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }
}

/// Nodes in preorder; node 0 is the root.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatorTree {
    pub nodes: Vec<SeparatorNode>,
    pub leaf_max: usize,
    pub eps: Epsilon,
}

impl SeparatorTree {
    pub fn root(&self) -> &SeparatorNode {
        &self.nodes[0]
    }

    pub fn height(&self) -> usize {
        let mut depth = vec![0usize; self.nodes.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            if let Some(p) = node.parent {
                depth[id] = depth[p] + 1;
            }
        }
        depth.into_iter().max().unwrap_or(0)
    }

    /// `nodes K`, then `id parent |V| |S| vOffset sOffset` per node (parent -1
    /// at the root), then the concatenated `v` and `s` index arrays.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        writeln!(out, "nodes {}", self.nodes.len()).unwrap();
        let (mut voff, mut soff) = (0, 0);
        for (id, t) in self.nodes.iter().enumerate() {
            let parent = t.parent.map_or(-1, |p| p as i64);
            writeln!(out, "{id} {parent} {} {} {voff} {soff}", t.vertices.len(), t.separator.len()).unwrap();
            voff += t.vertices.len();
            soff += t.separator.len();
        }
        for (tag, pick) in [("v", 0), ("s", 1)] {
            out.push_str(tag);
            for t in &self.nodes {
                for x in if pick == 0 { &t.vertices } else { &t.separator } {
                    write!(out, " {x}").unwrap();
                }
            }
            out.push('\n');
        }
        out
    }
}

struct Split {
    separator: Vec<usize>,
    parts: [Vec<usize>; 2],
}

struct Builder<'a> {
    adj: Vec<Vec<usize>>,
    points: &'a [Point],
    levels: Vec<i32>,
    unit: f64,
    eps: Epsilon,
    /// Local index of each global vertex in the node being split.
    local: Vec<usize>,
}

impl Builder<'_> {
    fn split(&mut self, verts: &[usize]) -> Option<Split> {
        for (i, &v) in verts.iter().enumerate() {
            self.local[v] = i;
        }
        let adj: Vec<Vec<usize>> = verts
            .iter()
            .map(|&v| self.adj[v].iter().filter(|&&w| self.local[w] != usize::MAX).map(|&w| self.local[w]).collect())
            .collect();
        let pts: Vec<Point> = verts.iter().map(|&v| self.points[v]).collect();
        let total = verts.len();

        let regions = self.regions(&pts);
        let mut order: Vec<usize> = (0..regions.len()).collect();
        order.sort_by_key(|&r| Reverse(regions[r].len()));
        let mut best: Option<Split> = None;
        let mut side = vec![false; total];
        let mut consider = |members: &[usize], best: &mut Option<Split>| {
            side.iter_mut().for_each(|s| *s = false);
            members.iter().for_each(|&i| side[i] = true);
            if let Some(s) = cut(&adj, &side, verts) {
                if best.as_ref().is_none_or(|b| s.separator.len() < b.separator.len()) {
                    *best = Some(s);
                }
            }
        };
        let balanced = |a: usize| 3 * a <= 2 * total && 3 * (total - a) <= 2 * total;
        for &r in &order {
            if balanced(regions[r].len()) {
                consider(&regions[r], &mut best);
            }
        }
        let mut prefix = Vec::new();
        for &r in order.iter().take(order.len().saturating_sub(1)) {
            prefix.extend_from_slice(&regions[r]);
            if balanced(prefix.len()) {
                consider(&prefix, &mut best);
            }
        }
        if best.is_none() {
            // median cuts, then ever smaller end slabs along either axis
            let sorted: Vec<Vec<usize>> = [Axis::Vertical, Axis::Horizontal]
                .iter()
                .map(|axis| {
                    let mut idx: Vec<usize> = (0..total).collect();
                    idx.sort_by(|&a, &b| axis.coord(pts[a]).total_cmp(&axis.coord(pts[b])).then(a.cmp(&b)));
                    idx
                })
                .collect();
            for size in (1..=total / 2).rev() {
                for idx in &sorted {
                    consider(&idx[..size], &mut best);
                    consider(&idx[total - size..], &mut best);
                }
                if best.is_some() {
                    break;
                }
            }
        }
        if best.is_none() {
            // one vertex against its non-neighbours
            for v in 0..total {
                consider(&[v], &mut best);
            }
        }
        for &v in verts {
            self.local[v] = usize::MAX;
        }
        best
    }

    /// Pieces left behind by the active-rectangle loop, as local indices.
    fn regions(&self, pts: &[Point]) -> Vec<Vec<usize>> {
        let total = pts.len();
        let mut active: Vec<usize> = (0..total).collect();
        let mut rect = Rectangle::bounding(pts.iter().copied(), self.levels[0]);
        let mut axis = Axis::Vertical;
        let mut step = 0;
        let mut regions = Vec::new();
        loop {
            rect.level = self.levels[step.min(self.levels.len() - 1)];
            let lines = [axis, axis.flip()].into_iter().find_map(|a| {
                let sub: Vec<Point> = active.iter().map(|&i| pts[i]).collect();
                double_line_separator(&rect, a, &sub, total, self.eps, self.unit).ok().map(|l| (a, l))
            });
            let Some((a, (l1, l2))) = lines else {
                regions.push(active);
                return regions;
            };
            axis = a;
            let mut pieces: [Vec<usize>; 3] = Default::default();
            for &i in &active {
                let c = axis.coord(pts[i]);
                pieces[if c < l1 { 0 } else if c < l2 { 1 } else { 2 }].push(i);
            }
            let heavy = (0..3).find(|&k| 3 * pieces[k].len() >= 2 * total && pieces[k].len() < active.len());
            match heavy {
                Some(k) => {
                    for (j, p) in pieces.into_iter().enumerate() {
                        if j == k {
                            active = p;
                        } else if !p.is_empty() {
                            regions.push(p);
                        }
                    }
                    rect = rect.slab(axis, l1, l2, k);
                    axis = axis.flip();
                    step += 1;
                }
                None => {
                    regions.extend(pieces.into_iter().filter(|p| !p.is_empty()));
                    return regions;
                }
            }
        }
    }
}

/// Separator for the bipartition `side` (true = first side). Crossing
/// endpoints on the side with fewer of them are tried first, then the other
/// side. `None` if neither gives two nonempty, smaller, balanced children.
fn cut(adj: &[Vec<usize>], side: &[bool], verts: &[usize]) -> Option<Split> {
    let n = side.len();
    let mut crosses = vec![false; n];
    for u in 0..n {
        crosses[u] = adj[u].iter().any(|&v| side[u] != side[v]);
    }
    let count = |s: bool| (0..n).filter(|&i| crosses[i] && side[i] == s).count();
    let first = count(true) > count(false);
    [first, !first].into_iter().find_map(|sep_side| {
        let in_sep: Vec<bool> = (0..n).map(|i| crosses[i] && side[i] == sep_side).collect();
        split_with(adj, side, &in_sep, verts)
    })
}

fn split_with(adj: &[Vec<usize>], side: &[bool], in_sep: &[bool], verts: &[usize]) -> Option<Split> {
    let n = side.len();
    let mut parts: [Vec<usize>; 2] = Default::default();
    for i in (0..n).filter(|&i| !in_sep[i]) {
        parts[if side[i] { 0 } else { 1 }].push(verts[i]);
    }
    if parts.iter().any(|p| p.is_empty()) {
        return None;
    }
    let mut separator = Vec::new();
    for s in (0..n).filter(|&i| in_sep[i]) {
        separator.push(verts[s]);
        let mut touches = [false; 2];
        for &v in adj[s].iter().filter(|&&v| !in_sep[v]) {
            touches[if side[v] { 0 } else { 1 }] = true;
        }
        for j in 0..2 {
            if touches[j] {
                parts[j].push(verts[s]);
            }
        }
    }
    if parts.iter().any(|p| p.len() >= n || 3 * p.len() > 2 * n + 3 * separator.len()) {
        return None;
    }
    parts.iter_mut().for_each(|p| p.sort_unstable());
    Some(Split { separator, parts })
}

pub fn build_separator_decomposition(spanner: &SpannerGraph, inst: &Instance, eps: Epsilon) -> SeparatorTree {
    build_separator_decomposition_with(spanner, inst, eps, SeparatorConfig::default())
}

/// Lengths are measured in units of the largest radius. Levels run through
/// the distinct nonnegative depth tags of the spanner, restarting at every
/// tree node.
pub fn build_separator_decomposition_with(spanner: &SpannerGraph, inst: &Instance, eps: Epsilon, cfg: SeparatorConfig) -> SeparatorTree {
    let n = spanner.n;
    let mut levels: Vec<i32> = spanner.edges.iter().map(|e| e.depth_tag.max(0)).collect();
    levels.push(0);
    levels.sort_unstable();
    levels.dedup();
    let mut adj = vec![Vec::new(); n];
    for e in &spanner.edges {
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    let mut b = Builder { adj, points: inst.points(), levels, unit: inst.max_radius(), eps, local: vec![usize::MAX; n] };
    let leaf_max = cfg.leaf_max.max(1);
    let mut nodes: Vec<SeparatorNode> = Vec::new();
    // (vertices, parent, child slot)
    let mut stack = vec![((0..n).collect::<Vec<usize>>(), None::<usize>, 0usize)];
    while let Some((verts, parent, slot)) = stack.pop() {
        let id = nodes.len();
        if let Some(p) = parent {
            nodes[p].children.get_or_insert([usize::MAX; 2])[slot] = id;
        }
        let split = if verts.len() > leaf_max { b.split(&verts) } else { None };
        let separator = match split {
            Some(Split { separator, parts: [p0, p1] }) => {
                stack.push((p1, Some(id), 1));
                stack.push((p0, Some(id), 0));
                let mut s = separator;
                s.sort_unstable();
                s
            }
            None => Vec::new(),
        };
        nodes.push(SeparatorNode { parent, vertices: verts, separator, children: None });
    }
    SeparatorTree { nodes, leaf_max, eps }
}

/// Measured constants of a verified tree.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatorReport {
    pub nodes: usize,
    pub height: usize,
    pub root_separator: usize,
    /// max over internal nodes of `|S(t)| / √|V(t)| · ε^{3/2}`.
    pub max_ratio: f64,
    /// `8·√n·ε^{-3/2}`, the nominal crossing budget, for comparison only.
    pub crossing_budget: f64,
}

/// A node whose induced graph admits no split (a clique, for instance) stays
/// a leaf even above the leaf size, and verification reports it.
///
/// Check that `S(t) ⊆ V(t)`, that no edge joins the two sides once `S(t)` is
/// removed, that each child has at most `2/3·|V(t)| + |S(t)|` vertices, and
/// that leaves respect the leaf size.
pub fn verify_separator(tree: &SeparatorTree, spanner: &SpannerGraph) -> Result<SeparatorReport> {
    let n = spanner.n;
    let mut adj = vec![Vec::new(); n];
    for e in &spanner.edges {
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    let mut mark = vec![u8::MAX; n];
    let inv = tree.eps.inverse() as f64;
    let eps32 = 1.0 / (inv * inv.sqrt());
    let mut max_ratio: f64 = 0.0;
    let violation = |w| Err(Error::SeparatorInvariantViolation(w));
    for (node, t) in tree.nodes.iter().enumerate() {
        if let Some(&vertex) = t.separator.iter().find(|s| t.vertices.binary_search(s).is_err()) {
            return violation(Witness::SeparatorNotSubset { node, vertex });
        }
        let Some(children) = t.children else {
            if t.vertices.len() > tree.leaf_max {
                return violation(Witness::OversizedLeaf { node, size: t.vertices.len() });
            }
            continue;
        };
        let size = t.vertices.len();
        let limit = 2.0 / 3.0 * size as f64 + t.separator.len() as f64;
        for &c in &children {
            let cs = tree.nodes[c].vertices.len();
            if 3 * cs > 2 * size + 3 * t.separator.len() {
                return violation(Witness::Unbalanced { node, child: c, size: cs, limit });
            }
        }
        for (j, &c) in children.iter().enumerate() {
            for &v in &tree.nodes[c].vertices {
                mark[v] = j as u8;
            }
        }
        for &s in &t.separator {
            mark[s] = u8::MAX;
        }
        for &u in &tree.nodes[children[0]].vertices {
            if mark[u] != 0 {
                continue;
            }
            if let Some(&v) = adj[u].iter().find(|&&v| mark[v] == 1) {
                return violation(Witness::CrossEdge { node, u: u.min(v), v: u.max(v) });
            }
        }
        for &c in &children {
            for &v in &tree.nodes[c].vertices {
                mark[v] = u8::MAX;
            }
        }
        max_ratio = max_ratio.max(t.separator.len() as f64 / (size as f64).sqrt() * eps32);
    }
    Ok(SeparatorReport {
        nodes: tree.nodes.len(),
        height: tree.height(),
        root_separator: tree.root().separator.len(),
        max_ratio,
        crossing_budget: 8.0 * (n as f64).sqrt() / eps32,
    })
}

/// Every edge tagged `l` is at most `2^{1-l}` long, in units of the largest
/// radius. Far edges carry tag -1 and get `4`.
pub fn check_edge_lengths(spanner: &SpannerGraph, inst: &Instance) -> Result<()> {
    let unit = inst.max_radius();
    for e in &spanner.edges {
        let bound = unit * 2f64.powi(1 - e.depth_tag);
        if e.weight > bound {
            return Err(Error::SeparatorInvariantViolation(Witness::LongEdge {
                u: e.u,
                v: e.v,
                depth_tag: e.depth_tag,
                length: e.weight,
            }));
        }
    }
    Ok(())
}
