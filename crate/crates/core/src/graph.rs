//! Weighted undirected edge lists and shortest paths.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geom::Instance;

/// Depth tag of edges added between roots of the forest.
pub const FAR_EDGE_TAG: i32 = -1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
    /// Depth of the forest node whose processing added the edge.
    pub depth_tag: i32,
}

/// Undirected graph with `u < v` edges sorted lexicographically and no duplicates.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpannerGraph {
    pub n: usize,
    pub edges: Vec<Edge>,
}

pub type Adjacency = Vec<Vec<(usize, f64)>>;

impl SpannerGraph {
    pub fn empty(n: usize) -> Self {
        SpannerGraph { n, edges: Vec::new() }
    }

    /// Canonicalize: orient `u < v`, sort, and merge duplicates keeping the
    /// largest depth tag.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut map: BTreeMap<(usize, usize), Edge> = BTreeMap::new();
        for e in edges {
            let (u, v) = if e.u < e.v { (e.u, e.v) } else { (e.v, e.u) };
            debug_assert!(u != v, "self loop");
            let e = Edge { u, v, ..e };
            map.entry((u, v))
                .and_modify(|old| {
                    if e.depth_tag > old.depth_tag {
                        old.depth_tag = e.depth_tag;
                    }
                })
                .or_insert(e);
        }
        SpannerGraph { n, edges: map.into_values().collect() }
    }

    /// Edge between two instance points weighted by their distance.
    pub fn geometric_edge(inst: &Instance, u: usize, v: usize, depth_tag: i32) -> Edge {
        Edge { u, v, weight: inst.point(u).dist(&inst.point(v)), depth_tag }
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacency(&self) -> Adjacency {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push((e.v, e.weight));
            adj[e.v].push((e.u, e.weight));
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            d[e.u] += 1;
            d[e.v] += 1;
        }
        d
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search_by(|e| (e.u, e.v).cmp(&key)).is_ok()
    }

    /// Text format: `n m`, then `u v weight depthTag` per edge.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(32 * (self.edges.len() + 1));
        writeln!(out, "{} {}", self.n, self.edges.len()).unwrap();
        for e in &self.edges {
            writeln!(out, "{} {} {} {}", e.u, e.v, e.weight, e.depth_tag).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let err = |line: usize, msg: &str| Error::Parse { line: line + 1, msg: msg.to_string() };
        let (hl, header) = lines.next().ok_or_else(|| err(0, "missing header"))?;
        let mut h = header.split_whitespace();
        let n: usize = h.next().and_then(|t| t.parse().ok()).ok_or_else(|| err(hl, "bad vertex count"))?;
        let m: usize = h.next().and_then(|t| t.parse().ok()).ok_or_else(|| err(hl, "bad edge count"))?;
        if h.next().is_some() {
            return Err(err(hl, "trailing tokens in header"));
        }
        let mut edges = Vec::with_capacity(m);
        for (ln, line) in lines {
            let t: Vec<&str> = line.split_whitespace().collect();
            if t.len() != 4 {
                return Err(err(ln, "expected `u v weight depthTag`"));
            }
            let u: usize = t[0].parse().map_err(|_| err(ln, "bad u"))?;
            let v: usize = t[1].parse().map_err(|_| err(ln, "bad v"))?;
            let weight: f64 = t[2].parse().map_err(|_| err(ln, "bad weight"))?;
            let depth_tag: i32 = t[3].parse().map_err(|_| err(ln, "bad depth tag"))?;
            if u >= v || v >= n {
                return Err(err(ln, "edge endpoints must satisfy u < v < n"));
            }
            if !(weight >= 0.0) {
                return Err(err(ln, "negative weight"));
            }
            if let Some(prev) = edges.last() {
                let prev: &Edge = prev;
                if (prev.u, prev.v) >= (u, v) {
                    return Err(err(ln, "edges must be sorted and unique"));
                }
            }
            edges.push(Edge { u, v, weight, depth_tag });
        }
        if edges.len() != m {
            return Err(err(0, &format!("header says {m} edges, found {}", edges.len())));
        }
        Ok(SpannerGraph { n, edges })
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Single-source shortest paths; unreachable vertices get `f64::INFINITY`.
pub fn sssp(adj: &Adjacency, source: usize) -> Vec<f64> {
    sssp_bounded(adj, source, f64::INFINITY)
}

/// Dijkstra that stops settling once distances exceed `limit`. Distances
/// up to `limit` are exact; the rest are upper bounds or infinity.
pub fn sssp_bounded(adj: &Adjacency, source: usize, limit: f64) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; adj.len()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Entry(0.0, source));
    while let Some(Entry(d, u)) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        if d > limit {
            break;
        }
        for &(v, w) in &adj[u] {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Entry(nd, v));
            }
        }
    }
    dist
}

/// Connected component label per vertex, labels in order of first vertex.
pub fn components(n: usize, adj: &Adjacency) -> Vec<usize> {
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    let mut stack = Vec::new();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = next;
        stack.push(s);
        while let Some(u) = stack.pop() {
            for &(v, _) in &adj[u] {
                if label[v] == usize::MAX {
                    label[v] = next;
                    stack.push(v);
                }
            }
        }
        next += 1;
    }
    label
}
