//! Static 2-d tree over a subset of instance points.
//!
//! Nearest-neighbour queries are exact, including ties: among points at the
//! minimal squared distance the smallest point index is returned.

use crate::geom::Point;

const LEAF_SIZE: usize = 8;

#[derive(Debug, Clone)]
enum Node {
    Leaf { start: usize, end: usize },
    Split { axis: u8, value: f64, left: usize, right: usize },
}

#[derive(Debug, Clone)]
pub struct KdTree {
    items: Vec<(Point, usize)>,
    nodes: Vec<Node>,
}

impl KdTree {
    /// Build over `(point, index)` pairs.
    pub fn new(mut items: Vec<(Point, usize)>) -> Self {
        let mut nodes = Vec::new();
        if !items.is_empty() {
            let len = items.len();
            build(&mut items, 0, len, &mut nodes);
        }
        KdTree { items, nodes }
    }

    pub fn from_indices(points: &[Point], indices: &[usize]) -> Self {
        KdTree::new(indices.iter().map(|&i| (points[i], i)).collect())
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// `(squared distance, index)` of the nearest item, smallest index on ties.
    pub fn nearest(&self, q: Point) -> Option<(f64, usize)> {
        if self.items.is_empty() {
            return None;
        }
        let mut best = (f64::INFINITY, usize::MAX);
        self.nearest_in(0, q, &mut best);
        Some(best)
    }

    fn nearest_in(&self, node: usize, q: Point, best: &mut (f64, usize)) {
        match self.nodes[node] {
            Node::Leaf { start, end } => {
                for &(p, i) in &self.items[start..end] {
                    let d = p.dist2(&q);
                    if d < best.0 || (d == best.0 && i < best.1) {
                        *best = (d, i);
                    }
                }
            }
            Node::Split { axis, value, left, right } => {
                let c = if axis == 0 { q.x } else { q.y };
                let (near, far) = if c < value { (left, right) } else { (right, left) };
                self.nearest_in(near, q, best);
                let gap = c - value;
                // equality still descends so ties resolve to the smallest index
                if gap * gap <= best.0 {
                    self.nearest_in(far, q, best);
                }
            }
        }
    }

    /// Indices of items inside the closed box `[lo, hi]`, in ascending order.
    pub fn within_box(&self, lo: Point, hi: Point) -> Vec<usize> {
        self.collect(lo, hi, |_| true)
    }

    /// Indices within Euclidean distance `r` (closed) of `q`, ascending.
    pub fn within_radius(&self, q: Point, r: f64) -> Vec<usize> {
        let r2 = r * r;
        self.collect(Point::new(q.x - r, q.y - r), Point::new(q.x + r, q.y + r), |p| p.dist2(&q) <= r2)
    }

    fn collect(&self, lo: Point, hi: Point, keep: impl Fn(&Point) -> bool) -> Vec<usize> {
        let mut out = Vec::new();
        if !self.items.is_empty() {
            self.box_in(0, lo, hi, &keep, &mut out);
        }
        out.sort_unstable();
        out
    }

    fn box_in(&self, node: usize, lo: Point, hi: Point, keep: &impl Fn(&Point) -> bool, out: &mut Vec<usize>) {
        match self.nodes[node] {
            Node::Leaf { start, end } => {
                for (p, i) in &self.items[start..end] {
                    if lo.x <= p.x && p.x <= hi.x && lo.y <= p.y && p.y <= hi.y && keep(p) {
                        out.push(*i);
                    }
                }
            }
            Node::Split { axis, value, left, right } => {
                let (l, h) = if axis == 0 { (lo.x, hi.x) } else { (lo.y, hi.y) };
                if l < value {
                    self.box_in(left, lo, hi, keep, out);
                }
                if h >= value {
                    self.box_in(right, lo, hi, keep, out);
                }
            }
        }
    }
}

fn build(items: &mut [(Point, usize)], start: usize, end: usize, nodes: &mut Vec<Node>) -> usize {
    let id = nodes.len();
    nodes.push(Node::Leaf { start, end });
    if end - start <= LEAF_SIZE {
        return id;
    }
    let slice = &mut items[start..end];
    let (minx, maxx, miny, maxy) = slice.iter().fold(
        (f64::MAX, f64::MIN, f64::MAX, f64::MIN),
        |(a, b, c, d), (p, _)| (a.min(p.x), b.max(p.x), c.min(p.y), d.max(p.y)),
    );
    let axis: u8 = if maxx - minx >= maxy - miny { 0 } else { 1 };
    let key = |p: &Point| if axis == 0 { p.x } else { p.y };
    slice.sort_unstable_by(|a, b| key(&a.0).total_cmp(&key(&b.0)).then(a.1.cmp(&b.1)));
    let mid = slice.len() / 2;
    let value = key(&slice[mid].0);
    // left holds coordinates strictly below `value`
    let split = slice.partition_point(|(p, _)| key(p) < value);
    if split == 0 {
        // every coordinate equals the minimum on this axis; nothing to split
        if key(&slice[slice.len() - 1].0) == value {
            return id;
        }
        let upper = slice.partition_point(|(p, _)| key(p) <= value);
        let value = key(&slice[upper].0);
        return finish(items, start, end, start + upper, axis, value, nodes, id);
    }
    finish(items, start, end, start + split, axis, value, nodes, id)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    items: &mut [(Point, usize)],
    start: usize,
    end: usize,
    mid: usize,
    axis: u8,
    value: f64,
    nodes: &mut Vec<Node>,
    id: usize,
) -> usize {
    let left = build(items, start, mid, nodes);
    let right = build(items, mid, end, nodes);
    nodes[id] = Node::Split { axis, value, left, right };
    id
}
