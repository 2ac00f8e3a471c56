//! Compressed quad-dissection forest.
//!
//! Built from the Morton-sorted points with a single stack scan over the
//! `agree` values of consecutive keys. The scan yields a binary tree per ε-grid
//! cell; nodes that split at the same depth as their parent are then merged
//! into 4-ary form.
//!
//! Every node keeps the Γ-depth at which its point set first differs from
//! its parent's (`depth`), and for internal nodes the deeper depth at which it
//! actually branches (`split_depth`). The squares between the two all hold the
//! same points.

use std::fmt::Write as _;

use crate::dg::disk_level;
use crate::error::{Error, Result};
use crate::geom::{Epsilon, Instance, Point, Square};
use crate::zorder::{agree, morton_sort, Frame, MortonOrder, BITS};

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq)]
pub struct ForestNode {
    pub depth: u32,
    /// Depth at which the node branches into its children; `None` for leaves.
    pub split_depth: Option<u32>,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    /// Representative point index.
    pub rep: usize,
    /// Contiguous range `[lo, hi)` of the Morton order.
    pub lo: usize,
    pub hi: usize,
}

impl ForestNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn is_root(&self) -> bool {
        self.parent.is_none()
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo
    }

    /// Deepest Γ-depth this node stands for.
    pub fn deepest(&self) -> u32 {
        self.split_depth.unwrap_or(u32::MAX)
    }

    /// True when the node is the Γ square at `depth` for its points.
    pub fn covers(&self, depth: u32) -> bool {
        self.depth <= depth && depth <= self.deepest()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepMode {
    /// First child in Morton order.
    Unit,
    /// Child representative of largest radius, ties to the smaller point index.
    ByRadius,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompressedForest {
    pub nodes: Vec<ForestNode>,
    pub roots: Vec<NodeId>,
    pub order: MortonOrder,
    pub eps: Epsilon,
    /// Smallest disk level among the points of each node (0 for unit disks).
    pub min_level: Vec<u32>,
}

#[derive(Debug)]
struct BinNode {
    split: i32,
    children: Option<(usize, usize)>,
    lo: usize,
    hi: usize,
}

/// Stack scan over one maximal run of sorted positions whose keys share an ε-cell.
fn binary_run(keys: &[u64], start: usize, end: usize, lbase: u32, bins: &mut Vec<BinNode>) -> Result<usize> {
    let leaf = |i: usize, bins: &mut Vec<BinNode>| {
        bins.push(BinNode { split: i32::MAX, children: None, lo: i, hi: i + 1 });
        bins.len() - 1
    };
    let merge = |stack: &mut Vec<(i64, usize)>, bins: &mut Vec<BinNode>| {
        let (a_top, t_top) = stack.pop().expect("stack top");
        let (a_below, t_below) = stack.pop().expect("stack below");
        let lo = bins[t_below].lo;
        let hi = bins[t_top].hi;
        bins.push(BinNode { split: a_top as i32, children: Some((t_below, t_top)), lo, hi });
        stack.push((a_below, bins.len() - 1));
    };

    let mut stack: Vec<(i64, usize)> = vec![(i64::MIN, leaf(start, bins))];
    for i in start + 1..end {
        let a = agree(keys[i - 1], keys[i], lbase)? as i64;
        debug_assert!(a >= 0);
        while a <= stack.last().unwrap().0 {
            merge(&mut stack, bins);
        }
        let t = leaf(i, bins);
        stack.push((a, t));
    }
    while stack.len() > 1 {
        merge(&mut stack, bins);
    }
    Ok(stack[0].1)
}

/// Children of binary node `b` after shortcutting equal-depth binary nodes.
fn flatten(bins: &[BinNode], b: usize, out: &mut Vec<usize>) {
    let split = bins[b].split;
    if let Some((l, r)) = bins[b].children {
        for c in [l, r] {
            if bins[c].children.is_some() && bins[c].split == split {
                flatten(bins, c, out);
            } else {
                out.push(c);
            }
        }
    }
}

/// Compressed forest of the ε-grid quad-dissection, with unit representatives.
pub fn build_compressed_forest(inst: &Instance, eps: Epsilon) -> Result<CompressedForest> {
    let frame = Frame::for_instance(inst, eps)?;
    let order = morton_sort(inst, frame)?;
    let n = inst.len();
    let keys = &order.keys;

    let mut bins = Vec::with_capacity(2 * n);
    let mut run_roots = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        let boundary = i == n || agree(keys[i - 1], keys[i], frame.lbase)? < 0;
        if boundary {
            run_roots.push(binary_run(keys, start, i, frame.lbase, &mut bins)?);
            start = i;
        }
    }

    let mut nodes: Vec<ForestNode> = Vec::with_capacity(2 * n);
    let mut roots = Vec::with_capacity(run_roots.len());
    // (binary node, parent, depth) in preorder
    let mut work: Vec<(usize, Option<NodeId>, u32)> = run_roots.iter().rev().map(|&b| (b, None, 0)).collect();
    let mut scratch = Vec::new();
    while let Some((b, parent, depth)) = work.pop() {
        let id = nodes.len();
        let bn = &bins[b];
        let split_depth = bn.children.map(|_| bn.split as u32);
        nodes.push(ForestNode {
            depth,
            split_depth,
            parent,
            children: Vec::new(),
            rep: order.perm[bn.lo],
            lo: bn.lo,
            hi: bn.hi,
        });
        match parent {
            Some(p) => nodes[p].children.push(id),
            None => roots.push(id),
        }
        if let Some(s) = split_depth {
            scratch.clear();
            flatten(&bins, b, &mut scratch);
            for &c in scratch.iter().rev() {
                work.push((c, Some(id), s + 1));
            }
        }
    }

    let mut forest = CompressedForest { nodes, roots, order, eps, min_level: Vec::new() };
    forest.min_level = node_min_levels(&forest, inst)?;
    Ok(forest)
}

fn node_min_levels(forest: &CompressedForest, inst: &Instance) -> Result<Vec<u32>> {
    let mut levels = vec![u32::MAX; forest.nodes.len()];
    // children come after parents in preorder; sweep backwards
    for id in (0..forest.nodes.len()).rev() {
        let node = &forest.nodes[id];
        levels[id] = if node.is_leaf() {
            let p = forest.order.perm[node.lo];
            disk_level(inst.radius(p))?
        } else {
            node.children.iter().map(|&c| levels[c]).min().unwrap()
        };
    }
    Ok(levels)
}

impl CompressedForest {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn frame(&self) -> Frame {
        self.order.frame
    }

    pub fn node(&self, id: NodeId) -> &ForestNode {
        &self.nodes[id]
    }

    /// Point indices of `C(t)`.
    pub fn members(&self, id: NodeId) -> &[usize] {
        let n = &self.nodes[id];
        &self.order.perm[n.lo..n.hi]
    }

    /// Γ square holding point `p` at depth `depth`.
    pub fn square_at(&self, p: Point, depth: u32) -> Square {
        let frame = self.frame();
        let level = frame.lbase + depth;
        assert!(level <= BITS, "depth {depth} is below quantization resolution");
        let corner = frame.cell_corner(frame.key(p), level);
        Square::from_corner(corner, frame.cell_side(level))
    }

    /// Square of a node: corner from rounding its representative at level
    /// `d_t + log ε⁻¹`, side `ε·2^{-d_t}`.
    pub fn node_square(&self, inst: &Instance, id: NodeId) -> Square {
        let n = &self.nodes[id];
        self.square_at(inst.point(n.rep), n.depth)
    }

    /// Reassign representatives bottom-up.
    pub fn assign_representatives(&mut self, inst: &Instance, mode: RepMode) {
        for id in (0..self.nodes.len()).rev() {
            if self.nodes[id].is_leaf() {
                let lo = self.nodes[id].lo;
                self.nodes[id].rep = self.order.perm[lo];
                continue;
            }
            let rep = match mode {
                RepMode::Unit => self.nodes[self.nodes[id].children[0]].rep,
                RepMode::ByRadius => self.nodes[id]
                    .children
                    .iter()
                    .map(|&c| self.nodes[c].rep)
                    .min_by(|&a, &b| inst.radius(b).total_cmp(&inst.radius(a)).then(a.cmp(&b)))
                    .unwrap(),
            };
            self.nodes[id].rep = rep;
        }
    }

    /// Node ids in preorder.
    pub fn preorder(&self) -> impl Iterator<Item = NodeId> {
        0..self.nodes.len()
    }

    /// Leaf holding the point at sorted position `pos`.
    pub fn leaf_of_position(&self, pos: usize) -> NodeId {
        let mut id = *self
            .roots
            .iter()
            .find(|&&r| self.nodes[r].lo <= pos && pos < self.nodes[r].hi)
            .expect("position inside some root");
        while !self.nodes[id].is_leaf() {
            id = *self.nodes[id]
                .children
                .iter()
                .find(|&&c| self.nodes[c].lo <= pos && pos < self.nodes[c].hi)
                .expect("children partition the range");
        }
        id
    }

    /// Position of every point in the Morton order.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.perm.len()];
        for (i, &p) in self.order.perm.iter().enumerate() {
            pos[p] = i;
        }
        pos
    }

    /// One node per line: `id depth corner_x corner_y side rep lo hi parent`,
    /// with `-1` for a missing parent.
    pub fn dump(&self, inst: &Instance) -> String {
        let mut out = String::new();
        for id in self.preorder() {
            let n = &self.nodes[id];
            let sq = self.node_square(inst, id);
            let c = sq.corner();
            let parent = n.parent.map(|p| p as i64).unwrap_or(-1);
            writeln!(out, "{id} {} {} {} {} {} {} {} {parent}", n.depth, c.x, c.y, sq.side, n.rep, n.lo, n.hi).unwrap();
        }
        out
    }

    /// Disk-graph forest: a disk of level `l` joins the dissection at depth `l`.
    ///
    /// Nodes whose points are all of deeper level than the node's deepest
    /// depth vanish; nodes holding no disk of level at most their own depth are
    /// pushed down to the level of their largest disk and become roots, as do
    /// children of vanished nodes. Representatives are the largest disks.
    pub fn split_roots_by_radius(&self, inst: &Instance) -> Result<CompressedForest> {
        let mut base = self.clone();
        base.assign_representatives(inst, RepMode::ByRadius);
        let max_level = base.min_level.iter().cloned().max().unwrap_or(0);
        let lbase = base.frame().lbase;
        if lbase + max_level > BITS {
            return Err(Error::ExtentTooLarge(lbase + max_level));
        }

        let kept: Vec<bool> = base
            .nodes
            .iter()
            .enumerate()
            .map(|(id, n)| n.is_leaf() || base.min_level[id] <= n.deepest())
            .collect();
        let mut new_id = vec![usize::MAX; base.nodes.len()];
        let mut nodes = Vec::new();
        let mut roots = Vec::new();
        let mut min_level = Vec::new();
        for id in base.preorder() {
            if !kept[id] {
                continue;
            }
            let n = &base.nodes[id];
            let level = base.min_level[id];
            let depth = n.depth.max(level);
            let parent = match n.parent {
                Some(p) if kept[p] && depth == n.depth => Some(new_id[p]),
                _ => None,
            };
            let nid = nodes.len();
            new_id[id] = nid;
            nodes.push(ForestNode {
                depth,
                split_depth: n.split_depth,
                parent,
                children: Vec::new(),
                rep: n.rep,
                lo: n.lo,
                hi: n.hi,
            });
            min_level.push(level);
            match parent {
                Some(p) => nodes[p].children.push(nid),
                None => roots.push(nid),
            }
        }
        Ok(CompressedForest { nodes, roots, order: base.order.clone(), eps: base.eps, min_level })
    }

    /// Members of `C(t)` that have joined the dissection by the node's depth.
    pub fn masked_members<'a>(&'a self, inst: &'a Instance, id: NodeId) -> impl Iterator<Item = usize> + 'a {
        let depth = self.nodes[id].depth;
        self.members(id).iter().cloned().filter(move |&p| disk_level(inst.radius(p)).unwrap_or(u32::MAX) <= depth)
    }
}
