//! Modified Yao graph: every point keeps, per cone, the closest intersecting
//! disk that is at least as large as its own.

use crate::error::Result;
use crate::geom::{cone_index, Epsilon, Instance};
use crate::graph::SpannerGraph;

/// `(p, q)` with `q` preferred over `p` as a target: larger radius, or equal
/// radius and larger index.
fn ranks_above(inst: &Instance, q: usize, p: usize) -> bool {
    let (rp, rq) = (inst.radius(p), inst.radius(q));
    rq > rp || (rq == rp && q > p)
}

/// Directed Yao edges `(p, q)`, at most one per point and cone.
pub fn yao_directed(inst: &Instance, eps: Epsilon) -> Result<Vec<(usize, usize)>> {
    let n = inst.len();
    let k = eps.inverse() as usize;
    let mut out = Vec::new();
    let mut best: Vec<Option<(f64, usize)>> = vec![None; k];
    for p in 0..n {
        best.iter_mut().for_each(|b| *b = None);
        let pp = inst.point(p);
        for q in 0..n {
            if q == p || !ranks_above(inst, q, p) || !inst.disks_intersect(p, q) {
                continue;
            }
            let pq = inst.point(q);
            let c = cone_index(pp, pq, eps)? as usize;
            let d = pp.dist2(&pq);
            match best[c] {
                Some((bd, _)) if bd <= d => {}
                _ => best[c] = Some((d, q)),
            }
        }
        out.extend(best.iter().flatten().map(|&(_, q)| (p, q)));
    }
    Ok(out)
}

/// Undirected modified Yao graph with Euclidean weights.
pub fn build_modified_yao(inst: &Instance, eps: Epsilon) -> Result<SpannerGraph> {
    let edges = yao_directed(inst, eps)?.into_iter().map(|(p, q)| SpannerGraph::geometric_edge(inst, p, q, 0));
    Ok(SpannerGraph::from_edges(inst.len(), edges))
}
