//! Unit disk graph spanner on a uniform instance, checked against the full graph.
use diskspan::config::StretchConstants;
use diskspan::gen::{generate, GenConfig};
use diskspan::geom::Epsilon;
use diskspan::oracle::{build_intersection_graph, verify_stretch};
use diskspan::udg::build_udg_detailed;

fn main() {
    let inst = generate(&GenConfig::uniform(2000, 1)).unwrap();
    for inv in [4, 8] {
        let eps = Epsilon::from_inverse(inv).unwrap();
        let b = build_udg_detailed(&inst, eps).unwrap();
        let g = build_intersection_graph(&inst).unwrap();
        let bound = StretchConstants::for_eps(eps).udg_bound();
        let r = verify_stretch(&g, &b.spanner, bound).unwrap();
        println!(
            "eps=1/{inv}: {} of {} edges kept, {} forest nodes, stretch {:.3} (bound {bound:.3})",
            b.spanner.m(),
            g.m(),
            b.forest.len(),
            r.max_ratio
        );
    }
}
