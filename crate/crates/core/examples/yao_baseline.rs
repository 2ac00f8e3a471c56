//! Cone-based baseline: bounded out-degree, stretch shrinking with eps.
use diskspan::gen::{generate, GenConfig};
use diskspan::geom::Epsilon;
use diskspan::oracle::{build_intersection_graph, verify_stretch};
use diskspan::yao::build_modified_yao;

fn main() {
    let inst = generate(&GenConfig::uniform(500, 2)).unwrap();
    let g = build_intersection_graph(&inst).unwrap();
    for inv in [8, 16, 32] {
        let gp = build_modified_yao(&inst, Epsilon::from_inverse(inv).unwrap()).unwrap();
        let r = verify_stretch(&g, &gp, f64::INFINITY).unwrap();
        println!("eps=1/{inv}: {} edges, stretch {:.4}", gp.m(), r.max_ratio);
    }
}
