//! Stretch verification reports the worst edge, even when a bound holds.
use diskspan::gen::{generate, GenConfig};
use diskspan::geom::Epsilon;
use diskspan::oracle::{build_intersection_graph, verify_stretch};
use diskspan::udg::build_udg_spanner;

fn main() {
    let inst = generate(&GenConfig::uniform(300, 6)).unwrap();
    let g = build_intersection_graph(&inst).unwrap();
    let gp = build_udg_spanner(&inst, Epsilon::from_inverse(8).unwrap()).unwrap();
    for bound in [2.0, 1.1] {
        let r = verify_stretch(&g, &gp, bound).unwrap();
        println!("bound {bound}: {} (max {:.3}, witness {:?})", if r.pass { "PASS" } else { "FAIL" }, r.max_ratio, r.witness);
    }
}
