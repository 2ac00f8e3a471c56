//! Disk graph spanner with radii spread over three orders of magnitude.
use diskspan::config::StretchConstants;
use diskspan::dg::build_dg_spanner;
use diskspan::gen::{generate, Distribution, GenConfig, Radii};
use diskspan::geom::Epsilon;
use diskspan::oracle::{build_intersection_graph, verify_stretch};

fn main() {
    let cfg = GenConfig { n: 1000, dist: Distribution::Uniform, radii: Radii::LogUniform(1.0 / 1024.0), seed: 3, side: Some(8.0) };
    let inst = generate(&cfg).unwrap();
    let eps = Epsilon::from_inverse(8).unwrap();
    let g = build_intersection_graph(&inst).unwrap();
    let gp = build_dg_spanner(&inst, eps).unwrap();
    let r = verify_stretch(&g, &gp, StretchConstants::for_eps(eps).dg_bound()).unwrap();
    println!("rho {:.0}: {} of {} edges, stretch {:.3}", inst.global_stretch(), gp.m(), g.m(), r.max_ratio);
}
