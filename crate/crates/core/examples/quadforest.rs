//! Compressed quadtree forest of a small instance, printed node by node.
use diskspan::gen::{generate, Distribution, GenConfig, Radii};
use diskspan::geom::Epsilon;
use diskspan::quadforest::build_compressed_forest;

fn main() {
    let cfg = GenConfig { n: 12, dist: Distribution::Clustered, radii: Radii::Unit, seed: 5, side: Some(3.0) };
    let inst = generate(&cfg).unwrap().normalized().unwrap();
    let f = build_compressed_forest(&inst, Epsilon::from_inverse(4).unwrap()).unwrap();
    println!("{} roots, {} nodes", f.roots.len(), f.len());
    print!("{}", f.dump(&inst));
}
