//! Balanced separator tree of a spanner, with its verification report.
use diskspan::gen::{generate, GenConfig};
use diskspan::geom::Epsilon;
use diskspan::separator::{build_separator_decomposition, verify_separator};
use diskspan::udg::build_udg_spanner;

fn main() {
    let eps = Epsilon::from_inverse(4).unwrap();
    for n in [256, 1024, 4096] {
        let inst = generate(&GenConfig::uniform(n, 9)).unwrap();
        let g = build_udg_spanner(&inst, eps).unwrap();
        let tree = build_separator_decomposition(&g, &inst, eps);
        let r = verify_separator(&tree, &g).unwrap();
        println!(
            "n={n}: {} nodes, height {}, root separator {}, max ratio {:.3}",
            r.nodes, r.height, r.root_separator, r.max_ratio
        );
    }
}
