//! Diameter estimate over the separator tree against the exact value.
use diskspan::gen::{generate, GenConfig};
use diskspan::geom::Epsilon;
use diskspan::oracle::exact_diameter;
use diskspan::proximity::estimate_diameter;
use diskspan::separator::build_separator_decomposition;
use diskspan::udg::build_udg_spanner;

fn main() {
    let eps = Epsilon::from_inverse(4).unwrap();
    let inst = generate(&GenConfig { side: Some(12.0), ..GenConfig::uniform(400, 4) }).unwrap();
    let g = build_udg_spanner(&inst, eps).unwrap();
    let tree = build_separator_decomposition(&g, &inst, eps);
    let r = estimate_diameter(&g, &tree, true).unwrap();
    let exact = exact_diameter(&g);
    println!("{} components; estimate {:.3}, exact {:.3}", r.per_component.len(), r.dia, exact);
}
