//! Seeded instances: the same config always yields the same points.
use diskspan::gen::{generate, Distribution, GenConfig, Radii};
use diskspan::io::write_instance;

fn main() {
    let cfg = GenConfig { n: 8, dist: Distribution::Clustered, radii: Radii::LogUniform(0.1), seed: 42, side: None };
    let inst = generate(&cfg).unwrap();
    print!("{}", write_instance(&inst));
    println!("global stretch {:.2}", inst.global_stretch());
}
