//! Morton keys and the bichromatic closest pair.
use diskspan::geom::Point;
use diskspan::udg::bichromatic_closest_pair;
use diskspan::zorder::{agree, shuffle, unshuffle};

fn main() {
    let (a, b) = (shuffle(0b1010, 0b0110), shuffle(0b1011, 0b0110));
    println!("keys {a:#b} {b:#b}, unshuffled {:?}", unshuffle(a));
    // both keys share every bit pair above the lowest
    println!("agree above level 27: {}", agree(a, b, 27).unwrap());

    let pts: Vec<Point> = (0..10).map(|i| Point::new(i as f64, (i * i % 7) as f64)).collect();
    let red = [0, 2, 4, 6, 8];
    let blue = [1, 3, 5, 7, 9];
    let (u, v, d) = bichromatic_closest_pair(&pts, &red, &blue).unwrap();
    println!("closest red/blue pair ({u}, {v}) at {d:.3}");
}
