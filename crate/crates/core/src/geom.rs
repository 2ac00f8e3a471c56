//! Planar points, disks, squares and cones.
//!
//! An [`Instance`] is a set of disk centers with per-disk radii. Spanner
//! construction works on normalized instances: the largest radius is 1 and
//! the lower-left corner of the bounding box is the origin.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Squared Euclidean distance. Symmetric bit-for-bit in its arguments.
    #[inline]
    pub fn dist2(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    #[inline]
    pub fn dist(&self, other: &Point) -> f64 {
        self.dist2(other).sqrt()
    }
}

/// Axis-aligned square with half-open membership on both axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Square {
    pub center: Point,
    pub side: f64,
}

impl Square {
    pub fn from_corner(corner: Point, side: f64) -> Self {
        Square {
            center: Point::new(corner.x + side / 2.0, corner.y + side / 2.0),
            side,
        }
    }

    pub fn corner(&self) -> Point {
        Point::new(self.center.x - self.side / 2.0, self.center.y - self.side / 2.0)
    }

    pub fn contains(&self, p: Point) -> bool {
        square_contains(self, p)
    }
}

/// `x_c - l/2 <= x < x_c + l/2`, and the same for y.
pub fn square_contains(sq: &Square, p: Point) -> bool {
    let h = sq.side / 2.0;
    sq.center.x - h <= p.x && p.x < sq.center.x + h && sq.center.y - h <= p.y && p.y < sq.center.y + h
}

/// Approximation parameter ε with ε⁻¹ a power of two (at least 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Epsilon {
    inv: u32,
    log2_inv: u32,
}

impl Epsilon {
    pub fn from_inverse(inv: u32) -> Result<Self> {
        if inv < 2 || !inv.is_power_of_two() || inv > (1 << 20) {
            return Err(Error::InvalidEpsilon(format!("1/{inv}")));
        }
        Ok(Epsilon { inv, log2_inv: inv.trailing_zeros() })
    }

    /// Accepts `1/2^m`, `1/k` with k a power of two, or a decimal such as `0.125`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::InvalidEpsilon(text.to_string());
        let t = text.trim();
        if let Some(den) = t.strip_prefix("1/") {
            if let Some(m) = den.strip_prefix("2^") {
                let m: u32 = m.parse().map_err(|_| bad())?;
                if m == 0 || m > 20 {
                    return Err(bad());
                }
                return Epsilon::from_inverse(1 << m);
            }
            let k: u32 = den.parse().map_err(|_| bad())?;
            return Epsilon::from_inverse(k).map_err(|_| bad());
        }
        let v: f64 = t.parse().map_err(|_| bad())?;
        if !(v > 0.0 && v < 1.0) {
            return Err(bad());
        }
        let inv = (1.0 / v).round();
        if (1.0 / inv - v).abs() > 0.0 || inv > (1u32 << 20) as f64 {
            return Err(bad());
        }
        Epsilon::from_inverse(inv as u32).map_err(|_| bad())
    }

    pub fn value(&self) -> f64 {
        1.0 / self.inv as f64
    }

    /// ε⁻¹, also the number of cones around an apex.
    pub fn inverse(&self) -> u32 {
        self.inv
    }

    /// log₂ ε⁻¹.
    pub fn log2_inverse(&self) -> u32 {
        self.log2_inv
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/2^{}", self.log2_inv)
    }
}

/// Index of the cone of `target` around `apex`: `⌊θ / (2πε)⌋` with θ in `[0, 2π)`
/// measured from the positive x-axis. Cones are closed at their lower angle.
pub fn cone_index(apex: Point, target: Point, eps: Epsilon) -> Result<u32> {
    let dx = target.x - apex.x;
    let dy = target.y - apex.y;
    if dx == 0.0 && dy == 0.0 {
        return Err(Error::DegenerateDirection);
    }
    let mut theta = dy.atan2(dx);
    if theta < 0.0 {
        theta += 2.0 * PI;
    }
    let k = eps.inverse();
    let idx = (theta * k as f64 / (2.0 * PI)).floor();
    Ok((idx.max(0.0) as u32).min(k - 1))
}

/// Disk centers with radii.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    points: Vec<Point>,
    radii: Vec<f64>,
}

impl Instance {
    pub fn new(points: Vec<Point>, radii: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInstance);
        }
        if points.len() != radii.len() {
            return Err(Error::Parse {
                line: 0,
                msg: format!("{} points but {} radii", points.len(), radii.len()),
            });
        }
        for (index, &radius) in radii.iter().enumerate() {
            if !(radius > 0.0) || !radius.is_finite() {
                return Err(Error::InvalidRadius { index, radius });
            }
        }
        let mut seen: HashMap<(u64, u64), usize> = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if !p.x.is_finite() || !p.y.is_finite() {
                return Err(Error::Parse { line: 0, msg: format!("non-finite coordinate at {i}") });
            }
            // +0.0 and -0.0 are the same location
            let key = ((p.x + 0.0).to_bits(), (p.y + 0.0).to_bits());
            if let Some(&j) = seen.get(&key) {
                return Err(Error::DuplicatePoint(j, i));
            }
            seen.insert(key, i);
        }
        Ok(Instance { points, radii })
    }

    /// All radii equal to 1.
    pub fn unit(points: Vec<Point>) -> Result<Self> {
        let n = points.len();
        Instance::new(points, vec![1.0; n])
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn radius(&self, i: usize) -> f64 {
        self.radii[i]
    }

    pub fn max_radius(&self) -> f64 {
        self.radii.iter().cloned().fold(f64::MIN, f64::max)
    }

    pub fn min_radius(&self) -> f64 {
        self.radii.iter().cloned().fold(f64::MAX, f64::min)
    }

    /// Global stretch ρ: ratio of the largest to the smallest radius.
    pub fn global_stretch(&self) -> f64 {
        self.max_radius() / self.min_radius()
    }

    pub fn is_unit(&self) -> bool {
        self.radii.iter().all(|&r| r == 1.0)
    }

    pub fn is_normalized(&self) -> bool {
        self.max_radius() == 1.0
    }

    /// Lower-left and upper-right corners of the bounding box.
    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::MAX, f64::MAX);
        let mut hi = Point::new(f64::MIN, f64::MIN);
        for p in &self.points {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        (lo, hi)
    }

    /// Translate the bounding box to the origin and scale so the largest radius is 1.
    pub fn normalized(&self) -> Result<Instance> {
        let (lo, _) = self.bounding_box();
        let scale = self.max_radius();
        let points = self
            .points
            .iter()
            .map(|p| Point::new((p.x - lo.x) / scale, (p.y - lo.y) / scale))
            .collect();
        let radii = self.radii.iter().map(|r| r / scale).collect();
        Instance::new(points, radii)
    }

    /// `d(p, q) <= r_p + r_q`.
    pub fn disks_intersect(&self, i: usize, j: usize) -> bool {
        disks_intersect(self.points[i], self.radii[i], self.points[j], self.radii[j])
    }
}

/// Closed intersection test for two disks.
#[inline]
pub fn disks_intersect(p: Point, rp: f64, q: Point, rq: f64) -> bool {
    let s = rp + rq;
    p.dist2(&q) <= s * s
}
