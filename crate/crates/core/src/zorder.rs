//! Bit-interleaved (Morton) keys over a fixed-point quantization of the plane.
//!
//! Coordinates are mapped into `[0, 1)` by dividing by a power of two, then
//! quantized to [`BITS`] bits per axis. Because every scale involved is a
//! power of two, the quadtree cell a point falls in at any level is read off
//! the top bit pairs of its key with no rounding.

use crate::error::{Error, Result};
use crate::geom::{Epsilon, Instance, Point};

/// Bits per coordinate.
pub const BITS: u32 = 31;

/// Interleave: bit `i` of `x` goes to bit `2i + 1`, bit `i` of `y` to bit `2i`.
#[inline]
pub fn shuffle(x: u32, y: u32) -> u64 {
    spread(x) << 1 | spread(y)
}

#[inline]
fn spread(v: u32) -> u64 {
    let mut v = v as u64;
    v = (v | (v << 16)) & 0x0000_FFFF_0000_FFFF;
    v = (v | (v << 8)) & 0x00FF_00FF_00FF_00FF;
    v = (v | (v << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    v = (v | (v << 2)) & 0x3333_3333_3333_3333;
    v = (v | (v << 1)) & 0x5555_5555_5555_5555;
    v
}

#[inline]
fn compact(v: u64) -> u32 {
    let mut v = v & 0x5555_5555_5555_5555;
    v = (v | (v >> 1)) & 0x3333_3333_3333_3333;
    v = (v | (v >> 2)) & 0x0F0F_0F0F_0F0F_0F0F;
    v = (v | (v >> 4)) & 0x00FF_00FF_00FF_00FF;
    v = (v | (v >> 8)) & 0x0000_FFFF_0000_FFFF;
    v = (v | (v >> 16)) & 0x0000_0000_FFFF_FFFF;
    v as u32
}

/// Inverse of [`shuffle`].
pub fn unshuffle(key: u64) -> (u32, u32) {
    (compact(key >> 1), compact(key))
}

/// Number of leading bit pairs shared by two keys of `bits` bits per axis.
#[inline]
pub fn common_pairs(a: u64, b: u64, bits: u32) -> u32 {
    let unused = 64 - 2 * bits;
    let lz = (a ^ b).leading_zeros().min(64);
    (lz - unused) / 2
}

/// Depth, relative to the grid `lbase` bit pairs below the top, of the smallest
/// quadtree square holding both keys. Negative when they separate above that grid.
pub fn agree_with_bits(a: u64, b: u64, bits: u32, lbase: u32) -> Result<i32> {
    if a == b {
        return Err(Error::EqualKeys);
    }
    Ok(common_pairs(a, b, bits) as i32 - lbase as i32)
}

/// [`agree_with_bits`] at the crate-wide [`BITS`].
pub fn agree(a: u64, b: u64, lbase: u32) -> Result<i32> {
    agree_with_bits(a, b, BITS, lbase)
}

/// Snap `v` down to a multiple of `2^-l`.
pub fn round_to_grid(v: f64, l: u32) -> f64 {
    let s = (l as f64).exp2();
    (v * s).floor() / s
}

/// Power-of-two frame that maps a normalized instance into the unit square.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    /// log₂ of the frame side; coordinates are divided by `2^scale_log2`.
    pub scale_log2: u32,
    /// Bit-pair level of the ε-grid: `scale_log2 + log₂ ε⁻¹`.
    pub lbase: u32,
}

impl Frame {
    /// Smallest power-of-two side strictly larger than every coordinate, at least 1.
    pub fn for_instance(inst: &Instance, eps: Epsilon) -> Result<Self> {
        let (_, hi) = inst.bounding_box();
        let extent = hi.x.max(hi.y).max(0.0);
        let mut s = 0u32;
        while (s as f64).exp2() <= extent {
            s += 1;
        }
        let lbase = s + eps.log2_inverse();
        if lbase >= BITS {
            return Err(Error::ExtentTooLarge(lbase));
        }
        Ok(Frame { scale_log2: s, lbase })
    }

    pub fn side(&self) -> f64 {
        (self.scale_log2 as f64).exp2()
    }

    /// Fixed-point cell of `p` at full resolution.
    pub fn quantize(&self, p: Point) -> (u32, u32) {
        let f = (BITS as f64 - self.scale_log2 as f64).exp2();
        let q = |v: f64| -> u32 {
            let t = (v * f).floor();
            t.clamp(0.0, ((1u64 << BITS) - 1) as f64) as u32
        };
        (q(p.x), q(p.y))
    }

    pub fn key(&self, p: Point) -> u64 {
        let (x, y) = self.quantize(p);
        shuffle(x, y)
    }

    /// Real-coordinate length of one quantum.
    pub fn quantum(&self) -> f64 {
        (self.scale_log2 as f64 - BITS as f64).exp2()
    }

    /// Lower-left corner (real coordinates) of the cell containing `key` at
    /// bit-pair `level`.
    pub fn cell_corner(&self, key: u64, level: u32) -> Point {
        let drop = BITS - level.min(BITS);
        let (x, y) = unshuffle(key);
        let mask = if drop >= 32 { 0 } else { !0u32 << drop };
        let q = self.quantum();
        Point::new((x & mask) as f64 * q, (y & mask) as f64 * q)
    }

    /// Side of a cell at bit-pair `level`.
    pub fn cell_side(&self, level: u32) -> f64 {
        (self.scale_log2 as f64 - level as f64).exp2()
    }
}

/// Points sorted by Morton key.
#[derive(Debug, Clone, PartialEq)]
pub struct MortonOrder {
    pub frame: Frame,
    /// `perm[i]` is the point index at sorted position `i`.
    pub perm: Vec<usize>,
    /// Keys in sorted order, aligned with `perm`.
    pub keys: Vec<u64>,
}

/// Sort point indices by increasing Morton key.
pub fn morton_sort(inst: &Instance, frame: Frame) -> Result<MortonOrder> {
    let mut tagged: Vec<(u64, usize)> =
        inst.points().iter().enumerate().map(|(i, &p)| (frame.key(p), i)).collect();
    tagged.sort_unstable();
    for w in tagged.windows(2) {
        if w[0].0 == w[1].0 {
            let (a, b) = (w[0].1.min(w[1].1), w[0].1.max(w[1].1));
            return Err(Error::QuantizationCollision(a, b));
        }
    }
    Ok(MortonOrder {
        frame,
        perm: tagged.iter().map(|t| t.1).collect(),
        keys: tagged.iter().map(|t| t.0).collect(),
    })
}
