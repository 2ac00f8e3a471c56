//! Seeded random instances.

use std::collections::HashSet;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{Instance, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distribution {
    Uniform,
    /// Gaussian blobs around uniformly placed centers.
    Clustered,
    /// Unit-spaced square lattice, row by row.
    Grid,
}

impl FromStr for Distribution {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "uniform" => Ok(Distribution::Uniform),
            "clustered" => Ok(Distribution::Clustered),
            "grid" => Ok(Distribution::Grid),
            _ => Err(format!("unknown distribution `{s}` (uniform, clustered, grid)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Radii {
    Unit,
    /// `log r` uniform on `[log min, 0]`.
    LogUniform(f64),
}

impl FromStr for Radii {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "unit" {
            return Ok(Radii::Unit);
        }
        let min = s
            .strip_prefix("loguniform:")
            .ok_or_else(|| format!("unknown radii `{s}` (unit, loguniform:MIN)"))?
            .parse::<f64>()
            .map_err(|e| format!("bad minimum radius: {e}"))?;
        if !(min > 0.0 && min <= 1.0) {
            return Err(format!("minimum radius must lie in (0, 1], got {min}"));
        }
        Ok(Radii::LogUniform(min))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenConfig {
    pub n: usize,
    pub dist: Distribution,
    pub radii: Radii,
    pub seed: u64,
    /// Side of the sampling square; `None` keeps one point per unit area.
    pub side: Option<f64>,
}

impl GenConfig {
    pub fn uniform(n: usize, seed: u64) -> Self {
        GenConfig { n, dist: Distribution::Uniform, radii: Radii::Unit, seed, side: None }
    }

    pub fn side(&self) -> f64 {
        self.side.unwrap_or_else(|| (self.n as f64).sqrt().max(1.0))
    }
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub fn generate(cfg: &GenConfig) -> Result<Instance> {
    if cfg.n == 0 {
        return Err(Error::EmptyInstance);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let side = cfg.side();
    let mut points = Vec::with_capacity(cfg.n);
    let mut seen = HashSet::with_capacity(cfg.n);
    let mut push = |p: Point, points: &mut Vec<Point>| {
        if seen.insert((p.x.to_bits(), p.y.to_bits())) {
            points.push(p);
        }
    };
    match cfg.dist {
        Distribution::Uniform => {
            while points.len() < cfg.n {
                let p = Point::new(rng.gen_range(0.0..side), rng.gen_range(0.0..side));
                push(p, &mut points);
            }
        }
        Distribution::Clustered => {
            let k = (cfg.n / 50).max(1);
            let centers: Vec<Point> =
                (0..k).map(|_| Point::new(rng.gen_range(0.0..side), rng.gen_range(0.0..side))).collect();
            let sigma = side / (4.0 * (k as f64).sqrt());
            while points.len() < cfg.n {
                let c = centers[rng.gen_range(0..k)];
                let p = Point::new(c.x + sigma * gaussian(&mut rng), c.y + sigma * gaussian(&mut rng));
                push(p, &mut points);
            }
        }
        Distribution::Grid => {
            let cols = (cfg.n as f64).sqrt().ceil() as usize;
            for i in 0..cfg.n {
                push(Point::new((i % cols) as f64, (i / cols) as f64), &mut points);
            }
        }
    }
    let radii = match cfg.radii {
        Radii::Unit => vec![1.0; cfg.n],
        Radii::LogUniform(min) => {
            let lmin = min.log2();
            (0..cfg.n).map(|_| (lmin * rng.gen::<f64>()).exp2().max(min)).collect()
        }
    };
    Instance::new(points, radii)
}
