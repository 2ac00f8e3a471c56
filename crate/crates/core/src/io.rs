//! Instance text format: a header line `k n` with `k = 2`, then `n` lines `x y r`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geom::{Instance, Point};

pub fn parse_instance(text: &str) -> Result<Instance> {
    let err = |line: usize, msg: String| Error::Parse { line, msg };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !l.trim().is_empty());
    let (hl, header) = lines.next().ok_or_else(|| err(1, "missing header".into()))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 2 {
        return Err(err(hl, "header must be `k n`".into()));
    }
    let k: usize = h[0].parse().map_err(|_| err(hl, format!("bad dimension `{}`", h[0])))?;
    if k != 2 {
        return Err(err(hl, format!("only planar instances are supported, got dimension {k}")));
    }
    let n: usize = h[1].parse().map_err(|_| err(hl, format!("bad point count `{}`", h[1])))?;
    let mut points = Vec::with_capacity(n);
    let mut radii = Vec::with_capacity(n);
    for (ln, line) in lines {
        let t: Vec<&str> = line.split_whitespace().collect();
        if t.len() != 3 {
            return Err(err(ln, "expected `x y r`".into()));
        }
        let mut v = [0.0; 3];
        for (slot, tok) in v.iter_mut().zip(&t) {
            *slot = tok.parse().map_err(|_| err(ln, format!("bad number `{tok}`")))?;
        }
        points.push(Point::new(v[0], v[1]));
        radii.push(v[2]);
    }
    if points.len() != n {
        return Err(err(hl, format!("header says {n} points, found {}", points.len())));
    }
    Instance::new(points, radii)
}

pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::with_capacity(48 * (inst.len() + 1));
    writeln!(out, "2 {}", inst.len()).unwrap();
    for (p, r) in inst.points().iter().zip(inst.radii()) {
        writeln!(out, "{} {} {}", p.x, p.y, r).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let inst = Instance::new(vec![Point::new(0.1, 2.0 / 3.0), Point::new(-4.0, 1e-9)], vec![1.0, 0.3]).unwrap();
        assert_eq!(parse_instance(&write_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_instance("3 1\n0 0 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_instance("2 2\n0 0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_instance("2 1\n0 zero 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_instance("2 2\n0 0 1\n0 0 1\n"), Err(Error::DuplicatePoint(0, 1))));
        assert!(matches!(parse_instance("2 1\n0 0 -1\n"), Err(Error::InvalidRadius { .. })));
    }
}
