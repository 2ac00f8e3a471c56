//! Sparse spanners for unit disk graphs and general disk intersection graphs,
//! built on compressed quadtrees, plus separator decomposition and a
//! 3/2-approximation of the diameter on the resulting spanners.
//!
//! ```
//! use diskspan::geom::{Epsilon, Instance, Point};
//! use diskspan::udg::build_udg_spanner;
//!
//! let inst = Instance::unit(vec![Point::new(0.0, 0.0), Point::new(1.5, 0.0)]).unwrap();
//! let g = build_udg_spanner(&inst, Epsilon::parse("1/4").unwrap()).unwrap();
//! assert_eq!(g.m(), 1);
//! ```

pub mod cli;
pub mod config;
pub mod dg;
pub mod error;
pub mod gen;
pub mod geom;
pub mod graph;
pub mod io;
pub mod kdtree;
pub mod oracle;
pub mod proximity;
pub mod quadforest;
pub mod separator;
pub mod udg;
pub mod yao;
pub mod zorder;

pub use error::{Error, Result};
