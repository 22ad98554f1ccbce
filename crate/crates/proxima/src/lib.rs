//! Finite planar CW spaces with descriptive proximity machinery: region
//! operators, filled 1-cycles and ribbons, free Abelian group
//! representations with Betti numbers, Cech and descriptive proximities
//! with axiom checkers, and fixed-set detection for maps on these spaces.

pub mod algebra;
pub mod cli;
pub mod complex;
pub mod cycles;
pub mod document;
pub mod error;
pub mod fixed;
pub mod fixtures;
pub mod geom;
pub mod proximity;
pub mod render;

pub use complex::{CWSpace, Cell, CellComplex, CellId, VertexId};
pub use cycles::{Cycle, Ribbon};
pub use error::{Error, ParseError, Result};
pub use geom::{Point2, Rational};
