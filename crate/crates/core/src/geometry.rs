//! Shapes and the functions defined on them.

pub mod complex;
pub mod function;
pub mod rational;

pub use complex::{CellId, CubeCell, CubicalComplex, Direction, EmbeddedComplex, Point, SimplicialComplex};
pub use function::{
    build_cubical_complex, height_summaries, pl_summaries, sample_directions, CellConstFunction, CellSummary,
    DirectionScheme, Grid, LowerCellConvention, PLFunction,
};
