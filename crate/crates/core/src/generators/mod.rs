//! Ready-made diagrams: the worked examples, odometers and Sturmian diagrams.

mod odometer;
mod sturmian;

use crate::diagram::{LevelSpec, OrderedBratteliDiagram};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub use odometer::{odometer_beta, odometer_classic, Bases, BetaOdometerMeasure};
pub use sturmian::{convergents, sturmian, sturmian_limits, Block, ConvergentTable, SturmianMeasure, SturmianSpec};

/// The stationary diagram with matrix [[1,1],[2,3]]: into vertex 1 the edges
/// come from (1, 2, 2), into vertex 2 from (1, 2, 2, 2).
pub fn example1() -> OrderedBratteliDiagram {
    let rep = LevelSpec::new(vec![vec![0, 1, 1], vec![0, 1, 1, 1]]);
    OrderedBratteliDiagram::stationary(OrderedBratteliDiagram::root_level(2), rep)
        .expect("example diagram is well formed")
}

/// Stationary diagram of a positive square matrix, edges into each vertex
/// sorted by source.
pub fn left_to_right(m: &Matrix) -> Result<OrderedBratteliDiagram> {
    if !m.is_square() || !m.is_positive() {
        return Err(Error::Precondition("left-to-right diagrams need a positive square matrix".into()));
    }
    OrderedBratteliDiagram::stationary(OrderedBratteliDiagram::root_level(m.rows()), LevelSpec::left_to_right(m))
}
