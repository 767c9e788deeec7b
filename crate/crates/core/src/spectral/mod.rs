//! Perron-Frobenius data and invariant measures of cylinder sets.

mod measure;
mod perron;

pub use measure::{
    measure_vector, nonstationary_measure_estimate, stationary_cylinder_measure, CylinderMeasure, EstimatedMeasure,
    MeasureVector, StationaryMeasure,
};
pub use perron::{perron, subdominant_rate, PerronData, SubdominantRate, DEFAULT_TOL};
