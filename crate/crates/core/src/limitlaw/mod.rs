//! Finite-level return-time laws, their piecewise-linear limits, joint laws
//! of successive gaps, and convergence reports.

mod cdf;
pub mod csv;
mod fdd;
mod laws;
mod report;
mod table;

pub use cdf::{lattice_index, sup_distance, Cdf, DiscreteCdf, EntranceCdf, Piece, PiecewiseLinearCdf};
pub use fdd::{finite_fdd, limit_fdd, FddSpec};
pub use laws::{finite_f1, finite_fk, limit_f1, limit_fk};
pub use report::{convergence_report, convergence_report_against, log_slope, scaled_return_bound, ConvergenceReport};
pub use table::{
    breakpoint_table, breakpoint_table_at, cbar, left_right_closed_form, BreakpointGroup, BreakpointTable, GROUP_TOL,
};
