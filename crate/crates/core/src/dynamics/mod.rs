//! Adic dynamics on truncated path spaces, tower bookkeeping and exact return times.

mod excursion;
mod oracle;
mod spectrum;


use num_bigint::BigUint;

use crate::diagram::{EdgeRef, OrderedBratteliDiagram, PathPrefix};
use crate::error::{Error, Result};

pub use excursion::{excursion_walk, kth_return_state, return_time, ExcursionProfile, Suffix};
pub(crate) use excursion::Walker;
pub use oracle::{brute_force_returns, OracleCylinder, OracleOptions, OracleResult};
pub use spectrum::{return_spectrum, ReturnSpectrum, SpectrumSource};
pub(crate) use spectrum::{big_to_f64, gap_pieces};
pub(crate) use excursion::enumerate_suffixes;


/// Kakutani-Rokhlin towers at level n: the paths into vertex i, read in
/// adic order from the base path `bases[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerSystem {
    pub level: usize,
    pub heights: Vec<BigUint>,
    pub bases: Vec<PathPrefix>,
}

impl TowerSystem {
    pub fn new(d: &OrderedBratteliDiagram, n: usize) -> Result<Self> {
        let heights = d.heights(n)?;
        let bases = (0..heights.len()).map(|i| d.min_path(n, i)).collect::<Result<_>>()?;
        Ok(TowerSystem { level: n, heights, bases })
    }
}

/// A point of the truncated path space together with the number of times
/// the orbit has left the top of the last tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdicState {
    pub path: PathPrefix,
    pub wraps: u64,
}

impl AdicState {
    pub fn new(path: PathPrefix) -> Self {
        AdicState { path, wraps: 0 }
    }

    pub fn wrapped(&self) -> bool {
        self.wraps > 0
    }
}

/// Moves the path to its successor in place. Returns the index of the edge
/// that was incremented, or `None` when every edge was maximal (the path is
/// left untouched in that case).
pub(crate) fn step_in_place(d: &OrderedBratteliDiagram, edges: &mut [EdgeRef]) -> Result<Option<usize>> {
    for idx in 0..edges.len() {
        let e = edges[idx];
        let list = &d.level(e.level)?.into[e.target];
        if e.rank + 1 < list.len() {
            edges[idx].rank += 1;
            let mut v = list[e.rank + 1];
            for j in (0..idx).rev() {
                edges[j] = EdgeRef { level: j + 1, target: v, rank: 0 };
                v = d.level(j + 1)?.into[v][0];
            }
            return Ok(Some(idx));
        }
    }
    Ok(None)
}

/// Successor on depth-m paths. Towers of V_m are visited in label order; past
/// the top of the last one the orbit restarts at the base of the first and
/// the wrap counter is incremented.
pub fn adic_successor(d: &OrderedBratteliDiagram, s: &AdicState) -> Result<AdicState> {
    let mut edges = s.path.edges().to_vec();
    let m = edges.len();
    if m == 0 {
        return Err(Error::InvalidPath("the empty path has no successor".into()));
    }
    if step_in_place(d, &mut edges)?.is_some() {
        return Ok(AdicState { path: PathPrefix::new(d, edges)?, wraps: s.wraps });
    }
    let top = edges[m - 1].target;
    let count = d.vertex_count(m)?;
    let next = (top + 1) % count;
    let wraps = s.wraps + u64::from(next == 0);
    Ok(AdicState { path: d.min_path(m, next)?, wraps })
}

pub fn min_path(d: &OrderedBratteliDiagram, n: usize, i: usize) -> Result<PathPrefix> {
    d.min_path(n, i)
}

pub fn max_path(d: &OrderedBratteliDiagram, n: usize, i: usize) -> Result<PathPrefix> {
    d.max_path(n, i)
}
