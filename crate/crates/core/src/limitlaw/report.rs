use std::ops::RangeInclusive;

use num_bigint::BigUint;

use super::cdf::{sup_distance, Cdf};
use super::laws::{finite_f1, finite_fk, limit_f1, limit_fk};
use super::table::breakpoint_table;
use crate::diagram::{OrderedBratteliDiagram, PathPrefix};
use crate::dynamics::{brute_force_returns, enumerate_suffixes, excursion_walk, return_spectrum, return_time, OracleOptions};
use crate::error::{Error, Result};
use crate::spectral::{CylinderMeasure, StationaryMeasure};

/// Longest truncated orbit the sequence check is allowed to walk.
const ORACLE_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub i_star: usize,
    pub k: usize,
    /// (n, sup distance between the level-n law and the limit)
    pub rows: Vec<(usize, f64)>,
    /// least-squares slope of ln(distance) against n
    pub slope: Option<f64>,
    pub strictly_decreasing: bool,
    /// Whether brute-force return times of the given cylinders agree with
    /// the excursion walk from the minimal path into i*, checked on the
    /// levels whose truncated orbit is small enough (`None`: none were).
    pub sequence_independent: Option<bool>,
}

/// Least-squares slope of ln(y) on x over the positive y.
pub fn log_slope(rows: &[(usize, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows.iter().filter(|r| r.1 > 0.0).map(|&(n, y)| (n as f64, y.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Some(sxy / sxx)
}

/// Distances between the level-n laws of the cylinders `seq(n)` and a given
/// target law.
pub fn convergence_report_against(
    d: &OrderedBratteliDiagram,
    seq: &dyn Fn(usize) -> Result<PathPrefix>,
    k: usize,
    levels: RangeInclusive<usize>,
    mu: &dyn CylinderMeasure,
    target: &dyn Cdf,
) -> Result<ConvergenceReport> {
    let mut rows = Vec::new();
    let mut i_star = None;
    let mut agree: Option<bool> = None;
    for n in levels {
        let prefix = seq(n)?;
        if prefix.len() != n {
            return Err(Error::InvalidPath(format!("sequence returned a path of length {} at level {}", prefix.len(), n)));
        }
        match i_star {
            None => i_star = Some(prefix.terminal()),
            Some(i) if i != prefix.terminal() => {
                return Err(Error::Precondition(format!(
                    "cylinder at level {} ends at vertex {}, not {}",
                    n,
                    prefix.terminal() + 1,
                    i + 1
                )))
            }
            _ => {}
        }
        let dist = if k == 1 {
            sup_distance(&finite_f1(d, &prefix, mu)?, target)
        } else {
            sup_distance(&finite_fk(d, &prefix, k, mu)?, target)
        };
        rows.push((n, dist));
        if let Some(ok) = oracle_matches_walk(d, &prefix)? {
            agree = Some(agree.unwrap_or(true) && ok);
        }
    }
    let slope = log_slope(&rows);
    let strictly_decreasing = rows.windows(2).all(|w| w[1].1 < w[0].1);
    Ok(ConvergenceReport {
        i_star: i_star.unwrap_or(0),
        k,
        rows,
        slope,
        strictly_decreasing,
        sequence_independent: agree,
    })
}

/// Distances to the limit law of a stationary diagram.
pub fn convergence_report(
    d: &OrderedBratteliDiagram,
    seq: &dyn Fn(usize) -> Result<PathPrefix>,
    k: usize,
    levels: RangeInclusive<usize>,
) -> Result<ConvergenceReport> {
    let mu = StationaryMeasure::new(d)?;
    let first = seq(*levels.start())?;
    let table = breakpoint_table(d, first.terminal(), &mu.perron)?;
    if k == 1 {
        convergence_report_against(d, seq, k, levels, &mu, &limit_f1(&table))
    } else {
        let limit = limit_fk(d, first.terminal(), k, &table, &mu.perron)?;
        convergence_report_against(d, seq, k, levels, &mu, &limit)
    }
}

/// Compares brute-force first returns on [I_n e f] with the walk for e f.
/// `None` when the truncated orbit is too long or the walk does not apply.
pub(crate) fn oracle_matches_walk(d: &OrderedBratteliDiagram, prefix: &PathPrefix) -> Result<Option<bool>> {
    let n = prefix.len();
    let orbit: BigUint = d.heights(n + 2)?.iter().sum();
    if orbit > BigUint::from(ORACLE_BUDGET) {
        return Ok(None);
    }
    let i_star = prefix.terminal();
    let suffixes = enumerate_suffixes(d, n, i_star, 2)?;
    let mut walk_times = Vec::with_capacity(suffixes.len());
    for s in &suffixes {
        match excursion_walk(d, n, i_star, s) {
            Ok(p) => walk_times.push(return_time(d, n, &p)?),
            Err(Error::Hypothesis { .. }) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    let r = brute_force_returns(d, prefix, 1, OracleOptions { depth: Some(n + 2), ..Default::default() })?;
    for c in &r.cylinders {
        let ef = &c.path[n..n + 2];
        let idx = suffixes.iter().position(|s| s[..] == *ef).expect("oracle cylinder outside the suffix set");
        if walk_times[idx] != BigUint::from(c.gaps[0]) {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

/// Largest scaled first-return time mu(J_n(i)) N over all vertices and the
/// given levels; bounded for linearly recurrent diagrams.
pub fn scaled_return_bound(
    d: &OrderedBratteliDiagram,
    levels: RangeInclusive<usize>,
    mu: &dyn CylinderMeasure,
) -> Result<f64> {
    let mut best: f64 = 0.0;
    for n in levels {
        for i in 0..d.vertex_count(n)? {
            let spec = return_spectrum(d, &d.min_path(n, i)?, mu)?;
            if let Some((r, _)) = spec.atoms.last() {
                best = best.max((spec.ln_scale + crate::dynamics::big_to_f64(r).ln()).exp());
            }
        }
    }
    Ok(best)
}
