use num_bigint::BigUint;

use super::cdf::{DiscreteCdf, EntranceCdf, PiecewiseLinearCdf};
use super::table::{cbar, stationary_walker, BreakpointTable};
use crate::diagram::{OrderedBratteliDiagram, PathPrefix};
use crate::dynamics::{big_to_f64, gap_pieces};
use crate::error::{Error, Result};
use crate::spectral::{CylinderMeasure, PerronData};

pub(crate) fn exact_u64(x: &BigUint) -> Result<u64> {
    u64::try_from(x)
        .ok()
        .filter(|&v| v < (1u64 << 53))
        .ok_or_else(|| Error::Overflow(format!("return time {} is too large for an exact lattice", x)))
}

/// Law of mu(I_n) times the entrance time into [I_n], at level n = |I_n|.
pub fn finite_f1(d: &OrderedBratteliDiagram, prefix: &PathPrefix, mu: &dyn CylinderMeasure) -> Result<EntranceCdf> {
    let (pieces, _) = gap_pieces(d, prefix, 1, mu)?;
    let atoms = pieces
        .iter()
        .map(|(g, m)| Ok((exact_u64(&g[0])?, *m)))
        .collect::<Result<_>>()?;
    Ok(EntranceCdf { spacing: mu.cylinder(prefix.len(), prefix.terminal())?, atoms })
}

/// Law of mu(I_n) (N^(k) - N^(k-1)) for k >= 2.
pub fn finite_fk(
    d: &OrderedBratteliDiagram,
    prefix: &PathPrefix,
    k: usize,
    mu: &dyn CylinderMeasure,
) -> Result<DiscreteCdf> {
    if k < 2 {
        return Err(Error::Precondition("k must be at least 2; the first entrance law is finite_f1".into()));
    }
    let (pieces, _) = gap_pieces(d, prefix, k, mu)?;
    let ln_mu = mu.ln_cylinder(prefix.len(), prefix.terminal())?;
    // every point between a visit and the next one enters there, so a piece
    // weighs its first gap times its mass
    let atoms = pieces
        .iter()
        .map(|(g, m)| ((ln_mu + big_to_f64(&g[k - 1]).ln()).exp(), big_to_f64(&g[0]) * m))
        .collect();
    Ok(DiscreteCdf::from_atoms(atoms))
}

/// Piecewise-linear limit of the entrance law: slope sum_{i>j} w_i / r(i*) on
/// [d_j, d_{j+1}), constant after the last breakpoint.
pub fn limit_f1(table: &BreakpointTable) -> PiecewiseLinearCdf {
    let r = table.r_star;
    let total_w: f64 = table.groups.iter().map(|g| g.weight).sum();
    let mut segments = vec![(0.0, 0.0, total_w / r)];
    let mut below = 0.0; // sum_{i<=j} c_i w_i
    let mut remaining = total_w; // sum_{i>j} w_i
    for g in &table.groups {
        below += g.cbar * g.weight;
        remaining -= g.weight;
        let value = below + g.cbar * remaining;
        let slope = if remaining > 0.0 { remaining / r } else { 0.0 };
        segments.push((g.breakpoint, value, slope));
    }
    if let Some(last) = segments.last_mut() {
        last.2 = 0.0;
    }
    PiecewiseLinearCdf::new(segments)
}

/// Limit of the k-th gap law (k >= 2): a step function with atoms at the breakpoints.
pub fn limit_fk(
    d: &OrderedBratteliDiagram,
    i_star: usize,
    k: usize,
    table: &BreakpointTable,
    pd: &PerronData,
) -> Result<DiscreteCdf> {
    if k < 2 {
        return Err(Error::Precondition("k must be at least 2; the first law is limit_f1".into()));
    }
    let mut w = stationary_walker(d, 1, i_star)?;
    let mut atoms = Vec::new();
    w.for_each_resolved(k, |s, _, profiles| {
        let top = s[s.len() - 1];
        let weight = cbar(&profiles[0], pd) * pd.r[top.target] / pd.lambda.powi(s.len() as i32);
        let last = cbar(&profiles[k - 1], pd);
        let g = table
            .group_of(last)
            .ok_or_else(|| Error::Numeric(format!("excursion constant {} is not in the table", last)))?;
        atoms.push((table.groups[g].breakpoint, weight));
        Ok(())
    })?;
    Ok(DiscreteCdf::from_atoms(atoms))
}
