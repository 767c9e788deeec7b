use super::cdf::lattice_index;
use super::laws::exact_u64;
use super::table::{cbar, stationary_walker, BreakpointTable};
use crate::diagram::{OrderedBratteliDiagram, PathPrefix};
use crate::dynamics::gap_pieces;
use crate::error::{Error, Result};
use crate::spectral::{CylinderMeasure, PerronData};

/// Thresholds (t_1, ..., t_p) for the joint law of the first p scaled gaps.
#[derive(Clone, Debug, PartialEq)]
pub struct FddSpec {
    pub thresholds: Vec<f64>,
}

impl FddSpec {
    pub fn new(thresholds: Vec<f64>) -> Result<Self> {
        if thresholds.is_empty() {
            return Err(Error::Precondition("at least one threshold is needed".into()));
        }
        if thresholds.iter().any(|t| !(*t >= 0.0)) {
            return Err(Error::Precondition("thresholds must be nonnegative".into()));
        }
        Ok(FddSpec { thresholds })
    }

    pub fn p(&self) -> usize {
        self.thresholds.len()
    }
}

/// P(mu N^(1) <= t_1, mu (N^(2) - N^(1)) <= t_2, ...) at level n, by exact enumeration.
pub fn finite_fdd(
    d: &OrderedBratteliDiagram,
    prefix: &PathPrefix,
    spec: &FddSpec,
    mu: &dyn CylinderMeasure,
) -> Result<f64> {
    let p = spec.p();
    let (pieces, _) = gap_pieces(d, prefix, p, mu)?;
    let spacing = mu.cylinder(prefix.len(), prefix.terminal())?;
    let ks: Vec<u64> = spec.thresholds.iter().map(|&t| lattice_index(t, spacing)).collect();
    let mut acc = 0.0;
    for (gaps, m) in &pieces {
        let mut pass = true;
        for j in 1..p {
            if exact_u64(&gaps[j])? > ks[j] {
                pass = false;
                break;
            }
        }
        if pass {
            acc += (ks[0].min(exact_u64(&gaps[0])?) as f64) * m;
        }
    }
    Ok(acc)
}

/// Limit of `finite_fdd` along levels ending at i*: sum over suffixes of
/// min(t_1 / r(i*), cbar_1) * prod_k 1{cbar_k r(i*) <= t_k} * r(top) / lambda^len.
pub fn limit_fdd(
    d: &OrderedBratteliDiagram,
    i_star: usize,
    spec: &FddSpec,
    table: &BreakpointTable,
    pd: &PerronData,
) -> Result<f64> {
    let p = spec.p();
    let r_star = pd.r[i_star];
    let mut w = stationary_walker(d, 1, i_star)?;
    let mut acc = 0.0;
    w.for_each_resolved(p, |s, _, profiles| {
        let mut pass = true;
        for j in 1..p {
            let c = cbar(&profiles[j], pd);
            let g = table
                .group_of(c)
                .ok_or_else(|| Error::Numeric(format!("excursion constant {} is not in the table", c)))?;
            if table.groups[g].breakpoint > spec.thresholds[j] {
                pass = false;
                break;
            }
        }
        if pass {
            let top = s[s.len() - 1];
            let c1 = cbar(&profiles[0], pd);
            acc += (spec.thresholds[0] / r_star).min(c1) * pd.r[top.target] / pd.lambda.powi(s.len() as i32);
        }
        Ok(())
    })?;
    Ok(acc)
}
