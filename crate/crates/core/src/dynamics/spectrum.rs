use num_bigint::BigUint;

use super::excursion::Walker;
use super::oracle::{brute_force_returns, OracleOptions};
use crate::diagram::{OrderedBratteliDiagram, PathPrefix};
use crate::error::{Error, Result};
use crate::spectral::CylinderMeasure;

/// How return times were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumSource {
    /// excursion walk above level n (the standing hypotheses hold there)
    Walk,
    /// brute-force iteration of the adic map
    Oracle,
}

/// The distinct first-return times to [I_n] with the mass of the set of
/// points of [I_n] returning at each of them.
#[derive(Clone, Debug, PartialEq)]
pub struct ReturnSpectrum {
    pub level: usize,
    pub terminal: usize,
    /// ln mu([I_n])
    pub ln_scale: f64,
    pub atoms: Vec<(BigUint, f64)>,
    pub source: SpectrumSource,
}

impl ReturnSpectrum {
    pub fn scale(&self) -> f64 {
        self.ln_scale.exp()
    }

    /// sum of r_i mu(tau(i)); equals 1 because the towers over [I_n] fill the space
    pub fn kac_sum(&self) -> f64 {
        self.atoms.iter().map(|(r, m)| big_to_f64(r) * m).sum()
    }
}

pub(crate) fn big_to_f64(x: &BigUint) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::INFINITY)
}

/// Gaps and mass of each piece of a partition of [I_n] on which the first
/// `k` return gaps are constant, in a fixed enumeration order (suffix order
/// for the walk, adic order for the oracle).
pub(crate) fn gap_pieces(
    d: &OrderedBratteliDiagram,
    prefix: &PathPrefix,
    k: usize,
    mu: &dyn CylinderMeasure,
) -> Result<(Vec<(Vec<BigUint>, f64)>, SpectrumSource)> {
    let n = prefix.len();
    let i_star = prefix.terminal();
    let walker = Walker::new(d, n, i_star).and_then(|mut w| w.ensure_levels(n + k + 1).map(|_| w));
    match walker {
        Ok(mut w) => {
            let mut out = Vec::new();
            w.for_each_resolved(k, |s, gaps, _| {
                let top = s[s.len() - 1];
                out.push((gaps, mu.cylinder(top.level, top.target)?));
                Ok(())
            })?;
            Ok((out, SpectrumSource::Walk))
        }
        Err(Error::Hypothesis { .. }) => {
            let r = brute_force_returns(d, prefix, k, OracleOptions::default())?;
            let out = r
                .cylinders
                .iter()
                .map(|c| {
                    let last = c.path.last().unwrap();
                    let gaps = c.gaps.iter().map(|&g| BigUint::from(g)).collect();
                    Ok((gaps, mu.cylinder(last.level, last.target)?))
                })
                .collect::<Result<_>>()?;
            Ok((out, SpectrumSource::Oracle))
        }
        Err(e) => Err(e),
    }
}

/// First-return spectrum of the cylinder [I_n].
pub fn return_spectrum(
    d: &OrderedBratteliDiagram,
    prefix: &PathPrefix,
    mu: &dyn CylinderMeasure,
) -> Result<ReturnSpectrum> {
    if prefix.is_empty() {
        return Err(Error::InvalidPath("empty cylinder".into()));
    }
    let (pieces, source) = gap_pieces(d, prefix, 1, mu)?;
    let mut atoms: Vec<(BigUint, f64)> = Vec::new();
    let mut sorted: Vec<(BigUint, f64)> = pieces.into_iter().map(|(mut g, m)| (g.swap_remove(0), m)).collect();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    for (r, m) in sorted {
        match atoms.last_mut() {
            Some((last, acc)) if *last == r => *acc += m,
            _ => atoms.push((r, m)),
        }
    }
    Ok(ReturnSpectrum {
        level: prefix.len(),
        terminal: prefix.terminal(),
        ln_scale: mu.ln_cylinder(prefix.len(), prefix.terminal())?,
        atoms,
        source,
    })
}
