use num_traits::ToPrimitive;

use super::perron::{perron, PerronData, DEFAULT_TOL};
use crate::diagram::OrderedBratteliDiagram;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// An invariant measure, given by the mass of a single length-`level` path
/// cylinder ending at `vertex` (it only depends on the end point).
pub trait CylinderMeasure {
    fn ln_cylinder(&self, level: usize, vertex: usize) -> Result<f64>;

    fn cylinder(&self, level: usize, vertex: usize) -> Result<f64> {
        Ok(self.ln_cylinder(level, vertex)?.exp())
    }

    /// Relative error bound on `cylinder` at this level (0 for exact measures).
    fn relative_error(&self, _level: usize) -> f64 {
        0.0
    }
}

/// r(v) / lambda^(n-1).
pub fn stationary_cylinder_measure(pd: &PerronData, n: usize, vertex: usize) -> f64 {
    ln_stationary(pd, n, vertex).exp()
}

fn ln_stationary(pd: &PerronData, n: usize, vertex: usize) -> f64 {
    pd.r[vertex].ln() - (n as f64 - 1.0) * pd.lambda.ln()
}

/// The unique invariant measure of a stationary diagram with positive matrix
/// and a simple first level.
#[derive(Clone, Debug)]
pub struct StationaryMeasure {
    pub perron: PerronData,
}

impl StationaryMeasure {
    pub fn new(d: &OrderedBratteliDiagram) -> Result<Self> {
        let m = d.stationary_matrix()?;
        if d.level(1)?.into.iter().any(|l| l.len() != 1) {
            return Err(Error::MeasureUnavailable {
                level: 1,
                reason: "first level must have one edge per vertex".into(),
            });
        }
        Ok(StationaryMeasure { perron: perron(&m, DEFAULT_TOL)? })
    }

    pub fn from_perron(perron: PerronData) -> Self {
        StationaryMeasure { perron }
    }
}

impl CylinderMeasure for StationaryMeasure {
    fn ln_cylinder(&self, level: usize, vertex: usize) -> Result<f64> {
        if level == 0 || vertex >= self.perron.r.len() {
            return Err(Error::MeasureUnavailable { level, reason: format!("no vertex {}", vertex + 1) });
        }
        Ok(ln_stationary(&self.perron, level, vertex))
    }
}

/// Cylinder masses q_n(i) at one level, with a relative error bound.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureVector {
    pub level: usize,
    pub q: Vec<f64>,
    pub error_bound: f64,
}

/// Projective (Hilbert metric) diameter of the image of a positive matrix.
fn projective_diameter(m: &Matrix) -> f64 {
    let mut best: f64 = 0.0;
    for i in 0..m.rows() {
        for j in 0..m.rows() {
            for k in 0..m.cols() {
                for l in 0..m.cols() {
                    let num = (m.get(i, k) as f64).ln() + (m.get(j, l) as f64).ln();
                    let den = (m.get(j, k) as f64).ln() + (m.get(i, l) as f64).ln();
                    best = best.max(num - den);
                }
            }
        }
    }
    best
}

/// Cylinder masses at level n for a non-stationary diagram: push a uniform
/// vector down from level n + D and normalize so that sum h_n q_n = 1. The
/// bound comes from the Birkhoff contraction of the positive matrices crossed.
pub fn nonstationary_measure_estimate(d: &OrderedBratteliDiagram, n: usize, seed_depth: usize) -> Result<MeasureVector> {
    if seed_depth == 0 {
        return Err(Error::Precondition("seed depth must be positive".into()));
    }
    let top = n + seed_depth;
    let mut mats = Vec::with_capacity(seed_depth);
    for k in n + 1..=top {
        let m = d.incidence(k)?;
        if !m.is_positive() {
            return Err(Error::Precondition(format!(
                "incidence matrix at level {} has a zero entry; supply exact measures",
                k
            )));
        }
        mats.push(m);
    }
    let mut q = vec![1.0; d.vertex_count(top)?];
    for m in mats.iter().rev() {
        q = m.mul_vec(&q);
        let s: f64 = q.iter().sum();
        q.iter_mut().for_each(|x| *x /= s);
    }
    let h = d.heights(n)?;
    let total: f64 = h.iter().zip(&q).map(|(h, q)| h.to_f64().unwrap_or(f64::INFINITY) * q).sum();
    q.iter_mut().for_each(|x| *x /= total);
    let mut dist = projective_diameter(&mats[seed_depth - 1]);
    for m in &mats[..seed_depth - 1] {
        dist *= (projective_diameter(m) / 4.0).tanh();
    }
    Ok(MeasureVector { level: n, q, error_bound: dist.exp_m1() })
}

/// Measure estimates at every level, each seeded `seed_depth` levels deeper.
#[derive(Clone, Debug)]
pub struct EstimatedMeasure<'a> {
    pub diagram: &'a OrderedBratteliDiagram,
    pub seed_depth: usize,
}

impl CylinderMeasure for EstimatedMeasure<'_> {
    fn ln_cylinder(&self, level: usize, vertex: usize) -> Result<f64> {
        let mv = nonstationary_measure_estimate(self.diagram, level, self.seed_depth)?;
        mv.q.get(vertex)
            .map(|q| q.ln())
            .ok_or_else(|| Error::MeasureUnavailable { level, reason: format!("no vertex {}", vertex + 1) })
    }

    fn relative_error(&self, level: usize) -> f64 {
        nonstationary_measure_estimate(self.diagram, level, self.seed_depth).map_or(f64::INFINITY, |m| m.error_bound)
    }
}

/// The masses q_n of any measure, as a vector.
pub fn measure_vector(mu: &dyn CylinderMeasure, d: &OrderedBratteliDiagram, n: usize) -> Result<MeasureVector> {
    let q = (0..d.vertex_count(n)?).map(|v| mu.cylinder(n, v)).collect::<Result<_>>()?;
    Ok(MeasureVector { level: n, q, error_bound: mu.relative_error(n) })
}
