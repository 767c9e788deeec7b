use crate::diagram::{LevelSpec, OrderedBratteliDiagram};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::spectral::CylinderMeasure;

/// Odometer bases p_1, p_2, ...: a finite list, or a list repeated forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bases {
    Periodic(Vec<u64>),
    Finite(Vec<u64>),
}

impl Bases {
    /// p_k, 1-based.
    pub fn get(&self, k: usize) -> Option<u64> {
        if k == 0 {
            return None;
        }
        match self {
            Bases::Periodic(v) if !v.is_empty() => Some(v[(k - 1) % v.len()]),
            Bases::Periodic(_) => None,
            Bases::Finite(v) => v.get(k - 1).copied(),
        }
    }

    fn list(&self) -> &[u64] {
        match self {
            Bases::Periodic(v) | Bases::Finite(v) => v,
        }
    }

    fn period(&self) -> Option<usize> {
        match self {
            Bases::Periodic(v) => Some(v.len()),
            Bases::Finite(_) => None,
        }
    }
}

fn build(bases: &Bases, first: LevelSpec, level: impl Fn(u64, usize) -> Result<LevelSpec>) -> Result<OrderedBratteliDiagram> {
    if bases.list().is_empty() {
        return Err(Error::Precondition("at least one base is needed".into()));
    }
    let mut levels = vec![first];
    for (i, &p) in bases.list().iter().enumerate() {
        levels.push(level(p, i + 1)?);
    }
    OrderedBratteliDiagram::new(levels, bases.period())
}

/// One vertex per level; level k + 1 has p_k parallel edges, so the tower at
/// level n has height p_1 ... p_(n-1).
pub fn odometer_classic(bases: &Bases) -> Result<OrderedBratteliDiagram> {
    build(bases, OrderedBratteliDiagram::root_level(1), |p, _| {
        if p < 2 {
            return Err(Error::Precondition("odometer bases must be at least 2".into()));
        }
        Ok(LevelSpec::new(vec![vec![0; p as usize]]))
    })
}

fn beta_digit(beta: f64, p: u64, k: usize) -> Result<u64> {
    let b = (beta * p as f64).floor() as u64;
    if b == 0 || b >= p {
        return Err(Error::Precondition(format!(
            "floor(beta * p_{}) = {} leaves one of the two towers empty",
            k, b
        )));
    }
    Ok(b)
}

/// Odometer with the base split at beta: V_n = {1, 2}, and from level 2 on
/// each vertex receives beta_k edges from vertex 1 followed by p_k - beta_k
/// edges from vertex 2, where beta_k = floor(beta p_k). Returns the diagram
/// with its exact invariant measure.
pub fn odometer_beta(bases: &Bases, beta: f64) -> Result<(OrderedBratteliDiagram, BetaOdometerMeasure)> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::Precondition("beta must lie in (0, 1)".into()));
    }
    let d = build(bases, OrderedBratteliDiagram::root_level(2), |p, k| {
        let b = beta_digit(beta, p, k)?;
        let m = Matrix::from_rows(&[vec![b, b], vec![p - b, p - b]])?;
        Ok(LevelSpec::left_to_right(&m))
    })?;
    Ok((d, BetaOdometerMeasure { bases: bases.clone(), beta }))
}

/// mu(vertex 1 at level k) = beta_k / q_k and mu(vertex 2) = (p_k - beta_k) / q_k,
/// with q_k = p_1 ... p_k.
#[derive(Clone, Debug, PartialEq)]
pub struct BetaOdometerMeasure {
    pub bases: Bases,
    pub beta: f64,
}

impl BetaOdometerMeasure {
    pub fn beta_n(&self, k: usize) -> Result<u64> {
        let p = self.base(k)?;
        beta_digit(self.beta, p, k)
    }

    fn base(&self, k: usize) -> Result<u64> {
        self.bases
            .get(k)
            .ok_or_else(|| Error::MeasureUnavailable { level: k, reason: "no base for this level".into() })
    }

    /// ln q_k
    pub fn ln_q(&self, k: usize) -> Result<f64> {
        (1..=k).map(|j| Ok((self.base(j)? as f64).ln())).sum()
    }
}

impl CylinderMeasure for BetaOdometerMeasure {
    fn ln_cylinder(&self, level: usize, vertex: usize) -> Result<f64> {
        let p = self.base(level)?;
        let b = self.beta_n(level)?;
        let num = match vertex {
            0 => b,
            1 => p - b,
            _ => return Err(Error::MeasureUnavailable { level, reason: format!("no vertex {}", vertex + 1) }),
        };
        Ok((num as f64).ln() - self.ln_q(level)?)
    }
}
