use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub const DEFAULT_TOL: f64 = 1e-14;
const MAX_ITER: usize = 1_000_000;

/// Dominant eigenvalue with right (`r`, summing to 1) and left (`l`, with
/// l.r = 1) eigenvectors of a positive matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct PerronData {
    pub lambda: f64,
    pub r: Vec<f64>,
    pub l: Vec<f64>,
    /// max(|Mr - lambda r|_inf, |lM - lambda l|_inf)
    pub residual: f64,
}

fn power_iterate(apply: impl Fn(&[f64]) -> Vec<f64>, m: usize, tol: f64) -> Result<(f64, Vec<f64>)> {
    let mut v = vec![1.0 / m as f64; m];
    for _ in 0..MAX_ITER {
        let w = apply(&v);
        let s: f64 = w.iter().sum();
        let w: Vec<f64> = w.iter().map(|x| x / s).collect();
        let diff = w.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = w;
        if diff <= tol {
            let lambda = apply(&v).iter().sum::<f64>();
            return Ok((lambda, v));
        }
    }
    Err(Error::Numeric(format!("power iteration did not converge in {} steps", MAX_ITER)))
}

/// Perron-Frobenius data by power iteration from the uniform vector.
pub fn perron(m: &Matrix, tol: f64) -> Result<PerronData> {
    if !m.is_square() {
        return Err(Error::Precondition("matrix is not square".into()));
    }
    if !m.is_positive() {
        return Err(Error::Precondition("matrix has a zero entry".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }
    let n = m.rows();
    let (lambda, r) = power_iterate(|v| m.mul_vec(v), n, tol)?;
    let (_, l) = power_iterate(|v| m.vec_mul(v), n, tol)?;
    let lr: f64 = l.iter().zip(&r).map(|(a, b)| a * b).sum();
    let l: Vec<f64> = l.iter().map(|x| x / lr).collect();
    let res_r = m.mul_vec(&r).iter().zip(&r).map(|(a, b)| (a - lambda * b).abs()).fold(0.0, f64::max);
    let res_l = m.vec_mul(&l).iter().zip(&l).map(|(a, b)| (a - lambda * b).abs()).fold(0.0, f64::max);
    let residual = res_r.max(res_l);
    if residual > (tol * lambda).max(64.0 * f64::EPSILON * lambda) {
        return Err(Error::Numeric(format!("eigen-residual {:e} above tolerance", residual)));
    }
    Ok(PerronData { lambda, r, l, residual })
}

/// Second largest eigenvalue modulus, for reporting expected decay rates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SubdominantRate {
    pub gamma: f64,
    /// false when the iteration did not settle and `gamma` is the fallback
    /// lambda * (1 - 1e-3)
    pub converged: bool,
}

/// Deflated power iteration on M - lambda r l^T.
pub fn subdominant_rate(m: &Matrix) -> Result<SubdominantRate> {
    let pd = perron(m, DEFAULT_TOL)?;
    let n = m.rows();
    if n == 1 {
        return Ok(SubdominantRate { gamma: 0.0, converged: true });
    }
    let project = |v: &mut Vec<f64>| {
        let c: f64 = pd.l.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
        for (x, r) in v.iter_mut().zip(&pd.r) {
            *x -= c * r;
        }
    };
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for start in 0..n {
        // (1, 2, ..., n) first, then coordinate vectors
        let mut v: Vec<f64> = if start == 0 {
            (0..n).map(|i| 1.0 + i as f64).collect()
        } else {
            (0..n).map(|i| f64::from(u8::from(i == start))).collect()
        };
        project(&mut v);
        let nv = norm(&v);
        if nv < 1e-12 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= nv);
        let mut prev = f64::NAN;
        let mut prev2 = f64::NAN;
        for _ in 0..20_000 {
            let mut w = m.mul_vec(&v);
            project(&mut w);
            let rho = norm(&w);
            if rho <= 1e-13 * pd.lambda {
                return Ok(SubdominantRate { gamma: 0.0, converged: true });
            }
            let two_step = (rho * prev).sqrt();
            if (rho - prev).abs() <= 1e-12 * pd.lambda {
                return Ok(SubdominantRate { gamma: rho, converged: true });
            }
            if (two_step - (prev * prev2).sqrt()).abs() <= 1e-12 * pd.lambda && (rho - prev2).abs() <= 1e-9 * pd.lambda {
                return Ok(SubdominantRate { gamma: two_step, converged: true });
            }
            prev2 = prev;
            prev = rho;
            v = w.iter().map(|x| x / rho).collect();
        }
        return Ok(SubdominantRate { gamma: pd.lambda * (1.0 - 1e-3), converged: false });
    }
    Ok(SubdominantRate { gamma: 0.0, converged: true })
}
