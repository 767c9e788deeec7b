use num_bigint::BigUint;

use crate::diagram::{LevelSpec, OrderedBratteliDiagram};
use crate::error::{Error, Result};
use crate::spectral::CylinderMeasure;

/// The two edge orders of a Sturmian level with incidence [[d, 1], [1, 0]]:
/// into vertex 1 there are d edges from vertex 1 and one from vertex 2; in
/// block `A` the edge from vertex 2 comes first, in block `B` it comes last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    A,
    B,
}

impl Block {
    pub fn parse(c: char) -> Option<Block> {
        match c {
            'a' | 'A' => Some(Block::A),
            'b' | 'B' => Some(Block::B),
            _ => None,
        }
    }

    fn level(self, d: u64) -> LevelSpec {
        let d = d as usize;
        let first = match self {
            Block::A => std::iter::once(1).chain(std::iter::repeat_n(0, d)).collect(),
            Block::B => std::iter::repeat_n(0, d).chain(std::iter::once(1)).collect(),
        };
        LevelSpec::new(vec![first, vec![0]])
    }
}

/// Partial quotients d_1, d_2, ... of beta = [0; d_1, d_2, ...] with one block
/// type per level; the last `period` entries repeat forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmianSpec {
    digits: Vec<u64>,
    blocks: Vec<Block>,
    period: usize,
}

impl SturmianSpec {
    pub fn new(digits: Vec<u64>, blocks: Vec<Block>, period: usize) -> Result<Self> {
        if digits.is_empty() || digits.len() != blocks.len() {
            return Err(Error::Precondition("need one block type per digit".into()));
        }
        if digits.contains(&0) {
            return Err(Error::Precondition("digits must be positive".into()));
        }
        if period == 0 || period > digits.len() {
            return Err(Error::Precondition("period must be between 1 and the number of digits".into()));
        }
        let spec = SturmianSpec { digits, blocks, period };
        // check each block against the next one, including the wrap of the period
        let n = spec.blocks.len();
        for j in 1..=n {
            if spec.block(j) == Block::A && spec.block(j + 1) == Block::A {
                return Err(Error::Precondition(format!("two consecutive (a) blocks at positions {} and {}", j, j + 1)));
            }
        }
        Ok(spec)
    }

    /// Golden mean rotation: all digits 1, blocks alternating (a), (b).
    pub fn golden() -> Self {
        SturmianSpec::new(vec![1, 1], vec![Block::A, Block::B], 2).expect("valid")
    }

    fn index(&self, j: usize) -> usize {
        let n = self.digits.len();
        if j <= n {
            j - 1
        } else {
            n - self.period + (j - n - 1) % self.period
        }
    }

    /// d_j, 1-based.
    pub fn digit(&self, j: usize) -> u64 {
        self.digits[self.index(j)]
    }

    pub fn block(&self, j: usize) -> Block {
        self.blocks[self.index(j)]
    }

    /// G^j(beta) = [0; d_(j+1), d_(j+2), ...], evaluated from far enough out
    /// that the truncation is below double precision.
    pub fn gauss_iterate(&self, j: usize) -> f64 {
        let mut x = 0.0;
        for i in (j + 1..=j + 80).rev() {
            x = 1.0 / (self.digit(i) as f64 + x);
        }
        x
    }

    pub fn beta(&self) -> f64 {
        self.gauss_iterate(0)
    }
}

/// Level 1 joins the root to both vertices; level k >= 2 has incidence
/// [[d_(k-1), 1], [1, 0]] ordered by block b_(k-1).
pub fn sturmian(spec: &SturmianSpec) -> Result<(OrderedBratteliDiagram, SturmianMeasure)> {
    let mut levels = vec![OrderedBratteliDiagram::root_level(2)];
    for j in 1..=spec.digits.len() {
        levels.push(spec.block(j).level(spec.digit(j)));
    }
    let d = OrderedBratteliDiagram::new(levels, Some(spec.period))?;
    Ok((d, SturmianMeasure::new(spec.clone())))
}

/// The invariant measure: a cylinder of length k has mass delta_(k-2)/(1+beta)
/// if it ends at vertex 1 and delta_(k-1)/(1+beta) otherwise, where
/// delta_j = |beta q_j - p_j| = G^0(beta) ... G^j(beta) and delta_(-1) = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct SturmianMeasure {
    spec: SturmianSpec,
}

impl SturmianMeasure {
    pub fn new(spec: SturmianSpec) -> Self {
        SturmianMeasure { spec }
    }

    /// ln delta_j for j >= -1.
    pub fn ln_delta(&self, j: i64) -> f64 {
        (0..=j).map(|i| self.spec.gauss_iterate(i as usize).ln()).sum()
    }
}

impl CylinderMeasure for SturmianMeasure {
    fn ln_cylinder(&self, level: usize, vertex: usize) -> Result<f64> {
        if level == 0 || vertex > 1 {
            return Err(Error::MeasureUnavailable { level, reason: format!("no vertex {}", vertex + 1) });
        }
        let j = level as i64 - 2 + vertex as i64;
        Ok(self.ln_delta(j) - (1.0 + self.spec.beta()).ln())
    }
}

/// Convergents p_k / q_k of [0; d_1, d_2, ...] for k = -1 ..= K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentTable {
    p: Vec<BigUint>,
    q: Vec<BigUint>,
}

impl ConvergentTable {
    /// p_k for k >= -1.
    pub fn p(&self, k: i64) -> &BigUint {
        &self.p[(k + 1) as usize]
    }

    pub fn q(&self, k: i64) -> &BigUint {
        &self.q[(k + 1) as usize]
    }

    pub fn max_index(&self) -> i64 {
        self.p.len() as i64 - 2
    }
}

/// p_(-1) = 1, p_0 = 0, q_(-1) = 0, q_0 = 1, and x_k = d_k x_(k-1) + x_(k-2).
pub fn convergents(digits: &[u64], k: usize) -> Result<ConvergentTable> {
    if digits.len() < k {
        return Err(Error::Precondition(format!("need {} digits, got {}", k, digits.len())));
    }
    let mut p = vec![BigUint::from(1u32), BigUint::from(0u32)];
    let mut q = vec![BigUint::from(0u32), BigUint::from(1u32)];
    for (j, &d) in digits[..k].iter().enumerate() {
        let np = &p[j + 1] * d + &p[j];
        let nq = &q[j + 1] * d + &q[j];
        p.push(np);
        q.push(nq);
    }
    Ok(ConvergentTable { p, q })
}

/// Limits of the two scaled return times along levels where G^(n-2)(beta)
/// tends to theta and q_(n-3)/q_(n-2) to w:
/// h1 = floor(1/theta) theta / (1 + theta w), h2 = (1 + floor(1/theta)) theta / (1 + theta w).
pub fn sturmian_limits(theta: f64, w: f64) -> Result<(f64, f64)> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Domain(format!("theta = {} must lie in (0, 1)", theta)));
    }
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::Domain(format!("w = {} must lie in [0, 1]", w)));
    }
    let a = (1.0 / theta).floor();
    let den = 1.0 + theta * w;
    Ok((a * theta / den, (1.0 + a) * theta / den))
}
