use super::{LevelSpec, OrderedBratteliDiagram};
use crate::error::{Error, Result};

/// Level indices at which a diagram is cut: explicit points (first one 0),
/// optionally continued forever with a fixed step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cuts {
    pub points: Vec<usize>,
    pub then_every: Option<usize>,
}

impl Cuts {
    /// `0, s, 2s, ...`
    pub fn every(step: usize) -> Self {
        Cuts { points: vec![0], then_every: Some(step) }
    }

    pub fn explicit(points: Vec<usize>) -> Self {
        Cuts { points, then_every: None }
    }

    fn check(&self) -> Result<()> {
        if self.points.first() != Some(&0) {
            return Err(Error::InvalidCuts("cuts must start at 0".into()));
        }
        if self.points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidCuts("cuts must be strictly increasing".into()));
        }
        if self.then_every == Some(0) {
            return Err(Error::InvalidCuts("step must be positive".into()));
        }
        if self.points.len() < 2 && self.then_every.is_none() {
            return Err(Error::InvalidCuts("at least two cut points are needed".into()));
        }
        Ok(())
    }

    /// The i-th cut point (i = 0 is the first).
    fn point(&self, i: usize) -> Option<usize> {
        if i < self.points.len() {
            return Some(self.points[i]);
        }
        let s = self.then_every?;
        Some(self.points[self.points.len() - 1] + (i + 1 - self.points.len()) * s)
    }
}

impl OrderedBratteliDiagram {
    /// Composite level made of the old levels `a+1..=b`, with the
    /// reverse-lexicographic order on composite edges.
    pub fn compose_levels(&self, a: usize, b: usize) -> Result<LevelSpec> {
        if a >= b {
            return Err(Error::InvalidCuts(format!("empty level range {}..{}", a, b)));
        }
        let mut into = self.level(a + 1)?.into.clone();
        for k in a + 2..=b {
            into = self
                .level(k)?
                .into
                .iter()
                .map(|list| list.iter().flat_map(|&s| into[s].iter().copied()).collect())
                .collect();
        }
        Ok(LevelSpec { into })
    }

    /// Telescopes the diagram along `cuts`.
    pub fn contract(&self, cuts: &Cuts) -> Result<OrderedBratteliDiagram> {
        cuts.check()?;
        match (self.period, cuts.then_every) {
            (Some(p), Some(s)) => {
                let len = self.levels.len();
                let first_periodic = len - p + 1;
                let mut levels = Vec::new();
                let mut i = 1;
                loop {
                    let (a, b) = (cuts.point(i - 1).unwrap(), cuts.point(i).unwrap());
                    if i >= cuts.points.len() && a + 1 >= first_periodic {
                        break;
                    }
                    levels.push(self.compose_levels(a, b)?);
                    i += 1;
                }
                let new_period = p / gcd(p, s);
                for j in 0..new_period {
                    let (a, b) = (cuts.point(i - 1 + j).unwrap(), cuts.point(i + j).unwrap());
                    levels.push(self.compose_levels(a, b)?);
                }
                OrderedBratteliDiagram::new(levels, Some(new_period))
            }
            _ => {
                let avail = self.depth();
                let mut levels = Vec::new();
                let mut i = 1;
                while let Some(b) = cuts.point(i) {
                    if let Some(d) = avail {
                        if b > d {
                            if i < cuts.points.len() {
                                return Err(Error::InvalidCuts(format!(
                                    "cut {} is beyond the diagram depth {}",
                                    b, d
                                )));
                            }
                            break;
                        }
                    }
                    levels.push(self.compose_levels(cuts.point(i - 1).unwrap(), b)?);
                    i += 1;
                }
                if levels.is_empty() {
                    return Err(Error::InvalidCuts("no complete level after contraction".into()));
                }
                OrderedBratteliDiagram::new(levels, None)
            }
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
