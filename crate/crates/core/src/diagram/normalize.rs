use super::{Cuts, LevelSpec, OrderedBratteliDiagram, ValidationReport};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

impl OrderedBratteliDiagram {
    /// Contracts levels until every incidence matrix is positive, then renames
    /// vertices so that minimal edges start at vertex 1. Fails when a level's
    /// minimal edges come from more than one vertex.
    pub fn relabel_normalize(&self) -> Result<(OrderedBratteliDiagram, ValidationReport)> {
        let depth = self.depth().unwrap_or(4);
        let report = self.validate(depth)?;
        if report.h1 && report.h2 && report.h3 {
            return Ok((self.clone(), report));
        }
        if !report.h2 {
            return Err(Error::Normalize(
                "first level has multiple edges from the root; splitting levels is not supported".into(),
            ));
        }
        let out = match self.period {
            Some(p) => self.normalize_periodic(p)?,
            None => self.normalize_finite()?,
        };
        let report = out.validate(out.depth().unwrap_or(4))?;
        Ok((out, report))
    }

    fn normalize_periodic(&self, p: usize) -> Result<OrderedBratteliDiagram> {
        if self.levels.len() != p + 1 {
            return Err(Error::Normalize(
                "periodic diagrams must repeat from level 2 on to be normalized".into(),
            ));
        }
        let block = self.compose_levels(1, 1 + p)?;
        let m = block.targets();
        let bm = block.incidence(m);
        let s = primitivity_exponent(&bm).ok_or_else(|| {
            Error::Normalize("the repeating block is not primitive, no contraction makes it positive".into())
        })?;
        let c = self.contract(&Cuts { points: vec![0, 1], then_every: Some(p * s) })?;
        let rep = c.levels[1].clone();
        let min_src = rep.extreme_sources(false);
        let v = constant_value(&min_src).ok_or_else(|| {
            Error::Normalize(format!(
                "minimal edges of the contracted level start at several vertices {:?}",
                min_src.iter().map(|s| s + 1).collect::<Vec<_>>()
            ))
        })?;
        let perm = swap_perm(m, v);
        let first = relabel(&c.levels[0], &[0], &perm);
        let rep = relabel(&rep, &perm, &perm);
        OrderedBratteliDiagram::stationary(first, rep)
    }

    fn normalize_finite(&self) -> Result<OrderedBratteliDiagram> {
        let depth = self.levels.len();
        let mut points = vec![0, 1];
        let mut a = 1;
        'outer: while a < depth {
            for b in a + 1..=depth {
                let lv = self.compose_levels(a, b)?;
                if lv.incidence(self.vertex_count(a)?).is_positive() {
                    points.push(b);
                    a = b;
                    continue 'outer;
                }
            }
            break;
        }
        let c = self.contract(&Cuts::explicit(points))?;
        // rename V_{k-1} so the minimal edges of level k start at its vertex 1
        let n = c.levels.len();
        let mut perms: Vec<Vec<usize>> = vec![vec![0]];
        for k in 1..=n {
            let m = c.levels[k - 1].targets();
            if k == n {
                perms.push((0..m).collect());
                break;
            }
            let min_src = c.levels[k].extreme_sources(false);
            let v = constant_value(&min_src).ok_or_else(|| {
                Error::Normalize(format!(
                    "level {}: minimal edges start at several vertices",
                    k + 1
                ))
            })?;
            perms.push(swap_perm(m, v));
        }
        let levels = (1..=n)
            .map(|k| relabel(&c.levels[k - 1], &perms[k - 1], &perms[k]))
            .collect();
        OrderedBratteliDiagram::new(levels, None)
    }
}

/// Smallest s with M^s strictly positive, searched up to Wielandt's bound.
pub(crate) fn primitivity_exponent(m: &Matrix) -> Option<usize> {
    let n = m.rows();
    let bound = (n - 1) * (n - 1) + 1;
    // work on the 0/1 pattern to avoid overflow
    let pattern = |x: &Matrix| {
        let mut p = Matrix::zeros(x.rows(), x.cols());
        for i in 0..x.rows() {
            for j in 0..x.cols() {
                p.set(i, j, u64::from(x.get(i, j) > 0));
            }
        }
        p
    };
    let base = pattern(m);
    let mut acc = base.clone();
    for s in 1..=bound {
        if acc.is_positive() {
            return Some(s);
        }
        acc = pattern(&acc.checked_mul(&base).ok()?);
    }
    None
}

fn constant_value(v: &[usize]) -> Option<usize> {
    let first = *v.first()?;
    v.iter().all(|&x| x == first).then_some(first)
}

fn swap_perm(m: usize, v: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..m).collect();
    p.swap(0, v);
    p
}

/// Applies vertex renamings below (`src`) and above (`dst`) a level.
fn relabel(lv: &LevelSpec, src: &[usize], dst: &[usize]) -> LevelSpec {
    let mut into = vec![Vec::new(); lv.targets()];
    for (j, list) in lv.into.iter().enumerate() {
        into[dst[j]] = list.iter().map(|&s| src[s]).collect();
    }
    LevelSpec { into }
}
