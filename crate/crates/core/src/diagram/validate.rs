use std::fmt;

use super::OrderedBratteliDiagram;
use crate::error::{Error, Result};

/// Which standing hypotheses hold, level by level, up to `depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub depth: usize,
    /// every incidence matrix in scope is strictly positive
    pub h1: bool,
    /// a single edge from the root to each vertex of V_1
    pub h2: bool,
    /// the minimal edge into every vertex starts at vertex 1
    pub h3: bool,
    pub properly_ordered: bool,
    pub stationary: bool,
    pub diagnostics: Vec<String>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "checked to depth {}", self.depth)?;
        writeln!(f, "H1 (positive incidence)   {}", self.h1)?;
        writeln!(f, "H2 (simple first level)   {}", self.h2)?;
        writeln!(f, "H3 (minimal edges from 1) {}", self.h3)?;
        writeln!(f, "properly ordered          {}", self.properly_ordered)?;
        writeln!(f, "stationary                {}", self.stationary)?;
        for d in &self.diagnostics {
            writeln!(f, "  - {}", d)?;
        }
        Ok(())
    }
}

impl OrderedBratteliDiagram {
    /// Checks the hypotheses on levels `1..=depth` (capped at the stored depth of
    /// a finite diagram).
    pub fn validate(&self, depth: usize) -> Result<ValidationReport> {
        if depth == 0 {
            return Err(Error::Precondition("validation depth must be positive".into()));
        }
        let mut diagnostics = Vec::new();
        let depth = match self.depth() {
            Some(avail) if avail < depth => {
                diagnostics.push(format!("diagram has only {} levels; checked those", avail));
                avail
            }
            _ => depth,
        };
        let (mut h1, mut h2, mut h3) = (true, true, true);
        for k in 1..=depth {
            let lv = self.level(k)?;
            if !self.incidence(k)?.is_positive() {
                h1 = false;
                diagnostics.push(format!("level {}: incidence matrix has a zero entry", k));
            }
            if k == 1 && lv.into.iter().any(|l| l.len() != 1) {
                h2 = false;
                diagnostics.push("level 1: some vertex has several edges from the root".into());
            }
            if let Some(j) = lv.into.iter().position(|l| l[0] != 0) {
                h3 = false;
                diagnostics.push(format!(
                    "level {}: minimal edge into vertex {} starts at vertex {}",
                    k,
                    j + 1,
                    lv.into[j][0] + 1
                ));
            }
        }
        let properly_ordered = match self.period {
            Some(_) => {
                let ok = [false, true].iter().all(|&max| self.periodic_extreme_unique(max));
                if !ok {
                    diagnostics.push("minimal or maximal infinite path is not unique".into());
                }
                ok
            }
            None => {
                let ok = [false, true].iter().all(|&max| self.finite_extreme_unique(depth, max));
                if !ok {
                    diagnostics.push(format!(
                        "extreme paths into level {} disagree on their lower half",
                        depth
                    ));
                }
                ok
            }
        };
        Ok(ValidationReport {
            depth,
            h1,
            h2,
            h3,
            properly_ordered,
            stationary: self.is_stationary(),
            diagnostics,
        })
    }

    /// Composite of the extreme-source maps over one period, from the top vertex
    /// set of the repeating block down to the same set one period lower.
    pub(crate) fn period_extreme_map(&self, max: bool) -> Option<Vec<usize>> {
        let p = self.period?;
        let len = self.levels.len();
        let m = self.levels[len - 1].targets();
        let maps: Vec<Vec<usize>> =
            self.levels[len - p..].iter().map(|l| l.extreme_sources(max)).collect();
        Some(
            (0..m)
                .map(|v| maps.iter().rev().fold(v, |u, map| map[u]))
                .collect(),
        )
    }

    /// Infinite extreme paths correspond to periodic points of the composite
    /// map; there is exactly one iff that map has a single periodic point.
    fn periodic_extreme_unique(&self, max: bool) -> bool {
        let Some(map) = self.period_extreme_map(max) else { return false };
        let m = map.len();
        let periodic = (0..m)
            .filter(|&v| {
                let mut u = map[v];
                for _ in 0..m {
                    if u == v {
                        return true;
                    }
                    u = map[u];
                }
                u == v
            })
            .count();
        periodic == 1
    }

    fn finite_extreme_unique(&self, depth: usize, max: bool) -> bool {
        let keep = depth.div_ceil(2);
        let m = match self.vertex_count(depth) {
            Ok(m) => m,
            Err(_) => return false,
        };
        let paths: Vec<_> = (0..m)
            .filter_map(|i| self.extreme_path(depth, i, max).ok())
            .map(|p| p.edges()[..keep].to_vec())
            .collect();
        paths.windows(2).all(|w| w[0] == w[1])
    }
}
