//! Ordered Bratteli diagrams: levels, paths, heights, validation and contraction.

mod contract;
mod io;
mod normalize;
mod validate;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub use contract::Cuts;
pub use validate::ValidationReport;

/// Edges of one level. `into[j]` lists the sources of the edges ending at
/// vertex `j`, in order; position 0 is the minimal edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelSpec {
    pub into: Vec<Vec<usize>>,
}

impl LevelSpec {
    pub fn new(into: Vec<Vec<usize>>) -> Self {
        LevelSpec { into }
    }

    /// The level whose incoming lists are sorted by source (left-to-right order).
    pub fn left_to_right(m: &Matrix) -> Self {
        let into = (0..m.cols())
            .map(|j| {
                (0..m.rows())
                    .flat_map(|i| std::iter::repeat_n(i, m.get(i, j) as usize))
                    .collect()
            })
            .collect();
        LevelSpec { into }
    }

    pub fn targets(&self) -> usize {
        self.into.len()
    }

    /// Incidence matrix with `sources` rows: entry (i, j) counts edges i -> j.
    pub fn incidence(&self, sources: usize) -> Matrix {
        let mut m = Matrix::zeros(sources, self.into.len());
        for (j, list) in self.into.iter().enumerate() {
            for &s in list {
                m.set(s, j, m.get(s, j) + 1);
            }
        }
        m
    }

    /// Source of the minimal (`max == false`) or maximal edge into each target.
    pub(crate) fn extreme_sources(&self, max: bool) -> Vec<usize> {
        self.into
            .iter()
            .map(|l| if max { l[l.len() - 1] } else { l[0] })
            .collect()
    }
}

/// An edge, identified by its level, its target vertex and its rank among
/// the edges into that target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeRef {
    pub level: usize,
    pub target: usize,
    pub rank: usize,
}

/// A finite path starting at the root; it names the cylinder of its extensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathPrefix {
    edges: Vec<EdgeRef>,
}

impl PathPrefix {
    /// Checks that the edges start at level 1, chain, and have valid ranks.
    pub fn new(d: &OrderedBratteliDiagram, edges: Vec<EdgeRef>) -> Result<Self> {
        let mut prev = 0usize;
        for (idx, e) in edges.iter().enumerate() {
            if e.level != idx + 1 {
                return Err(Error::InvalidPath(format!(
                    "edge {} sits at level {}, expected {}",
                    idx, e.level, idx + 1
                )));
            }
            let lv = d.level(e.level)?;
            let list = lv.into.get(e.target).ok_or_else(|| {
                Error::InvalidPath(format!("level {} has no vertex {}", e.level, e.target + 1))
            })?;
            let src = *list.get(e.rank).ok_or_else(|| {
                Error::InvalidPath(format!(
                    "rank {} out of range for vertex {} at level {}",
                    e.rank,
                    e.target + 1,
                    e.level
                ))
            })?;
            if src != prev {
                return Err(Error::InvalidPath(format!(
                    "edge at level {} starts at {} but the path is at {}",
                    e.level,
                    src + 1,
                    prev + 1
                )));
            }
            prev = e.target;
        }
        Ok(PathPrefix { edges })
    }

    /// Builds a path from one (target, rank) pair per level.
    pub fn from_targets_ranks(d: &OrderedBratteliDiagram, steps: &[(usize, usize)]) -> Result<Self> {
        let edges = steps
            .iter()
            .enumerate()
            .map(|(i, &(target, rank))| EdgeRef { level: i + 1, target, rank })
            .collect();
        Self::new(d, edges)
    }

    pub fn edges(&self) -> &[EdgeRef] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Terminal vertex; the root (0 in V_0) for the empty path.
    pub fn terminal(&self) -> usize {
        self.edges.last().map_or(0, |e| e.target)
    }

    pub fn truncate(&self, n: usize) -> PathPrefix {
        PathPrefix { edges: self.edges[..n.min(self.edges.len())].to_vec() }
    }
}

/// Leveled multigraph with an order on each family of edges sharing a target.
///
/// Levels are stored explicitly; with a period `p`, the last `p` stored
/// levels repeat forever, which makes every level addressable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedBratteliDiagram {
    levels: Vec<LevelSpec>,
    period: Option<usize>,
}

impl OrderedBratteliDiagram {
    pub fn new(levels: Vec<LevelSpec>, period: Option<usize>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Structural { level: 1, vertex: 0, reason: "no levels".into() });
        }
        if let Some(p) = period {
            if p == 0 || p >= levels.len() {
                return Err(Error::Structural {
                    level: levels.len(),
                    vertex: 0,
                    reason: format!(
                        "period {} must be between 1 and the number of stored levels minus one ({})",
                        p,
                        levels.len() - 1
                    ),
                });
            }
        }
        let mut sources = 1usize;
        for (k, lv) in levels.iter().enumerate() {
            check_level(k + 1, lv, sources)?;
            sources = lv.targets();
        }
        if let Some(p) = period {
            let first = levels.len() - p;
            // the first repeating level must accept the last stored vertex set
            let before = if first == 0 { 1 } else { levels[first - 1].targets() };
            if before != sources {
                return Err(Error::Structural {
                    level: levels.len(),
                    vertex: 0,
                    reason: format!(
                        "repeating block expects {} vertices below it but the last level has {}",
                        before, sources
                    ),
                });
            }
        }
        Ok(OrderedBratteliDiagram { levels, period })
    }

    /// A diagram whose levels from 2 on are all equal to `repeating`.
    pub fn stationary(first: LevelSpec, repeating: LevelSpec) -> Result<Self> {
        Self::new(vec![first, repeating], Some(1))
    }

    /// The standard first level: a single edge from the root to each of `m` vertices.
    pub fn root_level(m: usize) -> LevelSpec {
        LevelSpec::new(vec![vec![0]; m])
    }

    pub fn stored_levels(&self) -> &[LevelSpec] {
        &self.levels
    }

    pub fn period(&self) -> Option<usize> {
        self.period
    }

    /// Number of available levels, `None` when unbounded.
    pub fn depth(&self) -> Option<usize> {
        match self.period {
            Some(_) => None,
            None => Some(self.levels.len()),
        }
    }

    pub fn has_level(&self, k: usize) -> bool {
        k >= 1 && (self.period.is_some() || k <= self.levels.len())
    }

    /// Level `k` (1-based).
    pub fn level(&self, k: usize) -> Result<&LevelSpec> {
        let len = self.levels.len();
        if k == 0 {
            return Err(Error::LevelOutOfRange { level: k, depth: len });
        }
        if k <= len {
            return Ok(&self.levels[k - 1]);
        }
        match self.period {
            Some(p) => Ok(&self.levels[len - p + (k - len - 1) % p]),
            None => Err(Error::LevelOutOfRange { level: k, depth: len }),
        }
    }

    /// Number of vertices in V_k; V_0 is the root.
    pub fn vertex_count(&self, k: usize) -> Result<usize> {
        if k == 0 {
            Ok(1)
        } else {
            Ok(self.level(k)?.targets())
        }
    }

    pub fn incidence(&self, k: usize) -> Result<Matrix> {
        let sources = self.vertex_count(k.saturating_sub(1))?;
        Ok(self.level(k)?.incidence(sources))
    }

    /// Source vertex of an edge.
    pub fn source(&self, e: EdgeRef) -> Result<usize> {
        self.level(e.level)?
            .into
            .get(e.target)
            .and_then(|l| l.get(e.rank))
            .copied()
            .ok_or_else(|| Error::InvalidPath(format!("no edge {:?}", e)))
    }

    /// Number of edges into `target` at level `k`.
    pub fn in_degree(&self, k: usize, target: usize) -> Result<usize> {
        self.level(k)?
            .into
            .get(target)
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidPath(format!("level {} has no vertex {}", k, target + 1)))
    }

    /// Path counts from the root to every vertex of V_n.
    pub fn heights(&self, n: usize) -> Result<Vec<BigUint>> {
        let mut h = vec![BigUint::from(1u32)];
        for k in 1..=n {
            let lv = self.level(k)?;
            h = lv.into.iter().map(|l| l.iter().map(|&s| &h[s]).sum()).collect();
        }
        Ok(h)
    }

    /// True when every level from 2 on equals level 2.
    pub fn is_stationary(&self) -> bool {
        self.stationary_level().is_some()
    }

    /// The repeated level of a stationary diagram.
    pub fn stationary_level(&self) -> Option<&LevelSpec> {
        self.period?;
        let rep = self.levels.get(1)?;
        self.levels[1..].iter().all(|l| l == rep).then_some(rep)
    }

    /// Incidence matrix of a stationary diagram.
    pub fn stationary_matrix(&self) -> Result<Matrix> {
        let lv = self
            .stationary_level()
            .ok_or_else(|| Error::Precondition("diagram is not stationary".into()))?;
        Ok(lv.incidence(lv.targets()))
    }

    /// The all-minimal (`max == false`) or all-maximal path into vertex `i` of V_n.
    pub fn extreme_path(&self, n: usize, i: usize, max: bool) -> Result<PathPrefix> {
        if i >= self.vertex_count(n)? {
            return Err(Error::InvalidPath(format!("level {} has no vertex {}", n, i + 1)));
        }
        let mut edges = Vec::with_capacity(n);
        let mut v = i;
        for k in (1..=n).rev() {
            let list = &self.level(k)?.into[v];
            let rank = if max { list.len() - 1 } else { 0 };
            edges.push(EdgeRef { level: k, target: v, rank });
            v = list[rank];
        }
        edges.reverse();
        Ok(PathPrefix { edges })
    }

    pub fn min_path(&self, n: usize, i: usize) -> Result<PathPrefix> {
        self.extreme_path(n, i, false)
    }

    pub fn max_path(&self, n: usize, i: usize) -> Result<PathPrefix> {
        self.extreme_path(n, i, true)
    }
}

fn check_level(k: usize, lv: &LevelSpec, sources: usize) -> Result<()> {
    if lv.into.is_empty() {
        return Err(Error::Structural { level: k, vertex: 0, reason: "level has no vertices".into() });
    }
    let mut has_out = vec![false; sources];
    for (j, list) in lv.into.iter().enumerate() {
        if list.is_empty() {
            return Err(Error::Structural {
                level: k,
                vertex: j + 1,
                reason: "vertex has no incoming edge".into(),
            });
        }
        for &s in list {
            if s >= sources {
                return Err(Error::Structural {
                    level: k,
                    vertex: j + 1,
                    reason: format!("source {} does not exist in level {}", s + 1, k - 1),
                });
            }
            has_out[s] = true;
        }
    }
    if let Some(s) = has_out.iter().position(|&b| !b) {
        return Err(Error::Structural {
            level: k - 1,
            vertex: s + 1,
            reason: "vertex has no outgoing edge".into(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex1() -> OrderedBratteliDiagram {
        let rep = LevelSpec::new(vec![vec![0, 1, 1], vec![0, 1, 1, 1]]);
        OrderedBratteliDiagram::stationary(OrderedBratteliDiagram::root_level(2), rep).unwrap()
    }

    #[test]
    fn heights_of_example() {
        let d = ex1();
        let h: Vec<u64> = d.heights(3).unwrap().iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(h, vec![11, 15]);
        let h2: Vec<u64> = d.heights(2).unwrap().iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(h2, vec![3, 4]);
    }

    #[test]
    fn periodic_level_lookup() {
        let a = LevelSpec::new(vec![vec![0, 1], vec![0]]);
        let b = LevelSpec::new(vec![vec![1, 0], vec![0]]);
        let d = OrderedBratteliDiagram::new(vec![OrderedBratteliDiagram::root_level(2), a.clone(), b.clone()], Some(2)).unwrap();
        assert_eq!(d.level(4).unwrap(), &a);
        assert_eq!(d.level(5).unwrap(), &b);
        assert_eq!(d.level(100).unwrap(), &a);
        assert!(!d.is_stationary());
    }

    #[test]
    fn dangling_vertex_is_named() {
        let bad = LevelSpec::new(vec![vec![0, 0], vec![0]]);
        let err = OrderedBratteliDiagram::new(vec![OrderedBratteliDiagram::root_level(2), bad], None).unwrap_err();
        match err {
            Error::Structural { level, vertex, .. } => assert_eq!((level, vertex), (1, 2)),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn extreme_paths_follow_ranks() {
        let d = ex1();
        let p = d.min_path(2, 1).unwrap();
        assert!(p.edges().iter().all(|e| e.rank == 0));
        assert_eq!(d.source(p.edges()[1]).unwrap(), 0);
        let q = d.max_path(2, 1).unwrap();
        assert_eq!(q.edges()[1].rank, 3);
    }
}
