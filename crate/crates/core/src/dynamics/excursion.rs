use num_bigint::BigUint;

use crate::diagram::{EdgeRef, OrderedBratteliDiagram};
use crate::error::{Error, Result};

/// Edges above level n (the first one at level n+1), i.e. the part of a
/// point that decides how it moves between the towers of level n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Suffix {
    pub edges: Vec<EdgeRef>,
    /// When set, the edge above the last known one is a minimal edge whose
    /// target is not known (its source is vertex 1). This is what remains
    /// after every known edge has rolled over.
    pub open_top: bool,
}

impl Suffix {
    pub fn new(edges: Vec<EdgeRef>) -> Self {
        Suffix { edges, open_top: false }
    }

    pub fn first(&self) -> EdgeRef {
        self.edges[0]
    }

    /// Highest level this suffix says anything about.
    pub fn top_level(&self) -> usize {
        self.edges.last().map_or(0, |e| e.level) + usize::from(self.open_top)
    }
}

/// Visit counts of the level-n towers between a point and its next return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcursionProfile {
    pub level: usize,
    pub i_star: usize,
    /// `counts[i]`: how many times tower i is crossed, the starting tower included
    pub counts: Vec<u64>,
    /// The edge into V_{n+1} at which the orbit is back above i*.
    pub stop_edge: EdgeRef,
    /// Suffix of the return point.
    pub next_state: Suffix,
}

/// Walks excursions above a fixed level n of a diagram satisfying the
/// standing hypotheses on the levels it touches.
pub(crate) struct Walker<'a> {
    d: &'a OrderedBratteliDiagram,
    n: usize,
    i_star: usize,
    heights: Vec<BigUint>,
    checked_to: usize,
}

impl<'a> Walker<'a> {
    pub fn new(d: &'a OrderedBratteliDiagram, n: usize, i_star: usize) -> Result<Self> {
        let heights = d.heights(n)?;
        if i_star >= heights.len() {
            return Err(Error::InvalidPath(format!("level {} has no vertex {}", n, i_star + 1)));
        }
        if d.level(1)?.into.iter().any(|l| l.len() != 1) {
            return Err(Error::Hypothesis { hypothesis: "H2", level: 1 });
        }
        Ok(Walker { d, n, i_star, heights, checked_to: n })
    }

    /// Verifies positivity and minimal-edge sources up to level `upto`.
    pub fn ensure_levels(&mut self, upto: usize) -> Result<()> {
        while self.checked_to < upto {
            let k = self.checked_to + 1;
            if !self.d.incidence(k)?.is_positive() {
                return Err(Error::Hypothesis { hypothesis: "H1", level: k });
            }
            if self.d.level(k)?.into.iter().any(|l| l[0] != 0) {
                return Err(Error::Hypothesis { hypothesis: "H3", level: k });
            }
            self.checked_to = k;
        }
        Ok(())
    }

    fn check_state(&self, s: &Suffix) -> Result<()> {
        if s.edges.is_empty() {
            return Err(Error::InvalidPath("empty suffix".into()));
        }
        if s.top_level() > self.checked_to {
            return Err(Error::Precondition(format!(
                "levels up to {} have not been checked",
                s.top_level()
            )));
        }
        let mut below = self.i_star;
        for (j, e) in s.edges.iter().enumerate() {
            if e.level != self.n + 1 + j {
                return Err(Error::InvalidPath(format!("suffix edge {} is at level {}", j, e.level)));
            }
            if self.d.source(*e)? != below {
                return Err(Error::InvalidPath(format!("suffix does not chain at level {}", e.level)));
            }
            below = e.target;
        }
        if s.open_top && below != 0 {
            return Err(Error::InvalidPath("an open top must sit above vertex 1".into()));
        }
        Ok(())
    }

    fn deg(&self, e: EdgeRef) -> Result<usize> {
        self.d.in_degree(e.level, e.target)
    }

    /// Moves to the next edge in the scan: next rank in the current block,
    /// otherwise the first edge of the next block.
    fn advance(&self, s: &mut Suffix) -> Result<()> {
        let e0 = s.edges[0];
        if e0.rank + 1 < self.deg(e0)? {
            s.edges[0].rank += 1;
            return Ok(());
        }
        for j in 1..s.edges.len() {
            let e = s.edges[j];
            if e.rank + 1 < self.deg(e)? {
                s.edges[j].rank += 1;
                let mut v = self.d.source(s.edges[j])?;
                for i in (0..j).rev() {
                    s.edges[i] = EdgeRef { level: self.n + 1 + i, target: v, rank: 0 };
                    v = self.d.source(s.edges[i])?;
                }
                return Ok(());
            }
        }
        if s.open_top || s.edges.len() < 2 {
            return Err(Error::NeedsDeeperSuffix { level: s.top_level() });
        }
        // every known edge is maximal: the orbit continues with minimal
        // edges, all starting at vertex 1, under an unknown top edge
        let keep = s.edges.len() - 1;
        s.edges.truncate(keep);
        for (i, e) in s.edges.iter_mut().enumerate() {
            *e = EdgeRef { level: self.n + 1 + i, target: 0, rank: 0 };
        }
        s.open_top = true;
        Ok(())
    }

    pub fn walk(&self, start: &Suffix) -> Result<ExcursionProfile> {
        self.check_state(start)?;
        let mut counts = vec![0u64; self.heights.len()];
        counts[self.i_star] = 1;
        let mut cur = start.clone();
        loop {
            self.advance(&mut cur)?;
            let s = self.d.source(cur.edges[0])?;
            if s == self.i_star {
                break;
            }
            counts[s] += 1;
        }
        Ok(ExcursionProfile {
            level: self.n,
            i_star: self.i_star,
            counts,
            stop_edge: cur.edges[0],
            next_state: cur,
        })
    }

    pub fn return_time(&self, p: &ExcursionProfile) -> BigUint {
        p.counts.iter().zip(&self.heights).map(|(&c, h)| h * c).sum()
    }

    /// The first `k` return gaps from `start` and the profiles of each excursion.
    pub fn gaps(&self, start: &Suffix, k: usize) -> Result<(Vec<BigUint>, Vec<ExcursionProfile>)> {
        let mut state = start.clone();
        let mut gaps = Vec::with_capacity(k);
        let mut profiles = Vec::with_capacity(k);
        for _ in 0..k {
            let p = self.walk(&state)?;
            gaps.push(self.return_time(&p));
            state = p.next_state.clone();
            profiles.push(p);
        }
        Ok((gaps, profiles))
    }
}

/// Longest refinement tried when an excursion needs edges beyond the suffix.
const MAX_EXTRA_LEVELS: usize = 8;

impl Walker<'_> {
    /// Runs `k` excursions from every chained suffix of length `k + 1` above
    /// i*, splitting a suffix one level further whenever its excursions need
    /// more information. `f` receives each resolved suffix with its gaps and
    /// profiles, in lexicographic order.
    pub fn for_each_resolved(
        &mut self,
        k: usize,
        mut f: impl FnMut(&[EdgeRef], Vec<BigUint>, Vec<ExcursionProfile>) -> Result<()>,
    ) -> Result<()> {
        let base = k + 1;
        self.ensure_levels(self.n + base)?;
        for s in enumerate_suffixes(self.d, self.n, self.i_star, base)? {
            self.resolve(s, k, base + MAX_EXTRA_LEVELS, &mut f)?;
        }
        Ok(())
    }

    fn resolve(
        &mut self,
        s: Vec<EdgeRef>,
        k: usize,
        max_len: usize,
        f: &mut impl FnMut(&[EdgeRef], Vec<BigUint>, Vec<ExcursionProfile>) -> Result<()>,
    ) -> Result<()> {
        match self.gaps(&Suffix::new(s.clone()), k) {
            Ok((g, p)) => f(&s, g, p),
            Err(Error::NeedsDeeperSuffix { level }) => {
                if s.len() >= max_len {
                    return Err(Error::NeedsDeeperSuffix { level });
                }
                let top = *s.last().unwrap();
                self.ensure_levels(top.level + 1)?;
                let mut children = Vec::new();
                let mut stack = s.clone();
                extend_suffixes(self.d, top.level + 1, top.target, 1, &mut stack, &mut children)?;
                for c in children {
                    self.resolve(c, k, max_len, f)?;
                }
                Ok(())
            }
            Err(e) => Err(e),
        }
    }
}

/// One excursion from the cylinder above `suffix` (edges at levels n+1, n+2, ...,
/// the first one starting at `i_star`).
pub fn excursion_walk(
    d: &OrderedBratteliDiagram,
    n: usize,
    i_star: usize,
    suffix: &[EdgeRef],
) -> Result<ExcursionProfile> {
    if suffix.len() < 2 {
        return Err(Error::Precondition("a suffix needs at least two edges".into()));
    }
    let mut w = Walker::new(d, n, i_star)?;
    w.ensure_levels(n + suffix.len())?;
    w.walk(&Suffix::new(suffix.to_vec()))
}

/// Return time encoded by a profile: the sum of the crossed tower heights.
pub fn return_time(d: &OrderedBratteliDiagram, n: usize, profile: &ExcursionProfile) -> Result<BigUint> {
    let h = d.heights(n)?;
    if h.len() != profile.counts.len() {
        return Err(Error::Precondition("profile does not belong to this level".into()));
    }
    Ok(profile.counts.iter().zip(&h).map(|(&c, h)| h * c).sum())
}

/// The first `k` return gaps from the cylinder above `suffix`, threading the
/// post-return state from one excursion to the next.
pub fn kth_return_state(
    d: &OrderedBratteliDiagram,
    n: usize,
    i_star: usize,
    suffix: &[EdgeRef],
    k: usize,
) -> Result<(Vec<BigUint>, Vec<ExcursionProfile>)> {
    if suffix.len() < 2 {
        return Err(Error::Precondition("a suffix needs at least two edges".into()));
    }
    let mut w = Walker::new(d, n, i_star)?;
    w.ensure_levels(n + suffix.len())?;
    w.gaps(&Suffix::new(suffix.to_vec()), k)
}

/// All chained suffixes of `len` edges above vertex `i_star` of V_n, in
/// lexicographic order of (level n+1 edge, level n+2 edge, ...).
pub(crate) fn enumerate_suffixes(
    d: &OrderedBratteliDiagram,
    n: usize,
    i_star: usize,
    len: usize,
) -> Result<Vec<Vec<EdgeRef>>> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    extend_suffixes(d, n + 1, i_star, len, &mut stack, &mut out)?;
    Ok(out)
}

/// Appends every extension of `prefix` by `extra` edges above its top.
pub(crate) fn extend_suffixes(
    d: &OrderedBratteliDiagram,
    level: usize,
    from: usize,
    remaining: usize,
    stack: &mut Vec<EdgeRef>,
    out: &mut Vec<Vec<EdgeRef>>,
) -> Result<()> {
    if remaining == 0 {
        out.push(stack.clone());
        return Ok(());
    }
    let lv = d.level(level)?;
    for (t, list) in lv.into.iter().enumerate() {
        for (rank, &s) in list.iter().enumerate() {
            if s == from {
                stack.push(EdgeRef { level, target: t, rank });
                extend_suffixes(d, level + 1, t, remaining - 1, stack, out)?;
                stack.pop();
            }
        }
    }
    Ok(())
}
