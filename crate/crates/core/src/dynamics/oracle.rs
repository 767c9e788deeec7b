//! Return times by brute force: iterate the adic map on truncated paths and
//! count steps between visits to the cylinder.

use crate::diagram::{EdgeRef, OrderedBratteliDiagram, PathPrefix};
use crate::error::{Error, Result};

use super::step_in_place;

#[derive(Clone, Copy, Debug, Default)]
pub struct OracleOptions {
    /// Starting depth; defaults to n + k + 1.
    pub depth: Option<usize>,
    /// Deepest refinement tried before giving up; defaults to n + k + 6.
    pub cap: Option<usize>,
    /// Refuse truncated orbits longer than this many paths.
    pub max_orbit: Option<u64>,
}

/// A cylinder inside [I_n] on which the first k return gaps are constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCylinder {
    pub path: Vec<EdgeRef>,
    pub gaps: Vec<u64>,
}

/// A partition of [I_n] into cylinders with known gaps, in adic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub prefix: PathPrefix,
    pub cylinders: Vec<OracleCylinder>,
}

impl OracleResult {
    /// Distinct values of the j-th gap (0-based), ascending.
    pub fn gap_values(&self, j: usize) -> Vec<u64> {
        let mut v: Vec<u64> = self.cylinders.iter().map(|c| c.gaps[j]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

struct Scan<'a> {
    d: &'a OrderedBratteliDiagram,
    prefix: &'a [EdgeRef],
    cap: usize,
}

impl Scan<'_> {
    fn matches(&self, path: &[EdgeRef]) -> bool {
        path[..self.prefix.len()] == *self.prefix
    }

    /// Next `k` gaps starting from `path`, which lies in the cylinder, with
    /// `steps` already taken. When the truncated orbit reaches a tower top,
    /// every possible continuation (the base of each tower) is followed;
    /// `None` means they disagree and the cylinder must be refined.
    fn follow(&self, path: &[EdgeRef], k: usize, budget: usize) -> Result<Option<Vec<u64>>> {
        let mut out = Vec::with_capacity(k);
        let mut cur = path.to_vec();
        self.run(&mut cur, 0, k, budget, &mut out)
    }

    fn run(
        &self,
        cur: &mut [EdgeRef],
        mut steps: u64,
        k: usize,
        budget: usize,
        done: &mut Vec<u64>,
    ) -> Result<Option<Vec<u64>>> {
        let m = cur.len();
        loop {
            match step_in_place(self.d, cur)? {
                Some(_) => {
                    steps += 1;
                    if self.matches(cur) {
                        done.push(steps);
                        if done.len() == k {
                            return Ok(Some(done.clone()));
                        }
                        steps = 0;
                    }
                }
                None => {
                    if budget == 0 {
                        return Ok(None);
                    }
                    steps += 1;
                    let mut agreed: Option<Vec<u64>> = None;
                    for u in 0..self.d.vertex_count(m)? {
                        let mut next = self.d.min_path(m, u)?.edges().to_vec();
                        let mut acc = done.clone();
                        let res = if self.matches(&next) {
                            acc.push(steps);
                            if acc.len() == k {
                                Some(acc)
                            } else {
                                self.run(&mut next, 0, k, budget - 1, &mut acc)?
                            }
                        } else {
                            self.run(&mut next, steps, k, budget - 1, &mut acc)?
                        };
                        match (res, &agreed) {
                            (None, _) => return Ok(None),
                            (Some(r), Some(a)) if r != *a => return Ok(None),
                            (Some(r), _) => agreed = Some(r),
                        }
                    }
                    return Ok(agreed);
                }
            }
        }
    }

    /// Gaps for one cylinder, refining it until every piece is resolved.
    fn resolve(&self, path: &[EdgeRef], k: usize, out: &mut Vec<OracleCylinder>) -> Result<()> {
        if let Some(gaps) = self.follow(path, k, k + 1)? {
            out.push(OracleCylinder { path: path.to_vec(), gaps });
            return Ok(());
        }
        let depth = path.len() + 1;
        if depth > self.cap {
            return Err(Error::InconclusiveOracle { cap: self.cap });
        }
        let top = path.last().map_or(0, |e| e.target);
        let lv = self.d.level(depth)?;
        for (t, list) in lv.into.iter().enumerate() {
            for (rank, &s) in list.iter().enumerate() {
                if s == top {
                    let mut child = path.to_vec();
                    child.push(EdgeRef { level: depth, target: t, rank });
                    self.resolve(&child, k, out)?;
                }
            }
        }
        Ok(())
    }
}

/// Exact first `k` return gaps on a partition of [I_n], computed by walking
/// the whole truncated orbit at depth m and recording visits to I_n. Visits
/// whose next `k` returns cross a tower top of the truncation are resolved
/// separately, first by following every continuation, then by refinement.
pub fn brute_force_returns(
    d: &OrderedBratteliDiagram,
    prefix: &PathPrefix,
    k: usize,
    opts: OracleOptions,
) -> Result<OracleResult> {
    let n = prefix.len();
    if n == 0 || k == 0 {
        return Err(Error::Precondition("need a non-empty cylinder and k >= 1".into()));
    }
    let m = opts.depth.unwrap_or(n + k + 1);
    if m <= n {
        return Err(Error::Precondition(format!("depth {} must exceed the cylinder length {}", m, n)));
    }
    let cap = opts.cap.unwrap_or(n + k + 6).max(m);
    let total: u64 = d
        .heights(m)?
        .iter()
        .try_fold(0u64, |acc, h| u64::try_from(h).ok().and_then(|h| acc.checked_add(h)))
        .ok_or_else(|| Error::Overflow("truncated orbit too long".into()))?;
    if total > opts.max_orbit.unwrap_or(1 << 32) {
        return Err(Error::Precondition(format!("truncated orbit has {} paths; refusing", total)));
    }
    let scan = Scan { d, prefix: prefix.edges(), cap };

    // one pass over the cyclic orbit: visit positions and tower-top crossings
    let mut visits: Vec<(u64, Vec<EdgeRef>)> = Vec::new();
    let mut crossings: Vec<u64> = Vec::new();
    let mut cur = d.min_path(m, 0)?.edges().to_vec();
    let count = d.vertex_count(m)?;
    for pos in 0..total {
        if scan.matches(&cur) {
            visits.push((pos, cur.clone()));
        }
        if step_in_place(d, &mut cur)?.is_none() {
            crossings.push(pos);
            let next = (cur[m - 1].target + 1) % count;
            cur = d.min_path(m, next)?.edges().to_vec();
        }
    }
    if visits.is_empty() {
        return Err(Error::Precondition("the cylinder is never visited".into()));
    }

    let v = visits.len();
    let mut cylinders = Vec::with_capacity(v);
    for j in 0..v {
        let (p0, ref path) = visits[j];
        let gaps: Option<Vec<u64>> = (0..k)
            .map(|i| {
                let a = visits[(j + i) % v].0;
                let b = visits[(j + i + 1) % v].0;
                let gap = if b > a { b - a } else { b + total - a };
                (gap <= total).then_some(gap)
            })
            .collect();
        let span_end = p0 + gaps.as_ref().map_or(total, |g| g.iter().sum());
        let crossed = span_end - p0 >= total || crosses(&crossings, p0, span_end, total);
        match gaps {
            Some(g) if !crossed => cylinders.push(OracleCylinder { path: path.clone(), gaps: g }),
            _ => scan.resolve(path, k, &mut cylinders)?,
        }
    }
    Ok(OracleResult { prefix: prefix.clone(), cylinders })
}

/// Whether a crossing step lies in [a, b) on the cycle of length `total`.
fn crosses(crossings: &[u64], a: u64, b: u64, total: u64) -> bool {
    let hit = |lo: u64, hi: u64| {
        let i = crossings.partition_point(|&c| c < lo);
        i < crossings.len() && crossings[i] < hi
    };
    if b <= total {
        hit(a, b)
    } else {
        hit(a, total) || hit(0, b - total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::LevelSpec;

    fn ex1() -> OrderedBratteliDiagram {
        let rep = LevelSpec::new(vec![vec![0, 1, 1], vec![0, 1, 1, 1]]);
        OrderedBratteliDiagram::stationary(OrderedBratteliDiagram::root_level(2), rep).unwrap()
    }

    #[test]
    fn example_one_return_values() {
        let d = ex1();
        let expected = [(1, [3u64, 4]), (2, [11, 15]), (3, [41, 56]), (4, [153, 209])];
        for (n, vals) in expected {
            let r = brute_force_returns(&d, &d.min_path(n, 0).unwrap(), 1, OracleOptions::default()).unwrap();
            assert_eq!(r.gap_values(0), vals.to_vec(), "n = {n}");
        }
    }

    #[test]
    fn odometer_gaps_are_constant() {
        let d = OrderedBratteliDiagram::stationary(
            OrderedBratteliDiagram::root_level(1),
            LevelSpec::new(vec![vec![0, 0, 0]]),
        )
        .unwrap();
        let r = brute_force_returns(&d, &d.min_path(3, 0).unwrap(), 3, OracleOptions::default()).unwrap();
        assert!(r.cylinders.iter().all(|c| c.gaps == vec![9, 9, 9]));
    }
}
