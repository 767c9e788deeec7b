use crate::diagram::{EdgeRef, LevelSpec, OrderedBratteliDiagram};
use crate::dynamics::{enumerate_suffixes, ExcursionProfile, Suffix, Walker};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::spectral::PerronData;

/// Two excursion constants closer than this are treated as equal.
pub const GROUP_TOL: f64 = 1e-9;

/// Suffixes (e, f) sharing one value of the scaled return time c-bar.
#[derive(Clone, Debug, PartialEq)]
pub struct BreakpointGroup {
    pub cbar: f64,
    /// cbar * r(i*)
    pub breakpoint: f64,
    /// sum over members of r(t(f)) / lambda^2
    pub weight: f64,
    /// (e, f) with e at level 2 and f at level 3
    pub members: Vec<(EdgeRef, EdgeRef)>,
}

/// Limit data of a stationary diagram at vertex i*: the suffixes grouped by
/// their excursion constant, in increasing order.
#[derive(Clone, Debug, PartialEq)]
pub struct BreakpointTable {
    pub i_star: usize,
    pub r_star: f64,
    pub groups: Vec<BreakpointGroup>,
}

impl BreakpointTable {
    pub fn breakpoints(&self) -> Vec<f64> {
        self.groups.iter().map(|g| g.breakpoint).collect()
    }

    pub fn cbars(&self) -> Vec<f64> {
        self.groups.iter().map(|g| g.cbar).collect()
    }

    /// sum over all suffixes of cbar r(t(f)) / lambda^2; 1 for a correct table
    pub fn total_mass(&self) -> f64 {
        self.groups.iter().map(|g| g.cbar * g.weight).sum()
    }

    /// Group whose constant is within the grouping tolerance of `cbar`.
    pub fn group_of(&self, cbar: f64) -> Option<usize> {
        self.groups.iter().position(|g| (g.cbar - cbar).abs() <= GROUP_TOL)
    }

    fn from_entries(i_star: usize, pd: &PerronData, mut entries: Vec<(f64, f64, (EdgeRef, EdgeRef))>) -> Self {
        entries.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(&b.2)));
        let r_star = pd.r[i_star];
        let mut groups: Vec<BreakpointGroup> = Vec::new();
        for (cbar, w, m) in entries {
            match groups.last_mut() {
                Some(g) if (cbar - g.cbar).abs() <= GROUP_TOL => {
                    g.weight += w;
                    g.members.push(m);
                }
                _ => groups.push(BreakpointGroup { cbar, breakpoint: cbar * r_star, weight: w, members: vec![m] }),
            }
        }
        for g in &mut groups {
            g.members.sort();
        }
        BreakpointTable { i_star, r_star, groups }
    }
}

/// sum_i c(i) l(i)
pub fn cbar(profile: &ExcursionProfile, pd: &PerronData) -> f64 {
    profile.counts.iter().zip(&pd.l).map(|(&c, l)| c as f64 * l).sum()
}

pub(crate) fn stationary_walker<'a>(d: &'a OrderedBratteliDiagram, n: usize, i_star: usize) -> Result<Walker<'a>> {
    if !d.is_stationary() {
        return Err(Error::Precondition("limit laws need a stationary diagram".into()));
    }
    Walker::new(d, n, i_star)
}

/// Table built from the excursions above level n (the result does not
/// depend on n for a stationary diagram; edges are reported at levels 2, 3).
pub fn breakpoint_table_at(d: &OrderedBratteliDiagram, i_star: usize, n: usize, pd: &PerronData) -> Result<BreakpointTable> {
    let mut w = stationary_walker(d, n, i_star)?;
    w.ensure_levels(n + 2)?;
    let lambda2 = pd.lambda * pd.lambda;
    let mut entries = Vec::new();
    for s in enumerate_suffixes(d, n, i_star, 2)? {
        let p = w.walk(&Suffix::new(s.clone()))?;
        let shift = |e: EdgeRef| EdgeRef { level: e.level + 1 - n, ..e };
        entries.push((cbar(&p, pd), pd.r[s[1].target] / lambda2, (shift(s[0]), shift(s[1]))));
    }
    Ok(BreakpointTable::from_entries(i_star, pd, entries))
}

pub fn breakpoint_table(d: &OrderedBratteliDiagram, i_star: usize, pd: &PerronData) -> Result<BreakpointTable> {
    breakpoint_table_at(d, i_star, 1, pd)
}

/// Table for the left-to-right order of a positive matrix at vertex 1, from
/// the closed form: cbar(e) = l(1) unless e is the last edge from 1 into its
/// target j, where cbar(e) = l(1) + lambda l(j) - M(1, j) l(1).
pub fn left_right_closed_form(m: &Matrix, pd: &PerronData) -> Result<BreakpointTable> {
    if !m.is_square() || !m.is_positive() {
        return Err(Error::Precondition("closed form needs a positive square matrix".into()));
    }
    let lv = LevelSpec::left_to_right(m);
    let lambda2 = pd.lambda * pd.lambda;
    let mut entries = Vec::new();
    for j in 0..m.cols() {
        let from_one = m.get(0, j) as usize;
        for rank in 0..from_one {
            let c = if rank + 1 < from_one {
                pd.l[0]
            } else {
                pd.l[0] + pd.lambda * pd.l[j] - from_one as f64 * pd.l[0]
            };
            let e = EdgeRef { level: 2, target: j, rank };
            for (t, list) in lv.into.iter().enumerate() {
                for (frank, &s) in list.iter().enumerate() {
                    if s == j {
                        let f = EdgeRef { level: 3, target: t, rank: frank };
                        entries.push((c, pd.r[t] / lambda2, (e, f)));
                    }
                }
            }
        }
    }
    Ok(BreakpointTable::from_entries(0, pd, entries))
}
