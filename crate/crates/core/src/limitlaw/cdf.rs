//! Distribution functions on [0, inf) and the exact sup distance between them.

/// One piece of a distribution function, valid on [start, end).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Piece {
    /// value + slope * (t - start)
    Linear { start: f64, end: f64, value: f64, slope: f64 },
    /// value + (k - k0) * step on [k * spacing, (k + 1) * spacing), where
    /// start = k0 * spacing
    Lattice { start: f64, end: f64, spacing: f64, k0: u64, value: f64, step: f64 },
}

/// Index k with k * s <= t < (k + 1) * s, using the same products as the
/// lattice points themselves.
pub fn lattice_index(t: f64, s: f64) -> u64 {
    if t <= 0.0 {
        return 0;
    }
    let mut k = (t / s).floor() as u64;
    while k > 0 && (k as f64) * s > t {
        k -= 1;
    }
    while ((k + 1) as f64) * s <= t {
        k += 1;
    }
    k
}

impl Piece {
    pub fn start(&self) -> f64 {
        match *self {
            Piece::Linear { start, .. } | Piece::Lattice { start, .. } => start,
        }
    }

    pub fn end(&self) -> f64 {
        match *self {
            Piece::Linear { end, .. } | Piece::Lattice { end, .. } => end,
        }
    }

    /// Value at t (right-continuous).
    pub fn at(&self, t: f64) -> f64 {
        match *self {
            Piece::Linear { start, value, slope, .. } => value + slope * (t - start),
            Piece::Lattice { spacing, k0, value, step, .. } => {
                value + (lattice_index(t, spacing) as f64 - k0 as f64) * step
            }
        }
    }

    /// Limit from the left at t, for t inside (start, end].
    pub fn left_at(&self, t: f64) -> f64 {
        match *self {
            Piece::Linear { .. } => self.at(t),
            Piece::Lattice { spacing, k0, value, step, .. } => {
                let mut k = lattice_index(t, spacing);
                if k > 0 && (k as f64) * spacing == t {
                    k -= 1;
                }
                value + (k as f64 - k0 as f64) * step
            }
        }
    }

    fn slope(&self) -> f64 {
        match *self {
            Piece::Linear { slope, .. } => slope,
            Piece::Lattice { step, spacing, .. } => step / spacing,
        }
    }

    /// Lattice jump points strictly inside (a, b): first and last index.
    fn jumps_in(&self, a: f64, b: f64) -> Option<(u64, u64, f64)> {
        let Piece::Lattice { spacing, step, .. } = *self else { return None };
        if step == 0.0 {
            return None;
        }
        let first = lattice_index(a, spacing) + 1;
        if (first as f64) * spacing >= b {
            return None;
        }
        let mut last = lattice_index(b, spacing);
        if (last as f64) * spacing >= b {
            last -= 1;
        }
        Some((first, last, spacing))
    }
}

/// A distribution function described by contiguous pieces covering [0, inf).
pub trait Cdf {
    fn pieces(&self) -> Vec<Piece>;

    fn eval(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        let pieces = self.pieces();
        let i = pieces.partition_point(|p| p.start() <= t).saturating_sub(1);
        pieces[i].at(t)
    }

    /// Points where the function is not affine: piece boundaries.
    fn breakpoints(&self) -> Vec<f64> {
        self.pieces().iter().map(Piece::start).collect()
    }
}

fn find(pieces: &[Piece], t: f64) -> &Piece {
    let i = pieces.partition_point(|p| p.start() <= t).saturating_sub(1);
    &pieces[i]
}

/// sup over t >= 0 of |a(t) - b(t)|, evaluated exactly at the finitely many
/// points where it can be attained.
pub fn sup_distance(a: &dyn Cdf, b: &dyn Cdf) -> f64 {
    let pa = a.pieces();
    let pb = b.pieces();
    let mut cuts: Vec<f64> = pa.iter().chain(&pb).map(Piece::start).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut best: f64 = 0.0;
    for (idx, &x0) in cuts.iter().enumerate() {
        let x1 = cuts.get(idx + 1).copied().unwrap_or(f64::INFINITY);
        let (ca, cb) = (find(&pa, x0), find(&pb, x0));
        let diff_at = |t: f64| (ca.at(t) - cb.at(t)).abs();
        let diff_left = |t: f64| (ca.left_at(t) - cb.left_at(t)).abs();
        best = best.max(diff_at(x0));
        if x1.is_infinite() {
            // tails are affine; equal slopes keep the gap constant
            if ca.slope() != cb.slope() {
                return f64::INFINITY;
            }
            continue;
        }
        best = best.max(diff_left(x1));
        let ja = ca.jumps_in(x0, x1);
        let jb = cb.jumps_in(x0, x1);
        let mut points: Vec<f64> = Vec::new();
        match (ja, jb) {
            (Some((fa, la, sa)), Some((fb, lb, sb))) if sa != sb => {
                points.extend((fa..=la).map(|k| k as f64 * sa));
                points.extend((fb..=lb).map(|k| k as f64 * sb));
            }
            (ja, jb) => {
                for (f, l, s) in ja.into_iter().chain(jb) {
                    points.push(f as f64 * s);
                    points.push(l as f64 * s);
                }
            }
        }
        for t in points {
            best = best.max(diff_at(t)).max(diff_left(t));
        }
    }
    best
}

/// Continuous-or-jumping piecewise-linear CDF given by segments
/// (start, value at start, slope); the last segment extends to infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseLinearCdf {
    segments: Vec<(f64, f64, f64)>,
}

impl PiecewiseLinearCdf {
    /// Segments must start at 0 and be strictly increasing in start.
    pub fn new(segments: Vec<(f64, f64, f64)>) -> Self {
        debug_assert!(segments.first().is_some_and(|s| s.0 == 0.0));
        debug_assert!(segments.windows(2).all(|w| w[0].0 < w[1].0));
        PiecewiseLinearCdf { segments }
    }

    /// The uniform law on [0, 1].
    pub fn uniform() -> Self {
        Self::new(vec![(0.0, 0.0, 1.0), (1.0, 1.0, 0.0)])
    }

    /// (start, value, slope) triples.
    pub fn segments(&self) -> &[(f64, f64, f64)] {
        &self.segments
    }

    pub fn final_value(&self) -> f64 {
        let (_, v, _) = *self.segments.last().unwrap();
        v
    }

    pub fn slopes(&self) -> Vec<f64> {
        self.segments.iter().map(|s| s.2).collect()
    }
}

impl Cdf for PiecewiseLinearCdf {
    fn pieces(&self) -> Vec<Piece> {
        let n = self.segments.len();
        (0..n)
            .map(|i| {
                let (start, value, slope) = self.segments[i];
                let end = self.segments.get(i + 1).map_or(f64::INFINITY, |s| s.0);
                Piece::Linear { start, end, value, slope }
            })
            .collect()
    }
}

/// Atoms at sorted support points with cumulative masses.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteCdf {
    pub support: Vec<f64>,
    pub cumulative: Vec<f64>,
}

impl DiscreteCdf {
    /// Sorts atoms and merges equal locations.
    pub fn from_atoms(mut atoms: Vec<(f64, f64)>) -> Self {
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut support: Vec<f64> = Vec::new();
        let mut masses: Vec<f64> = Vec::new();
        for (x, m) in atoms {
            if support.last() == Some(&x) {
                *masses.last_mut().unwrap() += m;
            } else {
                support.push(x);
                masses.push(m);
            }
        }
        let cumulative = masses
            .iter()
            .scan(0.0, |acc, m| {
                *acc += m;
                Some(*acc)
            })
            .collect();
        DiscreteCdf { support, cumulative }
    }

    pub fn total_mass(&self) -> f64 {
        self.cumulative.last().copied().unwrap_or(0.0)
    }

    /// Mass of each atom.
    pub fn masses(&self) -> Vec<f64> {
        let mut prev = 0.0;
        self.cumulative
            .iter()
            .map(|&c| {
                let m = c - prev;
                prev = c;
                m
            })
            .collect()
    }
}

impl Cdf for DiscreteCdf {
    fn pieces(&self) -> Vec<Piece> {
        let mut out = Vec::with_capacity(self.support.len() + 1);
        let first = self.support.first().copied().unwrap_or(f64::INFINITY);
        if first > 0.0 {
            out.push(Piece::Linear { start: 0.0, end: first, value: 0.0, slope: 0.0 });
        }
        for (i, (&x, &c)) in self.support.iter().zip(&self.cumulative).enumerate() {
            let end = self.support.get(i + 1).copied().unwrap_or(f64::INFINITY);
            out.push(Piece::Linear { start: x, end, value: c, slope: 0.0 });
        }
        out
    }
}

/// Entrance-time law at a finite level: F(t) = sum_g w_g min(floor(t/mu), N_g),
/// with atoms kept in enumeration order.
#[derive(Clone, Debug, PartialEq)]
pub struct EntranceCdf {
    /// mu(I_n)
    pub spacing: f64,
    /// (return time N, mass of the piece of I_n returning at N)
    pub atoms: Vec<(u64, f64)>,
}

impl EntranceCdf {
    pub fn eval_index(&self, k: u64) -> f64 {
        let mut acc = 0.0;
        for &(n, w) in &self.atoms {
            acc += (k.min(n) as f64) * w;
        }
        acc
    }

    pub fn max_return(&self) -> u64 {
        self.atoms.iter().map(|a| a.0).max().unwrap_or(0)
    }

    pub fn min_return(&self) -> u64 {
        self.atoms.iter().map(|a| a.0).min().unwrap_or(0)
    }

    /// Final value, which is the Kac sum sum_g N_g w_g.
    pub fn total_mass(&self) -> f64 {
        self.eval_index(u64::MAX)
    }
}

impl Cdf for EntranceCdf {
    fn eval(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        self.eval_index(lattice_index(t, self.spacing))
    }

    fn pieces(&self) -> Vec<Piece> {
        let mut levels: Vec<u64> = self.atoms.iter().map(|a| a.0).collect();
        levels.sort_unstable();
        levels.dedup();
        let mut out = Vec::with_capacity(levels.len() + 1);
        let mut k0 = 0u64;
        for &nk in &levels {
            if nk == k0 {
                continue;
            }
            let step: f64 = self.atoms.iter().filter(|a| a.0 > k0).map(|a| a.1).sum();
            out.push(Piece::Lattice {
                start: k0 as f64 * self.spacing,
                end: nk as f64 * self.spacing,
                spacing: self.spacing,
                k0,
                value: self.eval_index(k0),
                step,
            });
            k0 = nk;
        }
        out.push(Piece::Linear {
            start: k0 as f64 * self.spacing,
            end: f64::INFINITY,
            value: self.eval_index(k0),
            slope: 0.0,
        });
        out
    }
}
