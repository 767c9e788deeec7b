use bratteli::dynamics::{brute_force_returns, OracleOptions};
use bratteli::generators::{
    convergents, example1, odometer_beta, odometer_classic, sturmian, Bases, Block, SturmianSpec,
};
use bratteli::limitlaw::{convergence_report_against, Cdf, PiecewiseLinearCdf};
use bratteli::{Cuts, Error};
use num_bigint::BigUint;

#[test]
fn sturmian_fails_the_walk_hypotheses() {
    let (d, _) = sturmian(&SturmianSpec::golden()).unwrap();
    let r = d.validate(6).unwrap();
    assert!(!r.h1);
    assert!(r.h2);
    assert!(r.properly_ordered);
    assert_eq!(d.incidence(3).unwrap().to_rows(), vec![vec![1, 1], vec![1, 0]]);
}

/// Contracting pairs of levels gives the positive matrix [[1,1],[1,2]] and
/// swapping the labels makes the minimal edges start at vertex 1; the result
/// has the same return times as the original with the vertices exchanged.
#[test]
fn golden_sturmian_normalizes_to_an_equivalent_stationary_diagram() {
    let (d, _) = sturmian(&SturmianSpec::golden()).unwrap();
    let (nd, rep) = d.relabel_normalize().unwrap();
    assert!(rep.h1 && rep.h2 && rep.h3 && rep.stationary);
    assert_eq!(nd.stationary_matrix().unwrap().to_rows(), vec![vec![1, 1], vec![1, 2]]);
    for n in 1..=5 {
        for v in 0..2 {
            let a = brute_force_returns(&nd, &nd.min_path(n, v).unwrap(), 1, OracleOptions::default()).unwrap();
            let b = brute_force_returns(&d, &d.min_path(2 * n - 1, 1 - v).unwrap(), 1, OracleOptions::default()).unwrap();
            assert_eq!(a.gap_values(0), b.gap_values(0), "n = {n}, vertex {}", v + 1);
        }
    }
}

#[test]
fn normalization_reports_what_it_could_not_fix() {
    // b blocks only: the extreme paths are not unique, and no relabeling changes that
    let (d, _) = sturmian(&SturmianSpec::new(vec![1], vec![Block::B], 1).unwrap()).unwrap();
    assert!(!d.validate(6).unwrap().properly_ordered);
    let (nd, rep) = d.relabel_normalize().unwrap();
    assert!(rep.h1 && rep.h3 && !rep.properly_ordered);
    assert!(nd.is_stationary());
}

#[test]
fn normalization_rejects_several_root_edges() {
    let d = bratteli::OrderedBratteliDiagram::stationary(
        bratteli::LevelSpec::new(vec![vec![0, 0]]),
        bratteli::LevelSpec::new(vec![vec![0, 0]]),
    )
    .unwrap();
    assert!(matches!(d.relabel_normalize(), Err(Error::Normalize(_)) | Err(Error::Hypothesis { .. })));
}

#[test]
fn golden_heights_are_fibonacci() {
    let (d, _) = sturmian(&SturmianSpec::golden()).unwrap();
    let t = convergents(&[1; 20], 20).unwrap();
    for n in 2..=20 {
        let h = d.heights(n).unwrap();
        assert_eq!(h[0], *t.q(n as i64));
        assert_eq!(h[1], *t.q(n as i64 - 1));
    }
}

#[test]
fn golden_returns_are_two_consecutive_fibonacci_numbers() {
    let (d, _) = sturmian(&SturmianSpec::golden()).unwrap();
    let r = brute_force_returns(&d, &d.min_path(6, 0).unwrap(), 1, OracleOptions::default()).unwrap();
    assert_eq!(r.gap_values(0), vec![13, 21]);
}

#[test]
fn sturmian_measure_matches_convergents() {
    // q_k delta_k = G^k(beta) / (1 + (q_(k-1)/q_k) G^k(beta)), where
    // delta_k = |beta q_k - p_k|; delta_k is taken from the measure to avoid
    // the cancellation in beta q_k - p_k
    for spec in [
        SturmianSpec::golden(),
        SturmianSpec::new(vec![2], vec![Block::B], 1).unwrap(),
        SturmianSpec::new(vec![1, 3], vec![Block::B, Block::A], 2).unwrap(),
    ] {
        let digits: Vec<u64> = (1..=30).map(|j| spec.digit(j)).collect();
        let t = convergents(&digits, 30).unwrap();
        let beta = spec.beta();
        let f = |x: &BigUint| num_traits::ToPrimitive::to_f64(x).unwrap();
        let mu = bratteli::generators::SturmianMeasure::new(spec.clone());
        for k in 1..=25i64 {
            let (q, q1) = (f(t.q(k)), f(t.q(k - 1)));
            let g = spec.gauss_iterate(k as usize);
            if k <= 6 {
                assert!(((beta * q - f(t.p(k))).abs() - mu.ln_delta(k).exp()).abs() < 1e-12);
            }
            let lhs = q * mu.ln_delta(k).exp();
            let rhs = g / (1.0 + q1 / q * g);
            assert!((lhs - rhs).abs() < 1e-10, "k = {k}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn classic_odometer_contracts_to_products() {
    let d = odometer_classic(&Bases::Periodic(vec![2, 3])).unwrap();
    let c = d.contract(&Cuts::every(2)).unwrap();
    for k in 2..=5 {
        assert_eq!(c.incidence(k).unwrap().to_rows(), vec![vec![6]]);
    }
    let h: u64 = (&c.heights(4).unwrap()[0]).try_into().unwrap();
    assert_eq!(h, 2 * 6 * 6 * 6);
}

/// With growing bases the first entrance law tends pointwise to t on
/// [0, beta), then beta: the rest of the mass escapes to infinity.
#[test]
fn beta_odometer_with_growing_bases_is_not_uniform() {
    let beta = 0.4;
    let bases: Vec<u64> = (1..=9).map(|n| n + 2).collect();
    let (d, mu) = odometer_beta(&Bases::Finite(bases), beta).unwrap();
    let seq = |n: usize| d.min_path(n, 0);
    let rep = convergence_report_against(&d, &seq, 1, 3..=7, &mu, &PiecewiseLinearCdf::uniform()).unwrap();
    assert!(rep.rows.windows(2).all(|w| w[1].1 > w[0].1), "{:?}", rep.rows);

    let target = PiecewiseLinearCdf::new(vec![(0.0, 0.0, 1.0), (beta, beta, 0.0)]);
    let window: Vec<f64> = (0..=200).map(|i| i as f64 / 100.0).collect();
    let gap = |n: usize| {
        let f = bratteli::limitlaw::finite_f1(&d, &seq(n).unwrap(), &mu).unwrap();
        window.iter().map(|&t| (f.eval(t) - target.eval(t)).abs()).fold(0.0, f64::max)
    };
    let gaps: Vec<f64> = (3..=7).map(gap).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{:?}", gaps);
}

#[test]
fn example_one_heights() {
    let d = example1();
    let h: Vec<u64> = d.heights(3).unwrap().iter().map(|x| x.try_into().unwrap()).collect();
    assert_eq!(h, vec![11, 15]);
}
