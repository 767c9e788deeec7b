use std::fmt::Write as _;

use bratteli::diagram::Cuts;
use bratteli::dynamics::SpectrumSource;
use bratteli::limitlaw::csv::{fmt_sig12, write_cdf_csv, write_convergence_csv};
use bratteli::limitlaw::{
    breakpoint_table, convergence_report, finite_f1, finite_fdd, finite_fk, limit_f1, limit_fdd, limit_fk, Cdf, FddSpec,
    GROUP_TOL,
};
use bratteli::spectral::{perron, subdominant_rate, StationaryMeasure};
use bratteli::{OrderedBratteliDiagram, PathPrefix};
use serde_json::{json, Value};

use crate::args::{Common, Levels};
use crate::error::CliError;
use crate::output::Report;
use crate::source::{self, Loaded};

const DEFAULT_VALIDATE_DEPTH: usize = 8;
const DEFAULT_FDD_LEVEL: usize = 8;
const GRID_POINTS: usize = 101;

fn meta(command: &str, c: &Common, loaded: &Loaded, results: Value) -> Value {
    json!({
        "tool": "bratteli",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": {
            "diagram": loaded.origin,
            "vertex": c.vertex,
            "n": c.n.as_ref().map(Levels::describe),
            "k": c.k,
            "t": c.t,
            "out": c.out.as_ref().map(|p| p.display().to_string()),
        },
        "tolerances": { "perron": c.tol, "breakpoint_grouping": GROUP_TOL, "csv_significant_digits": 12 },
        "measure": loaded.measure_kind(),
        "results": results,
    })
}

fn vertex(c: &Common, d: &OrderedBratteliDiagram, n: usize) -> Result<usize, CliError> {
    let count = d.vertex_count(n)?;
    if c.vertex == 0 || c.vertex > count {
        return Err(CliError::Input(format!("--vertex {} is not in 1..={} at level {}", c.vertex, count, n)));
    }
    Ok(c.vertex - 1)
}

fn single_level(c: &Common, default: Option<usize>) -> Result<usize, CliError> {
    match (&c.n, default) {
        (Some(Levels::One(n)), _) => Ok(*n),
        (Some(Levels::Range(..)), _) => Err(CliError::Input("this command takes a single level --n".into())),
        (None, Some(n)) => Ok(n),
        (None, None) => Err(CliError::Input("--n is required".into())),
    }
}

/// The cylinder of the minimal path into i* at level n.
fn cylinder(d: &OrderedBratteliDiagram, n: usize, i: usize) -> Result<PathPrefix, CliError> {
    Ok(d.min_path(n, i)?)
}

fn default_grid(cdf: &dyn Cdf) -> Vec<f64> {
    let top = cdf.breakpoints().into_iter().filter(|t| t.is_finite()).fold(0.0, f64::max);
    let top = if top > 0.0 { 1.25 * top } else { 1.0 };
    (0..GRID_POINTS).map(|i| top * i as f64 / (GRID_POINTS - 1) as f64).collect()
}

fn cdf_csv(cdf: &dyn Cdf, grid: Option<&Vec<f64>>) -> String {
    let grid = grid.cloned().unwrap_or_else(|| default_grid(cdf));
    let mut buf = Vec::new();
    write_cdf_csv(&mut buf, cdf, &grid).expect("writing to memory");
    String::from_utf8(buf).expect("ascii")
}

pub fn validate(c: &Common) -> Result<Report, CliError> {
    let loaded = source::load(c)?;
    let depth = single_level(c, Some(DEFAULT_VALIDATE_DEPTH))?;
    let r = loaded.diagram.validate(depth)?;
    let mut body = String::from("check,value\n");
    for (name, v) in [
        ("h1", r.h1),
        ("h2", r.h2),
        ("h3", r.h3),
        ("properly_ordered", r.properly_ordered),
        ("stationary", r.stationary),
    ] {
        writeln!(body, "{},{}", name, v).unwrap();
    }
    let results = json!({
        "depth": r.depth, "h1": r.h1, "h2": r.h2, "h3": r.h3,
        "properly_ordered": r.properly_ordered, "stationary": r.stationary, "diagnostics": r.diagnostics,
    });
    Ok(Report { body, summary: r.to_string(), meta: meta("validate", c, &loaded, results) })
}

pub fn contract(c: &Common, every: Option<usize>, cuts: Option<Vec<usize>>) -> Result<Report, CliError> {
    let loaded = source::load(c)?;
    let cuts = match (every, cuts) {
        (Some(s), None) => Cuts::every(s),
        (None, Some(points)) => Cuts::explicit(points),
        _ => return Err(CliError::Input("give one of --every or --cuts".into())),
    };
    let out = loaded.diagram.contract(&cuts)?;
    let body = out.to_json_string();
    let summary = if c.out.is_some() {
        format!("contracted to {} stored levels\n", out.stored_levels().len())
    } else {
        String::new()
    };
    let results = json!({ "cuts": cuts.points, "then_every": cuts.then_every, "stored_levels": out.stored_levels().len() });
    Ok(Report { body, summary, meta: meta("contract", c, &loaded, results) })
}

pub fn perron_cmd(c: &Common) -> Result<Report, CliError> {
    let loaded = source::load(c)?;
    let m = loaded.diagram.stationary_matrix()?;
    let pd = perron(&m, c.tol)?;
    let gamma = subdominant_rate(&m)?;
    let mut body = String::from("vertex,r,l\n");
    for (i, (r, l)) in pd.r.iter().zip(&pd.l).enumerate() {
        writeln!(body, "{},{},{}", i + 1, fmt_sig12(*r), fmt_sig12(*l)).unwrap();
    }
    let mut summary = String::new();
    writeln!(summary, "lambda   {}", fmt_sig12(pd.lambda)).unwrap();
    writeln!(summary, "gamma    {}{}", fmt_sig12(gamma.gamma), if gamma.converged { "" } else { " (not converged)" }).unwrap();
    writeln!(summary, "residual {}", fmt_sig12(pd.residual)).unwrap();
    let results = json!({ "lambda": pd.lambda, "gamma": gamma.gamma, "gamma_converged": gamma.converged, "residual": pd.residual });
    Ok(Report { body, summary, meta: meta("perron", c, &loaded, results) })
}

pub fn towers(c: &Common) -> Result<Report, CliError> {
    let loaded = source::load(c)?;
    let levels = c.n.clone().ok_or_else(|| CliError::Input("--n is required".into()))?;
    let mu = loaded.measure()?;
    let mut body = String::from("n,vertex,height,measure\n");
    let mut worst: f64 = 0.0;
    for n in levels.range() {
        let h = loaded.diagram.heights(n)?;
        for (v, h) in h.iter().enumerate() {
            writeln!(body, "{},{},{},{}", n, v + 1, h, fmt_sig12(mu.cylinder(n, v)?)).unwrap();
        }
        worst = worst.max(mu.relative_error(n));
    }
    let summary = format!("measure: {} (relative error <= {})\n", loaded.measure_kind(), fmt_sig12(worst));
    let results = json!({ "measure_relative_error": worst });
    Ok(Report { body, summary, meta: meta("towers", c, &loaded, results) })
}

pub fn finite_law(c: &Common) -> Result<Report, CliError> {
    let loaded = source::load(c)?;
    let d = &loaded.diagram;
    let n = single_level(c, None)?;
    let i = vertex(c, d, n)?;
    let prefix = cylinder(d, n, i)?;
    let mu = loaded.measure()?;
    let spacing = mu.cylinder(n, i)?;
    let (body, summary, results) = if c.k == 1 {
        let f = finite_f1(d, &prefix, mu.as_ref())?;
        let mut rts: Vec<u64> = f.atoms.iter().map(|a| a.0).collect();
        rts.sort_unstable();
        rts.dedup();
        let s = format!(
            "level {} vertex {}: mu(I_n) = {}, first return times {:?}, total mass {}\n",
            n,
            c.vertex,
            fmt_sig12(spacing),
            rts,
            fmt_sig12(f.total_mass())
        );
        (cdf_csv(&f, c.t.as_ref()), s, json!({ "spacing": spacing, "return_times": rts, "total_mass": f.total_mass() }))
    } else {
        let f = finite_fk(d, &prefix, c.k, mu.as_ref())?;
        let s = format!("level {} vertex {}: {} atoms for gap {}\n", n, c.vertex, f.support.len(), c.k);
        (cdf_csv(&f, c.t.as_ref()), s, json!({ "spacing": spacing, "support": f.support, "masses": f.masses() }))
    };
    let source = bratteli::dynamics::return_spectrum(d, &prefix, mu.as_ref())?.source;
    let mut results = results;
    results["source"] = json!(match source {
        SpectrumSource::Walk => "walk",
        SpectrumSource::Oracle => "oracle",
    });
    Ok(Report { body, summary, meta: meta("finite-law", c, &loaded, results) })
}

fn stationary(loaded: &Loaded, c: &Common) -> Result<StationaryMeasure, CliError> {
    let m = loaded.diagram.stationary_matrix()?;
    Ok(StationaryMeasure::from_perron(perron(&m, c.tol)?))
}

pub fn limit_law(c: &Common) -> Result<Report, CliError> {
    let loaded = source::load(c)?;
    let d = &loaded.diagram;
    let i = vertex(c, d, 1)?;
    let mu = stationary(&loaded, c)?;
    let table = breakpoint_table(d, i, &mu.perron)?;
    let mut summary = String::new();
    writeln!(summary, "vertex {}: r(i*) = {}", c.vertex, fmt_sig12(table.r_star)).unwrap();
    for g in &table.groups {
        writeln!(
            summary,
            "  breakpoint {}  cbar {}  weight {}  ({} suffixes)",
            fmt_sig12(g.breakpoint),
            fmt_sig12(g.cbar),
            fmt_sig12(g.weight),
            g.members.len()
        )
        .unwrap();
    }
    writeln!(summary, "total mass {}", fmt_sig12(table.total_mass())).unwrap();
    let breakpoints = table.breakpoints();
    let body = if c.k == 1 {
        let f = limit_f1(&table);
        match &c.t {
            Some(t) => cdf_csv(&f, Some(t)),
            None => {
                let mut b = String::from("start,value,slope\n");
                for &(s, v, sl) in f.segments() {
                    writeln!(b, "{},{},{}", fmt_sig12(s), fmt_sig12(v), fmt_sig12(sl)).unwrap();
                }
                b
            }
        }
    } else {
        let f = limit_fk(d, i, c.k, &table, &mu.perron)?;
        match &c.t {
            Some(t) => cdf_csv(&f, Some(t)),
            None => {
                let mut b = String::from("t,mass\n");
                for (t, m) in f.support.iter().zip(f.masses()) {
                    writeln!(b, "{},{}", fmt_sig12(*t), fmt_sig12(m)).unwrap();
                }
                b
            }
        }
    };
    let results = json!({
        "lambda": mu.perron.lambda,
        "r_star": table.r_star,
        "breakpoints": breakpoints,
        "cbars": table.cbars(),
        "total_mass": table.total_mass(),
    });
    Ok(Report { body, summary, meta: meta("limit-law", c, &loaded, results) })
}

pub fn compare(c: &Common) -> Result<Report, CliError> {
    let loaded = source::load(c)?;
    let d = &loaded.diagram;
    let levels = c.n.clone().unwrap_or(Levels::Range(4, 12));
    let i = vertex(c, d, *levels.range().start())?;
    let seq = |n: usize| d.min_path(n, i);
    let rep = convergence_report(d, &seq, c.k, levels.range())?;
    let mut buf = Vec::new();
    write_convergence_csv(&mut buf, &rep.rows)?;
    let body = String::from_utf8(buf).expect("ascii");
    let mut summary = String::new();
    if let Some(s) = rep.slope {
        writeln!(summary, "fitted log-slope {}", fmt_sig12(s)).unwrap();
    }
    writeln!(summary, "strictly decreasing: {}", rep.strictly_decreasing).unwrap();
    match rep.sequence_independent {
        Some(ok) => writeln!(summary, "brute force agrees with the excursion walk: {}", ok).unwrap(),
        None => writeln!(summary, "brute-force cross-check skipped (orbits too long)").unwrap(),
    }
    let results = json!({
        "rows": rep.rows,
        "slope": rep.slope,
        "strictly_decreasing": rep.strictly_decreasing,
        "sequence_independent": rep.sequence_independent,
    });
    Ok(Report { body, summary, meta: meta("compare", c, &loaded, results) })
}

pub fn fdd(c: &Common) -> Result<Report, CliError> {
    let loaded = source::load(c)?;
    let d = &loaded.diagram;
    let t = c.t.clone().ok_or_else(|| CliError::Input("--t thresholds are required".into()))?;
    let spec = FddSpec::new(t)?;
    let levels = c.n.clone().unwrap_or(Levels::One(DEFAULT_FDD_LEVEL));
    let i = vertex(c, d, *levels.range().start())?;
    let mu = loaded.measure()?;
    let limit = if d.is_stationary() {
        let st = stationary(&loaded, c)?;
        let table = breakpoint_table(d, i, &st.perron)?;
        Some(limit_fdd(d, i, &spec, &table, &st.perron)?)
    } else {
        None
    };
    let mut body = String::from("n,finite,limit\n");
    let mut rows = Vec::new();
    for n in levels.range() {
        let v = finite_fdd(d, &cylinder(d, n, i)?, &spec, mu.as_ref())?;
        writeln!(body, "{},{},{}", n, fmt_sig12(v), limit.map(fmt_sig12).unwrap_or_default()).unwrap();
        rows.push((n, v));
    }
    let summary = match limit {
        Some(l) => format!("p = {}, limit {}\n", spec.p(), fmt_sig12(l)),
        None => format!("p = {}, no limit law (diagram is not stationary)\n", spec.p()),
    };
    let results = json!({ "p": spec.p(), "rows": rows, "limit": limit });
    Ok(Report { body, summary, meta: meta("fdd", c, &loaded, results) })
}

pub fn gen(name: &str, params: &[String], out: Option<&std::path::Path>) -> Result<Report, CliError> {
    let loaded = source::generate(name, params)?;
    let body = loaded.diagram.to_json_string();
    let summary = if out.is_some() {
        format!("generated {} ({} stored levels)\n", name, loaded.diagram.stored_levels().len())
    } else {
        String::new()
    };
    let meta = json!({
        "tool": "bratteli",
        "version": env!("CARGO_PKG_VERSION"),
        "command": "gen",
        "config": { "diagram": loaded.origin, "out": out.map(|p| p.display().to_string()) },
        "measure": loaded.measure_kind(),
    });
    Ok(Report { body, summary, meta })
}
