//! Plain numeric CSV output with 12 significant digits.

use std::io::{self, Write};

use super::cdf::Cdf;

/// Decimal with 12 significant digits, switching to exponent form for very
/// large or small magnitudes.
pub fn fmt_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..12).contains(&e) {
        let decimals = (11 - e).max(0) as usize;
        let s = format!("{:.*}", decimals, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{:.11e}", x)
    }
}

/// `t,value` rows at every breakpoint and at every point of `grid`, sorted.
pub fn write_cdf_csv(out: &mut dyn Write, cdf: &dyn Cdf, grid: &[f64]) -> io::Result<()> {
    let mut ts: Vec<f64> = cdf.breakpoints().into_iter().chain(grid.iter().copied()).filter(|t| t.is_finite()).collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    writeln!(out, "t,value")?;
    for t in ts {
        writeln!(out, "{},{}", fmt_sig12(t), fmt_sig12(cdf.eval(t)))?;
    }
    Ok(())
}

/// `n,sup_distance` rows.
pub fn write_convergence_csv(out: &mut dyn Write, rows: &[(usize, f64)]) -> io::Result<()> {
    writeln!(out, "n,sup_distance")?;
    for (n, d) in rows {
        writeln!(out, "{},{}", n, fmt_sig12(*d))?;
    }
    Ok(())
}
