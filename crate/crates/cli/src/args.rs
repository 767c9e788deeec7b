use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "bratteli", version, about = "Return-time laws of Bratteli-Vershik systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the standing hypotheses level by level
    Validate(Common),
    /// Telescope the diagram between cut levels
    Contract {
        #[command(flatten)]
        common: Common,
        /// Keep every s-th level after the first
        #[arg(long, conflicts_with = "cuts")]
        every: Option<usize>,
        /// Explicit cut levels, starting with 0
        #[arg(long, value_delimiter = ',')]
        cuts: Option<Vec<usize>>,
    },
    /// Perron eigenvalue and eigenvectors of a stationary diagram
    Perron(Common),
    /// Tower heights and measures at level n
    Towers(Common),
    /// Exact law of the k-th scaled return gap at level n
    FiniteLaw(Common),
    /// Limit law of the k-th scaled return gap (stationary diagrams)
    LimitLaw(Common),
    /// Sup distance between finite and limit laws over a range of levels
    Compare(Common),
    /// Joint law of the first p scaled gaps at thresholds --t
    Fdd(Common),
    /// Emit a generated diagram in the file format
    Gen {
        /// example1, left-to-right, odometer, beta-odometer or sturmian
        name: String,
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Diagram file (JSON)
    #[arg(long, conflicts_with = "gen")]
    pub diagram: Option<PathBuf>,
    /// Generator name instead of a file
    #[arg(long)]
    pub gen: Option<String>,
    /// Generator parameter, repeatable
    #[arg(long = "param", value_name = "K=V", requires = "gen")]
    pub params: Vec<String>,
    /// Target vertex i*, 1-based
    #[arg(long, default_value_t = 1)]
    pub vertex: usize,
    /// Level, or a range a..b
    #[arg(long, value_parser = parse_levels)]
    pub n: Option<Levels>,
    /// Gap index
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Comma-separated evaluation points or thresholds
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub t: Option<Vec<f64>>,
    /// Tolerance for the Perron iteration
    #[arg(long, default_value_t = bratteli::spectral::DEFAULT_TOL)]
    pub tol: f64,
    /// Report file; a metadata sidecar is written next to it
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Levels {
    One(usize),
    Range(usize, usize),
}

impl Levels {
    pub fn range(&self) -> RangeInclusive<usize> {
        match *self {
            Levels::One(n) => n..=n,
            Levels::Range(a, b) => a..=b,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Levels::One(n) => n.to_string(),
            Levels::Range(a, b) => format!("{}..{}", a, b),
        }
    }
}

fn parse_levels(s: &str) -> Result<Levels, String> {
    let num = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("bad level {:?}: {}", x, e));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a == 0 || a > b {
                return Err(format!("empty or invalid level range {}", s));
            }
            Ok(Levels::Range(a, b))
        }
        None => {
            let n = num(s)?;
            if n == 0 {
                return Err("levels start at 1".into());
            }
            Ok(Levels::One(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_syntax() {
        assert_eq!(parse_levels("4..12"), Ok(Levels::Range(4, 12)));
        assert_eq!(parse_levels("4..=12"), Ok(Levels::Range(4, 12)));
        assert_eq!(parse_levels("7"), Ok(Levels::One(7)));
        assert!(parse_levels("5..3").is_err());
        assert!(parse_levels("0").is_err());
    }
}
