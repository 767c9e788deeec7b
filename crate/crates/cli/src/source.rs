//! Loading a diagram from a file or a generator, together with the measure
//! used to scale return times.

use std::collections::BTreeMap;
use std::fs;

use bratteli::generators::{self, Bases, Block, SturmianSpec};
use bratteli::spectral::{CylinderMeasure, EstimatedMeasure, StationaryMeasure};
use bratteli::{Matrix, OrderedBratteliDiagram};
use serde_json::{json, Value};

use crate::args::Common;
use crate::error::CliError;

/// Levels of look-ahead for the measure estimate of non-stationary diagrams.
pub const SEED_DEPTH: usize = 30;

pub struct Loaded {
    pub diagram: OrderedBratteliDiagram,
    exact: Option<Box<dyn CylinderMeasure>>,
    pub origin: Value,
}

impl Loaded {
    /// The exact measure when known, else the Perron measure of a stationary
    /// diagram, else the projective estimate.
    pub fn measure(&self) -> Result<Box<dyn CylinderMeasure + '_>, CliError> {
        if let Some(m) = &self.exact {
            return Ok(Box::new(Ref(m.as_ref())));
        }
        if self.diagram.is_stationary() {
            return Ok(Box::new(StationaryMeasure::new(&self.diagram)?));
        }
        Ok(Box::new(EstimatedMeasure { diagram: &self.diagram, seed_depth: SEED_DEPTH }))
    }

    pub fn measure_kind(&self) -> &'static str {
        if self.exact.is_some() {
            "closed form"
        } else if self.diagram.is_stationary() {
            "perron"
        } else {
            "estimated"
        }
    }
}

struct Ref<'a>(&'a dyn CylinderMeasure);

impl CylinderMeasure for Ref<'_> {
    fn ln_cylinder(&self, level: usize, vertex: usize) -> bratteli::Result<f64> {
        self.0.ln_cylinder(level, vertex)
    }

    fn relative_error(&self, level: usize) -> f64 {
        self.0.relative_error(level)
    }
}

pub fn load(c: &Common) -> Result<Loaded, CliError> {
    match (&c.diagram, &c.gen) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {}", path.display(), e)))?;
            let diagram = OrderedBratteliDiagram::from_json_str(&text)?;
            Ok(Loaded { diagram, exact: None, origin: json!({ "file": path.display().to_string() }) })
        }
        (None, Some(name)) => generate(name, &c.params),
        _ => Err(CliError::Input("give exactly one of --diagram or --gen".into())),
    }
}

pub fn parse_params(params: &[String]) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for p in params {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("parameter {:?} is not of the form key=value", p)))?;
        if out.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(CliError::Input(format!("parameter {} given twice", k)));
        }
    }
    Ok(out)
}

fn list<T: std::str::FromStr>(key: &str, s: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| CliError::Input(format!("{}: cannot parse {:?}", key, x))))
        .collect()
}

fn scalar<T: std::str::FromStr>(key: &str, s: &str) -> Result<T, CliError> {
    s.trim().parse::<T>().map_err(|_| CliError::Input(format!("{}: cannot parse {:?}", key, s)))
}

/// `bases=2,3` repeats forever unless `finite=true`.
fn bases(p: &BTreeMap<String, String>, default: &str) -> Result<Bases, CliError> {
    let v = list::<u64>("bases", p.get("bases").map_or(default, String::as_str))?;
    let finite = match p.get("finite") {
        Some(s) => scalar::<bool>("finite", s)?,
        None => false,
    };
    Ok(if finite { Bases::Finite(v) } else { Bases::Periodic(v) })
}

pub fn generate(name: &str, params: &[String]) -> Result<Loaded, CliError> {
    let p = parse_params(params)?;
    let allowed: &[&str] = match name {
        "example1" => &[],
        "left-to-right" => &["matrix"],
        "odometer" => &["bases", "finite"],
        "beta-odometer" => &["bases", "finite", "beta"],
        "sturmian" => &["digits", "blocks", "period"],
        _ => {
            return Err(CliError::Input(format!(
                "unknown generator {:?}; known: example1, left-to-right, odometer, beta-odometer, sturmian",
                name
            )))
        }
    };
    if let Some(k) = p.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(CliError::Input(format!("generator {} takes no parameter {}", name, k)));
    }
    let origin = json!({ "generator": name, "params": p });
    let (diagram, exact): (_, Option<Box<dyn CylinderMeasure>>) = match name {
        "example1" => (generators::example1(), None),
        "left-to-right" => {
            // rows separated by ';'
            let text = p.get("matrix").map_or("1,1;2,3", String::as_str);
            let rows = text.split(';').map(|r| list::<u64>("matrix", r)).collect::<Result<Vec<_>, _>>()?;
            (generators::left_to_right(&Matrix::from_rows(&rows)?)?, None)
        }
        "odometer" => (generators::odometer_classic(&bases(&p, "2")?)?, None),
        "beta-odometer" => {
            let beta = scalar::<f64>("beta", p.get("beta").map_or("0.25", String::as_str))?;
            let (d, mu) = generators::odometer_beta(&bases(&p, "10")?, beta)?;
            (d, Some(Box::new(mu)))
        }
        "sturmian" => {
            let spec = match (p.get("digits"), p.get("blocks"), p.get("period")) {
                (None, None, None) => SturmianSpec::golden(),
                (Some(d), Some(b), per) => {
                    let digits = list::<u64>("digits", d)?;
                    let blocks = b
                        .chars()
                        .map(|c| Block::parse(c).ok_or_else(|| CliError::Input(format!("blocks: {:?} is not a or b", c))))
                        .collect::<Result<Vec<_>, _>>()?;
                    let period = match per {
                        Some(s) => scalar::<usize>("period", s)?,
                        None => digits.len(),
                    };
                    SturmianSpec::new(digits, blocks, period)?
                }
                _ => return Err(CliError::Input("sturmian needs both digits= and blocks=".into())),
            };
            let (d, mu) = generators::sturmian(&spec)?;
            (d, Some(Box::new(mu)))
        }
        _ => unreachable!(),
    };
    Ok(Loaded { diagram, exact, origin })
}
