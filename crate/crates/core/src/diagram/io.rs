//! JSON diagram files. Vertex labels are 1-based on disk.

use std::fmt::Write as _;

use serde_json::Value;

use super::{LevelSpec, OrderedBratteliDiagram};
use crate::error::{Error, Result};

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

impl OrderedBratteliDiagram {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s)?;
        Self::from_json_value(&v)
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| format_err("top level must be an object"))?;
        let levels_v = obj
            .get("levels")
            .and_then(Value::as_array)
            .ok_or_else(|| format_err("missing `levels` array"))?;
        let mut levels = Vec::with_capacity(levels_v.len());
        for (k, lv) in levels_v.iter().enumerate() {
            let into = lv
                .get("into")
                .and_then(Value::as_object)
                .ok_or_else(|| format_err(format!("level {}: missing `into` object", k + 1)))?;
            let mut lists: Vec<Option<Vec<usize>>> = vec![None; into.len()];
            for (key, sources) in into {
                let j: usize = key
                    .parse()
                    .ok()
                    .filter(|&j| j >= 1 && j <= into.len())
                    .ok_or_else(|| format_err(format!("level {}: bad vertex label {:?}", k + 1, key)))?;
                let arr = sources
                    .as_array()
                    .ok_or_else(|| format_err(format!("level {}, vertex {}: sources must be an array", k + 1, j)))?;
                let list = arr
                    .iter()
                    .map(|s| {
                        s.as_u64()
                            .filter(|&s| s >= 1)
                            .map(|s| s as usize - 1)
                            .ok_or_else(|| format_err(format!("level {}, vertex {}: bad source {}", k + 1, j, s)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if lists[j - 1].replace(list).is_some() {
                    return Err(format_err(format!("level {}: vertex {} listed twice", k + 1, j)));
                }
            }
            let into = lists.into_iter().map(|l| l.unwrap()).collect();
            levels.push(LevelSpec { into });
        }
        let period = match obj.get("stationary_period") {
            None | Some(Value::Null) => None,
            Some(p) => Some(
                p.as_u64()
                    .ok_or_else(|| format_err("`stationary_period` must be a positive integer"))?
                    as usize,
            ),
        };
        let d = OrderedBratteliDiagram::new(levels, period)?;
        if let Some(vc) = obj.get("vertex_counts") {
            let vc: Vec<u64> = vc
                .as_array()
                .and_then(|a| a.iter().map(Value::as_u64).collect())
                .ok_or_else(|| format_err("`vertex_counts` must be an array of integers"))?;
            let expected = d.stored_vertex_counts();
            if vc.len() != expected.len() || vc.iter().zip(&expected).any(|(&a, &b)| a as usize != b) {
                return Err(format_err(format!(
                    "`vertex_counts` {:?} does not match the levels {:?}",
                    vc, expected
                )));
            }
        }
        Ok(d)
    }

    /// m_0 = 1, m_1, ..., one entry per stored level.
    pub fn stored_vertex_counts(&self) -> Vec<usize> {
        std::iter::once(1).chain(self.levels.iter().map(LevelSpec::targets)).collect()
    }

    pub fn to_json_string(&self) -> String {
        let join = |v: &mut dyn Iterator<Item = String>| v.collect::<Vec<_>>().join(", ");
        let mut out = String::from("{\n");
        let vc = join(&mut self.stored_vertex_counts().into_iter().map(|m| m.to_string()));
        let _ = writeln!(out, "  \"vertex_counts\": [{}],", vc);
        out.push_str("  \"levels\": [\n");
        for (k, lv) in self.levels.iter().enumerate() {
            let entries = join(&mut lv.into.iter().enumerate().map(|(j, l)| {
                let srcs = join(&mut l.iter().map(|s| (s + 1).to_string()));
                format!("\"{}\": [{}]", j + 1, srcs)
            }));
            let comma = if k + 1 < self.levels.len() { "," } else { "" };
            let _ = writeln!(out, "    {{\"into\": {{{}}}}}{}", entries, comma);
        }
        match self.period {
            Some(p) => {
                out.push_str("  ],\n");
                let _ = writeln!(out, "  \"stationary_period\": {}", p);
            }
            None => out.push_str("  ]\n"),
        }
        out.push_str("}\n");
        out
    }
}
