//! Run configuration and output rendering for the command-line tool.
//!
//! Settings resolve as flags, then the config file, then defaults. The
//! config file is flat `key = value` text; `#` starts a comment line.

use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use crate::borel::SumConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("format must be json or csv, got {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub order: usize,
    pub k_sigma: u32,
    pub k_e: u32,
    pub tol: f64,
    pub inner_tol: f64,
    pub delta_ray: f64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let s = SumConfig::default();
        RunConfig {
            order: 32,
            k_sigma: 6,
            k_e: 6,
            tol: s.tol,
            inner_tol: s.inner_tol,
            delta_ray: s.delta_ray,
            format: Format::Json,
            output: None,
            seed: 0,
        }
    }
}

/// Partial settings from one source.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub order: Option<usize>,
    pub k_sigma: Option<u32>,
    pub k_e: Option<u32>,
    pub tol: Option<f64>,
    pub inner_tol: Option<f64>,
    pub delta_ray: Option<f64>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub seed: Option<u64>,
}

fn parse_value<T: FromStr>(key: &str, v: &str) -> Result<T, String> {
    v.parse().map_err(|_| format!("bad value {v:?} for {key}"))
}

/// Parses the flat `key = value` config format.
pub fn parse_config(text: &str) -> Result<Overrides, String> {
    let mut o = Overrides::default();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key = value", no + 1))?;
        let (k, v) = (k.trim(), v.trim());
        match k {
            "order" => o.order = Some(parse_value(k, v)?),
            "k_sigma" => o.k_sigma = Some(parse_value(k, v)?),
            "k_e" => o.k_e = Some(parse_value(k, v)?),
            "tol" => o.tol = Some(parse_value(k, v)?),
            "inner_tol" => o.inner_tol = Some(parse_value(k, v)?),
            "delta_ray" => o.delta_ray = Some(parse_value(k, v)?),
            "format" => o.format = Some(v.parse()?),
            "output" => o.output = Some(PathBuf::from(v)),
            "seed" => o.seed = Some(parse_value(k, v)?),
            _ => return Err(format!("line {}: unknown key {k:?}", no + 1)),
        }
    }
    Ok(o)
}

impl RunConfig {
    /// `flags` wins over `file`, which wins over the defaults.
    pub fn resolve(file: &Overrides, flags: &Overrides) -> Result<RunConfig, String> {
        let d = RunConfig::default();
        let c = RunConfig {
            order: flags.order.or(file.order).unwrap_or(d.order),
            k_sigma: flags.k_sigma.or(file.k_sigma).unwrap_or(d.k_sigma),
            k_e: flags.k_e.or(file.k_e).unwrap_or(d.k_e),
            tol: flags.tol.or(file.tol).unwrap_or(d.tol),
            inner_tol: flags.inner_tol.or(file.inner_tol).unwrap_or(d.inner_tol),
            delta_ray: flags.delta_ray.or(file.delta_ray).unwrap_or(d.delta_ray),
            format: flags.format.or(file.format).unwrap_or(d.format),
            output: flags.output.clone().or_else(|| file.output.clone()),
            seed: flags.seed.or(file.seed).unwrap_or(d.seed),
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.order == 0 || self.k_sigma == 0 || self.k_e == 0 {
            return Err("order, k_sigma and k_e must be positive".into());
        }
        for (name, v) in [
            ("tol", self.tol),
            ("inner_tol", self.inner_tol),
            ("delta_ray", self.delta_ray),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(format!("{name} must be positive, got {v}"));
            }
        }
        Ok(())
    }

    pub fn sum_config(&self) -> SumConfig {
        SumConfig {
            tol: self.tol,
            inner_tol: self.inner_tol,
            delta_ray: self.delta_ray,
        }
    }
}

fn leaves(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| leaves(&join(k), x, out)),
        Value::Array(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, x)| leaves(&join(&i.to_string()), x, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// One `path,value` row per leaf, with dotted paths.
pub fn to_csv(v: &Value) -> String {
    let mut rows = Vec::new();
    leaves("", v, &mut rows);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["path", "value"]).expect("in-memory write");
    for (p, x) in rows {
        w.write_record([p, x]).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(v).expect("JSON values serialize")
        ),
        Format::Csv => to_csv(v),
    }
}
