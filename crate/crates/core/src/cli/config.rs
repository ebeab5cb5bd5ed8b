use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::metrics::CategoryFilter;
use crate::netbuild::EdgeWeightMode;
use crate::resolve::DEFAULT_THRESHOLD;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum YearsSpec {
    List(Vec<i32>),
    Range(String),
}

/// On-disk TOML config. Relative paths resolve against the config file's directory.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    records: String,
    registry: String,
    aliases: Option<String>,
    gazetteer: Option<String>,
    out: Option<String>,
    threshold: Option<f64>,
    edge_weight_mode: Option<String>,
    snapshot_years: Option<YearsSpec>,
    damping: Option<f64>,
    top_k: Option<usize>,
    domestic_country: Option<String>,
}

/// Flag values that override the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub threshold: Option<f64>,
    pub years: Option<(i32, i32)>,
    pub category: Option<CategoryFilter>,
    pub top: Option<usize>,
    pub out: Option<PathBuf>,
}

/// An input file: the path as written plus where it resolves to.
#[derive(Debug, Clone, Serialize)]
pub struct InputPath {
    pub given: String,
    #[serde(skip)]
    pub resolved: PathBuf,
}

#[derive(Debug, Clone, Serialize)]
pub struct PipelineConfig {
    pub records: InputPath,
    pub registry: InputPath,
    pub aliases: Option<InputPath>,
    pub gazetteer: Option<InputPath>,
    pub out: String,
    #[serde(skip)]
    pub out_dir: PathBuf,
    pub threshold: f64,
    pub edge_weight_mode: EdgeWeightMode,
    pub snapshot_years: Vec<i32>,
    pub damping: f64,
    pub top_k: usize,
    pub domestic_country: String,
    /// Period slice from `--years`; for `build` it sets the snapshot years instead.
    pub years: Option<(i32, i32)>,
    pub category: Option<String>,
    #[serde(skip)]
    pub category_filter: Option<CategoryFilter>,
}

pub fn parse_years(s: &str) -> Result<(i32, i32), String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<i32>()
            .map_err(|_| format!("invalid year `{t}`"))
    };
    let (from, to) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let y = parse(s)?;
            (y, y)
        }
    };
    if from > to {
        return Err(format!("empty year range `{s}`"));
    }
    Ok((from, to))
}

fn resolve_input(base: &Path, given: &str, role: &str) -> Result<InputPath, CliError> {
    let resolved = base.join(given);
    if !resolved.is_file() {
        return Err(CliError::config(format!(
            "{role} file `{}` not found",
            resolved.display()
        )));
    }
    Ok(InputPath {
        given: given.to_string(),
        resolved,
    })
}

impl PipelineConfig {
    pub fn load(path: &Path, overrides: Overrides, building: bool) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::config(format!("cannot read config `{}`: {e}", path.display()))
        })?;
        let file: ConfigFile = toml::from_str(&text)
            .map_err(|e| CliError::config(format!("config: {}", e.message())))?;
        let base = path.parent().unwrap_or(Path::new("."));

        let threshold = overrides
            .threshold
            .or(file.threshold)
            .unwrap_or(DEFAULT_THRESHOLD);
        if !(0.0..=1.0).contains(&threshold) {
            return Err(CliError::config(format!(
                "threshold {threshold} outside [0, 1]"
            )));
        }
        let damping = file.damping.unwrap_or(0.85);
        if !(damping > 0.0 && damping < 1.0) {
            return Err(CliError::config(format!(
                "damping {damping} outside (0, 1)"
            )));
        }
        let edge_weight_mode = match &file.edge_weight_mode {
            Some(m) => m
                .parse()
                .map_err(|e: crate::netbuild::NetError| CliError::config(e.to_string()))?,
            None => EdgeWeightMode::default(),
        };
        let mut snapshot_years = match file.snapshot_years {
            None => Vec::new(),
            Some(YearsSpec::List(years)) => years,
            Some(YearsSpec::Range(r)) => {
                let (a, b) = parse_years(&r).map_err(CliError::config)?;
                (a..=b).collect()
            }
        };
        if building {
            if let Some((a, b)) = overrides.years {
                snapshot_years = (a..=b).collect();
            }
        }
        if snapshot_years.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CliError::config(
                "snapshot_years must be strictly increasing",
            ));
        }
        let top_k = overrides.top.or(file.top_k).unwrap_or(10);
        if top_k == 0 {
            return Err(CliError::config("top must be at least 1"));
        }

        let (out, out_dir) = match overrides.out {
            Some(dir) => (dir.display().to_string(), dir),
            None => {
                let given = file.out.unwrap_or_else(|| "out".to_string());
                let dir = base.join(&given);
                (given, dir)
            }
        };

        Ok(Self {
            records: resolve_input(base, &file.records, "records")?,
            registry: resolve_input(base, &file.registry, "registry")?,
            aliases: file
                .aliases
                .as_deref()
                .map(|p| resolve_input(base, p, "aliases"))
                .transpose()?,
            gazetteer: file
                .gazetteer
                .as_deref()
                .map(|p| resolve_input(base, p, "gazetteer"))
                .transpose()?,
            out,
            out_dir,
            threshold,
            edge_weight_mode,
            snapshot_years,
            damping,
            top_k,
            domestic_country: file
                .domestic_country
                .unwrap_or_else(|| crate::resolve::DEFAULT_DOMESTIC_COUNTRY.to_string()),
            years: if building { None } else { overrides.years },
            category: overrides.category.map(|c| c.to_string()),
            category_filter: overrides.category,
        })
    }
}
