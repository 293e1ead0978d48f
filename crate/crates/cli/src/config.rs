//! Run configuration: one TOML document covering every pipeline knob.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use rshar_core::datamodel::Bin;
use rshar_core::ingest::JoinLink;
use rshar_core::Fraction;
use serde::{Deserialize, Serialize};

use crate::synth::SynthSpec;
use crate::PipelineError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    #[default]
    Rshar,
    Apriori,
    Both,
}

impl Algorithm {
    pub fn runs_rshar(self) -> bool {
        matches!(self, Algorithm::Rshar | Algorithm::Both)
    }

    pub fn runs_apriori(self) -> bool {
        matches!(self, Algorithm::Apriori | Algorithm::Both)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimInput {
    pub name: String,
    pub path: PathBuf,
}

/// A mapping function read from a CSV whose columns include `source` and `target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingInput {
    pub path: PathBuf,
    pub source: Vec<String>,
    pub target: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fact: Option<PathBuf>,
    #[serde(default)]
    pub dims: Vec<DimInput>,
    #[serde(default)]
    pub joins: Vec<JoinLink>,
    /// `table.attribute` columns of the general table; empty projects every
    /// fact column and every non-key dimension column.
    #[serde(default)]
    pub project: Vec<String>,
    #[serde(default)]
    pub mappings: Vec<MappingInput>,
    #[serde(default)]
    pub bins: BTreeMap<String, Vec<Bin>>,
    #[serde(default)]
    pub key_dim: String,
    #[serde(default)]
    pub combine_dims: Vec<String>,
    #[serde(default)]
    pub filters: BTreeMap<String, Vec<String>>,
    pub minsup: Fraction,
    pub minconf: Fraction,
    #[serde(default)]
    pub algorithm: Algorithm,
    #[serde(default)]
    pub repeatable_dims: BTreeSet<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub synth: Option<SynthSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Worker threads for support counting; 0 or 1 counts serially.
    #[serde(default)]
    pub threads: usize,
    /// Build mapping codes with two scans instead of one (same output).
    #[serde(default)]
    pub two_pass_combine: bool,
    pub out: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            fact: None,
            dims: Vec::new(),
            joins: Vec::new(),
            project: Vec::new(),
            mappings: Vec::new(),
            bins: BTreeMap::new(),
            key_dim: String::new(),
            combine_dims: Vec::new(),
            filters: BTreeMap::new(),
            minsup: Fraction::new(9, 2000).expect("0.45%"),
            minconf: Fraction::new(1, 2).expect("0.5"),
            algorithm: Algorithm::Rshar,
            repeatable_dims: BTreeSet::new(),
            synth: None,
            seed: None,
            threads: 0,
            two_pass_combine: false,
            out: PathBuf::from("rshar-out"),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, PipelineError> {
        toml::from_str(text).map_err(|e| PipelineError::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> Result<String, PipelineError> {
        toml::to_string(self).map_err(|e| PipelineError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, PipelineError> {
        let text = fs::read_to_string(path).map_err(PipelineError::io(path))?;
        Self::from_toml(&text)
    }

    /// Checks everything that can be checked before touching any data.
    pub fn validate(&self) -> Result<(), PipelineError> {
        let usage = |m: String| Err(PipelineError::Usage(m));
        if let Err(e) = self.minsup.check_unit("minsup") {
            return usage(e.to_string());
        }
        if let Err(e) = self.minconf.check_unit("minconf") {
            return usage(e.to_string());
        }
        if self.synth.is_some() && self.seed.is_none() {
            return usage("--seed is required with --synth".into());
        }
        if self.synth.is_none() {
            if self.fact.is_none() {
                return usage("either --fact or --synth is required".into());
            }
            if self.key_dim.is_empty() {
                return usage("--key-dim is required".into());
            }
            if self.combine_dims.is_empty() {
                return usage("--combine-dims is required".into());
            }
        }
        if let Some(s) = &self.synth {
            s.validate()?;
        }
        for p in &self.project {
            if !p.contains('.') {
                return usage(format!("projected column {p:?} must be written table.attribute"));
            }
        }
        Ok(())
    }
}

/// Parses `fact_key:dim:dim_key`.
pub fn parse_join(s: &str) -> Result<JoinLink, PipelineError> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [f, d, k] if !f.is_empty() && !d.is_empty() && !k.is_empty() => Ok(JoinLink::new(f, d, k)),
        _ => Err(PipelineError::Usage(format!(
            "--join expects fact_key:dim:dim_key, got {s:?}"
        ))),
    }
}

/// Parses `name=path`.
pub fn parse_dim(s: &str) -> Result<DimInput, PipelineError> {
    match s.split_once('=') {
        Some((n, p)) if !n.is_empty() && !p.is_empty() => Ok(DimInput {
            name: n.to_string(),
            path: PathBuf::from(p),
        }),
        _ => Err(PipelineError::Usage(format!("--dim expects name=path, got {s:?}"))),
    }
}

/// Parses `dim=value`.
pub fn parse_filter(s: &str) -> Result<(String, String), PipelineError> {
    match s.split_once('=') {
        Some((d, v)) if !d.is_empty() => Ok((d.to_string(), v.to_string())),
        _ => Err(PipelineError::Usage(format!("--filter expects dim=value, got {s:?}"))),
    }
}

/// Parses `attr=label:lo:hi,label:lo:hi,...`.
pub fn parse_bins(s: &str) -> Result<(String, Vec<Bin>), PipelineError> {
    let bad = || PipelineError::Usage(format!("--bins expects attr=label:lo:hi,..., got {s:?}"));
    let (attr, spec) = s.split_once('=').ok_or_else(bad)?;
    let bins = spec
        .split(',')
        .map(|b| {
            let mut it = b.rsplitn(3, ':');
            let hi = it.next().and_then(|x| x.trim().parse::<f64>().ok());
            let lo = it.next().and_then(|x| x.trim().parse::<f64>().ok());
            let label = it.next().filter(|l| !l.is_empty());
            match (label, lo, hi) {
                (Some(l), Some(lo), Some(hi)) => Ok(Bin::new(l, lo, hi)),
                _ => Err(bad()),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    if attr.is_empty() || bins.is_empty() {
        return Err(bad());
    }
    Ok((attr.to_string(), bins))
}

/// Parses a comma-separated list, dropping empty entries.
pub fn parse_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(String::from)
        .collect()
}
