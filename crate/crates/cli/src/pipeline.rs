//! load → join → map → discretize → combine → group → mine → decode → rules.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use rshar_core::datamodel::{AttributeSpec, RelationalTable};
use rshar_core::ingest::{self, JoinSpec, MappingFunction};
use rshar_core::mapcode::{combine_dims_with, transform_map_code, CombineOptions, LargeItemset, MapCodeRegistry};
use rshar_core::mining::{
    apriori_baseline_with, fi_gen_with, group_by_key, FrequentItemset, MiningOptions, MiningStats, TransactionView,
};
use rshar_core::rules::{gen_rules, AssociationRule, DimensionPolicy};
use serde::Serialize;

use crate::bench::BenchReport;
use crate::config::RunConfig;
use crate::output::{itemsets_text, jsonl, rules_text, ItemsetRecord, RuleRecord};
use crate::synth::{self, generate_sales};
use crate::PipelineError;

pub const FACT_TABLE: &str = "fact";

/// Files whose bytes depend only on the configuration and input data.
pub const DETERMINISTIC_FILES: [&str; 7] = [
    "registry.csv",
    "itemsets.txt",
    "itemsets.jsonl",
    "rules.txt",
    "rules.jsonl",
    "stats.json",
    "levels.csv",
];

/// Wall-clock timings; differs between runs.
pub const TIMING_FILE: &str = "bench.json";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgorithmRun {
    pub algorithm: String,
    pub stats: MiningStats,
    /// Frequent itemsets found at level 1, 2, ...
    pub itemsets_per_level: Vec<usize>,
    pub total_itemsets: usize,
    #[serde(skip)]
    pub itemsets: Vec<FrequentItemset>,
}

impl AlgorithmRun {
    fn new(algorithm: &str, itemsets: Vec<FrequentItemset>, stats: MiningStats) -> Self {
        let depth = itemsets.iter().map(FrequentItemset::level).max().unwrap_or(0);
        let mut per_level = vec![0; depth];
        for f in &itemsets {
            per_level[f.level() - 1] += 1;
        }
        AlgorithmRun {
            algorithm: algorithm.to_string(),
            stats,
            total_itemsets: itemsets.len(),
            itemsets_per_level: per_level,
            itemsets,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub config: RunConfig,
    pub general_rows: usize,
    pub view: TransactionView,
    pub registry: MapCodeRegistry,
    pub itemsets: Vec<LargeItemset>,
    pub rules: Vec<AssociationRule>,
    pub runs: Vec<AlgorithmRun>,
    /// Set when both algorithms ran.
    pub agreement: Option<bool>,
    pub files: Vec<PathBuf>,
}

impl PipelineOutput {
    pub fn run(&self, algorithm: &str) -> Option<&AlgorithmRun> {
        self.runs.iter().find(|r| r.algorithm == algorithm)
    }
}

#[derive(Serialize)]
struct StatsFile<'a> {
    general_rows: usize,
    groups: usize,
    codes: usize,
    minsup: String,
    minconf: String,
    algorithms: &'a [AlgorithmRun],
    agreement: Option<bool>,
    itemsets: usize,
    rules: usize,
}

/// Fills in synthetic inputs and defaults. Generates the synthetic tables
/// under `<out>/data` when the config asks for them.
pub fn resolve_config(config: &RunConfig) -> Result<RunConfig, PipelineError> {
    config.validate()?;
    let mut c = config.clone();
    let Some(spec) = &config.synth else {
        return Ok(c);
    };
    let seed = config.seed.expect("validated");
    let data = generate_sales(spec, seed)?;
    let (fact, dims) = data.write_to(&config.out.join("data"))?;
    c.fact = Some(fact);
    c.dims = dims
        .into_iter()
        .map(|(name, path)| crate::config::DimInput { name, path })
        .collect();
    if c.joins.is_empty() {
        c.joins = synth::default_joins();
    }
    for (attr, bins) in synth::default_bins() {
        c.bins.entry(attr).or_insert(bins);
    }
    if c.key_dim.is_empty() {
        c.key_dim = synth::DEFAULT_KEY_DIM.into();
    }
    if c.combine_dims.is_empty() {
        c.combine_dims = synth::DEFAULT_COMBINE_DIMS.iter().map(|s| s.to_string()).collect();
        if c.repeatable_dims.is_empty() {
            c.repeatable_dims = synth::DEFAULT_REPEATABLE.iter().map(|s| s.to_string()).collect();
        }
    }
    Ok(c)
}

fn load_table(name: &str, path: &Path, config: &RunConfig) -> Result<RelationalTable, PipelineError> {
    let header = ingest::read_header(path)?;
    let schema = header
        .iter()
        .map(|h| match config.bins.get(h) {
            Some(bins) => AttributeSpec::quantitative(h.as_str(), bins.clone()),
            None => AttributeSpec::categorical(h.as_str()),
        })
        .collect();
    let text = fs::read_to_string(path).map_err(PipelineError::io(path))?;
    Ok(ingest::parse_csv(name, &text, schema)?)
}

fn join_spec(config: &RunConfig, tables: &[RelationalTable]) -> Result<JoinSpec, PipelineError> {
    let projected_attrs = if config.project.is_empty() {
        let mut cols: Vec<(String, String)> = Vec::new();
        let mut names = HashSet::new();
        let fact = &tables[0];
        for a in fact.attribute_names() {
            names.insert(a.clone());
            cols.push((FACT_TABLE.into(), a));
        }
        for link in &config.joins {
            let Some(dim) = tables.iter().find(|t| t.name() == link.dim_table) else {
                continue;
            };
            for a in dim.attribute_names() {
                if a != link.dim_key && names.insert(a.clone()) {
                    cols.push((link.dim_table.clone(), a));
                }
            }
        }
        cols
    } else {
        config
            .project
            .iter()
            .map(|p| {
                let (t, a) = p.split_once('.').expect("validated");
                (t.to_string(), a.to_string())
            })
            .collect()
    };
    Ok(JoinSpec {
        fact_table: FACT_TABLE.into(),
        links: config.joins.clone(),
        projected_attrs,
    })
}

/// Builds the general table from the configured files.
pub fn build_general_table(config: &RunConfig) -> Result<RelationalTable, PipelineError> {
    let fact_path = config
        .fact
        .as_ref()
        .ok_or_else(|| PipelineError::Usage("no fact table".into()))?;
    let mut tables = vec![load_table(FACT_TABLE, fact_path, config)?];
    for d in &config.dims {
        if d.name == FACT_TABLE || tables.iter().any(|t| t.name() == d.name) {
            return Err(PipelineError::Usage(format!("table name {:?} used twice", d.name)));
        }
        tables.push(load_table(&d.name, &d.path, config)?);
    }
    let spec = join_spec(config, &tables)?;
    let mut general = ingest::join_tables(&tables, &spec)?;
    for m in &config.mappings {
        let header = ingest::read_header(&m.path)?;
        let schema = header.iter().map(|h| AttributeSpec::categorical(h.as_str())).collect();
        let text = fs::read_to_string(&m.path).map_err(PipelineError::io(&m.path))?;
        let table = ingest::parse_csv("mapping", &text, schema)?;
        let func = MappingFunction::from_table(&table, &m.source, &m.target)?;
        general = ingest::apply_mapping_function(&general, &func)?;
    }
    Ok(ingest::discretize_all(&general)?)
}

/// Runs the whole pipeline and writes its artifacts into `config.out`.
pub fn run_pipeline(config: &RunConfig) -> Result<PipelineOutput, PipelineError> {
    let config = resolve_config(config)?;
    let general = build_general_table(&config)?;

    let options = CombineOptions {
        filters: config.filters.clone(),
        two_pass: config.two_pass_combine,
    };
    let (registry, md) = combine_dims_with(&general, &config.key_dim, &config.combine_dims, &options)?;
    let view = group_by_key(&md);
    let mining = MiningOptions::threads(config.threads);

    let mut runs = Vec::new();
    if config.algorithm.runs_rshar() {
        let (fis, stats) = fi_gen_with(&view, config.minsup, &mining)?;
        runs.push(AlgorithmRun::new("rshar", fis, stats));
    }
    if config.algorithm.runs_apriori() {
        let (fis, stats) = apriori_baseline_with(&view, config.minsup, &mining)?;
        runs.push(AlgorithmRun::new("apriori", fis, stats));
    }
    let agreement = (runs.len() == 2).then(|| runs[0].itemsets == runs[1].itemsets);
    if agreement == Some(false) {
        return Err(PipelineError::Disagreement(format!(
            "rshar found {} itemsets, apriori {}",
            runs[0].total_itemsets, runs[1].total_itemsets
        )));
    }

    let itemsets = transform_map_code(&runs[0].itemsets, &registry)?;
    let policy = DimensionPolicy {
        repeatable: config.repeatable_dims.clone(),
    };
    let rules = gen_rules(&itemsets, &registry, config.minconf, &policy)?;

    let mut output = PipelineOutput {
        general_rows: general.len(),
        view,
        registry,
        itemsets,
        rules,
        runs,
        agreement,
        files: Vec::new(),
        config,
    };
    output.files = write_outputs(&output)?;
    Ok(output)
}

fn levels_csv(runs: &[AlgorithmRun]) -> String {
    let depth = runs.iter().map(|r| r.itemsets_per_level.len()).max().unwrap_or(0);
    let mut out = String::from("level");
    for r in runs {
        out.push(',');
        out.push_str(&r.algorithm);
    }
    out.push('\n');
    for level in 0..depth {
        out.push_str(&(level + 1).to_string());
        for r in runs {
            out.push(',');
            out.push_str(&r.itemsets_per_level.get(level).copied().unwrap_or(0).to_string());
        }
        out.push('\n');
    }
    out
}

fn write_outputs(o: &PipelineOutput) -> Result<Vec<PathBuf>, PipelineError> {
    let dir = &o.config.out;
    fs::create_dir_all(dir).map_err(PipelineError::io(dir))?;
    let stats = StatsFile {
        general_rows: o.general_rows,
        groups: o.view.len(),
        codes: o.view.code_universe().len(),
        minsup: o.config.minsup.to_string(),
        minconf: o.config.minconf.to_string(),
        algorithms: &o.runs,
        agreement: o.agreement,
        itemsets: o.itemsets.len(),
        rules: o.rules.len(),
    };
    let bench = BenchReport::from_output(o);
    let contents: BTreeMap<&str, String> = [
        ("registry.csv", o.registry.to_csv()),
        ("itemsets.txt", itemsets_text(&o.itemsets, o.view.len())),
        ("itemsets.jsonl", jsonl(o.itemsets.iter().map(ItemsetRecord::from))),
        ("rules.txt", rules_text(&o.rules)),
        ("rules.jsonl", jsonl(o.rules.iter().map(RuleRecord::from))),
        (
            "stats.json",
            serde_json::to_string_pretty(&stats).expect("stats serialize") + "\n",
        ),
        ("levels.csv", levels_csv(&o.runs)),
        (
            TIMING_FILE,
            serde_json::to_string_pretty(&bench).expect("report serializes") + "\n",
        ),
    ]
    .into_iter()
    .collect();
    let mut written = Vec::new();
    for (name, text) in contents {
        let p = dir.join(name);
        fs::write(&p, text).map_err(PipelineError::io(&p))?;
        written.push(p);
    }
    Ok(written)
}
