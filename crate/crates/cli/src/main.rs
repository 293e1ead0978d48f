use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use rshar_cli::config::{parse_bins, parse_dim, parse_filter, parse_join, parse_list};
use rshar_cli::{run_pipeline, Algorithm, BenchReport, PipelineError, RunConfig, SynthSpec};
use rshar_core::Fraction;

/// Mine hybrid-dimension association rules from a star-schema data warehouse.
///
/// Flags override values read from --config.
#[derive(Debug, Parser)]
#[command(name = "rshar", version)]
struct Cli {
    /// TOML run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Fact table CSV.
    #[arg(long)]
    fact: Option<PathBuf>,
    /// Dimension table as name=path (repeatable).
    #[arg(long = "dim", value_name = "NAME=PATH")]
    dims: Vec<String>,
    /// Join link as fact_key:dim:dim_key (repeatable).
    #[arg(long = "join", value_name = "FK:DIM:KEY")]
    joins: Vec<String>,
    /// Projected columns as comma-separated table.attr.
    #[arg(long)]
    project: Option<String>,
    /// Attribute whose values identify groups.
    #[arg(long)]
    key_dim: Option<String>,
    /// Comma-separated attributes combined into mapping codes.
    #[arg(long)]
    combine_dims: Option<String>,
    /// Keep only rows with dim=value (repeatable; values of one dim are OR-ed).
    #[arg(long = "filter", value_name = "DIM=VALUE")]
    filters: Vec<String>,
    /// Discretization as attr=label:lo:hi,... (repeatable).
    #[arg(long = "bins", value_name = "SPEC")]
    bins: Vec<String>,
    /// Minimum support, e.g. 0.0045, 0.45% or 9/2000.
    #[arg(long)]
    minsup: Option<Fraction>,
    /// Minimum confidence.
    #[arg(long)]
    minconf: Option<Fraction>,
    #[arg(long, value_enum)]
    algorithm: Option<Algorithm>,
    /// Comma-separated dimensions allowed to repeat inside a rule.
    #[arg(long)]
    repeatable_dims: Option<String>,
    /// Generate N synthetic fact rows instead of reading files.
    #[arg(long, value_name = "N")]
    synth: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Zipf exponent for the synthetic generator.
    #[arg(long)]
    skew: Option<f64>,
    /// Worker threads; 0 or 1 runs serially.
    #[arg(long)]
    threads: Option<usize>,
    /// Combine with a separate filtering pass.
    #[arg(long)]
    two_pass_combine: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the effective configuration as TOML and exit.
    #[arg(long)]
    dump_config: bool,
}

impl Cli {
    fn into_config(self) -> Result<(RunConfig, bool), PipelineError> {
        let mut c = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Some(f) = self.fact {
            c.fact = Some(f);
        }
        for d in &self.dims {
            c.dims.push(parse_dim(d)?);
        }
        for j in &self.joins {
            c.joins.push(parse_join(j)?);
        }
        if let Some(p) = &self.project {
            c.project = parse_list(p);
        }
        if let Some(k) = self.key_dim {
            c.key_dim = k;
        }
        if let Some(d) = &self.combine_dims {
            c.combine_dims = parse_list(d);
        }
        for f in &self.filters {
            let (dim, value) = parse_filter(f)?;
            c.filters.entry(dim).or_default().push(value);
        }
        for b in &self.bins {
            let (attr, bins) = parse_bins(b)?;
            c.bins.insert(attr, bins);
        }
        if let Some(s) = self.minsup {
            c.minsup = s;
        }
        if let Some(s) = self.minconf {
            c.minconf = s;
        }
        if let Some(a) = self.algorithm {
            c.algorithm = a;
        }
        if let Some(r) = &self.repeatable_dims {
            c.repeatable_dims = parse_list(r).into_iter().collect();
        }
        if let Some(n) = self.synth {
            let mut spec = c.synth.take().unwrap_or_default();
            spec.n_fact_rows = n;
            c.synth = Some(spec);
        }
        if let Some(skew) = self.skew {
            c.synth.get_or_insert_with(SynthSpec::default).skew = skew;
        }
        if self.seed.is_some() {
            c.seed = self.seed;
        }
        if let Some(t) = self.threads {
            c.threads = t;
        }
        c.two_pass_combine |= self.two_pass_combine;
        if let Some(o) = self.out {
            c.out = o;
        }
        Ok((c, self.dump_config))
    }
}

fn run(cli: Cli) -> Result<(), PipelineError> {
    let (config, dump) = cli.into_config()?;
    if dump {
        print!("{}", config.to_toml()?);
        return Ok(());
    }
    let output = run_pipeline(&config)?;
    println!(
        "{} groups, {} codes, {} frequent itemsets, {} rules -> {}",
        output.view.len(),
        output.registry.len(),
        output.itemsets.len(),
        output.rules.len(),
        output.config.out.display()
    );
    if output.runs.len() > 1 {
        print!("{}", BenchReport::from_output(&output).render_table());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
