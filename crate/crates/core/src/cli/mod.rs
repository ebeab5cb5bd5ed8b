//! The `scholnet` command line.
//!
//! ```text
//! scholnet <resolve|build|metrics|distance|hubs|countries> --config <path>
//!          [--threshold F] [--years Y1..Y2] [--category Y[,X]] [--top K] [--out DIR]
//! ```
//!
//! Exit codes: 0 ok, 2 input error, 3 config error, 4 internal invariant
//! violation. Failures print one line to stderr:
//! `error code=<exit> kind=<kind> message="<text>"`.

mod config;
mod output;

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

pub use config::{parse_years, Overrides, PipelineConfig};
pub use output::{sha256_hex, MANIFEST};

use crate::geo::{distance_bin, great_circle_distance, LocationTally};
use crate::ingest::{self, CorpusSummary, IngestError};
use crate::metrics::{self, CategoryFilter, MetricsError, PageRankParams};
use crate::netbuild::{self, NetError, NetworkKind, PaperIndex, WeightedGraph};
use crate::resolve::{
    self, CategoryCode, Origin, Registry, Resolution, ResolveError, Resolver, ResolverConfig,
};
use output::{OutputLock, Outputs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Severity {
    Input,
    Config,
    Internal,
}

/// A failed run: exit code, a short machine-readable kind and a message.
#[derive(Debug)]
pub struct CliError {
    severity: Severity,
    kind: String,
    message: String,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Config,
            kind: "config".into(),
            message: message.into(),
        }
    }

    fn input(kind: &str, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Input,
            kind: kind.into(),
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Internal,
            kind: "invariant".into(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.severity {
            Severity::Input => 2,
            Severity::Config => 3,
            Severity::Internal => 4,
        }
    }

    pub fn kind(&self) -> &str {
        &self.kind
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let quoted = serde_json::to_string(&self.message).unwrap_or_else(|_| "\"?\"".into());
        write!(
            f,
            "error code={} kind={} message={}",
            self.exit_code(),
            self.kind,
            quoted
        )
    }
}

impl std::error::Error for CliError {}

impl From<IngestError> for CliError {
    fn from(e: IngestError) -> Self {
        let kind = match e {
            IngestError::MalformedLine(_) => "malformed_line",
            IngestError::SchemaViolation { .. } => "schema_violation",
            IngestError::DuplicatePaperId(_) => "duplicate_paper_id",
            IngestError::EmptyCorpus => "empty_corpus",
            IngestError::Io(_) => "io",
        };
        Self::input(kind, e.to_string())
    }
}

impl From<ResolveError> for CliError {
    fn from(e: ResolveError) -> Self {
        let kind = match e {
            ResolveError::EmptyAfterNormalization(_) => "empty_after_normalization",
            ResolveError::AliasTargetMissing(_) => "alias_target_missing",
            ResolveError::UnknownInstitution(_) => "unknown_institution",
            ResolveError::UnknownCategory(_) => "unknown_category",
            ResolveError::InvalidRegistryRow { .. } => "invalid_registry_row",
            ResolveError::DuplicateInstitution(_) => "duplicate_institution",
            ResolveError::InvalidThreshold(_) => return Self::config(e.to_string()),
            ResolveError::Csv(_) => "csv",
            ResolveError::Io(_) => "io",
        };
        Self::input(kind, e.to_string())
    }
}

impl From<NetError> for CliError {
    fn from(e: NetError) -> Self {
        match e {
            NetError::UnresolvedAffiliation(_) => Self::internal(e.to_string()),
            NetError::UnsortedYears | NetError::UnknownWeightMode(_) => Self::config(e.to_string()),
        }
    }
}

impl From<MetricsError> for CliError {
    fn from(e: MetricsError) -> Self {
        let kind = match e {
            MetricsError::ZeroProductivity(_) => return Self::internal(e.to_string()),
            MetricsError::EmptyGraph => "empty_graph",
            MetricsError::NoLocatedPairs => "no_located_pairs",
            MetricsError::InvalidFilter(_) => return Self::config(e.to_string()),
            MetricsError::Geo(_) => "geo",
        };
        Self::input(kind, e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "scholnet",
    version,
    about = "Institution collaboration and citation network analysis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Pipeline config file (TOML).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Normalized edit-distance threshold for affiliation matching.
    #[arg(long, global = true)]
    pub threshold: Option<f64>,
    /// Year range `Y1..Y2`: snapshot years for `build`, a period slice otherwise.
    #[arg(long, global = true, value_parser = parse_years)]
    pub years: Option<(i32, i32)>,
    /// Category filter `Y` or `Y,X` for distance profiles.
    #[arg(long, global = true)]
    pub category: Option<String>,
    /// Number of hubs to report.
    #[arg(long, global = true)]
    pub top: Option<usize>,
    /// Output directory, overriding the config.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Disambiguate affiliations and write the resolution map.
    Resolve,
    /// Build collaboration, citation and category networks plus yearly snapshots.
    Build,
    /// Centralities, knowledge flow, distance profile and category tables.
    Metrics,
    /// Collaboration strength by 50 km distance bin.
    Distance,
    /// Top knowledge hubs of the citation network.
    Hubs,
    /// Collaboration counts per foreign country.
    Countries,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Self::Resolve => "resolve",
            Self::Build => "build",
            Self::Metrics => "metrics",
            Self::Distance => "distance",
            Self::Hubs => "hubs",
            Self::Countries => "countries",
        }
    }
}

/// What a successful run wrote.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub out_dir: PathBuf,
    pub files: Vec<String>,
    pub notes: Vec<String>,
}

/// Parses `args` (program name first), runs, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            eprintln!("{}", CliError::config(first.trim_start_matches("error: ")));
            return 3;
        }
    };
    match run(&cli) {
        Ok(report) => {
            for note in &report.notes {
                eprintln!("note: {note}");
            }
            0
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli) -> Result<RunReport, CliError> {
    let config_path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::config("--config is required"))?;
    let category = cli
        .category
        .as_deref()
        .map(str::parse::<CategoryFilter>)
        .transpose()?;
    let overrides = Overrides {
        threshold: cli.threshold,
        years: cli.years,
        category,
        top: cli.top,
        out: cli.out.clone(),
    };
    let config = PipelineConfig::load(config_path, overrides, cli.command == Command::Build)?;
    let _lock = OutputLock::acquire(&config.out_dir)?;
    let loaded = Loaded::load(&config)?;
    let mut outputs = Outputs::default();
    match cli.command {
        Command::Resolve => emit_resolution(&loaded, &mut outputs)?,
        Command::Build => emit_networks(&config, &loaded, &mut outputs)?,
        Command::Metrics => emit_metrics(&config, &loaded, &mut outputs)?,
        Command::Distance => emit_distance(&config, &loaded, &mut outputs)?,
        Command::Hubs => emit_hubs(&config, &loaded, &mut outputs)?,
        Command::Countries => emit_countries(&config, &loaded, &mut outputs)?,
    }
    let notes = outputs.notes().to_vec();
    let files = outputs.commit(cli.command.name(), &config)?;
    Ok(RunReport {
        out_dir: config.out_dir.clone(),
        files,
        notes,
    })
}

struct Loaded {
    summary: CorpusSummary,
    resolution: Resolution,
    index: PaperIndex,
}

impl Loaded {
    fn load(config: &PipelineConfig) -> Result<Self, CliError> {
        let open = |p: &std::path::Path| {
            File::open(p).map_err(|e| CliError::input("io", format!("{}: {e}", p.display())))
        };
        let records = ingest::parse_records(BufReader::new(open(&config.records.resolved)?))?;
        let summary = ingest::validate_corpus(&records)?;
        let registry = Registry::from_csv(open(&config.registry.resolved)?)?;
        let aliases = match &config.aliases {
            Some(p) => resolve::load_aliases(open(&p.resolved)?)?,
            None => BTreeMap::new(),
        };
        let gazetteer = match &config.gazetteer {
            Some(p) => resolve::load_gazetteer(BufReader::new(open(&p.resolved)?))?,
            None => Vec::new(),
        };
        let resolver = Resolver::new(
            ResolverConfig {
                threshold: config.threshold,
                domestic_country: config.domestic_country.clone(),
                ..ResolverConfig::default()
            },
            registry,
            aliases,
            gazetteer,
        )?;
        let resolution = resolver.resolve(records.iter().flat_map(|r| r.raw_affiliations()));
        for raw in records.iter().flat_map(|r| r.raw_affiliations()) {
            if resolution.institution_for(raw).is_none() {
                return Err(CliError::internal(format!(
                    "resolution is not total: `{raw}`"
                )));
            }
        }
        let mut index = PaperIndex::build(&records, &resolution)?;
        if let Some((from, to)) = config.years {
            index = index.restrict_years(from, to);
        }
        Ok(Self {
            summary,
            resolution,
            index,
        })
    }

    fn label(&self, id: &str) -> String {
        self.resolution
            .registry
            .get(id)
            .map_or_else(|| id.to_string(), |i| i.display_name.clone())
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

#[derive(Serialize)]
struct ResolveSummary<'a> {
    corpus: &'a CorpusSummary,
    raw_strings: usize,
    canonical_ids: usize,
    reduction: String,
    by_provenance: BTreeMap<&'static str, usize>,
    minted: usize,
    locations: LocationTally,
}

fn emit_resolution(loaded: &Loaded, out: &mut Outputs) -> Result<(), CliError> {
    let map = &loaded.resolution.map;
    out.add_csv(
        "resolution_map.csv",
        &["raw_string", "canonical_id", "provenance"],
        map.iter().map(|(raw, r)| {
            vec![
                raw.to_string(),
                r.canonical_id.clone(),
                r.provenance.as_str().to_string(),
            ]
        }),
    )?;
    let used = map.canonical_ids();
    let institutions: Vec<_> = used
        .iter()
        .filter_map(|id| loaded.resolution.registry.get(id))
        .collect();
    out.add_csv(
        "institutions.csv",
        &[
            "canonical_id",
            "display_name",
            "category",
            "pincode",
            "lat",
            "lon",
            "country",
        ],
        institutions.iter().map(|i| {
            vec![
                i.canonical_id.clone(),
                i.display_name.clone(),
                i.category.to_string(),
                i.pincode
                    .as_ref()
                    .map(|p| p.as_str().to_string())
                    .unwrap_or_default(),
                fmt_opt(i.location.map(|p| p.lat())),
                fmt_opt(i.location.map(|p| p.lon())),
                i.country().unwrap_or_default().to_string(),
            ]
        }),
    )?;
    let summary = ResolveSummary {
        corpus: &loaded.summary,
        raw_strings: map.len(),
        canonical_ids: used.len(),
        reduction: format!("{} -> {}", map.len(), used.len()),
        by_provenance: map
            .count_by_provenance()
            .into_iter()
            .map(|(p, n)| (p.as_str(), n))
            .collect(),
        minted: map.minted().count(),
        locations: LocationTally::count(institutions.iter().copied()),
    };
    out.add_json("resolve_summary.json", &summary)
}

fn write_graph(
    out: &mut Outputs,
    stem: &str,
    g: &WeightedGraph,
    label: impl Fn(&str) -> String,
) -> Result<(), CliError> {
    let mut gexf = Vec::new();
    netbuild::write_gexf(g, label, &mut gexf).map_err(|e| CliError::internal(e.to_string()))?;
    out.add(format!("{stem}.gexf"), gexf);
    let mut csv = Vec::new();
    netbuild::write_edge_csv(g, &mut csv).map_err(|e| CliError::internal(e.to_string()))?;
    out.add(format!("{stem}_edges.csv"), csv);
    Ok(())
}

fn supernodes(g: &WeightedGraph, index: &PaperIndex) -> Result<WeightedGraph, CliError> {
    let s = netbuild::aggregate_supernodes(g, &BTreeMap::new(), index);
    if s.total_weight() != g.total_weight() {
        return Err(CliError::internal(format!(
            "super-node aggregation changed total weight {} -> {}",
            g.total_weight(),
            s.total_weight()
        )));
    }
    Ok(s)
}

fn emit_networks(
    config: &PipelineConfig,
    loaded: &Loaded,
    out: &mut Outputs,
) -> Result<(), CliError> {
    let index = &loaded.index;
    let collab = index.collaboration_network(config.edge_weight_mode);
    let cites = index.citation_network();
    let label = |id: &str| loaded.label(id);
    write_graph(out, "collaboration", &collab, label)?;
    write_graph(out, "citation", &cites, label)?;
    write_graph(
        out,
        "category_collaboration",
        &supernodes(&collab, index)?,
        str::to_string,
    )?;
    write_graph(
        out,
        "category_citation",
        &supernodes(&cites, index)?,
        str::to_string,
    )?;

    let mut summary_rows = Vec::new();
    for kind in [NetworkKind::Collaboration, NetworkKind::Citation] {
        let name = match kind {
            NetworkKind::Collaboration => "collaboration",
            NetworkKind::Citation => "citation",
        };
        let series = index.snapshots(kind, &config.snapshot_years, config.edge_weight_mode)?;
        if !series.is_monotone() {
            return Err(CliError::internal(format!(
                "{name} snapshots are not cumulative"
            )));
        }
        for (year, g) in &series.snapshots {
            let mut csv = Vec::new();
            netbuild::write_edge_csv(g, &mut csv).map_err(|e| CliError::internal(e.to_string()))?;
            out.add(format!("snapshots/{name}_{year}.csv"), csv);
            summary_rows.push(vec![
                year.to_string(),
                name.to_string(),
                g.node_count().to_string(),
                g.edge_count().to_string(),
                g.total_weight().to_string(),
            ]);
        }
    }
    out.add_csv(
        "snapshots/summary.csv",
        &["year", "network", "nodes", "edges", "total_weight"],
        summary_rows,
    )
}

fn profile_rows(profile: &metrics::DistanceProfile) -> Vec<Vec<String>> {
    profile
        .bins
        .iter()
        .map(|b| {
            vec![
                b.bin.index().to_string(),
                b.bin.lo_km().to_string(),
                b.bin.hi_km().to_string(),
                b.pair_count.to_string(),
                fmt_opt(b.mean),
                fmt_opt(b.median),
                fmt_opt(b.q1),
                fmt_opt(b.q3),
            ]
        })
        .collect()
}

const PROFILE_HEADER: [&str; 8] = [
    "bin",
    "lo_km",
    "hi_km",
    "pair_count",
    "mean",
    "median",
    "q1",
    "q3",
];

fn emit_metrics(
    config: &PipelineConfig,
    loaded: &Loaded,
    out: &mut Outputs,
) -> Result<(), CliError> {
    let index = &loaded.index;
    let collab = index.collaboration_network(config.edge_weight_mode);
    let cites = index.citation_network();
    let params = PageRankParams {
        damping: config.damping,
        ..PageRankParams::default()
    };

    let table = metrics::node_metrics(&collab, params);
    if !table.pagerank_converged {
        out.note(format!(
            "pagerank did not converge within {} iterations",
            table.pagerank_iterations
        ));
    }
    out.add_csv(
        "metrics.csv",
        &["node", "degree", "clustering", "betweenness", "pagerank"],
        table.rows.iter().map(|r| {
            vec![
                r.node.clone(),
                r.degree.to_string(),
                r.clustering.to_string(),
                r.betweenness.to_string(),
                r.pagerank.to_string(),
            ]
        }),
    )?;

    let categories: BTreeMap<String, CategoryCode> = collab
        .nodes()
        .map(|(id, a)| (id.to_string(), a.category))
        .collect();
    let summary = metrics::category_centrality_summary(&table, &categories);
    if !summary.empty.is_empty() {
        let codes: Vec<&str> = summary.empty.iter().map(|c| c.code()).collect();
        out.note(format!(
            "categories without institutions: {}",
            codes.join(",")
        ));
    }
    out.add_csv(
        "category_centrality.csv",
        &[
            "category",
            "members",
            "avg_degree",
            "avg_clustering",
            "avg_betweenness",
            "avg_pagerank",
        ],
        summary.by_category.iter().map(|(c, s)| {
            vec![
                c.to_string(),
                s.members.to_string(),
                s.avg_degree.to_string(),
                s.avg_clustering.to_string(),
                s.avg_betweenness.to_string(),
                s.avg_pagerank.to_string(),
            ]
        }),
    )?;

    out.add_csv(
        "flow.csv",
        &["node", "f_in", "f_out", "k_in", "k_out", "w_in", "w_out"],
        metrics::knowledge_flow(&cites).iter().map(|f| {
            vec![
                f.node.clone(),
                f.f_in.to_string(),
                f.f_out.to_string(),
                f.k_in.to_string(),
                f.k_out.to_string(),
                f.w_in.to_string(),
                f.w_out.to_string(),
            ]
        }),
    )?;

    match metrics::distance_profile(&collab, index, None) {
        Ok(profile) => out.add_csv(
            "distance_profile.csv",
            &PROFILE_HEADER,
            profile_rows(&profile),
        )?,
        Err(MetricsError::NoLocatedPairs) => {
            out.note("no located collaborating pairs; distance_profile.csv has no rows");
            out.add_csv(
                "distance_profile.csv",
                &PROFILE_HEADER,
                Vec::<Vec<String>>::new(),
            )?;
        }
        Err(e) => return Err(e.into()),
    }
    emit_pair_strengths(&collab, index, out)?;

    let productivity = metrics::productivity_table(index);
    let order = productivity.productivity_order();
    out.add_csv(
        "category_table.csv",
        &["category", "papers", "institutions", "papers_per_institute"],
        order.iter().map(|c| {
            let row = &productivity.rows[c];
            vec![
                c.to_string(),
                row.papers.to_string(),
                row.institutions.to_string(),
                row.papers_per_institute().to_string(),
            ]
        }),
    )?;
    for (name, g) in [
        ("category_matrix.csv", &collab),
        ("category_matrix_citation.csv", &cites),
    ] {
        let s = supernodes(g, index)?;
        out.add_csv(
            name,
            &["row_category", "column_category", "weight"],
            metrics::category_matrix(&s, &order)
                .into_iter()
                .map(|(r, c, w)| vec![r.to_string(), c.to_string(), w.to_string()]),
        )?;
    }
    Ok(())
}

/// Every collaborating pair with its strength and, when both ends are located, distance.
fn emit_pair_strengths(
    collab: &WeightedGraph,
    index: &PaperIndex,
    out: &mut Outputs,
) -> Result<(), CliError> {
    let mut rows = Vec::new();
    for (u, v, weight) in collab.edges() {
        let strength = metrics::collaboration_strength(u, v, index)?;
        let (a, b) = (collab.node(u).expect("node"), collab.node(v).expect("node"));
        let km = match (a.location, b.location) {
            (Some(p), Some(q)) => Some(if u == v {
                0.0
            } else {
                great_circle_distance(p, q)
            }),
            _ => None,
        };
        let bin = km
            .map(distance_bin)
            .transpose()
            .map_err(MetricsError::from)?;
        rows.push(vec![
            u.to_string(),
            v.to_string(),
            weight.to_string(),
            index.common_papers(u, v).to_string(),
            strength.to_string(),
            fmt_opt(km),
            bin.map(|b| b.index().to_string()).unwrap_or_default(),
        ]);
    }
    out.add_csv(
        "pair_strength.csv",
        &[
            "source",
            "target",
            "weight",
            "common_papers",
            "strength",
            "distance_km",
            "bin",
        ],
        rows,
    )
}

#[derive(Serialize)]
struct DistanceSummary {
    filter: Option<String>,
    years: Option<(i32, i32)>,
    total_pairs: usize,
    excluded_unlocated: usize,
    located_pairs: usize,
}

fn emit_distance(
    config: &PipelineConfig,
    loaded: &Loaded,
    out: &mut Outputs,
) -> Result<(), CliError> {
    let collab = loaded.index.collaboration_network(config.edge_weight_mode);
    let profile = metrics::distance_profile(&collab, &loaded.index, config.category_filter)?;
    out.add_csv(
        "distance_profile.csv",
        &PROFILE_HEADER,
        profile_rows(&profile),
    )?;
    out.add_json(
        "distance_summary.json",
        &DistanceSummary {
            filter: config.category.clone(),
            years: config.years,
            total_pairs: profile.total_pairs,
            excluded_unlocated: profile.excluded_unlocated,
            located_pairs: profile.bins.iter().map(|b| b.pair_count).sum(),
        },
    )
}

fn emit_hubs(config: &PipelineConfig, loaded: &Loaded, out: &mut Outputs) -> Result<(), CliError> {
    let cites = loaded.index.citation_network();
    let hubs = metrics::top_knowledge_hubs(&cites, config.top_k);
    out.add_csv(
        "hubs.csv",
        &[
            "rank",
            "node",
            "display_name",
            "category",
            "weighted_in_degree",
        ],
        hubs.iter().enumerate().map(|(i, (id, w))| {
            vec![
                (i + 1).to_string(),
                id.clone(),
                loaded.label(id),
                cites
                    .node(id)
                    .map(|a| a.category.to_string())
                    .unwrap_or_default(),
                w.to_string(),
            ]
        }),
    )
}

fn emit_countries(
    config: &PipelineConfig,
    loaded: &Loaded,
    out: &mut Outputs,
) -> Result<(), CliError> {
    let index = &loaded.index;
    let collab = index.collaboration_network(config.edge_weight_mode);
    let registry = &loaded.resolution.registry;
    let country_of = |id: &str| {
        registry.get(id).and_then(|i| match &i.origin {
            Origin::Foreign(c) => Some(c.clone()),
            Origin::Domestic => None,
        })
    };
    #[derive(Default)]
    struct Tally {
        weight: u64,
        papers: BTreeSet<usize>,
        partners: BTreeSet<String>,
    }
    let mut tallies: BTreeMap<String, Tally> = BTreeMap::new();
    for (u, v, w) in collab.edges() {
        let (cu, cv) = (country_of(u), country_of(v));
        let (country, partner) = match (cu, cv) {
            (Some(c), None) => (c, v),
            (None, Some(c)) => (c, u),
            _ => continue,
        };
        let t = tallies.entry(country).or_default();
        t.weight += w;
        t.partners.insert(partner.to_string());
    }
    for (pos, paper) in index.papers().iter().enumerate() {
        let domestic = paper.institutions.keys().any(|i| country_of(i).is_none());
        if !domestic {
            continue;
        }
        for inst in paper.institutions.keys() {
            if let Some(c) = country_of(inst) {
                tallies.entry(c).or_default().papers.insert(pos);
            }
        }
    }
    out.add_csv(
        "countries.csv",
        &[
            "country",
            "collaboration_weight",
            "joint_papers",
            "partner_institutions",
        ],
        tallies.iter().map(|(c, t)| {
            vec![
                c.clone(),
                t.weight.to_string(),
                t.papers.len().to_string(),
                t.partners.len().to_string(),
            ]
        }),
    )?;
    Ok(())
}
