//! Affiliation disambiguation.
//!
//! Raw affiliation strings are mapped onto a registry of canonical
//! institutions in priority order:
//!
//! 1. curated alias map (raw string, then its normalized form),
//! 2. foreign-country tagging against a gazetteer,
//! 3. exact match of normalized names,
//! 4. nearest registry name by normalized edit distance within a threshold,
//! 5. otherwise a fresh `UNCLASSIFIED` singleton per normalized name.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{BufRead, Read};
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::geo::GeoPoint;

pub const DEFAULT_THRESHOLD: f64 = 0.15;
pub const DEFAULT_DOMESTIC_COUNTRY: &str = "india";

const FRESH_PREFIX: &str = "unclassified:";
const FOREIGN_PREFIX: &str = "foreign:";

#[derive(Debug, Error)]
pub enum ResolveError {
    #[error("nothing left of `{0}` after normalization")]
    EmptyAfterNormalization(String),
    #[error("alias points at unknown institution `{0}`")]
    AliasTargetMissing(String),
    #[error("unknown institution `{0}`")]
    UnknownInstitution(String),
    #[error("unknown category code `{0}`")]
    UnknownCategory(String),
    #[error("registry row {row}: {reason}")]
    InvalidRegistryRow { row: usize, reason: String },
    #[error("duplicate canonical id `{0}` in registry")]
    DuplicateInstitution(String),
    #[error("threshold {0} outside [0, 1]")]
    InvalidThreshold(f64),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

/// Institution categories; the first ten are the UGC classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CategoryCode {
    Nri,
    Ini,
    Cu,
    Su,
    Sc,
    Cc,
    Du,
    Pu,
    Pi,
    Sri,
    Foreign,
    Unclassified,
}

impl CategoryCode {
    pub const ALL: [CategoryCode; 12] = [
        Self::Nri,
        Self::Ini,
        Self::Cu,
        Self::Su,
        Self::Sc,
        Self::Cc,
        Self::Du,
        Self::Pu,
        Self::Pi,
        Self::Sri,
        Self::Foreign,
        Self::Unclassified,
    ];

    /// The ten UGC classes, without the artifact-only extensions.
    pub const UGC: [CategoryCode; 10] = [
        Self::Nri,
        Self::Ini,
        Self::Cu,
        Self::Su,
        Self::Sc,
        Self::Cc,
        Self::Du,
        Self::Pu,
        Self::Pi,
        Self::Sri,
    ];

    pub fn code(&self) -> &'static str {
        match self {
            Self::Nri => "NRI",
            Self::Ini => "INI",
            Self::Cu => "CU",
            Self::Su => "SU",
            Self::Sc => "SC",
            Self::Cc => "CC",
            Self::Du => "DU",
            Self::Pu => "PU",
            Self::Pi => "PI",
            Self::Sri => "SRI",
            Self::Foreign => "FOREIGN",
            Self::Unclassified => "UNCLASSIFIED",
        }
    }
}

impl fmt::Display for CategoryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for CategoryCode {
    type Err = ResolveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase();
        Self::ALL
            .into_iter()
            .find(|c| c.code() == upper)
            .ok_or_else(|| ResolveError::UnknownCategory(s.to_string()))
    }
}

/// Six-digit postal index number.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Pincode(String);

impl Pincode {
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        (s.len() == 6 && s.bytes().all(|b| b.is_ascii_digit())).then(|| Self(s.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Origin {
    Domestic,
    Foreign(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Institution {
    pub canonical_id: String,
    pub display_name: String,
    pub category: CategoryCode,
    pub pincode: Option<Pincode>,
    pub origin: Origin,
    pub location: Option<GeoPoint>,
}

impl Institution {
    /// Country-level stand-in for every affiliation tagged with `country`.
    pub fn foreign(country: &str) -> Self {
        Self {
            canonical_id: foreign_id(country),
            display_name: country.to_string(),
            category: CategoryCode::Foreign,
            pincode: None,
            origin: Origin::Foreign(country.to_string()),
            location: None,
        }
    }

    fn fresh(normalized: &str, display_name: &str) -> Self {
        Self {
            canonical_id: fresh_id(normalized),
            display_name: display_name.to_string(),
            category: CategoryCode::Unclassified,
            pincode: None,
            origin: Origin::Domestic,
            location: None,
        }
    }

    pub fn country(&self) -> Option<&str> {
        match &self.origin {
            Origin::Foreign(c) => Some(c),
            Origin::Domestic => None,
        }
    }
}

fn fresh_id(normalized: &str) -> String {
    format!("{FRESH_PREFIX}{}", normalized.replace(' ', "-"))
}

fn foreign_id(country: &str) -> String {
    format!("{FOREIGN_PREFIX}{}", country.replace(' ', "-"))
}

pub fn is_fresh_id(id: &str) -> bool {
    id.starts_with(FRESH_PREFIX)
}

/// Canonical institutions keyed by id.
#[derive(Debug, Clone, Default)]
pub struct Registry {
    institutions: BTreeMap<String, Institution>,
}

impl Registry {
    pub fn new(institutions: impl IntoIterator<Item = Institution>) -> Result<Self, ResolveError> {
        let mut reg = Self::default();
        for inst in institutions {
            if reg.institutions.contains_key(&inst.canonical_id) {
                return Err(ResolveError::DuplicateInstitution(inst.canonical_id));
            }
            reg.institutions.insert(inst.canonical_id.clone(), inst);
        }
        Ok(reg)
    }

    /// Reads `canonical_id,display_name,category,pincode,lat,lon`.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self, ResolveError> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut rows = Vec::new();
        for (i, row) in rdr.records().enumerate() {
            let row = row?;
            let row_no = i + 1;
            let bad = |reason: &str| ResolveError::InvalidRegistryRow {
                row: row_no,
                reason: reason.to_string(),
            };
            if row.len() != 6 {
                return Err(bad("expected 6 columns"));
            }
            let canonical_id = row[0].to_string();
            if canonical_id.is_empty() {
                return Err(bad("empty canonical_id"));
            }
            let display_name = row[1].to_string();
            if display_name.is_empty() {
                return Err(bad("empty display_name"));
            }
            let category: CategoryCode = row[2].parse()?;
            let pincode = match &row[3] {
                "" => None,
                s => Some(Pincode::parse(s).ok_or_else(|| bad("pincode must be 6 digits"))?),
            };
            let location = match (&row[4], &row[5]) {
                ("", "") => None,
                (lat, lon) => {
                    let lat: f64 = lat.parse().map_err(|_| bad("lat is not a number"))?;
                    let lon: f64 = lon.parse().map_err(|_| bad("lon is not a number"))?;
                    Some(GeoPoint::new(lat, lon).map_err(|e| bad(&e.to_string()))?)
                }
            };
            let origin = if category == CategoryCode::Foreign {
                if pincode.is_some() || location.is_some() {
                    return Err(bad("foreign entries carry no pincode or coordinates"));
                }
                Origin::Foreign(display_name.to_lowercase())
            } else {
                Origin::Domestic
            };
            rows.push(Institution {
                canonical_id,
                display_name,
                category,
                pincode,
                origin,
                location,
            });
        }
        Self::new(rows)
    }

    pub fn get(&self, id: &str) -> Option<&Institution> {
        self.institutions.get(id)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.institutions.contains_key(id)
    }

    pub fn len(&self) -> usize {
        self.institutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.institutions.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Institution> {
        self.institutions.values()
    }

    fn insert_if_absent(&mut self, inst: Institution) {
        self.institutions
            .entry(inst.canonical_id.clone())
            .or_insert(inst);
    }
}

/// Reads `raw_string,canonical_id` rows.
pub fn load_aliases<R: Read>(reader: R) -> Result<BTreeMap<String, String>, ResolveError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut aliases = BTreeMap::new();
    for row in rdr.records() {
        let row = row?;
        if row.len() >= 2 && !row[0].is_empty() {
            aliases.insert(row[0].to_string(), row[1].to_string());
        }
    }
    Ok(aliases)
}

/// One country per line; blank lines and `#` comments skipped.
pub fn load_gazetteer<R: BufRead>(reader: R) -> Result<Vec<String>, ResolveError> {
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let line = line.trim();
        if !line.is_empty() && !line.starts_with('#') {
            out.push(line.to_string());
        }
    }
    Ok(out)
}

/// Name normalization rules.
#[derive(Debug, Clone)]
pub struct Normalizer {
    /// Token (lowercase, including its trailing dot) → expansion.
    pub abbreviations: BTreeMap<String, String>,
    pub stop_tokens: BTreeSet<String>,
}

impl Default for Normalizer {
    fn default() -> Self {
        let abbreviations = [
            ("inst.", "institute"),
            ("tech.", "technology"),
            ("univ.", "university"),
            ("dept.", "department"),
            ("natl.", "national"),
            ("lab.", "laboratory"),
            ("labs.", "laboratories"),
            ("res.", "research"),
            ("sci.", "science"),
            ("phys.", "physics"),
            ("ctr.", "centre"),
            ("coll.", "college"),
            ("&", "and"),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
        let stop_tokens = ["of", "the", "and"].into_iter().map(String::from).collect();
        Self {
            abbreviations,
            stop_tokens,
        }
    }
}

impl Normalizer {
    pub fn normalize(&self, raw: &str) -> Result<String, ResolveError> {
        let lowered = raw.to_lowercase();
        // Keep '.' and '&' long enough for the abbreviation lookup.
        let spaced: String = lowered
            .chars()
            .map(|c| {
                if c.is_alphanumeric() || c == '.' || c == '&' {
                    c
                } else {
                    ' '
                }
            })
            .collect();
        let mut tokens = Vec::new();
        for token in spaced.split_whitespace() {
            let expanded = self
                .abbreviations
                .get(token)
                .map(String::as_str)
                .unwrap_or(token);
            for word in expanded.split_whitespace() {
                let word: String = word.chars().filter(|c| c.is_alphanumeric()).collect();
                if !word.is_empty() && !self.stop_tokens.contains(&word) {
                    tokens.push(word);
                }
            }
        }
        if tokens.is_empty() {
            return Err(ResolveError::EmptyAfterNormalization(raw.to_string()));
        }
        Ok(tokens.join(" "))
    }
}

/// Normalizes with the default abbreviation and stop-token tables.
pub fn normalize_name(raw: &str) -> Result<String, ResolveError> {
    Normalizer::default().normalize(raw)
}

/// Levenshtein distance over Unicode scalar values.
pub fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() {
        return b.len();
    }
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ca != cb);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// `edit_distance / max(len)`, in `[0, 1]`; two empty strings are 0 apart.
pub fn normalized_distance(a: &str, b: &str) -> f64 {
    let longest = a.chars().count().max(b.chars().count());
    if longest == 0 {
        return 0.0;
    }
    edit_distance(a, b) as f64 / longest as f64
}

/// Country named at the tail of `raw`, or `None` for domestic affiliations.
pub fn tag_foreign(raw: &str, country_gazetteer: &[String]) -> Option<String> {
    tag_foreign_with(
        &Normalizer::default(),
        raw,
        country_gazetteer,
        DEFAULT_DOMESTIC_COUNTRY,
    )
}

fn tag_foreign_with(
    normalizer: &Normalizer,
    raw: &str,
    gazetteer: &[String],
    domestic: &str,
) -> Option<String> {
    let name = normalizer.normalize(raw).ok()?;
    let tokens: Vec<&str> = name.split(' ').collect();
    let domestic = normalizer.normalize(domestic).ok();
    let mut best: Option<(usize, String)> = None;
    for entry in gazetteer {
        let Ok(country) = normalizer.normalize(entry) else {
            continue;
        };
        let country_tokens: Vec<&str> = country.split(' ').collect();
        if country_tokens.len() > tokens.len() || !tokens.ends_with(&country_tokens) {
            continue;
        }
        // longest suffix wins, so "new guinea" loses to "papua new guinea"
        if best.as_ref().is_none_or(|(n, _)| country_tokens.len() > *n) {
            best = Some((country_tokens.len(), country));
        }
    }
    best.map(|(_, c)| c)
        .filter(|c| Some(c.as_str()) != domestic.as_deref())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    AliasMap,
    Exact,
    Cluster,
    Foreign,
    Fresh,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::AliasMap => "alias_map",
            Self::Exact => "exact",
            Self::Cluster => "cluster",
            Self::Foreign => "foreign",
            Self::Fresh => "fresh",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Resolved {
    pub canonical_id: String,
    pub provenance: Provenance,
}

/// Raw string → canonical id, plus any institutions minted while resolving.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ResolutionMap {
    entries: BTreeMap<String, Resolved>,
    minted: BTreeMap<String, Institution>,
}

impl ResolutionMap {
    pub fn get(&self, raw: &str) -> Option<&Resolved> {
        self.entries.get(raw)
    }

    pub fn canonical_id(&self, raw: &str) -> Option<&str> {
        self.entries.get(raw).map(|r| r.canonical_id.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Resolved)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Fresh and foreign institutions that are not in the input registry.
    pub fn minted(&self) -> impl Iterator<Item = &Institution> {
        self.minted.values()
    }

    pub fn canonical_ids(&self) -> BTreeSet<&str> {
        self.entries
            .values()
            .map(|r| r.canonical_id.as_str())
            .collect()
    }

    pub fn count_by_provenance(&self) -> BTreeMap<Provenance, usize> {
        let mut counts = BTreeMap::new();
        for r in self.entries.values() {
            *counts.entry(r.provenance).or_default() += 1;
        }
        counts
    }
}

#[derive(Debug, Clone)]
pub struct ResolverConfig {
    pub threshold: f64,
    pub normalizer: Normalizer,
    pub domestic_country: String,
}

impl Default for ResolverConfig {
    fn default() -> Self {
        Self {
            threshold: DEFAULT_THRESHOLD,
            normalizer: Normalizer::default(),
            domestic_country: DEFAULT_DOMESTIC_COUNTRY.to_string(),
        }
    }
}

/// Resolves raw strings against a fixed registry, alias map and gazetteer.
#[derive(Debug, Clone)]
pub struct Resolver {
    config: ResolverConfig,
    registry: Registry,
    aliases: BTreeMap<String, String>,
    normalized_aliases: BTreeMap<String, String>,
    gazetteer: Vec<String>,
    /// (normalized name, canonical id), sorted by id.
    names: Vec<(String, String)>,
}

impl Resolver {
    pub fn new(
        config: ResolverConfig,
        registry: Registry,
        aliases: BTreeMap<String, String>,
        gazetteer: Vec<String>,
    ) -> Result<Self, ResolveError> {
        if !(0.0..=1.0).contains(&config.threshold) {
            return Err(ResolveError::InvalidThreshold(config.threshold));
        }
        for target in aliases.values() {
            if !registry.contains(target) {
                return Err(ResolveError::AliasTargetMissing(target.clone()));
            }
        }
        let mut normalized_aliases = BTreeMap::new();
        for (raw, target) in &aliases {
            if let Ok(n) = config.normalizer.normalize(raw) {
                normalized_aliases
                    .entry(n)
                    .or_insert_with(|| target.clone());
            }
        }
        let names = registry
            .iter()
            .filter_map(|inst| {
                config
                    .normalizer
                    .normalize(&inst.display_name)
                    .ok()
                    .map(|n| (n, inst.canonical_id.clone()))
            })
            .collect();
        Ok(Self {
            config,
            registry,
            aliases,
            normalized_aliases,
            gazetteer,
            names,
        })
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn resolve<'a>(&self, raws: impl IntoIterator<Item = &'a str>) -> Resolution {
        let distinct: BTreeSet<&str> = raws.into_iter().collect();
        let mut map = ResolutionMap::default();
        for raw in distinct {
            let (resolved, minted) = self.resolve_one(raw);
            if let Some(inst) = minted {
                map.minted.entry(inst.canonical_id.clone()).or_insert(inst);
            }
            map.entries.insert(raw.to_string(), resolved);
        }
        let mut registry = self.registry.clone();
        for inst in map.minted.values() {
            registry.insert_if_absent(inst.clone());
        }
        Resolution { map, registry }
    }

    fn resolve_one(&self, raw: &str) -> (Resolved, Option<Institution>) {
        let found = |id: &str, provenance| Resolved {
            canonical_id: id.to_string(),
            provenance,
        };
        let trimmed = raw.trim();
        if let Some(id) = self.aliases.get(raw).or_else(|| self.aliases.get(trimmed)) {
            return (found(id, Provenance::AliasMap), None);
        }
        let normalized = match self.config.normalizer.normalize(raw) {
            Ok(n) => n,
            Err(_) => {
                let key = trimmed.to_lowercase();
                let inst = Institution::fresh(&key, trimmed);
                return (found(&inst.canonical_id, Provenance::Fresh), Some(inst));
            }
        };
        if let Some(id) = self.normalized_aliases.get(&normalized) {
            return (found(id, Provenance::AliasMap), None);
        }
        if let Some(country) = tag_foreign_with(
            &self.config.normalizer,
            raw,
            &self.gazetteer,
            &self.config.domestic_country,
        ) {
            let inst = Institution::foreign(&country);
            let minted = (!self.registry.contains(&inst.canonical_id)).then_some(inst);
            return (found(&foreign_id(&country), Provenance::Foreign), minted);
        }
        if let Some((_, id)) = self.names.iter().find(|(n, _)| *n == normalized) {
            return (found(id, Provenance::Exact), None);
        }
        if let Some(id) = self.nearest(&normalized) {
            return (found(id, Provenance::Cluster), None);
        }
        let inst = Institution::fresh(&normalized, trimmed);
        (found(&inst.canonical_id, Provenance::Fresh), Some(inst))
    }

    fn nearest(&self, normalized: &str) -> Option<&str> {
        let len = normalized.chars().count();
        let mut best: Option<(f64, &str)> = None;
        for (name, id) in &self.names {
            let other = name.chars().count();
            let longest = len.max(other) as f64;
            if len.abs_diff(other) as f64 / longest > self.config.threshold {
                continue;
            }
            let d = edit_distance(normalized, name) as f64 / longest;
            if d > self.config.threshold {
                continue;
            }
            let better = match best {
                None => true,
                Some((bd, bid)) => d < bd || (d == bd && id.as_str() < bid),
            };
            if better {
                best = Some((d, id));
            }
        }
        best.map(|(_, id)| id)
    }
}

/// A resolution map together with the registry extended by minted entries.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub map: ResolutionMap,
    pub registry: Registry,
}

impl Resolution {
    pub fn institution_for(&self, raw: &str) -> Option<&Institution> {
        self.map
            .canonical_id(raw)
            .and_then(|id| self.registry.get(id))
    }
}

/// Resolves `raws` with the default normalizer and no foreign tagging.
pub fn cluster_affiliations(
    raws: &[&str],
    threshold: f64,
    alias_map: &BTreeMap<String, String>,
    registry: &Registry,
) -> Result<ResolutionMap, ResolveError> {
    let config = ResolverConfig {
        threshold,
        ..ResolverConfig::default()
    };
    let resolver = Resolver::new(config, registry.clone(), alias_map.clone(), Vec::new())?;
    Ok(resolver.resolve(raws.iter().copied()).map)
}

pub fn assign_category(
    canonical_id: &str,
    registry: &Registry,
) -> Result<CategoryCode, ResolveError> {
    match registry.get(canonical_id) {
        Some(inst) => Ok(inst.category),
        None if is_fresh_id(canonical_id) => Ok(CategoryCode::Unclassified),
        None => Err(ResolveError::UnknownInstitution(canonical_id.to_string())),
    }
}
