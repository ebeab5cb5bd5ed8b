//! Fixture generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};
use std::fs;
use std::path::{Path, PathBuf};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use scholnet::geo::{GeoPoint, EARTH_RADIUS_KM};
use scholnet::ingest::{AuthorAffiliation, PublicationRecord};
use scholnet::netbuild::{NodeAttrs, WeightedGraph};
use scholnet::resolve::{CategoryCode, Institution, Origin, Registry};

pub fn fixture_dir(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
        .join(name)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// Category-count manifest

/// (category, papers, institutions) per UGC class.
pub const CATEGORY_COUNTS: [(CategoryCode, usize, usize); 10] = [
    (CategoryCode::Nri, 9292, 76),
    (CategoryCode::Ini, 2635, 46),
    (CategoryCode::Cu, 2083, 32),
    (CategoryCode::Su, 3438, 109),
    (CategoryCode::Sc, 1482, 301),
    (CategoryCode::Cc, 1, 1),
    (CategoryCode::Du, 9, 4),
    (CategoryCode::Pu, 85, 18),
    (CategoryCode::Pi, 57, 19),
    (CategoryCode::Sri, 25, 6),
];

pub const MANIFEST_PAPERS: usize = 14704;

/// A corpus of `MANIFEST_PAPERS` papers carrying `CATEGORY_COUNTS`.
///
/// Each category owns a contiguous run of papers, laid end to end and
/// wrapping around the corpus, so categories overlap on some papers while
/// every paper carries at least one category. Within a run, authors cycle
/// through the category's institutions.
pub fn category_manifest() -> (Vec<PublicationRecord>, Registry) {
    let mut institutions = Vec::new();
    let mut authors: Vec<Vec<AuthorAffiliation>> = vec![Vec::new(); MANIFEST_PAPERS];
    let mut start = 0;
    for (cat, papers, insts) in CATEGORY_COUNTS {
        let names: Vec<String> = (0..insts)
            .map(|i| format!("{} member {i:03}", cat.code()))
            .collect();
        for (i, name) in names.iter().enumerate() {
            institutions.push(Institution {
                canonical_id: format!("{}-{i:03}", cat.code().to_lowercase()),
                display_name: name.clone(),
                category: cat,
                pincode: None,
                origin: Origin::Domestic,
                location: None,
            });
        }
        for k in 0..papers {
            let pos = (start + k) % MANIFEST_PAPERS;
            authors[pos].push(AuthorAffiliation {
                author_key: format!("{}-{k}", cat.code()),
                raw_affiliations: vec![names[k % insts].clone()],
            });
        }
        start += papers;
    }
    let records = authors
        .into_iter()
        .enumerate()
        .map(|(i, authorships)| PublicationRecord {
            paper_id: format!("m{i:05}"),
            year: 1970 + (i % 44) as i32,
            authorships,
            cited_ids: Vec::new(),
        })
        .collect();
    (records, Registry::new(institutions).expect("unique ids"))
}

// ---------------------------------------------------------------------------
// Synthetic corpus

const PLACES: [&str; 16] = [
    "Kanpur", "Pune", "Mysore", "Kolkata", "Chennai", "Bhopal", "Jaipur", "Lucknow", "Guwahati",
    "Shillong", "Indore", "Ranchi", "Patna", "Kochi", "Nagpur", "Dehradun",
];
const FIELDS: [&str; 4] = ["Physics", "Astronomy", "Materials", "Plasma Studies"];
const COUNTRIES: [&str; 4] = ["USA", "Germany", "Japan", "France"];

pub struct SyntheticCorpus {
    pub records: Vec<PublicationRecord>,
    pub registry_csv: String,
    pub aliases_csv: String,
    pub gazetteer: String,
}

fn institution_name(i: usize) -> String {
    let place = PLACES[i % PLACES.len()];
    match i / PLACES.len() {
        0 => format!("{place} Institute of {}", FIELDS[i % FIELDS.len()]),
        1 => format!("University of {place}"),
        _ => format!("{place} College of Science"),
    }
}

fn acronym(name: &str) -> String {
    name.split_whitespace()
        .filter(|w| w.len() > 2)
        .filter_map(|w| w.chars().next())
        .collect::<String>()
        .to_uppercase()
}

/// Swaps, drops or doubles one interior letter.
pub fn typo(name: &str, rng: &mut impl Rng) -> String {
    let chars: Vec<char> = name.chars().collect();
    let letters: Vec<usize> = (1..chars.len().saturating_sub(1))
        .filter(|&i| chars[i].is_ascii_alphabetic() && chars[i + 1].is_ascii_alphabetic())
        .collect();
    if letters.is_empty() {
        return name.to_string();
    }
    let i = letters[rng.random_range(0..letters.len())];
    let mut out = chars.clone();
    match rng.random_range(0..3) {
        0 => out.swap(i, i + 1),
        1 => {
            out.remove(i);
        }
        _ => out.insert(i, chars[i]),
    }
    out.into_iter().collect()
}

/// A printed variant of a registry name.
pub fn perturb(name: &str, rng: &mut impl Rng) -> String {
    match rng.random_range(0..6) {
        0 => name.to_string(),
        1 => name.to_uppercase(),
        2 => name
            .replace("Institute", "Inst.")
            .replace("University", "Univ."),
        3 => format!("Dept. of Physics, {name}"),
        4 => typo(name, rng),
        _ => format!("  {name}. "),
    }
}

/// 200 papers over 40 registry institutions, a few foreign affiliations and
/// some strings no rule can place.
pub fn synthetic_corpus(seed: u64) -> SyntheticCorpus {
    let mut rng = rng(seed);
    let cats = [
        CategoryCode::Nri,
        CategoryCode::Ini,
        CategoryCode::Cu,
        CategoryCode::Su,
        CategoryCode::Sc,
        CategoryCode::Pu,
    ];
    let n_inst = 40;
    let mut registry_csv = String::from("canonical_id,display_name,category,pincode,lat,lon\n");
    let mut aliases_csv = String::from("raw_string,canonical_id\n");
    let names: Vec<String> = (0..n_inst).map(institution_name).collect();
    for (i, name) in names.iter().enumerate() {
        let cat = cats[i % cats.len()];
        if i % 13 == 7 {
            registry_csv.push_str(&format!("inst{i:02},{name},{cat},,,\n"));
        } else {
            let lat = rng.random_range(9.0..31.0_f64);
            let lon = rng.random_range(70.0..93.0_f64);
            let pin = rng.random_range(110_000..855_000);
            registry_csv.push_str(&format!(
                "inst{i:02},{name},{cat},{pin},{lat:.4},{lon:.4}\n"
            ));
        }
        if i % 5 == 0 {
            aliases_csv.push_str(&format!("{},inst{i:02}\n", acronym(name)));
        }
    }
    let gazetteer = "# countries\nindia\n".to_string()
        + &COUNTRIES
            .iter()
            .map(|c| c.to_lowercase() + "\n")
            .collect::<String>();

    let mut records = Vec::with_capacity(200);
    for p in 0..200usize {
        let year = 1990 + rng.random_range(0..24);
        let n_auth = rng.random_range(1..=5);
        let mut authorships = Vec::new();
        for a in 0..n_auth {
            let n_aff = if rng.random_bool(0.2) { 2 } else { 1 };
            let mut affs = Vec::new();
            for _ in 0..n_aff {
                let roll = rng.random_range(0..100);
                let aff = if roll < 6 {
                    let c = COUNTRIES[rng.random_range(0..COUNTRIES.len())];
                    format!("Department of Physics, Some University, {c}")
                } else if roll < 9 {
                    format!("Unlisted Centre {}", rng.random_range(0..4))
                } else {
                    let i = rng.random_range(0..n_inst);
                    if i % 5 == 0 && rng.random_bool(0.3) {
                        acronym(&names[i])
                    } else {
                        perturb(&names[i], &mut rng)
                    }
                };
                affs.push(aff);
            }
            authorships.push(AuthorAffiliation {
                author_key: format!("p{p}a{a}"),
                raw_affiliations: affs,
            });
        }
        let mut cited_ids = Vec::new();
        if p > 0 {
            for _ in 0..rng.random_range(0..4) {
                cited_ids.push(format!("s{:03}", rng.random_range(0..p)));
            }
        }
        if rng.random_bool(0.1) {
            cited_ids.push(format!("ext{p}"));
        }
        cited_ids.dedup();
        records.push(PublicationRecord {
            paper_id: format!("s{p:03}"),
            year,
            authorships,
            cited_ids,
        });
    }
    SyntheticCorpus {
        records,
        registry_csv,
        aliases_csv,
        gazetteer,
    }
}

impl SyntheticCorpus {
    /// Writes the corpus and a config into `dir`; returns the config path.
    pub fn write_to(&self, dir: &Path) -> PathBuf {
        let mut jsonl = Vec::new();
        scholnet::ingest::write_records(&self.records, &mut jsonl).unwrap();
        fs::write(dir.join("records.jsonl"), jsonl).unwrap();
        fs::write(dir.join("registry.csv"), &self.registry_csv).unwrap();
        fs::write(dir.join("aliases.csv"), &self.aliases_csv).unwrap();
        fs::write(dir.join("countries.txt"), &self.gazetteer).unwrap();
        let config = dir.join("config.toml");
        fs::write(
            &config,
            "records = \"records.jsonl\"\n\
             registry = \"registry.csv\"\n\
             aliases = \"aliases.csv\"\n\
             gazetteer = \"countries.txt\"\n\
             out = \"out\"\n\
             snapshot_years = [1995, 2000, 2005, 2010, 2013]\n",
        )
        .unwrap();
        config
    }
}

// ---------------------------------------------------------------------------
// Graph construction

pub fn node_id(i: usize) -> String {
    format!("{i:04}")
}

pub fn attrs(category: CategoryCode) -> NodeAttrs {
    NodeAttrs {
        category,
        location: None,
        paper_count: 0,
    }
}

pub fn graph_from_edges(directed: bool, n: usize, edges: &[(usize, usize, u64)]) -> WeightedGraph {
    let mut g = WeightedGraph::new(directed);
    for i in 0..n {
        g.ensure_node(&node_id(i), || attrs(CategoryCode::Nri));
    }
    for &(u, v, w) in edges {
        g.add_weight(&node_id(u), &node_id(v), w);
    }
    g
}

/// A random connected simple graph: a random spanning tree plus extra edges.
pub fn random_connected(n: usize, extra: f64, rng: &mut impl Rng) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.random_bool(extra) {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Random weighted digraph edges, self-loops included with probability `p_loop`.
pub fn random_digraph(
    n: usize,
    p: f64,
    p_loop: f64,
    rng: &mut impl Rng,
) -> Vec<(usize, usize, u64)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let keep = if u == v {
                rng.random_bool(p_loop)
            } else {
                rng.random_bool(p)
            };
            if keep {
                edges.push((u, v, rng.random_range(1..=9)));
            }
        }
    }
    edges
}

// ---------------------------------------------------------------------------
// Oracles

/// Betweenness by listing every shortest path of every unordered pair.
pub fn brute_force_betweenness(n: usize, edges: &[(usize, usize)]) -> Vec<Ratio<i64>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        if u != v && !adj[u].contains(&v) {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut scores = vec![Ratio::from_integer(0); n];
    for s in 0..n {
        let dist = bfs(&adj, s);
        for t in s + 1..n {
            if dist[t].is_none() {
                continue;
            }
            let mut paths = Vec::new();
            let mut stack = vec![s];
            all_geodesics(&adj, &dist, t, &mut stack, &mut paths);
            let total = paths.len() as i64;
            for (v, score) in scores.iter_mut().enumerate() {
                if v == s || v == t {
                    continue;
                }
                let through = paths.iter().filter(|p| p.contains(&v)).count() as i64;
                *score += Ratio::new(through, total);
            }
        }
    }
    scores
}

fn bfs(adj: &[Vec<usize>], s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &v in &adj[u] {
            if dist[v].is_none() {
                dist[v] = Some(dist[u].unwrap() + 1);
                q.push_back(v);
            }
        }
    }
    dist
}

fn all_geodesics(
    adj: &[Vec<usize>],
    dist: &[Option<usize>],
    t: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let u = *stack.last().unwrap();
    if u == t {
        out.push(stack.clone());
        return;
    }
    for &v in &adj[u] {
        if dist[v] == Some(dist[u].unwrap() + 1) && dist[v] <= dist[t] {
            stack.push(v);
            all_geodesics(adj, dist, t, stack, out);
            stack.pop();
        }
    }
}

/// Dense Google-matrix power iteration on the binarized, loop-free digraph.
pub fn dense_pagerank(n: usize, edges: &[(usize, usize, u64)], damping: f64) -> Vec<f64> {
    let mut a = vec![vec![0.0; n]; n];
    for &(u, v, _) in edges {
        if u != v {
            a[u][v] = 1.0;
        }
    }
    let nf = n as f64;
    let mut google = vec![vec![0.0; n]; n];
    for u in 0..n {
        let out: f64 = a[u].iter().sum();
        for v in 0..n {
            let follow = if out > 0.0 { a[u][v] / out } else { 1.0 / nf };
            google[u][v] = damping * follow + (1.0 - damping) / nf;
        }
    }
    let mut x = vec![1.0 / nf; n];
    for _ in 0..5000 {
        let next: Vec<f64> = (0..n)
            .map(|v| (0..n).map(|u| x[u] * google[u][v]).sum())
            .collect();
        let delta: f64 = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        x = next;
        if delta < 1e-15 {
            break;
        }
    }
    x
}

/// Great-circle distance from the angle between unit position vectors.
pub fn vector_distance(p: GeoPoint, q: GeoPoint) -> f64 {
    let unit = |g: GeoPoint| {
        let (lat, lon) = (g.lat().to_radians(), g.lon().to_radians());
        [lat.cos() * lon.cos(), lat.cos() * lon.sin(), lat.sin()]
    };
    let (a, b) = (unit(p), unit(q));
    let cross = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    let sin = cross.iter().map(|c| c * c).sum::<f64>().sqrt();
    let cos: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
    EARTH_RADIUS_KM * sin.atan2(cos)
}

/// Levenshtein distance straight from the recursive definition.
pub fn recursive_levenshtein(a: &[char], b: &[char]) -> usize {
    match (a.split_last(), b.split_last()) {
        (None, _) => b.len(),
        (_, None) => a.len(),
        (Some((x, ra)), Some((y, rb))) => {
            let sub = recursive_levenshtein(ra, rb) + usize::from(x != y);
            let del = recursive_levenshtein(ra, b) + 1;
            let ins = recursive_levenshtein(a, rb) + 1;
            sub.min(del).min(ins)
        }
    }
}

pub fn random_point(rng: &mut impl Rng) -> GeoPoint {
    GeoPoint::new(
        rng.random_range(-90.0..=90.0),
        rng.random_range(-180.0..=180.0),
    )
    .unwrap()
}

/// Totals per node recomputed from an edge list, self-loops excluded:
/// (distinct predecessors, distinct successors, weight in, weight out).
pub fn flow_totals(n: usize, edges: &[(usize, usize, u64)]) -> Vec<(usize, usize, u64, u64)> {
    let mut merged: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for &(u, v, w) in edges {
        if u != v {
            *merged.entry((u, v)).or_default() += w;
        }
    }
    (0..n)
        .map(|i| {
            let inc: Vec<u64> = merged
                .iter()
                .filter(|((_, v), _)| *v == i)
                .map(|(_, w)| *w)
                .collect();
            let out: Vec<u64> = merged
                .iter()
                .filter(|((u, _), _)| *u == i)
                .map(|(_, w)| *w)
                .collect();
            (inc.len(), out.len(), inc.iter().sum(), out.iter().sum())
        })
        .collect()
}
