//! Institution collaboration and citation networks, category super-nodes,
//! and cumulative yearly snapshots.
//!
//! Everything is built from a [`PaperIndex`]: the corpus with every raw
//! affiliation already replaced by its canonical institution.

mod export;
mod graph;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::geo::GeoPoint;
use crate::ingest::PublicationRecord;
use crate::resolve::{CategoryCode, Resolution};

pub use export::{write_edge_csv, write_gexf};
pub use graph::{NodeAttrs, WeightedGraph};

#[derive(Debug, Error)]
pub enum NetError {
    #[error("affiliation `{0}` has no resolution")]
    UnresolvedAffiliation(String),
    #[error("snapshot years must be strictly increasing")]
    UnsortedYears,
    #[error("unknown edge weight mode `{0}` (expected pairs or papers)")]
    UnknownWeightMode(String),
}

/// How a co-authored paper contributes to a collaboration edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeWeightMode {
    /// `n_i * n_j` author pairs, `n_i (n_i - 1) / 2` on the self-loop.
    #[default]
    Pairs,
    /// One per paper shared by the two institutions.
    Papers,
}

impl FromStr for EdgeWeightMode {
    type Err = NetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "pairs" => Ok(Self::Pairs),
            "papers" => Ok(Self::Papers),
            other => Err(NetError::UnknownWeightMode(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NetworkKind {
    Collaboration,
    Citation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndexedPaper {
    pub paper_id: String,
    pub year: i32,
    /// Institution id → number of authors with at least one affiliation there.
    pub institutions: BTreeMap<String, u32>,
    /// Positions of cited papers that are in the corpus.
    pub cited: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
struct InstitutionInfo {
    category: CategoryCode,
    location: Option<GeoPoint>,
    papers: Vec<usize>,
}

/// Resolved corpus: per-paper institution author counts and per-institution paper lists.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PaperIndex {
    papers: Vec<IndexedPaper>,
    institutions: BTreeMap<String, InstitutionInfo>,
    external_citations: usize,
}

impl PaperIndex {
    pub fn build(records: &[PublicationRecord], resolution: &Resolution) -> Result<Self, NetError> {
        let positions: HashMap<&str, usize> = records
            .iter()
            .enumerate()
            .map(|(i, r)| (r.paper_id.as_str(), i))
            .collect();
        let mut index = Self::default();
        for (pos, record) in records.iter().enumerate() {
            let mut institutions: BTreeMap<String, u32> = BTreeMap::new();
            for author in &record.authorships {
                let mut mine = BTreeSet::new();
                for raw in &author.raw_affiliations {
                    let inst = resolution
                        .institution_for(raw)
                        .ok_or_else(|| NetError::UnresolvedAffiliation(raw.clone()))?;
                    if mine.insert(inst.canonical_id.as_str())
                        && !institutions.contains_key(&inst.canonical_id)
                    {
                        index
                            .institutions
                            .entry(inst.canonical_id.clone())
                            .or_insert_with(|| InstitutionInfo {
                                category: inst.category,
                                location: crate::geo::locate(inst),
                                papers: Vec::new(),
                            })
                            .papers
                            .push(pos);
                    }
                }
                for id in mine {
                    *institutions.entry(id.to_string()).or_insert(0) += 1;
                }
            }
            let mut cited = Vec::new();
            for c in &record.cited_ids {
                match positions.get(c.as_str()) {
                    Some(&q) => cited.push(q),
                    None => index.external_citations += 1,
                }
            }
            index.papers.push(IndexedPaper {
                paper_id: record.paper_id.clone(),
                year: record.year,
                institutions,
                cited,
            });
        }
        Ok(index)
    }

    pub fn papers(&self) -> &[IndexedPaper] {
        &self.papers
    }

    pub fn external_citations(&self) -> usize {
        self.external_citations
    }

    pub fn institution_ids(&self) -> impl Iterator<Item = &str> {
        self.institutions.keys().map(String::as_str)
    }

    pub fn category(&self, inst: &str) -> Option<CategoryCode> {
        self.institutions.get(inst).map(|i| i.category)
    }

    pub fn location(&self, inst: &str) -> Option<GeoPoint> {
        self.institutions.get(inst).and_then(|i| i.location)
    }

    /// Distinct papers with at least one author at `inst`.
    pub fn paper_count(&self, inst: &str) -> u64 {
        self.institutions
            .get(inst)
            .map_or(0, |i| i.papers.len() as u64)
    }

    /// Papers co-authored by `i` and `j`. For `i == j`, papers with at
    /// least two authors at `i`.
    pub fn common_papers(&self, i: &str, j: &str) -> u64 {
        let (Some(a), Some(b)) = (self.institutions.get(i), self.institutions.get(j)) else {
            return 0;
        };
        if i == j {
            return a
                .papers
                .iter()
                .filter(|&&p| self.papers[p].institutions[i] >= 2)
                .count() as u64;
        }
        // both lists are ascending paper positions
        let (mut x, mut y, mut n) = (0, 0, 0);
        while x < a.papers.len() && y < b.papers.len() {
            match a.papers[x].cmp(&b.papers[y]) {
                std::cmp::Ordering::Less => x += 1,
                std::cmp::Ordering::Greater => y += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    x += 1;
                    y += 1;
                }
            }
        }
        n
    }

    /// Same corpus restricted to papers published within `[from, to]`.
    pub fn restrict_years(&self, from: i32, to: i32) -> Self {
        let keep: Vec<bool> = self
            .papers
            .iter()
            .map(|p| (from..=to).contains(&p.year))
            .collect();
        let mut remap = vec![usize::MAX; self.papers.len()];
        let mut out = Self::default();
        for (old, paper) in self.papers.iter().enumerate() {
            if !keep[old] {
                continue;
            }
            remap[old] = out.papers.len();
            out.papers.push(paper.clone());
        }
        for paper in &mut out.papers {
            paper.cited = paper
                .cited
                .iter()
                .filter(|&&q| keep[q])
                .map(|&q| remap[q])
                .collect();
        }
        for (id, info) in &self.institutions {
            let papers: Vec<usize> = info
                .papers
                .iter()
                .filter(|&&p| keep[p])
                .map(|&p| remap[p])
                .collect();
            if !papers.is_empty() {
                out.institutions.insert(
                    id.clone(),
                    InstitutionInfo {
                        papers,
                        ..info.clone()
                    },
                );
            }
        }
        out.external_citations = self.external_citations;
        out
    }

    fn attrs(&self, inst: &str) -> NodeAttrs {
        let info = &self.institutions[inst];
        NodeAttrs {
            category: info.category,
            location: info.location,
            paper_count: 0,
        }
    }

    fn add_collaboration_paper(&self, g: &mut WeightedGraph, pos: usize, mode: EdgeWeightMode) {
        let paper = &self.papers[pos];
        for inst in paper.institutions.keys() {
            g.ensure_node(inst, || self.attrs(inst)).paper_count += 1;
        }
        let counted: Vec<(&str, u64)> = paper
            .institutions
            .iter()
            .map(|(k, &n)| (k.as_str(), u64::from(n)))
            .collect();
        for (a, &(i, ni)) in counted.iter().enumerate() {
            if ni >= 2 {
                let w = match mode {
                    EdgeWeightMode::Pairs => ni * (ni - 1) / 2,
                    EdgeWeightMode::Papers => 1,
                };
                g.add_weight(i, i, w);
            }
            for &(j, nj) in &counted[a + 1..] {
                let w = match mode {
                    EdgeWeightMode::Pairs => ni * nj,
                    EdgeWeightMode::Papers => 1,
                };
                g.add_weight(i, j, w);
            }
        }
    }

    fn add_citing_paper(&self, g: &mut WeightedGraph, pos: usize) {
        let paper = &self.papers[pos];
        for inst in paper.institutions.keys() {
            g.ensure_node(inst, || self.attrs(inst)).paper_count += 1;
        }
        for &q in &paper.cited {
            let cited = &self.papers[q];
            for target in cited.institutions.keys() {
                g.ensure_node(target, || self.attrs(target));
            }
            for source in paper.institutions.keys() {
                for target in cited.institutions.keys() {
                    g.add_weight(source, target, 1);
                }
            }
        }
    }

    pub fn collaboration_network(&self, mode: EdgeWeightMode) -> WeightedGraph {
        let mut g = WeightedGraph::new(false);
        for pos in 0..self.papers.len() {
            self.add_collaboration_paper(&mut g, pos, mode);
        }
        g
    }

    pub fn citation_network(&self) -> WeightedGraph {
        let mut g = WeightedGraph::new(true);
        for pos in 0..self.papers.len() {
            self.add_citing_paper(&mut g, pos);
        }
        g
    }

    /// Cumulative graphs: the snapshot for year `t` holds every paper with year ≤ t.
    pub fn snapshots(
        &self,
        kind: NetworkKind,
        years: &[i32],
        mode: EdgeWeightMode,
    ) -> Result<SnapshotSeries, NetError> {
        if years.windows(2).any(|w| w[0] >= w[1]) {
            return Err(NetError::UnsortedYears);
        }
        let mut order: Vec<usize> = (0..self.papers.len()).collect();
        order.sort_by_key(|&p| (self.papers[p].year, p));
        let mut g = WeightedGraph::new(kind == NetworkKind::Citation);
        let mut next = 0;
        let mut snapshots = Vec::with_capacity(years.len());
        for &year in years {
            while next < order.len() && self.papers[order[next]].year <= year {
                match kind {
                    NetworkKind::Collaboration => {
                        self.add_collaboration_paper(&mut g, order[next], mode)
                    }
                    NetworkKind::Citation => self.add_citing_paper(&mut g, order[next]),
                }
                next += 1;
            }
            snapshots.push((year, g.clone()));
        }
        Ok(SnapshotSeries { snapshots })
    }
}

/// Undirected institution graph weighted by co-authorship.
pub fn build_collaboration_network(
    records: &[PublicationRecord],
    resolution: &Resolution,
    mode: EdgeWeightMode,
) -> Result<WeightedGraph, NetError> {
    Ok(PaperIndex::build(records, resolution)?.collaboration_network(mode))
}

/// Directed institution graph; `i -> j` counts (citing paper, cited paper)
/// events between the two institutions.
pub fn build_citation_network(
    records: &[PublicationRecord],
    resolution: &Resolution,
) -> Result<WeightedGraph, NetError> {
    Ok(PaperIndex::build(records, resolution)?.citation_network())
}

pub fn cumulative_snapshots(
    records: &[PublicationRecord],
    resolution: &Resolution,
    kind: NetworkKind,
    years: &[i32],
    mode: EdgeWeightMode,
) -> Result<SnapshotSeries, NetError> {
    PaperIndex::build(records, resolution)?.snapshots(kind, years, mode)
}

/// Collapses institutions into one node per category.
///
/// Node categories come from `categories` when present there, else from the
/// node's own attribute. Within-category edges land on the category
/// self-loop. Super-node `paper_count` is the number of distinct papers in
/// `index` with at least one member institution.
pub fn aggregate_supernodes(
    g: &WeightedGraph,
    categories: &BTreeMap<String, CategoryCode>,
    index: &PaperIndex,
) -> WeightedGraph {
    let category_of = |id: &str| -> CategoryCode {
        categories
            .get(id)
            .copied()
            .unwrap_or_else(|| g.node(id).expect("node exists").category)
    };
    let mut out = WeightedGraph::new(g.is_directed());
    let mut members: BTreeMap<CategoryCode, BTreeSet<&str>> = BTreeMap::new();
    for id in g.node_ids() {
        let cat = category_of(id);
        members.entry(cat).or_default().insert(id);
        out.ensure_node(cat.code(), || NodeAttrs {
            category: cat,
            location: None,
            paper_count: 0,
        });
    }
    for (u, v, w) in g.edges() {
        out.add_weight(category_of(u).code(), category_of(v).code(), w);
    }
    for (cat, ids) in &members {
        let papers = index
            .papers()
            .iter()
            .filter(|p| p.institutions.keys().any(|i| ids.contains(i.as_str())))
            .count() as u64;
        out.ensure_node(cat.code(), || unreachable!()).paper_count = papers;
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotSeries {
    pub snapshots: Vec<(i32, WeightedGraph)>,
}

impl SnapshotSeries {
    pub fn years(&self) -> impl Iterator<Item = i32> + '_ {
        self.snapshots.iter().map(|(y, _)| *y)
    }

    /// Checks that nodes, edges, weights and paper counts never shrink.
    pub fn is_monotone(&self) -> bool {
        self.snapshots.windows(2).all(|w| {
            let (prev, next) = (&w[0].1, &w[1].1);
            prev.nodes().all(|(id, a)| {
                next.node(id)
                    .is_some_and(|b| b.paper_count >= a.paper_count)
            }) && prev.edges().all(|(u, v, wt)| next.weight(u, v) >= wt)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::AuthorAffiliation;
    use crate::resolve::{Institution, Origin, Registry, Resolver, ResolverConfig};

    fn registry() -> Registry {
        let inst = |id: &str, cat| Institution {
            canonical_id: id.into(),
            display_name: format!("Institute {id}"),
            category: cat,
            pincode: None,
            origin: Origin::Domestic,
            location: None,
        };
        Registry::new([
            inst("A", CategoryCode::Nri),
            inst("B", CategoryCode::Nri),
            inst("C", CategoryCode::Su),
        ])
        .unwrap()
    }

    /// `authors` lists, per author, the institution ids they are affiliated with.
    fn paper(id: &str, year: i32, authors: &[&[&str]], cited: &[&str]) -> PublicationRecord {
        PublicationRecord {
            paper_id: id.into(),
            year,
            authorships: authors
                .iter()
                .enumerate()
                .map(|(k, insts)| AuthorAffiliation {
                    author_key: format!("{id}-{k}"),
                    raw_affiliations: insts.iter().map(|i| format!("Institute {i}")).collect(),
                })
                .collect(),
            cited_ids: cited.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn resolve(records: &[PublicationRecord]) -> Resolution {
        let resolver = Resolver::new(
            ResolverConfig::default(),
            registry(),
            BTreeMap::new(),
            vec![],
        )
        .unwrap();
        resolver.resolve(records.iter().flat_map(|r| r.raw_affiliations()))
    }

    #[test]
    fn pair_products_and_self_loop() {
        let recs = [paper("p1", 2000, &[&["A"], &["A"], &["B"]], &[])];
        let g = build_collaboration_network(&recs, &resolve(&recs), EdgeWeightMode::Pairs).unwrap();
        assert_eq!(g.weight("A", "B"), 2);
        assert_eq!(g.weight("A", "A"), 1);
        assert_eq!(g.total_weight(), 3);
    }

    #[test]
    fn accumulation_over_papers() {
        let recs = [
            paper("p1", 2000, &[&["A"], &["B"]], &[]),
            paper("p2", 2001, &[&["A"], &["B"]], &[]),
        ];
        let g = build_collaboration_network(&recs, &resolve(&recs), EdgeWeightMode::Pairs).unwrap();
        assert_eq!(g.weight("A", "B"), 2);
        assert_eq!(g.node("A").unwrap().paper_count, 2);
    }

    #[test]
    fn single_author_paper_has_no_edges() {
        let recs = [paper("p1", 2000, &[&["A"]], &[])];
        let g = build_collaboration_network(&recs, &resolve(&recs), EdgeWeightMode::Pairs).unwrap();
        assert!(g.contains_node("A"));
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn papers_mode_counts_shared_papers() {
        let recs = [
            paper("p1", 2000, &[&["A"], &["A"], &["A"], &["B"], &["B"]], &[]),
            paper("p2", 2000, &[&["A"], &["B"]], &[]),
        ];
        let res = resolve(&recs);
        let pairs = build_collaboration_network(&recs, &res, EdgeWeightMode::Pairs).unwrap();
        let papers = build_collaboration_network(&recs, &res, EdgeWeightMode::Papers).unwrap();
        assert_eq!(pairs.weight("A", "B"), 3 * 2 + 1);
        assert_eq!(pairs.weight("A", "A"), 3);
        assert_eq!(pairs.weight("B", "B"), 1);
        assert_eq!(papers.weight("A", "B"), 2);
        assert_eq!(papers.weight("A", "A"), 1);
    }

    #[test]
    fn multi_affiliation_author_counts_at_each_institution() {
        // one author at A and B, plus the same raw string twice
        let mut rec = paper("p1", 2000, &[&["A", "B", "A"]], &[]);
        rec.authorships[0]
            .raw_affiliations
            .push("Institute A".into());
        let recs = [rec];
        let idx = PaperIndex::build(&recs, &resolve(&recs)).unwrap();
        assert_eq!(idx.papers()[0].institutions["A"], 1);
        assert_eq!(idx.papers()[0].institutions["B"], 1);
    }

    #[test]
    fn citation_examples() {
        let recs = [
            paper("q", 1990, &[&["B"]], &[]),
            paper("r", 1991, &[&["B"]], &[]),
            paper("p", 1995, &[&["A"]], &["q", "r"]),
            paper("s", 1996, &[&["A"], &["B"]], &["q", "outside"]),
        ];
        let res = resolve(&recs);
        let g = build_citation_network(&recs, &res).unwrap();
        assert!(g.is_directed());
        // p cites q and r (both at B): 2; s at {A, B} cites q at {B}: A->B and B->B
        assert_eq!(g.weight("A", "B"), 3);
        assert_eq!(g.weight("B", "B"), 1);
        assert_eq!(g.weight("B", "A"), 0);
        let idx = PaperIndex::build(&recs, &res).unwrap();
        assert_eq!(idx.external_citations(), 1);
    }

    #[test]
    fn unresolved_affiliation_errors() {
        let recs = [paper("p1", 2000, &[&["A"]], &[])];
        let empty = Resolution {
            map: Default::default(),
            registry: registry(),
        };
        assert!(matches!(
            build_collaboration_network(&recs, &empty, EdgeWeightMode::Pairs),
            Err(NetError::UnresolvedAffiliation(raw)) if raw == "Institute A"
        ));
    }

    #[test]
    fn supernode_examples() {
        let recs = [
            paper("p1", 2000, &[&["A"], &["C"]], &[]),
            paper("p2", 2000, &[&["A"], &["C"]], &[]),
            paper("p3", 2000, &[&["B"], &["C"]], &[]),
            paper("p4", 2000, &[&["B"], &["C"]], &[]),
            paper("p5", 2000, &[&["B"], &["C"]], &[]),
            paper("p6", 2000, &[&["A"], &["B"]], &[]),
        ];
        let res = resolve(&recs);
        let idx = PaperIndex::build(&recs, &res).unwrap();
        let g = idx.collaboration_network(EdgeWeightMode::Pairs);
        let s = aggregate_supernodes(&g, &BTreeMap::new(), &idx);
        assert_eq!(s.weight("NRI", "SU"), 5);
        assert_eq!(s.weight("NRI", "NRI"), 1);
        assert_eq!(s.total_weight(), g.total_weight());
        assert_eq!(s.node("NRI").unwrap().paper_count, 6);
        assert_eq!(s.node("SU").unwrap().paper_count, 5);

        let all_nri: BTreeMap<String, CategoryCode> = ["A", "B", "C"]
            .iter()
            .map(|k| (k.to_string(), CategoryCode::Nri))
            .collect();
        let one = aggregate_supernodes(&g, &all_nri, &idx);
        assert_eq!(one.node_count(), 1);
        assert_eq!(one.weight("NRI", "NRI"), g.total_weight());
    }

    #[test]
    fn snapshot_filters_by_year() {
        let recs = [
            paper("p1", 1970, &[&["A"], &["B"]], &[]),
            paper("p2", 1980, &[&["A"], &["C"]], &["p1"]),
        ];
        let res = resolve(&recs);
        let idx = PaperIndex::build(&recs, &res).unwrap();
        let series = idx
            .snapshots(
                NetworkKind::Collaboration,
                &[1960, 1975, 1980],
                EdgeWeightMode::Pairs,
            )
            .unwrap();
        assert!(series.snapshots[0].1.is_empty());
        let mid = &series.snapshots[1].1;
        assert_eq!(mid.weight("A", "B"), 1);
        assert!(!mid.contains_node("C"));
        assert_eq!(
            series.snapshots[2].1,
            idx.collaboration_network(EdgeWeightMode::Pairs)
        );
        assert!(series.is_monotone());

        let cites = idx
            .snapshots(NetworkKind::Citation, &[1975, 1980], EdgeWeightMode::Pairs)
            .unwrap();
        assert_eq!(cites.snapshots[0].1.edge_count(), 0);
        assert_eq!(cites.snapshots[1].1, idx.citation_network());
    }

    #[test]
    fn snapshot_years_must_increase() {
        let idx = PaperIndex::default();
        assert!(matches!(
            idx.snapshots(NetworkKind::Citation, &[1990, 1980], EdgeWeightMode::Pairs),
            Err(NetError::UnsortedYears)
        ));
    }

    #[test]
    fn common_papers_and_year_restriction() {
        let recs = [
            paper("p1", 1970, &[&["A"], &["B"]], &[]),
            paper("p2", 1980, &[&["A"], &["A"], &["B"]], &["p1"]),
            paper("p3", 1990, &[&["B"]], &["p2"]),
        ];
        let idx = PaperIndex::build(&recs, &resolve(&recs)).unwrap();
        assert_eq!(idx.common_papers("A", "B"), 2);
        assert_eq!(idx.common_papers("B", "A"), 2);
        assert_eq!(idx.common_papers("A", "A"), 1);
        assert_eq!(idx.common_papers("A", "C"), 0);
        let later = idx.restrict_years(1980, 1990);
        assert_eq!(later.papers().len(), 2);
        assert_eq!(later.paper_count("A"), 1);
        assert_eq!(later.papers()[1].cited, vec![0]);
        assert_eq!(later.papers()[0].cited, Vec::<usize>::new());
    }

    #[test]
    fn weight_mode_parses() {
        assert_eq!(
            "pairs".parse::<EdgeWeightMode>().unwrap(),
            EdgeWeightMode::Pairs
        );
        assert_eq!(
            "papers".parse::<EdgeWeightMode>().unwrap(),
            EdgeWeightMode::Papers
        );
        assert!("authors".parse::<EdgeWeightMode>().is_err());
    }
}
