//! Degree, clustering, betweenness and PageRank on the binarized view.

use std::collections::{BTreeMap, VecDeque};

use num_traits::{FromPrimitive, Num};
use rayon::prelude::*;
use serde::Serialize;

use super::view::SimpleView;
use crate::netbuild::WeightedGraph;
use crate::resolve::CategoryCode;

/// Sources handled per parallel task. Fixed so partial sums merge in the
/// same order whatever the thread count.
const SOURCES_PER_TASK: usize = 16;

/// Brandes accumulation over the undirected view, generic over the score
/// type so exact rationals can stand in for `f64`.
///
/// Each unordered pair `{s, t}` is counted once.
pub fn betweenness_scores<T>(view: &SimpleView) -> Vec<T>
where
    T: Num + FromPrimitive + Clone + Send + Sync,
{
    let n = view.len();
    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<T>> = sources
        .par_chunks(SOURCES_PER_TASK)
        .map(|chunk| {
            let mut acc = vec![T::zero(); n];
            for &s in chunk {
                accumulate_from(view, s, &mut acc);
            }
            acc
        })
        .collect();
    let two = T::from_u8(2).expect("2 is representable");
    let mut total = vec![T::zero(); n];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t = t.clone() + p;
        }
    }
    total.into_iter().map(|t| t / two.clone()).collect()
}

fn accumulate_from<T>(view: &SimpleView, s: usize, acc: &mut [T])
where
    T: Num + Clone,
{
    let n = view.len();
    let mut order = Vec::with_capacity(n);
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut sigma = vec![T::zero(); n];
    let mut dist = vec![usize::MAX; n];
    sigma[s] = T::one();
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in view.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] = sigma[w].clone() + sigma[v].clone();
                preds[w].push(v);
            }
        }
    }
    let mut delta = vec![T::zero(); n];
    for &w in order.iter().rev() {
        let coeff = (T::one() + delta[w].clone()) / sigma[w].clone();
        for &v in &preds[w] {
            delta[v] = delta[v].clone() + sigma[v].clone() * coeff.clone();
        }
        if w != s {
            acc[w] = acc[w].clone() + delta[w].clone();
        }
    }
}

/// Unnormalized betweenness per node id.
pub fn betweenness_all(g: &WeightedGraph) -> BTreeMap<String, f64> {
    let view = SimpleView::new(g);
    let scores = betweenness_scores::<f64>(&view);
    view.ids().iter().cloned().zip(scores).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PageRankParams {
    pub damping: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PageRankParams {
    fn default() -> Self {
        Self {
            damping: 0.85,
            tol: 1e-10,
            max_iter: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PageRank {
    pub scores: BTreeMap<String, f64>,
    pub iterations: usize,
    /// `false` means `max_iter` ran out; `scores` holds the last iterate.
    pub converged: bool,
}

/// Power iteration from the uniform vector; dangling mass is spread uniformly.
pub fn pagerank(g: &WeightedGraph, params: PageRankParams) -> PageRank {
    let view = SimpleView::new(g);
    let (scores, iterations, converged) = pagerank_view(&view, params);
    PageRank {
        scores: view.ids().iter().cloned().zip(scores).collect(),
        iterations,
        converged,
    }
}

pub(crate) fn pagerank_view(view: &SimpleView, params: PageRankParams) -> (Vec<f64>, usize, bool) {
    let n = view.len();
    if n == 0 {
        return (Vec::new(), 0, true);
    }
    let nf = n as f64;
    let d = params.damping;
    let mut x = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < params.max_iter {
        iterations += 1;
        let dangling: f64 = (0..n)
            .filter(|&u| view.successors(u).is_empty())
            .map(|u| x[u])
            .sum();
        let base = (1.0 - d) / nf + d * dangling / nf;
        next.iter_mut().for_each(|v| *v = base);
        for (u, &xu) in x.iter().enumerate() {
            let out = view.successors(u);
            if out.is_empty() {
                continue;
            }
            let share = d * xu / out.len() as f64;
            for &v in out {
                next[v] += share;
            }
        }
        let change: f64 = x.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut x, &mut next);
        if change < params.tol {
            converged = true;
            break;
        }
    }
    let sum: f64 = x.iter().sum();
    x.iter_mut().for_each(|v| *v /= sum);
    (x, iterations, converged)
}

pub(crate) fn clustering_view(view: &SimpleView) -> Vec<f64> {
    (0..view.len())
        .map(|v| {
            let nbrs = view.neighbors(v);
            let k = nbrs.len();
            if k < 2 {
                return 0.0;
            }
            let mut links = 0usize;
            for (i, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[i + 1..] {
                    if view.adjacent(a, b) {
                        links += 1;
                    }
                }
            }
            links as f64 / (k * (k - 1) / 2) as f64
        })
        .collect()
}

/// Local clustering coefficient; self-loops and weights ignored.
pub fn local_clustering(g: &WeightedGraph) -> BTreeMap<String, f64> {
    let view = SimpleView::new(g);
    let c = clustering_view(&view);
    view.ids().iter().cloned().zip(c).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeMetrics {
    pub node: String,
    pub degree: usize,
    pub clustering: f64,
    pub betweenness: f64,
    pub pagerank: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeMetricsTable {
    pub rows: Vec<NodeMetrics>,
    pub pagerank_converged: bool,
    pub pagerank_iterations: usize,
}

/// Every per-node centrality in one pass over the binarized view.
pub fn node_metrics(g: &WeightedGraph, params: PageRankParams) -> NodeMetricsTable {
    let view = SimpleView::new(g);
    let betweenness = betweenness_scores::<f64>(&view);
    let clustering = clustering_view(&view);
    let (pr, iterations, converged) = pagerank_view(&view, params);
    let rows = (0..view.len())
        .map(|i| NodeMetrics {
            node: view.id(i).to_string(),
            degree: view.degree(i),
            clustering: clustering[i],
            betweenness: betweenness[i],
            pagerank: pr[i],
        })
        .collect();
    NodeMetricsTable {
        rows,
        pagerank_converged: converged,
        pagerank_iterations: iterations,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CategoryCentrality {
    pub members: usize,
    pub avg_degree: f64,
    pub avg_clustering: f64,
    pub avg_betweenness: f64,
    pub avg_pagerank: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CategoryCentralitySummary {
    pub by_category: BTreeMap<CategoryCode, CategoryCentrality>,
    /// UGC categories with no member node in the graph.
    pub empty: Vec<CategoryCode>,
}

/// Mean of each centrality over the institutions of every category.
pub fn category_centrality_summary(
    table: &NodeMetricsTable,
    categories: &BTreeMap<String, CategoryCode>,
) -> CategoryCentralitySummary {
    let mut groups: BTreeMap<CategoryCode, Vec<&NodeMetrics>> = BTreeMap::new();
    for row in &table.rows {
        if let Some(&cat) = categories.get(&row.node) {
            groups.entry(cat).or_default().push(row);
        }
    }
    let by_category = groups
        .into_iter()
        .map(|(cat, rows)| {
            let n = rows.len() as f64;
            let mean = |f: &dyn Fn(&NodeMetrics) -> f64| rows.iter().map(|r| f(r)).sum::<f64>() / n;
            let summary = CategoryCentrality {
                members: rows.len(),
                avg_degree: mean(&|r| r.degree as f64),
                avg_clustering: mean(&|r| r.clustering),
                avg_betweenness: mean(&|r| r.betweenness),
                avg_pagerank: mean(&|r| r.pagerank),
            };
            (cat, summary)
        })
        .collect::<BTreeMap<_, _>>();
    let empty = CategoryCode::UGC
        .into_iter()
        .filter(|c| !by_category.contains_key(c))
        .collect();
    CategoryCentralitySummary { by_category, empty }
}
