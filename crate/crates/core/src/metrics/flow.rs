//! Knowledge flow scores, giant component and knowledge hubs on the citation network.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::view::SimpleView;
use super::MetricsError;
use crate::netbuild::WeightedGraph;

/// Per-node citation balance. `f_out` rates a node as a knowledge source
/// (being cited), `f_in` as a sink (citing) and is never positive.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowScore {
    pub node: String,
    pub f_in: f64,
    pub f_out: f64,
    pub k_in: usize,
    pub k_out: usize,
    pub w_in: u64,
    pub w_out: u64,
}

/// Predecessors, successors, weight in, weight out.
type Tally<'a> = (BTreeSet<&'a str>, BTreeSet<&'a str>, u64, u64);

/// Flow scores per node, ascending id order. Self-loops are ignored;
/// undirected edges count in both directions.
pub fn knowledge_flow(g: &WeightedGraph) -> Vec<FlowScore> {
    let mut stats: BTreeMap<&str, Tally> =
        g.node_ids().map(|id| (id, Default::default())).collect();
    for (u, v, w) in g.edges().filter(|(u, v, _)| u != v) {
        let dirs: &[(&str, &str)] = if g.is_directed() {
            &[(u, v)]
        } else {
            &[(u, v), (v, u)]
        };
        for &(a, b) in dirs {
            let (_, succ, _, w_out) = stats.get_mut(a).expect("endpoint exists");
            succ.insert(b);
            *w_out += w;
            let (pred, _, w_in, _) = stats.get_mut(b).expect("endpoint exists");
            pred.insert(a);
            *w_in += w;
        }
    }
    stats
        .into_iter()
        .map(|(node, (pred, succ, w_in, w_out))| {
            let (k_in, k_out) = (pred.len(), succ.len());
            let total = (w_in + w_out) as f64;
            let (f_out, f_in) = if total > 0.0 {
                (
                    k_in as f64 * w_in as f64 / total,
                    -(k_out as f64) * w_out as f64 / total,
                )
            } else {
                (0.0, 0.0)
            };
            FlowScore {
                node: node.to_string(),
                f_in,
                f_out,
                k_in,
                k_out,
                w_in,
                w_out,
            }
        })
        .collect()
}

/// Largest weakly connected component. Equal sizes resolve to the
/// component whose sorted member list is lexicographically smallest.
pub fn giant_connected_component(g: &WeightedGraph) -> Result<BTreeSet<String>, MetricsError> {
    if g.is_empty() {
        return Err(MetricsError::EmptyGraph);
    }
    let view = SimpleView::new(g);
    let n = view.len();
    let mut seen = vec![false; n];
    let mut best: Option<Vec<usize>> = None;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut members = Vec::new();
        while let Some(v) = stack.pop() {
            members.push(v);
            for &w in view.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        // indices follow id order, so sorting indices sorts ids
        members.sort_unstable();
        let better = match &best {
            None => true,
            Some(b) => members.len() > b.len() || (members.len() == b.len() && members < *b),
        };
        if better {
            best = Some(members);
        }
    }
    Ok(best
        .unwrap_or_default()
        .into_iter()
        .map(|i| view.id(i).to_string())
        .collect())
}

/// Summed incoming edge weight per node, self-loops excluded.
pub fn weighted_in_degree(g: &WeightedGraph) -> BTreeMap<String, u64> {
    let mut out: BTreeMap<String, u64> = g.node_ids().map(|id| (id.to_string(), 0)).collect();
    for (u, v, w) in g.edges() {
        if u == v {
            continue;
        }
        *out.get_mut(v).expect("endpoint exists") += w;
        if !g.is_directed() {
            *out.get_mut(u).expect("endpoint exists") += w;
        }
    }
    out
}

/// GCC nodes ranked by weighted in-degree, heaviest first, ties by id.
pub fn top_knowledge_hubs(g: &WeightedGraph, k: usize) -> Vec<(String, u64)> {
    let Ok(gcc) = giant_connected_component(g) else {
        return Vec::new();
    };
    let mut ranked: Vec<(String, u64)> = weighted_in_degree(g)
        .into_iter()
        .filter(|(id, _)| gcc.contains(id))
        .collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked.truncate(k);
    ranked
}
