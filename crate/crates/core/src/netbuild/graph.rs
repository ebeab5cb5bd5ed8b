use std::collections::BTreeMap;

use crate::geo::GeoPoint;
use crate::resolve::CategoryCode;

#[derive(Debug, Clone, PartialEq)]
pub struct NodeAttrs {
    pub category: CategoryCode,
    pub location: Option<GeoPoint>,
    pub paper_count: u64,
}

/// Node-attributed multigraph collapsed to integer edge weights.
///
/// Undirected graphs key each edge by its ordered endpoint pair `(min, max)`.
/// Self-loops are allowed. Every stored weight is strictly positive.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    directed: bool,
    nodes: BTreeMap<String, NodeAttrs>,
    edges: BTreeMap<(String, String), u64>,
}

impl WeightedGraph {
    pub fn new(directed: bool) -> Self {
        Self {
            directed,
            nodes: BTreeMap::new(),
            edges: BTreeMap::new(),
        }
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Inserts the node, or returns the existing attributes untouched.
    pub fn ensure_node(&mut self, id: &str, attrs: impl FnOnce() -> NodeAttrs) -> &mut NodeAttrs {
        if !self.nodes.contains_key(id) {
            self.nodes.insert(id.to_string(), attrs());
        }
        self.nodes.get_mut(id).expect("just inserted")
    }

    /// Adds `weight` to edge `(u, v)`. Both endpoints must already exist.
    pub fn add_weight(&mut self, u: &str, v: &str, weight: u64) {
        assert!(
            self.nodes.contains_key(u) && self.nodes.contains_key(v),
            "edge endpoint missing: {u} -> {v}"
        );
        if weight == 0 {
            return;
        }
        *self.edges.entry(self.key(u, v)).or_insert(0) += weight;
    }

    fn key(&self, u: &str, v: &str) -> (String, String) {
        if !self.directed && v < u {
            (v.to_string(), u.to_string())
        } else {
            (u.to_string(), v.to_string())
        }
    }

    pub fn weight(&self, u: &str, v: &str) -> u64 {
        let key = if !self.directed && v < u {
            (v, u)
        } else {
            (u, v)
        };
        self.edges
            .get(&(key.0.to_string(), key.1.to_string()))
            .copied()
            .unwrap_or(0)
    }

    pub fn node(&self, id: &str) -> Option<&NodeAttrs> {
        self.nodes.get(id)
    }

    pub fn contains_node(&self, id: &str) -> bool {
        self.nodes.contains_key(id)
    }

    /// Nodes in ascending id order.
    pub fn nodes(&self) -> impl Iterator<Item = (&str, &NodeAttrs)> {
        self.nodes.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn node_ids(&self) -> impl Iterator<Item = &str> {
        self.nodes.keys().map(String::as_str)
    }

    /// Edges in ascending `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, u64)> {
        self.edges
            .iter()
            .map(|((u, v), w)| (u.as_str(), v.as_str(), *w))
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}
