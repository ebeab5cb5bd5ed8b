use std::collections::HashMap;

use crate::netbuild::WeightedGraph;

/// Binarized adjacency without self-loops, nodes indexed in ascending id order.
#[derive(Debug, Clone)]
pub struct SimpleView {
    ids: Vec<String>,
    /// Neighbors ignoring direction, sorted and deduplicated.
    neighbors: Vec<Vec<usize>>,
    /// Out-neighbors; equal to `neighbors` for undirected graphs.
    successors: Vec<Vec<usize>>,
}

impl SimpleView {
    pub fn new(g: &WeightedGraph) -> Self {
        let ids: Vec<String> = g.node_ids().map(str::to_string).collect();
        let pos: HashMap<&str, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let n = ids.len();
        let mut neighbors = vec![Vec::new(); n];
        let mut successors = vec![Vec::new(); n];
        for (u, v, _) in g.edges() {
            if u == v {
                continue;
            }
            let (a, b) = (pos[u], pos[v]);
            neighbors[a].push(b);
            neighbors[b].push(a);
            successors[a].push(b);
            if !g.is_directed() {
                successors[b].push(a);
            }
        }
        for list in neighbors.iter_mut().chain(successors.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        Self {
            ids,
            neighbors,
            successors,
        }
    }

    /// Undirected view over `n` nodes named by their index.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = WeightedGraph::new(false);
        let name = |i: usize| format!("{i:04}");
        for i in 0..n {
            g.ensure_node(&name(i), || crate::netbuild::NodeAttrs {
                category: crate::resolve::CategoryCode::Unclassified,
                location: None,
                paper_count: 0,
            });
        }
        for &(u, v) in edges {
            g.add_weight(&name(u), &name(v), 1);
        }
        Self::new(&g)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.successors[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].binary_search(&b).is_ok()
    }
}
