//! Per-category productivity and category-level adjacency matrices.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use serde::Serialize;

use crate::netbuild::{PaperIndex, WeightedGraph};
use crate::resolve::CategoryCode;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CategoryRow {
    pub category: CategoryCode,
    /// Distinct papers with at least one institution of the category.
    pub papers: u64,
    pub institutions: u64,
}

impl CategoryRow {
    /// Exact papers-per-institute ratio.
    pub fn ratio(&self) -> Ratio<u64> {
        Ratio::new(self.papers, self.institutions)
    }

    pub fn papers_per_institute(&self) -> f64 {
        self.papers as f64 / self.institutions as f64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CategoryTable {
    pub rows: BTreeMap<CategoryCode, CategoryRow>,
}

impl CategoryTable {
    pub fn get(&self, category: CategoryCode) -> Option<&CategoryRow> {
        self.rows.get(&category)
    }

    /// Categories by descending papers per institute, ties in code order.
    pub fn productivity_order(&self) -> Vec<CategoryCode> {
        let mut rows: Vec<&CategoryRow> = self.rows.values().collect();
        rows.sort_by(|a, b| b.ratio().cmp(&a.ratio()).then(a.category.cmp(&b.category)));
        rows.into_iter().map(|r| r.category).collect()
    }
}

/// Papers, institutions and their ratio for every category present in the corpus.
/// A paper counts once toward each category it touches.
pub fn productivity_table(index: &PaperIndex) -> CategoryTable {
    let mut institutions: BTreeMap<CategoryCode, u64> = BTreeMap::new();
    for id in index.institution_ids() {
        let cat = index.category(id).expect("indexed institution");
        *institutions.entry(cat).or_default() += 1;
    }
    let mut papers: BTreeMap<CategoryCode, u64> = BTreeMap::new();
    for paper in index.papers() {
        let cats: BTreeSet<CategoryCode> = paper
            .institutions
            .keys()
            .filter_map(|i| index.category(i))
            .collect();
        for c in cats {
            *papers.entry(c).or_default() += 1;
        }
    }
    let rows = institutions
        .into_iter()
        .map(|(category, institutions)| {
            let row = CategoryRow {
                category,
                papers: papers.get(&category).copied().unwrap_or(0),
                institutions,
            };
            (category, row)
        })
        .collect();
    CategoryTable { rows }
}

/// Dense `(row, column, weight)` cells of a super-node graph in `order`.
/// Undirected graphs come out symmetric; directed ones read `row -> column`.
pub fn category_matrix(
    supernodes: &WeightedGraph,
    order: &[CategoryCode],
) -> Vec<(CategoryCode, CategoryCode, u64)> {
    let mut cells = Vec::with_capacity(order.len() * order.len());
    for &row in order {
        for &col in order {
            cells.push((row, col, supernodes.weight(row.code(), col.code())));
        }
    }
    cells
}
