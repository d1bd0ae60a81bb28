//! Explicit Hasse-diagram catalogs: irreducibles and critical pairs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::DiagramError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Solid,
    Dotted,
    Dashed,
}

/// Named nodes with solid covering edges `(lower, upper)`; dotted and dashed
/// entries are annotated pairs `(x, y)` read from a figure, not order edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramCatalog {
    pub nodes: Vec<String>,
    pub edges: Vec<(usize, usize, EdgeKind)>,
}

#[derive(Serialize, Deserialize)]
struct CatalogJson {
    nodes: Vec<String>,
    edges: Vec<(String, String, EdgeKind)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CatalogReport {
    pub missing: Vec<(String, String)>,
    pub unexpected: Vec<(String, String)>,
}

impl CatalogReport {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty()
    }
}

impl DiagramCatalog {
    pub fn solid(nodes: Vec<String>, edges: Vec<(usize, usize)>) -> Self {
        DiagramCatalog { nodes, edges: edges.into_iter().map(|(a, b)| (a, b, EdgeKind::Solid)).collect() }
    }

    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        let raw: CatalogJson =
            serde_json::from_str(text).map_err(|e| DiagramError::NotAHasseDiagram(e.to_string()))?;
        let mut seen = BTreeSet::new();
        for n in &raw.nodes {
            if !seen.insert(n) {
                return Err(DiagramError::NotAHasseDiagram(format!("duplicate node {n}")));
            }
        }
        let idx = |s: &str| raw.nodes.iter().position(|n| n == s).ok_or_else(|| DiagramError::UnknownNode(s.into()));
        let edges = raw
            .edges
            .iter()
            .map(|(a, b, k)| Ok((idx(a)?, idx(b)?, *k)))
            .collect::<Result<Vec<_>, DiagramError>>()?;
        let d = DiagramCatalog { nodes: raw.nodes.clone(), edges };
        d.order()?;
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        let raw = CatalogJson {
            nodes: self.nodes.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b, k)| (self.nodes[a].clone(), self.nodes[b].clone(), k))
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("serializable")
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index(&self, name: &str) -> Result<usize, DiagramError> {
        self.nodes.iter().position(|n| n == name).ok_or_else(|| DiagramError::UnknownNode(name.into()))
    }

    pub fn solid_edges(&self) -> Vec<(usize, usize)> {
        self.edges.iter().filter(|e| e.2 == EdgeKind::Solid).map(|&(a, b, _)| (a, b)).collect()
    }

    pub fn annotated_pairs(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.edges.iter().filter(|e| e.2 != EdgeKind::Solid).map(|&(a, b, _)| (a, b)).collect();
        v.sort_unstable();
        v
    }

    /// Reflexive-transitive closure of the solid edges.
    pub fn order(&self) -> Result<Vec<Vec<bool>>, DiagramError> {
        let k = self.nodes.len();
        let mut rel = vec![vec![false; k]; k];
        for (x, row) in rel.iter_mut().enumerate() {
            row[x] = true;
        }
        for (a, b) in self.solid_edges() {
            rel[a][b] = true;
        }
        for z in 0..k {
            for x in 0..k {
                if rel[x][z] {
                    for y in 0..k {
                        if rel[z][y] {
                            rel[x][y] = true;
                        }
                    }
                }
            }
        }
        for x in 0..k {
            for y in 0..x {
                if rel[x][y] && rel[y][x] {
                    return Err(DiagramError::NotAHasseDiagram(format!(
                        "cycle through {} and {}",
                        self.nodes[x], self.nodes[y]
                    )));
                }
            }
        }
        Ok(rel)
    }

    /// Solid edges implied by other solid edges (none in a genuine diagram).
    pub fn redundant_edges(&self) -> Vec<(usize, usize)> {
        let order = self.order().expect("valid catalog");
        let k = self.len();
        let lt = |a: usize, b: usize| a != b && order[a][b];
        self.solid_edges().into_iter().filter(|&(a, b)| (0..k).any(|z| lt(a, z) && lt(z, b))).collect()
    }

    /// Connected components of the solid edges, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let k = self.len();
        let mut comp: Vec<usize> = (0..k).collect();
        fn root(c: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while c[r] != r {
                r = c[r];
            }
            c[x] = r;
            r
        }
        for (a, b) in self.solid_edges() {
            let (ra, rb) = (root(&mut comp, a), root(&mut comp, b));
            comp[ra.max(rb)] = ra.min(rb);
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut seen_roots: Vec<usize> = Vec::new();
        for x in 0..k {
            let r = root(&mut comp, x);
            match seen_roots.iter().position(|&s| s == r) {
                Some(g) => groups[g].push(x),
                None => {
                    seen_roots.push(r);
                    groups.push(vec![x]);
                }
            }
        }
        groups
    }

    fn component_of(&self) -> Vec<usize> {
        let mut c = vec![0; self.len()];
        for (g, members) in self.components().iter().enumerate() {
            for &x in members {
                c[x] = g;
            }
        }
        c
    }

    /// Exact join-irreducibles: `x` is not the least upper bound (within its
    /// component) of the elements strictly below it. Component bottoms are
    /// empty joins and are excluded.
    pub fn join_irreducibles(&self) -> BTreeSet<usize> {
        let order = self.order().expect("valid catalog");
        irreducibles(&order, &self.component_of())
    }

    pub fn meet_irreducibles(&self) -> BTreeSet<usize> {
        let order = self.order().expect("valid catalog");
        let k = self.len();
        let dual: Vec<Vec<bool>> = (0..k).map(|x| (0..k).map(|y| order[y][x]).collect()).collect();
        irreducibles(&dual, &self.component_of())
    }

    /// Nodes with exactly one lower cover.
    pub fn join_irreducibles_by_edges(&self) -> BTreeSet<usize> {
        let solid = self.solid_edges();
        (0..self.len()).filter(|&x| solid.iter().filter(|e| e.1 == x).count() == 1).collect()
    }

    pub fn meet_irreducibles_by_edges(&self) -> BTreeSet<usize> {
        let solid = self.solid_edges();
        (0..self.len()).filter(|&x| solid.iter().filter(|e| e.0 == x).count() == 1).collect()
    }

    /// Pairs `(x, y)` in a common component with `x` minimal in
    /// `J \ ↓y` and `y` maximal in `M \ ↑x`.
    pub fn critical_pairs(&self) -> Vec<(usize, usize)> {
        let order = self.order().expect("valid catalog");
        let comp = self.component_of();
        let joins = self.join_irreducibles();
        let meets = self.meet_irreducibles();
        let k = self.len();
        let lt = |a: usize, b: usize| a != b && order[a][b];
        let mut out = Vec::new();
        for x in 0..k {
            for y in 0..k {
                if comp[x] != comp[y] || !joins.contains(&x) || !meets.contains(&y) || order[x][y] {
                    continue;
                }
                // x minimal in J \ ↓y
                let x_min = !joins.iter().any(|&z| comp[z] == comp[x] && lt(z, x) && !order[z][y]);
                // y maximal in M \ ↑x
                let y_max = !meets.iter().any(|&z| comp[z] == comp[y] && lt(y, z) && !order[x][z]);
                if x_min && y_max {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn verify_catalog(&self, expected: &[(usize, usize)]) -> CatalogReport {
        let got: BTreeSet<_> = self.critical_pairs().into_iter().collect();
        let want: BTreeSet<_> = expected.iter().copied().collect();
        let name = |&(a, b): &(usize, usize)| (self.nodes[a].clone(), self.nodes[b].clone());
        CatalogReport {
            missing: want.difference(&got).map(name).collect(),
            unexpected: got.difference(&want).map(name).collect(),
        }
    }

    /// Critical pairs against the catalog's own dotted/dashed annotation.
    pub fn verify_annotations(&self) -> CatalogReport {
        self.verify_catalog(&self.annotated_pairs())
    }

    pub fn to_dot(&self) -> String {
        crate::monoid::diagram_dot(&self.nodes, &self.solid_edges())
    }
}

fn irreducibles(order: &[Vec<bool>], comp: &[usize]) -> BTreeSet<usize> {
    let k = order.len();
    (0..k)
        .filter(|&x| {
            let below: Vec<usize> = (0..k).filter(|&y| y != x && order[y][x]).collect();
            let uppers = (0..k).filter(|&u| comp[u] == comp[x] && below.iter().all(|&y| order[y][u]));
            // x is reducible exactly when it is the least upper bound of `below`
            let is_lub = uppers.clone().all(|u| order[x][u]);
            !is_lub
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(nodes: &[&str], edges: &[(usize, usize)]) -> DiagramCatalog {
        DiagramCatalog::solid(nodes.iter().map(|s| s.to_string()).collect(), edges.to_vec())
    }

    #[test]
    fn chain_irreducibles() {
        let d = named(&["a", "b"], &[(0, 1)]);
        assert_eq!(d.join_irreducibles(), BTreeSet::from([1]));
        assert_eq!(d.meet_irreducibles(), BTreeSet::from([0]));
        // the only unrefuted candidate in a chain is a reversed cover
        assert_eq!(d.critical_pairs(), vec![(1, 0)]);
        let d3 = named(&["a", "b", "c"], &[(0, 1), (1, 2)]);
        assert_eq!(d3.critical_pairs(), vec![(1, 0), (2, 1)]);
    }

    #[test]
    fn diamond_top_is_reducible() {
        let d = named(&["0", "a", "b", "1"], &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(d.join_irreducibles(), BTreeSet::from([1, 2]));
        assert_eq!(d.critical_pairs(), vec![(1, 2), (2, 1)]);
    }

    #[test]
    fn json_round_trip() {
        let d = named(&["a", "b"], &[(0, 1)]);
        let back = DiagramCatalog::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
        let cyc = r#"{"nodes":["a","b"],"edges":[["a","b","solid"],["b","a","solid"]]}"#;
        assert!(DiagramCatalog::from_json(cyc).is_err());
    }
}
