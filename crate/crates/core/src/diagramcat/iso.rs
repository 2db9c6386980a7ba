//! Exact isomorphism of small mixed multigraphs by backtracking.

use std::collections::VecDeque;

use super::EdgeGraph;
use crate::actiongraph::MixedGraph;

/// Dense mixed multigraph: `und` is symmetric with loops on the diagonal,
/// `dir[i][j]` counts directed arrows `i → j`.
#[derive(Clone, Debug)]
pub(crate) struct Dense {
    pub n: usize,
    pub und: Vec<Vec<u64>>,
    pub dir: Vec<Vec<u64>>,
}

impl Dense {
    /// Induced subgraph on `subset` (in that order).
    pub fn from_mixed(g: &MixedGraph, subset: &[usize]) -> Dense {
        let n = subset.len();
        let mut pos = vec![usize::MAX; g.len()];
        for (k, &v) in subset.iter().enumerate() {
            pos[v] = k;
        }
        let mut d = Dense {
            n,
            und: vec![vec![0; n]; n],
            dir: vec![vec![0; n]; n],
        };
        for (&(i, j), &m) in &g.unoriented {
            let (a, b) = (pos[i], pos[j]);
            if a != usize::MAX && b != usize::MAX {
                d.und[a][b] = m;
                d.und[b][a] = m;
            }
        }
        for (&(i, j), &m) in &g.directed {
            let (a, b) = (pos[i], pos[j]);
            if a != usize::MAX && b != usize::MAX {
                d.dir[a][b] = m;
            }
        }
        d
    }

    pub fn from_edge_graph(g: &EdgeGraph) -> Dense {
        let n = g.len();
        let mut und = vec![vec![0; n]; n];
        for (i, row) in und.iter_mut().enumerate() {
            row[i] = g.loops()[i];
        }
        for (&(i, j), &m) in g.edges() {
            und[i][j] = m;
            und[j][i] = m;
        }
        Dense {
            n,
            und,
            dir: vec![vec![0; n]; n],
        }
    }

    fn adjacent(&self, i: usize, j: usize) -> bool {
        self.und[i][j] > 0 || self.dir[i][j] > 0 || self.dir[j][i] > 0
    }

    fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| u != v && self.adjacent(v, u)).collect()
    }

    fn distances(&self, root: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Local invariant: self-entries plus the sorted multiset of
    /// (unoriented, out, in) counts towards each neighbour.
    fn invariant(&self, v: usize) -> (u64, u64, Vec<(u64, u64, u64)>) {
        let mut nb: Vec<(u64, u64, u64)> = self
            .neighbors(v)
            .into_iter()
            .map(|u| (self.und[v][u], self.dir[v][u], self.dir[u][v]))
            .collect();
        nb.sort_unstable();
        (self.und[v][v], self.dir[v][v], nb)
    }

    fn compatible(&self, a: usize, b: usize, other: &Dense, x: usize, y: usize) -> bool {
        self.und[a][b] == other.und[x][y] && self.dir[a][b] == other.dir[x][y] && self.dir[b][a] == other.dir[y][x]
    }
}

type Key = (usize, (u64, u64, Vec<(u64, u64, u64)>));

/// Vertex map `a → b` preserving all multiplicities; `root = Some((r, s))`
/// forces `r ↦ s`.
pub(crate) fn find_isomorphism(a: &Dense, b: &Dense, root: Option<(usize, usize)>) -> Option<Vec<usize>> {
    if a.n != b.n {
        return None;
    }
    let n = a.n;
    if n == 0 {
        return Some(Vec::new());
    }
    let dist_a = root.map(|(r, _)| a.distances(r));
    let dist_b = root.map(|(_, s)| b.distances(s));
    let key = |g: &Dense, d: &Option<Vec<usize>>, v: usize| -> Key { (d.as_ref().map_or(0, |d| d[v]), g.invariant(v)) };
    let keys_a: Vec<Key> = (0..n).map(|v| key(a, &dist_a, v)).collect();
    let keys_b: Vec<Key> = (0..n).map(|v| key(b, &dist_b, v)).collect();
    let mut sa = keys_a.clone();
    let mut sb = keys_b.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }

    // order a's vertices so each one after a component start has an earlier neighbour
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut placed = vec![false; n];
    let mut starts: Vec<usize> = match root {
        Some((r, _)) => vec![r],
        None => Vec::new(),
    };
    starts.extend(0..n);
    for s in starts {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for u in a.neighbors(v) {
                if !placed[u] {
                    placed[u] = true;
                    parent[u] = v;
                    queue.push_back(u);
                }
            }
        }
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if let Some((r, s)) = root {
        if keys_a[r] != keys_b[s] {
            return None;
        }
        map[r] = s;
        used[s] = true;
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        k: usize,
        order: &[usize],
        parent: &[usize],
        a: &Dense,
        b: &Dense,
        keys_a: &[Key],
        keys_b: &[Key],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        if map[v] != usize::MAX {
            return extend(k + 1, order, parent, a, b, keys_a, keys_b, map, used);
        }
        let candidates: Vec<usize> = if parent[v] != usize::MAX {
            b.neighbors(map[parent[v]])
        } else {
            (0..b.n).collect()
        };
        for w in candidates {
            if used[w] || keys_a[v] != keys_b[w] {
                continue;
            }
            let ok = (0..a.n).all(|u| map[u] == usize::MAX || a.compatible(v, u, b, w, map[u]));
            if !ok {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if extend(k + 1, order, parent, a, b, keys_a, keys_b, map, used) {
                return true;
            }
            map[v] = usize::MAX;
            used[w] = false;
        }
        false
    }

    if extend(0, &order, &parent, a, b, &keys_a, &keys_b, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

pub fn edge_graphs_isomorphic(a: &EdgeGraph, b: &EdgeGraph) -> bool {
    a.len() == b.len()
        && a.degree_profile() == b.degree_profile()
        && find_isomorphism(&Dense::from_edge_graph(a), &Dense::from_edge_graph(b), None).is_some()
}

pub fn mixed_graphs_isomorphic(a: &MixedGraph, b: &MixedGraph) -> bool {
    let all_a: Vec<usize> = (0..a.len()).collect();
    let all_b: Vec<usize> = (0..b.len()).collect();
    find_isomorphism(&Dense::from_mixed(a, &all_a), &Dense::from_mixed(b, &all_b), None).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagramcat::{catalog_graph, catalog_mixed, DiagramFamily as F};

    fn relabel(g: &EdgeGraph, perm: &[usize]) -> EdgeGraph {
        let mut h = EdgeGraph::empty(g.len());
        for (&(i, j), &m) in g.edges() {
            h.add_edge(perm[i], perm[j], m).unwrap();
        }
        for (i, &l) in g.loops().iter().enumerate() {
            h.add_edge(perm[i], perm[i], l).unwrap();
        }
        h
    }

    #[test]
    fn relabelled_diagrams_are_isomorphic() {
        let perm = [3, 0, 6, 1, 5, 2, 4];
        for (f, s) in [(F::E7, 7), (F::AffE6, 7), (F::AffD, 7), (F::AffA, 7), (F::AffDL, 7)] {
            let g = catalog_graph(f, s).unwrap();
            assert!(edge_graphs_isomorphic(&g, &relabel(&g, &perm)), "{f}");
        }
    }

    #[test]
    fn distinct_diagrams_are_not() {
        let e7 = catalog_graph(F::E7, 7).unwrap();
        let d7 = catalog_graph(F::D, 7).unwrap();
        let a7 = catalog_graph(F::A, 7).unwrap();
        assert!(!edge_graphs_isomorphic(&e7, &d7));
        assert!(!edge_graphs_isomorphic(&a7, &d7));
        // same degree profile, different shape
        let e6 = catalog_graph(F::E6, 6).unwrap();
        let d6 = catalog_graph(F::D, 6).unwrap();
        assert_eq!(e6.degree_profile(), d6.degree_profile());
        assert!(!edge_graphs_isomorphic(&e6, &d6));
    }

    #[test]
    fn arrow_direction_matters() {
        let b = catalog_mixed(F::BInf, 6).unwrap();
        let c = catalog_mixed(F::CInf, 6).unwrap();
        assert!(!mixed_graphs_isomorphic(&b, &c));
        assert!(mixed_graphs_isomorphic(&b, &b.clone()));
        // B2 and C2 are the same picture read from the other end
        assert!(mixed_graphs_isomorphic(
            &catalog_mixed(F::B, 2).unwrap(),
            &catalog_mixed(F::C, 2).unwrap()
        ));
    }

    #[test]
    fn rooted_map_respects_root() {
        let p = catalog_mixed(F::A, 5).unwrap();
        let all: Vec<usize> = (0..5).collect();
        let d = Dense::from_mixed(&p, &all);
        assert!(find_isomorphism(&d, &d, Some((0, 4))).is_some());
        assert!(find_isomorphism(&d, &d, Some((0, 2))).is_none());
    }
}
