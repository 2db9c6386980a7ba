use std::collections::BTreeSet;

use super::ActionGraph;

/// Strongly connected components of an action graph window.
///
/// Components are numbered in a topological order of the condensation:
/// if some arrow leads from component `a` to component `b != a`, then `a < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccDecomposition {
    pub component_of: Vec<usize>,
    pub components: Vec<Vec<usize>>,
    /// Arrows of the condensation, `(from, to)` with `from < to`.
    pub condensation: BTreeSet<(usize, usize)>,
}

impl SccDecomposition {
    pub fn count(&self) -> usize {
        self.components.len()
    }

    /// Whether component `a` can reach component `b` in the condensation.
    pub fn reaches(&self, a: usize, b: usize) -> bool {
        if a == b {
            return true;
        }
        let mut seen = vec![false; self.count()];
        let mut stack = vec![a];
        seen[a] = true;
        while let Some(c) = stack.pop() {
            for &(_, t) in self.condensation.range((c, 0)..=(c, usize::MAX)) {
                if t == b {
                    return true;
                }
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        false
    }
}

/// Iterative Tarjan; linear in vertices plus distinct arrows.
pub fn scc(g: &ActionGraph) -> SccDecomposition {
    let n = g.len();
    let mut adj = vec![Vec::new(); n];
    for &(s, t) in g.arrows().keys() {
        adj[s].push(t);
    }

    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut next = 0usize;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // frames of (vertex, position in its adjacency list)
        let mut frames = vec![(root, 0usize)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
            if *pos < adj[v].len() {
                let w = adj[v][*pos];
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                found.push(comp);
            }
        }
    }

    // Tarjan emits sinks first
    found.reverse();
    let mut component_of = vec![0; n];
    for (c, comp) in found.iter().enumerate() {
        for &v in comp {
            component_of[v] = c;
        }
    }
    let condensation = g
        .arrows()
        .keys()
        .map(|&(s, t)| (component_of[s], component_of[t]))
        .filter(|(a, b)| a != b)
        .collect();
    SccDecomposition {
        component_of,
        components: found,
        condensation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actiongraph::{regular_graph, GraphKind, Vertex, Window, WindowShape};
    use crate::rootdata::{Family, RootSystem, Weight};

    fn bare(n: usize, arrows: &[(usize, usize)]) -> ActionGraph {
        let vertices = (0..n)
            .map(|i| Vertex {
                label: format!("v{i}"),
                weight: None,
                interior: true,
            })
            .collect();
        ActionGraph::new(
            GraphKind::Assembled,
            vertices,
            arrows.iter().map(|&p| (p, 1)),
            Window {
                shape: WindowShape::Complete,
                bound: 0,
            },
        )
        .unwrap()
    }

    #[test]
    fn two_way_path_is_one_component() {
        let rs = RootSystem::new(Family::A, 1).unwrap();
        let g = regular_graph(&rs, &Weight(vec![1]), 12).unwrap();
        let d = scc(&g);
        assert_eq!(d.count(), 1);
        assert_eq!(d.components[0], (0..13).collect::<Vec<_>>());
    }

    #[test]
    fn acyclic_gives_singletons_in_topological_order() {
        let g = bare(5, &[(0, 1), (1, 2), (0, 3), (3, 4), (2, 4)]);
        let d = scc(&g);
        assert_eq!(d.count(), 5);
        for &(s, t) in g.arrows().keys() {
            assert!(d.component_of[s] < d.component_of[t]);
        }
        assert!(d.reaches(d.component_of[0], d.component_of[4]));
        assert!(!d.reaches(d.component_of[4], d.component_of[0]));
    }

    #[test]
    fn cycles_with_bridge() {
        let g = bare(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]);
        let d = scc(&g);
        assert_eq!(d.count(), 2);
        assert_eq!(d.components[0], vec![0, 1, 2]);
        assert_eq!(d.components[1], vec![3, 4, 5]);
        assert_eq!(d.condensation.iter().copied().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn deep_path_does_not_overflow() {
        let n = 200_000;
        let arrows: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).chain([(n - 1, 0)]).collect();
        let d = scc(&bare(n, &arrows));
        assert_eq!(d.count(), 1);
    }
}
