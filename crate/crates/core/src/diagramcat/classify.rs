//! Recognition of finite windows of infinite graphs against the infinite
//! diagram families.

use std::collections::VecDeque;

use serde_json::{json, Value};

use super::iso::{find_isomorphism, Dense};
use super::{catalog_mixed, DiagramFamily, DiagramId};
use crate::actiongraph::MixedGraph;
use crate::error::{Error, Result};

/// `id` is certified on the ball of radius `certified_radius` around the base;
/// `None` means no infinite family matched.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowVerdict {
    pub id: Option<DiagramId>,
    pub certified_radius: usize,
}

impl WindowVerdict {
    pub fn to_json(&self) -> Value {
        match self.id {
            Some(id) => json!({"id": id.to_string(), "rank": id.rank, "certified_radius": self.certified_radius}),
            None => json!({"id": "Unknown", "rank": null, "certified_radius": self.certified_radius}),
        }
    }
}

fn distances(adj: &[Vec<usize>], root: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &u in &adj[v] {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

fn ball(dist: &[usize], r: usize) -> Vec<usize> {
    (0..dist.len()).filter(|&v| dist[v] <= r).collect()
}

/// Vertex whose whole neighbourhood must be visible before a one-ended family
/// counts as recognised.
fn anchor(family: DiagramFamily) -> usize {
    match family {
        DiagramFamily::DInf => 1,
        _ => 0,
    }
}

/// Largest `r` such that every vertex within distance `r` of `base` is
/// interior, capped by the eccentricity of `base` and by `max_radius`.
fn interior_radius(g: &MixedGraph, dist: &[usize], max_radius: Option<usize>) -> usize {
    let ecc = dist.iter().filter(|&&d| d != usize::MAX).max().copied().unwrap_or(0);
    let first_frontier = (0..g.len())
        .filter(|&v| dist[v] != usize::MAX && !g.vertices[v].interior)
        .map(|v| dist[v])
        .min();
    let mut r = match first_frontier {
        Some(d) => d.saturating_sub(1),
        None => ecc,
    };
    if let Some(m) = max_radius {
        r = r.min(m);
    }
    r
}

/// Recognise the window around `base` as a ball in one of the infinite
/// diagrams.
///
/// The ball of radius `R` (the interior radius) around `base` must be
/// isomorphic, as a rooted mixed multigraph, to a ball of the same radius in
/// the catalog. For the one-ended families the distinguished end must lie
/// strictly inside the ball, which keeps a long stretch of path from being
/// read as `A∞`. Distances ignore orientation; multiplicities, loops and
/// arrow directions must all match.
pub fn classify_window(g: &MixedGraph, base: usize, max_radius: Option<usize>) -> Result<WindowVerdict> {
    if base >= g.len() {
        return Err(Error::InvalidArgument(format!(
            "base vertex {base} outside 0..{}",
            g.len()
        )));
    }
    if !g.vertices[base].interior {
        return Err(Error::rejected(format!(
            "base vertex {base} ({}) is on the window frontier",
            g.vertices[base].label
        )));
    }
    let adj = g.neighbors();
    let dist = distances(&adj, base);
    let radius = interior_radius(g, &dist, max_radius);
    let unknown = WindowVerdict {
        id: None,
        certified_radius: radius,
    };
    if radius == 0 {
        return Ok(unknown);
    }
    let window_ball = ball(&dist, radius);
    let local = Dense::from_mixed(g, &window_ball);
    let local_base = window_ball
        .iter()
        .position(|&v| v == base)
        .expect("base lies in its own ball");

    for family in DiagramFamily::INFINITE {
        let (cat, centers) = if family == DiagramFamily::AInfInf {
            (catalog_mixed(family, radius + 1)?, vec![0])
        } else {
            let cat = catalog_mixed(family, 2 * radius + 4)?;
            let d = distances(&cat.neighbors(), anchor(family));
            let centers = (0..cat.len()).filter(|&c| d[c] < radius).collect();
            (cat, centers)
        };
        let cat_adj = cat.neighbors();
        for c in centers {
            let cd = distances(&cat_adj, c);
            let cat_ball = ball(&cd, radius);
            if cat_ball.len() != window_ball.len() {
                continue;
            }
            let dense = Dense::from_mixed(&cat, &cat_ball);
            let cat_base = cat_ball
                .iter()
                .position(|&v| v == c)
                .expect("center lies in its own ball");
            if find_isomorphism(&local, &dense, Some((local_base, cat_base))).is_some() {
                return Ok(WindowVerdict {
                    id: Some(DiagramId::new(family, None)),
                    certified_radius: radius,
                });
            }
        }
    }
    Ok(unknown)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actiongraph::{generic_graph, regular_graph, simplify_mixed};
    use crate::diagramcat::DiagramFamily as F;
    use crate::rootdata::{Family, RootSystem, Weight};

    fn a1() -> RootSystem {
        RootSystem::new(Family::A, 1).unwrap()
    }

    #[test]
    fn a1_regular_is_a_infinity() {
        let g = simplify_mixed(&regular_graph(&a1(), &Weight(vec![1]), 30).unwrap());
        let v = classify_window(&g, 0, None).unwrap();
        assert_eq!(v.id, Some(DiagramId::new(F::AInf, None)));
        assert_eq!(v.certified_radius, 29);
        for base in [3, 10] {
            let v = classify_window(&g, base, None).unwrap();
            assert_eq!(v.id, Some(DiagramId::new(F::AInf, None)), "base {base}");
        }
    }

    #[test]
    fn a1_generic_is_a_infinity_infinity() {
        let g = simplify_mixed(&generic_graph(&a1(), &Weight(vec![1]), 30).unwrap());
        let base = g
            .vertices
            .iter()
            .position(|v| v.weight == Some(Weight(vec![0])))
            .unwrap();
        let v = classify_window(&g, base, None).unwrap();
        assert_eq!(v.id, Some(DiagramId::new(F::AInfInf, None)));
        assert_eq!(v.certified_radius, 29);
    }

    #[test]
    fn catalog_truncations_recognise_themselves() {
        for f in DiagramFamily::INFINITE {
            let size = if f == F::AInfInf { 12 } else { 25 };
            let m = catalog_mixed(f, size).unwrap();
            let base = if f == F::DInf { 3 } else { 0 };
            let v = classify_window(&m, base, None).unwrap();
            assert_eq!(v.id, Some(DiagramId::new(f, None)), "{f}");
        }
    }

    #[test]
    fn grid_is_unknown() {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        // out-degree 3 on a triangular grid: no rank-one family fits
        let g = simplify_mixed(&generic_graph(&rs, &Weight(vec![1, 0]), 4).unwrap());
        let base = g
            .vertices
            .iter()
            .position(|v| v.weight == Some(Weight(vec![0, 0])))
            .unwrap();
        let v = classify_window(&g, base, None).unwrap();
        assert_eq!(v.id, None);
        assert!(v.certified_radius >= 1);

        // 4-regular square grid
        let n = 9usize;
        let mut pairs = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let i = x * n + y;
                if x + 1 < n {
                    pairs.push(((i, i + n), 1));
                    pairs.push(((i + n, i), 1));
                }
                if y + 1 < n {
                    pairs.push(((i, i + 1), 1));
                    pairs.push(((i + 1, i), 1));
                }
            }
        }
        let vertices = (0..n * n)
            .map(|i| crate::actiongraph::Vertex {
                label: format!("g{i}"),
                weight: None,
                interior: (1..n - 1).contains(&(i / n)) && (1..n - 1).contains(&(i % n)),
            })
            .collect();
        let grid = crate::actiongraph::ActionGraph::new(
            crate::actiongraph::GraphKind::Assembled,
            vertices,
            pairs,
            crate::actiongraph::Window {
                shape: crate::actiongraph::WindowShape::LatticeBox,
                bound: 4,
            },
        )
        .unwrap();
        let v = classify_window(&simplify_mixed(&grid), 4 * n + 4, None).unwrap();
        assert_eq!(v.id, None);
    }

    #[test]
    fn frontier_base_rejected() {
        let g = simplify_mixed(&regular_graph(&a1(), &Weight(vec![1]), 5).unwrap());
        assert!(matches!(classify_window(&g, 5, None), Err(Error::Rejected(_))));
        assert!(classify_window(&g, 17, None).is_err());
    }

    #[test]
    fn verdict_stable_under_smaller_radius() {
        let g = simplify_mixed(&regular_graph(&a1(), &Weight(vec![1]), 20).unwrap());
        for r in 1..=19 {
            let v = classify_window(&g, 0, Some(r)).unwrap();
            assert_eq!(v.id, Some(DiagramId::new(F::AInf, None)), "radius {r}");
            assert_eq!(v.certified_radius, r);
        }
    }

    #[test]
    fn mirrored_b_is_not_c() {
        let b = catalog_mixed(F::BInf, 20).unwrap();
        let v = classify_window(&b, 0, None).unwrap();
        assert_eq!(v.id.unwrap().family, F::BInf);
        let c = catalog_mixed(F::CInf, 20).unwrap();
        assert_eq!(classify_window(&c, 2, None).unwrap().id.unwrap().family, F::CInf);
    }
}
