//! Action graphs `Γ_L` on finite windows.
//!
//! The graphs studied here are infinite; every graph in this module is a
//! finite truncation that records, per vertex, whether the vertex is
//! *interior* (its whole out-neighborhood lies inside the window) or on the
//! frontier. Anything asserted about the infinite graph must be restricted
//! to interior vertices.

mod emit;
mod scc;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::repcalc::{decompose_with_character, weight_multiplicities, Character};
use crate::rootdata::{Family, RootSystem, Weight};

pub use emit::{graph_from_json, graph_to_dot, graph_to_json, graph_to_tsv, mixed_to_dot, mixed_to_json};
pub use scc::{scc, SccDecomposition};

/// A vertex of an action graph: an opaque label plus, where the construction
/// provides one, the weight it is indexed by.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub label: String,
    pub weight: Option<Weight>,
    pub interior: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WindowShape {
    /// Dominant weights with every coordinate at most `bound`.
    DominantBox,
    /// Integral weights with every coordinate in `[-bound, bound]`.
    LatticeBox,
    /// Family members indexed by a size parameter up to `bound`.
    FamilyIndex,
    /// The graph is finite and complete; every vertex is interior.
    Complete,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub shape: WindowShape,
    pub bound: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphKind {
    Regular,
    Generic,
    SubalgebraH,
    SubalgebraE,
    SubalgebraB,
    Mckay,
    Assembled,
}

/// Where a regular or generic graph came from; needed to build its dual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub family: Family,
    pub rank: usize,
    pub generator: Weight,
}

/// Directed multigraph whose arrow `i → j` has multiplicity `[V ⊗ X_i : X_j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionGraph {
    pub(crate) kind: GraphKind,
    pub(crate) vertices: Vec<Vertex>,
    pub(crate) arrows: BTreeMap<(usize, usize), u64>,
    pub(crate) window: Window,
    pub(crate) provenance: Option<Provenance>,
    pub(crate) notes: Vec<String>,
}

impl ActionGraph {
    /// Assembles a graph, dropping zero multiplicities and validating endpoints.
    pub fn new(
        kind: GraphKind,
        vertices: Vec<Vertex>,
        arrows: impl IntoIterator<Item = ((usize, usize), u64)>,
        window: Window,
    ) -> Result<Self> {
        let n = vertices.len();
        let mut map = BTreeMap::new();
        for ((s, t), m) in arrows {
            if s >= n || t >= n {
                return Err(Error::InvalidArgument(format!(
                    "arrow {s}->{t} references a vertex outside 0..{n}"
                )));
            }
            if m > 0 {
                *map.entry((s, t)).or_insert(0) += m;
            }
        }
        Ok(ActionGraph {
            kind,
            vertices,
            arrows: map,
            window,
            provenance: None,
            notes: Vec::new(),
        })
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = Some(p);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn arrows(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.arrows
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn multiplicity(&self, from: usize, to: usize) -> u64 {
        self.arrows.get(&(from, to)).copied().unwrap_or(0)
    }

    /// Outgoing arrows of `v` as `(target, multiplicity)`.
    pub fn out_arrows(&self, v: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.arrows.range((v, 0)..=(v, usize::MAX)).map(|(&(_, t), &m)| (t, m))
    }

    pub fn out_degree(&self, v: usize) -> u64 {
        self.out_arrows(v).map(|(_, m)| m).sum()
    }

    pub fn index_of_weight(&self, w: &Weight) -> Option<usize> {
        self.vertices.iter().position(|v| v.weight.as_ref() == Some(w))
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.label == label)
    }

    pub fn interior_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.vertices[i].interior).collect()
    }

    /// Disjoint union; the result has no provenance.
    pub fn disjoint_union(&self, other: &ActionGraph) -> ActionGraph {
        let offset = self.len();
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().cloned());
        let mut arrows = self.arrows.clone();
        for (&(s, t), &m) in &other.arrows {
            arrows.insert((s + offset, t + offset), m);
        }
        ActionGraph {
            kind: GraphKind::Assembled,
            vertices,
            arrows,
            window: self.window,
            provenance: None,
            notes: Vec::new(),
        }
    }
}

/// Max over the character's support of each coordinate.
fn coordinate_reach(ch: &Character, rank: usize) -> (Vec<i64>, Vec<i64>) {
    let mut hi = vec![i64::MIN; rank];
    let mut lo = vec![i64::MAX; rank];
    for (w, _) in ch.iter() {
        for i in 0..rank {
            hi[i] = hi[i].max(w.0[i]);
            lo[i] = lo[i].min(w.0[i]);
        }
    }
    (hi, lo)
}

/// All integer vectors with coordinates in `lo..=hi`, in lexicographic order.
fn box_points(rank: usize, lo: i64, hi: i64) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                (lo..=hi).map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(Weight).collect()
}

fn weight_label(w: &Weight) -> String {
    format!("L{w}")
}

/// The regular action: vertices are the simple modules `L(λ)` with dominant
/// `λ` inside the box `λ_i ≤ bound`, and `λ → μ` carries `[L(gen) ⊗ L(λ) : L(μ)]`.
pub fn regular_graph(rs: &RootSystem, gen: &Weight, bound: i64) -> Result<ActionGraph> {
    rs.check_dominant(gen)?;
    if bound < 0 {
        return Err(Error::EmptyWindow);
    }
    let ch = weight_multiplicities(rs, gen)?;
    let (reach, _) = coordinate_reach(&ch, rs.rank());
    let points = box_points(rs.rank(), 0, bound);
    let index: BTreeMap<Weight, usize> = points.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();

    let rows: Vec<Vec<((usize, usize), u64)>> = points
        .par_iter()
        .enumerate()
        .map(|(i, lam)| -> Result<Vec<((usize, usize), u64)>> {
            let d = decompose_with_character(rs, &ch, lam)?;
            Ok(d.parts()
                .iter()
                .filter_map(|(mu, m)| index.get(mu).map(|&j| ((i, j), *m)))
                .collect())
        })
        .collect::<Result<_>>()?;

    let vertices = points
        .iter()
        .map(|lam| Vertex {
            label: weight_label(lam),
            weight: Some(lam.clone()),
            interior: (0..rs.rank()).all(|k| lam.0[k] + reach[k] <= bound),
        })
        .collect();
    let window = Window {
        shape: WindowShape::DominantBox,
        bound,
    };
    Ok(
        ActionGraph::new(GraphKind::Regular, vertices, rows.into_iter().flatten(), window)?.with_provenance(
            Provenance {
                family: rs.family(),
                rank: rs.rank(),
                generator: gen.clone(),
            },
        ),
    )
}

/// Arrows out of one vertex, keyed by `(from, to)`.
type ArrowRow = Vec<((usize, usize), u64)>;

/// The generic-block action: vertices are all integral weights `μ` with
/// `|μ_i| ≤ bound` and `μ → ν` carries `dim L(gen)_{ν-μ}`.
pub fn generic_graph(rs: &RootSystem, gen: &Weight, bound: i64) -> Result<ActionGraph> {
    rs.check_dominant(gen)?;
    if bound < 0 {
        return Err(Error::EmptyWindow);
    }
    let ch = weight_multiplicities(rs, gen)?;
    let points = box_points(rs.rank(), -bound, bound);
    let index: BTreeMap<Weight, usize> = points.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let inside = |w: &Weight| w.0.iter().all(|c| c.abs() <= bound);

    let rows: Vec<(bool, ArrowRow)> = points
        .par_iter()
        .enumerate()
        .map(|(i, mu)| {
            let mut interior = true;
            let mut out = Vec::new();
            for (nu, m) in ch.iter() {
                let target = mu.add(nu);
                if inside(&target) {
                    out.push(((i, index[&target]), *m as u64));
                } else {
                    interior = false;
                }
            }
            (interior, out)
        })
        .collect();

    let vertices = points
        .iter()
        .zip(&rows)
        .map(|(mu, (interior, _))| Vertex {
            label: format!("θ{mu}"),
            weight: Some(mu.clone()),
            interior: *interior,
        })
        .collect();
    let window = Window {
        shape: WindowShape::LatticeBox,
        bound,
    };
    let arrows = rows.into_iter().flat_map(|(_, r)| r);
    Ok(
        ActionGraph::new(GraphKind::Generic, vertices, arrows, window)?.with_provenance(Provenance {
            family: rs.family(),
            rank: rs.rank(),
            generator: gen.clone(),
        }),
    )
}

/// The graph of the same kind and window built with the dual generator
/// (the dominant conjugate of `-gen`).
pub fn dual_graph(g: &ActionGraph) -> Result<ActionGraph> {
    let p = g
        .provenance
        .as_ref()
        .ok_or_else(|| Error::rejected("graph has no generator provenance; cannot form its dual"))?;
    let rs = RootSystem::new(p.family, p.rank)?;
    let dual = rs.dual_weight(&p.generator);
    match g.kind {
        GraphKind::Regular => regular_graph(&rs, &dual, g.window.bound),
        GraphKind::Generic => generic_graph(&rs, &dual, g.window.bound),
        other => Err(Error::rejected(format!("dual of a {other:?} graph is not defined"))),
    }
}

/// Mixed graph: each pair of opposite arrows becomes one unoriented edge.
///
/// For an unordered pair `{i, j}` with `i ≠ j`, `unoriented = min(m_ij, m_ji)`
/// and the remainder stays directed in one direction only. A loop is its own
/// reverse and is recorded as unoriented with its full multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedGraph {
    pub vertices: Vec<Vertex>,
    /// Keyed by `(min, max)`; loops at `(i, i)`.
    pub unoriented: BTreeMap<(usize, usize), u64>,
    pub directed: BTreeMap<(usize, usize), u64>,
}

impl MixedGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn unoriented_count(&self, i: usize, j: usize) -> u64 {
        let key = if i <= j { (i, j) } else { (j, i) };
        self.unoriented.get(&key).copied().unwrap_or(0)
    }

    pub fn directed_count(&self, i: usize, j: usize) -> u64 {
        self.directed.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Undirected adjacency lists ignoring multiplicities and loops.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.len()];
        for &(i, j) in self.unoriented.keys().chain(self.directed.keys()) {
            if i != j {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
            a.dedup();
        }
        adj
    }

    pub fn is_purely_unoriented(&self) -> bool {
        self.directed.is_empty()
    }
}

pub fn simplify_mixed(g: &ActionGraph) -> MixedGraph {
    let mut unoriented = BTreeMap::new();
    let mut directed = BTreeMap::new();
    for (&(s, t), &m) in &g.arrows {
        if s == t {
            unoriented.insert((s, s), m);
            continue;
        }
        if s > t && g.arrows.contains_key(&(t, s)) {
            continue; // handled from the (t, s) side
        }
        let back = g.multiplicity(t, s);
        let both = m.min(back);
        if both > 0 {
            unoriented.insert((s.min(t), s.max(t)), both);
        }
        if m > both {
            directed.insert((s, t), m - both);
        }
        if back > both {
            directed.insert((t, s), back - both);
        }
    }
    MixedGraph {
        vertices: g.vertices.clone(),
        unoriented,
        directed,
    }
}

/// Matrix of an action graph: entry `(j, i)` is the multiplicity of `i → j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionMatrix {
    pub labels: Vec<String>,
    pub entries: Vec<Vec<u64>>,
}

impl ActionMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row][col]
    }

    pub fn transpose(&self) -> ActionMatrix {
        let n = self.dim();
        ActionMatrix {
            labels: self.labels.clone(),
            entries: (0..n).map(|r| (0..n).map(|c| self.entries[c][r]).collect()).collect(),
        }
    }

    /// Matrix product over the full window.
    pub fn mul(&self, other: &ActionMatrix) -> ActionMatrix {
        let n = self.dim();
        let mut out = vec![vec![0u64; n]; n];
        for (r, row) in out.iter_mut().enumerate() {
            for k in 0..n {
                let a = self.entries[r][k];
                if a == 0 {
                    continue;
                }
                for (c, x) in row.iter_mut().enumerate() {
                    *x += a * other.entries[k][c];
                }
            }
        }
        ActionMatrix {
            labels: self.labels.clone(),
            entries: out,
        }
    }

    /// Submatrix on the given rows and columns (same index list for both).
    pub fn restrict(&self, idx: &[usize]) -> Vec<Vec<u64>> {
        idx.iter()
            .map(|&r| idx.iter().map(|&c| self.entries[r][c]).collect())
            .collect()
    }
}

pub fn action_matrix(g: &ActionGraph) -> ActionMatrix {
    let n = g.len();
    let mut entries = vec![vec![0u64; n]; n];
    for (&(s, t), &m) in &g.arrows {
        entries[t][s] = m;
    }
    ActionMatrix {
        labels: g.vertices.iter().map(|v| v.label.clone()).collect(),
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcalc::weyl_dimension;
    use crate::rootdata::Family;

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    fn a1() -> RootSystem {
        RootSystem::new(Family::A, 1).unwrap()
    }

    fn a2() -> RootSystem {
        RootSystem::new(Family::A, 2).unwrap()
    }

    #[test]
    fn a1_regular_window_is_a_two_way_path() {
        let g = regular_graph(&a1(), &w(&[1]), 5).unwrap();
        assert_eq!(g.len(), 6);
        let mut expected = BTreeMap::new();
        for k in 0..5 {
            expected.insert((k, k + 1), 1);
            expected.insert((k + 1, k), 1);
        }
        assert_eq!(g.arrows(), &expected);
        assert_eq!(g.interior_indices(), vec![0, 1, 2, 3, 4]);
        let m = simplify_mixed(&g);
        assert!(m.is_purely_unoriented());
        assert_eq!(m.unoriented.len(), 5);
    }

    #[test]
    fn a1_unit_generator_gives_loops() {
        let g = regular_graph(&a1(), &w(&[0]), 4).unwrap();
        for i in 0..g.len() {
            assert_eq!(g.out_arrows(i).collect::<Vec<_>>(), vec![(i, 1)]);
        }
        let g = generic_graph(&a1(), &w(&[0]), 3).unwrap();
        assert_eq!(g.arrows().len(), 7);
        assert!(g.arrows().keys().all(|(s, t)| s == t));
        let m = action_matrix(&g);
        for i in 0..m.dim() {
            for j in 0..m.dim() {
                assert_eq!(m.get(i, j), u64::from(i == j));
            }
        }
    }

    #[test]
    fn a2_regular_interior_arrows_follow_weights_of_v() {
        let rs = a2();
        let g = regular_graph(&rs, &w(&[1, 0]), 2).unwrap();
        let steps = [w(&[1, 0]), w(&[-1, 1]), w(&[0, -1])];
        let interior = g.interior_indices();
        assert!(!interior.is_empty());
        for i in interior {
            let lam = g.vertices()[i].weight.clone().unwrap();
            let expected: BTreeMap<usize, u64> = steps
                .iter()
                .map(|s| lam.add(s))
                .filter(|t| t.is_dominant())
                .map(|t| (g.index_of_weight(&t).unwrap(), 1))
                .collect();
            let got: BTreeMap<usize, u64> = g.out_arrows(i).collect();
            assert_eq!(got, expected, "at {lam}");
        }
        // (1,1) is interior for bound 2 and has all three targets
        let i = g.index_of_weight(&w(&[1, 1])).unwrap();
        assert!(g.vertices()[i].interior);
        assert_eq!(g.out_degree(i), 3);
    }

    #[test]
    fn a1_generic_is_two_way_path() {
        let g = generic_graph(&a1(), &w(&[1]), 5).unwrap();
        assert_eq!(g.len(), 11);
        for i in 0..10 {
            assert_eq!(g.multiplicity(i, i + 1), 1);
            assert_eq!(g.multiplicity(i + 1, i), 1);
        }
        assert_eq!(g.arrows().len(), 20);
        assert_eq!(g.interior_indices(), (1..10).collect::<Vec<_>>());
    }

    #[test]
    fn a2_generic_out_degree_three() {
        let rs = a2();
        let g = generic_graph(&rs, &w(&[1, 0]), 3).unwrap();
        let steps = [w(&[1, 0]), w(&[-1, 1]), w(&[0, -1])];
        for i in g.interior_indices() {
            let mu = g.vertices()[i].weight.clone().unwrap();
            let got: Vec<(usize, u64)> = g.out_arrows(i).collect();
            assert_eq!(got.len(), 3);
            for s in &steps {
                assert_eq!(g.multiplicity(i, g.index_of_weight(&mu.add(s)).unwrap()), 1);
            }
        }
    }

    #[test]
    fn generic_multiplicity_depends_only_on_difference() {
        let rs = RootSystem::new(Family::B, 2).unwrap();
        let g = generic_graph(&rs, &w(&[1, 1]), 3).unwrap();
        let ch = weight_multiplicities(&rs, &w(&[1, 1])).unwrap();
        for (&(s, t), &m) in g.arrows() {
            let diff = g.vertices()[t]
                .weight
                .as_ref()
                .unwrap()
                .sub(g.vertices()[s].weight.as_ref().unwrap());
            assert_eq!(m as i64, ch.get(&diff));
        }
    }

    #[test]
    fn dual_graph_examples() {
        let g = regular_graph(&a1(), &w(&[1]), 6).unwrap();
        assert_eq!(dual_graph(&g).unwrap(), g);

        let rs = a2();
        let g = generic_graph(&rs, &w(&[1, 0]), 3).unwrap();
        let d = dual_graph(&g).unwrap();
        for (&(s, t), &m) in g.arrows() {
            assert_eq!(d.multiplicity(t, s), m);
        }
        assert_eq!(g.arrows().len(), d.arrows().len());

        let g = regular_graph(&rs, &w(&[1, 0]), 3).unwrap();
        let d = dual_graph(&g).unwrap();
        let direct = regular_graph(&rs, &w(&[0, 1]), 3).unwrap();
        assert_eq!(d.arrows(), direct.arrows());
    }

    #[test]
    fn dual_requires_provenance() {
        let g = ActionGraph::new(
            GraphKind::Assembled,
            vec![Vertex {
                label: "x".into(),
                weight: None,
                interior: true,
            }],
            [((0, 0), 1)],
            Window {
                shape: WindowShape::Complete,
                bound: 0,
            },
        )
        .unwrap();
        assert!(dual_graph(&g).is_err());
    }

    #[test]
    fn empty_window_rejected() {
        assert_eq!(regular_graph(&a1(), &w(&[1]), -1).unwrap_err(), Error::EmptyWindow);
        assert_eq!(generic_graph(&a1(), &w(&[1]), -1).unwrap_err(), Error::EmptyWindow);
    }

    fn two_vertex(m_ij: u64, m_ji: u64) -> ActionGraph {
        let v = |l: &str| Vertex {
            label: l.into(),
            weight: None,
            interior: true,
        };
        ActionGraph::new(
            GraphKind::Assembled,
            vec![v("i"), v("j")],
            [((0, 1), m_ij), ((1, 0), m_ji)],
            Window {
                shape: WindowShape::Complete,
                bound: 0,
            },
        )
        .unwrap()
    }

    #[test]
    fn simplify_examples() {
        let m = simplify_mixed(&two_vertex(2, 1));
        assert_eq!(m.unoriented_count(0, 1), 1);
        assert_eq!(m.directed_count(0, 1), 1);
        assert_eq!(m.directed_count(1, 0), 0);

        let m = simplify_mixed(&two_vertex(3, 0));
        assert_eq!(m.unoriented_count(0, 1), 0);
        assert_eq!(m.directed_count(0, 1), 3);

        let m = simplify_mixed(&two_vertex(1, 1));
        assert_eq!(m.unoriented_count(0, 1), 1);
        assert!(m.directed.is_empty());
    }

    #[test]
    fn a1_matrix_is_tridiagonal() {
        let g = regular_graph(&a1(), &w(&[1]), 4).unwrap();
        let m = action_matrix(&g);
        for r in 0..5 {
            for c in 0..5 {
                let expected = u64::from((r as i64 - c as i64).abs() == 1);
                assert_eq!(m.get(r, c), expected);
            }
        }
    }

    #[test]
    fn regular_dimension_balance() {
        for (f, n, gen) in [
            (Family::A, 2, w(&[1, 0])),
            (Family::B, 2, w(&[0, 1])),
            (Family::G, 2, w(&[1, 0])),
        ] {
            let rs = RootSystem::new(f, n).unwrap();
            let g = regular_graph(&rs, &gen, 3).unwrap();
            let dim_gen = weyl_dimension(&rs, &gen).unwrap();
            for i in g.interior_indices() {
                let lam = g.vertices()[i].weight.as_ref().unwrap();
                let total: u64 = g
                    .out_arrows(i)
                    .map(|(j, m)| m * weyl_dimension(&rs, g.vertices()[j].weight.as_ref().unwrap()).unwrap())
                    .sum();
                assert_eq!(total, dim_gen * weyl_dimension(&rs, lam).unwrap());
            }
        }
    }

    #[test]
    fn a2_commutation_and_transpose_on_interior() {
        let rs = a2();
        for build in [regular_graph, generic_graph] {
            let x1 = build(&rs, &w(&[1, 0]), 4).unwrap();
            let x2 = build(&rs, &w(&[0, 1]), 4).unwrap();
            let m1 = action_matrix(&x1);
            let m2 = action_matrix(&x2);
            let interior: Vec<usize> = x1
                .interior_indices()
                .into_iter()
                .filter(|i| x2.vertices()[*i].interior)
                .collect();
            assert_eq!(m1.mul(&m2).restrict(&interior), m2.mul(&m1).restrict(&interior));
            let d1 = action_matrix(&dual_graph(&x1).unwrap());
            assert_eq!(m1.transpose().restrict(&interior), d1.restrict(&interior));
        }
    }
}
