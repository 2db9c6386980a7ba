//! Catalogs of finite, affine and infinite Dynkin diagrams, recognition of
//! computed graphs against them, and the spectral (Smith) classifier.
//!
//! Diagrams are stored in two forms. The directed form is a [`MixedGraph`]
//! following the pictures literally: a plain edge is one unoriented edge and
//! every extra arrowhead is one directed arrow, so a `B`-type double bond is
//! an unoriented edge plus one arrow pointing to the left end. The undirected
//! collapse ([`EdgeGraph`]) counts both kinds, which is what the spectral
//! classifier consumes.

mod classify;
mod iso;
mod smith;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::actiongraph::{ActionGraph, GraphKind, MixedGraph, Vertex, Window, WindowShape};
use crate::error::{Error, Result};

pub use classify::{classify_window, WindowVerdict};
pub use iso::{edge_graphs_isomorphic, mixed_graphs_isomorphic};
pub use smith::{
    exhaustive_check, smith_classify, smith_classify_exact, spectral_radius, ExhaustiveReport, SmithClass,
    SmithVerdict, SpectralEstimate,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiagramFamily {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
    AffA,
    AffA11,
    AffA12,
    AffB,
    AffBC,
    AffC,
    AffBD,
    AffD,
    AffCD,
    AffE6,
    AffE7,
    AffE8,
    AffF41,
    AffF42,
    AffG21,
    AffG22,
    AffL,
    AffBL,
    AffCL,
    AffDL,
    AInf,
    AInfInf,
    BInf,
    CInf,
    DInf,
    TInf,
}

use DiagramFamily as F;

impl DiagramFamily {
    pub const ALL: [DiagramFamily; 35] = [
        F::A,
        F::B,
        F::C,
        F::D,
        F::E6,
        F::E7,
        F::E8,
        F::F4,
        F::G2,
        F::AffA,
        F::AffA11,
        F::AffA12,
        F::AffB,
        F::AffBC,
        F::AffC,
        F::AffBD,
        F::AffD,
        F::AffCD,
        F::AffE6,
        F::AffE7,
        F::AffE8,
        F::AffF41,
        F::AffF42,
        F::AffG21,
        F::AffG22,
        F::AffL,
        F::AffBL,
        F::AffCL,
        F::AffDL,
        F::AInf,
        F::AInfInf,
        F::BInf,
        F::CInf,
        F::DInf,
        F::TInf,
    ];

    pub const INFINITE: [DiagramFamily; 6] = [F::AInf, F::AInfInf, F::BInf, F::CInf, F::DInf, F::TInf];

    pub fn is_finite(self) -> bool {
        matches!(self, F::A | F::B | F::C | F::D | F::E6 | F::E7 | F::E8 | F::F4 | F::G2)
    }

    pub fn is_infinite(self) -> bool {
        Self::INFINITE.contains(&self)
    }

    pub fn is_affine(self) -> bool {
        !self.is_finite() && !self.is_infinite()
    }

    /// Whether the family carries a size subscript.
    pub fn has_rank(self) -> bool {
        matches!(
            self,
            F::A | F::B
                | F::C
                | F::D
                | F::AffA
                | F::AffB
                | F::AffBC
                | F::AffC
                | F::AffBD
                | F::AffD
                | F::AffCD
                | F::AffL
                | F::AffBL
                | F::AffCL
                | F::AffDL
        )
    }

    /// Plain-ASCII tag used on the command line.
    pub fn ascii(self) -> &'static str {
        match self {
            F::A => "A",
            F::B => "B",
            F::C => "C",
            F::D => "D",
            F::E6 => "E6",
            F::E7 => "E7",
            F::E8 => "E8",
            F::F4 => "F4",
            F::G2 => "G2",
            F::AffA => "~A",
            F::AffA11 => "~A11",
            F::AffA12 => "~A12",
            F::AffB => "~B",
            F::AffBC => "~BC",
            F::AffC => "~C",
            F::AffBD => "~BD",
            F::AffD => "~D",
            F::AffCD => "~CD",
            F::AffE6 => "~E6",
            F::AffE7 => "~E7",
            F::AffE8 => "~E8",
            F::AffF41 => "~F41",
            F::AffF42 => "~F42",
            F::AffG21 => "~G21",
            F::AffG22 => "~G22",
            F::AffL => "~L",
            F::AffBL => "~BL",
            F::AffCL => "~CL",
            F::AffDL => "~DL",
            F::AInf => "A_inf",
            F::AInfInf => "A_inf_inf",
            F::BInf => "B_inf",
            F::CInf => "C_inf",
            F::DInf => "D_inf",
            F::TInf => "T_inf",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            F::A => "A",
            F::B => "B",
            F::C => "C",
            F::D => "D",
            F::E6 => "E6",
            F::E7 => "E7",
            F::E8 => "E8",
            F::F4 => "F4",
            F::G2 => "G2",
            F::AffA => "Ã",
            F::AffA11 => "Ã11",
            F::AffA12 => "Ã12",
            F::AffB => "B̃",
            F::AffBC => "B̃C",
            F::AffC => "C̃",
            F::AffBD => "B̃D",
            F::AffD => "D̃",
            F::AffCD => "C̃D",
            F::AffE6 => "Ẽ6",
            F::AffE7 => "Ẽ7",
            F::AffE8 => "Ẽ8",
            F::AffF41 => "F̃41",
            F::AffF42 => "F̃42",
            F::AffG21 => "G̃21",
            F::AffG22 => "G̃22",
            F::AffL => "L̃",
            F::AffBL => "B̃L",
            F::AffCL => "C̃L",
            F::AffDL => "D̃L",
            F::AInf => "A∞",
            F::AInfInf => "A∞∞",
            F::BInf => "B∞",
            F::CInf => "C∞",
            F::DInf => "D∞",
            F::TInf => "T∞",
        }
    }

    /// Smallest admissible vertex count, and the only one for rigid diagrams.
    fn size_range(self) -> (usize, Option<usize>) {
        match self {
            F::A | F::AInf | F::TInf => (1, None),
            F::B | F::C | F::BInf | F::CInf => (2, None),
            F::D => (4, None),
            F::E6 => (6, Some(6)),
            F::E7 => (7, Some(7)),
            F::E8 => (8, Some(8)),
            F::F4 => (4, Some(4)),
            F::G2 | F::AffA11 | F::AffA12 => (2, Some(2)),
            F::AffA => (1, None),
            F::AffB => (4, None),
            F::AffBC | F::AffC => (3, None),
            F::AffBD | F::AffCD | F::AffDL => (4, None),
            F::AffD => (5, None),
            F::AffE6 => (7, Some(7)),
            F::AffE7 => (8, Some(8)),
            F::AffE8 => (9, Some(9)),
            F::AffF41 | F::AffF42 => (5, Some(5)),
            F::AffG21 | F::AffG22 => (3, Some(3)),
            F::AffL | F::AffBL | F::AffCL => (2, None),
            F::DInf => (3, None),
            F::AInfInf => (0, None),
        }
    }
}

impl fmt::Display for DiagramFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for DiagramFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        DiagramFamily::ALL
            .iter()
            .copied()
            .find(|f| f.ascii().eq_ignore_ascii_case(t) || f.symbol() == t)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown diagram family '{t}'")))
    }
}

/// A diagram family plus its subscript where the family has one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiagramId {
    pub family: DiagramFamily,
    pub rank: Option<usize>,
}

impl DiagramId {
    pub fn new(family: DiagramFamily, rank: Option<usize>) -> Self {
        DiagramId { family, rank }
    }

    pub fn to_json(&self) -> Value {
        json!({"family": self.family.ascii(), "rank": self.rank, "name": self.to_string()})
    }
}

impl fmt::Display for DiagramId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rank {
            Some(r) => write!(f, "{}{}", self.family.symbol(), r),
            None => f.write_str(self.family.symbol()),
        }
    }
}

/// Finite undirected multigraph with loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGraph {
    n: usize,
    /// Keyed by `(i, j)` with `i < j`.
    edges: BTreeMap<(usize, usize), u64>,
    loops: Vec<u64>,
}

impl EdgeGraph {
    pub fn empty(n: usize) -> Self {
        EdgeGraph {
            n,
            edges: BTreeMap::new(),
            loops: vec![0; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = EdgeGraph::empty(n);
        for &(i, j) in edges {
            g.add_edge(i, j, 1)?;
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        EdgeGraph::from_edges(n, &e).expect("path endpoints in range")
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = EdgeGraph::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0, 1).expect("cycle endpoints in range");
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = EdgeGraph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j, 1).expect("complete graph endpoints in range");
            }
        }
        g
    }

    /// Adds `m` edges between `i` and `j`; `i == j` adds loops.
    pub fn add_edge(&mut self, i: usize, j: usize, m: u64) -> Result<()> {
        if i >= self.n || j >= self.n {
            return Err(Error::InvalidArgument(format!("edge {i}-{j} outside 0..{}", self.n)));
        }
        if m == 0 {
            return Ok(());
        }
        if i == j {
            self.loops[i] += m;
        } else {
            *self.edges.entry((i.min(j), i.max(j))).or_insert(0) += m;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn edges(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.edges
    }

    pub fn loops(&self) -> &[u64] {
        &self.loops
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u64 {
        if i == j {
            self.loops[i]
        } else {
            self.edges.get(&(i.min(j), i.max(j))).copied().unwrap_or(0)
        }
    }

    pub fn is_simple(&self) -> bool {
        self.loops.iter().all(|&l| l == 0) && self.edges.values().all(|&m| m == 1)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); self.n];
        for &(i, j) in self.edges.keys() {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Adjacency matrix; each loop contributes 1 to the diagonal.
    pub fn adjacency(&self) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; self.n]; self.n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = self.loops[i] as i64;
        }
        for (&(i, j), &m) in &self.edges {
            a[i][j] = m as i64;
            a[j][i] = m as i64;
        }
        a
    }

    /// Sorted `(degree, loops)` pairs; an isomorphism invariant.
    pub fn degree_profile(&self) -> Vec<(u64, u64)> {
        let mut deg = vec![0u64; self.n];
        for (&(i, j), &m) in &self.edges {
            deg[i] += m;
            deg[j] += m;
        }
        let mut out: Vec<(u64, u64)> = deg.into_iter().zip(self.loops.iter().copied()).collect();
        out.sort_unstable();
        out
    }

    /// Undirected collapse: every unoriented edge and every directed arrow
    /// becomes one undirected edge.
    pub fn from_mixed(g: &MixedGraph) -> Self {
        let mut e = EdgeGraph::empty(g.len());
        for (&(i, j), &m) in g.unoriented.iter().chain(g.directed.iter()) {
            e.add_edge(i, j, m).expect("mixed graph endpoints in range");
        }
        e
    }

    pub fn to_json(&self) -> Value {
        json!({
            "order": self.n,
            "edges": self.edges.iter().map(|(&(i, j), &m)| json!([i, j, m])).collect::<Vec<_>>(),
            "loops": self.loops,
        })
    }

    /// Reads `{"order": n, "edges": [[i, j, m] or [i, j], ...], "loops": [...]}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::InvalidArgument(format!("edge graph document: {what}"));
        let n = v
            .get("order")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing 'order'"))? as usize;
        let mut g = EdgeGraph::empty(n);
        for e in v
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing 'edges'"))?
        {
            let parts = e.as_array().ok_or_else(|| bad("edge must be an array"))?;
            let num = |k: usize| parts.get(k).and_then(Value::as_u64);
            let (i, j) = (
                num(0).ok_or_else(|| bad("edge endpoint"))?,
                num(1).ok_or_else(|| bad("edge endpoint"))?,
            );
            let m = if parts.len() > 2 {
                num(2).ok_or_else(|| bad("edge multiplicity"))?
            } else {
                1
            };
            g.add_edge(i as usize, j as usize, m)?;
        }
        if let Some(loops) = v.get("loops") {
            let loops = loops.as_array().ok_or_else(|| bad("'loops' must be an array"))?;
            if loops.len() != n {
                return Err(bad("'loops' length differs from order"));
            }
            for (i, l) in loops.iter().enumerate() {
                g.add_edge(i, i, l.as_u64().ok_or_else(|| bad("loop count"))?)?;
            }
        }
        Ok(g)
    }
}

struct Builder {
    n: usize,
    unoriented: BTreeMap<(usize, usize), u64>,
    directed: BTreeMap<(usize, usize), u64>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder {
            n,
            unoriented: BTreeMap::new(),
            directed: BTreeMap::new(),
        }
    }

    fn path(n: usize) -> Self {
        let mut b = Builder::new(n);
        for i in 1..n {
            b.edge(i - 1, i);
        }
        b
    }

    fn edge(&mut self, i: usize, j: usize) -> &mut Self {
        *self.unoriented.entry((i.min(j), i.max(j))).or_insert(0) += 1;
        self
    }

    fn arrow(&mut self, i: usize, j: usize, m: u64) -> &mut Self {
        *self.directed.entry((i, j)).or_insert(0) += m;
        self
    }

    fn lp(&mut self, i: usize, m: u64) -> &mut Self {
        *self.unoriented.entry((i, i)).or_insert(0) += m;
        self
    }

    /// Path on `n - 1` vertices plus a pendant vertex `n - 1` attached at `at`.
    fn forked(n: usize, at: usize) -> Self {
        let mut b = Builder::path(n - 1);
        b.edge(at, n - 1);
        b
    }
}

fn shape(family: DiagramFamily, size: usize) -> Builder {
    let n = size;
    match family {
        F::A | F::AInf => Builder::path(n),
        F::B | F::BInf => {
            let mut b = Builder::path(n);
            b.arrow(1, 0, 1);
            b
        }
        F::C | F::CInf => {
            let mut b = Builder::path(n);
            b.arrow(0, 1, 1);
            b
        }
        F::D => Builder::forked(n, 1),
        F::E6 | F::E7 | F::E8 => Builder::forked(n, 2),
        F::F4 => {
            let mut b = Builder::path(4);
            b.arrow(1, 2, 1);
            b
        }
        F::G2 => {
            let mut b = Builder::path(2);
            b.arrow(0, 1, 2);
            b
        }
        F::AffA if n == 1 => {
            let mut b = Builder::new(1);
            b.lp(0, 2);
            b
        }
        F::AffA => {
            let mut b = Builder::path(n);
            b.edge(n - 1, 0);
            b
        }
        F::AffA11 => {
            let mut b = Builder::path(2);
            b.arrow(0, 1, 3);
            b
        }
        F::AffA12 => {
            let mut b = Builder::path(2);
            b.edge(0, 1);
            b
        }
        F::AffB => {
            let mut b = Builder::path(n);
            b.arrow(1, 0, 1).arrow(n - 2, n - 1, 1);
            b
        }
        F::AffBC => {
            let mut b = Builder::path(n);
            b.arrow(1, 0, 1).arrow(n - 1, n - 2, 1);
            b
        }
        F::AffC => {
            let mut b = Builder::path(n);
            b.arrow(0, 1, 1).arrow(n - 1, n - 2, 1);
            b
        }
        F::AffBD => {
            let mut b = Builder::forked(n, 1);
            b.arrow(n - 3, n - 2, 1);
            b
        }
        F::AffD => {
            let mut b = Builder::path(n - 2);
            b.edge(1, n - 2).edge(n - 4, n - 1);
            b.n = n;
            b
        }
        F::AffCD => {
            let mut b = Builder::forked(n, 1);
            b.arrow(n - 2, n - 3, 1);
            b
        }
        F::AffE6 => {
            let mut b = Builder::path(5);
            b.edge(2, 5).edge(5, 6);
            b.n = 7;
            b
        }
        F::AffE7 => Builder::forked(8, 3),
        F::AffE8 => Builder::forked(9, 2),
        F::AffF41 => {
            let mut b = Builder::path(5);
            b.arrow(2, 3, 1);
            b
        }
        F::AffF42 => {
            let mut b = Builder::path(5);
            b.arrow(1, 2, 1);
            b
        }
        F::AffG21 => {
            let mut b = Builder::path(3);
            b.arrow(1, 2, 2);
            b
        }
        F::AffG22 => {
            let mut b = Builder::path(3);
            b.arrow(0, 1, 2);
            b
        }
        F::AffL => {
            let mut b = Builder::path(n);
            b.lp(0, 1).lp(n - 1, 1);
            b
        }
        F::AffBL => {
            let mut b = Builder::path(n);
            b.arrow(1, 0, 1).lp(n - 1, 1);
            b
        }
        F::AffCL => {
            let mut b = Builder::path(n);
            b.arrow(0, 1, 1).lp(n - 1, 1);
            b
        }
        F::AffDL => {
            let mut b = Builder::forked(n, 1);
            b.lp(n - 2, 1);
            b
        }
        F::TInf => {
            let mut b = Builder::path(n);
            b.lp(0, 1);
            b
        }
        // branch p1 comes second and the pendant third, so truncations nest
        F::DInf => {
            let mut b = Builder::new(n);
            b.edge(0, 1).edge(1, 2);
            if n > 3 {
                b.edge(1, 3);
            }
            for v in 4..n {
                b.edge(v - 1, v);
            }
            b
        }
        // center first, then right and left neighbours alternately
        F::AInfInf => {
            let mut b = Builder::new(n);
            for v in 1..n {
                let prev = v.saturating_sub(2);
                b.edge(prev, v);
            }
            b
        }
    }
}

fn vertex_count(family: DiagramFamily, size: usize) -> usize {
    if family == F::AInfInf {
        2 * size + 1
    } else {
        size
    }
}

fn check_size(family: DiagramFamily, size: usize) -> Result<()> {
    let (lo, exact) = family.size_range();
    if let Some(e) = exact {
        if size != e {
            return Err(Error::InvalidArgument(format!(
                "{family} has exactly {e} vertices, got size {size}"
            )));
        }
    }
    if size < lo {
        return Err(Error::InvalidArgument(format!(
            "{family} needs size at least {lo}, got {size}"
        )));
    }
    if family == F::AffA && size == 2 {
        return Err(Error::InvalidArgument(
            "the two-vertex affine type A diagrams are ~A11 and ~A12".to_string(),
        ));
    }
    Ok(())
}

/// Identifier of the catalog diagram with the given family and size.
///
/// Size is the vertex count for finite and affine families, so an affine
/// diagram of subscript `n` has size `n + 1`; for `A∞∞` it is the radius of
/// the centred window.
pub fn catalog_id(family: DiagramFamily, size: usize) -> Result<DiagramId> {
    check_size(family, size)?;
    let rank = if !family.has_rank() {
        None
    } else if family.is_finite() {
        Some(size)
    } else {
        Some(size - 1)
    };
    Ok(DiagramId::new(family, rank))
}

/// Directed (mixed) form of a catalog diagram. For infinite families the
/// result is a truncation, with vertices whose neighbourhood is cut marked
/// as frontier.
pub fn catalog_mixed(family: DiagramFamily, size: usize) -> Result<MixedGraph> {
    check_size(family, size)?;
    let n = vertex_count(family, size);
    let b = shape(family, n);
    let interior: Vec<bool> = if family.is_infinite() {
        let bigger = shape(family, vertex_count(family, size + 2));
        let mut ok = vec![true; n];
        for &(i, j) in bigger.unoriented.keys().chain(bigger.directed.keys()) {
            if i < n && j >= n {
                ok[i] = false;
            }
            if j < n && i >= n {
                ok[j] = false;
            }
        }
        ok
    } else {
        vec![true; n]
    };
    let vertices = (0..n)
        .map(|i| Vertex {
            label: format!("v{i}"),
            weight: None,
            interior: interior[i],
        })
        .collect();
    Ok(MixedGraph {
        vertices,
        unoriented: b.unoriented,
        directed: b.directed,
    })
}

/// Undirected collapse of a catalog diagram.
pub fn catalog_graph(family: DiagramFamily, size: usize) -> Result<EdgeGraph> {
    Ok(EdgeGraph::from_mixed(&catalog_mixed(family, size)?))
}

/// Catalog diagram as an action graph: each unoriented edge becomes a pair
/// of opposite arrows, each loop a loop, each directed arrow an arrow.
pub fn catalog_action_graph(family: DiagramFamily, size: usize) -> Result<ActionGraph> {
    let m = catalog_mixed(family, size)?;
    let mut arrows = Vec::new();
    for (&(i, j), &c) in &m.unoriented {
        arrows.push(((i, j), c));
        if i != j {
            arrows.push(((j, i), c));
        }
    }
    arrows.extend(m.directed.iter().map(|(&k, &c)| (k, c)));
    let window = Window {
        shape: if family.is_infinite() {
            WindowShape::FamilyIndex
        } else {
            WindowShape::Complete
        },
        bound: size as i64,
    };
    Ok(ActionGraph::new(GraphKind::Assembled, m.vertices, arrows, window)?
        .with_note(format!("catalog diagram {}", catalog_id(family, size)?)))
}

pub fn catalog_to_json(family: DiagramFamily, size: usize) -> Result<Value> {
    let m = catalog_mixed(family, size)?;
    let pairs = |map: &BTreeMap<(usize, usize), u64>| -> Vec<Value> {
        map.iter().map(|(&(i, j), &c)| json!([i, j, c])).collect()
    };
    Ok(json!({
        "id": catalog_id(family, size)?.to_json(),
        "size": size,
        "order": m.len(),
        "unoriented": pairs(&m.unoriented),
        "directed": pairs(&m.directed),
        "frontier": (0..m.len()).filter(|&i| !m.vertices[i].interior).collect::<Vec<_>>(),
        "undirected": EdgeGraph::from_mixed(&m).to_json(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_examples() {
        assert_eq!(catalog_graph(F::A, 3).unwrap(), EdgeGraph::path(3));
        let t = catalog_graph(F::TInf, 4).unwrap();
        let mut expected = EdgeGraph::path(4);
        expected.add_edge(0, 0, 1).unwrap();
        assert_eq!(t, expected);
        assert_eq!(catalog_graph(F::AffA, 3).unwrap(), EdgeGraph::cycle(3));
        assert_eq!(catalog_id(F::AffA, 3).unwrap().to_string(), "Ã2");
        assert_eq!(catalog_id(F::AffD, 6).unwrap().to_string(), "D̃5");
        assert_eq!(catalog_id(F::E8, 8).unwrap().to_string(), "E8");
        assert_eq!(catalog_id(F::AInf, 8).unwrap().to_string(), "A∞");
    }

    #[test]
    fn size_constraints() {
        assert!(catalog_graph(F::D, 3).is_err());
        assert!(catalog_graph(F::E6, 7).is_err());
        assert!(catalog_graph(F::AffA, 2).is_err());
        assert!(catalog_graph(F::AffD, 4).is_err());
        assert!(catalog_graph(F::AffE8, 9).is_ok());
    }

    #[test]
    fn every_family_builds_connected_with_expected_order() {
        for f in DiagramFamily::ALL {
            let (lo, exact) = f.size_range();
            let sizes: Vec<usize> = match exact {
                Some(e) => vec![e],
                None => (lo.max(1)..lo.max(1) + 6)
                    .filter(|&s| !(f == F::AffA && s == 2))
                    .collect(),
            };
            for s in sizes {
                let m = catalog_mixed(f, s).unwrap();
                assert_eq!(m.len(), vertex_count(f, s), "{f} size {s}");
                assert!(EdgeGraph::from_mixed(&m).is_connected(), "{f} size {s}");
                // at most one direction carries leftover arrows
                for &(i, j) in m.directed.keys() {
                    assert!(!m.directed.contains_key(&(j, i)));
                }
            }
        }
    }

    #[test]
    fn infinite_truncations_nest() {
        for f in DiagramFamily::INFINITE {
            let lo = f.size_range().0.max(1);
            for s in lo..lo + 8 {
                let small = catalog_mixed(f, s).unwrap();
                let big = catalog_mixed(f, s + 1).unwrap();
                let n = small.len();
                let restrict = |map: &BTreeMap<(usize, usize), u64>| -> BTreeMap<(usize, usize), u64> {
                    map.iter()
                        .filter(|(&(i, j), _)| i < n && j < n)
                        .map(|(&k, &v)| (k, v))
                        .collect()
                };
                assert_eq!(small.unoriented, restrict(&big.unoriented), "{f} {s}");
                assert_eq!(small.directed, restrict(&big.directed), "{f} {s}");
            }
        }
    }

    #[test]
    fn affine_and_finite_edge_counts() {
        // simply laced trees: n - 1 edges; affine D and E are trees on subscript + 1 vertices
        for (f, s) in [
            (F::D, 5),
            (F::E6, 6),
            (F::E7, 7),
            (F::E8, 8),
            (F::AffD, 6),
            (F::AffE6, 7),
            (F::AffE7, 8),
            (F::AffE8, 9),
        ] {
            let g = catalog_graph(f, s).unwrap();
            assert_eq!(g.edges().len(), s - 1, "{f}");
            assert!(g.is_simple());
        }
        let d4 = catalog_graph(F::AffD, 5).unwrap();
        assert_eq!(d4.degree_profile(), vec![(1, 0), (1, 0), (1, 0), (1, 0), (4, 0)]);
    }

    #[test]
    fn frontier_marks_on_truncations() {
        let m = catalog_mixed(F::AInf, 5).unwrap();
        assert_eq!(m.vertices.iter().filter(|v| !v.interior).count(), 1);
        assert!(!m.vertices[4].interior);
        let m = catalog_mixed(F::AInfInf, 3).unwrap();
        assert!(!m.vertices[5].interior && !m.vertices[6].interior);
        assert!(m.vertices[..5].iter().all(|v| v.interior));
    }

    #[test]
    fn family_parse_round_trip() {
        for f in DiagramFamily::ALL {
            assert_eq!(f.ascii().parse::<DiagramFamily>().unwrap(), f);
            assert_eq!(f.symbol().parse::<DiagramFamily>().unwrap(), f);
        }
        assert!("Q".parse::<DiagramFamily>().is_err());
    }

    #[test]
    fn edge_graph_json_round_trip() {
        let mut g = EdgeGraph::cycle(4);
        g.add_edge(2, 2, 1).unwrap();
        g.add_edge(0, 1, 1).unwrap();
        assert_eq!(EdgeGraph::from_json(&g.to_json()).unwrap(), g);
    }
}
