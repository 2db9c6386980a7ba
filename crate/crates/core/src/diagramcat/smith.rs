//! Spectral classification of connected graphs: spectral radius below 2
//! (finite simply laced diagrams), equal to 2 (affine ones), or above.
//!
//! The verdict is decided exactly on `M = 2I - A`: all leading principal
//! minors positive means `M` is positive definite, so `ρ < 2`; otherwise
//! `ρ = 2` holds iff `det M = 0` with a one-dimensional kernel spanned by a
//! strictly positive vector (Perron–Frobenius). Floating point only supplies
//! an advisory value, which must agree.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::iso::edge_graphs_isomorphic;
use super::{catalog_graph, catalog_id, DiagramFamily as F, DiagramId, EdgeGraph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SmithClass {
    SubCritical,
    Critical,
    SuperCritical,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralEstimate {
    pub value: f64,
    pub error_bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmithVerdict {
    pub class: SmithClass,
    /// Matching catalog diagram; always present for simple graphs.
    pub id: Option<DiagramId>,
    pub spectral: SpectralEstimate,
}

impl SmithVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "class": self.class,
            "id": self.id.map(|i| i.to_string()),
            "spectral_radius": self.spectral.value,
            "error_bound": self.spectral.error_bound,
        })
    }
}

fn require_connected(g: &EdgeGraph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::rejected("graph is empty or disconnected"))
    }
}

/// Largest adjacency eigenvalue with an a-posteriori bound.
///
/// The bound comes from the Collatz–Wielandt inequality
/// `min (Ax)_i / x_i ≤ ρ ≤ max (Ax)_i / x_i` at the computed Perron vector,
/// widened by a rounding margin. Loops count 1 on the diagonal.
pub fn spectral_radius(g: &EdgeGraph) -> Result<SpectralEstimate> {
    require_connected(g)?;
    let n = g.len();
    let adj = g.adjacency();
    let a = DMatrix::from_fn(n, n, |i, j| adj[i][j] as f64);
    let eig = SymmetricEigen::new(a.clone());
    let (k, &value) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(y.1))
        .ok_or_else(|| Error::internal("no eigenvalues"))?;
    let x: Vec<f64> = eig.eigenvectors.column(k).iter().map(|c| c.abs()).collect();
    let scale = adj.iter().flatten().map(|&v| v.unsigned_abs()).max().unwrap_or(0) as f64 + 1.0;
    let margin = 16.0 * f64::EPSILON * (n as f64) * scale;

    let bound = if x.iter().all(|&c| c > 1e-300) {
        let ax = &a * DMatrix::from_column_slice(n, 1, &x);
        let ratios: Vec<f64> = (0..n).map(|i| ax[i] / x[i]).collect();
        let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (value - lo).abs().max((hi - value).abs())
    } else {
        // residual bound for a symmetric matrix
        let v = eig.eigenvectors.column(k);
        (&a * v - v * value).norm() / v.norm()
    };
    Ok(SpectralEstimate {
        value,
        error_bound: bound + margin,
    })
}

/// `2I - A` as integers.
fn two_minus_a(g: &EdgeGraph) -> Vec<Vec<i64>> {
    let mut m = g.adjacency();
    for (i, row) in m.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = if i == j { 2 - *x } else { -*x };
        }
    }
    m
}

/// Fraction-free elimination without pivoting; the k-th pivot is the k-th
/// leading principal minor. `None` on i128 overflow.
fn leading_minors_positive_i128(m: &[Vec<i64>]) -> Option<bool> {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut prev: i128 = 1;
    for k in 0..n {
        if a[k][k] <= 0 {
            return Some(false);
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j]
                    .checked_mul(a[k][k])?
                    .checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = t / prev;
            }
        }
        prev = a[k][k];
    }
    Some(true)
}

fn leading_minors_positive_big(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    true
}

/// Bareiss determinant with row pivoting over big integers.
fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut prev = BigInt::from(1);
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Whether the kernel of `m` is one-dimensional and spanned by a strictly
/// positive vector.
fn positive_kernel_line(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, row);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..n {
                    let t = &f * &a[row][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() != n - 1 {
        return false;
    }
    let free = (0..n).find(|c| !pivots.contains(c)).expect("one free column");
    // x_free = 1, x_pivot = -a[r][free]
    let mut v = vec![BigRational::from_integer(BigInt::from(1)); n];
    for (r, &c) in pivots.iter().enumerate() {
        v[c] = -a[r][free].clone();
    }
    v.iter().all(|x| x.is_positive())
}

fn exact_class(g: &EdgeGraph) -> SmithClass {
    let m = two_minus_a(g);
    let pd = leading_minors_positive_i128(&m).unwrap_or_else(|| leading_minors_positive_big(&m));
    if pd {
        SmithClass::SubCritical
    } else if determinant(&m).is_zero() && positive_kernel_line(&m) {
        SmithClass::Critical
    } else {
        SmithClass::SuperCritical
    }
}

/// Catalog diagrams on `n` vertices that can carry the given verdict.
fn candidates(class: SmithClass, n: usize) -> Vec<(DiagramId, EdgeGraph)> {
    let families: &[F] = match class {
        SmithClass::SubCritical => &[F::A, F::D, F::E6, F::E7, F::E8],
        SmithClass::Critical => &[
            F::AffA,
            F::AffA12,
            F::AffD,
            F::AffE6,
            F::AffE7,
            F::AffE8,
            F::AffL,
            F::AffDL,
        ],
        SmithClass::SuperCritical => &[],
    };
    families
        .iter()
        .filter_map(|&f| Some((catalog_id(f, n).ok()?, catalog_graph(f, n).ok()?)))
        .collect()
}

fn identify(class: SmithClass, g: &EdgeGraph) -> Option<DiagramId> {
    candidates(class, g.len())
        .into_iter()
        .find(|(_, c)| edge_graphs_isomorphic(g, c))
        .map(|(id, _)| id)
}

/// Exact verdict and catalog id, without the floating-point cross-check.
pub fn smith_classify_exact(g: &EdgeGraph) -> Result<(SmithClass, Option<DiagramId>)> {
    require_connected(g)?;
    let class = exact_class(g);
    Ok((class, identify(class, g)))
}

pub fn smith_classify(g: &EdgeGraph) -> Result<SmithVerdict> {
    let (class, id) = smith_classify_exact(g)?;
    let spectral = spectral_radius(g)?;
    let (v, e) = (spectral.value, spectral.error_bound);
    let agrees = match class {
        SmithClass::SubCritical => v < 2.0 + e,
        SmithClass::Critical => (v - 2.0).abs() <= e,
        SmithClass::SuperCritical => v > 2.0 - e,
    };
    if !agrees {
        return Err(Error::internal(format!(
            "exact verdict {class:?} disagrees with spectral radius {v} ± {e}"
        )));
    }
    Ok(SmithVerdict { class, id, spectral })
}

#[derive(Clone, Debug, Default)]
pub struct ExhaustiveReport {
    pub max_vertices: usize,
    /// Labelled graphs examined per vertex count (all edge subsets).
    pub labelled: Vec<u64>,
    pub connected: Vec<u64>,
    pub subcritical_ids: BTreeSet<String>,
    pub critical_ids: BTreeSet<String>,
    pub mismatches: Vec<String>,
}

impl ExhaustiveReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Default)]
struct Tally {
    connected: u64,
    sub: BTreeSet<String>,
    crit: BTreeSet<String>,
    mismatches: Vec<String>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.connected += other.connected;
        self.sub.extend(other.sub);
        self.crit.extend(other.crit);
        self.mismatches.extend(other.mismatches);
        self
    }
}

fn connected_mask(n: usize, adj: &[u32]) -> bool {
    let full = (1u32 << n) - 1;
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let mut next = 0u32;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == full
}

/// Runs the classifier on every labelled simple graph with at most
/// `max_vertices` vertices and compares against catalog membership:
/// subcritical exactly for finite `ADE` diagrams, critical exactly for affine
/// ones. Every verdict goes through [`smith_classify_exact`]; the spectral
/// cross-check runs on each graph whose edge mask is the smallest in its
/// orbit under reversing the vertex order, plus every critical or
/// subcritical graph.
pub fn exhaustive_check(max_vertices: usize) -> Result<ExhaustiveReport> {
    if !(1..=8).contains(&max_vertices) {
        return Err(Error::InvalidArgument(format!(
            "exhaustive check supports 1..=8 vertices, got {max_vertices}"
        )));
    }
    let mut report = ExhaustiveReport {
        max_vertices,
        ..Default::default()
    };
    for n in 1..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let total: u64 = 1 << pairs.len();
        let sub_catalog = candidates(SmithClass::SubCritical, n);
        let crit_catalog: Vec<_> = candidates(SmithClass::Critical, n)
            .into_iter()
            .filter(|(_, g)| g.is_simple())
            .collect();
        let tally = (0..total)
            .into_par_iter()
            .fold(Tally::default, |mut t, mask| {
                let mut adj = vec![0u32; n];
                for (b, &(i, j)) in pairs.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        adj[i] |= 1 << j;
                        adj[j] |= 1 << i;
                    }
                }
                if !connected_mask(n, &adj) {
                    return t;
                }
                t.connected += 1;
                let edges: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect();
                let g = EdgeGraph::from_edges(n, &edges).expect("pairs in range");
                let expected = if let Some((id, _)) = sub_catalog.iter().find(|(_, c)| edge_graphs_isomorphic(&g, c)) {
                    (SmithClass::SubCritical, Some(*id))
                } else if let Some((id, _)) = crit_catalog.iter().find(|(_, c)| edge_graphs_isomorphic(&g, c)) {
                    (SmithClass::Critical, Some(*id))
                } else {
                    (SmithClass::SuperCritical, None)
                };
                let reversed = pairs
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &(i, j))| {
                        let (a, b) = (n - 1 - j, n - 1 - i);
                        pairs.iter().position(|&p| p == (a, b)).expect("reversed pair exists")
                    })
                    .fold(0u64, |acc, b| acc | 1 << b);
                let check_spectral = expected.0 != SmithClass::SuperCritical || mask <= reversed;
                let got = if check_spectral {
                    smith_classify(&g).map(|v| (v.class, v.id))
                } else {
                    smith_classify_exact(&g)
                };
                match got {
                    Ok(got) if got == expected => match got {
                        (SmithClass::SubCritical, Some(id)) => {
                            t.sub.insert(id.to_string());
                        }
                        (SmithClass::Critical, Some(id)) => {
                            t.crit.insert(id.to_string());
                        }
                        _ => {}
                    },
                    Ok(got) => t
                        .mismatches
                        .push(format!("n={n} edges={edges:?}: expected {expected:?}, got {got:?}")),
                    Err(e) => t.mismatches.push(format!("n={n} edges={edges:?}: {e}")),
                }
                t
            })
            .reduce(Tally::default, Tally::merge);
        report.labelled.push(total);
        report.connected.push(tally.connected);
        report.subcritical_ids.extend(tally.sub);
        report.critical_ids.extend(tally.crit);
        report.mismatches.extend(tally.mismatches);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_examples() {
        let one = EdgeGraph::empty(1);
        let s = spectral_radius(&one).unwrap();
        assert!(s.value.abs() <= s.error_bound);
        for n in 3..10 {
            let s = spectral_radius(&EdgeGraph::cycle(n)).unwrap();
            assert!((s.value - 2.0).abs() <= 1e-12);
            assert!(s.error_bound <= 1e-9);
        }
        let s = spectral_radius(&EdgeGraph::path(2)).unwrap();
        assert!((s.value - 1.0).abs() <= s.error_bound);
        assert!(s.error_bound <= 1e-9);
        let s = spectral_radius(&EdgeGraph::complete(4)).unwrap();
        assert!((s.value - 3.0).abs() <= s.error_bound);
    }

    #[test]
    fn disconnected_rejected() {
        let g = EdgeGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(spectral_radius(&g).is_err());
        assert!(smith_classify(&g).is_err());
    }

    #[test]
    fn smith_examples() {
        let v = smith_classify(&catalog_graph(F::E8, 8).unwrap()).unwrap();
        assert_eq!(v.class, SmithClass::SubCritical);
        assert_eq!(v.id.unwrap().to_string(), "E8");
        let v = smith_classify(&catalog_graph(F::AffD, 6).unwrap()).unwrap();
        assert_eq!(v.class, SmithClass::Critical);
        assert_eq!(v.id.unwrap().to_string(), "D̃5");
        let v = smith_classify(&EdgeGraph::complete(4)).unwrap();
        assert_eq!(v.class, SmithClass::SuperCritical);
        assert_eq!(v.id, None);
    }

    #[test]
    fn path_spectral_radius_matches_closed_form() {
        for n in 1..20 {
            let s = spectral_radius(&EdgeGraph::path(n)).unwrap();
            let exact = 2.0 * (std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert!((s.value - exact).abs() <= s.error_bound.max(1e-12), "n={n}");
        }
    }

    #[test]
    fn loops_count_once() {
        // two loops joined by an edge: all-ones eigenvector with eigenvalue 2
        let v = smith_classify(&catalog_graph(F::AffL, 2).unwrap()).unwrap();
        assert_eq!(v.class, SmithClass::Critical);
        assert_eq!(v.id.unwrap().to_string(), "L̃1");
        let v = smith_classify(&catalog_graph(F::AffDL, 6).unwrap()).unwrap();
        assert_eq!(v.class, SmithClass::Critical);
        // a path with one loop stays below 2
        let v = smith_classify(&catalog_graph(F::TInf, 6).unwrap()).unwrap();
        assert_eq!(v.class, SmithClass::SubCritical);
        assert_eq!(v.id, None);
        let v = smith_classify(&catalog_graph(F::AffA12, 2).unwrap()).unwrap();
        assert_eq!(
            (v.class, v.id.unwrap().to_string()),
            (SmithClass::Critical, "Ã12".to_string())
        );
        let v = smith_classify(&catalog_graph(F::AffA, 1).unwrap()).unwrap();
        assert_eq!(
            (v.class, v.id.unwrap().to_string()),
            (SmithClass::Critical, "Ã0".to_string())
        );
    }

    #[test]
    fn every_simply_laced_catalog_diagram() {
        for (f, sizes) in [(F::A, 1..12), (F::D, 4..12)] {
            for s in sizes {
                let v = smith_classify(&catalog_graph(f, s).unwrap()).unwrap();
                assert_eq!(v.class, SmithClass::SubCritical);
            }
        }
        for (f, sizes) in [(F::AffA, 3..12), (F::AffD, 5..12)] {
            for s in sizes {
                let v = smith_classify(&catalog_graph(f, s).unwrap()).unwrap();
                assert_eq!(v.class, SmithClass::Critical);
                assert_eq!(v.id, Some(catalog_id(f, s).unwrap()));
            }
        }
        for (f, s) in [(F::AffE6, 7), (F::AffE7, 8), (F::AffE8, 9)] {
            assert_eq!(
                smith_classify(&catalog_graph(f, s).unwrap()).unwrap().class,
                SmithClass::Critical
            );
        }
    }

    #[test]
    fn exhaustive_up_to_five() {
        let r = exhaustive_check(5).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
        // connected labelled graphs on 1..5 vertices (OEIS A001187)
        assert_eq!(r.connected, vec![1, 1, 4, 38, 728]);
        let sub: Vec<&str> = r.subcritical_ids.iter().map(String::as_str).collect();
        assert_eq!(sub, vec!["A1", "A2", "A3", "A4", "A5", "D4", "D5"]);
        let crit: Vec<&str> = r.critical_ids.iter().map(String::as_str).collect();
        assert_eq!(crit, vec!["D̃4", "Ã2", "Ã3", "Ã4"]);
    }

    #[test]
    fn determinant_and_kernel_helpers() {
        assert_eq!(determinant(&[vec![2, -1], vec![-1, 2]]), BigInt::from(3));
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert!(positive_kernel_line(&[vec![1, -1], vec![-1, 1]]));
        assert!(!positive_kernel_line(&[vec![1, 1], vec![1, 1]]));
    }
}
