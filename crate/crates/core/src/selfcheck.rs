//! End-to-end checks of the library against independent oracles and known
//! classifications. Each check returns a [`CriterionReport`]; the acceptance
//! test target and the `selfcheck` CLI subcommand both run [`run_all`].
//!
//! Every threshold below is fixed here and nowhere else.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::actiongraph::{action_matrix, dual_graph, generic_graph, regular_graph, simplify_mixed, ActionGraph};
use crate::diagramcat::{classify_window, exhaustive_check, DiagramFamily, DiagramId};
use crate::error::Result;
use crate::matmod::{
    decompose, make_f, restrict_v, subalgebra_graph, tensor, Indecomposable, Shift, Subalgebra, SubalgebraCase,
};
use crate::mckay::{mckay_certify, GroupSpec};
use crate::repcalc::{char_product_oracle, tensor_decompose, weight_multiplicities, weyl_dimension, Character};
use crate::rootdata::{Family, RootSystem, Weight};

/// Runtime budget for the tensor oracle sweep.
pub const TENSOR_BUDGET: Duration = Duration::from_secs(120);
/// Runtime budget for the McKay sweep, including the icosahedral closure.
pub const MCKAY_BUDGET: Duration = Duration::from_secs(60);
/// Minimum certified radius for the rank-one window classifications.
pub const MIN_CERTIFIED_RADIUS: usize = 10;
/// Number of random weights in the dimension check.
pub const RANDOM_WEIGHTS: usize = 100;
/// Upper limit on the dimension of the random weights.
pub const MAX_RANDOM_DIM: u64 = 100_000;
/// Largest Jordan cell size for the e-case oracle comparison.
pub const E_ORACLE_MAX: usize = 30;
/// Largest vertex count for the exhaustive spectral classification.
pub const EXHAUSTIVE_VERTICES: usize = 7;
/// Window parameter for the rank-one and subalgebra graphs.
pub const RANK_ONE_WINDOW: i64 = 30;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
        })
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} [{}] {}: {} ({:.2}s)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

fn timed(id: u8, name: &'static str, body: impl FnOnce() -> Result<(bool, String)>) -> CriterionReport {
    let start = Instant::now();
    let (passed, detail) = match body() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionReport {
        id,
        name,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

fn box_weights(rank: usize, max: i64) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|w: Vec<i64>| {
                (0..=max).map(move |c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Weight).collect()
}

/// Pairs checked by the tensor sweep: (family, rank, coordinate bound).
pub const TENSOR_SWEEP: [(Family, usize, i64); 4] = [
    (Family::A, 1, 40),
    (Family::A, 2, 6),
    (Family::B, 2, 4),
    (Family::G, 2, 4),
];

/// Every `tensor_decompose` expands to exactly the convolution of the factor
/// characters.
pub fn check_tensor_oracle() -> CriterionReport {
    timed(1, "tensor decomposition equals character convolution", || {
        let mut pairs = 0usize;
        let mut failures = Vec::new();
        for (family, rank, bound) in TENSOR_SWEEP {
            let rs = RootSystem::new(family, rank)?;
            let weights = box_weights(rank, bound);
            let chars: Vec<Character> = weights
                .par_iter()
                .map(|w| weight_multiplicities(&rs, w))
                .collect::<Result<_>>()?;
            let bad: Vec<String> = (0..weights.len())
                .into_par_iter()
                .flat_map_iter(|i| (i..weights.len()).map(move |j| (i, j)))
                .map(|(i, j)| -> Result<Option<String>> {
                    let d = tensor_decompose(&rs, &weights[i], &weights[j])?;
                    let expanded = d.character(&rs)?;
                    let oracle = char_product_oracle(&chars[i], &chars[j]);
                    Ok((expanded != oracle).then(|| format!("{}: {} ⊗ {}", rs.name(), weights[i], weights[j])))
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
            pairs += weights.len() * (weights.len() + 1) / 2;
            failures.extend(bad);
        }
        Ok((
            failures.is_empty(),
            if failures.is_empty() {
                format!("{pairs} unordered pairs agree")
            } else {
                format!("{} of {pairs} pairs differ, first {}", failures.len(), failures[0])
            },
        ))
    })
    .with_budget(TENSOR_BUDGET)
}

impl CriterionReport {
    fn with_budget(mut self, budget: Duration) -> Self {
        if self.elapsed > budget {
            self.passed = false;
            self.detail = format!("{}; exceeded budget of {}s", self.detail, budget.as_secs());
        }
        self
    }
}

/// Coordinate range sampled per type before the dimension filter.
const RANDOM_RANGES: [(Family, usize, i64); 4] = [
    (Family::A, 1, 2000),
    (Family::A, 2, 60),
    (Family::B, 2, 30),
    (Family::G, 2, 15),
];

/// Seeded dominant weights with `dim ≤ MAX_RANDOM_DIM`, cycling through the types.
pub fn random_weights(seed: u64) -> Result<Vec<(RootSystem, Weight)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let systems: Vec<(RootSystem, i64)> = RANDOM_RANGES
        .iter()
        .map(|&(f, r, b)| Ok((RootSystem::new(f, r)?, b)))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(RANDOM_WEIGHTS);
    while out.len() < RANDOM_WEIGHTS {
        let (rs, bound) = &systems[out.len() % systems.len()];
        let w = Weight((0..rs.rank()).map(|_| rng.gen_range(0..=*bound)).collect());
        if weyl_dimension(rs, &w)? <= MAX_RANDOM_DIM {
            out.push((rs.clone(), w));
        }
    }
    Ok(out)
}

/// Weight multiplicities sum to the Weyl dimension.
pub fn check_dimensions(seed: u64) -> CriterionReport {
    timed(2, "weight multiplicities sum to the Weyl dimension", || {
        let sample = random_weights(seed)?;
        let bad: Vec<String> = sample
            .par_iter()
            .map(|(rs, w)| -> Result<Option<String>> {
                let total = weight_multiplicities(rs, w)?.total();
                let dim = weyl_dimension(rs, w)?;
                Ok((total != dim as i64).then(|| format!("{} {w}: {total} ≠ {dim}", rs.name())))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let largest = sample
            .iter()
            .map(|(rs, w)| weyl_dimension(rs, w))
            .collect::<Result<Vec<_>>>()?;
        Ok((
            bad.is_empty(),
            if bad.is_empty() {
                format!(
                    "{} weights (seed {seed:#x}, largest dimension {})",
                    sample.len(),
                    largest.iter().max().copied().unwrap_or(0)
                )
            } else {
                format!("{} mismatches, first {}", bad.len(), bad[0])
            },
        ))
    })
}

fn classify_at(g: &ActionGraph, base: usize) -> Result<(Option<DiagramId>, usize)> {
    let v = classify_window(&simplify_mixed(g), base, None)?;
    Ok((v.id, v.certified_radius))
}

fn verdict_string(id: Option<DiagramId>, r: usize) -> String {
    match id {
        Some(id) => format!("{id} at radius {r}"),
        None => format!("Unknown at radius {r}"),
    }
}

/// Rank-one windows classify as A∞ (regular) and A∞∞ (generic).
pub fn check_rank_one_windows() -> CriterionReport {
    timed(3, "rank-one windows are infinite Dynkin diagrams", || {
        let rs = RootSystem::new(Family::A, 1)?;
        let v = Weight(vec![1]);
        let reg = regular_graph(&rs, &v, RANK_ONE_WINDOW)?;
        let (reg_id, reg_r) = classify_at(&reg, 0)?;
        let gen = generic_graph(&rs, &v, RANK_ONE_WINDOW)?;
        let base = gen
            .index_of_weight(&Weight(vec![0]))
            .expect("zero weight lies in the box");
        let (gen_id, gen_r) = classify_at(&gen, base)?;
        let ok = reg_id == Some(DiagramId::new(DiagramFamily::AInf, None))
            && gen_id == Some(DiagramId::new(DiagramFamily::AInfInf, None))
            && reg_r >= MIN_CERTIFIED_RADIUS
            && gen_r >= MIN_CERTIFIED_RADIUS;
        Ok((
            ok,
            format!(
                "regular {}, generic {}",
                verdict_string(reg_id, reg_r),
                verdict_string(gen_id, gen_r)
            ),
        ))
    })
}

/// Generic A2 grid: out-degree 3 along the weights of L(ϖ₁); the dual graph
/// reverses every arrow and is the image of the graph under `μ ↦ -μ`.
pub fn check_generic_grid() -> CriterionReport {
    timed(4, "generic A2 grid and its dual", || {
        let rs = RootSystem::new(Family::A, 2)?;
        let g = generic_graph(&rs, &Weight(vec![1, 0]), 4)?;
        let dual = dual_graph(&g)?;
        let steps: BTreeSet<Weight> = weight_multiplicities(&rs, &Weight(vec![1, 0]))?
            .iter()
            .map(|(w, _)| w.clone())
            .collect();
        let weight =
            |g: &ActionGraph, i: usize| g.vertices()[i].weight.clone().expect("generic vertices carry weights");

        let mut problems = Vec::new();
        let interior = g.interior_indices();
        for &i in &interior {
            let mu = weight(&g, i);
            let targets: BTreeSet<Weight> = g
                .out_arrows(i)
                .map(|(j, m)| {
                    if m != 1 {
                        problems.push(format!("multiplicity {m} out of {mu}"));
                    }
                    weight(&g, j).sub(&mu)
                })
                .collect();
            if g.out_degree(i) != 3 || targets != steps {
                problems.push(format!("vertex {mu} has steps {targets:?}"));
            }
        }
        let reversed: BTreeMap<(usize, usize), u64> = g.arrows().iter().map(|(&(a, b), &m)| ((b, a), m)).collect();
        if &reversed != dual.arrows() {
            problems.push("dual graph is not the reversal".into());
        }
        // explicit isomorphism μ ↦ -μ
        let mut mapped = BTreeMap::new();
        for (&(a, b), &m) in g.arrows() {
            let ia = dual.index_of_weight(&weight(&g, a).neg());
            let ib = dual.index_of_weight(&weight(&g, b).neg());
            match (ia, ib) {
                (Some(x), Some(y)) => {
                    mapped.insert((x, y), m);
                }
                _ => problems.push("negation leaves the window".into()),
            }
        }
        if &mapped != dual.arrows() {
            problems.push("μ ↦ -μ is not an isomorphism onto the dual".into());
        }
        let flags_match = (0..g.len()).all(|i| {
            dual.index_of_weight(&weight(&g, i).neg())
                .is_some_and(|j| dual.vertices()[j].interior == g.vertices()[i].interior)
        });
        if !flags_match {
            problems.push("interior flags differ under μ ↦ -μ".into());
        }
        Ok((
            problems.is_empty(),
            if problems.is_empty() {
                format!(
                    "{} vertices, {} interior with out-degree 3, {} arrows reversed by the dual",
                    g.len(),
                    interior.len(),
                    g.arrows().len()
                )
            } else {
                problems.join("; ")
            },
        ))
    })
}

/// Groups in the McKay sweep.
pub fn mckay_sweep() -> Vec<GroupSpec> {
    let mut specs: Vec<GroupSpec> = (2..=12).map(GroupSpec::Cyclic).collect();
    specs.extend((2..=8).map(GroupSpec::BinaryDihedral));
    specs.extend([
        GroupSpec::BinaryTetrahedral,
        GroupSpec::BinaryOctahedral,
        GroupSpec::BinaryIcosahedral,
    ]);
    specs
}

/// McKay graphs of the finite subgroups of SL2 are the affine ADE diagrams.
pub fn check_mckay() -> CriterionReport {
    timed(5, "McKay graphs are affine ADE diagrams", || {
        let mut problems = Vec::new();
        let specs = mckay_sweep();
        for &spec in &specs {
            match mckay_certify(spec) {
                Ok(r) => {
                    if r.diagram != spec.expected_diagram() || !r.symmetric || !r.balanced {
                        problems.push(format!("{spec}: got {}", r.diagram));
                    }
                }
                Err(e) => problems.push(format!("{spec}: {e}")),
            }
        }
        Ok((
            problems.is_empty(),
            if problems.is_empty() {
                format!("{} groups certified", specs.len())
            } else {
                problems.join("; ")
            },
        ))
    })
    .with_budget(MCKAY_BUDGET)
}

/// The finite and affine ADE diagrams on at most `n` vertices, as displayed ids.
pub fn expected_ade(n: usize) -> (BTreeSet<String>, BTreeSet<String>) {
    let mut sub = BTreeSet::new();
    let mut crit = BTreeSet::new();
    let push = |set: &mut BTreeSet<String>, f: DiagramFamily, r: usize| {
        let rank = f.has_rank().then_some(r);
        set.insert(DiagramId::new(f, rank).to_string());
    };
    for k in 1..=n {
        push(&mut sub, DiagramFamily::A, k);
    }
    for k in 4..=n {
        push(&mut sub, DiagramFamily::D, k);
    }
    for (f, k) in [(DiagramFamily::E6, 6), (DiagramFamily::E7, 7), (DiagramFamily::E8, 8)] {
        if k <= n {
            push(&mut sub, f, k);
        }
    }
    // simple graphs only: Ã_r has r + 1 ≥ 3 vertices
    for r in 2..n {
        push(&mut crit, DiagramFamily::AffA, r);
    }
    for r in 4..n {
        push(&mut crit, DiagramFamily::AffD, r);
    }
    for (f, r) in [
        (DiagramFamily::AffE6, 6),
        (DiagramFamily::AffE7, 7),
        (DiagramFamily::AffE8, 8),
    ] {
        if r < n {
            push(&mut crit, f, r);
        }
    }
    (sub, crit)
}

/// Exhaustive spectral classification of connected simple graphs.
pub fn check_smith() -> CriterionReport {
    timed(6, "exhaustive spectral classification", || {
        let report = exhaustive_check(EXHAUSTIVE_VERTICES)?;
        let (sub, crit) = expected_ade(EXHAUSTIVE_VERTICES);
        let mut problems = report.mismatches.clone();
        if report.subcritical_ids != sub {
            problems.push(format!("subcritical ids {:?}", report.subcritical_ids));
        }
        if report.critical_ids != crit {
            problems.push(format!("critical ids {:?}", report.critical_ids));
        }
        Ok((
            problems.is_empty(),
            if problems.is_empty() {
                format!(
                    "{} connected graphs; {} finite and {} affine diagrams found",
                    report.connected.iter().sum::<u64>(),
                    sub.len(),
                    crit.len()
                )
            } else {
                problems.join("; ")
            },
        ))
    })
}

/// Rank sequence of powers of an integer matrix, computed from explicit
/// powers with fraction-free elimination.
fn oracle_power_ranks(x: &[Vec<i64>]) -> Vec<usize> {
    let n = x.len();
    let big: Vec<Vec<BigInt>> = x.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut p: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut ranks = vec![n];
    loop {
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if big[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !p[k][j].is_zero() {
                        next[i][j] += &big[i][k] * &p[k][j];
                    }
                }
            }
        }
        p = next;
        let r = bareiss_rank(p.clone());
        let last = *ranks.last().expect("non-empty");
        ranks.push(r);
        if r == last || r == 0 {
            return ranks;
        }
    }
}

fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Jordan block sizes of a nilpotent matrix from its power ranks.
fn oracle_blocks(ranks: &[usize]) -> BTreeMap<usize, usize> {
    let r = |j: usize| *ranks.get(j).unwrap_or(ranks.last().expect("non-empty"));
    (1..ranks.len())
        .filter_map(|j| {
            let exact = (r(j - 1) - r(j)) - (r(j) - r(j + 1));
            (exact > 0).then_some((j, exact))
        })
        .collect()
}

/// The nilpotent action of e on `F(0,k) ⊗ V`, basis `(i, a) ↦ 2i + a`.
fn oracle_e_matrix(k: usize) -> Vec<Vec<i64>> {
    let n = 2 * k;
    let mut x = vec![vec![0i64; n]; n];
    for i in 0..k {
        for a in 0..2 {
            let src = 2 * i + a;
            if i + 1 < k {
                x[2 * (i + 1) + a][src] += 1;
            }
            if a == 0 {
                x[2 * i + 1][src] += 1;
            }
        }
    }
    x
}

/// Subalgebra graphs classify as expected and the e-case agrees with the
/// rank-sequence oracle.
pub fn check_subalgebras() -> CriterionReport {
    timed(7, "subalgebra graphs and the e-case oracle", || {
        let mut problems = Vec::new();
        let mut verdicts = Vec::new();
        let n = RANK_ONE_WINDOW as usize;
        for (case, name, expected) in [
            (SubalgebraCase::B, "b", DiagramFamily::AInf),
            (SubalgebraCase::E, "e", DiagramFamily::AInf),
            (SubalgebraCase::H, "h", DiagramFamily::AInfInf),
        ] {
            let g = subalgebra_graph(case, n)?;
            let base = if case == SubalgebraCase::H { n } else { 0 };
            let (id, r) = classify_at(&g, base)?;
            verdicts.push(format!("{name}: {}", verdict_string(id, r)));
            if id != Some(DiagramId::new(expected, None)) {
                problems.push(format!("{name} classifies as {}", verdict_string(id, r)));
            }
        }
        let v = restrict_v(Subalgebra::E);
        for k in 1..=E_ORACLE_MAX {
            let t = tensor(&make_f(num_rational::BigRational::zero(), k)?, &v)?;
            let got = decompose(&t)?;
            let Some(list) = got.family() else {
                problems.push(format!("F(0,{k}) ⊗ V left the family"));
                continue;
            };
            let oracle = oracle_blocks(&oracle_power_ranks(&oracle_e_matrix(k)));
            let ours: BTreeMap<usize, usize> = list
                .parts()
                .iter()
                .map(|(x, &m)| match x {
                    Indecomposable::F(s, size) if *s == Shift::plain_int(0) => Ok((*size, m)),
                    other => Err(other.to_string()),
                })
                .collect::<std::result::Result<_, _>>()
                .unwrap_or_default();
            if ours != oracle {
                problems.push(format!("k={k}: decompose {list}, oracle {oracle:?}"));
            }
        }
        Ok((
            problems.is_empty(),
            if problems.is_empty() {
                format!(
                    "{}; e-case matches the oracle for k ≤ {E_ORACLE_MAX}",
                    verdicts.join(", ")
                )
            } else {
                problems.join("; ")
            },
        ))
    })
}

/// Action matrices of ϖ₁ and ϖ₂ on A2 windows: transposes of each other,
/// commuting on interior blocks.
pub fn check_transpose() -> CriterionReport {
    timed(8, "action matrices transpose under duality and commute", || {
        let rs = RootSystem::new(Family::A, 2)?;
        let (w1, w2) = (Weight(vec![1, 0]), Weight(vec![0, 1]));
        let mut problems = Vec::new();
        let mut sizes = Vec::new();
        for (name, a, b) in [
            ("regular", regular_graph(&rs, &w1, 6)?, regular_graph(&rs, &w2, 6)?),
            ("generic", generic_graph(&rs, &w1, 4)?, generic_graph(&rs, &w2, 4)?),
        ] {
            let (ma, mb) = (action_matrix(&a), action_matrix(&b));
            if ma.transpose() != mb {
                problems.push(format!("{name}: [F]ᵀ ≠ [F*]"));
            }
            let interior: Vec<usize> = a
                .interior_indices()
                .into_iter()
                .filter(|i| b.vertices()[*i].interior)
                .collect();
            if ma.mul(&mb).restrict(&interior) != mb.mul(&ma).restrict(&interior) {
                problems.push(format!("{name}: matrices do not commute on the interior"));
            }
            sizes.push(format!("{name} {}/{}", interior.len(), a.len()));
        }
        Ok((
            problems.is_empty(),
            if problems.is_empty() {
                format!("interior/window sizes: {}", sizes.join(", "))
            } else {
                problems.join("; ")
            },
        ))
    })
}

/// All criteria, in order.
pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    vec![
        check_tensor_oracle(),
        check_dimensions(seed),
        check_rank_one_windows(),
        check_generic_grid(),
        check_mckay(),
        check_smith(),
        check_subalgebras(),
        check_transpose(),
    ]
}
