//! Root systems, weight lattices and Weyl-group reflections for the simple
//! Lie types A–G.
//!
//! Weights are always stored in fundamental-weight coordinates. Simple roots
//! are the rows of the Cartan matrix, `cartan[i][j] = <α_i, α_j^∨>`, so the
//! i-th coordinate of any weight is its pairing with the coroot `α_i^∨`.
//! Simple-root coordinates are derived on demand through the inverse Cartan
//! matrix.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank accepted by [`RootSystem::new`].
pub const DEFAULT_RANK_LIMIT: usize = 8;

/// An integral weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The fundamental weight `ϖ_i` (zero-based index).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = vec![0; rank];
        w[i] = 1;
        Weight(w)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Weight {
        self.scale(-1)
    }

    /// `λ ≤ μ` coordinate-wise in the fundamental-weight basis.
    pub fn le_coordinatewise(&self, other: &Weight) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Parses comma-separated coordinates, e.g. `1,0,-2`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        if trimmed.is_empty() {
            return Err(Error::InvalidArgument(format!("empty weight '{s}'")));
        }
        trimmed
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad weight coordinate '{t}' in '{s}'")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

/// Cartan type of a simple Lie algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::InvalidArgument(format!("unknown Lie type '{other}'"))),
        }
    }
}

/// A finite root system of simple type together with its weight-lattice data.
#[derive(Clone, Debug)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    /// Squared lengths `(α_i, α_i)`, normalized so the short roots have length 2.
    root_lengths: Vec<i64>,
    simple_roots: Vec<Weight>,
    positive_roots: Vec<Weight>,
    positive_roots_simple: Vec<Vec<i64>>,
    rho: Weight,
    inverse_cartan: Vec<Vec<Rational64>>,
    /// `(ϖ_i, ϖ_j) = form_num[i][j] / form_den`.
    form_num: Vec<Vec<i64>>,
    form_den: i64,
}

fn validate_type(family: Family, rank: usize, limit: usize) -> Result<()> {
    let bad = |reason: &str| Error::InvalidType {
        family: family.to_string(),
        rank,
        reason: reason.to_string(),
    };
    if rank == 0 {
        return Err(bad("rank must be positive"));
    }
    if rank > limit {
        return Err(bad(&format!("rank exceeds the configured limit {limit}")));
    }
    match family {
        Family::A => Ok(()),
        Family::B | Family::C if rank < 2 => Err(bad("types B and C require rank >= 2")),
        Family::B | Family::C => Ok(()),
        Family::D if rank < 4 => Err(bad("type D requires rank >= 4")),
        Family::D => Ok(()),
        Family::E if !(6..=8).contains(&rank) => Err(bad("type E exists only in ranks 6, 7, 8")),
        Family::E => Ok(()),
        Family::F if rank != 4 => Err(bad("type F exists only in rank 4")),
        Family::F => Ok(()),
        Family::G if rank != 2 => Err(bad("type G exists only in rank 2")),
        Family::G => Ok(()),
    }
}

/// Symmetrized Gram matrix `(α_i, α_j)` of the simple roots, Bourbaki numbering.
fn simple_root_gram(family: Family, n: usize) -> Vec<Vec<i64>> {
    let mut s = vec![vec![0i64; n]; n];
    let link = |s: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        s[i][j] = v;
        s[j][i] = v;
    };
    match family {
        Family::A => {
            for i in 0..n {
                s[i][i] = 2;
            }
            for i in 0..n.saturating_sub(1) {
                link(&mut s, i, i + 1, -1);
            }
        }
        Family::B => {
            // α_1..α_{n-1} long, α_n short
            for i in 0..n - 1 {
                s[i][i] = 4;
            }
            s[n - 1][n - 1] = 2;
            for i in 0..n - 1 {
                link(&mut s, i, i + 1, -2);
            }
        }
        Family::C => {
            // α_1..α_{n-1} short, α_n long
            for i in 0..n - 1 {
                s[i][i] = 2;
            }
            s[n - 1][n - 1] = 4;
            for i in 0..n - 2 {
                link(&mut s, i, i + 1, -1);
            }
            link(&mut s, n - 2, n - 1, -2);
        }
        Family::D => {
            for i in 0..n {
                s[i][i] = 2;
            }
            for i in 0..n - 2 {
                link(&mut s, i, i + 1, -1);
            }
            link(&mut s, n - 3, n - 1, -1);
        }
        Family::E => {
            for i in 0..n {
                s[i][i] = 2;
            }
            link(&mut s, 0, 2, -1);
            link(&mut s, 1, 3, -1);
            for i in 2..n - 1 {
                link(&mut s, i, i + 1, -1);
            }
        }
        Family::F => {
            s[0][0] = 4;
            s[1][1] = 4;
            s[2][2] = 2;
            s[3][3] = 2;
            link(&mut s, 0, 1, -2);
            link(&mut s, 1, 2, -2);
            link(&mut s, 2, 3, -1);
        }
        Family::G => {
            // α_1 short, α_2 long
            s[0][0] = 2;
            s[1][1] = 6;
            link(&mut s, 0, 1, -3);
        }
    }
    s
}

fn invert_rational(m: &[Vec<i64>]) -> Result<Vec<Vec<Rational64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational64> = row.iter().map(|&x| Rational64::from_integer(x)).collect();
            r.extend((0..n).map(|j| if i == j { Rational64::one() } else { Rational64::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::internal("singular Cartan matrix"))?;
        a.swap(col, pivot);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl RootSystem {
    /// Builds the root system of type `family` and rank `rank`, with ranks
    /// capped at [`DEFAULT_RANK_LIMIT`].
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        Self::with_rank_limit(family, rank, DEFAULT_RANK_LIMIT)
    }

    pub fn with_rank_limit(family: Family, rank: usize, limit: usize) -> Result<Self> {
        validate_type(family, rank, limit)?;
        let gram = simple_root_gram(family, rank);
        let root_lengths: Vec<i64> = (0..rank).map(|i| gram[i][i]).collect();
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * gram[i][j] / gram[j][j]).collect())
            .collect();
        let simple_roots: Vec<Weight> = cartan.iter().map(|r| Weight(r.clone())).collect();
        let inverse_cartan = invert_rational(&cartan)?;

        // (ϖ_i, ϖ_j) = (A^{-1})_{ij} (α_j, α_j) / 2
        let form: Vec<Vec<Rational64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| inverse_cartan[i][j] * Rational64::new(root_lengths[j], 2))
                    .collect()
            })
            .collect();
        let form_den = form
            .iter()
            .flatten()
            .fold(1i64, |acc, q| num_integer::lcm(acc, *q.denom()));
        let form_num: Vec<Vec<i64>> = form
            .iter()
            .map(|row| row.iter().map(|q| (q * form_den).to_integer()).collect())
            .collect();
        for i in 0..rank {
            for j in 0..rank {
                if form_num[i][j] != form_num[j][i] {
                    return Err(Error::internal("fundamental-weight form is not symmetric"));
                }
            }
        }

        let (positive_roots_simple, positive_roots) = enumerate_positive_roots(&cartan);
        let rho = Weight(vec![1; rank]);
        let rs = RootSystem {
            family,
            rank,
            cartan,
            root_lengths,
            simple_roots,
            positive_roots,
            positive_roots_simple,
            rho,
            inverse_cartan,
            form_num,
            form_den,
        };
        rs.check_invariants()?;
        Ok(rs)
    }

    fn check_invariants(&self) -> Result<()> {
        let n = self.rank;
        for i in 0..n {
            if self.cartan[i][i] != 2 {
                return Err(Error::internal("Cartan diagonal entry differs from 2"));
            }
            for j in 0..n {
                if i != j && (self.cartan[i][j] > 0 || (self.cartan[i][j] == 0) != (self.cartan[j][i] == 0)) {
                    return Err(Error::internal("Cartan off-diagonal sign pattern violated"));
                }
            }
        }
        if self.positive_roots.len() != self.classical_positive_root_count() {
            return Err(Error::internal(format!(
                "{}{} produced {} positive roots, expected {}",
                self.family,
                self.rank,
                self.positive_roots.len(),
                self.classical_positive_root_count()
            )));
        }
        // half-sum of positive roots must be (1,...,1)
        let mut sum = Weight::zero(n);
        for r in &self.positive_roots {
            sum = sum.add(r);
        }
        if sum != self.rho.scale(2) {
            return Err(Error::internal("half-sum of positive roots is not rho"));
        }
        Ok(())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn root_lengths(&self) -> &[i64] {
        &self.root_lengths
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    /// Positive roots in fundamental-weight coordinates.
    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Positive roots in simple-root coordinates (same order as [`Self::positive_roots`]).
    pub fn positive_roots_simple_coords(&self) -> &[Vec<i64>] {
        &self.positive_roots_simple
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub fn classical_positive_root_count(&self) -> usize {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => n * (n + 1) / 2,
            (Family::B, _) | (Family::C, _) => n * n,
            (Family::D, _) => n * (n - 1),
            (Family::E, 6) => 36,
            (Family::E, 7) => 63,
            (Family::E, _) => 120,
            (Family::F, _) => 24,
            (Family::G, _) => 6,
        }
    }

    /// Order of the Weyl group (closed formula, never enumerated).
    pub fn weyl_group_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match (self.family, self.rank) {
            (Family::A, _) => fact(n + 1),
            (Family::B, _) | (Family::C, _) => (1u128 << n) * fact(n),
            (Family::D, _) => (1u128 << (n - 1)) * fact(n),
            (Family::E, 6) => 51_840,
            (Family::E, 7) => 2_903_040,
            (Family::E, _) => 696_729_600,
            (Family::F, _) => 1_152,
            (Family::G, _) => 12,
        }
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                weight: w.to_string(),
                expected: self.rank,
                got: w.rank(),
            });
        }
        Ok(())
    }

    pub fn check_dominant(&self, w: &Weight) -> Result<()> {
        self.check_weight(w)?;
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.to_string()));
        }
        Ok(())
    }

    /// Simple-root coordinates of `w`, computed exactly via the inverse Cartan matrix.
    pub fn to_simple_root_coords(&self, w: &Weight) -> Vec<Rational64> {
        (0..self.rank)
            .map(|j| {
                (0..self.rank)
                    .map(|i| self.inverse_cartan[i][j] * Rational64::from_integer(w.0[i]))
                    .sum()
            })
            .collect()
    }

    /// `(u, v)` scaled by [`Self::form_denominator`], so the result is an integer.
    pub fn scaled_inner(&self, u: &Weight, v: &Weight) -> i64 {
        let mut acc = 0i64;
        for i in 0..self.rank {
            if u.0[i] == 0 {
                continue;
            }
            let row = &self.form_num[i];
            let mut s = 0i64;
            for j in 0..self.rank {
                s += row[j] * v.0[j];
            }
            acc += u.0[i] * s;
        }
        acc
    }

    pub fn form_denominator(&self) -> i64 {
        self.form_den
    }

    /// Exact inner product `(u, v)`.
    pub fn inner(&self, u: &Weight, v: &Weight) -> Rational64 {
        Rational64::new(self.scaled_inner(u, v), self.form_den)
    }

    /// Simple reflection `s_i(w) = w - w_i α_i`.
    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let c = w.0[i];
        Weight(w.0.iter().zip(&self.cartan[i]).map(|(x, a)| x - c * a).collect())
    }

    /// Dominant Weyl conjugate of `w` and the number of simple reflections used.
    ///
    /// Each step reflects in a simple root pairing negatively with the current
    /// weight, which lowers the length of the accumulated group element by one,
    /// so the count has the parity of the element's length.
    pub fn dominant_conjugate(&self, w: &Weight) -> (Weight, usize) {
        let mut cur = w.clone();
        let mut steps = 0;
        while let Some(i) = cur.0.iter().position(|&c| c < 0) {
            cur = self.reflect(&cur, i);
            steps += 1;
        }
        (cur, steps)
    }

    /// Full orbit of `w` under the Weyl group, by closure under simple reflections.
    pub fn weyl_orbit(&self, w: &Weight) -> BTreeSet<Weight> {
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.clone());
        queue.push_back(w.clone());
        while let Some(cur) = queue.pop_front() {
            for i in 0..self.rank {
                if cur.0[i] == 0 {
                    continue;
                }
                let next = self.reflect(&cur, i);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Dominant representative of the dot-orbit `W·w = w(w+ρ)-ρ` and the sign
    /// `det(x)` of the element used; sign 0 when `w+ρ` lies on a wall, in which
    /// case the returned weight carries no meaning.
    pub fn dot_dominant(&self, w: &Weight) -> (Weight, i8) {
        let shifted = w.add(&self.rho);
        let (dom, steps) = self.dominant_conjugate(&shifted);
        if dom.0.contains(&0) {
            return (dom.sub(&self.rho), 0);
        }
        let sign = if steps % 2 == 0 { 1 } else { -1 };
        (dom.sub(&self.rho), sign)
    }

    /// Highest weight of the dual module: the dominant conjugate of `-w`.
    pub fn dual_weight(&self, w: &Weight) -> Weight {
        self.dominant_conjugate(&w.neg()).0
    }
}

/// Positive roots by the root-string construction.
///
/// Works level by level from the simple roots: for a root `β` and a simple root
/// `α_i`, the α_i-string through β extends upward iff `p - <β, α_i^∨> > 0`,
/// where `p` is how far the string extends downward.
fn enumerate_positive_roots(cartan: &[Vec<i64>]) -> (Vec<Vec<i64>>, Vec<Weight>) {
    let n = cartan.len();
    let to_weight =
        |c: &[i64]| -> Weight { Weight((0..n).map(|j| (0..n).map(|i| c[i] * cartan[i][j]).sum()).collect()) };
    let mut all: Vec<Vec<i64>> = Vec::new();
    let mut known: HashSet<Vec<i64>> = HashSet::new();
    let mut level: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    for r in &level {
        known.insert(r.clone());
    }
    while !level.is_empty() {
        all.extend(level.iter().cloned());
        let mut next = Vec::new();
        for beta in &level {
            let beta_w = to_weight(beta);
            for i in 0..n {
                // p: largest k with β - kα_i a root (or zero vector counts as end)
                let mut p = 0;
                loop {
                    let mut down = beta.clone();
                    down[i] -= p + 1;
                    if down.iter().all(|&x| x >= 0) && known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q = p - beta_w.0[i];
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        next.sort();
        level = next;
    }
    let weights = all.iter().map(|c| to_weight(c)).collect();
    (all, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    /// Brute-force closure oracle: all roots are the Weyl orbits of the simple roots.
    fn roots_by_orbit(rs: &RootSystem) -> BTreeSet<Weight> {
        let mut all = BTreeSet::new();
        for a in rs.simple_roots() {
            all.extend(rs.weyl_orbit(a));
        }
        all
    }

    #[test]
    fn a1_and_a2_cartan() {
        let a1 = RootSystem::new(Family::A, 1).unwrap();
        assert_eq!(a1.cartan(), &[vec![2]]);
        assert_eq!(a1.positive_roots().len(), 1);
        let a2 = RootSystem::new(Family::A, 2).unwrap();
        assert_eq!(a2.cartan(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(a2.positive_roots().len(), 3);
    }

    #[test]
    fn g2_has_six_positive_roots_matching_orbit_oracle() {
        let g2 = RootSystem::new(Family::G, 2).unwrap();
        assert_eq!(g2.positive_roots().len(), 6);
        let orbit_roots = roots_by_orbit(&g2);
        assert_eq!(orbit_roots.len(), 12);
        let positives: BTreeSet<Weight> = orbit_roots
            .into_iter()
            .filter(|r| g2.to_simple_root_coords(r).iter().all(|c| *c >= Rational64::zero()))
            .collect();
        let built: BTreeSet<Weight> = g2.positive_roots().iter().cloned().collect();
        assert_eq!(positives, built);
    }

    #[test]
    fn every_type_matches_orbit_oracle_and_counts() {
        let types = [
            (Family::A, 1),
            (Family::A, 4),
            (Family::B, 2),
            (Family::B, 3),
            (Family::C, 2),
            (Family::C, 4),
            (Family::D, 4),
            (Family::D, 5),
            (Family::E, 6),
            (Family::F, 4),
            (Family::G, 2),
        ];
        for (f, n) in types {
            let rs = RootSystem::new(f, n).unwrap();
            let orbit = roots_by_orbit(&rs);
            assert_eq!(orbit.len(), 2 * rs.classical_positive_root_count(), "{f}{n}");
            for (r, c) in rs.positive_roots().iter().zip(rs.positive_roots_simple_coords()) {
                assert!(orbit.contains(r));
                assert!(c.iter().all(|&x| x >= 0));
                let exact: Vec<Rational64> = c.iter().map(|&x| Rational64::from_integer(x)).collect();
                assert_eq!(rs.to_simple_root_coords(r), exact);
            }
        }
    }

    #[test]
    fn large_exceptional_types_build() {
        for n in [7, 8] {
            let rs = RootSystem::new(Family::E, n).unwrap();
            assert_eq!(rs.positive_roots().len(), rs.classical_positive_root_count());
        }
    }

    #[test]
    fn invalid_types_are_rejected_with_reason() {
        let cases = [
            (Family::A, 0, "positive"),
            (Family::B, 1, "rank >= 2"),
            (Family::D, 3, "rank >= 4"),
            (Family::E, 5, "6, 7, 8"),
            (Family::F, 3, "rank 4"),
            (Family::G, 3, "rank 2"),
            (Family::A, 9, "limit"),
        ];
        for (f, n, needle) in cases {
            let err = RootSystem::new(f, n).unwrap_err();
            assert!(err.to_string().contains(needle), "{err}");
        }
        assert!(RootSystem::with_rank_limit(Family::A, 9, 12).is_ok());
    }

    #[test]
    fn b2_and_c2_are_both_accepted() {
        let b2 = RootSystem::new(Family::B, 2).unwrap();
        let c2 = RootSystem::new(Family::C, 2).unwrap();
        assert_eq!(b2.cartan(), &[vec![2, -2], vec![-1, 2]]);
        assert_eq!(c2.cartan(), &[vec![2, -1], vec![-2, 2]]);
    }

    #[test]
    fn orbit_examples() {
        let a1 = RootSystem::new(Family::A, 1).unwrap();
        let orbit: Vec<Weight> = a1.weyl_orbit(&w(&[1])).into_iter().collect();
        assert_eq!(orbit, vec![w(&[-1]), w(&[1])]);
        let a2 = RootSystem::new(Family::A, 2).unwrap();
        assert_eq!(a2.weyl_orbit(&w(&[1, 0])).len(), 3);
        assert_eq!(a2.weyl_orbit(&w(&[1, 1])).len(), 6);
    }

    #[test]
    fn dot_dominant_examples() {
        let a1 = RootSystem::new(Family::A, 1).unwrap();
        assert_eq!(a1.dot_dominant(&w(&[4])), (w(&[4]), 1));
        assert_eq!(a1.dot_dominant(&w(&[-1])).1, 0);
        assert_eq!(a1.dot_dominant(&w(&[-3])), (w(&[1]), -1));
        let a2 = RootSystem::new(Family::A, 2).unwrap();
        assert_eq!(a2.dot_dominant(&w(&[2, 3])), (w(&[2, 3]), 1));
    }

    #[test]
    fn rho_norm_and_form() {
        // (ρ, ρ) for A2 with short roots of length 2: |ρ|² = 2
        let a2 = RootSystem::new(Family::A, 2).unwrap();
        assert_eq!(a2.inner(a2.rho(), a2.rho()), Rational64::from_integer(2));
        // (ϖ_1, α_1) = 1 for simply laced with length-2 roots
        let alpha1 = a2.simple_roots()[0].clone();
        assert_eq!(
            a2.inner(&Weight::fundamental(2, 0), &alpha1),
            Rational64::from_integer(1)
        );
    }

    #[test]
    fn dual_weights() {
        let a2 = RootSystem::new(Family::A, 2).unwrap();
        assert_eq!(a2.dual_weight(&w(&[1, 0])), w(&[0, 1]));
        let b2 = RootSystem::new(Family::B, 2).unwrap();
        assert_eq!(b2.dual_weight(&w(&[2, 1])), w(&[2, 1]));
    }

    #[test]
    fn weight_parsing() {
        assert_eq!("1,0,-2".parse::<Weight>().unwrap(), w(&[1, 0, -2]));
        assert_eq!("(3)".parse::<Weight>().unwrap(), w(&[3]));
        assert!("1,x".parse::<Weight>().is_err());
        assert_eq!(w(&[1, -1]).to_string(), "(1,-1)");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_system() -> impl Strategy<Value = RootSystem> {
            prop_oneof![
                Just((Family::A, 1)),
                Just((Family::A, 2)),
                Just((Family::A, 3)),
                Just((Family::B, 2)),
                Just((Family::C, 3)),
                Just((Family::G, 2)),
            ]
            .prop_map(|(f, n)| RootSystem::new(f, n).unwrap())
        }

        proptest! {
            #[test]
            fn orbit_size_divides_weyl_order(rs in small_system(), seed in prop::collection::vec(-3i64..=3, 3)) {
                let wt = Weight(seed[..rs.rank()].to_vec());
                let orbit = rs.weyl_orbit(&wt);
                prop_assert_eq!(rs.weyl_group_order() % orbit.len() as u128, 0);
                for x in &orbit {
                    for i in 0..rs.rank() {
                        prop_assert!(orbit.contains(&rs.reflect(x, i)));
                    }
                }
            }

            #[test]
            fn dot_dominant_is_stable(rs in small_system(), seed in prop::collection::vec(-6i64..=6, 3)) {
                let wt = Weight(seed[..rs.rank()].to_vec());
                let (dom, sign) = rs.dot_dominant(&wt);
                if sign != 0 {
                    prop_assert!(dom.is_dominant());
                    prop_assert_eq!(rs.dot_dominant(&dom), (dom.clone(), 1));
                }
                for i in 0..rs.rank() {
                    // dot-reflection: s_i·w = s_i(w+ρ)-ρ
                    let moved = rs.reflect(&wt.add(rs.rho()), i).sub(rs.rho());
                    let (dom2, sign2) = rs.dot_dominant(&moved);
                    prop_assert_eq!(sign2 == 0, sign == 0);
                    if sign != 0 {
                        prop_assert_eq!(&dom2, &dom);
                        prop_assert_eq!(sign2, -sign);
                    }
                }
            }
        }
    }
}
