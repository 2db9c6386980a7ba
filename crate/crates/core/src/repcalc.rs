//! Characters, weight multiplicities and tensor-product decompositions of
//! simple finite-dimensional modules `L(λ)`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, Weight};

/// Finite map from weights to (possibly virtual) integer multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Character {
    entries: BTreeMap<Weight, i64>,
}

impl Character {
    pub fn new() -> Self {
        Self::default()
    }

    /// The character `{w ↦ 1}` of a one-dimensional weight space.
    pub fn point(w: Weight) -> Self {
        let mut c = Self::new();
        c.add(w, 1);
        c
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (Weight, i64)>) -> Self {
        let mut c = Self::new();
        for (w, m) in entries {
            c.add(w, m);
        }
        c
    }

    /// Adds `m` to the multiplicity of `w`, dropping zero entries.
    pub fn add(&mut self, w: Weight, m: i64) {
        if m == 0 {
            return;
        }
        match self.entries.entry(w) {
            Entry::Vacant(v) => {
                v.insert(m);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += m;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Character, k: i64) {
        for (w, m) in &other.entries {
            self.add(w.clone(), m * k);
        }
    }

    pub fn get(&self, w: &Weight) -> i64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<Weight, i64> {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &i64)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of all multiplicities (the dimension, for a module character).
    pub fn total(&self) -> i64 {
        self.entries.values().sum()
    }

    /// Restriction to dominant weights.
    pub fn dominant_part(&self) -> BTreeMap<Weight, i64> {
        self.entries
            .iter()
            .filter(|(w, _)| w.is_dominant())
            .map(|(w, m)| (w.clone(), *m))
            .collect()
    }

    /// Every multiplicity is constant along Weyl orbits.
    pub fn is_weyl_invariant(&self, rs: &RootSystem) -> bool {
        self.entries
            .iter()
            .all(|(w, m)| (0..rs.rank()).all(|i| self.get(&rs.reflect(w, i)) == *m))
    }
}

/// Decomposition of a semisimple module into simple constituents `L(λ)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    parts: BTreeMap<Weight, u64>,
}

impl Decomposition {
    pub fn parts(&self) -> &BTreeMap<Weight, u64> {
        &self.parts
    }

    pub fn multiplicity(&self, lam: &Weight) -> u64 {
        self.parts.get(lam).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `Σ mult · dim L(λ)`.
    pub fn dimension(&self, rs: &RootSystem) -> Result<u128> {
        let mut total = 0u128;
        for (lam, m) in &self.parts {
            total += *m as u128 * weyl_dimension(rs, lam)? as u128;
        }
        Ok(total)
    }

    /// Multiplicity-weighted sum of the constituent characters.
    pub fn character(&self, rs: &RootSystem) -> Result<Character> {
        let mut out = Character::new();
        for (lam, m) in &self.parts {
            out.add_scaled(&weight_multiplicities(rs, lam)?, *m as i64);
        }
        Ok(out)
    }
}

impl fmt::Display for Decomposition {
    /// Renders as e.g. `L(1,1)+2L(0,0)`, highest weights in descending order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        for (i, (lam, m)) in self.parts.iter().rev().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if *m > 1 {
                write!(f, "{m}")?;
            }
            let inner = lam.to_string();
            write!(f, "L{inner}")?;
        }
        Ok(())
    }
}

/// Weyl dimension formula `∏_{α>0} (λ+ρ, α)/(ρ, α)`, evaluated exactly.
pub fn weyl_dimension(rs: &RootSystem, lam: &Weight) -> Result<u64> {
    rs.check_dominant(lam)?;
    let shifted = lam.add(rs.rho());
    let mut q = BigRational::one();
    for alpha in rs.positive_roots() {
        let num = rs.scaled_inner(&shifted, alpha);
        let den = rs.scaled_inner(rs.rho(), alpha);
        q *= BigRational::new(BigInt::from(num), BigInt::from(den));
    }
    if !q.is_integer() || !q.is_positive() {
        return Err(Error::internal(format!("Weyl dimension of {lam} is {q}")));
    }
    q.to_integer()
        .to_u64()
        .ok_or_else(|| Error::rejected(format!("dimension of L{lam} overflows u64")))
}

/// Multiplicities of the dominant weights of `L(λ)` by Freudenthal's recursion.
pub fn dominant_weight_multiplicities(rs: &RootSystem, lam: &Weight) -> Result<BTreeMap<Weight, i64>> {
    rs.check_dominant(lam)?;
    // Dominant weights below λ: every one is reachable from λ by subtracting
    // positive roots while staying dominant.
    let mut depth: HashMap<Weight, i64> = HashMap::new();
    let mut queue = VecDeque::new();
    depth.insert(lam.clone(), 0);
    queue.push_back(lam.clone());
    let heights: Vec<i64> = rs
        .positive_roots_simple_coords()
        .iter()
        .map(|c| c.iter().sum())
        .collect();
    while let Some(mu) = queue.pop_front() {
        let d = depth[&mu];
        for (alpha, h) in rs.positive_roots().iter().zip(&heights) {
            let next = mu.sub(alpha);
            if next.is_dominant() && !depth.contains_key(&next) {
                depth.insert(next.clone(), d + h);
                queue.push_back(next);
            }
        }
    }
    let mut order: Vec<(i64, Weight)> = depth.into_iter().map(|(w, d)| (d, w)).collect();
    order.sort();

    let lam_rho = lam.add(rs.rho());
    let norm_top = rs.scaled_inner(&lam_rho, &lam_rho);
    let mut mult: BTreeMap<Weight, i64> = BTreeMap::new();
    let lookup = |mult: &BTreeMap<Weight, i64>, w: &Weight| -> i64 {
        let (dom, _) = rs.dominant_conjugate(w);
        mult.get(&dom).copied().unwrap_or(0)
    };
    for (_, mu) in order {
        if &mu == lam {
            mult.insert(mu, 1);
            continue;
        }
        let mu_rho = mu.add(rs.rho());
        let den = norm_top - rs.scaled_inner(&mu_rho, &mu_rho);
        if den <= 0 {
            return Err(Error::internal(format!("Freudenthal denominator {den} at {mu}")));
        }
        let mut num: i64 = 0;
        for alpha in rs.positive_roots() {
            let mut k = 1;
            loop {
                let nu = mu.add(&alpha.scale(k));
                let m = lookup(&mult, &nu);
                if m == 0 {
                    break;
                }
                num += m * rs.scaled_inner(&nu, alpha);
                k += 1;
            }
        }
        num *= 2;
        if num % den != 0 {
            return Err(Error::internal(format!(
                "Freudenthal recursion is not integral at {mu}: {num}/{den}"
            )));
        }
        let m = num / den;
        if m < 0 {
            return Err(Error::internal(format!("negative multiplicity {m} at {mu}")));
        }
        if m > 0 {
            mult.insert(mu, m);
        }
    }
    Ok(mult)
}

/// Full character of `L(λ)`: every weight with its multiplicity.
pub fn weight_multiplicities(rs: &RootSystem, lam: &Weight) -> Result<Character> {
    let dominant = dominant_weight_multiplicities(rs, lam)?;
    let mut entries = BTreeMap::new();
    for (mu, m) in dominant {
        for w in rs.weyl_orbit(&mu) {
            entries.insert(w, m);
        }
    }
    Ok(Character { entries })
}

/// Brauer–Klimyk: decomposes `M ⊗ L(λ)` where `character` is the character
/// of `M`, by reflecting `λ+ν` into the dominant chamber under the dot action.
pub fn decompose_with_character(rs: &RootSystem, character: &Character, lam: &Weight) -> Result<Decomposition> {
    rs.check_dominant(lam)?;
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (nu, m) in character.iter() {
        let (dom, sign) = rs.dot_dominant(&lam.add(nu));
        if sign == 0 {
            continue;
        }
        *acc.entry(dom).or_insert(0) += sign as i64 * m;
    }
    let mut parts = BTreeMap::new();
    for (w, m) in acc {
        if m < 0 {
            return Err(Error::internal(format!(
                "Brauer-Klimyk produced multiplicity {m} for L{w} in product with L{lam}"
            )));
        }
        if m > 0 {
            parts.insert(w, m as u64);
        }
    }
    Ok(Decomposition { parts })
}

/// Decomposition of `L(λ) ⊗ L(μ)` into simple modules.
pub fn tensor_decompose(rs: &RootSystem, lam: &Weight, mu: &Weight) -> Result<Decomposition> {
    rs.check_dominant(lam)?;
    rs.check_dominant(mu)?;
    // expand the smaller factor's character
    let (small, big) = if weyl_dimension(rs, lam)? <= weyl_dimension(rs, mu)? {
        (lam, mu)
    } else {
        (mu, lam)
    };
    let ch = weight_multiplicities(rs, small)?;
    decompose_with_character(rs, &ch, big)
}

/// Pointwise convolution `(a·b)(w) = Σ_{u+v=w} a(u) b(v)`.
///
/// This is the character of a tensor product computed without any
/// representation theory; it serves as an independent check on
/// [`tensor_decompose`].
pub fn char_product_oracle(a: &Character, b: &Character) -> Character {
    let mut acc: HashMap<Weight, i64> = HashMap::new();
    for (u, m) in a.iter() {
        for (v, n) in b.iter() {
            *acc.entry(u.add(v)).or_insert(0) += m * n;
        }
    }
    Character::from_entries(acc)
}

/// The dominant-weight part of [`char_product_oracle`], skipping non-dominant
/// sums. For Weyl-invariant factors this determines the full product.
pub fn dominant_product_oracle(a: &Character, b: &Character) -> BTreeMap<Weight, i64> {
    let mut acc: HashMap<Weight, i64> = HashMap::new();
    for (u, m) in a.iter() {
        for (v, n) in b.iter() {
            if u.0.iter().zip(&v.0).all(|(x, y)| x + y >= 0) {
                *acc.entry(u.add(v)).or_insert(0) += m * n;
            }
        }
    }
    acc.into_iter().filter(|(_, m)| *m != 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Family;

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    fn rs(f: Family, n: usize) -> RootSystem {
        RootSystem::new(f, n).unwrap()
    }

    /// Weyl character formula oracle for A2, computed as the quotient of
    /// alternating sums by polynomial long division over monomials
    /// `x^a y^b` in fundamental-weight exponents.
    fn a2_character_by_quotient(lam: &Weight) -> BTreeMap<Weight, i64> {
        let a2 = rs(Family::A, 2);
        // W(A2) generated by reflections; alternating sum over the orbit of λ+ρ.
        let alt = |top: &Weight| -> BTreeMap<Weight, i64> {
            let mut out = BTreeMap::new();
            let mut frontier = vec![(top.clone(), 1i64)];
            let mut seen = std::collections::HashSet::new();
            seen.insert(top.clone());
            while let Some((x, s)) = frontier.pop() {
                out.insert(x.clone(), s);
                for i in 0..2 {
                    let y = a2.reflect(&x, i);
                    if seen.insert(y.clone()) {
                        frontier.push((y, -s));
                    }
                }
            }
            out
        };
        let mut num = alt(&lam.add(a2.rho()));
        let den = alt(a2.rho());
        // Divide num by den: leading term in lexicographic order of simple-root
        // height from the top, i.e. repeatedly cancel the maximal monomial.
        let key = |x: &Weight| {
            let c = a2.to_simple_root_coords(x);
            (c[0] + c[1], c[0])
        };
        let den_lead = den.keys().max_by_key(|x| key(x)).unwrap().clone();
        let den_lead_coeff = den[&den_lead];
        let mut quotient = BTreeMap::new();
        while !num.is_empty() {
            let lead = num.keys().max_by_key(|x| key(x)).unwrap().clone();
            let c = num[&lead] / den_lead_coeff;
            let shift = lead.sub(&den_lead);
            *quotient.entry(shift.clone()).or_insert(0) += c;
            for (d, dc) in &den {
                let t = d.add(&shift);
                let e = num.entry(t.clone()).or_insert(0);
                *e -= c * dc;
                if *e == 0 {
                    num.remove(&t);
                }
            }
        }
        quotient.into_iter().filter(|(_, m)| *m != 0).collect()
    }

    #[test]
    fn weyl_dimension_examples() {
        let a1 = rs(Family::A, 1);
        for k in 0..20 {
            assert_eq!(weyl_dimension(&a1, &w(&[k])).unwrap(), k as u64 + 1);
        }
        let a2 = rs(Family::A, 2);
        assert_eq!(weyl_dimension(&a2, &w(&[1, 0])).unwrap(), 3);
        assert_eq!(weyl_dimension(&a2, &w(&[1, 1])).unwrap(), 8);
        let g2 = rs(Family::G, 2);
        assert_eq!(weyl_dimension(&g2, &w(&[1, 0])).unwrap(), 7);
        assert_eq!(weyl_dimension(&g2, &w(&[0, 1])).unwrap(), 14);
        let e8 = rs(Family::E, 8);
        assert_eq!(weyl_dimension(&e8, &Weight::fundamental(8, 7)).unwrap(), 248);
        assert!(weyl_dimension(&a2, &w(&[-1, 0])).is_err());
    }

    #[test]
    fn sl2_strings() {
        let a1 = rs(Family::A, 1);
        for k in 0..8i64 {
            let ch = weight_multiplicities(&a1, &w(&[k])).unwrap();
            let expected: BTreeMap<Weight, i64> = (0..=k).map(|j| (w(&[k - 2 * j]), 1)).collect();
            assert_eq!(ch.entries(), &expected);
        }
    }

    #[test]
    fn a2_adjoint_zero_weight_has_multiplicity_two() {
        let a2 = rs(Family::A, 2);
        let ch = weight_multiplicities(&a2, &w(&[1, 1])).unwrap();
        assert_eq!(ch.get(&w(&[0, 0])), 2);
        assert_eq!(ch.total(), 8);
        assert_eq!(ch.entries(), &a2_character_by_quotient(&w(&[1, 1])));
    }

    #[test]
    fn a2_freudenthal_matches_weyl_quotient() {
        let a2 = rs(Family::A, 2);
        for a in 0..4 {
            for b in 0..4 {
                let lam = w(&[a, b]);
                let ch = weight_multiplicities(&a2, &lam).unwrap();
                assert_eq!(ch.entries(), &a2_character_by_quotient(&lam), "{lam}");
            }
        }
    }

    #[test]
    fn natural_sl3_module_weights() {
        let a2 = rs(Family::A, 2);
        let ch = weight_multiplicities(&a2, &w(&[1, 0])).unwrap();
        let alpha1 = a2.simple_roots()[0].clone();
        let alpha2 = a2.simple_roots()[1].clone();
        let top = w(&[1, 0]);
        let expected: BTreeMap<Weight, i64> = [
            (top.clone(), 1),
            (top.sub(&alpha1), 1),
            (top.sub(&alpha1).sub(&alpha2), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(ch.entries(), &expected);
    }

    #[test]
    fn tensor_examples() {
        let a1 = rs(Family::A, 1);
        let d = tensor_decompose(&a1, &w(&[1]), &w(&[1])).unwrap();
        assert_eq!(d.to_string(), "L(2)+L(0)");
        let a2 = rs(Family::A, 2);
        let d = tensor_decompose(&a2, &w(&[1, 0]), &w(&[0, 1])).unwrap();
        assert_eq!(d.to_string(), "L(1,1)+L(0,0)");
        for f in [(Family::A, 2), (Family::B, 2), (Family::G, 2)] {
            let r = rs(f.0, f.1);
            let mu = w(&[2, 3]);
            let d = tensor_decompose(&r, &w(&[0, 0]), &mu).unwrap();
            assert_eq!(d.parts().len(), 1);
            assert_eq!(d.multiplicity(&mu), 1);
        }
    }

    #[test]
    fn decomposition_display_with_multiplicity() {
        let a2 = rs(Family::A, 2);
        let d = tensor_decompose(&a2, &w(&[1, 1]), &w(&[1, 1])).unwrap();
        // 8 x 8 = 27 + 10 + 10* + 2·8 + 1
        assert_eq!(d.multiplicity(&w(&[1, 1])), 2);
        assert_eq!(d.to_string(), "L(3,0)+L(2,2)+2L(1,1)+L(0,3)+L(0,0)");
    }

    #[test]
    fn convolution_examples() {
        let a1 = rs(Family::A, 1);
        let unit = Character::point(w(&[0]));
        let v = weight_multiplicities(&a1, &w(&[3])).unwrap();
        assert_eq!(char_product_oracle(&unit, &v), v);
        let l1 = weight_multiplicities(&a1, &w(&[1])).unwrap();
        let prod = char_product_oracle(&l1, &l1);
        let expected = Character::from_entries([(w(&[2]), 1), (w(&[0]), 2), (w(&[-2]), 1)]);
        assert_eq!(prod, expected);
    }

    #[test]
    fn convolution_is_commutative_on_random_pairs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let mut random_char = || {
                Character::from_entries((0..rng.gen_range(1..6)).map(|_| {
                    (
                        w(&[rng.gen_range(-4..=4), rng.gen_range(-4..=4)]),
                        rng.gen_range(-3..=3),
                    )
                }))
            };
            let a = random_char();
            let b = random_char();
            assert_eq!(char_product_oracle(&a, &b), char_product_oracle(&b, &a));
        }
    }

    #[test]
    fn character_add_drops_zeros() {
        let mut c = Character::point(w(&[1]));
        c.add(w(&[1]), -1);
        assert!(c.is_empty());
    }

    #[test]
    fn duality_mirrors_decomposition() {
        let a2 = rs(Family::A, 2);
        for (lam, mu) in [
            (w(&[1, 0]), w(&[2, 1])),
            (w(&[2, 0]), w(&[1, 1])),
            (w(&[0, 3]), w(&[1, 2])),
        ] {
            let direct = tensor_decompose(&a2, &lam, &a2.dual_weight(&mu)).unwrap();
            let mirrored = tensor_decompose(&a2, &a2.dual_weight(&lam), &mu).unwrap();
            let dualized: BTreeMap<Weight, u64> =
                mirrored.parts().iter().map(|(x, m)| (a2.dual_weight(x), *m)).collect();
            assert_eq!(direct.parts(), &dualized);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn system_and_pair() -> impl Strategy<Value = (RootSystem, Weight, Weight)> {
            prop_oneof![
                (0i64..=12, 0i64..=12).prop_map(|(a, b)| (rs(Family::A, 1), w(&[a]), w(&[b]))),
                (0i64..=3, 0i64..=3, 0i64..=3, 0i64..=3).prop_map(|(a, b, c, d)| (
                    rs(Family::A, 2),
                    w(&[a, b]),
                    w(&[c, d])
                )),
                (0i64..=2, 0i64..=2, 0i64..=2, 0i64..=2).prop_map(|(a, b, c, d)| (
                    rs(Family::B, 2),
                    w(&[a, b]),
                    w(&[c, d])
                )),
                (0i64..=1, 0i64..=1, 0i64..=2, 0i64..=1).prop_map(|(a, b, c, d)| (
                    rs(Family::G, 2),
                    w(&[a, b]),
                    w(&[c, d])
                )),
            ]
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn weights_sum_to_dimension((r, lam, _mu) in system_and_pair()) {
                let ch = weight_multiplicities(&r, &lam).unwrap();
                prop_assert_eq!(ch.total() as u64, weyl_dimension(&r, &lam).unwrap());
                prop_assert!(ch.is_weyl_invariant(&r));
                prop_assert!(ch.iter().all(|(_, m)| *m >= 1));
            }

            #[test]
            fn tensor_matches_oracle_and_is_symmetric((r, lam, mu) in system_and_pair()) {
                let d = tensor_decompose(&r, &lam, &mu).unwrap();
                let d2 = tensor_decompose(&r, &mu, &lam).unwrap();
                prop_assert_eq!(&d, &d2);
                let a = weight_multiplicities(&r, &lam).unwrap();
                let b = weight_multiplicities(&r, &mu).unwrap();
                prop_assert_eq!(d.character(&r).unwrap(), char_product_oracle(&a, &b));
                prop_assert_eq!(d.multiplicity(&lam.add(&mu)), 1);
                let dim = weyl_dimension(&r, &lam).unwrap() as u128 * weyl_dimension(&r, &mu).unwrap() as u128;
                prop_assert_eq!(d.dimension(&r).unwrap(), dim);
            }
        }
    }
}
