//! Property tests across modules, on small random inputs.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use monact::actiongraph::{action_matrix, generic_graph, regular_graph, simplify_mixed};
use monact::diagramcat::{catalog_graph, catalog_mixed, classify_window, DiagramFamily};
use monact::matmod::{decompose, make_f, make_k, make_q, restrict_v, tensor, Shift, Subalgebra};
use monact::mckay::{build_group, mckay_certify, mckay_matrix, mckay_multiplicities, GroupSpec};
use monact::repcalc::weyl_dimension;
use monact::rootdata::{Family, RootSystem, Weight};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rank_two() -> impl Strategy<Value = RootSystem> {
    prop_oneof![Just(Family::A), Just(Family::B), Just(Family::C), Just(Family::G)]
        .prop_map(|f| RootSystem::new(f, 2).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn a1_graphs_are_self_dual(g in 0i64..5, bound in 3i64..15) {
        let rs = RootSystem::new(Family::A, 1).unwrap();
        let w = Weight(vec![g]);
        prop_assert!(simplify_mixed(&regular_graph(&rs, &w, bound).unwrap()).is_purely_unoriented());
        prop_assert!(simplify_mixed(&generic_graph(&rs, &w, bound).unwrap()).is_purely_unoriented());
    }

    #[test]
    fn regular_dimension_balance(rs in rank_two(), a in 0i64..2, b in 0i64..2) {
        let gen = Weight(vec![a, b]);
        let g = regular_graph(&rs, &gen, 5).unwrap();
        let dg = weyl_dimension(&rs, &gen).unwrap();
        for i in g.interior_indices() {
            let lam = g.vertices()[i].weight.clone().unwrap();
            let total: u64 = g
                .out_arrows(i)
                .map(|(j, m)| m * weyl_dimension(&rs, g.vertices()[j].weight.as_ref().unwrap()).unwrap())
                .sum();
            prop_assert_eq!(total, dg * weyl_dimension(&rs, &lam).unwrap());
        }
    }

    #[test]
    fn generic_arrows_depend_only_on_difference(rs in rank_two(), a in 0i64..2, b in 0i64..2) {
        let g = generic_graph(&rs, &Weight(vec![a, b]), 4).unwrap();
        let mut by_step: BTreeMap<Weight, u64> = BTreeMap::new();
        for (&(s, t), &m) in g.arrows() {
            let step = g.vertices()[t].weight.as_ref().unwrap().sub(g.vertices()[s].weight.as_ref().unwrap());
            let seen = *by_step.entry(step).or_insert(m);
            prop_assert_eq!(seen, m);
        }
    }

    #[test]
    fn transpose_and_commutation(a in 0i64..3, b in 0i64..3, c in 0i64..3, d in 0i64..3) {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        let (x, y) = (Weight(vec![a, b]), Weight(vec![c, d]));
        for (gx, gy, gdual) in [
            (regular_graph(&rs, &x, 5).unwrap(), regular_graph(&rs, &y, 5).unwrap(), regular_graph(&rs, &Weight(vec![b, a]), 5).unwrap()),
            (generic_graph(&rs, &x, 4).unwrap(), generic_graph(&rs, &y, 4).unwrap(), generic_graph(&rs, &Weight(vec![b, a]), 4).unwrap()),
        ] {
            let (mx, my) = (action_matrix(&gx), action_matrix(&gy));
            // interior of both, and reached from the interior within the window
            let interior: Vec<usize> = gx.interior_indices().into_iter().filter(|&i| gy.vertices()[i].interior).collect();
            prop_assert_eq!(mx.mul(&my).restrict(&interior), my.mul(&mx).restrict(&interior));
            let inner: Vec<usize> = interior.iter().copied().filter(|&i| gdual.vertices()[i].interior).collect();
            prop_assert_eq!(mx.transpose().restrict(&inner), action_matrix(&gdual).restrict(&inner));
        }
    }

    #[test]
    fn catalog_truncations_nest(idx in 0usize..6, k in 3usize..12) {
        let f = DiagramFamily::INFINITE[idx];
        let small = catalog_graph(f, k).unwrap();
        let big = catalog_graph(f, k + 1).unwrap();
        for i in 0..small.len() {
            prop_assert_eq!(small.loops()[i], big.loops()[i]);
            for j in i + 1..small.len() {
                prop_assert_eq!(small.multiplicity(i, j), big.multiplicity(i, j));
            }
        }
    }

    #[test]
    fn classify_stable_under_shrinking(idx in 0usize..6, r in 1usize..8) {
        let f = DiagramFamily::INFINITE[idx];
        let m = catalog_mixed(f, 24).unwrap();
        let base = if f == DiagramFamily::DInf { 3 } else { 0 };
        let full = classify_window(&m, base, None).unwrap();
        prop_assert!(full.id.is_some());
        if r <= full.certified_radius {
            let v = classify_window(&m, base, Some(r)).unwrap();
            // a smaller ball may be ambiguous, but a named answer must agree
            if let Some(id) = v.id {
                prop_assert_eq!(Some(id), full.id);
            }
        }
    }

    #[test]
    fn tensor_preserves_relations_and_decompose_conserves(
        a in -4i64..4, den in 1i64..4, k in 1usize..7, l in 1usize..5, formal in any::<bool>(),
    ) {
        let off = Shift { formal, q: rat(a, den) };
        let x = make_q(off.clone(), k).unwrap();
        let y = make_q(Shift::plain(rat(-(l as i64) + 1, 1)), l).unwrap();
        let t = tensor(&x, &y).unwrap();
        prop_assert!(t.relations_hold());
        let d = decompose(&t).unwrap();
        let list = d.family().unwrap();
        prop_assert_eq!(list.dimension(), t.dim());
        prop_assert_eq!(list.h_spectrum(), t.h_spectrum().unwrap());

        let kh = tensor(&make_k(off), &restrict_v(Subalgebra::H)).unwrap();
        let dk = decompose(&kh).unwrap();
        prop_assert_eq!(dk.family().unwrap().h_spectrum(), kh.h_spectrum().unwrap());

        let fe = tensor(&make_f(rat(a, den), k).unwrap(), &make_f(rat(0, 1), l).unwrap()).unwrap();
        let de = decompose(&fe).unwrap();
        prop_assert_eq!(de.family().unwrap().dimension(), k * l);
    }
}

#[test]
fn mckay_invariants_for_every_family() {
    let mut specs: Vec<GroupSpec> = (1..=9).map(GroupSpec::Cyclic).collect();
    specs.extend((2..=6).map(GroupSpec::BinaryDihedral));
    specs.extend([
        GroupSpec::BinaryTetrahedral,
        GroupSpec::BinaryOctahedral,
        GroupSpec::BinaryIcosahedral,
    ]);
    for spec in specs {
        let g = build_group(spec).unwrap();
        // orthogonality of irreducible characters
        for (i, a) in g.char_table.iter().enumerate() {
            for (j, b) in g.char_table.iter().enumerate() {
                let ip = g.inner_product(a, b);
                assert_eq!(ip.as_integer(), Some(i64::from(i == j)), "{spec} ({i},{j})");
            }
        }
        let m = mckay_matrix(&mckay_multiplicities(&g).unwrap());
        let k = m.len();
        assert!((0..k).all(|i| (0..k).all(|j| m[i][j] == m[j][i])), "{spec}");
        if spec != GroupSpec::Cyclic(1) {
            assert!((0..k).all(|i| m[i][i] == 0), "{spec}");
        }
        // trivial row lists the constituents of V
        let v = g.natural_character();
        for (chi, &mult) in g.char_table.iter().zip(&m[0]) {
            assert_eq!(g.inner_product(&v, chi).as_integer(), Some(mult as i64), "{spec}");
        }
        let r = mckay_certify(spec).unwrap();
        assert_eq!(r.diagram, spec.expected_diagram(), "{spec}");
    }
}
