use num_bigint::BigInt;
use proptest::prelude::*;
use tanaka_core::lie::chevalley::ChevalleyAlgebra;
use tanaka_core::lie::extension::{abelian_extension, direct_sum_action};
use tanaka_core::lie::module::realize_module;
use tanaka_core::lie::roots::naive_root_count;
use tanaka_core::lie::structure::{form_is_nondegenerate, is_ideal, killing_form, maximal_semisimple_ideal, radical};
use tanaka_core::lie::weights::{character_of_sum, decompose_character, weight_system};
use tanaka_core::linalg::{fraction_free_echelon, gauss_jordan};
use tanaka_core::{build_root_system, cartan_matrix_of_type, Rational, RootSystem, Weight};

const TYPES: [&str; 8] = ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4"];

fn rs(t: &str) -> RootSystem {
    build_root_system(&cartan_matrix_of_type(t).unwrap()).unwrap()
}

fn small_weight(rank: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec(0i64..4, rank).prop_map(Weight)
}

#[test]
fn chevalley_tables_satisfy_jacobi() {
    for t in TYPES.iter().chain(&["F4", "E6"]) {
        let g = ChevalleyAlgebra::new(&rs(t)).unwrap();
        g.table().check_jacobi().unwrap();
        assert!(g.table().nonzero_brackets().all(|(_, _, v)| v.iter().all(|(_, x)| x.is_integer())), "{t}");
    }
}

#[test]
fn root_counts_agree_with_naive_closure() {
    for t in TYPES.iter().chain(&["F4", "E6"]) {
        let r = rs(t);
        assert_eq!(naive_root_count(&r), r.num_roots(), "{t}");
        assert_eq!(r.num_roots(), 2 * r.positive_roots().len());
    }
}

#[test]
fn freudenthal_matches_weyl_up_to_200() {
    for t in ["A1", "A2", "B2", "G2", "A3"] {
        let r = rs(t);
        let rank = r.rank();
        let mut checked = 0;
        for w in tanaka_core::lie::weights::dominant_weights_up_to(rank, 8) {
            let d = r.weyl_dimension(&w).unwrap();
            if d > BigInt::from(200) {
                continue;
            }
            let c = weight_system(&r, &w).unwrap();
            assert_eq!(BigInt::from(c.dimension()), d, "{t} {w}");
            checked += 1;
        }
        assert!(checked > 3, "{t}");
    }
}

#[test]
fn semisimple_radical_is_zero_and_abelian_ideal_is_detected() {
    for t in ["A1", "A2", "B2", "G2"] {
        let r = rs(t);
        let g = ChevalleyAlgebra::new(&r).unwrap();
        let kappa = killing_form(g.table());
        assert_eq!(kappa.rank(), g.dim());
        assert!(radical(g.table()).is_empty());

        let mut w = vec![0; r.rank()];
        w[0] = 1;
        let m = realize_module(&r, &Weight(w), 200).unwrap();
        let act = direct_sum_action(&[g.represent(&m)]);
        let labels = (0..m.dim()).map(|i| format!("v{i}")).collect();
        let ext = abelian_extension(g.table(), &act, labels).unwrap();
        ext.check_jacobi().unwrap();
        assert!(killing_form(&ext).rank() < ext.dim());
        assert_eq!(radical(&ext).len(), m.dim());
        // l is an ideal so σ cannot centralize it: σ(s ⋉ l) = 0 here.
        let sigma = maximal_semisimple_ideal(&ext).unwrap();
        assert!(is_ideal(&ext, &sigma));
        assert!(form_is_nondegenerate(&killing_form(&ext), &sigma));

        let sum = g.table().direct_sum(&tanaka_core::LieTable::abelian(2));
        assert_eq!(radical(&sum).len(), 2);
        assert_eq!(maximal_semisimple_ideal(&sum).unwrap().len(), g.dim());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn realized_modules_reproduce_freudenthal(t in prop::sample::select(vec!["A1", "A2", "B2", "G2"]), seed in small_weight(2)) {
        let r = rs(t);
        let w = Weight(seed.0[..r.rank()].to_vec());
        prop_assume!(r.weyl_dimension(&w).unwrap() <= BigInt::from(64));
        let m = realize_module(&r, &w, 200).unwrap();
        prop_assert_eq!(m.character(), weight_system(&r, &w).unwrap());
        m.check_relations(&r).unwrap();
    }

    #[test]
    fn decompose_inverts_sum(parts in prop::collection::vec((small_weight(2), 1u64..3), 1..=4)) {
        let r = rs("A2");
        let parts: Vec<(Weight, u64)> = parts.into_iter().filter(|(w, _)| w.0.iter().sum::<i64>() <= 4).collect();
        prop_assume!(!parts.is_empty());
        let c = character_of_sum(&r, &parts).unwrap();
        let d = decompose_character(&r, &c).unwrap();
        prop_assert_eq!(character_of_sum(&r, &d).unwrap(), c);
    }

    #[test]
    fn weight_coordinates_round_trip(t in prop::sample::select(TYPES.to_vec()), c in prop::collection::vec(-5i64..6, 4)) {
        let r = rs(t);
        let w = Weight(c[..r.rank()].to_vec());
        let x = r.weight_to_root_coords(&w);
        prop_assert_eq!(r.root_coords_to_weight(&x), Some(w));
    }

    #[test]
    fn elimination_routes_agree(rows in prop::collection::vec(prop::collection::vec(-6i64..7, 5), 1..6)) {
        let q: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
        let a = fraction_free_echelon(q.clone(), 5);
        let b = gauss_jordan(q, 5);
        prop_assert_eq!(a.rows, b.rows);
        prop_assert_eq!(a.pivots, b.pivots);
    }
}
