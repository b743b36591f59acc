use std::collections::BTreeSet;

use tanaka_core::lie::chevalley::ChevalleyAlgebra;
use tanaka_core::lie::module::realize_module;
use tanaka_core::lie::weights::dominant_weights_up_to;
use tanaka_core::{RootSystem, Weight};
use tanaka_graded::algebra::{sl2_complex, sl3_levi_tanaka};
use tanaka_graded::conditions::ConditionVerdicts;
use tanaka_graded::{admissible_structures, enumerate_shifts, oracle_partitions, GradedCrAlgebra};

fn weights_up_to_dim(rs: &RootSystem, bound: u64) -> Vec<Weight> {
    dominant_weights_up_to(rs.rank(), 12)
        .into_iter()
        .filter(|w| w.0.iter().any(|&x| x > 0))
        .filter(|w| rs.weyl_dimension(w).unwrap() <= bound.into())
        .collect()
}

fn equivalence(g: &GradedCrAlgebra, bound: u64) -> usize {
    let chev = ChevalleyAlgebra::new(&g.root_system).unwrap();
    let mut checked = 0;
    for w in weights_up_to_dim(&g.root_system, bound) {
        let m = realize_module(&g.root_system, &w, 200).unwrap();
        for d in enumerate_shifts(g, &m.character()) {
            let v = ConditionVerdicts::evaluate(&d, g);
            let verdict = v.agreed().unwrap_or_else(|| panic!("conditions disagree on {w} shift {}", d.shift));
            let oracle = oracle_partitions(g, &chev, &m, &d);
            if verdict {
                // the combinatorial partition is the only one passing the oracle
                assert_eq!(oracle, vec![v.iv.clone().unwrap()], "{w} shift {}", d.shift);
            } else {
                assert!(oracle.is_empty(), "{w} shift {}: oracle accepts {:?}", d.shift, oracle);
            }
            checked += 1;
        }
    }
    checked
}

#[test]
fn conditions_match_oracle_for_sl2() {
    assert!(equivalence(&sl2_complex(), 50) > 50);
}

#[test]
fn conditions_match_oracle_for_sl3() {
    assert!(equivalence(&sl3_levi_tanaka(), 50) > 20);
}

#[test]
fn multiplicity_one_on_degree_minus_one() {
    for g in [sl2_complex(), sl3_levi_tanaka()] {
        for w in weights_up_to_dim(&g.root_system, 200) {
            for s in admissible_structures(&g, &w).unwrap() {
                for x in s.diagram.weights_of_degree(-1) {
                    assert_eq!(s.diagram.character.multiplicity(&x), 1, "{w}");
                }
            }
        }
    }
}

#[test]
fn sl2_only_top_line_is_admissible() {
    let g = sl2_complex();
    for n in 2..12i64 {
        let w = Weight(vec![n - 1]);
        let s = admissible_structures(&g, &w).unwrap();
        assert_eq!(s.len(), 1, "dimension {n}");
        let top: BTreeSet<Weight> = BTreeSet::from([w.clone()]);
        assert_eq!(s[0].diagram.weights_of_degree(-1), top);
        assert_eq!(s[0].k, tanaka_core::scalar::rat(n - 3, 2));
    }
}
