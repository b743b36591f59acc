use proptest::prelude::*;
use tanaka_core::lie::chevalley::ChevalleyAlgebra;
use tanaka_core::lie::module::{realize_module, ModuleRealization};
use tanaka_core::lie::weights::weight_system;
use tanaka_core::{Rational, Weight};
use tanaka_graded::algebra::{sl2_complex, sl3_levi_tanaka};
use tanaka_graded::conditions::ConditionVerdicts;
use tanaka_graded::{enumerate_shifts, validate_assignment, CrPartition, GradedCrAlgebra, WeightDiagram};

const SL3_WEIGHTS: [[i64; 2]; 6] = [[1, 0], [0, 1], [2, 0], [1, 1], [0, 2], [3, 0]];

fn assignment(m: &ModuleRealization, d: &WeightDiagram, p: &CrPartition, flip: &[bool]) -> (Vec<i64>, Vec<i64>) {
    let degrees = m.weights.iter().map(|w| d.degree(w).unwrap()).collect();
    let signs = m
        .weights
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let s = if p.p10.contains(w) { 1 } else { -1 };
            if flip.get(i).copied().unwrap_or(false) {
                -s
            } else {
                s
            }
        })
        .collect();
    (degrees, signs)
}

fn diagram_and_partition(g: &GradedCrAlgebra, m: &ModuleRealization, pick: usize) -> (WeightDiagram, CrPartition) {
    let ds = enumerate_shifts(g, &m.character());
    let d = ds[pick % ds.len()].clone();
    let p = ConditionVerdicts::evaluate(&d, g).iv.unwrap_or_else(|_| CrPartition {
        p10: Default::default(),
        p01: d.weights_of_degree(-1),
    });
    (d, p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn regrading_is_covariant(w in 0usize..6, pick in 0usize..8, t in -4i64..5) {
        let g = sl3_levi_tanaka();
        let c = weight_system(&g.root_system, &Weight(SL3_WEIGHTS[w].to_vec())).unwrap();
        let ds = enumerate_shifts(&g, &c);
        let d = &ds[pick % ds.len()];
        let moved = WeightDiagram::new(&g, c.clone(), &d.shift + Rational::from_integer(t.into())).unwrap();
        prop_assert_eq!(&moved, &d.regraded(t));
        let verdict = ConditionVerdicts::evaluate(&moved, &g).agreed();
        match ds.iter().find(|x| x.shift == moved.shift) {
            Some(x) => prop_assert_eq!(verdict, ConditionVerdicts::evaluate(x, &g).agreed()),
            // the shift leaves P_-1 or P_-2 empty
            None => prop_assert!(moved.weights_of_degree(-1).is_empty() || moved.weights_of_degree(-2).is_empty()),
        }
    }

    #[test]
    fn summands_of_a_valid_sum_are_valid(a in 0usize..4, b in 0usize..4, pa in 0usize..4, pb in 0usize..4,
                                         flips in proptest::collection::vec(proptest::bool::weighted(0.1), 30)) {
        let g = sl3_levi_tanaka();
        let chev = ChevalleyAlgebra::new(&g.root_system).unwrap();
        let ma = realize_module(&g.root_system, &Weight(SL3_WEIGHTS[a].to_vec()), 200).unwrap();
        let mb = realize_module(&g.root_system, &Weight(SL3_WEIGHTS[b].to_vec()), 200).unwrap();
        let (da, ppa) = diagram_and_partition(&g, &ma, pa);
        let (db, ppb) = diagram_and_partition(&g, &mb, pb);
        let (deg_a, sig_a) = assignment(&ma, &da, &ppa, &flips);
        let (deg_b, sig_b) = assignment(&mb, &db, &ppb, &flips[ma.dim().min(30)..]);
        let sum = ma.direct_sum(&mb);
        let degrees: Vec<i64> = deg_a.iter().chain(&deg_b).copied().collect();
        let signs: Vec<i64> = sig_a.iter().chain(&sig_b).copied().collect();
        let whole = validate_assignment(&g, &chev, &sum, &degrees, &signs).passed();
        let left = validate_assignment(&g, &chev, &ma, &deg_a, &sig_a).passed();
        let right = validate_assignment(&g, &chev, &mb, &deg_b, &sig_b).passed();
        if whole {
            prop_assert!(left && right);
        }
        prop_assert_eq!(whole, left && right);
    }
}

#[test]
fn sl2_sum_of_two_top_lines_is_valid() {
    let g = sl2_complex();
    let chev = ChevalleyAlgebra::new(&g.root_system).unwrap();
    let m = realize_module(&g.root_system, &Weight(vec![2]), 200).unwrap();
    let (d, p) = diagram_and_partition(&g, &m, 0);
    let (deg, sig) = assignment(&m, &d, &p, &[]);
    let sum = m.direct_sum(&m);
    let degrees: Vec<i64> = deg.iter().chain(&deg).copied().collect();
    let signs: Vec<i64> = sig.iter().chain(&sig).copied().collect();
    let r = validate_assignment(&g, &chev, &sum, &degrees, &signs);
    assert!(r.passed(), "{:?}", r.failed());
}
