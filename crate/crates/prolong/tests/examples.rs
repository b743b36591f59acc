mod common;

use std::collections::BTreeMap;

use num_traits::One;
use tanaka_core::lie::roots::RootSystem;
use tanaka_core::scalar::{int, rat};
use tanaka_core::{build_root_system, cartan_matrix_of_type, Rational, Weight};
use tanaka_graded::algebra::{sl2_complex, sl3_upper};
use tanaka_graded::admissible_structures;
use tanaka_prolong::presets::*;
use tanaka_prolong::*;

fn run(ext: &Extension) -> Analysis {
    let a = analyze(ext, None).unwrap();
    assert!(!a.g.truncated);
    assert!(a.g.table.check_jacobi().is_ok(), "{}", ext.label);
    a
}

fn profile(a: &Analysis) -> BTreeMap<i64, usize> {
    a.g.degrees.clone()
}

/// Real degree profile of the realified complex algebra of `label` graded by
/// root height.
fn principal_profile(label: &str) -> BTreeMap<i64, usize> {
    let rs: RootSystem = build_root_system(&cartan_matrix_of_type(label).unwrap()).unwrap();
    let mut out = BTreeMap::new();
    out.insert(0, 2 * rs.rank());
    for a in rs.positive_roots() {
        let h = RootSystem::height(a);
        *out.entry(h).or_insert(0) += 2;
        *out.entry(-h).or_insert(0) += 2;
    }
    out
}

fn oracle_agrees(a: &Analysis) {
    let positive: BTreeMap<i64, usize> = a.g.degrees.iter().filter(|(p, _)| **p >= 0).map(|(p, d)| (*p, *d)).collect();
    assert_eq!(common::prolongation_dims(&a.m, a.g.termination_degree + 1, true), positive);
}

/// `[J_g, x] = Jx` on `m_{−1}`, checked on the table.
fn j_element_induces_j(a: &Analysis) {
    let j = a.structure.as_ref().unwrap().j.as_ref().unwrap();
    let idx = a.g.minus_one();
    for (c, &x) in idx.iter().enumerate() {
        let image = a.g.table.bracket_sparse(&j.j_element, &[(x, Rational::one())]);
        let expected: Vec<(usize, Rational)> =
            (0..idx.len()).filter(|&r| *a.m.j.get(r, c) != int(0)).map(|r| (idx[r], a.m.j.get(r, c).clone())).collect();
        assert_eq!(image, expected);
    }
}

#[test]
fn anti_hermitian_module_gives_su22_profile() {
    let ext = sl2_antihermitian().unwrap();
    let a = run(&ext);
    assert_eq!(profile(&a), BTreeMap::from([(-2, 1), (-1, 4), (0, 5), (1, 4), (2, 1)]));
    assert_eq!(a.g.dim(), 15);
    let s = a.structure.as_ref().unwrap();
    assert_eq!(s.classification, Classification::Semisimple);
    assert_eq!(s.j.as_ref().unwrap().k_values, vec![int(0)]);
    assert_eq!(s.j_semisimple, Some(true));
    assert_eq!(a.g.termination_degree, a.m.kind() + 1);
    oracle_agrees(&a);
    j_element_induces_j(&a);
}

#[test]
fn two_dimensional_module_gives_sl3() {
    let a = run(&sl2_irreducible(2).unwrap());
    assert_eq!(profile(&a), principal_profile("A2"));
    assert_eq!(a.g.dim(), 16);
    let s = a.structure.as_ref().unwrap();
    assert_eq!(s.classification, Classification::Semisimple);
    assert_eq!(s.j.as_ref().unwrap().k_values, vec![rat(-1, 2)]);
    oracle_agrees(&a);
    j_element_induces_j(&a);
}

#[test]
fn three_dimensional_module_gives_principally_graded_sp4() {
    let a = run(&sl2_irreducible(3).unwrap());
    assert_eq!(profile(&a), principal_profile("C2"));
    let s = a.structure.as_ref().unwrap();
    assert_eq!(s.classification, Classification::Semisimple);
    assert_eq!(s.j.as_ref().unwrap().k_values, vec![int(0)]);
    oracle_agrees(&a);
}

#[test]
fn higher_modules_are_proper_with_one_dimensional_torus() {
    let g = sl2_complex();
    for n in 4..=6i64 {
        let a = run(&sl2_irreducible(n).unwrap());
        let dim = usize::try_from(n).unwrap();
        assert_eq!(a.g.dim(), 2 * dim + 8, "n = {n}");
        let s = a.structure.as_ref().unwrap();
        assert_eq!(s.classification, Classification::Proper);
        assert_eq!(s.radical.len(), 2 * dim + 2);
        assert_eq!(s.shape.t_dim, 2);
        assert_eq!(s.shape.a_dim, 0);
        assert!(s.l_in_nilpotent);
        assert_eq!(s.nilpotent.len(), 2 * dim);
        assert!(s.nilpotent_beyond_l.is_empty());
        let expected_k = admissible_structures(&g, &Weight(vec![n - 1])).unwrap()[0].k.clone();
        assert_eq!(expected_k, rat(n - 3, 2));
        assert_eq!(s.j.as_ref().unwrap().k_values, vec![expected_k]);
        assert_eq!(s.j_semisimple, Some(true));
        oracle_agrees(&a);
        j_element_induces_j(&a);
    }
}

#[test]
fn standard_module_alone_gives_principally_graded_sl4() {
    let g = sl3_upper();
    let w = Weight(vec![1, 0]);
    let part = ModulePart::from_structure(&g, "V", &w, &structure_with_shift(&g, &w, &int(-2)).unwrap()).unwrap();
    let a = run(&complex_extension("sl(3,C) + V", &g, &[part]).unwrap());
    assert_eq!(profile(&a), principal_profile("A3"));
    assert_eq!(a.structure.as_ref().unwrap().classification, Classification::Semisimple);
    oracle_agrees(&a);
}

#[test]
fn standard_plus_dual_has_nilpotent_part_in_degrees_zero_to_two() {
    let ext = sl3_standard_dual().unwrap();
    let a = run(&ext);
    assert_eq!(profile(&a), BTreeMap::from([(-3, 2), (-2, 6), (-1, 8), (0, 12), (1, 8), (2, 6), (3, 2)]));
    let s = a.structure.as_ref().unwrap();
    assert_eq!(s.classification, Classification::Proper);
    assert_eq!(s.nilpotent_beyond_l, BTreeMap::from([(0, 2), (1, 2), (2, 2)]));
    // the Levi factor is sl(4, C), which contains V
    assert_eq!(s.shape.levi_dim, 30);
    assert!(!s.l_in_nilpotent);
    assert_eq!(s.shape.t_dim, 2);
    assert_eq!(s.j.as_ref().unwrap().k_values, vec![rat(-2, 3), rat(-1, 3)]);
    oracle_agrees(&a);
    j_element_induces_j(&a);
}

#[test]
fn real_adjoint_modules_have_j_equal_to_j_s() {
    for ext in [su12_adjoint().unwrap(), su12_adjoint_shifted().unwrap()] {
        let a = run(&ext);
        assert_eq!(a.g.dim(), 17, "{}", ext.label);
        let s = a.structure.as_ref().unwrap();
        assert_eq!(s.classification, Classification::Proper);
        let j = s.j.as_ref().unwrap();
        assert_eq!(j.k_values, vec![int(0)]);
        assert_eq!(j.j_element, j.j_s);
        assert_eq!(j.complex, vec![false]);
        oracle_agrees(&a);
        j_element_induces_j(&a);
    }
}

#[test]
fn two_copies_carry_an_sl2r_factor() {
    let ext = sl2_antihermitian_copies(2).unwrap();
    let a = run(&ext);
    assert_eq!(a.g.dim(), 18);
    let s = a.structure.as_ref().unwrap();
    assert_eq!(s.classification, Classification::Proper);
    assert_eq!(s.shape.a_dim, 3);
    assert_eq!(s.shape.t_dim, 1);
    assert!(s.l_in_nilpotent);
    oracle_agrees(&a);
}

#[test]
fn report_is_exact_and_deterministic() {
    let ext = sl2_irreducible(4).unwrap();
    let first = run(&ext).report(&ext).unwrap().to_json();
    let second = run(&ext).report(&ext).unwrap().to_json();
    assert_eq!(first, second);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["total_dim"], 16);
    assert_eq!(v["classification"], "proper");
    assert_eq!(v["k_values"][0], "1/2");
    assert_eq!(v["field"], "real");
    assert!(integers_only(&v));
}

fn integers_only(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Number(n) => n.is_i64() || n.is_u64(),
        serde_json::Value::Array(a) => a.iter().all(integers_only),
        serde_json::Value::Object(o) => o.values().all(integers_only),
        _ => true,
    }
}

#[test]
fn nilpotent_table_round_trips_through_json() {
    let ext = sl2_antihermitian().unwrap();
    let m = assemble_m(&ext).unwrap();
    let json = serde_json::to_string(&m.table.clone().with_complex_structure(m.j.clone()).to_json()).unwrap();
    let parsed: tanaka_core::LieTableJson = serde_json::from_str(&json).unwrap();
    let table = tanaka_core::LieTable::<Rational>::from_json(&parsed).unwrap();
    let m2 = nilpotent_from_table(&table).unwrap();
    let g = prolong(&m2).unwrap();
    assert_eq!(g.dim(), 15);
    let r = NilpotentReport::new("sl2c1", &m2, &g).unwrap();
    assert_eq!(r.classification, Some(Classification::Semisimple));
    assert!(r.j_element.is_some());
}
