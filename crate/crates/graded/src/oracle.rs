//! Brute-force validation of CR structures on the realified extension `s ⊕ l`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;
use tanaka_core::lie::chevalley::ChevalleyAlgebra;
use tanaka_core::lie::extension::abelian_extension;
use tanaka_core::lie::module::ModuleRealization;
use tanaka_core::lie::realform::realify;
use tanaka_core::lie::table::SparseVec;
use tanaka_core::linalg::{IncrementalBasis, Matrix};
use tanaka_core::{GaussianRational, LieTable, Rational, Weight};

use crate::algebra::GradedCrAlgebra;
use crate::conditions::CrPartition;
use crate::diagram::WeightDiagram;

/// Outcome of one named check, with a violating pair of basis labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub witness: Option<(String, String)>,
}

impl CheckResult {
    fn pass(name: &str) -> Self {
        CheckResult { name: name.into(), passed: true, witness: None }
    }

    fn fail(name: &str, a: &str, b: &str) -> Self {
        CheckResult { name: name.into(), passed: false, witness: Some((a.into(), b.into())) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn apply_sparse_map(cols: &BTreeMap<usize, SparseVec<Rational>>, v: &[(usize, Rational)]) -> Option<SparseVec<Rational>> {
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (k, c) in v {
        for (i, x) in cols.get(k)? {
            let e = acc.entry(*i).or_insert_with(Rational::zero);
            *e += c * x;
        }
    }
    Some(acc.into_iter().filter(|(_, x)| !x.is_zero()).collect())
}

/// Axioms of a graded CR algebra for the structure `J` (given on the degree
/// −1 indices, in index order): `J² = −1`, `[JX, JY] = [X, Y]` on degree −1,
/// `[A, JX] = J[A, X]` for `A` of degree 0, and, when a complex unit `I` is
/// stored, `[V10, V10] = [V01, V01] = 0` for the `±I` eigenspaces of `J`.
pub fn cr_axioms(t: &LieTable<Rational>, j: &Matrix<Rational>) -> Vec<CheckResult> {
    axioms(t, j, false)
}

/// `true` when every check of [`cr_axioms`] passes; stops at the first failure.
pub fn cr_axioms_hold(t: &LieTable<Rational>, j: &Matrix<Rational>) -> bool {
    axioms(t, j, true).iter().all(|c| c.passed)
}

fn axioms(t: &LieTable<Rational>, j: &Matrix<Rational>, short: bool) -> Vec<CheckResult> {
    let idx = t.degree_indices(-1);
    let zero = t.degree_indices(0);
    let labels = t.labels();
    let cols = sparse_columns(j, &idx);
    let mut out = Vec::new();
    let done = |out: &Vec<CheckResult>| short && out.last().is_some_and(|c: &CheckResult| !c.passed);

    let mut square = CheckResult::pass("J^2=-1");
    for &k in &idx {
        let jj = apply_sparse_map(&cols, &cols[&k]).expect("J maps degree -1 to itself");
        if jj != vec![(k, -Rational::one())] {
            square = CheckResult::fail("J^2=-1", &labels[k], &labels[k]);
            break;
        }
    }
    out.push(square);
    if done(&out) {
        return out;
    }

    let mut ii = CheckResult::pass("CR (ii)");
    'outer: for (a, &x) in idx.iter().enumerate() {
        for &y in &idx[a + 1..] {
            if t.bracket_sparse(&cols[&x], &cols[&y]) != t.bracket_basis(x, y) {
                ii = CheckResult::fail("CR (ii)", &labels[x], &labels[y]);
                break 'outer;
            }
        }
    }
    out.push(ii);
    if done(&out) {
        return out;
    }

    let mut iii = CheckResult::pass("CR (iii)");
    'outer3: for &a in &zero {
        let unit_a = vec![(a, Rational::one())];
        for &x in &idx {
            let lhs = t.bracket_sparse(&unit_a, &cols[&x]);
            let rhs = apply_sparse_map(&cols, &t.bracket_basis(a, x));
            if rhs.as_ref() != Some(&lhs) {
                iii = CheckResult::fail("CR (iii)", &labels[a], &labels[x]);
                break 'outer3;
            }
        }
    }
    out.push(iii);
    if done(&out) {
        return out;
    }

    if let Some(unit) = t.unit() {
        let mut integ = CheckResult::pass("integrability");
        'outer4: for s in [1i64, -1] {
            // ker(J − s I) on degree −1
            let m = Matrix::from_fn(idx.len(), idx.len(), |r, c| {
                j.get(r, c) - Rational::from_integer(s.into()) * unit.get(idx[r], idx[c])
            });
            let ker: Vec<SparseVec<Rational>> = m
                .kernel()
                .into_iter()
                .map(|v| v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (idx[c], x)).collect())
                .collect();
            for (a, x) in ker.iter().enumerate() {
                for y in &ker[a + 1..] {
                    if !t.bracket_sparse(x, y).is_empty() {
                        let name = if s == 1 { "V10" } else { "V01" };
                        integ = CheckResult::fail("integrability", name, name);
                        break 'outer4;
                    }
                }
            }
        }
        out.push(integ);
    }
    out
}

fn sparse_columns(j: &Matrix<Rational>, idx: &[usize]) -> BTreeMap<usize, SparseVec<Rational>> {
    idx.iter()
        .enumerate()
        .map(|(c, &k)| {
            let col = (0..idx.len()).filter(|&r| !j.get(r, c).is_zero()).map(|r| (idx[r], j.get(r, c).clone())).collect();
            (k, col)
        })
        .collect()
}

/// Rank test on sparse vectors, compressing to the coordinates that occur.
fn first_dependent(vectors: &[SparseVec<Rational>]) -> Option<usize> {
    let mut coords: BTreeMap<usize, usize> = BTreeMap::new();
    for v in vectors {
        for (k, _) in v {
            let next = coords.len();
            coords.entry(*k).or_insert(next);
        }
    }
    let mut basis = IncrementalBasis::new(coords.len());
    vectors.iter().position(|v| {
        let mut dense = vec![Rational::zero(); coords.len()];
        for (k, x) in v {
            dense[coords[k]] = x.clone();
        }
        basis.try_insert(&dense).is_none()
    })
}

/// Fundamentality, nondegeneracy and transitivity of a graded table.
pub fn structural_checks(t: &LieTable<Rational>) -> Vec<CheckResult> {
    let labels = t.labels();
    let (lo, hi) = t.degree_range().unwrap_or((0, 0));
    let idx1 = t.degree_indices(-1);
    let minus1: Vec<SparseVec<Rational>> = idx1.iter().map(|&i| vec![(i, Rational::one())]).collect();
    let mut out = Vec::new();

    // degree −1 generates the negative part: dim [g_-1, layer] = dim g_{p-1}
    let mut fundamental = true;
    let mut layer = minus1.clone();
    for p in (lo..-1).rev() {
        let mut next: Vec<SparseVec<Rational>> = Vec::new();
        let mut basis = Vec::new();
        for x in &minus1 {
            for y in &layer {
                let z = t.bracket_sparse(x, y);
                if !z.is_empty() {
                    next.push(z);
                }
            }
        }
        // keep an independent subset
        for v in next {
            basis.push(v);
            if first_dependent(&basis).is_some() {
                basis.pop();
            }
        }
        if basis.len() != t.degree_indices(p).len() {
            fundamental = false;
            break;
        }
        layer = basis;
    }
    out.push(if fundamental {
        CheckResult::pass("fundamental")
    } else {
        CheckResult::fail("fundamental", "g_-1", "g_-")
    });

    // x ∈ g_p ↦ ([x, e])_{e ∈ g_{−1}} is injective for p = −1 and all p ≥ 0
    let n = t.dim();
    let injective = |p: i64| -> Option<usize> {
        let ip = t.degree_indices(p);
        let images: Vec<SparseVec<Rational>> = ip
            .iter()
            .map(|&a| {
                idx1.iter()
                    .enumerate()
                    .flat_map(|(c, &e)| t.bracket_basis(a, e).into_iter().map(move |(k, x)| (c * n + k, x)))
                    .collect()
            })
            .collect();
        first_dependent(&images).map(|pos| ip[pos])
    };
    out.push(match injective(-1) {
        None => CheckResult::pass("nondegenerate"),
        Some(a) => CheckResult::fail("nondegenerate", &labels[a], "g_-1"),
    });
    let mut transitive = CheckResult::pass("transitive");
    for p in 0..=hi {
        if let Some(a) = injective(p) {
            transitive = CheckResult::fail("transitive", &labels[a], "g_-1");
            break;
        }
    }
    out.push(transitive);
    out
}

/// The realified extension `s ⊕ l` of a graded CR algebra by a module with
/// the given degree of every module basis vector.
#[derive(Clone, Debug)]
pub struct RealExtension {
    pub table: LieTable<Rational>,
    /// Complex dimension of `s`.
    pub s_dim: usize,
    /// Weight of each module basis vector.
    pub weights: Vec<Weight>,
    /// Degree `−1` complex basis indices.
    pub minus1: Vec<usize>,
    structural: Vec<CheckResult>,
}

impl RealExtension {
    pub fn new(g: &GradedCrAlgebra, chev: &ChevalleyAlgebra, module: &ModuleRealization, degrees: &[i64]) -> Self {
        let action = chev.represent(module);
        let labels: Vec<String> = module.weights.iter().enumerate().map(|(i, w)| format!("v{i}{w}")).collect();
        let complex = abelian_extension(chev.table(), &action, labels).expect("module action is a homomorphism");
        let s_dim = chev.dim();
        let mut grading: Vec<i64> =
            (0..s_dim).map(|k| chev.root_of(k).map_or(0, |a| g.root_degree(&a))).collect();
        grading.extend_from_slice(degrees);
        let minus1 = (0..grading.len()).filter(|&k| grading[k] == -1).collect();
        let complex = complex.with_grading(grading).expect("degrees are compatible with the action");
        let table = realify(&complex.map_field(|x| GaussianRational::from(x.clone())));
        let structural = structural_checks(&table);
        RealExtension { table, s_dim, weights: module.weights.clone(), minus1, structural }
    }

    /// `J` on the realified degree −1 part from a sign (`±1` for `±i`) per
    /// complex degree −1 basis vector.
    pub fn j_matrix(&self, sign: impl Fn(usize) -> i64) -> Matrix<Rational> {
        let m = self.minus1.len();
        let mut j = Matrix::zeros(2 * m, 2 * m);
        for (c, &k) in self.minus1.iter().enumerate() {
            let s = Rational::from_integer(sign(k).into());
            // J x = s·(i x), J (i x) = −s·x
            j.set(2 * c + 1, 2 * c, s.clone());
            j.set(2 * c, 2 * c + 1, -s);
        }
        j
    }

    pub fn validate(&self, sign: impl Fn(usize) -> i64) -> ValidationReport {
        let mut checks = self.structural.clone();
        checks.extend(cr_axioms(&self.table, &self.j_matrix(sign)));
        ValidationReport { checks }
    }

    pub fn structurally_valid(&self) -> bool {
        self.structural.iter().all(|c| c.passed)
    }
}

fn root_sign(g: &GradedCrAlgebra, chev: &ChevalleyAlgebra, k: usize) -> i64 {
    let a = chev.root_of(k).expect("degree -1 vectors of s are root vectors");
    if g.r10.contains(&a) {
        1
    } else {
        -1
    }
}

/// Validates the CR structure given by a partition on an irreducible module.
pub fn module_level_validate(
    g: &GradedCrAlgebra,
    chev: &ChevalleyAlgebra,
    module: &ModuleRealization,
    diagram: &WeightDiagram,
    partition: &CrPartition,
) -> ValidationReport {
    let degrees: Vec<i64> = module.weights.iter().map(|w| diagram.degree(w).expect("weight in diagram")).collect();
    let ext = RealExtension::new(g, chev, module, &degrees);
    let s_dim = ext.s_dim;
    let mut report = ext.validate(|k| {
        if k < s_dim {
            root_sign(g, chev, k)
        } else if partition.p10.contains(&module.weights[k - s_dim]) {
            1
        } else {
            -1
        }
    });
    let uncovered = diagram
        .weights_of_degree(-1)
        .into_iter()
        .find(|w| !partition.p10.contains(w) && !partition.p01.contains(w));
    report.checks.push(match uncovered {
        None => CheckResult::pass("partition covers P_-1"),
        Some(w) => CheckResult::fail("partition covers P_-1", &w.label(), "P_-1"),
    });
    let repeated = diagram.weights_of_degree(-1).into_iter().find(|w| diagram.character.multiplicity(w) != 1);
    report.checks.push(match repeated {
        None => CheckResult::pass("multiplicity-one"),
        Some(w) => CheckResult::fail("multiplicity-one", &w.label(), &w.label()),
    });
    report
}

/// Validates an arbitrary assignment on a (possibly reducible) module: a
/// degree and a sign (`±1`, read only in degree −1) per module basis vector.
pub fn validate_assignment(
    g: &GradedCrAlgebra,
    chev: &ChevalleyAlgebra,
    module: &ModuleRealization,
    degrees: &[i64],
    signs: &[i64],
) -> ValidationReport {
    let ext = RealExtension::new(g, chev, module, degrees);
    let s_dim = ext.s_dim;
    ext.validate(|k| if k < s_dim { root_sign(g, chev, k) } else { signs[k - s_dim] })
}

/// Every partition of the weight set `P_{−1}` that passes the oracle.
pub fn oracle_partitions(
    g: &GradedCrAlgebra,
    chev: &ChevalleyAlgebra,
    module: &ModuleRealization,
    diagram: &WeightDiagram,
) -> Vec<CrPartition> {
    let degrees: Vec<i64> = module.weights.iter().map(|w| diagram.degree(w).expect("weight in diagram")).collect();
    let ext = RealExtension::new(g, chev, module, &degrees);
    if !ext.structurally_valid() {
        return Vec::new();
    }
    let p1: Vec<Weight> = diagram.weights_of_degree(-1).into_iter().collect();
    assert!(p1.len() < 24, "too many degree -1 weights to enumerate");
    let s_dim = ext.s_dim;
    let mut out = Vec::new();
    for mask in 0u32..(1 << p1.len()) {
        let part = CrPartition {
            p10: p1.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, w)| w.clone()).collect(),
            p01: p1.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 0).map(|(_, w)| w.clone()).collect(),
        };
        let j = ext.j_matrix(|k| {
            if k < s_dim {
                root_sign(g, chev, k)
            } else if part.p10.contains(&module.weights[k - s_dim]) {
                1
            } else {
                -1
            }
        });
        if cr_axioms_hold(&ext.table, &j) {
            out.push(part);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{sl2_complex, sl3_levi_tanaka};
    use crate::conditions::admissible_structures;
    use crate::diagram::enumerate_shifts;
    use tanaka_core::lie::module::realize_module;

    #[test]
    fn standard_rep_structures_pass() {
        let g = sl3_levi_tanaka();
        let chev = ChevalleyAlgebra::new(&g.root_system).unwrap();
        let w = Weight(vec![1, 0]);
        let m = realize_module(&g.root_system, &w, 200).unwrap();
        for s in admissible_structures(&g, &w).unwrap() {
            let r = module_level_validate(&g, &chev, &m, &s.diagram, &s.partition);
            assert!(r.passed(), "{:?}", r.failed());
            assert_eq!(oracle_partitions(&g, &chev, &m, &s.diagram), vec![s.partition.clone()]);
        }
    }

    #[test]
    fn sl2_three_dim_wrong_line_fails_integrability() {
        let g = sl2_complex();
        let chev = ChevalleyAlgebra::new(&g.root_system).unwrap();
        let w = Weight(vec![2]);
        let m = realize_module(&g.root_system, &w, 200).unwrap();
        let d = &enumerate_shifts(&g, &m.character())[1];
        assert!(oracle_partitions(&g, &chev, &m, d).is_empty());
        let forced = CrPartition { p10: Default::default(), p01: d.weights_of_degree(-1) };
        let r = module_level_validate(&g, &chev, &m, d, &forced);
        assert!(!r.check("integrability").unwrap().passed);
    }

    #[test]
    fn flipped_sign_fails_axiom_ii() {
        let g = sl3_levi_tanaka();
        let chev = ChevalleyAlgebra::new(&g.root_system).unwrap();
        let w = Weight(vec![1, 1]);
        let m = realize_module(&g.root_system, &w, 200).unwrap();
        let s = &admissible_structures(&g, &w).unwrap()[0];
        let mut flipped = s.partition.clone();
        let x = flipped.p10.iter().next().cloned().unwrap();
        flipped.p10.remove(&x);
        flipped.p01.insert(x);
        let r = module_level_validate(&g, &chev, &m, &s.diagram, &flipped);
        assert!(!r.check("CR (ii)").unwrap().passed || !r.check("CR (iii)").unwrap().passed);
    }
}
