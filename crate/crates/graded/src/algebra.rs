//! Gradations and CR functionals on root systems.

use std::collections::BTreeSet;

use num_traits::{One, Signed, ToPrimitive, Zero};
use tanaka_core::lie::roots::to_rational;
use tanaka_core::scalar::{format_rational, int};
use tanaka_core::{Rational, RootSystem, Weight};

use crate::GradedError;

/// Values `α_j(E)` on the simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicFunctional(pub Vec<Rational>);

/// Values `α_j(J)/i` on the simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrFunctional(pub Vec<Rational>);

/// Functional on simple roots induced by a diagonal matrix of `sl(n)`:
/// `α_j ↦ d_j − d_{j+1}`.
pub fn functional_from_diagonal(d: &[Rational]) -> Vec<Rational> {
    d.windows(2).map(|w| &w[0] - &w[1]).collect()
}

fn eval(values: &[Rational], root_coords: &[Rational]) -> Rational {
    values.iter().zip(root_coords).fold(Rational::zero(), |acc, (v, x)| acc + v * x)
}

/// Semisimple algebra with a gradation and (optionally) a CR functional.
#[derive(Clone, Debug)]
pub struct GradedCrAlgebra {
    pub root_system: RootSystem,
    pub label: String,
    pub e: CharacteristicFunctional,
    pub j: Option<CrFunctional>,
    /// Degree `α(E)` of every positive root, in root-system order.
    pub positive_degrees: Vec<i64>,
    pub kind: i64,
    pub r10: Vec<Vec<i64>>,
    pub r01: Vec<Vec<i64>>,
    pub levi_tanaka: bool,
}

impl GradedCrAlgebra {
    pub fn rank(&self) -> usize {
        self.root_system.rank()
    }

    /// `α(E)` for an integral combination of simple roots.
    pub fn root_degree(&self, root: &[i64]) -> i64 {
        let v = eval(&self.e.0, &to_rational(root));
        v.to_integer().to_i64().expect("root degrees are small integers")
    }

    /// `λ(E)` of a weight (rational).
    pub fn weight_e(&self, w: &Weight) -> Rational {
        eval(&self.e.0, &self.root_system.weight_to_root_coords(w))
    }

    /// `λ(J)/i` of a weight.
    pub fn weight_j(&self, w: &Weight) -> Rational {
        let j = self.j.as_ref().expect("CR functional attached");
        eval(&j.0, &self.root_system.weight_to_root_coords(w))
    }

    pub fn root_j(&self, root: &[i64]) -> Rational {
        let j = self.j.as_ref().expect("CR functional attached");
        eval(&j.0, &to_rational(root))
    }

    /// All roots of degree `p`.
    pub fn roots_of_degree(&self, p: i64) -> Vec<Vec<i64>> {
        self.root_system.roots().into_iter().filter(|a| self.root_degree(a) == p).collect()
    }

    /// A simple system `B` whose positive roots all have degree `≤ 0`,
    /// obtained from the standard one by simple reflections.
    pub fn nonpositive_simple_system(&self) -> Vec<Vec<i64>> {
        let rs = &self.root_system;
        let mut b: Vec<Vec<i64>> = (0..rs.rank()).map(|i| rs.simple_root(i)).collect();
        while let Some(beta) = b.iter().find(|a| self.root_degree(a) > 0).cloned() {
            b = b.iter().map(|x| rs.reflect_in(&beta, x)).collect();
        }
        b
    }

    /// `(B_0, B^{1,0}, B^{0,1})`.
    pub fn simple_split(&self) -> (Vec<Vec<i64>>, Vec<Vec<i64>>, Vec<Vec<i64>>) {
        let b = self.nonpositive_simple_system();
        let b0 = b.iter().filter(|a| self.root_degree(a) == 0).cloned().collect();
        let b10 = b.iter().filter(|a| self.r10.contains(a)).cloned().collect();
        let b01 = b.iter().filter(|a| self.r01.contains(a)).cloned().collect();
        (b0, b10, b01)
    }

    /// Kind of each Dynkin component.
    pub fn component_kinds(&self) -> Vec<i64> {
        let rs = &self.root_system;
        (0..rs.components().len())
            .map(|c| {
                rs.positive_roots()
                    .iter()
                    .filter(|a| rs.component_of(a) == c)
                    .map(|a| self.root_degree(a).abs())
                    .max()
                    .unwrap_or(0)
            })
            .collect()
    }

    pub fn e_strings(&self) -> Vec<String> {
        self.e.0.iter().map(format_rational).collect()
    }

    pub fn j_strings(&self) -> Vec<String> {
        self.j.as_ref().map(|j| j.0.iter().map(format_rational).collect()).unwrap_or_default()
    }
}

/// Gradation of a root system by `E`; every root degree must be an integer.
pub fn grade_algebra(rs: &RootSystem, label: &str, e: CharacteristicFunctional) -> Result<GradedCrAlgebra, GradedError> {
    if e.0.len() != rs.rank() {
        return Err(GradedError::WrongLength { what: "E", expected: rs.rank(), got: e.0.len() });
    }
    let mut degrees = Vec::with_capacity(rs.positive_roots().len());
    for a in rs.positive_roots() {
        let v = eval(&e.0, &to_rational(a));
        if !v.is_integer() {
            return Err(GradedError::NonIntegralDegree { root: a.clone(), value: format_rational(&v) });
        }
        degrees.push(v.to_integer().to_i64().expect("small degree"));
    }
    let kind = degrees.iter().map(|d| d.abs()).max().unwrap_or(0);
    Ok(GradedCrAlgebra {
        root_system: rs.clone(),
        label: label.to_string(),
        e,
        j: None,
        positive_degrees: degrees,
        kind,
        r10: Vec::new(),
        r01: Vec::new(),
        levi_tanaka: false,
    })
}

/// Attaches `J`: `α(J)/i = ±1` on `R_{−1}`, no two roots of the same type sum
/// to a root, and `s_0` commutes with `J` on `s_{−1}`.
pub fn attach_cr(mut g: GradedCrAlgebra, j: CrFunctional) -> Result<GradedCrAlgebra, GradedError> {
    if j.0.len() != g.rank() {
        return Err(GradedError::WrongLength { what: "J", expected: g.rank(), got: j.0.len() });
    }
    g.j = Some(j);
    let minus1 = g.roots_of_degree(-1);
    let (mut r10, mut r01) = (Vec::new(), Vec::new());
    for a in &minus1 {
        let v = g.root_j(a);
        if v == Rational::one() {
            r10.push(a.clone());
        } else if v == -Rational::one() {
            r01.push(a.clone());
        } else {
            return Err(GradedError::CrValue { root: a.clone(), value: format_rational(&v) });
        }
    }
    let rs = &g.root_system;
    for set in [&r10, &r01] {
        for (x, a) in set.iter().enumerate() {
            for b in &set[x..] {
                let s: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                if rs.is_root(&s) {
                    return Err(GradedError::CrPairSumsToRoot { first: a.clone(), second: b.clone() });
                }
            }
        }
    }
    for gamma in g.roots_of_degree(0) {
        for a in &minus1 {
            let s: Vec<i64> = gamma.iter().zip(a).map(|(p, q)| p + q).collect();
            if rs.is_root(&s) && g.root_j(&s) != g.root_j(a) {
                return Err(GradedError::CrNotEquivariant { degree_zero: gamma.clone(), root: a.clone() });
            }
        }
    }
    let set10: BTreeSet<Vec<i64>> = r10.iter().cloned().collect();
    let set01: BTreeSet<Vec<i64>> = r01.iter().cloned().collect();
    g.r10 = set10.into_iter().collect();
    g.r01 = set01.into_iter().collect();
    g.levi_tanaka = g.component_kinds().iter().all(|&k| k >= 2);
    Ok(g)
}

/// `sl(3, ℂ)` with `E = diag(1, 0, −1)` and `J = diag(i/3, −2i/3, i/3)`.
pub fn sl3_levi_tanaka() -> GradedCrAlgebra {
    let rs = tanaka_core::build_root_system(&[vec![2, -1], vec![-1, 2]]).expect("A2");
    let e = functional_from_diagonal(&[int(1), int(0), int(-1)]);
    let j = functional_from_diagonal(&[Rational::new(1.into(), 3.into()), Rational::new((-2).into(), 3.into()), Rational::new(1.into(), 3.into())]);
    let g = grade_algebra(&rs, "A2", CharacteristicFunctional(e)).expect("integral");
    attach_cr(g, CrFunctional(j)).expect("valid CR structure")
}

/// `sl(3, ℂ)` with the opposite gradation `E = diag(−1, 0, 1)`, in which the
/// negative part is spanned by positive root vectors (upper triangular).
pub fn sl3_upper() -> GradedCrAlgebra {
    let rs = tanaka_core::build_root_system(&[vec![2, -1], vec![-1, 2]]).expect("A2");
    let g = grade_algebra(&rs, "A2", CharacteristicFunctional(vec![int(-1), int(-1)])).expect("integral");
    attach_cr(g, CrFunctional(vec![int(1), int(-1)])).expect("valid CR structure")
}

/// `sl(2, ℂ)` with `E = diag(1/2, −1/2)` and `J = diag(i/2, −i/2)`.
pub fn sl2_complex() -> GradedCrAlgebra {
    let rs = tanaka_core::build_root_system(&[vec![2]]).expect("A1");
    let g = grade_algebra(&rs, "A1", CharacteristicFunctional(vec![int(1)])).expect("integral");
    attach_cr(g, CrFunctional(vec![int(1)])).expect("valid CR structure")
}

/// Sign of a rational as `−1`, `0`, `1`.
pub fn sign(q: &Rational) -> i64 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tanaka_core::cartan_matrix_of_type;

    #[test]
    fn sl3_levi_tanaka_data() {
        let g = sl3_levi_tanaka();
        assert_eq!(g.positive_degrees, vec![1, 1, 2]);
        assert_eq!(g.kind, 2);
        assert_eq!(g.r10, vec![vec![0, -1]]);
        assert_eq!(g.r01, vec![vec![-1, 0]]);
        assert!(g.levi_tanaka);
        let (b0, b10, b01) = g.simple_split();
        assert!(b0.is_empty());
        assert_eq!((b10, b01), (vec![vec![0, -1]], vec![vec![-1, 0]]));
    }

    #[test]
    fn sl2_has_kind_one() {
        let g = sl2_complex();
        assert_eq!(g.kind, 1);
        assert!(!g.levi_tanaka);
        assert!(g.r10.is_empty());
        assert_eq!(g.r01, vec![vec![-1]]);
    }

    #[test]
    fn zero_functional_and_bad_inputs() {
        let rs = tanaka_core::build_root_system(&cartan_matrix_of_type("A2").unwrap()).unwrap();
        let g = grade_algebra(&rs, "A2", CharacteristicFunctional(vec![int(0), int(0)])).unwrap();
        assert_eq!(g.kind, 0);
        let half = Rational::new(1.into(), 2.into());
        assert!(matches!(
            grade_algebra(&rs, "A2", CharacteristicFunctional(vec![half, int(0)])),
            Err(GradedError::NonIntegralDegree { .. })
        ));
        let g = grade_algebra(&rs, "A2", CharacteristicFunctional(vec![int(1), int(1)])).unwrap();
        assert!(matches!(attach_cr(g, CrFunctional(vec![int(2), int(-2)])), Err(GradedError::CrValue { .. })));
    }
}
