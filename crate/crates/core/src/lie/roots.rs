//! Root systems from Cartan matrices.
//!
//! Convention: `C[i][j] = α_j(h_i)`, so the simple reflection is
//! `s_i(x) = x − (Σ_j C[i][j] x_j) α_i` on simple-root coordinates, and a
//! weight with fundamental coordinates `c` has simple-root coordinates
//! `x = C⁻¹ c`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::Matrix;
use crate::scalar::{int, Rational};
use crate::LieError;

/// Largest coefficient of a root of a finite-type system (the highest root of E8).
const MAX_ROOT_COEFFICIENT: i64 = 6;

/// Integral weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
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

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    /// Short label `Γ`-style, e.g. `(1,0)`.
    pub fn label(&self) -> String {
        let inner: Vec<String> = self.0.iter().map(i64::to_string).collect();
        format!("({})", inner.join(","))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Root system of a finite-type symmetrizable Cartan matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSystem {
    cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, sorted by height and then
    /// by descending lexicographic order (simple roots come first, in index order).
    positive: Vec<Vec<i64>>,
    root_set: HashSet<Vec<i64>>,
    /// `(α_i, α_i)` for each simple root.
    lengths: Vec<Rational>,
    pairing: Matrix<Rational>,
    cartan_inverse: Matrix<Rational>,
    components: Vec<Vec<usize>>,
}

fn validate_cartan(c: &[Vec<i64>]) -> Result<(), LieError> {
    let r = c.len();
    if r == 0 {
        return Err(LieError::InvalidCartan("empty matrix".into()));
    }
    for (i, row) in c.iter().enumerate() {
        if row.len() != r {
            return Err(LieError::InvalidCartan(format!("row {i} has length {}, expected {r}", row.len())));
        }
        if row[i] != 2 {
            return Err(LieError::InvalidCartan(format!("diagonal entry ({i}, {i}) is {}, expected 2", row[i])));
        }
        for (j, &x) in row.iter().enumerate() {
            if i == j {
                continue;
            }
            if x > 0 {
                return Err(LieError::InvalidCartan(format!("off-diagonal entry ({i}, {j}) = {x} is positive")));
            }
            if (x == 0) != (c[j][i] == 0) {
                return Err(LieError::InvalidCartan(format!("entries ({i}, {j}) and ({j}, {i}) must vanish together")));
            }
        }
    }
    Ok(())
}

fn connected_components(c: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let r = c.len();
    let mut seen = vec![false; r];
    let mut out = Vec::new();
    for start in 0..r {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..r {
                if !seen[j] && c[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Squared lengths `d_i` with `d_i C_ij = d_j C_ji`, primitive integers times 2
/// on each component (so simply-laced types get `d = 2`).
fn symmetrizer(c: &[Vec<i64>], components: &[Vec<usize>]) -> Result<Vec<Rational>, LieError> {
    let r = c.len();
    let mut d: Vec<Option<Rational>> = vec![None; r];
    for comp in components {
        d[comp[0]] = Some(Rational::one());
        let mut queue = VecDeque::from([comp[0]]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].clone().expect("visited");
            for j in 0..r {
                if i == j || c[i][j] == 0 {
                    continue;
                }
                let dj = &di * int(c[i][j]) / int(c[j][i]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        queue.push_back(j);
                    }
                    Some(existing) if *existing != dj => {
                        return Err(LieError::InvalidCartan(format!(
                            "not symmetrizable (inconsistent cycle through nodes {i} and {j})"
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        let lcm = comp.iter().fold(BigInt::one(), |acc, &i| acc.lcm(d[i].as_ref().unwrap().denom()));
        let nums: Vec<BigInt> = comp.iter().map(|&i| (d[i].as_ref().unwrap() * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let g = nums.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for (&i, n) in comp.iter().zip(nums) {
            d[i] = Some(Rational::from_integer(n / &g * 2));
        }
    }
    Ok(d.into_iter().map(|x| x.expect("every node lies in a component")).collect())
}

/// Builds the root system of a finite-type Cartan matrix by closing the simple
/// roots under simple reflections.
pub fn build_root_system(cartan: &[Vec<i64>]) -> Result<RootSystem, LieError> {
    validate_cartan(cartan)?;
    let r = cartan.len();
    let components = connected_components(cartan);
    let lengths = symmetrizer(cartan, &components)?;
    let bound = 2 * r * r + 2 * r + 240;

    let simple: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    let mut root_set: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for s in &simple {
        root_set.insert(s.clone());
        queue.push_back(s.clone());
    }
    while let Some(x) = queue.pop_front() {
        for i in 0..r {
            let y = reflect_with(cartan, i, &x);
            if root_set.contains(&y) {
                continue;
            }
            let grows = y.iter().any(|c| c.abs() > MAX_ROOT_COEFFICIENT);
            if grows || root_set.len() + 1 > bound {
                return Err(LieError::NotFiniteType { count: root_set.len() + 1, witness: y });
            }
            root_set.insert(y.clone());
            queue.push_back(y);
        }
    }
    let mut positive: Vec<Vec<i64>> = root_set.iter().filter(|x| x.iter().all(|&c| c >= 0)).cloned().collect();
    if positive.len() * 2 != root_set.len() {
        return Err(LieError::NotFiniteType { count: root_set.len(), witness: positive[0].clone() });
    }
    positive.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });

    let pairing = Matrix::from_fn(r, r, |i, j| &lengths[i] * int(cartan[i][j]) / int(2));
    if pairing != pairing.transpose() {
        return Err(LieError::InvalidCartan("symmetrized form is not symmetric".into()));
    }
    let c = Matrix::from_fn(r, r, |i, j| int(cartan[i][j]));
    let cartan_inverse = c
        .inverse()
        .ok_or_else(|| LieError::InvalidCartan("singular Cartan matrix".into()))?;
    Ok(RootSystem { cartan: cartan.to_vec(), positive, root_set, lengths, pairing, cartan_inverse, components })
}

fn reflect_with(cartan: &[Vec<i64>], i: usize, x: &[i64]) -> Vec<i64> {
    let pairing: i64 = cartan[i].iter().zip(x).map(|(c, v)| c * v).sum();
    let mut y = x.to_vec();
    y[i] -= pairing;
    y
}

/// Cartan matrix of a classical type label such as `A2`, `B3`, `C2`, `D4`, `G2`.
pub fn cartan_matrix_of_type(label: &str) -> Result<Vec<Vec<i64>>, LieError> {
    let label = label.trim();
    let bad = || LieError::InvalidCartan(format!("unknown type label `{label}`"));
    let (kind, n) = label.split_at(1);
    let n: usize = n.parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let chain = |c: &mut Vec<Vec<i64>>, upto: usize| {
        for i in 0..upto.saturating_sub(1) {
            c[i][i + 1] = -1;
            c[i + 1][i] = -1;
        }
    };
    match kind {
        "A" => chain(&mut c, n),
        "B" if n >= 2 => {
            chain(&mut c, n);
            c[n - 2][n - 1] = -2;
        }
        "C" if n >= 2 => {
            chain(&mut c, n);
            c[n - 1][n - 2] = -2;
        }
        "D" if n >= 4 => {
            chain(&mut c, n - 1);
            c[n - 3][n - 1] = -1;
            c[n - 1][n - 3] = -1;
        }
        "G" if n == 2 => {
            c[0][1] = -1;
            c[1][0] = -3;
        }
        "F" if n == 4 => {
            chain(&mut c, 4);
            c[1][2] = -2;
        }
        "E" if (6..=8).contains(&n) => {
            // Bourbaki numbering: 1-3-4-5-..., with 2 attached to 4.
            let edges: Vec<(usize, usize)> = [(0, 2), (2, 3), (1, 3)].into_iter().chain((3..n - 1).map(|i| (i, i + 1))).collect();
            for (a, b) in edges {
                c[a][b] = -1;
                c[b][a] = -1;
            }
        }
        _ => return Err(bad()),
    }
    Ok(c)
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    /// All roots: positive roots followed by their negatives (same order).
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let mut out = self.positive.clone();
        out.extend(self.positive.iter().map(|a| a.iter().map(|c| -c).collect()));
        out
    }

    pub fn num_roots(&self) -> usize {
        self.root_set.len()
    }

    pub fn is_root(&self, x: &[i64]) -> bool {
        self.root_set.contains(x)
    }

    /// Symmetrized invariant form on simple-root coordinates.
    pub fn pairing(&self) -> &Matrix<Rational> {
        &self.pairing
    }

    /// `(α_i, α_i)` for each simple root.
    pub fn simple_lengths(&self) -> &[Rational] {
        &self.lengths
    }

    /// Dynkin components as sorted lists of node indices.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        (0..self.rank()).map(|j| i64::from(i == j)).collect()
    }

    pub fn height(root: &[i64]) -> i64 {
        root.iter().sum()
    }

    pub fn reflect(&self, i: usize, x: &[i64]) -> Vec<i64> {
        reflect_with(&self.cartan, i, x)
    }

    /// Inner product of two vectors given in simple-root coordinates.
    pub fn inner(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let bx = self.pairing.mul_vec(x);
        bx.iter().zip(y).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn inner_int(&self, x: &[i64], y: &[i64]) -> Rational {
        self.inner(&to_rational(x), &to_rational(y))
    }

    /// Simple-root coordinates of a weight.
    pub fn weight_to_root_coords(&self, w: &Weight) -> Vec<Rational> {
        self.cartan_inverse.mul_vec(&to_rational(&w.0))
    }

    /// Fundamental coordinates of an integral combination of simple roots.
    pub fn root_to_weight(&self, x: &[i64]) -> Weight {
        let r = self.rank();
        Weight((0..r).map(|i| (0..r).map(|j| self.cartan[i][j] * x[j]).sum()).collect())
    }

    /// Fundamental coordinates of a rational simple-root vector, if integral.
    pub fn root_coords_to_weight(&self, x: &[Rational]) -> Option<Weight> {
        let r = self.rank();
        (0..r)
            .map(|i| {
                let v = (0..r).fold(Rational::zero(), |acc, j| acc + int(self.cartan[i][j]) * &x[j]);
                v.is_integer().then(|| v.to_integer().to_i64()).flatten()
            })
            .collect::<Option<Vec<i64>>>()
            .map(Weight)
    }

    pub fn weight_inner(&self, a: &Weight, b: &Weight) -> Rational {
        self.inner(&self.weight_to_root_coords(a), &self.weight_to_root_coords(b))
    }

    /// `⟨λ, α^∨⟩ = 2(λ, α)/(α, α)` for a root `α` in simple-root coordinates.
    pub fn coroot_pairing(&self, w: &Weight, root: &[i64]) -> Rational {
        let a = to_rational(root);
        let num = self.inner(&self.weight_to_root_coords(w), &a) * int(2);
        num / self.inner(&a, &a)
    }

    /// `ρ`, the sum of the fundamental weights.
    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    /// Dimension of the irreducible module of highest weight `λ`.
    pub fn weyl_dimension(&self, highest: &Weight) -> Result<BigInt, LieError> {
        self.check_weight(highest)?;
        if !highest.is_dominant() {
            return Err(LieError::NotDominant(highest.0.clone()));
        }
        let lr = self.weight_to_root_coords(&highest.add(&self.rho()));
        let rho = self.weight_to_root_coords(&self.rho());
        let mut acc = Rational::one();
        for a in &self.positive {
            let ar = to_rational(a);
            acc *= self.inner(&lr, &ar) / self.inner(&rho, &ar);
        }
        assert!(acc.is_integer(), "Weyl dimension must be integral");
        Ok(acc.to_integer())
    }

    pub fn check_weight(&self, w: &Weight) -> Result<(), LieError> {
        if w.rank() != self.rank() {
            return Err(LieError::WrongRank { expected: self.rank(), got: w.rank() });
        }
        Ok(())
    }

    /// Index of the Dynkin component containing the support of a root.
    pub fn component_of(&self, root: &[i64]) -> usize {
        let i = root.iter().position(|&c| c != 0).expect("nonzero root");
        self.components.iter().position(|c| c.contains(&i)).expect("node in a component")
    }

    /// Applies the reflection in an arbitrary root `β` to `x` (simple-root coordinates).
    pub fn reflect_in(&self, beta: &[i64], x: &[i64]) -> Vec<i64> {
        let b = to_rational(beta);
        let k = self.inner(&to_rational(x), &b) * int(2) / self.inner(&b, &b);
        let k = k.to_integer().to_i64().expect("root strings are short");
        x.iter().zip(beta).map(|(xi, bi)| xi - k * bi).collect()
    }

    /// The set of positive roots as a sorted set, for membership tests.
    pub fn positive_set(&self) -> BTreeSet<Vec<i64>> {
        self.positive.iter().cloned().collect()
    }
}

pub fn to_rational(x: &[i64]) -> Vec<Rational> {
    x.iter().map(|&v| int(v)).collect()
}

/// Independent route to the root count: the closure of the simple roots
/// under all reflections `s_β`, `β` ranging over roots already found.
#[doc(hidden)]
pub fn naive_root_count(rs: &RootSystem) -> usize {
    let r = rs.rank();
    let mut found: BTreeSet<Vec<i64>> = (0..r).map(|i| rs.simple_root(i)).collect();
    loop {
        let snapshot: Vec<Vec<i64>> = found.iter().cloned().collect();
        let before = found.len();
        for b in &snapshot {
            for x in &snapshot {
                found.insert(rs.reflect_in(b, x));
            }
        }
        if found.len() == before {
            return found.len();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one() {
        let rs = build_root_system(&[vec![2]]).unwrap();
        assert_eq!(rs.roots(), vec![vec![1], vec![-1]]);
    }

    #[test]
    fn a2_and_a3_counts() {
        let a2 = build_root_system(&cartan_matrix_of_type("A2").unwrap()).unwrap();
        assert_eq!(a2.num_roots(), 6);
        assert_eq!(a2.positive_roots(), &[vec![1, 0], vec![0, 1], vec![1, 1]]);
        let a3 = build_root_system(&cartan_matrix_of_type("A3").unwrap()).unwrap();
        assert_eq!(a3.num_roots(), 12);
        assert_eq!(naive_root_count(&a3), 12);
    }

    #[test]
    fn other_types() {
        for (t, n) in [("B2", 8), ("C3", 18), ("D4", 24), ("G2", 12), ("F4", 48), ("E6", 72)] {
            let rs = build_root_system(&cartan_matrix_of_type(t).unwrap()).unwrap();
            assert_eq!(rs.num_roots(), n, "{t}");
        }
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(matches!(build_root_system(&[vec![1]]), Err(LieError::InvalidCartan(_))));
        assert!(matches!(build_root_system(&[vec![2, 1], vec![-1, 2]]), Err(LieError::InvalidCartan(_))));
        assert!(matches!(build_root_system(&[vec![2, -1], vec![0, 2]]), Err(LieError::InvalidCartan(_))));
        // Affine A1: closure never ends.
        assert!(matches!(build_root_system(&[vec![2, -2], vec![-2, 2]]), Err(LieError::NotFiniteType { .. })));
        // Hyperbolic rank 2.
        assert!(matches!(build_root_system(&[vec![2, -3], vec![-3, 2]]), Err(LieError::NotFiniteType { .. })));
    }

    #[test]
    fn weights_round_trip_through_root_coordinates() {
        let rs = build_root_system(&cartan_matrix_of_type("A2").unwrap()).unwrap();
        let w = Weight(vec![1, 0]);
        let x = rs.weight_to_root_coords(&w);
        assert_eq!(x, vec![Rational::new(2.into(), 3.into()), Rational::new(1.into(), 3.into())]);
        assert_eq!(rs.root_coords_to_weight(&x), Some(w));
        assert_eq!(rs.root_to_weight(&[1, 0]), Weight(vec![2, -1]));
    }

    #[test]
    fn weyl_dimensions() {
        let rs = build_root_system(&cartan_matrix_of_type("A2").unwrap()).unwrap();
        let dim = |a, b| rs.weyl_dimension(&Weight(vec![a, b])).unwrap();
        assert_eq!(dim(1, 0), 3.into());
        assert_eq!(dim(1, 1), 8.into());
        assert_eq!(dim(2, 0), 6.into());
        assert_eq!(dim(2, 1), 15.into());
        assert!(rs.weyl_dimension(&Weight(vec![-1, 0])).is_err());
    }
}
