//! Degree-by-degree maximal transitive prolongation of a graded CR algebra.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use tanaka_core::lie::table::SparseVec;
use tanaka_core::linalg::IncrementalBasis;
use tanaka_core::{LieTable, Rational};

use crate::extension::GradedNilpotent;
use crate::solve::{SparseEchelon, SparseRow};
use crate::ProlongError;

/// The prolongation `g = m ⊕ g_0 ⊕ g_1 ⊕ …`.
#[derive(Clone, Debug)]
pub struct Prolongation {
    /// Graded table of `g`; the first `m_dim` basis vectors are those of `m`.
    pub table: LieTable<Rational>,
    pub m_dim: usize,
    /// `dim g_p` for every nonzero degree.
    pub degrees: BTreeMap<i64, usize>,
    /// First `p ≥ 0` with `g_p = 0`; `max_degree + 1` when truncated.
    pub termination_degree: i64,
    /// `g_{max_degree} ≠ 0`: brackets landing beyond it are missing.
    pub truncated: bool,
    minus1: Vec<usize>,
    restrictions: BTreeMap<i64, Restrictions>,
}

/// Restrictions `x ↦ [a, x]` to `m_{−1}` of a basis of `g_p`, for solving.
#[derive(Clone, Debug)]
struct Restrictions {
    target: Vec<usize>,
    elements: Vec<usize>,
    basis: IncrementalBasis<Rational>,
}

impl Restrictions {
    fn flatten(target: &[usize], images: &[SparseVec<Rational>]) -> Option<Vec<Rational>> {
        let pos: HashMap<usize, usize> = target.iter().enumerate().map(|(p, &k)| (k, p)).collect();
        let mut v = vec![Rational::zero(); images.len() * target.len()];
        for (x, img) in images.iter().enumerate() {
            for (k, c) in img {
                v[x * target.len() + *pos.get(k)?] = c.clone();
            }
        }
        Some(v)
    }
}

impl Prolongation {
    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn degree_indices(&self, p: i64) -> Vec<usize> {
        self.table.degree_indices(p)
    }

    /// Basis vectors of `m_{−1}`.
    pub fn minus_one(&self) -> &[usize] {
        &self.minus1
    }

    /// The element `X ∈ g_p` (`p ≥ 0`) with `[X, x] = images[i]` for the
    /// `i`-th vector `x` of `m_{−1}`, if there is one.
    pub fn solve_in_degree(&self, p: i64, images: &[SparseVec<Rational>]) -> Option<SparseVec<Rational>> {
        if images.iter().all(|v| v.is_empty()) {
            return Some(Vec::new());
        }
        let r = self.restrictions.get(&p)?;
        let coeffs = r.basis.express(&Restrictions::flatten(&r.target, images)?)?;
        Some(r.elements.iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).map(|(&k, c)| (k, c)).collect())
    }

    /// `[X, x]` for every `x ∈ m_{−1}`.
    pub fn restriction(&self, x: &[(usize, Rational)]) -> Vec<SparseVec<Rational>> {
        self.minus1.iter().map(|&e| self.table.bracket_sparse(x, &[(e, Rational::one())])).collect()
    }
}

struct Builder<'a> {
    m: &'a GradedNilpotent,
    n: usize,
    deg: Vec<i64>,
    by_degree: BTreeMap<i64, Vec<usize>>,
    /// `act[a − n][x] = [a, x]` for `a` of degree ≥ 0 and `x ∈ m`.
    act: Vec<Vec<SparseVec<Rational>>>,
    /// Brackets of two elements of degree ≥ 0, keyed with `a < b`.
    nn: HashMap<(usize, usize), SparseVec<Rational>>,
    minus1: Vec<usize>,
    restrictions: BTreeMap<i64, Restrictions>,
}

fn scaled(v: &[(usize, Rational)], c: &Rational) -> SparseVec<Rational> {
    v.iter().map(|(k, x)| (*k, x * c)).collect()
}

impl<'a> Builder<'a> {
    fn new(m: &'a GradedNilpotent) -> Self {
        let n = m.dim();
        let deg: Vec<i64> = (0..n).map(|k| m.degree(k)).collect();
        let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (k, &d) in deg.iter().enumerate() {
            by_degree.entry(d).or_default().push(k);
        }
        Builder {
            m,
            n,
            deg,
            by_degree,
            act: Vec::new(),
            nn: HashMap::new(),
            minus1: m.minus_one(),
            restrictions: BTreeMap::new(),
        }
    }

    fn of_degree(&self, p: i64) -> &[usize] {
        self.by_degree.get(&p).map_or(&[], |v| v.as_slice())
    }

    fn bracket_basis(&self, i: usize, j: usize) -> SparseVec<Rational> {
        let n = self.n;
        match (i < n, j < n) {
            _ if i == j => Vec::new(),
            (true, true) => self.m.table.bracket_basis(i, j),
            (false, true) => self.act[i - n][j].clone(),
            (true, false) => scaled(&self.act[j - n][i], &-Rational::one()),
            (false, false) => {
                let (a, b, s) = if i < j { (i, j, Rational::one()) } else { (j, i, -Rational::one()) };
                self.nn.get(&(a, b)).map_or_else(Vec::new, |v| scaled(v, &s))
            }
        }
    }

    fn bracket(&self, x: &[(usize, Rational)], y: &[(usize, Rational)]) -> SparseVec<Rational> {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a * b;
                for (k, c) in self.bracket_basis(*i, *j) {
                    *acc.entry(k).or_insert_with(Rational::zero) += &ab * c;
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Derivations of degree `p` of `m` into the current `g`, as values on
    /// every basis vector of `m`.
    fn derivations(&self, p: i64, use_j: bool) -> Vec<Vec<SparseVec<Rational>>> {
        let n = self.n;
        let mut offset = Vec::with_capacity(n);
        let mut nvars = 0;
        for x in 0..n {
            offset.push(nvars);
            nvars += self.of_degree(p + self.deg[x]).len();
        }
        let var = |x: usize, w: usize| offset[x] + w;
        let mut echelon = SparseEchelon::new(nvars);
        let mut push = |rows: BTreeMap<usize, SparseRow>| {
            for (_, row) in rows {
                echelon.insert(row);
            }
        };
        let add = |rows: &mut BTreeMap<usize, SparseRow>, coord: usize, v: usize, c: Rational| {
            let e = rows.entry(coord).or_default().entry(v).or_insert_with(Rational::zero);
            *e += c;
        };
        // u([x, y]) = [u(x), y] + [x, u(y)]
        for x in 0..n {
            for y in x + 1..n {
                let mut rows: BTreeMap<usize, SparseRow> = BTreeMap::new();
                for (z, c) in self.m.table.bracket_basis(x, y) {
                    for (wi, &w) in self.of_degree(p + self.deg[z]).iter().enumerate() {
                        add(&mut rows, w, var(z, wi), c.clone());
                    }
                }
                for (wi, &w) in self.of_degree(p + self.deg[x]).iter().enumerate() {
                    for (k, c) in self.bracket_basis(w, y) {
                        add(&mut rows, k, var(x, wi), -c);
                    }
                }
                for (wi, &w) in self.of_degree(p + self.deg[y]).iter().enumerate() {
                    for (k, c) in self.bracket_basis(x, w) {
                        add(&mut rows, k, var(y, wi), -c);
                    }
                }
                push(rows);
            }
        }
        // u(Jx) = J u(x) on m_{−1}
        if p == 0 && use_j {
            let j = &self.m.j;
            let d = self.minus1.len();
            for a in 0..d {
                let mut rows: BTreeMap<usize, SparseRow> = BTreeMap::new();
                for b in 0..d {
                    let jba = j.get(b, a);
                    if jba.is_zero() {
                        continue;
                    }
                    for c in 0..d {
                        add(&mut rows, self.minus1[c], var(self.minus1[b], c), jba.clone());
                    }
                }
                for dd in 0..d {
                    for c in 0..d {
                        let jcd = j.get(c, dd);
                        if !jcd.is_zero() {
                            add(&mut rows, self.minus1[c], var(self.minus1[a], dd), -jcd.clone());
                        }
                    }
                }
                push(rows);
            }
        }
        echelon
            .kernel()
            .into_iter()
            .map(|sol| {
                (0..n)
                    .map(|x| {
                        self.of_degree(p + self.deg[x])
                            .iter()
                            .enumerate()
                            .filter(|(wi, _)| !sol[var(x, *wi)].is_zero())
                            .map(|(wi, &w)| (w, sol[var(x, wi)].clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// Adds the degree `p` elements; fails if they are not transitive.
    fn add_degree(&mut self, p: i64, elements: Vec<Vec<SparseVec<Rational>>>) -> Result<(), ProlongError> {
        let target = self.of_degree(p - 1).to_vec();
        let mut basis = IncrementalBasis::new(self.minus1.len() * target.len());
        let start = self.n + self.act.len();
        for (i, images) in elements.into_iter().enumerate() {
            let restricted: Vec<SparseVec<Rational>> = self.minus1.iter().map(|&x| images[x].clone()).collect();
            let flat = Restrictions::flatten(&target, &restricted).expect("values lie in degree p - 1");
            if basis.try_insert(&flat).is_none() {
                return Err(ProlongError::Inconsistent(format!("degree {p} element {i} vanishes on m_-1")));
            }
            self.act.push(images);
            self.deg.push(p);
            self.by_degree.entry(p).or_default().push(start + i);
        }
        let elements = self.of_degree(p).to_vec();
        self.restrictions.insert(p, Restrictions { target, elements, basis });
        Ok(())
    }

    /// `[a, b]` as the derivation `x ↦ [a, [b, x]] − [b, [a, x]]` on `m_{−1}`.
    fn commutator_restriction(&self, a: usize, b: usize) -> Vec<SparseVec<Rational>> {
        self.minus1
            .iter()
            .map(|&x| {
                let one = [(x, Rational::one())];
                let bx = self.bracket(&[(b, Rational::one())], &one);
                let ax = self.bracket(&[(a, Rational::one())], &one);
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, c) in self.bracket(&[(a, Rational::one())], &bx) {
                    *acc.entry(k).or_insert_with(Rational::zero) += c;
                }
                for (k, c) in self.bracket(&[(b, Rational::one())], &ax) {
                    *acc.entry(k).or_insert_with(Rational::zero) -= c;
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            })
            .collect()
    }

    /// Fills in the brackets of nonnegative elements whose degrees sum to `p`.
    fn close_brackets(&mut self, p: i64) -> Result<(), ProlongError> {
        for q in 0..=p / 2 {
            let r = p - q;
            let left = self.of_degree(q).to_vec();
            let right = self.of_degree(r).to_vec();
            for &a in &left {
                for &b in &right {
                    if q == r && b <= a {
                        continue;
                    }
                    let images = self.commutator_restriction(a, b);
                    let value = if images.iter().all(|v| v.is_empty()) {
                        Vec::new()
                    } else {
                        let rs = self.restrictions.get(&p).ok_or_else(|| {
                            ProlongError::Inconsistent(format!("bracket of degrees {q}, {r} is nonzero but g_{p} = 0"))
                        })?;
                        let flat = Restrictions::flatten(&rs.target, &images)
                            .ok_or_else(|| ProlongError::Inconsistent(format!("bracket of degrees {q}, {r} has wrong degree")))?;
                        let c = rs.basis.express(&flat).ok_or_else(|| {
                            ProlongError::Inconsistent(format!("bracket of degrees {q}, {r} is not a derivation in g_{p}"))
                        })?;
                        rs.elements.iter().zip(c).filter(|(_, c)| !c.is_zero()).map(|(&k, c)| (k, c)).collect()
                    };
                    if !value.is_empty() {
                        self.nn.insert((a.min(b), a.max(b)), if a < b { value } else { scaled(&value, &-Rational::one()) });
                    }
                }
            }
        }
        Ok(())
    }

    fn finish(self, termination_degree: i64, truncated: bool) -> Prolongation {
        let dim = self.deg.len();
        let mut labels = self.m.table.labels().to_vec();
        let mut count: BTreeMap<i64, usize> = BTreeMap::new();
        for k in self.n..dim {
            let c = count.entry(self.deg[k]).or_default();
            labels.push(format!("g{}[{}]", self.deg[k], c));
            *c += 1;
        }
        let mut table = LieTable::new(labels);
        for i in 0..dim {
            for j in i + 1..dim {
                let v = self.bracket_basis(i, j);
                if !v.is_empty() {
                    table.set_bracket(i, j, &tanaka_core::lie::table::dense_from_sparse(&v, dim));
                }
            }
        }
        let table = table.with_grading(self.deg.clone()).expect("brackets respect degrees");
        let degrees = self.by_degree.iter().map(|(&p, v)| (p, v.len())).collect();
        Prolongation {
            table,
            m_dim: self.n,
            degrees,
            termination_degree,
            truncated,
            minus1: self.minus1,
            restrictions: self.restrictions,
        }
    }
}

/// Default degree bound: kind of `m` plus four.
pub fn default_max_degree(m: &GradedNilpotent) -> i64 {
    m.kind() + 4
}

/// Maximal transitive prolongation of `m`; `g_0` consists of the degree-0
/// derivations commuting with `J` on `m_{−1}` when `use_j` is set, and of
/// all degree-0 derivations otherwise.
pub fn tanaka_prolongation(m: &GradedNilpotent, max_degree: i64, use_j: bool) -> Result<Prolongation, ProlongError> {
    let mut b = Builder::new(m);
    for p in 0..=max_degree {
        let elements = b.derivations(p, use_j);
        if elements.is_empty() {
            // brackets summing to p must vanish
            b.close_brackets(p)?;
            return Ok(b.finish(p, false));
        }
        b.add_degree(p, elements)?;
        b.close_brackets(p)?;
    }
    Ok(b.finish(max_degree + 1, true))
}

/// Prolongation with `J` and the default degree bound.
pub fn prolong(m: &GradedNilpotent) -> Result<Prolongation, ProlongError> {
    tanaka_prolongation(m, default_max_degree(m), true)
}
