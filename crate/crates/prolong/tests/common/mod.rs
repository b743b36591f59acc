//! Independent dimension count for transitive prolongations: unknowns are the
//! values on `m_{−1}` only, extended to `m` through a generating expression of
//! every basis vector, then checked against the derivation identity on all
//! pairs. Elements of `g_{≥0}` are kept only through their action on `m`.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use tanaka_core::linalg::{IncrementalBasis, Matrix};
use tanaka_core::Rational;
use tanaka_prolong::GradedNilpotent;

/// A vector in the space of some degree whose entries are linear forms in the
/// unknowns: `rows[i][v]` is the coefficient of unknown `v` in coordinate `i`.
type Linear = Vec<Vec<Rational>>;

struct Oracle<'a> {
    m: &'a GradedNilpotent,
    /// Position of each basis vector of `m` within its degree.
    local: Vec<usize>,
    m_by_degree: BTreeMap<i64, Vec<usize>>,
    /// `elements[p][k][x]`: the `k`-th basis element of `g_p` applied to `x`.
    elements: BTreeMap<i64, Vec<Vec<Vec<Rational>>>>,
    /// Expression of each basis vector of degree ≤ −2 as `Σ c [e, w]`.
    generation: BTreeMap<usize, Vec<(usize, usize, Rational)>>,
}

impl<'a> Oracle<'a> {
    fn new(m: &'a GradedNilpotent) -> Self {
        let n = m.dim();
        let mut m_by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        let mut local = vec![0; n];
        for x in 0..n {
            let list = m_by_degree.entry(m.degree(x)).or_default();
            local[x] = list.len();
            list.push(x);
        }
        let mut generation = BTreeMap::new();
        let minus1 = m_by_degree.get(&-1).cloned().unwrap_or_default();
        for (&d, list) in &m_by_degree {
            if d >= -1 {
                continue;
            }
            let mut basis = IncrementalBasis::new(list.len());
            let mut pairs = Vec::new();
            for &e in &minus1 {
                for &w in &m_by_degree[&(d + 1)] {
                    let v = m_vector(m, &local, list.len(), e, w);
                    if basis.try_insert(&v).is_some() {
                        pairs.push((e, w));
                    }
                }
            }
            for &z in list {
                let mut target = vec![Rational::zero(); list.len()];
                target[local[z]] = Rational::one();
                let c = basis.express(&target).expect("m is fundamental");
                generation.insert(z, pairs.iter().zip(c).filter(|(_, c)| !c.is_zero()).map(|(&(e, w), c)| (e, w, c)).collect());
            }
        }
        Oracle { m, local, m_by_degree, elements: BTreeMap::new(), generation }
    }

    fn space_dim(&self, d: i64) -> usize {
        if d < 0 {
            self.m_by_degree.get(&d).map_or(0, Vec::len)
        } else {
            self.elements.get(&d).map_or(0, Vec::len)
        }
    }

    /// `[v, y]` for `v` in the space of degree `d` (local coordinates) and `y ∈ m`.
    fn act(&self, d: i64, v: &[Rational], y: usize) -> Vec<Rational> {
        let target = d + self.m.degree(y);
        let mut out = vec![Rational::zero(); self.space_dim(target)];
        if out.is_empty() {
            return out;
        }
        if d < 0 {
            for (i, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let x = self.m_by_degree[&d][i];
                for (z, b) in self.m.table.bracket_basis(x, y) {
                    out[self.local[z]] += c * &b;
                }
            }
        } else {
            for (k, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (o, x) in out.iter_mut().zip(&self.elements[&d][k][y]) {
                    *o += c * x;
                }
            }
        }
        out
    }

    fn act_linear(&self, d: i64, l: &Linear, y: usize, nvars: usize) -> Linear {
        let dim = self.space_dim(d + self.m.degree(y));
        let mut out = vec![vec![Rational::zero(); nvars]; dim];
        for v in 0..nvars {
            let col: Vec<Rational> = l.iter().map(|r| r[v].clone()).collect();
            if col.iter().all(Zero::is_zero) {
                continue;
            }
            for (i, x) in self.act(d, &col, y).into_iter().enumerate() {
                out[i][v] = x;
            }
        }
        out
    }

    /// Basis of `g_p` as actions on `m`.
    fn degree(&self, p: i64, use_j: bool) -> Vec<Vec<Vec<Rational>>> {
        let m = self.m;
        let minus1 = self.m_by_degree.get(&-1).cloned().unwrap_or_default();
        let width = self.space_dim(p - 1);
        let nvars = minus1.len() * width;
        if nvars == 0 {
            return Vec::new();
        }
        let mut value: BTreeMap<usize, Linear> = BTreeMap::new();
        for (i, &e) in minus1.iter().enumerate() {
            let mut l = vec![vec![Rational::zero(); nvars]; width];
            for (j, row) in l.iter_mut().enumerate() {
                row[i * width + j] = Rational::one();
            }
            value.insert(e, l);
        }
        for (&d, list) in self.m_by_degree.iter().rev() {
            if d >= -1 {
                continue;
            }
            for &z in list {
                let mut acc = vec![vec![Rational::zero(); nvars]; self.space_dim(p + d)];
                for (e, w, c) in &self.generation[&z] {
                    // u([e, w]) = [u e, w] − [u w, e]
                    let a = self.act_linear(p - 1, &value[e], *w, nvars);
                    let b = self.act_linear(p + m.degree(*w), &value[w], *e, nvars);
                    for ((row, ra), rb) in acc.iter_mut().zip(a).zip(b) {
                        for ((x, y), z) in row.iter_mut().zip(ra).zip(rb) {
                            *x += c * (y - z);
                        }
                    }
                }
                value.insert(z, acc);
            }
        }
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        let n = m.dim();
        for x in 0..n {
            for y in x + 1..n {
                let dxy = m.degree(x) + m.degree(y);
                let mut lhs = vec![vec![Rational::zero(); nvars]; self.space_dim(p + dxy)];
                for (z, c) in m.table.bracket_basis(x, y) {
                    for (row, vr) in lhs.iter_mut().zip(&value[&z]) {
                        for (a, b) in row.iter_mut().zip(vr) {
                            *a += &c * b;
                        }
                    }
                }
                let a = self.act_linear(p + m.degree(x), &value[&x], y, nvars);
                let b = self.act_linear(p + m.degree(y), &value[&y], x, nvars);
                for ((l, ra), rb) in lhs.into_iter().zip(a).zip(b) {
                    let row: Vec<Rational> = l.into_iter().zip(ra).zip(rb).map(|((l, a), b)| l - a + b).collect();
                    if row.iter().any(|v| !v.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        if p == 0 && use_j {
            // u(Je) = J u(e) on m_{−1}
            let k = minus1.len();
            for (c, &e) in minus1.iter().enumerate() {
                let je: Linear = (0..width)
                    .map(|i| {
                        let mut r = vec![Rational::zero(); nvars];
                        for (ci, &f) in minus1.iter().enumerate() {
                            let jc = m.j.get(ci, c);
                            if !jc.is_zero() {
                                for (a, b) in r.iter_mut().zip(&value[&f][i]) {
                                    *a += jc * b;
                                }
                            }
                        }
                        r
                    })
                    .collect();
                for i in 0..k {
                    let mut row = je[i].clone();
                    for r in 0..k {
                        let jr = m.j.get(i, r);
                        if !jr.is_zero() {
                            for (a, b) in row.iter_mut().zip(&value[&e][r]) {
                                *a -= jr * b;
                            }
                        }
                    }
                    if row.iter().any(|v| !v.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let kernel = if rows.is_empty() {
            (0..nvars).map(|v| tanaka_core::linalg::unit(nvars, v)).collect()
        } else {
            Matrix::from_rows(rows).kernel()
        };
        kernel
            .iter()
            .map(|sol| {
                (0..n)
                    .map(|x| value[&x].iter().map(|r| r.iter().zip(sol).fold(Rational::zero(), |acc, (a, b)| acc + a * b)).collect())
                    .collect()
            })
            .collect()
    }
}

fn m_vector(m: &GradedNilpotent, local: &[usize], dim: usize, e: usize, w: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    for (z, c) in m.table.bracket_basis(e, w) {
        v[local[z]] = c;
    }
    v
}

/// `dim g_p` for `p ≥ 0` up to the first zero or `max_degree`.
pub fn prolongation_dims(m: &GradedNilpotent, max_degree: i64, use_j: bool) -> BTreeMap<i64, usize> {
    let mut o = Oracle::new(m);
    let mut dims = BTreeMap::new();
    for p in 0..=max_degree {
        let els = o.degree(p, use_j);
        if els.is_empty() {
            break;
        }
        dims.insert(p, els.len());
        o.elements.insert(p, els);
    }
    dims
}
