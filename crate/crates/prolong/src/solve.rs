//! Sparse row reduction for the homogeneous systems of the prolongation.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use tanaka_core::Rational;

pub type SparseRow = BTreeMap<usize, Rational>;

/// Row echelon form kept as pivot rows whose pivot is their smallest column.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    nvars: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn new(nvars: usize) -> Self {
        SparseEchelon { nvars, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; returns whether it was independent of the earlier ones.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        row.retain(|_, x| !x.is_zero());
        while let Some(c) = row.keys().copied().find(|c| self.rows.contains_key(c)) {
            let f = row[&c].clone();
            for (k, x) in &self.rows[&c] {
                let e = row.entry(*k).or_insert_with(Rational::zero);
                *e -= &f * x;
                if e.is_zero() {
                    row.remove(k);
                }
            }
        }
        let Some((&p, lead)) = row.iter().next() else { return false };
        let inv = Rational::one() / lead;
        for x in row.values_mut() {
            *x *= &inv;
        }
        self.rows.insert(p, row);
        true
    }

    /// Basis of the solution space, one dense vector per free variable.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        (0..self.nvars)
            .filter(|f| !self.rows.contains_key(f))
            .map(|f| {
                let mut x = vec![Rational::zero(); self.nvars];
                x[f] = Rational::one();
                for &p in &pivots {
                    let s = self.rows[&p].iter().skip(1).fold(Rational::zero(), |acc, (c, v)| acc + v * &x[*c]);
                    x[p] = -s;
                }
                x
            })
            .collect()
    }
}
