//! Real graded abelian extensions `s ⊕ l` with a CR structure, and their
//! negative parts.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use tanaka_core::lie::table::SparseVec;
use tanaka_core::linalg::Matrix;
use tanaka_core::{LieTable, Rational};
use tanaka_graded::oracle::{cr_axioms, structural_checks};

use crate::ProlongError;

/// One summand of `l`, as indices into the extension table.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub label: String,
    pub indices: Vec<usize>,
    /// Whether the stored complex unit preserves the summand and commutes
    /// with `s` on it.
    pub complex: bool,
}

/// A real graded `s ⊕ l` with `J` on degree −1.
#[derive(Clone, Debug)]
pub struct Extension {
    pub label: String,
    /// Graded real table; `s` first, then the summands of `l`.
    pub table: LieTable<Rational>,
    pub s_dim: usize,
    pub components: Vec<Component>,
    /// `J` on `table.degree_indices(-1)`, in that order.
    pub j: Matrix<Rational>,
    /// The degree-0 element of `s` inducing `J` on `s_{−1}`.
    pub j_s: SparseVec<Rational>,
}

impl Extension {
    pub fn l_indices(&self) -> Vec<usize> {
        self.components.iter().flat_map(|c| c.indices.iter().copied()).collect()
    }

    pub fn degree(&self, k: usize) -> i64 {
        self.table.grading().expect("extension is graded")[k]
    }

    /// `J` as the map on degree −1 indices of the table.
    pub fn j_map(&self) -> BTreeMap<usize, SparseVec<Rational>> {
        let idx = self.table.degree_indices(-1);
        idx.iter()
            .enumerate()
            .map(|(c, &k)| {
                let col = (0..idx.len())
                    .filter(|&r| !self.j.get(r, c).is_zero())
                    .map(|r| (idx[r], self.j.get(r, c).clone()))
                    .collect();
                (k, col)
            })
            .collect()
    }

    /// Restriction of `ad(x)` to degree −1 as a matrix on degree −1 indices.
    pub fn ad_on_minus_one(&self, x: &[(usize, Rational)]) -> Matrix<Rational> {
        let idx = self.table.degree_indices(-1);
        let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(p, &k)| (k, p)).collect();
        let mut m = Matrix::zeros(idx.len(), idx.len());
        for (c, &k) in idx.iter().enumerate() {
            for (r, v) in self.table.bracket_sparse(x, &[(k, Rational::one())]) {
                m.set(pos[&r], c, v);
            }
        }
        m
    }
}

/// The fundamental graded CR algebra `m = (s ⊕ l)_−`.
#[derive(Clone, Debug)]
pub struct GradedNilpotent {
    /// Graded table with all degrees negative, sorted by degree (most negative first).
    pub table: LieTable<Rational>,
    /// `J` on `table.degree_indices(-1)`.
    pub j: Matrix<Rational>,
    /// Index in the extension of each basis vector.
    pub source: Vec<usize>,
    /// Basis vectors of `m` lying in `s`.
    pub s_part: Vec<usize>,
    /// Basis vectors of `m` in each summand of `l`.
    pub l_components: Vec<Vec<usize>>,
}

impl GradedNilpotent {
    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn minus_one(&self) -> Vec<usize> {
        self.table.degree_indices(-1)
    }

    pub fn kind(&self) -> i64 {
        self.table.degree_range().map_or(0, |(lo, _)| -lo)
    }

    pub fn degree(&self, k: usize) -> i64 {
        self.table.grading().expect("graded")[k]
    }
}

/// Negative-degree truncation of an extension, with its CR axioms verified.
pub fn assemble_m(ext: &Extension) -> Result<GradedNilpotent, ProlongError> {
    let grading = ext.table.grading().ok_or_else(|| ProlongError::Input("extension table is not graded".into()))?;
    let mut source: Vec<usize> = (0..ext.table.dim()).filter(|&k| grading[k] < 0).collect();
    source.sort_by_key(|&k| (grading[k], k));
    let pos: BTreeMap<usize, usize> = source.iter().enumerate().map(|(p, &k)| (k, p)).collect();
    let labels = source.iter().map(|&k| ext.table.labels()[k].clone()).collect();
    let mut table = LieTable::new(labels);
    for (a, &x) in source.iter().enumerate() {
        for (b, &y) in source.iter().enumerate().skip(a + 1) {
            let br = ext.table.bracket_basis(x, y);
            if br.is_empty() {
                continue;
            }
            let mut dense = vec![Rational::zero(); source.len()];
            for (k, c) in br {
                let p = pos.get(&k).ok_or_else(|| ProlongError::Input("negative part is not a subalgebra".into()))?;
                dense[*p] = c;
            }
            table.set_bracket(a, b, &dense);
        }
    }
    let table = table.with_grading(source.iter().map(|&k| grading[k]).collect())?;

    // J in the new index order: degree −1 indices keep their relative order.
    let old = ext.table.degree_indices(-1);
    let new: Vec<usize> = table.degree_indices(-1).iter().map(|&p| source[p]).collect();
    let perm: Vec<usize> = new.iter().map(|k| old.iter().position(|o| o == k).expect("degree -1")).collect();
    let j = Matrix::from_fn(new.len(), new.len(), |r, c| ext.j.get(perm[r], perm[c]).clone());

    let s_part = (0..source.len()).filter(|&p| source[p] < ext.s_dim).collect();
    let l_components = ext
        .components
        .iter()
        .map(|c| c.indices.iter().filter_map(|k| pos.get(k).copied()).collect())
        .collect();

    for c in structural_checks(&table).into_iter().chain(cr_axioms(&table, &j)) {
        if c.name == "transitive" {
            continue;
        }
        if !c.passed {
            let (a, b) = c.witness.unwrap_or_default();
            return Err(ProlongError::InvalidNilpotent { check: c.name, witness: (a, b) });
        }
    }
    Ok(GradedNilpotent { table, j, source, s_part, l_components })
}

/// A graded nilpotent algebra given directly as a table with `J` on degree −1;
/// every degree must be negative.
pub fn nilpotent_from_table(table: &LieTable<Rational>) -> Result<GradedNilpotent, ProlongError> {
    let grading = table.grading().ok_or_else(|| ProlongError::Input("table has no grading".into()))?;
    if let Some(k) = (0..table.dim()).find(|&k| grading[k] >= 0) {
        return Err(ProlongError::Input(format!("{} has degree {} ≥ 0", table.labels()[k], grading[k])));
    }
    let j = table.complex_structure().cloned().ok_or_else(|| ProlongError::Input("table has no J".into()))?;
    let mut source: Vec<usize> = (0..table.dim()).collect();
    source.sort_by_key(|&k| (grading[k], k));
    let ext = Extension {
        label: String::new(),
        table: table.clone(),
        s_dim: table.dim(),
        components: Vec::new(),
        j,
        j_s: Vec::new(),
    };
    let m = assemble_m(&ext)?;
    Ok(GradedNilpotent { s_part: Vec::new(), ..m })
}
