//! Job configuration: one JSON document with `"schema": 1`.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Deserialize;
use tanaka_core::lie::weights::{decompose_character, weight_system};
use tanaka_core::scalar::{int, parse_rational};
use tanaka_core::{build_root_system, cartan_matrix_of_type, LieTableJson, Matrix, Rational, Weight};
use tanaka_graded::algebra::{attach_cr, grade_algebra, CharacteristicFunctional, CrFunctional};
use tanaka_graded::{GradedCrAlgebra, SelfConjugateType, WeightInvolution};

use crate::{ForgeError, Result};

pub const SCHEMA: u32 = 1;
pub const DEFAULT_MODULE_DIM: usize = 200;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub schema: u32,
    #[serde(default)]
    pub command: Option<String>,
    #[serde(default)]
    pub label: Option<String>,
    #[serde(default)]
    pub algebra: Option<AlgebraConfig>,
    #[serde(default)]
    pub modules: Vec<ModuleConfig>,
    /// A graded nilpotent algebra with `J`, prolonged directly.
    #[serde(default)]
    pub nilpotent: Option<LieTableJson>,
    #[serde(default)]
    pub bounds: Bounds,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraConfig {
    #[serde(rename = "type", default)]
    pub kind: Option<String>,
    #[serde(default)]
    pub cartan: Option<Vec<Vec<i64>>>,
    /// Values of `E` on the simple roots.
    #[serde(rename = "E")]
    pub e: Vec<String>,
    /// Values of `J/i` on the simple roots.
    #[serde(rename = "J")]
    pub j: Vec<String>,
    #[serde(default)]
    pub real_form: Option<RealFormConfig>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealFormConfig {
    /// `"su(1,2)"`, or `"su"` with an explicit Hermitian form.
    pub preset: String,
    #[serde(default)]
    pub hermitian: Option<Vec<Vec<String>>>,
    /// Action of the conjugation on fundamental weight coordinates.
    #[serde(default)]
    pub weight_involution: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub self_conjugate: Vec<SelfConjugateDeclaration>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelfConjugateDeclaration {
    pub weight: Vec<i64>,
    #[serde(rename = "type")]
    pub kind: SelfConjugateKind,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum SelfConjugateKind {
    Real,
    Quaternionic,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ModulePreset {
    Standard,
    Dual,
    Adjoint,
    AdjointShifted,
    AntiHermitian,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleConfig {
    #[serde(default)]
    pub label: Option<String>,
    #[serde(default)]
    pub highest_weight: Option<Vec<i64>>,
    #[serde(default)]
    pub preset: Option<ModulePreset>,
    #[serde(default)]
    pub shift: Option<String>,
    #[serde(default)]
    pub structure: Option<usize>,
    #[serde(default)]
    pub copies: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    #[serde(default)]
    pub max_weight_sum: Option<u64>,
    #[serde(default)]
    pub max_module_dim: Option<usize>,
    #[serde(default)]
    pub max_degree: Option<i64>,
}

/// File names inside the output directory.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub dir: Option<String>,
    #[serde(default)]
    pub report: Option<String>,
    #[serde(default)]
    pub svg: Option<String>,
    #[serde(default)]
    pub ascii: Option<String>,
}

/// A module after preset expansion.
#[derive(Clone, Debug, PartialEq)]
pub enum ModuleSpec {
    Irreducible {
        label: String,
        weight: Weight,
        shift: Option<Rational>,
        structure: Option<usize>,
        /// Set for the adjoint presets: the degree offset of `l` against `s`.
        adjoint_shift: Option<i64>,
    },
    AntiHermitian { copies: usize },
}

/// A real form given by its conjugation and its action on weights.
#[derive(Clone, Debug)]
pub struct RealForm {
    pub hermitian: Matrix<Rational>,
    pub involution: WeightInvolution,
    pub declarations: BTreeMap<Weight, SelfConjugateType>,
}

pub fn parse_config(text: &str) -> Result<JobConfig> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let cfg: JobConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let inner = e.inner();
        let path = e.path().to_string();
        ForgeError::Input(format!("config error at `{path}` (line {}, column {}): {inner}", inner.line(), inner.column()))
    })?;
    if cfg.schema != SCHEMA {
        return Err(ForgeError::Input(format!("config error at `schema`: unsupported schema {}, expected {SCHEMA}", cfg.schema)));
    }
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<JobConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| ForgeError::Io { path: path.to_path_buf(), source })?;
    parse_config(&text)
}

fn rationals(field: &str, values: &[String]) -> Result<Vec<Rational>> {
    values
        .iter()
        .enumerate()
        .map(|(i, s)| parse_rational(s).map_err(|e| ForgeError::Input(format!("config error at `{field}[{i}]`: {e}"))))
        .collect()
}

fn field_rational(field: &str, s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| ForgeError::Input(format!("config error at `{field}`: {e}")))
}

impl JobConfig {
    pub fn algebra_config(&self) -> Result<&AlgebraConfig> {
        self.algebra.as_ref().ok_or_else(|| ForgeError::Input("config error at `algebra`: missing".into()))
    }

    /// The graded CR algebra, with `E` and `J` checked.
    pub fn algebra(&self) -> Result<GradedCrAlgebra> {
        let a = self.algebra_config()?;
        let (label, cartan) = match (&a.kind, &a.cartan) {
            (Some(t), None) => (t.clone(), cartan_matrix_of_type(t)?),
            (None, Some(c)) => ("cartan".to_string(), c.clone()),
            _ => return Err(ForgeError::Input("config error at `algebra`: give exactly one of `type` and `cartan`".into())),
        };
        let rs = build_root_system(&cartan)?;
        let e = rationals("algebra.E", &a.e)?;
        let j = rationals("algebra.J", &a.j)?;
        let g = grade_algebra(&rs, &label, CharacteristicFunctional(e))?;
        Ok(attach_cr(g, CrFunctional(j))?)
    }

    pub fn max_module_dim(&self) -> usize {
        self.bounds.max_module_dim.unwrap_or(DEFAULT_MODULE_DIM)
    }

    pub fn real_form(&self, g: &GradedCrAlgebra) -> Result<Option<RealForm>> {
        let Some(rf) = self.algebra_config()?.real_form.as_ref() else {
            return Ok(None);
        };
        let rank = g.rank();
        let antidiagonal = |n: usize| Matrix::from_fn(n, n, |a, b| if a + b == n - 1 { Rational::one() } else { Rational::zero() });
        let (hermitian, default_involution, mut declarations) = match rf.preset.as_str() {
            "su(1,2)" => {
                if rank != 2 || g.root_system.cartan_matrix() != [vec![2, -1], vec![-1, 2]] {
                    return Err(ForgeError::Input("config error at `algebra.real_form.preset`: su(1,2) needs type A2".into()));
                }
                let decl = BTreeMap::from([(Weight(vec![1, 1]), SelfConjugateType::Real)]);
                (antidiagonal(3), Some(WeightInvolution::from_permutation(&[1, 0])?), decl)
            }
            "su" => {
                let rows = rf
                    .hermitian
                    .as_ref()
                    .ok_or_else(|| ForgeError::Input("config error at `algebra.real_form.hermitian`: required for preset su".into()))?;
                let parsed = rows
                    .iter()
                    .enumerate()
                    .map(|(i, r)| rationals(&format!("algebra.real_form.hermitian[{i}]"), r))
                    .collect::<Result<Vec<_>>>()?;
                if parsed.len() != rank + 1 || parsed.iter().any(|r| r.len() != rank + 1) {
                    return Err(ForgeError::Input(format!(
                        "config error at `algebra.real_form.hermitian`: expected a {0}x{0} matrix",
                        rank + 1
                    )));
                }
                (Matrix::from_rows(parsed), None, BTreeMap::new())
            }
            other => {
                return Err(ForgeError::Input(format!("config error at `algebra.real_form.preset`: unknown preset {other:?}")));
            }
        };
        let involution = match &rf.weight_involution {
            Some(rows) => WeightInvolution::new(rows.clone())?,
            None => default_involution.unwrap_or_else(|| WeightInvolution::identity(rank)),
        };
        for d in &rf.self_conjugate {
            let t = match d.kind {
                SelfConjugateKind::Real => SelfConjugateType::Real,
                SelfConjugateKind::Quaternionic => SelfConjugateType::Quaternionic,
            };
            declarations.insert(Weight(d.weight.clone()), t);
        }
        Ok(Some(RealForm { hermitian, involution, declarations }))
    }

    /// Modules with presets expanded to explicit weights.
    pub fn module_specs(&self, g: &GradedCrAlgebra) -> Result<Vec<ModuleSpec>> {
        self.modules.iter().enumerate().map(|(i, m)| expand_module(g, i, m)).collect()
    }
}

fn highest_root_weight(g: &GradedCrAlgebra) -> Result<Weight> {
    let rs = &g.root_system;
    if rs.components().len() != 1 {
        return Err(ForgeError::Input("the adjoint presets need a simple algebra".into()));
    }
    let top = rs
        .positive_roots()
        .iter()
        .max_by_key(|r| (tanaka_core::RootSystem::height(r), (*r).clone()))
        .ok_or_else(|| ForgeError::Input("algebra has no roots".into()))?;
    Ok(rs.root_to_weight(top))
}

fn dual_of_standard(g: &GradedCrAlgebra) -> Result<Weight> {
    let rs = &g.root_system;
    let mut w = vec![0; g.rank()];
    w[0] = 1;
    let dual = weight_system(rs, &Weight(w))?.dual();
    let parts = decompose_character(rs, &dual)?;
    match parts.as_slice() {
        [(w, 1)] => Ok(w.clone()),
        _ => Err(ForgeError::Failure("dual of the standard module is not irreducible".into())),
    }
}

fn expand_module(g: &GradedCrAlgebra, i: usize, m: &ModuleConfig) -> Result<ModuleSpec> {
    let at = |f: &str| format!("config error at `modules[{i}]{f}`");
    let shift = m.shift.as_ref().map(|s| field_rational(&format!("modules[{i}].shift"), s)).transpose()?;
    let rank = g.rank();
    let (weight, preset_shift) = match (&m.highest_weight, m.preset) {
        (Some(w), None) => {
            if w.len() != rank {
                return Err(ForgeError::Input(format!("{}: expected {rank} coordinates, got {}", at(".highest_weight"), w.len())));
            }
            let w = Weight(w.clone());
            g.root_system.check_weight(&w)?;
            if !w.is_dominant() {
                return Err(ForgeError::Input(format!("{}: {w} is not dominant", at(".highest_weight"))));
            }
            (w, None)
        }
        (None, Some(ModulePreset::AntiHermitian)) => {
            let sl2 = rank == 1 && g.e.0 == [int(1)] && g.j.as_ref().is_some_and(|j| j.0 == [int(1)]);
            if !sl2 {
                return Err(ForgeError::Input(format!("{}: anti-hermitian needs A1 with E = [1], J = [1]", at(".preset"))));
            }
            if shift.is_some() {
                return Err(ForgeError::Input(format!("{}: the anti-hermitian preset fixes its degrees", at(".shift"))));
            }
            return Ok(ModuleSpec::AntiHermitian { copies: m.copies.unwrap_or(1) });
        }
        (None, Some(ModulePreset::Standard)) => {
            let mut w = vec![0; rank];
            w[0] = 1;
            (Weight(w), None)
        }
        (None, Some(ModulePreset::Dual)) => (dual_of_standard(g)?, None),
        (None, Some(ModulePreset::Adjoint)) => (highest_root_weight(g)?, Some(0)),
        (None, Some(ModulePreset::AdjointShifted)) => (highest_root_weight(g)?, Some(-2)),
        _ => return Err(ForgeError::Input(format!("{}: give exactly one of `highest_weight` and `preset`", at("")))),
    };
    if m.copies.is_some() {
        return Err(ForgeError::Input(format!("{}: only the anti-hermitian preset takes copies", at(".copies"))));
    }
    if preset_shift.is_some() && shift.is_some() {
        return Err(ForgeError::Input(format!("{}: the adjoint presets fix their shift", at(".shift"))));
    }
    let label = m.label.clone().unwrap_or_else(|| format!("l{}", i + 1));
    Ok(ModuleSpec::Irreducible {
        label,
        weight,
        shift: shift.or_else(|| preset_shift.map(|t| Rational::from_integer(BigInt::from(t)))),
        structure: m.structure,
        adjoint_shift: preset_shift,
    })
}
