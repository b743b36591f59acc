//! The four pipelines and the driver that writes their outputs.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use tanaka_core::scalar::format_rational;
use tanaka_core::{LieTable, Rational, Weight};
use tanaka_graded::report::AlgebraJson;
use tanaka_graded::{admissible_structures, real_form_admissible, AdmissibilityReport, GradedCrAlgebra, RealType, Structure};
use tanaka_prolong::presets::{complex_extension, hermitian_real_form, real_adjoint_extension, sl2_antihermitian_copies, ModulePart};
use tanaka_prolong::{
    analyze, assemble_m, default_max_degree, nilpotent_from_table, tanaka_prolongation, Extension, NilpotentReport,
    ProlongationReport,
};

use crate::config::{load_config, JobConfig, ModuleSpec};
use crate::render::{diagram_spec, to_ascii, to_svg};
use crate::{ForgeError, Result, EXIT_FAILURE, EXIT_NONE, EXIT_OK, THREADS_VAR};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Classify,
    Prolong,
    Render,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Classify => "classify",
            Command::Prolong => "prolong",
            Command::Render => "render",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Command-line values that override the configuration.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub structure: Option<usize>,
    pub bound: Option<u64>,
    pub max_degree: Option<i64>,
    pub threads: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub config: PathBuf,
    pub out: Option<PathBuf>,
    pub overrides: Overrides,
}

/// Result of a run: exit code, files written and messages for stderr.
#[derive(Clone, Debug, Default)]
pub struct Execution {
    pub code: i32,
    pub written: Vec<PathBuf>,
    pub messages: Vec<String>,
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleCheck {
    pub label: String,
    pub dim: String,
    pub shift_filter: Option<String>,
    #[serde(flatten)]
    pub report: AdmissibilityReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub schema: u32,
    pub modules: Vec<ModuleCheck>,
}

impl CheckOutcome {
    /// Every module admits at least one structure.
    pub fn found(&self) -> bool {
        self.modules.iter().all(|m| !m.report.structures.is_empty())
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

fn checked_dimension(g: &GradedCrAlgebra, w: &Weight, cap: usize) -> Result<BigInt> {
    let dim = g.root_system.weyl_dimension(w)?;
    if dim > BigInt::from(cap) {
        return Err(ForgeError::Input(format!("module {w} has dimension {dim}, above the cap {cap}")));
    }
    Ok(dim)
}

/// Structures of `Γ(λ)`, restricted to a shift when one is given.
fn structures_for(g: &GradedCrAlgebra, weight: &Weight, shift: &Option<Rational>) -> Result<Vec<Structure>> {
    let all = admissible_structures(g, weight)?;
    Ok(match shift {
        Some(t) => all.into_iter().filter(|s| &s.diagram.shift == t).collect(),
        None => all,
    })
}

pub fn run_check(cfg: &JobConfig) -> Result<CheckOutcome> {
    let g = cfg.algebra()?;
    let specs = cfg.module_specs(&g)?;
    if specs.is_empty() {
        return Err(ForgeError::Input("config error at `modules`: check needs at least one module".into()));
    }
    let mut modules = Vec::new();
    for spec in specs {
        let ModuleSpec::Irreducible { label, weight, shift, .. } = spec else {
            return Err(ForgeError::Input("check takes irreducible modules only".into()));
        };
        let dim = checked_dimension(&g, &weight, cfg.max_module_dim())?;
        let structures = structures_for(&g, &weight, &shift)?;
        modules.push(ModuleCheck {
            label,
            dim: dim.to_string(),
            shift_filter: shift.as_ref().map(format_rational),
            report: AdmissibilityReport::new(&g, &weight, &structures),
        });
    }
    Ok(CheckOutcome { schema: 1, modules })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureSummary {
    pub shift: String,
    pub k: String,
    pub minus_one: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryStatus {
    Admissible,
    None,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifyEntry {
    pub weight: Vec<i64>,
    pub dim: String,
    pub status: EntryStatus,
    pub structures: Vec<StructureSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealEntry {
    pub weight: Vec<i64>,
    pub conjugate: Option<Vec<i64>>,
    pub real_type: RealType,
    pub structures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifyReport {
    pub schema: u32,
    pub algebra: AlgebraJson,
    pub bound: u64,
    pub max_module_dim: usize,
    pub entries: Vec<ClassifyEntry>,
    pub admissible: Vec<Vec<i64>>,
    pub skipped: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub real_form: Option<Vec<RealEntry>>,
}

impl ClassifyReport {
    pub fn entry(&self, w: &[i64]) -> Option<&ClassifyEntry> {
        self.entries.iter().find(|e| e.weight == w)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

fn classify_weight(g: &GradedCrAlgebra, w: &Weight, cap: usize) -> Result<ClassifyEntry> {
    let dim = g.root_system.weyl_dimension(w)?;
    if dim > BigInt::from(cap) {
        return Ok(ClassifyEntry { weight: w.0.clone(), dim: dim.to_string(), status: EntryStatus::Skipped, structures: Vec::new() });
    }
    let structures: Vec<StructureSummary> = admissible_structures(g, w)?
        .iter()
        .map(|s| StructureSummary {
            shift: format_rational(&s.diagram.shift),
            k: format_rational(&s.k),
            minus_one: s.diagram.weights_of_degree(-1).into_iter().map(|x| x.0).collect(),
        })
        .collect();
    let status = if structures.is_empty() { EntryStatus::None } else { EntryStatus::Admissible };
    Ok(ClassifyEntry { weight: w.0.clone(), dim: dim.to_string(), status, structures })
}

fn thread_pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        b = b.num_threads(n);
    }
    b.build().map_err(|e| ForgeError::Failure(format!("thread pool: {e}")))
}

/// Scan over nontrivial dominant weights with coordinate sum at most the bound.
pub fn classify(cfg: &JobConfig, ov: &Overrides) -> Result<ClassifyReport> {
    let g = cfg.algebra()?;
    let bound = ov
        .bound
        .or(cfg.bounds.max_weight_sum)
        .ok_or_else(|| ForgeError::Input("classify needs a bound (`bounds.max_weight_sum` or --bound)".into()))?;
    let cap = cfg.max_module_dim();
    let weights: Vec<Weight> = tanaka_core::lie::weights::dominant_weights_up_to(g.rank(), bound)
        .into_iter()
        .filter(|w| w.0.iter().any(|&c| c > 0))
        .collect();
    let pool = thread_pool(ov.threads)?;
    let entries = pool.install(|| weights.par_iter().map(|w| classify_weight(&g, w, cap)).collect::<Result<Vec<_>>>())?;
    let admissible: Vec<Vec<i64>> =
        entries.iter().filter(|e| e.status == EntryStatus::Admissible).map(|e| e.weight.clone()).collect();
    let skipped = entries.iter().filter(|e| e.status == EntryStatus::Skipped).map(|e| e.weight.clone()).collect();
    let real_form = match cfg.real_form(&g)? {
        None => None,
        Some(rf) => {
            let results: BTreeMap<Weight, usize> = entries
                .iter()
                .filter(|e| e.status == EntryStatus::Admissible)
                .map(|e| (Weight(e.weight.clone()), e.structures.len()))
                .collect();
            let merged = real_form_admissible(&results, &rf.involution, &rf.declarations)?;
            Some(
                merged
                    .into_iter()
                    .map(|r| RealEntry {
                        weight: r.weight.0,
                        conjugate: r.conjugate.map(|c| c.0),
                        real_type: r.real_type,
                        structures: r.result,
                    })
                    .collect(),
            )
        }
    };
    Ok(ClassifyReport {
        schema: 1,
        algebra: AlgebraJson::of(&g),
        bound,
        max_module_dim: cap,
        entries,
        admissible,
        skipped,
        real_form,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TruncatedReport {
    pub label: String,
    pub degrees: BTreeMap<i64, usize>,
    pub total_dim: usize,
    pub field: &'static str,
    pub termination_degree: i64,
    pub truncated: bool,
}

/// A finished prolongation: its report and the full bracket table.
#[derive(Clone, Debug)]
pub struct ProlongRun {
    pub json: String,
    pub truncated: bool,
    pub report: Option<ProlongationReport>,
    pub nilpotent_report: Option<NilpotentReport>,
    pub table: LieTable<Rational>,
}

fn choose_structure(label: &str, weight: &Weight, structures: Vec<Structure>, index: Option<usize>) -> Result<Structure> {
    let choices = || {
        structures
            .iter()
            .enumerate()
            .map(|(i, s)| format!("  [{i}] shift {} k {}", format_rational(&s.diagram.shift), format_rational(&s.k)))
            .collect::<Vec<_>>()
            .join("\n")
    };
    match (structures.len(), index) {
        (0, _) => Err(ForgeError::Input(format!("module {label} = Γ{weight} admits no structure with the requested shift"))),
        (_, Some(i)) if i < structures.len() => Ok(structures[i].clone()),
        (_, Some(i)) => Err(ForgeError::Input(format!("structure index {i} out of range for {label}; choices:\n{}", choices()))),
        (1, None) => Ok(structures[0].clone()),
        _ => Err(ForgeError::Input(format!(
            "module {label} = Γ{weight} has several structures; select one with `structure` or --structure:\n{}",
            choices()
        ))),
    }
}

/// The extension `s ⊕ l` described by the configuration.
pub fn build_extension(cfg: &JobConfig, ov: &Overrides) -> Result<Extension> {
    let g = cfg.algebra()?;
    let specs = cfg.module_specs(&g)?;
    let label = cfg.label.clone();
    if let [ModuleSpec::AntiHermitian { copies }] = specs.as_slice() {
        let mut ext = sl2_antihermitian_copies(*copies)?;
        if let Some(l) = label {
            ext.label = l;
        }
        return Ok(ext);
    }
    if specs.iter().any(|s| matches!(s, ModuleSpec::AntiHermitian { .. })) {
        return Err(ForgeError::Input("the anti-hermitian preset cannot be combined with other modules".into()));
    }
    if let Some(rf) = cfg.real_form(&g)? {
        let [ModuleSpec::Irreducible { adjoint_shift: Some(t), .. }] = specs.as_slice() else {
            return Err(ForgeError::Input("with a real form, prolong takes exactly one adjoint or adjoint-shifted module".into()));
        };
        let (s, j_s) = hermitian_real_form(&g, &rf.hermitian)?;
        let name = label.unwrap_or_else(|| format!("{} real form + adjoint shift {t}", g.label));
        return Ok(real_adjoint_extension(&name, &s, j_s, *t)?);
    }
    let mut parts = Vec::new();
    for spec in &specs {
        let ModuleSpec::Irreducible { label, weight, shift, structure, .. } = spec else { unreachable!() };
        checked_dimension(&g, weight, cfg.max_module_dim())?;
        let chosen = choose_structure(label, weight, structures_for(&g, weight, shift)?, structure.or(ov.structure))?;
        parts.push(ModulePart::from_structure(&g, label, weight, &chosen)?);
    }
    let name = label.unwrap_or_else(|| {
        let mods: Vec<String> = specs
            .iter()
            .map(|s| match s {
                ModuleSpec::Irreducible { weight, .. } => format!("Γ{weight}"),
                ModuleSpec::AntiHermitian { .. } => unreachable!(),
            })
            .collect();
        std::iter::once(g.label.clone()).chain(mods).collect::<Vec<_>>().join(" + ")
    });
    Ok(complex_extension(&name, &g, &parts)?)
}

pub fn prolong(cfg: &JobConfig, ov: &Overrides) -> Result<ProlongRun> {
    let max_degree = ov.max_degree.or(cfg.bounds.max_degree);
    if let Some(n) = &cfg.nilpotent {
        if cfg.algebra.is_some() || !cfg.modules.is_empty() {
            return Err(ForgeError::Input("config error at `nilpotent`: give either a nilpotent table or an algebra with modules".into()));
        }
        let table = LieTable::<Rational>::from_json(n)?;
        let m = nilpotent_from_table(&table)?;
        let g = tanaka_prolongation(&m, max_degree.unwrap_or_else(|| default_max_degree(&m)), true)?;
        let r = NilpotentReport::new(cfg.label.as_deref().unwrap_or("m"), &m, &g)?;
        return Ok(ProlongRun { json: to_json(&r), truncated: g.truncated, report: None, nilpotent_report: Some(r), table: g.table });
    }
    let ext = build_extension(cfg, ov)?;
    assemble_m(&ext)?;
    let a = analyze(&ext, max_degree)?;
    match a.report(&ext) {
        Some(r) => Ok(ProlongRun { json: to_json(&r), truncated: false, report: Some(r), nilpotent_report: None, table: a.g.table }),
        None => {
            let t = TruncatedReport {
                label: ext.label.clone(),
                degrees: a.g.degrees.clone(),
                total_dim: a.g.dim(),
                field: "real",
                termination_degree: a.g.termination_degree,
                truncated: true,
            };
            Ok(ProlongRun { json: to_json(&t), truncated: true, report: None, nilpotent_report: None, table: a.g.table })
        }
    }
}

fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(ForgeError::Input(format!("{THREADS_VAR} must be a positive integer, got {v:?}"))),
        },
    }
}

fn write(dir: &Path, name: &str, contents: &str, written: &mut Vec<PathBuf>) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| ForgeError::Io { path: dir.to_path_buf(), source })?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|source| ForgeError::Io { path: path.clone(), source })?;
    written.push(path);
    Ok(())
}

fn run(command: Command, opts: &Options) -> Result<Execution> {
    let cfg = load_config(&opts.config)?;
    if let Some(c) = &cfg.command {
        if c != command.name() {
            return Err(ForgeError::Input(format!("config error at `command`: config is for {c:?}, invoked as {command}")));
        }
    }
    let mut ov = opts.overrides.clone();
    if ov.threads.is_none() {
        ov.threads = threads_from_env()?;
    }
    let dir = opts.out.clone().or_else(|| cfg.output.dir.as_ref().map(PathBuf::from)).unwrap_or_else(|| PathBuf::from("."));
    let report_name = |default: &str| cfg.output.report.clone().unwrap_or_else(|| default.to_string());
    let mut ex = Execution::default();
    match command {
        Command::Check => {
            let out = run_check(&cfg)?;
            write(&dir, &report_name("admissibility.json"), &out.to_json(), &mut ex.written)?;
            for m in &out.modules {
                ex.messages.push(format!("{} = Γ{}: {} structure(s)", m.label, Weight(m.report.weight.clone()), m.report.structures.len()));
            }
            ex.code = if out.found() { EXIT_OK } else { EXIT_NONE };
        }
        Command::Classify => {
            let r = classify(&cfg, &ov)?;
            write(&dir, &report_name("classification.json"), &r.to_json(), &mut ex.written)?;
            ex.messages.push(format!("{} admissible, {} skipped", r.admissible.len(), r.skipped.len()));
            ex.code = EXIT_OK;
        }
        Command::Prolong => {
            let r = prolong(&cfg, &ov)?;
            write(&dir, &report_name("prolongation.json"), &r.json, &mut ex.written)?;
            ex.messages.push(format!("total dimension {}", r.table.dim()));
            ex.code = if r.truncated {
                ex.messages.push("prolongation truncated at the degree bound".into());
                EXIT_FAILURE
            } else {
                EXIT_OK
            };
        }
        Command::Render => {
            let spec = diagram_spec(&cfg)?;
            if spec.planar() {
                let name = cfg.output.svg.clone().unwrap_or_else(|| "diagram.svg".into());
                write(&dir, &name, &to_svg(&spec), &mut ex.written)?;
            } else {
                ex.messages.push(format!("warning: rank {} > 2, SVG skipped; writing the table only", spec.rank));
            }
            let name = cfg.output.ascii.clone().unwrap_or_else(|| "diagram.txt".into());
            write(&dir, &name, &to_ascii(&spec), &mut ex.written)?;
            ex.code = EXIT_OK;
        }
    }
    Ok(ex)
}

/// Runs a command; errors become exit codes with their message.
pub fn execute(command: Command, opts: &Options) -> Execution {
    run(command, opts).unwrap_or_else(|e| Execution { code: e.exit_code(), written: Vec::new(), messages: vec![format!("error: {e}")] })
}
