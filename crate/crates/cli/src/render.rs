//! Weight diagrams: dots for weights, dotted lines of constant degree, marks on
//! the lines that can carry degree −1, and forbidden configurations.
//!
//! Positions come from an orthonormal basis for the invariant form and are
//! rounded to integer pixels with exact integer square roots.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use tanaka_core::lie::weights::weight_system;
use tanaka_core::scalar::format_rational;
use tanaka_core::{Rational, Weight};
use tanaka_graded::conditions::check_condition_iii;
use tanaka_graded::{admissible_structures, enumerate_shifts, GradedCrAlgebra, WeightDiagram};

use crate::config::{JobConfig, ModuleSpec};
use crate::{ForgeError, Result};

pub const VIEW: i64 = 400;
const RADIUS: i64 = 160;
const LINE_HALF: i64 = 600;
const MARK_OFFSET: i64 = 24;

pub type Point = (i64, i64);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dot {
    pub weight: Weight,
    pub multiplicity: u64,
    pub degree: i64,
    pub pos: Option<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeLine {
    pub e_value: Rational,
    pub degree: i64,
    pub weights: Vec<Weight>,
    /// Shifts of the admissible structures putting this line in degree −1.
    pub marked_by: Vec<Rational>,
    pub ends: Option<(Point, Point)>,
    pub mark: Option<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Overlay {
    pub shift: Rational,
    pub lambda: Weight,
    pub offending: Weight,
    pub combination: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramSpec {
    pub algebra: String,
    pub rank: usize,
    pub weight: Option<Weight>,
    pub shift: Option<Rational>,
    pub admissible_shifts: Vec<Rational>,
    pub dots: Vec<Dot>,
    pub lines: Vec<DegreeLine>,
    pub forbidden: Vec<Overlay>,
}

impl DiagramSpec {
    pub fn planar(&self) -> bool {
        self.rank <= 2
    }

    pub fn marked_lines(&self) -> usize {
        self.lines.iter().filter(|l| !l.marked_by.is_empty()).count()
    }

    pub fn position(&self, w: &Weight) -> Option<Point> {
        self.dots.iter().find(|d| &d.weight == w).and_then(|d| d.pos)
    }
}

/// Nearest integer to `√q` for `q ≥ 0`.
pub fn round_sqrt(q: &Rational) -> BigInt {
    let four_q = (q * Rational::from_integer(4.into())).floor().to_integer();
    let m = four_q.sqrt();
    (m + 1) / 2
}

/// Nearest integer to `a·√(s2/b)`, with `b > 0`, `s2 ≥ 0`.
fn scaled(a: &Rational, b: &Rational, s2: &Rational) -> i64 {
    let r = round_sqrt(&(s2 * a * a / b));
    let r = if a.is_negative() { -r } else { r };
    r.to_i64().expect("pixel coordinate fits")
}

/// Orthonormal coordinates for the invariant form on root coordinates:
/// `x` along `α_1`, `y` along the part of `α_2` orthogonal to `α_1`.
struct Projector<'a> {
    g: &'a GradedCrAlgebra,
    a1: Vec<Rational>,
    n1: Rational,
    u2: Option<(Vec<Rational>, Rational)>,
}

impl<'a> Projector<'a> {
    fn new(g: &'a GradedCrAlgebra) -> Self {
        let rs = &g.root_system;
        let unit = |i: usize| -> Vec<Rational> {
            (0..g.rank()).map(|k| Rational::from_integer(BigInt::from(i64::from(k == i)))).collect()
        };
        let a1 = unit(0);
        let n1 = rs.inner(&a1, &a1);
        let u2 = (g.rank() >= 2).then(|| {
            let a2 = unit(1);
            let c = rs.inner(&a2, &a1) / &n1;
            let u: Vec<Rational> = a2.iter().zip(&a1).map(|(p, q)| p - &c * q).collect();
            let n = rs.inner(&u, &u);
            (u, n)
        });
        Projector { g, a1, n1, u2 }
    }

    fn norm2(&self, v: &[Rational]) -> Rational {
        self.g.root_system.inner(v, v)
    }

    /// Integer position of `v` (root coordinates) at squared scale `s2`.
    fn pixel(&self, v: &[Rational], s2: &Rational) -> Point {
        let rs = &self.g.root_system;
        let x = scaled(&rs.inner(v, &self.a1), &self.n1, s2);
        let y = self.u2.as_ref().map_or(0, |(u, n)| scaled(&rs.inner(v, u), n, s2));
        (x, y)
    }

    /// Direction of the lines of constant degree, `length` pixels long and
    /// pointing right (or up when vertical).
    fn line_direction(&self, length: i64) -> Option<Point> {
        let e = &self.g.e.0;
        if self.g.rank() == 1 {
            return Some((0, length));
        }
        let d = vec![e[1].clone(), -e[0].clone()];
        let n = self.norm2(&d);
        if n.is_zero() {
            return None;
        }
        let s2 = Rational::from_integer(BigInt::from(length * length)) / n;
        let (x, y) = self.pixel(&d, &s2);
        Some(if x < 0 || (x == 0 && y < 0) { (-x, -y) } else { (x, y) })
    }
}

fn module_of(cfg: &JobConfig, g: &GradedCrAlgebra) -> Result<Option<(Weight, Option<Rational>)>> {
    let specs = cfg.module_specs(g)?;
    match specs.as_slice() {
        [] => Ok(None),
        [ModuleSpec::Irreducible { weight, shift, .. }] => Ok(Some((weight.clone(), shift.clone()))),
        [ModuleSpec::AntiHermitian { .. }] => Err(ForgeError::Input("render needs an irreducible module of the complex algebra".into())),
        _ => Err(ForgeError::Input("render draws one module at a time".into())),
    }
}

/// Layout of the diagram of the configured module.
pub fn diagram_spec(cfg: &JobConfig) -> Result<DiagramSpec> {
    let g = cfg.algebra()?;
    let rank = g.rank();
    let Some((weight, fixed_shift)) = module_of(cfg, &g)? else {
        return Ok(DiagramSpec {
            algebra: g.label.clone(),
            rank,
            weight: None,
            shift: None,
            admissible_shifts: Vec::new(),
            dots: Vec::new(),
            lines: Vec::new(),
            forbidden: Vec::new(),
        });
    };
    let cap = cfg.max_module_dim();
    let dim = g.root_system.weyl_dimension(&weight)?;
    if dim > BigInt::from(cap) {
        return Err(ForgeError::Input(format!("module {weight} has dimension {dim}, above the cap {cap}")));
    }
    let character = weight_system(&g.root_system, &weight)?;
    let candidates = enumerate_shifts(&g, &character);
    let admissible: Vec<Rational> = admissible_structures(&g, &weight)?.into_iter().map(|s| s.diagram.shift).collect();
    let e_values: BTreeMap<Weight, Rational> = character.weights().map(|w| (w.clone(), g.weight_e(w))).collect();
    let top = e_values.values().max().cloned().unwrap_or_else(Rational::zero);
    let shift = fixed_shift
        .or_else(|| admissible.first().cloned())
        .or_else(|| candidates.first().map(|d| d.shift.clone()))
        .unwrap_or(-top);
    let reference = WeightDiagram::new(&g, character.clone(), shift.clone())
        .ok_or_else(|| ForgeError::Input(format!("shift {} gives non-integral degrees", format_rational(&shift))))?;

    let proj = Projector::new(&g);
    let planar = rank <= 2;
    let root_coords: BTreeMap<Weight, Vec<Rational>> =
        character.weights().map(|w| (w.clone(), g.root_system.weight_to_root_coords(w))).collect();
    let r2 = root_coords.values().map(|v| proj.norm2(v)).max().unwrap_or_else(Rational::zero);
    let s2 = if r2.is_zero() {
        Rational::from_integer(BigInt::from(RADIUS * RADIUS / 16))
    } else {
        Rational::from_integer(BigInt::from(RADIUS * RADIUS)) / r2
    };
    let pos = |w: &Weight| planar.then(|| proj.pixel(&root_coords[w], &s2));

    let dots: Vec<Dot> = character
        .entries()
        .iter()
        .map(|(w, &m)| Dot { weight: w.clone(), multiplicity: m, degree: reference.degree(w).expect("weight in diagram"), pos: pos(w) })
        .collect();

    let dir = if planar { proj.line_direction(LINE_HALF) } else { None };
    let mark_dir = if planar { proj.line_direction(MARK_OFFSET) } else { None };
    let mut by_value: BTreeMap<Rational, Vec<Weight>> = BTreeMap::new();
    for (w, v) in &e_values {
        by_value.entry(v.clone()).or_default().push(w.clone());
    }
    let minus_one = Rational::from_integer(BigInt::from(-1));
    let lines = by_value
        .into_iter()
        .rev()
        .map(|(v, weights)| {
            let marked_by: Vec<Rational> = admissible.iter().filter(|t| &v + *t == minus_one).cloned().collect();
            let degree = (&v + &shift).to_integer().to_i64().expect("small degree");
            let points: Vec<Point> = weights.iter().filter_map(|w| pos(w)).collect();
            let ends = dir.and_then(|(dx, dy)| points.first().map(|&(x, y)| ((x - dx, y - dy), (x + dx, y + dy))));
            let mark = mark_dir.filter(|_| !marked_by.is_empty()).and_then(|(dx, dy)| {
                let rightmost = points.iter().copied().max_by_key(|&(x, y)| (dx * x + dy * y, -y))?;
                let (x, y) = rightmost;
                Some(if rank == 1 { (x + MARK_OFFSET / 2, y) } else { (x + dx, y + dy) })
            });
            DegreeLine { e_value: v, degree, weights, marked_by, ends, mark }
        })
        .collect();

    let mut forbidden = BTreeSet::new();
    for d in &candidates {
        if admissible.contains(&d.shift) {
            continue;
        }
        for v in check_condition_iii(d, &g) {
            forbidden.insert(Overlay {
                shift: d.shift.clone(),
                lambda: v.lambda.clone(),
                offending: v.offending.clone(),
                combination: v.combination.to_string(),
            });
        }
    }

    Ok(DiagramSpec {
        algebra: g.label.clone(),
        rank,
        weight: Some(weight),
        shift: Some(shift),
        admissible_shifts: admissible,
        dots,
        lines,
        forbidden: forbidden.into_iter().collect(),
    })
}

fn screen((x, y): Point) -> Point {
    (VIEW / 2 + x, VIEW / 2 - y)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Deterministic SVG with a fixed viewport.
pub fn to_svg(spec: &DiagramSpec) -> String {
    let mut s = String::new();
    let title = match &spec.weight {
        Some(w) => format!("Γ{w} over {}", spec.algebra),
        None => format!("empty module over {}", spec.algebra),
    };
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{VIEW}" height="{VIEW}" viewBox="0 0 {VIEW} {VIEW}">"#);
    let _ = writeln!(s, "<title>{}</title>", escape(&title));
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{VIEW}" height="{VIEW}" fill="white"/>"#);
    let _ = writeln!(s, r#"<g stroke="gray" stroke-width="1" stroke-dasharray="2 4">"#);
    for l in &spec.lines {
        if let Some((a, b)) = l.ends {
            let ((x1, y1), (x2, y2)) = (screen(a), screen(b));
            let _ = writeln!(s, r#"<line class="degree" data-degree="{}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#, l.degree);
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g stroke="red" stroke-width="2">"#);
    for o in &spec.forbidden {
        if let (Some(a), Some(b)) = (spec.position(&o.lambda), spec.position(&o.offending)) {
            let ((x1, y1), (x2, y2)) = (screen(a), screen(b));
            let _ = writeln!(
                s,
                r#"<line class="forbidden" data-shift="{}" data-combination="{}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#,
                format_rational(&o.shift),
                escape(&o.combination)
            );
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g fill="black" font-family="sans-serif" font-size="12">"#);
    for d in &spec.dots {
        if let Some(p) = d.pos {
            let (x, y) = screen(p);
            let _ = writeln!(s, r#"<circle class="weight" data-weight="{}" cx="{x}" cy="{y}" r="5"/>"#, d.weight.label());
            if d.multiplicity > 1 {
                let _ = writeln!(s, r#"<text class="multiplicity" x="{}" y="{}">×{}</text>"#, x + 7, y - 7, d.multiplicity);
            }
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g stroke="blue" stroke-width="2">"#);
    for l in &spec.lines {
        if let Some(p) = l.mark {
            let (x, y) = screen(p);
            let _ = writeln!(
                s,
                r#"<path class="mark" data-degree="{}" d="M {} {} L {} {} M {} {} L {} {}"/>"#,
                l.degree,
                x - 5,
                y - 5,
                x + 5,
                y + 5,
                x - 5,
                y + 5,
                x + 5,
                y - 5
            );
        }
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}

/// Weights grouped by degree, top degree first; `*` marks lines that carry
/// degree −1 in some admissible structure.
pub fn to_ascii(spec: &DiagramSpec) -> String {
    let mut s = String::new();
    let Some(w) = &spec.weight else {
        let _ = writeln!(s, "empty module over {}: no weights", spec.algebra);
        return s;
    };
    let shifts: Vec<String> = spec.admissible_shifts.iter().map(format_rational).collect();
    let _ = writeln!(s, "module {w} over {}", spec.algebra);
    let _ = writeln!(s, "reference shift: {}", spec.shift.as_ref().map_or("-".into(), format_rational));
    let _ = writeln!(s, "admissible shifts: {}", if shifts.is_empty() { "none".into() } else { shifts.join(", ") });
    let _ = writeln!(s, "{:>6}  {:>7}  {:<4}  weights", "degree", "E", "mark");
    let mult: BTreeMap<&Weight, u64> = spec.dots.iter().map(|d| (&d.weight, d.multiplicity)).collect();
    for l in &spec.lines {
        let ws: Vec<String> = l
            .weights
            .iter()
            .map(|w| match mult.get(w) {
                Some(&m) if m > 1 => format!("{w}x{m}"),
                _ => w.label(),
            })
            .collect();
        let mark = if l.marked_by.is_empty() { "" } else { "*" };
        let _ = writeln!(s, "{:>6}  {:>7}  {:<4}  {}", l.degree, format_rational(&l.e_value), mark, ws.join(" "));
    }
    for o in &spec.forbidden {
        let _ = writeln!(s, "forbidden at shift {}: {} {} -> {}", format_rational(&o.shift), o.lambda, o.combination, o.offending);
    }
    s
}
