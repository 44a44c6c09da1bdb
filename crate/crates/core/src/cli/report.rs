//! Report sections and their JSON and text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::classify::{CenterDescription, IdempotentSet, LineComponent, ZeroResult};
use crate::cones::{Face, Factorization};
use crate::demazure::DemazureRoot;
use crate::monoid::MonoidStructure;
use crate::oracle::OracleReport;
use crate::points::ToricPoint;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub ok: bool,
    #[serde(default)]
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceEntry {
    pub rays: Vec<usize>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub name: String,
    pub vector: Vec<i64>,
    pub weight: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeSection {
    pub rays: Vec<Vec<i64>>,
    pub dual_rays: Vec<Vec<i64>>,
    #[serde(default)]
    pub lineality: Vec<Vec<i64>>,
    pub faces: Vec<FaceEntry>,
    pub hilbert_basis: Vec<GeneratorEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootsSection {
    pub ray: usize,
    pub bound: u32,
    pub roots: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatedEntry {
    pub face: Vec<usize>,
    pub point: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineEntry {
    pub face: Vec<usize>,
    pub extended_face: Vec<usize>,
    /// Equations of the open part, e.g. `x3 = 1`.
    pub equations: Vec<String>,
    /// The line with parameter `s`, one entry per generator.
    pub parametrization: Vec<String>,
    pub closure_point: Vec<String>,
    #[serde(default)]
    pub free_generator: Option<String>,
    pub absorbs_isolated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentSection {
    pub isolated: Vec<IsolatedEntry>,
    pub lines: Vec<LineEntry>,
    pub finite: bool,
    #[serde(default)]
    pub count: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroSection {
    pub exists: bool,
    #[serde(default)]
    pub point: Option<Vec<String>>,
    #[serde(default)]
    pub reason: Option<String>,
    #[serde(default)]
    pub reasons: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialEntry {
    pub slice_generator: Vec<i64>,
    pub lhs: Vec<i64>,
    pub rhs: Vec<i64>,
    pub equation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub box_bound: i64,
    pub slice_points: usize,
    pub uncovered: usize,
    pub dominated: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterSection {
    pub trivial: bool,
    pub closure_equations: Vec<String>,
    pub slice_generators: Vec<Vec<i64>>,
    pub binomials: Vec<BinomialEntry>,
    pub equations: Vec<String>,
    #[serde(default)]
    pub certificate: Option<CertificateEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSection {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub product: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    #[serde(default)]
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationSection {
    pub seed: u64,
    pub samples: usize,
    pub checks: BTreeMap<String, CheckEntry>,
    pub all_passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub command: String,
    pub validation: Validation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone: Option<ConeSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roots: Option<RootsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idempotents: Option<IdempotentSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<ZeroSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<CenterSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<ProductSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationSection>,
}

impl Report {
    pub fn new(command: &str, warnings: Vec<String>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            validation: Validation { ok: true, warnings },
            cone: None,
            roots: None,
            idempotents: None,
            zero: None,
            center: None,
            product: None,
            verification: None,
        }
    }

    /// Canonical JSON: sorted keys, two-space indentation, trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

pub fn rational_string(r: &BigRational) -> String {
    r.to_string()
}

pub fn point_strings(x: &ToricPoint) -> Vec<String> {
    x.values.iter().map(rational_string).collect()
}

fn superscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

/// `w·z²` style rendering of a monomial; `1` when empty.
pub fn render_monomial(names: &[String], f: &Factorization) -> String {
    let parts: Vec<String> = f
        .multiplicities
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(i, &m)| if m == 1 { names[i].clone() } else { format!("{}{}", names[i], superscript(m)) })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("·")
    }
}

fn face_rays(f: &Face) -> Vec<usize> {
    f.ray_indices.clone()
}

pub fn cone_section(m: &MonoidStructure, names: &[String]) -> ConeSection {
    let c = m.cone();
    ConeSection {
        rays: c.rays().iter().map(|r| r.0.clone()).collect(),
        dual_rays: c.dual_rays().iter().map(|r| r.0.clone()).collect(),
        lineality: c.lineality().iter().map(|r| r.0.clone()).collect(),
        faces: c.faces().iter().map(|f| FaceEntry { rays: face_rays(f), dim: f.dim }).collect(),
        hilbert_basis: m
            .variety()
            .basis()
            .generators()
            .iter()
            .zip(names)
            .map(|(g, n)| GeneratorEntry { name: n.clone(), vector: g.0.clone(), weight: m.weight(g) })
            .collect(),
    }
}

pub fn roots_section(ray: usize, bound: u32, roots: &[DemazureRoot]) -> RootsSection {
    RootsSection { ray, bound, roots: roots.iter().map(|r| r.e.0.clone()).collect() }
}

fn line_entry(l: &LineComponent, names: &[String]) -> LineEntry {
    let mut param = vec!["0".to_string(); names.len()];
    for &g in &l.unit_generators {
        param[g] = "1".to_string();
    }
    for &(g, w) in &l.weighted_generators {
        param[g] = if w == 1 { "s".to_string() } else { format!("s{}", superscript(w)) };
    }
    LineEntry {
        face: face_rays(&l.face),
        extended_face: face_rays(&l.extended_face),
        equations: l.unit_generators.iter().map(|&g| format!("{} = 1", names[g])).collect(),
        parametrization: param,
        closure_point: point_strings(&l.closure_point),
        free_generator: l.free_generator.map(|g| names[g].clone()),
        absorbs_isolated: l.absorbs_isolated,
    }
}

pub fn idempotent_section(e: &IdempotentSet, names: &[String]) -> IdempotentSection {
    IdempotentSection {
        isolated: e
            .isolated
            .iter()
            .map(|i| IsolatedEntry { face: face_rays(&i.face), point: point_strings(&i.point) })
            .collect(),
        lines: e.lines.iter().map(|l| line_entry(l, names)).collect(),
        finite: e.finite,
        count: e.count_if_finite,
    }
}

pub fn zero_section(z: &ZeroResult) -> ZeroSection {
    ZeroSection {
        exists: z.exists,
        point: z.point.as_ref().map(point_strings),
        reason: z.reason().map(|r| r.as_str().to_string()),
        reasons: z.reasons.iter().map(|r| r.as_str().to_string()).collect(),
    }
}

pub fn center_section(c: &CenterDescription, names: &[String]) -> CenterSection {
    let closure: Vec<String> = c.closure_generators.iter().map(|&g| format!("{} = 0", names[g])).collect();
    let binomials: Vec<BinomialEntry> = c
        .binomials
        .iter()
        .map(|b| BinomialEntry {
            slice_generator: b.slice.0.clone(),
            lhs: b.lhs.0.clone(),
            rhs: b.rhs.0.clone(),
            equation: format!(
                "{} = {}",
                render_monomial(names, &b.lhs_factorization),
                render_monomial(names, &b.rhs_factorization)
            ),
        })
        .collect();
    let mut equations = closure.clone();
    equations.extend(binomials.iter().map(|b| b.equation.clone()));
    CenterSection {
        trivial: c.trivial,
        closure_equations: closure,
        slice_generators: c.slice_generators.iter().map(|u| u.0.clone()).collect(),
        binomials,
        equations,
        certificate: c.certificate.as_ref().map(|k| CertificateEntry {
            box_bound: k.box_bound,
            slice_points: k.slice_points,
            uncovered: k.uncovered.len(),
            dominated: k.dominated.len(),
        }),
    }
}

pub fn check_entry(r: &OracleReport) -> CheckEntry {
    CheckEntry {
        checked: r.checked,
        passed: r.passed,
        failed: r.failed,
        witnesses: r
            .witnesses
            .iter()
            .take(5)
            .map(|w| {
                let inputs: Vec<String> = w.inputs.iter().map(|p| p.to_string()).collect();
                format!("{} on {}: {} vs {}", w.check, inputs.join(" "), w.lhs, w.rhs)
            })
            .collect(),
    }
}

/// Human-readable summary. Absent sections are omitted.
pub fn to_text(r: &Report) -> String {
    let mut out = String::new();
    for w in &r.validation.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    if let Some(c) = &r.cone {
        let gens: Vec<String> = c
            .hilbert_basis
            .iter()
            .map(|g| format!("{} = {}", g.name, vector_string(&g.vector)))
            .collect();
        let _ = writeln!(out, "cone: {} rays, {} faces", c.rays.len(), c.faces.len());
        let _ = writeln!(out, "hilbert basis: {}", gens.join(", "));
    }
    if let Some(s) = &r.roots {
        let roots: Vec<String> = s.roots.iter().map(|v| vector_string(v)).collect();
        let _ = writeln!(out, "roots of p{} within {}: {}", s.ray + 1, s.bound, roots.len());
        for v in roots {
            let _ = writeln!(out, "  {v}");
        }
    }
    if let Some(e) = &r.idempotents {
        match e.count {
            Some(n) => {
                let _ = writeln!(out, "idempotents: {n} (finite)");
            }
            None => {
                let plural = |n: usize, word: &str| format!("{n} {word}{}", if n == 1 { "" } else { "s" });
                let _ = writeln!(
                    out,
                    "idempotents: {}, {}",
                    plural(e.lines.len(), "line"),
                    plural(e.isolated.len(), "isolated point")
                );
            }
        }
        for l in &e.lines {
            let _ = writeln!(
                out,
                "  line ({}), closure point ({})",
                l.parametrization.join(", "),
                l.closure_point.join(", ")
            );
        }
        for i in &e.isolated {
            let _ = writeln!(out, "  point ({})", i.point.join(", "));
        }
    }
    if let Some(z) = &r.zero {
        match (&z.point, &z.reason) {
            (Some(p), _) => {
                let _ = writeln!(out, "zero: ({})", p.join(", "));
            }
            (None, Some(reason)) => {
                let _ = writeln!(out, "zero: none ({reason})");
            }
            (None, None) => {
                let _ = writeln!(out, "zero: none");
            }
        }
    }
    if let Some(c) = &r.center {
        if c.trivial {
            let _ = writeln!(out, "center: the whole variety");
        } else {
            let _ = writeln!(out, "center: {}", c.equations.join(", "));
        }
    }
    if let Some(p) = &r.product {
        let _ = writeln!(out, "{}", p.product.join(", "));
    }
    if let Some(v) = &r.verification {
        let _ = writeln!(
            out,
            "verification (seed {}): {}",
            v.seed,
            if v.all_passed { "all checks passed" } else { "FAILURES" }
        );
        for (name, c) in &v.checks {
            let _ = writeln!(out, "  {name}: {}/{} passed", c.passed, c.checked);
            for w in &c.witnesses {
                let _ = writeln!(out, "    {w}");
            }
        }
    }
    out
}

fn vector_string(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}
