//! Model documents in, result documents out.
//!
//! Input is TOML (grammar in `docs/input-format.md`); machine output is JSON
//! with the schema in `docs/result-schema.json`. Everything numeric is
//! rendered as exact decimal strings, and every map in the output is ordered,
//! so identical input and command give byte-identical documents.

use std::fmt::Write as _;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use toml::Spanned;

use crate::error::{Error, Result};
use crate::finiteness::{
    check_prop_c_equals_m, coboundary_lattice, condition_c, condition_m, condition_m_bruteforce_with,
    default_k_bound, sf_verdict, Assumptions, Conclusion, MatrixConditionResult, Policy, Verdict,
    DEFAULT_BRUTE_FORCE_CAP, DEFAULT_MAX_K_BOUND,
};
use crate::ktheory::{difference_block, ideal_morphism, k0_of_system, report_ideal, report_k0, IdealReport, K0Report};
use crate::linalg::{lattice_of_columns, IntMatrix};
use crate::models::{
    enumerate_invariant_subsets_with, matrix_system, FiniteMapModel, InvariantSubset, Model, Rank2MatrixSystem,
    TwoGraphModel, DEFAULT_ENUMERATION_CAP,
};
use crate::numfmt::vec_string;
use crate::parallel::Exec;

pub const TOOL: &str = "drk";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
enum ModelType {
    FiniteMap,
    TwoGraph,
    RawMatrices,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum PointRef {
    Index(usize),
    Label(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelDocument {
    model_type: Spanned<ModelType>,
    labels: Option<Spanned<Vec<String>>>,
    t1: Option<Spanned<Vec<PointRef>>>,
    t2: Option<Spanned<Vec<PointRef>>>,
    a1: Option<Spanned<Vec<Vec<i64>>>>,
    a2: Option<Spanned<Vec<Vec<i64>>>>,
    m1: Option<Spanned<Vec<Vec<i64>>>>,
    m2: Option<Spanned<Vec<Vec<i64>>>>,
    invariant_subset: Option<Spanned<Vec<String>>>,
    assumptions: Option<Spanned<Assumptions>>,
}

/// A validated input document.
#[derive(Clone, Debug)]
pub struct ParsedModel {
    pub model: Model,
    pub subset_labels: Option<Vec<String>>,
    pub assumptions: Assumptions,
    /// sha256 of the raw input bytes, hex.
    pub digest: String,
}

struct Locator<'a> {
    text: &'a str,
    spans: Vec<(&'static str, Range<usize>)>,
}

impl Locator<'_> {
    fn line_of(&self, offset: usize) -> usize {
        self.text[..offset.min(self.text.len())].matches('\n').count() + 1
    }

    fn locate(&self, err: Error) -> Error {
        match err {
            Error::Validation { field, message } => {
                let key = field.split('/').next().unwrap_or(&field);
                let line = self
                    .spans
                    .iter()
                    .find(|(name, _)| *name == key)
                    .map(|(_, span)| self.line_of(span.start));
                match line {
                    Some(l) => Error::Input(format!("line {l}, field `{field}`: {message}")),
                    None => Error::Input(format!("field `{field}`: {message}")),
                }
            }
            Error::NotInvariant(msg) => {
                let line = self
                    .spans
                    .iter()
                    .find(|(name, _)| *name == "invariant_subset")
                    .map(|(_, span)| self.line_of(span.start));
                match line {
                    Some(l) => Error::Input(format!("line {l}, field `invariant_subset`: not invariant: {msg}")),
                    None => Error::Input(format!("subset is not invariant: {msg}")),
                }
            }
            other => other,
        }
    }
}

fn required<T>(v: Option<Spanned<T>>, field: &str, model_type: &str) -> Result<T> {
    v.map(Spanned::into_inner)
        .ok_or_else(|| Error::validation(field, format!("required for model_type = \"{model_type}\"")))
}

fn forbid<T>(v: &Option<Spanned<T>>, field: &str, model_type: &str) -> Result<()> {
    match v {
        Some(_) => Err(Error::validation(field, format!("not allowed for model_type = \"{model_type}\""))),
        None => Ok(()),
    }
}

fn matrix_field(rows: Vec<Vec<i64>>, field: &str, n: usize) -> Result<IntMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::validation(field, format!("must be a {n}×{n} matrix")));
    }
    IntMatrix::from_rows(&rows, n).map_err(|e| Error::validation(field, e.to_string()))
}

fn resolve_map(refs: Vec<PointRef>, labels: &[String], field: &str) -> Result<Vec<usize>> {
    refs.into_iter()
        .map(|r| match r {
            PointRef::Index(i) => Ok(i),
            PointRef::Label(l) => labels
                .iter()
                .position(|x| *x == l)
                .ok_or_else(|| Error::validation(field, format!("unknown label {l:?}"))),
        })
        .collect()
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

pub fn input_digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn parse_model_document(text: &str) -> Result<ParsedModel> {
    let doc: ModelDocument = toml::from_str(text).map_err(|e| Error::Input(e.to_string().trim_end().to_string()))?;
    let mut spans = vec![("model_type", doc.model_type.span())];
    macro_rules! span_of {
        ($($f:ident),*) => {$(
            if let Some(v) = &doc.$f {
                spans.push((stringify!($f), v.span()));
            }
        )*};
    }
    span_of!(labels, t1, t2, a1, a2, m1, m2, invariant_subset, assumptions);
    let loc = Locator { text, spans };
    build_model(doc).map_err(|e| loc.locate(e)).map(|(model, subset_labels, assumptions)| ParsedModel {
        model,
        subset_labels,
        assumptions,
        digest: input_digest(text),
    })
}

type Built = (Model, Option<Vec<String>>, Assumptions);

fn build_model(doc: ModelDocument) -> Result<Built> {
    let subset = doc.invariant_subset.map(Spanned::into_inner);
    let assumptions = doc.assumptions.map(Spanned::into_inner).unwrap_or_default();
    let labels = doc.labels.map(Spanned::into_inner);
    let model = match *doc.model_type.get_ref() {
        ModelType::FiniteMap => {
            let ty = "finite_map";
            for (f, v) in [("a1", &doc.a1), ("a2", &doc.a2), ("m1", &doc.m1), ("m2", &doc.m2)] {
                forbid(v, f, ty)?;
            }
            let t1 = required(doc.t1, "t1", ty)?;
            let t2 = required(doc.t2, "t2", ty)?;
            let labels = labels.unwrap_or_else(|| default_labels(t1.len()));
            let t1 = resolve_map(t1, &labels, "t1")?;
            let t2 = resolve_map(t2, &labels, "t2")?;
            Model::FiniteMap(FiniteMapModel::new(labels, t1, t2)?)
        }
        ModelType::TwoGraph => {
            let ty = "two_graph";
            for (f, v) in [("m1", &doc.m1), ("m2", &doc.m2)] {
                forbid(v, f, ty)?;
            }
            forbid(&doc.t1, "t1", ty)?;
            forbid(&doc.t2, "t2", ty)?;
            let a1 = required(doc.a1, "a1", ty)?;
            let a2 = required(doc.a2, "a2", ty)?;
            let labels = labels.unwrap_or_else(|| default_labels(a1.len()));
            let n = labels.len();
            Model::TwoGraph(TwoGraphModel::new(
                labels,
                matrix_field(a1, "a1", n)?,
                matrix_field(a2, "a2", n)?,
            )?)
        }
        ModelType::RawMatrices => {
            let ty = "raw_matrices";
            for (f, v) in [("a1", &doc.a1), ("a2", &doc.a2)] {
                forbid(v, f, ty)?;
            }
            forbid(&doc.t1, "t1", ty)?;
            forbid(&doc.t2, "t2", ty)?;
            let m1 = required(doc.m1, "m1", ty)?;
            let m2 = required(doc.m2, "m2", ty)?;
            let labels = labels.unwrap_or_else(|| default_labels(m1.len()));
            let n = labels.len();
            let system = Rank2MatrixSystem::raw(matrix_field(m1, "m1", n)?, matrix_field(m2, "m2", n)?)?;
            let mut seen = std::collections::BTreeSet::new();
            if let Some(l) = labels.iter().find(|l| !seen.insert(l.as_str())) {
                return Err(Error::validation("labels", format!("duplicate label {l:?}")));
            }
            Model::Raw { labels, system }
        }
    };
    if let Some(names) = &subset {
        model.subset_from_labels(names)?;
    }
    Ok((model, subset, assumptions))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssumptionKey {
    P,
    IdealSf,
    QuotientSf,
}

impl FromStr for AssumptionKey {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "P" => Ok(AssumptionKey::P),
            "ideal_sf" => Ok(AssumptionKey::IdealSf),
            "quotient_sf" => Ok(AssumptionKey::QuotientSf),
            other => Err(format!("unknown assumption {other:?}; expected P, ideal_sf or quotient_sf")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    K0,
    Ideal,
    ConditionM { brute_force: Option<u32> },
    Coboundary { k_bound: Option<usize> },
    Verdict { assume: Vec<AssumptionKey>, deny: Vec<AssumptionKey> },
    Invariants,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::K0 => "k0",
            Command::Ideal => "ideal",
            Command::ConditionM { .. } => "condition-m",
            Command::Coboundary { .. } => "coboundary",
            Command::Verdict { .. } => "verdict",
            Command::Invariants => "invariants",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub max_enum: usize,
    pub max_k_bound: usize,
    pub max_brute_force_points: u64,
    /// Overrides the document's `invariant_subset`.
    pub subset: Option<Vec<String>>,
    pub exec: Exec,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            max_enum: DEFAULT_ENUMERATION_CAP,
            max_k_bound: DEFAULT_MAX_K_BOUND,
            max_brute_force_points: DEFAULT_BRUTE_FORCE_CAP,
            subset: None,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSummary {
    pub model_type: String,
    pub points: usize,
    pub labels: Vec<String>,
    pub m1: Vec<Vec<String>>,
    pub m2: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionMReport {
    pub span_lp: MatrixConditionResult,
    pub brute_force: Option<MatrixConditionResult>,
    /// Present with a brute-force run: no contradiction between the two.
    pub consistent: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub bisection: String,
    pub vector: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoboundaryReport {
    pub exponent_bound: usize,
    pub cycle_lcm: usize,
    pub complete: bool,
    pub lattice_basis: Vec<Vec<String>>,
    pub matrix_image_basis: Vec<Vec<String>>,
    pub equals_matrix_image: bool,
    pub condition_c: bool,
    pub condition_m: bool,
    pub generators: Vec<GeneratorEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub subset: Vec<String>,
    pub assumptions: Assumptions,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub count: usize,
    pub nontrivial: usize,
    pub subsets: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CommandResult {
    K0(K0Report),
    Ideal(IdealReport),
    ConditionM(ConditionMReport),
    Coboundary(CoboundaryReport),
    Verdict(VerdictReport),
    Invariants(InvariantsReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input_digest: String,
    pub model: ModelSummary,
    pub result: CommandResult,
}

fn basis_columns(m: &IntMatrix) -> Vec<Vec<String>> {
    m.columns()
        .iter()
        .map(|c| c.iter().map(ToString::to_string).collect())
        .collect()
}

fn subset_flags(parsed: &ParsedModel, opts: &RunOptions) -> Result<Option<Vec<bool>>> {
    let names = opts.subset.as_ref().or(parsed.subset_labels.as_ref());
    names.map(|n| parsed.model.subset_from_labels(n)).transpose()
}

pub fn run_command(text: &str, cmd: &Command, opts: &RunOptions) -> Result<ResultDocument> {
    let parsed = parse_model_document(text)?;
    run_parsed(&parsed, cmd, opts)
}

pub fn run_parsed(parsed: &ParsedModel, cmd: &Command, opts: &RunOptions) -> Result<ResultDocument> {
    let model = &parsed.model;
    let labels = model.labels();
    let s = matrix_system(model)?;
    let checked_subset = |flags: Vec<bool>| {
        InvariantSubset::new(model, flags).map_err(|e| match e {
            Error::NotInvariant(m) => Error::Input(format!("subset is not invariant: {m}")),
            other => other,
        })
    };
    let result = match cmd {
        Command::K0 => CommandResult::K0(report_k0(&k0_of_system(&s)?, labels)),
        Command::Ideal => {
            let flags = subset_flags(parsed, opts)?
                .ok_or_else(|| Error::Input("the ideal command needs an invariant subset".into()))?;
            let w = checked_subset(flags)?;
            CommandResult::Ideal(report_ideal(&ideal_morphism(&s, &w)?, labels))
        }
        Command::ConditionM { brute_force } => {
            let lp = condition_m(&s)?;
            let bf = brute_force
                .map(|b| condition_m_bruteforce_with(&s, b, opts.max_brute_force_points, opts.exec))
                .transpose()?;
            let consistent = bf.as_ref().map(|b| b.holds || !lp.holds);
            if consistent == Some(false) {
                return Err(Error::InternalConsistency(
                    "brute force found a witness where the exact test reports (M)".into(),
                ));
            }
            CommandResult::ConditionM(ConditionMReport {
                span_lp: lp,
                brute_force: bf,
                consistent,
            })
        }
        Command::Coboundary { k_bound } => {
            let fm = model.as_finite_map().ok_or_else(|| {
                Error::NotApplicable("the coboundary command needs a finite_map model (bijective dynamics)".into())
            })?;
            let k = k_bound.unwrap_or_else(|| default_k_bound(fm, opts.max_k_bound));
            let cob = coboundary_lattice(fm, k)?;
            let image = lattice_of_columns(&difference_block(&s));
            let n = fm.len();
            CommandResult::Coboundary(CoboundaryReport {
                exponent_bound: k,
                cycle_lcm: cob.cycle_lcm,
                complete: cob.complete,
                lattice_basis: basis_columns(cob.lattice.basis()),
                matrix_image_basis: basis_columns(image.basis()),
                equals_matrix_image: check_prop_c_equals_m(fm, k)?,
                condition_c: condition_c(&cob),
                condition_m: condition_m(&s)?.holds,
                generators: cob
                    .generator_log
                    .iter()
                    .map(|g| GeneratorEntry {
                        bisection: g.describe(labels),
                        vector: g.vector(n).iter().map(ToString::to_string).collect(),
                    })
                    .collect(),
            })
        }
        Command::Verdict { assume, deny } => {
            let mut a = parsed.assumptions;
            for (keys, policy) in [(assume, Policy::Assume), (deny, Policy::Deny)] {
                for k in keys {
                    match k {
                        AssumptionKey::P => a.p = policy,
                        AssumptionKey::IdealSf => a.ideal_sf = policy,
                        AssumptionKey::QuotientSf => a.quotient_sf = policy,
                    }
                }
            }
            let flags = subset_flags(parsed, opts)?.unwrap_or_else(|| vec![false; model.len()]);
            let w = checked_subset(flags)?;
            CommandResult::Verdict(VerdictReport {
                subset: w.member_labels(labels),
                assumptions: a,
                verdict: sf_verdict(&s, &w, a)?,
            })
        }
        Command::Invariants => {
            let subsets = enumerate_invariant_subsets_with(model, opts.max_enum, opts.exec)?;
            CommandResult::Invariants(InvariantsReport {
                count: subsets.len(),
                nontrivial: subsets.iter().filter(|w| !w.is_trivial()).count(),
                subsets: subsets.iter().map(|w| w.member_labels(labels)).collect(),
            })
        }
    };
    Ok(ResultDocument {
        tool: TOOL.into(),
        version: VERSION.into(),
        command: cmd.name().into(),
        input_digest: parsed.digest.clone(),
        model: ModelSummary {
            model_type: match model {
                Model::FiniteMap(_) => "finite_map",
                Model::TwoGraph(_) => "two_graph",
                Model::Raw { .. } => "raw_matrices",
            }
            .into(),
            points: model.len(),
            labels: labels.to_vec(),
            m1: s.m1().to_strings(),
            m2: s.m2().to_strings(),
        },
        result,
    })
}

pub fn render_machine(doc: &ResultDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("result documents serialise");
    s.push('\n');
    s
}

fn fmt_rows(rows: &[Vec<String>]) -> String {
    let inner: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(", "))).collect();
    format!("[{}]", inner.join(", "))
}

fn render_k0(out: &mut String, r: &K0Report, indent: &str) {
    let _ = writeln!(out, "{indent}K₀ ≅ {}", r.k0);
    let _ = writeln!(
        out,
        "{indent}  split exact sequence 0 → coker(1−m₁ | 1−m₂) = {} → K₀ → ker[1−m₁; 1−m₂] = {} → 0",
        r.coker, r.ker
    );
    for g in &r.coker_generators {
        let _ = writeln!(out, "{indent}  cokernel generator of order {}: [{}]", g.order, g.expression);
    }
    for v in &r.kernel_basis {
        let _ = writeln!(out, "{indent}  kernel basis vector: ({})", v.join(", "));
    }
    let _ = writeln!(
        out,
        "{indent}  verified: j injective, τ surjective, τ∘j = 0, exact at K₀: {}",
        if r.checks.j_injective && r.checks.tau_surjective && r.checks.tau_after_j_zero && r.checks.exact_at_middle {
            "yes"
        } else {
            "NO"
        }
    );
}

fn render_m(out: &mut String, label: &str, r: &MatrixConditionResult) {
    match (&r.witness, r.holds) {
        (_, true) => {
            let _ = writeln!(out, "{label}: (M) holds");
        }
        (Some(w), false) => {
            let _ = writeln!(
                out,
                "{label}: (M) fails, witness (f, g) = ({}, {}) giving v = {} ≥ 0",
                vec_string(&w.f),
                vec_string(&w.g),
                vec_string(&w.v)
            );
        }
        (None, false) => {
            let _ = writeln!(out, "{label}: (M) fails");
        }
    }
}

pub fn render_human(doc: &ResultDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} {} {}: {} model on {} point{} ({})",
        doc.tool,
        doc.version,
        doc.command,
        doc.model.model_type,
        doc.model.points,
        if doc.model.points == 1 { "" } else { "s" },
        doc.model.labels.join(", ")
    );
    let _ = writeln!(out, "m₁ = {}", fmt_rows(&doc.model.m1));
    let _ = writeln!(out, "m₂ = {}", fmt_rows(&doc.model.m2));
    match &doc.result {
        CommandResult::K0(r) => render_k0(&mut out, r, ""),
        CommandResult::Ideal(r) => {
            let _ = writeln!(out, "invariant subset W = {{{}}}", r.subset.join(", "));
            let _ = writeln!(out, "ideal row (restriction to W):");
            render_k0(&mut out, &r.ideal_row, "  ");
            let _ = writeln!(out, "ambient row:");
            render_k0(&mut out, &r.ambient_row, "  ");
            let _ = writeln!(out, "vertical maps (lifts): left {}, middle {}, right {}", fmt_rows(&r.v_left), fmt_rows(&r.v_mid), fmt_rows(&r.v_right));
            let c = &r.checks;
            let _ = writeln!(
                out,
                "ideal morphism: left square {}, right square {}, rows exact {}, right map injective {}",
                yes(c.left_square_commutes),
                yes(c.right_square_commutes),
                yes(c.top_row_exact && c.bottom_row_exact),
                yes(c.v_right_injective)
            );
            let _ = writeln!(out, "note: {}", r.middle_map_note);
        }
        CommandResult::ConditionM(r) => {
            render_m(&mut out, "exact cone test", &r.span_lp);
            if let Some(b) = &r.brute_force {
                let bound = match b.method {
                    crate::finiteness::Method::BruteForce { bound } => bound,
                    _ => 0,
                };
                render_m(&mut out, &format!("brute force, |coefficients| ≤ {bound}"), b);
                let _ = writeln!(out, "methods consistent: {}", yes(r.consistent == Some(true)));
            }
        }
        CommandResult::Coboundary(r) => {
            let _ = writeln!(
                out,
                "coboundary subgroup H_G from {} singleton bisections, exponents ≤ {} (cycle lcm {}{})",
                r.generators.len(),
                r.exponent_bound,
                r.cycle_lcm,
                if r.complete { "" } else { "; bound below stabilisation, possibly incomplete" }
            );
            let _ = writeln!(out, "H_G basis: {}", fmt_rows(&r.lattice_basis));
            let _ = writeln!(out, "matrix image basis: {}", fmt_rows(&r.matrix_image_basis));
            if r.equals_matrix_image {
                let _ = writeln!(out, "H_G = matrix image: equality verified, so (C) ⟺ (M)");
            } else {
                let _ = writeln!(out, "H_G ≠ matrix image");
            }
            let _ = writeln!(out, "(C) {}, (M) {}", holds(r.condition_c), holds(r.condition_m));
        }
        CommandResult::Verdict(r) => {
            let v = &r.verdict;
            let _ = writeln!(out, "invariant subset W = {{{}}}", r.subset.join(", "));
            for c in &v.checked {
                let _ = writeln!(
                    out,
                    "  [{}] {}{}: {}",
                    c.status,
                    c.condition,
                    if c.required { "" } else { " (supporting)" },
                    c.detail
                );
            }
            for line in &v.narrative {
                let _ = writeln!(out, "  {line}");
            }
            let conclusion = match v.conclusion {
                Conclusion::StablyFinite => "stably finite",
                Conclusion::Inconclusive => "inconclusive",
                Conclusion::NotApplicable => "not applicable",
            };
            let _ = writeln!(out, "verdict: {conclusion}");
            if !v.assumed.is_empty() {
                let _ = writeln!(out, "assumed: {}", v.assumed.join(", "));
            }
        }
        CommandResult::Invariants(r) => {
            let _ = writeln!(out, "{} invariant subsets ({} nontrivial):", r.count, r.nontrivial);
            for s in &r.subsets {
                let _ = writeln!(out, "  {{{}}}", s.join(", "));
            }
        }
    }
    out
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "NO"
    }
}

fn holds(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}
