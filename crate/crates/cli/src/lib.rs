//! Problem files, pipeline runs and report rendering for the `mccgs` tool.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use mccgs_core::arith::{parse_poly, ParamPoly};
use mccgs_core::buildtree::{buildtree, label_string, terminal_cases, BuildOptions, LppSet, Vertex};
use mccgs_core::canspec::{difftocanspec, redspec_to_diffspec};
use mccgs_core::merge::{pack_group, segment_basis_at, MergeOptions, MergedSegment, SheafEntry};
use mccgs_core::spec::{reduced_basis_at, sample_points, RedSpec};
use mccgs_core::{ArithError, OrderKind, Ring};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Ring(#[from] ArithError),
    #[error("{0}")]
    Build(#[from] mccgs_core::buildtree::BuildError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Buildtree,
    Mccgs,
}

/// Tunables; unset fields fall back to the defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Settings {
    pub genimage_bound: Option<u32>,
    pub factor_degree_bound: Option<u32>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

impl Settings {
    /// `self` with unset fields taken from `base`.
    pub fn or(&self, base: &Settings) -> Settings {
        Settings {
            genimage_bound: self.genimage_bound.or(base.genimage_bound),
            factor_degree_bound: self.factor_degree_bound.or(base.factor_degree_bound),
            samples: self.samples.or(base.samples),
            seed: self.seed.or(base.seed),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub params: Vec<String>,
    pub vars: Vec<String>,
    pub order_vars: OrderKind,
    pub order_params: OrderKind,
    /// `(line number, source)` of each system polynomial.
    pub system: Vec<(usize, String)>,
    pub options: Settings,
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

fn names(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn key_of(line: &str) -> Option<(&str, &str)> {
    let (k, v) = line.split_once(':')?;
    let k = k.trim();
    (!k.is_empty() && k.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')).then_some((k, v.trim()))
}

impl ProblemFile {
    pub fn parse(src: &str) -> Result<ProblemFile, CliError> {
        let mut pf = ProblemFile {
            params: Vec::new(),
            vars: Vec::new(),
            order_vars: OrderKind::Lex,
            order_params: OrderKind::Lex,
            system: Vec::new(),
            options: Settings::default(),
        };
        let mut in_system = false;
        for (i, raw) in src.lines().enumerate() {
            let line_no = i + 1;
            let body = raw.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            let Some((key, value)) = key_of(body) else {
                if !in_system {
                    return Err(parse_err(line_no, 1, "expected 'key: value'"));
                }
                pf.system.push((line_no, body.to_string()));
                continue;
            };
            in_system = false;
            let col = raw.find(value).map_or(1, |c| c + 1);
            let number = |v: &str| -> Result<u64, CliError> {
                v.parse().map_err(|_| parse_err(line_no, col, format!("'{v}' is not a number")))
            };
            let order = |v: &str| {
                OrderKind::parse(v).ok_or_else(|| parse_err(line_no, col, format!("unknown order '{v}'")))
            };
            match key {
                "params" => pf.params = names(value),
                "vars" => pf.vars = names(value),
                "order_vars" => pf.order_vars = order(value)?,
                "order_params" => pf.order_params = order(value)?,
                "genimage_bound" => pf.options.genimage_bound = Some(number(value)? as u32),
                "factor_degree_bound" => pf.options.factor_degree_bound = Some(number(value)? as u32),
                "samples" => pf.options.samples = Some(number(value)? as usize),
                "seed" => pf.options.seed = Some(number(value)?),
                "system" => {
                    in_system = true;
                    if !value.is_empty() {
                        pf.system.push((line_no, body.to_string()));
                    }
                }
                _ => return Err(parse_err(line_no, 1, format!("unknown key '{key}'"))),
            }
        }
        if pf.system.is_empty() {
            return Err(parse_err(src.lines().count().max(1), 1, "empty system"));
        }
        Ok(pf)
    }

    pub fn ring(&self) -> Result<Arc<Ring>, CliError> {
        Ok(Ring::new(
            self.params.clone(),
            self.vars.clone(),
            self.order_vars,
            self.order_params,
        )?)
    }

    /// The system polynomials; parse errors carry file positions.
    pub fn polynomials(&self, ring: &Arc<Ring>) -> Result<Vec<ParamPoly>, CliError> {
        self.system
            .iter()
            .map(|(line, raw)| {
                let src = match key_of(raw) {
                    Some(("system", v)) => v,
                    _ => raw.as_str(),
                };
                let offset = raw.find(src.trim_start()).unwrap_or(0);
                parse_poly(ring, src.trim_start()).map_err(|e| match e {
                    ArithError::Parse { pos, msg } => parse_err(*line, offset + pos + 1, msg),
                    other => parse_err(*line, offset + 1, other.to_string()),
                })
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingReport {
    pub params: Vec<String>,
    pub vars: Vec<String>,
    pub order_vars: String,
    pub order_params: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecReport {
    #[serde(rename = "N")]
    pub n: Vec<String>,
    #[serde(rename = "W")]
    pub w: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentReport {
    pub lpp: Vec<String>,
    /// One list per basis entry; more than one member is a sheaf.
    pub basis: Vec<Vec<String>>,
    pub subsegments: Vec<SpecReport>,
    pub canspecs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportBundle {
    pub mode: Mode,
    pub ring: RingReport,
    pub segments: Vec<SegmentReport>,
    pub diagnostics: Vec<String>,
    pub seed: u64,
}

impl ReportBundle {
    /// 0 on clean success, 2 when warnings or failed checks were recorded.
    pub fn exit_code(&self) -> i32 {
        let flagged = self.diagnostics.iter().any(|d| {
            d.starts_with("WARN") || d.starts_with("CONJECTURE-VIOLATION") || d.starts_with("CHECK-FAILED")
        });
        if flagged {
            2
        } else {
            0
        }
    }
}

pub struct Outcome {
    pub bundle: ReportBundle,
    pub tree: Vertex,
    pub ring: Arc<Ring>,
}

fn spec_report(s: &RedSpec) -> SpecReport {
    SpecReport {
        n: s.n().gb().iter().map(|g| g.to_string()).collect(),
        w: s.w().iter().map(|w| w.to_string()).collect(),
    }
}

fn segment_report(seg: &MergedSegment, ring: &Ring) -> SegmentReport {
    SegmentReport {
        lpp: seg
            .lpp_set
            .iter()
            .map(|m| m.to_string_with(ring.vars()))
            .collect(),
        basis: seg
            .basis
            .iter()
            .map(|e| e.members.iter().map(|f| f.to_string()).collect())
            .collect(),
        subsegments: seg.subsegments.iter().map(spec_report).collect(),
        canspecs: seg.canspecs.iter().map(|c| c.to_string()).collect(),
    }
}

fn push_unique(out: &mut Vec<String>, msg: String) {
    if !out.contains(&msg) {
        out.push(msg);
    }
}

/// Compares every segment with the directly computed reduced basis at
/// `samples` random points of each subsegment.
fn check_samples(
    segments: &[MergedSegment],
    system: &[ParamPoly],
    samples: usize,
    seed: u64,
    diags: &mut Vec<String>,
) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (i, seg) in segments.iter().enumerate() {
        for spec in &seg.subsegments {
            let points = match sample_points(spec, samples, &mut rng) {
                Ok(p) => p,
                Err(_) => {
                    push_unique(diags, format!("unchecked: no rational sample point in {spec}"));
                    continue;
                }
            };
            for p in points {
                let direct = reduced_basis_at(system, &p);
                if segment_basis_at(&seg.basis, &p).as_deref() != Some(direct.as_slice()) {
                    push_unique(diags, format!("CHECK-FAILED: segment {i} at {p}"));
                }
            }
        }
    }
}

/// Runs the selected pipeline on a parsed problem. `flags` override the
/// file's options.
pub fn run_problem(pf: &ProblemFile, mode: Mode, flags: &Settings) -> Result<Outcome, CliError> {
    let settings = flags.or(&pf.options);
    let ring = pf.ring()?;
    let system = pf.polynomials(&ring)?;
    let bound = settings
        .factor_degree_bound
        .unwrap_or(mccgs_core::factor::DEFAULT_DEGREE_BOUND);
    let genimage = settings.genimage_bound.unwrap_or(2);
    let seed = settings.seed.unwrap_or(0);
    let build = BuildOptions {
        factor_bound: bound,
        ..BuildOptions::default()
    };
    let opts = MergeOptions {
        genimage_l: genimage,
        genimage_m: genimage,
        factor_bound: bound,
    };
    let tree = buildtree(&system, &ring, &build)?;
    let cgs = terminal_cases(&tree, &ring);
    let mut diagnostics: Vec<String> = tree.warnings().into_iter().map(|w| format!("WARN: {w}")).collect();
    let segments: Vec<MergedSegment> = match mode {
        Mode::Buildtree => cgs
            .cases
            .iter()
            .map(|c| MergedSegment {
                lpp_set: c.lpp_set.clone(),
                basis: c.basis.iter().cloned().map(SheafEntry::single).collect(),
                subsegments: vec![c.spec.clone()],
                canspecs: vec![difftocanspec(&redspec_to_diffspec(&c.spec), bound)],
                labels: vec![c.label.clone()],
            })
            .collect(),
        Mode::Mccgs => {
            let mut out = Vec::new();
            for group in mccgs_core::buildtree::group_by_lpp(&cgs) {
                let (segs, diags) = pack_group(&group, &ring, &opts);
                out.extend(segs);
                for d in diags {
                    push_unique(&mut diagnostics, d);
                }
            }
            out
        }
    };
    for s in &segments {
        for c in &s.canspecs {
            for w in &c.warnings {
                push_unique(&mut diagnostics, format!("WARN: {w}"));
            }
        }
    }
    check_samples(&segments, &system, settings.samples.unwrap_or(5), seed, &mut diagnostics);
    let bundle = ReportBundle {
        mode,
        ring: RingReport {
            params: pf.params.clone(),
            vars: pf.vars.clone(),
            order_vars: pf.order_vars.to_string(),
            order_params: pf.order_params.to_string(),
        },
        segments: segments.iter().map(|s| segment_report(s, &ring)).collect(),
        diagnostics,
        seed,
    };
    Ok(Outcome { bundle, tree, ring })
}

pub fn run(path: &Path, mode: Mode, flags: &Settings) -> Result<Outcome, CliError> {
    let src = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    run_problem(&ProblemFile::parse(&src)?, mode, flags)
}

pub fn emit_json(bundle: &ReportBundle) -> String {
    serde_json::to_string_pretty(bundle).expect("report serializes") + "\n"
}

fn bracket(items: &[String]) -> String {
    format!("[{}]", items.join(", "))
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn basis_cell(basis: &[Vec<String>]) -> String {
    let entries: Vec<String> = basis
        .iter()
        .map(|m| if m.len() == 1 { m[0].clone() } else { braces(m) })
        .collect();
    bracket(&entries)
}

fn render_rows(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join(" | ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out += &(rule.join("-+-") + "\n");
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

pub fn emit_table(bundle: &ReportBundle) -> String {
    let mut out = match bundle.mode {
        Mode::Buildtree => {
            let rows: Vec<Vec<String>> = bundle
                .segments
                .iter()
                .map(|s| {
                    let sub = &s.subsegments[0];
                    vec![bracket(&s.lpp), basis_cell(&s.basis), bracket(&sub.n), braces(&sub.w)]
                })
                .collect();
            render_rows(&["lpp", "basis", "null cond.", "non-null cond"], &rows)
        }
        Mode::Mccgs => {
            let rows: Vec<Vec<String>> = bundle
                .segments
                .iter()
                .map(|s| {
                    let pairs: Vec<String> = s
                        .subsegments
                        .iter()
                        .map(|p| format!("({}, {})", bracket(&p.n), braces(&p.w)))
                        .collect();
                    vec![bracket(&s.lpp), basis_cell(&s.basis), pairs.join(", ")]
                })
                .collect();
            render_rows(&["lpp", "basis", "sets of pairs (N,W)"], &rows)
        }
    };
    out += "\ncanonical specifications:\n";
    for (i, s) in bundle.segments.iter().enumerate() {
        for c in &s.canspecs {
            let _ = writeln!(out, "  {i}: {c}");
        }
    }
    if !bundle.diagnostics.is_empty() {
        out += "\ndiagnostics:\n";
        for d in &bundle.diagnostics {
            let _ = writeln!(out, "  {d}");
        }
    }
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn node_id(label: &[u8]) -> String {
    let digits: String = label.iter().map(|b| b.to_string()).collect();
    format!("v{digits}")
}

/// The BUILDTREE tree in Graphviz syntax. Null branches are dashed.
pub fn emit_dot(tree: &Vertex, ring: &Ring) -> String {
    fn walk(v: &Vertex, ring: &Ring, out: &mut String) {
        let id = node_id(&v.label);
        let mut text = dot_escape(&label_string(&v.label));
        if v.is_terminal() {
            let lpps: Vec<_> = v.basis.iter().filter_map(|f| f.lpp().ok().cloned()).collect();
            let _ = write!(text, "\\nlpp {}", dot_escape(&LppSet(&lpps, ring).to_string()));
        }
        let _ = writeln!(out, "  {id} [label=\"{text}\"];");
        if let (Some((null, nonnull)), Some(p)) = (&v.children, &v.branch_poly) {
            for (child, style, rel) in [(nonnull, "solid", "≠"), (null, "dashed", "=")] {
                let _ = writeln!(
                    out,
                    "  {id} -> {} [style={style}, label=\"{}\"];",
                    node_id(&child.label),
                    dot_escape(&format!("{p} {rel} 0"))
                );
                walk(child, ring, out);
            }
        }
    }
    let mut out = String::from("digraph buildtree {\n  node [shape=box];\n");
    walk(tree, ring, &mut out);
    out += "}\n";
    out
}
