//! The `sgpoints` command line.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::conic::{dual_conic, intersect_conics_in, sg_outer_conics_in, Conic};
use crate::field::Extender;
use crate::geom::ProjPoint;
use crate::poly::HomPoly;
use crate::sg::{
    galois_point_check, sg_enumerate, sg_point_check, verify_witness, CurvePair, EnumerateOptions, SgWitness,
};
use crate::shell::report::*;
use crate::shell::suite::{paper_suite, SuiteStatus};
use crate::shell::{infer_field, parse_form, parse_matrix, parse_point, parse_points, FieldDecl};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "sgpoints", version, about = "Galois and simultaneous Galois points of plane curves, computed exactly")]
pub struct Cli {
    /// Print a JSON report document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Field declaration such as "Q(zeta4, sqrt3)"; inferred from the
    /// inputs when omitted.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// File of `key: value` lines supplying any option; flags on the
    /// command line take precedence.
    #[arg(long = "in", global = true, value_name = "PATH")]
    pub input: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dual conic of a nonsingular conic.
    Dual {
        #[arg(long)]
        conic: Option<String>,
    },
    /// Intersection points of two conics with multiplicities.
    Intersect {
        #[arg(long)]
        c1: Option<String>,
        #[arg(long)]
        c2: Option<String>,
    },
    /// All outer SG points of two nonsingular conics.
    SgOuterConics {
        #[arg(long)]
        c1: Option<String>,
        #[arg(long)]
        c2: Option<String>,
    },
    /// Is the point a Galois point of the curve?
    GaloisCheck {
        #[arg(long)]
        curve: Option<String>,
        #[arg(long)]
        point: Option<String>,
    },
    /// Is the point an SG point of the pair? With --witness, only checks
    /// that the matrix fixes the lines through the point and carries C2
    /// onto C1.
    SgCheck {
        #[arg(long)]
        c1: Option<String>,
        #[arg(long)]
        c2: Option<String>,
        #[arg(long)]
        point: Option<String>,
        /// Nine entries, row-major, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        witness: Option<String>,
    },
    /// Every certifiable SG point of the pair.
    SgEnumerate {
        #[arg(long)]
        c1: Option<String>,
        #[arg(long)]
        c2: Option<String>,
        /// Extra candidate points separated by ';'.
        #[arg(long, allow_hyphen_values = true)]
        candidates: Option<String>,
        /// A matrix N such that N(C1) or N(C2) is a known normal form.
        #[arg(long, allow_hyphen_values = true)]
        normalizer: Option<String>,
    },
    /// Runs every built-in example and prints a PASS/FAIL table.
    PaperSuite,
}

/// What a run printed and how it ended.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Inputs {
    values: BTreeMap<String, String>,
}

impl Inputs {
    fn get(&self, key: &str) -> Result<&str> {
        self.values
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Error::Invalid(format!("missing --{key} (on the command line or in the --in file)")))
    }

    fn opt(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }
}

fn read_input_file(path: &PathBuf) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once(':') else {
            return Err(Error::Invalid(format!("{}:{}: expected `key: value`", path.display(), n + 1)));
        };
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Dual { .. } => "dual",
        Command::Intersect { .. } => "intersect",
        Command::SgOuterConics { .. } => "sg-outer-conics",
        Command::GaloisCheck { .. } => "galois-check",
        Command::SgCheck { .. } => "sg-check",
        Command::SgEnumerate { .. } => "sg-enumerate",
        Command::PaperSuite => "paper-suite",
    }
}

fn gather(cli: &Cli) -> Result<Inputs> {
    let mut values = match &cli.input {
        Some(p) => read_input_file(p)?,
        None => BTreeMap::new(),
    };
    let mut set = |k: &str, v: &Option<String>| {
        if let Some(v) = v {
            values.insert(k.to_string(), v.clone());
        }
    };
    set("field", &cli.field);
    match &cli.command {
        Command::Dual { conic } => set("conic", conic),
        Command::Intersect { c1, c2 } | Command::SgOuterConics { c1, c2 } => {
            set("c1", c1);
            set("c2", c2);
        }
        Command::GaloisCheck { curve, point } => {
            set("curve", curve);
            set("point", point);
        }
        Command::SgCheck { c1, c2, point, witness } => {
            set("c1", c1);
            set("c2", c2);
            set("point", point);
            set("witness", witness);
        }
        Command::SgEnumerate { c1, c2, candidates, normalizer } => {
            set("c1", c1);
            set("c2", c2);
            set("candidates", candidates);
            set("normalizer", normalizer);
        }
        Command::PaperSuite => {}
    }
    Ok(Inputs { values })
}

fn resolve_field(inputs: &Inputs) -> Result<FieldDecl> {
    match inputs.opt("field") {
        Some(f) => FieldDecl::parse(f),
        None => {
            let texts = inputs.values.iter().filter(|(k, _)| k.as_str() != "field").map(|(_, v)| v.as_str());
            FieldDecl::parse(&infer_field(texts))
        }
    }
}

/// Parses the arguments and runs one command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    run_parsed(&cli)
}

pub fn run_parsed(cli: &Cli) -> Outcome {
    let name = command_name(&cli.command);
    let mut field = String::from("Q");
    let result = gather(cli).and_then(|inputs| {
        if matches!(cli.command, Command::PaperSuite) {
            return Ok(run_suite());
        }
        let decl = resolve_field(&inputs)?;
        field = decl.declaration();
        let mut ext = Extender::new(decl.tower());
        let out = execute(&cli.command, &inputs, &decl, &mut ext)?;
        field = ext.tower().declaration();
        Ok(out)
    });
    match result {
        Ok((code, text, body)) => {
            if cli.json {
                let doc = ReportDocument::new(name, &field, code, body);
                Outcome { code, stdout: doc.to_json() + "\n", stderr: String::new() }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            }
        }
        Err(e) => {
            let code = exit_code_for(&e);
            if cli.json {
                let body = ReportBody::Error { error_kind: error_kind(&e).into(), message: e.to_string() };
                let doc = ReportDocument::new(name, &field, code, body);
                Outcome { code, stdout: doc.to_json() + "\n", stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: format!("error [{}]: {e}\n", error_kind(&e)) }
            }
        }
    }
}

type Ran = (i32, String, ReportBody);

fn curve(inputs: &Inputs, key: &str, decl: &FieldDecl) -> Result<HomPoly> {
    parse_form(inputs.get(key)?, decl)
}

fn conic(inputs: &Inputs, key: &str, decl: &FieldDecl) -> Result<Conic> {
    Conic::new(curve(inputs, key, decl)?)
}

fn execute(cmd: &Command, inputs: &Inputs, decl: &FieldDecl, ext: &mut Extender) -> Result<Ran> {
    let mut s = String::new();
    match cmd {
        Command::Dual { .. } => {
            let c = conic(inputs, "conic", decl)?;
            let d = dual_conic(&c)?;
            writeln!(s, "field: {}", decl.declaration()).ok();
            writeln!(s, "conic: {}", c.form()).ok();
            writeln!(s, "dual:  {}", d.form()).ok();
            Ok((0, s, ReportBody::Dual { conic: c.form().to_string(), dual: d.form().to_string() }))
        }
        Command::Intersect { .. } => {
            let (c1, c2) = (conic(inputs, "c1", decl)?, conic(inputs, "c2", decl)?);
            let pts = crate::with_splits(ext, |ext| intersect_conics_in(ext, &c1, &c2))?;
            let mut sorted = pts.clone();
            sorted.sort_by(|a, b| a.0.canonical_cmp(&b.0));
            writeln!(s, "field: {}", ext.tower().declaration()).ok();
            for (p, m) in &sorted {
                writeln!(s, "{p}  multiplicity {m}").ok();
            }
            writeln!(s, "total multiplicity: {}", sorted.iter().map(|x| x.1).sum::<u32>()).ok();
            Ok((0, s, intersect_body(&pts)))
        }
        Command::SgOuterConics { .. } => {
            let (c1, c2) = (conic(inputs, "c1", decl)?, conic(inputs, "c2", decl)?);
            let r = crate::with_splits(ext, |ext| sg_outer_conics_in(ext, &c1, &c2))?;
            writeln!(s, "field: {}", r.tower.declaration()).ok();
            writeln!(s, "dual conics: {}  and  {}", r.dual_first.form(), r.dual_second.form()).ok();
            let common: Vec<String> = r.dual_points.iter().map(|(p, m)| format!("{p} x{m}")).collect();
            writeln!(s, "dual intersection: {}", common.join(", ")).ok();
            writeln!(s, "outer SG points: {}", r.points.len()).ok();
            for o in &r.points {
                writeln!(s, "  {}  tangents {}, {}", o.point, o.tangents[0], o.tangents[1]).ok();
            }
            Ok((0, s, outer_conics_body(&r)))
        }
        Command::GaloisCheck { .. } => {
            let c = curve(inputs, "curve", decl)?;
            let p = parse_point(inputs.get("point")?, decl)?;
            let v = galois_point_check(ext, &p, &c)?;
            writeln!(s, "field: {}", ext.tower().declaration()).ok();
            writeln!(
                s,
                "point {}: {} the curve, projection degree {}",
                v.point,
                if v.on_curve { "on" } else { "off" },
                v.projection_degree
            )
            .ok();
            writeln!(
                s,
                "Galois: {} ({} transforms fix the lines through the point and preserve the curve{})",
                if v.is_galois { "yes" } else { "no" },
                v.group.len(),
                if v.cyclic { "; cyclic" } else { "" }
            )
            .ok();
            for g in &v.group {
                writeln!(s, "  {g}").ok();
            }
            let code = if v.is_galois { 0 } else { EXIT_NEGATIVE };
            Ok((code, s, ReportBody::GaloisCheck { curve: c.to_string(), verdict: GaloisDoc::new(&v) }))
        }
        Command::SgCheck { .. } => {
            let pair = CurvePair::new(curve(inputs, "c1", decl)?, curve(inputs, "c2", decl)?)?;
            let p = parse_point(inputs.get("point")?, decl)?;
            match inputs.opt("witness") {
                Some(w) => check_witness(ext, &pair, &p, &parse_matrix(w, decl)?),
                None => {
                    let v = sg_point_check(ext, &p, &pair)?;
                    writeln!(s, "field: {}", ext.tower().declaration()).ok();
                    writeln!(s, "point {} ({:?})", v.point, v.kind).ok();
                    for (k, g) in v.galois.iter().enumerate() {
                        writeln!(
                            s,
                            "component {}: Galois {} (group order {}, projection degree {})",
                            k + 1,
                            if g.is_galois { "yes" } else { "no" },
                            g.group.len(),
                            g.projection_degree
                        )
                        .ok();
                    }
                    writeln!(s, "SG point: {}{}", if v.is_sg { "yes" } else { "no" }, if v.trivially_sg { " (trivially, degree-1 projections)" } else { "" })
                        .ok();
                    for w in &v.witnesses {
                        writeln!(s, "  witness {}  scalar {}", w.transform, w.scalar).ok();
                    }
                    let code = if v.is_sg { 0 } else { EXIT_NEGATIVE };
                    Ok((code, s, sg_check_body(&v)))
                }
            }
        }
        Command::SgEnumerate { .. } => {
            let pair = CurvePair::new(curve(inputs, "c1", decl)?, curve(inputs, "c2", decl)?)?;
            let opts = EnumerateOptions {
                candidates: inputs.opt("candidates").map(|c| parse_points(c, decl)).transpose()?,
                normalizer: inputs.opt("normalizer").map(|n| parse_matrix(n, decl)).transpose()?,
            };
            let r = sg_enumerate(ext, &pair, &opts)?;
            writeln!(s, "field: {}", r.tower.declaration()).ok();
            for (label, list) in [("inner", &r.inner), ("outer", &r.outer)] {
                writeln!(s, "{label} SG points: {}", list.len()).ok();
                for e in list.iter() {
                    writeln!(
                        s,
                        "  {}  group {}  ({} witnesses)",
                        e.point,
                        e.descriptor.forms.join(" or "),
                        e.witnesses.len()
                    )
                    .ok();
                }
            }
            if !r.trivially_sg.is_empty() {
                let pts: Vec<String> = r.trivially_sg.iter().map(ToString::to_string).collect();
                writeln!(s, "trivially SG (degree-1 projections, not counted): {}", pts.join(", ")).ok();
            }
            for x in &r.rejected {
                writeln!(s, "rejected {}: {}", x.point, x.reason).ok();
            }
            let completeness = match &r.completeness {
                crate::sg::Completeness::Conic => "complete (conic duality)".to_string(),
                crate::sg::Completeness::KnowledgeBase(f) => format!("known-complete via {}", f.join("; ")),
                crate::sg::Completeness::Heuristic => "heuristic: only the given candidates were tested".to_string(),
            };
            writeln!(s, "completeness: {completeness}").ok();
            for f in &r.flags {
                writeln!(s, "flag [{}] {}", if f.holds { "ok" } else { "VIOLATED" }, f.name).ok();
            }
            for n in &r.notes {
                writeln!(s, "note: {n}").ok();
            }
            for u in &r.unresolved {
                writeln!(s, "unresolved: {u}").ok();
            }
            let code = if !r.violations().is_empty() {
                EXIT_NEGATIVE
            } else if !r.unresolved.is_empty() {
                EXIT_UNRESOLVED
            } else {
                0
            };
            Ok((code, s, enumerate_body(&r)))
        }
        Command::PaperSuite => Ok(run_suite()),
    }
}

fn check_witness(ext: &mut Extender, pair: &CurvePair, p: &ProjPoint, w: &crate::geom::ProjTransform) -> Result<Ran> {
    let mut s = String::new();
    let scalar = pair.first().pullback(w).proportional(pair.second())?;
    let valid = match &scalar {
        Some(k) => verify_witness(
            ext,
            pair,
            &SgWitness { point: p.clone(), transform: w.clone(), scalar: k.clone(), from: 2, to: 1 },
        )?,
        None => false,
    };
    let kind = crate::sg::point_kind(ext, p, pair)?;
    writeln!(s, "field: {}", ext.tower().declaration()).ok();
    writeln!(s, "point {p} ({kind:?})").ok();
    writeln!(s, "witness {w}: {}", if valid { "valid" } else { "invalid" }).ok();
    writeln!(s, "only the witness was checked; the Galois property of each component was not recomputed").ok();
    let witnesses = match (&scalar, valid) {
        (Some(k), true) => vec![WitnessDoc {
            transform: MatrixDoc::new(w),
            scalar: ElementDoc::new(k),
            from: 2,
            to: 1,
        }],
        _ => Vec::new(),
    };
    let body = ReportBody::SgCheck {
        point: PointDoc::new(p),
        point_kind: format!("{kind:?}").to_lowercase(),
        is_sg: None,
        trivially_sg: false,
        galois: Vec::new(),
        witnesses,
        witness_valid: Some(valid),
    };
    Ok((if valid { 0 } else { EXIT_NEGATIVE }, s, body))
}

fn run_suite() -> Ran {
    let rows = paper_suite();
    let mut s = String::new();
    for r in &rows {
        writeln!(s, "{:>3}  {:<10}  {}", r.id, r.status.label(), r.name).ok();
        if !r.detail.is_empty() {
            writeln!(s, "     {:<10}  {}", "", r.detail).ok();
        }
    }
    let fails = rows.iter().filter(|r| r.status == SuiteStatus::Fail).count();
    let unresolved = rows.iter().filter(|r| r.status == SuiteStatus::Unresolved).count();
    writeln!(s, "{} of {} passed", rows.len() - fails - unresolved, rows.len()).ok();
    let code = if fails > 0 {
        EXIT_NEGATIVE
    } else if unresolved > 0 {
        EXIT_UNRESOLVED
    } else {
        0
    };
    let docs = rows
        .iter()
        .map(|r| SuiteRowDoc {
            id: r.id,
            name: r.name.into(),
            status: r.status.label().to_lowercase(),
            detail: r.detail.clone(),
        })
        .collect();
    (code, s, ReportBody::PaperSuite { rows: docs, all_pass: code == 0 })
}
