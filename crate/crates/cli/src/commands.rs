//! Command dispatch and report assembly.

use std::fmt::{self, Write as _};

use rbfam::algebra::{check_algebra, check_bimodule, check_rb_family, check_rel_rbf, RelRBFamily};
use rbfam::complex::DegreeDims;
use rbfam::deformations::{check_deformation, classify_infinitesimals, residual};
use rbfam::dendriform::{check_dend_family, induced_dend_family, tot_construction};
use rbfam::homotopy::{
    check_ainf, check_dendinf, check_homotopy_rbf, check_representation, check_strict, dendinf_to_strict,
    strict_to_dendinf, HomotopyRBFamily,
};
use rbfam::operator_complex::{cohomology_r, mc_check};
use rbfam::rbfam_cohomology::{cohomology_hoch, cohomology_rbf, cohomology_rrbf, les_check};
use rbfam::{check_semigroup, Error, Limits, Report, Q};
use serde_json::{json, Map, Value};

use crate::manifest::{self, InputError, Kind, Manifest, Structure};

pub const SCHEMA: &str = "rbfam-report/1";

/// Default size guards, lifted by `--cap-override`.
pub const MAX_OMEGA: usize = 6;
pub const MAX_DIM: usize = 6;
pub const MAX_DEGREE: usize = 5;
pub const MAX_ARITY: usize = 5;

const DEFAULT_DEGREE: usize = 3;
const DEFAULT_ARITY: usize = 3;
/// Coordinate cap per cochain space.
pub const DEFAULT_COORDINATES: usize = 8192;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Command {
    /// Check every axiom of the structure.
    Validate,
    /// Compare the Maurer-Cartan equation with the direct identity.
    McCheck,
    /// Cochain, cocycle, coboundary and cohomology dimensions per degree.
    Cohomology,
    /// Exactness of the long exact sequence at every node.
    Les,
    /// Deformation equations of a jet, order by order.
    DeformCheck,
    /// Infinitesimal deformations up to equivalence.
    Classify,
    /// The dendriform family induced by a relative family.
    DendInduce,
    /// The Tot relative family of a dendriform family.
    Tot,
    /// Homotopy identities up to the arity bound.
    HomotopyCheck,
    /// Dend∞ families to strict homotopy families and back.
    Transfer,
}

impl Command {
    pub const ALL: [Command; 10] = [
        Command::Validate,
        Command::McCheck,
        Command::Cohomology,
        Command::Les,
        Command::DeformCheck,
        Command::Classify,
        Command::DendInduce,
        Command::Tot,
        Command::HomotopyCheck,
        Command::Transfer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::McCheck => "mc-check",
            Command::Cohomology => "cohomology",
            Command::Les => "les",
            Command::DeformCheck => "deform-check",
            Command::Classify => "classify",
            Command::DendInduce => "dend-induce",
            Command::Tot => "tot",
            Command::HomotopyCheck => "homotopy-check",
            Command::Transfer => "transfer",
        }
    }

    pub fn accepts(self) -> &'static [Kind] {
        use Kind::*;
        match self {
            Command::Validate => &Kind::ALL,
            Command::McCheck | Command::Classify | Command::DendInduce => &[RelRbf, RbFamily],
            Command::Cohomology => &[Algebra, RelRbf, RbFamily],
            Command::Les => &[RbFamily],
            Command::DeformCheck => &[Jet],
            Command::Tot => &[DendFamily],
            Command::HomotopyCheck => &[Ainf, HomotopyRbf, Dendinf],
            Command::Transfer => &[HomotopyRbf, Dendinf],
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Machine,
}

/// Options from the command line; unset values fall back to the manifest.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub max_degree: Option<usize>,
    pub max_arity: Option<usize>,
    pub format: Format,
    pub cap_override: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("{command} does not accept kind {kind}; expected {expected}")]
    KindMismatch { command: Command, kind: Kind, expected: String },
    #[error("{0}")]
    Options(String),
    #[error("size guard: {0}")]
    SizeGuard(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::SizeGuard(_) => 3,
            _ => 2,
        }
    }

    fn class(&self) -> &'static str {
        match self {
            CliError::Input(InputError::Syntax { .. }) => "syntax",
            CliError::Input(InputError::Semantic { .. }) => "semantic",
            CliError::KindMismatch { .. } => "kind-mismatch",
            CliError::Options(_) => "options",
            CliError::SizeGuard(_) => "size-guard",
        }
    }
}

/// Options after merging flags, manifest defaults and built-in defaults.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Effective {
    pub max_degree: usize,
    pub max_arity: usize,
    pub limits: Limits,
    pub cap_override: bool,
}

impl Effective {
    fn to_value(self) -> Value {
        json!({
            "max_degree": self.max_degree,
            "max_arity": self.max_arity,
            "max_coordinates": self.limits.max_coordinates,
            "cap_override": self.cap_override,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Violations counted, including those beyond the report cap.
    pub total: usize,
    pub violations: Vec<(String, String)>,
    pub detail: Option<String>,
}

impl Check {
    fn from_report(name: &str, r: &Report) -> Self {
        Check {
            name: name.into(),
            passed: r.is_ok(),
            total: r.total(),
            violations: r.violations().iter().map(|v| (v.rule.clone(), v.location.clone())).collect(),
            detail: None,
        }
    }

    fn verdict(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            total: usize::from(!passed),
            violations: Vec::new(),
            detail: Some(detail.into()),
        }
    }

    fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("name".into(), json!(self.name));
        m.insert("passed".into(), json!(self.passed));
        m.insert("total".into(), json!(self.total));
        m.insert(
            "violations".into(),
            Value::Array(self.violations.iter().map(|(r, l)| json!({"rule": r, "location": l})).collect()),
        );
        if let Some(d) = &self.detail {
            m.insert("detail".into(), json!(d));
        }
        Value::Object(m)
    }
}

/// The outcome of one successful run.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub command: Command,
    pub kind: Kind,
    pub options: Effective,
    pub checks: Vec<Check>,
    /// Human summary lines, printed after the checks.
    pub lines: Vec<String>,
    pub results: Map<String, Value>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "version": rbfam::VERSION,
            "command": self.command.name(),
            "kind": self.kind.tag(),
            "options": self.options.to_value(),
            "passed": self.passed(),
            "checks": self.checks.iter().map(Check::to_value).collect::<Vec<_>>(),
            "results": Value::Object(self.results.clone()),
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => one_line(&self.to_value()),
            Format::Human => self.human(),
        }
    }

    fn human(&self) -> String {
        let mut s = String::new();
        let o = self.options;
        let _ = writeln!(s, "rbfam {} {} on {}", rbfam::VERSION, self.command, self.kind);
        let _ = writeln!(
            s,
            "options: max-degree {} max-arity {} max-coordinates {}{}",
            o.max_degree,
            o.max_arity,
            o.limits.max_coordinates,
            if o.cap_override { " (caps overridden)" } else { "" }
        );
        for c in &self.checks {
            let _ = write!(s, "[{}] {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
            if let Some(d) = &c.detail {
                let _ = write!(s, ": {d}");
            } else if !c.passed {
                let _ = write!(s, ": {} violation(s)", c.total);
            }
            s.push('\n');
            for (rule, at) in &c.violations {
                let _ = writeln!(s, "    {rule} at {at}");
            }
            if c.total > c.violations.len() && !c.violations.is_empty() {
                let _ = writeln!(s, "    ... {} more", c.total - c.violations.len());
            }
        }
        for line in &self.lines {
            let _ = writeln!(s, "{line}");
        }
        let _ = writeln!(s, "verdict: {}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}

pub fn error_record(command: Command, e: &CliError) -> Value {
    json!({
        "schema": SCHEMA,
        "version": rbfam::VERSION,
        "command": command.name(),
        "error": {"class": e.class(), "message": e.to_string()},
    })
}

/// Compact JSON on a single line.
pub fn one_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values serialize");
    s.push('\n');
    s
}

/// Parses, runs and renders: the text to print on standard output, and the
/// exit status.
pub fn execute(command: Command, manifest_text: &str, opts: &RunOptions) -> (String, u8) {
    let outcome = manifest::parse_manifest(manifest_text)
        .map_err(CliError::from)
        .and_then(|m| run(command, &m, opts));
    match outcome {
        Ok(o) => (o.render(opts.format), o.exit_code()),
        Err(e) => {
            let text = match opts.format {
                Format::Machine => one_line(&error_record(command, &e)),
                Format::Human => format!("error: {e}\n"),
            };
            (text, e.exit_code())
        }
    }
}

fn natural_arity(s: &Structure) -> Option<usize> {
    match s {
        Structure::Ainf(a) => Some(a.max_arity()),
        Structure::HomotopyRbf(h) => Some(h.max_arity()),
        Structure::Dendinf(d) => Some(d.max_arity()),
        _ => None,
    }
}

pub fn effective(m: &Manifest, opts: &RunOptions) -> Result<Effective, CliError> {
    let natural = natural_arity(&m.structure);
    let max_degree = opts.max_degree.or(m.options.max_degree).unwrap_or(DEFAULT_DEGREE);
    let max_arity = opts.max_arity.or(m.options.max_arity).or(natural).unwrap_or(DEFAULT_ARITY);
    if max_degree == 0 || max_arity == 0 {
        return Err(CliError::Options("max-degree and max-arity must be at least 1".into()));
    }
    if let Some(n) = natural {
        if max_arity > n {
            return Err(CliError::Options(format!("max-arity {max_arity} exceeds the arity {n} carried by the structure")));
        }
    }
    let limits = if opts.cap_override {
        Limits::unlimited()
    } else {
        Limits {
            max_coordinates: m.options.max_coordinates.unwrap_or(DEFAULT_COORDINATES),
        }
    };
    let eff = Effective {
        max_degree,
        max_arity,
        limits,
        cap_override: opts.cap_override,
    };
    if !opts.cap_override {
        let guards = [
            ("|Ω|", m.structure.omega_size(), MAX_OMEGA),
            ("dimension", m.structure.max_dim(), MAX_DIM),
            ("max-degree", max_degree, MAX_DEGREE),
            ("max-arity", max_arity, MAX_ARITY),
        ];
        for (what, value, cap) in guards {
            if value > cap {
                return Err(CliError::SizeGuard(format!("{what} is {value}, cap is {cap}; pass --cap-override to proceed")));
            }
        }
    }
    Ok(eff)
}

pub fn run(command: Command, m: &Manifest, opts: &RunOptions) -> Result<Outcome, CliError> {
    let kind = m.kind();
    if !command.accepts().contains(&kind) {
        let expected: Vec<&str> = command.accepts().iter().map(|k| k.tag()).collect();
        return Err(CliError::KindMismatch {
            command,
            kind,
            expected: expected.join(", "),
        });
    }
    let options = effective(m, opts)?;
    let mut out = Outcome {
        command,
        kind,
        options,
        checks: Vec::new(),
        lines: Vec::new(),
        results: Map::new(),
    };
    match dispatch(command, &m.structure, options, &mut out) {
        Ok(()) => Ok(out),
        Err(Error::SizeGuard { what, needed, cap }) => Err(CliError::SizeGuard(format!(
            "{what} needs {needed} coordinates, cap is {cap}; pass --cap-override to proceed"
        ))),
        Err(Error::Invalid { context, report }) => {
            out.checks.push(Check::from_report(&context, &report));
            Ok(out)
        }
        Err(e) => {
            out.checks.push(Check::verdict("precondition", false, e.to_string()));
            Ok(out)
        }
    }
}

type Step = rbfam::Result<()>;

fn relative(s: &Structure) -> Option<RelRBFamily<Q>> {
    match s {
        Structure::RelRbf(s) => Some(s.clone()),
        Structure::RbFamily(rb) => Some(rb.as_relative()),
        _ => None,
    }
}

fn dispatch(command: Command, s: &Structure, o: Effective, out: &mut Outcome) -> Step {
    match command {
        Command::Validate => validate(s, o, out),
        Command::McCheck => mc(&relative(s).expect("kind checked"), out),
        Command::Cohomology => cohomology(s, o, out),
        Command::Les => match s {
            Structure::RbFamily(rb) => {
                let les = les_check(rb, o.max_degree, &o.limits)?;
                out.checks.push(Check::from_report("long exact sequence", &les.report));
                for node in &les.nodes {
                    let verdict = if node.exact { "exact" } else { "NOT exact" };
                    out.lines.push(format!(
                        "degree {} {:<6} dim {:>3}  rank in {:>3}  rank out {:>3}  {verdict}",
                        node.degree, node.group.to_string(), node.dim, node.rank_in, node.rank_out
                    ));
                }
                out.results.insert("operator".into(), dims_value(&les.operator));
                out.results.insert("rb_family".into(), dims_value(&les.rb_family));
                out.results.insert("hochschild".into(), dims_value(&les.hochschild));
                let nodes = les
                    .nodes
                    .iter()
                    .map(|n| {
                        json!({
                            "degree": n.degree,
                            "group": n.group.to_string(),
                            "dim": n.dim,
                            "rank_in": n.rank_in,
                            "rank_out": n.rank_out,
                            "composite_zero": n.composite_zero,
                            "exact": n.exact,
                        })
                    })
                    .collect();
                out.results.insert("nodes".into(), Value::Array(nodes));
                Ok(())
            }
            _ => unreachable!("kind checked"),
        },
        Command::DeformCheck => match s {
            Structure::Jet(j) => {
                let report = check_deformation(j, j.order())?;
                out.checks.push(Check::from_report("deformation equations", &report));
                let mut through = None;
                for k in 0..=j.order() {
                    if !residual(j, k)?.is_zero() {
                        break;
                    }
                    through = Some(k);
                }
                let holds = through.map_or("no order".to_string(), |k| format!("order {k}"));
                out.lines.push(format!("jet of order {}; equations hold through {holds}", j.order()));
                out.results.insert("order".into(), json!(j.order()));
                out.results.insert("holds_through".into(), json!(through));
                Ok(())
            }
            _ => unreachable!("kind checked"),
        },
        Command::Classify => classify(&relative(s).expect("kind checked"), o, out),
        Command::DendInduce => {
            let rel = relative(s).expect("kind checked");
            let d = induced_dend_family(&rel)?;
            out.checks.push(Check::from_report("induced dendriform family", &check_dend_family(&d)));
            emit(out, Structure::DendFamily(d));
            Ok(())
        }
        Command::Tot => match s {
            Structure::DendFamily(d) => {
                let t = tot_construction(d)?;
                out.checks.push(Check::from_report("Tot relative family", &check_rel_rbf(&t)));
                let back = induced_dend_family(&t)?;
                out.checks.push(Check::verdict(
                    "round trip",
                    back == *d,
                    "inducing from Tot gives back the input",
                ));
                emit(out, Structure::RelRbf(t));
                Ok(())
            }
            _ => unreachable!("kind checked"),
        },
        Command::HomotopyCheck => homotopy(s, o, out),
        Command::Transfer => transfer(s, o, out),
    }
}

fn emit(out: &mut Outcome, s: Structure) {
    let kind = s.kind();
    out.lines.push(format!("output: {kind} manifest (machine format, results.output)"));
    out.results.insert("output".into(), Manifest::new(s).to_value());
}

fn validate(s: &Structure, o: Effective, out: &mut Outcome) -> Step {
    let n = o.max_arity;
    let report = match s {
        Structure::Algebra(a) => check_algebra(a),
        Structure::RelRbf(s) => check_rel_rbf(s),
        Structure::RbFamily(rb) => check_rb_family(rb),
        Structure::DendFamily(d) => check_dend_family(d),
        Structure::Jet(j) => check_deformation(j, j.order())?,
        Structure::Ainf(a) => check_ainf(a, n)?,
        Structure::HomotopyRbf(h) => return hrbf_checks(h, n, out),
        Structure::Dendinf(d) => check_dendinf(d, n)?,
    };
    out.checks.push(Check::from_report(report.name(), &report));
    Ok(())
}

fn components(s: &RelRBFamily<Q>) -> rbfam::Result<Report> {
    let mut r = Report::new("components");
    r.absorb(check_semigroup(s.omega()));
    r.absorb(check_algebra(s.algebra()));
    r.absorb(check_bimodule(s.algebra(), s.module())?);
    Ok(r)
}

fn mc(s: &RelRBFamily<Q>, out: &mut Outcome) -> Step {
    let parts = components(s)?;
    out.checks.push(Check::from_report("algebra and bimodule axioms", &parts));
    if !parts.is_ok() {
        return Ok(());
    }
    let mc = mc_check(s);
    let direct = check_rel_rbf(s);
    out.checks.push(Check::from_report("Maurer-Cartan equation", &mc));
    out.checks.push(Check::from_report("Rota-Baxter family identity", &direct));
    let agree = mc.is_ok() == direct.is_ok();
    out.checks.push(Check::verdict(
        "characterizations agree",
        agree,
        format!("Maurer-Cartan {}, direct identity {}", holds(mc.is_ok()), holds(direct.is_ok())),
    ));
    out.results.insert("maurer_cartan".into(), json!(mc.is_ok()));
    out.results.insert("direct".into(), json!(direct.is_ok()));
    Ok(())
}

fn holds(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

fn dims_value(dims: &[DegreeDims]) -> Value {
    Value::Array(
        dims.iter()
            .map(|d| json!({"degree": d.degree, "C": d.cochains, "Z": d.cocycles, "B": d.coboundaries, "H": d.cohomology}))
            .collect(),
    )
}

fn dims_lines(title: &str, dims: &[DegreeDims], lines: &mut Vec<String>) {
    lines.push(format!("{title}:"));
    lines.push(format!("  {:>6} {:>8} {:>8} {:>8} {:>8}", "degree", "C", "Z", "B", "H"));
    for d in dims {
        lines.push(format!(
            "  {:>6} {:>8} {:>8} {:>8} {:>8}",
            d.degree, d.cochains, d.cocycles, d.coboundaries, d.cohomology
        ));
    }
}

fn cohomology(s: &Structure, o: Effective, out: &mut Outcome) -> Step {
    let n = o.max_degree;
    let mut groups: Vec<(&str, &str, Vec<DegreeDims>)> = Vec::new();
    match s {
        Structure::Algebra(a) => {
            let report = check_algebra(a);
            out.checks.push(Check::from_report(report.name(), &report));
            if !report.is_ok() {
                return Ok(());
            }
            groups.push(("hochschild", "Hochschild cohomology", cohomology_hoch(a, n, &o.limits)?));
        }
        Structure::RelRbf(_) | Structure::RbFamily(_) => {
            let rel = relative(s).expect("relative kinds");
            let report = check_rel_rbf(&rel);
            out.checks.push(Check::from_report(report.name(), &report));
            if !report.is_ok() {
                return Ok(());
            }
            let op = cohomology_r(&rel, n, &o.limits)?;
            groups.push(("operator", "operator cohomology, degree-0 cochains included", op.with_elements));
            groups.push(("operator_from_degree_1", "operator cohomology, from degree 1", op.without_elements));
            groups.push(("relative", "relative family cohomology", cohomology_rrbf(&rel, n, &o.limits)?));
            if let Structure::RbFamily(rb) = s {
                groups.push(("rb_family", "Rota-Baxter family cohomology", cohomology_rbf(rb, n, &o.limits)?));
                groups.push(("hochschild", "Hochschild cohomology", cohomology_hoch(rb.algebra(), n, &o.limits)?));
            }
        }
        _ => unreachable!("kind checked"),
    }
    for (key, title, dims) in groups {
        dims_lines(title, &dims, &mut out.lines);
        out.results.insert(key.into(), dims_value(&dims));
    }
    Ok(())
}

fn classify(s: &RelRBFamily<Q>, o: Effective, out: &mut Outcome) -> Step {
    let c = classify_infinitesimals(s, &o.limits)?;
    let h2 = cohomology_rrbf(s, 2, &o.limits)?[1].cohomology;
    out.checks.push(Check::verdict(
        "classes match cohomology",
        c.dimension() == h2,
        format!("{} class(es), second cohomology has dimension {h2}", c.dimension()),
    ));
    let mut failing = 0;
    for j in c.representative_jets()? {
        if !check_deformation(&j, 1)?.is_ok() {
            failing += 1;
        }
    }
    out.checks.push(Check::verdict(
        "representatives are deformations",
        failing == 0,
        format!("{} of {} order-1 jets satisfy the equations", c.dimension() - failing, c.dimension()),
    ));
    out.lines.push(format!("{} independent infinitesimal deformation class(es)", c.dimension()));
    let reps: Vec<Value> = c.representatives().iter().map(|z| manifest::vector(&z.to_vector())).collect();
    for (i, r) in reps.iter().enumerate() {
        out.lines.push(format!("  class {i}: {}", serde_json::to_string(r).expect("values serialize")));
    }
    out.results.insert("dimension".into(), json!(c.dimension()));
    out.results.insert("representatives".into(), Value::Array(reps));
    Ok(())
}

fn hrbf_checks(h: &HomotopyRBFamily<Q>, n: usize, out: &mut Outcome) -> Step {
    let a = check_ainf(h.algebra(), n)?;
    let rep = check_representation(h.algebra(), h.module(), n)?;
    out.checks.push(Check::from_report("A∞ algebra", &a));
    out.checks.push(Check::from_report("A∞ representation", &rep));
    if !(a.is_ok() && rep.is_ok()) {
        return Ok(());
    }
    out.checks.push(Check::from_report("homotopy Rota-Baxter identities", &check_homotopy_rbf(h, n)?));
    if h.is_strict() {
        out.checks.push(Check::from_report("strict identities", &check_strict(h, n)?));
    }
    out.results.insert("strict".into(), json!(h.is_strict()));
    Ok(())
}

fn homotopy(s: &Structure, o: Effective, out: &mut Outcome) -> Step {
    let n = o.max_arity;
    match s {
        Structure::Ainf(a) => out.checks.push(Check::from_report("A∞ algebra", &check_ainf(a, n)?)),
        Structure::HomotopyRbf(h) => hrbf_checks(h, n, out)?,
        Structure::Dendinf(d) => out.checks.push(Check::from_report("Dend∞ family", &check_dendinf(d, n)?)),
        _ => unreachable!("kind checked"),
    }
    out.lines.push(format!("identities checked for n ≤ {n}"));
    Ok(())
}

fn transfer(s: &Structure, o: Effective, out: &mut Outcome) -> Step {
    let n = o.max_arity;
    match s {
        Structure::Dendinf(d) => {
            out.checks.push(Check::from_report("input Dend∞ family", &check_dendinf(d, n)?));
            let h = dendinf_to_strict(d);
            hrbf_checks(&h, n, out)?;
            let back = strict_to_dendinf(&h)?;
            out.checks.push(Check::verdict("round trip", back == *d, "transferring back gives the input"));
            emit(out, Structure::HomotopyRbf(h));
        }
        Structure::HomotopyRbf(h) => {
            hrbf_checks(h, n, out)?;
            let d = strict_to_dendinf(h)?;
            out.checks.push(Check::from_report("output Dend∞ family", &check_dendinf(&d, n.min(d.max_arity()))?));
            emit(out, Structure::Dendinf(d));
        }
        _ => unreachable!("kind checked"),
    }
    Ok(())
}
