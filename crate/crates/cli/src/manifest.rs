//! The JSON manifest format shared by every command.
//!
//! A manifest is an object `{"kind": ..., "options": {...}, "payload": {...}}`.
//! Scalars are written as strings `"p/q"` or `"n"`; plain JSON integers are
//! accepted on input. Multilinear maps of the graded kinds are sparse: a list
//! of `{"labels", "inputs", "value"}` entries, absent entries being zero.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use rbfam::algebra::{adjoint_bimodule, AssocAlgebra, Bimodule, OperatorFamily, RBFamily, RelRBFamily};
use rbfam::deformations::DeformationJet;
use rbfam::dendriform::DendFamily;
use rbfam::homotopy::{AInfRepresentation, AInfStructure, DendInfFamily, GradedSpace, HomotopyRBFamily};
use rbfam::rbfam_cohomology::block_source;
use rbfam::tensor::tuples;
use rbfam::{check_semigroup, Matrix, Multilinear, OmegaMap, Semigroup, Q};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Semantic { path: String, message: String },
}

type Result<T> = std::result::Result<T, InputError>;

/// `(labels, inputs, value)` of one sparse entry.
type Entry = (Vec<usize>, Vec<usize>, Vec<Q>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Algebra,
    RelRbf,
    RbFamily,
    DendFamily,
    Jet,
    Ainf,
    HomotopyRbf,
    Dendinf,
}

impl Kind {
    pub const ALL: [Kind; 8] = [
        Kind::Algebra,
        Kind::RelRbf,
        Kind::RbFamily,
        Kind::DendFamily,
        Kind::Jet,
        Kind::Ainf,
        Kind::HomotopyRbf,
        Kind::Dendinf,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Kind::Algebra => "algebra",
            Kind::RelRbf => "rel-rbf",
            Kind::RbFamily => "rb-family",
            Kind::DendFamily => "dend-family",
            Kind::Jet => "jet",
            Kind::Ainf => "ainf",
            Kind::HomotopyRbf => "homotopy-rbf",
            Kind::Dendinf => "dendinf",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Kind::ALL
            .into_iter()
            .find(|k| k.tag() == s)
            .ok_or_else(|| format!("unknown kind {s:?}"))
    }
}

/// Defaults a manifest may carry; command-line flags take precedence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ManifestOptions {
    pub max_degree: Option<usize>,
    pub max_arity: Option<usize>,
    /// Cap on the coordinates of any single cochain space.
    pub max_coordinates: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Structure {
    Algebra(AssocAlgebra<Q>),
    RelRbf(RelRBFamily<Q>),
    RbFamily(RBFamily<Q>),
    DendFamily(DendFamily<Q>),
    Jet(DeformationJet<Q>),
    Ainf(AInfStructure<Q>),
    HomotopyRbf(HomotopyRBFamily<Q>),
    Dendinf(DendInfFamily<Q>),
}

impl Structure {
    pub fn kind(&self) -> Kind {
        match self {
            Structure::Algebra(_) => Kind::Algebra,
            Structure::RelRbf(_) => Kind::RelRbf,
            Structure::RbFamily(_) => Kind::RbFamily,
            Structure::DendFamily(_) => Kind::DendFamily,
            Structure::Jet(_) => Kind::Jet,
            Structure::Ainf(_) => Kind::Ainf,
            Structure::HomotopyRbf(_) => Kind::HomotopyRbf,
            Structure::Dendinf(_) => Kind::Dendinf,
        }
    }

    /// `|Ω|`, or 1 for kinds without labels.
    pub fn omega_size(&self) -> usize {
        match self {
            Structure::Algebra(_) | Structure::Ainf(_) => 1,
            Structure::RelRbf(s) => s.omega().size(),
            Structure::RbFamily(rb) => rb.omega().size(),
            Structure::DendFamily(d) => d.omega().size(),
            Structure::Jet(j) => j.base().omega().size(),
            Structure::HomotopyRbf(h) => h.omega().size(),
            Structure::Dendinf(d) => d.omega().size(),
        }
    }

    /// The largest dimension of any underlying space.
    pub fn max_dim(&self) -> usize {
        match self {
            Structure::Algebra(a) => a.dim(),
            Structure::RelRbf(s) => s.dim_a().max(s.dim_m()),
            Structure::RbFamily(rb) => rb.dim(),
            Structure::DendFamily(d) => d.dim(),
            Structure::Jet(j) => j.base().dim_a().max(j.base().dim_m()),
            Structure::Ainf(a) => a.dim(),
            Structure::HomotopyRbf(h) => h.algebra().dim().max(h.module().dim()),
            Structure::Dendinf(d) => d.dim(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Manifest {
    pub options: ManifestOptions,
    pub structure: Structure,
}

impl Manifest {
    pub fn new(structure: Structure) -> Self {
        Manifest {
            options: ManifestOptions::default(),
            structure,
        }
    }

    pub fn kind(&self) -> Kind {
        self.structure.kind()
    }

    pub fn to_value(&self) -> Value {
        let mut top = Map::new();
        top.insert("kind".into(), json!(self.kind().tag()));
        let mut opts = Map::new();
        for (key, v) in [
            ("max_degree", self.options.max_degree),
            ("max_arity", self.options.max_arity),
            ("max_coordinates", self.options.max_coordinates),
        ] {
            if let Some(v) = v {
                opts.insert(key.into(), json!(v));
            }
        }
        if !opts.is_empty() {
            top.insert("options".into(), Value::Object(opts));
        }
        top.insert("payload".into(), payload(&self.structure));
        Value::Object(top)
    }

    /// Canonical text: pretty-printed with a trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }
}

pub fn parse_manifest(text: &str) -> Result<Manifest> {
    let value: Value = serde_json::from_str(text).map_err(|e| InputError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    from_value(&value)
}

pub fn from_value(value: &Value) -> Result<Manifest> {
    let root = Node::root(value);
    root.only(&["kind", "options", "payload"])?;
    let kind_node = root.get("kind")?;
    let kind: Kind = kind_node.str()?.parse().map_err(|e| kind_node.err(e))?;
    let options = match root.opt("options") {
        Some(o) => parse_options(&o)?,
        None => ManifestOptions::default(),
    };
    let p = root.get("payload")?;
    let structure = match kind {
        Kind::Algebra => Structure::Algebra(algebra(&p)?),
        Kind::RelRbf => Structure::RelRbf(rel_rbf(&p)?),
        Kind::RbFamily => Structure::RbFamily(rb_family(&p)?),
        Kind::DendFamily => Structure::DendFamily(dend_family(&p)?),
        Kind::Jet => Structure::Jet(jet(&p)?),
        Kind::Ainf => Structure::Ainf(ainf(&p)?),
        Kind::HomotopyRbf => Structure::HomotopyRbf(homotopy_rbf(&p)?),
        Kind::Dendinf => Structure::Dendinf(dendinf(&p)?),
    };
    Ok(Manifest { options, structure })
}

fn parse_options(o: &Node) -> Result<ManifestOptions> {
    o.only(&["max_degree", "max_arity", "max_coordinates"])?;
    let get = |k| o.opt(k).map(|n| n.usize()).transpose();
    Ok(ManifestOptions {
        max_degree: get("max_degree")?,
        max_arity: get("max_arity")?,
        max_coordinates: get("max_coordinates")?,
    })
}

/// A JSON value together with its path, for error messages.
#[derive(Clone)]
struct Node<'a> {
    v: &'a Value,
    path: String,
}

impl<'a> Node<'a> {
    fn root(v: &'a Value) -> Self {
        Node { v, path: "$".into() }
    }

    fn err(&self, message: impl Into<String>) -> InputError {
        InputError::Semantic {
            path: self.path.clone(),
            message: message.into(),
        }
    }

    fn object(&self) -> Result<&'a Map<String, Value>> {
        self.v.as_object().ok_or_else(|| self.err("expected an object"))
    }

    fn only(&self, keys: &[&str]) -> Result<()> {
        for k in self.object()?.keys() {
            if !keys.contains(&k.as_str()) {
                return Err(self.err(format!("unknown field {k:?}; expected one of {}", keys.join(", "))));
            }
        }
        Ok(())
    }

    fn opt(&self, key: &str) -> Option<Node<'a>> {
        self.v.get(key).map(|v| Node {
            v,
            path: format!("{}.{key}", self.path),
        })
    }

    fn get(&self, key: &str) -> Result<Node<'a>> {
        self.object()?;
        self.opt(key).ok_or_else(|| self.err(format!("missing field {key:?}")))
    }

    fn array(&self) -> Result<Vec<Node<'a>>> {
        let a = self.v.as_array().ok_or_else(|| self.err("expected an array"))?;
        Ok(a.iter()
            .enumerate()
            .map(|(i, v)| Node {
                v,
                path: format!("{}[{i}]", self.path),
            })
            .collect())
    }

    fn array_of(&self, len: usize, what: &str) -> Result<Vec<Node<'a>>> {
        let a = self.array()?;
        if a.len() != len {
            return Err(self.err(format!("expected {len} {what}, found {}", a.len())));
        }
        Ok(a)
    }

    fn str(&self) -> Result<&'a str> {
        self.v.as_str().ok_or_else(|| self.err("expected a string"))
    }

    fn usize(&self) -> Result<usize> {
        self.v
            .as_u64()
            .and_then(|n| usize::try_from(n).ok())
            .ok_or_else(|| self.err("expected a non-negative integer"))
    }

    fn i32(&self) -> Result<i32> {
        self.v
            .as_i64()
            .and_then(|n| i32::try_from(n).ok())
            .ok_or_else(|| self.err("expected an integer degree"))
    }

    fn rat(&self) -> Result<Q> {
        match self.v {
            Value::String(s) => parse_rational(s).ok_or_else(|| self.err(format!("{s:?} is not a rational of the form p/q"))),
            Value::Number(n) if n.is_i64() => Ok(Q::from_integer(n.as_i64().expect("checked").into())),
            _ => Err(self.err("expected a rational as a string \"p/q\" or an integer")),
        }
    }

    fn vector(&self, len: usize) -> Result<Vec<Q>> {
        self.array_of(len, "coordinates")?.iter().map(Node::rat).collect()
    }

    fn usizes(&self, len: usize, bound: usize, what: &str) -> Result<Vec<usize>> {
        let out: Vec<usize> = self.array_of(len, what)?.iter().map(Node::usize).collect::<Result<_>>()?;
        if let Some(&bad) = out.iter().find(|&&x| x >= bound) {
            return Err(self.err(format!("{what} entry {bad} is out of range 0..{bound}")));
        }
        Ok(out)
    }

    /// Dense `table[i][j]` = image of `(e_i, e_j)`.
    fn table(&self, rows: usize, cols: usize, target: usize) -> Result<Multilinear<Q>> {
        let mut data = Vec::with_capacity(rows * cols * target);
        for r in self.array_of(rows, "rows")? {
            for c in r.array_of(cols, "entries")? {
                data.extend(c.vector(target)?);
            }
        }
        Ok(Multilinear::from_coords(vec![rows, cols], target, data))
    }

    fn matrix(&self, rows: usize, cols: usize) -> Result<Matrix<Q>> {
        let data = self
            .array_of(rows, "rows")?
            .iter()
            .map(|r| r.vector(cols))
            .collect::<Result<Vec<_>>>()?;
        Ok(if rows == 0 { Matrix::zeros(0, cols) } else { Matrix::from_rows(data) })
    }

    /// Sparse entries; `labels` appear only when `omega` is given.
    fn entries(&self, omega: Option<&Semigroup>, source: &[usize], target: usize) -> Result<Vec<Entry>> {
        let mut seen = Vec::new();
        let mut out = Vec::new();
        for e in self.array()? {
            let labels = match omega {
                Some(o) => {
                    e.only(&["labels", "inputs", "value"])?;
                    e.get("labels")?.usizes(source.len(), o.size(), "labels")?
                }
                None => {
                    e.only(&["inputs", "value"])?;
                    Vec::new()
                }
            };
            let inputs_node = e.get("inputs")?;
            let inputs = inputs_node.usizes(source.len(), usize::MAX, "inputs")?;
            for (slot, (&i, &d)) in inputs.iter().zip(source).enumerate() {
                if i >= d {
                    return Err(inputs_node.err(format!("input {i} in slot {slot} is out of range 0..{d}")));
                }
            }
            let key = (labels.clone(), inputs.clone());
            if seen.contains(&key) {
                return Err(e.err("duplicate entry"));
            }
            seen.push(key);
            out.push((labels, inputs, e.get("value")?.vector(target)?));
        }
        Ok(out)
    }

    fn multilinear(&self, source: Vec<usize>, target: usize) -> Result<Multilinear<Q>> {
        let mut m = Multilinear::zeros(source.clone(), target);
        for (_, inputs, value) in self.entries(None, &source, target)? {
            m.at_mut(&inputs).clone_from_slice(&value);
        }
        Ok(m)
    }

    fn omega_map(&self, omega: &Arc<Semigroup>, source: Vec<usize>, target: usize) -> Result<OmegaMap<Q>> {
        let mut m = OmegaMap::zeros(omega.clone(), source.clone(), target);
        for (labels, inputs, value) in self.entries(Some(omega), &source, target)? {
            m.entry_mut(&labels).at_mut(&inputs).clone_from_slice(&value);
        }
        Ok(m)
    }
}

/// `"p/q"`, `"-p/q"` or `"n"`, with a nonzero denominator.
pub fn parse_rational(s: &str) -> Option<Q> {
    let digits = |t: &str| {
        let body = t.strip_prefix('-').unwrap_or(t);
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    if !digits(num) || !den.bytes().all(|b| b.is_ascii_digit()) || den.is_empty() {
        return None;
    }
    let den: num_bigint::BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Q::new(num.parse().ok()?, den))
}

fn semigroup(n: &Node) -> Result<Arc<Semigroup>> {
    n.only(&["elements", "table"])?;
    let t = n.get("table")?;
    let rows = t.array()?;
    let size = rows.len();
    let table = rows
        .iter()
        .map(|r| r.usizes(size, size, "products"))
        .collect::<Result<Vec<_>>>()?;
    let s = match n.opt("elements") {
        Some(names) => {
            let names = names
                .array_of(size, "names")?
                .iter()
                .map(|x| x.str().map(str::to_string))
                .collect::<Result<Vec<_>>>()?;
            Semigroup::with_names(names, table)
        }
        None => Semigroup::from_table(table),
    }
    .map_err(|e| t.err(e.to_string()))?;
    let report = check_semigroup(&s);
    if let Some(v) = report.violations().first() {
        return Err(t.err(format!("not associative at {} ({} failing triple(s))", v.location, report.total())));
    }
    Ok(Arc::new(s))
}

fn algebra(n: &Node) -> Result<AssocAlgebra<Q>> {
    n.only(&["dim", "table"])?;
    let d = n.get("dim")?.usize()?;
    let mul = n.get("table")?.table(d, d, d)?;
    AssocAlgebra::from_multilinear(mul).map_err(|e| n.err(e.to_string()))
}

fn module(n: &Node, alg: &AssocAlgebra<Q>) -> Result<Bimodule<Q>> {
    if n.v.as_str() == Some("adjoint") {
        return Ok(adjoint_bimodule(alg));
    }
    n.only(&["dim", "left", "right"])?;
    let (da, dm) = (alg.dim(), n.get("dim")?.usize()?);
    let left = n.get("left")?.table(da, dm, dm)?;
    let right = n.get("right")?.table(dm, da, dm)?;
    Bimodule::new(left, right).map_err(|e| n.err(e.to_string()))
}

fn operators(n: &Node, omega: &Semigroup, da: usize, dm: usize) -> Result<OperatorFamily<Q>> {
    let maps = n
        .array_of(omega.size(), "operators (one per label)")?
        .iter()
        .map(|m| m.matrix(da, dm))
        .collect::<Result<Vec<_>>>()?;
    OperatorFamily::new(maps).map_err(|e| n.err(e.to_string()))
}

fn rel_rbf(n: &Node) -> Result<RelRBFamily<Q>> {
    n.only(&["omega", "algebra", "module", "ops"])?;
    let omega = semigroup(&n.get("omega")?)?;
    let alg = algebra(&n.get("algebra")?)?;
    let m = module(&n.get("module")?, &alg)?;
    let ops = operators(&n.get("ops")?, &omega, alg.dim(), m.dim())?;
    RelRBFamily::with_shared(omega, alg, m, ops).map_err(|e| n.err(e.to_string()))
}

fn rb_family(n: &Node) -> Result<RBFamily<Q>> {
    n.only(&["omega", "algebra", "ops"])?;
    let omega = semigroup(&n.get("omega")?)?;
    let alg = algebra(&n.get("algebra")?)?;
    let ops = operators(&n.get("ops")?, &omega, alg.dim(), alg.dim())?;
    RBFamily::new((*omega).clone(), alg, ops).map_err(|e| n.err(e.to_string()))
}

fn dend_family(n: &Node) -> Result<DendFamily<Q>> {
    n.only(&["omega", "dim", "prec", "succ"])?;
    let omega = semigroup(&n.get("omega")?)?;
    let d = n.get("dim")?.usize()?;
    let tables = |key: &str| -> Result<Vec<Multilinear<Q>>> {
        n.get(key)?
            .array_of(omega.size(), "tables (one per label)")?
            .iter()
            .map(|t| t.table(d, d, d))
            .collect()
    };
    DendFamily::new(omega.clone(), tables("prec")?, tables("succ")?).map_err(|e| n.err(e.to_string()))
}

fn jet(n: &Node) -> Result<DeformationJet<Q>> {
    n.only(&["base", "slices"])?;
    let base = rel_rbf(&n.get("base")?)?;
    let (da, dm) = (base.dim_a(), base.dim_m());
    let (mut mu, mut l, mut r, mut ops) = (vec![], vec![], vec![], vec![]);
    for s in n.get("slices")?.array()? {
        s.only(&["mu", "left", "right", "ops"])?;
        mu.push(s.get("mu")?.table(da, da, da)?);
        l.push(s.get("left")?.table(da, dm, dm)?);
        r.push(s.get("right")?.table(dm, da, dm)?);
        ops.push(operators(&s.get("ops")?, base.omega(), da, dm)?);
    }
    DeformationJet::new(base, mu, l, r, ops).map_err(|e| n.err(e.to_string()))
}

fn graded_space(n: &Node) -> Result<GradedSpace> {
    let degrees = n.array()?.iter().map(Node::i32).collect::<Result<Vec<_>>>()?;
    Ok(GradedSpace::new(degrees))
}

fn ainf(n: &Node) -> Result<AInfStructure<Q>> {
    n.only(&["degrees", "mu"])?;
    let space = graded_space(&n.get("degrees")?)?;
    let d = space.dim();
    let mu = n
        .get("mu")?
        .array()?
        .iter()
        .enumerate()
        .map(|(k, m)| m.multilinear(vec![d; k + 1], d))
        .collect::<Result<Vec<_>>>()?;
    AInfStructure::new(space, mu).map_err(|e| n.err(e.to_string()))
}

fn homotopy_rbf(n: &Node) -> Result<HomotopyRBFamily<Q>> {
    n.only(&["omega", "algebra", "module", "r"])?;
    let omega = semigroup(&n.get("omega")?)?;
    let alg = ainf(&n.get("algebra")?)?;
    let mn = n.get("module")?;
    mn.only(&["degrees", "eta"])?;
    let space = graded_space(&mn.get("degrees")?)?;
    let (da, dm) = (alg.dim(), space.dim());
    let eta = mn
        .get("eta")?
        .array()?
        .iter()
        .enumerate()
        .map(|(i, blocks)| {
            let k = i + 1;
            blocks
                .array_of(k, "blocks")?
                .iter()
                .enumerate()
                .map(|(p, b)| b.multilinear(block_source(da, dm, k, p), dm))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let module = AInfRepresentation::new(space, alg.space(), eta).map_err(|e| mn.err(e.to_string()))?;
    let r = n
        .get("r")?
        .array()?
        .iter()
        .enumerate()
        .map(|(i, m)| m.omega_map(&omega, vec![dm; i + 1], da))
        .collect::<Result<Vec<_>>>()?;
    HomotopyRBFamily::new(omega, alg, module, r).map_err(|e| n.err(e.to_string()))
}

fn dendinf(n: &Node) -> Result<DendInfFamily<Q>> {
    n.only(&["omega", "degrees", "theta"])?;
    let omega = semigroup(&n.get("omega")?)?;
    let space = graded_space(&n.get("degrees")?)?;
    let d = space.dim();
    let theta = n
        .get("theta")?
        .array()?
        .iter()
        .enumerate()
        .map(|(i, sel)| {
            let k = i + 1;
            sel.array_of(k, "selectors")?
                .iter()
                .map(|m| m.omega_map(&omega, vec![d; k], d))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    DendInfFamily::new(space, omega, theta).map_err(|e| n.err(e.to_string()))
}

// Serialization.

pub fn rat(q: &Q) -> Value {
    Value::String(q.to_string())
}

pub fn vector(v: &[Q]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

fn table_value(m: &Multilinear<Q>) -> Value {
    let (rows, cols) = (m.source()[0], m.source()[1]);
    Value::Array(
        (0..rows)
            .map(|i| Value::Array((0..cols).map(|j| vector(m.at(&[i, j]))).collect()))
            .collect(),
    )
}

fn matrix_value(m: &Matrix<Q>) -> Value {
    Value::Array((0..m.rows()).map(|i| vector(m.row(i))).collect())
}

fn sparse_value(m: &Multilinear<Q>, labels: Option<&[usize]>, out: &mut Vec<Value>) {
    for idx in tuples(m.source()) {
        let v = m.at(&idx);
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        let mut e = Map::new();
        if let Some(l) = labels {
            e.insert("labels".into(), json!(l));
        }
        e.insert("inputs".into(), json!(idx));
        e.insert("value".into(), vector(v));
        out.push(Value::Object(e));
    }
}

fn multilinear_value(m: &Multilinear<Q>) -> Value {
    let mut out = Vec::new();
    sparse_value(m, None, &mut out);
    Value::Array(out)
}

fn omega_map_value(m: &OmegaMap<Q>) -> Value {
    let mut out = Vec::new();
    for labels in m.omega().tuples(m.arity()) {
        sparse_value(m.entry(&labels), Some(&labels), &mut out);
    }
    Value::Array(out)
}

fn semigroup_value(s: &Semigroup) -> Value {
    json!({ "elements": s.names(), "table": s.table() })
}

fn algebra_value(a: &AssocAlgebra<Q>) -> Value {
    json!({ "dim": a.dim(), "table": table_value(a.mul_map()) })
}

fn module_value(m: &Bimodule<Q>) -> Value {
    json!({ "dim": m.dim(), "left": table_value(m.left()), "right": table_value(m.right()) })
}

fn ops_value(ops: &OperatorFamily<Q>) -> Value {
    Value::Array(ops.matrices().iter().map(matrix_value).collect())
}

fn rel_value(s: &RelRBFamily<Q>) -> Value {
    json!({
        "omega": semigroup_value(s.omega()),
        "algebra": algebra_value(s.algebra()),
        "module": module_value(s.module()),
        "ops": ops_value(s.ops()),
    })
}

fn ainf_value(a: &AInfStructure<Q>) -> Value {
    json!({
        "degrees": a.space().degrees(),
        "mu": a.mus().iter().map(multilinear_value).collect::<Vec<_>>(),
    })
}

fn payload(s: &Structure) -> Value {
    match s {
        Structure::Algebra(a) => algebra_value(a),
        Structure::RelRbf(s) => rel_value(s),
        Structure::RbFamily(rb) => json!({
            "omega": semigroup_value(rb.omega()),
            "algebra": algebra_value(rb.algebra()),
            "ops": ops_value(rb.ops()),
        }),
        Structure::DendFamily(d) => {
            let n = d.omega().size();
            json!({
                "omega": semigroup_value(d.omega()),
                "dim": d.dim(),
                "prec": (0..n).map(|a| table_value(d.prec(a))).collect::<Vec<_>>(),
                "succ": (0..n).map(|a| table_value(d.succ(a))).collect::<Vec<_>>(),
            })
        }
        Structure::Jet(j) => json!({
            "base": rel_value(j.base()),
            "slices": (1..=j.order()).map(|i| json!({
                "mu": table_value(j.mu(i)),
                "left": table_value(j.l(i)),
                "right": table_value(j.r(i)),
                "ops": ops_value(j.ops(i)),
            })).collect::<Vec<_>>(),
        }),
        Structure::Ainf(a) => ainf_value(a),
        Structure::HomotopyRbf(h) => {
            let m = h.module();
            json!({
                "omega": semigroup_value(h.omega()),
                "algebra": ainf_value(h.algebra()),
                "module": {
                    "degrees": m.space().degrees(),
                    "eta": (1..=m.max_arity())
                        .map(|k| (0..k).map(|p| multilinear_value(m.eta(k, p))).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                },
                "r": h.rs().iter().map(omega_map_value).collect::<Vec<_>>(),
            })
        }
        Structure::Dendinf(d) => json!({
            "omega": semigroup_value(d.omega()),
            "degrees": d.space().degrees(),
            "theta": (1..=d.max_arity())
                .map(|k| (1..=k).map(|r| omega_map_value(d.theta(k, r))).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/6"), Some(Q::new((-1).into(), 2.into())));
        assert_eq!(parse_rational("7"), Some(Q::from_integer(7.into())));
        for bad in ["", "1/0", "0.5", "1/-2", "--1", "1/", "a"] {
            assert_eq!(parse_rational(bad), None, "{bad}");
        }
    }

    #[test]
    fn kind_tags_round_trip() {
        for k in Kind::ALL {
            assert_eq!(k.tag().parse::<Kind>(), Ok(k));
        }
    }

    #[test]
    fn errors_carry_paths() {
        let text = r#"{"kind": "algebra", "payload": {"dim": 1, "table": [[["x"]]]}}"#;
        let err = parse_manifest(text).unwrap_err();
        assert!(err.to_string().starts_with("$.payload.table[0][0][0]:"), "{err}");
        let err = parse_manifest("{\"kind\": \n 3").unwrap_err();
        assert!(matches!(err, InputError::Syntax { line: 2, .. }), "{err}");
    }
}
