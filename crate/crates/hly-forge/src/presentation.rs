//! JSON presentations: a field and a map of named blocks, with tensors as
//! sparse `[indices…, numerator, denominator]` lists.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use hly_core::exact::Tuples;
use hly_core::ns::{NsHly, NsHomLie};
use hly_core::representations::{HlyRep, HomLieRep};
use hly_core::structures::{HlyAlgebra, HomLieAlgebra};
use hly_core::{Field, Matrix, Scalar, Tensor};
use num_bigint::BigInt;
use serde_json::{Map, Value};
use thiserror::Error;

pub const FORMAT_VERSION: &str = "1.0";

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{at}: {msg}")]
    At { at: String, msg: String },
}

fn err<T>(at: &str, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::At {
        at: at.to_string(),
        msg: msg.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    HomLie(HomLieAlgebra),
    Hly(HlyAlgebra),
    HomLieRep(HomLieRep),
    Rep(HlyRep),
    /// `F` of a Hom-Lie 2-cocycle.
    Cocycle2(Tensor),
    /// `(F, G)`; membership in the cochain spaces is checked on use.
    Cocycle {
        f: Tensor,
        g: Tensor,
    },
    /// A linear map together with optional weights `λ`, `μ`.
    Operator {
        map: Matrix,
        lambda: Option<Scalar>,
        mu: Option<Scalar>,
    },
    Morphism(Matrix),
    NsLie(NsHomLie),
    NsHly(NsHly),
    /// `T_1 … T_N` of a truncated deformation.
    Deformation {
        rows: usize,
        cols: usize,
        coefficients: Vec<Matrix>,
    },
}

impl Block {
    pub fn kind(&self) -> &'static str {
        match self {
            Block::HomLie(_) => "hom-lie",
            Block::Hly(_) => "hly",
            Block::HomLieRep(_) => "hom-lie-rep",
            Block::Rep(_) => "rep",
            Block::Cocycle2(_) => "cocycle2",
            Block::Cocycle { .. } => "cocycle",
            Block::Operator { .. } => "operator",
            Block::Morphism(_) => "morphism",
            Block::NsLie(_) => "ns-lie",
            Block::NsHly(_) => "ns-hly",
            Block::Deformation { .. } => "deformation",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub field: Field,
    pub blocks: BTreeMap<String, Block>,
}

/// Parse options: `field` overrides a rational file with GF(p); `strict`
/// rejects unknown keys.
#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    pub field: Option<Field>,
    pub strict: bool,
}

impl Presentation {
    pub fn new(field: Field) -> Self {
        Presentation {
            field,
            blocks: BTreeMap::new(),
        }
    }

    pub fn with(mut self, name: &str, block: Block) -> Self {
        self.blocks.insert(name.to_string(), block);
        self
    }

    pub fn parse(text: &str, opts: ParseOptions) -> Result<Self, ParseError> {
        let root: Value = serde_json::from_str(text)?;
        let Some(obj) = root.as_object() else {
            return err("$", "expected an object");
        };
        let cx = Ctx {
            strict: opts.strict,
        };
        cx.known("$", obj, &["format_version", "field", "blocks"])?;
        match obj.get("format_version").and_then(Value::as_str) {
            Some(FORMAT_VERSION) => {}
            Some(v) => return err("format_version", format!("unsupported version {v:?}")),
            None => return err("format_version", "missing"),
        }
        let declared = parse_field(obj.get("field"))?;
        let field = match (declared, opts.field) {
            (f, None) => f,
            (Field::Rational, Some(f)) => f,
            (f, Some(g)) if f == g => f,
            (f, Some(g)) => return err("field", format!("file is over {f} but {g} was requested")),
        };
        let mut blocks = BTreeMap::new();
        if let Some(b) = obj.get("blocks") {
            let Some(map) = b.as_object() else {
                return err("blocks", "expected an object");
            };
            for (name, v) in map {
                let at = format!("blocks.{name}");
                blocks.insert(name.clone(), cx.block(&at, v, field)?);
            }
        }
        Ok(Presentation { field, blocks })
    }

    /// Canonical text: fixed key order, entries sorted by index tuple,
    /// one entry per line, zero entries omitted.
    pub fn to_canonical(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n");
        let _ = writeln!(out, "  \"format_version\": \"{FORMAT_VERSION}\",");
        let field = match self.field {
            Field::Rational => "\"rational\"".to_string(),
            Field::Prime(p) => format!("{{\"gf\": {p}}}"),
        };
        let _ = writeln!(out, "  \"field\": {field},");
        out.push_str("  \"blocks\": {");
        for (i, (name, block)) in self.blocks.iter().enumerate() {
            out.push_str(if i == 0 { "\n" } else { ",\n" });
            let _ = write!(out, "    {}: ", Value::String(name.clone()));
            write_block(&mut out, block);
        }
        out.push_str(if self.blocks.is_empty() {
            "}\n"
        } else {
            "\n  }\n"
        });
        out.push_str("}\n");
        out
    }
}

fn parse_field(v: Option<&Value>) -> Result<Field, ParseError> {
    match v {
        None => err("field", "missing"),
        Some(Value::String(s)) if s == "rational" => Ok(Field::Rational),
        Some(Value::Object(m)) if m.len() == 1 && m.contains_key("gf") => {
            let p = m["gf"].as_u64().and_then(|p| u32::try_from(p).ok());
            match p.map(Field::prime) {
                Some(Ok(f)) => Ok(f),
                _ => err("field.gf", "expected a supported prime"),
            }
        }
        Some(_) => err("field", "expected \"rational\" or {\"gf\": p}"),
    }
}

/// `gf:p` or `rational`, as accepted by `--field`.
pub fn parse_field_flag(s: &str) -> Result<Field, String> {
    if s == "rational" {
        return Ok(Field::Rational);
    }
    let p = s
        .strip_prefix("gf:")
        .and_then(|p| p.parse::<u32>().ok())
        .ok_or_else(|| format!("expected gf:p or rational, got {s:?}"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

struct Ctx {
    strict: bool,
}

impl Ctx {
    fn known(&self, at: &str, obj: &Map<String, Value>, keys: &[&str]) -> Result<(), ParseError> {
        if self.strict {
            if let Some(k) = obj.keys().find(|k| !keys.contains(&k.as_str())) {
                return err(at, format!("unknown key {k:?}"));
            }
        }
        Ok(())
    }

    fn block(&self, at: &str, v: &Value, field: Field) -> Result<Block, ParseError> {
        let Some(obj) = v.as_object() else {
            return err(at, "expected an object");
        };
        let kind = obj.get("kind").and_then(Value::as_str).unwrap_or_default();
        let r = Reader { at, obj, field };
        let (keys, block): (&[&str], Block) = match kind {
            "hom-lie" => {
                let n = r.usize("dim")?;
                let alpha = r.alpha(n)?;
                let bracket = r.tensor("bracket", 2, n, n)?;
                let l = HomLieAlgebra::new(alpha, bracket).or_else(|e| err(at, e.to_string()))?;
                (&["kind", "dim", "alpha", "bracket"], Block::HomLie(l))
            }
            "hly" => {
                let n = r.usize("dim")?;
                let (alpha, b, t) = (
                    r.alpha(n)?,
                    r.tensor("binary", 2, n, n)?,
                    r.tensor("ternary", 3, n, n)?,
                );
                let h = HlyAlgebra::new(alpha, b, t).or_else(|e| err(at, e.to_string()))?;
                (
                    &["kind", "dim", "alpha", "binary", "ternary"],
                    Block::Hly(h),
                )
            }
            "hom-lie-rep" => {
                let (n, v) = (r.usize("algebra_dim")?, r.usize("dim")?);
                let beta = r.matrix_or_identity("beta", v)?;
                let rho = r.family("rho", 1, n, v)?;
                let rep = HomLieRep::new(n, beta, rho).or_else(|e| err(at, e.to_string()))?;
                (
                    &["kind", "algebra_dim", "dim", "beta", "rho"],
                    Block::HomLieRep(rep),
                )
            }
            "rep" => {
                let (n, v) = (r.usize("algebra_dim")?, r.usize("dim")?);
                let beta = r.matrix_or_identity("beta", v)?;
                let rho = r.family("rho", 1, n, v)?;
                let theta = r.family("theta", 2, n, v)?;
                let rep = HlyRep::new(n, beta, rho, theta).or_else(|e| err(at, e.to_string()))?;
                (
                    &["kind", "algebra_dim", "dim", "beta", "rho", "theta"],
                    Block::Rep(rep),
                )
            }
            "cocycle2" => {
                let (n, v) = (r.usize("algebra_dim")?, r.usize("dim")?);
                (
                    &["kind", "algebra_dim", "dim", "f"],
                    Block::Cocycle2(r.tensor("f", 2, n, v)?),
                )
            }
            "cocycle" => {
                let (n, v) = (r.usize("algebra_dim")?, r.usize("dim")?);
                let (f, g) = (r.tensor("f", 2, n, v)?, r.tensor("g", 3, n, v)?);
                (
                    &["kind", "algebra_dim", "dim", "f", "g"],
                    Block::Cocycle { f, g },
                )
            }
            "operator" => {
                let (rows, cols) = (r.usize("rows")?, r.usize("cols")?);
                let map = r.matrix("map", rows, cols)?;
                let (lambda, mu) = (r.scalar("lambda")?, r.scalar("mu")?);
                (
                    &["kind", "rows", "cols", "map", "lambda", "mu"],
                    Block::Operator { map, lambda, mu },
                )
            }
            "morphism" => {
                let (rows, cols) = (r.usize("rows")?, r.usize("cols")?);
                (
                    &["kind", "rows", "cols", "map"],
                    Block::Morphism(r.matrix("map", rows, cols)?),
                )
            }
            "ns-lie" => {
                let n = r.usize("dim")?;
                let (alpha, circ, vee) = (
                    r.alpha(n)?,
                    r.tensor("circ", 2, n, n)?,
                    r.tensor("vee", 2, n, n)?,
                );
                let ns = NsHomLie::new(alpha, circ, vee).or_else(|e| err(at, e.to_string()))?;
                (&["kind", "dim", "alpha", "circ", "vee"], Block::NsLie(ns))
            }
            "ns-hly" => {
                let n = r.usize("dim")?;
                let alpha = r.alpha(n)?;
                let (circ, vee) = (r.tensor("circ", 2, n, n)?, r.tensor("vee", 2, n, n)?);
                let (curly, square) = (r.tensor("curly", 3, n, n)?, r.tensor("square", 3, n, n)?);
                let ns = NsHly::new(alpha, circ, vee, curly, square)
                    .or_else(|e| err(at, e.to_string()))?;
                (
                    &["kind", "dim", "alpha", "circ", "vee", "curly", "square"],
                    Block::NsHly(ns),
                )
            }
            "deformation" => {
                let (rows, cols) = (r.usize("rows")?, r.usize("cols")?);
                let Some(list) = obj.get("coefficients").and_then(Value::as_array) else {
                    return err(
                        &format!("{at}.coefficients"),
                        "expected a list of entry lists",
                    );
                };
                let coefficients = list
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        let sub = format!("{at}.coefficients[{i}]");
                        let mut m = Matrix::zeros(field, rows, cols);
                        for (idx, s) in entries(&sub, v, &[rows, cols], field)? {
                            m.set(idx[0], idx[1], s);
                        }
                        Ok(m)
                    })
                    .collect::<Result<_, ParseError>>()?;
                (
                    &["kind", "rows", "cols", "coefficients"],
                    Block::Deformation {
                        rows,
                        cols,
                        coefficients,
                    },
                )
            }
            "" => return err(at, "missing \"kind\""),
            other => return err(at, format!("unknown kind {other:?}")),
        };
        self.known(at, obj, keys)?;
        Ok(block)
    }
}

struct Reader<'a> {
    at: &'a str,
    obj: &'a Map<String, Value>,
    field: Field,
}

impl Reader<'_> {
    fn path(&self, key: &str) -> String {
        format!("{}.{key}", self.at)
    }

    fn usize(&self, key: &str) -> Result<usize, ParseError> {
        match self.obj.get(key).and_then(Value::as_u64) {
            Some(n) if n <= 64 => Ok(n as usize),
            Some(_) => err(&self.path(key), "dimension too large"),
            None => err(&self.path(key), "expected a non-negative integer"),
        }
    }

    fn get(&self, key: &str) -> Option<&Value> {
        self.obj.get(key)
    }

    fn matrix(&self, key: &str, rows: usize, cols: usize) -> Result<Matrix, ParseError> {
        let mut m = Matrix::zeros(self.field, rows, cols);
        if let Some(v) = self.get(key) {
            for (idx, s) in entries(&self.path(key), v, &[rows, cols], self.field)? {
                m.set(idx[0], idx[1], s);
            }
        }
        Ok(m)
    }

    /// A missing twist is the identity.
    fn matrix_or_identity(&self, key: &str, n: usize) -> Result<Matrix, ParseError> {
        if self.get(key).is_none() {
            return Ok(Matrix::identity(self.field, n));
        }
        self.matrix(key, n, n)
    }

    fn alpha(&self, n: usize) -> Result<Matrix, ParseError> {
        self.matrix_or_identity("alpha", n)
    }

    fn tensor(&self, key: &str, arity: usize, n: usize, out: usize) -> Result<Tensor, ParseError> {
        let mut t = Tensor::zeros(self.field, arity, n, out);
        if let Some(v) = self.get(key) {
            let mut dims = vec![n; arity];
            dims.push(out);
            for (idx, s) in entries(&self.path(key), v, &dims, self.field)? {
                t.set(&idx[..arity], idx[arity], s);
            }
        }
        Ok(t)
    }

    /// Matrices indexed by `slots` algebra basis elements, entries
    /// `[x…, row, col, num, den]`.
    fn family(
        &self,
        key: &str,
        slots: usize,
        n: usize,
        v: usize,
    ) -> Result<Vec<Matrix>, ParseError> {
        let mut out = vec![Matrix::zeros(self.field, v, v); n.pow(slots as u32)];
        if let Some(val) = self.get(key) {
            let mut dims = vec![n; slots];
            dims.extend([v, v]);
            for (idx, s) in entries(&self.path(key), val, &dims, self.field)? {
                let which = idx[..slots].iter().fold(0, |acc, &i| acc * n + i);
                out[which].set(idx[slots], idx[slots + 1], s);
            }
        }
        Ok(out)
    }

    fn scalar(&self, key: &str) -> Result<Option<Scalar>, ParseError> {
        let Some(v) = self.get(key) else {
            return Ok(None);
        };
        let at = self.path(key);
        match v.as_array().map(Vec::as_slice) {
            Some([n, d]) => Ok(Some(ratio(&at, n, d, self.field)?)),
            _ => err(&at, "expected [numerator, denominator]"),
        }
    }
}

fn integer(at: &str, v: &Value) -> Result<BigInt, ParseError> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse::<BigInt>()
            .or_else(|_| err(at, format!("{n} is not an integer"))),
        _ => err(at, "expected an integer"),
    }
}

fn ratio(at: &str, n: &Value, d: &Value, field: Field) -> Result<Scalar, ParseError> {
    let (n, d) = (integer(at, n)?, integer(at, d)?);
    if d == BigInt::from(0) {
        return err(at, "zero denominator");
    }
    if matches!(field, Field::Prime(_)) && d != BigInt::from(1) {
        return err(at, "denominator must be 1 over GF(p)");
    }
    field.ratio(n, d).or_else(|e| err(at, e.to_string()))
}

/// Sparse entries with range and duplicate checks.
fn entries(
    at: &str,
    v: &Value,
    dims: &[usize],
    field: Field,
) -> Result<Vec<(Vec<usize>, Scalar)>, ParseError> {
    let Some(list) = v.as_array() else {
        return err(at, "expected a list of entries");
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::with_capacity(list.len());
    for (i, e) in list.iter().enumerate() {
        let here = format!("{at}[{i}]");
        let Some(items) = e.as_array() else {
            return err(&here, "expected an array");
        };
        if items.len() != dims.len() + 2 {
            return err(
                &here,
                format!(
                    "expected {} indices plus numerator and denominator",
                    dims.len()
                ),
            );
        }
        let mut idx = Vec::with_capacity(dims.len());
        for (slot, (x, &dim)) in items.iter().zip(dims).enumerate() {
            match x.as_u64() {
                Some(k) if (k as usize) < dim => idx.push(k as usize),
                _ => return err(&here, format!("index {slot} out of range 0..{dim}")),
            }
        }
        let s = ratio(&here, &items[dims.len()], &items[dims.len() + 1], field)?;
        if !seen.insert(idx.clone()) {
            return err(&here, "duplicate entry");
        }
        out.push((idx, s));
    }
    Ok(out)
}

fn scalar_text(s: &Scalar) -> String {
    let (n, d) = s.to_ratio();
    format!("{n}, {d}")
}

fn write_entries(out: &mut String, key: &str, rows: Vec<(Vec<usize>, Scalar)>, last: bool) {
    let _ = write!(out, "      \"{key}\": [");
    let mut rows: Vec<_> = rows.into_iter().filter(|(_, s)| !s.is_zero()).collect();
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    for (i, (idx, s)) in rows.iter().enumerate() {
        out.push_str(if i == 0 { "\n" } else { ",\n" });
        let idx: Vec<String> = idx.iter().map(usize::to_string).collect();
        let _ = write!(out, "        [{}, {}]", idx.join(", "), scalar_text(s));
    }
    out.push_str(if rows.is_empty() { "]" } else { "\n      ]" });
    out.push_str(if last { "\n" } else { ",\n" });
}

fn matrix_rows(m: &Matrix) -> Vec<(Vec<usize>, Scalar)> {
    m.nonzero_entries()
        .map(|(i, j, s)| (vec![i, j], s.clone()))
        .collect()
}

fn tensor_rows(t: &Tensor) -> Vec<(Vec<usize>, Scalar)> {
    t.nonzero_entries()
        .into_iter()
        .map(|(mut idx, out, s)| {
            idx.push(out);
            (idx, s)
        })
        .collect()
}

fn family_rows(ms: &[Matrix], slots: usize, n: usize) -> Vec<(Vec<usize>, Scalar)> {
    let mut out = Vec::new();
    for (which, xs) in Tuples::new(slots, n).enumerate() {
        for (mut idx, s) in matrix_rows(&ms[which]) {
            let mut full = xs.clone();
            full.append(&mut idx);
            out.push((full, s));
        }
    }
    out
}

fn write_block(out: &mut String, block: &Block) {
    out.push_str("{\n");
    let _ = writeln!(out, "      \"kind\": \"{}\",", block.kind());
    let num = |out: &mut String, key: &str, v: usize| {
        let _ = writeln!(out, "      \"{key}\": {v},");
    };
    match block {
        Block::HomLie(l) => {
            num(out, "dim", l.dim());
            write_entries(out, "alpha", matrix_rows(l.alpha()), false);
            write_entries(out, "bracket", tensor_rows(l.bracket()), true);
        }
        Block::Hly(h) => {
            num(out, "dim", h.dim());
            write_entries(out, "alpha", matrix_rows(h.alpha()), false);
            write_entries(out, "binary", tensor_rows(h.binary()), false);
            write_entries(out, "ternary", tensor_rows(h.ternary()), true);
        }
        Block::HomLieRep(r) => {
            num(out, "algebra_dim", r.algebra_dim());
            num(out, "dim", r.carrier_dim());
            write_entries(out, "beta", matrix_rows(r.beta()), false);
            write_entries(out, "rho", family_rows(r.rho(), 1, r.algebra_dim()), true);
        }
        Block::Rep(r) => {
            num(out, "algebra_dim", r.algebra_dim());
            num(out, "dim", r.carrier_dim());
            write_entries(out, "beta", matrix_rows(r.beta()), false);
            write_entries(out, "rho", family_rows(r.rho(), 1, r.algebra_dim()), false);
            write_entries(
                out,
                "theta",
                family_rows(r.theta(), 2, r.algebra_dim()),
                true,
            );
        }
        Block::Cocycle2(f) => {
            num(out, "algebra_dim", f.in_dim());
            num(out, "dim", f.out_dim());
            write_entries(out, "f", tensor_rows(f), true);
        }
        Block::Cocycle { f, g } => {
            num(out, "algebra_dim", f.in_dim());
            num(out, "dim", f.out_dim());
            write_entries(out, "f", tensor_rows(f), false);
            write_entries(out, "g", tensor_rows(g), true);
        }
        Block::Operator { map, lambda, mu } => {
            num(out, "rows", map.rows());
            num(out, "cols", map.cols());
            let weights: Vec<_> = [("lambda", lambda), ("mu", mu)]
                .into_iter()
                .filter_map(|(k, s)| s.as_ref().map(|s| (k, s)))
                .collect();
            write_entries(out, "map", matrix_rows(map), weights.is_empty());
            for (i, (k, s)) in weights.iter().enumerate() {
                let sep = if i + 1 == weights.len() { "" } else { "," };
                let _ = writeln!(out, "      \"{k}\": [{}]{sep}", scalar_text(s));
            }
        }
        Block::Morphism(m) => {
            num(out, "rows", m.rows());
            num(out, "cols", m.cols());
            write_entries(out, "map", matrix_rows(m), true);
        }
        Block::NsLie(n) => {
            num(out, "dim", n.dim());
            write_entries(out, "alpha", matrix_rows(n.alpha()), false);
            write_entries(out, "circ", tensor_rows(n.circ()), false);
            write_entries(out, "vee", tensor_rows(n.vee()), true);
        }
        Block::NsHly(n) => {
            num(out, "dim", n.dim());
            write_entries(out, "alpha", matrix_rows(n.alpha()), false);
            write_entries(out, "circ", tensor_rows(n.circ()), false);
            write_entries(out, "vee", tensor_rows(n.vee()), false);
            write_entries(out, "curly", tensor_rows(n.curly()), false);
            write_entries(out, "square", tensor_rows(n.square()), true);
        }
        Block::Deformation {
            rows,
            cols,
            coefficients,
        } => {
            num(out, "rows", *rows);
            num(out, "cols", *cols);
            out.push_str("      \"coefficients\": [");
            for (i, m) in coefficients.iter().enumerate() {
                out.push_str(if i == 0 { "\n" } else { ",\n" });
                let mut rows = matrix_rows(m);
                rows.sort_by(|a, b| a.0.cmp(&b.0));
                let items: Vec<String> = rows
                    .iter()
                    .map(|(idx, s)| format!("[{}, {}, {}]", idx[0], idx[1], scalar_text(s)))
                    .collect();
                let _ = write!(out, "        [{}]", items.join(", "));
            }
            out.push_str(if coefficients.is_empty() {
                "]\n"
            } else {
                "\n      ]\n"
            });
        }
    }
    out.push_str("    }");
}
