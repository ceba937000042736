//! Subcommand dispatch. Every path ends in an [`Outcome`]: an exit code and
//! the exact bytes for standard output.

use std::path::Path;
use std::sync::Arc;

use hly_core::cohomology::{
    g_from_f, induced_cocycle_context, twisted_complex, verify_23cocycle, verify_2cocycle_hom_lie,
    CocyclePair, Complex,
};
use hly_core::deformations::{
    infinitesimal_is_cocycle, same_class_check, verify_deformation, TruncatedDeformation,
};
use hly_core::ns::{
    adjacent_hom_lie, ns_from_reynolds, ns_from_twisted_op, ns_hly_from_ns_lie,
    ns_lie_from_twisted_op_hom_lie, subadjacent_hly, verify_ns_hly, verify_ns_hom_lie, NsHly,
    NsHomLie,
};
use hly_core::operators::{
    enumeration_index, reynolds_descendent, search_twisted_ops, v_structure,
    verify_hom_lie_reynolds, verify_rota_baxter, verify_twisted_op_hom_lie,
    verify_weighted_reynolds, TwistedContext, TwistedOperator,
};
use hly_core::representations::{
    induced_rep_from_top, semidirect, twisted_semidirect, verify_hly_rep, verify_hom_lie_rep,
    HlyRep, HomLieRep,
};
use hly_core::structures::{
    induced_hly_from_hom_lie, verify_hly, verify_hom_lie, yau_twist, HlyAlgebra, HomLieAlgebra,
};
use hly_core::{Config, Error, IdentityReport, Matrix, Reading, Scalar, Tensor};
use serde_json::{json, Value};
use thiserror::Error;

use crate::cli::{Cli, Command, ConstructKind, VerifyKind};
use crate::output;
use crate::presentation::{Block, ParseOptions, Presentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    /// Human-readable note for standard error.
    pub message: Option<String>,
}

#[derive(Debug, Error)]
enum Failure {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Engine(#[from] Error),
}

fn input<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Input(msg.into()))
}

pub fn run(cli: &Cli) -> Outcome {
    let label = command_label(&cli.command);
    match dispatch(cli) {
        Ok(o) => o,
        Err(Failure::Input(msg)) => failed(2, &label, json!({ "error": msg }), msg),
        Err(Failure::Engine(e)) => engine_failure(&label, e),
    }
}

fn command_label(c: &Command) -> String {
    match c {
        Command::Verify { what, .. } => format!("verify {}", what.name()),
        Command::Construct { what, .. } => format!("construct {}", what.name()),
        Command::Cohomology { .. } => "cohomology".into(),
        Command::Search { .. } => "search".into(),
        Command::Deform { .. } => "deform".into(),
    }
}

fn failed(code: u8, label: &str, mut body: Value, msg: String) -> Outcome {
    body["command"] = json!(label);
    body["ok"] = json!(false);
    Outcome {
        code,
        stdout: output::render(&body),
        message: Some(msg),
    }
}

/// Failed preconditions and malformed cochains are failures of the input
/// structure (exit 1); anything else means the request itself was unusable.
fn engine_failure(label: &str, e: Error) -> Outcome {
    match e {
        Error::Precondition { what, report } => {
            let mut body = output::report(&report);
            body["error"] = json!(what);
            failed(1, label, body, format!("precondition failed: {what}"))
        }
        e @ (Error::NotACochain(_) | Error::NonzeroDiscarded { .. }) => {
            let msg = e.to_string();
            failed(1, label, json!({ "error": msg }), msg)
        }
        e => {
            let msg = e.to_string();
            failed(2, label, json!({ "error": msg }), msg)
        }
    }
}

fn file_of(c: &Command) -> &Path {
    match c {
        Command::Verify { file, .. }
        | Command::Construct { file, .. }
        | Command::Cohomology { file, .. }
        | Command::Search { file, .. }
        | Command::Deform { file, .. } => file,
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    let path = file_of(&cli.command);
    let text =
        std::fs::read_to_string(path).or_else(|e| input(format!("{}: {e}", path.display())))?;
    let opts = ParseOptions {
        field: cli.field,
        strict: cli.strict,
    };
    let pres =
        Presentation::parse(&text, opts).or_else(|e| input(format!("{}: {e}", path.display())))?;
    let mut cfg = if cli.strict {
        Config::literal()
    } else {
        Config::default()
    };
    if let Some(k) = cli.max_failures {
        cfg.max_failures = k;
    }
    let s = Session {
        pres,
        picks: &cli.pick,
        cfg,
    };
    let label = command_label(&cli.command);
    match &cli.command {
        Command::Verify { what, .. } => s.verify(*what, &label),
        Command::Construct { what, .. } => s.construct(*what),
        Command::Cohomology { level, twisted, .. } => s.cohomology(*level, *twisted),
        Command::Search { budget, .. } => s.search(*budget),
        Command::Deform { order, against, .. } => s.deform(*order, against.as_deref()),
    }
}

fn verdict(label: &str, cfg: &Config, r: &IdentityReport) -> Outcome {
    let mut body = output::report(r);
    body["command"] = json!(label);
    body["reading"] = json!(reading_name(cfg.reading));
    Outcome {
        code: if r.ok() { 0 } else { 1 },
        stdout: output::render(&body),
        message: None,
    }
}

fn reading_name(r: Reading) -> &'static str {
    match r {
        Reading::Consistent => "consistent",
        Reading::Literal => "literal",
    }
}

struct Session<'a> {
    pres: Presentation,
    picks: &'a [String],
    cfg: Config,
}

impl Session<'_> {
    /// The block of `kind`: the one named by `--pick`, or the only one.
    fn find(&self, kind: &str, skip: Option<&str>) -> Result<Option<(&str, &Block)>, Failure> {
        let all: Vec<(&str, &Block)> = self
            .pres
            .blocks
            .iter()
            .filter(|(n, b)| b.kind() == kind && Some(n.as_str()) != skip)
            .map(|(n, b)| (n.as_str(), b))
            .collect();
        let picked: Vec<_> = all
            .iter()
            .filter(|(n, _)| self.picks.iter().any(|p| p == n))
            .collect();
        match (picked.as_slice(), all.as_slice()) {
            ([one], _) => Ok(Some(**one)),
            ([_, _, ..], _) => input(format!("--pick names more than one {kind} block")),
            ([], []) => Ok(None),
            ([], [one]) => Ok(Some(*one)),
            ([], many) => {
                let names: Vec<&str> = many.iter().map(|(n, _)| *n).collect();
                input(format!(
                    "{} {kind} blocks ({}); choose one with --pick",
                    many.len(),
                    names.join(", ")
                ))
            }
        }
    }

    fn need(&self, kind: &str) -> Result<&Block, Failure> {
        match self.find(kind, None)? {
            Some((_, b)) => Ok(b),
            None => input(format!("no {kind} block in the file")),
        }
    }

    fn has(&self, kind: &str) -> Result<bool, Failure> {
        Ok(self.find(kind, None)?.is_some())
    }

    fn hom_lie(&self) -> Result<&HomLieAlgebra, Failure> {
        match self.need("hom-lie")? {
            Block::HomLie(l) => Ok(l),
            _ => unreachable!("kind checked"),
        }
    }

    fn hly(&self) -> Result<&HlyAlgebra, Failure> {
        match self.need("hly")? {
            Block::Hly(h) => Ok(h),
            _ => unreachable!("kind checked"),
        }
    }

    fn hom_lie_rep(&self) -> Result<&HomLieRep, Failure> {
        match self.need("hom-lie-rep")? {
            Block::HomLieRep(r) => Ok(r),
            _ => unreachable!("kind checked"),
        }
    }

    fn rep(&self) -> Result<&HlyRep, Failure> {
        match self.need("rep")? {
            Block::Rep(r) => Ok(r),
            _ => unreachable!("kind checked"),
        }
    }

    fn cocycle2(&self) -> Result<Option<&Tensor>, Failure> {
        Ok(match self.find("cocycle2", None)? {
            Some((_, Block::Cocycle2(f))) => Some(f),
            _ => None,
        })
    }

    fn pair(&self, h: &HlyAlgebra, rep: &HlyRep) -> Result<CocyclePair, Failure> {
        Ok(match self.find("cocycle", None)? {
            Some((_, Block::Cocycle { f, g })) => CocyclePair::new(h, rep, f.clone(), g.clone())?,
            _ => CocyclePair::zero(h, rep),
        })
    }

    /// The map with `λ`, `μ` defaulting to zero.
    fn operator(&self) -> Result<(&Matrix, Scalar, Scalar), Failure> {
        match self.need("operator")? {
            Block::Operator { map, lambda, mu } => {
                let z = self.pres.field.zero();
                Ok((
                    map,
                    lambda.clone().unwrap_or(z.clone()),
                    mu.clone().unwrap_or(z),
                ))
            }
            _ => unreachable!("kind checked"),
        }
    }

    fn morphism(&self) -> Result<&Matrix, Failure> {
        match self.need("morphism")? {
            Block::Morphism(m) => Ok(m),
            _ => unreachable!("kind checked"),
        }
    }

    fn ns_lie(&self) -> Result<&NsHomLie, Failure> {
        match self.need("ns-lie")? {
            Block::NsLie(n) => Ok(n),
            _ => unreachable!("kind checked"),
        }
    }

    fn ns_hly(&self) -> Result<&NsHly, Failure> {
        match self.need("ns-hly")? {
            Block::NsHly(n) => Ok(n),
            _ => unreachable!("kind checked"),
        }
    }

    /// An HLY context from `hly`/`rep`/`cocycle` blocks, or the induced one
    /// from `hom-lie`/`hom-lie-rep`/`cocycle2` blocks.
    fn context(&self) -> Result<Arc<TwistedContext>, Failure> {
        let cfg = &self.cfg;
        let (h, rep, pair) = if self.has("hly")? {
            let (h, rep) = (self.hly()?, self.rep()?);
            (h.clone(), rep.clone(), self.pair(h, rep)?)
        } else {
            let (l, rep) = (self.hom_lie()?, self.hom_lie_rep()?);
            let f = match self.cocycle2()? {
                Some(f) => f.clone(),
                None => Tensor::zeros(l.field(), 2, l.dim(), rep.carrier_dim()),
            };
            induced_cocycle_context(l, rep, &f, cfg)?
        };
        Ok(Arc::new(TwistedContext::new(h, rep, pair, cfg)?))
    }

    fn twisted_op(&self) -> Result<TwistedOperator, Failure> {
        let (map, _, _) = self.operator()?;
        Ok(TwistedOperator::candidate(map.clone(), self.context()?)?)
    }

    fn verify(&self, what: VerifyKind, label: &str) -> Result<Outcome, Failure> {
        let cfg = &self.cfg;
        let report = match what {
            VerifyKind::HomLie => verify_hom_lie(self.hom_lie()?, cfg),
            VerifyKind::Hly => verify_hly(self.hly()?, cfg),
            VerifyKind::Rep if self.has("rep")? => verify_hly_rep(self.hly()?, self.rep()?, cfg)?,
            VerifyKind::Rep => verify_hom_lie_rep(self.hom_lie()?, self.hom_lie_rep()?, cfg)?,
            VerifyKind::Cocycle2 => {
                let Some(f) = self.cocycle2()? else {
                    return input("no cocycle2 block in the file");
                };
                verify_2cocycle_hom_lie(f, self.hom_lie()?, self.hom_lie_rep()?, cfg)?
            }
            VerifyKind::Cocycle23 => {
                if !self.has("cocycle")? {
                    return input("no cocycle block in the file");
                }
                let (h, rep) = (self.hly()?, self.rep()?);
                verify_23cocycle(&self.pair(h, rep)?, h, rep, cfg)?
            }
            VerifyKind::RotaBaxter => verify_rota_baxter(self.operator()?.0, self.hly()?, cfg)?,
            VerifyKind::Reynolds => {
                let (r, lambda, mu) = self.operator()?;
                if self.has("hly")? {
                    verify_weighted_reynolds(r, &lambda, &mu, self.hly()?, cfg)?
                } else {
                    verify_hom_lie_reynolds(r, &lambda, self.hom_lie()?, cfg)?
                }
            }
            VerifyKind::TwistedOp if self.has("hly")? => self.twisted_op()?.verify(cfg)?,
            VerifyKind::TwistedOp => {
                let (l, rep) = (self.hom_lie()?, self.hom_lie_rep()?);
                let zero = Tensor::zeros(l.field(), 2, l.dim(), rep.carrier_dim());
                let f = self.cocycle2()?.unwrap_or(&zero);
                verify_twisted_op_hom_lie(self.operator()?.0, l, rep, f, cfg)?
            }
            VerifyKind::NsLie => verify_ns_hom_lie(self.ns_lie()?, cfg),
            VerifyKind::NsHly => verify_ns_hly(self.ns_hly()?, cfg),
        };
        Ok(verdict(label, cfg, &report))
    }

    fn construct(&self, what: ConstructKind) -> Result<Outcome, Failure> {
        let cfg = &self.cfg;
        let out = Presentation::new(self.pres.field);
        let out = match what {
            ConstructKind::InducedHly => out.with(
                "induced",
                Block::Hly(induced_hly_from_hom_lie(self.hom_lie()?, cfg)?),
            ),
            ConstructKind::YauTwist => out.with(
                "yau-twist",
                Block::Hly(yau_twist(self.hly()?, self.morphism()?, cfg)?),
            ),
            ConstructKind::Semidirect => out.with(
                "semidirect",
                Block::Hly(semidirect(self.hly()?, self.rep()?, cfg)?),
            ),
            ConstructKind::TwistedSemidirect => {
                let (h, rep) = (self.hly()?, self.rep()?);
                let s = twisted_semidirect(h, rep, &self.pair(h, rep)?, cfg)?;
                out.with("twisted-semidirect", Block::Hly(s))
            }
            ConstructKind::Descendent => {
                let (r, lambda, mu) = self.operator()?;
                out.with(
                    "descendent",
                    Block::Hly(reynolds_descendent(r, &lambda, &mu, self.hly()?, cfg)?),
                )
            }
            ConstructKind::VStructure => out.with(
                "v-structure",
                Block::Hly(v_structure(&self.twisted_op()?, cfg)?),
            ),
            ConstructKind::InducedRep => {
                let op = self.twisted_op()?;
                out.with("v-structure", Block::Hly(v_structure(&op, cfg)?))
                    .with("induced-rep", Block::Rep(induced_rep_from_top(&op, cfg)?))
            }
            ConstructKind::NsFromTop if self.has("hly")? => out.with(
                "ns",
                Block::NsHly(ns_from_twisted_op(&self.twisted_op()?, cfg)?),
            ),
            ConstructKind::NsFromTop => {
                let (l, rep) = (self.hom_lie()?, self.hom_lie_rep()?);
                let zero = Tensor::zeros(l.field(), 2, l.dim(), rep.carrier_dim());
                let f = self.cocycle2()?.unwrap_or(&zero);
                let ns = ns_lie_from_twisted_op_hom_lie(self.operator()?.0, l, rep, f, cfg)?;
                out.with("ns", Block::NsLie(ns))
            }
            ConstructKind::NsFromReynolds => {
                let (r, lambda, mu) = self.operator()?;
                out.with(
                    "ns",
                    Block::NsHly(ns_from_reynolds(r, &lambda, &mu, self.hly()?, cfg)?),
                )
            }
            ConstructKind::Subadjacent => {
                let (h, rep) = subadjacent_hly(self.ns_hly()?, cfg)?;
                out.with("subadjacent", Block::Hly(h))
                    .with("rep", Block::Rep(rep))
            }
            ConstructKind::Adjacent => out.with(
                "adjacent",
                Block::HomLie(adjacent_hom_lie(self.ns_lie()?, cfg)?),
            ),
            ConstructKind::NsFromNsLie => {
                out.with("ns", Block::NsHly(ns_hly_from_ns_lie(self.ns_lie()?, cfg)?))
            }
            ConstructKind::GFromF => {
                let (l, rep) = (self.hom_lie()?, self.hom_lie_rep()?);
                let Some(f) = self.cocycle2()? else {
                    return input("no cocycle2 block in the file");
                };
                // Computed on its own first so a bad F is reported as such.
                g_from_f(f, l, rep, cfg)?;
                let (h, r, pair) = induced_cocycle_context(l, rep, f, cfg)?;
                out.with("induced", Block::Hly(h))
                    .with("rep", Block::Rep(r))
                    .with(
                        "cocycle",
                        Block::Cocycle {
                            f: pair.f().clone(),
                            g: pair.g().clone(),
                        },
                    )
            }
        };
        Ok(Outcome {
            code: 0,
            stdout: out.to_canonical(),
            message: None,
        })
    }

    fn cohomology(&self, level: usize, twisted: bool) -> Result<Outcome, Failure> {
        let cfg = &self.cfg;
        let cx = if twisted {
            twisted_complex(&self.twisted_op()?, cfg)?
        } else {
            Complex::new(self.hly()?, self.rep()?, cfg)?
        };
        let levels = (0..=level)
            .map(|k| cx.dims(k, cfg).map(|d| output::dims(&d)))
            .collect::<Result<Vec<_>, _>>()?;
        let squared = match cx.delta_squared(0, cfg) {
            Ok(d) => json!({ "start": d.start, "zero": d.zero }),
            Err(Error::CapExceeded { .. }) => Value::Null,
            Err(e) => return Err(e.into()),
        };
        let body = json!({
            "command": "cohomology",
            "ok": true,
            "twisted": twisted,
            "levels": levels,
            "delta_squared": squared,
        });
        Ok(Outcome {
            code: 0,
            stdout: output::render(&body),
            message: None,
        })
    }

    fn search(&self, budget: Option<u64>) -> Result<Outcome, Failure> {
        let mut cfg = self.cfg.clone();
        if let Some(b) = budget {
            cfg.search_budget = b;
        }
        let found = search_twisted_ops(&self.context()?, &cfg)?;
        let stdout = found
            .iter()
            .map(|m| {
                let index = serde_json::to_value(enumeration_index(m)).unwrap_or(Value::Null);
                output::render_line(&json!({ "index": index, "map": output::matrix(m) }))
            })
            .collect();
        Ok(Outcome {
            code: 0,
            stdout,
            message: None,
        })
    }

    fn deformation(
        &self,
        op: &TwistedOperator,
        order: usize,
        name: Option<&str>,
        skip: Option<&str>,
    ) -> Result<TruncatedDeformation, Failure> {
        let block = match name {
            Some(n) => match self.pres.blocks.get(n) {
                Some(b) => b,
                None => return input(format!("no block named {n:?}")),
            },
            None => match self.find("deformation", skip)? {
                Some((_, b)) => b,
                None => return input("no deformation block in the file"),
            },
        };
        let Block::Deformation { coefficients, .. } = block else {
            return input(format!(
                "block {:?} is not a deformation",
                name.unwrap_or_default()
            ));
        };
        let (rows, cols) = (op.map().rows(), op.map().cols());
        // Missing higher terms are zero; extra ones are dropped.
        let mut higher: Vec<Matrix> = coefficients.iter().take(order).cloned().collect();
        higher.resize(order, Matrix::zeros(self.pres.field, rows, cols));
        Ok(TruncatedDeformation::new(op.clone(), higher)?)
    }

    fn deform(&self, order: usize, against: Option<&str>) -> Result<Outcome, Failure> {
        let cfg = &self.cfg;
        let op = self.twisted_op()?;
        let defn = self.deformation(&op, order, None, against)?;
        let report = verify_deformation(&defn, cfg)?;
        let mut body = output::report(&report);
        body["command"] = json!("deform");
        body["order"] = json!(order);
        body["reading"] = json!(reading_name(cfg.reading));
        body["infinitesimal"] = if order >= 1 && report.ok() {
            let (cocycle, image) = infinitesimal_is_cocycle(&defn, cfg)?;
            json!({ "cocycle": cocycle, "coboundary": output::vector(&image) })
        } else {
            Value::Null
        };
        if let Some(name) = against {
            let other = self.deformation(&op, order.max(1), Some(name), None)?;
            let t1 = &defn.coefficients().get(1).cloned().unwrap_or_else(|| {
                Matrix::zeros(op.map().field(), op.map().rows(), op.map().cols())
            });
            let v = same_class_check(t1, &other.coefficients()[1], &op, cfg)?;
            body["same_class"] = json!({
                "same": v.same,
                "witness": v.witness.as_deref().map(output::vector),
                "difference": output::matrix(&v.difference),
            });
        }
        Ok(Outcome {
            code: if report.ok() { 0 } else { 1 },
            stdout: output::render(&body),
            message: None,
        })
    }
}
