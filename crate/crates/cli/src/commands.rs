use std::fmt;

use multicat_core::cartesian::{
    check_cartesian as core_check_cartesian, check_model as core_check_model, free_cartesian as core_free_cartesian, from_rig,
    GammaEntry, TableGamma, UniqueGamma,
};
use multicat_core::doc::{CartPayload, DocKind, Subject, WorkbenchDoc, DEFAULT_BOUND};
use multicat_core::doubleprop::{base_change as core_base_change, Along};
use multicat_core::multicat::{burnside as core_burnside, validate as core_validate, Rig};
use multicat_core::products::equivalence_report;
use multicat_core::spans::spanmap_is_opfibration;
use multicat_core::{corpus, CartStructure, Error};
use serde::Deserialize;
use serde_json::json;

use crate::render::Outcome;
use crate::{read_input, AlongArg};

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
    Input(String),
    UnknownKind(String),
    Schema(String),
}

impl CliError {
    pub fn kind_and_code(&self) -> (&'static str, u8) {
        match self {
            CliError::Core(Error::BoundExceeded(_)) => ("bound-exceeded", 3),
            CliError::Core(Error::TheoremViolation(_)) => ("theorem-violation", 1),
            CliError::Core(Error::Validation(_)) => ("validation", 2),
            CliError::Core(Error::Structural(_)) => ("structural", 2),
            CliError::Io(_) => ("io", 2),
            CliError::Input(_) => ("input", 2),
            CliError::UnknownKind(_) => ("unknown-kind", 2),
            CliError::Schema(_) => ("schema-mismatch", 2),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(m) | CliError::Input(m) | CliError::UnknownKind(m) | CliError::Schema(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read_doc(path: &str) -> Result<WorkbenchDoc> {
    let text = read_input(path)?;
    let v: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{path} is not JSON: {e}")))?;
    if let Some(kind) = v.get("kind") {
        if serde_json::from_value::<DocKind>(kind.clone()).is_err() {
            return Err(CliError::UnknownKind(format!("{path}: unknown document kind {kind}")));
        }
    }
    WorkbenchDoc::from_json(&text).map_err(|e| CliError::Schema(format!("{path}: {e}")))
}

fn load_doc_of(path: &str, kind: DocKind, bound: Option<usize>) -> Result<Subject> {
    let doc = read_doc(path)?;
    if doc.kind != kind {
        return Err(CliError::Input(format!("{path} is a {:?} document, expected {kind:?}", doc.kind)));
    }
    load_doc(&doc, bound)
}

fn load_doc(doc: &WorkbenchDoc, bound: Option<usize>) -> Result<Subject> {
    doc.load_with_bound(bound.unwrap_or(doc.arity_bound)).map_err(|e| match e {
        Error::Structural(m) if m.starts_with("payload does not match") => CliError::Schema(m),
        e => CliError::Core(e),
    })
}

/// A document path, `-`, or a built-in constructor: `terminal`,
/// `from_category:<file>`, `from_rig:<file>`, `example:<name>`.
fn load(arg: &str, bound: Option<usize>) -> Result<Subject> {
    if arg == "terminal" {
        return Ok(Subject::Cartesian(corpus::cart("terminal", bound.unwrap_or(DEFAULT_BOUND))?));
    }
    if let Some(path) = arg.strip_prefix("from_category:") {
        return load_doc_of(path, DocKind::Category, bound);
    }
    if let Some(path) = arg.strip_prefix("from_rig:") {
        return load_doc_of(path, DocKind::Rig, bound);
    }
    if let Some(name) = arg.strip_prefix("example:") {
        return Ok(Subject::Cartesian(corpus::cart(name, bound.unwrap_or(DEFAULT_BOUND))?));
    }
    let doc = read_doc(arg)?;
    load_doc(&doc, bound)
}

fn cartesian(arg: &str, bound: Option<usize>) -> Result<CartStructure> {
    match load(arg, bound)? {
        Subject::Cartesian(cs) => Ok(cs),
        _ => Err(CliError::Input(format!("{arg} has no cartesian structure; pass --gamma or use a rig, cmon_category or cart_structure document"))),
    }
}

pub fn validate(doc: &str, bound: Option<usize>) -> Result<Outcome> {
    let s = load(doc, bound)?;
    Ok(Outcome::report(&core_validate(s.multicat()?)?))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GammaDoc {
    gamma: GammaSpec,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GammaSpec {
    Table(Vec<GammaEntry>),
    Named(String),
}

pub fn check_cartesian(doc: &str, gamma: Option<&str>, bound: Option<usize>) -> Result<Outcome> {
    let cs = match gamma {
        None => cartesian(doc, bound)?,
        Some(path) => {
            let g: GammaDoc = serde_json::from_str(&read_input(path)?)
                .map_err(|e| CliError::Input(format!("{path} is not a reindexing document: {e}")))?;
            let host = load(doc, bound)?.multicat()?.clone();
            match g.gamma {
                GammaSpec::Table(entries) => CartStructure::new(host, TableGamma::new(&entries)),
                GammaSpec::Named(n) if n == "unique" => CartStructure::new(host, UniqueGamma),
                GammaSpec::Named(n) => {
                    let Some(file) = n.strip_prefix("rig:") else {
                        return Err(CliError::Input(format!("unknown reindexing rule {n:?}")));
                    };
                    let rdoc = read_doc(file)?;
                    if rdoc.kind != DocKind::Rig {
                        return Err(CliError::Input(format!("{file} is not a rig document")));
                    }
                    let rig: Rig = serde_json::from_value(rdoc.payload)
                        .map_err(|e| CliError::Input(format!("{file}: {e}")))?;
                    from_rig(&rig, host.bound())?
                }
            }
        }
    };
    Ok(Outcome::report(&core_check_cartesian(&cs)?))
}

pub fn free_cartesian(doc: &str, check: bool, bound: Option<usize>) -> Result<Outcome> {
    let s = load(doc, bound)?;
    let cs = core_free_cartesian(s.multicat()?);
    if check {
        return Ok(Outcome::report(&core_check_cartesian(&cs)?));
    }
    let d = WorkbenchDoc::new(DocKind::CartStructure, &CartPayload::export(&cs)?, cs.host().bound())?;
    let text = format!("free cartesian structure on {} with {} arrows\n", s.multicat()?.name(), cs.host().arrows_upto(cs.host().bound())?.len());
    Ok(Outcome::value(serde_json::to_value(&d).expect("documents serialize"), text))
}

pub fn products(doc: &str, equivalence: bool, sample: usize, bound: Option<usize>) -> Result<Outcome> {
    if equivalence {
        let cs = cartesian(doc, bound)?;
        return Ok(Outcome::report(&equivalence_report(&cs, sample)?));
    }
    let s = load(doc, bound)?;
    Ok(Outcome::report(&spanmap_is_opfibration(s.multicat()?, sample)?))
}

pub fn burnside(doc: &str, bound: Option<usize>) -> Result<Outcome> {
    let s = load(doc, bound)?;
    let b = core_burnside(s.multicat()?)?;
    let mut text = String::from("classes\n");
    for (o, c) in &b.classes {
        text.push_str(&format!("  {o} ~ {c}\n"));
    }
    match &b.monoid {
        Some(mon) => {
            text.push_str("tensor monoid\n");
            for a in mon.carrier.iter() {
                let row: Vec<&str> = mon.carrier.iter().map(|b| mon.plus(a, b)).collect();
                text.push_str(&format!("  {a}: {}\n", row.join(" ")));
            }
        }
        None => text.push_str("not representable within the bound\n"),
    }
    Ok(Outcome::value(json!({ "classes": b.classes, "monoid": b.monoid }), text))
}

pub fn base_change(doc: &str, along: AlongArg, bound: Option<usize>) -> Result<Outcome> {
    let s = load(doc, bound)?;
    let a = match along {
        AlongArg::Tot => Along::Tot,
        AlongArg::Bij => Along::Bij,
    };
    let pulled = core_base_change(s.multicat()?, a)?;
    let mut r = core_validate(&pulled)?;
    r.details.insert("base".into(), serde_json::to_value(pulled.base()).expect("bases serialize"));
    r.details.insert("arrows".into(), json!(pulled.arrows_upto(pulled.bound())?.len()));
    Ok(Outcome::report(&r))
}

pub fn check_model(theory: &str, model: &str, bound: Option<usize>) -> Result<Outcome> {
    let cs = cartesian(theory, bound)?;
    let m = match load_doc_of(model, DocKind::Model, bound)? {
        Subject::Model(m) => m,
        _ => unreachable!("model documents load as models"),
    };
    Ok(Outcome::report(&core_check_model(&cs, &m)?))
}

pub fn examples(name: Option<&str>, bound: Option<usize>) -> Result<Outcome> {
    let Some(name) = name else {
        let text = corpus::NAMES.iter().map(|n| format!("{n}\n")).collect();
        return Ok(Outcome::value(json!(corpus::NAMES), text));
    };
    let d = corpus::doc(name, bound.unwrap_or(DEFAULT_BOUND))?;
    let text = d.to_json() + "\n";
    Ok(Outcome::value(serde_json::to_value(&d).expect("documents serialize"), text))
}
