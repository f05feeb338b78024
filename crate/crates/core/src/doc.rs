//! Workbench documents: a versioned envelope around one kind of payload.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cartesian::cmon::{from_cmon_enriched, CMonCategory};
use crate::cartesian::gammas::{from_rig, GammaEntry, TableGamma};
use crate::cartesian::model::Model;
use crate::cartesian::{extensions, CartStructure};
use crate::error::{structural, Error, Result};
use crate::fincat::FinCategory;
use crate::multicat::builtin::{from_category, from_comm_monoid};
use crate::multicat::table::{from_table, materialize, TablePayload};
use crate::multicat::{Arrow, CommMonoid, Multicat, Rig};
use crate::ordinal;

pub const VERSION: &str = "1.0.0";
pub const DEFAULT_BOUND: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DocKind {
    Multicat,
    Category,
    Rig,
    CommMonoid,
    CmonCategory,
    CartStructure,
    Model,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkbenchDoc {
    pub version: String,
    pub kind: DocKind,
    pub payload: serde_json::Value,
    #[serde(default = "default_bound")]
    pub arity_bound: usize,
}

fn default_bound() -> usize {
    DEFAULT_BOUND
}

/// A table host with an explicit reindexing table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CartPayload {
    pub host: TablePayload,
    pub gamma: Vec<GammaEntry>,
}

impl CartPayload {
    /// Tabulate a host and its reindexing rule up to the bound.
    pub fn export(cs: &CartStructure) -> Result<CartPayload> {
        let m = cs.host();
        let k = m.bound();
        let host = materialize(m)?;
        let ids: BTreeMap<Arrow, String> = m
            .arrows_upto(k)?
            .into_iter()
            .zip(host.arrows.iter().map(|e| e.id.clone()))
            .collect();
        let id = |a: &Arrow| {
            ids.get(a)
                .cloned()
                .ok_or_else(|| Error::TheoremViolation(format!("{a} escaped the enumeration")))
        };
        let mut gamma = Vec::new();
        for a in ids.keys() {
            for nj in 0..=k {
                for f in ordinal::all_maps(a.arity(), nj) {
                    for y in extensions(m, &a.dom, &f, nj) {
                        gamma.push(GammaEntry {
                            arrow: id(a)?,
                            f: f.clone(),
                            result: id(&cs.push(a, &f, &y)?)?,
                        });
                    }
                }
            }
        }
        gamma.sort();
        Ok(CartPayload { host, gamma })
    }

    pub fn load(&self, bound: usize) -> Result<CartStructure> {
        Ok(CartStructure::new(from_table(&self.host, bound)?, TableGamma::new(&self.gamma)))
    }
}

/// What a document denotes once loaded.
#[derive(Clone, Debug)]
pub enum Subject {
    Multicat(Multicat),
    Cartesian(CartStructure),
    Model(Model),
}

impl Subject {
    pub fn multicat(&self) -> Result<&Multicat> {
        match self {
            Subject::Multicat(m) => Ok(m),
            Subject::Cartesian(cs) => Ok(cs.host()),
            Subject::Model(_) => Err(structural("a model document does not describe a multicategory")),
        }
    }
}

fn parse<T: for<'de> Deserialize<'de>>(v: &serde_json::Value, kind: DocKind) -> Result<T> {
    T::deserialize(v).map_err(|e| structural(format!("payload does not match the {kind:?} schema: {e}")))
}

impl WorkbenchDoc {
    pub fn new(kind: DocKind, payload: &impl Serialize, arity_bound: usize) -> Result<WorkbenchDoc> {
        Ok(WorkbenchDoc {
            version: VERSION.into(),
            kind,
            payload: serde_json::to_value(payload).map_err(|e| structural(e.to_string()))?,
            arity_bound,
        })
    }

    pub fn from_json(text: &str) -> Result<WorkbenchDoc> {
        let doc: WorkbenchDoc =
            serde_json::from_str(text).map_err(|e| structural(format!("not a workbench document: {e}")))?;
        if doc.version.split('.').next() != VERSION.split('.').next() {
            return Err(structural(format!("unsupported document version {}", doc.version)));
        }
        Ok(doc)
    }

    /// Pretty JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("documents serialize");
        serde_json::to_string_pretty(&v).expect("values serialize")
    }

    pub fn load(&self) -> Result<Subject> {
        self.load_with_bound(self.arity_bound)
    }

    pub fn load_with_bound(&self, k: usize) -> Result<Subject> {
        let p = &self.payload;
        Ok(match self.kind {
            DocKind::Multicat => Subject::Multicat(from_table(&parse(p, self.kind)?, k)?),
            DocKind::Category => Subject::Multicat(from_category(&parse::<FinCategory>(p, self.kind)?, k)?),
            DocKind::Rig => Subject::Cartesian(from_rig(&parse::<Rig>(p, self.kind)?, k)?),
            DocKind::CommMonoid => Subject::Multicat(from_comm_monoid(&parse::<CommMonoid>(p, self.kind)?, k)?),
            DocKind::CmonCategory => Subject::Cartesian(from_cmon_enriched(&parse::<CMonCategory>(p, self.kind)?, k)?),
            DocKind::CartStructure => Subject::Cartesian(parse::<CartPayload>(p, self.kind)?.load(k)?),
            DocKind::Model => Subject::Model(parse(p, self.kind)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartesian::gammas::UniqueGamma;
    use crate::cartesian::laws::check_cartesian;
    use crate::multicat::builtin::terminal;

    #[test]
    fn rig_documents_round_trip() {
        let doc = WorkbenchDoc::new(DocKind::Rig, &Rig::zmod(2), 2).unwrap();
        let back = WorkbenchDoc::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert!(matches!(back.load().unwrap(), Subject::Cartesian(_)));
    }

    #[test]
    fn exported_structures_pass_the_same_checks() {
        let cs = CartStructure::new(terminal(2), UniqueGamma);
        let payload = CartPayload::export(&cs).unwrap();
        let loaded = payload.load(2).unwrap();
        assert!(check_cartesian(&loaded).unwrap().passed());
    }

    #[test]
    fn unknown_kinds_and_versions_are_rejected() {
        let bad = r#"{"version":"1.0.0","kind":"groupoid","payload":{},"arity_bound":2}"#;
        assert!(WorkbenchDoc::from_json(bad).is_err());
        let old = r#"{"version":"0.3.0","kind":"rig","payload":{},"arity_bound":2}"#;
        assert!(WorkbenchDoc::from_json(old).is_err());
        let wrong = WorkbenchDoc::new(DocKind::Rig, &serde_json::json!({"objects": []}), 2).unwrap();
        assert!(wrong.load().is_err());
    }
}
