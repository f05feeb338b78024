//! Named example structures shared by the CLI, the tests and the benches.

use crate::cartesian::cmon::{from_cmon_enriched, CMonCategory};
use crate::cartesian::gammas::{free_cartesian, from_rig, functions_cartesian, rig_arrow, FaultGamma, RigGamma, UniqueGamma};
use crate::cartesian::CartStructure;
use crate::doc::{CartPayload, DocKind, WorkbenchDoc};
use crate::error::{structural, Result};
use crate::fincat::FinCategory;
use crate::finset::FinSet;
use crate::multicat::builtin::{from_category, rig_multicat, terminal, unary};
use crate::multicat::Rig;

/// Every name accepted by [`cart`] and [`doc`].
pub const NAMES: &[&str] = &[
    "terminal",
    "n_seq",
    "rig_z2",
    "u_theory",
    "prodcat2",
    "rig_z4",
    "discrete_free",
    "arrow_free",
    "cmon_zero",
    "cmon_partial",
    "mat_z2",
    "fault_nullary",
    "fault_z3_max",
];

/// The structures whose law suites pass.
pub const VALID: &[&str] = &[
    "terminal",
    "n_seq",
    "rig_z2",
    "u_theory",
    "prodcat2",
    "rig_z4",
    "discrete_free",
    "arrow_free",
    "cmon_zero",
    "cmon_partial",
    "mat_z2",
];

/// Structures with one deliberately broken reindexing value.
pub const FAULTS: &[&str] = &["fault_nullary", "fault_z3_max"];

pub fn discrete2() -> FinCategory {
    FinCategory::discrete(&FinSet::new(["A", "B"]).expect("distinct tokens"))
}

/// `Z/3` multiplication with `max` in place of addition.
pub fn z3_max() -> Rig {
    let z3 = Rig::zmod(3);
    let mut wrong = z3.clone();
    wrong.add = z3
        .carrier
        .iter()
        .map(|a| (a.clone(), z3.carrier.iter().map(|b| (b.clone(), a.max(b).clone())).collect()))
        .collect();
    wrong
}

/// A named structure at the given bound.
pub fn cart(name: &str, bound: usize) -> Result<CartStructure> {
    Ok(match name {
        "terminal" => CartStructure::new(terminal(bound), UniqueGamma),
        "n_seq" => free_cartesian(&terminal(bound)),
        "rig_z2" => from_rig(&Rig::zmod(2), bound)?,
        "u_theory" => free_cartesian(&unary(bound)),
        "prodcat2" => functions_cartesian(&[("0", 0), ("1", 1)], bound)?,
        "rig_z4" => from_rig(&Rig::zmod(4), bound)?,
        "discrete_free" => free_cartesian(&from_category(&discrete2(), bound)?),
        "arrow_free" => free_cartesian(&from_category(&FinCategory::walking_arrow(), bound)?),
        "cmon_zero" => from_cmon_enriched(&CMonCategory::trivial(&["Z", "Z'"])?, bound)?,
        "cmon_partial" => from_cmon_enriched(&CMonCategory::matrices(&Rig::zmod(2), &[0, 1])?, bound)?,
        "mat_z2" => from_cmon_enriched(&CMonCategory::matrices(&Rig::zmod(2), &[0, 1, 2])?, bound)?,
        "fault_nullary" => {
            let cs = from_rig(&Rig::zmod(2), bound)?;
            FaultGamma::corrupt(&cs, rig_arrow(&[]), vec![], vec!["*".into()], rig_arrow(&["1"]))
        }
        "fault_z3_max" => CartStructure::new(rig_multicat(&Rig::zmod(3), bound)?, RigGamma { rig: z3_max() }),
        _ => return Err(structural(format!("no example named {name:?}; known: {}", NAMES.join(", ")))),
    })
}

/// A named structure as a document. Rigs and enriched categories keep their
/// own kinds; the rest are tabulated.
pub fn doc(name: &str, bound: usize) -> Result<WorkbenchDoc> {
    match name {
        "rig_z2" => WorkbenchDoc::new(DocKind::Rig, &Rig::zmod(2), bound),
        "rig_z4" => WorkbenchDoc::new(DocKind::Rig, &Rig::zmod(4), bound),
        "cmon_zero" => WorkbenchDoc::new(DocKind::CmonCategory, &CMonCategory::trivial(&["Z", "Z'"])?, bound),
        "cmon_partial" => WorkbenchDoc::new(DocKind::CmonCategory, &CMonCategory::matrices(&Rig::zmod(2), &[0, 1])?, bound),
        "mat_z2" => WorkbenchDoc::new(DocKind::CmonCategory, &CMonCategory::matrices(&Rig::zmod(2), &[0, 1, 2])?, bound),
        _ => WorkbenchDoc::new(DocKind::CartStructure, &CartPayload::export(&cart(name, bound)?)?, bound),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartesian::laws::check_cartesian;

    #[test]
    fn every_name_builds() {
        for n in NAMES {
            cart(n, 1).unwrap();
        }
        assert!(cart("nope", 1).is_err());
    }

    #[test]
    fn matrices_pass_the_law_suite() {
        for (name, k) in [("cmon_partial", 2), ("mat_z2", 1)] {
            let r = check_cartesian(&cart(name, k).unwrap()).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.violations);
        }
    }

    #[test]
    fn tabulated_documents_reload() {
        let d = doc("prodcat2", 2).unwrap();
        let back = WorkbenchDoc::from_json(&d.to_json()).unwrap();
        let cs = match back.load().unwrap() {
            crate::doc::Subject::Cartesian(cs) => cs,
            other => panic!("{other:?}"),
        };
        assert!(check_cartesian(&cs).unwrap().passed());
    }
}
