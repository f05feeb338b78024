//! Finite unbiased symmetric, plain and cartesian multicategories over the
//! double prop of pullback squares of finite sets, with exhaustive law checks.

pub mod cartesian;
pub mod corpus;
pub mod doc;
pub mod doubleprop;
pub mod error;
pub mod fincat;
pub mod finset;
pub mod multicat;
pub mod ordinal;
pub mod products;
pub mod report;
pub mod spans;
pub mod term;

pub use cartesian::{CartStructure, Gamma};
pub use doc::{DocKind, Subject, WorkbenchDoc};
pub use doubleprop::BaseKind;
pub use error::{Error, Result};
pub use multicat::{Arrow, LooseArrow, MultiArrow, Multicat, MulticatOracle, ObjFamily, Obj};
pub use report::{Report, Status, Violation};
pub use spans::{ProductWitness, SpanArrow};
pub use term::Term;
