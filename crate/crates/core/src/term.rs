use std::fmt;

use serde::{Serialize, Serializer};

/// Identity of an arrow inside a generative multicategory.
///
/// Built-in constructors encode their arrows structurally, so two terms are
/// equal exactly when they name the same arrow of the same hom-set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Nat(u64),
    Sym(String),
    List(Vec<Term>),
}

impl Term {
    pub fn sym(s: impl Into<String>) -> Term {
        Term::Sym(s.into())
    }

    pub fn nats(xs: &[usize]) -> Term {
        Term::List(xs.iter().map(|&x| Term::Nat(x as u64)).collect())
    }

    pub fn as_list(&self) -> Option<&[Term]> {
        match self {
            Term::List(xs) => Some(xs),
            _ => None,
        }
    }

    pub fn as_nat(&self) -> Option<usize> {
        match self {
            Term::Nat(n) => Some(*n as usize),
            _ => None,
        }
    }

    pub fn as_sym(&self) -> Option<&str> {
        match self {
            Term::Sym(s) => Some(s),
            _ => None,
        }
    }

    /// Decode a list of naturals.
    pub fn to_nats(&self) -> Option<Vec<usize>> {
        self.as_list()?.iter().map(Term::as_nat).collect()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Nat(n) => write!(f, "{n}"),
            Term::Sym(s) => f.write_str(s),
            Term::List(xs) => {
                f.write_str("[")?;
                for (k, x) in xs.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
        }
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_compact() {
        let t = Term::List(vec![Term::sym("a"), Term::nats(&[0, 2]), Term::List(vec![])]);
        assert_eq!(t.to_string(), "[a,[0,2],[]]");
    }

    #[test]
    fn nats_round_trip() {
        assert_eq!(Term::nats(&[3, 1]).to_nats(), Some(vec![3, 1]));
        assert_eq!(Term::sym("x").to_nats(), None);
    }
}
