//! Machine-readable violation reports shared by every axiom checker.

use std::fmt;

use serde::Serialize;

use crate::finba::{Element, FiniteBooleanAlgebra};

/// One violated law together with the quantified instance that breaks it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: &'static str,
    #[serde(skip)]
    pub witness: Vec<Element>,
    /// Witness elements rendered as sorted atom-name lists.
    #[serde(rename = "witness")]
    pub rendered: Vec<Vec<String>>,
}

impl Violation {
    pub fn new(law: &'static str, algebra: &FiniteBooleanAlgebra, witness: &[Element]) -> Self {
        Self::mixed(law, witness.iter().map(|&e| (algebra, e)))
    }

    /// Witness whose slots live in different algebras (morphism checks).
    pub fn mixed<'a>(
        law: &'static str,
        slots: impl IntoIterator<Item = (&'a FiniteBooleanAlgebra, Element)>,
    ) -> Self {
        let (witness, rendered) = slots
            .into_iter()
            .map(|(alg, e)| {
                let mut names: Vec<String> = alg.names_of(e).into_iter().map(str::to_owned).collect();
                names.sort();
                (e, names)
            })
            .unzip();
        Violation {
            law,
            witness,
            rendered,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn extend(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn witness(&self, law: &str) -> Option<&[Element]> {
        self.violations
            .iter()
            .find(|v| v.law == law)
            .map(|v| v.witness.as_slice())
    }

    pub fn laws(&self) -> Vec<&'static str> {
        self.violations.iter().map(|v| v.law).collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("no violations");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} at (", v.law)?;
            for (j, w) in v.rendered.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{{{}}}", w.join(","))?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}
