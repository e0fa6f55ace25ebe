use std::fmt;

use serde::{Deserialize, Serialize};

use super::words::{characteristics, OperatorWord};
use crate::error::{Error, Result};
use crate::parse::parse_relation;
use crate::{DiffFunction, Rational};

/// Formal rational combination `Σ c_w · w` of operator words.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct WordCombination {
    terms: Vec<(Rational, OperatorWord)>,
}

impl WordCombination {
    pub fn new(terms: Vec<(Rational, OperatorWord)>) -> Self {
        WordCombination { terms }
    }

    pub fn terms(&self) -> &[(Rational, OperatorWord)] {
        &self.terms
    }

    pub fn words(&self) -> impl Iterator<Item = &OperatorWord> + '_ {
        self.terms.iter().map(|(_, w)| w)
    }

    /// `Σ c_w · apply_word(w, U)`.
    pub fn apply_to_u(&self) -> DiffFunction {
        let words: Vec<OperatorWord> = self.words().cloned().collect();
        let chars = characteristics(&words);
        let mut out = DiffFunction::zero();
        for ((c, _), q) in self.terms.iter().zip(&chars) {
            out.add_scaled(q, c);
        }
        out
    }
}

impl fmt::Display for WordCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (c, w)) in self.terms.iter().enumerate() {
            let neg = *c < Rational::from_integer(0.into());
            let mag = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag != Rational::from_integer(1.into()) {
                write!(f, "{mag} ")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// A claimed identity `lhs[U] = rhs[U]` between word combinations.
#[derive(Clone, Debug, PartialEq)]
pub struct WordRelation {
    pub lhs: WordCombination,
    pub rhs: WordCombination,
}

impl WordRelation {
    pub fn new(lhs: WordCombination, rhs: WordCombination) -> Self {
        WordRelation { lhs, rhs }
    }
}

impl fmt::Display for WordRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} == {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationVerdict {
    pub holds: bool,
    /// Normal form of `lhs[U] − rhs[U]`.
    pub residual: DiffFunction,
}

pub fn verify_relation(rel: &WordRelation) -> RelationVerdict {
    let residual = (&rel.lhs.apply_to_u() - &rel.rhs.apply_to_u()).normal_form();
    RelationVerdict {
        holds: residual.is_zero(),
        residual,
    }
}

/// One row of a relation fixture file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureEntry {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub source: String,
    /// False for an entry that corrects a misprinted relation of the same name.
    pub as_printed: bool,
}

impl FixtureEntry {
    pub fn relation(&self) -> Result<WordRelation> {
        Ok(parse_relation(&format!("{} == {}", self.lhs, self.rhs))?)
    }
}

/// The dependency relations of orders one to three, as printed and with
/// corrections for the misprinted ones.
pub const SHIPPED_RELATIONS: &str = include_str!("../../fixtures/relations.json");

pub fn load_fixture(json: &str) -> Result<Vec<FixtureEntry>> {
    let entries: Vec<FixtureEntry> =
        serde_json::from_str(json).map_err(|e| Error::Fixture(e.to_string()))?;
    for e in &entries {
        e.relation()?;
    }
    Ok(entries)
}

pub fn shipped_fixture() -> Vec<FixtureEntry> {
    load_fixture(SHIPPED_RELATIONS).expect("shipped fixture is well formed")
}

#[derive(Clone, Debug)]
pub struct FixtureVerdict {
    pub entry: FixtureEntry,
    pub verdict: RelationVerdict,
    /// A printed entry that has a correction with the same name in the file.
    pub typo_flagged: bool,
}

/// Verifies every entry. The file passes iff every entry that is not
/// typo-flagged holds.
pub fn verify_fixture(entries: &[FixtureEntry]) -> Result<Vec<FixtureVerdict>> {
    use rayon::prelude::*;
    let corrected: std::collections::HashSet<&str> = entries
        .iter()
        .filter(|e| !e.as_printed)
        .map(|e| e.name.as_str())
        .collect();
    let rels = entries
        .iter()
        .map(FixtureEntry::relation)
        .collect::<Result<Vec<_>>>()?;
    let verdicts: Vec<RelationVerdict> = rels.par_iter().map(verify_relation).collect();
    Ok(entries
        .iter()
        .zip(verdicts)
        .map(|(e, verdict)| FixtureVerdict {
            typo_flagged: e.as_printed && corrected.contains(e.name.as_str()),
            entry: e.clone(),
            verdict,
        })
        .collect())
}
