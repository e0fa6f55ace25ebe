//! Serializable command reports and their text rendering. Field order is
//! the JSON key order, so output is byte-stable for identical input.

use std::fmt::Write as _;

use heatsym_core::{ConservedVector, DiffFunction, Polynomial};
use serde::Serialize;

pub trait Report: Serialize {
    fn text(&self) -> String;
    /// Decides exit status 0 versus 1.
    fn ok(&self) -> bool;
}

const EXCERPT: usize = 120;

/// At most `EXCERPT` characters of `s`.
pub fn excerpt(s: &str) -> String {
    if s.chars().count() <= EXCERPT {
        s.to_string()
    } else {
        let head: String = s.chars().take(EXCERPT).collect();
        format!("{head} ...")
    }
}

#[derive(Serialize)]
pub struct KCount {
    pub k: u64,
    pub count: u64,
}

#[derive(Serialize)]
pub struct CountReport {
    pub order: u64,
    pub mode: &'static str,
    pub enumerated_rank: u64,
    #[serde(rename = "formula_N")]
    pub formula_n: u64,
    /// Relations among words of the same length `k`.
    pub deps_same: Vec<KCount>,
    /// Relations expressing length-`k + 1` words through length-`k` ones.
    pub deps_cross: Vec<KCount>,
    /// `deps_same(k) + deps_cross(k − 1)` for each order `k ≥ 2`.
    pub deps_total: Vec<KCount>,
    pub agree: bool,
}

impl Report for CountReport {
    fn text(&self) -> String {
        let mut s = format!(
            "order {} ({} words)\nenumerated rank: {}\nformula N:       {}\n",
            self.order, self.mode, self.enumerated_rank, self.formula_n
        );
        for t in &self.deps_total {
            let _ = writeln!(s, "dependencies at order {}: {}", t.k, t.count);
        }
        s.push_str(if self.agree { "agree" } else { "DISAGREE" });
        s
    }

    fn ok(&self) -> bool {
        self.agree
    }
}

#[derive(Serialize)]
pub struct BasisItem {
    pub word: String,
    pub characteristic: DiffFunction,
    #[serde(skip)]
    pub length: usize,
    #[serde(skip)]
    pub text: String,
}

#[derive(Serialize)]
pub struct BasisReport {
    pub order: u64,
    pub size: usize,
    #[serde(rename = "formula_N")]
    pub formula_n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<BasisItem>>,
}

impl Report for BasisReport {
    fn text(&self) -> String {
        let mut s = format!(
            "basis of order {}: {} characteristics (N = {})",
            self.order, self.size, self.formula_n
        );
        if let Some(out) = &self.out {
            let _ = write!(s, "\nwritten to {out}");
        }
        if let Some(entries) = &self.entries {
            let mut len = usize::MAX;
            for e in entries {
                if e.length != len {
                    len = e.length;
                    let _ = write!(s, "\n\nlength {len}:");
                }
                let _ = write!(s, "\n  {}: {}", e.word, e.text);
            }
        }
        s
    }

    fn ok(&self) -> bool {
        self.size as u64 == self.formula_n
    }
}

#[derive(Serialize)]
pub struct ApplyReport {
    pub input: String,
    pub characteristic: DiffFunction,
    pub text: String,
    pub is_symmetry: bool,
}

impl Report for ApplyReport {
    fn text(&self) -> String {
        format!("{} [U] = {}", self.input, self.text)
    }

    fn ok(&self) -> bool {
        self.is_symmetry
    }
}

#[derive(Serialize)]
pub struct SymmetryReport {
    pub expr: String,
    pub residual: DiffFunction,
    pub residual_text: String,
    pub is_symmetry: bool,
}

impl Report for SymmetryReport {
    fn text(&self) -> String {
        if self.is_symmetry {
            format!("{}: symmetry (residual 0)", self.expr)
        } else {
            format!(
                "{}: not a symmetry, residual {}",
                self.expr, self.residual_text
            )
        }
    }

    fn ok(&self) -> bool {
        self.is_symmetry
    }
}

#[derive(Serialize)]
pub struct RelationLine {
    pub name: String,
    pub source: String,
    pub as_printed: bool,
    pub typo_flagged: bool,
    pub relation: String,
    pub holds: bool,
    pub residual_excerpt: String,
}

#[derive(Serialize)]
pub struct RelationsReport {
    pub fixture: String,
    pub relations: Vec<RelationLine>,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub failed_unflagged: usize,
}

impl Report for RelationsReport {
    fn text(&self) -> String {
        let mut s = String::new();
        for r in &self.relations {
            let mark = match (r.holds, r.typo_flagged) {
                (true, _) => "pass",
                (false, true) => "FAIL (misprint, corrected entry follows)",
                (false, false) => "FAIL",
            };
            let _ = writeln!(
                s,
                "{:<16} {:<7} {mark}",
                r.name,
                if r.as_printed { "printed" } else { "fixed" }
            );
            if !r.holds {
                let _ = writeln!(
                    s,
                    "    {}\n    residual: {}",
                    r.relation, r.residual_excerpt
                );
            }
        }
        let _ = write!(
            s,
            "{}/{} pass; {} unexpected failure(s) ({})",
            self.passed, self.total, self.failed_unflagged, self.fixture
        );
        s
    }

    fn ok(&self) -> bool {
        self.failed_unflagged == 0
    }
}

#[derive(Serialize)]
pub struct BracketLine {
    pub left: usize,
    pub right: usize,
    /// `None` when the bracket leaves `span{X1..X13}`.
    pub computed: Option<String>,
    pub printed: String,
    pub agree: bool,
}

#[derive(Serialize)]
pub struct CommutatorReport {
    pub x5: &'static str,
    pub antisymmetric: bool,
    pub jacobi: bool,
    pub closed: bool,
    pub subalgebra_closed: bool,
    pub disagreements: usize,
    pub brackets: Vec<BracketLine>,
}

impl Report for CommutatorReport {
    fn text(&self) -> String {
        let mut s = String::new();
        for b in &self.brackets {
            let computed = b.computed.as_deref().unwrap_or("(outside span)");
            let _ = write!(s, "[X{}, X{}] = {computed}", b.left, b.right);
            if !b.agree {
                let _ = write!(s, "    printed: {}", b.printed);
            }
            s.push('\n');
        }
        let _ = write!(
            s,
            "X5 {}; antisymmetric {}; Jacobi {}; closed {}; X1..X10 closed {}; {} disagreement(s) with the printed table",
            self.x5, self.antisymmetric, self.jacobi, self.closed, self.subalgebra_closed, self.disagreements
        );
        s
    }

    fn ok(&self) -> bool {
        self.antisymmetric && self.jacobi && self.closed && self.disagreements == 0
    }
}

#[derive(Serialize)]
pub struct LawSummary {
    pub vector: ConservedVector,
    pub vector_text: String,
    pub on_shell_divergence: DiffFunction,
    pub conserved: bool,
    pub multiplier: Option<Polynomial>,
    pub multiplier_text: Option<String>,
    pub adjoint_ok: Option<bool>,
    /// Every component vanishes on solutions.
    pub trivial_first_kind: bool,
    /// Zero multiplier.
    pub multiplier_trivial: Option<bool>,
}

impl LawSummary {
    fn text(&self) -> String {
        let mut s = format!(
            "T = {}\non-shell divergence: {}\n",
            self.vector_text, self.on_shell_divergence
        );
        match (&self.multiplier_text, self.adjoint_ok) {
            (Some(m), Some(adj)) => {
                let _ = write!(
                    s,
                    "multiplier: {m} (adjoint equation {})",
                    if adj { "holds" } else { "FAILS" }
                );
            }
            _ => s.push_str("not conserved"),
        }
        if self.trivial_first_kind {
            s.push_str("\ntrivial: vanishes on solutions");
        } else if self.multiplier_trivial == Some(true) {
            s.push_str("\ntrivial: zero multiplier");
        }
        s
    }

    fn ok(&self) -> bool {
        self.conserved && self.adjoint_ok == Some(true)
    }
}

#[derive(Serialize)]
pub struct ConserveReport {
    pub characteristic: String,
    #[serde(flatten)]
    pub law: LawSummary,
}

impl Report for ConserveReport {
    fn text(&self) -> String {
        format!("Q = {}\n{}", self.characteristic, self.law.text())
    }

    fn ok(&self) -> bool {
        self.law.ok()
    }
}

#[derive(Serialize)]
pub struct GeneratedLine {
    pub generator: usize,
    pub associated: bool,
    pub multiplier: String,
}

#[derive(Serialize)]
pub struct BracketCheckLine {
    pub x: usize,
    pub y: usize,
    /// `b` with `[X, Y] = b·Y`.
    pub factor: String,
    pub observed_trivial: bool,
}

#[derive(Serialize)]
pub struct ClassifyReport {
    #[serde(flatten)]
    pub law: LawSummary,
    /// Per point symmetry: invariance of the vector, multiplier of the law it generates.
    pub generators: Vec<GeneratedLine>,
    /// Pairs where `[X, Y]` is a multiple of an associated `Y`.
    pub bracket_checks: Vec<BracketCheckLine>,
}

impl Report for ClassifyReport {
    fn text(&self) -> String {
        let mut s = self.law.text();
        if !self.generators.is_empty() {
            let assoc: Vec<String> = self
                .generators
                .iter()
                .filter(|g| g.associated)
                .map(|g| format!("X{}", g.generator))
                .collect();
            let _ = write!(
                s,
                "\nassociated symmetries: {}",
                if assoc.is_empty() {
                    "none".into()
                } else {
                    assoc.join(", ")
                }
            );
            for g in &self.generators {
                let _ = write!(
                    s,
                    "\n  X{} generates multiplier {}",
                    g.generator, g.multiplier
                );
            }
            let contradicted = self
                .bracket_checks
                .iter()
                .filter(|b| !b.observed_trivial)
                .count();
            let _ = write!(
                s,
                "\nbracket criterion: {} pair(s) predict a trivial generated law; {} of them generate a nonzero multiplier",
                self.bracket_checks.len(),
                contradicted
            );
        }
        s
    }

    fn ok(&self) -> bool {
        self.law.ok()
    }
}
