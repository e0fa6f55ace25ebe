use std::fs;
use std::path::Path;

use heatsym_core::conslaw::{
    bracket_triviality_check, divergence, generate_evolutionary, generate_point, invariance_check,
    is_trivial_first_kind, multiplier,
};
use heatsym_core::jet::residual;
use heatsym_core::liealg::{commutator, generators, printed_x5, verify_table_with};
use heatsym_core::parse::{parse_combination, parse_diff};
use heatsym_core::symmetry::{
    basis, dependency_total, deps_cross_order, deps_same_order, formula_n, independent_count,
    load_fixture, verify_fixture, WordMode, SHIPPED_RELATIONS,
};
use heatsym_core::{ConservedVector, PointVectorField};
use num_bigint::BigInt;
use thiserror::Error;

use crate::report::*;
use crate::{Command, Format, Mode};

/// Orders from here on need `--slow`.
pub const SLOW_ORDER: u64 = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Malformed { path: String, message: String },
    #[error("`{expr}` is not a symmetry characteristic: residual {residual}")]
    NotASymmetry { expr: String, residual: String },
    #[error(transparent)]
    Kernel(#[from] heatsym_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl From<heatsym_core::ParseError> for CliError {
    fn from(e: heatsym_core::ParseError) -> Self {
        CliError::Kernel(e.into())
    }
}

pub struct Output {
    pub rendered: String,
    pub ok: bool,
}

fn finish<R: Report>(r: R, format: Format) -> Output {
    let rendered = match format {
        Format::Json => serde_json::to_string_pretty(&r).expect("reports serialize"),
        Format::Text => r.text(),
    };
    Output {
        rendered,
        ok: r.ok(),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn small(v: BigInt) -> u64 {
    v.try_into().expect("count fits in u64")
}

fn gate(n: u64, slow: bool) -> Result<(), CliError> {
    if n >= SLOW_ORDER && !slow {
        return Err(CliError::Usage(format!(
            "order {n} is slow; pass --slow to run it"
        )));
    }
    Ok(())
}

pub fn run(cmd: &Command, slow: bool, format: Format) -> Result<Output, CliError> {
    match cmd {
        Command::Count { n, mode } => count(*n, *mode, slow, format),
        Command::Basis { n, out } => basis_cmd(*n, out.as_deref(), slow, format),
        Command::Apply { words } => apply(words, format),
        Command::VerifySymmetry { expr } => verify_symmetry(expr, format),
        Command::VerifyRelations {
            fixture,
            printed_only,
            source,
        } => verify_relations(fixture.as_deref(), *printed_only, source, format),
        Command::Commutators { printed_x5 } => commutators(*printed_x5, format),
        Command::Conserve { expr, from } => conserve(expr, from.as_deref(), format),
        Command::Classify { vector } => classify(vector, format),
    }
}

fn count(n: u64, mode: Mode, slow: bool, format: Format) -> Result<Output, CliError> {
    gate(n, slow)?;
    let (wm, name) = match mode {
        Mode::Nondecreasing => (WordMode::Nondecreasing, "nondecreasing"),
        Mode::All => (WordMode::All, "all"),
    };
    let c = independent_count(n, wm);
    let report = CountReport {
        order: n,
        mode: name,
        enumerated_rank: c.enumerated_rank,
        formula_n: c.formula_value,
        deps_same: (0..=n)
            .map(|k| KCount {
                k,
                count: small(deps_same_order(k)),
            })
            .collect(),
        deps_cross: (0..n)
            .map(|k| KCount {
                k,
                count: small(deps_cross_order(k)),
            })
            .collect(),
        deps_total: (2..=n)
            .map(|k| KCount {
                k,
                count: small(dependency_total(k)),
            })
            .collect(),
        agree: c.agree,
    };
    Ok(finish(report, format))
}

fn basis_cmd(n: u64, out: Option<&Path>, slow: bool, format: Format) -> Result<Output, CliError> {
    gate(n, slow)?;
    let items: Vec<BasisItem> = basis(n)
        .into_iter()
        .map(|e| BasisItem {
            word: e.word.to_string(),
            length: e.word.len(),
            text: e.characteristic.to_string(),
            characteristic: e.characteristic,
        })
        .collect();
    let size = items.len();
    let formula_n = small(formula_n(n));
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(&items).expect("basis serializes");
        fs::write(path, json + "\n").map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let report = BasisReport {
            order: n,
            size,
            formula_n,
            out: Some(path.display().to_string()),
            entries: None,
        };
        return Ok(finish(report, format));
    }
    Ok(finish(
        BasisReport {
            order: n,
            size,
            formula_n,
            out: None,
            entries: Some(items),
        },
        format,
    ))
}

fn apply(words: &str, format: Format) -> Result<Output, CliError> {
    let comb = parse_combination(words)?;
    let q = comb.apply_to_u();
    let report = ApplyReport {
        input: comb.to_string(),
        text: q.to_string(),
        is_symmetry: residual(&q).is_zero(),
        characteristic: q,
    };
    Ok(finish(report, format))
}

fn verify_symmetry(expr: &str, format: Format) -> Result<Output, CliError> {
    let q = parse_diff(expr)?;
    let r = residual(&q);
    let report = SymmetryReport {
        expr: q.to_string(),
        residual_text: r.to_string(),
        is_symmetry: r.is_zero(),
        residual: r,
    };
    Ok(finish(report, format))
}

fn verify_relations(
    fixture: Option<&Path>,
    printed_only: bool,
    sources: &[String],
    format: Format,
) -> Result<Output, CliError> {
    let (label, text) = match fixture {
        Some(p) => (p.display().to_string(), read(p)?),
        None => ("shipped".to_string(), SHIPPED_RELATIONS.to_string()),
    };
    let entries = load_fixture(&text).map_err(|e| CliError::Malformed {
        path: label.clone(),
        message: e.to_string(),
    })?;
    let verdicts = verify_fixture(&entries)?;
    let relations: Vec<RelationLine> = verdicts
        .into_iter()
        .filter(|v| !printed_only || v.entry.as_printed)
        .filter(|v| sources.is_empty() || sources.contains(&v.entry.source))
        .map(|v| RelationLine {
            relation: format!("{} == {}", v.entry.lhs, v.entry.rhs),
            holds: v.verdict.holds,
            residual_excerpt: excerpt(&v.verdict.residual.to_string()),
            typo_flagged: v.typo_flagged,
            as_printed: v.entry.as_printed,
            name: v.entry.name,
            source: v.entry.source,
        })
        .collect();
    let passed = relations.iter().filter(|r| r.holds).count();
    let report = RelationsReport {
        fixture: label,
        total: relations.len(),
        passed,
        failed: relations.len() - passed,
        failed_unflagged: relations
            .iter()
            .filter(|r| !r.holds && !r.typo_flagged)
            .count(),
        relations,
    };
    Ok(finish(report, format))
}

fn commutators(use_printed_x5: bool, format: Format) -> Result<Output, CliError> {
    let mut gens: Vec<PointVectorField> = generators();
    if use_printed_x5 {
        gens[4] = printed_x5();
    }
    let table = verify_table_with(&gens);
    let antisymmetric = gens.iter().all(|a| {
        gens.iter()
            .all(|b| commutator(a, b).add(&commutator(b, a)).is_zero())
    });
    let jacobi = gens.iter().all(|a| {
        gens.iter().all(|b| {
            gens.iter().all(|c| {
                commutator(&commutator(a, b), c)
                    .add(&commutator(&commutator(b, c), a))
                    .add(&commutator(&commutator(c, a), b))
                    .is_zero()
            })
        })
    });
    let report = CommutatorReport {
        x5: if use_printed_x5 {
            "as printed"
        } else {
            "corrected"
        },
        antisymmetric,
        jacobi,
        closed: table.closed,
        subalgebra_closed: table.subalgebra_closed,
        disagreements: table.disagreements,
        brackets: table
            .entries
            .into_iter()
            .map(|e| BracketLine {
                left: e.left,
                right: e.right,
                computed: e.computed.map(|c| c.to_string()),
                printed: e.printed.to_string(),
                agree: e.agree,
            })
            .collect(),
    };
    Ok(finish(report, format))
}

fn read_vector(path: &Path) -> Result<ConservedVector, CliError> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Malformed {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn summarize(t: ConservedVector) -> Result<LawSummary, CliError> {
    let d = divergence(&t);
    let conserved = d.conserved();
    let m = if conserved {
        Some(multiplier(&t)?)
    } else {
        None
    };
    Ok(LawSummary {
        vector_text: t.to_string(),
        on_shell_divergence: d.on_shell,
        conserved,
        multiplier_text: m.as_ref().map(|m| m.value.to_string()),
        adjoint_ok: m.as_ref().map(|m| m.adjoint_ok),
        multiplier_trivial: m.as_ref().map(|m| m.value.is_zero()),
        multiplier: m.map(|m| m.value),
        trivial_first_kind: is_trivial_first_kind(&t),
        vector: t,
    })
}

fn conserve(expr: &str, from: Option<&Path>, format: Format) -> Result<Output, CliError> {
    let q = parse_diff(expr)?;
    let r = residual(&q);
    if !r.is_zero() {
        return Err(CliError::NotASymmetry {
            expr: expr.to_string(),
            residual: r.to_string(),
        });
    }
    let seed = match from {
        Some(p) => read_vector(p)?,
        None => ConservedVector::base(),
    };
    let t = generate_evolutionary(&q, &seed)?;
    Ok(finish(
        ConserveReport {
            characteristic: q.to_string(),
            law: summarize(t)?,
        },
        format,
    ))
}

fn classify(path: &Path, format: Format) -> Result<Output, CliError> {
    let t = read_vector(path)?;
    let law = summarize(t.clone())?;
    let mut gen_lines = Vec::new();
    let mut bracket_checks = Vec::new();
    if law.conserved {
        let gens: Vec<PointVectorField> = generators();
        let associated: Vec<bool> = gens
            .iter()
            .map(|y| invariance_check(y, &t))
            .collect::<Result<_, _>>()?;
        for (i, x) in gens.iter().enumerate() {
            let generated = generate_point(x, &t)?;
            gen_lines.push(GeneratedLine {
                generator: i + 1,
                associated: associated[i],
                multiplier: multiplier(&generated)?.value.to_string(),
            });
            for (j, y) in gens
                .iter()
                .enumerate()
                .filter(|&(j, _)| associated[j] && j != i)
            {
                let check = bracket_triviality_check(x, y, &t)?;
                if let Some(factor) = check.proportional_to_y {
                    bracket_checks.push(BracketCheckLine {
                        x: i + 1,
                        y: j + 1,
                        factor,
                        observed_trivial: check.observed_trivial,
                    });
                }
            }
        }
    }
    Ok(finish(
        ClassifyReport {
            law,
            generators: gen_lines,
            bracket_checks,
        },
        format,
    ))
}
