//! Line-oriented text formats.
//!
//! Every format ignores blank lines and anything after `#`, and writes the
//! empty string as `@`. Writers are the `Display` impls of the values, so
//! what is written parses back to an equal value.
//!
//! | file | line |
//! |------|------|
//! | code set | `σ` |
//! | requests | `n σ` |
//! | machine table | `τ σ` |
//! | information content measure | `σ k` |
//! | test | `level k` headers, then `σ` lines |
//! | table functional | `σ n t v` |
//! | witness | `n f(n)`, for `n = 0, 1, ...` |

use std::str::FromStr;

use thiserror::Error;

use crate::bitspace::{BitString, BitspaceError, CodeSet, DepthCap, OpenSet};
use crate::domination::{DominationError, GrowthFunction, TableFunctional, TableRow};
use crate::kc::Request;
use crate::machine::{Icm, MachineError, MachineTable};
use crate::mltest::{MlTest, MlTestError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Bitspace(#[from] BitspaceError),
    #[error(transparent)]
    Machine(#[from] MachineError),
    #[error(transparent)]
    Domination(#[from] DominationError),
    #[error(transparent)]
    MlTest(#[from] MlTestError),
}

impl FormatError {
    /// Malformed input, as opposed to well-formed input that breaks a
    /// contract such as the depth cap or a measure bound.
    pub fn is_malformed(&self) -> bool {
        match self {
            FormatError::Syntax { .. } => true,
            FormatError::Bitspace(e)
            | FormatError::Machine(MachineError::Bitspace(e))
            | FormatError::MlTest(MlTestError::Bitspace(e)) => {
                e.is_parse() || matches!(e, BitspaceError::NotPrefixFree { .. })
            }
            FormatError::Domination(DominationError::InvalidRow(_)) => true,
            _ => false,
        }
    }
}

/// Non-empty lines with comments removed, as `(line number, tokens)`.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let content = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn field<T: FromStr>(line: usize, token: &str, what: &str) -> Result<T, FormatError>
where
    T::Err: std::fmt::Display,
{
    token.parse().map_err(|e| FormatError::Syntax {
        line,
        message: format!("bad {what} {token:?}: {e}"),
    })
}

fn arity(line: usize, tokens: &[&str], n: usize, layout: &str) -> Result<(), FormatError> {
    if tokens.len() == n {
        Ok(())
    } else {
        Err(FormatError::Syntax {
            line,
            message: format!("expected `{layout}`, found {} fields", tokens.len()),
        })
    }
}

pub fn parse_code_set(text: &str, cap: DepthCap) -> Result<CodeSet, FormatError> {
    let mut words = Vec::new();
    for (line, tokens) in records(text) {
        arity(line, &tokens, 1, "σ")?;
        words.push(field::<BitString>(line, tokens[0], "word")?);
    }
    Ok(CodeSet::new(words, cap)?)
}

pub fn parse_open_set(text: &str, cap: DepthCap) -> Result<OpenSet, FormatError> {
    parse_code_set(text, cap).map(OpenSet::new)
}

pub fn parse_requests(text: &str) -> Result<Vec<Request>, FormatError> {
    records(text)
        .map(|(line, tokens)| {
            arity(line, &tokens, 2, "n σ")?;
            Ok(Request::new(
                field(line, tokens[0], "length")?,
                field(line, tokens[1], "word")?,
            ))
        })
        .collect()
}

pub fn format_requests(requests: &[Request]) -> String {
    requests.iter().map(|r| format!("{r}\n")).collect()
}

pub fn parse_machine_table(text: &str, cap: DepthCap) -> Result<MachineTable, FormatError> {
    let mut entries = Vec::new();
    for (line, tokens) in records(text) {
        arity(line, &tokens, 2, "τ σ")?;
        entries.push((
            field::<BitString>(line, tokens[0], "program")?,
            field::<BitString>(line, tokens[1], "output")?,
        ));
    }
    Ok(MachineTable::new(entries, cap)?)
}

pub fn parse_icm(text: &str) -> Result<Icm, FormatError> {
    let mut icm = Icm::new();
    for (line, tokens) in records(text) {
        arity(line, &tokens, 2, "σ k")?;
        icm.insert(
            field(line, tokens[0], "word")?,
            field(line, tokens[1], "exponent")?,
        );
    }
    Ok(icm)
}

/// Levels missing between headers are empty.
pub fn parse_test(text: &str, cap: DepthCap) -> Result<MlTest, FormatError> {
    let mut levels: Vec<Vec<BitString>> = Vec::new();
    for (line, tokens) in records(text) {
        if tokens[0] == "level" {
            arity(line, &tokens, 2, "level k")?;
            let k: usize = field(line, tokens[1], "level")?;
            if k < levels.len() {
                return Err(FormatError::Syntax {
                    line,
                    message: format!("level {k} is out of order"),
                });
            }
            levels.resize(k + 1, Vec::new());
        } else {
            arity(line, &tokens, 1, "σ")?;
            let w = field(line, tokens[0], "word")?;
            levels
                .last_mut()
                .ok_or_else(|| FormatError::Syntax {
                    line,
                    message: "generator before the first `level` header".into(),
                })?
                .push(w);
        }
    }
    let sets = levels
        .into_iter()
        .map(|words| CodeSet::new(words, cap).map(OpenSet::new))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MlTest::new(sets, cap)?)
}

pub fn parse_table_functional(text: &str) -> Result<TableFunctional, FormatError> {
    let mut rows = Vec::new();
    for (line, tokens) in records(text) {
        arity(line, &tokens, 4, "σ n t v")?;
        rows.push(TableRow {
            prefix: field(line, tokens[0], "prefix")?,
            input: field(line, tokens[1], "input")?,
            step: field(line, tokens[2], "step")?,
            value: field(line, tokens[3], "value")?,
        });
    }
    Ok(TableFunctional::new(rows)?)
}

pub fn parse_witness(text: &str) -> Result<GrowthFunction, FormatError> {
    let mut values = Vec::new();
    for (line, tokens) in records(text) {
        arity(line, &tokens, 2, "n f(n)")?;
        let n: usize = field(line, tokens[0], "input")?;
        if n != values.len() {
            return Err(FormatError::Syntax {
                line,
                message: format!("expected input {}, found {n}", values.len()),
            });
        }
        values.push(field(line, tokens[1], "value")?);
    }
    Ok(GrowthFunction(values))
}
