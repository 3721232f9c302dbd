use std::collections::BTreeMap;
use std::fmt;

use super::{DominationError, Eval, Functional};
use crate::bitspace::BitString;

/// `Φ^X(n) = v` at step `t` whenever `σ ⊑ X`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TableRow {
    pub prefix: BitString,
    pub input: u64,
    pub step: u64,
    pub value: u64,
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {}",
            self.prefix, self.input, self.step, self.value
        )
    }
}

/// A functional given by finitely many rows.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TableFunctional {
    by_input: BTreeMap<u64, Vec<TableRow>>,
}

impl TableFunctional {
    /// Rejects rows with `value > step` and comparable prefixes on the same
    /// input that disagree on `(step, value)`.
    pub fn new(rows: impl IntoIterator<Item = TableRow>) -> Result<Self, DominationError> {
        let mut by_input: BTreeMap<u64, Vec<TableRow>> = BTreeMap::new();
        for row in rows {
            if row.value > row.step {
                return Err(DominationError::InvalidRow(format!(
                    "row `{row}` has value above its step"
                )));
            }
            by_input.entry(row.input).or_default().push(row);
        }
        for rows in by_input.values_mut() {
            rows.sort();
            rows.dedup();
            for (i, a) in rows.iter().enumerate() {
                for b in &rows[i + 1..] {
                    if a.prefix.comparable(&b.prefix) && (a.step, a.value) != (b.step, b.value) {
                        return Err(DominationError::InvalidRow(format!(
                            "rows `{a}` and `{b}` disagree on comparable prefixes"
                        )));
                    }
                }
            }
        }
        Ok(Self { by_input })
    }

    pub fn rows(&self) -> impl Iterator<Item = &TableRow> + '_ {
        self.by_input.values().flatten()
    }

    pub fn len(&self) -> usize {
        self.by_input.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.by_input.is_empty()
    }

    /// Longest prefix in any row.
    pub fn depth(&self) -> usize {
        self.rows().map(|r| r.prefix.len()).max().unwrap_or(0)
    }
}

impl Functional for TableFunctional {
    fn eval(&self, oracle: &[bool], input: u64, budget: u64) -> Eval {
        let Some(rows) = self.by_input.get(&input) else {
            return Eval::Pending;
        };
        if let Some(r) = rows.iter().find(|r| r.prefix.is_prefix_of_bits(oracle)) {
            return if r.step <= budget {
                Eval::Converged {
                    value: r.value,
                    step: r.step,
                }
            } else {
                Eval::Pending
            };
        }
        let needs_more = rows.iter().any(|r| {
            r.step <= budget && r.prefix.len() > oracle.len() && r.prefix[..oracle.len()] == *oracle
        });
        if needs_more {
            Eval::OracleTooShort {
                position: oracle.len(),
            }
        } else {
            Eval::Pending
        }
    }

    fn describe(&self) -> String {
        format!("table({} rows)", self.len())
    }
}

impl fmt::Display for TableFunctional {
    /// File lines `σ n t v`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.rows() {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}
