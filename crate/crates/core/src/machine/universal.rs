use std::collections::BTreeSet;
use std::fmt;

use super::{MachineError, MachineTable};
use crate::bitspace::trie::Trie;
use crate::bitspace::BitString;

/// Default number of catalog slots.
pub const DEFAULT_CAPACITY: usize = 64;

/// Longest binary numeral the self-delimiting length code accepts.
const MAX_LENGTH_BITS: usize = 40;

/// Self-delimiting code for a natural number: the binary numeral of `n`
/// (empty for 0, no leading zeros) with every bit doubled, then `01`.
pub fn encode_length(n: u64) -> BitString {
    let width = 64 - n.leading_zeros() as usize;
    let mut bits = Vec::with_capacity(2 * width + 2);
    for i in (0..width).rev() {
        let b = (n >> i) & 1 == 1;
        bits.push(b);
        bits.push(b);
    }
    bits.push(false);
    bits.push(true);
    BitString::from_bits(bits)
}

/// One slot of the catalog.
#[derive(Clone)]
pub enum SubMachine {
    /// Payload `code(L) ⋅ body` with `|body| = L`; outputs `body`.
    Identity,
    /// Payload `code(j)`; outputs the first `j` oracle bits.
    OraclePrefix,
    Table(TableMachine),
}

/// A registered table with its program trie.
#[derive(Clone)]
pub struct TableMachine {
    table: MachineTable,
    trie: Trie,
}

impl TableMachine {
    fn new(table: MachineTable) -> Self {
        let trie = Trie::from_words(table.iter().map(|(p, _)| p));
        Self { table, trie }
    }

    pub fn table(&self) -> &MachineTable {
        &self.table
    }
}

impl SubMachine {
    pub fn name(&self) -> &'static str {
        match self {
            SubMachine::Identity => "identity",
            SubMachine::OraclePrefix => "oracle-prefix",
            SubMachine::Table(_) => "table",
        }
    }

    /// The shortest payload that makes this slot output `output`, if any.
    /// Within one slot the shortest such payload is also the fastest.
    pub(crate) fn payload_for(&self, output: &BitString, oracle: &[bool]) -> Option<BitString> {
        match self {
            SubMachine::Identity => Some(encode_length(output.len() as u64).concat(output)),
            SubMachine::OraclePrefix => (oracle.len() >= output.len()
                && oracle[..output.len()] == output[..])
                .then(|| encode_length(output.len() as u64)),
            SubMachine::Table(t) => t.table.shortest_program(output).cloned(),
        }
    }

    /// Payload/output pairs with `|payload| + slack ≤ |output|` and
    /// `|output| ≤ max_output`, reduced to the ones not covered by a shorter
    /// output of the same slot that is at least as fast.
    pub(crate) fn compressing(
        &self,
        oracle: &[bool],
        max_output: usize,
        slack: i64,
    ) -> Vec<(BitString, BitString)> {
        let fits = |payload: usize, output: usize| payload as i64 + slack <= output as i64;
        match self {
            // |payload| = |output| + 2·width + 2, so only slack <= -2 can fit,
            // and then the empty output (fastest, covers everything) fits.
            SubMachine::Identity => {
                let payload = encode_length(0);
                if fits(payload.len(), 0) {
                    vec![(payload, BitString::empty())]
                } else {
                    Vec::new()
                }
            }
            SubMachine::OraclePrefix => {
                let top = max_output.min(oracle.len());
                (0..=top)
                    .find(|&j| fits(encode_length(j as u64).len(), j))
                    .map(|j| vec![(encode_length(j as u64), BitString::from_bits(&oracle[..j]))])
                    .unwrap_or_default()
            }
            SubMachine::Table(t) => t
                .table
                .iter()
                .filter(|(p, o)| o.len() <= max_output && fits(p.len(), o.len()))
                .map(|(p, o)| (p.clone(), o.clone()))
                .collect(),
        }
    }
}

impl fmt::Debug for SubMachine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubMachine::Table(t) => write!(f, "Table({} entries)", t.table.len()),
            other => f.write_str(other.name()),
        }
    }
}

/// Result of a bounded run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Halted {
        output: BitString,
        steps: u64,
        /// One past the largest oracle position queried; 0 if none.
        oracle_use: usize,
        oracle_positions: Vec<usize>,
    },
    OutOfBudget,
    /// The oracle prefix ends before `position`.
    OracleTooShort {
        position: usize,
    },
    /// The program is not in the domain: it ends early, has trailing bits,
    /// or leaves every slot's code space.
    NoParse,
}

impl Outcome {
    pub fn output(&self) -> Option<&BitString> {
        match self {
            Outcome::Halted { output, .. } => Some(output),
            _ => None,
        }
    }

    pub fn is_halted(&self) -> bool {
        matches!(self, Outcome::Halted { .. })
    }
}

/// Index and additive constant `c = index + 1` of a registered slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Registration {
    pub index: usize,
    pub constant: usize,
}

/// Catalog machine: program `0^i 1 ⋅ payload` runs slot `i` on `payload`.
///
/// Steps: each program bit read, each table lookup and each oracle query
/// costs one step.
#[derive(Debug, Clone)]
pub struct UniversalMachine {
    catalog: Vec<SubMachine>,
    capacity: usize,
}

impl Default for UniversalMachine {
    fn default() -> Self {
        Self::new()
    }
}

impl UniversalMachine {
    /// Slot 0 only.
    pub fn new() -> Self {
        Self::with_capacity(DEFAULT_CAPACITY)
    }

    pub fn with_capacity(capacity: usize) -> Self {
        Self {
            catalog: vec![SubMachine::Identity],
            capacity: capacity.max(1),
        }
    }

    /// Slot 0 identity, slot 1 oracle prefix.
    pub fn standard() -> Self {
        let mut m = Self::new();
        m.catalog.push(SubMachine::OraclePrefix);
        m
    }

    pub fn catalog(&self) -> &[SubMachine] {
        &self.catalog
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    fn push(&self, sub: SubMachine) -> Result<(Self, Registration), MachineError> {
        if self.catalog.len() >= self.capacity {
            return Err(MachineError::CatalogFull {
                capacity: self.capacity,
            });
        }
        let mut next = self.clone();
        next.catalog.push(sub);
        let index = next.catalog.len() - 1;
        Ok((
            next,
            Registration {
                index,
                constant: index + 1,
            },
        ))
    }

    /// Append a table; afterwards every entry `τ → σ` is reachable by the
    /// program `0^i 1 τ` of length `|τ| + c`.
    pub fn register(&self, table: MachineTable) -> Result<(Self, Registration), MachineError> {
        self.push(SubMachine::Table(TableMachine::new(table)))
    }

    pub fn register_oracle_prefix(&self) -> Result<(Self, Registration), MachineError> {
        self.push(SubMachine::OraclePrefix)
    }

    /// `0^index 1 ⋅ payload`.
    pub fn program(index: usize, payload: &BitString) -> BitString {
        let mut bits = vec![false; index];
        bits.push(true);
        bits.extend_from_slice(payload);
        BitString::from_bits(bits)
    }

    pub fn run(&self, program: &[bool], oracle: &[bool], budget: u64) -> Outcome {
        let mut exec = Exec {
            program,
            pos: 0,
            steps: 0,
            budget,
            oracle,
            queried: BTreeSet::new(),
        };
        match exec.dispatch(&self.catalog) {
            Ok(_) if exec.pos < program.len() => Outcome::NoParse,
            Ok(output) => {
                let oracle_positions: Vec<usize> = exec.queried.into_iter().collect();
                Outcome::Halted {
                    output,
                    steps: exec.steps,
                    oracle_use: oracle_positions.last().map_or(0, |&p| p + 1),
                    oracle_positions,
                }
            }
            Err(Stop::OutOfBudget) => Outcome::OutOfBudget,
            Err(Stop::NoParse) => Outcome::NoParse,
            Err(Stop::OracleTooShort(position)) => Outcome::OracleTooShort { position },
        }
    }
}

enum Stop {
    OutOfBudget,
    NoParse,
    OracleTooShort(usize),
}

struct Exec<'a> {
    program: &'a [bool],
    pos: usize,
    steps: u64,
    budget: u64,
    oracle: &'a [bool],
    queried: BTreeSet<usize>,
}

impl Exec<'_> {
    fn tick(&mut self) -> Result<(), Stop> {
        if self.steps >= self.budget {
            return Err(Stop::OutOfBudget);
        }
        self.steps += 1;
        Ok(())
    }

    fn read(&mut self) -> Result<bool, Stop> {
        let Some(&bit) = self.program.get(self.pos) else {
            return Err(Stop::NoParse);
        };
        self.tick()?;
        self.pos += 1;
        Ok(bit)
    }

    fn query(&mut self, position: usize) -> Result<bool, Stop> {
        self.tick()?;
        let bit = *self
            .oracle
            .get(position)
            .ok_or(Stop::OracleTooShort(position))?;
        self.queried.insert(position);
        Ok(bit)
    }

    fn read_length(&mut self) -> Result<u64, Stop> {
        let mut n = 0u64;
        let mut width = 0;
        loop {
            match (self.read()?, self.read()?) {
                (false, true) => return Ok(n),
                (true, false) => return Err(Stop::NoParse),
                (b, _) => {
                    if width == 0 && !b {
                        // leading zero
                        return Err(Stop::NoParse);
                    }
                    width += 1;
                    if width > MAX_LENGTH_BITS {
                        return Err(Stop::NoParse);
                    }
                    n = (n << 1) | u64::from(b);
                }
            }
        }
    }

    fn dispatch(&mut self, catalog: &[SubMachine]) -> Result<BitString, Stop> {
        let mut index = 0;
        while !self.read()? {
            index += 1;
            if index >= catalog.len() {
                return Err(Stop::NoParse);
            }
        }
        match &catalog[index] {
            SubMachine::Identity => {
                let len = self.read_length()?;
                let mut body = Vec::new();
                for _ in 0..len {
                    body.push(self.read()?);
                }
                Ok(BitString::from_bits(body))
            }
            SubMachine::OraclePrefix => {
                let len = self.read_length()?;
                let mut out = Vec::new();
                for q in 0..len {
                    out.push(self.query(q as usize)?);
                }
                Ok(BitString::from_bits(out))
            }
            SubMachine::Table(t) => {
                let start = self.pos;
                let mut node = Trie::ROOT;
                loop {
                    if t.trie.is_terminal(node) {
                        self.tick()?;
                        let code = BitString::from_bits(&self.program[start..self.pos]);
                        return Ok(t.table.get(&code).cloned().expect("trie mirrors table"));
                    }
                    let bit = self.read()?;
                    node = t.trie.child(node, bit).ok_or(Stop::NoParse)?;
                }
            }
        }
    }
}
