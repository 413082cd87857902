//! Rule grid parsing, fuzzification and MAX-MIN rule firing.
//!
//! Rows of the grid are the angle label, columns the angular-velocity label.
//! [`RuleTable::transposed`] swaps the two.
//!
//! Grid text format, whitespace separated, `#` starts a comment:
//!
//! ```text
//!      NB  NM  NS  ZE  PS  PM  PB      <- column labels
//! NB   .   .   .   .   .   .   .       <- row label, then 7 cells
//! ...
//! ```

use std::fmt::Write as _;
use std::ops::Index;

use thiserror::Error;

use crate::membership::{Label, LabelMap, Partition};
use crate::Scalar;

/// The shipped default grid.
pub const DEFAULT_RULES: &str = include_str!("../rules/table1.txt");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RuleParseError {
    #[error("line {line}, column {col}: unknown label {token:?}")]
    UnknownLabel {
        token: String,
        line: usize,
        col: usize,
    },
    #[error("line {line}, column {col}: duplicate {axis} label {label}")]
    Duplicate {
        axis: &'static str,
        label: Label,
        line: usize,
        col: usize,
    },
    #[error("line {line}: expected {expected} tokens, found {found}")]
    WrongTokenCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: expected 7 rule rows, found {found}")]
    WrongRowCount { line: usize, found: usize },
}

/// Sparse 7x7 grid `(angle, velocity) -> output`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RuleTable {
    cells: [[Option<Label>; 7]; 7],
}

impl RuleTable {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The shipped default table.
    pub fn default_table() -> Self {
        parse_rule_table(DEFAULT_RULES).expect("shipped rule grid parses")
    }

    pub fn get(&self, row: Label, col: Label) -> Option<Label> {
        self.cells[row.position()][col.position()]
    }

    pub fn set(&mut self, row: Label, col: Label, out: Option<Label>) {
        self.cells[row.position()][col.position()] = out;
    }

    /// Populated cells as `(row, col, output)` in row-major order.
    pub fn rules(&self) -> impl Iterator<Item = (Label, Label, Label)> + '_ {
        Label::ALL.into_iter().flat_map(move |r| {
            Label::ALL
                .into_iter()
                .filter_map(move |c| self.get(r, c).map(|o| (r, c, o)))
        })
    }

    pub fn len(&self) -> usize {
        self.rules().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn transposed(&self) -> Self {
        let mut t = Self::empty();
        for (r, c, o) in self.rules() {
            t.set(c, r, Some(o));
        }
        t
    }
}

struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let body = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &body[s..i],
                    col: s + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &body[s..],
            col: s + 1,
        });
    }
    out
}

fn label_at(tok: &Token<'_>, line: usize) -> Result<Label, RuleParseError> {
    tok.text.parse().map_err(|_| RuleParseError::UnknownLabel {
        token: tok.text.to_string(),
        line,
        col: tok.col,
    })
}

/// Parses the grid text format. Positions in errors are 1-based.
pub fn parse_rule_table(text: &str) -> Result<RuleTable, RuleParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, tokenize(l)))
        .filter(|(_, toks)| !toks.is_empty());

    let last_line = text.lines().count().max(1);
    let Some((hline, header)) = lines.next() else {
        return Err(RuleParseError::WrongRowCount {
            line: last_line,
            found: 0,
        });
    };
    if header.len() != 7 {
        return Err(RuleParseError::WrongTokenCount {
            line: hline,
            expected: 7,
            found: header.len(),
        });
    }
    let mut columns = Vec::with_capacity(7);
    for tok in &header {
        let l = label_at(tok, hline)?;
        if columns.contains(&l) {
            return Err(RuleParseError::Duplicate {
                axis: "column",
                label: l,
                line: hline,
                col: tok.col,
            });
        }
        columns.push(l);
    }

    let mut table = RuleTable::empty();
    let mut seen_rows: Vec<Label> = Vec::with_capacity(7);
    for (line, toks) in lines {
        if seen_rows.len() == 7 {
            return Err(RuleParseError::WrongRowCount { line, found: 8 });
        }
        if toks.len() != 8 {
            return Err(RuleParseError::WrongTokenCount {
                line,
                expected: 8,
                found: toks.len(),
            });
        }
        let row = label_at(&toks[0], line)?;
        if seen_rows.contains(&row) {
            return Err(RuleParseError::Duplicate {
                axis: "row",
                label: row,
                line,
                col: toks[0].col,
            });
        }
        seen_rows.push(row);
        for (tok, &col) in toks[1..].iter().zip(&columns) {
            let out = if tok.text == "." {
                None
            } else {
                Some(label_at(tok, line)?)
            };
            table.set(row, col, out);
        }
    }
    if seen_rows.len() != 7 {
        return Err(RuleParseError::WrongRowCount {
            line: last_line,
            found: seen_rows.len(),
        });
    }
    Ok(table)
}

/// Writes the table in canonical label order.
pub fn format_rule_table(table: &RuleTable) -> String {
    let mut s = String::from("# rows: angle, columns: angular velocity\n    ");
    for c in Label::ALL {
        write!(s, " {c:>3}").unwrap();
    }
    s.push('\n');
    for r in Label::ALL {
        write!(s, "{r:<4}").unwrap();
        for c in Label::ALL {
            let cell = table.get(r, c).map_or(".", Label::as_str);
            write!(s, " {cell:>3}").unwrap();
        }
        s.push('\n');
    }
    s
}

/// Membership degree of a crisp input in each primary set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzifiedInput<T> {
    pub degrees: LabelMap<T>,
}

impl<T: Scalar> FuzzifiedInput<T> {
    /// Wraps a degree vector; `None` if any degree is outside `[0, 1]`.
    pub fn new(degrees: LabelMap<T>) -> Option<Self> {
        let ok = degrees
            .values()
            .iter()
            .all(|&v| v >= T::zero() && v <= T::one());
        ok.then_some(FuzzifiedInput { degrees })
    }

    /// A crisp singleton: degree 1 on `label`, 0 elsewhere.
    pub fn singleton(label: Label) -> Self {
        FuzzifiedInput {
            degrees: LabelMap::from_fn(|l| if l == label { T::one() } else { T::zero() }),
        }
    }
}

impl<T> Index<Label> for FuzzifiedInput<T> {
    type Output = T;

    fn index(&self, l: Label) -> &T {
        &self.degrees[l]
    }
}

pub fn fuzzify<T: Scalar>(p: &Partition<T>, x: T) -> FuzzifiedInput<T> {
    FuzzifiedInput {
        degrees: p.degrees(x),
    }
}

/// Aggregated firing strength per output label.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiredOutput<T> {
    pub strengths: LabelMap<T>,
    /// Rules whose strength was nonzero.
    pub fired: usize,
}

impl<T: Scalar> FiredOutput<T> {
    pub fn is_silent(&self) -> bool {
        self.strengths.values().iter().all(|&s| s <= T::zero())
    }
}

impl<T> Index<Label> for FiredOutput<T> {
    type Output = T;

    fn index(&self, l: Label) -> &T {
        &self.strengths[l]
    }
}

/// MAX-MIN firing: each rule's strength is the min of its two antecedent
/// degrees, and each output label takes the max over its rules.
pub fn infer<T: Scalar>(
    table: &RuleTable,
    angle: &FuzzifiedInput<T>,
    vel: &FuzzifiedInput<T>,
) -> FiredOutput<T> {
    let mut strengths = LabelMap::splat(T::zero());
    let mut fired = 0;
    for (row, col, out) in table.rules() {
        let w = angle[row].min(vel[col]);
        if w > T::zero() {
            fired += 1;
        }
        if w > strengths[out] {
            strengths[out] = w;
        }
    }
    FiredOutput { strengths, fired }
}
