//! The `neardomain v1` text format.
//!
//! ```text
//! neardomain v1
//! order 3
//! add
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! mul
//! 0 0 0
//! 0 1 2
//! 0 2 1
//! label GF(3)
//! ```
//!
//! `#` starts a comment; blank lines are ignored. Everything else is strict.

use std::fmt;
use std::str::FromStr;

use super::{Element, NearDomainTable, TableError};

pub const HEADER: &str = "neardomain v1";

fn err(line: usize, message: impl Into<String>) -> TableError {
    TableError::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn expect_keyword<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    last: usize,
    keyword: &str,
) -> Result<(usize, &'a str), TableError> {
    let (no, line) = lines.next().ok_or_else(|| {
        err(
            last + 1,
            format!("unexpected end of input, expected `{keyword}`"),
        )
    })?;
    let rest = line
        .strip_prefix(keyword)
        .filter(|r| r.is_empty() || r.starts_with(char::is_whitespace))
        .ok_or_else(|| err(no, format!("expected `{keyword}`, found `{line}`")))?;
    Ok((no, rest.trim()))
}

fn read_rows<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    mut last: usize,
    order: usize,
    name: &str,
) -> Result<(usize, Vec<Vec<Element>>), TableError> {
    let mut rows = Vec::with_capacity(order);
    for r in 0..order {
        let (no, line) = lines.next().ok_or_else(|| {
            err(
                last + 1,
                format!("{name} table ends after {r} of {order} rows"),
            )
        })?;
        last = no;
        let row = line
            .split_whitespace()
            .map(|tok| {
                let v: Element = tok
                    .parse()
                    .map_err(|_| err(no, format!("`{tok}` is not an element index")))?;
                if v >= order {
                    return Err(err(no, format!("index {v} out of range for order {order}")));
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != order {
            return Err(err(
                no,
                format!("{name} row {r} has {} entries, expected {order}", row.len()),
            ));
        }
        rows.push(row);
    }
    Ok((last, rows))
}

impl FromStr for NearDomainTable {
    type Err = TableError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = content_lines(text);
        let (no, line) = lines.next().ok_or_else(|| err(1, "empty input"))?;
        if line != HEADER {
            return Err(err(no, format!("expected `{HEADER}`, found `{line}`")));
        }
        let (no, rest) = expect_keyword(&mut lines, no, "order")?;
        let order: usize = rest
            .parse()
            .map_err(|_| err(no, format!("`{rest}` is not an order")))?;
        if order < 2 {
            return Err(err(no, format!("order must be at least 2, got {order}")));
        }
        let (no, rest) = expect_keyword(&mut lines, no, "add")?;
        if !rest.is_empty() {
            return Err(err(no, "unexpected text after `add`"));
        }
        let (no, add) = read_rows(&mut lines, no, order, "add")?;
        let (no, rest) = expect_keyword(&mut lines, no, "mul")?;
        if !rest.is_empty() {
            return Err(err(no, "unexpected text after `mul`"));
        }
        let (_, mul) = read_rows(&mut lines, no, order, "mul")?;
        let label = match lines.next() {
            None => String::new(),
            Some((label_no, _)) => {
                // the label keeps everything after the keyword, including '#'
                let raw = text.lines().nth(label_no - 1).unwrap_or("").trim();
                let label = raw
                    .strip_prefix("label")
                    .filter(|r| r.is_empty() || r.starts_with(char::is_whitespace))
                    .ok_or_else(|| {
                        err(
                            label_no,
                            format!("expected `label` or end of input, found `{raw}`"),
                        )
                    })?;
                if let Some((extra, _)) = lines.next() {
                    return Err(err(extra, "unexpected content after label"));
                }
                label.trim().to_string()
            }
        };
        NearDomainTable::new(add, mul, label)
    }
}

impl fmt::Display for NearDomainTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{HEADER}")?;
        writeln!(f, "order {}", self.order())?;
        for (name, rows) in [("add", self.add_rows()), ("mul", self.mul_rows())] {
            writeln!(f, "{name}")?;
            for row in rows {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                writeln!(f, "{}", cells.join(" "))?;
            }
        }
        if !self.label().is_empty() {
            writeln!(f, "label {}", self.label())?;
        }
        Ok(())
    }
}
