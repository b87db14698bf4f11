//! Plain-text truth-table format: line 1 is `n`, line 2 is the `2^n` values
//! as `0`/`1` characters in row order.

use std::fmt;
use std::str::FromStr;

use super::{TruthTable, MAX_EXHAUSTIVE_VARS};
use crate::error::Error;

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n())?;
        for &v in self.values() {
            f.write_str(if v { "1" } else { "0" })?;
        }
        writeln!(f)
    }
}

impl FromStr for TruthTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let parse_err = |line, column, message: String| Error::Parse { line, column, message };
        let mut lines = s.lines();

        let header = lines
            .next()
            .ok_or_else(|| parse_err(1, 1, "empty input, expected variable count".into()))?;
        let header_trim = header.trim();
        let column = header.find(|c: char| !c.is_whitespace()).unwrap_or(0) + 1;
        let n: usize = header_trim.parse().map_err(|_| {
            parse_err(
                1,
                column,
                format!("expected an integer variable count, found {header_trim:?}"),
            )
        })?;
        if n == 0 || n > MAX_EXHAUSTIVE_VARS {
            return Err(parse_err(
                1,
                column,
                format!("variable count {n} outside 1..={MAX_EXHAUSTIVE_VARS}"),
            ));
        }

        let body = lines.next().ok_or_else(|| {
            parse_err(
                2,
                1,
                format!("missing table line of 2^{n} = {} characters", 1usize << n),
            )
        })?;
        let body = body.trim_end();
        let mut values = Vec::with_capacity(1 << n);
        for (idx, c) in body.chars().enumerate() {
            match c {
                '0' => values.push(false),
                '1' => values.push(true),
                other => {
                    return Err(parse_err(
                        2,
                        idx + 1,
                        format!("unexpected character {other:?}, expected 0 or 1"),
                    ))
                }
            }
        }
        if values.len() != 1 << n {
            return Err(parse_err(
                2,
                values.len().min(1 << n) + 1,
                format!("expected 2^{n} = {} characters, found {}", 1usize << n, values.len()),
            ));
        }
        for (offset, extra) in lines.enumerate() {
            if !extra.trim().is_empty() {
                return Err(parse_err(
                    3 + offset,
                    1,
                    "unexpected content after the table line".into(),
                ));
            }
        }
        TruthTable::new(n, values)
    }
}
