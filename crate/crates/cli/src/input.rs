use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{Context, Result};
use tcreal_core::DegreeSequence;

use crate::InputError;

/// One parsed input line.
#[derive(Debug)]
pub struct Line {
    pub raw: Vec<u32>,
    pub seq: DegreeSequence,
}

/// Sequences from the positional words, or else from `--input` / stdin, one
/// per non-blank line. Lines starting with `#` are skipped.
pub fn read_sequences(words: &[String], input: Option<&Path>) -> Result<Vec<Line>> {
    let text = if !words.is_empty() {
        words.join(" ")
    } else if let Some(path) = input {
        fs::read_to_string(path)
            .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?
    } else {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| InputError(format!("cannot read stdin: {e}")))?;
        buf
    };
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(parse_line(line).with_context(|| format!("line {}", i + 1))?);
    }
    if out.is_empty() {
        return Err(InputError("no degree sequence given".into()).into());
    }
    Ok(out)
}

fn parse_line(line: &str) -> Result<Line> {
    let raw = line
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| InputError(format!("`{t}` is not a non-negative integer")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let seq = DegreeSequence::normalize(&raw);
    Ok(Line { raw, seq })
}
