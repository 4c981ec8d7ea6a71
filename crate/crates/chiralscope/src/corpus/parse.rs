//! Text formats for groups and pairs.
//!
//! Group file:
//! ```text
//! # comment
//! degree 5
//! (1,2,3,4,5)
//! (1,2)(3,4)
//! ```
//! One generator per line; a generator whose parentheses are still open
//! continues on the next line, so long cycles may be broken anywhere.
//!
//! Pair file: a group file followed by a line `pair` and two generator
//! entries (x then t), or a line `rotations` and two entries (x then y,
//! with t computed as x·y).

use crate::chirality::GenPair;
use crate::error::{Error, Result};
use crate::perm::{parse_cycles, Permutation};

#[derive(Debug)]
pub struct ParsedGroupFile {
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairForm {
    /// `pair`: the entries are x and t.
    Direct,
    /// `rotations`: the entries are x and y; t = x·y.
    Rotations,
}

#[derive(Debug)]
pub struct ParsedPairFile {
    pub group: ParsedGroupFile,
    pub form: PairForm,
    pub pair: GenPair,
}

/// One logical entry: text of a generator (possibly spanning lines) plus
/// the line it started on.
struct Entry {
    text: String,
    line: usize,
}

fn split_entries(lines: &[(usize, &str)]) -> Result<Vec<Entry>> {
    let mut entries: Vec<Entry> = Vec::new();
    let mut open = 0usize;
    for &(ln, raw) in lines {
        let text = raw.trim();
        if text.is_empty() {
            continue;
        }
        if open > 0 {
            let e = entries.last_mut().unwrap();
            e.text.push('\n');
            e.text.push_str(raw);
        } else {
            entries.push(Entry {
                text: raw.to_string(),
                line: ln,
            });
        }
        for ch in text.chars() {
            match ch {
                '(' => open += 1,
                ')' => {
                    open = open.checked_sub(1).ok_or(Error::Parse {
                        line: ln,
                        col: 1,
                        msg: "unmatched ')'".into(),
                    })?
                }
                _ => {}
            }
        }
    }
    if open > 0 {
        return Err(Error::Parse {
            line: lines.last().map(|l| l.0).unwrap_or(1),
            col: 1,
            msg: "unterminated cycle at end of input".into(),
        });
    }
    Ok(entries)
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_entry(degree: usize, entry: &Entry) -> Result<Permutation> {
    let cycles = parse_cycles(&entry.text, entry.line, 1)?;
    Permutation::from_cycles(degree, &cycles).map_err(|e| match e {
        Error::Argument(msg) => Error::Parse {
            line: entry.line,
            col: 1,
            msg,
        },
        other => other,
    })
}

fn parse_header_and_entries(text: &str) -> Result<(usize, Vec<Entry>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.trim().is_empty());
    let (ln, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        col: 1,
        msg: "empty file".into(),
    })?;
    let mut parts = header.split_whitespace();
    let degree = match (parts.next(), parts.next(), parts.next()) {
        (Some("degree"), Some(n), None) => n.parse::<usize>().map_err(|_| Error::Parse {
            line: ln,
            col: 8,
            msg: format!("bad degree '{n}'"),
        })?,
        _ => {
            return Err(Error::Parse {
                line: ln,
                col: 1,
                msg: "expected 'degree <n>' on the first line".into(),
            })
        }
    };
    if degree == 0 {
        return Err(Error::Parse {
            line: ln,
            col: 8,
            msg: "degree must be positive".into(),
        });
    }
    let rest: Vec<(usize, &str)> = lines.collect();
    Ok((degree, split_entries(&rest)?))
}

pub fn parse_group_file(text: &str) -> Result<ParsedGroupFile> {
    let (degree, entries) = parse_header_and_entries(text)?;
    let generators = entries
        .iter()
        .map(|e| parse_entry(degree, e))
        .collect::<Result<Vec<_>>>()?;
    Ok(ParsedGroupFile { degree, generators })
}

pub fn parse_pair_file(text: &str) -> Result<ParsedPairFile> {
    let (degree, entries) = parse_header_and_entries(text)?;
    let marker = entries.iter().position(|e| {
        let t = e.text.trim();
        t == "pair" || t == "rotations"
    });
    let Some(marker) = marker else {
        return Err(Error::Parse {
            line: 1,
            col: 1,
            msg: "pair file needs a 'pair' or 'rotations' line".into(),
        });
    };
    let form = if entries[marker].text.trim() == "pair" {
        PairForm::Direct
    } else {
        PairForm::Rotations
    };
    let tail = &entries[marker + 1..];
    if tail.len() != 2 {
        return Err(Error::Parse {
            line: entries[marker].line,
            col: 1,
            msg: format!(
                "expected exactly two permutations after '{}', found {}",
                entries[marker].text.trim(),
                tail.len()
            ),
        });
    }
    let a = parse_entry(degree, &tail[0])?;
    let b = parse_entry(degree, &tail[1])?;
    let generators = entries[..marker]
        .iter()
        .map(|e| parse_entry(degree, e))
        .collect::<Result<Vec<_>>>()?;
    let pair = match form {
        PairForm::Direct => GenPair::new(a, b),
        PairForm::Rotations => GenPair::from_rotations(a, b),
    };
    Ok(ParsedPairFile {
        group: ParsedGroupFile { degree, generators },
        form,
        pair,
    })
}

pub fn serialize_group_file(degree: usize, gens: &[Permutation]) -> String {
    let mut out = format!("degree {degree}\n");
    for g in gens {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}
