//! Line-oriented Hasse text format.
//!
//! ```text
//! # comment
//! rank 1
//! f 0 a :
//! f 1 b :
//! f 2 ab : 0 1
//! ```
//!
//! One record per face: `f <id> <label?> : <covered-id>*`. Ids are dense from 0.
//! An optional `rank <n>` line is checked against the parsed poset.

use std::fmt::Write as _;

use super::Poset;
use crate::error::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Label, covered ids and source line of one `f` record.
type Record = (Option<String>, Vec<usize>, usize);

pub fn parse_hasse(text: &str) -> Result<Poset> {
    let mut records: Vec<Option<Record>> = Vec::new();
    let mut declared_rank: Option<(i32, usize)> = None;

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("rank") => {
                let value = words
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing value after `rank`"))?;
                let r: i32 = value
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad rank `{value}`")))?;
                if words.next().is_some() {
                    return Err(parse_err(lineno, "trailing tokens after rank"));
                }
                declared_rank = Some((r, lineno));
            }
            Some("f") => {
                let (head, tail) = line
                    .split_once(':')
                    .ok_or_else(|| parse_err(lineno, "face record without `:`"))?;
                let head: Vec<&str> = head.split_whitespace().collect();
                if head.len() < 2 || head.len() > 3 {
                    return Err(parse_err(lineno, "expected `f <id> <label?> :`"));
                }
                let id: usize = head[1]
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad face id `{}`", head[1])))?;
                let label = head.get(2).map(|s| s.to_string());
                let covered = tail
                    .split_whitespace()
                    .map(|w| {
                        w.parse::<usize>()
                            .map_err(|_| parse_err(lineno, format!("bad covered id `{w}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if records.len() <= id {
                    records.resize(id + 1, None);
                }
                if records[id].is_some() {
                    return Err(parse_err(lineno, format!("face {id} defined twice")));
                }
                records[id] = Some((label, covered, lineno));
            }
            Some(other) => {
                return Err(parse_err(lineno, format!("unknown record `{other}`")));
            }
            None => unreachable!(),
        }
    }

    let n = records.len();
    let line_of = |id: usize| records.get(id).and_then(|r| r.as_ref()).map_or(0, |r| r.2);
    if let Some(gap) = records.iter().position(Option::is_none) {
        let next = (gap..n).find(|&i| records[i].is_some()).expect("last record exists");
        return Err(parse_err(line_of(next), format!("face ids are not dense: {gap} missing before {next}")));
    }
    let cyclic_line: Vec<usize> = (0..n).map(line_of).collect();
    let mut below = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for rec in records {
        let (label, covered, lineno) =
            rec.expect("dense ids checked above");
        if let Some(&bad) = covered.iter().find(|&&c| c >= n) {
            return Err(parse_err(lineno, format!("covered id {bad} out of range")));
        }
        labels.push(label);
        below.push(covered);
    }
    let poset = Poset::from_relation(below, labels).map_err(|e| match e {
        Error::Cyclic(h) => parse_err(cyclic_line[h], format!("order relation has a cycle through face {h}")),
        other => other,
    })?;
    if let Some((r, lineno)) = declared_rank {
        if r != poset.rank() {
            return Err(parse_err(
                lineno,
                format!("declared rank {r} but the poset has rank {}", poset.rank()),
            ));
        }
    }
    Ok(poset)
}

pub fn write_hasse(p: &Poset) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# hasse poset, {} faces", p.len());
    let _ = writeln!(out, "rank {}", p.rank());
    for h in 0..p.len() {
        let _ = write!(out, "f {h}");
        if let Some(l) = p.label(h) {
            let _ = write!(out, " {l}");
        }
        out.push_str(" :");
        for c in p.covers(h) {
            let _ = write!(out, " {c}");
        }
        out.push('\n');
    }
    out
}
