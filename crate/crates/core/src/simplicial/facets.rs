//! Facet-list text format: one facet per line as whitespace-separated vertex
//! ids, `#` comments. The downward closure is applied on load.

use std::fmt::Write as _;

use super::{SimplicialComplex, Vertex};
use crate::error::{Error, Result};

pub fn parse_facets(text: &str) -> Result<SimplicialComplex> {
    let mut facets = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let facet = line
            .split_whitespace()
            .map(|w| {
                w.parse::<Vertex>().map_err(|_| Error::Parse {
                    line: i + 1,
                    msg: format!("bad vertex `{w}` (expected a non-negative integer)"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        facets.push(facet);
    }
    SimplicialComplex::from_facets(facets)
}

pub fn write_facets(k: &SimplicialComplex) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# simplicial complex: dim {}, {} faces, {} facets",
        k.dim(),
        k.len(),
        k.facet_count()
    );
    for f in k.facets() {
        let words: Vec<String> = f.vertices().iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", words.join(" "));
    }
    out
}
