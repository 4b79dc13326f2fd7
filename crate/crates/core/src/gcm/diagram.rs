//! Plain-text Dynkin diagrams.
//!
//! ```text
//! diagram := "type " (label | "?") NL "nodes " n NL node* edge*
//! node    := "node " i (" mark " a " comark " c)? NL
//! edge    := "edge " i " " bond " " j ("  # " comment)? NL
//! bond    := "---"                       a_ij = a_ji = -1
//!          | "<" "="{k}                  a_ij = -k, a_ji = -1
//!          | "="{k} ">"                  a_ij = -1, a_ji = -k
//!          | "<" "="{k} ">"              a_ij = a_ji = -k
//! ```
//!
//! The number of `=` is the number of arrows pointing at the node on that
//! side, i.e. `|a_ij|` arrows point at `i`. Edges are listed with `i < j`
//! in lexicographic order, so rendering is deterministic.

use std::fmt::Write;

use super::{AffineGCM, AffineType, IntMatrix};
use crate::error::{Error, Result};

fn bond(aij: i64, aji: i64) -> String {
    let (p, q) = (aij.unsigned_abs() as usize, aji.unsigned_abs() as usize);
    if p == 1 && q == 1 {
        return "---".to_string();
    }
    let k = p.max(q);
    format!("{}{}{}", if p > 1 { "<" } else { "" }, "=".repeat(k), if q > 1 { ">" } else { "" })
}

fn parse_bond(glyph: &str) -> Result<(i64, i64)> {
    if glyph == "---" {
        return Ok((-1, -1));
    }
    let left = glyph.starts_with('<');
    let right = glyph.ends_with('>');
    let body = glyph.trim_start_matches('<').trim_end_matches('>');
    if body.is_empty() || !body.chars().all(|c| c == '=') || !(left || right) {
        return Err(Error::Parse(format!("bad bond {glyph:?}")));
    }
    let k = body.len() as i64;
    match (left, right) {
        (true, true) => Ok((-k, -k)),
        (true, false) => Ok((-k, -1)),
        _ => Ok((-1, -k)),
    }
}

pub fn render_diagram(a: &AffineGCM) -> String {
    render_matrix_diagram(&a.entries, Some(a.label), Some((&a.marks, &a.comarks)))
}

/// Renders any GCM-shaped matrix; the label and kernel vectors are optional.
pub fn render_matrix_diagram(m: &IntMatrix, label: Option<AffineType>, kernels: Option<(&[i64], &[i64])>) -> String {
    let n = m.len();
    let mut out = String::new();
    match label {
        Some(l) => writeln!(out, "type {l}").unwrap(),
        None => writeln!(out, "type ?").unwrap(),
    }
    writeln!(out, "nodes {n}").unwrap();
    for i in 0..n {
        match kernels {
            Some((marks, comarks)) => writeln!(out, "node {i} mark {} comark {}", marks[i], comarks[i]).unwrap(),
            None => writeln!(out, "node {i}").unwrap(),
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if m[i][j] != 0 || m[j][i] != 0 {
                writeln!(out, "edge {i} {} {j}  # a[{i}][{j}]={} a[{j}][{i}]={}", bond(m[i][j], m[j][i]), m[i][j], m[j][i]).unwrap();
            }
        }
    }
    out
}

/// Parses the text produced by [`render_diagram`], returning the label (if
/// any) and the matrix.
pub fn parse_diagram(text: &str) -> Result<(Option<AffineType>, IntMatrix)> {
    let mut label = None;
    let mut matrix: Option<IntMatrix> = None;
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad number {s:?} in {line:?}")));
        match words[0] {
            "type" => {
                let l = words.get(1).ok_or_else(|| Error::Parse("missing type".into()))?;
                label = if *l == "?" { None } else { Some(l.parse()?) };
            }
            "nodes" => {
                let n = num(words.get(1).ok_or_else(|| Error::Parse("missing node count".into()))?)?;
                let mut m = vec![vec![0; n]; n];
                for (i, row) in m.iter_mut().enumerate() {
                    row[i] = 2;
                }
                matrix = Some(m);
            }
            "node" => {}
            "edge" => {
                let m = matrix.as_mut().ok_or_else(|| Error::Parse("edge before nodes".into()))?;
                if words.len() != 4 {
                    return Err(Error::Parse(format!("bad edge line {line:?}")));
                }
                let (i, j) = (num(words[1])?, num(words[3])?);
                if i >= m.len() || j >= m.len() || i == j {
                    return Err(Error::Parse(format!("edge out of range in {line:?}")));
                }
                let (aij, aji) = parse_bond(words[2])?;
                m[i][j] = aij;
                m[j][i] = aji;
            }
            other => return Err(Error::Parse(format!("unknown directive {other:?}"))),
        }
    }
    let matrix = matrix.ok_or_else(|| Error::Parse("missing nodes line".into()))?;
    Ok((label, matrix))
}
