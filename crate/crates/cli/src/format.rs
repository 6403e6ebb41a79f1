//! Polytope files: the native `d k` format and PALP-style matrices.

use std::fmt;

use num_bigint::BigInt;
use stringy_core::{hull, Polytope, RationalVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    Syntax { line: usize, column: usize, message: String },
    AmbiguousOrientation,
    NotFullDimensional { dim: usize, ambient: usize },
}

impl ParseError {
    pub fn kind(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "ParseError",
            ParseError::AmbiguousOrientation => "AmbiguousOrientation",
            ParseError::NotFullDimensional { .. } => "NotFullDimensional",
        }
    }

    fn at(line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { line, column, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { line, column, message } => write!(f, "line {line}, column {column}: {message}"),
            ParseError::AmbiguousOrientation => write!(f, "matrix is full-dimensional in both orientations"),
            ParseError::NotFullDimensional { dim, ambient } => {
                write!(f, "points span a {dim}-dimensional polytope in {ambient}-space")
            }
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedPolytope {
    pub name: Option<String>,
    pub polytope: Polytope,
}

struct Row {
    line: usize,
    values: Vec<BigInt>,
}

fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.char_indices()
        .filter(|&(i, c)| !c.is_whitespace() && (i == 0 || line[..i].ends_with(char::is_whitespace)))
        .map(move |(i, _)| {
            let rest = &line[i..];
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            (line[..i].chars().count() + 1, &rest[..end])
        })
}

fn integer(line: usize, column: usize, tok: &str) -> Result<BigInt, ParseError> {
    tok.parse().map_err(|_| ParseError::at(line, column, format!("expected an integer, found `{tok}`")))
}

fn points(rows: &[Vec<BigInt>]) -> Vec<RationalVector> {
    rows.iter().map(|r| RationalVector::from_integers(r)).collect()
}

fn transpose(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = rows.first().map_or(0, |r| r.len());
    (0..n).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Parses one polytope.
///
/// Native files start with `d k` followed by `k` rows of `d` integers. A header
/// `r c` followed by `r` rows of `c` integers is read as a PALP matrix whose
/// vertices are either its rows or its columns, whichever is full-dimensional.
/// `#` starts a comment; `# name: foo` names the polytope.
pub fn parse_polytope(text: &str) -> Result<ParsedPolytope, ParseError> {
    let mut name = None;
    let mut header: Option<(usize, usize, usize)> = None;
    let mut rows: Vec<Row> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let (body, comment) = match raw.find('#') {
            Some(i) => (&raw[..i], Some(&raw[i + 1..])),
            None => (raw, None),
        };
        if let Some(c) = comment {
            if let Some(n) = c.trim().strip_prefix("name:") {
                name = Some(n.trim().to_string());
            }
        }
        let toks: Vec<(usize, &str)> = tokens(body).collect();
        if toks.is_empty() {
            continue;
        }
        if header.is_none() {
            if toks.len() < 2 {
                return Err(ParseError::at(line, toks[0].0, "header needs two integers"));
            }
            let parse_dim = |(col, tok): (usize, &str)| -> Result<usize, ParseError> {
                tok.parse().map_err(|_| ParseError::at(line, col, format!("expected a size, found `{tok}`")))
            };
            let h1 = parse_dim(toks[0])?;
            let h2 = parse_dim(toks[1])?;
            // PALP headers may carry annotations after the two sizes
            if let Some(&(col, tok)) = toks.get(2) {
                if tok.starts_with(|c: char| c.is_ascii_digit() || c == '-') {
                    return Err(ParseError::at(line, col, "header has more than two integers"));
                }
            }
            header = Some((h1, h2, line));
            continue;
        }
        let values = toks.iter().map(|&(col, tok)| integer(line, col, tok)).collect::<Result<Vec<_>, _>>()?;
        rows.push(Row { line, values });
    }
    let Some((h1, h2, hline)) = header else {
        return Err(ParseError::at(1, 1, "missing header"));
    };
    let expected_len = if rows.len() == h1 && rows.len() != h2 { h2 } else { h1 };
    for r in &rows {
        if r.values.len() != expected_len {
            return Err(ParseError::at(
                r.line,
                1,
                format!("row has {} entries, expected {expected_len}", r.values.len()),
            ));
        }
    }
    let matrix: Vec<Vec<BigInt>> = rows.into_iter().map(|r| r.values).collect();
    let mut candidates: Vec<Vec<Vec<BigInt>>> = Vec::new();
    if matrix.len() == h2 && expected_len == h1 {
        candidates.push(matrix.clone());
    }
    if matrix.len() == h1 && expected_len == h2 {
        if !candidates.contains(&matrix) {
            candidates.push(matrix.clone());
        }
        candidates.push(transpose(&matrix));
    }
    if candidates.is_empty() {
        return Err(ParseError::at(hline, 1, format!("header `{h1} {h2}` does not match {} rows", matrix.len())));
    }
    let mut full = Vec::new();
    let mut best = (0, 0);
    for c in &candidates {
        if c.is_empty() {
            continue;
        }
        let p = hull(&points(c)).map_err(|e| ParseError::at(hline, 1, e.to_string()))?;
        if p.is_full_dimensional() {
            if !full.contains(&p) {
                full.push(p);
            }
        } else if p.dim() >= best.0 {
            best = (p.dim(), p.ambient_dim());
        }
    }
    match full.len() {
        0 => Err(ParseError::NotFullDimensional { dim: best.0, ambient: best.1 }),
        1 => Ok(ParsedPolytope { name, polytope: full.pop().expect("one candidate") }),
        _ => Err(ParseError::AmbiguousOrientation),
    }
}

/// Splits a stream into items separated by lines consisting of `---`.
pub fn split_items(text: &str) -> Vec<String> {
    let mut items = vec![String::new()];
    for line in text.lines() {
        if line.trim() == "---" {
            items.push(String::new());
        } else {
            let cur = items.last_mut().expect("nonempty");
            cur.push_str(line);
            cur.push('\n');
        }
    }
    items.into_iter().filter(|s| s.lines().any(|l| !l.split('#').next().unwrap_or("").trim().is_empty())).collect()
}

/// Writes a lattice polytope in the native format.
pub fn render_polytope(name: Option<&str>, p: &Polytope) -> String {
    let mut out = String::new();
    if let Some(n) = name {
        out.push_str(&format!("# name: {n}\n"));
    }
    out.push_str(&format!("{} {}\n", p.ambient_dim(), p.vertices().len()));
    for v in p.vertices() {
        let row: Vec<String> = v.coords().iter().map(|x| x.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn native_triangle() {
        let p = parse_polytope("2 3\n1 0\n0 1\n-1 -1").unwrap();
        assert_eq!(p.polytope.vertices().len(), 3);
        assert_eq!(p.name, None);
    }

    #[test]
    fn palp_columns() {
        let p = parse_polytope("2 3  M:4 3 V:3 F:3\n1 0 -1\n0 1 -1\n").unwrap();
        assert_eq!(p.polytope, parse_polytope("2 3\n1 0\n0 1\n-1 -1").unwrap().polytope);
    }

    #[test]
    fn names_and_comments() {
        let p = parse_polytope("# name: tri\n2 3 # header\n1 0\n0 1\n\n-1 -1\n").unwrap();
        assert_eq!(p.name.as_deref(), Some("tri"));
    }

    #[test]
    fn row_errors() {
        let e = parse_polytope("2 3\n1 0\n0 1 5\n-1 -1").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { line: 3, .. }), "{e}");
        let e = parse_polytope("2 3\n1 0\n0 x\n-1 -1").unwrap_err();
        assert_eq!(e, ParseError::Syntax { line: 3, column: 3, message: "expected an integer, found `x`".into() });
    }

    #[test]
    fn flat_input() {
        let e = parse_polytope("2 3\n0 0\n1 1\n2 2").unwrap_err();
        assert_eq!(e, ParseError::NotFullDimensional { dim: 1, ambient: 2 });
    }

    #[test]
    fn render_roundtrip() {
        let p = parse_polytope("3 4\n1 0 0\n0 1 0\n0 0 1\n-1 -1 -1").unwrap().polytope;
        let again = parse_polytope(&render_polytope(Some("k3"), &p)).unwrap();
        assert_eq!(again.polytope, p);
        assert_eq!(again.name.as_deref(), Some("k3"));
    }

    #[test]
    fn splitting() {
        let items = split_items("2 3\n1 0\n0 1\n-1 -1\n---\n# only a comment\n---\n2 3\n1 0\n0 1\n-1 -1\n");
        assert_eq!(items.len(), 2);
    }
}
