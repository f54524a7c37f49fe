//! Line-oriented text formats for fields, stabilizer matrices, classical
//! generator matrices and circuits. Qudit indices are 1-based on disk.
//!
//! ```text
//! field p=<p> m=<m> poly=<c0,...,cm>
//! code n=<n> k=<k>
//! row <x_1> ... <x_n> | <z_1> ... <z_n>
//!
//! matrix rows=<r> cols=<n>
//! <a_1> ... <a_n>
//!
//! # direction=<decoder|encoder>
//! # qudits=<n>
//! # pivots=<i,j,...>
//! F q<i> | M q<i> gamma=<e> | P q<i> gamma=<e> | X q<i> alpha=<e> | Z q<i> beta=<e>
//! ADD c=<i> t=<j> | ADDINV c=<i> t=<j> | HORNER a=<i> x=<j> t=<k>
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::gates::{Circuit, Direction, Gate};
use crate::gf::{Elem, Field, FieldSpec};
use crate::linalg::Matrix;
use crate::pauli::{PauliError, PauliLabel, StabilizerMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}: {field}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub field: String,
    pub message: String,
}

fn err(line: usize, field: impl Into<String>, message: impl ToString) -> ParseError {
    ParseError { line, field: field.into(), message: message.to_string() }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_num<T: std::str::FromStr>(s: &str, line: usize, field: &str) -> Result<T, ParseError> {
    s.parse().map_err(|_| err(line, field, format!("expected a non-negative integer, got '{s}'")))
}

/// Value of `key=value`, requiring the key.
fn key_value<'a>(token: Option<&'a str>, key: &str, line: usize) -> Result<&'a str, ParseError> {
    let t = token.ok_or_else(|| err(line, key, "missing"))?;
    t.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| err(line, key, format!("expected '{key}=...', got '{t}'")))
}

fn no_more<'a>(mut tokens: impl Iterator<Item = &'a str>, line: usize) -> Result<(), ParseError> {
    match tokens.next() {
        Some(t) => Err(err(line, "line", format!("unexpected token '{t}'"))),
        None => Ok(()),
    }
}

fn parse_list(s: &str, line: usize, field: &str) -> Result<Vec<u32>, ParseError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|v| parse_num(v.trim(), line, field)).collect()
}

pub fn parse_field_line(l: &str, line: usize) -> Result<Field, ParseError> {
    let mut t = l.split_whitespace();
    if t.next() != Some("field") {
        return Err(err(line, "field", "expected the header 'field p=<p> m=<m> poly=<c0,...,cm>'"));
    }
    let p = parse_num(key_value(t.next(), "p", line)?, line, "p")?;
    let m = parse_num(key_value(t.next(), "m", line)?, line, "m")?;
    let modulus = parse_list(key_value(t.next(), "poly", line)?, line, "poly")?;
    no_more(t, line)?;
    Field::new(FieldSpec { p, m, modulus }).map_err(|e| err(line, "field", e))
}

fn elem(field: &Field, s: &str, line: usize, name: &str) -> Result<Elem, ParseError> {
    let v: u32 = parse_num(s, line, name)?;
    field.elem(v).map_err(|e| err(line, name, e))
}

/// Parses a stabilizer file and validates the matrix.
pub fn parse_stabilizer(text: &str) -> Result<StabilizerMatrix, ParseError> {
    let mut lines = content_lines(text);
    let (fl, l) = lines.next().ok_or_else(|| err(1, "field", "empty file"))?;
    let field = parse_field_line(l, fl)?;
    let (cl, l) = lines.next().ok_or_else(|| err(fl, "code", "missing 'code n=<n> k=<k>' line"))?;
    let mut t = l.split_whitespace();
    if t.next() != Some("code") {
        return Err(err(cl, "code", "expected 'code n=<n> k=<k>'"));
    }
    let n: usize = parse_num(key_value(t.next(), "n", cl)?, cl, "n")?;
    let k: usize = parse_num(key_value(t.next(), "k", cl)?, cl, "k")?;
    no_more(t, cl)?;
    if n == 0 || k >= n {
        return Err(err(cl, "k", format!("need 1 <= n and k < n, got n={n} k={k}")));
    }

    let mut rows = Vec::new();
    let mut row_lines = Vec::new();
    for (ln, l) in lines {
        let body = l.strip_prefix("row").ok_or_else(|| err(ln, "row", "expected 'row <x..> | <z..>'"))?;
        let (xs, zs) = body.split_once('|').ok_or_else(|| err(ln, "row", "missing '|' separator"))?;
        let parse_half = |s: &str, name: &str| -> Result<Vec<Elem>, ParseError> {
            let v: Vec<Elem> = s.split_whitespace().map(|e| elem(&field, e, ln, name)).collect::<Result<_, _>>()?;
            if v.len() != n {
                return Err(err(ln, name, format!("expected {n} entries, got {}", v.len())));
            }
            Ok(v)
        };
        let x = parse_half(xs, "x")?;
        let z = parse_half(zs, "z")?;
        rows.push(PauliLabel { x, z });
        row_lines.push(ln);
    }
    if rows.len() != n - k {
        let at = row_lines.last().copied().unwrap_or(cl);
        return Err(err(at, "row", format!("expected n-k = {} rows, got {}", n - k, rows.len())));
    }
    let m = StabilizerMatrix::unchecked(field, n, rows).map_err(|e| err(cl, "code", e))?;
    m.validate().map_err(|e| match e {
        PauliError::NotAbelian(_, j) => err(row_lines[j], "row", e),
        PauliError::RankDeficient(r) => err(row_lines[r], "row", e),
        other => err(cl, "code", other),
    })?;
    Ok(m)
}

pub fn write_stabilizer(m: &StabilizerMatrix) -> String {
    let mut s = format!("{}\ncode n={} k={}\n", m.field().spec(), m.n(), m.k());
    for r in m.rows() {
        let _ = writeln!(s, "row {r}");
    }
    s
}

/// Like [`write_stabilizer`] for intermediate matrices that need not be
/// valid stabilizers (snapshots are always valid, but `k` is then derived
/// from the row count).
pub fn write_rows(field: &Field, n: usize, rows: &[PauliLabel]) -> String {
    let mut s = format!("{}\ncode n={} k={}\n", field.spec(), n, n.saturating_sub(rows.len()));
    for r in rows {
        let _ = writeln!(s, "row {r}");
    }
    s
}

pub fn parse_matrix(text: &str) -> Result<(Field, Matrix), ParseError> {
    let mut lines = content_lines(text);
    let (fl, l) = lines.next().ok_or_else(|| err(1, "field", "empty file"))?;
    let field = parse_field_line(l, fl)?;
    let (ml, l) = lines.next().ok_or_else(|| err(fl, "matrix", "missing 'matrix rows=<r> cols=<n>' line"))?;
    let mut t = l.split_whitespace();
    if t.next() != Some("matrix") {
        return Err(err(ml, "matrix", "expected 'matrix rows=<r> cols=<n>'"));
    }
    let r: usize = parse_num(key_value(t.next(), "rows", ml)?, ml, "rows")?;
    let c: usize = parse_num(key_value(t.next(), "cols", ml)?, ml, "cols")?;
    no_more(t, ml)?;
    let mut rows = Vec::with_capacity(r);
    let mut last = ml;
    for (ln, l) in lines {
        let v: Vec<Elem> = l.split_whitespace().map(|e| elem(&field, e, ln, "entry")).collect::<Result<_, _>>()?;
        if v.len() != c {
            return Err(err(ln, "entry", format!("expected {c} entries, got {}", v.len())));
        }
        rows.push(v);
        last = ln;
    }
    if rows.len() != r {
        return Err(err(last, "rows", format!("expected {r} rows, got {}", rows.len())));
    }
    Ok((field, rows))
}

pub fn write_matrix(field: &Field, m: &Matrix) -> String {
    let cols = m.first().map_or(0, Vec::len);
    let mut s = format!("{}\nmatrix rows={} cols={}\n", field.spec(), m.len(), cols);
    for row in m {
        let r: Vec<String> = row.iter().map(|e| e.repr().to_string()).collect();
        let _ = writeln!(s, "{}", r.join(" "));
    }
    s
}

fn qudit_index(s: &str, line: usize, field: &str) -> Result<usize, ParseError> {
    let v: usize = parse_num(s, line, field)?;
    if v == 0 {
        return Err(err(line, field, "qudit indices start at 1"));
    }
    Ok(v - 1)
}

fn parse_gate(field: &Field, l: &str, line: usize) -> Result<Gate, ParseError> {
    let mut t = l.split_whitespace();
    let name = t.next().unwrap_or("");
    let mut qudit = || -> Result<usize, ParseError> {
        let tok = t.next().ok_or_else(|| err(line, "qudit", "missing"))?;
        let v = tok.strip_prefix('q').ok_or_else(|| err(line, "qudit", format!("expected 'q<i>', got '{tok}'")))?;
        qudit_index(v, line, "qudit")
    };
    let gate = match name {
        "F" => Gate::Fourier { qudit: qudit()? },
        "M" | "P" | "X" | "Z" => {
            let q = qudit()?;
            let key = match name {
                "M" | "P" => "gamma",
                "X" => "alpha",
                _ => "beta",
            };
            let e = elem(field, key_value(t.next(), key, line)?, line, key)?;
            match name {
                "M" => Gate::Mult { qudit: q, gamma: e },
                "P" => Gate::Phase { qudit: q, gamma: e },
                "X" => Gate::PauliX { qudit: q, alpha: e },
                _ => Gate::PauliZ { qudit: q, beta: e },
            }
        }
        "ADD" | "ADDINV" => {
            let control = qudit_index(key_value(t.next(), "c", line)?, line, "c")?;
            let target = qudit_index(key_value(t.next(), "t", line)?, line, "t")?;
            if name == "ADD" {
                Gate::Add { control, target }
            } else {
                Gate::AddInv { control, target }
            }
        }
        "HORNER" => {
            let a = qudit_index(key_value(t.next(), "a", line)?, line, "a")?;
            let x = qudit_index(key_value(t.next(), "x", line)?, line, "x")?;
            let target = qudit_index(key_value(t.next(), "t", line)?, line, "t")?;
            Gate::Horner { a, x, target }
        }
        other => return Err(err(line, "gate", format!("unknown gate '{other}'"))),
    };
    no_more(t, line)?;
    Ok(gate)
}

/// Parses a circuit. Without a `# qudits=` header the register width is the
/// largest index used.
pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut direction = Direction::Encoder;
    let mut pivots: Vec<usize> = Vec::new();
    let mut width: Option<usize> = None;
    let mut field: Option<Field> = None;
    let mut gates = Vec::new();
    let mut gate_lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if let Some(h) = trimmed.strip_prefix('#') {
            let h = h.trim();
            if let Some(v) = h.strip_prefix("direction=") {
                direction = match v.trim() {
                    "decoder" => Direction::Decoder,
                    "encoder" => Direction::Encoder,
                    o => return Err(err(line, "direction", format!("expected decoder or encoder, got '{o}'"))),
                };
            } else if let Some(v) = h.strip_prefix("pivots=") {
                pivots = parse_list(v.trim(), line, "pivots")?
                    .into_iter()
                    .map(|p| qudit_index(&p.to_string(), line, "pivots"))
                    .collect::<Result<_, _>>()?;
            } else if let Some(v) = h.strip_prefix("qudits=") {
                width = Some(parse_num(v.trim(), line, "qudits")?);
            }
            continue;
        }
        let l = trimmed.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        match &field {
            None => field = Some(parse_field_line(l, line)?),
            Some(f) => {
                gates.push(parse_gate(f, l, line)?);
                gate_lines.push(line);
            }
        }
    }
    let field = field.ok_or_else(|| err(1, "field", "missing field header"))?;
    let used = gates.iter().flat_map(Gate::qudits).chain(pivots.iter().copied()).max().map_or(0, |m| m + 1);
    let n = width.unwrap_or(used);
    if n == 0 {
        return Err(err(1, "qudits", "circuit has no qudits"));
    }
    let circuit = Circuit { field, n, gates, direction, pivots };
    for (g, &line) in circuit.gates.iter().zip(&gate_lines) {
        g.validate(&circuit.field, n).map_err(|e| err(line, "gate", e))?;
    }
    circuit.validate().map_err(|e| err(1, "pivots", e))?;
    Ok(circuit)
}

fn gate_line(g: &Gate) -> String {
    match *g {
        Gate::Fourier { qudit } => format!("F q{}", qudit + 1),
        Gate::Mult { qudit, gamma } => format!("M q{} gamma={}", qudit + 1, gamma),
        Gate::Phase { qudit, gamma } => format!("P q{} gamma={}", qudit + 1, gamma),
        Gate::PauliX { qudit, alpha } => format!("X q{} alpha={}", qudit + 1, alpha),
        Gate::PauliZ { qudit, beta } => format!("Z q{} beta={}", qudit + 1, beta),
        Gate::Add { control, target } => format!("ADD c={} t={}", control + 1, target + 1),
        Gate::AddInv { control, target } => format!("ADDINV c={} t={}", control + 1, target + 1),
        Gate::Horner { a, x, target } => format!("HORNER a={} x={} t={}", a + 1, x + 1, target + 1),
    }
}

pub fn write_circuit(c: &Circuit) -> String {
    let pivots: Vec<String> = c.pivots.iter().map(|p| (p + 1).to_string()).collect();
    let mut s =
        format!("# direction={}\n# qudits={}\n# pivots={}\n{}\n", c.direction, c.n, pivots.join(","), c.field.spec());
    for g in &c.gates {
        s.push_str(&gate_line(g));
        s.push('\n');
    }
    s
}

/// A basis input: either a comma-separated list or, when every element is a
/// single decimal digit, a plain digit string such as `0120`.
pub fn parse_digits(s: &str) -> Result<Vec<u32>, ParseError> {
    let s = s.trim();
    if s.contains(',') {
        parse_list(s, 1, "input")
    } else if !s.is_empty() && s.chars().all(|c| c.is_ascii_digit()) {
        Ok(s.chars().map(|c| c.to_digit(10).expect("digit")).collect())
    } else {
        Err(err(1, "input", format!("expected digits or a comma-separated list, got '{s}'")))
    }
}
