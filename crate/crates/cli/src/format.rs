//! The `bms v1` scheme file format: a bit-exact, line-oriented grammar.
//!
//! ```text
//! bms v1 <n> <m> <p> <rank> <ring>        ring ∈ { "Z", "Zp <p>" }
//! <rank blocks, each:>
//!   n lines of m integers        (A)
//!   blank line
//!   m lines of p integers        (B)
//!   blank line
//!   p lines of n integers        (C, the p×n factor as printed)
//!   blank line
//! ```
//!
//! Integers are optionally-signed decimals separated by single spaces; lines
//! end with LF. The only leniency beyond the grammar is that the final blank
//! line may be omitted. Parsing preserves the file's term order; serializing
//! always emits the canonical order (terms sorted lexicographically by their
//! A, B, C entries row-major), so `serialize ∘ parse ∘ serialize` is a
//! byte-level fixpoint.

use std::fmt;

use bms_core::{CoeffMatrix, RankOneTerm, RingSpec, Scheme};

/// A parse-time diagnostic that does not reject the file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    /// The block at this (0-based) index has an all-zero factor; the term
    /// was dropped and does not count toward the in-memory rank.
    ZeroTermDropped { term: usize },
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseWarning::ZeroTermDropped { term } => {
                write!(f, "term {} has an all-zero factor and was dropped", term + 1)
            }
        }
    }
}

/// A successfully parsed file.
#[derive(Debug, Clone)]
pub struct ParseOutcome {
    pub scheme: Scheme,
    pub warnings: Vec<ParseWarning>,
}

/// Rejected input, with the 1-based line the failure was detected on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    MalformedHeader { line: usize, detail: &'static str },
    BadInteger { line: usize },
    ShapeMismatch { line: usize, detail: &'static str },
    OutOfRangeResidue { line: usize, value: i64, modulus: u64 },
    RankMismatch { line: usize, declared: usize, found: usize },
    TrailingGarbage { line: usize },
    UnexpectedEof { line: usize },
}

impl ParseError {
    /// Stable short code, one per error class.
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::MalformedHeader { .. } => "malformed header",
            ParseError::BadInteger { .. } => "bad integer",
            ParseError::ShapeMismatch { .. } => "shape mismatch",
            ParseError::OutOfRangeResidue { .. } => "out-of-range residue",
            ParseError::RankMismatch { .. } => "rank mismatch",
            ParseError::TrailingGarbage { .. } => "trailing garbage",
            ParseError::UnexpectedEof { .. } => "unexpected end of file",
        }
    }

    pub fn line(&self) -> usize {
        match *self {
            ParseError::MalformedHeader { line, .. }
            | ParseError::BadInteger { line }
            | ParseError::ShapeMismatch { line, .. }
            | ParseError::OutOfRangeResidue { line, .. }
            | ParseError::RankMismatch { line, .. }
            | ParseError::TrailingGarbage { line }
            | ParseError::UnexpectedEof { line } => line,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::MalformedHeader { line, detail } => {
                write!(f, "line {line}: malformed header: {detail}")
            }
            ParseError::BadInteger { line } => write!(f, "line {line}: bad integer"),
            ParseError::ShapeMismatch { line, detail } => {
                write!(f, "line {line}: shape mismatch: {detail}")
            }
            ParseError::OutOfRangeResidue { line, value, modulus } => {
                write!(f, "line {line}: residue {value} out of range [0, {modulus})")
            }
            ParseError::RankMismatch { line, declared, found } => {
                write!(f, "line {line}: rank mismatch: header declares {declared} blocks, found {found}")
            }
            ParseError::TrailingGarbage { line } => write!(f, "line {line}: trailing garbage"),
            ParseError::UnexpectedEof { line } => write!(f, "line {line}: unexpected end of file"),
        }
    }
}

impl std::error::Error for ParseError {}

struct Lines<'a> {
    lines: Vec<&'a str>,
    next: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let mut lines: Vec<&str> = text.split('\n').collect();
        // A terminating newline produces one empty trailing element; the
        // grammar's final blank line is still a real element before it.
        if lines.last() == Some(&"") {
            lines.pop();
        }
        Lines { lines, next: 0 }
    }

    /// 1-based number of the line about to be read.
    fn lineno(&self) -> usize {
        self.next + 1
    }

    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        let line = self.lines.get(self.next).copied()?;
        self.next += 1;
        Some((self.next, line))
    }

    fn at_eof(&self) -> bool {
        self.next >= self.lines.len()
    }
}

/// Parses a `bms v1` file. Exact grammar; the parsed scheme keeps the file's
/// term order in memory.
pub fn parse(text: &str) -> Result<ParseOutcome, ParseError> {
    let mut lines = Lines::new(text);

    let (header_line, header) = lines
        .next_line()
        .ok_or(ParseError::UnexpectedEof { line: 1 })?;
    let tokens: Vec<&str> = header.split(' ').collect();
    if tokens.len() < 6 || tokens[0] != "bms" || tokens[1] != "v1" {
        return Err(ParseError::MalformedHeader {
            line: header_line,
            detail: "expected `bms v1 <n> <m> <p> <rank> <ring>`",
        });
    }
    let dim = |s: &str| -> Option<usize> {
        // Dimensions and rank are plain unsigned decimals.
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse().ok()
    };
    let n = dim(tokens[2]).filter(|&v| v > 0).ok_or(ParseError::MalformedHeader {
        line: header_line,
        detail: "bad n",
    })?;
    let m = dim(tokens[3]).filter(|&v| v > 0).ok_or(ParseError::MalformedHeader {
        line: header_line,
        detail: "bad m",
    })?;
    let p = dim(tokens[4]).filter(|&v| v > 0).ok_or(ParseError::MalformedHeader {
        line: header_line,
        detail: "bad p",
    })?;
    let rank = dim(tokens[5]).ok_or(ParseError::MalformedHeader {
        line: header_line,
        detail: "bad rank",
    })?;
    let ring = match &tokens[6..] {
        ["Z"] => RingSpec::integers(),
        ["Zp", q] => {
            let q = dim(q).ok_or(ParseError::MalformedHeader {
                line: header_line,
                detail: "bad modulus",
            })?;
            RingSpec::prime_field(q as u64).map_err(|_| ParseError::MalformedHeader {
                line: header_line,
                detail: "modulus is not a small prime",
            })?
        }
        _ => {
            return Err(ParseError::MalformedHeader {
                line: header_line,
                detail: "ring must be `Z` or `Zp <prime>`",
            })
        }
    };

    let mut terms = Vec::with_capacity(rank);
    for block in 0..rank {
        if lines.at_eof() {
            return Err(ParseError::RankMismatch {
                line: lines.lineno(),
                declared: rank,
                found: block,
            });
        }
        let a = read_matrix(&mut lines, n, m, ring)?;
        expect_blank(&mut lines, false)?;
        let b = read_matrix(&mut lines, m, p, ring)?;
        expect_blank(&mut lines, false)?;
        let c = read_matrix(&mut lines, p, n, ring)?;
        // The very last blank line of the file may be omitted.
        expect_blank(&mut lines, block + 1 == rank)?;
        terms.push(RankOneTerm::new(a, b, c));
    }

    if !lines.at_eof() {
        return Err(ParseError::TrailingGarbage { line: lines.lineno() });
    }

    let (scheme, dropped) = Scheme::new_reporting(n, m, p, ring, terms)
        .expect("shapes and residues were validated during parsing");
    let warnings = dropped
        .into_iter()
        .map(|term| ParseWarning::ZeroTermDropped { term })
        .collect();
    Ok(ParseOutcome { scheme, warnings })
}

fn read_matrix(
    lines: &mut Lines<'_>,
    rows: usize,
    cols: usize,
    ring: RingSpec,
) -> Result<CoeffMatrix, ParseError> {
    let mut entries = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (lineno, line) = lines
            .next_line()
            .ok_or(ParseError::UnexpectedEof { line: lines.lineno() })?;
        if line.is_empty() {
            return Err(ParseError::ShapeMismatch {
                line: lineno,
                detail: "expected a matrix row, found a blank line",
            });
        }
        let tokens: Vec<&str> = line.split(' ').collect();
        if tokens.len() != cols {
            return Err(ParseError::ShapeMismatch {
                line: lineno,
                detail: "wrong number of entries in row",
            });
        }
        for tok in tokens {
            let value: i64 = parse_int(tok).ok_or(ParseError::BadInteger { line: lineno })?;
            if let Some(q) = ring.modulus() {
                if value < 0 || value as u64 >= q {
                    return Err(ParseError::OutOfRangeResidue {
                        line: lineno,
                        value,
                        modulus: q,
                    });
                }
            }
            entries.push(value);
        }
    }
    Ok(CoeffMatrix::new(rows, cols, entries).expect("row/col counts just checked"))
}

fn expect_blank(lines: &mut Lines<'_>, eof_ok: bool) -> Result<(), ParseError> {
    match lines.next_line() {
        Some((_, "")) => Ok(()),
        Some((lineno, _)) => Err(ParseError::ShapeMismatch {
            line: lineno,
            detail: "expected a blank line between matrices",
        }),
        None if eof_ok => Ok(()),
        None => Err(ParseError::UnexpectedEof { line: lines.lineno() }),
    }
}

/// Optionally-signed decimal with no leading `+`, no leading zeros beyond
/// `0` itself, fitting an `i64`.
fn parse_int(tok: &str) -> Option<i64> {
    let digits = tok.strip_prefix('-').unwrap_or(tok);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    tok.parse().ok()
}

/// Serializes a scheme in canonical form: header, then blocks with terms
/// sorted lexicographically by their (A, B, C) entries row-major.
pub fn serialize(s: &Scheme) -> String {
    let (n, m, p) = s.format();
    let ring = match s.ring().modulus() {
        None => "Z".to_string(),
        Some(q) => format!("Zp {q}"),
    };
    let mut out = String::new();
    out.push_str(&format!("bms v1 {n} {m} {p} {} {ring}\n", s.rank()));
    let mut terms = s.terms().to_vec();
    terms.sort();
    for term in &terms {
        for matrix in [term.a(), term.b(), term.c()] {
            let cols = matrix.cols();
            for row in matrix.entries().chunks(cols) {
                let rendered: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                out.push_str(&rendered.join(" "));
                out.push('\n');
            }
            out.push('\n');
        }
    }
    out
}
