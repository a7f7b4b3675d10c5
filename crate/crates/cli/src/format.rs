//! The algebra definition file format.
//!
//! ```text
//! # Lei5 over the rationals with lambda = 2
//! field Q
//! dim 3
//! basis a1 a2 a3
//! [a1,a1] = a3
//! [a2,a2] = 2*a3
//! [a1,a2] = a3
//! ```
//!
//! Brackets that are not listed are zero. A term is `<scalar>*<name>` or a
//! bare `<name>`; terms are joined with `+`, and scalars may be negative
//! (`-1/2*a3`).

use std::fmt::Write as _;
use std::str::FromStr;

use leibniz::{Field, LeibnizAlgebra, Scalar, StructureTable};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{0}")]
    File(String),
    /// The table parsed but violates the left Leibniz identity.
    #[error("left Leibniz identity fails on ({}, {}, {})", .0[0], .0[1], .0[2])]
    IdentityViolation([String; 3]),
}

impl FormatError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        FormatError::Line {
            line,
            message: message.into(),
        }
    }
}

type Result<T> = std::result::Result<T, FormatError>;

struct BracketLine {
    line: usize,
    left: String,
    right: String,
    terms: Vec<(Option<String>, String)>,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn parse_bracket(line: usize, text: &str) -> Result<BracketLine> {
    let rest = &text[1..];
    let (inside, rhs) = rest
        .split_once(']')
        .ok_or_else(|| FormatError::at(line, "missing ']'"))?;
    let (left, right) = inside
        .split_once(',')
        .ok_or_else(|| FormatError::at(line, "expected [x,y]"))?;
    let (left, right) = (left.trim(), right.trim());
    for name in [left, right] {
        if !valid_name(name) {
            return Err(FormatError::at(
                line,
                format!("invalid basis name {name:?}"),
            ));
        }
    }
    let rhs = rhs
        .trim()
        .strip_prefix('=')
        .ok_or_else(|| FormatError::at(line, "expected '=' after bracket"))?;
    let mut terms = Vec::new();
    for raw in rhs.split('+') {
        let term = raw.trim();
        if term.is_empty() {
            return Err(FormatError::at(line, "empty term"));
        }
        let (coeff, name) = match term.split_once('*') {
            Some((c, n)) => (Some(c.trim().to_string()), n.trim()),
            None => match term.strip_prefix('-') {
                Some(n) => (Some("-1".to_string()), n.trim()),
                None => (None, term),
            },
        };
        if !valid_name(name) {
            return Err(FormatError::at(line, format!("invalid term {term:?}")));
        }
        terms.push((coeff, name.to_string()));
    }
    Ok(BracketLine {
        line,
        left: left.into(),
        right: right.into(),
        terms,
    })
}

fn set_once<T>(slot: &mut Option<T>, value: T, line: usize, what: &str) -> Result<()> {
    if slot.is_some() {
        return Err(FormatError::at(
            line,
            format!("duplicate {what} declaration"),
        ));
    }
    *slot = Some(value);
    Ok(())
}

/// Parses a file into a structure table without checking the Leibniz identity.
pub fn parse_table(text: &str) -> Result<StructureTable> {
    let mut field = None;
    let mut dim = None;
    let mut basis: Option<(usize, Vec<String>)> = None;
    let mut brackets = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if content.starts_with('[') {
            brackets.push(parse_bracket(line, content)?);
            continue;
        }
        let (keyword, rest) = content
            .split_once(char::is_whitespace)
            .map(|(k, r)| (k, r.trim()))
            .unwrap_or((content, ""));
        match keyword {
            "field" => {
                let f = Field::from_str(rest).map_err(|e| FormatError::at(line, e.to_string()))?;
                set_once(&mut field, f, line, "field")?;
            }
            "dim" => {
                let n: usize = rest
                    .parse()
                    .map_err(|_| FormatError::at(line, format!("invalid dimension {rest:?}")))?;
                set_once(&mut dim, n, line, "dim")?;
            }
            "basis" => {
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if let Some(bad) = names.iter().find(|n| !valid_name(n)) {
                    return Err(FormatError::at(line, format!("invalid basis name {bad:?}")));
                }
                for (k, n) in names.iter().enumerate() {
                    if names[..k].contains(n) {
                        return Err(FormatError::at(line, format!("basis name {n:?} repeated")));
                    }
                }
                set_once(&mut basis, (line, names), line, "basis")?;
            }
            other => {
                return Err(FormatError::at(
                    line,
                    format!("unknown directive {other:?}"),
                ))
            }
        }
    }

    let field = field.ok_or_else(|| FormatError::File("missing 'field' declaration".into()))?;
    let n = dim.ok_or_else(|| FormatError::File("missing 'dim' declaration".into()))?;
    let names = match basis {
        Some((line, names)) if names.len() != n => {
            return Err(FormatError::at(
                line,
                format!("basis lists {} names but dim is {n}", names.len()),
            ))
        }
        Some((_, names)) => names,
        None => StructureTable::default_names(n),
    };

    let index = |line: usize, name: &str| {
        names
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| FormatError::at(line, format!("unknown basis name {name:?}")))
    };
    let mut table = StructureTable::zero(field, names.clone());
    let mut seen = vec![false; n * n];
    for b in brackets {
        let (i, j) = (index(b.line, &b.left)?, index(b.line, &b.right)?);
        if std::mem::replace(&mut seen[i * n + j], true) {
            return Err(FormatError::at(
                b.line,
                format!("bracket [{},{}] assigned twice", b.left, b.right),
            ));
        }
        let mut value = vec![field.zero(); n];
        for (coeff, name) in &b.terms {
            let k = index(b.line, name)?;
            let c = match coeff {
                Some(c) => field
                    .parse_scalar(c)
                    .map_err(|e| FormatError::at(b.line, e.to_string()))?,
                None => field.one(),
            };
            value[k] = field.add(&value[k], &c);
        }
        table
            .set_bracket(i, j, value)
            .map_err(|e| FormatError::at(b.line, e.to_string()))?;
    }
    Ok(table)
}

/// Parses a file and checks the left Leibniz identity.
pub fn parse_algebra(text: &str) -> Result<LeibnizAlgebra> {
    let table = parse_table(text)?;
    if let Err((i, j, k)) = table.check_left_leibniz() {
        let names = table.names();
        return Err(FormatError::IdentityViolation([
            names[i].clone(),
            names[j].clone(),
            names[k].clone(),
        ]));
    }
    Ok(LeibnizAlgebra::new(table).expect("identity already checked"))
}

/// Renders `sum_k v[k] * names[k]`, or `0` for the zero vector.
pub fn format_combination(names: &[String], v: &[Scalar]) -> String {
    let terms: Vec<String> = v
        .iter()
        .zip(names)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, name)| match c.to_string().as_str() {
            "1" => name.clone(),
            s => format!("{s}*{name}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Serializes a table in the file format. Only nonzero brackets are written.
pub fn write_algebra(table: &StructureTable) -> String {
    let mut out = String::new();
    match table.field() {
        Field::Rationals => out.push_str("field Q\n"),
        Field::Prime(p) => writeln!(out, "field GF {p}").unwrap(),
    }
    writeln!(out, "dim {}", table.dim()).unwrap();
    if table.dim() > 0 {
        writeln!(out, "basis {}", table.names().join(" ")).unwrap();
    }
    let names = table.names();
    for i in 0..table.dim() {
        for j in 0..table.dim() {
            let v = table.basis_bracket(i, j);
            if v.iter().any(|c| !c.is_zero()) {
                writeln!(
                    out,
                    "[{},{}] = {}",
                    names[i],
                    names[j],
                    format_combination(names, v)
                )
                .unwrap();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use leibniz::catalog;

    const LEI4_Q2: &str = "\
# Lei4 over Q, lambda = 2
field Q
dim 3
basis a1 a2 a3
[a1,a1] = a3
[a2,a2] = 2*a3   # lambda
";

    #[test]
    fn lei4_file_matches_catalog() {
        let parsed = parse_algebra(LEI4_Q2).unwrap();
        let q = Field::Rationals;
        assert_eq!(parsed, catalog::lei4(q, q.from_i64(2)).unwrap().algebra);
    }

    #[test]
    fn missing_dim() {
        let err = parse_table("field Q\n[e1,e1] = e1\n").unwrap_err();
        assert!(
            matches!(err, FormatError::File(ref m) if m.contains("dim")),
            "{err}"
        );
    }

    #[test]
    fn identity_violation_names_the_triple() {
        let text = format!("{LEI4_Q2}[a3,a1] = a1\n");
        assert_eq!(
            parse_algebra(&text).unwrap_err(),
            FormatError::IdentityViolation(["a1".into(), "a1".into(), "a1".into()])
        );
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("field Q\ndim 2\n[e1,e1] = e2\n[e1,e1] = e1\n", 4),
            ("field Q\ndim 2\n[e1,e3] = e2\n", 3),
            ("field GF 4\ndim 1\n", 1),
            ("field Q\ndim 2\nbasis x\n", 3),
            ("field Q\ndim 2\n[e1,e1] = 1.5*e2\n", 3),
            ("field Q\ndim 2\n[e1,e1] e2\n", 3),
            ("field Q\n\ndim x\n", 3),
            ("field Q\ndim 1\nbogus\n", 3),
            ("field GF 3\ndim 1\n[e1,e1] = 1/3*e1\n", 3),
        ];
        for (text, line) in cases {
            match parse_table(text) {
                Err(FormatError::Line { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn terms_accumulate_and_reduce() {
        let t = parse_table("field GF 3\ndim 2\nbasis x y\n[x,x] = 2*y + y + -x\n").unwrap();
        let f = Field::Prime(3);
        assert_eq!(t.basis_bracket(0, 0), &[f.from_i64(-1), f.zero()]);
    }

    #[test]
    fn default_names_and_round_trip() {
        let t = parse_table("field GF 5\ndim 2\n[e1,e1] = -1/2*e2\n").unwrap();
        assert_eq!(t.names(), ["e1", "e2"]);
        assert_eq!(parse_table(&write_algebra(&t)).unwrap(), t);
    }
}
