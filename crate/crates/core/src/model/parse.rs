//! Line-oriented model files.
//!
//! ```text
//! name S1
//! params k01 k12 k21 k23 k32 x20
//! states 3
//! inputs 1
//! outputs 1
//! class compartmental
//! domain x20 nonnegative
//! A 1 1 = -k01 - k21
//! A row 2 = k21, -k12 - k32, k23
//! B 3 1 = 1
//! C 1 1 = 1
//! x0 2 = x20
//! ```
//!
//! Header lines may come in any order; matrix entries default to zero,
//! indices are 1-based and `#` starts a comment.

use std::fmt::Write as _;

use crate::polycore::{MultiPoly, PolyError};

use super::{ModelError, ParamDomain, StructureBuilder, StructureClass, StructureSpec};

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn syntax(&self, at: &str, message: impl Into<String>) -> ModelError {
        ModelError::Syntax {
            line: self.number,
            column: self.column_of(at),
            message: message.into(),
        }
    }

    /// Column (1-based, in characters) of the sub-slice `at`.
    fn column_of(&self, at: &str) -> usize {
        let base = self.text.as_ptr() as usize;
        let off = (at.as_ptr() as usize)
            .saturating_sub(base)
            .min(self.text.len());
        self.text[..off].chars().count() + 1
    }
}

#[derive(Default)]
struct Header {
    name: Option<String>,
    params: Option<Vec<String>>,
    states: Option<usize>,
    inputs: Option<usize>,
    outputs: Option<usize>,
    class: Option<StructureClass>,
    domains: Vec<(usize, String, ParamDomain)>,
}

fn words(s: &str) -> Vec<&str> {
    s.split_whitespace().collect()
}

fn parse_count(line: &Line, word: Option<&&str>, what: &str) -> Result<usize, ModelError> {
    let w =
        word.ok_or_else(|| line.syntax(line.text.trim_end(), format!("`{what}` needs a count")))?;
    w.parse()
        .map_err(|_| line.syntax(w, format!("`{w}` is not a non-negative integer")))
}

fn set_once<T>(
    slot: &mut Option<T>,
    v: T,
    line: &Line,
    at: &str,
    key: &str,
) -> Result<(), ModelError> {
    if slot.is_some() {
        return Err(line.syntax(at, format!("`{key}` declared twice")));
    }
    *slot = Some(v);
    Ok(())
}

pub fn parse_structure(text: &str) -> Result<StructureSpec, ModelError> {
    let lines: Vec<Line> = text
        .lines()
        .enumerate()
        .map(|(i, raw)| Line {
            number: i + 1,
            text: raw.split('#').next().unwrap_or(""),
        })
        .filter(|l| !l.text.trim().is_empty())
        .collect();

    let mut header = Header::default();
    let mut entries: Vec<&Line> = Vec::new();
    for line in &lines {
        let w = words(line.text);
        let key = w[0];
        match key {
            "name" => {
                let rest = line.text.trim_start()[4..].trim();
                if rest.is_empty() {
                    return Err(line.syntax(key, "`name` needs a value"));
                }
                set_once(&mut header.name, rest.to_string(), line, key, key)?;
            }
            "params" => {
                let ps = w[1..].iter().map(|s| s.to_string()).collect();
                set_once(&mut header.params, ps, line, key, key)?;
            }
            "states" => {
                let n = parse_count(line, w.get(1), key)?;
                set_once(&mut header.states, n, line, key, key)?;
            }
            "inputs" => {
                let n = parse_count(line, w.get(1), key)?;
                set_once(&mut header.inputs, n, line, key, key)?;
            }
            "outputs" => {
                let n = parse_count(line, w.get(1), key)?;
                set_once(&mut header.outputs, n, line, key, key)?;
            }
            "class" => {
                let c = w
                    .get(1)
                    .ok_or_else(|| line.syntax(key, "`class` needs a value"))?;
                let class = StructureClass::parse(c).ok_or_else(|| {
                    line.syntax(
                        c,
                        format!("unknown class `{c}` (general-lti, positive, compartmental)"),
                    )
                })?;
                set_once(&mut header.class, class, line, key, key)?;
            }
            "domain" => {
                if w.len() != 3 {
                    return Err(
                        line.syntax(key, "expected `domain <param> positive|nonnegative|real`")
                    );
                }
                let d = ParamDomain::parse(w[2])
                    .ok_or_else(|| line.syntax(w[2], format!("unknown domain `{}`", w[2])))?;
                header.domains.push((line.number, w[1].to_string(), d));
            }
            "A" | "B" | "C" | "x0" => entries.push(line),
            other => return Err(line.syntax(other, format!("unknown directive `{other}`"))),
        }
    }

    let missing = |what: &str| ModelError::Syntax {
        line: lines.last().map_or(1, |l| l.number),
        column: 1,
        message: format!("missing `{what}` declaration"),
    };
    let params = header.params.ok_or_else(|| missing("params"))?;
    let states = header.states.ok_or_else(|| missing("states"))?;
    let outputs = header.outputs.ok_or_else(|| missing("outputs"))?;
    let inputs = header.inputs.unwrap_or(0);
    let name = header.name.unwrap_or_else(|| "unnamed".to_string());

    let mut b =
        StructureBuilder::new(&name, &params, states, inputs, outputs).map_err(|e| match e {
            ModelError::DimensionMismatch { message, .. } => {
                ModelError::DimensionMismatch { line: 0, message }
            }
            other => other,
        })?;
    b.set_class(header.class.unwrap_or(StructureClass::GeneralLti));
    for (line, p, d) in header.domains {
        b.set_domain(&p, d)
            .map_err(|_| ModelError::UndeclaredParameter {
                line,
                column: 1,
                name: p.clone(),
            })?;
    }

    let mut seen = std::collections::HashSet::new();
    for line in entries {
        for (matrix, i, j, expr) in split_entry(line, &b)? {
            if !seen.insert((matrix, i, j)) {
                return Err(line.syntax(
                    line.text.trim_start(),
                    format!("{matrix} entry ({}, {}) given twice", i + 1, j + 1),
                ));
            }
            let p = parse_expr(line, expr, &b)?;
            let mismatch = |e: ModelError| match e {
                ModelError::DimensionMismatch { message, .. } => ModelError::DimensionMismatch {
                    line: line.number,
                    message,
                },
                other => other,
            };
            match matrix {
                "A" => b.set_a(i, j, p),
                "B" => b.set_b(i, j, p),
                "C" => b.set_c(i, j, p),
                _ => b.set_x0(i, p),
            }
            .map_err(mismatch)?;
        }
    }
    b.build()
}

type Entry<'a> = (&'static str, usize, usize, &'a str);

/// Splits `A i j = e`, `A row i = e1, e2, ...` and `x0 i = e` lines.
fn split_entry<'a>(line: &'a Line, b: &StructureBuilder) -> Result<Vec<Entry<'a>>, ModelError> {
    let text = line.text;
    let eq = text
        .find('=')
        .ok_or_else(|| line.syntax(text.trim_end(), "expected `=` in matrix entry"))?;
    let lhs = &text[..eq];
    let rhs = &text[eq + 1..];
    let w = words(lhs);
    let matrix: &'static str = match w[0] {
        "A" => "A",
        "B" => "B",
        "C" => "C",
        _ => "x0",
    };
    let index = |k: usize| -> Result<usize, ModelError> {
        let tok = w
            .get(k)
            .ok_or_else(|| line.syntax(&text[eq..], "missing index before `=`"))?;
        let v: usize = tok
            .parse()
            .map_err(|_| line.syntax(tok, format!("`{tok}` is not an index")))?;
        if v == 0 {
            return Err(line.syntax(tok, "indices start at 1"));
        }
        Ok(v - 1)
    };
    let (rows, cols) = {
        let n = b.a.rows();
        match matrix {
            "A" => (n, n),
            "B" => (n, b.b.cols()),
            "C" => (b.c.rows(), n),
            _ => (n, 1),
        }
    };

    if w.get(1) == Some(&"row") && matrix != "x0" {
        if w.len() != 3 {
            return Err(line.syntax(lhs.trim_start(), "expected `<M> row <i> = e1, e2, ...`"));
        }
        let i = index(2)?;
        let parts: Vec<&str> = rhs.split(',').collect();
        if parts.len() != cols {
            return Err(ModelError::DimensionMismatch {
                line: line.number,
                message: format!(
                    "row {} of {matrix} has {} entries, expected {cols}",
                    i + 1,
                    parts.len()
                ),
            });
        }
        if i >= rows {
            return Err(ModelError::DimensionMismatch {
                line: line.number,
                message: format!("{matrix} has {rows} rows, row {} given", i + 1),
            });
        }
        return Ok(parts
            .into_iter()
            .enumerate()
            .map(|(j, e)| (matrix, i, j, e))
            .collect());
    }

    let expected = if matrix == "x0" { 2 } else { 3 };
    if w.len() != expected {
        return Err(line.syntax(
            lhs.trim_start(),
            if matrix == "x0" {
                "expected `x0 <i> = <expr>`".to_string()
            } else {
                format!("expected `{matrix} <row> <col> = <expr>`")
            },
        ));
    }
    let i = index(1)?;
    let j = if matrix == "x0" { 0 } else { index(2)? };
    if i >= rows || j >= cols {
        return Err(ModelError::DimensionMismatch {
            line: line.number,
            message: if matrix == "x0" {
                format!("x0 has {rows} entries, entry {} given", i + 1)
            } else {
                format!(
                    "{matrix} is {rows}×{cols}, entry ({}, {}) given",
                    i + 1,
                    j + 1
                )
            },
        });
    }
    Ok(vec![(matrix, i, j, rhs)])
}

fn parse_expr(line: &Line, expr: &str, b: &StructureBuilder) -> Result<MultiPoly, ModelError> {
    let base = line.column_of(expr);
    b.parse_entry(expr).map_err(|e| match e {
        PolyError::UnknownVariable(name) => ModelError::UndeclaredParameter {
            line: line.number,
            column: base + MultiPoly::locate_identifier(expr, &name).unwrap_or(1) - 1,
            name,
        },
        PolyError::Parse { column, message } => ModelError::Syntax {
            line: line.number,
            column: base + column - 1,
            message,
        },
        other => ModelError::Syntax {
            line: line.number,
            column: base,
            message: other.to_string(),
        },
    })
}

pub(super) fn print_structure(s: &StructureSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "name {}", s.name());
    let _ = writeln!(out, "params {}", s.params().join(" "));
    let _ = writeln!(out, "states {}", s.n_states());
    let _ = writeln!(out, "inputs {}", s.n_inputs());
    let _ = writeln!(out, "outputs {}", s.n_outputs());
    let _ = writeln!(out, "class {}", s.class());
    for (p, d) in s.params().iter().zip(s.domains()) {
        if *d != ParamDomain::default() {
            let _ = writeln!(out, "domain {p} {}", d.name());
        }
    }
    for (name, m) in [("A", s.a()), ("B", s.b()), ("C", s.c())] {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let e = m.get(i, j);
                if !e.is_zero() {
                    let _ = writeln!(out, "{name} {} {} = {e}", i + 1, j + 1);
                }
            }
        }
    }
    for (i, e) in s.x0().iter().enumerate() {
        if !e.is_zero() {
            let _ = writeln!(out, "x0 {} = {e}", i + 1);
        }
    }
    out
}
