//! Text format for diagrams.
//!
//! ```text
//! # comment
//! components: 2
//! 1+ 2- 3f 1- 2+ 3f
//! O
//! crossings:
//! 1 C +1
//! 2 C -1
//! 3 F +1
//! ```
//!
//! After the `components: n` header come exactly `n` component lines, each a
//! whitespace-separated cyclic list of visit tokens `<id><role>` with role
//! `+` (over), `-` (under) or `f` (flat pass). A crossingless component is
//! the single token `O`. The `crossings:` line opens the crossing table with
//! one `<id> C <sign>` or `<id> F <bit>` entry per line, sign and bit being
//! `+1` or `-1`. Blank lines and lines whose first non-blank character is
//! `#` are ignored everywhere. Anything else is a syntax error.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::diagram::{Component, CrossingId, CrossingKind, Diagram, Role, Sign, Visit};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> SyntaxError {
    SyntaxError { line, column, message: message.into() }
}

/// Whitespace-separated tokens of a line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_id(tok: &str, line: usize, col: usize) -> Result<CrossingId, SyntaxError> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(line, col, format!("invalid crossing id `{tok}`")));
    }
    tok.parse().map_err(|_| syntax(line, col, format!("crossing id `{tok}` out of range")))
}

fn parse_sign(tok: &str, line: usize, col: usize) -> Result<Sign, SyntaxError> {
    match tok {
        "+1" => Ok(Sign::Pos),
        "-1" => Ok(Sign::Neg),
        _ => Err(syntax(line, col, format!("expected `+1` or `-1`, found `{tok}`"))),
    }
}

fn parse_visit(tok: &str, line: usize, col: usize) -> Result<Visit, SyntaxError> {
    let Some(role_ch) = tok.chars().last() else {
        return Err(syntax(line, col, "empty visit token"));
    };
    let role = match role_ch {
        '+' => Role::Over,
        '-' => Role::Under,
        'f' => Role::FlatPass,
        _ => {
            return Err(syntax(
                line,
                col + tok.len() - role_ch.len_utf8(),
                format!("invalid role `{role_ch}` in `{tok}`; expected `+`, `-` or `f`"),
            ))
        }
    };
    let id = parse_id(&tok[..tok.len() - 1], line, col)?;
    Ok(Visit { crossing: id, role })
}

/// Parses the text format. The result is not validated; see
/// [`Diagram::validate`].
pub fn parse_diagram(text: &str) -> Result<Diagram, SyntaxError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        });

    let (ln, header) = lines.next().ok_or_else(|| syntax(1, 1, "missing `components:` header"))?;
    let toks = tokens(header);
    let n: usize = match toks.as_slice() {
        [(_, "components:"), (c, n)] => {
            n.parse().map_err(|_| syntax(ln, *c, format!("invalid component count `{n}`")))?
        }
        _ => return Err(syntax(ln, 1, "expected `components: <n>`")),
    };

    let mut components = Vec::with_capacity(n);
    for k in 0..n {
        let (ln, line) = lines.next().ok_or_else(|| {
            syntax(ln, 1, format!("expected {n} component lines, found {k}"))
        })?;
        let toks = tokens(line);
        if toks.len() == 1 && toks[0].1 == "O" {
            components.push(Component::Unknot);
            continue;
        }
        if toks.first().is_some_and(|t| t.1 == "crossings:") {
            return Err(syntax(ln, 1, format!("expected {n} component lines, found {k}")));
        }
        let visits = toks
            .iter()
            .map(|&(c, t)| {
                if t == "O" {
                    Err(syntax(ln, c, "unknot marker `O` must be alone on its line"))
                } else {
                    parse_visit(t, ln, c)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        components.push(Component::Strand(visits));
    }

    let mut crossings = BTreeMap::new();
    match lines.next() {
        None => {}
        Some((ln, line)) => {
            if tokens(line).as_slice() != [(1, "crossings:")] && line.trim() != "crossings:" {
                return Err(syntax(ln, 1, "expected `crossings:`"));
            }
            for (ln, line) in lines {
                let toks = tokens(line);
                let [(c_id, id), (c_kind, kind), (c_sign, sign)] = toks.as_slice() else {
                    return Err(syntax(ln, 1, "expected `<id> C|F +1|-1`"));
                };
                let id = parse_id(id, ln, *c_id)?;
                let sign = parse_sign(sign, ln, *c_sign)?;
                let kind = match *kind {
                    "C" => CrossingKind::Classical(sign),
                    "F" => CrossingKind::Flat(sign),
                    other => {
                        return Err(syntax(
                            ln,
                            *c_kind,
                            format!("expected crossing kind `C` or `F`, found `{other}`"),
                        ))
                    }
                };
                if crossings.insert(id, kind).is_some() {
                    return Err(syntax(ln, *c_id, format!("duplicate crossing id {id}")));
                }
            }
        }
    }
    Ok(Diagram::new(crossings, components))
}

fn role_char(r: Role) -> char {
    match r {
        Role::Over => '+',
        Role::Under => '-',
        Role::FlatPass => 'f',
    }
}

pub fn serialize_diagram(d: &Diagram) -> String {
    let mut out = String::new();
    writeln!(out, "components: {}", d.component_count()).unwrap();
    for comp in d.components() {
        match comp {
            Component::Unknot => out.push('O'),
            Component::Strand(v) => {
                for (i, vis) in v.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    write!(out, "{}{}", vis.crossing, role_char(vis.role)).unwrap();
                }
            }
        }
        out.push('\n');
    }
    out.push_str("crossings:\n");
    for (id, kind) in d.crossings() {
        match kind {
            CrossingKind::Classical(s) => writeln!(out, "{id} C {s}").unwrap(),
            CrossingKind::Flat(s) => writeln!(out, "{id} F {s}").unwrap(),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_roundtrip() {
        let text = serialize_diagram(&Diagram::unknot());
        assert_eq!(text, "components: 1\nO\ncrossings:\n");
        let d = parse_diagram(&text).unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.crossing_count(), 0);
    }

    #[test]
    fn table_may_be_omitted_for_crossingless_diagrams() {
        let d = parse_diagram("components: 2\nO\nO\n").unwrap();
        assert_eq!(d, Diagram::unlink(2));
    }

    #[test]
    fn comments_and_blank_lines() {
        let d = parse_diagram("# kink\n\ncomponents: 1\n  1+ 1-  \n# table\ncrossings:\n1 C -1\n")
            .unwrap();
        assert!(d.is_valid());
        assert_eq!(d.writhe(), -1);
    }

    #[test]
    fn malformed_role_token() {
        let e = parse_diagram("components: 1\n1+ 1x\ncrossings:\n1 C +1\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 5));
        assert!(e.message.contains("invalid role"));
    }

    #[test]
    fn other_syntax_errors() {
        for (text, line) in [
            ("", 1),
            ("component: 1\nO\n", 1),
            ("components: x\nO\n", 1),
            ("components: 2\nO\n", 1),
            ("components: 1\nO 1+\n", 2),
            ("components: 1\nO\nfoo\n", 3),
            ("components: 1\nO\ncrossings:\n1 X +1\n", 4),
            ("components: 1\nO\ncrossings:\n1 C 1\n", 4),
            ("components: 1\nO\ncrossings:\n1 C +1\n1 F -1\n", 5),
            ("components: 1\n+\n", 2),
        ] {
            let e = parse_diagram(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
        }
    }

    #[test]
    fn invalid_but_well_formed_parses() {
        let d = parse_diagram("components: 1\n1+ 1+\ncrossings:\n1 C +1\n").unwrap();
        assert!(!d.is_valid());
    }
}
