use super::model::{Crossing, Diagram, Sign, Vertex};
use super::validate::{validate_with_lines, RecordLines};
use crate::error::{Error, Result};

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter().map(|(s, t)| (line[..s].chars().count() + 1, t)).collect()
}

fn parse_sign(ln: usize, (col, tok): (usize, &str)) -> Result<Sign> {
    match tok {
        "+" => Ok(Sign::Pos),
        "-" | "\u{2212}" => Ok(Sign::Neg),
        _ => Err(Error::parse(ln, col, format!("expected sign `+` or `-`, found `{tok}`"))),
    }
}

fn parse_label(ln: usize, (col, tok): (usize, &str)) -> Result<usize> {
    tok.parse::<usize>()
        .ok()
        .filter(|&x| x > 0)
        .ok_or_else(|| Error::parse(ln, col, format!("expected a positive arc label, found `{tok}`")))
}

/// Parses without validating; also returns the source line of each record.
pub(crate) fn parse_diagram_unchecked(text: &str) -> Result<(Diagram, RecordLines)> {
    let mut d = Diagram::default();
    let mut lines = RecordLines::default();
    let mut header_seen = false;
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(col, keyword)) = toks.first() else {
            continue;
        };
        let want = |n: usize| -> Result<()> {
            if toks.len() != n {
                let end = content.trim_end().chars().count() + 1;
                let c = toks.get(n).map_or(end, |t| t.0);
                Err(Error::parse(ln, c, format!("`{keyword}` takes {} fields, found {}", n - 1, toks.len() - 1)))
            } else {
                Ok(())
            }
        };
        match keyword {
            "arcs" => {
                want(2)?;
                if header_seen {
                    return Err(Error::parse(ln, col, "duplicate `arcs` header"));
                }
                d.arc_count = toks[1]
                    .1
                    .parse()
                    .map_err(|_| Error::parse(ln, toks[1].0, "expected an arc count"))?;
                header_seen = true;
            }
            _ if !header_seen => {
                return Err(Error::parse(ln, col, "expected `arcs <n>` before any record"));
            }
            "X" => {
                want(5)?;
                d.crossings.push(Crossing {
                    sign: parse_sign(ln, toks[1])?,
                    over: parse_label(ln, toks[2])?,
                    under_in: parse_label(ln, toks[3])?,
                    under_out: parse_label(ln, toks[4])?,
                });
                lines.crossings.push(ln);
            }
            "V" => {
                want(5)?;
                d.vertices.push(Vertex {
                    sign: parse_sign(ln, toks[1])?,
                    a: parse_label(ln, toks[2])?,
                    b: parse_label(ln, toks[3])?,
                    c: parse_label(ln, toks[4])?,
                });
                lines.vertices.push(ln);
            }
            "loop" => {
                want(2)?;
                d.loops.push(parse_label(ln, toks[1])?);
                lines.loops.push(ln);
            }
            other => return Err(Error::parse(ln, col, format!("unknown record `{other}`"))),
        }
    }
    if !header_seen {
        return Err(Error::parse(1, 1, "missing `arcs <n>` header"));
    }
    Ok((d, lines))
}

/// Parses and validates a diagram file.
pub fn parse_diagram(text: &str) -> Result<Diagram> {
    let (d, lines) = parse_diagram_unchecked(text)?;
    let violations = validate_with_lines(&d, &lines);
    if violations.is_empty() {
        Ok(d)
    } else {
        Err(Error::InvalidDiagram(violations))
    }
}

/// Text form: the header, then crossings, vertices and loops in stored
/// order. Parsing the output gives back an identical diagram.
pub fn serialize_diagram(d: &Diagram) -> String {
    let mut out = format!("arcs {}\n", d.arc_count);
    for c in &d.crossings {
        out.push_str(&format!("X {} {} {} {}\n", c.sign, c.over, c.under_in, c.under_out));
    }
    for v in &d.vertices {
        out.push_str(&format!("V {} {} {} {}\n", v.sign, v.a, v.b, v.c));
    }
    for l in &d.loops {
        out.push_str(&format!("loop {l}\n"));
    }
    out
}
