use std::fmt;

use super::model::{ArcId, Diagram, Slot};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    ArcOutOfRange { arc: ArcId },
    /// The arc never ends (or never starts).
    Dangling { arc: ArcId, missing_head: bool },
    /// The arc ends (or starts) more than once.
    DuplicateEnd { arc: ArcId, head: bool },
    /// A vertex whose three arcs all end there (sink) or all start there.
    SourceSink { vertex: usize, sink: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Source line of the offending record, when known.
    pub line: Option<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = self.line {
            write!(f, "line {l}: ")?;
        }
        match &self.kind {
            ViolationKind::ArcOutOfRange { arc } => write!(f, "arc label {arc} out of range"),
            ViolationKind::Dangling { arc, missing_head } => {
                let what = if *missing_head { "end" } else { "start" };
                write!(f, "dangling arc {arc}: it has no {what}")
            }
            ViolationKind::DuplicateEnd { arc, head } => {
                let what = if *head { "ends" } else { "starts" };
                write!(f, "duplicate label: arc {arc} {what} more than once")
            }
            ViolationKind::SourceSink { vertex, sink } => {
                let what = if *sink { "sink" } else { "source" };
                write!(f, "source/sink vertex: vertex {} is a {what}", vertex + 1)
            }
        }
    }
}

/// Source lines of each record, used to annotate violations.
#[derive(Clone, Debug, Default)]
pub(crate) struct RecordLines {
    pub crossings: Vec<usize>,
    pub vertices: Vec<usize>,
    pub loops: Vec<usize>,
}

impl RecordLines {
    fn of(&self, s: Slot) -> Option<usize> {
        match s {
            Slot::CrossingIn(i) | Slot::CrossingOut(i) => self.crossings.get(i).copied(),
            Slot::Vertex(i, _) => self.vertices.get(i).copied(),
            Slot::Loop(i) => self.loops.get(i).copied(),
        }
    }
}

/// Lists every violated structural invariant; an empty list means valid.
pub fn validate(d: &Diagram) -> Vec<Violation> {
    validate_with_lines(d, &RecordLines::default())
}

pub(crate) fn validate_with_lines(d: &Diagram, lines: &RecordLines) -> Vec<Violation> {
    let mut out = Vec::new();
    let in_range = |x: ArcId| (1..=d.arc_count).contains(&x);
    for (i, c) in d.crossings.iter().enumerate() {
        for x in [c.over, c.under_in, c.under_out] {
            if !in_range(x) {
                out.push(Violation {
                    kind: ViolationKind::ArcOutOfRange { arc: x },
                    line: lines.crossings.get(i).copied(),
                });
            }
        }
    }
    for (i, v) in d.vertices.iter().enumerate() {
        for x in v.arcs() {
            if !in_range(x) {
                out.push(Violation {
                    kind: ViolationKind::ArcOutOfRange { arc: x },
                    line: lines.vertices.get(i).copied(),
                });
            }
        }
    }
    for (i, &x) in d.loops.iter().enumerate() {
        if !in_range(x) {
            out.push(Violation { kind: ViolationKind::ArcOutOfRange { arc: x }, line: lines.loops.get(i).copied() });
        }
    }
    if !out.is_empty() {
        return out;
    }

    let slots = d.slots();
    let mut heads: Vec<Vec<Slot>> = vec![Vec::new(); d.arc_count + 1];
    let mut tails: Vec<Vec<Slot>> = vec![Vec::new(); d.arc_count + 1];
    for &(s, h, t) in &slots {
        let x = d.slot_arc(s);
        if h {
            heads[x].push(s);
        }
        if t {
            tails[x].push(s);
        }
    }

    // A vertex is a source or sink when each incident arc, read from its
    // other end, points the same way relative to the vertex.
    let mut suppressed = vec![false; d.arc_count + 1];
    for (i, v) in d.vertices.iter().enumerate() {
        let effective_heads: Vec<bool> = (0..3)
            .map(|k| {
                let x = v.arcs()[k];
                let here = Slot::Vertex(i, k);
                let others_h: Vec<Slot> = heads[x].iter().copied().filter(|&s| s != here).collect();
                let others_t: Vec<Slot> = tails[x].iter().copied().filter(|&s| s != here).collect();
                match (others_h.len(), others_t.len()) {
                    (0, 1) => true,
                    (1, 0) => false,
                    _ => v.slot_is_head(k),
                }
            })
            .collect();
        let all_in = effective_heads.iter().all(|&h| h);
        let all_out = effective_heads.iter().all(|&h| !h);
        if all_in || all_out {
            out.push(Violation {
                kind: ViolationKind::SourceSink { vertex: i, sink: all_in },
                line: lines.vertices.get(i).copied(),
            });
            for x in v.arcs() {
                suppressed[x] = true;
            }
        }
    }

    for x in d.arcs() {
        if suppressed[x] {
            continue;
        }
        for (list, is_head) in [(&heads[x], true), (&tails[x], false)] {
            match list.len() {
                0 => {
                    let other = if is_head { &tails[x] } else { &heads[x] };
                    out.push(Violation {
                        kind: ViolationKind::Dangling { arc: x, missing_head: is_head },
                        line: other.first().and_then(|&s| lines.of(s)),
                    });
                }
                1 => {}
                _ => out.push(Violation {
                    kind: ViolationKind::DuplicateEnd { arc: x, head: is_head },
                    line: lines.of(list[1]),
                }),
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram_unchecked;

    fn check(text: &str) -> Vec<Violation> {
        let (d, lines) = parse_diagram_unchecked(text).unwrap();
        validate_with_lines(&d, &lines)
    }

    #[test]
    fn valid_diagrams_have_empty_reports() {
        assert!(check("arcs 3\nX + 1 3 2\nX + 2 1 3\nX + 3 2 1\n").is_empty());
        assert!(check("arcs 3\nV - 1 2 3\nV + 1 2 3\n").is_empty());
        assert!(check("arcs 1\nloop 1\n").is_empty());
    }

    #[test]
    fn sink_vertex() {
        // arc 3 leaves the crossing and enters the first vertex, so all
        // three arcs end there; the second vertex is then a source
        let v = check("arcs 4\nV + 1 2 3\nV - 1 2 4\nX + 1 4 3\n");
        assert_eq!(v.len(), 2, "{v:?}");
        assert!(v.iter().all(|x| matches!(x.kind, ViolationKind::SourceSink { .. })));
        assert!(v.iter().any(|x| x.kind == ViolationKind::SourceSink { vertex: 0, sink: true }));
        assert!(v.iter().any(|x| x.kind == ViolationKind::SourceSink { vertex: 1, sink: false }));
        assert!(v.iter().any(|x| x.to_string().contains("source/sink vertex")));
    }

    #[test]
    fn dangling_arc() {
        let v = check("arcs 4\nX + 1 3 2\nX + 2 1 3\nX + 3 2 1\nX + 1 4 4\n");
        assert!(v.is_empty(), "{v:?}");
        let v = check("arcs 4\nX + 1 3 2\nX + 2 1 3\nX + 3 2 1\n");
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|x| matches!(x.kind, ViolationKind::Dangling { arc: 4, .. })));
        let v = check("arcs 3\nX + 1 3 2\nX + 2 1 3\nX + 3 2 3\n");
        assert!(v.iter().any(|x| matches!(x.kind, ViolationKind::DuplicateEnd { arc: 3, head: false })));
        assert!(v.iter().any(|x| x.line == Some(4)));
    }

    #[test]
    fn out_of_range() {
        let v = check("arcs 2\nX + 1 2 5\n");
        assert_eq!(v, vec![Violation { kind: ViolationKind::ArcOutOfRange { arc: 5 }, line: Some(2) }]);
    }
}
