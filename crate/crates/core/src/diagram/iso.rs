use std::collections::VecDeque;

use super::model::{ArcId, Diagram, Slot};

/// Relabels arcs in breadth-first order starting from arc 1, following
/// under-strands, vertices and over-crossings, then sorts the records.
/// Disconnected pieces are visited in order of their lowest old label.
pub fn canonical_relabel(d: &Diagram) -> Diagram {
    let mut new_label = vec![0usize; d.arc_count + 1];
    let mut next = 1;
    let neighbours = |x: ArcId| -> Vec<ArcId> {
        let mut out = Vec::new();
        for s in [d.head(x), d.tail(x)].into_iter().flatten() {
            match s {
                Slot::CrossingIn(i) | Slot::CrossingOut(i) => {
                    let c = d.crossings[i];
                    out.extend([c.over, c.under_in, c.under_out]);
                }
                Slot::Vertex(i, _) => out.extend(d.vertices[i].arcs()),
                Slot::Loop(_) => {}
            }
        }
        for i in d.over_crossings(x) {
            let c = d.crossings[i];
            out.extend([c.under_in, c.under_out]);
        }
        out
    };
    for start in d.arcs() {
        if new_label[start] != 0 {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        new_label[start] = next;
        next += 1;
        while let Some(x) = queue.pop_front() {
            for y in neighbours(x) {
                if new_label[y] == 0 {
                    new_label[y] = next;
                    next += 1;
                    queue.push_back(y);
                }
            }
        }
    }
    let mut out = d.clone();
    for c in &mut out.crossings {
        c.over = new_label[c.over];
        c.under_in = new_label[c.under_in];
        c.under_out = new_label[c.under_out];
    }
    for v in &mut out.vertices {
        v.a = new_label[v.a];
        v.b = new_label[v.b];
        v.c = new_label[v.c];
    }
    for l in &mut out.loops {
        *l = new_label[*l];
    }
    out.crossings.sort();
    out.vertices.sort();
    out.loops.sort();
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Record {
    Crossing(usize),
    Vertex(usize),
    Loop(usize),
}

fn record_key(d: &Diagram, r: Record) -> (u8, bool, Vec<ArcId>) {
    match r {
        Record::Crossing(i) => {
            let c = d.crossings[i];
            (0, c.sign.is_pos(), vec![c.over, c.under_in, c.under_out])
        }
        Record::Vertex(i) => {
            let v = d.vertices[i];
            (1, v.sign.is_pos(), v.arcs().to_vec())
        }
        Record::Loop(i) => (2, true, vec![d.loops[i]]),
    }
}

fn records(d: &Diagram) -> Vec<Record> {
    (0..d.crossings.len())
        .map(Record::Crossing)
        .chain((0..d.vertices.len()).map(Record::Vertex))
        .chain((0..d.loops.len()).map(Record::Loop))
        .collect()
}

/// Whether some bijection of arc labels carries the records of `a` onto
/// those of `b`.
pub fn is_isomorphic(a: &Diagram, b: &Diagram) -> bool {
    if a.arc_count != b.arc_count
        || a.crossings.len() != b.crossings.len()
        || a.vertices.len() != b.vertices.len()
        || a.loops.len() != b.loops.len()
    {
        return false;
    }
    // order a's records so each one shares arcs with earlier ones when possible
    let mut pending = records(a);
    let mut order = Vec::with_capacity(pending.len());
    let mut seen = vec![false; a.arc_count + 1];
    while !pending.is_empty() {
        let pos = pending
            .iter()
            .position(|&r| record_key(a, r).2.iter().any(|&x| seen[x]))
            .unwrap_or(0);
        let r = pending.remove(pos);
        for x in record_key(a, r).2 {
            seen[x] = true;
        }
        order.push(r);
    }
    let targets = records(b);
    let mut fwd = vec![0usize; a.arc_count + 1];
    let mut bwd = vec![0usize; b.arc_count + 1];
    let mut used = vec![false; targets.len()];
    search(a, b, &order, 0, &targets, &mut used, &mut fwd, &mut bwd)
}

#[allow(clippy::too_many_arguments)]
fn search(
    a: &Diagram,
    b: &Diagram,
    order: &[Record],
    k: usize,
    targets: &[Record],
    used: &mut [bool],
    fwd: &mut [usize],
    bwd: &mut [usize],
) -> bool {
    let Some(&r) = order.get(k) else {
        return true;
    };
    let (kind, sign, xs) = record_key(a, r);
    for (t, &cand) in targets.iter().enumerate() {
        if used[t] {
            continue;
        }
        let (ck, cs, ys) = record_key(b, cand);
        if ck != kind || cs != sign {
            continue;
        }
        let mut assigned = Vec::new();
        let mut ok = true;
        for (&x, &y) in xs.iter().zip(&ys) {
            if fwd[x] == 0 && bwd[y] == 0 {
                fwd[x] = y;
                bwd[y] = x;
                assigned.push(x);
            } else if fwd[x] != y || bwd[y] != x {
                ok = false;
                break;
            }
        }
        if ok {
            used[t] = true;
            if search(a, b, order, k + 1, targets, used, fwd, bwd) {
                return true;
            }
            used[t] = false;
        }
        for x in assigned {
            bwd[fwd[x]] = 0;
            fwd[x] = 0;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    #[test]
    fn relabelled_trefoils_are_isomorphic() {
        let a = parse_diagram("arcs 3\nX + 1 3 2\nX + 2 1 3\nX + 3 2 1\n").unwrap();
        let b = parse_diagram("arcs 3\nX + 3 1 2\nX + 1 2 3\nX + 2 3 1\n").unwrap();
        assert!(is_isomorphic(&a, &b));
        assert!(is_isomorphic(&canonical_relabel(&a), &canonical_relabel(&b)));
        let mirror = parse_diagram("arcs 3\nX - 1 3 2\nX - 2 1 3\nX - 3 2 1\n").unwrap();
        assert!(!is_isomorphic(&a, &mirror));
    }

    #[test]
    fn vertex_roles_matter() {
        let a = parse_diagram("arcs 3\nV - 1 2 3\nV + 1 2 3\n").unwrap();
        let b = parse_diagram("arcs 3\nV - 1 2 3\nV + 2 1 3\n").unwrap();
        assert!(!is_isomorphic(&a, &b));
        let c = parse_diagram("arcs 3\nV + 2 1 3\nV - 2 1 3\n").unwrap();
        assert!(is_isomorphic(&a, &c));
    }
}
