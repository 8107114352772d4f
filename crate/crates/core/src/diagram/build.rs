//! Constructors for standard diagrams.

use super::model::{ArcId, Crossing, Diagram, Slot, Vertex};
use super::Sign;
use super::validate::validate;
use crate::error::{Error, Result};

/// Closure of a braid on `strands` strands. Generator `i` (1-based) crosses
/// positions `i` and `i + 1`; positive entries put the strand coming from
/// position `i` on top, negative entries the strand from position `i + 1`.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<Diagram> {
    if strands == 0 {
        return Err(Error::Descriptor("a braid needs at least one strand".into()));
    }
    let mut cur: Vec<ArcId> = (1..=strands).collect();
    let mut next = strands + 1;
    let mut crossings = Vec::with_capacity(word.len());
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if i == 0 || i >= strands {
            return Err(Error::Descriptor(format!("generator {g} out of range for {strands} strands")));
        }
        let (l, r) = (i - 1, i);
        let w = next;
        next += 1;
        if g > 0 {
            crossings.push(Crossing { sign: Sign::Pos, over: cur[l], under_in: cur[r], under_out: w });
            cur[r] = cur[l];
            cur[l] = w;
        } else {
            crossings.push(Crossing { sign: Sign::Neg, over: cur[r], under_in: cur[l], under_out: w });
            cur[l] = cur[r];
            cur[r] = w;
        }
    }
    // closing identifies the bottom arc at each position with the top one
    let mut parent: Vec<usize> = (0..next).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (p, &bottom) in cur.iter().enumerate() {
        let (a, b) = (find(&mut parent, bottom), find(&mut parent, p + 1));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut label = vec![0usize; next];
    let mut count = 0;
    for x in 1..next {
        let r = find(&mut parent, x);
        if label[r] == 0 {
            count += 1;
            label[r] = count;
        }
        label[x] = label[r];
    }
    let mut d = Diagram { arc_count: count, ..Default::default() };
    d.crossings = crossings
        .into_iter()
        .map(|c| Crossing { sign: c.sign, over: label[c.over], under_in: label[c.under_in], under_out: label[c.under_out] })
        .collect();
    // strands that never pass under anything close up into loops
    for x in 1..=count {
        if !d.crossings.iter().any(|c| c.under_in == x) {
            d.loops.push(x);
        }
    }
    Ok(d)
}

/// The standard diagram of the trivial handlebody-knot of genus `g`: a
/// chain of `g` unknotted loops joined by `g - 1` bridges.
pub fn trivial_handlebody(g: usize) -> Diagram {
    assert!(g >= 1, "genus must be positive");
    if g == 1 {
        return Diagram { arc_count: 1, loops: vec![1], ..Default::default() };
    }
    let x1 = 1;
    let middle: Vec<(ArcId, ArcId)> = (0..g - 2).map(|k| (2 + 2 * k, 3 + 2 * k)).collect();
    let xg = 2 * (g - 2) + 2;
    let bridge = |i: usize| xg + i; // i in 1..g
    let mut vertices = vec![Vertex { sign: Sign::Neg, a: x1, b: bridge(1), c: x1 }];
    for (k, &(z, y)) in middle.iter().enumerate() {
        let i = k + 2;
        vertices.push(Vertex { sign: Sign::Pos, a: bridge(i - 1), b: z, c: y });
        vertices.push(Vertex { sign: Sign::Neg, a: z, b: bridge(i), c: y });
    }
    vertices.push(Vertex { sign: Sign::Pos, a: bridge(g - 1), b: xg, c: xg });
    Diagram { arc_count: bridge(g - 1), crossings: vec![], vertices, loops: vec![] }
}

/// The planar θ-curve.
pub fn theta_curve() -> Diagram {
    Diagram {
        arc_count: 3,
        crossings: vec![],
        vertices: vec![
            Vertex { sign: Sign::Neg, a: 1, b: 2, c: 3 },
            Vertex { sign: Sign::Pos, a: 1, b: 2, c: 3 },
        ],
        loops: vec![],
    }
}

/// Ties the knot `knot` into arc `arc` of `d` (a connected sum along that
/// arc). `knot` must be a one-component diagram without vertices;
/// `knot_arc` is the arc where it is opened up.
pub fn splice(d: &Diagram, arc: ArcId, knot: &Diagram, knot_arc: ArcId) -> Result<Diagram> {
    if !(1..=d.arc_count).contains(&arc) || !(1..=knot.arc_count).contains(&knot_arc) {
        return Err(Error::OutOfRange("splice arc out of range".into()));
    }
    if !knot.vertices.is_empty() || knot.components().len() != 1 {
        return Err(Error::Descriptor("only a single knot can be spliced in".into()));
    }
    if !knot.loops.is_empty() {
        return Ok(d.clone());
    }
    let off = d.arc_count;
    let mut out = d.clone();
    out.arc_count += knot.arc_count;
    out.crossings.extend(knot.crossings.iter().map(|c| Crossing {
        sign: c.sign,
        over: c.over + off,
        under_in: c.under_in + off,
        under_out: c.under_out + off,
    }));
    let k0 = knot_arc + off;
    if let Some(li) = out.loops.iter().position(|&l| l == arc) {
        out.loops.remove(li);
    } else {
        let m = out.fresh_arc();
        let a_head: Slot = out.head(arc).expect("valid diagram");
        let k_tail: Slot = out.tail(k0).expect("valid knot");
        out.set_slot(k_tail, m);
        out.set_slot(a_head, m);
    }
    out.rename_arc(k0, arc);
    out.delete_arc(k0);
    let violations = validate(&out);
    if !violations.is_empty() {
        return Err(Error::InvalidDiagram(violations));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closures_are_valid() {
        for (n, w, arcs, loops) in [
            (2, vec![1, 1, 1], 3, 0),
            (3, vec![1, -2, 1, -2], 4, 0),
            (3, vec![1, -2, 1, -2, 1, -2, 1, -2], 8, 0),
            (2, vec![1], 1, 0),
            (3, vec![1], 2, 1),
        ] {
            let d = braid_closure(n, &w).unwrap();
            assert!(validate(&d).is_empty(), "{w:?}: {:?}", validate(&d));
            assert_eq!((d.arc_count, d.loops.len()), (arcs, loops), "{w:?}");
        }
        assert!(braid_closure(2, &[2]).is_err());
    }

    #[test]
    fn handlebody_shapes() {
        for g in 1..=5 {
            let d = trivial_handlebody(g);
            assert!(validate(&d).is_empty(), "genus {g}");
            assert_eq!(d.genus(), g);
            assert_eq!(d.arc_count, if g == 1 { 1 } else { 3 * (g - 1) });
        }
        assert_eq!(theta_curve().genus(), 2);
    }

    #[test]
    fn splicing_keeps_genus() {
        let t = braid_closure(2, &[1, 1, 1]).unwrap();
        let th = splice(&theta_curve(), 3, &t, 1).unwrap();
        assert_eq!((th.arc_count, th.n1(), th.genus()), (6, 3, 2));
        let o = splice(&trivial_handlebody(1), 1, &t, 2).unwrap();
        assert_eq!((o.arc_count, o.n1(), o.loops.len()), (3, 3, 0));
    }
}
