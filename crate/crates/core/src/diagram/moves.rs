//! Local moves on diagrams: the classical moves R1–R3, a strand passing a
//! vertex (R4), twisting the two edges at a vertex (R5) and the IH-move
//! (R6). Each rewrite preserves the Wirtinger relations, so flows and
//! colorings of the old and new diagrams correspond bijectively. Planarity
//! of the result is not checked.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::model::{ArcId, Crossing, Diagram, Sign, Slot, Vertex};
use super::validate::validate;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum R3Variant {
    /// The crossing `gamma` lies on the first over-strand.
    First,
    /// The crossing `gamma` lies on the second over-strand.
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwistVariant {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IhKind {
    AssocLeft,
    AssocRight,
    MergeSplitLeft,
    MergeSplitRight,
    SplitMergeLeft,
    SplitMergeRight,
}

const IH_KINDS: [IhKind; 6] = [
    IhKind::AssocLeft,
    IhKind::AssocRight,
    IhKind::MergeSplitLeft,
    IhKind::MergeSplitRight,
    IhKind::SplitMergeLeft,
    IhKind::SplitMergeRight,
];

/// A move together with its location. Indices refer to positions in
/// `Diagram::crossings` / `Diagram::vertices`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveSpec {
    /// Add a kink on `arc` next to its end (`at_head`) or start.
    R1Add { arc: ArcId, sign: Sign, over_first: bool, at_head: bool },
    /// Remove a kink crossing.
    R1Remove { crossing: usize },
    /// Push `under` beneath `over`, creating two crossings.
    R2Add { over: ArcId, under: ArcId, sign: Sign, at_head: bool },
    /// Remove two crossings on the same over-arc with opposite signs.
    R2Remove { first: usize, second: usize },
    /// Slide the strand through `middle` across the crossing `gamma`.
    R3 { middle: ArcId, gamma: usize, variant: R3Variant },
    /// A strand crossing over the `c` edge of `vertex` is slid across it.
    R4OverSplit { vertex: usize, crossing: usize },
    /// Inverse of [`MoveSpec::R4OverSplit`].
    R4OverMerge { vertex: usize },
    /// A strand passing under the `c` edge of `vertex` is slid across it.
    R4UnderSplit { crossing: usize, vertex: usize },
    /// Inverse of [`MoveSpec::R4UnderSplit`]; `first` is the crossing met first.
    R4UnderMerge { first: usize },
    /// Twist the `a` and `b` edges of a vertex around each other.
    R5Twist { vertex: usize, variant: TwistVariant },
    /// Inverse of [`MoveSpec::R5Twist`].
    R5Untwist { vertex: usize, crossing: usize },
    /// The IH-move on two vertices joined by an arc.
    R6 { first: usize, second: usize, kind: IhKind },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    R1Add,
    R1Remove,
    R2Add,
    R2Remove,
    R3,
    R4OverSplit,
    R4OverMerge,
    R4UnderSplit,
    R4UnderMerge,
    R5Twist,
    R5Untwist,
    R6,
}

impl MoveKind {
    pub const ALL: [MoveKind; 12] = [
        MoveKind::R1Add,
        MoveKind::R1Remove,
        MoveKind::R2Add,
        MoveKind::R2Remove,
        MoveKind::R3,
        MoveKind::R4OverSplit,
        MoveKind::R4OverMerge,
        MoveKind::R4UnderSplit,
        MoveKind::R4UnderMerge,
        MoveKind::R5Twist,
        MoveKind::R5Untwist,
        MoveKind::R6,
    ];

    /// The family name, `R1` to `R6`.
    pub fn family(self) -> &'static str {
        match self {
            MoveKind::R1Add | MoveKind::R1Remove => "R1",
            MoveKind::R2Add | MoveKind::R2Remove => "R2",
            MoveKind::R3 => "R3",
            MoveKind::R4OverSplit | MoveKind::R4OverMerge | MoveKind::R4UnderSplit | MoveKind::R4UnderMerge => "R4",
            MoveKind::R5Twist | MoveKind::R5Untwist => "R5",
            MoveKind::R6 => "R6",
        }
    }
}

impl MoveSpec {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSpec::R1Add { .. } => MoveKind::R1Add,
            MoveSpec::R1Remove { .. } => MoveKind::R1Remove,
            MoveSpec::R2Add { .. } => MoveKind::R2Add,
            MoveSpec::R2Remove { .. } => MoveKind::R2Remove,
            MoveSpec::R3 { .. } => MoveKind::R3,
            MoveSpec::R4OverSplit { .. } => MoveKind::R4OverSplit,
            MoveSpec::R4OverMerge { .. } => MoveKind::R4OverMerge,
            MoveSpec::R4UnderSplit { .. } => MoveKind::R4UnderSplit,
            MoveSpec::R4UnderMerge { .. } => MoveKind::R4UnderMerge,
            MoveSpec::R5Twist { .. } => MoveKind::R5Twist,
            MoveSpec::R5Untwist { .. } => MoveKind::R5Untwist,
            MoveSpec::R6 { .. } => MoveKind::R6,
        }
    }
}

impl fmt::Display for MoveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

fn mismatch(msg: impl Into<String>) -> Error {
    Error::MovePattern(msg.into())
}

fn crossing_at(d: &Diagram, i: usize) -> Result<Crossing> {
    d.crossings.get(i).copied().ok_or_else(|| Error::OutOfRange(format!("no crossing {i}")))
}

fn vertex_at(d: &Diagram, i: usize) -> Result<Vertex> {
    d.vertices.get(i).copied().ok_or_else(|| Error::OutOfRange(format!("no vertex {i}")))
}

fn check_arc(d: &Diagram, x: ArcId) -> Result<()> {
    if (1..=d.arc_count).contains(&x) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("no arc {x}")))
    }
}

fn loop_index(d: &Diagram, x: ArcId) -> Option<usize> {
    d.loops.iter().position(|&l| l == x)
}

fn remove_crossings(d: &mut Diagram, mut idx: Vec<usize>) {
    idx.sort_unstable_by(|a, b| b.cmp(a));
    for i in idx {
        d.crossings.remove(i);
    }
}

fn delete_arcs(d: &mut Diagram, mut xs: Vec<ArcId>) {
    xs.sort_unstable_by(|a, b| b.cmp(a));
    xs.dedup();
    for x in xs {
        d.delete_arc(x);
    }
}

fn require_not_over(d: &Diagram, x: ArcId) -> Result<()> {
    if d.is_over_arc(x) {
        Err(mismatch(format!("arc {x} is an over-arc")))
    } else {
        Ok(())
    }
}

/// Inserts a kink on arc `x` (which may be a closed loop).
pub(crate) fn add_kink(d: &mut Diagram, x: ArcId, sign: Sign, over_first: bool, at_head: bool) {
    if let Some(li) = loop_index(d, x) {
        d.loops.remove(li);
        d.crossings.push(Crossing { sign, over: x, under_in: x, under_out: x });
        return;
    }
    let y = d.fresh_arc();
    if at_head {
        let h = d.head(x).expect("valid diagram");
        d.set_slot(h, y);
        let over = if over_first { x } else { y };
        d.crossings.push(Crossing { sign, over, under_in: x, under_out: y });
    } else {
        let t = d.tail(x).expect("valid diagram");
        d.set_slot(t, y);
        let over = if over_first { y } else { x };
        d.crossings.push(Crossing { sign, over, under_in: y, under_out: x });
    }
}

fn r1_remove(d: &mut Diagram, i: usize) -> Result<()> {
    let c = crossing_at(d, i)?;
    if c.over != c.under_in && c.over != c.under_out {
        return Err(mismatch(format!("crossing {i} is not a kink")));
    }
    d.crossings.remove(i);
    if c.under_in == c.under_out {
        d.loops.push(c.under_in);
    } else {
        d.rename_arc(c.under_out, c.under_in);
        d.delete_arc(c.under_out);
    }
    Ok(())
}

fn r2_add(d: &mut Diagram, over: ArcId, under: ArcId, sign: Sign, at_head: bool) -> Result<()> {
    check_arc(d, over)?;
    check_arc(d, under)?;
    if over == under {
        return Err(mismatch("an arc cannot be pushed under itself"));
    }
    let flip = sign.flip();
    if let Some(li) = loop_index(d, under) {
        d.loops.remove(li);
        let m = d.fresh_arc();
        d.crossings.push(Crossing { sign, over, under_in: under, under_out: m });
        d.crossings.push(Crossing { sign: flip, over, under_in: m, under_out: under });
    } else if at_head {
        let h = d.head(under).expect("valid diagram");
        let m = d.fresh_arc();
        let u3 = d.fresh_arc();
        d.set_slot(h, u3);
        d.crossings.push(Crossing { sign, over, under_in: under, under_out: m });
        d.crossings.push(Crossing { sign: flip, over, under_in: m, under_out: u3 });
    } else {
        let t = d.tail(under).expect("valid diagram");
        let u1 = d.fresh_arc();
        let m = d.fresh_arc();
        d.set_slot(t, u1);
        d.crossings.push(Crossing { sign, over, under_in: u1, under_out: m });
        d.crossings.push(Crossing { sign: flip, over, under_in: m, under_out: under });
    }
    Ok(())
}

fn r2_remove(d: &mut Diagram, i: usize, j: usize) -> Result<()> {
    let (ci, cj) = (crossing_at(d, i)?, crossing_at(d, j)?);
    if i == j || ci.over != cj.over || ci.sign == cj.sign || ci.under_out != cj.under_in {
        return Err(mismatch(format!("crossings {i} and {j} do not form a bigon")));
    }
    let m = ci.under_out;
    require_not_over(d, m)?;
    if m == ci.under_in || m == cj.under_out {
        return Err(mismatch("degenerate bigon"));
    }
    let (u, u3) = (ci.under_in, cj.under_out);
    remove_crossings(d, vec![i, j]);
    if u == u3 {
        d.loops.push(u);
        delete_arcs(d, vec![m]);
    } else {
        d.rename_arc(u3, u);
        delete_arcs(d, vec![m, u3]);
    }
    Ok(())
}

fn r3(d: &mut Diagram, b2: ArcId, gamma: usize, variant: R3Variant) -> Result<()> {
    check_arc(d, b2)?;
    require_not_over(d, b2)?;
    let (Some(Slot::CrossingOut(i1)), Some(Slot::CrossingIn(i2))) = (d.tail(b2), d.head(b2)) else {
        return Err(mismatch(format!("arc {b2} does not run between two crossings")));
    };
    if i1 == i2 || gamma == i1 || gamma == i2 {
        return Err(mismatch("degenerate triangle"));
    }
    let (c1, c2, g) = (d.crossings[i1], d.crossings[i2], crossing_at(d, gamma)?);
    let (a, sa, b, sb) = (c1.over, c1.sign, c2.over, c2.sign);
    let (b1, b3) = (c1.under_in, c2.under_out);
    match variant {
        R3Variant::First => {
            if g.over != a {
                return Err(mismatch("gamma is not on the first over-strand"));
            }
            let (q_before, q_after) =
                if g.sign == sa { (g.under_in, g.under_out) } else { (g.under_out, g.under_in) };
            if q_after != b {
                return Err(mismatch("gamma does not feed the second over-strand"));
            }
            d.crossings[i1] = Crossing { sign: sb, over: q_before, under_in: b1, under_out: b2 };
            d.crossings[i2] = Crossing { sign: sa, over: a, under_in: b2, under_out: b3 };
        }
        R3Variant::Second => {
            if g.over != b {
                return Err(mismatch("gamma is not on the second over-strand"));
            }
            let (a_before, a_after) =
                if g.sign == sb { (g.under_in, g.under_out) } else { (g.under_out, g.under_in) };
            if a_before != a {
                return Err(mismatch("gamma does not carry the first over-strand"));
            }
            d.crossings[i1] = Crossing { sign: sb, over: b, under_in: b1, under_out: b2 };
            d.crossings[i2] = Crossing { sign: sa, over: a_after, under_in: b2, under_out: b3 };
        }
    }
    Ok(())
}

fn r4_over_split(d: &mut Diagram, vi: usize, xi: usize) -> Result<()> {
    let v = vertex_at(d, vi)?;
    let x = crossing_at(d, xi)?;
    let near = v.c;
    require_not_over(d, near)?;
    let (s, sigma) = (x.over, x.sign);
    let (alpha, beta) = (v.a, v.b);
    if v.sign.is_pos() {
        if x.under_in != near || x.under_out == near {
            return Err(mismatch("crossing does not sit on the outgoing edge"));
        }
        let far = x.under_out;
        d.crossings.remove(xi);
        let (an, bn) = (d.fresh_arc(), d.fresh_arc());
        d.crossings.push(Crossing { sign: sigma, over: s, under_in: alpha, under_out: an });
        d.crossings.push(Crossing { sign: sigma, over: s, under_in: beta, under_out: bn });
        d.vertices[vi] = Vertex { sign: v.sign, a: an, b: bn, c: far };
    } else {
        if x.under_out != near || x.under_in == near {
            return Err(mismatch("crossing does not sit on the incoming edge"));
        }
        let far = x.under_in;
        d.crossings.remove(xi);
        let (an, bn) = (d.fresh_arc(), d.fresh_arc());
        d.crossings.push(Crossing { sign: sigma, over: s, under_in: an, under_out: alpha });
        d.crossings.push(Crossing { sign: sigma, over: s, under_in: bn, under_out: beta });
        d.vertices[vi] = Vertex { sign: v.sign, a: an, b: bn, c: far };
    }
    delete_arcs(d, vec![near]);
    Ok(())
}

fn r4_over_merge(d: &mut Diagram, vi: usize) -> Result<()> {
    let v = vertex_at(d, vi)?;
    require_not_over(d, v.a)?;
    require_not_over(d, v.b)?;
    let pos = v.sign.is_pos();
    let ends = if pos { (d.tail(v.a), d.tail(v.b)) } else { (d.head(v.a), d.head(v.b)) };
    let (i1, i2) = match (pos, ends) {
        (true, (Some(Slot::CrossingOut(i1)), Some(Slot::CrossingOut(i2)))) => (i1, i2),
        (false, (Some(Slot::CrossingIn(i1)), Some(Slot::CrossingIn(i2)))) => (i1, i2),
        _ => return Err(mismatch("edges a and b do not both pass a crossing")),
    };
    let (x1, x2) = (d.crossings[i1], d.crossings[i2]);
    if i1 == i2 || x1.over != x2.over || x1.sign != x2.sign {
        return Err(mismatch("the two crossings do not share an over-strand and sign"));
    }
    let (s, sigma, c_old) = (x1.over, x1.sign, v.c);
    remove_crossings(d, vec![i1, i2]);
    let near = d.fresh_arc();
    if pos {
        d.vertices[vi] = Vertex { sign: v.sign, a: x1.under_in, b: x2.under_in, c: near };
        d.crossings.push(Crossing { sign: sigma, over: s, under_in: near, under_out: c_old });
    } else {
        d.vertices[vi] = Vertex { sign: v.sign, a: x1.under_out, b: x2.under_out, c: near };
        d.crossings.push(Crossing { sign: sigma, over: s, under_in: c_old, under_out: near });
    }
    delete_arcs(d, vec![v.a, v.b]);
    Ok(())
}

fn r4_under_split(d: &mut Diagram, xi: usize, vi: usize) -> Result<()> {
    let x = crossing_at(d, xi)?;
    let v = vertex_at(d, vi)?;
    if x.over != v.c {
        return Err(mismatch("crossing does not pass under the c edge"));
    }
    let (first, second) = if x.sign.is_pos() { (v.a, v.b) } else { (v.b, v.a) };
    let s1 = d.fresh_arc();
    d.crossings[xi] = Crossing { sign: x.sign, over: first, under_in: x.under_in, under_out: s1 };
    d.crossings.push(Crossing { sign: x.sign, over: second, under_in: s1, under_out: x.under_out });
    Ok(())
}

fn r4_under_merge(d: &mut Diagram, i: usize) -> Result<()> {
    let x1 = crossing_at(d, i)?;
    let s1 = x1.under_out;
    require_not_over(d, s1)?;
    let Some(Slot::CrossingIn(j)) = d.head(s1) else {
        return Err(mismatch("the strand does not pass a second crossing"));
    };
    let x2 = d.crossings[j];
    if i == j || x1.sign != x2.sign || s1 == x1.under_in {
        return Err(mismatch("crossings do not form a vertex pass"));
    }
    let (a, b) = if x1.sign.is_pos() { (x1.over, x2.over) } else { (x2.over, x1.over) };
    let v = d
        .vertices
        .iter()
        .find(|v| v.a == a && v.b == b)
        .copied()
        .ok_or_else(|| mismatch("no vertex joins the two over-strands"))?;
    d.crossings[i] = Crossing { sign: x1.sign, over: v.c, under_in: x1.under_in, under_out: x2.under_out };
    d.crossings.remove(j);
    delete_arcs(d, vec![s1]);
    Ok(())
}

fn r5_twist(d: &mut Diagram, vi: usize, variant: TwistVariant) -> Result<()> {
    let v = vertex_at(d, vi)?;
    let (a, b, c) = (v.a, v.b, v.c);
    let new = d.fresh_arc();
    let (cross, vert) = match (v.sign, variant) {
        (Sign::Pos, TwistVariant::A) => {
            (Crossing { sign: Sign::Neg, over: a, under_in: b, under_out: new }, (new, a))
        }
        (Sign::Pos, TwistVariant::B) => {
            (Crossing { sign: Sign::Pos, over: b, under_in: a, under_out: new }, (b, new))
        }
        (Sign::Neg, TwistVariant::A) => {
            (Crossing { sign: Sign::Pos, over: a, under_in: new, under_out: b }, (new, a))
        }
        (Sign::Neg, TwistVariant::B) => {
            (Crossing { sign: Sign::Neg, over: b, under_in: new, under_out: a }, (b, new))
        }
    };
    d.crossings.push(cross);
    d.vertices[vi] = Vertex { sign: v.sign, a: vert.0, b: vert.1, c };
    Ok(())
}

fn r5_untwist(d: &mut Diagram, vi: usize, xi: usize) -> Result<()> {
    let v = vertex_at(d, vi)?;
    let x = crossing_at(d, xi)?;
    let (p, q, c) = (v.a, v.b, v.c);
    let (restored, dead) = match v.sign {
        Sign::Pos if x.sign == Sign::Neg && x.over == q && x.under_out == p => ((q, x.under_in), p),
        Sign::Pos if x.sign == Sign::Pos && x.over == p && x.under_out == q => ((x.under_in, p), q),
        Sign::Neg if x.sign == Sign::Pos && x.over == q && x.under_in == p => ((q, x.under_out), p),
        Sign::Neg if x.sign == Sign::Neg && x.over == p && x.under_in == q => ((x.under_out, p), q),
        _ => return Err(mismatch("crossing is not a twist at this vertex")),
    };
    require_not_over(d, dead)?;
    d.crossings.remove(xi);
    d.vertices[vi] = Vertex { sign: v.sign, a: restored.0, b: restored.1, c };
    delete_arcs(d, vec![dead]);
    Ok(())
}

fn r6(d: &mut Diagram, i: usize, j: usize, kind: IhKind) -> Result<()> {
    let (v1, v2) = (vertex_at(d, i)?, vertex_at(d, j)?);
    if i == j {
        return Err(mismatch("IH-move needs two vertices"));
    }
    let mk = |sign, a, b, c| Vertex { sign, a, b, c };
    let (internal, n1, n2) = match kind {
        IhKind::AssocLeft if v1.sign == v2.sign && v1.c == v2.a => {
            let e = v1.c;
            (e, mk(v1.sign, v1.b, v2.b, e), mk(v1.sign, v1.a, e, v2.c))
        }
        IhKind::AssocRight if v1.sign == v2.sign && v1.c == v2.b => {
            let e = v1.c;
            (e, mk(v1.sign, v2.a, v1.a, e), mk(v1.sign, e, v1.b, v2.c))
        }
        IhKind::MergeSplitLeft if v1.sign == Sign::Pos && v2.sign == Sign::Neg && v1.c == v2.c => {
            let y = v1.c;
            (y, mk(Sign::Neg, v2.a, y, v1.a), mk(Sign::Pos, y, v1.b, v2.b))
        }
        IhKind::MergeSplitRight if v1.sign == Sign::Pos && v2.sign == Sign::Neg && v1.c == v2.c => {
            let y = v1.c;
            (y, mk(Sign::Neg, y, v2.b, v1.b), mk(Sign::Pos, v1.a, y, v2.a))
        }
        IhKind::SplitMergeLeft if v1.sign == Sign::Neg && v2.sign == Sign::Pos && v1.b == v2.a => {
            let y = v1.b;
            (y, mk(Sign::Pos, v1.c, v2.b, y), mk(Sign::Neg, v1.a, v2.c, y))
        }
        IhKind::SplitMergeRight if v1.sign == Sign::Neg && v2.sign == Sign::Pos && v1.a == v2.b => {
            let y = v1.a;
            (y, mk(Sign::Pos, v2.a, v1.c, y), mk(Sign::Neg, v2.c, v1.b, y))
        }
        _ => return Err(mismatch(format!("vertices {i} and {j} do not match {kind:?}"))),
    };
    require_not_over(d, internal)?;
    // the internal arc must only join the two vertices
    let boundary = [v1.arcs(), v2.arcs()].concat();
    if boundary.iter().filter(|&&x| x == internal).count() != 2 {
        return Err(mismatch("internal arc is also a boundary arc"));
    }
    d.vertices[i] = n1;
    d.vertices[j] = n2;
    Ok(())
}

/// Applies a move, returning the new diagram.
pub fn apply_move(d: &Diagram, m: &MoveSpec) -> Result<Diagram> {
    let mut out = d.clone();
    match *m {
        MoveSpec::R1Add { arc, sign, over_first, at_head } => {
            check_arc(d, arc)?;
            add_kink(&mut out, arc, sign, over_first, at_head);
        }
        MoveSpec::R1Remove { crossing } => r1_remove(&mut out, crossing)?,
        MoveSpec::R2Add { over, under, sign, at_head } => r2_add(&mut out, over, under, sign, at_head)?,
        MoveSpec::R2Remove { first, second } => r2_remove(&mut out, first, second)?,
        MoveSpec::R3 { middle, gamma, variant } => r3(&mut out, middle, gamma, variant)?,
        MoveSpec::R4OverSplit { vertex, crossing } => r4_over_split(&mut out, vertex, crossing)?,
        MoveSpec::R4OverMerge { vertex } => r4_over_merge(&mut out, vertex)?,
        MoveSpec::R4UnderSplit { crossing, vertex } => r4_under_split(&mut out, crossing, vertex)?,
        MoveSpec::R4UnderMerge { first } => r4_under_merge(&mut out, first)?,
        MoveSpec::R5Twist { vertex, variant } => r5_twist(&mut out, vertex, variant)?,
        MoveSpec::R5Untwist { vertex, crossing } => r5_untwist(&mut out, vertex, crossing)?,
        MoveSpec::R6 { first, second, kind } => r6(&mut out, first, second, kind)?,
    }
    let violations = validate(&out);
    if !violations.is_empty() {
        return Err(Error::InvalidDiagram(violations));
    }
    Ok(out)
}

/// Every applicable move of the given kind that needs no free parameters.
/// Kinds that insert new structure (`R1Add`, `R2Add`, `R5Twist`) are
/// enumerated over all their parameters.
pub fn applicable_moves(d: &Diagram, kind: MoveKind) -> Vec<MoveSpec> {
    let nc = d.crossings.len();
    let nv = d.vertices.len();
    let signs = [Sign::Pos, Sign::Neg];
    let bools = [true, false];
    let candidates: Vec<MoveSpec> = match kind {
        MoveKind::R1Add => d
            .arcs()
            .flat_map(|arc| {
                signs.into_iter().flat_map(move |sign| {
                    bools.into_iter().flat_map(move |over_first| {
                        bools.into_iter().map(move |at_head| MoveSpec::R1Add { arc, sign, over_first, at_head })
                    })
                })
            })
            .collect(),
        MoveKind::R1Remove => (0..nc).map(|crossing| MoveSpec::R1Remove { crossing }).collect(),
        MoveKind::R2Add => d
            .arcs()
            .flat_map(|over| {
                d.arcs().filter(move |&u| u != over).flat_map(move |under| {
                    signs.into_iter().flat_map(move |sign| {
                        bools.into_iter().map(move |at_head| MoveSpec::R2Add { over, under, sign, at_head })
                    })
                })
            })
            .collect(),
        MoveKind::R2Remove => (0..nc)
            .flat_map(|first| {
                let out = d.crossings[first].under_out;
                (0..nc)
                    .filter(move |&j| d.crossings[j].under_in == out)
                    .map(move |second| MoveSpec::R2Remove { first, second })
            })
            .collect(),
        MoveKind::R3 => d
            .arcs()
            .filter(|&b2| !d.is_over_arc(b2))
            .flat_map(|middle| {
                (0..nc).flat_map(move |gamma| {
                    [R3Variant::First, R3Variant::Second]
                        .into_iter()
                        .map(move |variant| MoveSpec::R3 { middle, gamma, variant })
                })
            })
            .collect(),
        MoveKind::R4OverSplit => (0..nv)
            .flat_map(|vertex| (0..nc).map(move |crossing| MoveSpec::R4OverSplit { vertex, crossing }))
            .filter(|m| match *m {
                MoveSpec::R4OverSplit { vertex, crossing } => {
                    let (v, x) = (d.vertices[vertex], d.crossings[crossing]);
                    x.under_in == v.c || x.under_out == v.c
                }
                _ => false,
            })
            .collect(),
        MoveKind::R4OverMerge => (0..nv).map(|vertex| MoveSpec::R4OverMerge { vertex }).collect(),
        MoveKind::R4UnderSplit => (0..nc)
            .flat_map(|crossing| {
                (0..nv)
                    .filter(move |&v| d.vertices[v].c == d.crossings[crossing].over)
                    .map(move |vertex| MoveSpec::R4UnderSplit { crossing, vertex })
            })
            .collect(),
        MoveKind::R4UnderMerge => (0..nc).map(|first| MoveSpec::R4UnderMerge { first }).collect(),
        MoveKind::R5Twist => (0..nv)
            .flat_map(|vertex| {
                [TwistVariant::A, TwistVariant::B].into_iter().map(move |variant| MoveSpec::R5Twist { vertex, variant })
            })
            .collect(),
        MoveKind::R5Untwist => (0..nv)
            .flat_map(|vertex| (0..nc).map(move |crossing| MoveSpec::R5Untwist { vertex, crossing }))
            .collect(),
        MoveKind::R6 => (0..nv)
            .flat_map(|first| {
                (0..nv).filter(move |&j| j != first).flat_map(move |second| {
                    IH_KINDS.into_iter().map(move |kind| MoveSpec::R6 { first, second, kind })
                })
            })
            .collect(),
    };
    candidates.into_iter().filter(|m| apply_move(d, m).is_ok()).collect()
}

/// Outcome of a random walk: the moves applied in order and how many
/// sampled moves did not apply.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkReport {
    pub applied: Vec<MoveSpec>,
    pub skipped: usize,
}

fn random_sign(rng: &mut ChaCha8Rng) -> Sign {
    if rng.gen() {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

/// Applies `steps` randomly chosen moves. Each round picks a move kind
/// uniformly; insertion moves get random parameters, the others pick
/// uniformly among their applicable locations. Rounds where nothing applies
/// are counted as skipped. The result depends only on the inputs and seed.
pub fn random_move_walk(d: &Diagram, steps: usize, seed: u64) -> (Diagram, WalkReport) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    let mut report = WalkReport::default();
    let max_rounds = steps.saturating_mul(50).max(steps);
    let mut rounds = 0;
    while report.applied.len() < steps && rounds < max_rounds {
        rounds += 1;
        let kind = *MoveKind::ALL.choose(&mut rng).expect("non-empty");
        let pick = match kind {
            MoveKind::R1Add if cur.arc_count > 0 => Some(MoveSpec::R1Add {
                arc: rng.gen_range(1..=cur.arc_count),
                sign: random_sign(&mut rng),
                over_first: rng.gen(),
                at_head: rng.gen(),
            }),
            MoveKind::R2Add if cur.arc_count > 1 => {
                let over = rng.gen_range(1..=cur.arc_count);
                let mut under = rng.gen_range(1..cur.arc_count);
                if under >= over {
                    under += 1;
                }
                Some(MoveSpec::R2Add { over, under, sign: random_sign(&mut rng), at_head: rng.gen() })
            }
            MoveKind::R5Twist if !cur.vertices.is_empty() => Some(MoveSpec::R5Twist {
                vertex: rng.gen_range(0..cur.vertices.len()),
                variant: if rng.gen() { TwistVariant::A } else { TwistVariant::B },
            }),
            MoveKind::R1Add | MoveKind::R2Add | MoveKind::R5Twist => None,
            _ => applicable_moves(&cur, kind).choose(&mut rng).copied(),
        };
        match pick.map(|m| (m, apply_move(&cur, &m))) {
            Some((m, Ok(next))) => {
                cur = next;
                report.applied.push(m);
            }
            _ => report.skipped += 1,
        }
    }
    (cur, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_closure, is_isomorphic, parse_diagram, trivial_handlebody};

    fn trefoil() -> Diagram {
        parse_diagram("arcs 3\nX + 1 3 2\nX + 2 1 3\nX + 3 2 1\n").unwrap()
    }

    fn theta() -> Diagram {
        parse_diagram("arcs 3\nV - 1 2 3\nV + 1 2 3\n").unwrap()
    }

    #[test]
    fn r1_add_counts() {
        let t = trefoil();
        for arc in 1..=3 {
            for m in applicable_moves(&t, MoveKind::R1Add).into_iter().filter(|m| matches!(m, MoveSpec::R1Add { arc: a, .. } if *a == arc)) {
                let d = apply_move(&t, &m).unwrap();
                assert_eq!((d.n1(), d.arc_count), (4, 4));
            }
        }
    }

    #[test]
    fn r1_round_trip() {
        let t = trefoil();
        for m in applicable_moves(&t, MoveKind::R1Add) {
            let d = apply_move(&t, &m).unwrap();
            let undo = MoveSpec::R1Remove { crossing: d.crossings.len() - 1 };
            assert!(is_isomorphic(&apply_move(&d, &undo).unwrap(), &t), "{m}");
        }
        let o = trivial_handlebody(1);
        let kinked = apply_move(&o, &MoveSpec::R1Add { arc: 1, sign: Sign::Neg, over_first: true, at_head: true }).unwrap();
        assert!(kinked.loops.is_empty());
        assert_eq!(apply_move(&kinked, &MoveSpec::R1Remove { crossing: 0 }).unwrap(), o);
    }

    #[test]
    fn r2_round_trip() {
        let t = trefoil();
        for m in applicable_moves(&t, MoveKind::R2Add) {
            let d = apply_move(&t, &m).unwrap();
            assert_eq!(d.n1(), 5);
            let n = d.crossings.len();
            let undo = MoveSpec::R2Remove { first: n - 2, second: n - 1 };
            assert!(is_isomorphic(&apply_move(&d, &undo).unwrap(), &t), "{m}");
        }
    }

    #[test]
    fn r3_on_braid_relation() {
        let a = braid_closure(3, &[1, 2, 1]).unwrap();
        let b = braid_closure(3, &[2, 1, 2]).unwrap();
        let moves = applicable_moves(&a, MoveKind::R3);
        assert!(!moves.is_empty());
        assert!(moves.iter().any(|m| is_isomorphic(&apply_move(&a, m).unwrap(), &b)));
        // every R3 can be undone by another R3
        for m in moves {
            let after = apply_move(&a, &m).unwrap();
            assert!(applicable_moves(&after, MoveKind::R3)
                .iter()
                .any(|u| is_isomorphic(&apply_move(&after, u).unwrap(), &a)));
        }
    }

    #[test]
    fn twists_and_vertex_passes_round_trip() {
        let th = theta();
        for m in applicable_moves(&th, MoveKind::R5Twist) {
            let d = apply_move(&th, &m).unwrap();
            let undo = applicable_moves(&d, MoveKind::R5Untwist);
            assert!(undo.iter().any(|u| is_isomorphic(&apply_move(&d, u).unwrap(), &th)), "{m}");
        }
        // put a strand over the c edge, then slide it across the vertex
        let d = apply_move(&th, &MoveSpec::R2Add { over: 1, under: 3, sign: Sign::Pos, at_head: false }).unwrap();
        let splits = applicable_moves(&d, MoveKind::R4OverSplit);
        assert!(!splits.is_empty());
        for m in splits {
            let e = apply_move(&d, &m).unwrap();
            let merges = applicable_moves(&e, MoveKind::R4OverMerge);
            assert!(merges.iter().any(|u| is_isomorphic(&apply_move(&e, u).unwrap(), &d)), "{m}");
        }
        let d = apply_move(&th, &MoveSpec::R2Add { over: 3, under: 1, sign: Sign::Neg, at_head: true }).unwrap();
        let splits = applicable_moves(&d, MoveKind::R4UnderSplit);
        assert!(!splits.is_empty());
        for m in splits {
            let e = apply_move(&d, &m).unwrap();
            let merges = applicable_moves(&e, MoveKind::R4UnderMerge);
            assert!(merges.iter().any(|u| is_isomorphic(&apply_move(&e, u).unwrap(), &d)), "{m}");
        }
    }

    #[test]
    fn ih_moves_are_involutive() {
        for d in [trivial_handlebody(3), trivial_handlebody(4), theta()] {
            let moves = applicable_moves(&d, MoveKind::R6);
            assert!(!moves.is_empty());
            for m in moves {
                let e = apply_move(&d, &m).unwrap();
                let back = applicable_moves(&e, MoveKind::R6);
                assert!(back.iter().any(|u| is_isomorphic(&apply_move(&e, u).unwrap(), &d)), "{m}");
            }
        }
    }

    #[test]
    fn walk_is_deterministic() {
        let t = trefoil();
        let (a, ra) = random_move_walk(&t, 30, 7);
        let (b, rb) = random_move_walk(&t, 30, 7);
        assert_eq!(a, b);
        assert_eq!(ra, rb);
        assert_eq!(ra.applied.len(), 30);
        assert!(validate(&a).is_empty());
        let (c, rc) = random_move_walk(&t, 0, 7);
        assert_eq!(c, t);
        assert!(rc.applied.is_empty());
    }

    #[test]
    fn bad_locations_are_rejected() {
        let t = trefoil();
        assert!(matches!(apply_move(&t, &MoveSpec::R1Remove { crossing: 0 }), Err(Error::MovePattern(_))));
        assert!(matches!(apply_move(&t, &MoveSpec::R1Remove { crossing: 9 }), Err(Error::OutOfRange(_))));
        assert!(apply_move(&t, &MoveSpec::R2Add { over: 1, under: 1, sign: Sign::Pos, at_head: true }).is_err());
    }
}
