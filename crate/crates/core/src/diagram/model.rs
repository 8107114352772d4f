use std::fmt;

use serde::{Deserialize, Serialize};

/// Arc labels run over `1..=arc_count`.
pub type ArcId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn is_pos(self) -> bool {
        self == Sign::Pos
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A classical crossing. The over-strand does not break its arc, so a
/// single `over` label serves both sides.
///
/// Flows satisfy `ρ(under_out) = ρ(over)^{-s} ρ(under_in) ρ(over)^{s}`,
/// i.e. `ρ(over)⁻¹ ρ(under_in) ρ(over)` at a positive crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Crossing {
    pub sign: Sign,
    pub over: ArcId,
    pub under_in: ArcId,
    pub under_out: ArcId,
}

/// A trivalent vertex with arcs `a`, `b`, `c`. At a positive vertex `a` and
/// `b` end and `c` starts; at a negative vertex `c` ends and `a`, `b` start.
/// In both cases flows satisfy `ρ(a)ρ(b) = ρ(c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub sign: Sign,
    pub a: ArcId,
    pub b: ArcId,
    pub c: ArcId,
}

impl Vertex {
    pub fn arcs(&self) -> [ArcId; 3] {
        [self.a, self.b, self.c]
    }

    /// Whether the slot (0 = a, 1 = b, 2 = c) is where its arc ends.
    pub fn slot_is_head(&self, slot: usize) -> bool {
        (slot == 2) != self.sign.is_pos()
    }
}

/// A position where an arc starts or ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    /// `under_in` of a crossing (an arc end).
    CrossingIn(usize),
    /// `under_out` of a crossing (an arc start).
    CrossingOut(usize),
    /// Slot `0..3` of a vertex.
    Vertex(usize, usize),
    /// A closed loop marker, which is both start and end of its arc.
    Loop(usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Diagram {
    pub arc_count: usize,
    pub crossings: Vec<Crossing>,
    pub vertices: Vec<Vertex>,
    pub loops: Vec<ArcId>,
}

impl Diagram {
    pub fn n1(&self) -> usize {
        self.crossings.len()
    }

    /// Half the number of vertices.
    pub fn n2(&self) -> usize {
        self.vertices.len() / 2
    }

    pub fn arcs(&self) -> impl Iterator<Item = ArcId> {
        1..=self.arc_count
    }

    pub fn slot_arc(&self, s: Slot) -> ArcId {
        match s {
            Slot::CrossingIn(i) => self.crossings[i].under_in,
            Slot::CrossingOut(i) => self.crossings[i].under_out,
            Slot::Vertex(i, k) => self.vertices[i].arcs()[k],
            Slot::Loop(i) => self.loops[i],
        }
    }

    pub fn set_slot(&mut self, s: Slot, x: ArcId) {
        match s {
            Slot::CrossingIn(i) => self.crossings[i].under_in = x,
            Slot::CrossingOut(i) => self.crossings[i].under_out = x,
            Slot::Vertex(i, 0) => self.vertices[i].a = x,
            Slot::Vertex(i, 1) => self.vertices[i].b = x,
            Slot::Vertex(i, _) => self.vertices[i].c = x,
            Slot::Loop(i) => self.loops[i] = x,
        }
    }

    /// Every slot together with whether it is a head (arc end) and whether
    /// it is a tail (arc start).
    pub fn slots(&self) -> Vec<(Slot, bool, bool)> {
        let mut out = Vec::new();
        for i in 0..self.crossings.len() {
            out.push((Slot::CrossingIn(i), true, false));
            out.push((Slot::CrossingOut(i), false, true));
        }
        for (i, v) in self.vertices.iter().enumerate() {
            for k in 0..3 {
                let head = v.slot_is_head(k);
                out.push((Slot::Vertex(i, k), head, !head));
            }
        }
        for i in 0..self.loops.len() {
            out.push((Slot::Loop(i), true, true));
        }
        out
    }

    /// The slot where `x` ends, assuming a valid diagram.
    pub fn head(&self, x: ArcId) -> Option<Slot> {
        self.slots().into_iter().find(|&(s, h, _)| h && self.slot_arc(s) == x).map(|(s, _, _)| s)
    }

    /// The slot where `x` starts, assuming a valid diagram.
    pub fn tail(&self, x: ArcId) -> Option<Slot> {
        self.slots().into_iter().find(|&(s, _, t)| t && self.slot_arc(s) == x).map(|(s, _, _)| s)
    }

    /// Indices of crossings whose over-arc is `x`.
    pub fn over_crossings(&self, x: ArcId) -> Vec<usize> {
        (0..self.crossings.len()).filter(|&i| self.crossings[i].over == x).collect()
    }

    pub fn is_over_arc(&self, x: ArcId) -> bool {
        self.crossings.iter().any(|c| c.over == x)
    }

    /// Replaces every occurrence of `old` (slots and over-arcs) by `new`.
    pub fn rename_arc(&mut self, old: ArcId, new: ArcId) {
        let r = |x: &mut ArcId| {
            if *x == old {
                *x = new;
            }
        };
        for c in &mut self.crossings {
            r(&mut c.over);
            r(&mut c.under_in);
            r(&mut c.under_out);
        }
        for v in &mut self.vertices {
            r(&mut v.a);
            r(&mut v.b);
            r(&mut v.c);
        }
        for l in &mut self.loops {
            r(l);
        }
    }

    pub fn fresh_arc(&mut self) -> ArcId {
        self.arc_count += 1;
        self.arc_count
    }

    /// Drops an arc that no longer occurs, moving the highest label into
    /// its place so labels stay contiguous.
    pub fn delete_arc(&mut self, x: ArcId) {
        let last = self.arc_count;
        if x != last {
            self.rename_arc(last, x);
        }
        self.arc_count -= 1;
    }

    /// Connected components of the underlying graph (over-strands do not
    /// connect anything), as sorted arc lists ordered by smallest arc.
    pub fn components(&self) -> Vec<Vec<ArcId>> {
        let mut parent: Vec<usize> = (0..=self.arc_count).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            if ra != rb {
                p[ra.max(rb)] = ra.min(rb);
            }
        };
        for c in &self.crossings {
            union(&mut parent, c.under_in, c.under_out);
        }
        for v in &self.vertices {
            union(&mut parent, v.a, v.b);
            union(&mut parent, v.a, v.c);
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<ArcId>> = Default::default();
        for x in self.arcs() {
            let r = find(&mut parent, x);
            groups.entry(r).or_default().push(x);
        }
        groups.into_values().collect()
    }

    /// Total genus: one per component plus half the number of vertices,
    /// which is the first Betti number of the underlying trivalent graph.
    pub fn genus(&self) -> usize {
        self.components().len() + self.vertices.len() / 2
    }

    /// Genus of each component, in the order of [`Diagram::components`].
    pub fn component_genera(&self) -> Vec<usize> {
        let comps = self.components();
        comps
            .iter()
            .map(|comp| {
                let vs = self.vertices.iter().filter(|v| comp.contains(&v.a)).count();
                1 + vs / 2
            })
            .collect()
    }

    /// A copy in which every closed loop is replaced by a one-crossing kink
    /// and every other component without a crossing on it gets a kink on
    /// its lowest arc.
    pub fn with_kinks(&self) -> Diagram {
        let mut d = self.clone();
        for x in std::mem::take(&mut d.loops) {
            d.crossings.push(Crossing { sign: Sign::Pos, over: x, under_in: x, under_out: x });
        }
        for comp in d.components() {
            let touched = d.crossings.iter().any(|c| comp.contains(&c.under_in) || comp.contains(&c.over));
            if !touched {
                super::moves::add_kink(&mut d, comp[0], Sign::Pos, true, true);
            }
        }
        d
    }
}
