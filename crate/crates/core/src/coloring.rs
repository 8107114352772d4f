//! Colorings of a diagram with a flow by a G-family: explicit enumeration
//! for any family, and kernel dimensions of the coloring matrix for
//! Alexander families.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::algebra::{FiniteField, FiniteGroup, GroupRingMatrix};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::flows::{enumerate_flows, GFlow};
use crate::quandle::{AlexanderFamily, GFamily};
use crate::search::{solve, Rules, Step, UNSET};

/// Default cap on branch candidates tried by the brute-force searches.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// How coloring counts are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Brute,
    Linear,
    /// Linear algebra for Alexander families, enumeration otherwise.
    Auto,
}

#[derive(Clone, Debug)]
pub enum ColoringSpace {
    /// Every coloring, as element indices per arc (arc `i` at position `i - 1`).
    Explicit { size: usize, colorings: Vec<Vec<usize>> },
    /// The coloring matrix and the dimension over `field` of its solution
    /// space; `d` is the dimension of `X` over `field`.
    Linear { matrix: GroupRingMatrix, field: FiniteField, d: usize, dimension: usize },
}

impl ColoringSpace {
    pub fn count(&self) -> Result<u128> {
        match self {
            ColoringSpace::Explicit { colorings, .. } => Ok(colorings.len() as u128),
            ColoringSpace::Linear { field, dimension, .. } => power(field.order() as u128, *dimension),
        }
    }
}

pub(crate) fn power(base: u128, exp: usize) -> Result<u128> {
    u32::try_from(exp)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .ok_or_else(|| Error::OutOfRange(format!("{base}^{exp} does not fit in 128 bits")))
}

fn check_flow(d: &Diagram, flow: &GFlow, group: &FiniteGroup) -> Result<()> {
    if flow.values().len() != d.arc_count || !flow.is_valid(d, group) {
        return Err(Error::OutOfRange("assignment is not a flow of this diagram".into()));
    }
    Ok(())
}

struct OpEval<'a> {
    fam: &'a GFamily,
    size: usize,
    tables: HashMap<usize, Vec<usize>>,
}

impl<'a> OpEval<'a> {
    const TABLE_LIMIT: usize = 1024;

    fn new(fam: &'a GFamily, needed: impl IntoIterator<Item = usize>) -> Self {
        let size = fam.size();
        let mut tables = HashMap::new();
        if let GFamily::Alexander(a) = fam {
            if size <= Self::TABLE_LIMIT {
                for g in needed {
                    tables.entry(g).or_insert_with(|| {
                        (0..size * size).map(|k| a.op(k / size, g, k % size)).collect::<Vec<_>>()
                    });
                }
            }
        }
        OpEval { fam, size, tables }
    }

    fn op(&self, x: usize, g: usize, y: usize) -> usize {
        match self.fam {
            GFamily::Table(t) => t.op(x, g, y),
            GFamily::Alexander(a) => match self.tables.get(&g) {
                Some(t) => t[x * self.size + y],
                None => a.op(x, g, y),
            },
        }
    }
}

struct ColoringRules<'a> {
    d: &'a Diagram,
    ops: OpEval<'a>,
    /// Per crossing: the element acting when reading along the under-strand,
    /// and its inverse.
    acting: Vec<(usize, usize)>,
}

impl Rules for ColoringRules<'_> {
    fn domain(&self) -> usize {
        self.ops.size
    }

    fn constraint_count(&self) -> usize {
        self.d.crossings.len() + self.d.vertices.len()
    }

    fn vars(&self, ci: usize) -> [usize; 3] {
        let n1 = self.d.crossings.len();
        if ci < n1 {
            let c = self.d.crossings[ci];
            [c.over - 1, c.under_in - 1, c.under_out - 1]
        } else {
            self.d.vertices[ci - n1].arcs().map(|x| x - 1)
        }
    }

    fn step(&self, ci: usize, vals: &[usize]) -> Step {
        let [p, q, r] = self.vars(ci);
        if ci < self.d.crossings.len() {
            let (v, u, w) = (vals[p], vals[q], vals[r]);
            if v == UNSET {
                return Step::Nothing;
            }
            let (g, ginv) = self.acting[ci];
            if u != UNSET {
                let out = self.ops.op(u, g, v);
                if w == UNSET {
                    Step::Force(r, out)
                } else if w == out {
                    Step::Nothing
                } else {
                    Step::Conflict
                }
            } else if w != UNSET {
                Step::Force(q, self.ops.op(w, ginv, v))
            } else {
                Step::Nothing
            }
        } else {
            let vs = [vals[p], vals[q], vals[r]];
            let Some(&k) = vs.iter().find(|&&x| x != UNSET) else {
                return Step::Nothing;
            };
            if vs.iter().any(|&x| x != UNSET && x != k) {
                return Step::Conflict;
            }
            match vs.iter().position(|&x| x == UNSET) {
                Some(i) => Step::Force([p, q, r][i], k),
                None => Step::Nothing,
            }
        }
    }
}

/// Whether `coloring` is a coloring of `(d, flow)` by `fam`.
pub fn is_coloring(d: &Diagram, flow: &GFlow, fam: &GFamily, coloring: &[usize]) -> bool {
    let group = fam.group();
    if coloring.len() != d.arc_count || coloring.iter().any(|&x| x >= fam.size()) {
        return false;
    }
    let col = |x: usize| coloring[x - 1];
    let crossings_ok = d.crossings.iter().all(|c| {
        let g = group.pow(flow.value(c.over), if c.sign.is_pos() { 1 } else { -1 });
        crate::quandle::family_op(fam, col(c.under_in), g, col(c.over)).ok() == Some(col(c.under_out))
    });
    crossings_ok && d.vertices.iter().all(|v| col(v.a) == col(v.c) && col(v.b) == col(v.c))
}

/// Enumerates all colorings of `(d, flow)` by `fam`.
pub fn count_colorings_bruteforce(d: &Diagram, flow: &GFlow, fam: &GFamily, budget: u64) -> Result<ColoringSpace> {
    let group = fam.group();
    check_flow(d, flow, group)?;
    let acting: Vec<(usize, usize)> = d
        .crossings
        .iter()
        .map(|c| {
            let g = group.pow(flow.value(c.over), if c.sign.is_pos() { 1 } else { -1 });
            (g, group.inv(g))
        })
        .collect();
    let ops = OpEval::new(fam, acting.iter().flat_map(|&(g, h)| [g, h]));
    let rules = ColoringRules { d, ops, acting };
    let colorings = solve(&rules, d.arc_count, &[], budget)?;
    Ok(ColoringSpace::Explicit { size: fam.size(), colorings })
}

/// The coloring matrix over `Z[G]`: one row per crossing, then a row
/// `α - γ` for every vertex, then a row `β - γ` for every vertex. Column `j`
/// belongs to arc `j + 1`. A coloring, read as a row of module elements
/// `z`, satisfies `z Aᵀ = 0`.
pub fn coloring_matrix(d: &Diagram, flow: &GFlow, group: &FiniteGroup) -> Result<GroupRingMatrix> {
    check_flow(d, flow, group)?;
    let n1 = d.crossings.len();
    let nv = d.vertices.len();
    let e = group.identity();
    let mut a = GroupRingMatrix::zeros(group, n1 + 2 * nv, d.arc_count);
    for (i, c) in d.crossings.iter().enumerate() {
        let (u, w) = if c.sign.is_pos() { (c.under_in, c.under_out) } else { (c.under_out, c.under_in) };
        let rv = flow.value(c.over);
        a.get_mut(i, u - 1).add_term(1, rv);
        let cell = a.get_mut(i, c.over - 1);
        cell.add_term(1, e);
        cell.add_term(-1, rv);
        a.get_mut(i, w - 1).add_term(-1, e);
    }
    for (k, v) in d.vertices.iter().enumerate() {
        for (row, x) in [(n1 + k, v.a), (n1 + nv + k, v.b)] {
            a.get_mut(row, x - 1).add_term(1, e);
            a.get_mut(row, v.c - 1).add_term(-1, e);
        }
    }
    Ok(a)
}

/// Kinks crossing-free components and extends the flow to the new arcs.
fn kinked(d: &Diagram, flow: &GFlow, group: &FiniteGroup) -> (Diagram, GFlow) {
    let dk = d.with_kinks();
    let mut values = flow.values().to_vec();
    for y in d.arc_count + 1..=dk.arc_count {
        let c = dk.crossings.iter().find(|c| c.under_out == y).expect("kink crossing");
        values.push(group.conj(values[c.under_in - 1], values[c.over - 1], c.sign.is_pos()));
    }
    (dk, GFlow::new(values))
}

fn check_family_group(fam_group: &FiniteGroup, group: &FiniteGroup) -> Result<()> {
    if fam_group != group {
        return Err(Error::GroupMismatch(format!(
            "family is over {} but the flow is over {}",
            fam_group.name(),
            group.name()
        )));
    }
    Ok(())
}

/// The flat matrix whose left kernel is the coloring space, over the base
/// field of `fam`. Components without crossings are kinked first.
fn flat_system(d: &Diagram, flow: &GFlow, fam: &AlexanderFamily) -> Result<(Diagram, crate::algebra::FieldMatrix)> {
    let group = fam.eta().group();
    check_flow(d, flow, group)?;
    let (dk, fk) = kinked(d, flow, group);
    let a = coloring_matrix(&dk, &fk, group)?;
    Ok((dk, a.transpose().flatten(fam.eta())?))
}

/// `dim_F` of the coloring space: `d n - rank η̃(Aᵀ)`.
pub fn coloring_dimension(d: &Diagram, flow: &GFlow, fam: &AlexanderFamily) -> Result<usize> {
    let (dk, m) = flat_system(d, flow, fam)?;
    Ok(fam.dim() * dk.arc_count - m.rank())
}

/// Dimension over the extension field for families given by a scalar
/// action; `None` for matrix families.
pub fn coloring_dimension_scalar(d: &Diagram, flow: &GFlow, fam: &AlexanderFamily) -> Result<Option<usize>> {
    let Some(zeta) = fam.zeta() else {
        return Ok(None);
    };
    check_flow(d, flow, zeta.group())?;
    let (dk, fk) = kinked(d, flow, zeta.group());
    let a = coloring_matrix(&dk, &fk, zeta.group())?;
    Ok(Some(dk.arc_count - a.scalar_flatten(zeta)?.rank()))
}

/// The coloring space of an Alexander family as a matrix and a dimension.
pub fn linear_colorings(d: &Diagram, flow: &GFlow, fam: &AlexanderFamily) -> Result<ColoringSpace> {
    let group = fam.eta().group();
    check_flow(d, flow, group)?;
    let (dk, fk) = kinked(d, flow, group);
    let matrix = coloring_matrix(&dk, &fk, group)?;
    let dimension = fam.dim() * dk.arc_count - matrix.transpose().flatten(fam.eta())?.rank();
    Ok(ColoringSpace::Linear { matrix, field: fam.field().clone(), d: fam.dim(), dimension })
}

/// A non-constant coloring from the kernel, if the space is larger than
/// the constant colorings.
pub fn nonconstant_linear_coloring(d: &Diagram, flow: &GFlow, fam: &AlexanderFamily) -> Result<Option<Vec<usize>>> {
    let (_, m) = flat_system(d, flow, fam)?;
    let k = fam.dim();
    for v in m.transpose().kernel_basis() {
        let blocks: Vec<&[u32]> = v.chunks(k).take(d.arc_count).collect();
        let full: Vec<&[u32]> = v.chunks(k).collect();
        if full.iter().any(|b| *b != full[0]) {
            // kink arcs repeat a neighbour's color, so the original arcs
            // already disagree somewhere
            return Ok(Some(blocks.iter().map(|b| fam.index(b)).collect()));
        }
    }
    Ok(None)
}

/// Number of colorings of `(d, flow)` by `fam`.
pub fn coloring_count(d: &Diagram, flow: &GFlow, fam: &GFamily, method: Method, budget: u64) -> Result<u128> {
    match (method, fam) {
        (Method::Brute, _) | (Method::Auto, GFamily::Table(_)) => count_colorings_bruteforce(d, flow, fam, budget)?.count(),
        (Method::Linear | Method::Auto, GFamily::Alexander(a)) => {
            power(a.field().order() as u128, coloring_dimension(d, flow, a)?)
        }
        (Method::Linear, GFamily::Table(_)) => {
            Err(Error::Family(format!("{} is not an Alexander family; linear counts need one", fam.name())))
        }
    }
}

/// Sorted coloring counts over all flows of `d` into `group`.
pub fn invariant_multiset(d: &Diagram, group: &FiniteGroup, fam: &GFamily, method: Method, budget: u64) -> Result<Vec<u128>> {
    check_family_group(fam.group(), group)?;
    let flows = enumerate_flows(d, group, budget)?;
    let mut counts = flows
        .par_iter()
        .map(|f| coloring_count(d, f, fam, method, budget))
        .collect::<Result<Vec<_>>>()?;
    counts.sort_unstable();
    Ok(counts)
}

/// Returns a non-constant coloring, or `None` if every coloring is constant.
pub(crate) fn nontrivial_witness(d: &Diagram, flow: &GFlow, fam: &GFamily, budget: u64) -> Result<Option<Vec<usize>>> {
    match fam {
        GFamily::Alexander(a) => nonconstant_linear_coloring(d, flow, a),
        GFamily::Table(_) => match count_colorings_bruteforce(d, flow, fam, budget)? {
            ColoringSpace::Explicit { colorings, .. } => {
                Ok(colorings.into_iter().find(|c| c.iter().any(|&x| x != c[0])))
            }
            ColoringSpace::Linear { .. } => unreachable!("brute force is explicit"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupRingElement;
    use crate::diagram::{parse_diagram, trivial_handlebody};
    use crate::quandle::{cyclic_alexander_family, zk_family_from_quandle, Quandle};

    /// Sends every group element to 1.
    fn augmentation(e: &GroupRingElement) -> i64 {
        e.terms().map(|(_, c)| c).sum()
    }

    fn trefoil() -> Diagram {
        parse_diagram("arcs 3\nX + 1 3 2\nX + 2 1 3\nX + 3 2 1\n").unwrap()
    }

    fn r3_table() -> GFamily {
        zk_family_from_quandle(&Quandle::dihedral(3).unwrap())
    }

    fn r3_alex() -> GFamily {
        let f = FiniteField::prime(3).unwrap();
        cyclic_alexander_family(&f, f.from_int(-1)).unwrap()
    }

    #[test]
    fn trefoil_fox_colorings() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let t = trefoil();
        let zero = GFlow::new(vec![0; 3]);
        let one = GFlow::new(vec![1; 3]);
        for fam in [r3_table(), r3_alex()] {
            assert_eq!(count_colorings_bruteforce(&t, &zero, &fam, DEFAULT_BUDGET).unwrap().count().unwrap(), 3);
            let sp = count_colorings_bruteforce(&t, &one, &fam, DEFAULT_BUDGET).unwrap();
            assert_eq!(sp.count().unwrap(), 9);
            if let ColoringSpace::Explicit { colorings, .. } = sp {
                assert!(colorings.iter().all(|c| is_coloring(&t, &one, &fam, c)));
            }
            assert_eq!(invariant_multiset(&t, &z2, &fam, Method::Brute, DEFAULT_BUDGET).unwrap(), vec![3, 9]);
        }
        let GFamily::Alexander(a) = r3_alex() else { unreachable!() };
        assert_eq!(coloring_dimension(&t, &one, &a).unwrap(), 2);
        assert_eq!(coloring_dimension(&t, &zero, &a).unwrap(), 1);
        let w = nonconstant_linear_coloring(&t, &one, &a).unwrap().unwrap();
        assert!(is_coloring(&t, &one, &r3_alex(), &w));
        assert!(nonconstant_linear_coloring(&t, &zero, &a).unwrap().is_none());
    }

    #[test]
    fn kinks_do_not_change_dimensions() {
        let GFamily::Alexander(a) = r3_alex() else { unreachable!() };
        for g in 1..=3 {
            let o = trivial_handlebody(g);
            let z2 = FiniteGroup::cyclic(2).unwrap();
            for f in enumerate_flows(&o, &z2, DEFAULT_BUDGET).unwrap() {
                assert_eq!(coloring_dimension(&o, &f, &a).unwrap(), 1);
                assert_eq!(count_colorings_bruteforce(&o, &f, &r3_alex(), DEFAULT_BUDGET).unwrap().count().unwrap(), 3);
            }
        }
    }

    #[test]
    fn matrix_rows_follow_the_relations() {
        let t = trefoil();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let a = coloring_matrix(&t, &GFlow::new(vec![1; 3]), &z2).unwrap();
        assert_eq!((a.rows(), a.cols()), (3, 3));
        // X + 1 3 2: u = 3, v = 1, w = 2
        assert_eq!(a.get(0, 2), &GroupRingElement::basis(1));
        assert_eq!(a.get(0, 0), &GroupRingElement::basis(0).minus(&GroupRingElement::basis(1)));
        assert_eq!(a.get(0, 1), &GroupRingElement::term(-1, 0));
        // every row vanishes under augmentation
        for r in 0..3 {
            assert_eq!((0..3).map(|c| augmentation(a.get(r, c))).sum::<i64>(), 0);
        }
    }

    #[test]
    fn matrix_family_dimensions_match_enumeration() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let f = FiniteField::prime(3).unwrap();
        let eta = crate::algebra::group_ring::tests::standard_rep(&s3, &f);
        let fam = crate::quandle::alexander_family(&eta);
        let GFamily::Alexander(alex) = &fam else { unreachable!() };
        let t = trefoil();
        for fl in enumerate_flows(&t, &s3, DEFAULT_BUDGET).unwrap() {
            let brute = count_colorings_bruteforce(&t, &fl, &fam, DEFAULT_BUDGET).unwrap().count().unwrap();
            let dim = coloring_dimension(&t, &fl, alex).unwrap();
            assert_eq!(brute, 3u128.pow(dim as u32));
        }
    }
}
