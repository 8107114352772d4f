//! G-families of quandles.

use std::fmt;

use super::table::{quandle_type, Quandle};
use crate::algebra::{Elem, FieldMatrix, FiniteField, FiniteGroup, Representation, ScalarRepresentation};
use crate::error::{Error, Result};

/// A G-family stored as one operation table per group element.
#[derive(Clone, PartialEq, Eq)]
pub struct TableFamily {
    name: String,
    group: FiniteGroup,
    size: usize,
    /// `ops[(g * size + x) * size + y] = x *^g y`.
    ops: Vec<usize>,
}

/// The family `x *^g y = x η(g) + y (I - η(g))` on row vectors in `F^d`.
///
/// An element `(c_0, ..., c_{d-1})` has index `Σ c_i |F|^i`.
#[derive(Clone, PartialEq, Eq)]
pub struct AlexanderFamily {
    name: String,
    eta: Representation,
    /// Present when the family came from a scalar action on an extension
    /// field; `eta` is then its matrix form over the prime field.
    zeta: Option<ScalarRepresentation>,
}

#[derive(Clone, PartialEq, Eq)]
pub enum GFamily {
    Table(TableFamily),
    Alexander(AlexanderFamily),
}

impl fmt::Debug for GFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GFamily({}, |X| = {}, G = {})", self.name(), self.size(), self.group().name())
    }
}

impl TableFamily {
    /// Builds a family from explicit tables and checks the four family
    /// axioms exhaustively.
    pub fn new(name: impl Into<String>, group: &FiniteGroup, size: usize, ops: Vec<usize>) -> Result<Self> {
        let n = size;
        if n == 0 || ops.len() != group.order() * n * n || ops.iter().any(|&z| z >= n) {
            return Err(Error::Family("operation tables have the wrong shape".into()));
        }
        let fam = TableFamily { name: name.into(), group: group.clone(), size, ops };
        fam.check_axioms()?;
        Ok(fam)
    }

    fn check_axioms(&self) -> Result<()> {
        let g = &self.group;
        let n = self.size;
        let e = g.identity();
        for x in 0..n {
            for a in 0..g.order() {
                if self.op(x, a, x) != x {
                    return Err(Error::Family(format!("x *^g x = x fails at x={x}, g={a}")));
                }
            }
            for y in 0..n {
                if self.op(x, e, y) != x {
                    return Err(Error::Family(format!("x *^e y = x fails at ({x}, {y})")));
                }
                for a in 0..g.order() {
                    let xay = self.op(x, a, y);
                    for b in 0..g.order() {
                        if self.op(x, g.mul(a, b), y) != self.op(xay, b, y) {
                            return Err(Error::Family(format!(
                                "x *^(gh) y = (x *^g y) *^h y fails at x={x}, y={y}, g={a}, h={b}"
                            )));
                        }
                    }
                }
            }
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let conj = g.conj(a, b, true);
                for x in 0..n {
                    for y in 0..n {
                        let xay = self.op(x, a, y);
                        for z in 0..n {
                            let lhs = self.op(xay, b, z);
                            let rhs = self.op(self.op(x, b, z), conj, self.op(y, b, z));
                            if lhs != rhs {
                                return Err(Error::Family(format!(
                                    "distributivity fails at x={x}, y={y}, z={z}, g={a}, h={b}"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn op(&self, x: usize, g: usize, y: usize) -> usize {
        self.ops[(g * self.size + x) * self.size + y]
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

impl AlexanderFamily {
    pub fn field(&self) -> &FiniteField {
        self.eta.field()
    }

    pub fn dim(&self) -> usize {
        self.eta.dim()
    }

    pub fn eta(&self) -> &Representation {
        &self.eta
    }

    pub fn zeta(&self) -> Option<&ScalarRepresentation> {
        self.zeta.as_ref()
    }

    pub fn vector(&self, x: usize) -> Vec<Elem> {
        let q = self.field().order() as usize;
        let mut x = x;
        (0..self.dim())
            .map(|_| {
                let c = (x % q) as Elem;
                x /= q;
                c
            })
            .collect()
    }

    pub fn index(&self, v: &[Elem]) -> usize {
        let q = self.field().order() as usize;
        v.iter().rev().fold(0, |acc, &c| acc * q + c as usize)
    }

    pub fn op(&self, x: usize, g: usize, y: usize) -> usize {
        let f = self.field();
        let m = self.eta.image(g);
        let xv = self.vector(x);
        let yv = self.vector(y);
        let xm = m.left_apply(&xv);
        let ym = m.left_apply(&yv);
        let out: Vec<Elem> = (0..self.dim()).map(|i| f.add(xm[i], f.sub(yv[i], ym[i]))).collect();
        self.index(&out)
    }
}

impl GFamily {
    pub fn name(&self) -> &str {
        match self {
            GFamily::Table(t) => &t.name,
            GFamily::Alexander(a) => &a.name,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        match &mut self {
            GFamily::Table(t) => t.name = name.into(),
            GFamily::Alexander(a) => a.name = name.into(),
        }
        self
    }

    pub fn group(&self) -> &FiniteGroup {
        match self {
            GFamily::Table(t) => &t.group,
            GFamily::Alexander(a) => a.eta.group(),
        }
    }

    /// Number of elements of `X`.
    pub fn size(&self) -> usize {
        match self {
            GFamily::Table(t) => t.size,
            GFamily::Alexander(a) => (a.field().order() as usize).pow(a.dim() as u32),
        }
    }

    pub fn as_alexander(&self) -> Option<&AlexanderFamily> {
        match self {
            GFamily::Alexander(a) => Some(a),
            GFamily::Table(_) => None,
        }
    }

    /// A table-backed copy of this family, with the same operations.
    pub fn to_table(&self) -> TableFamily {
        match self {
            GFamily::Table(t) => t.clone(),
            GFamily::Alexander(a) => {
                let n = self.size();
                let g = a.eta.group().order();
                let mut ops = Vec::with_capacity(g * n * n);
                for h in 0..g {
                    for x in 0..n {
                        for y in 0..n {
                            ops.push(a.op(x, h, y));
                        }
                    }
                }
                TableFamily { name: a.name.clone(), group: a.eta.group().clone(), size: n, ops }
            }
        }
    }
}

/// `x *^g y` with range checks.
pub fn family_op(fam: &GFamily, x: usize, g: usize, y: usize) -> Result<usize> {
    let n = fam.size();
    if x >= n || y >= n {
        return Err(Error::OutOfRange(format!("element index outside 0..{n}")));
    }
    if g >= fam.group().order() {
        return Err(Error::OutOfRange(format!("group index outside 0..{}", fam.group().order())));
    }
    Ok(match fam {
        GFamily::Table(t) => t.op(x, g, y),
        GFamily::Alexander(a) => a.op(x, g, y),
    })
}

/// The `Z_k`-family `x *^i y = S_y^i(x)` with `k` the type of `q`.
pub fn zk_family_from_quandle(q: &Quandle) -> GFamily {
    zk_family_with_order(q, quandle_type(q)).expect("type divides itself")
}

/// As [`zk_family_from_quandle`] but over `Z_k` for any multiple `k` of the
/// type.
pub fn zk_family_with_order(q: &Quandle, k: usize) -> Result<GFamily> {
    let ty = quandle_type(q);
    if k == 0 || !k.is_multiple_of(ty) {
        return Err(Error::Family(format!("Z_{k} does not act: type of {} is {ty}", q.name())));
    }
    let group = FiniteGroup::cyclic(k)?;
    let n = q.size();
    let mut ops = Vec::with_capacity(k * n * n);
    for i in 0..k {
        for x in 0..n {
            for y in 0..n {
                ops.push(q.op_power(x, y, i));
            }
        }
    }
    Ok(GFamily::Table(TableFamily::new(format!("zk({})", q.name()), &group, n, ops)?))
}

/// The Alexander family on `F^d` induced by a representation.
pub fn alexander_family(eta: &Representation) -> GFamily {
    let name = format!("alexander({},d={},{})", eta.field(), eta.dim(), eta.group().name());
    GFamily::Alexander(AlexanderFamily { name, eta: eta.clone(), zeta: None })
}

/// The Alexander family of a scalar action on an extension field `E`,
/// realised as `E ≅ GF(p)^k`.
pub fn alexander_family_scalar(zeta: &ScalarRepresentation) -> GFamily {
    let name = format!("alexander({},{})", zeta.field(), zeta.group().name());
    GFamily::Alexander(AlexanderFamily { name, eta: zeta.to_matrix_rep(), zeta: Some(zeta.clone()) })
}

/// The family `X = F[t^{±1}]/(m(t))` over the cyclic group generated by
/// the action of `t`; here `F` is the field `GF(p)[t]/(m)` and `t` the given
/// nonzero element.
pub fn cyclic_alexander_family(field: &FiniteField, t: Elem) -> Result<GFamily> {
    let k = field
        .mult_order(t)
        .ok_or_else(|| Error::Family("t must be nonzero".into()))? as usize;
    let group = FiniteGroup::cyclic(k)?;
    let zeta = ScalarRepresentation::cyclic(&group, field, t)?;
    let name = if field.degree() == 1 {
        format!("alexander({field},{})", field_int_repr(field, t))
    } else {
        format!("alexander({field},t)")
    };
    Ok(alexander_family_scalar(&zeta).with_name(name))
}

fn field_int_repr(field: &FiniteField, t: Elem) -> String {
    let p = field.characteristic();
    if t > p / 2 {
        format!("-{}", p - t)
    } else {
        t.to_string()
    }
}

/// Companion matrix of a monic polynomial `m` (low-to-high), acting on row
/// vectors as multiplication by `t` in `F[t]/(m)`.
pub fn companion_matrix(field: &FiniteField, m: &[Elem]) -> FieldMatrix {
    let d = m.len() - 1;
    let mut c = FieldMatrix::zeros(field, d, d);
    for i in 0..d - 1 {
        c.set(i, i + 1, 1);
    }
    for j in 0..d {
        c.set(d - 1, j, field.neg(m[j]));
    }
    c
}
