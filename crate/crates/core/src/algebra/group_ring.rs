//! Matrices over the integral group ring `Z[G]`.
//!
//! Integer coefficients are kept exact and only reduced into a field when a
//! matrix is flattened through a representation.

use std::collections::BTreeMap;
use std::fmt;

use super::field::{Elem, FiniteField};
use super::group::FiniteGroup;
use super::matrix::FieldMatrix;
use super::repr::{Representation, ScalarRepresentation};
use crate::error::{Error, Result};

/// A formal sum `Σ c_g g` with integer coefficients; zero terms are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupRingElement(BTreeMap<usize, i64>);

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(g: usize) -> Self {
        Self::term(1, g)
    }

    pub fn term(c: i64, g: usize) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(g, c);
        }
        GroupRingElement(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, g: usize) -> i64 {
        self.0.get(&g).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.0.iter().map(|(&g, &c)| (g, c))
    }

    pub fn add_term(&mut self, c: i64, g: usize) {
        let e = self.0.entry(g).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&g);
        }
    }

    pub fn plus(mut self, other: &GroupRingElement) -> Self {
        for (g, c) in other.terms() {
            self.add_term(c, g);
        }
        self
    }

    pub fn minus(mut self, other: &GroupRingElement) -> Self {
        for (g, c) in other.terms() {
            self.add_term(-c, g);
        }
        self
    }

    /// Parses `0` or a sum like `1*g0 + -1*g3`.
    pub fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        let mut out = Self::zero();
        if text == "0" {
            return Some(out);
        }
        for term in text.split(" + ") {
            let (c, g) = term.trim().split_once('*')?;
            let c: i64 = c.trim().parse().ok()?;
            let g: usize = g.trim().strip_prefix('g')?.parse().ok()?;
            out.add_term(c, g);
        }
        Some(out)
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms().map(|(g, c)| format!("{c}*g{g}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingMatrix {
    group: FiniteGroup,
    rows: usize,
    cols: usize,
    entries: Vec<GroupRingElement>,
}

impl GroupRingMatrix {
    pub fn zeros(group: &FiniteGroup, rows: usize, cols: usize) -> Self {
        GroupRingMatrix { group: group.clone(), rows, cols, entries: vec![GroupRingElement::zero(); rows * cols] }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GroupRingElement {
        &self.entries[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut GroupRingElement {
        &mut self.entries[r * self.cols + c]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.group, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.get_mut(c, r) = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        let mut out = Self::zeros(&self.group, self.rows, self.cols);
        for (i, &ri) in row_perm.iter().enumerate() {
            for (j, &cj) in col_perm.iter().enumerate() {
                *out.get_mut(i, j) = self.get(ri, cj).clone();
            }
        }
        out
    }

    /// Replaces each entry `Σ c_g g` by the block `Σ c_g η(g)`.
    pub fn flatten(&self, eta: &Representation) -> Result<FieldMatrix> {
        if eta.group() != &self.group {
            return Err(Error::GroupMismatch(format!(
                "matrix over {} flattened through a representation of {}",
                self.group.name(),
                eta.group().name()
            )));
        }
        let f = eta.field();
        let d = eta.dim();
        let mut out = FieldMatrix::zeros(f, d * self.rows, d * self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                for (g, coeff) in self.get(r, c).terms() {
                    let k = f.from_int(coeff);
                    let m = eta.image(g);
                    for i in 0..d {
                        for j in 0..d {
                            let v = f.add(out.get(d * r + i, d * c + j), f.mul(k, m.get(i, j)));
                            out.set(d * r + i, d * c + j, v);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Replaces each entry `Σ c_g g` by the scalar `Σ c_g ζ(g)`.
    pub fn scalar_flatten(&self, zeta: &ScalarRepresentation) -> Result<FieldMatrix> {
        if zeta.group() != &self.group {
            return Err(Error::GroupMismatch(format!(
                "matrix over {} flattened through a representation of {}",
                self.group.name(),
                zeta.group().name()
            )));
        }
        let f = zeta.field();
        let rows: Vec<Vec<Elem>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| scalar_value(f, zeta, self.get(r, c))).collect())
            .collect();
        let mut m = FieldMatrix::from_rows(f, &rows);
        if self.rows == 0 {
            m = FieldMatrix::zeros(f, 0, self.cols);
        }
        Ok(m)
    }

    /// One bracketed row per line, e.g. `[1*g1, 0, 1*g0 + -1*g1]`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            out.push('[');
            out.push_str(&row.join(", "));
            out.push_str("]\n");
        }
        out
    }

    /// Inverse of [`GroupRingMatrix::dump`].
    pub fn parse(group: &FiniteGroup, text: &str) -> Result<Self> {
        let mut rows: Vec<Vec<GroupRingElement>> = Vec::new();
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let inner = line
                .trim()
                .strip_prefix('[')
                .and_then(|l| l.strip_suffix(']'))
                .ok_or_else(|| Error::parse(i + 1, 1, "expected a bracketed row"))?;
            let row = if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|e| {
                        let v = GroupRingElement::parse(e)
                            .ok_or_else(|| Error::parse(i + 1, 1, format!("bad entry `{}`", e.trim())))?;
                        let bad = v.terms().map(|(g, _)| g).find(|&g| g >= group.order());
                        match bad {
                            Some(g) => Err(Error::parse(i + 1, 1, format!("element g{g} not in group"))),
                            None => Ok(v),
                        }
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err(Error::parse(i + 1, 1, "rows have different lengths"));
                }
            }
            rows.push(row);
        }
        let cols = rows.first().map_or(0, Vec::len);
        Ok(GroupRingMatrix {
            group: group.clone(),
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }
}

fn scalar_value(f: &FiniteField, zeta: &ScalarRepresentation, x: &GroupRingElement) -> Elem {
    x.terms().fold(0, |acc, (g, c)| f.add(acc, f.mul(f.from_int(c), zeta.value(g))))
}
