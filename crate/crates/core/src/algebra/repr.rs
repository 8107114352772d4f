//! Linear representations `G -> GL(d, F)` and scalar representations
//! `G -> F^×`.
//!
//! Matrices act on row vectors from the right, so a homomorphism must
//! satisfy `η(gh) = η(g)η(h)`.

use super::field::{Elem, FiniteField};
use super::group::FiniteGroup;
use super::matrix::FieldMatrix;
use crate::error::{Error, Result};

/// A verified homomorphism `η: G -> GL(d, F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    group: FiniteGroup,
    field: FiniteField,
    dim: usize,
    images: Vec<FieldMatrix>,
}

impl Representation {
    /// Checks `η(e) = I` and `η(gh) = η(g)η(h)` for every pair.
    pub fn new(group: &FiniteGroup, field: &FiniteField, dim: usize, images: Vec<FieldMatrix>) -> Result<Self> {
        if images.len() != group.order() {
            return Err(Error::Representation(format!(
                "{} images given for a group of order {}",
                images.len(),
                group.order()
            )));
        }
        for m in &images {
            if m.rows() != dim || m.cols() != dim || m.field() != field {
                return Err(Error::Representation(format!("image is not a {dim}x{dim} matrix over {field}")));
            }
        }
        if images[group.identity()] != FieldMatrix::identity(field, dim) {
            return Err(Error::Representation("identity is not sent to the identity matrix".into()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                if images[group.mul(g, h)] != images[g].mul(&images[h]) {
                    return Err(Error::Representation(format!("not a homomorphism at ({g}, {h})")));
                }
            }
        }
        Ok(Representation { group: group.clone(), field: field.clone(), dim, images })
    }

    /// Extends images of generators to the whole group, then verifies.
    pub fn from_generators(
        group: &FiniteGroup,
        field: &FiniteField,
        dim: usize,
        generators: &[(usize, FieldMatrix)],
    ) -> Result<Self> {
        let mut images: Vec<Option<FieldMatrix>> = vec![None; group.order()];
        images[group.identity()] = Some(FieldMatrix::identity(field, dim));
        let mut frontier = vec![group.identity()];
        while let Some(x) = frontier.pop() {
            for (g, m) in generators {
                let y = group.mul(x, *g);
                let img = images[x].as_ref().expect("visited").mul(m);
                match &images[y] {
                    Some(existing) if *existing != img => {
                        return Err(Error::Representation(format!(
                            "generator images are inconsistent at element {y}"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        images[y] = Some(img);
                        frontier.push(y);
                    }
                }
            }
        }
        let images = images
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Representation("generators do not generate the group".into()))?;
        Self::new(group, field, dim, images)
    }

    /// The representation sending every element to the identity.
    pub fn trivial(group: &FiniteGroup, field: &FiniteField, dim: usize) -> Self {
        let id = FieldMatrix::identity(field, dim);
        Representation { group: group.clone(), field: field.clone(), dim, images: vec![id; group.order()] }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn image(&self, g: usize) -> &FieldMatrix {
        &self.images[g]
    }
}

/// A verified homomorphism `ζ: G -> F^×` into the units of a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarRepresentation {
    group: FiniteGroup,
    field: FiniteField,
    values: Vec<Elem>,
}

impl ScalarRepresentation {
    pub fn new(group: &FiniteGroup, field: &FiniteField, values: Vec<Elem>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::Representation(format!(
                "{} values given for a group of order {}",
                values.len(),
                group.order()
            )));
        }
        if values.iter().any(|&v| v == 0 || v >= field.order()) {
            return Err(Error::Representation("scalar images must be nonzero field elements".into()));
        }
        if values[group.identity()] != 1 {
            return Err(Error::Representation("identity is not sent to 1".into()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                if values[group.mul(g, h)] != field.mul(values[g], values[h]) {
                    return Err(Error::Representation(format!("not a homomorphism at ({g}, {h})")));
                }
            }
        }
        Ok(ScalarRepresentation { group: group.clone(), field: field.clone(), values })
    }

    /// The homomorphism from a cyclic group `Z_k` sending the generator 1
    /// to `t`. Fails unless `t^k = 1`.
    pub fn cyclic(group: &FiniteGroup, field: &FiniteField, t: Elem) -> Result<Self> {
        let k = group.order();
        let g1 = if k > 1 { 1 } else { 0 };
        if k > 1 && group.element_order(g1) != k {
            return Err(Error::Representation(format!("{} is not cyclic on element 1", group.name())));
        }
        let values = (0..k).map(|i| {
            // element i of the cyclic group is 1 + 1 + ... (i times)
            let steps = (0..k).position(|j| group.pow(g1, j as i64) == i).unwrap_or(0);
            field.pow(t, steps as u64)
        });
        Self::new(group, field, values.collect())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn value(&self, g: usize) -> Elem {
        self.values[g]
    }

    /// The same action written as `k x k` matrices over the prime subfield
    /// GF(p), where `k` is the extension degree: row `i` of `η(g)` holds the
    /// coordinates of `t^i ζ(g)`.
    pub fn to_matrix_rep(&self) -> Representation {
        let f = &self.field;
        let base = FiniteField::prime(f.characteristic()).expect("prime characteristic");
        let k = f.degree() as usize;
        let t = if k == 1 { 1 } else { f.generator_t() };
        let images = self
            .values
            .iter()
            .map(|&z| {
                let rows: Vec<Vec<Elem>> = (0..k).map(|i| f.coeffs(f.mul(f.pow(t, i as u64), z))).collect();
                FieldMatrix::from_rows(&base, &rows)
            })
            .collect();
        Representation { group: self.group.clone(), field: base, dim: k, images }
    }
}
