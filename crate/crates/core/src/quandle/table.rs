use std::fmt;

use crate::algebra::field::{gcd, FiniteField};
use crate::error::{Error, Result};

/// A finite quandle given by its operation table.
#[derive(Clone, PartialEq, Eq)]
pub struct Quandle {
    name: String,
    size: usize,
    /// `op[x * size + y] = x * y`.
    op: Vec<usize>,
}

impl fmt::Debug for Quandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quandle({}, size {})", self.name, self.size)
    }
}

impl Quandle {
    /// Builds a quandle and checks idempotence, invertibility of every right
    /// translation, and right self-distributivity.
    pub fn from_table(name: impl Into<String>, size: usize, op: Vec<usize>) -> Result<Self> {
        if size == 0 {
            return Err(Error::Quandle("a quandle must be non-empty".into()));
        }
        if op.len() != size * size || op.iter().any(|&z| z >= size) {
            return Err(Error::Quandle(format!("table is not a {size}x{size} table over 0..{size}")));
        }
        let at = |x: usize, y: usize| op[x * size + y];
        if let Some(x) = (0..size).find(|&x| at(x, x) != x) {
            return Err(Error::Quandle(format!("idempotence fails at {x}")));
        }
        for y in 0..size {
            let mut hit = vec![false; size];
            for x in 0..size {
                if std::mem::replace(&mut hit[at(x, y)], true) {
                    return Err(Error::Quandle(format!("right translation by {y} is not a bijection")));
                }
            }
        }
        for x in 0..size {
            for y in 0..size {
                for z in 0..size {
                    if at(at(x, y), z) != at(at(x, z), at(y, z)) {
                        return Err(Error::Quandle(format!("self-distributivity fails at ({x}, {y}, {z})")));
                    }
                }
            }
        }
        Ok(Quandle { name: name.into(), size, op })
    }

    /// The dihedral quandle `R_n`: `x * y = 2y - x (mod n)`.
    pub fn dihedral(n: usize) -> Result<Self> {
        let op = (0..n * n).map(|i| (2 * (i % n) + n - i / n) % n).collect();
        Self::from_table(format!("R_{n}"), n, op)
    }

    /// The trivial quandle `x * y = x`.
    pub fn trivial(n: usize) -> Result<Self> {
        let op = (0..n * n).map(|i| i / n).collect();
        Self::from_table(format!("T_{n}"), n, op)
    }

    /// The Alexander quandle on a finite field: `x * y = t x + (1 - t) y`.
    pub fn alexander(field: &FiniteField, t: u32) -> Result<Self> {
        if t == 0 || t >= field.order() {
            return Err(Error::Quandle("t must be a nonzero field element".into()));
        }
        let n = field.order() as usize;
        let s = field.sub(1, t);
        let op = (0..n * n)
            .map(|i| {
                let (x, y) = ((i / n) as u32, (i % n) as u32);
                field.add(field.mul(t, x), field.mul(s, y)) as usize
            })
            .collect();
        Self::from_table(format!("alexander({field},{t})"), n, op)
    }

    /// Parses the quandle-file format: `quandle <n>` followed by rows
    /// `x: x*0 x*1 ... x*(n-1)`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, 1, "empty quandle file"))?;
        let size: usize = header
            .strip_prefix("quandle")
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| Error::parse(hl, 1, "expected `quandle <size>`"))?;
        let mut rows: Vec<Option<Vec<usize>>> = vec![None; size];
        for (ln, line) in lines {
            let (idx, rest) = line.split_once(':').ok_or_else(|| Error::parse(ln, 1, "expected `x: ...`"))?;
            let x: usize = idx.trim().parse().map_err(|_| Error::parse(ln, 1, "bad row index"))?;
            if x >= size {
                return Err(Error::parse(ln, 1, format!("row index {x} out of range")));
            }
            if rows[x].is_some() {
                return Err(Error::parse(ln, 1, format!("duplicate row {x}")));
            }
            let vals = rest
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<Vec<usize>, _>>()
                .map_err(|_| Error::parse(ln, idx.len() + 2, "bad table entry"))?;
            if vals.len() != size {
                return Err(Error::parse(ln, 1, format!("row {x} has {} entries, expected {size}", vals.len())));
            }
            rows[x] = Some(vals);
        }
        let mut op = Vec::with_capacity(size * size);
        for (x, r) in rows.into_iter().enumerate() {
            op.extend(r.ok_or_else(|| Error::parse(hl, 1, format!("missing row {x}")))?);
        }
        Self::from_table(format!("quandle({size})"), size, op)
    }

    pub fn to_file_string(&self) -> String {
        let mut out = format!("quandle {}\n", self.size);
        for x in 0..self.size {
            let row: Vec<String> = (0..self.size).map(|y| self.op(x, y).to_string()).collect();
            out.push_str(&format!("{x}: {}\n", row.join(" ")));
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.op[x * self.size + y]
    }

    /// `S_y^i(x)`, the `i`-fold right translation by `y`.
    pub fn op_power(&self, x: usize, y: usize, i: usize) -> usize {
        (0..i).fold(x, |acc, _| self.op(acc, y))
    }
}

/// The least `n >= 1` with `x *^n y = x` for all `x, y`: the lcm of the
/// orders of the right translations.
pub fn quandle_type(q: &Quandle) -> usize {
    let mut lcm = 1usize;
    for y in 0..q.size() {
        let mut seen = vec![false; q.size()];
        for start in 0..q.size() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = q.op(x, y);
                len += 1;
            }
            lcm = lcm / gcd(lcm as u32, len as u32) as usize * len;
        }
    }
    lcm
}
