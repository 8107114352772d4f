//! Finite groups given by Cayley tables.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported group order.
pub const MAX_GROUP_ORDER: usize = 256;

/// A finite group. Elements are the indices `0..order`.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    /// Row-major Cayley table, `table[a * order + b] = a * b`.
    table: Arc<[usize]>,
    identity: usize,
    inverse: Arc<[usize]>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    /// Builds a group from its Cayley table, checking the group axioms
    /// exhaustively.
    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 || order > MAX_GROUP_ORDER {
            return Err(Error::Group(format!("order {order} outside 1..={MAX_GROUP_ORDER}")));
        }
        if table.len() != order * order {
            return Err(Error::Group(format!(
                "Cayley table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= order) {
            return Err(Error::Group(format!("table entry {bad} out of range")));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] == x && table[x * order + e] == x))
            .ok_or_else(|| Error::Group("no identity element".into()))?;
        let mut inverse = vec![0; order];
        for (x, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..order)
                .find(|&y| table[x * order + y] == identity && table[y * order + x] == identity)
                .ok_or_else(|| Error::Group(format!("element {x} has no inverse")))?;
        }
        for a in 0..order {
            for b in 0..order {
                let ab = table[a * order + b];
                for c in 0..order {
                    if table[ab * order + c] != table[a * order + table[b * order + c]] {
                        return Err(Error::Group(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            name: name.into(),
            order,
            table: Arc::from(table),
            identity,
            inverse: Arc::from(inverse),
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).expect("trivial group")
    }

    /// Z_k written additively: element `i` is `t^i`.
    pub fn cyclic(k: usize) -> Result<Self> {
        let mut table = Vec::with_capacity(k * k);
        for a in 0..k {
            for b in 0..k {
                table.push((a + b) % k);
            }
        }
        let name = if k == 1 { "trivial".to_string() } else { format!("z{k}") };
        Self::from_table(name, k, table)
    }

    /// The symmetric group S_n on `{0, ..., n-1}`. Elements are the
    /// permutations in lexicographic order (so the identity is element 0)
    /// and `a * b` means "apply `a`, then `b`".
    pub fn symmetric(n: usize) -> Result<Self> {
        let perms = permutations(n);
        Self::from_permutations(format!("s{n}"), perms)
    }

    /// The dihedral group of order `2n`, as permutations of the n-gon.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Group(format!("dihedral group needs n >= 3, got {n}")));
        }
        let mut perms: Vec<Vec<usize>> = Vec::new();
        for r in 0..n {
            perms.push((0..n).map(|i| (i + r) % n).collect());
            perms.push((0..n).map(|i| (n + r - i) % n).collect());
        }
        perms.sort();
        Self::from_permutations(format!("d{n}"), perms)
    }

    fn from_permutations(name: String, perms: Vec<Vec<usize>>) -> Result<Self> {
        let order = perms.len();
        if order > MAX_GROUP_ORDER {
            return Err(Error::Group(format!("order {order} exceeds {MAX_GROUP_ORDER}")));
        }
        let index = |p: &Vec<usize>| perms.binary_search(p).expect("closed under composition");
        let mut table = Vec::with_capacity(order * order);
        for a in &perms {
            for b in &perms {
                let ab: Vec<usize> = a.iter().map(|&i| b[i]).collect();
                table.push(index(&ab));
            }
        }
        Self::from_table(name, order, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(a) } else { a };
        (0..e.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    /// `g^{-s} x g^{s}`; for `s = +1` this is `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize, positive: bool) -> usize {
        if positive {
            self.mul(self.mul(self.inv(g), x), g)
        } else {
            self.mul(self.mul(g, x), self.inv(g))
        }
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// The subgroup generated by `gens`, as a sorted element list.
    pub fn generated_subgroup(&self, gens: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let gens: BTreeSet<usize> = gens.into_iter().collect();
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        seen.insert(self.identity);
        let mut frontier = vec![self.identity];
        // finite group: closure under right multiplication by generators suffices
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Text in the group-file format.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("group {}\n", self.order);
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|b| self.mul(a, b).to_string()).collect();
            out.push_str(&format!("row {a}: {}\n", row.join(" ")));
        }
        out
    }

    /// Parses the group-file format: a `group <order>` header followed by
    /// `row i: j1 ... jn` lines. The identity must be element 0.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, 1, "empty group file"))?;
        let order: usize = header
            .strip_prefix("group")
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| Error::parse(hl, 1, "expected `group <order>`"))?;
        let mut rows: Vec<Option<Vec<usize>>> = vec![None; order];
        for (ln, line) in lines {
            let rest = line
                .strip_prefix("row")
                .ok_or_else(|| Error::parse(ln, 1, "expected `row i: ...`"))?;
            let (idx, entries) = rest
                .split_once(':')
                .ok_or_else(|| Error::parse(ln, 4, "missing `:` after row index"))?;
            let i: usize = idx
                .trim()
                .parse()
                .map_err(|_| Error::parse(ln, 5, "bad row index"))?;
            if i >= order {
                return Err(Error::parse(ln, 5, format!("row index {i} out of range")));
            }
            if rows[i].is_some() {
                return Err(Error::parse(ln, 1, format!("duplicate row {i}")));
            }
            let vals = entries
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::parse(ln, line.find(':').unwrap_or(0) + 2, "bad table entry"))?;
            if vals.len() != order {
                return Err(Error::parse(ln, 1, format!("row {i} has {} entries", vals.len())));
            }
            rows[i] = Some(vals);
        }
        let mut table = Vec::with_capacity(order * order);
        for (i, r) in rows.into_iter().enumerate() {
            table.extend(r.ok_or_else(|| Error::parse(hl, 1, format!("missing row {i}")))?);
        }
        let g = Self::from_table(format!("group({order})"), order, table)?;
        if g.identity != 0 {
            return Err(Error::Group("identity must be element 0".into()));
        }
        Ok(g)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_basics() {
        let g = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), 0);
        let orders: Vec<usize> = (0..6).map(|a| g.element_order(a)).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 3);
        assert_eq!(orders.iter().filter(|&&o| o == 3).count(), 2);
        // nonabelian
        assert!((0..6).any(|a| (0..6).any(|b| g.mul(a, b) != g.mul(b, a))));
    }

    #[test]
    fn dihedral_order() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.identity(), 0);
    }

    #[test]
    fn generated_subgroups() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let t = (0..6).find(|&a| g.element_order(a) == 2).unwrap();
        assert_eq!(g.generated_subgroup([t]), vec![0, t]);
        assert_eq!(g.generated_subgroup([0]), vec![0]);
        let r = (0..6).find(|&a| g.element_order(a) == 3).unwrap();
        assert_eq!(g.generated_subgroup([t, r]).len(), 6);
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(z3.generated_subgroup([1]), vec![0, 1, 2]);
    }

    #[test]
    fn file_round_trip() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let back = FiniteGroup::parse(&g.to_file_string()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn rejects_non_groups() {
        // not associative: a Latin square with identity 0 that is not a group
        let t = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        assert!(FiniteGroup::from_table("bad", 5, t).is_err());
        assert!(FiniteGroup::from_table("bad", 2, vec![0, 1, 1, 1]).is_err());
        assert!(FiniteGroup::parse("group 2\nrow 0: 0 1\n").is_err());
        assert!(FiniteGroup::parse("group 2\nrow 0: 1 0\nrow 1: 0 1\n").is_err());
    }

    #[test]
    fn conj_matches_definition() {
        let g = FiniteGroup::symmetric(3).unwrap();
        for x in 0..6 {
            for h in 0..6 {
                let c = g.conj(x, h, true);
                assert_eq!(g.mul(h, c), g.mul(x, h));
                assert_eq!(g.conj(c, h, false), x);
            }
        }
    }
}
