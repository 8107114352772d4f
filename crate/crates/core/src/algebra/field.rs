//! Finite fields GF(p^k) as polynomial residues modulo a user-supplied
//! irreducible polynomial.
//!
//! An element is stored as a `u32` whose base-`p` digits are the polynomial
//! coefficients, lowest degree first: `c0 + c1*p + c2*p^2 + ...`. With this
//! encoding the prime subfield GF(p) is `0..p` and the class of `t` is `p`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

pub type Elem = u32;

#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, coefficients low-to-high, length `k + 1`.
    modulus: Vec<u32>,
    /// `exp[i] = gen^i` for `0 <= i < q - 1`.
    exp: Arc<[Elem]>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Arc<[u32]>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteField({})", self.descriptor())
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - ((lead as u64 * c as u64) % p as u64) as u32) % p;
            }
        }
        r.pop();
    }
    r
}

fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    poly_rem(&prod, m, p)
}

impl FiniteField {
    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, &[0, 1])
    }

    /// GF(p^k) = GF(p)[t]/(modulus), with `modulus` given low-to-high.
    ///
    /// The modulus is normalised to be monic and must be irreducible; this is
    /// checked by trial division against every monic polynomial of degree at
    /// most `k / 2`.
    pub fn new(p: u32, modulus: &[u32]) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::Field(format!("characteristic {p} is not prime")));
        }
        let mut modulus: Vec<u32> = modulus.iter().map(|&c| c % p).collect();
        while modulus.len() > 1 && *modulus.last().unwrap() == 0 {
            modulus.pop();
        }
        if modulus.len() < 2 {
            return Err(Error::Field("modulus must have degree at least 1".into()));
        }
        let k = (modulus.len() - 1) as u32;
        let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_FIELD_ORDER).ok_or_else(|| {
            Error::Field(format!("field order {p}^{k} exceeds {MAX_FIELD_ORDER}"))
        })? as u32;
        let lead = *modulus.last().unwrap();
        let lead_inv = (1..p).find(|&x| (x as u64 * lead as u64) % p as u64 == 1).unwrap();
        for c in modulus.iter_mut() {
            *c = ((*c as u64 * lead_inv as u64) % p as u64) as u32;
        }
        if !Self::irreducible(&modulus, p) {
            return Err(Error::Field(format!(
                "modulus {:?} is reducible over GF({p})",
                modulus
            )));
        }

        let mut field = FiniteField { p, k, q, modulus, exp: Arc::from(Vec::new()), log: Arc::from(Vec::new()) };
        field.build_tables();
        Ok(field)
    }

    fn irreducible(m: &[u32], p: u32) -> bool {
        let k = m.len() - 1;
        for deg in 1..=k / 2 {
            // every monic polynomial of degree `deg`
            let count = (p as u64).pow(deg as u32);
            for code in 0..count {
                let mut f = Vec::with_capacity(deg + 1);
                let mut c = code;
                for _ in 0..deg {
                    f.push((c % p as u64) as u32);
                    c /= p as u64;
                }
                f.push(1);
                if poly_rem(m, &f, p).iter().all(|&x| x == 0) {
                    return false;
                }
            }
        }
        true
    }

    fn build_tables(&mut self) {
        let q = self.q;
        if q == 2 {
            self.exp = Arc::from(vec![1]);
            self.log = Arc::from(vec![0, 0]);
            return;
        }
        let factors = prime_factors((q - 1) as u64);
        let order_divides = |g: &[u32], e: u64, this: &FiniteField| -> bool {
            // square-and-multiply on coefficient vectors
            let mut result = vec![1u32];
            let mut base = g.to_vec();
            let mut e = e;
            while e > 0 {
                if e & 1 == 1 {
                    result = poly_mul_mod(&result, &base, &this.modulus, this.p);
                }
                base = poly_mul_mod(&base, &base, &this.modulus, this.p);
                e >>= 1;
            }
            result.iter().skip(1).all(|&c| c == 0) && result.first() == Some(&1)
        };
        let generator = (2..q)
            .map(|x| self.coeffs(x))
            .find(|g| factors.iter().all(|&r| !order_divides(g, (q as u64 - 1) / r, self)))
            .expect("multiplicative group of a finite field is cyclic");

        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut cur = vec![1u32];
        for i in 0..q - 1 {
            let e = self.from_coeffs(&cur);
            exp.push(e);
            log[e as usize] = i;
            cur = poly_mul_mod(&cur, &generator, &self.modulus, self.p);
        }
        self.exp = Arc::from(exp);
        self.log = Arc::from(log);
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Extension degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Descriptor string in the `gf(p)` / `gf(p^k;c0,...,ck)` syntax.
    pub fn descriptor(&self) -> String {
        if self.k == 1 {
            format!("gf({})", self.p)
        } else {
            let cs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
            format!("gf({}^{};{})", self.p, self.k, cs.join(","))
        }
    }

    /// Coefficients of `x`, low-to-high, always of length `k`.
    pub fn coeffs(&self, mut x: Elem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            out.push(x % self.p);
            x /= self.p;
        }
        out
    }

    pub fn from_coeffs(&self, cs: &[u32]) -> Elem {
        cs.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p)
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// Image of an integer under `Z -> F`.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }

    /// The class of `t` in GF(p)[t]/(m); for a prime field this is `-m0`.
    pub fn generator_t(&self) -> Elem {
        if self.k == 1 {
            self.neg(self.modulus[0])
        } else {
            self.p
        }
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % n) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Elem) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        let l = self.log[a as usize];
        Some(n / gcd(n, l))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }
}

pub(crate) fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> FiniteField {
        FiniteField::new(2, &[1, 1, 1]).unwrap()
    }

    #[test]
    fn gf4_table() {
        let f = gf4();
        let w = f.generator_t();
        assert_eq!(w, 2);
        let w2 = f.mul(w, w);
        // w^2 = w + 1
        assert_eq!(w2, 3);
        assert_eq!(f.add(1, w), w2);
        assert_eq!(f.mul(w, w2), 1);
        assert_eq!(f.mult_order(w), Some(3));
    }

    #[test]
    fn rejects_reducible_modulus() {
        // t^2 + 1 = (t + 1)^2 over GF(2)
        assert!(FiniteField::new(2, &[1, 0, 1]).is_err());
        // t^2 + 1 is irreducible over GF(3)
        assert!(FiniteField::new(3, &[1, 0, 1]).is_ok());
        assert!(FiniteField::new(4, &[0, 1]).is_err());
        assert!(FiniteField::new(2, &[1]).is_err());
    }

    #[test]
    fn rejects_oversized_field() {
        assert!(FiniteField::new(2, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]).is_err());
    }

    #[test]
    fn normalises_leading_coefficient() {
        let f = FiniteField::new(3, &[2, 0, 2]).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        assert_eq!(f.descriptor(), "gf(3^2;1,0,1)");
    }

    fn check_axioms(f: &FiniteField) {
        let q = f.order();
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small_fields() {
        for (p, m) in [
            (2u32, vec![0u32, 1]),
            (3, vec![0, 1]),
            (5, vec![0, 1]),
            (7, vec![0, 1]),
            (2, vec![1, 1, 1]),
            (3, vec![1, 0, 1]),
            (2, vec![1, 1, 0, 1]),
            (2, vec![1, 1, 0, 0, 1]),
            (5, vec![2, 0, 1]),
            (2, vec![1, 1, 0, 0, 0, 0, 1]),
        ] {
            let f = FiniteField::new(p, &m).unwrap();
            assert!(f.order() <= 64);
            check_axioms(&f);
        }
    }

    #[test]
    fn multiplication_matches_polynomial_product() {
        let f = FiniteField::new(3, &[2, 2, 1]).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                let direct = poly_mul_mod(&f.coeffs(a), &f.coeffs(b), f.modulus(), 3);
                let mut direct = direct;
                direct.resize(2, 0);
                assert_eq!(f.mul(a, b), f.from_coeffs(&direct));
            }
        }
    }
}
