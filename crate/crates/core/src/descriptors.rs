//! Text descriptors for groups, fields and families, plus the standard
//! families shipped for each small group.

use crate::algebra::{FieldMatrix, FiniteField, FiniteGroup, Representation, ScalarRepresentation};
use crate::error::{Error, Result};
use crate::quandle::{
    alexander_family, alexander_family_scalar, cyclic_alexander_family, zk_family_from_quandle, zk_family_with_order,
    GFamily, Quandle,
};

fn bad(msg: impl Into<String>) -> Error {
    Error::Descriptor(msg.into())
}

/// Splits `s` at commas that are not nested inside parentheses.
fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

/// `name(args)` → `(name, args)`.
fn call(s: &str) -> Option<(&str, &str)> {
    let s = s.trim();
    let open = s.find('(')?;
    let inner = s.strip_suffix(')')?;
    Some((s[..open].trim(), &inner[open + 1..]))
}

fn number<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim().parse().map_err(|_| bad(format!("expected {what}, found `{}`", s.trim())))
}

/// `gf(p)` or `gf(p^k;c0,...,ck)` with the modulus given low-to-high.
pub fn parse_field(s: &str) -> Result<FiniteField> {
    let (name, args) = call(s).ok_or_else(|| bad(format!("`{s}` is not a field descriptor")))?;
    if name != "gf" {
        return Err(bad(format!("`{s}` is not a field descriptor")));
    }
    match args.split_once(';') {
        None => FiniteField::prime(number(args, "a prime")?),
        Some((pk, coeffs)) => {
            let (p, k) = pk.split_once('^').ok_or_else(|| bad("expected `p^k` before `;`"))?;
            let p: u32 = number(p, "a prime")?;
            let k: usize = number(k, "a degree")?;
            let m = coeffs.split(',').map(|c| number::<u32>(c, "a coefficient")).collect::<Result<Vec<_>>>()?;
            if m.len() != k + 1 {
                return Err(bad(format!("a degree-{k} modulus needs {} coefficients, found {}", k + 1, m.len())));
            }
            FiniteField::new(p, &m)
        }
    }
}

/// `trivial`, `z<k>`, `s<n>` or `d<n>` (dihedral of order `2n`).
pub fn parse_group(s: &str) -> Result<FiniteGroup> {
    let s = s.trim();
    if s == "trivial" || s == "z1" {
        return Ok(FiniteGroup::trivial());
    }
    let (head, tail) = s.split_at(s.chars().next().map_or(0, |c| c.len_utf8()));
    let n: usize = number(tail, "a group size").map_err(|_| bad(format!("unknown group `{s}`")))?;
    match head {
        "z" => FiniteGroup::cyclic(n),
        "s" => FiniteGroup::symmetric(n),
        "d" => FiniteGroup::dihedral(n),
        _ => Err(bad(format!("unknown group `{s}`"))),
    }
}

/// A field element written as an integer, `t`, `t^k` or `-t`.
fn parse_element(field: &FiniteField, s: &str) -> Result<u32> {
    let s = s.trim();
    if let Ok(n) = s.parse::<i64>() {
        return Ok(field.from_int(n));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, s),
    };
    let e: u64 = match body {
        "t" => 1,
        _ => number(body.strip_prefix("t^").ok_or_else(|| bad(format!("cannot read field element `{s}`")))?, "an exponent")?,
    };
    let x = field.pow(field.generator_t(), e);
    Ok(if neg { field.neg(x) } else { x })
}

fn sign_values(s3: &FiniteGroup, f: &FiniteField) -> Vec<u32> {
    (0..s3.order()).map(|g| if s3.element_order(g) == 2 { f.from_int(-1) } else { f.one() }).collect()
}

/// The two-dimensional reflection representation of `S_3` on row vectors.
fn s3_standard(s3: &FiniteGroup, f: &FiniteField) -> Result<Representation> {
    let m = |rows: [[i64; 2]; 2]| FieldMatrix::from_rows(f, &rows.map(|r| r.map(|x| f.from_int(x)).to_vec()));
    // with elements as permutations in lexicographic order, index 2 swaps
    // the first two points and index 1 the last two
    Representation::from_generators(s3, f, 2, &[(2, m([[-1, 0], [1, 1]])), (1, m([[1, 1], [0, -1]]))])
}

/// Parses a family descriptor. `load` reads the file named in `zk(<file>)`.
///
/// * `dihedral(n)`: the `Z_2`-family of the dihedral quandle `R_n`
///   (an Alexander family when `n` is prime)
/// * `alexander(<field>, <t>)`: `F[t^{±1}]/(m)` over `Z_k`, `k` the order of `t`
/// * `zk(<quandle file>)` or `zk(dihedral(n))`: the `Z_type`-family of a quandle
/// * `s3(<field>, sign|std)`: Alexander `S_3`-families
/// * `trivial(<field>)`: the trivial-group family on `F`
pub fn parse_family(s: &str, load: &dyn Fn(&str) -> Result<String>) -> Result<GFamily> {
    let s = s.trim();
    let (name, args) = call(s).ok_or_else(|| bad(format!("`{s}` is not a family descriptor")))?;
    let args = split_top(args);
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(bad(format!("`{name}` takes {n} argument(s), found {}", args.len())))
        }
    };
    let fam = match name {
        "dihedral" => {
            arity(1)?;
            let n: usize = number(args[0], "a size")?;
            if n < 3 {
                return Err(bad("dihedral(n) needs n >= 3"));
            }
            if crate::algebra::field::is_prime(n as u64) {
                let f = FiniteField::prime(n as u32)?;
                cyclic_alexander_family(&f, f.from_int(-1))?
            } else {
                zk_family_with_order(&Quandle::dihedral(n)?, 2)?
            }
        }
        "alexander" => {
            arity(2)?;
            let f = parse_field(args[0])?;
            let t = parse_element(&f, args[1])?;
            cyclic_alexander_family(&f, t)?
        }
        "zk" => {
            arity(1)?;
            let q = match call(args[0]) {
                Some(("dihedral", n)) => Quandle::dihedral(number(n, "a size")?)?,
                _ => Quandle::parse(&load(args[0])?)?,
            };
            zk_family_from_quandle(&q)
        }
        "s3" => {
            arity(2)?;
            let f = parse_field(args[0])?;
            let s3 = FiniteGroup::symmetric(3)?;
            match args[1] {
                "sign" => alexander_family_scalar(&ScalarRepresentation::new(&s3, &f, sign_values(&s3, &f))?),
                "std" => alexander_family(&s3_standard(&s3, &f)?),
                other => return Err(bad(format!("unknown S3 action `{other}`; use sign or std"))),
            }
        }
        "trivial" => {
            arity(1)?;
            let f = parse_field(args[0])?;
            alexander_family(&Representation::trivial(&FiniteGroup::trivial(), &f, 1))
        }
        _ => return Err(bad(format!("unknown family `{name}`"))),
    };
    Ok(fam.with_name(s.split_whitespace().collect::<String>()))
}

/// Descriptors of the families shipped for a group, by group name.
pub fn standard_family_descriptors(group: &FiniteGroup) -> &'static [&'static str] {
    match group.name() {
        "trivial" => &["trivial(gf(3))"],
        "z2" => &["dihedral(3)", "dihedral(5)", "zk(dihedral(3))", "alexander(gf(3^2;1,0,1),-1)"],
        "z3" => &["alexander(gf(2^2;1,1,1),t)", "alexander(gf(7),2)"],
        "s3" => &["s3(gf(3),sign)", "s3(gf(3),std)", "s3(gf(5),std)"],
        _ => &[],
    }
}

/// The shipped families for `group` (empty for groups without any).
pub fn standard_families(group: &FiniteGroup) -> Result<Vec<GFamily>> {
    let no_files = |_: &str| -> Result<String> { Err(bad("no files here")) };
    standard_family_descriptors(group)
        .iter()
        .map(|s| parse_family(s, &no_files))
        .collect()
}
