//! Runs each acceptance criterion and prints one PASS/FAIL line for it.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use hbk_core::algebra::{FiniteField, FiniteGroup, GroupRingElement};
use hbk_core::bounds::{cutting_lower_bound, tunnel_lower_bound};
use hbk_core::catalog::{catalog, catalog_entry};
use hbk_core::coloring::{
    coloring_dimension, coloring_matrix, count_colorings_bruteforce, invariant_multiset, Method, DEFAULT_BUDGET,
};
use hbk_core::descriptors::{parse_family, parse_group, standard_families};
use hbk_core::diagram::{parse_diagram, random_move_walk, validate, Diagram};
use hbk_core::flows::enumerate_flows;
use hbk_core::quandle::{quandle_type, GFamily, Quandle};

fn family(s: &str) -> GFamily {
    parse_family(s, &|_| unreachable!("no files")).unwrap()
}

fn groups() -> Vec<FiniteGroup> {
    ["z2", "z3", "s3"].iter().map(|g| parse_group(g).unwrap()).collect()
}

fn trivial_handlebody_law() {
    for g in 1..=4 {
        let d = catalog_entry(&format!("O_{g}")).unwrap().diagram;
        for group in groups() {
            for fam in standard_families(&group).unwrap() {
                for f in enumerate_flows(&d, &group, DEFAULT_BUDGET).unwrap() {
                    let n = count_colorings_bruteforce(&d, &f, &fam, DEFAULT_BUDGET).unwrap().count().unwrap();
                    assert_eq!(n, fam.size() as u128, "O_{g}, {}, flow {f}", fam.name());
                }
            }
        }
    }
}

fn oracle_equivalence() {
    let mut groups = groups();
    groups.push(FiniteGroup::trivial());
    for e in catalog() {
        for group in &groups {
            for fam in standard_families(group).unwrap() {
                let Some(alex) = fam.as_alexander() else { continue };
                if fam.size() > 81 {
                    continue;
                }
                let q = alex.field().order() as u128;
                for f in enumerate_flows(&e.diagram, group, DEFAULT_BUDGET).unwrap() {
                    let brute = count_colorings_bruteforce(&e.diagram, &f, &fam, DEFAULT_BUDGET).unwrap().count().unwrap();
                    let dim = coloring_dimension(&e.diagram, &f, alex).unwrap();
                    assert_eq!(brute, q.pow(dim as u32), "{} {} {f}", e.name, fam.name());
                }
            }
        }
    }
}

fn worked_matrix() {
    let d = parse_diagram("arcs 5\nX - 3 5 1\nX - 1 3 2\nV + 2 4 3\nV - 4 5 1\n").unwrap();
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let e = s3.identity();
    let one = |g: usize| GroupRingElement::basis(g);
    let flows = enumerate_flows(&d, &s3, DEFAULT_BUDGET).unwrap();
    assert!(flows.len() > 1);
    for f in &flows {
        let (a, b) = (f.value(1), f.value(3));
        let row = |entries: &[(usize, GroupRingElement)]| {
            let mut r = vec![GroupRingElement::zero(); 5];
            for (c, x) in entries {
                r[c - 1] = x.clone();
            }
            r
        };
        let unit = |c: usize, sign: i64| (c, GroupRingElement::term(sign, e));
        let expected = vec![
            row(&[(1, one(b)), (3, one(e).minus(&one(b))), unit(5, -1)]),
            row(&[(2, one(a)), (1, one(e).minus(&one(a))), unit(3, -1)]),
            row(&[unit(2, 1), unit(3, -1)]),
            row(&[unit(4, 1), unit(1, -1)]),
            row(&[unit(4, 1), unit(3, -1)]),
            row(&[unit(5, 1), unit(1, -1)]),
        ];
        let m = coloring_matrix(&d, f, &s3).unwrap();
        assert_eq!((m.rows(), m.cols()), (6, 5));
        let mut actual: Vec<Vec<GroupRingElement>> =
            (0..6).map(|r| (0..5).map(|c| m.get(r, c).clone()).collect()).collect();
        for want in &expected {
            let pos = actual.iter().position(|r| r == want).unwrap_or_else(|| panic!("row {want:?} missing for {f}"));
            actual.swap_remove(pos);
        }
    }

    // at a = b = e over GF(3): rank against a kernel count
    let z2 = FiniteGroup::cyclic(2).unwrap();
    let r3 = family("dihedral(3)");
    let flow = enumerate_flows(&d, &z2, DEFAULT_BUDGET).unwrap().into_iter().find(|f| f.is_identity(&z2)).unwrap();
    let flat = coloring_matrix(&d, &flow, &z2).unwrap().flatten(r3.as_alexander().unwrap().eta()).unwrap();
    let gf3 = FiniteField::prime(3).unwrap();
    let mut kernel = 0;
    for code in 0..3usize.pow(5) {
        let x: Vec<u32> = (0..5).map(|i| (code / 3usize.pow(i) % 3) as u32).collect();
        let zero = (0..flat.rows()).all(|r| {
            (0..5).fold(gf3.zero(), |acc, c| gf3.add(acc, gf3.mul(flat.get(r, c), x[c]))) == gf3.zero()
        });
        kernel += zero as u32;
    }
    assert_eq!(3u32.pow(5 - flat.rank() as u32), kernel);
    assert_eq!(flat.rank(), 4);
}

fn example_8_18() {
    let d = catalog_entry("8_18").unwrap().diagram;
    let z2 = FiniteGroup::cyclic(2).unwrap();
    let fam = family("alexander(gf(3),-1)");
    let nonzero: Vec<_> = enumerate_flows(&d, &z2, DEFAULT_BUDGET).unwrap().into_iter().filter(|f| !f.is_identity(&z2)).collect();
    assert_eq!(nonzero.len(), 1);
    let dim = coloring_dimension(&d, &nonzero[0], fam.as_alexander().unwrap()).unwrap();
    let brute = count_colorings_bruteforce(&d, &nonzero[0], &fam, DEFAULT_BUDGET).unwrap().count().unwrap();
    assert!(dim >= 3);
    assert_eq!((dim, brute), (3, 27));
}

fn trefoil_bounds() {
    let t = catalog_entry("trefoil").unwrap().diagram;
    let r3 = family("dihedral(3)");
    let z2 = FiniteGroup::cyclic(2).unwrap();
    assert_eq!(tunnel_lower_bound(&t, 1, r3.as_alexander().unwrap(), DEFAULT_BUDGET).unwrap().value, 1);
    assert_eq!(cutting_lower_bound(&t, 1, &z2, &[r3], DEFAULT_BUDGET).unwrap().value, 1);
}

fn profile(d: &Diagram) -> Vec<(usize, Vec<Vec<u128>>)> {
    groups()
        .iter()
        .map(|g| {
            let flows = enumerate_flows(d, g, DEFAULT_BUDGET).unwrap().len();
            let sets = standard_families(g)
                .unwrap()
                .iter()
                .map(|f| invariant_multiset(d, g, f, Method::Auto, DEFAULT_BUDGET).unwrap())
                .collect();
            (flows, sets)
        })
        .collect()
}

fn move_fuzz() {
    for e in catalog() {
        let before = profile(&e.diagram);
        for seed in 0..3 {
            let (d, report) = random_move_walk(&e.diagram, 50, seed);
            assert_eq!(report.applied.len(), 50, "{} seed {seed}", e.name);
            assert!(validate(&d).is_empty());
            assert_eq!(profile(&d), before, "{} seed {seed}", e.name);
        }
    }
}

fn type_values() {
    assert_eq!(quandle_type(&Quandle::dihedral(3).unwrap()), 2);
    let gf4 = FiniteField::new(2, &[1, 1, 1]).unwrap();
    assert_eq!(quandle_type(&Quandle::alexander(&gf4, gf4.generator_t()).unwrap()), 3);
}

fn soundness_guards() {
    for e in catalog() {
        for group in groups() {
            let fams = standard_families(&group).unwrap();
            let mut last = 0;
            for k in 0..=fams.len() {
                let cut = cutting_lower_bound(&e.diagram, e.genus, &group, &fams[..k], DEFAULT_BUDGET).unwrap();
                assert!(cut.value <= e.genus as i64, "{}", e.name);
                assert!(cut.value >= last, "{}: adding {} lowered the bound", e.name, fams[k - 1].name());
                last = cut.value;
            }
            for fam in &fams {
                if let Some(alex) = fam.as_alexander() {
                    let tb = tunnel_lower_bound(&e.diagram, e.genus, alex, DEFAULT_BUDGET).unwrap();
                    assert!(tb.value >= 0, "{} {}", e.name, fam.name());
                }
            }
        }
    }
}

fn main() {
    let criteria: [(&str, fn(), Duration); 8] = [
        ("trivial handlebody-knots have |X| colorings", trivial_handlebody_law, Duration::from_secs(10)),
        ("brute force agrees with linear algebra", oracle_equivalence, Duration::from_secs(60)),
        ("worked 6x5 coloring matrix", worked_matrix, Duration::MAX),
        ("8_18 has a 3-dimensional coloring space", example_8_18, Duration::from_secs(30)),
        ("trefoil tunnel and cutting bounds are 1", trefoil_bounds, Duration::MAX),
        ("random move walks preserve invariants", move_fuzz, Duration::from_secs(300)),
        ("quandle types of R_3 and GF(4)", type_values, Duration::MAX),
        ("bound soundness guards over the catalog", soundness_guards, Duration::MAX),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check));
        let took = start.elapsed();
        let verdict = match outcome {
            Ok(()) if took <= limit => "PASS".to_string(),
            Ok(()) => format!("FAIL (over the {:?} limit)", limit),
            Err(payload) => {
                let msg = payload
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                format!("FAIL ({msg})")
            }
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {}: {verdict} - {name} [{:.2?}]", i + 1, took);
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
