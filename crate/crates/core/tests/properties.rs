use hbk_core::bounds::{cutting_lower_bound, tunnel_lower_bound};
use hbk_core::catalog::catalog;
use hbk_core::coloring::{coloring_count, Method, DEFAULT_BUDGET};
use hbk_core::descriptors::{parse_group, standard_families};
use hbk_core::diagram::{braid_closure, canonical_relabel, is_isomorphic, parse_diagram, random_move_walk, serialize_diagram};
use hbk_core::flows::{count_trivial_flows, enumerate_flows};
use proptest::prelude::*;

fn braid_word() -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2)], 1..7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn serialization_round_trips(entry in 0usize..64, seed in any::<u64>(), steps in 0usize..20) {
        let entries = catalog();
        let (d, _) = random_move_walk(&entries[entry % entries.len()].diagram, steps, seed);
        let text = serialize_diagram(&d);
        let back = parse_diagram(&text).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(serialize_diagram(&back), text);
    }

    #[test]
    fn relabeling_preserves_isomorphism_class(word in braid_word()) {
        let d = braid_closure(3, &word).unwrap();
        let c = canonical_relabel(&d);
        prop_assert!(is_isomorphic(&d, &c));
    }

    #[test]
    fn every_flow_has_at_least_the_constant_colorings(word in braid_word()) {
        let d = braid_closure(3, &word).unwrap();
        for g in ["z2", "s3"] {
            let group = parse_group(g).unwrap();
            let fams = standard_families(&group).unwrap();
            for f in enumerate_flows(&d, &group, DEFAULT_BUDGET).unwrap() {
                for fam in &fams {
                    let n = coloring_count(&d, &f, fam, Method::Auto, DEFAULT_BUDGET).unwrap();
                    prop_assert!(n >= fam.size() as u128);
                }
            }
        }
    }

    #[test]
    fn more_families_never_add_trivial_flows(word in braid_word()) {
        let d = braid_closure(3, &word).unwrap();
        let group = parse_group("z2").unwrap();
        let fams = standard_families(&group).unwrap();
        let counts: Vec<usize> = (0..=fams.len())
            .map(|k| count_trivial_flows(&d, &group, &fams[..k], DEFAULT_BUDGET).unwrap())
            .collect();
        prop_assert_eq!(counts[0], enumerate_flows(&d, &group, DEFAULT_BUDGET).unwrap().len());
        prop_assert!(counts.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn bounds_survive_random_walks(entry in 0usize..64, seed in any::<u64>(), steps in 0usize..25) {
        let entries = catalog();
        let e = &entries[entry % entries.len()];
        let (d, _) = random_move_walk(&e.diagram, steps, seed);
        let group = parse_group("z2").unwrap();
        let fams = standard_families(&group).unwrap();
        for fam in fams.iter().filter_map(|f| f.as_alexander()) {
            let before = tunnel_lower_bound(&e.diagram, e.genus, fam, DEFAULT_BUDGET).unwrap();
            let after = tunnel_lower_bound(&d, e.genus, fam, DEFAULT_BUDGET).unwrap();
            prop_assert_eq!(before.value, after.value);
        }
        let before = cutting_lower_bound(&e.diagram, e.genus, &group, &fams, DEFAULT_BUDGET).unwrap();
        let after = cutting_lower_bound(&d, e.genus, &group, &fams, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(before.value, after.value);
    }
}
