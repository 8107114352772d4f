//! Built-in diagrams.

use crate::diagram::{braid_closure, parse_diagram, serialize_diagram, splice, theta_curve, trivial_handlebody, Diagram};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub diagram: Diagram,
    pub genus: usize,
    pub provenance: &'static str,
    /// False for best-effort reconstructions of pictured examples.
    pub authoritative: bool,
}

impl CatalogEntry {
    /// The diagram in file format, with a provenance comment.
    pub fn payload(&self) -> String {
        let mut out = format!("# {}: {}\n", self.name, self.provenance);
        if !self.authoritative {
            out.push_str("# reconstruction, not authoritative\n");
        }
        out.push_str(&serialize_diagram(&self.diagram));
        out
    }
}

fn entry(name: &str, diagram: Diagram, provenance: &'static str, authoritative: bool) -> CatalogEntry {
    let genus = diagram.genus();
    CatalogEntry { name: name.to_string(), diagram, genus, provenance, authoritative }
}

fn closure(strands: usize, word: &[i32]) -> Diagram {
    braid_closure(strands, word).expect("catalog braids are valid")
}

/// Every built-in entry, in a fixed order.
pub fn catalog() -> Vec<CatalogEntry> {
    let trefoil = closure(2, &[1, 1, 1]);
    let k818 = closure(3, &[1, -2, 1, -2, 1, -2, 1, -2]);
    let mut out = vec![
        entry(
            "unknot",
            parse_diagram("arcs 1\nX + 1 1 1\n").expect("valid"),
            "one-crossing diagram of the unknot",
            true,
        ),
        entry("trefoil", trefoil.clone(), "closure of the braid s1^3", true),
        entry("figure-eight", closure(3, &[1, -2, 1, -2]), "closure of the braid (s1 s2^-1)^2", true),
        entry("8_18", k818.clone(), "closure of the braid (s1 s2^-1)^4", true),
    ];
    for g in 1..=4 {
        out.push(entry(&format!("O_{g}"), trivial_handlebody(g), "trivial handlebody-knot, crossing-free", true));
    }
    out.push(entry("theta", theta_curve(), "planar theta-curve", true));
    out.push(entry(
        "theta-trefoil",
        splice(&theta_curve(), 3, &trefoil, 1).expect("valid splice"),
        "theta-curve with a trefoil tied into one edge",
        true,
    ));
    out.push(entry(
        "handcuff-trefoil",
        splice(&trivial_handlebody(2), 3, &trefoil, 1).expect("valid splice"),
        "genus-2 handcuff graph with a trefoil tied into the bridge",
        false,
    ));
    out.push(entry(
        "theta-8_18",
        splice(&theta_curve(), 3, &k818, 1).expect("valid splice"),
        "theta-curve with 8_18 tied into one edge",
        false,
    ));
    out
}

pub fn catalog_entry(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn payloads_parse_back() {
        for e in catalog() {
            let d = parse_diagram(&e.payload()).unwrap();
            assert_eq!(d, e.diagram, "{}", e.name);
            assert_eq!(d.genus(), e.genus);
        }
    }

    #[test]
    fn genera() {
        let g = |n: &str| catalog_entry(n).unwrap().genus;
        assert_eq!((g("unknot"), g("8_18"), g("O_3"), g("theta"), g("handcuff-trefoil")), (1, 1, 3, 2, 2));
        assert!(catalog_entry("nope").is_none());
    }
}
