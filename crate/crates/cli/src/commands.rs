use anyhow::{bail, Context, Result};
use hbk_core::algebra::FiniteGroup;
use hbk_core::bounds::{
    constituent_obstruction_coloring, constituent_obstruction_flowcount, cutting_lower_bound, tunnel_lower_bound,
    BoundReport,
};
use hbk_core::catalog::{catalog as entries, catalog_entry};
use hbk_core::coloring::{coloring_count, invariant_multiset, Method};
use hbk_core::descriptors::standard_families;
use hbk_core::diagram::{parse_diagram, random_move_walk, serialize_diagram, Diagram};
use hbk_core::flows::{classify_flows, enumerate_flows, flow_image, flow_report_row, FlowStatus};
use hbk_core::quandle::GFamily;
use serde_json::json;

use crate::{inputs, ConstituentMethod, MethodArg, Usage};

fn multiset(counts: &[u128]) -> String {
    let parts: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Left-aligned columns separated by two spaces.
fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn genus_or_computed(d: &Diagram, genus: Option<usize>) -> usize {
    genus.unwrap_or_else(|| d.genus())
}

pub fn validate(arg: &str) -> Result<bool> {
    let text = inputs::diagram_text(arg)?;
    match parse_diagram(&text) {
        Ok(d) => {
            println!(
                "valid: {} arcs, {} crossings, {} vertices, {} loops, genus {}",
                d.arc_count,
                d.n1(),
                d.vertices.len(),
                d.loops.len(),
                d.genus()
            );
            Ok(true)
        }
        Err(hbk_core::Error::InvalidDiagram(violations)) => {
            println!("invalid: {} problem(s)", violations.len());
            for v in violations {
                println!("  {v}");
            }
            Ok(false)
        }
        Err(e) => Err(e).with_context(|| format!("in diagram `{arg}`")),
    }
}

pub fn flows(arg: &str, group: &str, families: &[String], as_json: bool, budget: u64) -> Result<bool> {
    let d = inputs::diagram(arg)?;
    let group = inputs::group(group)?;
    let fams = if families.is_empty() { standard_families(&group)? } else { inputs::families(families, &group)? };
    let classes = classify_flows(&d, &group, &fams, budget)?;
    let trivial = classes.iter().filter(|c| c.status == FlowStatus::TrivialRelative).count();
    if as_json {
        for (i, c) in classes.iter().enumerate() {
            let record = json!({
                "index": i,
                "flow": c.flow.values(),
                "image": flow_image(&c.flow, &group),
                "status": c.status,
            });
            println!("{record}");
        }
        return Ok(true);
    }
    let names: Vec<&str> = fams.iter().map(GFamily::name).collect();
    println!("{} flows over {}", classes.len(), group.name());
    println!("families: {}", if names.is_empty() { "(none)".to_string() } else { names.join(" ") });
    for (i, c) in classes.iter().enumerate() {
        println!("{}", flow_report_row(i, c, &group));
    }
    println!("trivial-relative flows: {trivial}");
    Ok(true)
}

pub fn colorings(arg: &str, group: &str, family: &str, method: MethodArg, budget: u64) -> Result<bool> {
    let d = inputs::diagram(arg)?;
    let group = inputs::group(group)?;
    let fam = inputs::families(&[family.to_string()], &group)?.remove(0);
    let flows = enumerate_flows(&d, &group, budget)?;
    let mut counts = Vec::with_capacity(flows.len());
    for (i, f) in flows.iter().enumerate() {
        let n = match method {
            MethodArg::Both => {
                let brute = coloring_count(&d, f, &fam, Method::Brute, budget)?;
                let linear = coloring_count(&d, f, &fam, Method::Linear, budget)?;
                println!("flow {i}: {f} brute={brute} linear={linear}");
                if brute != linear {
                    bail!("methods disagree on flow {i}: brute force {brute}, linear algebra {linear}");
                }
                brute
            }
            MethodArg::Brute | MethodArg::Linear | MethodArg::Auto => {
                let m = match method {
                    MethodArg::Brute => Method::Brute,
                    MethodArg::Linear => Method::Linear,
                    _ => Method::Auto,
                };
                let n = coloring_count(&d, f, &fam, m, budget)?;
                println!("flow {i}: {f} count={n}");
                n
            }
        };
        counts.push(n);
    }
    counts.sort_unstable();
    println!("family: {}", fam.name());
    println!("multiset: {}", multiset(&counts));
    if matches!(method, MethodArg::Both) {
        println!("brute force and linear algebra agree");
    }
    Ok(true)
}

fn record_stream(report: &BoundReport, family: &str) {
    for r in &report.records {
        let record = json!({
            "bound": report.kind,
            "family": family,
            "index": r.index,
            "flow": r.flow.values(),
            "image": r.image,
            "value": r.value,
            "contribution": r.contribution,
        });
        println!("{record}");
    }
}

pub fn bounds(
    arg: &str,
    genus: Option<usize>,
    group: &str,
    families: &[String],
    tunnel: bool,
    cut: bool,
    budget: u64,
) -> Result<bool> {
    let d = inputs::diagram(arg)?;
    let genus = genus_or_computed(&d, genus);
    let group = inputs::group(group)?;
    let fams = inputs::families(families, &group)?;
    let (tunnel, cut, explicit) = if tunnel || cut { (tunnel, cut, true) } else { (true, true, false) };

    let mut rows = vec![vec!["bound".to_string(), "value".into(), "raw".into(), "exact".into(), "families".into()]];
    let mut reports = Vec::new();
    if tunnel {
        let alexander: Vec<&GFamily> = fams.iter().filter(|f| f.as_alexander().is_some()).collect();
        if alexander.is_empty() && explicit {
            bail!(Usage("the tunnel bound needs an Alexander family".into()));
        }
        let mut best: Option<BoundReport> = None;
        for fam in alexander {
            let r = tunnel_lower_bound(&d, genus, fam.as_alexander().expect("filtered"), budget)?;
            rows.push(vec![
                "tunnel".into(),
                r.value.to_string(),
                r.raw.clone(),
                "yes".into(),
                fam.name().to_string(),
            ]);
            if best.as_ref().is_none_or(|b| r.value > b.value) {
                best = Some(r.clone());
            }
            reports.push((r, fam.name().to_string()));
        }
        if let Some(b) = best {
            rows.push(vec!["tunnel*".into(), b.value.to_string(), "max over families".into(), "yes".into(), b.families.join(",")]);
        }
    }
    if cut {
        let r = cutting_lower_bound(&d, genus, &group, &fams, budget)?;
        let exact = if r.exact { "yes" } else { "relative" };
        rows.push(vec!["cutting".into(), r.value.to_string(), r.raw.clone(), exact.into(), r.families.join(",")]);
        let name = r.families.join(",");
        reports.push((r, name));
    }
    println!("genus {genus}, group {}", group.name());
    print!("{}", table(&rows));
    for (r, family) in &reports {
        record_stream(r, family);
    }
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
pub fn constituent(
    small: &str,
    small_genus: Option<usize>,
    big: &str,
    genus: Option<usize>,
    group: &str,
    families: &[String],
    method: ConstituentMethod,
    budget: u64,
) -> Result<bool> {
    let ds = inputs::diagram(small)?;
    let db = inputs::diagram(big)?;
    let gs = genus_or_computed(&ds, small_genus);
    let gb = genus_or_computed(&db, genus);
    let group = inputs::group(group)?;
    let fams = inputs::families(families, &group)?;
    match method {
        ConstituentMethod::Coloring => {
            let alexander: Vec<&GFamily> = fams.iter().filter(|f| f.as_alexander().is_some()).collect();
            if alexander.is_empty() {
                bail!(Usage("the coloring test needs an Alexander family".into()));
            }
            let small_flows = enumerate_flows(&ds, &group, budget)?;
            let mut obstructed = false;
            for fam in alexander {
                let alex = fam.as_alexander().expect("filtered");
                for (i, f) in small_flows.iter().enumerate() {
                    let r = constituent_obstruction_coloring(&ds, gs, f, &db, gb, alex, budget)?;
                    let dims: Vec<u128> = r.rows.iter().filter(|x| x.image_matches).map(|x| x.value as u128).collect();
                    println!(
                        "{} small flow {i} ({f}): dim {} vs matching big flows {} with slack {} -> {}",
                        fam.name(),
                        r.small_value,
                        multiset(&dims),
                        alex.dim() * (gb - gs),
                        if r.obstructed { "obstructed" } else { "no obstruction" }
                    );
                    obstructed |= r.obstructed;
                }
            }
            println!("{}", if obstructed { "obstructed: not a constituent" } else { "not obstructed" });
            Ok(obstructed)
        }
        ConstituentMethod::Count => {
            let r = constituent_obstruction_flowcount(&ds, gs, &db, gb, &group, &fams, budget)?;
            let t = r.big_value.expect("count test reports T");
            println!("trivial-relative flows: small {}, big {t}", r.small_value);
            if !r.sound {
                println!("note: the small diagram has crossings, so its count is only an upper bound");
            }
            let certified = r.obstructed && r.sound;
            println!(
                "{}",
                match (r.obstructed, r.sound) {
                    (true, true) => "obstructed: not a constituent",
                    (true, false) => "heuristic obstruction only",
                    _ => "not obstructed",
                }
            );
            Ok(certified)
        }
    }
}

fn profile(d: &Diagram, group: &FiniteGroup, fams: &[GFamily], budget: u64) -> Result<(usize, Vec<Vec<u128>>)> {
    let flows = enumerate_flows(d, group, budget)?.len();
    let sets = fams.iter().map(|f| invariant_multiset(d, group, f, Method::Auto, budget)).collect::<Result<_, _>>()?;
    Ok((flows, sets))
}

pub fn fuzz(
    arg: &str,
    group: &str,
    families: &[String],
    steps: usize,
    seed: u64,
    output: Option<&str>,
    budget: u64,
) -> Result<bool> {
    let d = inputs::diagram(arg)?;
    let group = inputs::group(group)?;
    let fams = inputs::families(families, &group)?;
    let before = profile(&d, &group, &fams, budget)?;
    let (walked, report) = random_move_walk(&d, steps, seed);
    let after = profile(&walked, &group, &fams, budget)?;
    println!(
        "applied {} moves ({} attempts skipped), crossings {} -> {}",
        report.applied.len(),
        report.skipped,
        d.n1(),
        walked.n1()
    );
    println!("flows: {} -> {}", before.0, after.0);
    for (fam, (b, a)) in fams.iter().zip(before.1.iter().zip(&after.1)) {
        println!("{}: {} -> {}", fam.name(), multiset(b), multiset(a));
    }
    if let Some(path) = output {
        std::fs::write(path, serialize_diagram(&walked)).with_context(|| format!("cannot write `{path}`"))?;
    }
    let preserved = before == after;
    println!("{}", if preserved { "invariant preserved" } else { "invariant NOT preserved" });
    Ok(preserved)
}

pub fn catalog(name: Option<&str>) -> Result<bool> {
    if let Some(name) = name {
        let e = catalog_entry(name).ok_or_else(|| Usage(format!("no catalog entry `{name}`")))?;
        print!("{}", e.payload());
        return Ok(true);
    }
    let mut rows = vec![vec!["name".to_string(), "genus".into(), "crossings".into(), "vertices".into(), "source".into()]];
    for e in entries() {
        let source = if e.authoritative { e.provenance.to_string() } else { format!("{} (reconstruction)", e.provenance) };
        rows.push(vec![e.name, e.genus.to_string(), e.diagram.n1().to_string(), e.diagram.vertices.len().to_string(), source]);
    }
    print!("{}", table(&rows));
    Ok(true)
}
