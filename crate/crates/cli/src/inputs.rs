//! Turning command-line arguments into diagrams, groups and families.

use std::path::Path;

use anyhow::{bail, Context, Result};
use hbk_core::algebra::FiniteGroup;
use hbk_core::catalog::{catalog, catalog_entry};
use hbk_core::descriptors::{parse_family, parse_group, standard_families};
use hbk_core::diagram::Diagram;
use hbk_core::quandle::GFamily;

use crate::Usage;

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read `{path}`"))
}

/// Reads a diagram file, or a built-in one written `catalog:<name>`.
pub fn diagram_text(arg: &str) -> Result<String> {
    match arg.strip_prefix("catalog:") {
        Some(name) => match catalog_entry(name) {
            Some(e) => Ok(e.payload()),
            None => {
                let names: Vec<String> = catalog().into_iter().map(|e| e.name).collect();
                Err(Usage(format!("no catalog entry `{name}`; known: {}", names.join(", "))).into())
            }
        },
        None => read(arg),
    }
}

pub fn diagram(arg: &str) -> Result<Diagram> {
    let text = diagram_text(arg)?;
    hbk_core::diagram::parse_diagram(&text).with_context(|| format!("in diagram `{arg}`"))
}

/// A group descriptor such as `z2` or `s3`, or a group file.
pub fn group(arg: &str) -> Result<FiniteGroup> {
    if Path::new(arg).is_file() {
        return FiniteGroup::parse(&read(arg)?).with_context(|| format!("in group file `{arg}`"));
    }
    parse_group(arg).map_err(|e| Usage(e.to_string()).into())
}

/// Parses the family arguments; with none given, the shipped families of
/// `group` are used.
pub fn families(args: &[String], group: &FiniteGroup) -> Result<Vec<GFamily>> {
    if args.is_empty() {
        let fams = standard_families(group)?;
        if fams.is_empty() {
            bail!(Usage(format!("no shipped families for {}; pass --family", group.name())));
        }
        return Ok(fams);
    }
    let load = |path: &str| read(path).map_err(|e| hbk_core::Error::Io(std::io::Error::other(format!("{e:#}"))));
    args.iter()
        .map(|s| {
            let fam = parse_family(s, &load).map_err(|e| match e {
                hbk_core::Error::Descriptor(_) => anyhow::Error::from(Usage(e.to_string())),
                e => anyhow::Error::from(e).context(format!("in family `{s}`")),
            })?;
            if fam.group() != group {
                bail!("family `{s}` is over {}, not {}", fam.group().name(), group.name());
            }
            Ok(fam)
        })
        .collect()
}
