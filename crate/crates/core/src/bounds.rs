//! Lower bounds for the tunnel number and the cutting number, and the
//! constituent obstructions.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::FiniteGroup;
use crate::coloring::coloring_dimension;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::flows::{classify_flows, enumerate_flows, flow_image, FlowStatus, GFlow};
use crate::quandle::{AlexanderFamily, GFamily};

/// Fails unless `genus` is the genus computed from the diagram.
pub fn check_genus(d: &Diagram, genus: usize) -> Result<()> {
    let actual = d.genus();
    if actual == genus {
        Ok(())
    } else {
        Err(Error::Genus(format!("diagram has genus {actual}, but genus {genus} was supplied")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Tunnel,
    Cutting,
}

/// Per-flow data behind a bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlowRecord {
    pub index: usize,
    pub flow: GFlow,
    pub image: Vec<usize>,
    /// Coloring dimension (tunnel) or 1/0 for trivial-relative or not (cutting).
    pub value: usize,
    /// The bound this flow alone gives (tunnel), or whether it is counted in
    /// `T` (cutting).
    pub contribution: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub genus: usize,
    /// The integer lower bound.
    pub value: i64,
    /// The quantity before rounding, in words.
    pub raw: String,
    pub witness: Option<GFlow>,
    pub families: Vec<String>,
    /// False when the bound rests on trivial-flow counts relative to the
    /// given families, which can only make it weaker.
    pub exact: bool,
    pub records: Vec<FlowRecord>,
}

/// `max_ρ ⌈dim_F Col_X(D, ρ) / d⌉ - 1`.
pub fn tunnel_lower_bound(d: &Diagram, genus: usize, fam: &AlexanderFamily, budget: u64) -> Result<BoundReport> {
    check_genus(d, genus)?;
    let group = fam.eta().group();
    let k = fam.dim();
    let flows = enumerate_flows(d, group, budget)?;
    let dims = flows.par_iter().map(|f| coloring_dimension(d, f, fam)).collect::<Result<Vec<_>>>()?;
    let records: Vec<FlowRecord> = flows
        .iter()
        .zip(&dims)
        .enumerate()
        .map(|(index, (f, &dim))| FlowRecord {
            index,
            flow: f.clone(),
            image: flow_image(f, group),
            value: dim,
            contribution: dim.div_ceil(k) as i64 - 1,
        })
        .collect();
    let best = records.iter().max_by_key(|r| (r.contribution, std::cmp::Reverse(r.index))).expect("constant flow");
    Ok(BoundReport {
        kind: BoundKind::Tunnel,
        genus,
        value: best.contribution,
        raw: format!("{}/{} - 1", best.value, k),
        witness: Some(best.flow.clone()),
        families: vec![fam_name(fam)],
        exact: true,
        records,
    })
}

fn fam_name(fam: &AlexanderFamily) -> String {
    GFamily::Alexander(fam.clone()).name().to_string()
}

/// Largest `m` with `base^m ≤ t`, for `base ≥ 2` and `t ≥ 1`.
pub fn floor_log(base: usize, t: usize) -> usize {
    let mut m = 0;
    let mut p: u128 = 1;
    while p * base as u128 <= t as u128 {
        p *= base as u128;
        m += 1;
    }
    m
}

/// `⌈g - log_{|G|} T⌉` with `T` the number of trivial-relative flows.
pub fn cutting_lower_bound(
    d: &Diagram,
    genus: usize,
    group: &FiniteGroup,
    families: &[GFamily],
    budget: u64,
) -> Result<BoundReport> {
    check_genus(d, genus)?;
    if group.order() < 2 {
        return Err(Error::Group("the cutting bound needs a group with at least two elements".into()));
    }
    let classes = classify_flows(d, group, families, budget)?;
    let records: Vec<FlowRecord> = classes
        .iter()
        .enumerate()
        .map(|(index, c)| {
            let trivial = c.status == FlowStatus::TrivialRelative;
            FlowRecord {
                index,
                flow: c.flow.clone(),
                image: flow_image(&c.flow, group),
                value: trivial as usize,
                contribution: trivial as i64,
            }
        })
        .collect();
    let t = records.iter().filter(|r| r.value == 1).count();
    let m = floor_log(group.order(), t);
    Ok(BoundReport {
        kind: BoundKind::Cutting,
        genus,
        value: (genus as i64 - m as i64).max(0),
        raw: format!("{genus} - log_{} {t}", group.order()),
        witness: None,
        families: families.iter().map(|f| f.name().to_string()).collect(),
        exact: d.n1() == 0,
        records,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstituentRow {
    pub index: usize,
    pub flow: GFlow,
    pub image: Vec<usize>,
    pub image_matches: bool,
    /// Coloring dimension (coloring test) or 1/0 for trivial-relative (count test).
    pub value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstituentReport {
    pub small_genus: usize,
    pub big_genus: usize,
    /// Dimension for the small diagram's flow (coloring test) or its
    /// trivial-relative flow count (count test).
    pub small_value: usize,
    pub big_value: Option<usize>,
    pub rows: Vec<ConstituentRow>,
    /// True certifies that the small handlebody-link is not a constituent
    /// of the big one, whenever `sound` holds.
    pub obstructed: bool,
    pub sound: bool,
}

/// Tests the small diagram with one flow against every flow of the big
/// diagram with the same image: obstructed when each of them has
/// `dim' - dim > d (g - g')`.
pub fn constituent_obstruction_coloring(
    small: &Diagram,
    small_genus: usize,
    small_flow: &GFlow,
    big: &Diagram,
    big_genus: usize,
    fam: &AlexanderFamily,
    budget: u64,
) -> Result<ConstituentReport> {
    check_genus(small, small_genus)?;
    check_genus(big, big_genus)?;
    if small_genus >= big_genus {
        return Err(Error::Genus(format!("need g' < g, got g' = {small_genus} and g = {big_genus}")));
    }
    let group = fam.eta().group();
    let dim_small = coloring_dimension(small, small_flow, fam)?;
    let image_small = flow_image(small_flow, group);
    let slack = fam.dim() * (big_genus - small_genus);
    let flows = enumerate_flows(big, group, budget)?;
    let rows = flows
        .par_iter()
        .enumerate()
        .map(|(index, f)| {
            let image = flow_image(f, group);
            let image_matches = image == image_small;
            let value = if image_matches { coloring_dimension(big, f, fam)? } else { 0 };
            Ok(ConstituentRow { index, flow: f.clone(), image, image_matches, value })
        })
        .collect::<Result<Vec<_>>>()?;
    let obstructed = rows.iter().filter(|r| r.image_matches).all(|r| dim_small > r.value + slack);
    Ok(ConstituentReport {
        small_genus,
        big_genus,
        small_value: dim_small,
        big_value: None,
        rows,
        obstructed,
        sound: true,
    })
}

/// Compares trivial-relative flow counts: obstructed when `T' > T`. Only
/// sound when the small diagram has no crossings, so that `T'` is exact.
pub fn constituent_obstruction_flowcount(
    small: &Diagram,
    small_genus: usize,
    big: &Diagram,
    big_genus: usize,
    group: &FiniteGroup,
    families: &[GFamily],
    budget: u64,
) -> Result<ConstituentReport> {
    check_genus(small, small_genus)?;
    check_genus(big, big_genus)?;
    if small_genus > big_genus {
        return Err(Error::Genus(format!("need g' <= g, got g' = {small_genus} and g = {big_genus}")));
    }
    let count = |d: &Diagram| -> Result<(usize, Vec<ConstituentRow>)> {
        let classes = classify_flows(d, group, families, budget)?;
        let rows: Vec<ConstituentRow> = classes
            .into_iter()
            .enumerate()
            .map(|(index, c)| ConstituentRow {
                index,
                image: flow_image(&c.flow, group),
                image_matches: false,
                value: (c.status == FlowStatus::TrivialRelative) as usize,
                flow: c.flow,
            })
            .collect();
        Ok((rows.iter().map(|r| r.value).sum(), rows))
    };
    let (t_small, _) = count(small)?;
    let (t_big, rows) = count(big)?;
    Ok(ConstituentReport {
        small_genus,
        big_genus,
        small_value: t_small,
        big_value: Some(t_big),
        rows,
        obstructed: t_small > t_big,
        sound: small.n1() == 0,
    })
}
