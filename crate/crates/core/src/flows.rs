//! G-flows: arc labelings by group elements that satisfy the Wirtinger
//! relations at every crossing and vertex.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::FiniteGroup;
use crate::coloring::nontrivial_witness;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::quandle::GFamily;
use crate::search::{solve, Rules, Step, UNSET};

/// A flow, stored as the element index of arc `i` at position `i - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GFlow(Vec<usize>);

impl GFlow {
    pub fn new(values: Vec<usize>) -> Self {
        GFlow(values)
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// The element on arc `x` (1-based).
    pub fn value(&self, x: usize) -> usize {
        self.0[x - 1]
    }

    /// Checks the relations `ρ(w) = ρ(v)^{-s} ρ(u) ρ(v)^{s}` at crossings and
    /// `ρ(a) ρ(b) = ρ(c)` at vertices.
    pub fn is_valid(&self, d: &Diagram, group: &FiniteGroup) -> bool {
        if self.0.len() != d.arc_count || self.0.iter().any(|&g| g >= group.order()) {
            return false;
        }
        d.crossings
            .iter()
            .all(|c| group.conj(self.value(c.under_in), self.value(c.over), c.sign.is_pos()) == self.value(c.under_out))
            && d.vertices.iter().all(|v| group.mul(self.value(v.a), self.value(v.b)) == self.value(v.c))
    }

    /// Whether every arc carries the identity.
    pub fn is_identity(&self, group: &FiniteGroup) -> bool {
        self.0.iter().all(|&g| g == group.identity())
    }
}

impl fmt::Display for GFlow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}={}", i + 1, g)?;
        }
        Ok(())
    }
}

struct FlowRules<'a> {
    d: &'a Diagram,
    group: &'a FiniteGroup,
}

impl Rules for FlowRules<'_> {
    fn domain(&self) -> usize {
        self.group.order()
    }

    fn constraint_count(&self) -> usize {
        self.d.crossings.len() + self.d.vertices.len()
    }

    fn vars(&self, ci: usize) -> [usize; 3] {
        let n1 = self.d.crossings.len();
        if ci < n1 {
            let c = self.d.crossings[ci];
            [c.over - 1, c.under_in - 1, c.under_out - 1]
        } else {
            self.d.vertices[ci - n1].arcs().map(|x| x - 1)
        }
    }

    fn step(&self, ci: usize, vals: &[usize]) -> Step {
        let g = self.group;
        let [p, q, r] = self.vars(ci);
        let (x, y, z) = (vals[p], vals[q], vals[r]);
        let settle = |var: usize, want: usize, have: usize| {
            if have == UNSET {
                Step::Force(var, want)
            } else if have == want {
                Step::Nothing
            } else {
                Step::Conflict
            }
        };
        if ci < self.d.crossings.len() {
            let pos = self.d.crossings[ci].sign.is_pos();
            match (x != UNSET, y != UNSET, z != UNSET) {
                (true, true, _) => settle(r, g.conj(y, x, pos), z),
                (true, false, true) => Step::Force(q, g.conj(z, x, !pos)),
                _ => Step::Nothing,
            }
        } else {
            match (x != UNSET, y != UNSET, z != UNSET) {
                (true, true, _) => settle(r, g.mul(x, y), z),
                (true, false, true) => Step::Force(q, g.mul(g.inv(x), z)),
                (false, true, true) => Step::Force(p, g.mul(z, g.inv(y))),
                _ => Step::Nothing,
            }
        }
    }
}

/// Every flow of `d` into `group`, sorted lexicographically by the values
/// on arcs `1, 2, ...`.
pub fn enumerate_flows(d: &Diagram, group: &FiniteGroup, budget: u64) -> Result<Vec<GFlow>> {
    let rules = FlowRules { d, group };
    let mut flows: Vec<GFlow> = solve(&rules, d.arc_count, &[], budget)?.into_iter().map(GFlow).collect();
    flows.sort_unstable();
    Ok(flows)
}

/// The subgroup generated by the values of the flow, as sorted indices.
pub fn flow_image(flow: &GFlow, group: &FiniteGroup) -> Vec<usize> {
    group.generated_subgroup(flow.values().iter().copied())
}

/// Whether a flow is a trivial coloring flow relative to a list of families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlowStatus {
    /// Every listed family gives only constant colorings.
    TrivialRelative,
    /// `family` admits the non-constant `witness` coloring.
    Nontrivial { family: String, witness: Vec<usize> },
}

impl fmt::Display for FlowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlowStatus::TrivialRelative => write!(f, "trivial-relative"),
            FlowStatus::Nontrivial { family, witness } => {
                let w: Vec<String> = witness.iter().map(|x| x.to_string()).collect();
                write!(f, "nontrivial({family},[{}])", w.join(" "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowClassification {
    pub flow: GFlow,
    pub status: FlowStatus,
}

fn check_groups(group: &FiniteGroup, families: &[GFamily]) -> Result<()> {
    match families.iter().find(|f| f.group() != group) {
        Some(f) => Err(Error::GroupMismatch(format!(
            "family {} is over {}, expected {}",
            f.name(),
            f.group().name(),
            group.name()
        ))),
        None => Ok(()),
    }
}

/// Classifies a flow against each family in turn; the first family with a
/// non-constant coloring supplies the witness.
pub fn classify_flow(
    d: &Diagram,
    flow: &GFlow,
    group: &FiniteGroup,
    families: &[GFamily],
    budget: u64,
) -> Result<FlowClassification> {
    check_groups(group, families)?;
    for fam in families {
        if let Some(witness) = nontrivial_witness(d, flow, fam, budget)? {
            return Ok(FlowClassification {
                flow: flow.clone(),
                status: FlowStatus::Nontrivial { family: fam.name().to_string(), witness },
            });
        }
    }
    Ok(FlowClassification { flow: flow.clone(), status: FlowStatus::TrivialRelative })
}

/// Classifies every flow, in enumeration order.
pub fn classify_flows(d: &Diagram, group: &FiniteGroup, families: &[GFamily], budget: u64) -> Result<Vec<FlowClassification>> {
    check_groups(group, families)?;
    enumerate_flows(d, group, budget)?
        .par_iter()
        .map(|f| classify_flow(d, f, group, families, budget))
        .collect()
}

/// Number of flows that are trivial relative to `families`. This is an
/// upper bound for the number of trivial coloring flows.
pub fn count_trivial_flows(d: &Diagram, group: &FiniteGroup, families: &[GFamily], budget: u64) -> Result<usize> {
    Ok(classify_flows(d, group, families, budget)?
        .iter()
        .filter(|c| c.status == FlowStatus::TrivialRelative)
        .count())
}

/// One line of a flow report.
pub fn flow_report_row(index: usize, class: &FlowClassification, group: &FiniteGroup) -> String {
    let image: Vec<String> = flow_image(&class.flow, group).iter().map(|g| g.to_string()).collect();
    format!("flow {index}: {} image={{{}}} status={}", class.flow, image.join(","), class.status)
}
