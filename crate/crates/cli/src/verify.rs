//! The verification grid behind `nsbetti verify`.

use clap::ValueEnum;
use rayon::prelude::*;

use nsbetti::blocks::{verify_blocks, BlockSource, StandardBlocks};
use nsbetti::moduli::{
    intersection_poincare_with, poincare_m12_with, poincare_m21_with, verify_component_with,
};
use nsbetti::pointcount::{Atom, Dimensions, StandardDimensions};
use nsbetti::report::first_coefficient_mismatch;
use nsbetti::weil::verify_kirwan_consistency_with;
use nsbetti::{CheckReport, Component, GenusPair, IntPoly};

use crate::output::ReportRow;

/// Deliberate corruptions for exercising the failure path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Add one to `b_2` of the desingularized Kummer variety.
    KummerBetti,
    /// Declare the Jacobian one dimension too large.
    Dimension,
}

struct CorruptKummer;

impl BlockSource for CorruptKummer {
    fn kummer_desing(&self, g: u32) -> IntPoly {
        &StandardBlocks.kummer_desing(g) + &IntPoly::t_pow(2)
    }
}

struct CorruptDimensions;

impl Dimensions for CorruptDimensions {
    fn atom(&self, a: &Atom) -> i64 {
        match a {
            Atom::Jacobian { genus } => *genus as i64 + 1,
            _ => a.dimension(),
        }
    }
}

fn sources(fault: Option<Fault>) -> (&'static dyn BlockSource, &'static dyn Dimensions) {
    match fault {
        None => (&StandardBlocks, &StandardDimensions),
        Some(Fault::KummerBetti) => (&CorruptKummer, &StandardDimensions),
        Some(Fault::Dimension) => (&StandardBlocks, &CorruptDimensions),
    }
}

/// Every check for one genus pair.
pub fn verify_pair(gp: GenusPair, fault: Option<Fault>) -> CheckReport {
    let (blocks, dims) = sources(fault);
    let mut r = CheckReport::new();
    r.extend_prefixed("g1", verify_blocks(gp.g1, blocks));
    r.extend_prefixed("g2", verify_blocks(gp.g2, blocks));
    for c in Component::ALL {
        r.extend_prefixed(
            &format!("component.{}", c.as_str()),
            verify_component_with(gp, c, blocks),
        );
    }
    match (
        poincare_m12_with(gp, blocks),
        poincare_m21_with(gp, blocks),
        poincare_m12_with(gp.swapped(), blocks),
        intersection_poincare_with(gp, blocks),
    ) {
        (Ok(m12), Ok(m21), Ok(swapped), Ok(ih)) => {
            let w = first_coefficient_mismatch(&swapped, &m21);
            r.record("identity.swap", w.is_none(), w.unwrap_or_default());
            let w = first_coefficient_mismatch(&(&m12 + &m21), &ih);
            r.record("identity.sum", w.is_none(), w.unwrap_or_default());
        }
        _ => {
            r.record("identity.swap", false, "assembly failed");
            r.record("identity.sum", false, "assembly failed");
        }
    }
    r.extend_prefixed("counts", verify_kirwan_consistency_with(gp, blocks, dims));
    r
}

/// Run the grid `3 <= g1, g2 <= grid_max` in parallel; rows sorted by `(g1, g2, check)`.
pub fn run_grid(grid_max: u32, fault: Option<Fault>) -> Vec<ReportRow> {
    let pairs: Vec<GenusPair> = (3..=grid_max)
        .flat_map(|a| (3..=grid_max).map(move |b| GenusPair::new(a, b).unwrap()))
        .collect();
    let mut rows: Vec<ReportRow> = pairs
        .par_iter()
        .flat_map_iter(|&gp| {
            verify_pair(gp, fault)
                .into_checks()
                .into_iter()
                .map(move |c| ReportRow {
                    g1: gp.g1,
                    g2: gp.g2,
                    status: c.status().to_string(),
                    name: c.name,
                    witness: c.witness,
                })
        })
        .collect();
    rows.sort_by(|a, b| (a.g1, a.g2, &a.name).cmp(&(b.g1, b.g2, &b.name)));
    rows
}
