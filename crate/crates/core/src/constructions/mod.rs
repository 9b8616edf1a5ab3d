//! Every RCC loop of order `2p`: wreath-type loops from involution labels and
//! affine-type loops from a search over block-swapping elements.

mod case_a;
mod case_bc;
mod structure;

pub use case_a::{case_a_loop, case_a_representatives, case_a_slow, CaseAContext};
pub use case_bc::{case_bc_search, has_odd_direct_complement};
pub use structure::{verify_entry, verify_structure, EntryStructure, StructureReport};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counting::total_rcc_count;
use crate::error::{Error, Result};
use crate::inventory::{Case, InventoryEntry, IsoInventory, Label};
use crate::loops::classify;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    /// Build and validate every loop, compare counts with the formula.
    CountsOnly,
    /// Additionally fingerprint everything and prove pairwise non-isomorphism.
    FullIso,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseCounts {
    pub case_a: u64,
    pub case_b: u64,
    pub case_c: u64,
}

impl CaseCounts {
    pub fn total(&self) -> u64 {
        self.case_a + self.case_b + self.case_c
    }
}

fn check_counts(p: u64, found: CaseCounts) -> Result<()> {
    let split = total_rcc_count(p)?
        .split
        .expect("odd primes have a case split");
    let expected = (split.case_a, split.case_b, split.case_c);
    if expected != (BigUint::from(found.case_a), found.case_b, found.case_c) {
        return Err(Error::CountMismatch {
            what: format!("RCC loops of order {}", 2 * p),
            expected: format!("({}, {}, {})", expected.0, expected.1, expected.2),
            found: format!("({}, {}, {})", found.case_a, found.case_b, found.case_c),
        });
    }
    Ok(())
}

/// Builds every loop without keeping the tables, checking that each is RCC
/// and that the counts match the formula.
pub fn count_2p(p: u64) -> Result<CaseCounts> {
    let ctx = CaseAContext::new(p)?;
    let labels = case_a_representatives(p)?;
    let case_a = labels
        .par_iter()
        .map(|label| {
            let (_, l) = ctx.build(label, false)?;
            if !l.is_rcc() {
                return Err(Error::StructureViolation(format!("{label:?} gave a non-RCC loop")));
            }
            Ok(())
        })
        .collect::<Result<Vec<()>>>()?
        .len() as u64;
    let bc = case_bc_search(p)?;
    let case_b = bc.iter().filter(|e| e.0.case_tag == Case::B).count() as u64;
    let counts = CaseCounts {
        case_a,
        case_b,
        case_c: bc.len() as u64 - case_b,
    };
    check_counts(p, counts)?;
    Ok(counts)
}

/// The inventory of RCC loops of order `2p`, in case order a, b, c and label
/// order within a case.
pub fn enumerate_2p(p: u64, mode: VerifyMode) -> Result<IsoInventory> {
    let full = mode == VerifyMode::FullIso;
    let ctx = CaseAContext::new(p)?;
    let labels = case_a_representatives(p)?;
    let mut entries: Vec<InventoryEntry> = labels
        .into_par_iter()
        .map(|label| {
            let (_, l) = ctx.build(&label, full)?;
            Ok(InventoryEntry::new(Label::CaseA(label), Some(Case::A), l))
        })
        .collect::<Result<_>>()?;
    for (label, _, l) in case_bc_search(p)? {
        let case = label.case_tag;
        entries.push(InventoryEntry::new(Label::CaseBc(label), Some(case), l));
    }
    if let Some(e) = entries.iter().find(|e| !e.flags.rcc) {
        return Err(Error::StructureViolation(format!("{} is not RCC", e.label)));
    }
    let mut inv = IsoInventory {
        order: 2 * p as usize,
        p: Some(p),
        entries,
    };
    check_counts(
        p,
        CaseCounts {
            case_a: inv.count_case(Case::A) as u64,
            case_b: inv.count_case(Case::B) as u64,
            case_c: inv.count_case(Case::C) as u64,
        },
    )?;
    if full {
        inv.entries
            .par_iter_mut()
            .map(|e| e.enrich())
            .collect::<Result<Vec<()>>>()?;
        let tables: Vec<_> = inv.tables().cloned().collect();
        if let Some(c) = classify(&tables)?.into_iter().find(|c| c.members.len() > 1) {
            return Err(Error::IsoCollision {
                first: inv.entries[c.members[0]].label.to_string(),
                second: inv.entries[c.members[1]].label.to_string(),
            });
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_inventory() {
        let inv = enumerate_2p(3, VerifyMode::FullIso).unwrap();
        assert_eq!(inv.len(), 5);
        assert_eq!(
            (inv.count_case(Case::A), inv.count_case(Case::B), inv.count_case(Case::C)),
            (3, 1, 1)
        );
        assert_eq!(inv.entries.iter().filter(|e| e.flags.associative).count(), 2);
        assert!(inv.entries.iter().all(|e| e.fingerprint.is_some()));
        let names: Vec<String> = inv.table_files().into_iter().map(|f| f.0).collect();
        assert_eq!(names[0], "rcc_2p_3_a_0.tbl");
        assert_eq!(names[4], "rcc_2p_3_c_0.tbl");
    }

    #[test]
    fn count_only_matches_formula() {
        for p in [3u64, 5, 7] {
            let c = count_2p(p).unwrap();
            let inv = enumerate_2p(p, VerifyMode::CountsOnly).unwrap();
            assert_eq!(c.total(), inv.len() as u64);
        }
    }
}
