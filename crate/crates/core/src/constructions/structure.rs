use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::has_odd_direct_complement;
use crate::error::{Error, Result};
use crate::folder::{
    check_section3_lemmas, envelope_of_loop, subfolder_report, Section3Report, SubFolderReport,
};
use crate::inventory::{Case, InventoryEntry, IsoInventory, Label};
use crate::perm::{ElementSet, GroupView};

/// Structural facts about one envelope, recomputed from its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryStructure {
    pub label: Label,
    pub case: Option<Case>,
    pub group_order: usize,
    pub soluble: bool,
    /// Size of the block of imprimitivity containing 0 used for `K`.
    pub block_size: Option<usize>,
    /// `K` (stabilizer of that block) has index 2 and contains `H`.
    pub k_index_two: bool,
    /// The envelope has the shape required by the entry's case.
    pub shape_ok: bool,
    /// `<T n K>` is normal of order `p` (cases b and c only).
    pub t_k_normal_order_p: Option<bool>,
    pub section3: Section3Report,
    pub subfolder: Option<SubFolderReport>,
    /// `|H1|` is 1 or `p`, `K1` elementary abelian of order `p` or `p^2`.
    pub k1_structure_ok: bool,
}

impl EntryStructure {
    pub fn passes(&self) -> bool {
        self.soluble
            && self.block_size.is_some()
            && self.k_index_two
            && self.shape_ok
            && self.t_k_normal_order_p.unwrap_or(true)
            && self.section3.hypothesis_met
            && self.section3.passes()
            && self.subfolder.as_ref().is_some_and(|s| s.passes())
            && self.k1_structure_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub p: u64,
    pub entries: Vec<EntryStructure>,
}

impl StructureReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(EntryStructure::passes)
    }
}

fn is_p_power(mut n: usize, p: usize) -> bool {
    while n > 1 && n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Elements of `p`-power order form an elementary abelian normal subgroup of
/// order `p^2`.
fn wreath_shape(g: &GroupView, p: usize) -> bool {
    if g.order() != 2 * p * p {
        return false;
    }
    let sylow: ElementSet = (0..g.order())
        .filter(|&x| is_p_power(g.element_order(x), p))
        .collect();
    sylow.len() == p * p
        && g.is_subgroup(&sylow)
        && g.is_normal(&sylow)
        && sylow.iter().all(|x| x == 0 || g.element_order(x) == p)
        && sylow
            .iter()
            .all(|x| sylow.iter().all(|y| g.mul(x, y) == g.mul(y, x)))
}

/// A normal subgroup of order `p` that is its own centralizer.
fn affine_shape(g: &GroupView, p: usize) -> bool {
    (0..g.order())
        .filter(|&x| g.element_order(x) == p)
        .any(|x| {
            let sub = g.subgroup_generated(&[x]);
            g.is_normal(&sub) && g.centralizer_of(x) == sub
        })
}

pub fn verify_entry(entry: &InventoryEntry, p: u64) -> Result<EntryStructure> {
    let pu = p as usize;
    let env = envelope_of_loop(&entry.table)?;
    let g = &*env.group;
    let block = g
        .blocks_containing_zero()?
        .into_iter()
        .find(|b| b.len() == pu);
    let mut s = EntryStructure {
        label: entry.label.clone(),
        case: entry.case,
        group_order: g.order(),
        soluble: g.is_soluble()?,
        block_size: block.as_ref().map(Vec::len),
        k_index_two: false,
        shape_ok: false,
        t_k_normal_order_p: None,
        section3: check_section3_lemmas(&env, &[])?,
        subfolder: None,
        k1_structure_ok: false,
    };
    s.shape_ok = match entry.case {
        Some(Case::A) => wreath_shape(g, pu),
        Some(Case::B) => affine_shape(g, pu) && !has_odd_direct_complement(g),
        Some(Case::C) => has_odd_direct_complement(g),
        None => true,
    };
    let Some(block) = block else {
        return Ok(s);
    };
    let k = g.setwise_stabilizer(&block);
    s.k_index_two = 2 * k.len() == g.order() && env.h.is_subset(&k);
    if !s.k_index_two {
        return Ok(s);
    }
    s.section3 = check_section3_lemmas(&env, std::slice::from_ref(&k))?;
    let sub = subfolder_report(&env, &k)?;
    let t1: Vec<usize> = env.t.iter().filter(|&t| k.contains(t)).collect();
    let k1 = g.subgroup_generated(&t1);
    let elementary = k1.iter().all(|x| x == 0 || g.element_order(x) == pu);
    s.k1_structure_ok = (sub.h1_order == 1 || sub.h1_order == pu)
        && (sub.k1_order == pu || sub.k1_order == pu * pu)
        && sub.k1_abelian
        && elementary;
    if matches!(entry.case, Some(Case::B | Case::C)) {
        s.t_k_normal_order_p = Some(k1.len() == pu && g.is_normal(&k1));
    }
    s.subfolder = Some(sub);
    Ok(s)
}

/// Recomputes each envelope from its table and checks the structure theorem;
/// any failing entry is a hard error.
pub fn verify_structure(inv: &IsoInventory) -> Result<StructureReport> {
    let p = inv
        .p
        .ok_or_else(|| Error::StructureViolation("inventory is not of order 2p".into()))?;
    let entries: Vec<EntryStructure> = inv
        .entries
        .par_iter()
        .map(|e| verify_entry(e, p))
        .collect::<Result<_>>()?;
    if let Some(bad) = entries.iter().find(|e| !e.passes()) {
        return Err(Error::StructureViolation(format!("{}: {bad:?}", bad.label)));
    }
    Ok(StructureReport { p, entries })
}
