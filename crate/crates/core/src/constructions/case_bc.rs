use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::affine_context;
use crate::error::{Error, Result};
use crate::folder::{loop_from_folder, LoopFolder};
use crate::inventory::{Case, CaseBCLabel};
use crate::loops::{classify, LoopTable};
use crate::perm::{closure, closure_cap, GroupView};

/// A central involution exists and the odd-order elements form a subgroup of
/// index 2, so that `G = K x C_2` with `|K|` odd.
pub fn has_odd_direct_complement(g: &GroupView) -> bool {
    let central_involution = g.center().iter().any(|z| g.element_order(z) == 2);
    if !central_involution {
        return false;
    }
    let odd: crate::perm::ElementSet = (0..g.order())
        .filter(|&x| g.element_order(x) % 2 == 1)
        .collect();
    2 * odd.len() == g.order() && g.is_subgroup(&odd)
}

/// Folder on `G = <P, tau>` with `H` the stabilizer of point 0 and
/// `T = P u P tau`.
fn candidate(p_gen: &crate::perm::Permutation, tau: &crate::perm::Permutation) -> Result<LoopFolder> {
    let g = Arc::new(closure(&[p_gen.clone(), tau.clone()], closure_cap())?);
    let h = g.stabilizer(0);
    let gen = g.index_of(p_gen).ok_or(Error::ElementNotInGroup)?;
    let tau_i = g.index_of(tau).ok_or(Error::ElementNotInGroup)?;
    let p_set = g.subgroup_generated(&[gen]);
    let t = p_set
        .iter()
        .chain(p_set.iter().map(|x| g.mul(x, tau_i)))
        .collect();
    LoopFolder::new(g, h, t)
}

/// Every block-swapping `tau` of the affine normalizer gives a candidate;
/// valid ones are deduplicated up to isomorphism and tagged. The counts must
/// be `p - r - 1` for case b and `r` for case c.
pub fn case_bc_search(p: u64) -> Result<Vec<(CaseBCLabel, LoopFolder, LoopTable)>> {
    let ac = affine_context(p)?;
    let swapping = ac.block_swapping();
    let built: Vec<Option<(usize, LoopFolder, LoopTable)>> = swapping
        .par_iter()
        .map(|&i| {
            let f = candidate(&ac.p_gen, ac.n_aff.element(i))?;
            let r = f.validate();
            if !(f.group.is_transitive() && r.is_folder && r.is_rcc && r.is_faithful && r.generates) {
                return Ok(None);
            }
            let l = loop_from_folder(&f)?;
            Ok(Some((i, f, l)))
        })
        .collect::<Result<_>>()?;
    let built: Vec<(usize, LoopFolder, LoopTable)> = built.into_iter().flatten().collect();
    let tables: Vec<LoopTable> = built.iter().map(|(_, _, l)| l.clone()).collect();
    let mut reps: Vec<usize> = classify(&tables)?.iter().map(|c| c.representative).collect();
    reps.sort_unstable();
    let mut out: Vec<(CaseBCLabel, LoopFolder, LoopTable)> = reps
        .into_iter()
        .map(|k| {
            let (i, f, l) = built[k].clone();
            let case_tag = if has_odd_direct_complement(&f.group) {
                Case::C
            } else {
                Case::B
            };
            let label = CaseBCLabel {
                p,
                tau_index: i,
                case_tag,
            };
            (label, f, l)
        })
        .collect();
    out.sort_by(|a, b| a.0.case_tag.cmp(&b.0.case_tag).then(a.0.tau_index.cmp(&b.0.tau_index)));
    let nb = out.iter().filter(|e| e.0.case_tag == Case::B).count() as u64;
    let nc = out.len() as u64 - nb;
    if (nb, nc) != (p - ac.r - 1, ac.r) {
        return Err(Error::CountMismatch {
            what: format!("case b/c loops for p = {p}"),
            expected: format!("({}, {})", p - ac.r - 1, ac.r),
            found: format!("({nb}, {nc})"),
        });
    }
    Ok(out)
}
