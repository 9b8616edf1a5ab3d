//! Loop folders `(G, H, T)`, envelopes, and the structural lemmas about them.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::loops::LoopTable;
use crate::perm::{closure_cap, closure_with_degree, CosetAction, ElementSet, GroupView, Permutation};

/// A triple `(G, H, T)` with `H` and `T` stored as indices into `G`.
#[derive(Clone, Debug)]
pub struct LoopFolder {
    pub group: Arc<GroupView>,
    pub h: ElementSet,
    pub t: ElementSet,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FolderReport {
    pub order: usize,
    pub index: usize,
    pub contains_identity: bool,
    /// `T` is a transversal of `H^g\G` for every conjugate, checked directly.
    pub literal_transversal: bool,
    /// `T` acts sharply transitively on the cosets of `H`.
    pub sharply_transitive: bool,
    pub is_folder: bool,
    /// `T` is a union of conjugacy classes.
    pub is_rcc: bool,
    pub is_faithful: bool,
    pub generates: bool,
}

impl LoopFolder {
    pub fn new(group: Arc<GroupView>, h: ElementSet, t: ElementSet) -> Result<Self> {
        if !group.is_subgroup(&h) {
            return Err(Error::NotASubgroup);
        }
        if t.iter().any(|i| i >= group.order()) {
            return Err(Error::ElementNotInGroup);
        }
        Ok(LoopFolder { group, h, t })
    }

    pub fn order(&self) -> usize {
        self.t.len()
    }

    pub fn index(&self) -> usize {
        self.group.order() / self.h.len()
    }

    pub fn coset_action(&self) -> CosetAction {
        self.group
            .coset_action(&self.h)
            .expect("H checked to be a subgroup at construction")
    }

    /// Checks the transversal condition against every conjugate `H^g`.
    pub fn literal_transversal(&self) -> bool {
        let g = &*self.group;
        if !self.t.contains(0) || self.t.len() != self.index() {
            return false;
        }
        let ts = self.t.as_slice();
        // t' t^-1 for all ordered pairs of distinct elements
        let quotients: Vec<usize> = ts
            .iter()
            .flat_map(|&a| ts.iter().filter(move |&&b| b != a).map(move |&b| g.mul(a, g.inv(b))))
            .collect();
        // H^(hx) = H^x, so coset representatives suffice
        let action = self.coset_action();
        let mut mask = vec![false; g.order()];
        for &x in &action.representatives {
            let conj: Vec<usize> = self.h.iter().map(|h| g.conj(h, x)).collect();
            for &c in &conj {
                mask[c] = true;
            }
            let bad = quotients.iter().any(|&q| mask[q]);
            for &c in &conj {
                mask[c] = false;
            }
            if bad {
                return false;
            }
        }
        true
    }

    pub fn sharply_transitive_with(&self, action: &CosetAction) -> bool {
        let n = action.degree();
        if !self.t.contains(0) || self.t.len() != n {
            return false;
        }
        let mut hit = vec![false; n * n];
        for t in self.t.iter() {
            let img = &action.images[t];
            for src in 0..n {
                let cell = src * n + img.image(src);
                if std::mem::replace(&mut hit[cell], true) {
                    return false;
                }
            }
        }
        true
    }

    pub fn sharply_transitive(&self) -> bool {
        self.sharply_transitive_with(&self.coset_action())
    }

    /// `T` closed under conjugation by the generators of `G`.
    pub fn t_is_invariant(&self) -> bool {
        let g = &*self.group;
        let gens = g.generator_indices();
        self.t.iter().all(|t| gens.iter().all(|&x| self.t.contains(g.conj(t, x))))
    }

    pub fn generates(&self) -> bool {
        self.group.subgroup_generated(self.t.as_slice()).len() == self.group.order()
    }

    pub fn validate(&self) -> FolderReport {
        let action = self.coset_action();
        let literal = self.literal_transversal();
        FolderReport {
            order: self.order(),
            index: action.degree(),
            contains_identity: self.t.contains(0),
            literal_transversal: literal,
            sharply_transitive: self.sharply_transitive_with(&action),
            is_folder: literal,
            is_rcc: self.t_is_invariant(),
            is_faithful: action.is_faithful(),
            generates: self.generates(),
        }
    }
}

/// Validates `(G, H, T)`; fails only if `H` is not a subgroup.
pub fn validate_folder(group: Arc<GroupView>, h: ElementSet, t: ElementSet) -> Result<FolderReport> {
    Ok(LoopFolder::new(group, h, t)?.validate())
}

/// The loop on `H\G` with transversal `T`; element `i` is the `i`-th member
/// of `T` in group order, so the identity is element 0.
pub fn loop_from_folder(f: &LoopFolder) -> Result<LoopTable> {
    loop_from_folder_with(f, &f.coset_action())
}

pub fn loop_from_folder_with(f: &LoopFolder, action: &CosetAction) -> Result<LoopTable> {
    let n = action.degree();
    if !f.t.contains(0) || f.t.len() != n {
        return Err(Error::NotAFolder(format!(
            "|T| = {} but |G:H| = {n}",
            f.t.len()
        )));
    }
    let g = &*f.group;
    let ts = f.t.as_slice();
    let mut element_of_coset = vec![usize::MAX; n];
    for (i, &t) in ts.iter().enumerate() {
        let c = action.coset_of[t];
        if element_of_coset[c] != usize::MAX {
            return Err(Error::NotAFolder("T meets a coset of H twice".into()));
        }
        element_of_coset[c] = i;
    }
    let rows = ts
        .iter()
        .map(|&a| {
            ts.iter()
                .map(|&b| element_of_coset[action.coset_of[g.mul(a, b)]])
                .collect()
        })
        .collect();
    LoopTable::from_rows(rows).map_err(|e| Error::NotAFolder(e.to_string()))
}

/// Right multiplication group, stabilizer of the identity, right translations.
pub fn envelope_of_loop(l: &LoopTable) -> Result<LoopFolder> {
    let rights = l.right_translations();
    let group = closure_with_degree(l.order(), &rights, closure_cap())?;
    let h = group.stabilizer(0);
    let t = group.indices_of(&rights)?;
    LoopFolder::new(Arc::new(group), h, t)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section3Report {
    /// `T` is invariant under conjugation by `H`.
    pub hypothesis_met: bool,
    /// Number of `t` in `T` normalizing `H`.
    pub normalizing_elements: usize,
    /// Every such `t` centralizes `H`.
    pub normalizers_centralize: bool,
    /// `|K0 : H|` for `K0 = <H, G'>`.
    pub k0_index: usize,
    pub max_class_length: usize,
    /// Class lengths of `T` bounded by `|K : H|` for `K0` and every supplied `K`.
    pub class_bound_holds: bool,
    /// Supplied subgroups not containing `H G'`.
    pub rejected_k: usize,
}

impl Section3Report {
    pub fn passes(&self) -> bool {
        self.normalizers_centralize && (!self.hypothesis_met || self.class_bound_holds)
    }
}

/// Checks on a folder: normalizing elements of `T` centralize `H`, and
/// for RCC folders the class lengths of `T` are bounded by `|K:H|` whenever
/// `H G' <= K`.
pub fn check_section3_lemmas(f: &LoopFolder, extra_k: &[ElementSet]) -> Result<Section3Report> {
    let g = &*f.group;
    let mut report = Section3Report {
        hypothesis_met: f
            .t
            .iter()
            .all(|t| f.h.iter().all(|h| f.t.contains(g.conj(t, h)))),
        normalizers_centralize: true,
        class_bound_holds: true,
        ..Default::default()
    };
    if report.hypothesis_met {
        for t in f.t.iter() {
            let normalizes = f.h.iter().all(|h| f.h.contains(g.conj(h, t)));
            if normalizes {
                report.normalizing_elements += 1;
                if !f.h.iter().all(|h| g.mul(h, t) == g.mul(t, h)) {
                    report.normalizers_centralize = false;
                }
            }
        }
    }
    let derived = g.derived_subgroup()?;
    let derived_gens: Vec<usize> = derived
        .generators()
        .iter()
        .map(|p| g.index_of(p).ok_or(Error::ElementNotInGroup))
        .collect::<Result<_>>()?;
    let mut gens = f.h.as_slice().to_vec();
    gens.extend(derived_gens);
    let k0 = g.subgroup_generated(&gens);
    report.k0_index = k0.len() / f.h.len();
    report.max_class_length = f
        .t
        .iter()
        .map(|t| g.conjugacy_class(t).len())
        .max()
        .unwrap_or(0);
    if f.t_is_invariant() {
        let hg = ElementSet::from_iter(gens.iter().copied());
        let mut bound = report.k0_index;
        for k in extra_k {
            if !g.is_subgroup(k) || !hg.is_subset(k) {
                report.rejected_k += 1;
                continue;
            }
            bound = bound.min(k.len() / f.h.len());
        }
        report.class_bound_holds = report.max_class_length <= bound;
    }
    Ok(report)
}

/// The order-`p` folder `(K1, H1, T1)` cut out by an intermediate subgroup `K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubFolderReport {
    pub t1_size: usize,
    pub k1_order: usize,
    pub h1_order: usize,
    pub is_rcc_folder: bool,
    pub k1_abelian: bool,
    pub k1_normal_in_k: bool,
    /// `K = H K1`.
    pub k_is_h_k1: bool,
    pub h1_normal_in_k: bool,
}

impl SubFolderReport {
    pub fn passes(&self) -> bool {
        self.is_rcc_folder
            && self.k1_abelian
            && self.k1_normal_in_k
            && self.k_is_h_k1
            && self.h1_normal_in_k
    }
}

pub fn subfolder_report(f: &LoopFolder, k: &ElementSet) -> Result<SubFolderReport> {
    let g = &*f.group;
    if !g.is_subgroup(k) || !f.h.is_subset(k) {
        return Err(Error::NotASubgroup);
    }
    let t1: ElementSet = f.t.iter().filter(|&t| k.contains(t)).collect();
    let k1 = g.subgroup_generated(t1.as_slice());
    let h1 = f.h.intersection(&k1);
    let view = Arc::new(g.subgroup_view(t1.as_slice())?);
    let local = |set: &ElementSet| -> Result<ElementSet> {
        set.iter()
            .map(|i| view.index_of(g.element(i)).ok_or(Error::ElementNotInGroup))
            .collect()
    };
    let sub = LoopFolder::new(view.clone(), local(&h1)?, local(&t1)?)?;
    let rep = sub.validate();
    let normal_in_k = |s: &ElementSet| s.iter().all(|x| k.iter().all(|y| s.contains(g.conj(x, y))));
    Ok(SubFolderReport {
        t1_size: t1.len(),
        k1_order: k1.len(),
        h1_order: h1.len(),
        is_rcc_folder: rep.is_folder && rep.is_rcc && rep.order == k.len() / f.h.len(),
        k1_abelian: view.is_abelian(),
        k1_normal_in_k: normal_in_k(&k1),
        k_is_h_k1: f.h.len() * k1.len() == k.len() * h1.len(),
        h1_normal_in_k: normal_in_k(&h1),
    })
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    degree: usize,
    generators: Vec<Permutation>,
}

#[derive(Serialize, Deserialize)]
pub struct FolderJson {
    group: GroupJson,
    #[serde(rename = "H")]
    h: ElementSet,
    #[serde(rename = "T")]
    t: ElementSet,
}

impl From<&LoopFolder> for FolderJson {
    fn from(f: &LoopFolder) -> Self {
        FolderJson {
            group: GroupJson {
                degree: f.group.degree(),
                generators: f.group.generators().to_vec(),
            },
            h: f.h.clone(),
            t: f.t.clone(),
        }
    }
}

impl FolderJson {
    /// Rebuilds the folder; indices refer to the deterministic closure order.
    pub fn into_folder(self) -> Result<LoopFolder> {
        let group = closure_with_degree(self.group.degree, &self.group.generators, closure_cap())?;
        LoopFolder::new(Arc::new(group), self.h, self.t)
    }
}
