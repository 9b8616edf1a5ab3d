//! RCC loops of order `q^2 - 1` with right multiplication group `GL(2,q)`:
//! transversal `T = C u Z`, with `C` a class of Singer cycles and `Z` the scalars.

use serde::{Deserialize, Serialize};

use crate::algebra::{gl2_permutation_view, prime_power, Gl2View, Matrix2};
use crate::error::{Error, Result};
use crate::folder::{envelope_of_loop, loop_from_folder, FolderReport, LoopFolder};
use crate::loops::{are_isomorphic, LoopTable};
use crate::perm::{ElementSet, Permutation};

pub const MAX_Q: u64 = 9;

#[derive(Clone, Debug)]
pub struct Gl2Folder {
    pub q: u64,
    pub view: Gl2View,
    pub folder: LoopFolder,
    /// Conjugacy class of the first Singer cycle.
    pub c: ElementSet,
    pub z: ElementSet,
}

fn check_q(q: u64) -> Result<()> {
    if prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    if q < 3 {
        return Err(Error::QTooSmall(q));
    }
    if q > MAX_Q {
        return Err(Error::QTooLarge(q));
    }
    Ok(())
}

/// `{[[a, 0], [b, 1]]}` as element indices.
fn h_subgroup(view: &Gl2View) -> ElementSet {
    let f = &view.gl2.field;
    let one = crate::algebra::FieldElement::ONE;
    let zero = crate::algebra::FieldElement::ZERO;
    f.elements()
        .filter(|&a| a != zero)
        .flat_map(|a| f.elements().map(move |b| Matrix2::new(a, zero, b, one)))
        .map(|m| view.element(&m))
        .collect()
}

fn scalars(view: &Gl2View) -> ElementSet {
    let f = &view.gl2.field;
    f.elements()
        .filter(|&a| a != crate::algebra::FieldElement::ZERO)
        .map(|a| view.element(&Matrix2::scalar(a)))
        .collect()
}

fn singer_elements(view: &Gl2View) -> Vec<usize> {
    let target = (view.gl2.q * view.gl2.q - 1) as usize;
    (0..view.gl2.order())
        .filter(|&m| view.gl2.matrix_order(&view.gl2.matrices[m]) == target)
        .map(|m| view.element_of_matrix[m])
        .collect()
}

pub fn gl2_folder(q: u64) -> Result<Gl2Folder> {
    check_q(q)?;
    let view = gl2_permutation_view(q)?;
    let singer = crate::algebra::gl2::find_singer(&view.gl2)?;
    let c = view.group.conjugacy_class(view.element(&singer));
    let z = scalars(&view);
    let h = h_subgroup(&view);
    let folder = LoopFolder::new(view.group.clone(), h, c.union(&z))?;
    Ok(Gl2Folder {
        q,
        view,
        folder,
        c,
        z,
    })
}

/// Loop built from an alternative Singer class, compared with the pinned one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternativeClass {
    pub singer_classes: usize,
    pub is_folder: bool,
    pub is_rcc: bool,
    pub isomorphic_to_pinned: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gl2Report {
    pub q: u64,
    pub loop_order: usize,
    pub group_order: usize,
    pub folder: FolderReport,
    pub envelope_order: usize,
    /// Envelope order is `(q^2 - 1)(q^2 - q)`.
    pub envelope_order_ok: bool,
    /// The envelope is the coset action of `GL(2,q)`, transported to the loop.
    pub permutation_equivalent: bool,
    pub soluble: bool,
    pub rcc: bool,
    pub lcc: bool,
    /// `|C_G(t)| = q^2 - 1` for every `t` in `C`.
    pub singer_centralizers_ok: bool,
    /// `Z n H = 1` and `C n HZ` is empty.
    pub hz_checks_ok: bool,
    pub alternative: Option<AlternativeClass>,
    pub table: LoopTable,
}

impl Gl2Report {
    pub fn passes(&self) -> bool {
        let f = &self.folder;
        f.is_folder
            && f.sharply_transitive
            && f.is_rcc
            && f.is_faithful
            && f.generates
            && self.envelope_order_ok
            && self.permutation_equivalent
            && self.rcc
            && self.singer_centralizers_ok
            && self.hz_checks_ok
    }
}

/// Conjugates the coset images of the group generators by the coset-to-loop
/// bijection and checks they lie in the envelope of the same order.
fn envelope_equivalent(gf: &Gl2Folder, envelope: &crate::perm::GroupView) -> bool {
    let f = &gf.folder;
    let g = &*f.group;
    let action = f.coset_action();
    let n = action.degree();
    let mut loop_of_coset = vec![0; n];
    for (i, t) in f.t.iter().enumerate() {
        loop_of_coset[action.coset_of[t]] = i;
    }
    envelope.order() == g.order()
        && g.generator_indices().into_iter().all(|x| {
            let img = &action.images[x];
            let mut images = vec![0; n];
            for c in 0..n {
                images[loop_of_coset[c]] = loop_of_coset[img.image(c)];
            }
            Permutation::from_images(images).is_ok_and(|p| envelope.contains(&p))
        })
}

fn alternative_class(gf: &Gl2Folder, pinned: &LoopTable) -> Result<Option<AlternativeClass>> {
    let g = &*gf.folder.group;
    let mut classes: Vec<ElementSet> = Vec::new();
    for s in singer_elements(&gf.view) {
        if !classes.iter().any(|c| c.contains(s)) {
            classes.push(g.conjugacy_class(s));
        }
    }
    let Some(other) = classes.iter().find(|c| **c != gf.c) else {
        return Ok(None);
    };
    let f = LoopFolder::new(gf.folder.group.clone(), gf.folder.h.clone(), other.union(&gf.z))?;
    let r = f.validate();
    let isomorphic = if r.is_folder {
        are_isomorphic(pinned, &loop_from_folder(&f)?)
    } else {
        false
    };
    Ok(Some(AlternativeClass {
        singer_classes: classes.len(),
        is_folder: r.is_folder,
        is_rcc: r.is_rcc,
        isomorphic_to_pinned: isomorphic,
    }))
}

pub fn gl2_loop_report(q: u64) -> Result<Gl2Report> {
    let gf = gl2_folder(q)?;
    let g = &*gf.folder.group;
    let folder = gf.folder.validate();
    let table = loop_from_folder(&gf.folder)?;
    let env = envelope_of_loop(&table)?;
    let expected = ((q * q - 1) * (q * q - q)) as usize;
    let singer_centralizers_ok = gf
        .c
        .iter()
        .all(|t| g.centralizer_of(t).len() == (q * q - 1) as usize);
    let hz: ElementSet = gf
        .folder
        .h
        .iter()
        .flat_map(|h| gf.z.iter().map(move |z| g.mul(h, z)))
        .collect();
    let hz_checks_ok = gf.z.intersection(&gf.folder.h).len() == 1 && gf.c.intersection(&hz).is_empty();
    let alternative = if q <= 5 {
        alternative_class(&gf, &table)?
    } else {
        None
    };
    Ok(Gl2Report {
        q,
        loop_order: table.order(),
        group_order: g.order(),
        folder,
        envelope_order: env.group.order(),
        envelope_order_ok: env.group.order() == expected,
        permutation_equivalent: envelope_equivalent(&gf, &env.group),
        soluble: env.group.is_soluble()?,
        rcc: table.is_rcc(),
        lcc: table.is_lcc(),
        singer_centralizers_ok,
        hz_checks_ok,
        alternative,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        assert_eq!(gl2_folder(2).unwrap_err(), Error::QTooSmall(2));
        assert_eq!(gl2_folder(11).unwrap_err(), Error::QTooLarge(11));
        assert_eq!(gl2_folder(6).unwrap_err(), Error::NotPrimePower(6));
    }

    #[test]
    fn q3_and_q4() {
        let r = gl2_loop_report(3).unwrap();
        assert!(r.passes());
        assert_eq!((r.loop_order, r.envelope_order), (8, 48));
        assert!(r.soluble);
        let r = gl2_loop_report(4).unwrap();
        assert!(r.passes());
        assert_eq!((r.loop_order, r.envelope_order), (15, 180));
        assert!(!r.soluble);
    }

    #[test]
    fn folder_sizes() {
        let gf = gl2_folder(5).unwrap();
        assert_eq!(gf.folder.h.len(), 20);
        assert_eq!(gf.c.len(), 20);
        assert_eq!(gf.z.len(), 4);
        assert_eq!(gf.folder.t.len(), 24);
    }
}
