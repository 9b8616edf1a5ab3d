use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::LoopTable;
use crate::error::Result;
use crate::perm::{closure_cap, closure_with_degree};

/// Isomorphism invariants of a loop.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: usize,
    /// Sorted orders of the right translations.
    pub translation_orders: Vec<usize>,
    /// Order of the right multiplication group.
    pub mlt_order: usize,
    /// Sorted conjugacy class sizes of the right multiplication group.
    pub class_sizes: Vec<usize>,
    pub commuting_pairs: usize,
    pub associating_triples: usize,
}

pub fn fingerprint(l: &LoopTable) -> Result<Fingerprint> {
    let n = l.order();
    let rights = l.right_translations();
    let mut translation_orders: Vec<usize> = rights.iter().map(|r| r.order()).collect();
    translation_orders.sort_unstable();
    let mlt = closure_with_degree(n, &rights, closure_cap())?;
    let mut class_sizes: Vec<usize> = mlt.conjugacy_classes().iter().map(|c| c.len()).collect();
    class_sizes.sort_unstable();
    let commuting_pairs = (0..n)
        .map(|a| (0..n).filter(|&b| l.mul(a, b) == l.mul(b, a)).count())
        .sum();
    let associating_triples = (0..n)
        .map(|a| {
            let mut k = 0;
            for b in 0..n {
                let ab = l.mul(a, b);
                for c in 0..n {
                    if l.mul(ab, c) == l.mul(a, l.mul(b, c)) {
                        k += 1;
                    }
                }
            }
            k
        })
        .sum();
    Ok(Fingerprint {
        order: n,
        translation_orders,
        mlt_order: mlt.order(),
        class_sizes,
        commuting_pairs,
        associating_triples,
    })
}

/// Per-element invariant preserved by isomorphisms.
fn element_keys(l: &LoopTable) -> Vec<(usize, usize, usize, bool)> {
    let n = l.order();
    (0..n)
        .map(|x| {
            let commuting = (0..n).filter(|&y| l.mul(x, y) == l.mul(y, x)).count();
            (
                l.right_translation(x).order(),
                l.left_translation(x).order(),
                commuting,
                l.mul(x, x) == 0,
            )
        })
        .collect()
}

/// Greedy generating sequence: each element is outside the subloop
/// generated by its predecessors.
fn generating_sequence(l: &LoopTable) -> Vec<usize> {
    let n = l.order();
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut members = vec![0usize];
    let mut gens = Vec::new();
    for x in 1..n {
        if inside[x] {
            continue;
        }
        gens.push(x);
        inside[x] = true;
        members.push(x);
        let mut i = 0;
        while i < members.len() {
            let u = members[i];
            for j in 0..=i {
                let v = members[j];
                for w in [l.mul(u, v), l.mul(v, u)] {
                    if !inside[w] {
                        inside[w] = true;
                        members.push(w);
                    }
                }
            }
            i += 1;
        }
    }
    gens
}

struct Search<'a> {
    a: &'a LoopTable,
    b: &'a LoopTable,
    gens: Vec<usize>,
    keys_a: Vec<(usize, usize, usize, bool)>,
    keys_b: Vec<(usize, usize, usize, bool)>,
    phi: Vec<usize>,
    used: Vec<bool>,
    defined: Vec<usize>,
}

const UNSET: usize = usize::MAX;

impl Search<'_> {
    fn assign(&mut self, x: usize, y: usize) -> bool {
        if self.phi[x] != UNSET {
            return self.phi[x] == y;
        }
        if self.used[y] || self.keys_a[x] != self.keys_b[y] {
            return false;
        }
        self.phi[x] = y;
        self.used[y] = true;
        self.defined.push(x);
        true
    }

    /// Extends `phi` multiplicatively from `defined[start..]`.
    fn propagate(&mut self, start: usize) -> bool {
        let mut i = start;
        while i < self.defined.len() {
            let u = self.defined[i];
            for j in 0..=i {
                let v = self.defined[j];
                let (pu, pv) = (self.phi[u], self.phi[v]);
                if !self.assign(self.a.mul(u, v), self.b.mul(pu, pv))
                    || !self.assign(self.a.mul(v, u), self.b.mul(pv, pu))
                {
                    return false;
                }
            }
            i += 1;
        }
        true
    }

    fn undo(&mut self, len: usize) {
        for x in self.defined.drain(len..) {
            self.used[self.phi[x]] = false;
            self.phi[x] = UNSET;
        }
    }

    fn run(&mut self, k: usize) -> bool {
        if k == self.gens.len() {
            return self.defined.len() == self.a.order();
        }
        let x = self.gens[k];
        for y in 1..self.b.order() {
            let len = self.defined.len();
            if self.assign(x, y) && self.propagate(len) && self.run(k + 1) {
                return true;
            }
            self.undo(len);
        }
        false
    }
}

fn cheap_invariants_match(a: &LoopTable, b: &LoopTable) -> bool {
    if a.order() != b.order() {
        return false;
    }
    let mut ka = element_keys(a);
    let mut kb = element_keys(b);
    ka.sort_unstable();
    kb.sort_unstable();
    ka == kb
}

/// An isomorphism `a -> b` as an image vector, if one exists.
pub fn isomorphism(a: &LoopTable, b: &LoopTable) -> Option<Vec<usize>> {
    if !cheap_invariants_match(a, b) {
        return None;
    }
    let n = a.order();
    let mut s = Search {
        a,
        b,
        gens: generating_sequence(a),
        keys_a: element_keys(a),
        keys_b: element_keys(b),
        phi: vec![UNSET; n],
        used: vec![false; n],
        defined: Vec::with_capacity(n),
    };
    if !s.assign(0, 0) || !s.propagate(0) {
        return None;
    }
    s.run(0).then_some(s.phi)
}

pub fn are_isomorphic(a: &LoopTable, b: &LoopTable) -> bool {
    isomorphism(a, b).is_some()
}

/// One isomorphism class within a classified list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoClass {
    /// Index of the first-found member.
    pub representative: usize,
    pub members: Vec<usize>,
    pub fingerprint: Fingerprint,
}

/// Partitions `loops` into isomorphism classes.
///
/// Classes are sorted by fingerprint (order first), then by first-found index.
pub fn classify(loops: &[LoopTable]) -> Result<Vec<IsoClass>> {
    let fps: Vec<Fingerprint> = loops.par_iter().map(fingerprint).collect::<Result<_>>()?;
    let mut buckets: BTreeMap<&Fingerprint, Vec<usize>> = BTreeMap::new();
    for (i, fp) in fps.iter().enumerate() {
        buckets.entry(fp).or_default().push(i);
    }
    let buckets: Vec<(&Fingerprint, Vec<usize>)> = buckets.into_iter().collect();
    let mut classes: Vec<IsoClass> = buckets
        .into_par_iter()
        .flat_map_iter(|(fp, idx)| {
            let mut local: Vec<IsoClass> = Vec::new();
            for i in idx {
                match local
                    .iter_mut()
                    .find(|c| are_isomorphic(&loops[c.representative], &loops[i]))
                {
                    Some(c) => c.members.push(i),
                    None => local.push(IsoClass {
                        representative: i,
                        members: vec![i],
                        fingerprint: fp.clone(),
                    }),
                }
            }
            local
        })
        .collect();
    classes.sort_by(|x, y| {
        (&x.fingerprint, x.representative).cmp(&(&y.fingerprint, y.representative))
    });
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::cyclic;

    fn klein() -> LoopTable {
        LoopTable::from_fn_unchecked(4, |a, b| a ^ b)
    }

    fn shuffled(l: &LoopTable, seed: u64) -> LoopTable {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let mut phi: Vec<usize> = (1..l.order()).collect();
        phi.shuffle(&mut rng);
        phi.insert(0, 0);
        l.relabel(&phi).unwrap()
    }

    #[test]
    fn c4_not_klein() {
        assert!(!are_isomorphic(&cyclic(4), &klein()));
        assert_ne!(fingerprint(&cyclic(4)).unwrap(), fingerprint(&klein()).unwrap());
    }

    #[test]
    fn relabelled_copies_are_isomorphic() {
        let l = crate::loops::tests::order5_nonassoc();
        for seed in 0..10 {
            let m = shuffled(&l, seed);
            let phi = isomorphism(&l, &m).expect("isomorphic");
            for a in 0..5 {
                for b in 0..5 {
                    assert_eq!(phi[l.mul(a, b)], m.mul(phi[a], phi[b]));
                }
            }
            assert_eq!(fingerprint(&l).unwrap(), fingerprint(&m).unwrap());
        }
    }

    #[test]
    fn classify_groups_of_order_4() {
        let loops = vec![cyclic(4), klein(), shuffled(&cyclic(4), 3), shuffled(&klein(), 1)];
        let classes = classify(&loops).unwrap();
        assert_eq!(classes.len(), 2);
        let mut members: Vec<Vec<usize>> = classes.iter().map(|c| c.members.clone()).collect();
        members.sort();
        assert_eq!(members, vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn fingerprint_of_c6() {
        let fp = fingerprint(&cyclic(6)).unwrap();
        assert_eq!(fp.translation_orders, vec![1, 2, 3, 3, 6, 6]);
        assert_eq!(fp.mlt_order, 6);
        assert_eq!(fp.commuting_pairs, 36);
        assert_eq!(fp.associating_triples, 216);
    }
}
