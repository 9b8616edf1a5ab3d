//! Permutations of small degree and brute-force algorithms on fully
//! materialized permutation groups.
//!
//! Permutations act on the right: `x^(g*h) = (x^g)^h`, so in a product the
//! left factor is applied first. Conjugation is `g^x = x^-1 * g * x`.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::fmt;
use std::ops::Mul;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element-count cap applied by [`closure`] callers inside the crate.
pub const DEFAULT_CLOSURE_CAP: usize = 100_000;

static CLOSURE_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_CLOSURE_CAP);

/// Current cap used for internal group closures.
pub fn closure_cap() -> usize {
    CLOSURE_CAP.load(Ordering::Relaxed)
}

/// Overrides the cap used for internal group closures (process-wide).
pub fn set_closure_cap(cap: usize) {
    CLOSURE_CAP.store(cap.max(1), Ordering::Relaxed);
}

/// A bijection of `{0, .., degree-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<u16>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images.iter().map(|&x| x as usize).collect()
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from its image list, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > u16::MAX as usize {
            return Err(Error::Parse(format!("bad permutation degree {n}")));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Parse(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u16).collect(),
        })
    }

    /// Builds a permutation from 0-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree || touched[x] {
                    return Err(Error::Parse(format!("bad cycle {cycle:?}")));
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    /// Permutation from raw `u16` images; the caller guarantees bijectivity.
    pub(crate) fn from_raw(images: Vec<u16>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &x)| i == x as usize)
        });
        Permutation { images }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u16;
        }
        Permutation { images }
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    /// `x^-1 * self * x`.
    pub fn conjugate_by(&self, x: &Permutation) -> Permutation {
        let mut images = vec![0u16; self.degree()];
        // point a^x is sent to (a^self)^x
        for (a, &b) in self.images.iter().enumerate() {
            images[x.images[a] as usize] = x.images[b as usize];
        }
        Permutation { images }
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .zip(&other.images)
            .all(|(&a, &b)| other.images[a as usize] == self.images[b as usize])
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| acc.lcm(&c.len()))
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    /// 1-based cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A sorted set of element indices into a [`GroupView`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementSet(Vec<usize>);

impl ElementSet {
    pub fn new() -> Self {
        ElementSet(Vec::new())
    }

    pub fn singleton(i: usize) -> Self {
        ElementSet(vec![i])
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.iter().all(|i| other.contains(i))
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet(self.iter().filter(|&i| other.contains(i)).collect())
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        self.iter().chain(other.iter()).collect()
    }

    /// Membership mask over `0..size`.
    pub fn mask(&self, size: usize) -> Vec<bool> {
        let mut m = vec![false; size];
        for i in self.iter() {
            m[i] = true;
        }
        m
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        ElementSet(v)
    }
}

/// A permutation group stored as its full element table.
///
/// Elements are listed in breadth-first order from the identity, expanding
/// each element by right multiplication with the generators in the order
/// given. The identity is always at index 0.
#[derive(Clone)]
pub struct GroupView {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    inverses: Vec<usize>,
}

impl fmt::Debug for GroupView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupView")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Full element table of the group generated by `generators`.
pub fn closure(generators: &[Permutation], cap: usize) -> Result<GroupView> {
    let degree = generators.first().ok_or(Error::NoGenerators)?.degree();
    closure_with_degree(degree, generators, cap)
}

/// Like [`closure`] but accepts an empty generator list (trivial group).
pub fn closure_with_degree(
    degree: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<GroupView> {
    for g in generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
    }
    let id = Permutation::identity(degree);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::new();
    index.insert(id, 0usize);
    let mut head = 0;
    while head < elements.len() {
        for g in generators {
            let next = elements[head].then(g);
            if !index.contains_key(&next) {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                index.insert(next.clone(), elements.len());
                elements.push(next);
            }
        }
        head += 1;
    }
    let inverses = elements.iter().map(|e| index[&e.inverse()]).collect();
    Ok(GroupView {
        degree,
        generators: generators.to_vec(),
        elements,
        index,
        inverses,
    })
}

/// Result of the action of a group on the right cosets of a subgroup.
#[derive(Clone, Debug)]
pub struct CosetAction {
    /// Coset number of each group element (coset `H*x` for element `x`).
    pub coset_of: Vec<usize>,
    /// First element (in group order) of each coset; coset 0 is `H` itself.
    pub representatives: Vec<usize>,
    /// Action of every group element on the cosets.
    pub images: Vec<Permutation>,
    /// Elements fixing every coset (the core of the subgroup).
    pub kernel: ElementSet,
}

impl CosetAction {
    pub fn degree(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel.len() == 1
    }
}

impl GroupView {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    /// Index of `elements[i] * elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].then(&self.elements[j])]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverses[i]
    }

    /// Index of `elements[x]^-1 * elements[i] * elements[x]`.
    pub fn conj(&self, i: usize, x: usize) -> usize {
        self.index[&self.elements[i].conjugate_by(&self.elements[x])]
    }

    pub fn all(&self) -> ElementSet {
        ElementSet((0..self.order()).collect())
    }

    pub fn trivial(&self) -> ElementSet {
        ElementSet::singleton(0)
    }

    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    pub fn element_order(&self, i: usize) -> usize {
        self.elements[i].order()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(k, a)| self.generators[k + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Indices of the given permutations; fails if any lies outside the group.
    pub fn indices_of(&self, perms: &[Permutation]) -> Result<ElementSet> {
        perms
            .iter()
            .map(|p| self.index_of(p).ok_or(Error::ElementNotInGroup))
            .collect()
    }

    /// Subgroup generated by the given elements, as parent indices.
    pub fn subgroup_generated(&self, gens: &[usize]) -> ElementSet {
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        let mut members = vec![0usize];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                }
            }
            head += 1;
        }
        members.into_iter().collect()
    }

    /// Materializes a subset of the group as its own view.
    pub fn subgroup_view(&self, gens: &[usize]) -> Result<GroupView> {
        let perms: Vec<Permutation> = gens.iter().map(|&i| self.elements[i].clone()).collect();
        closure_with_degree(self.degree, &perms, closure_cap())
    }

    /// True when `set` contains the identity and is closed under products.
    pub fn is_subgroup(&self, set: &ElementSet) -> bool {
        if !set.contains(0) {
            return false;
        }
        let mask = set.mask(self.order());
        set.iter().all(|a| set.iter().all(|b| mask[self.mul(a, b)]))
    }

    pub fn is_normal(&self, set: &ElementSet) -> bool {
        let mask = set.mask(self.order());
        self.generators
            .iter()
            .all(|g| set.iter().all(|h| mask[self.index[&self.elements[h].conjugate_by(g)]]))
    }

    /// Conjugacy classes, each sorted, listed by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes = Vec::new();
        for start in 0..self.order() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            let mut members = vec![start];
            let mut head = 0;
            while head < members.len() {
                let x = &self.elements[members[head]];
                for g in &self.generators {
                    let y = self.index[&x.conjugate_by(g)];
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y);
                    }
                }
                head += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }

    /// Conjugacy class of a single element.
    pub fn conjugacy_class(&self, i: usize) -> ElementSet {
        let mut mask = vec![false; self.order()];
        mask[i] = true;
        let mut members = vec![i];
        let mut head = 0;
        while head < members.len() {
            let x = &self.elements[members[head]];
            for g in &self.generators {
                let y = self.index[&x.conjugate_by(g)];
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                }
            }
            head += 1;
        }
        members.into_iter().collect()
    }

    pub fn centralizer(&self, x: &Permutation) -> Result<ElementSet> {
        let i = self.index_of(x).ok_or(Error::ElementNotInGroup)?;
        Ok(self.centralizer_of(i))
    }

    pub fn centralizer_of(&self, i: usize) -> ElementSet {
        let x = &self.elements[i];
        (0..self.order())
            .filter(|&j| x.commutes_with(&self.elements[j]))
            .collect()
    }

    /// Elements commuting with every element of `set`.
    pub fn centralizer_of_set(&self, set: &ElementSet) -> ElementSet {
        (0..self.order())
            .filter(|&j| {
                set.iter()
                    .all(|s| self.elements[s].commutes_with(&self.elements[j]))
            })
            .collect()
    }

    pub fn center(&self) -> ElementSet {
        (0..self.order())
            .filter(|&j| self.generators.iter().all(|g| g.commutes_with(&self.elements[j])))
            .collect()
    }

    /// Commutator subgroup: normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> Result<GroupView> {
        let gens = &self.generators;
        let mut sub_gens: Vec<Permutation> = Vec::new();
        for a in gens {
            for b in gens {
                let c = a.inverse().then(&b.inverse()).then(a).then(b);
                if !c.is_identity() && !sub_gens.contains(&c) {
                    sub_gens.push(c);
                }
            }
        }
        let cap = closure_cap();
        let mut sub = closure_with_degree(self.degree, &sub_gens, cap)?;
        loop {
            let mut extra = Vec::new();
            for s in sub.generators() {
                for g in gens {
                    let c = s.conjugate_by(g);
                    if !sub.contains(&c) && !extra.contains(&c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return Ok(sub);
            }
            sub_gens.extend(extra);
            sub = closure_with_degree(self.degree, &sub_gens, cap)?;
        }
    }

    /// Derived series starting with the group itself, ending at the first repeat.
    pub fn derived_series(&self) -> Result<Vec<GroupView>> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().expect("series is non-empty");
            if last.order() == 1 {
                return Ok(series);
            }
            let next = last.derived_subgroup()?;
            if next.order() == last.order() {
                return Ok(series);
            }
            series.push(next);
        }
    }

    pub fn is_soluble(&self) -> Result<bool> {
        Ok(self
            .derived_series()?
            .last()
            .map(|g| g.order() == 1)
            .unwrap_or(true))
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            for g in &self.generators {
                let y = g.image(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            head += 1;
        }
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    pub fn stabilizer(&self, point: usize) -> ElementSet {
        (0..self.order())
            .filter(|&i| self.elements[i].image(point) == point)
            .collect()
    }

    pub fn setwise_stabilizer(&self, points: &[usize]) -> ElementSet {
        let mut mask = vec![false; self.degree];
        for &x in points {
            mask[x] = true;
        }
        (0..self.order())
            .filter(|&i| points.iter().all(|&x| mask[self.elements[i].image(x)]))
            .collect()
    }

    /// Right-coset action on `H\G`, with `H` itself as coset 0.
    pub fn coset_action(&self, h: &ElementSet) -> Result<CosetAction> {
        if !self.is_subgroup(h) {
            return Err(Error::NotASubgroup);
        }
        let n = self.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut representatives = Vec::new();
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let c = representatives.len();
            representatives.push(x);
            for hh in h.iter() {
                coset_of[self.mul(hh, x)] = c;
            }
        }
        let images: Vec<Permutation> = (0..n)
            .map(|g| {
                Permutation::from_raw(
                    representatives
                        .iter()
                        .map(|&r| coset_of[self.mul(r, g)] as u16)
                        .collect(),
                )
            })
            .collect();
        let kernel = (0..n).filter(|&g| images[g].is_identity()).collect();
        Ok(CosetAction {
            coset_of,
            representatives,
            images,
            kernel,
        })
    }

    /// Intersection of all conjugates of `h`, computed directly.
    pub fn core(&self, h: &ElementSet) -> ElementSet {
        let mut core = h.clone();
        for x in 0..self.order() {
            let conj: ElementSet = h.iter().map(|i| self.conj(i, x)).collect();
            core = core.intersection(&conj);
            if core.len() == 1 {
                break;
            }
        }
        core
    }

    /// Smallest block containing `0` and `beta` (union-find closure).
    pub fn minimal_block(&self, beta: usize) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.degree).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut queue = VecDeque::new();
        if beta != 0 {
            parent[beta] = 0;
            queue.push_back((0usize, beta));
        }
        while let Some((a, b)) = queue.pop_front() {
            for g in &self.generators {
                let (x, y) = (g.image(a), g.image(b));
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
                    parent[hi] = lo;
                    queue.push_back((x, y));
                }
            }
        }
        let root = find(&mut parent, 0);
        (0..self.degree)
            .filter(|&x| find(&mut parent, x) == root)
            .collect()
    }

    /// All distinct nontrivial minimal blocks `{0, beta}^G`, smallest first.
    pub fn blocks_containing_zero(&self) -> Result<Vec<Vec<usize>>> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for beta in 1..self.degree {
            let block = self.minimal_block(beta);
            if block.len() < self.degree && !blocks.contains(&block) {
                blocks.push(block);
            }
        }
        blocks.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(blocks)
    }

    /// A minimal nontrivial block containing point 0, or `None` if primitive.
    pub fn block_system(&self) -> Result<Option<Vec<usize>>> {
        Ok(self.blocks_containing_zero()?.into_iter().next())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn sym(n: usize) -> GroupView {
        let gens = vec![cyc(n, &[&[0, 1]]), cyc(n, &[&(0..n).collect::<Vec<_>>()])];
        closure(&gens, DEFAULT_CLOSURE_CAP).unwrap()
    }

    #[test]
    fn composition_applies_left_factor_first() {
        let a = cyc(3, &[&[0, 1]]);
        let b = cyc(3, &[&[1, 2]]);
        // 0 -a-> 1 -b-> 2
        assert_eq!((&a * &b).image(0), 2);
        assert_eq!(a.then(&b).inverse(), b.inverse().then(&a.inverse()));
        let c = b.conjugate_by(&a);
        assert_eq!(c, a.inverse().then(&b).then(&a));
    }

    #[test]
    fn cycle_notation_is_one_based() {
        assert_eq!(cyc(3, &[&[0, 1, 2]]).to_string(), "(1 2 3)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
        let p: Permutation = serde_json::from_str("[1,2,0]").unwrap();
        assert_eq!(p, cyc(3, &[&[0, 1, 2]]));
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1,2,0]");
        assert!(serde_json::from_str::<Permutation>("[0,0,1]").is_err());
    }

    #[test]
    fn closure_orders() {
        let g = closure(&[cyc(3, &[&[0, 1, 2]])], 10).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.element(0).is_identity());
        assert_eq!(sym(4).order(), 24);
    }

    #[test]
    fn closure_cap_is_enforced() {
        let err = closure(&[cyc(5, &[&[0, 1]]), cyc(5, &[&[0, 1, 2, 3, 4]])], 50).unwrap_err();
        assert_eq!(err, Error::CapExceeded { cap: 50 });
        let err = closure(&[cyc(3, &[&[0, 1]]), cyc(4, &[&[0, 1]])], 50).unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch { .. }));
    }

    #[test]
    fn s3_class_sizes() {
        let g = closure(&[cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])], 10).unwrap();
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(g.conjugacy_classes()[0], vec![0]);
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let g = closure(&[cyc(6, &[&[0, 1, 2], &[3, 4]])], 10).unwrap();
        assert!(g.conjugacy_classes().iter().all(|c| c.len() == 1));
        assert!(g.is_abelian());
    }

    #[test]
    fn centralizers() {
        let s4 = sym(4);
        assert_eq!(s4.centralizer(&Permutation::identity(4)).unwrap().len(), 24);
        let x = cyc(4, &[&[0, 2], &[1, 3]]);
        assert_eq!(s4.centralizer(&x).unwrap().len(), 8);
        let c5 = closure(&[cyc(5, &[&[0, 1, 2, 3, 4]])], 10).unwrap();
        assert_eq!(c5.centralizer(&cyc(5, &[&[0, 1, 2, 3, 4]])).unwrap().len(), 5);
        assert_eq!(s4.centralizer(&cyc(5, &[&[0, 1]])), Err(Error::ElementNotInGroup));
        for (i, class) in s4.conjugacy_classes().iter().enumerate() {
            let c = s4.centralizer_of(class[0]);
            assert_eq!(class.len() * c.len(), 24, "class {i}");
        }
    }

    #[test]
    fn solubility() {
        assert!(sym(4).is_soluble().unwrap());
        assert!(!sym(5).is_soluble().unwrap());
        assert_eq!(sym(5).derived_subgroup().unwrap().order(), 60);
        assert_eq!(sym(4).derived_subgroup().unwrap().order(), 12);
    }

    #[test]
    fn coset_action_extremes() {
        let s3 = sym(3);
        let whole = s3.coset_action(&s3.all()).unwrap();
        assert_eq!(whole.degree(), 1);
        assert_eq!(whole.kernel.len(), 6);
        let reg = s3.coset_action(&s3.trivial()).unwrap();
        assert_eq!(reg.degree(), 6);
        assert!(reg.is_faithful());
        // a transposition together with a 3-cycle is not closed
        let t = s3.index_of(&cyc(3, &[&[0, 1]])).unwrap();
        let c = s3.index_of(&cyc(3, &[&[0, 1, 2]])).unwrap();
        let bad: ElementSet = [0, t, c].into_iter().collect();
        assert_eq!(s3.coset_action(&bad).unwrap_err(), Error::NotASubgroup);
    }

    #[test]
    fn kernel_equals_core() {
        let s4 = sym(4);
        for x in 0..s4.order() {
            let h = s4.subgroup_generated(&[x]);
            let action = s4.coset_action(&h).unwrap();
            assert_eq!(action.kernel, s4.core(&h));
        }
        let v4: ElementSet = s4
            .indices_of(&[
                Permutation::identity(4),
                cyc(4, &[&[0, 1], &[2, 3]]),
                cyc(4, &[&[0, 2], &[1, 3]]),
                cyc(4, &[&[0, 3], &[1, 2]]),
            ])
            .unwrap();
        assert_eq!(s4.core(&v4), v4);
    }

    #[test]
    fn blocks() {
        assert_eq!(sym(5).block_system().unwrap(), None);
        assert_eq!(sym(3).block_system().unwrap(), None);
        let c6 = closure(&[cyc(6, &[&[0, 1, 2, 3, 4, 5]])], 10).unwrap();
        let b = c6.block_system().unwrap().unwrap();
        assert!(b.len() == 2 || b.len() == 3);
        let not_trans = closure(&[cyc(4, &[&[0, 1]])], 10).unwrap();
        assert_eq!(not_trans.block_system(), Err(Error::NotTransitive));
    }

    #[test]
    fn power_and_order() {
        let p = cyc(7, &[&[0, 1, 2], &[3, 4, 5, 6]]);
        assert_eq!(p.order(), 12);
        assert!(p.pow(12).is_identity());
        assert_eq!(p.pow(-1), p.inverse());
        assert_eq!(p.pow(5), p.then(&p).then(&p).then(&p).then(&p));
    }
}
