use rayon::prelude::*;

use crate::algebra::{check_odd_prime, wreath_context, WreathContext, MAX_CONTEXT_PRIME};
use crate::counting::involutions;
use crate::error::{Error, Result};
use crate::folder::{loop_from_folder_with, LoopFolder};
use crate::inventory::CaseALabel;
use crate::loops::{classify, LoopTable};
use crate::perm::{CosetAction, ElementSet};

/// Precomputed data for building wreath-type loops at one prime.
pub struct CaseAContext {
    pub wreath: WreathContext,
    h: ElementSet,
    action: CosetAction,
    mul: Vec<u32>,
    /// `pi2^a pi1^b` at `a * p + b`.
    k_elements: Vec<usize>,
    g_prime: Vec<usize>,
}

impl CaseAContext {
    pub fn new(p: u64) -> Result<Self> {
        let wreath = wreath_context(p)?;
        let g = &*wreath.g_wr;
        let n = g.order();
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = g.mul(i, j) as u32;
            }
        }
        let k_elements = (0..p)
            .flat_map(|a| (0..p).map(move |b| (a, b)))
            .map(|(a, b)| wreath.k_element(a, b))
            .collect();
        let h = wreath.h();
        let action = g.coset_action(&h)?;
        let g_prime = wreath.g_prime.as_slice().to_vec();
        Ok(CaseAContext {
            wreath,
            h,
            action,
            mul,
            k_elements,
            g_prime,
        })
    }

    pub fn p(&self) -> u64 {
        self.wreath.p
    }

    fn generates(&self, t: &ElementSet) -> bool {
        let n = self.wreath.g_wr.order();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for s in t.iter() {
                let y = self.mul[x * n + s] as usize;
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        queue.len() == n
    }

    /// `T = T1 u G' (pi1 pi2)^z alpha` as indices into the wreath group.
    pub fn transversal(&self, label: &CaseALabel) -> Result<ElementSet> {
        let p = self.p();
        let m = p as usize;
        if label.p != p {
            return Err(Error::InvalidLabel(format!("label for p = {}, context for p = {p}", label.p)));
        }
        let tau = &label.tau;
        if tau.len() != m - 1 || tau.iter().any(|&x| x >= m - 1) || (0..m - 1).any(|i| tau[tau[i]] != i) {
            return Err(Error::InvalidLabel(format!("{tau:?} is not an involution of 0..{}", m - 2)));
        }
        if label.z_exp >= p {
            return Err(Error::InvalidLabel(format!("z_exp = {} not below p", label.z_exp)));
        }
        let n = self.wreath.g_wr.order();
        let outer = self.wreath.outer_element(label.z_exp);
        let mut t: Vec<usize> = vec![0];
        for j in 1..m {
            let jt = tau[j - 1] + 1;
            t.push(self.k_elements[jt * m + j]);
        }
        t.extend(self.g_prime.iter().map(|&c| self.mul[c * n + outer] as usize));
        Ok(t.into_iter().collect())
    }

    pub fn folder(&self, label: &CaseALabel) -> Result<LoopFolder> {
        let t = self.transversal(label)?;
        if !self.generates(&t) {
            return Err(Error::NotGenerating);
        }
        LoopFolder::new(self.wreath.g_wr.clone(), self.h.clone(), t)
    }

    /// Builds the folder and its loop. With `full`, runs every folder check;
    /// otherwise only the coset-action transversal and invariance checks.
    pub fn build(&self, label: &CaseALabel, full: bool) -> Result<(LoopFolder, LoopTable)> {
        let f = self.folder(label)?;
        if full {
            let r = f.validate();
            if !(r.is_folder && r.sharply_transitive && r.is_rcc && r.is_faithful && r.generates) {
                return Err(Error::NotAFolder(format!("{label:?}: {r:?}")));
            }
        } else if !f.sharply_transitive_with(&self.action) || !f.t_is_invariant() {
            return Err(Error::NotAFolder(format!("{label:?}")));
        }
        let l = loop_from_folder_with(&f, &self.action)?;
        Ok((f, l))
    }
}

pub fn case_a_loop(label: &CaseALabel) -> Result<(LoopFolder, LoopTable)> {
    CaseAContext::new(label.p)?.build(label, true)
}

/// `zeta: j -> g j (mod p)` on `1..p-1`, written 0-based.
fn zeta(p: u64, root: u64) -> Vec<usize> {
    (0..p - 1)
        .map(|i| ((root * (i + 1)) % p - 1) as usize)
        .collect()
}

fn is_orbit_minimum(tau: &[usize], z: &[usize], z_inv: &[usize]) -> bool {
    let mut cur = tau.to_vec();
    for _ in 1..z.len() {
        // x^(zeta^-1 tau zeta) = ((x zeta^-1) tau) zeta
        cur = (0..cur.len()).map(|x| z[cur[z_inv[x]]]).collect();
        if cur.as_slice() < tau {
            return false;
        }
    }
    true
}

fn negation(p: u64) -> Vec<usize> {
    (0..p as usize - 1).map(|i| p as usize - 2 - i).collect()
}

/// Every involution with `z = 1`, plus `<zeta>`-orbit minima with `z = 0`,
/// without the non-generating label; sorted.
pub fn case_a_representatives(p: u64) -> Result<Vec<CaseALabel>> {
    check_odd_prime(p, MAX_CONTEXT_PRIME)?;
    let root = crate::algebra::primitive_root(p);
    let z = zeta(p, root);
    let mut z_inv = vec![0; z.len()];
    for (i, &v) in z.iter().enumerate() {
        z_inv[v] = i;
    }
    let neg = negation(p);
    let mut labels = Vec::new();
    for tau in involutions(p as usize - 1) {
        if tau != neg && is_orbit_minimum(&tau, &z, &z_inv) {
            labels.push(CaseALabel {
                p,
                tau: tau.clone(),
                z_exp: 0,
            });
        }
        labels.push(CaseALabel { p, tau, z_exp: 1 });
    }
    labels.sort();
    Ok(labels)
}

/// All `(tau, z)` labels, deduplicated by isomorphism; first label of each
/// class in label order.
pub fn case_a_slow(p: u64) -> Result<Vec<(CaseALabel, LoopTable)>> {
    let ctx = CaseAContext::new(p)?;
    let labels: Vec<CaseALabel> = involutions(p as usize - 1)
        .into_iter()
        .flat_map(|tau| (0..p).map(move |z_exp| CaseALabel { p, tau: tau.clone(), z_exp }))
        .collect();
    let built: Vec<(CaseALabel, LoopTable)> = labels
        .into_par_iter()
        .filter_map(|label| match ctx.build(&label, false) {
            Ok((_, l)) => Some(Ok((label, l))),
            Err(Error::NotGenerating) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;
    let tables: Vec<LoopTable> = built.iter().map(|(_, l)| l.clone()).collect();
    let mut reps: Vec<usize> = classify(&tables)?.iter().map(|c| c.representative).collect();
    reps.sort_unstable();
    Ok(reps.into_iter().map(|i| built[i].clone()).collect())
}
