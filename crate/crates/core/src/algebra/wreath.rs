use std::sync::Arc;

use crate::algebra::{check_odd_prime, primitive_root, MAX_CONTEXT_PRIME};
use crate::error::Result;
use crate::perm::{closure, closure_cap, ElementSet, GroupView, Permutation};

/// The wreath product `C_p wr C_2` inside `Sym(2p)` and its normalizer.
///
/// Points `0..p` form the first block and `p..2p` the second. Point `k` of a
/// block carries the residue `(k + 1) mod p`, so the zero residue sits on the
/// last point of each block.
#[derive(Clone, Debug)]
pub struct WreathContext {
    pub p: u64,
    /// Primitive root used for `nu`.
    pub root: u64,
    /// `(0 1 .. p-1)`, the `p`-cycle on the first block.
    pub pi1: Permutation,
    /// `pi1` conjugated by `alpha`, the `p`-cycle on the second block.
    pub pi2: Permutation,
    /// Block swap `(0 p)(1 p+1)...`.
    pub alpha: Permutation,
    /// Multiplication by the primitive root on the residues of both blocks.
    pub nu: Permutation,
    /// `<pi2, alpha>`, order `2p^2`.
    pub g_wr: Arc<GroupView>,
    /// `<pi1, pi2>`, order `p^2`, as indices into `g_wr`.
    pub k: ElementSet,
    /// `<nu, pi2, alpha>`, order `2p^2(p-1)`.
    pub n: GroupView,
    /// Center of `g_wr`, `<pi1 pi2>`.
    pub z_g: ElementSet,
    /// Commutator subgroup of `g_wr`, `<pi1^-1 pi2>`.
    pub g_prime: ElementSet,
}

impl WreathContext {
    pub fn degree(&self) -> usize {
        2 * self.p as usize
    }

    /// `pi2^a * pi1^b` as an index of `g_wr`.
    pub fn k_element(&self, a: u64, b: u64) -> usize {
        let perm = self.pi2.pow(a as i64).then(&self.pi1.pow(b as i64));
        self.g_wr.index_of(&perm).expect("K lies in G")
    }

    /// `(pi1 pi2)^z * alpha` as an index of `g_wr`.
    pub fn outer_element(&self, z: u64) -> usize {
        let perm = self.pi1.then(&self.pi2).pow(z as i64).then(&self.alpha);
        self.g_wr.index_of(&perm).expect("outer element lies in G")
    }

    /// Stabilizer of point 0 in `g_wr`, which is `<pi2>`.
    pub fn h(&self) -> ElementSet {
        let h: Vec<usize> = (0..self.p).map(|a| self.k_element(a, 0)).collect();
        h.into_iter().collect()
    }
}

/// Residue-multiplication map on one block: residue `x -> m*x`, as point images.
pub(crate) fn block_multiplier(p: usize, m: usize) -> Vec<usize> {
    // point k carries residue (k+1) mod p
    (0..p)
        .map(|k| {
            let residue = (k + 1) % p;
            let image = residue * m % p;
            (image + p - 1) % p
        })
        .collect()
}

pub(crate) fn block_cycle(p: usize, offset: usize) -> Permutation {
    let images: Vec<usize> = (0..2 * p)
        .map(|x| {
            if x >= offset && x < offset + p {
                offset + (x - offset + 1) % p
            } else {
                x
            }
        })
        .collect();
    Permutation::from_images(images).expect("cycle is a bijection")
}

pub(crate) fn block_swap(p: usize) -> Permutation {
    Permutation::from_images((0..2 * p).map(|x| (x + p) % (2 * p)).collect())
        .expect("swap is a bijection")
}

/// Residue multiplication by `m` applied simultaneously on both blocks.
pub(crate) fn simultaneous_multiplier(p: usize, m: usize) -> Permutation {
    let one = block_multiplier(p, m);
    let images: Vec<usize> = (0..2 * p)
        .map(|x| if x < p { one[x] } else { p + one[x - p] })
        .collect();
    Permutation::from_images(images).expect("multiplier is a bijection")
}

pub fn wreath_context(p: u64) -> Result<WreathContext> {
    check_odd_prime(p, MAX_CONTEXT_PRIME)?;
    let n = p as usize;
    let root = primitive_root(p);
    let pi1 = block_cycle(n, 0);
    let alpha = block_swap(n);
    let pi2 = pi1.conjugate_by(&alpha);
    let nu = simultaneous_multiplier(n, root as usize);
    let cap = closure_cap();
    let g_wr = Arc::new(closure(&[pi2.clone(), alpha.clone()], cap)?);
    let normalizer = closure(&[nu.clone(), pi2.clone(), alpha.clone()], cap)?;
    let i1 = g_wr.index_of(&pi1).expect("pi1 in G");
    let i2 = g_wr.index_of(&pi2).expect("pi2 in G");
    let k = g_wr.subgroup_generated(&[i1, i2]);
    let z = g_wr.index_of(&pi1.then(&pi2)).expect("pi1 pi2 in G");
    let z_g = g_wr.subgroup_generated(&[z]);
    let c = g_wr
        .index_of(&pi1.inverse().then(&pi2))
        .expect("pi1^-1 pi2 in G");
    let g_prime = g_wr.subgroup_generated(&[c]);
    Ok(WreathContext {
        p,
        root,
        pi1,
        pi2,
        alpha,
        nu,
        g_wr,
        k,
        n: normalizer,
        z_g,
        g_prime,
    })
}
