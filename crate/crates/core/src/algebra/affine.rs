use crate::algebra::wreath::{block_cycle, block_swap, simultaneous_multiplier};
use crate::algebra::{check_odd_prime, primitive_root, two_adic_split, MAX_CONTEXT_PRIME};
use crate::error::Result;
use crate::perm::{closure, closure_cap, GroupView, Permutation};

/// `Aff(1,p)` acting diagonally on both blocks of `2p` points, extended by
/// the block swap.
#[derive(Clone, Debug)]
pub struct AffineContext {
    pub p: u64,
    /// `pi1 * pi2`: translation by one on both blocks.
    pub p_gen: Permutation,
    pub nu: Permutation,
    pub alpha: Permutation,
    /// `<nu, p_gen>`, order `p(p-1)`, preserving both blocks.
    pub a: GroupView,
    /// `<nu, p_gen, alpha>` = `A x <alpha>`.
    pub n_aff: GroupView,
    /// Odd part of `p - 1`.
    pub r: u64,
    /// 2-adic valuation of `p - 1`.
    pub n2: u32,
}

impl AffineContext {
    /// True if the element swaps the two blocks.
    pub fn swaps_blocks(&self, perm: &Permutation) -> bool {
        perm.image(0) >= self.p as usize
    }

    /// Indices into `n_aff` of all block-swapping elements, in element order.
    pub fn block_swapping(&self) -> Vec<usize> {
        (0..self.n_aff.order())
            .filter(|&i| self.swaps_blocks(self.n_aff.element(i)))
            .collect()
    }
}

pub fn affine_context(p: u64) -> Result<AffineContext> {
    check_odd_prime(p, MAX_CONTEXT_PRIME)?;
    let n = p as usize;
    let pi1 = block_cycle(n, 0);
    let pi2 = block_cycle(n, n);
    let p_gen = pi1.then(&pi2);
    let nu = simultaneous_multiplier(n, primitive_root(p) as usize);
    let alpha = block_swap(n);
    let cap = closure_cap();
    let a = closure(&[nu.clone(), p_gen.clone()], cap)?;
    let n_aff = closure(&[nu.clone(), p_gen.clone(), alpha.clone()], cap)?;
    let (n2, r) = two_adic_split(p - 1);
    Ok(AffineContext {
        p,
        p_gen,
        nu,
        alpha,
        a,
        n_aff,
        r,
        n2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let c = affine_context(7).unwrap();
        assert_eq!(c.a.order(), 42);
        assert_eq!(c.n_aff.order(), 84);
        assert_eq!(c.r, 3);
        let c = affine_context(5).unwrap();
        assert_eq!((c.r, c.n2), (1, 2));
        let c = affine_context(3).unwrap();
        assert_eq!(c.a.order(), 6);
        assert!(!c.a.is_abelian());
    }

    #[test]
    fn block_behaviour() {
        for p in [3u64, 5, 7, 11, 13] {
            let c = affine_context(p).unwrap();
            assert!(c.a.elements().iter().all(|g| !c.swaps_blocks(g)));
            assert_eq!(c.a.index_of(&c.alpha), None);
            assert_eq!(c.block_swapping().len(), c.a.order());
            // every block-swapping element maps each block onto the other
            let n = p as usize;
            for i in c.block_swapping() {
                let g = c.n_aff.element(i);
                assert!((0..n).all(|x| g.image(x) >= n));
                assert!((n..2 * n).all(|x| g.image(x) < n));
            }
            assert!(c.a.elements().iter().all(|g| g.commutes_with(&c.alpha)));
        }
    }
}
