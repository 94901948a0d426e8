//! Order isomorphism by backtracking search, for small posets only.

use super::{FaceId, Poset};
use crate::error::{Error, Result};

pub const DEFAULT_ISO_BOUND: usize = 40;

pub fn is_isomorphic(p: &Poset, q: &Poset) -> Result<bool> {
    is_isomorphic_bounded(p, q, DEFAULT_ISO_BOUND)
}

pub fn is_isomorphic_bounded(p: &Poset, q: &Poset, bound: usize) -> Result<bool> {
    for size in [p.len(), q.len()] {
        if size > bound {
            return Err(Error::TooLarge { size, bound });
        }
    }
    if p.len() != q.len() || p.rank_profile() != q.rank_profile() {
        return Ok(false);
    }
    let sig = |x: &Poset, h: FaceId| {
        (
            x.face_ranks()[h],
            x.covers(h).len(),
            x.covered_by(h).len(),
            x.strict_below(h).count_ones(..),
            x.strict_above(h).count_ones(..),
        )
    };
    let mut ps: Vec<_> = (0..p.len()).map(|h| sig(p, h)).collect();
    let mut qs: Vec<_> = (0..q.len()).map(|h| sig(q, h)).collect();
    let (psig, qsig) = (ps.clone(), qs.clone());
    ps.sort_unstable();
    qs.sort_unstable();
    if ps != qs {
        return Ok(false);
    }

    let order = p.linear_extension().to_vec();
    let mut image = vec![usize::MAX; p.len()];
    let mut used = vec![false; q.len()];
    Ok(extend(p, q, &order, 0, &psig, &qsig, &mut image, &mut used))
}

#[allow(clippy::too_many_arguments)]
fn extend<S: PartialEq>(
    p: &Poset,
    q: &Poset,
    order: &[FaceId],
    depth: usize,
    psig: &[S],
    qsig: &[S],
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&h) = order.get(depth) else {
        return true;
    };
    for cand in 0..q.len() {
        if used[cand] || psig[h] != qsig[cand] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&x| {
            let fx = image[x];
            p.less(x, h) == q.less(fx, cand) && p.less(h, x) == q.less(cand, fx)
        });
        if !consistent {
            continue;
        }
        image[h] = cand;
        used[cand] = true;
        if extend(p, q, order, depth + 1, psig, qsig, image, used) {
            return true;
        }
        used[cand] = false;
        image[h] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_chain_vs_antichain() {
        let chain = Poset::from_relation(vec![vec![], vec![0], vec![1]], vec![]).unwrap();
        let anti = Poset::from_relation(vec![vec![], vec![], vec![]], vec![]).unwrap();
        assert!(is_isomorphic(&chain, &chain).unwrap());
        assert!(!is_isomorphic(&chain, &anti).unwrap());
    }

    #[test]
    fn relabelled_copy_is_isomorphic() {
        let a = Poset::from_relation(vec![vec![], vec![], vec![0, 1], vec![1]], vec![]).unwrap();
        let b = Poset::from_relation(vec![vec![2], vec![2, 3], vec![], vec![]], vec![]).unwrap();
        assert!(is_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn bound_is_enforced() {
        let big = Poset::from_relation(vec![vec![]; 41], vec![]).unwrap();
        assert_eq!(
            is_isomorphic(&big, &big).unwrap_err(),
            Error::TooLarge { size: 41, bound: 40 }
        );
    }
}
