//! Brute-force oracles. They work on an explicit comparability matrix and
//! plain vectors of face ids, and share no code with the library beyond
//! reading the covering relation.

#![allow(dead_code)]

use std::collections::BTreeSet;

use pcm_core::{Poset, SimplicialComplex};

/// `less[a][b]` iff `a < b`, closed by Floyd–Warshall over the covers.
#[derive(Clone, Debug)]
pub struct Order {
    pub less: Vec<Vec<bool>>,
}

impl Order {
    pub fn of(p: &Poset) -> Self {
        let n = p.len();
        let mut less = vec![vec![false; n]; n];
        for b in 0..n {
            for &a in p.covers(b) {
                less[a][b] = true;
            }
        }
        for k in 0..n {
            for i in 0..n {
                if less[i][k] {
                    for j in 0..n {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        Order { less }
    }

    pub fn len(&self) -> usize {
        self.less.len()
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.less[a][b] || self.less[b][a]
    }

    pub fn all(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }

    pub fn theta(&self, sub: &[usize], h: usize) -> Vec<usize> {
        sub.iter().copied().filter(|&x| x != h && self.comparable(x, h)).collect()
    }

    pub fn alpha(&self, sub: &[usize], h: usize) -> Vec<usize> {
        sub.iter().copied().filter(|&x| self.less[x][h]).collect()
    }

    pub fn beta(&self, sub: &[usize], h: usize) -> Vec<usize> {
        sub.iter().copied().filter(|&x| self.less[h][x]).collect()
    }

    /// Length of the longest chain ending at `h` inside `sub`.
    pub fn face_rank(&self, sub: &[usize], h: usize) -> i32 {
        self.alpha(sub, h).iter().map(|&x| self.face_rank(sub, x) + 1).max().unwrap_or(0)
    }

    pub fn rank(&self, sub: &[usize]) -> i32 {
        sub.iter().map(|&h| self.face_rank(sub, h)).max().unwrap_or(-1)
    }

    pub fn components(&self, sub: &[usize]) -> Vec<Vec<usize>> {
        let mut left: BTreeSet<usize> = sub.iter().copied().collect();
        let mut out = Vec::new();
        while let Some(&start) = left.iter().next() {
            left.remove(&start);
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let h = comp[i];
                let next: Vec<usize> = left.iter().copied().filter(|&x| self.comparable(x, h)).collect();
                for x in next {
                    left.remove(&x);
                    comp.push(x);
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn connected(&self, sub: &[usize]) -> bool {
        self.components(sub).len() <= 1
    }

    pub fn surface(&self, sub: &[usize]) -> Option<i32> {
        if sub.is_empty() {
            return Some(-1);
        }
        if sub.len() == 2 && !self.comparable(sub[0], sub[1]) {
            return Some(0);
        }
        let r = self.rank(sub);
        if r < 1 || !self.connected(sub) {
            return None;
        }
        sub.iter()
            .all(|&h| self.surface(&self.theta(sub, h)) == Some(r - 1))
            .then_some(r)
    }

    pub fn border(&self, sub: &[usize]) -> Vec<usize> {
        let r = self.rank(sub);
        sub.iter()
            .copied()
            .filter(|&h| self.surface(&self.theta(sub, h)) != Some(r - 1))
            .collect()
    }

    pub fn pcm(&self, sub: &[usize]) -> Option<i32> {
        if sub.is_empty() {
            return Some(-1);
        }
        let r = self.rank(sub);
        if r == 0 {
            return (sub.len() == 1).then_some(0);
        }
        if !self.connected(sub) || self.border(sub).is_empty() {
            return None;
        }
        sub.iter()
            .all(|&h| {
                let t = self.theta(sub, h);
                self.surface(&t) == Some(r - 1) || self.pcm(&t) == Some(r - 1)
            })
            .then_some(r)
    }

    /// Whether `sub` can be split into pairwise separated parts that are all
    /// k-surfaces. Separated parts are unions of θ-components, so it suffices
    /// to try every partition of the component list.
    pub fn separated_union_of_surfaces(&self, sub: &[usize], k: i32) -> bool {
        let comps = self.components(sub);
        assert!(comps.len() <= 10, "too many components for partition search");
        let mut assignment = Vec::new();
        self.try_partitions(&comps, &mut assignment, k)
    }

    fn try_partitions(&self, comps: &[Vec<usize>], assign: &mut Vec<usize>, k: i32) -> bool {
        if assign.len() == comps.len() {
            let blocks = assign.iter().copied().max().map_or(0, |m| m + 1);
            if blocks == 0 {
                return false;
            }
            return (0..blocks).all(|b| {
                let mut part: Vec<usize> = comps
                    .iter()
                    .zip(assign.iter())
                    .filter(|&(_, &a)| a == b)
                    .flat_map(|(c, _)| c.iter().copied())
                    .collect();
                part.sort_unstable();
                self.surface(&part) == Some(k)
            });
        }
        let next_block = assign.iter().copied().max().map_or(0, |m| m + 1);
        for b in 0..=next_block {
            assign.push(b);
            if self.try_partitions(comps, assign, k) {
                assign.pop();
                return true;
            }
            assign.pop();
        }
        false
    }

    pub fn smooth(&self, sub: &[usize]) -> Option<i32> {
        if sub.is_empty() {
            return Some(-1);
        }
        let r = self.rank(sub);
        if r == 0 {
            return (sub.len() == 1).then_some(0);
        }
        if !self.connected(sub) {
            return None;
        }
        let border = self.border(sub);
        if border.is_empty() {
            return None;
        }
        let locally = sub.iter().all(|&h| {
            let t = self.theta(sub, h);
            self.surface(&t) == Some(r - 1) || self.smooth(&t) == Some(r - 1)
        });
        (locally && self.separated_union_of_surfaces(&border, r - 1)).then_some(r)
    }

    pub fn coherent(&self, sub: &[usize]) -> bool {
        let r = self.rank(sub);
        sub.iter().all(|&h| {
            let t = self.theta(sub, h);
            self.rank(&t) == r - 1 && self.coherent(&t)
        })
    }
}

/// Every nonempty subset of every facet, by explicit enumeration.
pub fn brute_closure(facets: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    for f in facets {
        let mut f = f.clone();
        f.sort_unstable();
        f.dedup();
        for mask in 1u32..(1 << f.len()) {
            out.insert((0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect());
        }
    }
    out
}

pub fn simplex_sets(k: &SimplicialComplex) -> BTreeSet<Vec<u32>> {
    k.simplices().iter().map(|s| s.vertices().to_vec()).collect()
}

/// `{ s ∈ K : s ∩ h = ∅, s ∪ h ∈ K }` straight from the definition.
pub fn brute_link(k: &SimplicialComplex, h: &[u32]) -> BTreeSet<Vec<u32>> {
    let all = simplex_sets(k);
    all.iter()
        .filter(|s| s.iter().all(|v| !h.contains(v)))
        .filter(|s| {
            let mut u: Vec<u32> = s.iter().chain(h).copied().collect();
            u.sort_unstable();
            all.contains(&u)
        })
        .cloned()
        .collect()
}

/// Exhaustive order-isomorphism test by trying every bijection.
pub fn brute_isomorphic(p: &Poset, q: &Poset) -> bool {
    let (a, b) = (Order::of(p), Order::of(q));
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(a: &Order, b: &Order, perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = perm.len();
        if i == a.len() {
            return true;
        }
        for j in 0..a.len() {
            if used[j] {
                continue;
            }
            let ok = (0..i).all(|x| a.less[x][i] == b.less[perm[x]][j] && a.less[i][x] == b.less[j][perm[x]]);
            if ok {
                used[j] = true;
                perm.push(j);
                if go(a, b, perm, used) {
                    return true;
                }
                perm.pop();
                used[j] = false;
            }
        }
        false
    }
    go(&a, &b, &mut perm, &mut used)
}

/// Small deterministic xorshift for picking test subsets.
pub struct Xorshift(pub u64);

impl Xorshift {
    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn subset(&mut self, n: usize, keep_per_mille: u64) -> Vec<usize> {
        (0..n).filter(|_| self.next() % 1000 < keep_per_mille).collect()
    }
}

pub fn ids(set: &fixedbitset::FixedBitSet) -> Vec<usize> {
    set.ones().collect()
}
