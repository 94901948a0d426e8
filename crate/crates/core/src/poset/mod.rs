//! Finite posets stored by their covering (Hasse) relation.
//!
//! A [`Poset`] keeps the covering relation as its primary data and derives the
//! strict closure `α□(h)` (faces strictly below `h`) and strict opening `β□(h)`
//! (faces strictly above `h`) once, at construction, as bitsets over the ground
//! set. The strict neighborhood `θ□(h)` is their union.
//!
//! Suborders are represented by [`SuborderView`]: an ambient poset plus a member
//! bitset. The induced order is the ambient order restricted to the members, so
//! every operator on a view is the ambient operator intersected with the member
//! set. Ranks inside a view are always recomputed relative to the view.

mod hasse;
mod iso;

pub use hasse::{parse_hasse, write_hasse};
pub use iso::{is_isomorphic, is_isomorphic_bounded, DEFAULT_ISO_BOUND};

use std::collections::VecDeque;
use std::sync::atomic::{AtomicU64, Ordering};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Dense index of a face inside one poset (`0..len`).
pub type FaceId = usize;

/// A set of faces of one ambient poset.
pub type FaceSet = FixedBitSet;

/// Which local operator to evaluate at a face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocalKind {
    /// Closure: faces below.
    Alpha,
    /// Opening: faces above.
    Beta,
    /// Neighborhood: faces comparable.
    Theta,
}

static NEXT_POSET_ID: AtomicU64 = AtomicU64::new(1);

/// A finite partially ordered set.
#[derive(Clone, Debug)]
pub struct Poset {
    uid: u64,
    labels: Vec<Option<String>>,
    covers: Vec<Vec<FaceId>>,
    covered_by: Vec<Vec<FaceId>>,
    below: Vec<FaceSet>,
    above: Vec<FaceSet>,
    theta: Vec<FaceSet>,
    face_rank: Vec<i32>,
    // faces sorted by nondecreasing rank; a linear extension of the order
    order: Vec<FaceId>,
    rank: i32,
}

impl Poset {
    /// The empty order.
    pub fn empty() -> Self {
        Self::from_relation(Vec::new(), Vec::new()).expect("empty relation is acyclic")
    }

    /// Builds a poset from a generating relation: `below[h]` lists faces that are
    /// strictly below `h`. The relation may contain implied (transitive) pairs;
    /// only the covering pairs are kept.
    pub fn from_relation(below: Vec<Vec<FaceId>>, labels: Vec<Option<String>>) -> Result<Self> {
        let n = below.len();
        let labels = if labels.is_empty() { vec![None; n] } else { labels };
        if labels.len() != n {
            return Err(Error::Precondition(format!(
                "{} labels given for {} faces",
                labels.len(),
                n
            )));
        }
        for gens in &below {
            for &g in gens {
                if g >= n {
                    return Err(Error::UnknownFace { id: g, size: n });
                }
            }
        }

        // Kahn's algorithm: a face is ready once everything below it is placed.
        let mut pending: Vec<usize> = below.iter().map(|g| g.len()).collect();
        let mut up: Vec<Vec<FaceId>> = vec![Vec::new(); n];
        for (h, gens) in below.iter().enumerate() {
            for &g in gens {
                up[g].push(h);
            }
        }
        let mut queue: VecDeque<FaceId> = (0..n).filter(|&h| pending[h] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(h) = queue.pop_front() {
            topo.push(h);
            for &u in &up[h] {
                pending[u] -= 1;
                if pending[u] == 0 {
                    queue.push_back(u);
                }
            }
        }
        if topo.len() != n {
            let culprit = (0..n).find(|&h| pending[h] > 0).unwrap_or(0);
            return Err(Error::Cyclic(culprit));
        }

        let mut strict_below = vec![FixedBitSet::with_capacity(n); n];
        for &h in &topo {
            let mut acc = FixedBitSet::with_capacity(n);
            for &g in &below[h] {
                acc.insert(g);
                acc.union_with(&strict_below[g]);
            }
            strict_below[h] = acc;
        }

        // g is a cover of h iff no other generator of h lies above g.
        let mut covers = vec![Vec::new(); n];
        for h in 0..n {
            let mut implied = FixedBitSet::with_capacity(n);
            for &g in &below[h] {
                implied.union_with(&strict_below[g]);
            }
            let mut cs: Vec<FaceId> = below[h]
                .iter()
                .copied()
                .filter(|&g| !implied.contains(g))
                .collect();
            cs.sort_unstable();
            cs.dedup();
            covers[h] = cs;
        }

        Ok(Self::assemble(labels, covers, strict_below, &topo))
    }

    fn assemble(
        labels: Vec<Option<String>>,
        covers: Vec<Vec<FaceId>>,
        below: Vec<FaceSet>,
        topo: &[FaceId],
    ) -> Self {
        let n = covers.len();
        let mut covered_by = vec![Vec::new(); n];
        for (h, cs) in covers.iter().enumerate() {
            for &c in cs {
                covered_by[c].push(h);
            }
        }
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (h, b) in below.iter().enumerate() {
            for g in b.ones() {
                above[g].insert(h);
            }
        }
        let theta = below
            .iter()
            .zip(&above)
            .map(|(b, a)| {
                let mut t = b.clone();
                t.union_with(a);
                t
            })
            .collect();
        let mut face_rank = vec![0i32; n];
        for &h in topo {
            face_rank[h] = covers[h]
                .iter()
                .map(|&c| face_rank[c] + 1)
                .max()
                .unwrap_or(0);
        }
        let mut order: Vec<FaceId> = (0..n).collect();
        order.sort_by_key(|&h| (face_rank[h], h));
        let rank = face_rank.iter().copied().max().unwrap_or(-1);
        Poset {
            uid: NEXT_POSET_ID.fetch_add(1, Ordering::Relaxed),
            labels,
            covers,
            covered_by,
            below,
            above,
            theta,
            face_rank,
            order,
            rank,
        }
    }

    /// Identity of this poset, used to key memo tables over its suborders.
    pub fn uid(&self) -> u64 {
        self.uid
    }

    pub fn len(&self) -> usize {
        self.covers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covers.is_empty()
    }

    pub fn label(&self, h: FaceId) -> Option<&str> {
        self.labels.get(h).and_then(|l| l.as_deref())
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    fn check(&self, h: FaceId) -> Result<()> {
        if h < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownFace { id: h, size: self.len() })
        }
    }

    /// Faces covered by `h` (its immediate predecessors).
    pub fn covers(&self, h: FaceId) -> &[FaceId] {
        &self.covers[h]
    }

    /// Faces covering `h` (its immediate successors).
    pub fn covered_by(&self, h: FaceId) -> &[FaceId] {
        &self.covered_by[h]
    }

    /// `α□(h)`.
    pub fn strict_below(&self, h: FaceId) -> &FaceSet {
        &self.below[h]
    }

    /// `β□(h)`.
    pub fn strict_above(&self, h: FaceId) -> &FaceSet {
        &self.above[h]
    }

    /// `θ□(h)`.
    pub fn strict_theta(&self, h: FaceId) -> &FaceSet {
        &self.theta[h]
    }

    /// `a < b` in the strict order.
    pub fn less(&self, a: FaceId, b: FaceId) -> bool {
        self.below[b].contains(a)
    }

    /// Faces in nondecreasing rank order.
    pub fn linear_extension(&self) -> &[FaceId] {
        &self.order
    }

    pub fn local_sets(&self, h: FaceId, kind: LocalKind, strict: bool) -> Result<FaceSet> {
        self.view().local_sets(h, kind, strict)
    }

    /// Union of the operator over a face set.
    pub fn local_sets_of(&self, s: &FaceSet, kind: LocalKind, strict: bool) -> Result<FaceSet> {
        self.view().local_sets_of(s, kind, strict)
    }

    /// Rank of a face.
    pub fn rank_of(&self, h: FaceId) -> Result<i32> {
        self.check(h)?;
        Ok(self.face_rank[h])
    }

    pub fn face_ranks(&self) -> &[i32] {
        &self.face_rank
    }

    /// Rank of the poset; `-1` when empty.
    pub fn rank(&self) -> i32 {
        self.rank
    }

    /// Faces of rank `k`.
    pub fn faces_of_rank(&self, k: i32) -> Vec<FaceId> {
        (0..self.len()).filter(|&h| self.face_rank[h] == k).collect()
    }

    /// Number of faces per rank, indexed by rank.
    pub fn rank_profile(&self) -> Vec<usize> {
        let mut prof = vec![0; (self.rank + 1).max(0) as usize];
        for &r in &self.face_rank {
            prof[r as usize] += 1;
        }
        prof
    }

    pub fn all_faces(&self) -> FaceSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        s.insert_range(..);
        s
    }

    /// The whole poset as a suborder of itself.
    pub fn view(&self) -> SuborderView<'_> {
        SuborderView { ambient: self, members: self.all_faces() }
    }

    /// The suborder induced on `members`.
    pub fn suborder(&self, members: FaceSet) -> Result<SuborderView<'_>> {
        if members.len() != self.len() {
            return Err(Error::Precondition(format!(
                "member set sized {} for a poset of {} faces",
                members.len(),
                self.len()
            )));
        }
        Ok(SuborderView { ambient: self, members })
    }

    pub fn face_set<I: IntoIterator<Item = FaceId>>(&self, faces: I) -> Result<FaceSet> {
        let mut s = FixedBitSet::with_capacity(self.len());
        for h in faces {
            self.check(h)?;
            s.insert(h);
        }
        Ok(s)
    }

    pub fn connected_components(&self) -> Vec<FaceSet> {
        self.view().components()
    }

    pub fn is_connected(&self) -> bool {
        self.view().is_connected()
    }

    /// The join `P * Q`: `Q`'s faces are renumbered by `|P|` and placed above
    /// every face of `P`.
    pub fn join(&self, other: &Poset) -> Poset {
        let offset = self.len();
        let mut below: Vec<Vec<FaceId>> = self.covers.clone();
        let p_max: Vec<FaceId> = (0..offset).filter(|&h| self.covered_by[h].is_empty()).collect();
        for q in 0..other.len() {
            let mut gens: Vec<FaceId> = other.covers[q].iter().map(|&c| c + offset).collect();
            // every face of P lies below q; the maximal ones generate that
            gens.extend_from_slice(&p_max);
            below.push(gens);
        }
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        Poset::from_relation(below, labels).expect("join of acyclic relations is acyclic")
    }

    /// True iff `a` and `b` partition the ground set and no face of one is
    /// comparable with a face of the other.
    pub fn is_separated_union(&self, a: &FaceSet, b: &FaceSet) -> Result<bool> {
        if a.len() != self.len() || b.len() != self.len() {
            return Err(Error::NotAPartition("face sets sized for another poset".into()));
        }
        if !a.is_disjoint(b) {
            return Err(Error::NotAPartition("the two parts overlap".into()));
        }
        if a.count_ones(..) + b.count_ones(..) != self.len() {
            return Err(Error::NotAPartition("the two parts do not cover the ground set".into()));
        }
        Ok(a.ones().all(|h| self.theta[h].is_disjoint(b)))
    }
}

/// A suborder of an ambient poset: the order induced on a member set.
#[derive(Clone, Debug)]
pub struct SuborderView<'a> {
    ambient: &'a Poset,
    members: FaceSet,
}

impl PartialEq for SuborderView<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient.uid == other.ambient.uid && self.members == other.members
    }
}

impl Eq for SuborderView<'_> {}

impl<'a> SuborderView<'a> {
    pub fn ambient(&self) -> &'a Poset {
        self.ambient
    }

    pub fn members(&self) -> &FaceSet {
        &self.members
    }

    pub fn into_members(self) -> FaceSet {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn contains(&self, h: FaceId) -> bool {
        h < self.members.len() && self.members.contains(h)
    }

    pub fn faces(&self) -> impl Iterator<Item = FaceId> + '_ {
        self.members.ones()
    }

    fn check(&self, h: FaceId) -> Result<()> {
        if self.contains(h) {
            Ok(())
        } else {
            Err(Error::UnknownFace { id: h, size: self.ambient.len() })
        }
    }

    /// Restricts to a subset of the members, as a view on the same ambient poset.
    pub fn restrict(&self, set: &FaceSet) -> SuborderView<'a> {
        let mut members = self.members.clone();
        members.intersect_with(set);
        SuborderView { ambient: self.ambient, members }
    }

    /// `θ□(h)` inside the view; `h` must be a member.
    pub fn theta_of(&self, h: FaceId) -> FaceSet {
        let mut s = self.ambient.theta[h].clone();
        s.intersect_with(&self.members);
        s
    }

    /// The operator at `h`, intersected with the member set.
    pub fn local_sets(&self, h: FaceId, kind: LocalKind, strict: bool) -> Result<FaceSet> {
        self.check(h)?;
        let base = match kind {
            LocalKind::Alpha => &self.ambient.below[h],
            LocalKind::Beta => &self.ambient.above[h],
            LocalKind::Theta => &self.ambient.theta[h],
        };
        let mut s = base.clone();
        s.intersect_with(&self.members);
        if !strict {
            s.insert(h);
        }
        Ok(s)
    }

    pub fn local_sets_of(&self, faces: &FaceSet, kind: LocalKind, strict: bool) -> Result<FaceSet> {
        let mut acc = FixedBitSet::with_capacity(self.ambient.len());
        for h in faces.ones() {
            acc.union_with(&self.local_sets(h, kind, strict)?);
        }
        Ok(acc)
    }

    /// Per-face ranks relative to the view, indexed by ambient id; non-members
    /// hold `-1`.
    pub fn face_ranks(&self) -> Vec<i32> {
        let mut r = vec![-1i32; self.ambient.len()];
        for &h in &self.ambient.order {
            if !self.members.contains(h) {
                continue;
            }
            let mut best = -1;
            for x in self.ambient.below[h].intersection(&self.members) {
                best = best.max(r[x]);
            }
            r[h] = best + 1;
        }
        r
    }

    pub fn rank_of(&self, h: FaceId) -> Result<i32> {
        self.check(h)?;
        Ok(self.face_ranks()[h])
    }

    /// Rank of the view; `-1` when empty.
    pub fn rank(&self) -> i32 {
        self.face_ranks().into_iter().max().unwrap_or(-1)
    }

    /// Connected components under θ-adjacency, ordered by smallest member.
    pub fn components(&self) -> Vec<FaceSet> {
        let n = self.ambient.len();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut out = Vec::new();
        for start in self.members.ones() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = FixedBitSet::with_capacity(n);
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(h) = stack.pop() {
                comp.insert(h);
                for x in self.ambient.theta[h].intersection(&self.members) {
                    if !seen.contains(x) {
                        seen.insert(x);
                        stack.push(x);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Path-connectedness; the empty order counts as connected.
    pub fn is_connected(&self) -> bool {
        let Some(start) = self.members.ones().next() else {
            return true;
        };
        let mut seen = FixedBitSet::with_capacity(self.ambient.len());
        let mut stack = vec![start];
        seen.insert(start);
        let mut count = 1;
        while let Some(h) = stack.pop() {
            for x in self.ambient.theta[h].intersection(&self.members) {
                if !seen.contains(x) {
                    seen.insert(x);
                    count += 1;
                    stack.push(x);
                }
            }
        }
        count == self.len()
    }

    /// Materializes the view as a standalone poset. Returns the poset and the
    /// ambient id of each new face (new ids follow ambient id order).
    pub fn to_poset(&self) -> (Poset, Vec<FaceId>) {
        let ids: Vec<FaceId> = self.members.ones().collect();
        let mut index = vec![usize::MAX; self.ambient.len()];
        for (i, &h) in ids.iter().enumerate() {
            index[h] = i;
        }
        let mut below = Vec::with_capacity(ids.len());
        for &h in &ids {
            let cands: FaceSet = self.ambient.below[h].intersection(&self.members).collect();
            let mut implied = FixedBitSet::with_capacity(self.ambient.len());
            for c in cands.ones() {
                implied.union_with(&self.ambient.below[c]);
            }
            below.push(
                cands
                    .ones()
                    .filter(|&c| !implied.contains(c))
                    .map(|c| index[c])
                    .collect(),
            );
        }
        let labels = ids.iter().map(|&h| self.ambient.labels[h].clone()).collect();
        let p = Poset::from_relation(below, labels).expect("suborder of an order is acyclic");
        (p, ids)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> Poset {
        Poset::from_relation(vec![vec![], vec![0], vec![1]], vec![]).unwrap()
    }

    fn ids(s: &FaceSet) -> Vec<FaceId> {
        s.ones().collect()
    }

    #[test]
    fn chain_local_sets() {
        let p = chain3();
        assert_eq!(ids(&p.local_sets(1, LocalKind::Alpha, true).unwrap()), vec![0]);
        assert_eq!(ids(&p.local_sets(1, LocalKind::Theta, true).unwrap()), vec![0, 2]);
        assert_eq!(ids(&p.local_sets(1, LocalKind::Beta, false).unwrap()), vec![1, 2]);
        assert!(matches!(
            p.local_sets(7, LocalKind::Alpha, true),
            Err(Error::UnknownFace { id: 7, .. })
        ));
    }

    #[test]
    fn transitive_pairs_are_reduced() {
        let p = Poset::from_relation(vec![vec![], vec![0], vec![0, 1]], vec![]).unwrap();
        assert_eq!(p.covers(2), &[1]);
        assert!(p.less(0, 2));
        assert_eq!(p.rank(), 2);
    }

    #[test]
    fn cycle_is_rejected() {
        let e = Poset::from_relation(vec![vec![1], vec![0]], vec![]).unwrap_err();
        assert!(matches!(e, Error::Cyclic(_)));
    }

    #[test]
    fn empty_rank_is_minus_one() {
        assert_eq!(Poset::empty().rank(), -1);
        assert!(Poset::empty().is_connected());
    }

    #[test]
    fn components_of_antichain_and_chain() {
        let anti = Poset::from_relation(vec![vec![], vec![]], vec![]).unwrap();
        assert_eq!(anti.connected_components().len(), 2);
        assert_eq!(chain3().connected_components().len(), 1);
    }

    #[test]
    fn join_with_empty_is_identity() {
        let q = chain3();
        let j = Poset::empty().join(&q);
        assert_eq!(j.len(), 3);
        assert_eq!(j.rank(), 2);
        assert_eq!(j.covers(2), &[1]);
    }

    #[test]
    fn join_places_left_below_right() {
        let two = Poset::from_relation(vec![vec![], vec![]], vec![]).unwrap();
        let j = two.join(&two);
        assert_eq!(j.len(), 4);
        assert_eq!(j.rank(), 1);
        for a in 0..2 {
            for b in 2..4 {
                assert!(j.less(a, b));
            }
        }
    }

    #[test]
    fn separated_union_on_chain() {
        let p = chain3();
        let a = p.face_set([0]).unwrap();
        let b = p.face_set([1, 2]).unwrap();
        assert!(!p.is_separated_union(&a, &b).unwrap());
        let overlap = p.face_set([0, 1]).unwrap();
        assert!(p.is_separated_union(&overlap, &b).is_err());
        let short = p.face_set([2]).unwrap();
        assert!(p.is_separated_union(&a, &short).is_err());
    }

    #[test]
    fn view_ranks_are_recomputed() {
        let p = chain3();
        let v = p.suborder(p.face_set([0, 2]).unwrap()).unwrap();
        assert_eq!(v.rank(), 1);
        assert_eq!(v.rank_of(2).unwrap(), 1);
        let (q, map) = v.to_poset();
        assert_eq!(map, vec![0, 2]);
        assert_eq!(q.covers(1), &[0]);
    }
}
