//! Recursive recognizer for discrete k-surfaces and coherent posets.
//!
//! All recursive checks are evaluated on suborders of one ambient poset: the
//! strict neighborhood of `h` inside a view `V` is `θ□(h) ∩ V`, again a view of
//! the same ambient poset. Verdicts are memoized on the key (ambient poset uid,
//! member bitset), which identifies a suborder exactly.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::poset::{FaceSet, Poset, SuborderView};

/// Environment variable that disables memoization when set to anything other
/// than `0` or the empty string.
pub const NO_MEMO_ENV: &str = "PCM_NO_MEMO";

/// Exact identity of a suborder.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuborderKey {
    pub poset: u64,
    pub members: FaceSet,
}

impl SuborderKey {
    pub fn of(view: &SuborderView<'_>) -> Self {
        SuborderKey { poset: view.ambient().uid(), members: view.members().clone() }
    }
}

/// Outcome of the discrete surface test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceVerdict {
    pub is_surface: bool,
    /// `k` when the suborder is a discrete k-surface.
    pub rank_if_surface: Option<i32>,
    pub memo_key: SuborderKey,
}

pub(crate) struct Memo<V> {
    map: Mutex<HashMap<SuborderKey, V>>,
}

impl<V: Clone> Memo<V> {
    fn new() -> Self {
        Memo { map: Mutex::new(HashMap::new()) }
    }

    fn get(&self, k: &SuborderKey) -> Option<V> {
        self.map.lock().expect("memo lock").get(k).cloned()
    }

    fn put(&self, k: SuborderKey, v: V) {
        self.map.lock().expect("memo lock").insert(k, v);
    }

    fn len(&self) -> usize {
        self.map.lock().expect("memo lock").len()
    }
}

/// Memoizing evaluator for the recursive definitions (surfaces, coherence,
/// PCMs, smooth PCMs, borders).
///
/// The memo tables sit behind mutexes that are never held across a recursive
/// call, so one recognizer can be shared between threads.
pub struct Recognizer {
    memoize: bool,
    pub(crate) surfaces: Memo<Option<i32>>,
    pub(crate) pcms: Memo<Option<i32>>,
    pub(crate) smooth: Memo<Option<i32>>,
    coherent: Memo<bool>,
    evaluations: AtomicUsize,
}

impl Default for Recognizer {
    fn default() -> Self {
        Self::new()
    }
}

impl Recognizer {
    pub fn new() -> Self {
        Self::with_memo(true)
    }

    pub fn with_memo(memoize: bool) -> Self {
        Recognizer {
            memoize,
            surfaces: Memo::new(),
            pcms: Memo::new(),
            smooth: Memo::new(),
            coherent: Memo::new(),
            evaluations: AtomicUsize::new(0),
        }
    }

    /// Memoization on unless [`NO_MEMO_ENV`] is set.
    pub fn from_env() -> Self {
        let off = std::env::var(NO_MEMO_ENV).map(|v| !v.is_empty() && v != "0").unwrap_or(false);
        Self::with_memo(!off)
    }

    pub fn memoizes(&self) -> bool {
        self.memoize
    }

    /// Number of recursive evaluations that missed the memo tables.
    pub fn evaluations(&self) -> usize {
        self.evaluations.load(Ordering::Relaxed)
    }

    /// Number of memoized suborder verdicts across all tables.
    pub fn memo_entries(&self) -> usize {
        self.surfaces.len() + self.pcms.len() + self.smooth.len() + self.coherent.len()
    }

    pub(crate) fn cached<V: Clone>(
        &self,
        memo: &Memo<V>,
        view: &SuborderView<'_>,
        compute: impl FnOnce() -> V,
    ) -> V {
        if !self.memoize {
            self.evaluations.fetch_add(1, Ordering::Relaxed);
            return compute();
        }
        let key = SuborderKey::of(view);
        if let Some(v) = memo.get(&key) {
            return v;
        }
        self.evaluations.fetch_add(1, Ordering::Relaxed);
        let v = compute();
        memo.put(key, v.clone());
        v
    }

    /// Strict neighborhood of `h` inside `view`, as a view.
    pub(crate) fn neighborhood<'a>(view: &SuborderView<'a>, h: usize) -> SuborderView<'a> {
        view.restrict(view.ambient().strict_theta(h))
    }

    /// `Some(k)` iff the view is a discrete k-surface.
    pub fn surface_rank(&self, view: &SuborderView<'_>) -> Option<i32> {
        self.cached(&self.surfaces, view, || {
            let n = view.len();
            if n == 0 {
                return Some(-1);
            }
            let r = view.rank();
            if r == 0 {
                // an antichain: two faces are automatically non-adjacent
                return (n == 2).then_some(0);
            }
            if !view.is_connected() {
                return None;
            }
            debug_assert!(r >= 1);
            let all = view
                .faces()
                .all(|h| self.surface_rank(&Self::neighborhood(view, h)) == Some(r - 1));
            all.then_some(r)
        })
    }

    pub fn is_k_surface(&self, view: &SuborderView<'_>) -> SurfaceVerdict {
        let rank = self.surface_rank(view);
        SurfaceVerdict {
            is_surface: rank.is_some(),
            rank_if_surface: rank,
            memo_key: SuborderKey::of(view),
        }
    }

    pub fn is_coherent(&self, view: &SuborderView<'_>) -> bool {
        self.cached(&self.coherent, view, || {
            if view.is_empty() {
                return true;
            }
            let r = view.rank();
            view.faces().all(|h| {
                let nb = Self::neighborhood(view, h);
                nb.rank() == r - 1 && self.is_coherent(&nb)
            })
        })
    }
}

/// Discrete surface test on a whole poset with a fresh recognizer.
pub fn is_k_surface(p: &Poset) -> SurfaceVerdict {
    Recognizer::new().is_k_surface(&p.view())
}

pub fn is_coherent(p: &Poset) -> bool {
    Recognizer::new().is_coherent(&p.view())
}
