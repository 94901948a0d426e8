//! Border and interior, n-PCMs, smooth n-PCMs and the smoothness condition (C).
//!
//! The border of a rank-n poset is the set of faces whose strict neighborhood
//! is not an (n−1)-surface. A PCM is connected, has a nonempty border, and every
//! strict neighborhood is an (n−1)-surface (interior faces) or an (n−1)-PCM
//! (border faces). Smooth PCMs additionally require the border to split into
//! separated (n−1)-surfaces, recursively.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::{FaceSet, Poset, SuborderView};
use crate::simplicial::SimplicialComplex;
use crate::surface::{Recognizer, SurfaceVerdict};

/// Verdict of the PCM recognizers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PcmVerdict {
    pub is_pcm: bool,
    /// Rank of the tested poset (`-1` for the empty order).
    pub rank: i32,
}

/// `ΔX` and `Int X`, with the border split into θ-connected components.
#[derive(Clone, Debug)]
pub struct BorderDecomposition {
    pub border_faces: FaceSet,
    pub interior_faces: FaceSet,
    pub components: Vec<(FaceSet, SurfaceVerdict)>,
}

impl BorderDecomposition {
    pub fn is_empty(&self) -> bool {
        self.border_faces.is_clear()
    }

    pub fn border_len(&self) -> usize {
        self.border_faces.count_ones(..)
    }
}

impl Recognizer {
    /// Border faces of a view of rank `r ≥ 0`.
    pub fn border_set(&self, view: &SuborderView<'_>) -> Result<FaceSet> {
        if view.is_empty() {
            return Err(Error::EmptyBorder);
        }
        let r = view.rank();
        let mut border = FaceSet::with_capacity(view.ambient().len());
        for h in view.faces() {
            if self.surface_rank(&Self::neighborhood(view, h)) != Some(r - 1) {
                border.insert(h);
            }
        }
        Ok(border)
    }

    pub fn border(&self, view: &SuborderView<'_>) -> Result<BorderDecomposition> {
        let border_faces = self.border_set(view)?;
        let mut interior_faces = view.members().clone();
        interior_faces.difference_with(&border_faces);
        let border_view = view.restrict(&border_faces);
        let components = border_view
            .components()
            .into_iter()
            .map(|c| {
                let verdict = self.is_k_surface(&view.restrict(&c));
                (c, verdict)
            })
            .collect();
        Ok(BorderDecomposition { border_faces, interior_faces, components })
    }

    /// `Some(n)` iff the view is an n-PCM.
    pub fn pcm_rank(&self, view: &SuborderView<'_>) -> Option<i32> {
        self.cached(&self.pcms, view, || {
            let n = view.len();
            if n == 0 {
                return Some(-1);
            }
            let r = view.rank();
            if r == 0 {
                return (n == 1).then_some(0);
            }
            if !view.is_connected() {
                return None;
            }
            let mut has_border = false;
            for h in view.faces() {
                let nb = Self::neighborhood(view, h);
                if self.surface_rank(&nb) == Some(r - 1) {
                    continue;
                }
                if self.pcm_rank(&nb) != Some(r - 1) {
                    return None;
                }
                has_border = true;
            }
            has_border.then_some(r)
        })
    }

    pub fn is_pcm(&self, view: &SuborderView<'_>) -> PcmVerdict {
        PcmVerdict { is_pcm: self.pcm_rank(view).is_some(), rank: view.rank() }
    }

    /// `Some(n)` iff the view is a smooth n-PCM.
    pub fn smooth_pcm_rank(&self, view: &SuborderView<'_>) -> Option<i32> {
        self.cached(&self.smooth, view, || {
            let n = view.len();
            if n == 0 {
                return Some(-1);
            }
            let r = view.rank();
            if r == 0 {
                return (n == 1).then_some(0);
            }
            if !view.is_connected() {
                return None;
            }
            let mut border = FaceSet::with_capacity(view.ambient().len());
            for h in view.faces() {
                let nb = Self::neighborhood(view, h);
                if self.surface_rank(&nb) == Some(r - 1) {
                    continue;
                }
                if self.smooth_pcm_rank(&nb) != Some(r - 1) {
                    return None;
                }
                border.insert(h);
            }
            if border.is_clear() {
                return None;
            }
            self.is_union_of_separated_surfaces(&view.restrict(&border), r - 1)
                .then_some(r)
        })
    }

    pub fn is_smooth_pcm(&self, view: &SuborderView<'_>) -> PcmVerdict {
        PcmVerdict { is_pcm: self.smooth_pcm_rank(view).is_some(), rank: view.rank() }
    }

    /// Whether a nonempty suborder is a k-surface or a separated union of
    /// k-surfaces.
    ///
    /// For `k ≥ 1` surfaces are connected, so the only candidate decomposition
    /// is the one into θ-components. For `k = 0` every face is its own component
    /// and the faces must pair up: an antichain of even size.
    fn is_union_of_separated_surfaces(&self, part: &SuborderView<'_>, k: i32) -> bool {
        if part.is_empty() {
            return false;
        }
        if k == 0 {
            return part.rank() == 0 && part.len().is_multiple_of(2);
        }
        part.components()
            .iter()
            .all(|c| self.surface_rank(&part.restrict(c)) == Some(k))
    }

    /// Condition (C) evaluated by the recursive definition: for every border
    /// face `h`, `θ□(h)` inside the border is an (n−2)-surface.
    pub fn condition_c_holds(&self, view: &SuborderView<'_>) -> Result<bool> {
        let border = self.border_set(view)?;
        let r = view.rank();
        let bview = view.restrict(&border);
        Ok(border
            .ones()
            .all(|h| self.surface_rank(&Self::neighborhood(&bview, h)) == Some(r - 2)))
    }
}

pub fn border(p: &Poset) -> Result<BorderDecomposition> {
    Recognizer::new().border(&p.view())
}

pub fn is_pcm(p: &Poset) -> PcmVerdict {
    Recognizer::new().is_pcm(&p.view())
}

pub fn is_smooth_pcm(p: &Poset) -> PcmVerdict {
    Recognizer::new().is_smooth_pcm(&p.view())
}

/// Condition (C) on a simplicial n-PCM, `n ≥ 2`. The PCM precondition is
/// verified and reported as an error when it fails.
pub fn check_condition_c(k: &SimplicialComplex) -> Result<bool> {
    let p = k.face_poset();
    let rec = Recognizer::new();
    let view = p.view();
    let n = p.rank();
    if n < 2 {
        return Err(Error::Precondition(format!("condition (C) needs rank ≥ 2, got {n}")));
    }
    if rec.pcm_rank(&view) != Some(n) {
        return Err(Error::Precondition("condition (C) needs an n-PCM".into()));
    }
    rec.condition_c_holds(&view)
}
