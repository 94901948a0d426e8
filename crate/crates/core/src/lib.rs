//! Finite posets and simplicial complexes with recognizers for discrete
//! surfaces, PCMs, smooth PCMs and normal pseudomanifolds.

pub mod border;
pub mod classifier;
pub mod error;
pub mod generators;
pub mod poset;
pub mod simplicial;
pub mod surface;

pub use border::{border, check_condition_c, is_pcm, is_smooth_pcm, BorderDecomposition, PcmVerdict};
pub use classifier::{
    classify_both, classify_fast, classify_recursive, classify_recursive_poset, cross_check,
    Classification, EvalPath, Verdict,
};
pub use error::{Error, Result};
pub use generators::{GeneratorSpec, Instance};
pub use poset::{FaceId, FaceSet, LocalKind, Poset, SuborderView};
pub use simplicial::{Simplex, SimplicialComplex, Vertex};
pub use surface::{is_coherent, is_k_surface, Recognizer, SurfaceVerdict};
