//! Recursive and fast classification, and the cross-check harness between them.
//!
//! The recursive path applies the surface, PCM and smooth-PCM definitions to
//! the face poset. The fast path, for simplicial complexes of rank ≥ 2, reads
//! the verdict off the normal-pseudomanifold test and the ridges lying in a
//! single facet.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::{GeneratorSpec, Instance};
use crate::poset::Poset;
use crate::simplicial::{write_facets, SimplicialComplex};
use crate::surface::Recognizer;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalPath {
    Fast,
    Recursive,
    Both,
}

impl fmt::Display for EvalPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EvalPath::Fast => "fast",
            EvalPath::Recursive => "recursive",
            EvalPath::Both => "both",
        })
    }
}

/// Coarse verdict compared between the two paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Surface,
    Pcm,
    /// Only the empty order.
    SurfaceAndPcm,
    Neither,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Surface => "surface",
            Verdict::Pcm => "pcm",
            Verdict::SurfaceAndPcm => "surface-and-pcm",
            Verdict::Neither => "neither",
        })
    }
}

/// Wall time per check, in milliseconds.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Timings(pub BTreeMap<String, f64>);

impl Timings {
    fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        *self.0.entry(name.to_string()).or_default() += t.elapsed().as_secs_f64() * 1e3;
        out
    }

    pub fn total_ms(&self) -> f64 {
        self.0.values().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub rank: i32,
    pub is_surface: bool,
    pub is_pcm: bool,
    pub is_smooth_pcm: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_pseudomanifold: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_normal_pseudomanifold: Option<bool>,
    /// Absent when the fast path has no border to report (non-normal input).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub border_empty: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub border_face_count: Option<usize>,
    /// Outcome of condition (C) when the fast path evaluated it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition_c: Option<bool>,
    pub path: EvalPath,
    pub timings: Timings,
}

impl Classification {
    pub fn verdict(&self) -> Verdict {
        match (self.is_surface, self.is_pcm) {
            (true, true) => Verdict::SurfaceAndPcm,
            (true, false) => Verdict::Surface,
            (false, true) => Verdict::Pcm,
            (false, false) => Verdict::Neither,
        }
    }
}

/// By-definition classification of a poset.
pub fn classify_recursive_poset(p: &Poset) -> Classification {
    classify_poset_with(p, &Recognizer::from_env())
}

fn classify_poset_with(p: &Poset, rec: &Recognizer) -> Classification {
    let view = p.view();
    let mut t = Timings::default();
    let is_surface = t.time("surface", || rec.surface_rank(&view).is_some());
    let is_pcm = t.time("pcm", || rec.pcm_rank(&view).is_some());
    let is_smooth_pcm = t.time("smooth", || rec.smooth_pcm_rank(&view).is_some());
    let border = t.time("border", || rec.border_set(&view).ok());
    let count = border.map_or(0, |b| b.count_ones(..));
    Classification {
        rank: p.rank(),
        is_surface,
        is_pcm,
        is_smooth_pcm,
        is_pseudomanifold: None,
        is_normal_pseudomanifold: None,
        border_empty: Some(count == 0),
        border_face_count: Some(count),
        condition_c: None,
        path: EvalPath::Recursive,
        timings: t,
    }
}

/// By-definition classification of a complex's face poset, plus the
/// pseudomanifold tests.
pub fn classify_recursive(k: &SimplicialComplex) -> Classification {
    let mut t = Timings::default();
    let p = t.time("face-poset", || k.face_poset());
    let mut c = classify_poset_with(&p, &Recognizer::from_env());
    c.is_pseudomanifold = Some(t.time("pseudomanifold", || k.is_pseudomanifold()));
    c.is_normal_pseudomanifold = Some(t.time("normal", || k.is_normal_pseudomanifold()));
    c.timings.0.extend(t.0);
    c
}

/// Whether `k` is a closed normal pseudomanifold of rank `r`, i.e. the fast
/// stand-in for "is an r-surface".
fn closed_normal_of_rank(k: &SimplicialComplex, r: i32) -> bool {
    match r {
        r if r < 0 => k.is_empty(),
        0 => k.dim() == 0 && k.len() == 2,
        _ => {
            k.dim() == r
                && k.is_normal_pseudomanifold()
                && k.ridge_degrees().values().all(|&d| d == 2)
        }
    }
}

/// Condition (C) read off links inside the border complex: for every border
/// simplex `h`, `lk(h, ΔK)` must be a closed normal pseudomanifold of rank
/// `n − 2 − dim h`.
pub fn condition_c_fast(k: &SimplicialComplex, border: &SimplicialComplex) -> bool {
    let n = k.dim();
    border.simplices().iter().all(|h| {
        border
            .link(h)
            .map(|lk| closed_normal_of_rank(&lk, n - 2 - h.dim()))
            .unwrap_or(false)
    })
}

/// Fast classification. Ranks below 2 fall back to the recursive path, which
/// is then reported as the path taken.
pub fn classify_fast(k: &SimplicialComplex) -> Classification {
    let n = k.dim();
    if n < 2 {
        return classify_recursive(k);
    }
    let mut t = Timings::default();
    let pure = k.is_pure();
    let pm = pure && t.time("pseudomanifold", || k.is_pseudomanifold());
    let normal = pm && t.time("normal", || k.first_abnormal_face().is_none());
    let mut c = Classification {
        rank: n,
        is_surface: false,
        is_pcm: false,
        is_smooth_pcm: false,
        is_pseudomanifold: Some(pm),
        is_normal_pseudomanifold: Some(normal),
        border_empty: None,
        border_face_count: None,
        condition_c: None,
        path: EvalPath::Fast,
        timings: Timings::default(),
    };
    if normal {
        let border = t.time("border", || k.boundary_ridge_closure());
        c.border_empty = Some(border.is_empty());
        c.border_face_count = Some(border.len());
        if border.is_empty() {
            c.is_surface = true;
        } else {
            c.is_pcm = true;
            let cc = t.time("condition-c", || condition_c_fast(k, &border));
            c.condition_c = Some(cc);
            c.is_smooth_pcm = cc
                || t.time("smooth-recursive", || {
                    let p = k.face_poset();
                    Recognizer::from_env().smooth_pcm_rank(&p.view()).is_some()
                });
        }
    }
    c.timings = t;
    c
}

/// Runs both paths and fails when their verdicts, border sizes or smoothness
/// differ.
pub fn classify_both(name: &str, k: &SimplicialComplex) -> Result<Classification> {
    let fast = classify_fast(k);
    let rec = classify_recursive(k);
    compare(name, &fast, &rec)?;
    let mut timings = Timings::default();
    for (prefix, c) in [("fast", &fast), ("recursive", &rec)] {
        for (key, ms) in &c.timings.0 {
            timings.0.insert(format!("{prefix}.{key}"), *ms);
        }
    }
    Ok(Classification {
        path: EvalPath::Both,
        timings,
        condition_c: fast.condition_c,
        ..rec
    })
}

fn compare(name: &str, fast: &Classification, rec: &Classification) -> Result<()> {
    let mut diffs = Vec::new();
    if fast.verdict() != rec.verdict() {
        diffs.push(format!("verdict fast={} recursive={}", fast.verdict(), rec.verdict()));
    }
    if fast.is_smooth_pcm != rec.is_smooth_pcm {
        diffs.push(format!(
            "smooth fast={} recursive={}",
            fast.is_smooth_pcm, rec.is_smooth_pcm
        ));
    }
    if let (Some(a), Some(b)) = (fast.border_face_count, rec.border_face_count) {
        if a != b {
            diffs.push(format!("border faces fast={a} recursive={b}"));
        }
    }
    if diffs.is_empty() {
        Ok(())
    } else {
        Err(Error::Disagreement { instance: name.to_string(), detail: diffs.join("; ") })
    }
}

/// One named simplicial instance of a cross-check corpus.
#[derive(Clone, Debug)]
pub struct NamedComplex {
    pub name: String,
    pub complex: SimplicialComplex,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckEntry {
    pub name: String,
    pub faces: usize,
    pub rank: i32,
    pub verdict: Verdict,
    pub smooth: bool,
    pub pseudomanifold: bool,
    pub normal: bool,
    pub fast_ms: f64,
    pub recursive_ms: f64,
}

impl CrossCheckEntry {
    pub fn speedup(&self) -> f64 {
        if self.fast_ms > 0.0 {
            self.recursive_ms / self.fast_ms
        } else {
            f64::INFINITY
        }
    }
}

/// Counts of instance kinds, to show whether both the vacuous and the
/// non-vacuous sides of the equivalence were exercised.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InstanceMix {
    pub total: usize,
    pub surfaces: usize,
    pub pcms: usize,
    pub smooth_pcms: usize,
    pub neither: usize,
    pub pseudomanifolds: usize,
    pub normal_pseudomanifolds: usize,
    pub by_rank: BTreeMap<i32, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckReport {
    pub entries: Vec<CrossCheckEntry>,
    pub mix: InstanceMix,
}

/// Classifies every instance on both paths, in parallel, keeping input order.
///
/// The first disagreement aborts the run: the instance is written to
/// `dump_dir` as a facet file and a [`Error::Disagreement`] naming the file is
/// returned.
pub fn cross_check(instances: &[NamedComplex], dump_dir: &Path) -> Result<CrossCheckReport> {
    let results: Vec<std::result::Result<CrossCheckEntry, (usize, Error)>> = instances
        .par_iter()
        .enumerate()
        .map(|(i, inst)| {
            let fast = classify_fast(&inst.complex);
            let rec = classify_recursive(&inst.complex);
            compare(&inst.name, &fast, &rec).map_err(|e| (i, e))?;
            Ok(CrossCheckEntry {
                name: inst.name.clone(),
                faces: inst.complex.len(),
                rank: rec.rank,
                verdict: rec.verdict(),
                smooth: rec.is_smooth_pcm,
                pseudomanifold: rec.is_pseudomanifold.unwrap_or(false),
                normal: rec.is_normal_pseudomanifold.unwrap_or(false),
                fast_ms: fast.timings.total_ms(),
                recursive_ms: rec.timings.total_ms(),
            })
        })
        .collect();
    let mut entries = Vec::with_capacity(results.len());
    for r in results {
        match r {
            Ok(e) => entries.push(e),
            Err((i, Error::Disagreement { instance, detail })) => {
                let file = dump_instance(dump_dir, &instances[i]);
                let detail = match file {
                    Ok(path) => format!("{detail} (instance written to {})", path.display()),
                    Err(io) => format!("{detail} (dump failed: {io})"),
                };
                return Err(Error::Disagreement { instance, detail });
            }
            Err((_, e)) => return Err(e),
        }
    }
    let mut mix = InstanceMix { total: entries.len(), ..Default::default() };
    for e in &entries {
        match e.verdict {
            Verdict::Surface => mix.surfaces += 1,
            Verdict::Pcm => mix.pcms += 1,
            Verdict::SurfaceAndPcm => {
                mix.surfaces += 1;
                mix.pcms += 1;
            }
            Verdict::Neither => mix.neither += 1,
        }
        mix.smooth_pcms += usize::from(e.smooth && e.verdict == Verdict::Pcm);
        mix.pseudomanifolds += usize::from(e.pseudomanifold);
        mix.normal_pseudomanifolds += usize::from(e.normal);
        *mix.by_rank.entry(e.rank).or_default() += 1;
    }
    Ok(CrossCheckReport { entries, mix })
}

fn dump_instance(dir: &Path, inst: &NamedComplex) -> std::io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let stem: String = inst
        .name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    let path = dir.join(format!("disagreement-{stem}.facets"));
    std::fs::write(&path, write_facets(&inst.complex))?;
    Ok(path)
}

/// `count` seeded random pure complexes of rank 1..=3 on at most 12 vertices.
pub fn random_corpus(count: usize, seed: u64) -> Vec<NamedComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let dim = [1u32, 2, 2, 2, 3, 3][rng.gen_range(0..6)];
            let vertices = rng.gen_range(dim + 2..=12);
            let facets = rng.gen_range(2..=3 * vertices);
            let s: u64 = rng.gen();
            let spec = GeneratorSpec::RandomPure { dim, vertices, facets, seed: s };
            let complex = spec.generate().ok().and_then(Instance::into_complex).expect("valid spec");
            NamedComplex { name: spec.to_string(), complex }
        })
        .collect()
}

/// Every simplicial generator at a few parameter values, plus cones and
/// suspensions built by join.
pub fn generator_corpus() -> Vec<NamedComplex> {
    use crate::generators::{annulus, disk, sphere};
    let specs = [
        GeneratorSpec::Simplex { n: 0 },
        GeneratorSpec::Simplex { n: 1 },
        GeneratorSpec::Simplex { n: 2 },
        GeneratorSpec::Simplex { n: 3 },
        GeneratorSpec::Sphere { n: 0 },
        GeneratorSpec::Sphere { n: 1 },
        GeneratorSpec::Sphere { n: 2 },
        GeneratorSpec::Sphere { n: 3 },
        GeneratorSpec::Disk { m: 3 },
        GeneratorSpec::Disk { m: 6 },
        GeneratorSpec::Annulus { m: 4 },
        GeneratorSpec::Annulus { m: 6 },
        GeneratorSpec::PinchedSphere,
        GeneratorSpec::PinchedBox { m: 4 },
        GeneratorSpec::PinchedBox { m: 6 },
    ];
    let mut out: Vec<NamedComplex> = specs
        .iter()
        .map(|s| NamedComplex {
            name: s.to_string(),
            complex: s.generate().ok().and_then(Instance::into_complex).expect("simplicial"),
        })
        .collect();
    let point = SimplicialComplex::from_facets([[100u32]]).expect("point");
    let poles = sphere(0).relabel(|v| v + 100);
    out.push(NamedComplex { name: "cone(disk 5)".into(), complex: disk(5).join(&point) });
    out.push(NamedComplex { name: "suspension(sphere 1)".into(), complex: sphere(1).join(&poles) });
    out.push(NamedComplex { name: "suspension(disk 4)".into(), complex: disk(4).join(&poles) });
    out.push(NamedComplex { name: "cone(sphere 2)".into(), complex: sphere(2).join(&point) });
    out.push(NamedComplex { name: "suspension(annulus 4)".into(), complex: annulus(4).join(&poles) });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{disk, pinched_box, sphere};

    #[test]
    fn sphere_fast_path() {
        let c = classify_fast(&sphere(3));
        assert_eq!(c.path, EvalPath::Fast);
        assert_eq!(c.verdict(), Verdict::Surface);
        assert_eq!(c.rank, 3);
        assert!(!c.timings.0.contains_key("smooth-recursive"));
    }

    #[test]
    fn disk_both_paths() {
        let c = classify_both("disk 6", &disk(6)).unwrap();
        assert_eq!(c.verdict(), Verdict::Pcm);
        assert!(c.is_smooth_pcm);
        assert_eq!(c.condition_c, Some(true));
    }

    #[test]
    fn pinched_box_fails_condition_c() {
        let c = classify_fast(&pinched_box(6));
        assert!(c.is_pcm);
        assert_eq!(c.condition_c, Some(false));
        assert!(!c.is_smooth_pcm);
    }

    #[test]
    fn empty_complex() {
        let c = classify_fast(&SimplicialComplex::empty());
        assert_eq!(c.rank, -1);
        assert_eq!(c.verdict(), Verdict::SurfaceAndPcm);
    }
}
