//! Deterministic constructors for the standard test instances.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::{IteratorRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::simplicial::{Simplex, SimplicialComplex, Vertex};

/// A named, parameterized instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    /// The full n-simplex `Δⁿ`.
    Simplex { n: u32 },
    /// `∂Δⁿ⁺¹`, a discrete n-surface.
    Sphere { n: u32 },
    /// Cone over an m-cycle.
    Disk { m: u32 },
    /// Two m-cycles joined by a band of 2m triangles.
    Annulus { m: u32 },
    /// Icosahedron with two antipodal vertices identified.
    PinchedSphere,
    /// Cone over `Annulus { m }`.
    PinchedBox { m: u32 },
    /// Closed cubical block of `w × h` unit squares, as a poset.
    Khalimsky { w: u32, h: u32 },
    /// Pure d-dimensional complex grown by facet gluing over a vertex pool.
    RandomPure { dim: u32, vertices: u32, facets: u32, seed: u64 },
}

/// What a generator produces.
#[derive(Clone, Debug)]
pub enum Instance {
    Complex(SimplicialComplex),
    Poset(Poset),
}

impl Instance {
    pub fn poset(&self) -> Poset {
        match self {
            Instance::Complex(k) => k.face_poset(),
            Instance::Poset(p) => p.clone(),
        }
    }

    pub fn complex(&self) -> Option<&SimplicialComplex> {
        match self {
            Instance::Complex(k) => Some(k),
            Instance::Poset(_) => None,
        }
    }

    pub fn into_complex(self) -> Option<SimplicialComplex> {
        match self {
            Instance::Complex(k) => Some(k),
            Instance::Poset(_) => None,
        }
    }
}

pub const GENERATOR_NAMES: &[&str] = &[
    "simplex",
    "sphere",
    "disk",
    "annulus",
    "pinched-sphere",
    "pinched-box",
    "khalimsky",
    "random-pure",
];

fn bound(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Parameter(msg()))
    }
}

impl GeneratorSpec {
    /// Parses a generator name and its integer parameters.
    pub fn parse(name: &str, params: &[u64]) -> Result<Self> {
        let want = |k: usize, usage: &str| -> Result<()> {
            bound(params.len() == k, || format!("`{name}` takes {k} parameter(s): {usage}"))
        };
        let small = |x: u64| -> Result<u32> {
            u32::try_from(x).map_err(|_| Error::Parameter(format!("{x} does not fit in 32 bits")))
        };
        let spec = match name {
            "simplex" => {
                want(1, "simplex <n>")?;
                GeneratorSpec::Simplex { n: small(params[0])? }
            }
            "sphere" => {
                want(1, "sphere <n>")?;
                GeneratorSpec::Sphere { n: small(params[0])? }
            }
            "disk" => {
                want(1, "disk <m>")?;
                GeneratorSpec::Disk { m: small(params[0])? }
            }
            "annulus" => {
                want(1, "annulus <m>")?;
                GeneratorSpec::Annulus { m: small(params[0])? }
            }
            "pinched-sphere" => {
                want(0, "pinched-sphere")?;
                GeneratorSpec::PinchedSphere
            }
            "pinched-box" => {
                want(1, "pinched-box <m>")?;
                GeneratorSpec::PinchedBox { m: small(params[0])? }
            }
            "khalimsky" => {
                want(2, "khalimsky <w> <h>")?;
                GeneratorSpec::Khalimsky { w: small(params[0])?, h: small(params[1])? }
            }
            "random-pure" => {
                want(4, "random-pure <dim> <vertices> <facets> <seed>")?;
                GeneratorSpec::RandomPure {
                    dim: small(params[0])?,
                    vertices: small(params[1])?,
                    facets: small(params[2])?,
                    seed: params[3],
                }
            }
            other => {
                return Err(Error::Parameter(format!(
                    "unknown generator `{other}` (known: {})",
                    GENERATOR_NAMES.join(", ")
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            GeneratorSpec::Simplex { n } => bound(n <= 12, || format!("simplex n={n}: need n ≤ 12")),
            GeneratorSpec::Sphere { n } => bound(n <= 10, || format!("sphere n={n}: need n ≤ 10")),
            GeneratorSpec::Disk { m } => {
                bound((3..=10_000).contains(&m), || format!("disk m={m}: need 3 ≤ m ≤ 10000"))
            }
            GeneratorSpec::Annulus { m } | GeneratorSpec::PinchedBox { m } => {
                bound((4..=10_000).contains(&m), || format!("cycle length m={m}: need 4 ≤ m ≤ 10000"))
            }
            GeneratorSpec::PinchedSphere => Ok(()),
            GeneratorSpec::Khalimsky { w, h } => bound(
                (1..=200).contains(&w) && (1..=200).contains(&h),
                || format!("khalimsky {w}x{h}: need 1 ≤ w, h ≤ 200"),
            ),
            GeneratorSpec::RandomPure { dim, vertices, facets, .. } => {
                bound(dim <= 6, || format!("random-pure dim={dim}: need dim ≤ 6"))?;
                bound(
                    vertices > dim && vertices <= 64,
                    || format!("random-pure vertices={vertices}: need dim < vertices ≤ 64"),
                )?;
                bound(
                    (1..=500).contains(&facets),
                    || format!("random-pure facets={facets}: need 1 ≤ facets ≤ 500"),
                )
            }
        }
    }

    pub fn generate(&self) -> Result<Instance> {
        self.validate()?;
        Ok(match *self {
            GeneratorSpec::Simplex { n } => Instance::Complex(simplex(n)),
            GeneratorSpec::Sphere { n } => Instance::Complex(sphere(n)),
            GeneratorSpec::Disk { m } => Instance::Complex(disk(m)),
            GeneratorSpec::Annulus { m } => Instance::Complex(annulus(m)),
            GeneratorSpec::PinchedSphere => Instance::Complex(pinched_sphere()),
            GeneratorSpec::PinchedBox { m } => Instance::Complex(pinched_box(m)),
            GeneratorSpec::Khalimsky { w, h } => Instance::Poset(khalimsky(w, h)),
            GeneratorSpec::RandomPure { dim, vertices, facets, seed } => {
                Instance::Complex(random_pure(dim, vertices, facets, seed))
            }
        })
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Simplex { n } => write!(f, "simplex {n}"),
            GeneratorSpec::Sphere { n } => write!(f, "sphere {n}"),
            GeneratorSpec::Disk { m } => write!(f, "disk {m}"),
            GeneratorSpec::Annulus { m } => write!(f, "annulus {m}"),
            GeneratorSpec::PinchedSphere => write!(f, "pinched-sphere"),
            GeneratorSpec::PinchedBox { m } => write!(f, "pinched-box {m}"),
            GeneratorSpec::Khalimsky { w, h } => write!(f, "khalimsky {w} {h}"),
            GeneratorSpec::RandomPure { dim, vertices, facets, seed } => {
                write!(f, "random-pure {dim} {vertices} {facets} {seed}")
            }
        }
    }
}

fn complex(facets: Vec<Vec<Vertex>>) -> SimplicialComplex {
    SimplicialComplex::from_facets(facets).expect("generator facets are nonempty")
}

pub fn simplex(n: u32) -> SimplicialComplex {
    complex(vec![(0..=n).collect()])
}

/// Boundary of the (n+1)-simplex on vertices `0..=n+1`.
pub fn sphere(n: u32) -> SimplicialComplex {
    let all: Vec<Vertex> = (0..=n + 1).collect();
    let facets = (0..all.len())
        .map(|skip| all.iter().copied().filter(|&v| v != skip as Vertex).collect())
        .collect();
    complex(facets)
}

/// m-cycle on `1..=m` coned from vertex 0.
pub fn disk(m: u32) -> SimplicialComplex {
    let facets = (0..m).map(|i| vec![0, 1 + i, 1 + (i + 1) % m]).collect();
    complex(facets)
}

/// Outer cycle `0..m`, inner cycle `m..2m`.
pub fn annulus(m: u32) -> SimplicialComplex {
    let a = |i: u32| i % m;
    let b = |i: u32| m + i % m;
    let mut facets = Vec::new();
    for i in 0..m {
        facets.push(vec![a(i), a(i + 1), b(i)]);
        facets.push(vec![a(i + 1), b(i), b(i + 1)]);
    }
    complex(facets)
}

/// Regular icosahedron: apex 0, upper ring 1..=5, lower ring 6..=10, apex 11.
pub fn icosahedron() -> SimplicialComplex {
    let up = |i: u32| 1 + i % 5;
    let low = |i: u32| 6 + i % 5;
    let mut facets = Vec::new();
    for i in 0..5 {
        facets.push(vec![0, up(i), up(i + 1)]);
        facets.push(vec![11, low(i), low(i + 1)]);
        facets.push(vec![up(i), up(i + 1), low(i)]);
        facets.push(vec![up(i + 1), low(i), low(i + 1)]);
    }
    complex(facets)
}

/// Icosahedron with apex 11 identified with apex 0. The two apexes are
/// non-adjacent with disjoint links, so no simplex collapses.
pub fn pinched_sphere() -> SimplicialComplex {
    icosahedron().relabel(|v| if v == 11 { 0 } else { v })
}

/// Cone over `annulus(m)` with apex `2m`.
pub fn pinched_box(m: u32) -> SimplicialComplex {
    let apex = complex(vec![vec![2 * m]]);
    annulus(m).join(&apex)
}

/// Khalimsky block `[0, 2w] × [0, 2h]`: a point's rank is its number of odd
/// coordinates; it covers the points obtained by moving one odd coordinate by
/// one. Faces are numbered row by row.
pub fn khalimsky(w: u32, h: u32) -> Poset {
    let (nx, ny) = (2 * w as usize + 1, 2 * h as usize + 1);
    let id = |x: usize, y: usize| y * nx + x;
    let mut below = Vec::with_capacity(nx * ny);
    let mut labels = Vec::with_capacity(nx * ny);
    for y in 0..ny {
        for x in 0..nx {
            let mut gens = Vec::new();
            if x % 2 == 1 {
                gens.push(id(x - 1, y));
                gens.push(id(x + 1, y));
            }
            if y % 2 == 1 {
                gens.push(id(x, y - 1));
                gens.push(id(x, y + 1));
            }
            below.push(gens);
            labels.push(Some(format!("k{x}_{y}")));
        }
    }
    Poset::from_relation(below, labels).expect("khalimsky order is acyclic")
}

/// Ridges (codimension-one faces) lying in exactly one facet of `facets`.
fn open_ridges(facets: &BTreeSet<Vec<Vertex>>) -> Vec<Vec<Vertex>> {
    let mut count: std::collections::BTreeMap<Vec<Vertex>, usize> = Default::default();
    for f in facets {
        for skip in 0..f.len() {
            let r: Vec<Vertex> =
                f.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            *count.entry(r).or_default() += 1;
        }
    }
    count.into_iter().filter(|&(_, c)| c == 1).map(|(r, _)| r).collect()
}

/// Pure `dim`-dimensional complex on the vertex pool `0..vertices`.
///
/// Growth is mostly by gluing: pick a ridge lying in one facet and add the
/// facet spanned by it and an apex, preferring apexes already in use so the
/// complex tends to close up. Occasionally a uniformly random facet is added
/// instead. The result is pure by construction; whether it is a pseudomanifold
/// varies with the seed.
pub fn random_pure(dim: u32, vertices: u32, facets: u32, seed: u64) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = dim as usize + 1;
    let pool: Vec<Vertex> = (0..vertices).collect();
    let random_facet = |rng: &mut ChaCha8Rng| {
        let mut f: Vec<Vertex> = pool.choose_multiple(rng, k).copied().collect();
        f.sort_unstable();
        f
    };
    let mut out: BTreeSet<Vec<Vertex>> = BTreeSet::new();
    out.insert(random_facet(&mut rng));
    let mut attempts = 0;
    while out.len() < facets as usize && attempts < 40 * facets as usize {
        attempts += 1;
        let candidate = if dim > 0 && rng.gen_bool(0.8) {
            let ridges = open_ridges(&out);
            let Some(ridge) = ridges.choose(&mut rng) else {
                continue;
            };
            let used: BTreeSet<Vertex> = out.iter().flatten().copied().collect();
            let apex = if rng.gen_bool(0.6) {
                used.iter().copied().filter(|v| !ridge.contains(v)).choose(&mut rng)
            } else {
                pool.iter().copied().filter(|v| !ridge.contains(v)).choose(&mut rng)
            };
            let Some(apex) = apex else {
                continue;
            };
            let mut f = ridge.clone();
            f.push(apex);
            f.sort_unstable();
            f
        } else {
            random_facet(&mut rng)
        };
        out.insert(candidate);
    }
    SimplicialComplex::from_simplices(
        out.into_iter().map(|f| Simplex::new(f).expect("nonempty")),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_counts() {
        assert_eq!(sphere(2).len(), 14);
        assert_eq!(sphere(0).len(), 2);
        assert_eq!(disk(6).f_vector(), vec![7, 12, 6]);
        assert_eq!(annulus(6).f_vector(), vec![12, 24, 12]);
        assert_eq!(icosahedron().f_vector(), vec![12, 30, 20]);
        assert_eq!(pinched_sphere().f_vector(), vec![11, 30, 20]);
        assert_eq!(pinched_box(6).f_vector(), vec![13, 36, 36, 12]);
        assert_eq!(khalimsky(3, 3).len(), 49);
    }

    #[test]
    fn parse_and_bounds() {
        assert_eq!(GeneratorSpec::parse("sphere", &[2]).unwrap(), GeneratorSpec::Sphere { n: 2 });
        assert!(matches!(GeneratorSpec::parse("annulus", &[3]), Err(Error::Parameter(_))));
        assert!(matches!(GeneratorSpec::parse("disk", &[]), Err(Error::Parameter(_))));
        assert!(matches!(GeneratorSpec::parse("torus", &[1]), Err(Error::Parameter(_))));
        let s = GeneratorSpec::parse("random-pure", &[2, 8, 10, 7]).unwrap();
        assert_eq!(s.to_string(), "random-pure 2 8 10 7");
    }

    #[test]
    fn random_is_deterministic_and_pure() {
        let a = random_pure(2, 9, 12, 42);
        let b = random_pure(2, 9, 12, 42);
        assert_eq!(a, b);
        assert!(a.is_pure());
        assert_eq!(a.dim(), 2);
    }
}
