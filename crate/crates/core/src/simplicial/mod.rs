//! Abstract simplicial complexes, links, joins and pseudomanifold recognition.
//!
//! A complex is stored as its full inclusion-closed family of nonempty
//! simplices, sorted by dimension and then lexicographically. The empty simplex
//! is never a face, so ranks in the face poset start at the vertices.

mod facets;
mod repair;

pub use facets::{parse_facets, write_facets};
pub use repair::{path_repair_connected, RepairOutcome};

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::Poset;

pub type Vertex = u32;

/// A nonempty, strictly sorted vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    pub fn new<I: IntoIterator<Item = Vertex>>(vertices: I) -> Result<Self> {
        let mut v: Vec<Vertex> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Err(Error::EmptyFacet(0));
        }
        Ok(Simplex(v))
    }

    pub(crate) fn from_sorted(v: Vec<Vertex>) -> Self {
        debug_assert!(!v.is_empty() && v.windows(2).all(|w| w[0] < w[1]));
        Simplex(v)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    /// Cardinality minus one.
    pub fn dim(&self) -> i32 {
        self.0.len() as i32 - 1
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().all(|v| other.0.binary_search(v).is_ok())
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.0.binary_search(v).is_err())
    }

    /// `self ∘ other` for disjoint simplices.
    pub fn union(&self, other: &Simplex) -> Simplex {
        let set: BTreeSet<Vertex> = self.0.iter().chain(&other.0).copied().collect();
        Simplex(set.into_iter().collect())
    }

    /// `self \ other`, or `None` when nothing is left.
    pub fn minus(&self, other: &Simplex) -> Option<Simplex> {
        let v: Vec<Vertex> =
            self.0.iter().copied().filter(|x| other.0.binary_search(x).is_err()).collect();
        (!v.is_empty()).then_some(Simplex(v))
    }

    /// Faces of codimension one.
    pub fn boundary(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |skip| {
            Simplex(
                self.0.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect(),
            )
        })
    }

    /// Label used in the Hasse format: vertices joined by commas.
    pub fn label(&self) -> String {
        self.0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.label())
    }
}

/// A finite simplicial complex.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
    facets: Vec<usize>,
    dim: i32,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::from_simplex_set(BTreeSet::new())
    }

    /// Downward closure of the given vertex sets.
    pub fn from_facets<F, I>(facets: F) -> Result<Self>
    where
        F: IntoIterator<Item = I>,
        I: IntoIterator<Item = Vertex>,
    {
        let mut all = BTreeSet::new();
        for (pos, f) in facets.into_iter().enumerate() {
            let s = Simplex::new(f).map_err(|_| Error::EmptyFacet(pos))?;
            close_into(&s, &mut all);
        }
        Ok(Self::from_simplex_set(all))
    }

    pub fn from_simplices<I: IntoIterator<Item = Simplex>>(simplices: I) -> Self {
        let mut all = BTreeSet::new();
        for s in simplices {
            close_into(&s, &mut all);
        }
        Self::from_simplex_set(all)
    }

    fn from_simplex_set(all: BTreeSet<Simplex>) -> Self {
        let simplices: Vec<Simplex> = all.into_iter().collect();
        let index: HashMap<Simplex, usize> =
            simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let dim = simplices.last().map(|s| s.dim()).unwrap_or(-1);
        let mut maximal = vec![true; simplices.len()];
        for s in &simplices {
            for b in s.boundary() {
                maximal[index[&b]] = false;
            }
        }
        let facets = (0..simplices.len()).filter(|&i| maximal[i]).collect();
        SimplicialComplex { simplices, index, facets, dim }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Dimension, `-1` for the empty complex.
    pub fn dim(&self) -> i32 {
        self.dim
    }

    /// All simplices, ordered by dimension then lexicographically.
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn facets(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.facets.iter().map(|&i| &self.simplices[i])
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.simplices.iter().filter(|s| s.dim() == 0).map(|s| s.0[0]).collect()
    }

    pub fn simplices_of_dim(&self, d: i32) -> impl Iterator<Item = &Simplex> + '_ {
        self.simplices.iter().filter(move |s| s.dim() == d)
    }

    /// Number of simplices per dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; (self.dim + 1).max(0) as usize];
        for s in &self.simplices {
            f[s.dim() as usize] += 1;
        }
        f
    }

    /// Face poset: one face per simplex (same ids as [`Self::simplices`]),
    /// covering = codimension-one inclusion.
    pub fn face_poset(&self) -> Poset {
        let below = self
            .simplices
            .iter()
            .map(|s| s.boundary().map(|b| self.index[&b]).collect())
            .collect();
        let labels = self.simplices.iter().map(|s| Some(s.label())).collect();
        let p = Poset::from_relation(below, labels).expect("inclusion is acyclic");
        debug_assert!(self.simplices.iter().enumerate().all(|(i, s)| p.face_ranks()[i] == s.dim()));
        p
    }

    /// `lk(h, K) = { h' : h' ∩ h = ∅, h ∪ h' ∈ K }`.
    pub fn link(&self, h: &Simplex) -> Result<SimplicialComplex> {
        if !self.contains(h) {
            return Err(Error::UnknownSimplex(h.to_string()));
        }
        Ok(self.link_unchecked(h))
    }

    fn link_unchecked(&self, h: &Simplex) -> SimplicialComplex {
        let mut all = BTreeSet::new();
        for f in self.facets() {
            if h.is_face_of(f) {
                if let Some(rest) = f.minus(h) {
                    close_into(&rest, &mut all);
                }
            }
        }
        Self::from_simplex_set(all)
    }

    /// Faces strictly containing `h` (the coface set `β□(h)`).
    pub fn cofaces(&self, h: &Simplex) -> Vec<&Simplex> {
        self.simplices.iter().filter(|s| s.dim() > h.dim() && h.is_face_of(s)).collect()
    }

    /// Largest vertex label plus one (`0` when empty).
    fn vertex_bound(&self) -> Vertex {
        self.simplices.iter().filter_map(|s| s.0.last()).max().map_or(0, |&v| v + 1)
    }

    /// Simplicial join `K ∘ L`. When the vertex sets overlap, `L` is renumbered
    /// by the vertex bound of `K`.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mine: BTreeSet<Vertex> = self.vertices().into_iter().collect();
        let overlap = other.vertices().iter().any(|v| mine.contains(v));
        let shift = if overlap { self.vertex_bound() } else { 0 };
        let shifted: Vec<Simplex> = other
            .facets()
            .map(|f| Simplex(f.0.iter().map(|v| v + shift).collect()))
            .collect();
        if self.is_empty() {
            return Self::from_simplices(shifted);
        }
        if shifted.is_empty() {
            return self.clone();
        }
        let mut out = Vec::new();
        for a in self.facets() {
            for b in &shifted {
                out.push(a.union(b));
            }
        }
        Self::from_simplices(out)
    }

    /// Every simplex lies in a simplex of dimension `dim(K)`.
    pub fn is_pure(&self) -> bool {
        self.facets().all(|f| f.dim() == self.dim)
    }

    /// Number of top-dimensional simplices containing each (n−1)-simplex.
    pub fn ridge_degrees(&self) -> HashMap<&Simplex, usize> {
        let mut deg: HashMap<&Simplex, usize> = HashMap::new();
        for s in self.simplices_of_dim(self.dim - 1) {
            deg.insert(s, 0);
        }
        for f in self.simplices_of_dim(self.dim) {
            for b in f.boundary() {
                if let Some((k, _)) = self.index.get_key_value(&b) {
                    *deg.entry(k).or_insert(0) += 1;
                }
            }
        }
        deg
    }

    /// Facet dual graph connectivity: top simplices adjacent when they share a
    /// codimension-one face. Equivalent to (n−1)-connectedness on pure input.
    pub fn is_codim1_connected(&self) -> Result<bool> {
        if !self.is_pure() {
            return Err(Error::NotPure(format!("complex of dimension {}", self.dim)));
        }
        Ok(self.dual_graph_connected())
    }

    fn dual_graph_connected(&self) -> bool {
        let tops: Vec<&Simplex> = self.simplices_of_dim(self.dim).collect();
        if tops.len() <= 1 {
            return true;
        }
        let mut uf = UnionFind::new(tops.len());
        let mut first_owner: HashMap<Simplex, usize> = HashMap::new();
        for (i, f) in tops.iter().enumerate() {
            for b in f.boundary() {
                match first_owner.get(&b) {
                    Some(&j) => uf.union(i, j),
                    None => {
                        first_owner.insert(b, i);
                    }
                }
            }
        }
        uf.components() == 1
    }

    /// Codimension-one connectivity of the cofaces of `h`, decided on the link.
    pub fn is_codim1_connected_above(&self, h: &Simplex) -> Result<bool> {
        self.link(h)?.is_codim1_connected()
    }

    /// Rank 0: a single vertex. Rank ≥ 1: pure, every (n−1)-face in one or two
    /// n-faces, and codimension-one connected.
    pub fn is_pseudomanifold(&self) -> bool {
        match self.dim {
            d if d < 0 => false,
            0 => self.simplices.len() == 1,
            _ => {
                self.is_pure()
                    && self.ridge_degrees().values().all(|&d| d == 1 || d == 2)
                    && self.dual_graph_connected()
            }
        }
    }

    /// A pseudomanifold whose faces of dimension ≤ n−2 all have pseudomanifold
    /// links.
    pub fn is_normal_pseudomanifold(&self) -> bool {
        self.is_pseudomanifold() && self.first_abnormal_face().is_none()
    }

    /// First face of dimension ≤ n−2 whose link is not a pseudomanifold.
    pub fn first_abnormal_face(&self) -> Option<&Simplex> {
        self.simplices
            .iter()
            .take_while(|s| s.dim() <= self.dim - 2)
            .find(|s| !self.link_unchecked(s).is_pseudomanifold())
    }

    /// Downward closure of the (n−1)-simplices lying in exactly one n-simplex.
    pub fn boundary_ridge_closure(&self) -> SimplicialComplex {
        let ridges: Vec<Simplex> = self
            .ridge_degrees()
            .into_iter()
            .filter(|&(_, d)| d == 1)
            .map(|(s, _)| s.clone())
            .collect();
        Self::from_simplices(ridges)
    }

    /// Applies a vertex relabelling; simplices that collapse are dropped from
    /// the facet list, and the result is re-closed.
    pub fn relabel(&self, f: impl Fn(Vertex) -> Vertex) -> SimplicialComplex {
        let facets: Vec<Simplex> =
            self.facets().map(|s| Simplex::new(s.0.iter().map(|&v| f(v))).expect("nonempty")).collect();
        Self::from_simplices(facets)
    }
}

fn close_into(s: &Simplex, all: &mut BTreeSet<Simplex>) {
    if all.contains(s) {
        return;
    }
    let v = &s.0;
    let n = v.len();
    debug_assert!(n < 32, "simplex too large to enumerate faces");
    for mask in 1u32..(1u32 << n) {
        let sub: Vec<Vertex> = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| v[i]).collect();
        all.insert(Simplex(sub));
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

/// Summary of a complex for reports.
#[derive(Clone, Debug, Serialize)]
pub struct ComplexSummary {
    pub vertices: usize,
    pub faces: usize,
    pub faces_per_dim: Vec<usize>,
}

impl From<&SimplicialComplex> for ComplexSummary {
    fn from(k: &SimplicialComplex) -> Self {
        ComplexSummary { vertices: k.vertices().len(), faces: k.len(), faces_per_dim: k.f_vector() }
    }
}
