//! Constructive (n−1)-path search by path repair.
//!
//! Start from any zigzag path `facet, face, facet, …` between two top simplices
//! (the middle faces are single shared vertices), then repeatedly take a middle
//! face `p` of minimal dimension `r < n−1` and replace `⟨q, p, q'⟩` by a zigzag
//! inside the cofaces of `p` whose middle faces have dimension `r+1`. When the
//! cofaces of `p` do not connect `q` and `q'` at that level, the segment is
//! rerouted through the whole complex at level `r+1` instead; such reroutes are
//! counted separately so callers can tell whether the local step sufficed.

use std::collections::VecDeque;

use super::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RepairOutcome {
    /// Every pair of top simplices was joined by an (n−1)-path.
    pub connected: bool,
    /// Repairs carried out inside the cofaces of the repaired face.
    pub local_repairs: usize,
    /// Repairs that had to leave the cofaces of the repaired face.
    pub rerouted_repairs: usize,
}

struct Zigzag {
    facets: Vec<usize>,
    middles: Vec<Simplex>,
}

fn shared_prefix(a: &Simplex, b: &Simplex, len: usize, must_contain: Option<&Simplex>) -> Option<Simplex> {
    let common: Vec<u32> = a.vertices().iter().copied().filter(|v| b.vertices().binary_search(v).is_ok()).collect();
    if common.len() < len {
        return None;
    }
    let mut chosen: Vec<u32> = match must_contain {
        Some(p) => {
            if !p.is_face_of(&Simplex::from_sorted(common.clone())) {
                return None;
            }
            p.vertices().to_vec()
        }
        None => Vec::new(),
    };
    for v in common {
        if chosen.len() >= len {
            break;
        }
        if !chosen.contains(&v) {
            chosen.push(v);
        }
    }
    if chosen.len() < len {
        return None;
    }
    chosen.sort_unstable();
    Some(Simplex::from_sorted(chosen))
}

/// BFS over `tops[allowed]`, two tops adjacent when they share a face of
/// `len` vertices (containing `through` when given).
fn zigzag(
    tops: &[&Simplex],
    allowed: &[usize],
    from: usize,
    to: usize,
    len: usize,
    through: Option<&Simplex>,
) -> Option<Zigzag> {
    let mut prev: Vec<Option<(usize, Simplex)>> = vec![None; tops.len()];
    let mut seen = vec![false; tops.len()];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(i) = queue.pop_front() {
        if i == to {
            break;
        }
        for &j in allowed {
            if seen[j] {
                continue;
            }
            if let Some(m) = shared_prefix(tops[i], tops[j], len, through) {
                seen[j] = true;
                prev[j] = Some((i, m));
                queue.push_back(j);
            }
        }
    }
    if !seen[to] {
        return None;
    }
    let mut facets = vec![to];
    let mut middles = Vec::new();
    let mut cur = to;
    while cur != from {
        let (p, m) = prev[cur].clone().expect("bfs parent");
        middles.push(m);
        facets.push(p);
        cur = p;
    }
    facets.reverse();
    middles.reverse();
    Some(Zigzag { facets, middles })
}

/// Decides (n−1)-connectedness of a pure complex by path repair.
pub fn path_repair_connected(k: &SimplicialComplex) -> Result<RepairOutcome> {
    if !k.is_pure() {
        return Err(Error::NotPure(format!("complex of dimension {}", k.dim())));
    }
    let n = k.dim();
    let tops: Vec<&Simplex> = k.simplices_of_dim(n).collect();
    let mut out = RepairOutcome { connected: true, ..Default::default() };
    if tops.len() <= 1 {
        return Ok(out);
    }
    if n == 0 {
        out.connected = false;
        return Ok(out);
    }
    let everything: Vec<usize> = (0..tops.len()).collect();
    let target_len = n as usize; // vertices in an (n−1)-face

    for b in 1..tops.len() {
        let Some(mut path) = zigzag(&tops, &everything, 0, b, 1, None) else {
            out.connected = false;
            return Ok(out);
        };
        while let Some((i, r)) = path
            .middles
            .iter()
            .enumerate()
            .map(|(i, m)| (i, m.vertices().len()))
            .min_by_key(|&(i, len)| (len, i))
        {
            if r >= target_len {
                break;
            }
            let p = path.middles[i].clone();
            let (q, q2) = (path.facets[i], path.facets[i + 1]);
            let star: Vec<usize> =
                everything.iter().copied().filter(|&j| p.is_face_of(tops[j])).collect();
            let piece = match zigzag(&tops, &star, q, q2, r + 1, Some(&p)) {
                Some(z) => {
                    out.local_repairs += 1;
                    z
                }
                None => match zigzag(&tops, &everything, q, q2, r + 1, None) {
                    Some(z) => {
                        out.rerouted_repairs += 1;
                        z
                    }
                    None => {
                        out.connected = false;
                        return Ok(out);
                    }
                },
            };
            path.facets.splice(i..=i + 1, piece.facets);
            path.middles.splice(i..=i, piece.middles);
        }
        debug_assert!(path
            .middles
            .iter()
            .zip(path.facets.windows(2))
            .all(|(m, w)| m.dim() == n - 1 && m.is_face_of(tops[w[0]]) && m.is_face_of(tops[w[1]])));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(facets: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|f| f.iter().copied())).unwrap()
    }

    #[test]
    fn closed_surface_needs_no_reroute() {
        let k = cx(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        let o = path_repair_connected(&k).unwrap();
        assert!(o.connected);
        assert_eq!(o.rerouted_repairs, 0);
    }

    #[test]
    fn bowtie_is_not_connected() {
        let o = path_repair_connected(&cx(&[&[1, 2, 3], &[3, 4, 5]])).unwrap();
        assert!(!o.connected);
    }

    #[test]
    fn strip_around_a_vertex() {
        // a fan of triangles around 0 that is repaired locally at vertex 0
        let k = cx(&[&[0, 1, 2], &[0, 2, 3], &[0, 3, 4], &[0, 4, 5]]);
        let o = path_repair_connected(&k).unwrap();
        assert!(o.connected);
    }
}
