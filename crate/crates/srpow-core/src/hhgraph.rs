//! The labelled Hochster-Huneke graph on the associated primes of k[Δ],
//! locally connected paths and distances, the graph-theoretic (S₂)
//! criterion, 2-local connectedness, and cone-vertex detection.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};

/// Labelled graph: one vertex per associated prime 𝔭_F, labelled by the
/// variables *not* in the prime (the facet F itself); {𝔭, 𝔮} is an edge iff
/// |v_𝔭 ∩ v_𝔮| = |v_𝔭| - 1.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HHGraph {
    pub n: u32,
    /// prime variable sets, in canonical order
    pub primes: Vec<Face>,
    /// labels[i] = complement of primes[i] (a facet of Δ)
    pub labels: Vec<Face>,
    /// adjacency bitmask per vertex
    pub adj: Vec<u64>,
}

pub fn build_graph(c: &SimplicialComplex) -> Result<HHGraph> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    let primes = c.associated_primes();
    if primes.len() > 64 {
        return Err(Error::ResourceGuard(format!(
            "Hochster-Huneke graph on {} primes exceeds the supported 64",
            primes.len()
        )));
    }
    let labels: Vec<Face> = primes.iter().map(|p| p.complement(c.n())).collect();
    let mut adj = vec![0u64; primes.len()];
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            if labels[i].intersection(labels[j]).len() + 1 == labels[i].len() {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    Ok(HHGraph {
        n: c.n(),
        primes,
        labels,
        adj,
    })
}

impl HHGraph {
    pub fn vertex_of_prime(&self, prime: Face) -> Option<usize> {
        self.primes.iter().position(|p| *p == prime)
    }

    /// a(𝔭, 𝔮): length in edges of a shortest locally connected path, i.e. a
    /// path all of whose intermediate labels contain v_𝔭 ∩ v_𝔮 (equivalently
    /// every intermediate prime sits inside 𝔭 + 𝔮). `None` when no such
    /// path exists.
    pub fn locally_connected_distance(&self, p: usize, q: usize) -> Option<u32> {
        if p == q {
            return Some(0);
        }
        let need = self.labels[p].intersection(self.labels[q]);
        let mut admissible = 0u64;
        for (i, lab) in self.labels.iter().enumerate() {
            if need.is_subset_of(*lab) {
                admissible |= 1 << i;
            }
        }
        admissible |= (1 << p) | (1 << q); // endpoints always admitted
        let mut dist = vec![u32::MAX; self.primes.len()];
        dist[p] = 0;
        let mut queue = VecDeque::from([p]);
        while let Some(v) = queue.pop_front() {
            if v == q {
                return Some(dist[v]);
            }
            let mut nbrs = self.adj[v] & admissible;
            while nbrs != 0 {
                let w = nbrs.trailing_zeros() as usize;
                nbrs &= nbrs - 1;
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    pub fn is_locally_connected(&self) -> bool {
        let k = self.primes.len();
        for p in 0..k {
            for q in p + 1..k {
                if self.locally_connected_distance(p, q).is_none() {
                    return false;
                }
            }
        }
        true
    }

    /// Is the graph a cone with apex `p`, i.e. p adjacent to every other
    /// vertex?
    pub fn is_cone_over_vertex(&self, p: usize) -> bool {
        let all = if self.primes.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.primes.len()) - 1
        };
        self.adj[p] | (1 << p) == all
    }

    /// grade(𝔭 + 𝔮) in k[Δ], computed as |v_𝔭| - |v_𝔭 ∩ v_𝔮|.
    pub fn pair_grade(&self, p: usize, q: usize) -> u32 {
        (self.labels[p].len() - self.labels[p].intersection(self.labels[q]).len()) as u32
    }
}

/// Graph-theoretic Serre test: pure and the Hochster-Huneke graph locally
/// connected.
pub fn is_s2_via_graph(c: &SimplicialComplex) -> Result<bool> {
    if !c.is_pure() {
        return Ok(false);
    }
    Ok(build_graph(c)?.is_locally_connected())
}

/// 2-local connectedness: for every pair of facets F ≠ G and every
/// i ∈ F−G, j ∈ G−F there is a facet path F = F_0, ..., F_{r+1} = G whose
/// consecutive members share a ridge, whose members all contain F ∩ G, and
/// whose members all meet {i, j}.
pub fn is_two_locally_connected(c: &SimplicialComplex) -> Result<bool> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    let facets = c.facets();
    if facets.len() > 64 {
        return Err(Error::ResourceGuard(format!(
            "2-local connectedness over {} facets exceeds the supported 64",
            facets.len()
        )));
    }
    let k = facets.len();
    let mut ridge = vec![0u64; k];
    for a in 0..k {
        for b in a + 1..k {
            if facets[a].intersection(facets[b]).len() + 1 == facets[a].len() {
                ridge[a] |= 1 << b;
                ridge[b] |= 1 << a;
            }
        }
    }
    for a in 0..k {
        for b in 0..k {
            if a == b {
                continue;
            }
            let (f, g) = (facets[a], facets[b]);
            let meet = f.intersection(g);
            for i in f.minus(g).vertices() {
                for j in g.minus(f).vertices() {
                    if !two_lc_path_exists(&ridge, facets, a, b, meet, i, j) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

fn two_lc_path_exists(
    ridge: &[u64],
    facets: &[Face],
    a: usize,
    b: usize,
    meet: Face,
    i: u32,
    j: u32,
) -> bool {
    let mut admissible = 0u64;
    for (h, fac) in facets.iter().enumerate() {
        if meet.is_subset_of(*fac) && (fac.contains(i) || fac.contains(j)) {
            admissible |= 1 << h;
        }
    }
    admissible |= (1 << a) | (1 << b);
    let mut seen = 1u64 << a;
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        if v == b {
            return true;
        }
        let mut nbrs = ridge[v] & admissible & !seen;
        while nbrs != 0 {
            let w = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            seen |= 1 << w;
            queue.push_back(w);
        }
    }
    false
}

/// Does core(Δ) have dimension 0?
pub fn core_is_zero_dimensional(c: &SimplicialComplex) -> bool {
    c.core().dim() == Some(0)
}
