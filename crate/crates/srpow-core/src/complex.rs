//! Simplicial complexes on the vertex set `[n]`, stored as antichains of
//! facet bitsets, together with the duals and local constructions the rest
//! of the crate is built on.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::minimal_transversals;

/// A face is a set of 1-based vertex ids, stored as a bitmask (vertex `i`
/// occupies bit `i-1`). Vertex counts stay small here, `u32` is plenty.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Face(pub u32);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_vertices<I: IntoIterator<Item = u32>>(vertices: I) -> Face {
        let mut mask = 0u32;
        for v in vertices {
            assert!(v >= 1 && v <= 32, "vertex id out of supported range");
            mask |= 1 << (v - 1);
        }
        Face(mask)
    }

    pub fn vertices(self) -> impl Iterator<Item = u32> {
        let mut mask = self.0;
        std::iter::from_fn(move || {
            if mask == 0 {
                None
            } else {
                let v = mask.trailing_zeros() + 1;
                mask &= mask - 1;
                Some(v)
            }
        })
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: u32) -> bool {
        v >= 1 && self.0 & (1 << (v - 1)) != 0
    }

    pub fn is_subset_of(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn minus(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn insert(self, v: u32) -> Face {
        Face(self.0 | (1 << (v - 1)))
    }

    pub fn remove(self, v: u32) -> Face {
        Face(self.0 & !(1 << (v - 1)))
    }

    /// Complement within `[n]`.
    pub fn complement(self, n: u32) -> Face {
        Face(!self.0 & mask_n(n))
    }

    /// Order faces as their ascending vertex lists compare lexicographically,
    /// so `{1,3} < {2}` and `{1} < {1,2}`. This is the canonical facet order
    /// and, read as squarefree monomial supports, the Lex order in which the
    /// monomial with the earlier variable comes first.
    pub fn lex_cmp(self, other: Face) -> Ordering {
        let d = self.0 ^ other.0;
        if d == 0 {
            return Ordering::Equal;
        }
        let low = d.trailing_zeros();
        if self.0 & (1 << low) != 0 {
            // `self` holds the earliest differing vertex; it is smaller unless
            // `other` is a strict prefix of `self`.
            if other.0 >> low == 0 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else if self.0 >> low == 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.vertices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

pub fn mask_n(n: u32) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Whether constructors demand that every vertex of `[n]` lies in a facet.
/// The permissive form is needed to represent links, cores and restrictions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Coverage {
    Require,
    Allow,
}

/// A simplicial complex given by `n` and its facets. The facet list is kept
/// maximal (an antichain) and sorted in the canonical lex order, so equal
/// complexes compare equal structurally.
///
/// The void complex (no faces at all) and the empty-face complex `{∅}` are
/// distinct values: the former has no facets, the latter has the single
/// facet `∅`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimplicialComplex {
    n: u32,
    facets: Vec<Face>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex(n={}; ", self.n)?;
        for (k, fc) in self.facets.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{fc:?}")?;
        }
        write!(f, ")")
    }
}

fn maximalize(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_by_key(|f| std::cmp::Reverse(f.len()));
    let mut out: Vec<Face> = Vec::with_capacity(faces.len());
    for f in faces {
        if !out.iter().any(|g| f.is_subset_of(*g)) {
            out.push(f);
        }
    }
    out.sort_by(|a, b| a.lex_cmp(*b));
    out
}

impl SimplicialComplex {
    /// Build a complex from raw faces; reduces to maximal elements and sorts
    /// canonically. `coverage` decides whether "every vertex lies in some
    /// facet" is enforced or the complex may carry uncovered vertices.
    pub fn from_faces(n: u32, raw: &[Face], coverage: Coverage) -> Result<Self> {
        if n == 0 || n > 26 {
            return Err(Error::Precondition(format!(
                "vertex count {n} outside supported range 1..=26"
            )));
        }
        for f in raw {
            if f.0 & !mask_n(n) != 0 {
                let v = (f.0 & !mask_n(n)).trailing_zeros() + 1;
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        if coverage == Coverage::Require {
            if raw.is_empty() {
                return Err(Error::EmptyFacetList);
            }
            let covered = raw.iter().fold(0u32, |m, f| m | f.0);
            if covered != mask_n(n) {
                let v = (!covered & mask_n(n)).trailing_zeros() + 1;
                return Err(Error::UncoveredVertex(v));
            }
        }
        Ok(SimplicialComplex {
            n,
            facets: maximalize(raw.to_vec()),
        })
    }

    /// Strict constructor used by the public surface: all vertices covered.
    pub fn from_facets(n: u32, raw: &[Face]) -> Result<Self> {
        Self::from_faces(n, raw, Coverage::Require)
    }

    /// Convenience constructor from vertex lists.
    pub fn from_facet_lists(n: u32, lists: &[Vec<u32>]) -> Result<Self> {
        let faces: Vec<Face> = lists
            .iter()
            .map(|l| Face::from_vertices(l.iter().copied()))
            .collect();
        Self::from_facets(n, &faces)
    }

    /// The void complex: no faces at all.
    pub fn void(n: u32) -> Self {
        SimplicialComplex { n, facets: vec![] }
    }

    /// Fast internal constructor for facet lists already known to be
    /// lex-sorted equicardinal antichains (catalog enumeration).
    pub(crate) fn from_parts_unchecked(n: u32, facets: Vec<Face>) -> Self {
        debug_assert!(facets.windows(2).all(|w| w[0].lex_cmp(w[1]) == Ordering::Less));
        debug_assert!(facets.windows(2).all(|w| w[0].len() == w[1].len()));
        SimplicialComplex { n, facets }
    }

    /// The complex `{∅}` whose only face is the empty face.
    pub fn empty_face_only(n: u32) -> Self {
        SimplicialComplex {
            n,
            facets: vec![Face::EMPTY],
        }
    }

    /// Full simplex on `[n]`.
    pub fn simplex(n: u32) -> Self {
        SimplicialComplex {
            n,
            facets: vec![Face(mask_n(n))],
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// dim Δ; the void complex reports `None`, `{∅}` reports `Some(-1)`.
    pub fn dim(&self) -> Option<i32> {
        self.facets
            .iter()
            .map(|f| f.len() as i32 - 1)
            .max()
    }

    /// d = dim + 1, the common facet size of a pure complex.
    pub fn d(&self) -> Result<u32> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        self.facets
            .first()
            .map(|f| f.len() as u32)
            .ok_or_else(|| Error::Precondition("void complex has no dimension".into()))
    }

    /// c = n - d for a pure complex.
    pub fn corank(&self) -> Result<u32> {
        Ok(self.n - self.d()?)
    }

    pub fn is_pure(&self) -> bool {
        match self.facets.first() {
            None => true,
            Some(f) => {
                let k = f.len();
                self.facets.iter().all(|g| g.len() == k)
            }
        }
    }

    pub fn is_face(&self, f: Face) -> bool {
        self.facets.iter().any(|g| f.is_subset_of(*g))
    }

    /// Vertices that lie in some facet.
    pub fn covered_vertices(&self) -> Face {
        Face(self.facets.iter().fold(0u32, |m, f| m | f.0))
    }

    /// All faces, grouped by cardinality (index `k` holds faces of size `k`).
    /// The empty face is included whenever the complex is nonvoid.
    pub fn faces_by_size(&self) -> Vec<Vec<Face>> {
        if self.is_void() {
            return vec![];
        }
        let top = self.facets.iter().map(|f| f.len()).max().unwrap();
        let mut seen = std::collections::HashSet::new();
        let mut by_size: Vec<Vec<Face>> = vec![Vec::new(); top + 1];
        for f in &self.facets {
            let mut stack = vec![*f];
            while let Some(g) = stack.pop() {
                if !seen.insert(g) {
                    continue;
                }
                by_size[g.len()].push(g);
                for v in g.vertices() {
                    let h = g.remove(v);
                    if !seen.contains(&h) {
                        stack.push(h);
                    }
                }
            }
        }
        for level in &mut by_size {
            level.sort_by(|a, b| a.lex_cmp(*b));
        }
        by_size
    }

    pub fn face_count(&self) -> usize {
        self.faces_by_size().iter().map(|l| l.len()).sum()
    }

    /// Naive dual Δ*: facets are the complements of the facets of Δ.
    pub fn naive_dual(&self) -> SimplicialComplex {
        let facets: Vec<Face> = self.facets.iter().map(|f| f.complement(self.n)).collect();
        SimplicialComplex {
            n: self.n,
            facets: maximalize(facets),
        }
    }

    /// Associated primes of k[Δ] as variable sets: the complements of the
    /// facets, i.e. the facets of Δ*.
    pub fn associated_primes(&self) -> Vec<Face> {
        self.naive_dual().facets.clone()
    }

    /// Minimal nonfaces of Δ (the circuits when Δ is a matroid). These are
    /// the minimal transversals of the facet complements.
    pub fn minimal_nonfaces(&self) -> Vec<Face> {
        if self.is_void() {
            // every subset is a nonface; the minimal one is ∅
            return vec![Face::EMPTY];
        }
        let duals: Vec<u32> = self.facets.iter().map(|f| f.complement(self.n).0).collect();
        let mut t = minimal_transversals(&duals);
        // vertices outside every facet are nonfaces of size 1 and are found
        // by the transversal computation already (they lie in every dual facet)
        t.sort_by(|a, b| Face(*a).lex_cmp(Face(*b)));
        t.into_iter().map(Face).collect()
    }

    /// Alexander dual Δ^∨: facets are complements of the minimal nonfaces.
    pub fn alexander_dual(&self) -> SimplicialComplex {
        let facets: Vec<Face> = self
            .minimal_nonfaces()
            .into_iter()
            .map(|f| f.complement(self.n))
            .collect();
        SimplicialComplex {
            n: self.n,
            facets: maximalize(facets),
        }
    }

    /// lk_Δ(F) on the same vertex set (vertices of F become uncovered).
    pub fn link(&self, f: Face) -> Result<SimplicialComplex> {
        if !self.is_face(f) {
            return Err(Error::NotAFace(format!("{f:?}")));
        }
        let facets: Vec<Face> = self
            .facets
            .iter()
            .filter(|g| f.is_subset_of(**g))
            .map(|g| g.minus(f))
            .collect();
        Ok(SimplicialComplex {
            n: self.n,
            facets: maximalize(facets),
        })
    }

    /// del_Δ(v): faces avoiding the vertex v.
    pub fn deletion(&self, v: u32) -> SimplicialComplex {
        self.restriction(Face(mask_n(self.n)).remove(v))
    }

    /// Δ|_W: faces contained in W. Restriction to W=∅ of a nonvoid complex
    /// yields `{∅}`.
    pub fn restriction(&self, w: Face) -> SimplicialComplex {
        let facets: Vec<Face> = self.facets.iter().map(|f| f.intersection(w)).collect();
        SimplicialComplex {
            n: self.n,
            facets: maximalize(facets),
        }
    }

    /// Join Δ*Γ. The vertices of Γ are shifted above those of Δ.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let n = self.n + other.n;
        if n > 26 {
            return Err(Error::Precondition(format!(
                "join would have {n} vertices, above the supported range"
            )));
        }
        if self.is_void() || other.is_void() {
            return Ok(SimplicialComplex::void(n.max(1)));
        }
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for f in &self.facets {
            for g in &other.facets {
                facets.push(Face(f.0 | g.0 << self.n));
            }
        }
        Ok(SimplicialComplex {
            n,
            facets: maximalize(facets),
        })
    }

    /// k-skeleton: faces of dimension at most k.
    pub fn skeleton(&self, k: i32) -> SimplicialComplex {
        if k < -1 || self.is_void() {
            return SimplicialComplex::void(self.n);
        }
        if k == -1 {
            return SimplicialComplex::empty_face_only(self.n);
        }
        let size = (k + 1) as usize;
        let mut facets = Vec::new();
        for f in &self.facets {
            if f.len() <= size {
                facets.push(*f);
            } else {
                subsets_of_size(*f, size, &mut |s| facets.push(s));
            }
        }
        SimplicialComplex {
            n: self.n,
            facets: maximalize(facets),
        }
    }

    /// Vertices contained in every facet (coloops of the matroid case).
    pub fn cone_points(&self) -> Face {
        match self.facets.first() {
            None => Face::EMPTY,
            Some(first) => Face(
                self.facets
                    .iter()
                    .fold(first.0, |m, f| m & f.0),
            ),
        }
    }

    /// core(Δ): Δ restricted to the non-cone vertices. Idempotent.
    pub fn core(&self) -> SimplicialComplex {
        let cone = self.cone_points();
        if cone.is_empty() {
            return self.clone();
        }
        self.restriction(cone.complement(self.n))
    }

    /// Drop uncovered vertices and relabel to `1..=n'`, returning the new
    /// complex together with the original id of each new vertex.
    pub fn normalized(&self) -> (SimplicialComplex, Vec<u32>) {
        let covered = self.covered_vertices();
        let kept: Vec<u32> = covered.vertices().collect();
        if kept.len() as u32 == self.n {
            return (self.clone(), kept);
        }
        let mut new_id = vec![0u32; self.n as usize + 1];
        for (k, v) in kept.iter().enumerate() {
            new_id[*v as usize] = k as u32 + 1;
        }
        let facets: Vec<Face> = self
            .facets
            .iter()
            .map(|f| Face::from_vertices(f.vertices().map(|v| new_id[v as usize])))
            .collect();
        (
            SimplicialComplex {
                n: kept.len().max(1) as u32,
                facets: maximalize(facets),
            },
            kept,
        )
    }

    /// The Stanley-Reisner ideal: squarefree generators on the minimal
    /// nonfaces. Equals the intersection of the facet-complement primes.
    pub fn stanley_reisner(&self) -> crate::monomial::MonomialIdeal {
        crate::monomial::MonomialIdeal::new(
            self.n,
            self.minimal_nonfaces()
                .into_iter()
                .map(crate::monomial::Monomial::squarefree)
                .collect(),
        )
    }

    /// Inverse of `stanley_reisner`: the complex whose faces are the subsets
    /// supporting no generator. The zero ideal gives the full simplex.
    pub fn from_squarefree_ideal(ideal: &crate::monomial::MonomialIdeal) -> Result<Self> {
        let n = ideal.n_vars();
        if ideal.is_unit() {
            return Err(Error::Precondition(
                "the unit ideal is not a Stanley-Reisner ideal".into(),
            ));
        }
        for g in ideal.gens() {
            if !g.is_squarefree() {
                return Err(Error::NotSquarefree(format!("{g:?}")));
            }
        }
        if ideal.is_zero() {
            return Ok(SimplicialComplex::simplex(n));
        }
        let supports: Vec<u32> = ideal.gens().iter().map(|g| g.support().0).collect();
        let facets: Vec<Face> = minimal_transversals(&supports)
            .into_iter()
            .map(|t| Face(t).complement(n))
            .collect();
        Ok(SimplicialComplex {
            n,
            facets: maximalize(facets),
        })
    }

    /// Canonical form under vertex relabeling: the lexicographically least
    /// facet list over all permutations of `[n]`. Exhaustive, for small n.
    pub fn canonical_form(&self) -> Vec<Face> {
        let n = self.n as usize;
        let mut best: Option<Vec<Face>> = None;
        let mut perm: Vec<u32> = (1..=self.n).collect();
        permute(&mut perm, 0, &mut |p| {
            let mut mapped: Vec<Face> = self
                .facets
                .iter()
                .map(|f| Face::from_vertices(f.vertices().map(|v| p[(v - 1) as usize])))
                .collect();
            mapped.sort_by(|a, b| a.lex_cmp(*b));
            match &best {
                None => best = Some(mapped),
                Some(b) => {
                    if cmp_face_lists(&mapped, b) == Ordering::Less {
                        best = Some(mapped);
                    }
                }
            }
        });
        let _ = n;
        best.unwrap_or_default()
    }
}

pub fn cmp_face_lists(a: &[Face], b: &[Face]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.lex_cmp(*y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

fn permute(values: &mut Vec<u32>, k: usize, visit: &mut impl FnMut(&[u32])) {
    if k == values.len() {
        visit(values);
        return;
    }
    for i in k..values.len() {
        values.swap(k, i);
        permute(values, k + 1, visit);
        values.swap(k, i);
    }
}

/// Call `visit` on every subset of `of` with exactly `size` elements.
pub fn subsets_of_size(of: Face, size: usize, visit: &mut impl FnMut(Face)) {
    let verts: Vec<u32> = of.vertices().collect();
    if size > verts.len() {
        return;
    }
    let mut chosen = Face::EMPTY;
    fn rec(
        verts: &[u32],
        start: usize,
        left: usize,
        chosen: &mut Face,
        visit: &mut impl FnMut(Face),
    ) {
        if left == 0 {
            visit(*chosen);
            return;
        }
        for i in start..=verts.len() - left {
            *chosen = chosen.insert(verts[i]);
            rec(verts, i + 1, left - 1, chosen, visit);
            *chosen = chosen.remove(verts[i]);
        }
    }
    rec(&verts, 0, size, &mut chosen, visit);
}
