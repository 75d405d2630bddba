//! Symbolic, ordinary and mixed powers of Stanley-Reisner ideals, standard
//! polarization, the direct construction of Δ^(m) through its dual facets,
//! star configurations and the König property.

use serde::{Deserialize, Serialize};

use crate::complex::{mask_n, subsets_of_size, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::hypergraph::minimal_transversals;
use crate::monomial::{Monomial, MonomialIdeal};

/// A vertex (i, j) of the polarized grid [n] × [m]: base index i, level j.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
pub struct PolarizedVertex {
    pub base: u32,
    pub level: u32,
}

/// Coordinates of the grid [n] × [m]. Grid vertex ids are level-major,
/// `id(i, j) = (j-1)·n + i`, so the natural id order is exactly the total
/// variable order x_{a,b} < x_{c,d} iff b < d, or b = d and a < c.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PolarGrid {
    pub n: u32,
    pub m: u32,
}

impl PolarGrid {
    pub fn total(&self) -> u32 {
        self.n * self.m
    }

    pub fn id(&self, v: PolarizedVertex) -> u32 {
        debug_assert!(v.base >= 1 && v.base <= self.n && v.level >= 1 && v.level <= self.m);
        (v.level - 1) * self.n + v.base
    }

    pub fn vertex(&self, id: u32) -> PolarizedVertex {
        PolarizedVertex {
            base: (id - 1) % self.n + 1,
            level: (id - 1) / self.n + 1,
        }
    }

    /// Project a grid face to its base indices.
    pub fn base_face(&self, f: Face) -> Face {
        Face::from_vertices(f.vertices().map(|id| self.vertex(id).base))
    }

    /// Sum of the second indices of a grid face.
    pub fn ssi(&self, f: Face) -> u32 {
        f.vertices().map(|id| self.vertex(id).level).sum()
    }

    pub fn render_var(&self, var0: u32) -> String {
        let v = self.vertex(var0 + 1);
        format!("x{},{}", v.base, v.level)
    }
}

/// The polarized complex Δ^(m) (or its mixed-exponent variant), represented
/// by the facets of its naive dual: each dual facet projects to a facet of
/// Δ*, carries levels in [1, m_F], and has ssi ≤ c + m_F - 1.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PolarizedComplex {
    pub grid: PolarGrid,
    pub dual_facets: Vec<Face>,
}

impl PolarizedComplex {
    /// The complex itself on the full grid: facets are the complements of
    /// the dual facets. Unused grid vertices are cone points.
    pub fn to_complex(&self) -> SimplicialComplex {
        let n = self.grid.total();
        let facets: Vec<Face> = self.dual_facets.iter().map(|f| f.complement(n)).collect();
        SimplicialComplex::from_faces(n, &facets, crate::complex::Coverage::Allow)
            .expect("dual facet complements are valid faces")
    }

    /// Generators of the Alexander dual ideal (J_m)^∨: the squarefree
    /// monomials on the dual facets.
    pub fn dual_generators(&self) -> Vec<Monomial> {
        self.dual_facets.iter().map(|f| Monomial::squarefree(*f)).collect()
    }
}

/// Exponents m_F ≥ 1, one per facet of Δ in canonical facet order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentAssignment(pub Vec<u32>);

impl ExponentAssignment {
    pub fn uniform(count: usize, m: u32) -> ExponentAssignment {
        ExponentAssignment(vec![m; count])
    }

    fn validate(&self, facet_count: usize) -> Result<()> {
        if self.0.len() != facet_count {
            let missing = self.0.len().min(facet_count);
            return Err(Error::MissingFacetExponent(missing));
        }
        if let Some(i) = self.0.iter().position(|m| *m == 0) {
            return Err(Error::Precondition(format!(
                "facet {i} has exponent 0; exponents must be ≥ 1"
            )));
        }
        Ok(())
    }
}

/// All degree-m monomials in the variables of `support`: the generators of
/// 𝔭^m for 𝔭 the prime on `support`.
fn prime_power_gens(support: Face, m: u32) -> Vec<Monomial> {
    let vars: Vec<u32> = support.vertices().map(|v| v - 1).collect();
    let mut out = Vec::new();
    let mut exps = vec![0u32; vars.len()];
    fn rec(vars: &[u32], exps: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Monomial>) {
        if pos + 1 == vars.len() {
            exps[pos] = left;
            out.push(Monomial::from_exps(
                vars.iter().copied().zip(exps.iter().copied()),
            ));
            return;
        }
        for e in 0..=left {
            exps[pos] = e;
            rec(vars, exps, pos + 1, left - e, out);
        }
    }
    if vars.is_empty() {
        return vec![];
    }
    rec(&vars, &mut exps, 0, m, &mut out);
    out
}

/// Mixed symbolic power ⋂_F 𝔭_F^{m_F}.
pub fn mixed_symbolic_power(
    c: &SimplicialComplex,
    exps: &ExponentAssignment,
) -> Result<MonomialIdeal> {
    exps.validate(c.facets().len())?;
    let n = c.n();
    let mut acc = MonomialIdeal::unit(n);
    for (facet, m) in c.facets().iter().zip(&exps.0) {
        let prime = facet.complement(n);
        let component = MonomialIdeal::new(n, prime_power_gens(prime, *m));
        acc = acc.intersect(&component)?;
    }
    Ok(acc)
}

/// The m-th symbolic power ⋂_F 𝔭_F^m.
pub fn symbolic_power(c: &SimplicialComplex, m: u32) -> Result<MonomialIdeal> {
    if m == 0 {
        return Err(Error::Precondition("symbolic power needs m ≥ 1".into()));
    }
    let result = mixed_symbolic_power(c, &ExponentAssignment::uniform(c.facets().len(), m))?;
    debug_assert!(
        result
            .gens()
            .iter()
            .all(|g| g.exps().iter().all(|&(_, e)| e <= m)),
        "symbolic power generators keep exponents ≤ m"
    );
    Ok(result)
}

/// The m-th ordinary power of I_Δ.
pub fn ordinary_power(c: &SimplicialComplex, m: u32) -> MonomialIdeal {
    c.stanley_reisner().power(m)
}

/// Decide I^m = I^(m) by mutual generator membership.
pub fn symbolic_equals_ordinary(c: &SimplicialComplex, m: u32) -> Result<bool> {
    Ok(ordinary_power(c, m).equals(&symbolic_power(c, m)?))
}

/// Exponent-sum membership oracle: M ∈ 𝔭_F^m iff the degrees of M on the
/// variables of 𝔭_F sum to at least m.
pub fn symbolic_membership(c: &SimplicialComplex, m: u32, mono: &Monomial) -> bool {
    c.facets().iter().all(|facet| {
        let prime = facet.complement(c.n());
        let total: u32 = mono
            .exps()
            .iter()
            .filter(|&&(v, _)| prime.contains(v + 1))
            .map(|&(_, e)| e)
            .sum();
        total >= m
    })
}

/// Standard polarization: each generator ∏ x_i^{b_i} becomes
/// ∏_i ∏_{j ≤ b_i} x_{i,j} on the grid. Returns the squarefree ideal over
/// the grid variables together with the grid coordinates.
pub fn polarize(ideal: &MonomialIdeal) -> (MonomialIdeal, PolarGrid) {
    let n = ideal.n_vars();
    let m = ideal
        .gens()
        .iter()
        .flat_map(|g| g.exps().iter().map(|&(_, e)| e))
        .max()
        .unwrap_or(1)
        .max(1);
    let grid = PolarGrid { n, m };
    let gens: Vec<Monomial> = ideal
        .gens()
        .iter()
        .map(|g| {
            Monomial::from_exps(g.exps().iter().flat_map(|&(v, e)| {
                (1..=e).map(move |j| {
                    (
                        grid.id(PolarizedVertex {
                            base: v + 1,
                            level: j,
                        }) - 1,
                        1,
                    )
                })
            }))
        })
        .collect();
    (MonomialIdeal::new(grid.total(), gens), grid)
}

/// Inverse of polarization: substitute x_{i,j} ↦ x_i.
pub fn depolarize(ideal: &MonomialIdeal, grid: &PolarGrid) -> MonomialIdeal {
    let gens: Vec<Monomial> = ideal
        .gens()
        .iter()
        .map(|g| {
            Monomial::from_exps(
                g.exps()
                    .iter()
                    .map(|&(v, e)| (grid.vertex(v + 1).base - 1, e)),
            )
        })
        .collect();
    MonomialIdeal::new(grid.n, gens)
}

fn level_vectors(primes: &[u32], m: u32, budget: u32, visit: &mut impl FnMut(&[u32])) {
    // all level assignments a: primes → [1, m] with Σ a ≤ budget
    let mut levels = vec![1u32; primes.len()];
    fn rec(
        pos: usize,
        used: u32,
        levels: &mut Vec<u32>,
        m: u32,
        budget: u32,
        visit: &mut impl FnMut(&[u32]),
    ) {
        if pos == levels.len() {
            visit(levels);
            return;
        }
        let remaining = (levels.len() - pos - 1) as u32; // later entries need ≥ 1 each
        for a in 1..=m {
            if used + a + remaining > budget {
                break;
            }
            levels[pos] = a;
            rec(pos + 1, used + a, levels, m, budget, visit);
        }
    }
    rec(0, 0, &mut levels, m, budget, visit);
}

/// Δ^(m) built directly from Prop-polprimes-style dual facets: for each
/// facet (i_1..i_c) of Δ*, all level vectors a ∈ [1,m]^c with Σ a ≤ c+m-1.
pub fn delta_m(c: &SimplicialComplex, m: u32) -> Result<PolarizedComplex> {
    delta_mixed(c, &ExponentAssignment::uniform(c.facets().len(), m))
}

/// Mixed variant: the dual facets over facet F use levels in [1, m_F] and
/// the bound ssi ≤ c + m_F - 1.
pub fn delta_mixed(c: &SimplicialComplex, exps: &ExponentAssignment) -> Result<PolarizedComplex> {
    exps.validate(c.facets().len())?;
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    let n = c.n();
    let cc = c.corank()?;
    let m_max = *exps.0.iter().max().expect("nonempty facet list");
    let grid = PolarGrid { n, m: m_max };
    if grid.total() > 26 {
        return Err(Error::ResourceGuard(format!(
            "polarized grid has {} vertices",
            grid.total()
        )));
    }
    let mut dual_facets = Vec::new();
    for (facet, m_f) in c.facets().iter().zip(&exps.0) {
        let prime: Vec<u32> = facet.complement(n).vertices().collect();
        level_vectors(&prime, *m_f, cc + m_f - 1, &mut |levels| {
            dual_facets.push(Face::from_vertices(prime.iter().zip(levels).map(
                |(i, j)| {
                    grid.id(PolarizedVertex {
                        base: *i,
                        level: *j,
                    })
                },
            )));
        });
    }
    dual_facets.sort_by(|a, b| a.lex_cmp(*b));
    dual_facets.dedup();
    Ok(PolarizedComplex { grid, dual_facets })
}

/// The polarized complex of an arbitrary squarefree ideal over a grid: dual
/// facets are the minimal transversals of the generator supports (the
/// associated primes). This is the independent route used to cross-check
/// `delta_m` and to handle ordinary powers, whose polarizations may be
/// impure.
pub fn polarized_complex_of(ideal: &MonomialIdeal, grid: PolarGrid) -> Result<PolarizedComplex> {
    for g in ideal.gens() {
        if !g.is_squarefree() {
            return Err(Error::NotSquarefree(format!("{g:?}")));
        }
    }
    let supports: Vec<u32> = ideal.gens().iter().map(|g| g.support().0).collect();
    let mut dual_facets: Vec<Face> = minimal_transversals(&supports).into_iter().map(Face).collect();
    dual_facets.sort_by(|a, b| a.lex_cmp(*b));
    Ok(PolarizedComplex { grid, dual_facets })
}

/// König property: the product of all n variables lies in (I_Δ)^c.
pub fn konig_property(c: &SimplicialComplex) -> Result<bool> {
    let cc = c.corank()?;
    let product = Monomial::squarefree(Face(mask_n(c.n())));
    Ok(ordinary_power(c, cc).contains(&product))
}

/// The monomial star configuration of grade c: the uniform matroid of rank
/// n-c, whose ideal is generated by all squarefree monomials of degree
/// n-c+1.
pub fn star_configuration(n: u32, c: u32) -> Result<SimplicialComplex> {
    if c < 1 || c > n {
        return Err(Error::Precondition(format!(
            "star configuration needs 1 ≤ c ≤ n, got c={c} n={n}"
        )));
    }
    let rank = n - c;
    if rank == 0 {
        return Ok(SimplicialComplex::empty_face_only(n));
    }
    let mut facets = Vec::new();
    subsets_of_size(Face(mask_n(n)), rank as usize, &mut |s| facets.push(s));
    SimplicialComplex::from_facets(n, &facets)
}
