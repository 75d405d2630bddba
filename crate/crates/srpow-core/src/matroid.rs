//! Matroid recognition and structure on independence complexes: exchange
//! axioms, circuits, rank, duality, minors, parallel classes and the
//! weakly-polymatroidal certificate.

use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};

/// Single-sided exchange on a lex-sorted equicardinal facet list.
pub(crate) fn exchange_holds(facets: &[Face]) -> bool {
    for f in facets {
        for g in facets {
            if f == g {
                continue;
            }
            for x in g.minus(*f).vertices() {
                let base = g.remove(x);
                let ok = f
                    .minus(*g)
                    .vertices()
                    .any(|y| facets.binary_search_by(|h| h.lex_cmp(base.insert(y))).is_ok());
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// Single-sided basis exchange: for any facets F, G and x ∈ G−F there is
/// y ∈ F−G with (G − x) ∪ y again a facet. Impure complexes always fail.
pub fn is_matroid(c: &SimplicialComplex) -> bool {
    if !c.is_pure() || c.is_void() {
        return false;
    }
    exchange_holds(c.facets())
}

/// Two-sided exchange: both (G − x) ∪ y and (F − y) ∪ x are facets. Agrees
/// with `is_matroid` on every complex (classical); tested by sweep.
pub fn symmetric_exchange_holds(c: &SimplicialComplex) -> bool {
    if !c.is_pure() || c.is_void() {
        return false;
    }
    let facets = c.facets();
    let has = |f: Face| facets.binary_search_by(|h| h.lex_cmp(f)).is_ok();
    for f in facets {
        for g in facets {
            if f == g {
                continue;
            }
            for x in g.minus(*f).vertices() {
                let ok = f
                    .minus(*g)
                    .vertices()
                    .any(|y| has(g.remove(x).insert(y)) && has(f.remove(y).insert(x)));
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// A complex whose facets are certified to satisfy the exchange property.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MatroidView {
    complex: SimplicialComplex,
}

impl MatroidView {
    pub fn new(complex: SimplicialComplex) -> Result<MatroidView> {
        if !is_matroid(&complex) {
            return Err(Error::NotAMatroid);
        }
        Ok(MatroidView { complex })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn n(&self) -> u32 {
        self.complex.n()
    }

    pub fn bases(&self) -> &[Face] {
        self.complex.facets()
    }

    pub fn rank(&self) -> u32 {
        self.bases()[0].len() as u32
    }

    /// Circuits are the minimal nonfaces.
    pub fn circuits(&self) -> Vec<Face> {
        self.complex.minimal_nonfaces()
    }

    /// Maximum circuit size. Errors when there are no circuits (a simplex).
    pub fn circumference(&self) -> Result<u32> {
        self.circuits()
            .iter()
            .map(|c| c.len() as u32)
            .max()
            .ok_or(Error::NoCircuits)
    }

    pub fn is_circuit(&self, f: Face) -> bool {
        self.circuits().contains(&f)
    }

    /// Coloops are the cone points of the independence complex.
    pub fn coloops(&self) -> Face {
        self.complex.cone_points()
    }

    /// Loops are vertices in no basis.
    pub fn loops(&self) -> Face {
        self.complex.covered_vertices().complement(self.n())
    }

    pub fn dual(&self) -> MatroidView {
        MatroidView::new(self.complex.naive_dual()).expect("dual of a matroid is a matroid")
    }

    /// Contraction by an independent set: links of the bases containing F.
    pub fn contraction(&self, f: Face) -> Result<MatroidView> {
        let lk = self.complex.link(f)?;
        MatroidView::new(lk)
    }

    /// Deletion of the vertex set F: restrict the bases to [n] − F.
    pub fn deletion_minor(&self, f: Face) -> MatroidView {
        let rest = self.complex.restriction(f.complement(self.n()));
        MatroidView::new(rest).expect("deletion of a matroid is a matroid")
    }
}

/// Partition of the ground set of a loopless matroid into parallel classes:
/// v ~ w iff {v,w} is dependent. The 1-skeleton is complete multipartite
/// with these parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParallelDecomposition {
    pub classes: Vec<Face>,
}

pub fn parallel_classes(m: &MatroidView) -> Result<ParallelDecomposition> {
    if !m.loops().is_empty() {
        return Err(Error::HasLoops);
    }
    let n = m.n();
    let mut assigned = Face::EMPTY;
    let mut classes: Vec<Face> = Vec::new();
    for v in 1..=n {
        if assigned.contains(v) {
            continue;
        }
        let mut class = Face::EMPTY.insert(v);
        for w in v + 1..=n {
            if !assigned.contains(w) && !m.complex().is_face(Face::EMPTY.insert(v).insert(w)) {
                class = class.insert(w);
            }
        }
        assigned = assigned.union(class);
        classes.push(class);
    }
    // sanity: the relation must be transitive for a loopless matroid
    debug_assert!({
        classes.iter().all(|cl| {
            let vs: Vec<u32> = cl.vertices().collect();
            vs.iter().all(|a| {
                vs.iter()
                    .all(|b| a == b || !m.complex().is_face(Face::EMPTY.insert(*a).insert(*b)))
            })
        })
    });
    Ok(ParallelDecomposition { classes })
}

/// The simplified matroid: restrict to the least representative of each
/// parallel class.
pub fn simplify(m: &MatroidView) -> Result<MatroidView> {
    let classes = parallel_classes(m)?.classes;
    let reps = Face::from_vertices(
        classes
            .iter()
            .map(|cl| cl.vertices().next().expect("classes are nonempty")),
    );
    Ok(m.deletion_minor(reps.complement(m.n())))
}

/// The weakly-polymatroidal certificate on an ordered family of
/// equicardinal sets (the facets of Δ*, i.e. the generator supports of the
/// dual ideal, written in increasing vertex order): for any F, G in the
/// family agreeing in their first q-1 elements with F's q-th element
/// smaller, some swap `G − b_p ∪ a_q` with p ≥ q lands back in the family.
pub fn weakly_polymatroidal(dual_facets: &[Face]) -> Result<bool> {
    if dual_facets.is_empty() {
        return Ok(true);
    }
    let size = dual_facets[0].len();
    if dual_facets.iter().any(|f| f.len() != size) {
        return Err(Error::Precondition(
            "weakly-polymatroidal test needs equicardinal sets".into(),
        ));
    }
    let has = |f: Face| dual_facets.contains(&f);
    for f in dual_facets {
        for g in dual_facets {
            if f == g {
                continue;
            }
            let fa: Vec<u32> = f.vertices().collect();
            let gb: Vec<u32> = g.vertices().collect();
            let q = match fa.iter().zip(&gb).position(|(a, b)| a != b) {
                Some(q) => q,
                None => continue,
            };
            if fa[q] > gb[q] {
                continue; // handled with the roles swapped
            }
            let ok = (q..size).any(|p| has(g.remove(gb[p]).insert(fa[q])));
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Uniform matroid U(n, r): all r-subsets of [n] are bases.
pub fn uniform_matroid(n: u32, r: u32) -> Result<MatroidView> {
    if r == 0 || r > n {
        return Err(Error::Precondition(format!(
            "uniform matroid needs 1 ≤ r ≤ n, got r={r} n={n}"
        )));
    }
    let mut facets = Vec::new();
    crate::complex::subsets_of_size(Face(crate::complex::mask_n(n)), r as usize, &mut |s| {
        facets.push(s)
    });
    MatroidView::new(SimplicialComplex::from_facets(n, &facets)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(n: u32, lists: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_facet_lists(
            n,
            &lists.iter().map(|l| l.to_vec()).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn fv(vs: &[u32]) -> Face {
        Face::from_vertices(vs.iter().copied())
    }

    #[test]
    fn uniform_is_matroid_path_is_not() {
        assert!(is_matroid(uniform_matroid(4, 2).unwrap().complex()));
        let path = cx(4, &[&[1, 2], &[2, 3], &[3, 4]]);
        // exchange fails for F={1,2}, G={3,4}, x=3
        assert!(!is_matroid(&path));
        assert!(!symmetric_exchange_holds(&path));
        assert!(symmetric_exchange_holds(uniform_matroid(4, 2).unwrap().complex()));
        assert!(!is_matroid(&cx(3, &[&[1, 2], &[3]])));
    }

    #[test]
    fn paper_complex_with_weakly_polymatroidal_dual_is_not_a_matroid() {
        // ℱ(Δ^∨) = {123,125,126,146,234,245,456} on [6]
        let dual_facets: Vec<Face> = [
            [1u32, 2, 3],
            [1, 2, 5],
            [1, 2, 6],
            [1, 4, 6],
            [2, 3, 4],
            [2, 4, 5],
            [4, 5, 6],
        ]
        .iter()
        .map(|l| fv(l))
        .collect();
        assert!(weakly_polymatroidal(&dual_facets).unwrap());
        // Δ itself: complements of nonfaces... recover Δ from its Alexander dual
        let dual = SimplicialComplex::from_facets(6, &dual_facets).unwrap();
        let delta = dual.alexander_dual();
        assert!(!is_matroid(&delta));
    }

    #[test]
    fn weakly_polymatroidal_counterexample() {
        assert!(!weakly_polymatroidal(&[fv(&[1, 2]), fv(&[3, 4])]).unwrap());
        assert!(weakly_polymatroidal(&[]).unwrap());
        assert!(weakly_polymatroidal(&[fv(&[1, 2]), fv(&[1, 3])]).is_ok());
        assert!(weakly_polymatroidal(&[fv(&[1, 2]), fv(&[3])]).is_err());
    }

    #[test]
    fn circuits_rank_circumference() {
        let u31 = uniform_matroid(3, 1).unwrap();
        assert_eq!(
            u31.circuits(),
            vec![fv(&[1, 2]), fv(&[1, 3]), fv(&[2, 3])]
        );
        assert_eq!(u31.rank(), 1);
        assert_eq!(u31.circumference().unwrap(), 2);

        let u42 = uniform_matroid(4, 2).unwrap();
        assert_eq!(u42.circuits().len(), 4);
        assert!(u42.circuits().iter().all(|c| c.len() == 3));
        assert_eq!(u42.circumference().unwrap(), 3);

        let simplex = MatroidView::new(SimplicialComplex::simplex(3)).unwrap();
        assert!(matches!(simplex.circumference(), Err(Error::NoCircuits)));
    }

    #[test]
    fn ci_complex_circuits() {
        let c = cx(
            7,
            &[
                &[1, 2, 3, 4],
                &[1, 2, 3, 5],
                &[1, 2, 4, 6],
                &[1, 2, 5, 6],
                &[1, 3, 4, 6],
                &[1, 3, 5, 6],
                &[2, 3, 4, 7],
                &[2, 3, 5, 7],
                &[2, 4, 6, 7],
                &[2, 5, 6, 7],
                &[3, 4, 6, 7],
                &[3, 5, 6, 7],
            ],
        );
        let m = MatroidView::new(c).unwrap();
        assert_eq!(
            m.circuits(),
            vec![fv(&[1, 7]), fv(&[2, 3, 6]), fv(&[4, 5])]
        );
        assert_eq!(m.circumference().unwrap(), 3);
    }

    #[test]
    fn duality_and_minors() {
        let u42 = uniform_matroid(4, 2).unwrap();
        assert_eq!(u42.dual(), u42); // self-dual
        let del = u42.deletion_minor(fv(&[4]));
        let (norm, _) = del.complex().normalized();
        assert_eq!(norm, uniform_matroid(3, 2).unwrap().complex().clone());
        let contr = u42.contraction(fv(&[4])).unwrap();
        let (norm, _) = contr.complex().normalized();
        assert_eq!(norm, uniform_matroid(3, 1).unwrap().complex().clone());
        assert!(u42.contraction(fv(&[1, 2, 3])).is_err());
    }

    #[test]
    fn duality_swaps_deletion_and_contraction() {
        // (M\X)* = M*/X on the ground set [n]-X
        let u42 = uniform_matroid(4, 2).unwrap();
        let f = fv(&[4]);
        let deleted = u42.deletion_minor(f).complex().normalized().0;
        let a = MatroidView::new(deleted).unwrap().dual();
        let b = u42.dual().contraction(f).unwrap().complex().normalized().0;
        assert_eq!(a.complex(), &b);
    }

    #[test]
    fn parallel_classes_of_ci_dual() {
        let c = cx(
            7,
            &[
                &[1, 2, 3, 4],
                &[1, 2, 3, 5],
                &[1, 2, 4, 6],
                &[1, 2, 5, 6],
                &[1, 3, 4, 6],
                &[1, 3, 5, 6],
                &[2, 3, 4, 7],
                &[2, 3, 5, 7],
                &[2, 4, 6, 7],
                &[2, 5, 6, 7],
                &[3, 4, 6, 7],
                &[3, 5, 6, 7],
            ],
        );
        let dual = MatroidView::new(c).unwrap().dual();
        let classes = parallel_classes(&dual).unwrap().classes;
        assert_eq!(
            classes,
            vec![fv(&[1, 7]), fv(&[2, 3, 6]), fv(&[4, 5])]
        );
        let simplified = simplify(&dual).unwrap();
        assert_eq!(simplified.complex().covered_vertices().len(), 3);
        // a simplified matroid has singleton classes
        let (norm, _) = simplified.complex().normalized();
        let again = parallel_classes(&MatroidView::new(norm).unwrap()).unwrap();
        assert!(again.classes.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn matroid_bases_pass_weak_polymatroidality() {
        for m in [
            uniform_matroid(4, 2).unwrap(),
            uniform_matroid(5, 3).unwrap(),
        ] {
            assert!(weakly_polymatroidal(m.bases()).unwrap());
        }
    }
}
