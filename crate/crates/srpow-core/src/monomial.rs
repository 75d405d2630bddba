//! Exact monomial and monomial-ideal arithmetic: minimal generating sets,
//! intersections by iterated lcm, powers, colons, membership and the
//! complete-intersection test.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::Face;
use crate::error::{Error, Result};

/// A monomial as a sparse exponent vector over 0-based variable indices.
/// Zero exponents are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Monomial {
    exps: Vec<(u32, u32)>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial { exps: vec![] }
    }

    pub fn from_exps<I: IntoIterator<Item = (u32, u32)>>(exps: I) -> Monomial {
        let mut m: BTreeMap<u32, u32> = BTreeMap::new();
        for (v, e) in exps {
            if e > 0 {
                *m.entry(v).or_insert(0) += e;
            }
        }
        Monomial {
            exps: m.into_iter().collect(),
        }
    }

    pub fn variable(v: u32) -> Monomial {
        Monomial { exps: vec![(v, 1)] }
    }

    /// Squarefree monomial with the given support.
    pub fn squarefree(support: Face) -> Monomial {
        Monomial {
            exps: support.vertices().map(|v| (v - 1, 1)).collect(),
        }
    }

    pub fn exps(&self) -> &[(u32, u32)] {
        &self.exps
    }

    pub fn exponent(&self, v: u32) -> u32 {
        self.exps
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&(_, e)| e == 1)
    }

    /// Support as a face over 1-based vertex ids (requires vars < 32).
    pub fn support(&self) -> Face {
        Face::from_vertices(self.exps.iter().map(|&(v, _)| v + 1))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    fn merge(&self, other: &Monomial, op: impl Fn(u32, u32) -> u32) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() || j < other.exps.len() {
            let (v, a, b) = match (self.exps.get(i), other.exps.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        i += 1;
                        (va, ea, 0)
                    }
                    Ordering::Greater => {
                        j += 1;
                        (vb, 0, eb)
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (va, ea, eb)
                    }
                },
                (Some(&(va, ea)), None) => {
                    i += 1;
                    (va, ea, 0)
                }
                (None, Some(&(vb, eb))) => {
                    j += 1;
                    (vb, 0, eb)
                }
                (None, None) => unreachable!(),
            };
            let e = op(a, b);
            if e > 0 {
                out.push((v, e));
            }
        }
        Monomial { exps: out }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a.max(b))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a.min(b))
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a + b)
    }

    /// self / gcd(self, other).
    pub fn div_by_gcd(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a.saturating_sub(b.min(a)))
    }

    /// Lex order in the convention where smaller variables come first and a
    /// larger exponent on an earlier variable makes the monomial *smaller*
    /// (so x^2 y < x y^2 under x < y).
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.exps.get(i), other.exps.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return Ordering::Less,
                    Ordering::Greater => return Ordering::Greater,
                    Ordering::Equal => {
                        if ea != eb {
                            return eb.cmp(&ea);
                        }
                        i += 1;
                        j += 1;
                    }
                },
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (None, None) => return Ordering::Equal,
            }
        }
    }

    /// Render with a caller-supplied variable namer, e.g. `x1^2*x3`.
    pub fn render(&self, name: &impl Fn(u32) -> String) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.exps
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    name(v)
                } else {
                    format!("{}^{}", name(v), e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|v| format!("x{}", v + 1)))
    }
}

/// A monomial ideal with its unique minimal monomial generating set, kept
/// sorted in the Lex order above. The zero ideal has no generators; the unit
/// ideal is generated by 1.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialIdeal {
    n_vars: u32,
    gens: Vec<Monomial>,
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.gens
                .iter()
                .map(|g| format!("{g:?}"))
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

impl MonomialIdeal {
    /// Minimalize: drop every generator divisible by another. Idempotent and
    /// independent of the input order.
    pub fn new(n_vars: u32, gens: Vec<Monomial>) -> MonomialIdeal {
        let mut sorted = gens;
        sorted.sort_by_key(Monomial::degree);
        let mut minimal: Vec<Monomial> = Vec::with_capacity(sorted.len());
        for g in sorted {
            if !minimal.iter().any(|m| m.divides(&g)) {
                minimal.push(g);
            }
        }
        minimal.sort_by(|a, b| a.lex_cmp(b));
        minimal.dedup();
        MonomialIdeal {
            n_vars,
            gens: minimal,
        }
    }

    pub fn zero(n_vars: u32) -> MonomialIdeal {
        MonomialIdeal {
            n_vars,
            gens: vec![],
        }
    }

    pub fn unit(n_vars: u32) -> MonomialIdeal {
        MonomialIdeal {
            n_vars,
            gens: vec![Monomial::one()],
        }
    }

    /// The prime ideal generated by the variables in `support` (1-based ids).
    pub fn prime_of(n_vars: u32, support: Face) -> MonomialIdeal {
        MonomialIdeal {
            n_vars,
            gens: support.vertices().map(|v| Monomial::variable(v - 1)).collect(),
        }
    }

    pub fn n_vars(&self) -> u32 {
        self.n_vars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// Membership: some generator divides M.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn equals(&self, other: &MonomialIdeal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if self.n_vars != other.n_vars {
            return Err(Error::VariableMismatch(self.n_vars, other.n_vars));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(MonomialIdeal::zero(self.n_vars));
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        Ok(MonomialIdeal::new(self.n_vars, gens))
    }

    pub fn multiply(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if self.n_vars != other.n_vars {
            return Err(Error::VariableMismatch(self.n_vars, other.n_vars));
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.times(b));
            }
        }
        Ok(MonomialIdeal::new(self.n_vars, gens))
    }

    /// J^m with J^0 the unit ideal.
    pub fn power(&self, m: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.n_vars);
        for _ in 0..m {
            acc = acc.multiply(self).expect("same variables");
        }
        acc
    }

    /// Colon ideal J : M.
    pub fn colon(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal::new(
            self.n_vars,
            self.gens.iter().map(|g| g.div_by_gcd(m)).collect(),
        )
    }

    /// Smallest degree of a minimal generator.
    pub fn alpha_degree(&self) -> Result<u32> {
        self.gens
            .iter()
            .map(Monomial::degree)
            .min()
            .ok_or(Error::ZeroIdeal)
    }

    /// Largest degree of a minimal generator.
    pub fn omega_degree(&self) -> Result<u32> {
        self.gens
            .iter()
            .map(Monomial::degree)
            .max()
            .ok_or(Error::ZeroIdeal)
    }

    /// Complete-intersection test for squarefree ideals: the minimal
    /// generators must have pairwise disjoint supports. On success returns
    /// the support partition, restricted to the variables that appear.
    pub fn complete_intersection_partition(&self) -> Result<Option<Vec<Face>>> {
        for g in &self.gens {
            if !g.is_squarefree() {
                return Err(Error::NotSquarefree(format!("{g:?}")));
            }
        }
        let mut seen = Face::EMPTY;
        let mut parts = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let s = g.support();
            if !s.intersection(seen).is_empty() {
                return Ok(None);
            }
            seen = seen.union(s);
            parts.push(s);
        }
        Ok(Some(parts))
    }

    pub fn is_complete_intersection(&self) -> Result<bool> {
        Ok(self.complete_intersection_partition()?.is_some())
    }

    /// Render the sorted generator list.
    pub fn render(&self, name: &impl Fn(u32) -> String) -> String {
        if self.is_zero() {
            return "(0)".to_string();
        }
        format!(
            "({})",
            self.gens
                .iter()
                .map(|g| g.render(name))
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[(u32, u32)]) -> Monomial {
        Monomial::from_exps(exps.iter().copied())
    }

    fn sf(vs: &[u32]) -> Monomial {
        Monomial::squarefree(Face::from_vertices(vs.iter().copied()))
    }

    #[test]
    fn minimalize_examples() {
        let j = MonomialIdeal::new(2, vec![m(&[(0, 1)]), m(&[(0, 1), (1, 1)])]);
        assert_eq!(j.gens(), &[m(&[(0, 1)])]);
        // idempotent
        let again = MonomialIdeal::new(2, j.gens().to_vec());
        assert_eq!(again, j);
    }

    #[test]
    fn square_of_triangle_ideal_keeps_six_generators() {
        let i = MonomialIdeal::new(3, vec![sf(&[1, 2]), sf(&[1, 3]), sf(&[2, 3])]);
        let i2 = i.power(2);
        let expect = vec![
            m(&[(0, 2), (1, 2)]),
            m(&[(0, 2), (1, 1), (2, 1)]),
            m(&[(0, 2), (2, 2)]),
            m(&[(0, 1), (1, 2), (2, 1)]),
            m(&[(0, 1), (1, 1), (2, 2)]),
            m(&[(1, 2), (2, 2)]),
        ];
        assert_eq!(i2.gens(), &expect[..]);
    }

    #[test]
    fn intersection_reproduces_second_symbolic_power_generators() {
        let n = 3;
        let p = |vs: &[u32]| MonomialIdeal::prime_of(n, Face::from_vertices(vs.iter().copied()));
        let j = p(&[1, 2])
            .power(2)
            .intersect(&p(&[1, 3]).power(2))
            .unwrap()
            .intersect(&p(&[2, 3]).power(2))
            .unwrap();
        let expect = vec![
            m(&[(0, 2), (1, 2)]),
            m(&[(0, 1), (1, 1), (2, 1)]),
            m(&[(0, 2), (2, 2)]),
            m(&[(1, 2), (2, 2)]),
        ];
        let got: Vec<Monomial> = j.gens().to_vec();
        let mut want = expect.clone();
        want.sort_by(|a, b| a.lex_cmp(b));
        assert_eq!(got, want);
    }

    #[test]
    fn simple_intersections() {
        let a = MonomialIdeal::new(2, vec![m(&[(0, 1)])]);
        let b = MonomialIdeal::new(2, vec![m(&[(1, 1)])]);
        assert_eq!(
            a.intersect(&b).unwrap().gens(),
            &[m(&[(0, 1), (1, 1)])]
        );
        // (a,b)∩(b,c)∩(c,d)∩(a,d) = (ac, bd) on variables a..d = 1..4
        let p = |vs: &[u32]| MonomialIdeal::prime_of(4, Face::from_vertices(vs.iter().copied()));
        let j = p(&[1, 2])
            .intersect(&p(&[2, 3]))
            .unwrap()
            .intersect(&p(&[3, 4]))
            .unwrap()
            .intersect(&p(&[1, 4]))
            .unwrap();
        assert_eq!(j.gens(), &[sf(&[1, 3]), sf(&[2, 4])]);
        // (ac,bd)^2 expands to three generators
        assert_eq!(
            j.power(2).gens(),
            &[
                m(&[(0, 2), (2, 2)]),
                m(&[(0, 1), (1, 1), (2, 1), (3, 1)]),
                m(&[(1, 2), (3, 2)])
            ]
        );
    }

    #[test]
    fn membership_and_colon() {
        let j = MonomialIdeal::new(2, vec![m(&[(0, 1), (1, 1)])]);
        assert_eq!(j.colon(&m(&[(0, 1)])).gens(), &[m(&[(1, 1)])]);
        let i = MonomialIdeal::new(3, vec![sf(&[1, 2]), sf(&[1, 3]), sf(&[2, 3])]);
        assert!(!i.power(2).contains(&sf(&[1, 2, 3])));
        assert!(j.power(0).is_unit());
    }

    #[test]
    fn degree_statistics() {
        let i = MonomialIdeal::new(3, vec![sf(&[1, 2]), sf(&[1, 3]), sf(&[2, 3])]);
        assert_eq!(i.alpha_degree().unwrap(), 2);
        assert_eq!(i.omega_degree().unwrap(), 2);
        let ci = MonomialIdeal::new(
            7,
            vec![sf(&[1, 7]), sf(&[2, 3, 6]), sf(&[4, 5])],
        );
        assert_eq!(ci.alpha_degree().unwrap(), 2);
        assert_eq!(ci.omega_degree().unwrap(), 3);
        assert!(MonomialIdeal::zero(2).alpha_degree().is_err());
    }

    #[test]
    fn complete_intersection_detection() {
        let ci = MonomialIdeal::new(
            7,
            vec![sf(&[1, 7]), sf(&[2, 3, 6]), sf(&[4, 5])],
        );
        let parts = ci.complete_intersection_partition().unwrap().unwrap();
        assert_eq!(
            parts,
            vec![
                Face::from_vertices([1, 7]),
                Face::from_vertices([2, 3, 6]),
                Face::from_vertices([4, 5])
            ]
        );
        let tri = MonomialIdeal::new(3, vec![sf(&[1, 2]), sf(&[1, 3]), sf(&[2, 3])]);
        assert!(!tri.is_complete_intersection().unwrap());
        let nsf = MonomialIdeal::new(2, vec![m(&[(0, 2)])]);
        assert!(nsf.is_complete_intersection().is_err());
    }

    #[test]
    fn lex_convention_matches_x2y_before_xy2() {
        let x2y = m(&[(0, 2), (1, 1)]);
        let xy2 = m(&[(0, 1), (1, 2)]);
        assert_eq!(x2y.lex_cmp(&xy2), Ordering::Less);
        assert_eq!(m(&[(0, 1)]).lex_cmp(&m(&[(0, 1), (1, 1)])), Ordering::Less);
    }

    #[test]
    fn rendering() {
        assert_eq!(
            m(&[(0, 2), (2, 1)]).render(&|v| format!("x{}", v + 1)),
            "x1^2*x3"
        );
        assert_eq!(Monomial::one().render(&|v| format!("x{}", v + 1)), "1");
    }
}
