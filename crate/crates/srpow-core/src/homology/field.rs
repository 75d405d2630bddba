//! Exact rank computations over the rationals and prime fields.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field for homology computations.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

impl FieldSpec {
    pub fn validate(self) -> Result<Self> {
        if let FieldSpec::Prime(p) = self {
            if p < 2 || !is_prime(p) {
                return Err(Error::Precondition(format!("{p} is not prime")));
            }
        }
        Ok(self)
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A sparse integer matrix given by rows of (column, coefficient) pairs.
/// Boundary matrices have entries ±1 but the rank code accepts any i64.
pub struct SparseMat {
    pub cols: usize,
    pub rows: Vec<Vec<(usize, i64)>>,
}

impl SparseMat {
    pub fn rank(&self, field: FieldSpec) -> usize {
        match field {
            FieldSpec::Prime(2) => self.rank_f2(),
            FieldSpec::Prime(p) => self.rank_fp(p as u64),
            FieldSpec::Rationals => self.rank_q(),
        }
    }

    fn rank_f2(&self) -> usize {
        let words = self.cols.div_ceil(64);
        let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
        for row in &self.rows {
            let mut bits = vec![0u64; words];
            for &(c, v) in row {
                if v % 2 != 0 {
                    bits[c / 64] ^= 1 << (c % 64);
                }
            }
            reduce_f2(&mut bits, &pivots);
            if let Some(p) = first_bit(&bits) {
                pivots.push((p, bits));
            }
        }
        pivots.len()
    }

    fn rank_fp(&self, p: u64) -> usize {
        // rows as dense vectors mod p with recorded pivot columns
        let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
        for row in &self.rows {
            let mut v = vec![0u64; self.cols];
            for &(c, x) in row {
                let m = x.rem_euclid(p as i64) as u64;
                v[c] = (v[c] + m) % p;
            }
            for (pc, pr) in &pivots {
                if v[*pc] != 0 {
                    let factor = v[*pc] % p;
                    // v -= factor * pr  (pr is normalized with pivot 1)
                    for c in 0..self.cols {
                        if pr[c] != 0 {
                            v[c] = (v[c] + p * factor - (factor * pr[c]) % p) % p;
                        }
                    }
                }
            }
            if let Some(pc) = v.iter().position(|x| *x != 0) {
                let inv = mod_inverse(v[pc], p);
                for x in v.iter_mut() {
                    *x = (*x * inv) % p;
                }
                pivots.push((pc, v));
            }
        }
        pivots.len()
    }

    fn rank_q(&self) -> usize {
        // fraction-free Gaussian elimination (Bareiss) with BigInt entries
        let mut m: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .map(|row| {
                let mut v = vec![BigInt::zero(); self.cols];
                for &(c, x) in row {
                    v[c] += BigInt::from(x);
                }
                v
            })
            .collect();
        let nrows = m.len();
        let mut rank = 0usize;
        let mut prev = BigInt::from(1);
        for col in 0..self.cols {
            let Some(pivot_row) = (rank..nrows).find(|r| !m[*r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot_row);
            let pivot = m[rank][col].clone();
            for r in rank + 1..nrows {
                if m[r][col].is_zero() && m[r][col + 1..].iter().all(Zero::is_zero) {
                    continue;
                }
                for c in col + 1..self.cols {
                    let num = &pivot * &m[r][c] - &m[r][col] * &m[rank][c];
                    debug_assert!((&num % &prev).is_zero() || prev.abs() == BigInt::from(1));
                    m[r][c] = num / &prev;
                }
                m[r][col] = BigInt::zero();
            }
            prev = pivot;
            rank += 1;
            if rank == nrows {
                break;
            }
        }
        rank
    }
}

fn reduce_f2(bits: &mut [u64], pivots: &[(usize, Vec<u64>)]) {
    for (p, prow) in pivots {
        if bits[p / 64] & (1 << (p % 64)) != 0 {
            for (w, pw) in bits.iter_mut().zip(prow.iter()) {
                *w ^= pw;
            }
        }
    }
}

fn first_bit(bits: &[u64]) -> Option<usize> {
    for (i, w) in bits.iter().enumerate() {
        if *w != 0 {
            return Some(i * 64 + w.trailing_zeros() as usize);
        }
    }
    None
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid; p prime, a != 0 mod p
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as u64
}

/// F2 row-space helper used for cycle/boundary membership certificates.
pub struct F2Space {
    words: usize,
    pivots: Vec<(usize, Vec<u64>)>,
}

impl F2Space {
    pub fn new(cols: usize) -> F2Space {
        F2Space {
            words: cols.div_ceil(64),
            pivots: Vec::new(),
        }
    }

    /// Insert a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, cols: &[usize]) -> bool {
        let mut bits = vec![0u64; self.words];
        for &c in cols {
            bits[c / 64] ^= 1 << (c % 64);
        }
        self.insert_bits(bits)
    }

    pub fn insert_bits(&mut self, mut bits: Vec<u64>) -> bool {
        reduce_f2(&mut bits, &self.pivots);
        match first_bit(&bits) {
            Some(p) => {
                self.pivots.push((p, bits));
                true
            }
            None => false,
        }
    }

    /// Does the span contain the given vector?
    pub fn contains(&self, cols: &[usize]) -> bool {
        let mut bits = vec![0u64; self.words];
        for &c in cols {
            bits[c / 64] ^= 1 << (c % 64);
        }
        reduce_f2(&mut bits, &self.pivots);
        first_bit(&bits).is_none()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: Vec<Vec<i64>>) -> SparseMat {
        let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
        SparseMat {
            cols,
            rows: rows
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .enumerate()
                        .filter(|(_, v)| *v != 0)
                        .map(|(c, v)| (c, v))
                        .collect()
                })
                .collect(),
        }
    }

    #[test]
    fn ranks_agree_across_fields_without_torsion() {
        let m = mat(vec![vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]]);
        for f in [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(5)] {
            assert_eq!(m.rank(f), 2, "field {f}");
        }
    }

    #[test]
    fn rank_detects_characteristic() {
        // determinant 2: full rank over Q and F3, drops over F2
        let m = mat(vec![vec![1, 1], vec![1, -1]]);
        assert_eq!(m.rank(FieldSpec::Rationals), 2);
        assert_eq!(m.rank(FieldSpec::Prime(3)), 2);
        assert_eq!(m.rank(FieldSpec::Prime(2)), 1);
    }

    #[test]
    fn bareiss_handles_rank_deficiency() {
        let m = mat(vec![
            vec![2, 4, 6],
            vec![1, 2, 3],
            vec![3, 6, 9],
            vec![0, 1, 1],
        ]);
        assert_eq!(m.rank(FieldSpec::Rationals), 2);
    }

    #[test]
    fn f2_space_membership() {
        let mut s = F2Space::new(4);
        assert!(s.insert(&[0, 1]));
        assert!(s.insert(&[1, 2]));
        assert!(!s.insert(&[0, 2]));
        assert!(s.contains(&[0, 2]));
        assert!(!s.contains(&[3]));
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn field_validation() {
        assert!(FieldSpec::Prime(4).validate().is_err());
        assert!(FieldSpec::Prime(5).validate().is_ok());
    }
}
