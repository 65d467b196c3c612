//! Linear algebra over `F_p` on normalized cochains: cocycle bases and a
//! coboundary solver that returns either a witness or a refuting cycle.

use thiserror::Error;

use crate::algebra::{Coefficient, FormalSum};
use crate::simplicial::{Cell, Cochain, FiniteSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("input is not a cocycle mod {0}")]
    NotCocycle(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut acc, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn residue<R: Coefficient>(x: &R, p: u64) -> u64 {
    x.to_i64().expect("coefficient fits in i64").rem_euclid(p as i64) as u64
}

/// A dense matrix over `F_p`, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub p: u64,
    pub rows: Vec<Vec<u64>>,
    pub ncols: usize,
}

impl Matrix {
    pub fn zeros(p: u64, nrows: usize, ncols: usize) -> Self {
        Self { p, rows: vec![vec![0; ncols]; nrows], ncols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.ncols, self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                t.rows[j][i] = v;
            }
        }
        t
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.ncols {
            let Some(k) = (r..m.nrows()).find(|&k| m.rows[k][c] != 0) else { continue };
            m.rows.swap(r, k);
            let inv = inv_mod(m.rows[r][c], p);
            for v in m.rows[r].iter_mut() {
                *v = *v * inv % p;
            }
            let pivot = m.rows[r].clone();
            for (k, row) in m.rows.iter_mut().enumerate() {
                if k != r && row[c] != 0 {
                    let f = row[c];
                    for (v, &q) in row.iter_mut().zip(&pivot) {
                        *v = (*v + p - f * q % p) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.nrows() {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{x : Mx = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let (m, pivots) = self.rref();
        (0..self.ncols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut x = vec![0; self.ncols];
                x[free] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = (p - m.rows[r][free]) % p;
                }
                x
            })
            .collect()
    }

    /// Some `x` with `Mx = b`, if one exists.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        let mut aug = self.clone();
        for (row, &v) in aug.rows.iter_mut().zip(b) {
            row.push(v % self.p);
        }
        aug.ncols += 1;
        let (m, pivots) = aug.rref();
        if pivots.last() == Some(&self.ncols) {
            return None;
        }
        let mut x = vec![0; self.ncols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = m.rows[r][self.ncols];
        }
        Some(x)
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        self.rows.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b % self.p).sum::<u64>() % self.p).collect()
    }
}

/// The matrix of `δ: N^d → N^{d+1}` mod `p`, columns indexed by `d`-cells.
pub fn coboundary_matrix(x: &FiniteSet, d: usize, p: u64) -> Matrix {
    let src: Vec<Cell> = x.cells(d).collect();
    let tgt: Vec<Cell> = x.cells(d + 1).collect();
    let mut m = Matrix::zeros(p, tgt.len(), src.len());
    for (j, &c) in src.iter().enumerate() {
        let dc = Cochain::<i64>::dual(c).coboundary(x);
        for (i, &y) in tgt.iter().enumerate() {
            m.rows[i][j] = residue(&dc.value(y), p);
        }
    }
    m
}

fn to_vector<R: Coefficient>(c: &Cochain<R>, x: &FiniteSet, p: u64) -> Vec<u64> {
    x.cells(c.degree).map(|cell| residue(&c.value(cell), p)).collect()
}

fn from_vector<R: Coefficient>(v: &[u64], x: &FiniteSet, d: usize) -> Cochain<R> {
    let values = x.cells(d).zip(v).map(|(c, &a)| (c, R::from_u64(a).unwrap())).collect();
    Cochain::from_values(d, values)
}

/// A basis of the mod-`p` cocycles in degree `d`, with representatives in `0..p`.
pub fn cocycle_basis<R: Coefficient>(x: &FiniteSet, d: usize, p: u64) -> Vec<Cochain<R>> {
    let m = coboundary_matrix(x, d, p);
    if m.nrows() == 0 {
        return (0..m.ncols)
            .map(|j| {
                let mut v = vec![0; m.ncols];
                v[j] = 1;
                from_vector(&v, x, d)
            })
            .collect();
    }
    m.nullspace().iter().map(|v| from_vector(v, x, d)).collect()
}

/// `dim H^d(X; F_p)`.
pub fn betti_mod(x: &FiniteSet, d: usize, p: u64) -> usize {
    let n = x.count(d);
    let rank_out = if x.count(d + 1) == 0 { 0 } else { coboundary_matrix(x, d, p).rank() };
    let rank_in = if d == 0 || n == 0 { 0 } else { coboundary_matrix(x, d - 1, p).rank() };
    n - rank_out - rank_in
}

/// Outcome of asking whether a mod-`p` cocycle is a coboundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate<R: Coefficient = i64> {
    /// `δ witness ≡ c`.
    Witness(Cochain<R>),
    /// A mod-`p` cycle `z` with `⟨c, z⟩ = pairing ≠ 0`; since `⟨δx, z⟩ = ±⟨x, ∂z⟩ = 0`
    /// for every `x`, no witness exists.
    Refutation { cycle: FormalSum<Cell, R>, pairing: u64 },
}

impl<R: Coefficient> Certificate<R> {
    pub fn is_coboundary(&self) -> bool {
        matches!(self, Certificate::Witness(_))
    }

    /// Re-derive the claim from the certificate alone.
    pub fn check(&self, c: &Cochain<R>, x: &FiniteSet, p: u64) -> bool {
        let pr = R::from_u64(p).unwrap();
        match self {
            Certificate::Witness(w) => {
                let mut diff = w.coboundary(x);
                if w.is_zero() {
                    diff = Cochain::zero(c.degree);
                }
                diff.add_scaled(c, &-R::one());
                diff.values.is_zero_mod(&pr)
            }
            Certificate::Refutation { cycle, pairing } => {
                let boundary_vanishes = x.chain_boundary(cycle).is_zero_mod(&pr);
                let pair = cycle.iter().fold(R::zero(), |acc, (cell, a)| acc + a.clone() * c.value(*cell));
                boundary_vanishes && *pairing != 0 && residue(&pair, p) == *pairing
            }
        }
    }
}

/// Solve `δx ≡ c (mod p)`.
pub fn is_coboundary<R: Coefficient>(c: &Cochain<R>, x: &FiniteSet, p: u64) -> Result<Certificate<R>, SolverError> {
    if !crate::steenrod::is_prime(p) {
        return Err(SolverError::NotPrime(p));
    }
    let pr = R::from_u64(p).unwrap();
    if !c.is_cocycle_mod(x, &pr) {
        return Err(SolverError::NotCocycle(p));
    }
    let d = c.degree;
    let b = to_vector(c, x, p);
    if b.iter().all(|&v| v == 0) {
        return Ok(Certificate::Witness(Cochain::zero(d.saturating_sub(1))));
    }
    if d > 0 {
        let m = coboundary_matrix(x, d - 1, p);
        if let Some(w) = m.solve(&b) {
            return Ok(Certificate::Witness(from_vector(&w, x, d - 1)));
        }
        // y with yᵀM = 0 and y·b ≠ 0; yᵀM = 0 says y is a cycle mod p
        for y in m.transpose().nullspace() {
            let pairing = y.iter().zip(&b).map(|(a, c)| a * c % p).sum::<u64>() % p;
            if pairing != 0 {
                return Ok(Certificate::Refutation { cycle: vector_chain(&y, x, d), pairing });
            }
        }
        unreachable!("an inconsistent system has a separating cycle");
    }
    // in degree 0 only zero is a coboundary and every 0-chain is a cycle
    let j = b.iter().position(|&v| v != 0).unwrap();
    let mut y = vec![0; b.len()];
    y[j] = 1;
    Ok(Certificate::Refutation { cycle: vector_chain(&y, x, 0), pairing: b[j] })
}

fn vector_chain<R: Coefficient>(y: &[u64], x: &FiniteSet, d: usize) -> FormalSum<Cell, R> {
    x.cells(d).zip(y).filter(|(_, &a)| a != 0).map(|(c, &a)| (c, R::from_u64(a).unwrap())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_nullspace() {
        let m = Matrix { p: 3, rows: vec![vec![1, 2, 0], vec![2, 1, 0]], ncols: 3 };
        assert_eq!(m.rank(), 1);
        for v in m.nullspace() {
            assert!(m.apply(&v).iter().all(|&a| a == 0));
        }
        assert_eq!(m.nullspace().len(), 2);
        assert!(m.solve(&[1, 1]).is_none());
        assert!(m.solve(&[1, 2]).is_some());
    }

    #[test]
    fn solver_examples() {
        let x = FiniteSet::standard_simplex(1);
        let zero = Cochain::<i64>::zero(1);
        assert!(is_coboundary(&zero, &x, 3).unwrap().is_coboundary());
        let v = x.cells(0).next().unwrap();
        let c = Cochain::<i64>::dual(v).coboundary(&x);
        let cert = is_coboundary(&c, &x, 3).unwrap();
        assert!(cert.is_coboundary() && cert.check(&c, &x, 3));

        let s = FiniteSet::boundary_of_simplex(2);
        let e = s.cells(1).next().unwrap();
        let fundamental = Cochain::<i64>::dual(e);
        let cert = is_coboundary(&fundamental, &s, 3).unwrap();
        assert!(!cert.is_coboundary() && cert.check(&fundamental, &s, 3));
    }

    #[test]
    fn betti_numbers() {
        let s = FiniteSet::boundary_of_simplex(3);
        assert_eq!((betti_mod(&s, 0, 3), betti_mod(&s, 1, 3), betti_mod(&s, 2, 3)), (1, 0, 1));
        assert_eq!(cocycle_basis::<i64>(&s, 2, 3).len(), 4);
    }

    #[test]
    fn non_cocycle_rejected() {
        let x = FiniteSet::standard_simplex(1);
        let v = x.cells(0).next().unwrap();
        assert_eq!(is_coboundary(&Cochain::<i64>::dual(v), &x, 3), Err(SolverError::NotCocycle(3)));
    }
}
