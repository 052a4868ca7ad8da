//! Full-rank integer lattices in `Z^n` stored as a column Hermite normal form.
//!
//! Basis vectors are the columns of an upper triangular matrix with positive
//! diagonal; every entry to the right of a diagonal entry lies in
//! `[0, diagonal)`. The form is unique for a given lattice, so lattices can be
//! compared and serialized directly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegerLattice {
    dimension: usize,
    /// Row-major `n × n`; column `j` is the `j`-th basis vector.
    basis: Vec<Vec<i64>>,
    index: u64,
}

fn floor_div(a: i128, b: i128) -> i128 {
    a.div_euclid(b)
}

/// Column Hermite normal form of the lattice spanned by the columns of
/// `gens` (`n` rows, any number of columns). Fails if they do not span a
/// full-rank lattice.
fn column_hnf(n: usize, mut cols: Vec<Vec<i128>>) -> Result<Vec<Vec<i128>>> {
    let mut pivots: Vec<Option<Vec<i128>>> = vec![None; n];
    for i in (0..n).rev() {
        // gcd-combine row i across the remaining columns
        loop {
            let nonzero: Vec<usize> = (0..cols.len()).filter(|&c| cols[c][i] != 0).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let &best = nonzero
                .iter()
                .min_by_key(|&&c| cols[c][i].unsigned_abs())
                .unwrap();
            let pivot = cols[best].clone();
            for &c in &nonzero {
                if c != best {
                    let q = floor_div(cols[c][i], pivot[i]);
                    for (x, p) in cols[c].iter_mut().zip(&pivot) {
                        *x -= q * p;
                    }
                }
            }
        }
        let Some(pos) = cols.iter().position(|c| c[i] != 0) else {
            return Err(Error::Precondition(
                "generators do not span a full-rank lattice".into(),
            ));
        };
        let mut col = cols.swap_remove(pos);
        if col[i] < 0 {
            col.iter_mut().for_each(|x| *x = -*x);
        }
        pivots[i] = Some(col);
    }
    let mut h: Vec<Vec<i128>> = pivots.into_iter().map(Option::unwrap).collect();
    // h[j] is column j; reduce entries right of each diagonal, bottom row first
    for i in (0..n).rev() {
        for j in i + 1..n {
            let q = floor_div(h[j][i], h[i][i]);
            if q != 0 {
                let pivot = h[i].clone();
                for (x, p) in h[j].iter_mut().zip(&pivot) {
                    *x -= q * p;
                }
            }
        }
    }
    Ok(h)
}

impl IntegerLattice {
    /// Lattice spanned by the given column vectors.
    pub fn from_generators(dimension: usize, generators: &[Vec<i64>]) -> Result<IntegerLattice> {
        if let Some(g) = generators.iter().find(|g| g.len() != dimension) {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                actual: g.len(),
            });
        }
        let cols = generators
            .iter()
            .map(|g| g.iter().map(|&x| x as i128).collect())
            .collect();
        let h = column_hnf(dimension, cols)?;
        let mut basis = vec![vec![0i64; dimension]; dimension];
        let mut index: i128 = 1;
        for (j, col) in h.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                basis[i][j] = i64::try_from(x)
                    .map_err(|_| Error::Precondition("basis entry overflows i64".into()))?;
            }
            index *= col[j];
        }
        let index =
            u64::try_from(index).map_err(|_| Error::Precondition("index overflows u64".into()))?;
        Ok(IntegerLattice {
            dimension,
            basis,
            index,
        })
    }

    /// Lattice spanned by the columns of a row-major square matrix.
    pub fn from_basis_rows(rows: &[Vec<i64>]) -> Result<IntegerLattice> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: r.len(),
            });
        }
        let cols: Vec<Vec<i64>> = (0..n)
            .map(|j| rows.iter().map(|r| r[j]).collect())
            .collect();
        Self::from_generators(n, &cols)
    }

    /// `{x ∈ Z^n : Σ x_i w_i ≡ 0 (mod modulus)}`.
    ///
    /// The row `[w_1 … w_n modulus]` is reduced to `[g 0 … 0]` by unimodular
    /// column operations; the last `n` columns of the transform span the
    /// integer kernel of the row in `Z^{n+1}`, and dropping their final
    /// coordinate gives generators of the congruence kernel.
    pub fn kernel_of(weights: &[u64], modulus: u64) -> Result<IntegerLattice> {
        let n = weights.len();
        if n == 0 || modulus == 0 {
            return Err(Error::Precondition(
                "kernel needs weights and a positive modulus".into(),
            ));
        }
        let mut row: Vec<i128> = weights.iter().map(|&w| w as i128).collect();
        row.push(modulus as i128);
        let m = n + 1;
        // transform[j] is column j of the unimodular matrix
        let mut transform: Vec<Vec<i128>> = (0..m)
            .map(|j| (0..m).map(|i| i128::from(i == j)).collect())
            .collect();
        loop {
            let nonzero: Vec<usize> = (0..m).filter(|&j| row[j] != 0).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let &best = nonzero
                .iter()
                .min_by_key(|&&j| row[j].unsigned_abs())
                .unwrap();
            for &j in &nonzero {
                if j != best {
                    let q = floor_div(row[j], row[best]);
                    row[j] -= q * row[best];
                    let pivot = transform[best].clone();
                    for (x, p) in transform[j].iter_mut().zip(&pivot) {
                        *x -= q * p;
                    }
                }
            }
        }
        let gcd_col = (0..m).find(|&j| row[j] != 0).expect("modulus is nonzero");
        let generators: Vec<Vec<i64>> = (0..m)
            .filter(|&j| j != gcd_col)
            .map(|j| {
                transform[j][..n]
                    .iter()
                    .map(|&x| i64::try_from(x).expect("kernel generator overflows i64"))
                    .collect()
            })
            .collect();
        Self::from_generators(n, &generators)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Row-major HNF basis; columns are the basis vectors.
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn basis_column(&self, j: usize) -> Vec<i64> {
        self.basis.iter().map(|r| r[j]).collect()
    }

    /// `|det|`, the number of cosets of the lattice in `Z^n`.
    pub fn index(&self) -> u64 {
        self.index
    }

    /// Determinant recomputed from the stored basis by fraction-free
    /// elimination, independent of the triangular shape.
    pub fn determinant(&self) -> i128 {
        let n = self.dimension;
        let mut a: Vec<Vec<i128>> = self
            .basis
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }

    /// Coefficients `c` with `x = H c`, if `x` lies in the lattice.
    pub fn coordinates_of(&self, x: &[i64]) -> Option<Vec<i64>> {
        assert_eq!(x.len(), self.dimension);
        let n = self.dimension;
        let mut c = vec![0i128; n];
        for i in (0..n).rev() {
            let rest: i128 = (i + 1..n).map(|j| self.basis[i][j] as i128 * c[j]).sum();
            let num = x[i] as i128 - rest;
            let d = self.basis[i][i] as i128;
            if num % d != 0 {
                return None;
            }
            c[i] = num / d;
        }
        Some(c.into_iter().map(|v| v as i64).collect())
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.coordinates_of(x).is_some()
    }

    /// Map `Z^n → ⊕ Z_{d_i}` with kernel exactly this lattice, from a Smith
    /// normal form `U·B·V = diag(d)`.
    pub fn quotient_map(&self) -> QuotientMap {
        let n = self.dimension;
        let mut a: Vec<Vec<i128>> = self
            .basis
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let mut u: Vec<Vec<i128>> = (0..n)
            .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
            .collect();
        for t in 0..n {
            loop {
                let Some((pi, pj)) = (t..n)
                    .flat_map(|i| (t..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| a[i][j] != 0)
                    .min_by_key(|&(i, j)| a[i][j].unsigned_abs())
                else {
                    break;
                };
                a.swap(t, pi);
                u.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                let mut clean = true;
                for i in t + 1..n {
                    let q = floor_div(a[i][t], a[t][t]);
                    if q != 0 {
                        let (at, ut) = (a[t].clone(), u[t].clone());
                        for (x, p) in a[i].iter_mut().zip(&at) {
                            *x -= q * p;
                        }
                        for (x, p) in u[i].iter_mut().zip(&ut) {
                            *x -= q * p;
                        }
                    }
                    clean &= a[i][t] == 0;
                }
                for j in t + 1..n {
                    let q = floor_div(a[t][j], a[t][t]);
                    if q != 0 {
                        for row in a.iter_mut() {
                            let p = row[t];
                            row[j] -= q * p;
                        }
                    }
                    clean &= a[t][j] == 0;
                }
                if !clean {
                    continue;
                }
                // divisibility: fold in a row the pivot does not divide
                let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| a[i][j] % a[t][t] != 0));
                match bad {
                    Some(i) => {
                        let (ai, ui) = (a[i].clone(), u[i].clone());
                        for (x, p) in a[t].iter_mut().zip(&ai) {
                            *x += p;
                        }
                        for (x, p) in u[t].iter_mut().zip(&ui) {
                            *x += p;
                        }
                    }
                    None => break,
                }
            }
            if a[t][t] < 0 {
                a[t].iter_mut().for_each(|x| *x = -*x);
                u[t].iter_mut().for_each(|x| *x = -*x);
            }
        }
        QuotientMap {
            transform: u,
            invariants: (0..n).map(|i| a[i][i]).collect(),
        }
    }
}

/// `x ↦ (U x)_i mod d_i`; two vectors differ by a lattice vector exactly when
/// their images agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMap {
    transform: Vec<Vec<i128>>,
    invariants: Vec<i128>,
}

impl QuotientMap {
    /// Smith invariants `d_1 | d_2 | … | d_n`.
    pub fn invariants(&self) -> Vec<u64> {
        self.invariants.iter().map(|&d| d as u64).collect()
    }

    pub fn apply(&self, x: &[i64]) -> Vec<u64> {
        self.transform
            .iter()
            .zip(&self.invariants)
            .map(|(row, &d)| {
                let v: i128 = row.iter().zip(x).map(|(&a, &b)| a * b as i128).sum();
                v.rem_euclid(d) as u64
            })
            .collect()
    }
}
