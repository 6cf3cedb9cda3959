//! Decomposable (simple) vectors and covectors, with exact Plücker data.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::index::MultiIndex;
use super::{sigma, ExteriorError};
use crate::scalar::Scalar;

/// A decomposable `p`-vector `V = v₁ ∧ … ∧ v_p`, stored as the `n×p` matrix
/// whose columns are the factors. Represents the zero vector iff the matrix
/// has rank `< p`; the coefficient of `e_I` in `V` is the determinant of the
/// row-submatrix selected by `I`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleVector {
    n: usize,
    p: usize,
    /// `columns[c][r]` is the `r`-th entry of factor `v_{c+1}`.
    columns: Vec<Vec<Scalar>>,
}

impl SimpleVector {
    pub fn new(n: usize, columns: Vec<Vec<Scalar>>) -> Result<Self, ExteriorError> {
        let p = columns.len();
        if p > n || columns.iter().any(|c| c.len() != n) {
            return Err(ExteriorError::BadIndex(format!(
                "simple vector needs {p} columns of length {n}"
            )));
        }
        Ok(SimpleVector { n, p, columns })
    }

    /// The coordinate vector `e_I = e_{i₁} ∧ … ∧ e_{i_p}`.
    pub fn coordinate(n: usize, idx: &MultiIndex) -> SimpleVector {
        let columns = idx
            .as_slice()
            .iter()
            .map(|&i| {
                let mut col = vec![Scalar::zero(); n];
                col[i - 1] = Scalar::one();
                col
            })
            .collect();
        SimpleVector { n, p: idx.len(), columns }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn columns(&self) -> &[Vec<Scalar>] {
        &self.columns
    }

    /// Plücker coordinate: `det` of the `p×p` submatrix on rows `I`.
    pub fn pluecker(&self, idx: &MultiIndex) -> Scalar {
        let rows = idx.as_slice();
        let m: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|&r| (0..self.p).map(|c| self.columns[c][r - 1].clone()).collect())
            .collect();
        det(m)
    }

    /// All nonzero Plücker coordinates, keyed by multi-index.
    pub fn pluecker_map(&self) -> BTreeMap<MultiIndex, Scalar> {
        let mut out = BTreeMap::new();
        for idx in MultiIndex::enumerate(self.n, self.p) {
            let v = self.pluecker(&idx);
            if !v.is_zero() {
                out.insert(idx, v);
            }
        }
        out
    }

    /// True iff the column matrix has rank `< p`.
    pub fn is_zero_vector(&self) -> bool {
        self.pluecker_map().is_empty()
    }

    /// Gram determinant `det(M† M)`, via Cauchy–Binet: `Σ_I |P_I|²`.
    pub fn gram_det(&self) -> BigRational {
        let mut acc = BigRational::zero();
        for (_, v) in self.pluecker_map() {
            acc += v.norm_sqr();
        }
        acc
    }

    /// Right-multiply the column matrix by a `p×p` matrix (basis change of
    /// the spanned plane; scales every Plücker coordinate by its det).
    pub fn transform(&self, a: &[Vec<Scalar>]) -> SimpleVector {
        assert!(a.len() == self.p && a.iter().all(|row| row.len() == self.p));
        let mut columns = vec![vec![Scalar::zero(); self.n]; self.p];
        for (cnew, col) in columns.iter_mut().enumerate() {
            for (r, entry) in col.iter_mut().enumerate() {
                let mut acc = Scalar::zero();
                for cold in 0..self.p {
                    acc = acc + &self.columns[cold][r] * &a[cold][cnew];
                }
                *entry = acc;
            }
        }
        SimpleVector { n: self.n, p: self.p, columns }
    }
}

impl fmt::Debug for SimpleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleVector(n={}, p={}, cols=[", self.n, self.p)?;
        for (k, c) in self.columns.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            for (r, v) in c.iter().enumerate() {
                if r > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
        }
        write!(f, "])")
    }
}

/// A decomposable covector `η = ψ₁ ∧ … ∧ ψ_p`, stored as a `p×n` matrix of
/// rows. Its coefficient on `φ_K` is the determinant of the column
/// submatrix selected by `K`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleCovector {
    n: usize,
    p: usize,
    rows: Vec<Vec<Scalar>>,
}

impl SimpleCovector {
    pub fn new(n: usize, rows: Vec<Vec<Scalar>>) -> Result<Self, ExteriorError> {
        let p = rows.len();
        if p > n || rows.iter().any(|r| r.len() != n) {
            return Err(ExteriorError::BadIndex(format!(
                "simple covector needs {p} rows of length {n}"
            )));
        }
        Ok(SimpleCovector { n, p, rows })
    }

    pub fn coordinate(n: usize, idx: &MultiIndex) -> SimpleCovector {
        let rows = idx
            .as_slice()
            .iter()
            .map(|&i| {
                let mut row = vec![Scalar::zero(); n];
                row[i - 1] = Scalar::one();
                row
            })
            .collect();
        SimpleCovector { n, p: idx.len(), rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn coefficient(&self, idx: &MultiIndex) -> Scalar {
        let cols = idx.as_slice();
        let m: Vec<Vec<Scalar>> = (0..self.p)
            .map(|r| cols.iter().map(|&c| self.rows[r][c - 1].clone()).collect())
            .collect();
        det(m)
    }

    pub fn coefficient_map(&self) -> BTreeMap<MultiIndex, Scalar> {
        let mut out = BTreeMap::new();
        for idx in MultiIndex::enumerate(self.n, self.p) {
            let v = self.coefficient(&idx);
            if !v.is_zero() {
                out.insert(idx, v);
            }
        }
        out
    }

    pub fn is_zero_covector(&self) -> bool {
        self.coefficient_map().is_empty()
    }

    /// The strongly positive atom form `σ_p η ∧ η̄`.
    pub fn positive_atom(&self) -> super::Form {
        let mut f = super::Form::zero(self.n, self.p, self.p);
        let coeffs = self.coefficient_map();
        let s = sigma(self.p);
        for (i, qi) in &coeffs {
            for (j, qj) in &coeffs {
                f.add_coeff(i.clone(), j.clone(), &s * &(qi * &qj.conj()));
            }
        }
        f
    }
}

impl fmt::Debug for SimpleCovector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleCovector(n={}, p={})", self.n, self.p)
    }
}

/// Exact determinant by fraction-full Gaussian elimination.
pub(crate) fn det(mut m: Vec<Vec<Scalar>>) -> Scalar {
    let k = m.len();
    if k == 0 {
        return Scalar::one();
    }
    debug_assert!(m.iter().all(|r| r.len() == k));
    let mut acc = Scalar::one();
    let mut sign = 1i64;
    for col in 0..k {
        let Some(piv) = (col..k).find(|&r| !m[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if piv != col {
            m.swap(piv, col);
            sign = -sign;
        }
        let d = m[col][col].clone();
        acc = acc * &d;
        for r in col + 1..k {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &d;
            for c in col..k {
                let sub = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &sub;
            }
        }
    }
    if sign < 0 {
        acc = -acc;
    }
    acc
}
