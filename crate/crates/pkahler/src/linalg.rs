//! Dense exact linear algebra over Gaussian-rational scalars.
//!
//! Row reduction, rank, kernel and image bases, solving, and subspace
//! operations (sum, intersection, membership). Real matrices are handled as
//! the special case of zero imaginary parts; pivoting on exact entries keeps
//! them real throughout.

use crate::scalar::Scalar;

/// A dense matrix of exact scalars, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(cols: Vec<Vec<Scalar>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        assert!(cols.iter().all(|x| x.len() == r), "ragged matrix");
        let mut m = Mat::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                *m.at_mut(i, j) = v.clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut m = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = &*out.at(i, j) + &(a * b);
                    *out.at_mut(i, j) = v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matvec shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.cols {
                    let a = self.at(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc = acc + a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Append rows of another matrix below.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "vstack shape mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// In-place reduced row echelon form; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    let a = self.at(pr, j).clone();
                    let b = self.at(r, j).clone();
                    *self.at_mut(pr, j) = b;
                    *self.at_mut(r, j) = a;
                }
            }
            let inv = self.at(r, c).inv();
            for j in c..self.cols {
                let v = self.at(r, j) * &inv;
                *self.at_mut(r, j) = v;
            }
            for i in 0..self.rows {
                if i == r || self.at(i, c).is_zero() {
                    continue;
                }
                let f = self.at(i, c).clone();
                for j in c..self.cols {
                    let v = &*self.at(i, j) - &(&f * self.at(r, j));
                    *self.at_mut(i, j) = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel `{x : Ax = 0}` as column vectors.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut x = vec![Scalar::zero(); self.cols];
            x[free] = Scalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -m.at(r, free).clone();
            }
            basis.push(x);
        }
        basis
    }

    /// Solve `Ax = b`; `None` when inconsistent. Free variables are set to 0.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(self.rows, b.len(), "solve shape mismatch");
        let mut aug = Mat::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.last().is_some_and(|&c| c == self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.at(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// A linear subspace of `ℚ(i)^dim`, kept as a reduced row basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    /// Reduced (RREF) basis rows; empty for the zero subspace.
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_spanning(ambient, (0..ambient).map(|i| {
            let mut v = vec![Scalar::zero(); ambient];
            v[i] = Scalar::one();
            v
        }).collect())
    }

    /// Reduce a spanning set to a canonical basis.
    pub fn from_spanning(ambient: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient), "spanning vector size");
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let mut m = Mat::from_rows(vectors);
        let pivots = m.rref();
        let basis = (0..pivots.len()).map(|r| m.row(r)).collect();
        Subspace { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Express `v` in the reduced basis; `None` when `v ∉ S`.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient);
        if self.basis.is_empty() {
            return v.iter().all(Scalar::is_zero).then(Vec::new);
        }
        let m = Mat::from_cols(self.basis.clone());
        m.solve(v).filter(|x| {
            // solve() leaves free vars at zero; verify the residual exactly
            let back = m.mul_vec(x);
            back.iter().zip(v).all(|(a, b)| a == b)
        })
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.iter().cloned());
        Subspace::from_spanning(self.ambient, vecs)
    }

    /// Intersection via the kernel of the stacked coordinate system.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        // columns: coefficients on self.basis followed by other.basis;
        // kernel rows of [Bᵀ | −Cᵀ] give equal combinations.
        let cols: Vec<Vec<Scalar>> = self
            .basis
            .iter()
            .cloned()
            .chain(other.basis.iter().map(|v| v.iter().map(|s| -s).collect()))
            .collect();
        let m = Mat::from_cols(cols);
        let mut vecs = Vec::new();
        for k in m.kernel() {
            let mut v = vec![Scalar::zero(); self.ambient];
            for (c, coeff) in k.iter().take(self.dim()).enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                for (t, b) in self.basis[c].iter().enumerate() {
                    v[t] = &v[t] + &(coeff * b);
                }
            }
            vecs.push(v);
        }
        Subspace::from_spanning(self.ambient, vecs)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn rref_rank_kernel() {
        let m = Mat::from_rows(vec![
            vec![s(1), s(2), s(3)],
            vec![s(2), s(4), s(6)],
            vec![s(1), s(0), s(1)],
        ]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        for x in &k {
            assert!(m.mul_vec(x).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn solve_consistency() {
        let m = Mat::from_rows(vec![vec![s(2), s(1)], vec![s(0), s(3)]]);
        let x = m.solve(&[s(5), s(6)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![s(5), s(6)]);
        let bad = Mat::from_rows(vec![vec![s(1), s(1)], vec![s(2), s(2)]]);
        assert!(bad.solve(&[s(0), s(1)]).is_none());
    }

    #[test]
    fn subspace_ops() {
        let a = Subspace::from_spanning(3, vec![vec![s(1), s(0), s(0)], vec![s(0), s(1), s(0)]]);
        let b = Subspace::from_spanning(3, vec![vec![s(0), s(1), s(0)], vec![s(0), s(0), s(1)]]);
        assert_eq!(a.dim(), 2);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[s(0), s(7), s(0)]));
        let u = a.sum(&b);
        assert_eq!(u.dim(), 3);
        assert!(a.is_subspace_of(&u));
        assert!(!u.is_subspace_of(&a));
        assert!(Subspace::zero(3).is_subspace_of(&a));
    }

    #[test]
    fn complex_pivoting() {
        let i = Scalar::i();
        let m = Mat::from_rows(vec![vec![i.clone(), s(1)], vec![s(1), -i.clone()]]);
        // second row = −i · first row, rank 1
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Scalar::is_zero));
    }
}
