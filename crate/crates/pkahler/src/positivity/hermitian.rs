//! Exact Hermitian positive-semidefiniteness over the Gaussian rationals.
//!
//! `A ⪰ 0` is decided by pivoted Schur-complement elimination: a negative
//! diagonal pivot, or a nonzero off-diagonal entry in a block whose diagonal
//! vanishes, yields an explicit vector `x` with `x†Ax < 0`, lifted back
//! through the elimination steps and re-verified before being returned.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::scalar::Scalar;

/// A Hermitian matrix with exact entries (`A[j][i] = conj(A[i][j])`).
#[derive(Clone, Debug)]
pub struct HermitianMatrix {
    size: usize,
    entries: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug)]
pub enum PsdOutcome {
    /// PSD with the given rank; positive definite iff `rank == size`.
    Psd { rank: usize },
    /// Not PSD: `witness† A witness < 0`, with the exact negative value.
    NotPsd { witness: Vec<Scalar>, value: BigRational },
}

impl HermitianMatrix {
    pub fn new(entries: Vec<Vec<Scalar>>) -> Result<Self, String> {
        let size = entries.len();
        if entries.iter().any(|r| r.len() != size) {
            return Err("Hermitian matrix must be square".into());
        }
        for i in 0..size {
            for j in 0..=i {
                if entries[j][i] != entries[i][j].conj() {
                    return Err(format!("Hermitian symmetry violated at ({i},{j})"));
                }
            }
        }
        Ok(HermitianMatrix { size, entries })
    }

    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> Scalar) -> Result<Self, String> {
        let entries = (0..size).map(|i| (0..size).map(|j| f(i, j)).collect()).collect();
        HermitianMatrix::new(entries)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i][j]
    }

    pub fn quadratic(&self, x: &[Scalar]) -> Scalar {
        assert_eq!(x.len(), self.size);
        let mut acc = Scalar::zero();
        for i in 0..self.size {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.size {
                if x[j].is_zero() {
                    continue;
                }
                acc = acc + &(&x[i].conj() * &self.entries[i][j]) * &x[j];
            }
        }
        acc
    }

    /// Exact PSD decision. Never indeterminate.
    pub fn psd(&self) -> PsdOutcome {
        let n = self.size;
        let mut a = self.entries.clone();
        let mut active: Vec<usize> = (0..n).collect();
        // (pivot index, pivot value, column below the pivot keyed by index)
        let mut steps: Vec<(usize, BigRational, Vec<(usize, Scalar)>)> = Vec::new();
        let mut rank = 0usize;

        let lift = |steps: &[(usize, BigRational, Vec<(usize, Scalar)>)],
                    mut x: std::collections::BTreeMap<usize, Scalar>|
         -> Vec<Scalar> {
            for (piv, d, col) in steps.iter().rev() {
                // x_piv = −(Σ_j conj(b_j) x_j) / d
                let mut acc = Scalar::zero();
                for (j, b) in col {
                    if let Some(xj) = x.get(j) {
                        acc = acc + &b.conj() * xj;
                    }
                }
                let v = -(acc * Scalar::from_real(d.clone()).inv());
                if !v.is_zero() {
                    x.insert(*piv, v);
                }
            }
            let mut out = vec![Scalar::zero(); n];
            for (i, v) in x {
                out[i] = v;
            }
            out
        };

        loop {
            // negative diagonal entry → immediate witness
            if let Some(&i) = active.iter().find(|&&i| a[i][i].re.is_negative()) {
                debug_assert!(a[i][i].im.is_zero());
                let mut x = std::collections::BTreeMap::new();
                x.insert(i, Scalar::one());
                let w = lift(&steps, x);
                let val = self.quadratic(&w);
                debug_assert!(val.im.is_zero() && val.re.is_negative());
                return PsdOutcome::NotPsd { witness: w, value: val.re };
            }
            // positive pivot → eliminate
            if let Some(&piv) = active.iter().find(|&&i| a[i][i].re.is_positive()) {
                let d = a[piv][piv].re.clone();
                let rest: Vec<usize> = active.iter().copied().filter(|&i| i != piv).collect();
                let col: Vec<(usize, Scalar)> =
                    rest.iter().map(|&i| (i, a[i][piv].clone())).collect();
                for &i in &rest {
                    if a[i][piv].is_zero() {
                        continue;
                    }
                    let fi = &a[i][piv] / &Scalar::from_real(d.clone());
                    for &j in &rest {
                        let sub = &fi * &a[piv][j];
                        a[i][j] = &a[i][j] - &sub;
                    }
                }
                steps.push((piv, d, col));
                active = rest;
                rank += 1;
                continue;
            }
            // all remaining diagonals are zero
            let mut offdiag = None;
            'outer: for (s, &i) in active.iter().enumerate() {
                for &j in active.iter().skip(s + 1) {
                    if !a[i][j].is_zero() {
                        offdiag = Some((i, j));
                        break 'outer;
                    }
                }
            }
            match offdiag {
                None => return PsdOutcome::Psd { rank },
                Some((i, j)) => {
                    // [[0, z],[z̄, 0]] block: x = (−z, 1) gives −2|z|²
                    let mut x = std::collections::BTreeMap::new();
                    x.insert(i, -a[i][j].clone());
                    x.insert(j, Scalar::one());
                    let w = lift(&steps, x);
                    let val = self.quadratic(&w);
                    debug_assert!(val.im.is_zero() && val.re.is_negative());
                    return PsdOutcome::NotPsd { witness: w, value: val.re };
                }
            }
        }
    }

    pub fn is_psd(&self) -> bool {
        matches!(self.psd(), PsdOutcome::Psd { .. })
    }

    pub fn is_pd(&self) -> bool {
        matches!(self.psd(), PsdOutcome::Psd { rank } if rank == self.size)
    }

    /// Exact kernel basis (only meaningful for PSD matrices, where the kernel
    /// equals the isotropic directions).
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        crate::linalg::Mat::from_rows(self.entries.clone()).kernel()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn rat(n: i64, d: i64) -> Scalar {
        Scalar::rat(n, d)
    }

    #[test]
    fn identity_is_pd() {
        let m = HermitianMatrix::from_fn(3, |i, j| if i == j { s(1) } else { s(0) }).unwrap();
        assert!(m.is_pd());
    }

    #[test]
    fn indefinite_diag_witness() {
        let m = HermitianMatrix::from_fn(2, |i, j| {
            if i == j {
                if i == 0 { s(-1) } else { s(1) }
            } else {
                s(0)
            }
        })
        .unwrap();
        match m.psd() {
            PsdOutcome::NotPsd { witness, value } => {
                assert!(value.is_negative());
                let q = m.quadratic(&witness);
                assert_eq!(q.re, value);
            }
            _ => panic!("expected NotPsd"),
        }
    }

    #[test]
    fn zero_diag_offdiag_witness() {
        // [[0, i],[−i, 0]] has eigenvalues ±1
        let m = HermitianMatrix::new(vec![
            vec![s(0), Scalar::i()],
            vec![-Scalar::i(), s(0)],
        ])
        .unwrap();
        match m.psd() {
            PsdOutcome::NotPsd { witness, value } => {
                assert!(value.is_negative());
                assert_eq!(m.quadratic(&witness).re, value);
            }
            _ => panic!("expected NotPsd"),
        }
    }

    #[test]
    fn psd_singular_rank() {
        // rank-1 projector [[1,1],[1,1]]
        let m = HermitianMatrix::from_fn(2, |_, _| s(1)).unwrap();
        match m.psd() {
            PsdOutcome::Psd { rank } => assert_eq!(rank, 1),
            _ => panic!("expected PSD"),
        }
        assert!(!m.is_pd());
        assert_eq!(m.kernel().len(), 1);
    }

    #[test]
    fn witness_needs_lifting() {
        // PD leading block with a hidden negative Schur complement:
        // [[1, 2],[2, 1]] has eigenvalues 3, −1
        let m = HermitianMatrix::new(vec![vec![s(1), s(2)], vec![s(2), s(1)]]).unwrap();
        match m.psd() {
            PsdOutcome::NotPsd { witness, value } => {
                assert!(value.is_negative());
                assert_eq!(m.quadratic(&witness).re, value);
            }
            _ => panic!("expected NotPsd"),
        }
    }

    #[test]
    fn random_gram_matrices_are_psd() {
        use rand::Rng;
        let mut rng = crate::grassmann::seeded_rng(11);
        for trial in 0..40 {
            let k = 2 + trial % 3;
            let n = k + 1;
            // A = B†B is PSD by construction
            let b: Vec<Vec<Scalar>> = (0..k)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            Scalar::new(
                                num_rational::BigRational::from_integer(BigInt::from(
                                    rng.gen_range(-3i64..=3),
                                )),
                                num_rational::BigRational::from_integer(BigInt::from(
                                    rng.gen_range(-3i64..=3),
                                )),
                            )
                        })
                        .collect()
                })
                .collect();
            let m = HermitianMatrix::from_fn(n, |i, j| {
                let mut acc = Scalar::zero();
                for row in &b {
                    acc = acc + &row[i].conj() * &row[j];
                }
                acc
            })
            .unwrap();
            assert!(m.is_psd(), "trial {trial}");
            // shifting down by a unit must break PSD somewhere
            let shifted = HermitianMatrix::from_fn(n, |i, j| {
                let base = m.at(i, j).clone();
                if i == j {
                    base - (rat(1, 1) + Scalar::from_real(m.at(i, i).re.clone()))
                } else {
                    base
                }
            })
            .unwrap();
            match shifted.psd() {
                PsdOutcome::NotPsd { witness, value } => {
                    assert_eq!(shifted.quadratic(&witness).re, value);
                    assert!(value.is_negative());
                }
                _ => panic!("shifted matrix should be indefinite"),
            }
        }
    }
}
