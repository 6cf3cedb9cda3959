//! Class subspaces: the exact linear side of each generalized p-Kähler
//! condition, assembled from the σ-operator matrices.
//!
//! With `q = p−1`:
//!
//! | class | subspace of real `(p,p)`-forms            |
//! |-------|--------------------------------------------|
//! | pK    | `Ker σ_{2q+1}` (closed forms)              |
//! | pWK   | `Ker σ_{2q+1} + Im σ_{2p−1}`               |
//! | pS    | `π_{p,p}(Ker d_{2p})`                      |
//! | pPL   | `Ker σ_{2p}` (`i∂∂̄`-closed forms)          |
//! | E1    | `Im σ_{2q}` (`i∂∂̄`-exact forms)            |
//! | E2    | `π_{p,p}(Im d_{2p−1})`                     |
//! | E3    | `Im σ_{2p−1} ∩ Ker σ_{2q+1}`               |
//! | E4    | `Im σ_{2p−1}`                              |

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::DetectError;
use crate::exterior::Form;
use crate::linalg::{Mat, Subspace};
use crate::model::{GradedComplex, MixedForm, OperatorId, RealSpaceId};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    #[serde(rename = "pk")]
    PKahler,
    #[serde(rename = "pwk")]
    PWeaklyKahler,
    #[serde(rename = "ps")]
    PSymplectic,
    #[serde(rename = "ppl")]
    PPluriclosed,
    #[serde(rename = "e1")]
    ExactDdbar,
    #[serde(rename = "e2")]
    ExactD,
    #[serde(rename = "e3")]
    ExactClosed,
    #[serde(rename = "e4")]
    ExactBoundary,
}

impl ClassKind {
    pub fn all() -> &'static [ClassKind] {
        use ClassKind::*;
        &[PKahler, PWeaklyKahler, PSymplectic, PPluriclosed, ExactDdbar, ExactD, ExactClosed, ExactBoundary]
    }

    pub fn parse(s: &str) -> Option<ClassKind> {
        use ClassKind::*;
        Some(match s.to_ascii_lowercase().as_str() {
            "pk" => PKahler,
            "pwk" => PWeaklyKahler,
            "ps" => PSymplectic,
            "ppl" => PPluriclosed,
            "e1" => ExactDdbar,
            "e2" => ExactD,
            "e3" => ExactClosed,
            "e4" => ExactBoundary,
            _ => return None,
        })
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ClassKind::*;
        let s = match self {
            PKahler => "pK",
            PWeaklyKahler => "pWK",
            PSymplectic => "pS",
            PPluriclosed => "pPL",
            ExactDdbar => "E1",
            ExactD => "E2",
            ExactClosed => "E3",
            ExactBoundary => "E4",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassId {
    pub kind: ClassKind,
    pub p: usize,
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@p={}", self.kind, self.p)
    }
}

/// Exact subspace inclusions among class subspaces (small ⊆ large),
/// used for certificate propagation and monotonicity auditing. The main
/// chain mirrors pK ⟹ pWK ⟹ pS ⟹ pPL; each exact class sits inside its
/// non-exact counterpart.
pub fn inclusion_pairs() -> &'static [(ClassKind, ClassKind)] {
    use ClassKind::*;
    &[
        (PKahler, PWeaklyKahler),
        (PWeaklyKahler, PSymplectic),
        (PSymplectic, PPluriclosed),
        (ExactDdbar, ExactClosed),
        (ExactClosed, PKahler),
        (ExactClosed, ExactBoundary),
        (ExactD, ExactBoundary),
        (ExactD, PSymplectic),
        (ExactBoundary, PPluriclosed),
        (ExactDdbar, PKahler),
    ]
}

/// A class subspace with (for the 2p-form classes) the data needed to lift
/// a member back to a closed/exact real 2p-form.
pub struct ClassSubspace {
    pub class: ClassId,
    /// The subspace in canonical real `(p,p)` coordinates.
    pub space: Subspace,
    /// Generators of the pre-projection space in `Full(2p)` coordinates
    /// (kernel of `d_{2p}` for pS, image of `d_{2p−1}` for E2).
    lift_generators: Option<Vec<Vec<BigRational>>>,
}

impl ClassSubspace {
    /// For pS/E2: a closed (resp. exact) real 2p-form `Ψ` with
    /// `Ψ^{p,p} = Ω`; `None` for the pure `(p,p)` classes or when `Ω` is
    /// not in the projected subspace.
    pub fn lift(&self, complex: &GradedComplex, omega: &Form) -> Option<MixedForm> {
        let generators = self.lift_generators.as_ref()?;
        let p = self.class.p;
        let full = RealSpaceId::Full(2 * p);
        let target = omega.real_coordinates()?;
        // solve Σ x_g π(gen_g) = vec(Ω)
        let cols: Vec<Vec<Scalar>> = generators
            .iter()
            .map(|g| {
                project_full_to_diag(complex, p, g)
                    .into_iter()
                    .map(Scalar::from_real)
                    .collect()
            })
            .collect();
        let rhs: Vec<Scalar> = target.into_iter().map(Scalar::from_real).collect();
        let x = Mat::from_cols(cols).solve(&rhs)?;
        let mut psi_coords = vec![BigRational::zero(); complex.real_dim(full)];
        for (g, xg) in generators.iter().zip(&x) {
            if xg.is_zero() {
                continue;
            }
            debug_assert!(xg.im.is_zero());
            for (t, gt) in g.iter().enumerate() {
                psi_coords[t] += &xg.re * gt;
            }
        }
        Some(complex.mixed_from_coords(full, &psi_coords))
    }
}

/// Coordinates of the `(p,p)`-component of a `Full(2p)` coordinate vector.
fn project_full_to_diag(complex: &GradedComplex, p: usize, coords: &[BigRational]) -> Vec<BigRational> {
    let diag_dim = complex.real_dim(RealSpaceId::Diag(p));
    let full_dim = complex.real_dim(RealSpaceId::Full(2 * p));
    debug_assert_eq!(coords.len(), full_dim);
    // the Full(2p) layout places the diagonal block last
    coords[full_dim - diag_dim..].to_vec()
}

fn kernel_of(m: &Mat, src_dim: usize) -> Vec<Vec<BigRational>> {
    debug_assert_eq!(m.ncols(), src_dim);
    m.kernel()
        .into_iter()
        .map(|v| {
            v.into_iter()
                .map(|s| {
                    debug_assert!(s.im.is_zero());
                    s.re
                })
                .collect()
        })
        .collect()
}

fn image_of(m: &Mat) -> Vec<Vec<BigRational>> {
    (0..m.ncols())
        .map(|j| {
            m.col(j)
                .into_iter()
                .map(|s| {
                    debug_assert!(s.im.is_zero());
                    s.re
                })
                .collect()
        })
        .collect()
}

fn to_subspace(ambient: usize, vecs: Vec<Vec<BigRational>>) -> Subspace {
    Subspace::from_spanning(
        ambient,
        vecs.into_iter()
            .map(|v| v.into_iter().map(Scalar::from_real).collect())
            .collect(),
    )
}

/// Build the class subspace from exact operator matrices.
pub fn class_subspace(complex: &GradedComplex, class: ClassId) -> Result<ClassSubspace, DetectError> {
    let n = complex.dim();
    let p = class.p;
    if p == 0 || p >= n {
        return Err(DetectError::Internal(format!("p = {p} outside 1..={}", n - 1)));
    }
    let ambient = complex.real_dim(RealSpaceId::Diag(p));
    let closed = || -> Result<Vec<Vec<BigRational>>, DetectError> {
        let d = complex.operator_matrix(OperatorId::DFromDiag { level: p })?;
        Ok(kernel_of(&d, ambient))
    };
    let boundary_image = || -> Result<Vec<Vec<BigRational>>, DetectError> {
        let s = complex.operator_matrix(OperatorId::PairIntoDiag { level: p })?;
        Ok(image_of(&s))
    };

    let (space, lift_generators) = match class.kind {
        ClassKind::PKahler => (to_subspace(ambient, closed()?), None),
        ClassKind::PWeaklyKahler => {
            let a = to_subspace(ambient, closed()?);
            let b = to_subspace(ambient, boundary_image()?);
            (a.sum(&b), None)
        }
        ClassKind::PSymplectic => {
            let d = complex.operator_matrix(OperatorId::DFull { degree: 2 * p })?;
            let gens = kernel_of(&d, complex.real_dim(RealSpaceId::Full(2 * p)));
            let projected: Vec<Vec<BigRational>> = gens
                .iter()
                .map(|g| project_full_to_diag(complex, p, g))
                .collect();
            (to_subspace(ambient, projected), Some(gens))
        }
        ClassKind::PPluriclosed => {
            let s = complex.operator_matrix(OperatorId::IDelDbar { level: p })?;
            (to_subspace(ambient, kernel_of(&s, ambient)), None)
        }
        ClassKind::ExactDdbar => {
            let s = complex.operator_matrix(OperatorId::IDelDbar { level: p - 1 })?;
            (to_subspace(ambient, image_of(&s)), None)
        }
        ClassKind::ExactD => {
            let d = complex.operator_matrix(OperatorId::DFull { degree: 2 * p - 1 })?;
            let gens = image_of(&d);
            let projected: Vec<Vec<BigRational>> = gens
                .iter()
                .map(|g| project_full_to_diag(complex, p, g))
                .collect();
            (to_subspace(ambient, projected), Some(gens))
        }
        ClassKind::ExactClosed => {
            let a = to_subspace(ambient, boundary_image()?);
            let b = to_subspace(ambient, closed()?);
            (a.intersect(&b), None)
        }
        ClassKind::ExactBoundary => (to_subspace(ambient, boundary_image()?), None),
    };

    Ok(ClassSubspace { class, space, lift_generators })
}
