//! Exact regression suite for the bundled SL(2,ℂ) quotient model.
//!
//! The standard fundamental form `ω = (i/2)(α∧ᾱ + β∧β̄ + η∧η̄)` on this
//! model is not closed, but `ω²` is: it is a balanced form, and moreover
//! exact, with an explicit invariant primitive, and even `i∂∂̄`-exact.
//! All four identities are checked in exact rational arithmetic.

use num_rational::BigRational;

use super::{bundled_model, GradedComplex, MixedForm, ModelError, OperatorId, RealSpaceId};
use crate::exterior::{Form, MultiIndex};
use crate::scalar::Scalar;

/// Outcome of the exact identity suite; all four flags must hold.
#[derive(Clone, Debug)]
pub struct Sl2cReport {
    /// `dω ≠ 0` (the metric form itself is not balanced).
    pub d_omega_nonzero: bool,
    /// `dω² = 0` exactly.
    pub d_omega_sq_zero: bool,
    /// `ω² = dΓ` exactly, with the invariant primitive
    /// `Γ = (1/8) α∧dᾱ + (1/8) β∧dβ̄ + (1/2) η∧dη̄`.
    pub primitive_residual_zero: bool,
    /// `ω² = i∂∂̄X` is solvable in invariant real `(1,1)`-forms.
    pub ddbar_solvable: bool,
    /// A solution `X` of `i∂∂̄X = ω²`.
    pub potential: Option<Form>,
}

impl Sl2cReport {
    pub fn all_pass(&self) -> bool {
        self.d_omega_nonzero
            && self.d_omega_sq_zero
            && self.primitive_residual_zero
            && self.ddbar_solvable
    }
}

/// Run the suite on a complex built from the SL(2,ℂ) model. Aborts with
/// the offending residual if any exact check fails, and rejects complexes
/// built from other models up front.
pub fn verify_sl2c_example(complex: &GradedComplex) -> Result<Sl2cReport, ModelError> {
    let reference = bundled_model("sl2c")?;
    if *complex.model() != reference {
        return Err(ModelError::Mismatch(format!(
            "model {:?} is not the bundled SL(2,C) model",
            complex.model().name()
        )));
    }
    let n = 3usize;
    let omega = Form::metric(n);

    // (i) dω ≠ 0
    let d_omega = complex.d_form(&omega);
    let d_omega_nonzero = !d_omega.is_zero();
    if !d_omega_nonzero {
        return Err(ModelError::CheckFailed("dω vanished unexpectedly".into()));
    }

    // (ii) dω² = 0 exactly
    let omega_sq = omega.wedge(&omega)?;
    let d_omega_sq = complex.d_form(&omega_sq);
    if !d_omega_sq.is_zero() {
        return Err(ModelError::CheckFailed(format!(
            "dω² ≠ 0, residual: {d_omega_sq:?}"
        )));
    }

    // (iii) ω² − dΓ = 0 exactly
    let generator = |k: usize| -> Form {
        Form::monomial(n, MultiIndex::new(vec![k]).unwrap(), MultiIndex::empty(), Scalar::one())
            .expect("valid monomial")
    };
    let coeffs = [Scalar::rat(1, 8), Scalar::rat(1, 8), Scalar::rat(1, 2)];
    let mut gamma_primitive = MixedForm::zero(n);
    for k in 1..=3usize {
        let conj_gen = generator(k).conjugate();
        let d_conj = complex.d_form(&conj_gen);
        for part in d_conj.parts() {
            let term = generator(k).wedge(part)?;
            gamma_primitive.add_form(&term.scale(&coeffs[k - 1]));
        }
    }
    let residual = MixedForm::from_form(omega_sq.clone()).sub(&complex.d(&gamma_primitive));
    if !residual.is_zero() {
        return Err(ModelError::CheckFailed(format!(
            "ω² − dΓ ≠ 0, residual: {residual:?}"
        )));
    }

    // (iv) ω² = i∂∂̄X solvable in invariant real (1,1)-forms
    let op = complex.operator_matrix(OperatorId::IDelDbar { level: 1 })?;
    let rhs = complex
        .coords_of(RealSpaceId::Diag(2), &MixedForm::from_form(omega_sq))
        .ok_or_else(|| ModelError::CheckFailed("ω² is not a real (2,2)-form".into()))?;
    let rhs_scalars: Vec<Scalar> = rhs.into_iter().map(Scalar::from_real).collect();
    let potential = op.solve(&rhs_scalars).map(|x| {
        let coords: Vec<BigRational> = x.into_iter().map(|s| s.re).collect();
        Form::from_real_coordinates(n, 1, &coords)
    });
    let Some(potential) = potential else {
        return Err(ModelError::CheckFailed(
            "ω² = i∂∂̄X has no invariant real (1,1) solution".into(),
        ));
    };
    // re-check the solve exactly
    let back = complex.i_del_delbar(&potential);
    let omega_sq = omega.wedge(&omega)?;
    if back != omega_sq {
        return Err(ModelError::CheckFailed("i∂∂̄X ≠ ω² after solve".into()));
    }

    Ok(Sl2cReport {
        d_omega_nonzero,
        d_omega_sq_zero: true,
        primitive_residual_zero: true,
        ddbar_solvable: true,
        potential: Some(potential),
    })
}
