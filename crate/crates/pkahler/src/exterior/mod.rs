//! Exact multilinear algebra of `(p,q)`-forms and `(p,p)`-vectors on a
//! finite-dimensional complex vector space: wedge products, conjugation,
//! σ-normalizations, the top-degree pairing and its duality isomorphism,
//! and evaluation of forms on simple vectors.
//!
//! Everything here is a pure function on immutable values over exact
//! Gaussian-rational scalars.

mod form;
mod index;
mod simple;

pub use form::{dual_form, real_pp_basis, CoeffRepr, Form, FormRepr, PpVector};
pub use index::{binomial, MultiIndex};
pub use simple::{SimpleCovector, SimpleVector};

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum ExteriorError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("bidegree ({p},{q}) invalid here (n={n})")]
    DegreeMismatch { n: usize, p: usize, q: usize },
    #[error("wedge overflows top degree: ({p},{q}) on n={n}")]
    DegreeOverflow { n: usize, p: usize, q: usize },
    #[error("{0}")]
    BadIndex(String),
}

/// The normalization constant `σ_p = i^{p²} · 2^{−p}`.
pub fn sigma(p: usize) -> Scalar {
    let mut s = Scalar::i_pow(p * p);
    for _ in 0..p {
        s = s * Scalar::rat(1, 2);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn idx(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(1), Scalar::i() * Scalar::rat(1, 2));
        assert_eq!(sigma(2), Scalar::rat(1, 4));
        assert_eq!(sigma(3), Scalar::i() * Scalar::rat(1, 8));
        assert_eq!(sigma(0), Scalar::one());
    }

    #[test]
    fn wedge_repeated_factor_vanishes() {
        let phi1 = Form::monomial(2, idx(&[1]), MultiIndex::empty(), Scalar::one()).unwrap();
        assert!(phi1.wedge(&phi1).unwrap().is_zero());
    }

    #[test]
    fn volume_form_identity() {
        // ∧_j (i/2) φ_j∧φ̄_j = σ_n φ_{1…n}∧φ̄_{1…n}
        for n in 1..=5usize {
            let mut acc =
                Form::monomial(n, MultiIndex::empty(), MultiIndex::empty(), Scalar::one()).unwrap();
            for j in 1..=n {
                let factor =
                    Form::monomial(n, idx(&[j]), idx(&[j]), Scalar::i() * Scalar::rat(1, 2))
                        .unwrap();
                acc = acc.wedge(&factor).unwrap();
            }
            assert_eq!(acc, Form::volume(n), "n={n}");
        }
    }

    #[test]
    fn diagonal_wedge_example() {
        // (σ₁ φ₁∧φ̄₁) ∧ (σ₁ φ₂∧φ̄₂) = σ₂ φ_{12}∧φ̄_{12}
        let a = Form::monomial(2, idx(&[1]), idx(&[1]), sigma(1)).unwrap();
        let b = Form::monomial(2, idx(&[2]), idx(&[2]), sigma(1)).unwrap();
        let expect = Form::monomial(2, idx(&[1, 2]), idx(&[1, 2]), sigma(2)).unwrap();
        assert_eq!(a.wedge(&b).unwrap(), expect);
    }

    #[test]
    fn conjugation_examples() {
        // conj(φ₁∧φ̄₂) = −φ₂∧φ̄₁ at bidegree (1,1)
        let f = Form::monomial(2, idx(&[1]), idx(&[2]), Scalar::one()).unwrap();
        let expect = Form::monomial(2, idx(&[2]), idx(&[1]), -Scalar::one()).unwrap();
        assert_eq!(f.conjugate(), expect);
        assert_eq!(f.conjugate().conjugate(), f);

        // i·φ₁∧φ̄₁ is real: scalar conjugation is cancelled by the
        // basis-monomial reordering sign (i·dz∧dz̄ = 2 dx∧dy)
        let g = Form::monomial(2, idx(&[1]), idx(&[1]), Scalar::i()).unwrap();
        assert_eq!(g.conjugate(), g);
        assert!(g.is_real());
        // …whereas 1·φ₁∧φ̄₁ is purely imaginary
        let h = Form::monomial(2, idx(&[1]), idx(&[1]), Scalar::one()).unwrap();
        assert_eq!(h.conjugate(), h.scale(&-Scalar::one()));
    }

    #[test]
    fn simple_eta_wedge_conj_is_real() {
        // σ_p η∧η̄ is real for simple η
        let eta = SimpleCovector::new(
            3,
            vec![
                vec![Scalar::from_int(1), Scalar::new(Scalar::rat(1, 2).re, Scalar::rat(2, 3).re), Scalar::from_int(0)],
                vec![Scalar::from_int(0), Scalar::from_int(2), Scalar::new(Scalar::rat(-1, 1).re, Scalar::rat(1, 5).re)],
            ],
        )
        .unwrap();
        let atom = eta.positive_atom();
        assert!(atom.is_real());
        assert_eq!(atom.conjugate(), atom);
    }

    #[test]
    fn pairing_examples() {
        // f(σ₁φ₁∧φ̄₁, σ₁φ₂∧φ̄₂) = 1 at n=2
        let a = Form::monomial(2, idx(&[1]), idx(&[1]), sigma(1)).unwrap();
        let b = Form::monomial(2, idx(&[2]), idx(&[2]), sigma(1)).unwrap();
        assert_eq!(a.pair_top(&b).unwrap(), Scalar::one());

        // degree mismatch is an error
        assert!(a.pair_top(&a.wedge(&b).unwrap()).is_err());

        // bilinearity against zero
        let z = Form::zero(2, 1, 1);
        assert_eq!(a.pair_top(&z).unwrap(), Scalar::zero());
    }

    #[test]
    fn dual_iso_examples() {
        // n=2: g(σ₁⁻¹ e₁∧ē₁) = σ₁ φ₂∧φ̄₂
        let mut v = PpVector::zero(2, 1);
        v.add_coeff(idx(&[1]), idx(&[1]), sigma(1).inv());
        let g = dual_form(&v);
        let expect = Form::monomial(2, idx(&[2]), idx(&[2]), sigma(1)).unwrap();
        assert_eq!(g, expect);

        // n=3, deg 2: g(σ₂⁻¹ e_{12}∧ē_{12}) = σ₁ φ₃∧φ̄₃
        let mut v = PpVector::zero(3, 2);
        v.add_coeff(idx(&[1, 2]), idx(&[1, 2]), sigma(2).inv());
        let g = dual_form(&v);
        let expect = Form::monomial(3, idx(&[3]), idx(&[3]), sigma(1)).unwrap();
        assert_eq!(g, expect);

        // g(0) = 0
        assert!(dual_form(&PpVector::zero(3, 2)).is_zero());
    }

    #[test]
    fn evaluate_examples() {
        let omega = Form::monomial(2, idx(&[1]), idx(&[1]), sigma(1)).unwrap();
        let e1 = SimpleVector::coordinate(2, &idx(&[1]));
        let e2 = SimpleVector::coordinate(2, &idx(&[2]));
        assert_eq!(omega.evaluate(&e1).unwrap(), Scalar::one());
        assert_eq!(omega.evaluate(&e2).unwrap(), Scalar::zero());

        // (e₁+e₂)/√2 handled on the unnormalized vector via the Gram det:
        // evaluate(σ₁φ₁∧φ̄₁, e₁+e₂) / gram = 1/2
        let v = SimpleVector::new(2, vec![vec![Scalar::one(), Scalar::one()]]).unwrap();
        let raw = omega.evaluate(&v).unwrap();
        let gram = v.gram_det();
        assert_eq!(Scalar::from_real(raw.re / gram), Scalar::rat(1, 2));
    }

    #[test]
    fn metric_power_is_diag_sum() {
        // γ^p = p! Σ_I σ_p φ_I∧φ̄_I
        for n in 2..=4usize {
            for p in 1..=n {
                let g = Form::metric_power(n, p);
                let mut expect = Form::zero(n, p, p);
                let fact: i64 = (1..=p as i64).product();
                for i in MultiIndex::enumerate(n, p) {
                    expect.add_coeff(i.clone(), i, Scalar::from_int(fact) * sigma(p));
                }
                assert_eq!(g, expect, "n={n}, p={p}");
            }
        }
    }
}
