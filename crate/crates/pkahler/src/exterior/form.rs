//! Bigraded exterior forms with exact coefficients.
//!
//! A `(p,q)`-form on an `n`-dimensional complex vector space is stored as a
//! sparse coefficient map on pairs of increasing multi-indices `(I, J)`,
//! relative to the frame monomials `φ_I ∧ φ̄_J`. The σ-normalizations are
//! *not* folded into the basis: they appear explicitly in coefficients, so
//! that the duality identities of the positivity theory hold literally.
//!
//! Sign conventions are pinned by the volume-form identity
//! `(i/2 φ₁∧φ̄₁) ∧ … ∧ (i/2 φ_n∧φ̄_n) = σ_n φ_{1…n} ∧ φ̄_{1…n}`
//! with `σ_p = i^{p²} 2^{−p}`; all reordering signs are resolved into
//! canonical multi-index order.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::index::MultiIndex;
use super::simple::SimpleVector;
use super::{sigma, ExteriorError};
use crate::scalar::Scalar;

/// A `(p,q)`-form; zero coefficients are omitted from the map.
#[derive(Clone, PartialEq, Eq)]
pub struct Form {
    n: usize,
    p: usize,
    q: usize,
    coeffs: BTreeMap<(MultiIndex, MultiIndex), Scalar>,
}

impl Form {
    pub fn zero(n: usize, p: usize, q: usize) -> Self {
        assert!(p <= n && q <= n, "bidegree ({p},{q}) out of range for n={n}");
        Form { n, p, q, coeffs: BTreeMap::new() }
    }

    /// `c · φ_I ∧ φ̄_J`.
    pub fn monomial(n: usize, i: MultiIndex, j: MultiIndex, c: Scalar) -> Result<Self, ExteriorError> {
        if i.max_index() > n || j.max_index() > n {
            return Err(ExteriorError::BadIndex(format!(
                "index out of range for n={n}: {i:?}, {j:?}"
            )));
        }
        let mut f = Form::zero(n, i.len(), j.len());
        f.add_coeff(i, j, c);
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: &MultiIndex, j: &MultiIndex) -> Scalar {
        self.coeffs.get(&(i.clone(), j.clone())).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex), &Scalar)> {
        self.coeffs.iter()
    }

    pub fn add_coeff(&mut self, i: MultiIndex, j: MultiIndex, c: Scalar) {
        debug_assert!(i.len() == self.p && j.len() == self.q);
        if c.is_zero() {
            return;
        }
        let key = (i, j);
        let v = match self.coeffs.get(&key) {
            Some(old) => old + &c,
            None => c,
        };
        if v.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, v);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        if c.is_zero() {
            return Form::zero(self.n, self.p, self.q);
        }
        let mut out = Form::zero(self.n, self.p, self.q);
        for ((i, j), v) in &self.coeffs {
            out.coeffs.insert((i.clone(), j.clone()), v * c);
        }
        out
    }

    pub fn add(&self, other: &Form) -> Form {
        assert_eq!(
            (self.n, self.p, self.q),
            (other.n, other.p, other.q),
            "form shape mismatch in add"
        );
        let mut out = self.clone();
        for ((i, j), v) in &other.coeffs {
            out.add_coeff(i.clone(), j.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.scale(&-Scalar::one()))
    }

    /// Exterior product. All reordering signs are resolved into canonical
    /// basis order; the product is bilinear and graded-anticommutative.
    pub fn wedge(&self, other: &Form) -> Result<Form, ExteriorError> {
        if self.n != other.n {
            return Err(ExteriorError::DimensionMismatch { left: self.n, right: other.n });
        }
        let (p, q) = (self.p + other.p, self.q + other.q);
        if p > self.n || q > self.n {
            return Err(ExteriorError::DegreeOverflow {
                n: self.n,
                p,
                q,
            });
        }
        let mut out = Form::zero(self.n, p, q);
        // moving the second factor's holomorphic block past the first
        // factor's antiholomorphic block costs (−1)^{q₁·p₂}
        let block_sign = if (self.q * other.p) % 2 == 0 { 1 } else { -1 };
        for ((i1, j1), c1) in &self.coeffs {
            for ((i2, j2), c2) in &other.coeffs {
                let Some((i, si)) = i1.merge(i2) else { continue };
                let Some((j, sj)) = j1.merge(j2) else { continue };
                let s = block_sign * si as i64 * sj as i64;
                let mut c = c1 * c2;
                if s < 0 {
                    c = -c;
                }
                out.add_coeff(i, j, c);
            }
        }
        Ok(out)
    }

    /// Complex conjugation: bidegree `(p,q) ↦ (q,p)`.
    pub fn conjugate(&self) -> Form {
        let mut out = Form::zero(self.n, self.q, self.p);
        // conj(φ_I ∧ φ̄_J) = φ̄_I ∧ φ_J = (−1)^{pq} φ_J ∧ φ̄_I
        let sign = if (self.p * self.q) % 2 == 0 { 1 } else { -1 };
        for ((i, j), c) in &self.coeffs {
            let mut v = c.conj();
            if sign < 0 {
                v = -v;
            }
            out.add_coeff(j.clone(), i.clone(), v);
        }
        out
    }

    /// A form is real iff it equals its own conjugate.
    pub fn is_real(&self) -> bool {
        self.p == self.q && *self == self.conjugate()
    }

    /// The coefficient `f` with `self ∧ other = f · dv`, where `dv` is the
    /// canonical volume form. Requires complementary bidegrees.
    pub fn pair_top(&self, other: &Form) -> Result<Scalar, ExteriorError> {
        if self.p + other.p != self.n || self.q + other.q != self.n {
            return Err(ExteriorError::DegreeMismatch {
                n: self.n,
                p: self.p + other.p,
                q: self.q + other.q,
            });
        }
        let top = self.wedge(other)?;
        let full = MultiIndex::full(self.n);
        Ok(&top.coeff(&full, &full) / &sigma(self.n))
    }

    /// Evaluate a real-convention pairing `Ω(σ_p⁻¹ V ∧ V̄)` on a simple
    /// `p`-vector, via Plücker coordinates. Normalized so that
    /// `evaluate(σ_p φ_I∧φ̄_I, e_I) = 1`.
    pub fn evaluate(&self, v: &SimpleVector) -> Result<Scalar, ExteriorError> {
        if self.n != v.n() {
            return Err(ExteriorError::DimensionMismatch { left: self.n, right: v.n() });
        }
        if self.p != self.q || self.p != v.degree() {
            return Err(ExteriorError::DegreeMismatch { n: self.n, p: self.p, q: self.q });
        }
        let pluecker = v.pluecker_map();
        let mut acc = Scalar::zero();
        for ((i, j), c) in &self.coeffs {
            let (Some(pi), Some(pj)) = (pluecker.get(i), pluecker.get(j)) else { continue };
            acc = acc + c * pi * &pj.conj();
        }
        Ok(&acc / &sigma(self.p))
    }

    /// The standard diagonal metric form `γ = σ₁ Σ_j φ_j ∧ φ̄_j`.
    pub fn metric(n: usize) -> Form {
        let mut f = Form::zero(n, 1, 1);
        for j in 1..=n {
            let idx = MultiIndex::new(vec![j]).unwrap();
            f.add_coeff(idx.clone(), idx, sigma(1));
        }
        f
    }

    /// `γ^p` (exterior power of the metric form).
    pub fn metric_power(n: usize, p: usize) -> Form {
        let gamma = Form::metric(n);
        let mut out = Form::monomial(n, MultiIndex::empty(), MultiIndex::empty(), Scalar::one()).unwrap();
        for _ in 0..p {
            out = out.wedge(&gamma).unwrap();
        }
        out
    }

    /// The volume form `dv = σ_n φ_{1…n} ∧ φ̄_{1…n}`.
    pub fn volume(n: usize) -> Form {
        let full = MultiIndex::full(n);
        Form::monomial(n, full.clone(), full, sigma(n)).unwrap()
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0[({},{}) on n={}]", self.p, self.q, self.n);
        }
        let mut first = true;
        for ((i, j), c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})·φ{i:?}∧φ̄{j:?}")?;
        }
        Ok(())
    }
}

/// A `(p,p)`-vector: an exact coefficient combination of `e_I ∧ ē_J`.
///
/// Houses `σ_p⁻¹ V ∧ V̄` for simple `V` and, through [`dual_form`], the
/// duality isomorphism onto `(k,k)`-forms.
#[derive(Clone, PartialEq, Eq)]
pub struct PpVector {
    n: usize,
    deg: usize,
    coeffs: BTreeMap<(MultiIndex, MultiIndex), Scalar>,
}

impl PpVector {
    pub fn zero(n: usize, deg: usize) -> Self {
        PpVector { n, deg, coeffs: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn add_coeff(&mut self, i: MultiIndex, j: MultiIndex, c: Scalar) {
        debug_assert!(i.len() == self.deg && j.len() == self.deg);
        if c.is_zero() {
            return;
        }
        let key = (i, j);
        let v = match self.coeffs.get(&key) {
            Some(old) => old + &c,
            None => c,
        };
        if v.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex), &Scalar)> {
        self.coeffs.iter()
    }

    pub fn scale(&self, c: &Scalar) -> PpVector {
        let mut out = PpVector::zero(self.n, self.deg);
        for ((i, j), v) in &self.coeffs {
            out.add_coeff(i.clone(), j.clone(), v * c);
        }
        out
    }

    /// `V ∧ V̄` of a simple vector, in Plücker coordinates.
    pub fn from_simple(v: &SimpleVector) -> PpVector {
        let mut out = PpVector::zero(v.n(), v.degree());
        let pl = v.pluecker_map();
        for (i, pi) in &pl {
            for (j, pj) in &pl {
                out.add_coeff(i.clone(), j.clone(), pi * &pj.conj());
            }
        }
        out
    }

    /// `σ_p⁻¹ V ∧ V̄`: the strictly strongly positive vector of a simple `V`.
    pub fn positive_from_simple(v: &SimpleVector) -> PpVector {
        PpVector::from_simple(v).scale(&sigma(v.degree()).inv())
    }

    /// Apply a real `(p,p)`-form to this vector with the plain coefficient
    /// pairing `(φ_I∧φ̄_J)(e_K∧ē_L) = δ_IK δ_JL`.
    pub fn apply(&self, omega: &Form) -> Result<Scalar, ExteriorError> {
        if omega.n() != self.n {
            return Err(ExteriorError::DimensionMismatch { left: omega.n(), right: self.n });
        }
        if omega.bidegree() != (self.deg, self.deg) {
            let (p, q) = omega.bidegree();
            return Err(ExteriorError::DegreeMismatch { n: self.n, p, q });
        }
        let mut acc = Scalar::zero();
        for ((i, j), c) in &self.coeffs {
            acc = acc + &omega.coeff(i, j) * c;
        }
        Ok(acc)
    }
}

impl fmt::Debug for PpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0[vec deg {} on n={}]", self.deg, self.n);
        }
        let mut first = true;
        for ((i, j), c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})·e{i:?}∧ē{j:?}")?;
        }
        Ok(())
    }
}

/// The duality isomorphism `g : Λ_{a,a}(E) → Λ^{k,k}(E*)`, `k = n − a`,
/// defined by `f(Ω, g(A)) = Ω(A)` for all `(a,a)`-forms `Ω`. On diagonal
/// basis vectors it sends `σ_a⁻¹ e_I∧ē_I` to `σ_k φ_J∧φ̄_J`, `J = I^c`.
pub fn dual_form(a: &PpVector) -> Form {
    let n = a.n();
    let deg = a.degree();
    let k = n - deg;
    let sign = if (deg * k) % 2 == 0 { 1 } else { -1 };
    let mut out = Form::zero(n, k, k);
    for ((i, j), c) in a.iter() {
        let ic = i.complement(n);
        let jc = j.complement(n);
        let (_, si) = i.merge(&ic).expect("disjoint by construction");
        let (_, sj) = j.merge(&jc).expect("disjoint by construction");
        let s = sign * si as i64 * sj as i64;
        let mut v = &sigma(n) * c;
        if s < 0 {
            v = -v;
        }
        out.add_coeff(ic, jc, v);
    }
    out
}

/// Serializable sparse representation used by the CLI / C API form schema.
#[derive(Serialize, Deserialize)]
pub struct FormRepr {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub coeffs: Vec<CoeffRepr>,
}

#[derive(Serialize, Deserialize)]
pub struct CoeffRepr {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    pub re: String,
    #[serde(default)]
    pub im: Option<String>,
}

impl Serialize for Form {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_repr().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Form {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = FormRepr::deserialize(deserializer)?;
        Form::from_repr(&repr).map_err(D::Error::custom)
    }
}

impl Form {
    /// Real coordinates of a real `(p,p)`-form in the canonical real basis:
    /// first the diagonal entries `Ω_{I,I} = σ_p x_I`, then for each pair
    /// `I < J` the pair `(x, y)` with `Ω_{I,J} = σ_p (x + iy)` (the conjugate
    /// entry is then forced by reality). Returns `None` when not real.
    pub fn real_coordinates(&self) -> Option<Vec<BigRational>> {
        if self.p != self.q || !self.is_real() {
            return None;
        }
        let idxs = MultiIndex::enumerate(self.n, self.p);
        let sig_inv = sigma(self.p).inv();
        let mut out = Vec::with_capacity(idxs.len() * idxs.len());
        for i in &idxs {
            let z = &self.coeff(i, i) * &sig_inv;
            debug_assert!(z.im.is_zero());
            out.push(z.re);
        }
        for (a, i) in idxs.iter().enumerate() {
            for j in idxs.iter().skip(a + 1) {
                let z = &self.coeff(i, j) * &sig_inv;
                out.push(z.re);
                out.push(z.im);
            }
        }
        Some(out)
    }

    /// Inverse of [`Form::real_coordinates`]; always produces a real form.
    pub fn from_real_coordinates(n: usize, p: usize, coords: &[BigRational]) -> Form {
        let idxs = MultiIndex::enumerate(n, p);
        let m = idxs.len();
        assert_eq!(coords.len(), m * m, "real coordinate length");
        let sig = sigma(p);
        let mut f = Form::zero(n, p, p);
        for (t, i) in idxs.iter().enumerate() {
            f.add_coeff(i.clone(), i.clone(), &sig * &Scalar::from_real(coords[t].clone()));
        }
        let mut t = m;
        for (a, i) in idxs.iter().enumerate() {
            for j in idxs.iter().skip(a + 1) {
                let z = Scalar::new(coords[t].clone(), coords[t + 1].clone());
                t += 2;
                f.add_coeff(i.clone(), j.clone(), &sig * &z);
                f.add_coeff(j.clone(), i.clone(), &sig * &z.conj());
            }
        }
        f
    }

    /// Dimension of the real `(p,p)` coordinate space: `C(n,p)²`.
    pub fn real_dim(n: usize, p: usize) -> usize {
        let m = super::binomial(n, p);
        m * m
    }

    pub fn to_repr(&self) -> FormRepr {
        FormRepr {
            n: self.n,
            p: self.p,
            q: self.q,
            coeffs: self
                .coeffs
                .iter()
                .map(|((i, j), c)| CoeffRepr {
                    i: i.as_slice().to_vec(),
                    j: j.as_slice().to_vec(),
                    re: c.re.to_string(),
                    im: if c.im.is_zero() { None } else { Some(c.im.to_string()) },
                })
                .collect(),
        }
    }

    pub fn from_repr(repr: &FormRepr) -> Result<Form, ExteriorError> {
        let mut f = Form::zero(repr.n, repr.p, repr.q);
        for c in &repr.coeffs {
            let i = MultiIndex::new(c.i.clone())?;
            let j = MultiIndex::new(c.j.clone())?;
            if i.len() != repr.p || j.len() != repr.q {
                return Err(ExteriorError::BadIndex(format!(
                    "coefficient index lengths {:?}/{:?} do not match bidegree ({},{})",
                    c.i, c.j, repr.p, repr.q
                )));
            }
            if i.max_index() > repr.n || j.max_index() > repr.n {
                return Err(ExteriorError::BadIndex(format!(
                    "index out of range for n={}: {:?},{:?}",
                    repr.n, c.i, c.j
                )));
            }
            let re = Scalar::parse_rational(&c.re).map_err(ExteriorError::BadIndex)?;
            let im = match &c.im {
                Some(s) => Scalar::parse_rational(s).map_err(ExteriorError::BadIndex)?,
                None => BigRational::zero(),
            };
            f.add_coeff(i, j, Scalar::new(re, im));
        }
        Ok(f)
    }
}

/// The real basis forms of `Λ^{p,p}_ℝ` in the order used by
/// [`Form::real_coordinates`].
pub fn real_pp_basis(n: usize, p: usize) -> Vec<Form> {
    let d = Form::real_dim(n, p);
    (0..d)
        .map(|t| {
            let mut coords = vec![BigRational::zero(); d];
            coords[t] = BigRational::from_integer(1.into());
            Form::from_real_coordinates(n, p, &coords)
        })
        .collect()
}
