//! Invariant-form complexes of compact quotients from Lie-algebra
//! structure constants.
//!
//! A model is the complex dimension `n` plus the constants of
//! `dφ^k = Σ_{i<j} A^k_{ij} φ^i∧φ^j + Σ_{i,j} B^k_{ij} φ^i∧φ̄^j`;
//! the field layout structurally forbids a `(0,2)`-component on
//! `(1,0)`-forms (integrability), and `d∘d = 0` is checked exactly at
//! construction (equivalent to the Jacobi identity). From these the whole
//! bigraded invariant complex is generated: the operators `∂`, `∂̄`, `d`
//! as exact matrices on real coordinate spaces, and the de Rham,
//! Bott–Chern and Aeppli cohomologies as exact rank computations.
//!
//! Only left-invariant forms are modeled; in this finite-dimensional
//! setting every image is closed and all duality arguments reduce to
//! linear algebra, which is what makes the detector's separation exact.

mod bundled;
mod verify;

pub use bundled::{bundled_model, bundled_names};
pub use verify::{verify_sl2c_example, Sl2cReport};

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exterior::{binomial, ExteriorError, Form, MultiIndex};
use crate::linalg::Mat;
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("bad model data: {0}")]
    BadInput(String),
    #[error("integrability failure: d²(φ^{generator}) ≠ 0")]
    Integrability { generator: usize },
    #[error("invalid operator parameters: {0}")]
    BadOperator(String),
    #[error("model mismatch: {0}")]
    Mismatch(String),
    #[error("exact check failed: {0}")]
    CheckFailed(String),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error("JSON: {0}")]
    Json(String),
}

/// Structure constants of a left-invariant complex structure.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebraModel {
    name: String,
    n: usize,
    /// `(k, i, j) → A^k_{ij}` with `i < j`.
    a: BTreeMap<(usize, usize, usize), Scalar>,
    /// `(k, i, j) → B^k_{ij}`; empty for holomorphically parallelizable
    /// models.
    b: BTreeMap<(usize, usize, usize), Scalar>,
}

impl fmt::Debug for LieAlgebraModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebraModel({}, n={})", self.name, self.n)
    }
}

impl LieAlgebraModel {
    pub fn new(
        name: impl Into<String>,
        n: usize,
        a: BTreeMap<(usize, usize, usize), Scalar>,
        b: BTreeMap<(usize, usize, usize), Scalar>,
    ) -> Result<Self, ModelError> {
        if n == 0 || n > 6 {
            return Err(ModelError::BadInput(format!("n = {n} out of supported range 1..=6")));
        }
        for &(k, i, j) in a.keys() {
            if !(1 <= i && i < j && j <= n && 1 <= k && k <= n) {
                return Err(ModelError::BadInput(format!(
                    "A coefficient ({k},{i},{j}) out of range (need 1 ≤ i < j ≤ {n})"
                )));
            }
        }
        for &(k, i, j) in b.keys() {
            if !(1 <= i && i <= n && 1 <= j && j <= n && 1 <= k && k <= n) {
                return Err(ModelError::BadInput(format!(
                    "B coefficient ({k},{i},{j}) out of range"
                )));
            }
        }
        let a: BTreeMap<_, _> = a.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let b: BTreeMap<_, _> = b.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(LieAlgebraModel { name: name.into(), n, a, b })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_parallelizable(&self) -> bool {
        self.b.is_empty()
    }

    pub fn is_abelian(&self) -> bool {
        self.a.is_empty() && self.b.is_empty()
    }

    pub fn to_repr(&self) -> ModelRepr {
        let coeff = |m: &BTreeMap<(usize, usize, usize), Scalar>| {
            m.iter()
                .map(|(&(k, i, j), c)| StructureCoeff {
                    k,
                    i,
                    j,
                    re: c.re.to_string(),
                    im: if c.im.is_zero() { None } else { Some(c.im.to_string()) },
                })
                .collect()
        };
        ModelRepr {
            name: self.name.clone(),
            n: self.n,
            a: coeff(&self.a),
            b: coeff(&self.b),
        }
    }

    pub fn from_repr(repr: &ModelRepr) -> Result<Self, ModelError> {
        let parse = |items: &[StructureCoeff]| -> Result<BTreeMap<(usize, usize, usize), Scalar>, ModelError> {
            let mut out = BTreeMap::new();
            for c in items {
                let re = Scalar::parse_rational(&c.re).map_err(ModelError::Json)?;
                let im = match &c.im {
                    Some(s) => Scalar::parse_rational(s).map_err(ModelError::Json)?,
                    None => BigRational::zero(),
                };
                if out.insert((c.k, c.i, c.j), Scalar::new(re, im)).is_some() {
                    return Err(ModelError::BadInput(format!(
                        "duplicate structure coefficient ({},{},{})",
                        c.k, c.i, c.j
                    )));
                }
            }
            Ok(out)
        };
        LieAlgebraModel::new(repr.name.clone(), repr.n, parse(&repr.a)?, parse(&repr.b)?)
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let repr: ModelRepr =
            serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
        LieAlgebraModel::from_repr(&repr)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_repr()).expect("repr serializes")
    }
}

/// JSON schema: `{"name", "n", "A": [{"k","i","j","re","im"}…], "B": […]}`
/// with rationals as `"num/den"` strings.
#[derive(Serialize, Deserialize)]
pub struct ModelRepr {
    pub name: String,
    pub n: usize,
    #[serde(rename = "A", default)]
    pub a: Vec<StructureCoeff>,
    #[serde(rename = "B", default)]
    pub b: Vec<StructureCoeff>,
}

#[derive(Serialize, Deserialize)]
pub struct StructureCoeff {
    pub k: usize,
    pub i: usize,
    pub j: usize,
    pub re: String,
    #[serde(default)]
    pub im: Option<String>,
}

/// A form with components in several bidegrees (a real `2p`-form is one of
/// these with conjugate-symmetric parts).
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedForm {
    n: usize,
    parts: Vec<Form>,
}

impl MixedForm {
    pub fn zero(n: usize) -> Self {
        MixedForm { n, parts: Vec::new() }
    }

    pub fn from_form(f: Form) -> Self {
        let n = f.n();
        let mut m = MixedForm::zero(n);
        m.add_form(&f);
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn part(&self, a: usize, b: usize) -> Option<&Form> {
        self.parts.iter().find(|f| f.bidegree() == (a, b))
    }

    pub fn parts(&self) -> &[Form] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Form::is_zero)
    }

    pub fn total_degree(&self) -> Option<usize> {
        let mut deg = None;
        for f in &self.parts {
            if f.is_zero() {
                continue;
            }
            let (a, b) = f.bidegree();
            match deg {
                None => deg = Some(a + b),
                Some(d) if d != a + b => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn add_form(&mut self, f: &Form) {
        assert_eq!(f.n(), self.n, "ambient dimension mismatch");
        if f.is_zero() {
            return;
        }
        let (a, b) = f.bidegree();
        if let Some(existing) = self.parts.iter_mut().find(|g| g.bidegree() == (a, b)) {
            *existing = existing.add(f);
        } else {
            self.parts.push(f.clone());
        }
        self.parts.retain(|g| !g.is_zero());
        self.parts.sort_by_key(|g| g.bidegree());
    }

    pub fn add(&self, other: &MixedForm) -> MixedForm {
        let mut out = self.clone();
        for f in &other.parts {
            out.add_form(f);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> MixedForm {
        MixedForm { n: self.n, parts: self.parts.iter().map(|f| f.scale(c)).filter(|f| !f.is_zero()).collect() }
    }

    pub fn sub(&self, other: &MixedForm) -> MixedForm {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn conjugate(&self) -> MixedForm {
        let mut out = MixedForm::zero(self.n);
        for f in &self.parts {
            out.add_form(&f.conjugate());
        }
        out
    }

    pub fn is_real(&self) -> bool {
        *self == self.conjugate()
    }

    pub fn wedge(&self, other: &MixedForm) -> Result<MixedForm, ExteriorError> {
        let mut out = MixedForm::zero(self.n);
        for f in &self.parts {
            for g in &other.parts {
                let (a, b) = f.bidegree();
                let (c, d) = g.bidegree();
                if a + c > self.n || b + d > self.n {
                    continue;
                }
                out.add_form(&f.wedge(g)?);
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for MixedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (t, p) in self.parts.iter().enumerate() {
            if t > 0 {
                write!(f, "  ⊕  ")?;
            }
            write!(f, "{p:?}")?;
        }
        Ok(())
    }
}

/// Identifiers of the real coordinate spaces of the invariant complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealSpaceId {
    /// Real `(m,m)`-forms.
    Diag(usize),
    /// Real forms with components `(a,b) ⊕ (b,a)`, `a > b`.
    Pair(usize, usize),
    /// Real `j`-forms (all bidegrees with `a+b = j`).
    Full(usize),
}

/// Operators of the invariant σ-complex, as maps of real coordinate spaces.
///
/// In the chain around level `q = p−1` these are, in order:
/// `σ_{2q} = IDelDbar{q}`, `σ_{2q+1} = DFromDiag{p}`,
/// `σ_{2q+2} = DFromPair{q+2, q+1}`, `σ_{2p−1} = PairIntoDiag{p}`,
/// `σ_{2p} = IDelDbar{p}`, and the plain de Rham maps `d_j = DFull{j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorId {
    /// `i∂∂̄ : real (m,m) → real (m+1,m+1)`.
    IDelDbar { level: usize },
    /// `d : real (m,m) → real ((m+1,m) ⊕ (m,m+1))`.
    DFromDiag { level: usize },
    /// `(β, β̄) ↦ ∂̄β + ∂β̄ : real ((m,m−1) ⊕ (m−1,m)) → real (m,m)`.
    PairIntoDiag { level: usize },
    /// `d : real ((a,b) ⊕ (b,a)) → real (a+b+1)-forms`.
    DFromPair { a: usize, b: usize },
    /// `d : real j-forms → real (j+1)-forms`.
    DFull { degree: usize },
}

impl OperatorId {
    pub fn source(&self) -> RealSpaceId {
        match *self {
            OperatorId::IDelDbar { level } => RealSpaceId::Diag(level),
            OperatorId::DFromDiag { level } => RealSpaceId::Diag(level),
            OperatorId::PairIntoDiag { level } => RealSpaceId::Pair(level, level - 1),
            OperatorId::DFromPair { a, b } => RealSpaceId::Pair(a, b),
            OperatorId::DFull { degree } => RealSpaceId::Full(degree),
        }
    }

    pub fn target(&self) -> RealSpaceId {
        match *self {
            OperatorId::IDelDbar { level } => RealSpaceId::Diag(level + 1),
            OperatorId::DFromDiag { level } => RealSpaceId::Pair(level + 1, level),
            OperatorId::PairIntoDiag { level } => RealSpaceId::Diag(level),
            OperatorId::DFromPair { a, b } => RealSpaceId::Full(a + b + 1),
            OperatorId::DFull { degree } => RealSpaceId::Full(degree + 1),
        }
    }
}

/// Cohomology groups available as exact dimension counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CohomologyGroup {
    /// Invariant de Rham `H^j`.
    DeRham(usize),
    /// `H_BC^{k,k}`: closed real `(k,k)`-forms modulo `i∂∂̄`-exact ones.
    BottChern(usize),
    /// `H_A^{k,k}`: `i∂∂̄`-closed modulo `∂β̄ + ∂̄β`.
    Aeppli(usize),
    /// `W^{q+2,q+1} = Ker σ_{2q+2} / Im σ_{2q+1}`.
    W(usize),
}

/// The full bigraded invariant complex of a model: canonical complex bases
/// per bidegree, exact `d`-images of all basis monomials, and real-matrix
/// views of every operator in the σ-chain. Immutable after construction.
pub struct GradedComplex {
    model: LieAlgebraModel,
    n: usize,
    /// `d` of the generators: `d_gen[0][k-1]` for `φ^k`, `d_gen[1][k-1]`
    /// for `φ̄^k`.
    d_holo: Vec<MixedForm>,
    d_anti: Vec<MixedForm>,
}

impl GradedComplex {
    /// Build the complex, verifying `d∘d = 0` on all generators (hence, by
    /// the derivation property, on every invariant form).
    pub fn build(model: LieAlgebraModel) -> Result<GradedComplex, ModelError> {
        let n = model.dim();
        let mut d_holo = Vec::with_capacity(n);
        for k in 1..=n {
            let mut df = MixedForm::zero(n);
            for (&(kk, i, j), c) in &model.a {
                if kk != k {
                    continue;
                }
                let m = Form::monomial(
                    n,
                    MultiIndex::new(vec![i, j]).unwrap(),
                    MultiIndex::empty(),
                    c.clone(),
                )?;
                df.add_form(&m);
            }
            for (&(kk, i, j), c) in &model.b {
                if kk != k {
                    continue;
                }
                let m = Form::monomial(
                    n,
                    MultiIndex::new(vec![i]).unwrap(),
                    MultiIndex::new(vec![j]).unwrap(),
                    c.clone(),
                )?;
                df.add_form(&m);
            }
            d_holo.push(df);
        }
        let d_anti: Vec<MixedForm> = d_holo.iter().map(MixedForm::conjugate).collect();
        let complex = GradedComplex { model, n, d_holo, d_anti };
        for k in 1..=n {
            let ddk = complex.d(&complex.d_holo[k - 1]);
            if !ddk.is_zero() {
                return Err(ModelError::Integrability { generator: k });
            }
        }
        Ok(complex)
    }

    pub fn model(&self) -> &LieAlgebraModel {
        &self.model
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `d` of a single basis monomial `φ_I ∧ φ̄_J`, by the graded Leibniz
    /// rule.
    pub fn d_monomial(&self, i: &MultiIndex, j: &MultiIndex) -> MixedForm {
        let n = self.n;
        let mut out = MixedForm::zero(n);
        let holo: Vec<usize> = i.as_slice().to_vec();
        let anti: Vec<usize> = j.as_slice().to_vec();
        let p = holo.len();
        // d(x₁∧…∧x_m) = Σ_t (−1)^{t−1} x₁∧…∧dx_t∧…∧x_m
        for (t, &gen) in holo.iter().enumerate() {
            let before = Form::monomial(
                n,
                MultiIndex::new(holo[..t].to_vec()).unwrap(),
                MultiIndex::empty(),
                Scalar::one(),
            )
            .expect("valid");
            let after_i = MultiIndex::new(holo[t + 1..].to_vec()).unwrap();
            let after = Form::monomial(n, after_i, j.clone(), Scalar::one()).expect("valid");
            let sign = if t % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            for part in self.d_holo[gen - 1].parts() {
                let w = before.wedge(part).and_then(|x| x.wedge(&after));
                if let Ok(w) = w {
                    out.add_form(&w.scale(&sign));
                }
            }
        }
        for (s, &gen) in anti.iter().enumerate() {
            let before = Form::monomial(
                n,
                i.clone(),
                MultiIndex::new(anti[..s].to_vec()).unwrap(),
                Scalar::one(),
            )
            .expect("valid");
            let after = Form::monomial(
                n,
                MultiIndex::empty(),
                MultiIndex::new(anti[s + 1..].to_vec()).unwrap(),
                Scalar::one(),
            )
            .expect("valid");
            let sign = if (p + s) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            for part in self.d_anti[gen - 1].parts() {
                let w = before.wedge(part).and_then(|x| x.wedge(&after));
                if let Ok(w) = w {
                    out.add_form(&w.scale(&sign));
                }
            }
        }
        out
    }

    /// Full exterior derivative.
    pub fn d(&self, f: &MixedForm) -> MixedForm {
        let mut out = MixedForm::zero(self.n);
        for part in f.parts() {
            for ((i, j), c) in part.iter() {
                let dm = self.d_monomial(i, j);
                out = out.add(&dm.scale(c));
            }
        }
        out
    }

    pub fn d_form(&self, f: &Form) -> MixedForm {
        self.d(&MixedForm::from_form(f.clone()))
    }

    /// `(a+1, b)`-component of `d`.
    pub fn del(&self, f: &Form) -> Form {
        let (a, b) = f.bidegree();
        if a + 1 > self.n {
            return Form::zero(self.n, 0, 0);
        }
        self.d_form(f)
            .part(a + 1, b)
            .cloned()
            .unwrap_or_else(|| Form::zero(self.n, a + 1, b))
    }

    /// `(a, b+1)`-component of `d`.
    pub fn delbar(&self, f: &Form) -> Form {
        let (a, b) = f.bidegree();
        if b + 1 > self.n {
            return Form::zero(self.n, 0, 0);
        }
        self.d_form(f)
            .part(a, b + 1)
            .cloned()
            .unwrap_or_else(|| Form::zero(self.n, a, b + 1))
    }

    /// `i∂∂̄`.
    pub fn i_del_delbar(&self, f: &Form) -> Form {
        self.del(&self.delbar(f)).scale(&Scalar::i())
    }

    // ---- real coordinate spaces -------------------------------------------

    fn pair_components(&self, j: usize) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        let mut a = j.min(n);
        loop {
            let b = j - a;
            if b > a {
                break;
            }
            if b <= n && a > b {
                out.push((a, b));
            }
            if a == 0 {
                break;
            }
            a -= 1;
        }
        out
    }

    pub fn real_dim(&self, id: RealSpaceId) -> usize {
        let n = self.n;
        match id {
            RealSpaceId::Diag(m) => {
                if m > n {
                    0
                } else {
                    Form::real_dim(n, m)
                }
            }
            RealSpaceId::Pair(a, b) => {
                if a > n || b > n {
                    0
                } else {
                    2 * binomial(n, a) * binomial(n, b)
                }
            }
            RealSpaceId::Full(j) => {
                if j > 2 * n {
                    return 0;
                }
                let mut d = 0;
                for (a, b) in self.pair_components(j) {
                    d += self.real_dim(RealSpaceId::Pair(a, b));
                }
                if j % 2 == 0 {
                    d += self.real_dim(RealSpaceId::Diag(j / 2));
                }
                d
            }
        }
    }

    /// Real basis as mixed forms, in the coordinate order used by
    /// `coords_of` / `mixed_from_coords`.
    pub fn real_basis(&self, id: RealSpaceId) -> Vec<MixedForm> {
        let d = self.real_dim(id);
        (0..d)
            .map(|t| {
                let mut coords = vec![BigRational::zero(); d];
                coords[t] = BigRational::from_integer(1.into());
                self.mixed_from_coords(id, &coords)
            })
            .collect()
    }

    pub fn mixed_from_coords(&self, id: RealSpaceId, coords: &[BigRational]) -> MixedForm {
        let n = self.n;
        assert_eq!(coords.len(), self.real_dim(id), "coordinate length for {id:?}");
        if coords.is_empty() {
            return MixedForm::zero(n);
        }
        match id {
            RealSpaceId::Diag(m) => {
                MixedForm::from_form(Form::from_real_coordinates(n, m, coords))
            }
            RealSpaceId::Pair(a, b) => {
                let idx_a = MultiIndex::enumerate(n, a);
                let idx_b = MultiIndex::enumerate(n, b);
                let mut beta = Form::zero(n, a, b);
                let mut t = 0usize;
                for i in &idx_a {
                    for j in &idx_b {
                        let c = Scalar::new(coords[t].clone(), coords[t + 1].clone());
                        t += 2;
                        beta.add_coeff(i.clone(), j.clone(), c);
                    }
                }
                let mut out = MixedForm::from_form(beta.clone());
                out.add_form(&beta.conjugate());
                out
            }
            RealSpaceId::Full(j) => {
                let mut out = MixedForm::zero(n);
                let mut offset = 0usize;
                for (a, b) in self.pair_components(j) {
                    let d = self.real_dim(RealSpaceId::Pair(a, b));
                    out = out.add(
                        &self.mixed_from_coords(RealSpaceId::Pair(a, b), &coords[offset..offset + d]),
                    );
                    offset += d;
                }
                if j % 2 == 0 {
                    let d = self.real_dim(RealSpaceId::Diag(j / 2));
                    out = out.add(
                        &self.mixed_from_coords(RealSpaceId::Diag(j / 2), &coords[offset..offset + d]),
                    );
                }
                out
            }
        }
    }

    /// Exact real coordinates of a mixed form in the given space; `None`
    /// when the form does not belong to it (wrong components, or not real).
    pub fn coords_of(&self, id: RealSpaceId, f: &MixedForm) -> Option<Vec<BigRational>> {
        let n = self.n;
        if self.real_dim(id) == 0 {
            // the zero space: only the zero form belongs to it
            return f.is_zero().then(Vec::new);
        }
        match id {
            RealSpaceId::Diag(m) => {
                for part in f.parts() {
                    if part.bidegree() != (m, m) && !part.is_zero() {
                        return None;
                    }
                }
                let part = f.part(m, m).cloned().unwrap_or_else(|| Form::zero(n, m, m));
                part.real_coordinates()
            }
            RealSpaceId::Pair(a, b) => {
                for part in f.parts() {
                    let bd = part.bidegree();
                    if bd != (a, b) && bd != (b, a) && !part.is_zero() {
                        return None;
                    }
                }
                let beta = f.part(a, b).cloned().unwrap_or_else(|| Form::zero(n, a, b));
                let other = f.part(b, a).cloned().unwrap_or_else(|| Form::zero(n, b, a));
                if other != beta.conjugate() {
                    return None;
                }
                let mut coords = Vec::with_capacity(self.real_dim(id));
                for i in &MultiIndex::enumerate(n, a) {
                    for j in &MultiIndex::enumerate(n, b) {
                        let c = beta.coeff(i, j);
                        coords.push(c.re);
                        coords.push(c.im);
                    }
                }
                Some(coords)
            }
            RealSpaceId::Full(j) => {
                if f.total_degree().is_some_and(|d| d != j) {
                    return None;
                }
                let mut coords = Vec::with_capacity(self.real_dim(id));
                let mut used: Vec<(usize, usize)> = Vec::new();
                for (a, b) in self.pair_components(j) {
                    let mut sub = MixedForm::zero(n);
                    if let Some(p) = f.part(a, b) {
                        sub.add_form(p);
                    }
                    if let Some(p) = f.part(b, a) {
                        sub.add_form(p);
                    }
                    used.push((a, b));
                    used.push((b, a));
                    coords.extend(self.coords_of(RealSpaceId::Pair(a, b), &sub)?);
                }
                if j % 2 == 0 {
                    let m = j / 2;
                    let sub = match f.part(m, m) {
                        Some(p) => MixedForm::from_form(p.clone()),
                        None => MixedForm::zero(n),
                    };
                    used.push((m, m));
                    coords.extend(self.coords_of(RealSpaceId::Diag(m), &sub)?);
                }
                // reject stray components
                for part in f.parts() {
                    if !part.is_zero() && !used.contains(&part.bidegree()) {
                        return None;
                    }
                }
                Some(coords)
            }
        }
    }

    /// Apply the operator to a mixed form (shape-checked by coordinates).
    pub fn apply_operator(&self, op: OperatorId, f: &MixedForm) -> MixedForm {
        match op {
            OperatorId::IDelDbar { .. } => {
                let mut out = MixedForm::zero(self.n);
                for part in f.parts() {
                    out.add_form(&self.i_del_delbar(part));
                }
                out
            }
            OperatorId::DFromDiag { .. } | OperatorId::DFromPair { .. } | OperatorId::DFull { .. } => {
                self.d(f)
            }
            OperatorId::PairIntoDiag { level } => {
                let beta = f
                    .part(level, level - 1)
                    .cloned()
                    .unwrap_or_else(|| Form::zero(self.n, level, level - 1));
                let beta_bar = f
                    .part(level - 1, level)
                    .cloned()
                    .unwrap_or_else(|| Form::zero(self.n, level - 1, level));
                let mut out = MixedForm::zero(self.n);
                out.add_form(&self.delbar(&beta));
                out.add_form(&self.del(&beta_bar));
                out
            }
        }
    }

    /// Exact matrix of an operator in the canonical real bases
    /// (rows: target coordinates, columns: source coordinates).
    pub fn operator_matrix(&self, op: OperatorId) -> Result<Mat, ModelError> {
        let n = self.n;
        let valid = match op {
            OperatorId::IDelDbar { level } => level <= n,
            OperatorId::DFromDiag { level } => level <= n,
            OperatorId::PairIntoDiag { level } => level >= 1 && level <= n,
            OperatorId::DFromPair { a, b } => a > b && a <= n,
            OperatorId::DFull { degree } => degree <= 2 * n,
        };
        if !valid {
            return Err(ModelError::BadOperator(format!("{op:?} invalid for n={n}")));
        }
        let src = op.source();
        let tgt = op.target();
        let rows = self.real_dim(tgt);
        let cols_n = self.real_dim(src);
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(cols_n);
        for basis in self.real_basis(src) {
            let image = self.apply_operator(op, &basis);
            let coords = self.coords_of(tgt, &image).ok_or_else(|| {
                ModelError::CheckFailed(format!("image of {op:?} leaves the target space"))
            })?;
            cols.push(coords.into_iter().map(Scalar::from_real).collect());
        }
        if cols.is_empty() {
            return Ok(Mat::zero(rows, 0));
        }
        Ok(Mat::from_cols(cols))
    }

    /// Exact dimension of a cohomology group of the invariant complex.
    pub fn cohomology_dim(&self, group: CohomologyGroup) -> Result<usize, ModelError> {
        let n = self.n;
        match group {
            CohomologyGroup::DeRham(j) => {
                if j > 2 * n {
                    return Err(ModelError::BadOperator(format!("de Rham degree {j} > {}", 2 * n)));
                }
                let dj = self.operator_matrix(OperatorId::DFull { degree: j })?;
                let ker = self.real_dim(RealSpaceId::Full(j)) - dj.rank();
                let im = if j == 0 {
                    0
                } else {
                    self.operator_matrix(OperatorId::DFull { degree: j - 1 })?.rank()
                };
                Ok(ker - im)
            }
            CohomologyGroup::BottChern(k) => {
                if k > n {
                    return Err(ModelError::BadOperator(format!("Bott–Chern level {k} > {n}")));
                }
                let d = self.operator_matrix(OperatorId::DFromDiag { level: k })?;
                let ker = self.real_dim(RealSpaceId::Diag(k)) - d.rank();
                let im = if k == 0 {
                    0
                } else {
                    self.operator_matrix(OperatorId::IDelDbar { level: k - 1 })?.rank()
                };
                Ok(ker - im)
            }
            CohomologyGroup::Aeppli(k) => {
                if k > n {
                    return Err(ModelError::BadOperator(format!("Aeppli level {k} > {n}")));
                }
                let s = self.operator_matrix(OperatorId::IDelDbar { level: k })?;
                let ker = self.real_dim(RealSpaceId::Diag(k)) - s.rank();
                let im = if k == 0 {
                    0
                } else {
                    self.operator_matrix(OperatorId::PairIntoDiag { level: k })?.rank()
                };
                Ok(ker - im)
            }
            CohomologyGroup::W(q) => {
                if q + 2 > n {
                    return Err(ModelError::BadOperator(format!("W level {q} needs q+2 ≤ {n}")));
                }
                let up = self.operator_matrix(OperatorId::DFromPair { a: q + 2, b: q + 1 })?;
                let ker = self.real_dim(RealSpaceId::Pair(q + 2, q + 1)) - up.rank();
                let im = self.operator_matrix(OperatorId::DFromDiag { level: q + 1 })?.rank();
                Ok(ker - im)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    fn complex(name: &str) -> GradedComplex {
        GradedComplex::build(bundled_model(name).unwrap()).unwrap()
    }

    #[test]
    fn torus_operators_vanish() {
        let c = complex("torus2");
        for level in 0..=1 {
            assert!(c.operator_matrix(OperatorId::IDelDbar { level }).unwrap().is_zero());
            assert!(c.operator_matrix(OperatorId::DFromDiag { level }).unwrap().is_zero());
        }
        assert!(c.operator_matrix(OperatorId::PairIntoDiag { level: 1 }).unwrap().is_zero());
        for degree in 0..=4 {
            assert!(c.operator_matrix(OperatorId::DFull { degree }).unwrap().is_zero());
        }
    }

    #[test]
    fn sl2c_structure_equations() {
        let c = complex("sl2c");
        // d(α∧β) = −2η∧α∧β + 2η∧α∧β = 0
        let ab = Form::monomial(3, idx(&[1, 2]), MultiIndex::empty(), Scalar::one()).unwrap();
        assert!(c.d_form(&ab).is_zero());
        // dη = α∧β ≠ 0
        let eta = Form::monomial(3, idx(&[3]), MultiIndex::empty(), Scalar::one()).unwrap();
        assert!(!c.d_form(&eta).is_zero());
    }

    #[test]
    fn iwasawa_builds() {
        let c = complex("iwasawa");
        // dφ³ = −φ¹∧φ², all other generators closed
        let phi3 = Form::monomial(3, idx(&[3]), MultiIndex::empty(), Scalar::one()).unwrap();
        let d3 = c.d_form(&phi3);
        let expect = Form::monomial(3, idx(&[1, 2]), MultiIndex::empty(), -Scalar::one()).unwrap();
        assert_eq!(d3.parts(), &[expect]);
    }

    #[test]
    fn corrupted_sl2c_rejected() {
        // flip the sign of A^1_{13}: the Jacobi identity fails
        let mut a = BTreeMap::new();
        a.insert((1usize, 1usize, 3usize), Scalar::from_int(-2));
        a.insert((2, 2, 3), Scalar::from_int(-2));
        a.insert((3, 1, 2), Scalar::one());
        let m = LieAlgebraModel::new("sl2c-corrupt", 3, a, BTreeMap::new()).unwrap();
        match GradedComplex::build(m) {
            Err(ModelError::Integrability { generator }) => assert!(generator >= 1),
            other => panic!("expected integrability failure, got {:?}", other.is_ok()),
        }
    }

    #[test]
    fn structural_identities_all_models() {
        for name in bundled_names() {
            let c = complex(name);
            let n = c.dim();
            // ∂² = 0, ∂̄² = 0, ∂∂̄ + ∂̄∂ = 0 on every bidegree basis monomial
            for a in 0..=n {
                for b in 0..=n {
                    for i in MultiIndex::enumerate(n, a) {
                        for j in MultiIndex::enumerate(n, b) {
                            let f = Form::monomial(n, i.clone(), j.clone(), Scalar::one()).unwrap();
                            assert!(c.del(&c.del(&f)).is_zero(), "∂² on {name}");
                            assert!(c.delbar(&c.delbar(&f)).is_zero(), "∂̄² on {name}");
                            let x = c.del(&c.delbar(&f));
                            let y = c.delbar(&c.del(&f));
                            if x.is_zero() {
                                assert!(y.is_zero(), "∂∂̄+∂̄∂ on {name}");
                            } else {
                                assert_eq!(x, y.scale(&-Scalar::one()), "∂∂̄+∂̄∂ on {name}");
                            }
                            assert!(c.d(&c.d_form(&f)).is_zero(), "d² on {name}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sigma_composition_vanishes() {
        // σ_{2p} ∘ σ_{2p−1} = 0 as exact matrices, for every model and p
        for name in bundled_names() {
            let c = complex(name);
            for p in 1..c.dim() {
                let pre = c.operator_matrix(OperatorId::PairIntoDiag { level: p }).unwrap();
                let post = c.operator_matrix(OperatorId::IDelDbar { level: p }).unwrap();
                assert!(post.mul(&pre).is_zero(), "{name}, p={p}");
            }
        }
    }

    #[test]
    fn sl2c_has_nonzero_sigma2() {
        // i∂∂̄ on real (1,1) has rank ≥ 1 (since i∂∂̄(σ₁η∧η̄) ≠ 0)
        let c = complex("sl2c");
        let m = c.operator_matrix(OperatorId::IDelDbar { level: 1 }).unwrap();
        assert!(m.rank() >= 1);
    }

    #[test]
    fn cohomology_examples() {
        // torus n=2: all invariant 1-forms closed, none exact
        let t2 = complex("torus2");
        assert_eq!(t2.cohomology_dim(CohomologyGroup::DeRham(1)).unwrap(), 4);
        assert_eq!(t2.cohomology_dim(CohomologyGroup::DeRham(0)).unwrap(), 1);
        // H_BC^{1,1} = all real (1,1)-forms (operators vanish)
        assert_eq!(t2.cohomology_dim(CohomologyGroup::BottChern(1)).unwrap(), 4);
        assert_eq!(t2.cohomology_dim(CohomologyGroup::Aeppli(1)).unwrap(), 4);

        // SL(2,ℂ): no closed invariant 1-forms
        let s = complex("sl2c");
        assert_eq!(s.cohomology_dim(CohomologyGroup::DeRham(1)).unwrap(), 0);
    }

    #[test]
    fn conjugation_symmetric_kernels() {
        // dim ker ∂̄ on (a,b) equals dim ker ∂ on (b,a)
        for name in ["sl2c", "iwasawa"] {
            let c = complex(name);
            let n = c.dim();
            for a in 0..=n {
                for b in 0..=n {
                    let idx_a = MultiIndex::enumerate(n, a);
                    let idx_b = MultiIndex::enumerate(n, b);
                    let mut delbar_cols = Vec::new();
                    let mut del_cols = Vec::new();
                    for i in &idx_a {
                        for j in &idx_b {
                            let f = Form::monomial(n, i.clone(), j.clone(), Scalar::one()).unwrap();
                            let db = c.delbar(&f);
                            delbar_cols.push(flatten(&db, n, a, b + 1));
                            let g = Form::monomial(n, j.clone(), i.clone(), Scalar::one()).unwrap();
                            let dd = c.del(&g);
                            del_cols.push(flatten(&dd, n, b + 1, a));
                        }
                    }
                    let m1 = Mat::from_cols(delbar_cols);
                    let m2 = Mat::from_cols(del_cols);
                    assert_eq!(m1.rank(), m2.rank(), "{name} ({a},{b})");
                }
            }
        }
    }

    fn flatten(f: &Form, n: usize, p: usize, q: usize) -> Vec<Scalar> {
        let mut out = Vec::new();
        if p > n || q > n {
            return vec![Scalar::zero()];
        }
        for i in MultiIndex::enumerate(n, p) {
            for j in MultiIndex::enumerate(n, q) {
                out.push(f.coeff(&i, &j));
            }
        }
        if out.is_empty() {
            out.push(Scalar::zero());
        }
        out
    }

    #[test]
    fn closed_two_p_forms_satisfy_component_equations() {
        // for any Ψ ∈ Ker d_{2p}: ∂Ψ^{p,p} = −∂̄Ψ^{p+1,p−1} exactly
        for name in ["sl2c", "iwasawa"] {
            let c = complex(name);
            let p = 1usize;
            let d = c.operator_matrix(OperatorId::DFull { degree: 2 * p }).unwrap();
            for kvec in d.kernel() {
                let coords: Vec<BigRational> = kvec.iter().map(|s| s.re.clone()).collect();
                let psi = c.mixed_from_coords(RealSpaceId::Full(2 * p), &coords);
                let omega = psi.part(p, p).cloned().unwrap_or_else(|| Form::zero(3, p, p));
                let high = psi
                    .part(p + 1, p - 1)
                    .cloned()
                    .unwrap_or_else(|| Form::zero(3, p + 1, p - 1));
                let lhs = c.del(&omega);
                let rhs = c.delbar(&high).scale(&-Scalar::one());
                assert_eq!(lhs, rhs, "{name}");
            }
        }
    }

    #[test]
    fn sl2c_balanced_exactness_suite() {
        let c = complex("sl2c");
        let report = verify_sl2c_example(&c).unwrap();
        assert!(report.all_pass());
        let x = report.potential.unwrap();
        assert!(x.is_real());
        // and the torus is refused up front
        let t = complex("torus3");
        assert!(matches!(verify_sl2c_example(&t), Err(ModelError::Mismatch(_))));
    }

    #[test]
    fn metric_powers_have_real_coords_in_spaces() {
        let c = complex("sl2c");
        let g2 = Form::metric_power(3, 2);
        let coords = c.coords_of(RealSpaceId::Diag(2), &MixedForm::from_form(g2.clone())).unwrap();
        let back = c.mixed_from_coords(RealSpaceId::Diag(2), &coords);
        assert_eq!(back.part(2, 2).unwrap(), &g2);
    }

    #[test]
    fn model_json_round_trip() {
        for name in bundled_names() {
            let m = bundled_model(name).unwrap();
            let j = m.to_json();
            let back = LieAlgebraModel::from_json(&j).unwrap();
            assert_eq!(m, back, "{name}");
        }
        // malformed input is rejected cleanly
        assert!(LieAlgebraModel::from_json("{\"name\":\"x\",\"n\":3,\"A\":[{\"k\":1,\"i\":3,\"j\":2,\"re\":\"1\"}]}").is_err());
        assert!(LieAlgebraModel::from_json("not json").is_err());
    }
}
