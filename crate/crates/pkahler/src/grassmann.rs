//! Numerical search over decomposable vectors, plus exact rationalization.
//!
//! The quantity being optimized is the Grassmannian-invariant ratio
//! `eval(Ω, V) / det(M†M)` for `V = v₁∧…∧v_p` with column matrix `M`; its
//! minimum over nonzero simple vectors equals the minimum of `eval` over
//! Gram-normalized ones. With all columns but one frozen, both numerator
//! and denominator are Hermitian quadratic forms in the free column, so the
//! inner step is a generalized eigenproblem and the driver is a multi-start
//! alternating sweep.
//!
//! Nothing that comes out of here is trusted as-is: candidate witnesses are
//! rationalized (continued fractions with a denominator cap) and re-checked
//! in exact arithmetic by the callers.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exterior::{Form, MultiIndex, SimpleCovector, SimpleVector};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub starts: usize,
    pub max_sweeps: usize,
    pub seed: u64,
    pub denom_cap: i64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { starts: 64, max_sweeps: 60, seed: 0, denom_cap: 1_000_000 }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    /// Best (smallest) ratio value found.
    pub value: f64,
    /// Column matrix of the minimizer, Gram-normalized.
    pub columns: Vec<Vec<Complex64>>,
}

/// Float view of a real `(p,p)`-form: the Hermitian matrix `E` with
/// `eval(Ω, V) = Σ_{i,j} E[i][j] P_i conj(P_j)` over Plücker coordinates.
pub struct FloatPpForm {
    n: usize,
    p: usize,
    idxs: Vec<MultiIndex>,
    e: Vec<Vec<Complex64>>,
}

impl FloatPpForm {
    pub fn new(form: &Form) -> FloatPpForm {
        let n = form.n();
        let (p, q) = form.bidegree();
        assert_eq!(p, q, "float view needs a (p,p)-form");
        let idxs = MultiIndex::enumerate(n, p);
        let m = idxs.len();
        let sig_inv = crate::exterior::sigma(p).inv().to_c64();
        let mut e = vec![vec![Complex64::new(0.0, 0.0); m]; m];
        for ((i, j), c) in form.iter() {
            e[i.rank(n)][j.rank(n)] = sig_inv * c.to_c64();
        }
        FloatPpForm { n, p, idxs, e }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    fn plueckers(&self, cols: &[Vec<Complex64>]) -> Vec<Complex64> {
        self.idxs
            .iter()
            .map(|idx| {
                let rows = idx.as_slice();
                let m: Vec<Vec<Complex64>> = rows
                    .iter()
                    .map(|&r| (0..self.p).map(|c| cols[c][r - 1]).collect())
                    .collect();
                cdet(m)
            })
            .collect()
    }

    pub fn eval(&self, cols: &[Vec<Complex64>]) -> f64 {
        let pl = self.plueckers(cols);
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, pi) in pl.iter().enumerate() {
            for (j, pj) in pl.iter().enumerate() {
                let c = self.e[i][j];
                if c.norm_sqr() > 0.0 {
                    acc += c * pi * pj.conj();
                }
            }
        }
        acc.re
    }

    pub fn gram(&self, cols: &[Vec<Complex64>]) -> f64 {
        self.plueckers(cols).iter().map(|p| p.norm_sqr()).sum()
    }

    pub fn ratio(&self, cols: &[Vec<Complex64>]) -> f64 {
        self.eval(cols) / self.gram(cols)
    }

    /// Cofactor coefficients of column `j`: for each Plücker index `i` and
    /// ambient row `a ∈ I_i`, the linear coefficient of `M[a][j]` in `P_i`.
    fn cofactors(&self, cols: &[Vec<Complex64>], j: usize) -> Vec<Vec<(usize, Complex64)>> {
        self.idxs
            .iter()
            .map(|idx| {
                let rows = idx.as_slice();
                rows.iter()
                    .enumerate()
                    .map(|(t, &a)| {
                        let minor: Vec<Vec<Complex64>> = rows
                            .iter()
                            .filter(|&&r| r != a)
                            .map(|&r| {
                                (0..self.p)
                                    .filter(|&c| c != j)
                                    .map(|c| cols[c][r - 1])
                                    .collect()
                            })
                            .collect();
                        let mut v = cdet(minor);
                        if (t + j) % 2 == 1 {
                            v = -v;
                        }
                        (a - 1, v)
                    })
                    .collect()
            })
            .collect()
    }

    /// Hermitian pair `(A, B)` of the numerator/denominator quadratic forms
    /// in column `j`, with the other columns frozen.
    fn column_forms(
        &self,
        cols: &[Vec<Complex64>],
        j: usize,
    ) -> (Vec<Vec<Complex64>>, Vec<Vec<Complex64>>) {
        let cof = self.cofactors(cols, j);
        let n = self.n;
        let mut a = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        let mut b = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for (i, ci) in cof.iter().enumerate() {
            for (jj, cj) in cof.iter().enumerate() {
                let eij = self.e[i][jj];
                if eij.norm_sqr() > 0.0 {
                    for &(ra, va) in ci {
                        for &(rb, vb) in cj {
                            // coefficient of v_ra · conj(v_rb), i.e. A[rb][ra]
                            a[rb][ra] += eij * va * vb.conj();
                        }
                    }
                }
            }
            for &(ra, va) in ci {
                for &(rb, vb) in ci {
                    b[rb][ra] += va * vb.conj();
                }
            }
        }
        (a, b)
    }
}

/// Multi-start alternating minimization of `eval/gram` over simple vectors.
pub fn minimize_eval(form: &Form, cfg: &SearchConfig) -> SearchResult {
    let fp = FloatPpForm::new(form);
    minimize_float(&fp, cfg)
}

pub fn minimize_float(fp: &FloatPpForm, cfg: &SearchConfig) -> SearchResult {
    let n = fp.n;
    let p = fp.p;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut best: Option<SearchResult> = None;

    let consider = |cols: Vec<Vec<Complex64>>, best: &mut Option<SearchResult>| {
        let g = fp.gram(&cols);
        if !(g.is_finite() && g > 1e-12) {
            return;
        }
        let v = fp.eval(&cols) / g;
        if !v.is_finite() {
            return;
        }
        let scale = g.powf(-0.5 / p as f64);
        let normed: Vec<Vec<Complex64>> =
            cols.iter().map(|c| c.iter().map(|z| z * scale).collect()).collect();
        if best.as_ref().is_none_or(|b| v < b.value) {
            *best = Some(SearchResult { value: v, columns: normed });
        }
    };

    // coordinate frames first: exact minima often sit there
    for idx in MultiIndex::enumerate(n, p) {
        let cols: Vec<Vec<Complex64>> = idx
            .as_slice()
            .iter()
            .map(|&i| {
                let mut c = vec![Complex64::new(0.0, 0.0); n];
                c[i - 1] = Complex64::new(1.0, 0.0);
                c
            })
            .collect();
        consider(cols, &mut best);
    }

    if p == n {
        // single point of the Grassmannian
        return best.expect("top-degree frame always valid");
    }

    for _ in 0..cfg.starts {
        let mut cols: Vec<Vec<Complex64>> = (0..p)
            .map(|_| {
                (0..n)
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect()
            })
            .collect();
        let mut last = f64::INFINITY;
        for _sweep in 0..cfg.max_sweeps {
            let mut current = last;
            for j in 0..p {
                let (a, b) = fp.column_forms(&cols, j);
                let Some((val, v)) = min_generalized_eig(&a, &b) else {
                    // degenerate denominator: reshuffle this column
                    for z in cols[j].iter_mut() {
                        *z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    }
                    continue;
                };
                cols[j] = v;
                current = val;
            }
            let converged = (last - current).abs() <= 1e-13 * (1.0 + current.abs());
            last = current;
            if converged {
                break;
            }
        }
        consider(cols, &mut best);
    }

    best.expect("coordinate frames always provide a candidate")
}

/// Maximize `eval/gram`; same machinery on the negated form.
pub fn maximize_eval(form: &Form, cfg: &SearchConfig) -> SearchResult {
    let neg = form.scale(&-Scalar::one());
    let mut r = minimize_eval(&neg, cfg);
    r.value = -r.value;
    r
}

/// Smallest generalized eigenpair of Hermitian `A v = λ B v`, `B ≻ 0`,
/// via the real symmetric embedding. Returns `None` when `B` is too close
/// to singular for a Cholesky factorization.
fn min_generalized_eig(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Option<(f64, Vec<Complex64>)> {
    let n = a.len();
    let ar = embed(a);
    let br = embed(b);
    let l = cholesky(&br)?;
    // C = L⁻¹ A L⁻ᵀ
    let m = 2 * n;
    let mut c = vec![vec![0.0f64; m]; m];
    // solve L X = Ar (forward), then C = X L⁻ᵀ i.e. solve L Cᵀ = Xᵀ
    let mut x = ar;
    for col in 0..m {
        for row in 0..m {
            let mut v = x[row][col];
            for k in 0..row {
                v -= l[row][k] * x[k][col];
            }
            x[row][col] = v / l[row][row];
        }
    }
    for row in 0..m {
        for col in 0..m {
            let mut v = x[row][col];
            for k in 0..col {
                v -= c[row][k] * l[col][k];
            }
            c[row][col] = v / l[col][col];
        }
    }
    let (vals, vecs) = jacobi_eigen(&c, 80);
    let (mut kmin, mut vmin) = (0usize, vals[0]);
    for (k, &v) in vals.iter().enumerate() {
        if v < vmin {
            kmin = k;
            vmin = v;
        }
    }
    // w = eigenvector of C; v = L⁻ᵀ w
    let mut w: Vec<f64> = (0..m).map(|i| vecs[i][kmin]).collect();
    for row in (0..m).rev() {
        let mut v = w[row];
        for k in row + 1..m {
            v -= l[k][row] * w[k];
        }
        w[row] = v / l[row][row];
    }
    let v: Vec<Complex64> = (0..n).map(|i| Complex64::new(w[i], w[n + i])).collect();
    Some((vmin, v))
}

fn embed(h: &[Vec<Complex64>]) -> Vec<Vec<f64>> {
    let n = h.len();
    let mut out = vec![vec![0.0f64; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            // symmetrize to wash out float asymmetry in Hermitian input
            let re = 0.5 * (h[i][j].re + h[j][i].re);
            let im = 0.5 * (h[i][j].im - h[j][i].im);
            out[i][j] = re;
            out[n + i][n + j] = re;
            out[i][n + j] = -im;
            out[n + i][j] = im;
        }
    }
    out
}

fn cholesky(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut l = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                if s <= 1e-12 {
                    return None;
                }
                l[i][j] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    Some(l)
}

/// Cyclic Jacobi for a real symmetric matrix; returns eigenvalues and the
/// orthogonal matrix of eigenvectors (column `k` pairs with eigenvalue `k`).
pub fn jacobi_eigen(a: &[Vec<f64>], max_sweeps: usize) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut v = vec![vec![0.0f64; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _ in 0..max_sweeps {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                off += m[i][j] * m[i][j];
            }
        }
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p][q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let vals = (0..n).map(|i| m[i][i]).collect();
    (vals, v)
}

fn cdet(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let k = m.len();
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut acc = Complex64::new(1.0, 0.0);
    for col in 0..k {
        let mut piv = col;
        for r in col + 1..k {
            if m[r][col].norm_sqr() > m[piv][col].norm_sqr() {
                piv = r;
            }
        }
        if m[piv][col].norm_sqr() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != col {
            m.swap(piv, col);
            acc = -acc;
        }
        let d = m[col][col];
        acc *= d;
        for r in col + 1..k {
            let f = m[r][col] / d;
            for c in col..k {
                let sub = f * m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    acc
}

/// Best rational approximation with bounded denominator (continued
/// fractions / Stern–Brocot descent).
pub fn rationalize(x: f64, max_den: i64) -> BigRational {
    if !x.is_finite() {
        return BigRational::zero();
    }
    let neg = x < 0.0;
    let x = x.abs();
    // convergents of the continued fraction expansion
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut frac = x;
    for _ in 0..64 {
        let a = frac.floor();
        if a > i64::MAX as f64 {
            break;
        }
        let ai = a as i128;
        let p2 = ai * p1 + p0;
        let q2 = ai * q1 + q0;
        if q2 > max_den as i128 {
            // take the best semiconvergent still under the cap
            let k = (max_den as i128 - q0) / q1.max(1);
            let ps = k * p1 + p0;
            let qs = k * q1 + q0;
            let err = |p: i128, q: i128| -> f64 { (p as f64 / q as f64 - x).abs() };
            if qs > 0 && err(ps, qs) < err(p1, q1) {
                p1 = ps;
                q1 = qs;
            }
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let rem = frac - a;
        if rem.abs() < 1e-15 {
            break;
        }
        frac = 1.0 / rem;
    }
    let mut r = BigRational::new(BigInt::from(p1), BigInt::from(q1.max(1)));
    if neg {
        r = -r;
    }
    r
}

/// Rationalize a float column matrix into an exact simple vector, column
/// scaled so entries are order one. Returns `None` for a rank-deficient
/// result.
pub fn rationalize_columns(cols: &[Vec<Complex64>], max_den: i64) -> Option<SimpleVector> {
    let n = cols.first()?.len();
    let mut out = Vec::with_capacity(cols.len());
    for col in cols {
        let scale = col.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        if scale <= 0.0 || !scale.is_finite() {
            return None;
        }
        out.push(
            col.iter()
                .map(|z| {
                    Scalar::new(rationalize(z.re / scale, max_den), rationalize(z.im / scale, max_den))
                })
                .collect::<Vec<_>>(),
        );
    }
    let v = SimpleVector::new(n, out).ok()?;
    (!v.is_zero_vector()).then_some(v)
}

/// Scale each column of a simple vector to clear denominators and divide
/// out integer content: the spanned ray (hence every membership or sign
/// question) is unchanged, while LP arithmetic stays compact.
pub fn integralize(v: &SimpleVector) -> SimpleVector {
    use num_integer::Integer;
    let cols: Vec<Vec<Scalar>> = v
        .columns()
        .iter()
        .map(|col| {
            let mut lcm = BigInt::from(1);
            for e in col {
                lcm = lcm.lcm(e.re.denom());
                lcm = lcm.lcm(e.im.denom());
            }
            let scaled: Vec<Scalar> = col
                .iter()
                .map(|e| {
                    let f = Scalar::from_real(BigRational::from_integer(lcm.clone()));
                    e * &f
                })
                .collect();
            let mut content = BigInt::from(0);
            for e in &scaled {
                content = content.gcd(e.re.numer());
                content = content.gcd(e.im.numer());
            }
            if content > BigInt::from(1) {
                let inv = Scalar::from_real(BigRational::from_integer(content)).inv();
                scaled.iter().map(|e| e * &inv).collect()
            } else {
                scaled
            }
        })
        .collect();
    SimpleVector::new(v.n(), cols).expect("scaling preserves shape")
}

/// Deterministic RNG used throughout for reproducible searches.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mix a context label into a seed so independent subproblems draw
/// independent but reproducible streams.
pub fn mix_seed(seed: u64, label: &str) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100_0000_01b3);
        h = h.rotate_left(23);
    }
    h
}

/// Random exact real `(p,p)`-form with small integer-over-small-denominator
/// coefficients; used by randomized suites and atom seeding.
pub fn random_real_pp_form(n: usize, p: usize, rng: &mut ChaCha8Rng, span: i64) -> Form {
    let sig = crate::exterior::sigma(p);
    let idxs = MultiIndex::enumerate(n, p);
    let mut f = Form::zero(n, p, p);
    let draw = |rng: &mut ChaCha8Rng| -> BigRational {
        BigRational::new(BigInt::from(rng.gen_range(-span..=span)), BigInt::from(rng.gen_range(1..=3i64)))
    };
    for (a, i) in idxs.iter().enumerate() {
        for j in idxs.iter().skip(a) {
            if i == j {
                let x = draw(rng);
                f.add_coeff(i.clone(), j.clone(), &sig * &Scalar::from_real(x));
            } else {
                let z = Scalar::new(draw(rng), draw(rng));
                f.add_coeff(i.clone(), j.clone(), &sig * &z);
                f.add_coeff(j.clone(), i.clone(), &sig * &z.conj());
            }
        }
    }
    f
}

/// Random exact simple vector with small integer entries, never zero.
pub fn random_simple_vector(n: usize, p: usize, rng: &mut ChaCha8Rng, span: i64) -> SimpleVector {
    loop {
        let cols: Vec<Vec<Scalar>> = (0..p)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        Scalar::new(
                            BigRational::from_integer(BigInt::from(rng.gen_range(-span..=span))),
                            BigRational::from_integer(BigInt::from(rng.gen_range(-span..=span))),
                        )
                    })
                    .collect()
            })
            .collect();
        let v = SimpleVector::new(n, cols).expect("shape is valid");
        if !v.is_zero_vector() {
            return v;
        }
    }
}

/// Random exact simple covector (rows), never zero.
pub fn random_simple_covector(n: usize, p: usize, rng: &mut ChaCha8Rng, span: i64) -> SimpleCovector {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..p)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        Scalar::new(
                            BigRational::from_integer(BigInt::from(rng.gen_range(-span..=span))),
                            BigRational::from_integer(BigInt::from(rng.gen_range(-span..=span))),
                        )
                    })
                    .collect()
            })
            .collect();
        let v = SimpleCovector::new(n, rows).expect("shape is valid");
        if !v.is_zero_covector() {
            return v;
        }
    }
}

/// Rationalized random unitary frame: QR of a random complex Gaussian,
/// entries snapped to denominators ≤ `den`. Useful as off-axis atom seeds.
pub fn random_unitary_frame(n: usize, p: usize, rng: &mut ChaCha8Rng, den: i64) -> SimpleVector {
    loop {
        let mut cols: Vec<Vec<Complex64>> = (0..p)
            .map(|_| {
                (0..n)
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect()
            })
            .collect();
        // Gram–Schmidt
        for j in 0..p {
            for k in 0..j {
                let dot: Complex64 =
                    (0..n).map(|r| cols[k][r].conj() * cols[j][r]).sum();
                for r in 0..n {
                    let sub = dot * cols[k][r];
                    cols[j][r] -= sub;
                }
            }
            let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-6 {
                continue;
            }
            for z in cols[j].iter_mut() {
                *z /= norm;
            }
        }
        if let Some(v) = rationalize_columns(&cols, den) {
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::sigma;
    use num_traits::Signed;

    fn idx(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rationalize_basics() {
        assert_eq!(rationalize(0.5, 1000), BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(rationalize(-0.25, 1000), BigRational::new(BigInt::from(-1), BigInt::from(4)));
        let pi = rationalize(std::f64::consts::PI, 1000);
        // 355/113 is the best below the cap
        assert_eq!(pi, BigRational::new(BigInt::from(355), BigInt::from(113)));
        assert_eq!(rationalize(3.0, 10), BigRational::from_integer(BigInt::from(3)));
    }

    #[test]
    fn jacobi_small() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 2.0]];
        let (vals, _) = jacobi_eigen(&a, 50);
        let mut v = vals.clone();
        v.sort_by(f64::total_cmp);
        assert!((v[0] - 1.0).abs() < 1e-12);
        assert!((v[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn metric_minimum_is_factorial() {
        // eval(γ^p, V) = p! · Gram det, so the ratio is constant p!
        for (n, p) in [(2usize, 1usize), (3, 1), (3, 2)] {
            let g = Form::metric_power(n, p);
            let r = minimize_eval(&g, &SearchConfig { starts: 8, ..Default::default() });
            let expect: f64 = (1..=p).product::<usize>() as f64;
            assert!((r.value - expect).abs() < 1e-9, "n={n} p={p}: {}", r.value);
        }
    }

    #[test]
    fn finds_negative_direction() {
        // σ₁(φ₁∧φ̄₁ − φ₂∧φ̄₂) dips to −1 at e₂
        let mut f = Form::monomial(2, idx(&[1]), idx(&[1]), sigma(1)).unwrap();
        f.add_coeff(idx(&[2]), idx(&[2]), -sigma(1));
        let r = minimize_eval(&f, &SearchConfig { starts: 8, ..Default::default() });
        assert!((r.value + 1.0).abs() < 1e-9, "{}", r.value);
        let v = rationalize_columns(&r.columns, 1000).unwrap();
        let exact = f.evaluate(&v).unwrap();
        assert!(exact.re.is_negative());
    }

    #[test]
    fn random_forms_are_real() {
        let mut rng = seeded_rng(7);
        for _ in 0..20 {
            let f = random_real_pp_form(3, 2, &mut rng, 4);
            assert!(f.is_real());
        }
    }

    #[test]
    fn unitary_frames_are_nonzero() {
        let mut rng = seeded_rng(3);
        for _ in 0..5 {
            let v = random_unitary_frame(3, 2, &mut rng, 100);
            assert!(!v.is_zero_vector());
        }
    }
}
