//! Exact two-phase primal simplex over big rationals.
//!
//! Solves `min cᵀx  s.t.  Ax = b, x ≥ 0` with Bland's rule (no cycling).
//! Unit columns of the input are crashed into the initial basis, so
//! artificial variables (and phase 1 entirely) are needed only for rows
//! without a ready slack. Infeasibility comes back with an exact Farkas
//! certificate `y: yᵀA ≤ 0, yᵀb > 0`; optima come back with exact
//! equality duals; unbounded problems return a feasible ray. Problem
//! sizes here are desk scale, so a dense tableau is the right tool.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone)]
pub enum LpOutcome {
    Optimal {
        x: Vec<BigRational>,
        objective: BigRational,
        /// Duals `y` of the equality constraints: `yᵀA ≤ cᵀ` with equality
        /// on basic columns, `yᵀb = objective`.
        duals: Vec<BigRational>,
    },
    Infeasible {
        /// `y` with `yᵀA ≤ 0` and `yᵀb > 0`.
        farkas: Vec<BigRational>,
    },
    Unbounded {
        /// A feasible ray: `A·ray = 0`, `ray ≥ 0`, `cᵀray < 0`.
        ray: Vec<BigRational>,
    },
}

struct Tableau {
    pivots: usize,
    /// m × (n + n_art + 1): x-columns, artificial columns, rhs.
    rows: Vec<Vec<BigRational>>,
    /// reduced-cost row, same width; last entry is −objective.
    cost: Vec<BigRational>,
    basic: Vec<usize>,
    n: usize,
    m: usize,
    n_art: usize,
    /// artificial column `t` is the unit column of row `art_rows[t]`.
    art_rows: Vec<usize>,
}

impl Tableau {
    fn rhs_col(&self) -> usize {
        self.n + self.n_art
    }

    fn pivot(&mut self, r: usize, j: usize) {
        self.pivots += 1;
        let w = self.rows[r].len();
        let piv = self.rows[r][j].clone();
        debug_assert!(!piv.is_zero());
        for v in self.rows[r].iter_mut() {
            *v /= &piv;
        }
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][j].is_zero() {
                continue;
            }
            let f = self.rows[i][j].clone();
            for t in 0..w {
                let sub = &f * &self.rows[r][t];
                self.rows[i][t] -= sub;
            }
        }
        if !self.cost[j].is_zero() {
            let f = self.cost[j].clone();
            for t in 0..w {
                let sub = &f * &self.rows[r][t];
                self.cost[t] -= sub;
            }
        }
        self.basic[r] = j;
    }

    /// Bland-rule simplex on the current cost row, restricted to columns
    /// `< allowed_cols` (no cycling; on these instances it also keeps the
    /// rational entry growth far smaller than eager pricing does). On
    /// unboundedness returns the entering column of the unbounded ray.
    fn optimize(&mut self, allowed_cols: usize) -> Result<(), usize> {
        let rhs = self.rhs_col();
        loop {
            let Some(j) = (0..allowed_cols).find(|&j| self.cost[j].is_negative()) else {
                return Ok(());
            };
            // leaving: min ratio, ties by smallest basic variable
            let mut best: Option<(usize, BigRational)> = None;
            for r in 0..self.m {
                if !self.rows[r][j].is_positive() {
                    continue;
                }
                let ratio = &self.rows[r][rhs] / &self.rows[r][j];
                match &best {
                    None => best = Some((r, ratio)),
                    Some((br, bratio)) => {
                        if ratio < *bratio
                            || (ratio == *bratio && self.basic[r] < self.basic[*br])
                        {
                            best = Some((r, ratio));
                        }
                    }
                }
            }
            let Some((r, _)) = best else {
                return Err(j);
            };
            self.pivot(r, j);
        }
    }

    /// Reduced costs for a cost vector over the x+artificial columns.
    fn recompute_cost(&mut self, c: &[BigRational]) {
        let w = self.rhs_col() + 1;
        let obj = |j: usize| -> BigRational {
            c.get(j).cloned().unwrap_or_else(BigRational::zero)
        };
        self.cost = (0..w)
            .map(|t| {
                let mut acc = if t < w - 1 { obj(t) } else { BigRational::zero() };
                for r in 0..self.m {
                    let cb = obj(self.basic[r]);
                    if !cb.is_zero() {
                        acc -= &cb * &self.rows[r][t];
                    }
                }
                acc
            })
            .collect();
    }

    /// Equality duals of the normalized system for the current basis:
    /// solve `Bᵀ y = c_B` by Gaussian elimination.
    fn duals(&self, norm_a: &[Vec<BigRational>], c: &[BigRational]) -> Vec<BigRational> {
        let m = self.m;
        let col_entry = |var: usize, row: usize| -> BigRational {
            if var < self.n {
                norm_a[row][var].clone()
            } else if self.art_rows[var - self.n] == row {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        };
        // equation i: Σ_r B[r][i] · y_r = c_B[i]
        let mut sys: Vec<Vec<BigRational>> = (0..m)
            .map(|i| {
                let var = self.basic[i];
                let mut row: Vec<BigRational> = (0..m).map(|r| col_entry(var, r)).collect();
                row.push(c.get(var).cloned().unwrap_or_else(BigRational::zero));
                row
            })
            .collect();
        let mut y = vec![BigRational::zero(); m];
        let mut pivot_of_col = vec![usize::MAX; m];
        let mut used = vec![false; m];
        for col in 0..m {
            let Some(pr) = (0..m).find(|&r| !used[r] && !sys[r][col].is_zero()) else {
                continue;
            };
            used[pr] = true;
            pivot_of_col[col] = pr;
            let inv = sys[pr][col].clone();
            for t in col..=m {
                sys[pr][t] = &sys[pr][t] / &inv;
            }
            for r in 0..m {
                if r != pr && !sys[r][col].is_zero() {
                    let f = sys[r][col].clone();
                    for t in col..=m {
                        let sub = &f * &sys[pr][t];
                        sys[r][t] -= sub;
                    }
                }
            }
        }
        for col in 0..m {
            if pivot_of_col[col] != usize::MAX {
                y[col] = sys[pivot_of_col[col]][m].clone();
            }
        }
        y
    }
}

/// Solve `min cᵀx, Ax = b, x ≥ 0` with exact outcomes.
///
/// A floating-point simplex proposes a final basis first; the basis is
/// refactorized in exact arithmetic and its optimality (resp. Farkas or
/// ray property) is verified exactly. Only when that verification fails
/// does the fully exact tableau run. Every returned outcome is exact
/// regardless of the path taken.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> LpOutcome {
    match solve_verified(a, b, c) {
        Some(out) => out,
        None => solve_exact(a, b, c),
    }
}

/// The float-then-verify pipeline with warm-started exact repairs, but
/// without the cold exact fallback. `None` means the caller should either
/// perturb the problem or accept the cost of [`solve_exact`].
pub fn solve_verified(
    a: &[Vec<BigRational>],
    b: &[BigRational],
    c: &[BigRational],
) -> Option<LpOutcome> {
    match float_then_verify(a, b, c) {
        Ok(out) => return Some(out),
        Err(FloatFailure::WarmStart { basis, art_rows }) => {
            if let Some(out) = solve_exact_warm(a, b, c, &basis, &art_rows) {
                return Some(out);
            }
            if std::env::var("PKK_TRACE").is_ok() {
                eprintln!("[lp-float] warm start failed");
            }
        }
        Err(FloatFailure::DualWarmStart { basis, art_rows }) => {
            if let Some(out) = solve_exact_dual_warm(a, b, c, &basis, &art_rows) {
                return Some(out);
            }
            if std::env::var("PKK_TRACE").is_ok() {
                eprintln!("[lp-float] dual warm start failed");
            }
        }
        Err(FloatFailure::Cold(why)) => {
            if std::env::var("PKK_TRACE").is_ok() {
                eprintln!("[lp-float] fallback: {why}");
            }
        }
    }
    None
}

enum FloatFailure {
    /// The float basis is exactly primal feasible but not dual feasible:
    /// resume exact phase 2 from it.
    WarmStart { basis: Vec<usize>, art_rows: Vec<usize> },
    /// The float basis is exactly dual feasible but not primal feasible:
    /// repair with exact dual-simplex steps.
    DualWarmStart { basis: Vec<usize>, art_rows: Vec<usize> },
    Cold(&'static str),
}

/// The fully exact two-phase tableau (fallback path).
pub fn solve_exact(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    assert!(a.iter().all(|row| row.len() == n), "constraint width mismatch");
    assert_eq!(b.len(), m, "rhs length mismatch");

    // normalize rows so the rhs is nonnegative, remembering the flips
    let mut flips = vec![false; m];
    let mut norm_a: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut norm_b: Vec<BigRational> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        flips[i] = flip;
        norm_a.push(if flip {
            a[i].iter().map(|v| -v.clone()).collect()
        } else {
            a[i].clone()
        });
        norm_b.push(if flip { -b[i].clone() } else { b[i].clone() });
    }

    // crash basis from unit columns (right to left, so slacks win)
    let mut row_basis: Vec<Option<usize>> = vec![None; m];
    for j in (0..n).rev() {
        let mut unit_row = None;
        let mut ok = true;
        for i in 0..m {
            if norm_a[i][j].is_zero() {
                continue;
            }
            if norm_a[i][j].is_one() && unit_row.is_none() {
                unit_row = Some(i);
            } else {
                ok = false;
                break;
            }
        }
        if ok {
            if let Some(i) = unit_row {
                if row_basis[i].is_none() {
                    row_basis[i] = Some(j);
                }
            }
        }
    }
    let art_rows: Vec<usize> = (0..m).filter(|&i| row_basis[i].is_none()).collect();
    let n_art = art_rows.len();

    let width = n + n_art + 1;
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<BigRational> = Vec::with_capacity(width);
        row.extend(norm_a[i].iter().cloned());
        for &r in &art_rows {
            row.push(if r == i { BigRational::one() } else { BigRational::zero() });
        }
        row.push(norm_b[i].clone());
        rows.push(row);
    }
    let mut basic: Vec<usize> = Vec::with_capacity(m);
    let mut art_seen = 0usize;
    for rb in &row_basis {
        match rb {
            Some(j) => basic.push(*j),
            None => {
                basic.push(n + art_seen);
                art_seen += 1;
            }
        }
    }
    let mut t = Tableau {
        pivots: 0,
        rows,
        cost: vec![BigRational::zero(); width],
        basic,
        n,
        m,
        n_art,
        art_rows,
    };
    // eliminate crash columns from the other rows
    for r in 0..m {
        let j = t.basic[r];
        if j >= n {
            continue;
        }
        for i in 0..m {
            if i != r && !t.rows[i][j].is_zero() {
                let f = t.rows[i][j].clone();
                let w = t.rows[i].len();
                for col in 0..w {
                    let sub = &f * &t.rows[r][col];
                    t.rows[i][col] -= sub;
                }
            }
        }
    }

    // phase 1 (only when artificials exist)
    if n_art > 0 {
        let phase1: Vec<BigRational> = (0..n + n_art)
            .map(|j| if j >= n { BigRational::one() } else { BigRational::zero() })
            .collect();
        t.recompute_cost(&phase1);
        let ok = t.optimize(n + n_art);
        debug_assert!(ok.is_ok(), "phase 1 cannot be unbounded");
        let rhs = t.rhs_col();
        if (-t.cost[rhs].clone()).is_positive() {
            let y = t.duals(&norm_a, &phase1);
            let farkas = (0..m)
                .map(|i| if flips[i] { -y[i].clone() } else { y[i].clone() })
                .collect();
            return LpOutcome::Infeasible { farkas };
        }
        // drive residual artificials out of the basis where possible;
        // fully zero rows are redundant and stay parked at level zero
        for r in 0..m {
            if t.basic[r] < n {
                continue;
            }
            if let Some(j) = (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, j);
            }
        }
    }

    finish_phase2(t, &norm_a, &flips, c)
}

/// Phase 2 plus outcome extraction from a primal-feasible tableau.
fn finish_phase2(
    mut t: Tableau,
    norm_a: &[Vec<BigRational>],
    flips: &[bool],
    c: &[BigRational],
) -> LpOutcome {
    let n = t.n;
    let m = t.m;
    let full: Vec<BigRational> = (0..n + t.n_art)
        .map(|j| if j < n { c[j].clone() } else { BigRational::zero() })
        .collect();
    t.recompute_cost(&full);
    if let Err(enter) = t.optimize(n) {
        let mut ray = vec![BigRational::zero(); n];
        ray[enter] = BigRational::one();
        for r in 0..t.m {
            if t.basic[r] < n && !t.rows[r][enter].is_zero() {
                ray[t.basic[r]] = -t.rows[r][enter].clone();
            }
        }
        return LpOutcome::Unbounded { ray };
    }

    let rhs = t.rhs_col();
    if std::env::var("PKK_TRACE").is_ok() {
        let bits: usize = t
            .rows
            .iter()
            .flatten()
            .map(|v| v.numer().bits() as usize + v.denom().bits() as usize)
            .max()
            .unwrap_or(0);
        eprintln!("[lp] {m}x{n} arts {} pivots {} max-entry-bits {bits}", t.n_art, t.pivots);
    }
    let mut x = vec![BigRational::zero(); n];
    for r in 0..m {
        if t.basic[r] < n {
            x[t.basic[r]] = t.rows[r][rhs].clone();
        }
    }
    let objective = -t.cost[rhs].clone();
    let y = t.duals(norm_a, &full);
    let duals = (0..m)
        .map(|i| if flips[i] { -y[i].clone() } else { y[i].clone() })
        .collect();
    LpOutcome::Optimal { x, objective, duals }
}

/// Exact phase 2 from a proposed (exactly primal-feasible) basis.
fn solve_exact_warm(
    a: &[Vec<BigRational>],
    b: &[BigRational],
    c: &[BigRational],
    basis: &[usize],
    art_rows: &[usize],
) -> Option<LpOutcome> {
    let m = a.len();
    let n = c.len();
    let n_art = art_rows.len();
    let mut flips = vec![false; m];
    let mut norm_a: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut norm_b: Vec<BigRational> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        flips[i] = flip;
        norm_a.push(if flip {
            a[i].iter().map(|v| -v.clone()).collect()
        } else {
            a[i].clone()
        });
        norm_b.push(if flip { -b[i].clone() } else { b[i].clone() });
    }
    let width = n + n_art + 1;
    let rows: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row: Vec<BigRational> = Vec::with_capacity(width);
            row.extend(norm_a[i].iter().cloned());
            for &r in art_rows {
                row.push(if r == i { BigRational::one() } else { BigRational::zero() });
            }
            row.push(norm_b[i].clone());
            row
        })
        .collect();
    let mut t = Tableau {
        pivots: 0,
        rows,
        cost: vec![BigRational::zero(); width],
        basic: basis.to_vec(),
        n,
        m,
        n_art,
        art_rows: art_rows.to_vec(),
    };
    // canonicalize the proposed basis; a zero pivot means it is not a basis
    for r in 0..m {
        let j = t.basic[r];
        if t.rows[r][j].is_zero() {
            // try to repair by swapping with a later row sharing the column
            let swap = (r + 1..m).find(|&i| !t.rows[i][j].is_zero())?;
            t.rows.swap(r, swap);
        }
        let piv = t.rows[r][j].clone();
        for v in t.rows[r].iter_mut() {
            *v /= &piv;
        }
        for i in 0..m {
            if i != r && !t.rows[i][j].is_zero() {
                let f = t.rows[i][j].clone();
                for col in 0..width {
                    let sub = &f * &t.rows[r][col];
                    t.rows[i][col] -= sub;
                }
            }
        }
    }
    // the proposed basis must be exactly primal feasible
    let rhs = t.rhs_col();
    if (0..m).any(|r| t.rows[r][rhs].is_negative()) {
        return None;
    }
    Some(finish_phase2(t, &norm_a, &flips, c))
}

/// Pure feasibility: find `x ≥ 0` with `Ax = b`, or an exact Farkas refutation.
pub fn feasible(a: &[Vec<BigRational>], b: &[BigRational]) -> LpOutcome {
    let n = a.first().map_or(0, |r| r.len());
    solve(a, b, &vec![BigRational::zero(); n])
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::Rng;

    fn r(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn check_farkas(a: &[Vec<BigRational>], b: &[BigRational], y: &[BigRational]) {
        let n = a[0].len();
        for j in 0..n {
            let mut acc = BigRational::zero();
            for i in 0..a.len() {
                acc += &y[i] * &a[i][j];
            }
            assert!(!acc.is_positive(), "Farkas violated on column {j}");
        }
        let mut yb = BigRational::zero();
        for i in 0..a.len() {
            yb += &y[i] * &b[i];
        }
        assert!(yb.is_positive(), "Farkas does not separate");
    }

    fn check_duals(
        a: &[Vec<BigRational>],
        b: &[BigRational],
        c: &[BigRational],
        duals: &[BigRational],
        objective: &BigRational,
    ) {
        // yᵀb = objective and yᵀA ≤ cᵀ
        let mut yb = BigRational::zero();
        for i in 0..a.len() {
            yb += &duals[i] * &b[i];
        }
        assert_eq!(&yb, objective, "duality gap");
        for j in 0..c.len() {
            let mut ya = BigRational::zero();
            for i in 0..a.len() {
                ya += &duals[i] * &a[i][j];
            }
            assert!(ya <= c[j], "dual infeasible on column {j}");
        }
    }

    #[test]
    fn small_optimum_with_duals() {
        // min -x1 - 2x2 s.t. x1 + x2 + s1 = 4, x1 + 3x2 + s2 = 6
        let a = vec![
            vec![r(1), r(1), r(1), r(0)],
            vec![r(1), r(3), r(0), r(1)],
        ];
        let b = vec![r(4), r(6)];
        let c = vec![r(-1), r(-2), r(0), r(0)];
        match solve(&a, &b, &c) {
            LpOutcome::Optimal { x, objective, duals } => {
                assert_eq!(x[0], r(3));
                assert_eq!(x[1], r(1));
                assert_eq!(objective, r(-5));
                check_duals(&a, &b, &c, &duals, &objective);
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_gives_farkas() {
        let a = vec![vec![r(1), r(1)], vec![r(1), r(1)]];
        let b = vec![r(1), r(2)];
        match feasible(&a, &b) {
            LpOutcome::Infeasible { farkas } => check_farkas(&a, &b, &farkas),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_negative_rhs() {
        let a = vec![vec![r(1)]];
        let b = vec![r(-1)];
        match feasible(&a, &b) {
            LpOutcome::Infeasible { farkas } => check_farkas(&a, &b, &farkas),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn unbounded_detected_with_ray() {
        // min −x1 with x1 − x2 = 0: ray (t, t)
        let a = vec![vec![r(1), r(-1)]];
        let b = vec![r(0)];
        let c = vec![r(-1), r(0)];
        match solve(&a, &b, &c) {
            LpOutcome::Unbounded { ray } => {
                assert_eq!(&ray[0] - &ray[1], r(0));
                assert!(ray.iter().all(|v| !v.is_negative()));
                assert!((-&ray[0]).is_negative());
            }
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_redundant_rows() {
        let a = vec![vec![r(1), r(1)], vec![r(1), r(1)]];
        let b = vec![r(2), r(2)];
        let c = vec![r(1), r(0)];
        match solve(&a, &b, &c) {
            LpOutcome::Optimal { x, objective, .. } => {
                assert_eq!(objective, r(0));
                assert_eq!(&x[0] + &x[1], r(2));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn randomized_against_certificates() {
        // every outcome of a random LP must carry an exactly checkable
        // certificate: optimal duals, Farkas vector, or feasible ray
        let mut rng = crate::grassmann::seeded_rng(151);
        for trial in 0..200 {
            let m = rng.gen_range(1..=4usize);
            let n = rng.gen_range(1..=6usize);
            let a: Vec<Vec<BigRational>> = (0..m)
                .map(|_| (0..n).map(|_| r(rng.gen_range(-3i64..=3))).collect())
                .collect();
            let b: Vec<BigRational> = (0..m).map(|_| r(rng.gen_range(-3i64..=3))).collect();
            let c: Vec<BigRational> = (0..n).map(|_| r(rng.gen_range(-3i64..=3))).collect();
            match solve(&a, &b, &c) {
                LpOutcome::Optimal { x, objective, duals } => {
                    for i in 0..m {
                        let mut ax = BigRational::zero();
                        for j in 0..n {
                            ax += &a[i][j] * &x[j];
                        }
                        assert_eq!(ax, b[i], "trial {trial} row {i}");
                    }
                    assert!(x.iter().all(|v| !v.is_negative()), "trial {trial}");
                    let mut cx = BigRational::zero();
                    for j in 0..n {
                        cx += &c[j] * &x[j];
                    }
                    assert_eq!(cx, objective, "trial {trial}");
                    check_duals(&a, &b, &c, &duals, &objective);
                }
                LpOutcome::Infeasible { farkas } => check_farkas(&a, &b, &farkas),
                LpOutcome::Unbounded { ray } => {
                    for i in 0..m {
                        let mut ar = BigRational::zero();
                        for j in 0..n {
                            ar += &a[i][j] * &ray[j];
                        }
                        assert!(ar.is_zero(), "trial {trial}: ray not in kernel");
                    }
                    assert!(ray.iter().all(|v| !v.is_negative()));
                    let mut cr = BigRational::zero();
                    for j in 0..n {
                        cr += &c[j] * &ray[j];
                    }
                    assert!(cr.is_negative(), "trial {trial}: ray not improving");
                }
            }
        }
    }
}

// ---- float-first path -------------------------------------------------

use num_traits::ToPrimitive;

const FEPS: f64 = 1e-9;

enum FloatStatus {
    Optimal,
    Infeasible,
    Unbounded { entering: usize },
    GaveUp,
}

/// Dense float simplex on the normalized system; returns the final basis
/// (variable indices, artificials as `n + t`) and status.
fn float_simplex(
    norm_a: &[Vec<f64>],
    norm_b: &[f64],
    c: &[f64],
    art_rows: &[usize],
    start_basis: &[usize],
) -> (Vec<usize>, FloatStatus) {
    let m = norm_a.len();
    let n = c.len();
    let n_art = art_rows.len();
    let width = n + n_art + 1;
    let mut rows: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let mut row = Vec::with_capacity(width);
            row.extend(norm_a[i].iter().copied());
            for &r in art_rows {
                row.push(if r == i { 1.0 } else { 0.0 });
            }
            row.push(norm_b[i]);
            row
        })
        .collect();
    let mut basic = start_basis.to_vec();

    let canonicalize = |rows: &mut Vec<Vec<f64>>, basic: &[usize]| {
        for r in 0..m {
            let j = basic[r];
            let piv = rows[r][j];
            if piv.abs() < FEPS {
                continue;
            }
            for v in rows[r].iter_mut() {
                *v /= piv;
            }
            for i in 0..m {
                if i != r && rows[i][j].abs() > 0.0 {
                    let f = rows[i][j];
                    for t in 0..width {
                        let sub = f * rows[r][t];
                        rows[i][t] -= sub;
                    }
                }
            }
        }
    };
    canonicalize(&mut rows, &basic);

    let run = |rows: &mut Vec<Vec<f64>>,
               basic: &mut Vec<usize>,
               cost: &[f64],
               allowed: usize|
     -> FloatStatus {
        let cap = 60 * (m + allowed) + 200;
        for _ in 0..cap {
            // reduced costs on the fly: d_j = c_j − Σ c_B[r]·rows[r][j]
            let mut enter = None;
            let mut best = -FEPS;
            for j in 0..allowed {
                if basic.contains(&j) {
                    continue;
                }
                let mut d = cost[j];
                for r in 0..m {
                    let cb = cost[basic[r]];
                    if cb != 0.0 {
                        d -= cb * rows[r][j];
                    }
                }
                if d < best {
                    best = d;
                    enter = Some(j);
                }
            }
            let Some(j) = enter else { return FloatStatus::Optimal };
            // two-pass ratio test: among near-minimal ratios prefer the
            // largest pivot magnitude (keeps float bases well conditioned)
            let mut min_ratio = f64::INFINITY;
            for r in 0..m {
                if rows[r][j] > FEPS {
                    min_ratio = min_ratio.min(rows[r][width - 1] / rows[r][j]);
                }
            }
            if min_ratio.is_infinite() {
                return FloatStatus::Unbounded { entering: j };
            }
            let mut r_best: Option<usize> = None;
            let tol_ratio = min_ratio + 1e-9 * (1.0 + min_ratio.abs());
            for r in 0..m {
                if rows[r][j] > FEPS && rows[r][width - 1] / rows[r][j] <= tol_ratio {
                    if r_best.is_none_or(|rb| rows[r][j] > rows[rb][j]) {
                        r_best = Some(r);
                    }
                }
            }
            let r = r_best.expect("a row attains the minimum ratio");
            let piv = rows[r][j];
            for v in rows[r].iter_mut() {
                *v /= piv;
            }
            for i in 0..m {
                if i != r && rows[i][j].abs() > 0.0 {
                    let f = rows[i][j];
                    for t in 0..width {
                        let sub = f * rows[r][t];
                        rows[i][t] -= sub;
                    }
                }
            }
            basic[r] = j;
        }
        FloatStatus::GaveUp
    };

    // phase 1 when artificials are present
    if n_art > 0 {
        let mut phase1 = vec![0.0; n + n_art];
        for v in phase1.iter_mut().skip(n) {
            *v = 1.0;
        }
        match run(&mut rows, &mut basic, &phase1, n + n_art) {
            FloatStatus::Optimal => {
                let obj: f64 = (0..m)
                    .map(|r| if basic[r] >= n { rows[r][width - 1] } else { 0.0 })
                    .sum();
                if obj > 1e-7 {
                    return (basic, FloatStatus::Infeasible);
                }
            }
            FloatStatus::GaveUp => return (basic, FloatStatus::GaveUp),
            _ => return (basic, FloatStatus::GaveUp),
        }
    }
    let mut full = vec![0.0; n + n_art];
    full[..n].copy_from_slice(c);
    let status = run(&mut rows, &mut basic, &full, n);
    (basic, status)
}

/// Exact verification of a proposed basis; returns the exact outcome or
/// `None` when the proposal does not check out.
fn float_then_verify(
    a: &[Vec<BigRational>],
    b: &[BigRational],
    c: &[BigRational],
) -> Result<LpOutcome, FloatFailure> {
    use FloatFailure::Cold;
    let m = a.len();
    let n = c.len();
    if m == 0 {
        return Err(Cold("empty system"));
    }
    let mut flips = vec![false; m];
    let mut norm_a: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut norm_b: Vec<BigRational> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        flips[i] = flip;
        norm_a.push(if flip {
            a[i].iter().map(|v| -v.clone()).collect()
        } else {
            a[i].clone()
        });
        norm_b.push(if flip { -b[i].clone() } else { b[i].clone() });
    }
    // crash basis identical to the exact path
    let mut row_basis: Vec<Option<usize>> = vec![None; m];
    for j in (0..n).rev() {
        let mut unit_row = None;
        let mut ok = true;
        for i in 0..m {
            if norm_a[i][j].is_zero() {
                continue;
            }
            if norm_a[i][j].is_one() && unit_row.is_none() {
                unit_row = Some(i);
            } else {
                ok = false;
                break;
            }
        }
        if ok {
            if let Some(i) = unit_row {
                if row_basis[i].is_none() {
                    row_basis[i] = Some(j);
                }
            }
        }
    }
    let art_rows: Vec<usize> = (0..m).filter(|&i| row_basis[i].is_none()).collect();
    let mut start_basis = Vec::with_capacity(m);
    let mut art_seen = 0usize;
    for rb in &row_basis {
        match rb {
            Some(j) => start_basis.push(*j),
            None => {
                start_basis.push(n + art_seen);
                art_seen += 1;
            }
        }
    }

    let fa: Vec<Vec<f64>> = norm_a
        .iter()
        .map(|row| row.iter().map(|v| v.to_f64().unwrap_or(0.0)).collect())
        .collect();
    let fb: Vec<f64> = norm_b.iter().map(|v| v.to_f64().unwrap_or(0.0)).collect();
    let fc: Vec<f64> = c.iter().map(|v| v.to_f64().unwrap_or(0.0)).collect();
    let (basis, status) = float_simplex(&fa, &fb, &fc, &art_rows, &start_basis);

    // exact basis column access (artificial t is the unit column of its row)
    let col_entry = |var: usize, row: usize| -> BigRational {
        if var < n {
            norm_a[row][var].clone()
        } else if art_rows[var - n] == row {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    };
    // solve B·x = rhs exactly; returns None on singular basis
    let basis_solve = |rhs: &[BigRational]| -> Option<Vec<BigRational>> {
        let mut sys: Vec<Vec<BigRational>> = (0..m)
            .map(|r| {
                let mut row: Vec<BigRational> =
                    (0..m).map(|i| col_entry(basis[i], r)).collect();
                row.push(rhs[r].clone());
                row
            })
            .collect();
        gauss_solve(&mut sys)
    };
    // solve Bᵀ·y = c_B exactly
    let basis_solve_t = |cost_of: &dyn Fn(usize) -> BigRational| -> Option<Vec<BigRational>> {
        let mut sys: Vec<Vec<BigRational>> = (0..m)
            .map(|i| {
                let mut row: Vec<BigRational> =
                    (0..m).map(|r| col_entry(basis[i], r)).collect();
                row.push(cost_of(basis[i]));
                row
            })
            .collect();
        gauss_solve(&mut sys)
    };

    match status {
        FloatStatus::Optimal => {
            // no artificial may remain basic at a nonzero level
            let xb = basis_solve(&norm_b).ok_or(Cold("singular basis"))?;
            if xb.iter().any(Signed::is_negative) {
                return Err(FloatFailure::DualWarmStart {
                    basis: basis.clone(),
                    art_rows: art_rows.clone(),
                });
            }
            for (i, &v) in basis.iter().enumerate() {
                if v >= n && !xb[i].is_zero() {
                    return Err(Cold("artificial basic at nonzero level"));
                }
            }
            let cost_of = |j: usize| -> BigRational {
                if j < n {
                    c[j].clone()
                } else {
                    BigRational::zero()
                }
            };
            let y = basis_solve_t(&cost_of).ok_or(Cold("singular basis for duals"))?;
            // exact dual feasibility on every column
            for j in 0..n {
                let mut ya = BigRational::zero();
                for r in 0..m {
                    if !norm_a[r][j].is_zero() {
                        ya += &y[r] * &norm_a[r][j];
                    }
                }
                if ya > c[j] {
                    return Err(FloatFailure::WarmStart {
                        basis: basis.clone(),
                        art_rows: art_rows.clone(),
                    });
                }
            }
            let mut x = vec![BigRational::zero(); n];
            for (i, &v) in basis.iter().enumerate() {
                if v < n {
                    x[v] = xb[i].clone();
                }
            }
            let mut objective = BigRational::zero();
            for j in 0..n {
                if !x[j].is_zero() {
                    objective += &c[j] * &x[j];
                }
            }
            let duals = (0..m)
                .map(|i| if flips[i] { -y[i].clone() } else { y[i].clone() })
                .collect();
            Ok(LpOutcome::Optimal { x, objective, duals })
        }
        FloatStatus::Infeasible => {
            let cost_of = |j: usize| -> BigRational {
                if j < n {
                    BigRational::zero()
                } else {
                    BigRational::one()
                }
            };
            let y = basis_solve_t(&cost_of).ok_or(Cold("singular basis for farkas"))?;
            // exact Farkas check on the normalized system
            for j in 0..n {
                let mut ya = BigRational::zero();
                for r in 0..m {
                    if !norm_a[r][j].is_zero() {
                        ya += &y[r] * &norm_a[r][j];
                    }
                }
                if ya.is_positive() {
                    return Err(Cold("farkas violated"));
                }
            }
            let mut yb = BigRational::zero();
            for r in 0..m {
                yb += &y[r] * &norm_b[r];
            }
            if !yb.is_positive() {
                return Err(Cold("farkas does not separate"));
            }
            let farkas = (0..m)
                .map(|i| if flips[i] { -y[i].clone() } else { y[i].clone() })
                .collect();
            Ok(LpOutcome::Infeasible { farkas })
        }
        FloatStatus::Unbounded { entering } => {
            if entering >= n {
                return Err(Cold("artificial entering for ray"));
            }
            // exact feasibility of the current basis
            let xb = basis_solve(&norm_b).ok_or(Cold("singular basis for ray"))?;
            if xb.iter().any(Signed::is_negative) {
                return Err(Cold("ray basis infeasible"));
            }
            for (i, &v) in basis.iter().enumerate() {
                if v >= n && !xb[i].is_zero() {
                    return Err(Cold("ray artificial basic"));
                }
            }
            // exact ray: u = B⁻¹·A_enter must be ≤ 0, reduced cost < 0
            let col: Vec<BigRational> = (0..m).map(|r| norm_a[r][entering].clone()).collect();
            let u = basis_solve(&col).ok_or(Cold("singular basis for ray column"))?;
            if u.iter().any(Signed::is_positive) {
                return Err(Cold("ray column not nonpositive"));
            }
            let cost_of = |j: usize| -> BigRational {
                if j < n {
                    c[j].clone()
                } else {
                    BigRational::zero()
                }
            };
            let y = basis_solve_t(&cost_of).ok_or(Cold("singular basis for ray duals"))?;
            let mut rc = c[entering].clone();
            for r in 0..m {
                rc -= &y[r] * &norm_a[r][entering];
            }
            if !rc.is_negative() {
                return Err(Cold("ray reduced cost not negative"));
            }
            let mut ray = vec![BigRational::zero(); n];
            ray[entering] = BigRational::one();
            for (i, &v) in basis.iter().enumerate() {
                if v < n && !u[i].is_zero() {
                    ray[v] = -u[i].clone();
                }
            }
            // exact sanity: the ray must improve and stay in the kernel
            let mut cr = BigRational::zero();
            for j in 0..n {
                if !ray[j].is_zero() {
                    cr += &c[j] * &ray[j];
                }
            }
            if !cr.is_negative() {
                return Err(Cold("ray not improving"));
            }
            Ok(LpOutcome::Unbounded { ray })
        }
        FloatStatus::GaveUp => Err(Cold("float simplex gave up")),
    }
}

/// Gaussian elimination on an augmented `m×(m+1)` system; `None` when the
/// matrix is singular.
fn gauss_solve(sys: &mut [Vec<BigRational>]) -> Option<Vec<BigRational>> {
    let m = sys.len();
    let mut perm: Vec<usize> = Vec::with_capacity(m);
    let mut used = vec![false; m];
    for col in 0..m {
        let pr = (0..m).find(|&r| !used[r] && !sys[r][col].is_zero())?;
        used[pr] = true;
        perm.push(pr);
        let inv = sys[pr][col].clone();
        for t in col..=m {
            sys[pr][t] = &sys[pr][t] / &inv;
        }
        for r in 0..m {
            if r != pr && !sys[r][col].is_zero() {
                let f = sys[r][col].clone();
                for t in col..=m {
                    let sub = &f * &sys[pr][t];
                    sys[r][t] -= sub;
                }
            }
        }
    }
    Some((0..m).map(|col| sys[perm[col]][m].clone()).collect())
}

/// Exact dual-simplex repair from a dual-feasible basis with some negative
/// basic values; finishes at the exact optimum (or an exact Farkas
/// certificate when a fully nonnegative row has negative rhs).
fn solve_exact_dual_warm(
    a: &[Vec<BigRational>],
    b: &[BigRational],
    c: &[BigRational],
    basis: &[usize],
    art_rows: &[usize],
) -> Option<LpOutcome> {
    let m = a.len();
    let n = c.len();
    let n_art = art_rows.len();
    let mut flips = vec![false; m];
    let mut norm_a: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut norm_b: Vec<BigRational> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        flips[i] = flip;
        norm_a.push(if flip {
            a[i].iter().map(|v| -v.clone()).collect()
        } else {
            a[i].clone()
        });
        norm_b.push(if flip { -b[i].clone() } else { b[i].clone() });
    }
    let width = n + n_art + 1;
    let rows: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row: Vec<BigRational> = Vec::with_capacity(width);
            row.extend(norm_a[i].iter().cloned());
            for &r in art_rows {
                row.push(if r == i { BigRational::one() } else { BigRational::zero() });
            }
            row.push(norm_b[i].clone());
            row
        })
        .collect();
    let mut t = Tableau {
        pivots: 0,
        rows,
        cost: vec![BigRational::zero(); width],
        basic: basis.to_vec(),
        n,
        m,
        n_art,
        art_rows: art_rows.to_vec(),
    };
    for r in 0..m {
        let j = t.basic[r];
        if t.rows[r][j].is_zero() {
            let swap = (r + 1..m).find(|&i| !t.rows[i][j].is_zero())?;
            t.rows.swap(r, swap);
        }
        let piv = t.rows[r][j].clone();
        for v in t.rows[r].iter_mut() {
            *v /= &piv;
        }
        for i in 0..m {
            if i != r && !t.rows[i][j].is_zero() {
                let f = t.rows[i][j].clone();
                for col in 0..width {
                    let sub = &f * &t.rows[r][col];
                    t.rows[i][col] -= sub;
                }
            }
        }
    }
    let full: Vec<BigRational> = (0..n + n_art)
        .map(|j| if j < n { c[j].clone() } else { BigRational::zero() })
        .collect();
    t.recompute_cost(&full);
    // must be exactly dual feasible to start
    if (0..n).any(|j| t.cost[j].is_negative()) {
        return None;
    }
    let rhs = t.rhs_col();
    for _ in 0..200 {
        // leaving: first negative basic value (Bland-style)
        let Some(r) = (0..m)
            .filter(|&r| t.rows[r][rhs].is_negative())
            .min_by_key(|&r| t.basic[r])
        else {
            // primal feasible now: optimal
            return Some(finish_phase2(t, &norm_a, &flips, c));
        };
        // entering: min |d_j / a_rj| over a_rj < 0, ties smallest j
        let mut best: Option<(usize, BigRational)> = None;
        for j in 0..n {
            if t.rows[r][j].is_negative() {
                let ratio = &t.cost[j] / &(-t.rows[r][j].clone());
                if best.as_ref().is_none_or(|(bj, br)| ratio < *br || (ratio == *br && j < *bj))
                {
                    best = Some((j, ratio));
                }
            }
        }
        match best {
            Some((j, _)) => t.pivot(r, j),
            None => {
                // row r: all entries ≥ 0 with rhs < 0: exactly infeasible;
                // the row functional of B⁻¹ is a Farkas certificate
                let mut unit = vec![BigRational::zero(); m];
                unit[r] = BigRational::one();
                // solve Bᵀ z = e_r via the same machinery
                let col_entry = |var: usize, row: usize| -> BigRational {
                    if var < n {
                        norm_a[row][var].clone()
                    } else if art_rows[var - n] == row {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                };
                let mut sys: Vec<Vec<BigRational>> = (0..m)
                    .map(|i| {
                        let var = t.basic[i];
                        let mut row: Vec<BigRational> =
                            (0..m).map(|rr| col_entry(var, rr)).collect();
                        row.push(unit[i].clone());
                        row
                    })
                    .collect();
                let z = gauss_solve(&mut sys)?;
                // y = −z satisfies yᵀA ≤ 0, yᵀb > 0 on the normalized data
                let mut yb = BigRational::zero();
                for i in 0..m {
                    yb -= &z[i] * &norm_b[i];
                }
                if !yb.is_positive() {
                    return None;
                }
                for j in 0..n {
                    let mut ya = BigRational::zero();
                    for i in 0..m {
                        ya -= &z[i] * &norm_a[i][j];
                    }
                    if ya.is_positive() {
                        return None;
                    }
                }
                let farkas = (0..m)
                    .map(|i| if flips[i] { z[i].clone() } else { -z[i].clone() })
                    .collect();
                return Some(LpOutcome::Infeasible { farkas });
            }
        }
    }
    None
}
