//! Nonlinear projectors onto finitely generated max cones, separating
//! halfspaces, cyclic projectors, spectral radius estimation and
//! projective distances.

use crate::cones::extremals_and_basis;
use crate::error::{Error, Result};
use crate::matrix::{preorder_le, principal_solution, residual, Matrix, Vector};
use crate::scalar::{Cmp, Scalar};

/// Max halfspace `{v : ⊕ u1_i v_i >= ⊕ u2_i v_i}` with `u1 <= u2`, so
/// membership is equivalent to equality of the two sides.
#[derive(Debug, Clone, PartialEq)]
pub struct Halfspace<S> {
    pub u1: Vector<S>,
    pub u2: Vector<S>,
    /// Entrywise reciprocal of `u2`; the halfspace is the union of the
    /// sectors of this point indexed by `sleeper_sectors`.
    pub apex: Vector<S>,
    pub sleeper_sectors: Vec<usize>,
}

impl<S: Scalar> Halfspace<S> {
    fn side(u: &Vector<S>, v: &Vector<S>) -> S {
        let mut acc = S::zero();
        for i in 0..u.len() {
            acc = acc.max_s(&u[i].tmul(&v[i]));
        }
        acc
    }

    pub fn contains(&self, v: &Vector<S>, cmp: &Cmp) -> bool {
        Self::side(&self.u1, v).ge_tol(&Self::side(&self.u2, v), cmp)
    }

    /// Membership via the sector form: `v` lies in some sector
    /// `Δ_i(apex)`, `i` a sleeper, i.e. `v_i / apex_i` attains
    /// `max_j v_j / apex_j`.
    pub fn in_sectors(&self, v: &Vector<S>, cmp: &Cmp) -> bool {
        if v.is_zero() {
            return true;
        }
        let ratios: Vec<S> = (0..v.len())
            .map(|j| {
                self.apex[j]
                    .tinv()
                    .map(|inv| v[j].tmul(&inv))
                    .unwrap_or_else(S::zero)
            })
            .collect();
        let best = ratios
            .iter()
            .cloned()
            .reduce(|a, b| a.max_s(&b))
            .expect("nonempty");
        self.sleeper_sectors
            .iter()
            .any(|&i| ratios[i].eq_tol(&best, cmp))
    }
}

/// Projection `P(y) = A ⊗ (conj(A) ⊗' y)`: the maximal element of
/// `span(A)` below `y`. Also returns the sleepers `{i : P(y)_i = y_i}`.
pub fn project<S: Scalar>(
    a: &Matrix<S>,
    y: &Vector<S>,
    cmp: &Cmp,
) -> Result<(Vector<S>, Vec<usize>)> {
    let x = principal_solution(a, y)?;
    let p = a.mul_vec(&x)?;
    let sleepers = (0..y.len()).filter(|&i| p[i].eq_tol(&y[i], cmp)).collect();
    Ok((p, sleepers))
}

/// The minimal sets `E_1..E_n` of the projector formula
/// `P(y)_i = ⊕_{v ∈ E_i} (y/v) v_i`, over the scaled extremals.
#[derive(Debug, Clone, PartialEq)]
pub struct MinSets<S> {
    pub sets: Vec<Vec<Vector<S>>>,
    /// All sets are singletons; the projector is then min-times linear.
    pub min_linear: bool,
}

pub fn min_sets<S: Scalar>(a: &Matrix<S>, cmp: &Cmp) -> Result<MinSets<S>> {
    let basis = extremals_and_basis(&a.columns(), cmp)?.generators;
    let n = a.nrows();
    let mut sets = Vec::with_capacity(n);
    for i in 0..n {
        let mut ei: Vec<Vector<S>> = Vec::new();
        'cands: for v in basis.iter().filter(|v| !v[i].is_zero()) {
            for u in basis.iter().filter(|u| !u[i].is_zero()) {
                if u == v {
                    continue;
                }
                if preorder_le(u, v, i)? && !preorder_le(v, u, i)? {
                    continue 'cands;
                }
            }
            ei.push(v.clone());
        }
        sets.push(ei);
    }
    let min_linear = sets.iter().all(|e| e.len() <= 1);
    Ok(MinSets { sets, min_linear })
}

/// Evaluate the `E_i` formula at `y` (cross-check for `project`).
pub fn project_via_min_sets<S: Scalar>(sets: &MinSets<S>, y: &Vector<S>) -> Result<Vector<S>> {
    let mut out = Vec::with_capacity(sets.sets.len());
    for ei in &sets.sets {
        let mut acc = S::zero();
        for v in ei {
            let i = out.len();
            acc = acc.max_s(&residual(y, v)?.tmul(&v[i]));
        }
        out.push(acc);
    }
    Ok(Vector::new(out))
}

/// Halfspace containing `span(A)` but not the positive point `y`:
/// `u1 = y^(-1)`, `u2 = P(y)^(-1)` entrywise.
pub fn separating_halfspace<S: Scalar>(
    a: &Matrix<S>,
    y: &Vector<S>,
    cmp: &Cmp,
) -> Result<Halfspace<S>> {
    if !y.is_positive() {
        return Err(Error::NotPositive);
    }
    let (p, sleepers) = project(a, y, cmp)?;
    if p.eq_tol(y, cmp) {
        return Err(Error::AlreadyMember);
    }
    halfspace_from_pair(y, &p, &sleepers)
}

fn halfspace_from_pair<S: Scalar>(
    y: &Vector<S>,
    p: &Vector<S>,
    sleepers: &[usize],
) -> Result<Halfspace<S>> {
    let recip = |v: &Vector<S>| -> Result<Vector<S>> {
        let mut out = Vec::with_capacity(v.len());
        for x in v.iter() {
            out.push(x.tinv().ok_or(Error::NotPositive)?);
        }
        Ok(Vector::new(out))
    };
    Ok(Halfspace {
        u1: recip(y)?,
        u2: recip(p)?,
        apex: p.clone(),
        sleeper_sectors: sleepers.to_vec(),
    })
}

/// Cyclic projector `P_k ... P_1` applied to `y`.
pub fn cyclic_project<S: Scalar>(
    mats: &[Matrix<S>],
    y: &Vector<S>,
    cmp: &Cmp,
) -> Result<Vector<S>> {
    if mats.is_empty() {
        return Err(Error::TooFew(1));
    }
    let mut cur = y.clone();
    for a in mats {
        cur = project(a, &cur, cmp)?.0;
    }
    Ok(cur)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceKind {
    Cyclic,
    Total,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DistanceMethod {
    Exact,
    /// Power-iteration estimate with the final Collatz-Wielandt gap.
    PowerIteration { residual: f64, sweeps: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceReport<S> {
    /// Nonnegative value, `+inf` on mismatched supports.
    pub value: f64,
    pub witnesses: Vec<Vector<S>>,
    pub method: DistanceMethod,
}

fn hilbert_pair_logs(a: &[f64], b: &[f64]) -> f64 {
    // max_i (a_i - b_i), over the common (full) support
    a.iter()
        .zip(b)
        .map(|(x, y)| x - y)
        .fold(f64::NEG_INFINITY, f64::max)
}

fn support_logs<S: Scalar>(y: &Vector<S>) -> (Vec<usize>, Vec<f64>) {
    (y.support(), y.iter().map(|x| x.log_value()).collect())
}

/// Cyclic (`ρ_H`) or total (`ρ_Σ`) projective distance of a tuple of
/// points; `+inf` when supports differ.
pub fn distance_points<S: Scalar>(ys: &[Vector<S>], kind: DistanceKind) -> Result<DistanceReport<S>> {
    if ys.len() < 2 {
        return Err(Error::TooFew(2));
    }
    for y in ys {
        if y.is_zero() {
            return Err(Error::ZeroVector);
        }
    }
    let (supp0, _) = support_logs(&ys[0]);
    let same_support = ys.iter().all(|y| y.support() == supp0);
    if !same_support {
        return Ok(DistanceReport {
            value: f64::INFINITY,
            witnesses: ys.to_vec(),
            method: DistanceMethod::Exact,
        });
    }
    let logs: Vec<Vec<f64>> = ys
        .iter()
        .map(|y| supp0.iter().map(|&i| y[i].log_value()).collect())
        .collect();
    let k = ys.len();
    let value: f64 = match kind {
        DistanceKind::Cyclic => (0..k)
            .map(|s| hilbert_pair_logs(&logs[s], &logs[(s + 1) % k]))
            .sum(),
        DistanceKind::Total => (0..k)
            .map(|s| {
                hilbert_pair_logs(&logs[s], &logs[(s + 1) % k])
                    + hilbert_pair_logs(&logs[(s + 1) % k], &logs[s])
            })
            .sum(),
    };
    // clear float residue so that 0 <=> pairwise proportional holds
    let value = if value.abs() < 1e-12 { 0.0 } else { value.max(0.0) };
    Ok(DistanceReport {
        value,
        witnesses: ys.to_vec(),
        method: DistanceMethod::Exact,
    })
}

/// The inf-form of the same distances: minimize `log ∏ λ_s` (cyclic)
/// or `log ∏ λ_s μ_s` (total) over the scaling constraints
/// `y^s <= λ_s y^(s+1)`, `y^(s+1) <= μ_s y^s`. Used as an independent
/// cross-check of `distance_points`.
pub fn distance_points_inf_form<S: Scalar>(
    ys: &[Vector<S>],
    kind: DistanceKind,
) -> Result<f64> {
    if ys.len() < 2 {
        return Err(Error::TooFew(2));
    }
    let k = ys.len();
    let mut total = 0.0f64;
    for s in 0..k {
        let (a, b) = (&ys[s], &ys[(s + 1) % k]);
        // smallest λ with a <= λ b: sup over i of a_i / b_i
        let lam = |u: &Vector<S>, v: &Vector<S>| -> Option<f64> {
            let mut best = f64::NEG_INFINITY;
            for i in 0..u.len() {
                if u[i].is_zero() {
                    continue;
                }
                if v[i].is_zero() {
                    return None;
                }
                best = best.max(u[i].log_value() - v[i].log_value());
            }
            Some(best)
        };
        let fwd = lam(a, b);
        let bwd = lam(b, a);
        match (kind, fwd, bwd) {
            (DistanceKind::Cyclic, Some(l), _) => total += l,
            (DistanceKind::Total, Some(l), Some(m)) => total += l + m,
            _ => return Ok(f64::INFINITY),
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy)]
pub struct RadiusOptions {
    /// Default `100 * n` when `None`.
    pub max_sweeps: Option<usize>,
    pub tol: f64,
}

impl Default for RadiusOptions {
    fn default() -> Self {
        RadiusOptions { max_sweeps: None, tol: 1e-9 }
    }
}

/// Spectral radius estimate for the cyclic projector of a tuple of cones.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusReport<S> {
    pub r: f64,
    /// Collatz-Wielandt bracket `lower <= r <= upper`.
    pub lower: f64,
    pub upper: f64,
    /// `-log r`: the cyclic projective distance of the cones.
    pub rho_h: f64,
    pub witness: Vector<S>,
    pub sweeps: usize,
    pub converged: bool,
}

fn check_rows<S: Scalar>(mats: &[Matrix<S>]) -> Result<usize> {
    if mats.is_empty() {
        return Err(Error::TooFew(1));
    }
    let n = mats[0].nrows();
    for a in mats {
        if a.nrows() != n {
            return Err(Error::DimMismatch(format!(
                "row counts differ: {} vs {}",
                a.nrows(),
                n
            )));
        }
        for i in 0..n {
            if a.row(i).is_zero() {
                return Err(Error::ZeroRow(i));
            }
        }
    }
    Ok(n)
}

/// Spectral radius of `P_k ... P_1` by projective power iteration with
/// Collatz-Wielandt bracketing and projective period detection. The
/// iterates are positive throughout since no matrix has a zero row.
pub fn cyclic_spectral_radius<S: Scalar>(
    mats: &[Matrix<S>],
    cmp: &Cmp,
    opts: &RadiusOptions,
) -> Result<RadiusReport<S>> {
    let n = check_rows(mats)?;
    let max_sweeps = opts.max_sweeps.unwrap_or(100 * n);
    let mut y: Vector<S> = Vector::ones(n);
    let mut upper = f64::INFINITY;
    let mut lower = f64::NEG_INFINITY;
    // normalized log iterates and cumulative log scale, for period detection
    let mut history: Vec<(Vec<f64>, f64)> = Vec::new();
    let mut cum = 0.0f64;
    let mut sweeps = 0usize;
    let norm_logs = |v: &Vector<S>| -> Vec<f64> {
        let logs: Vec<f64> = v.iter().map(|x| x.log_value()).collect();
        let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        logs.iter().map(|l| l - top).collect()
    };
    history.push((norm_logs(&y), 0.0));
    while sweeps < max_sweeps {
        sweeps += 1;
        let z = cyclic_project(mats, &y, cmp)?;
        if !z.is_positive() {
            return Err(Error::NotPositive);
        }
        let ratios: Vec<f64> = (0..n)
            .map(|i| z[i].log_value() - y[i].log_value())
            .collect();
        let up = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        upper = upper.min(up);
        lower = lower.max(lo);
        cum += up;
        let logs = norm_logs(&z);
        if up - lo < opts.tol {
            let r = ((up + lo) / 2.0).exp();
            return Ok(RadiusReport {
                r,
                lower: lower.exp(),
                upper: upper.exp(),
                rho_h: -r.ln(),
                witness: z,
                sweeps,
                converged: true,
            });
        }
        // projective period: z proportional to an earlier iterate
        for (t, (old, old_cum)) in history.iter().enumerate() {
            let close = logs
                .iter()
                .zip(old)
                .all(|(a, b)| (a - b).abs() < opts.tol);
            if close {
                let p = (history.len() - t) as f64;
                let log_r = (cum - old_cum) / p;
                let r = log_r.exp();
                return Ok(RadiusReport {
                    r,
                    lower: lower.exp(),
                    upper: upper.exp(),
                    rho_h: -log_r,
                    witness: z,
                    sweeps,
                    converged: true,
                });
            }
        }
        history.push((logs, cum));
        y = z.scaled()?;
    }
    Ok(RadiusReport {
        r: ((upper + lower) / 2.0).exp(),
        lower: lower.exp(),
        upper: upper.exp(),
        rho_h: -(upper + lower) / 2.0,
        witness: y,
        sweeps,
        converged: false,
    })
}

/// Cyclic or total projective distance between cones via the cyclic
/// projector spectral radius; witnesses are the projection chain of the
/// (approximate) eigenvector.
pub fn distance_cones<S: Scalar>(
    mats: &[Matrix<S>],
    kind: DistanceKind,
    cmp: &Cmp,
    opts: &RadiusOptions,
) -> Result<DistanceReport<S>> {
    check_rows(mats)?;
    let fwd = cyclic_spectral_radius(mats, cmp, opts)?;
    let mut witnesses = Vec::with_capacity(mats.len());
    let mut cur = fwd.witness.clone();
    for a in mats {
        cur = project(a, &cur, cmp)?.0;
        witnesses.push(cur.clone());
    }
    let value = match kind {
        DistanceKind::Cyclic => fwd.rho_h,
        DistanceKind::Total => {
            let rev_mats: Vec<Matrix<S>> = mats.iter().rev().cloned().collect();
            let rev = cyclic_spectral_radius(&rev_mats, cmp, opts)?;
            if !rev.converged {
                return Err(Error::Indeterminate { lower: rev.lower, upper: rev.upper });
            }
            fwd.rho_h + rev.rho_h
        }
    };
    if !fwd.converged {
        return Err(Error::Indeterminate { lower: fwd.lower, upper: fwd.upper });
    }
    Ok(DistanceReport {
        value: if value.abs() < opts.tol { 0.0 } else { value },
        witnesses,
        method: DistanceMethod::PowerIteration {
            residual: fwd.upper - fwd.lower,
            sweeps: fwd.sweeps,
        },
    })
}

/// Outcome of the separation procedure.
#[derive(Debug, Clone, PartialEq)]
pub enum Separation<S> {
    /// Per-cone halfspaces with trivial common intersection.
    Halfspaces(Vec<Halfspace<S>>),
    /// A common (up to tolerance) point of all the cones.
    IntersectionWitness(Vector<S>),
}

/// Separate the spans by halfspaces when their intersection is trivial,
/// or exhibit a common vector otherwise. The halfspace apexes are taken
/// from the projection chain of a certified subeigenvector.
pub fn separate_cones<S: Scalar>(
    mats: &[Matrix<S>],
    cmp: &Cmp,
    opts: &RadiusOptions,
) -> Result<Separation<S>> {
    let n = check_rows(mats)?;
    if mats.len() == 1 {
        let join = mats[0]
            .columns()
            .into_iter()
            .fold(Vector::zeros(n), |acc, c| acc.join(&c));
        return Ok(Separation::IntersectionWitness(join));
    }
    let max_sweeps = opts.max_sweeps.unwrap_or(100 * n);
    let mut y: Vector<S> = Vector::ones(n);
    let mut upper = f64::INFINITY;
    let mut lower = f64::NEG_INFINITY;
    for _ in 0..max_sweeps {
        let z = cyclic_project(mats, &y, cmp)?;
        if z.eq_tol(&y, cmp) {
            return Ok(Separation::IntersectionWitness(y));
        }
        let ratios: Vec<f64> = (0..n)
            .map(|i| z[i].log_value() - y[i].log_value())
            .collect();
        let up = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        upper = upper.min(up);
        lower = lower.max(lo);
        if up < -opts.tol.max(1e-15) {
            // certificate: cyclic_project(y) <= λ y with λ = exp(up) < 1
            let mut halfspaces = Vec::with_capacity(mats.len());
            let mut cur = y.clone();
            for a in mats {
                let (p, sleepers) = project(a, &cur, cmp)?;
                halfspaces.push(halfspace_from_pair(&cur, &p, &sleepers)?);
                cur = p;
            }
            return Ok(Separation::Halfspaces(halfspaces));
        }
        y = z.scaled()?;
    }
    Err(Error::Indeterminate { lower: lower.exp(), upper: upper.exp() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::MaxTimesRat;

    type M = Matrix<MaxTimesRat>;
    type V = Vector<MaxTimesRat>;

    fn r(p: i64, q: i64) -> MaxTimesRat {
        MaxTimesRat::from_ratio(p, q)
    }

    fn v(xs: &[(i64, i64)]) -> V {
        Vector::new(xs.iter().map(|&(p, q)| r(p, q)).collect())
    }

    #[test]
    fn project_examples() {
        let cmp = Cmp::default();
        let a: M = Matrix::from_rows(vec![vec![r(2, 1)], vec![r(1, 1)]]);
        let (p, sl) = project(&a, &v(&[(1, 1), (1, 1)]), &cmp).unwrap();
        assert_eq!(p.as_slice(), &[r(1, 1), r(1, 2)]);
        assert_eq!(sl, vec![0]);

        let ones: M = Matrix::from_rows(vec![vec![r(1, 1)], vec![r(1, 1)]]);
        let (p, sl) = project(&ones, &v(&[(2, 1), (1, 1)]), &cmp).unwrap();
        assert_eq!(p.as_slice(), &[r(1, 1), r(1, 1)]);
        assert_eq!(sl, vec![1]);

        // member is fixed
        let y = v(&[(2, 1), (1, 1)]);
        let (p, sl) = project(&a, &y, &cmp).unwrap();
        assert_eq!(p, y);
        assert_eq!(sl, vec![0, 1]);
    }

    #[test]
    fn min_sets_examples() {
        let cmp = Cmp::default();
        let star: M = Matrix::from_rows(vec![vec![r(1, 1), r(1, 2)], vec![r(2, 5), r(1, 1)]]);
        let ms = min_sets(&star, &cmp).unwrap();
        assert!(ms.min_linear);
        assert_eq!(ms.sets[0], vec![star.col(0)]);
        assert_eq!(ms.sets[1], vec![star.col(1)]);

        let a: M = Matrix::from_rows(vec![vec![r(2, 1), r(1, 1)], vec![r(1, 1), r(2, 1)]]);
        let ms = min_sets(&a, &cmp).unwrap();
        assert!(ms.min_linear);
        assert_eq!(ms.sets[0], vec![v(&[(1, 1), (1, 2)])]);
        assert_eq!(ms.sets[1], vec![v(&[(1, 2), (1, 1)])]);

        let y = v(&[(1, 1), (1, 1)]);
        let via = project_via_min_sets(&ms, &y).unwrap();
        let (p, _) = project(&a, &y, &cmp).unwrap();
        assert_eq!(via, p);
    }

    #[test]
    fn halfspace_examples() {
        let cmp = Cmp::default();
        let ones: M = Matrix::from_rows(vec![vec![r(1, 1)], vec![r(1, 1)]]);
        let h = separating_halfspace(&ones, &v(&[(2, 1), (1, 1)]), &cmp).unwrap();
        assert_eq!(h.u1.as_slice(), &[r(1, 2), r(1, 1)]);
        assert_eq!(h.u2.as_slice(), &[r(1, 1), r(1, 1)]);
        assert_eq!(h.sleeper_sectors, vec![1]);
        assert!(h.contains(&v(&[(1, 1), (1, 1)]), &cmp));
        assert!(!h.contains(&v(&[(2, 1), (1, 1)]), &cmp));
        assert!(h.in_sectors(&v(&[(1, 1), (1, 1)]), &cmp));
        assert!(!h.in_sectors(&v(&[(2, 1), (1, 1)]), &cmp));

        let a: M = Matrix::from_rows(vec![vec![r(2, 1)], vec![r(1, 1)]]);
        let h = separating_halfspace(&a, &v(&[(1, 1), (1, 1)]), &cmp).unwrap();
        assert_eq!(h.u1.as_slice(), &[r(1, 1), r(1, 1)]);
        assert_eq!(h.u2.as_slice(), &[r(1, 1), r(2, 1)]);
        assert_eq!(h.sleeper_sectors, vec![0]);
        assert!(h.contains(&a.col(0), &cmp));

        assert_eq!(
            separating_halfspace(&a, &v(&[(2, 1), (1, 1)]), &cmp),
            Err(Error::AlreadyMember)
        );
    }

    #[test]
    fn cyclic_project_examples() {
        let cmp = Cmp::default();
        let a1: M = Matrix::from_rows(vec![vec![r(1, 1)], vec![r(1, 1)]]);
        let a2: M = Matrix::from_rows(vec![vec![r(2, 1)], vec![r(1, 1)]]);
        let out = cyclic_project(&[a1, a2], &v(&[(1, 1), (1, 1)]), &cmp).unwrap();
        assert_eq!(out.as_slice(), &[r(1, 1), r(1, 2)]);
    }

    #[test]
    fn distance_point_examples() {
        let a = v(&[(2, 1), (1, 1)]);
        let b = v(&[(1, 1), (1, 1)]);
        let d = distance_points(&[a.clone(), b.clone()], DistanceKind::Cyclic).unwrap();
        assert!((d.value - 2.0f64.ln()).abs() < 1e-12);
        let t = distance_points(&[a.clone(), b.clone()], DistanceKind::Total).unwrap();
        assert!((t.value - 4.0f64.ln()).abs() < 1e-12);

        let same = distance_points(&[a.clone(), a.scale(&r(3, 1))], DistanceKind::Cyclic).unwrap();
        assert_eq!(same.value, 0.0);

        let gap = distance_points(&[v(&[(1, 1), (0, 1)]), b], DistanceKind::Cyclic).unwrap();
        assert!(gap.value.is_infinite());

        let inf = distance_points_inf_form(&[a.clone(), v(&[(1, 1), (1, 1)])], DistanceKind::Cyclic)
            .unwrap();
        assert!((inf - 2.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn radius_examples() {
        let cmp = Cmp::default();
        let opts = RadiusOptions::default();
        let a1: M = Matrix::from_rows(vec![vec![r(1, 1)], vec![r(1, 1)]]);
        let a2: M = Matrix::from_rows(vec![vec![r(2, 1)], vec![r(1, 1)]]);

        let single = cyclic_spectral_radius(&[a1.clone()], &cmp, &opts).unwrap();
        assert!(single.converged);
        assert!((single.r - 1.0).abs() < 1e-9);
        assert!(single.rho_h.abs() < 1e-9);

        let pair = cyclic_spectral_radius(&[a1.clone(), a2.clone()], &cmp, &opts).unwrap();
        assert!(pair.converged);
        assert!((pair.r - 0.5).abs() < 1e-9);
        assert!((pair.rho_h - 2.0f64.ln()).abs() < 1e-9);

        // common positive vector (1,1)
        let b2: M = Matrix::from_rows(vec![vec![r(1, 1), r(2, 1)], vec![r(1, 1), r(1, 1)]]);
        let common = cyclic_spectral_radius(&[a1.clone(), b2], &cmp, &opts).unwrap();
        assert!(common.converged);
        assert!((common.r - 1.0).abs() < 1e-9);

        let d = distance_cones(&[a1.clone(), a2.clone()], DistanceKind::Cyclic, &cmp, &opts)
            .unwrap();
        assert!((d.value - 2.0f64.ln()).abs() < 1e-9);
        let t = distance_cones(&[a1.clone(), a2], DistanceKind::Total, &cmp, &opts).unwrap();
        assert!((t.value - 4.0f64.ln()).abs() < 1e-9);
        let z = distance_cones(&[a1.clone(), a1], DistanceKind::Total, &cmp, &opts).unwrap();
        assert_eq!(z.value, 0.0);
    }

    #[test]
    fn separation_examples() {
        let cmp = Cmp::default();
        let opts = RadiusOptions::default();
        let a1: M = Matrix::from_rows(vec![vec![r(1, 1)], vec![r(1, 1)]]);
        let a2: M = Matrix::from_rows(vec![vec![r(2, 1)], vec![r(1, 1)]]);

        match separate_cones(&[a1.clone()], &cmp, &opts).unwrap() {
            Separation::IntersectionWitness(w) => assert_eq!(w.as_slice(), &[r(1, 1), r(1, 1)]),
            other => panic!("{other:?}"),
        }

        match separate_cones(&[a1.clone(), a2.clone()], &cmp, &opts).unwrap() {
            Separation::Halfspaces(hs) => {
                assert_eq!(hs.len(), 2);
                assert!(hs[0].contains(&a1.col(0), &cmp));
                assert!(hs[1].contains(&a2.col(0), &cmp));
                // sampled rays lie in at most one halfspace each
                for t in [-2i64, -1, 0, 1, 2] {
                    let p = if t >= 0 { v(&[(1 << t, 1), (1, 1)]) } else { v(&[(1, 1 << -t), (1, 1)]) };
                    assert!(
                        !(hs[0].contains(&p, &cmp) && hs[1].contains(&p, &cmp)),
                        "{t}"
                    );
                }
            }
            other => panic!("{other:?}"),
        }

        let b2: M = Matrix::from_rows(vec![vec![r(1, 1), r(2, 1)], vec![r(1, 1), r(1, 1)]]);
        match separate_cones(&[a1, b2], &cmp, &opts).unwrap() {
            Separation::IntersectionWitness(w) => assert!(w.is_positive()),
            other => panic!("{other:?}"),
        }
    }
}
