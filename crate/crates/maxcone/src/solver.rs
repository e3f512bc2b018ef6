//! The generalized alternating method for multi-sided systems
//! `A^(1) ⊗ x^1 = ... = A^(k) ⊗ x^k`, with sleeper tracking and
//! iteration-bound evaluation.

use crate::error::{Error, Result};
use crate::matrix::{principal_solution, proj_norm_mat, Matrix, Vector};
use crate::projectors::{distance_cones, DistanceKind, RadiusOptions};
use crate::scalar::{Cmp, Scalar};

/// A valid multi-sided system: `k >= 2` matrices sharing the row count,
/// all rows nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemSpec<S> {
    matrices: Vec<Matrix<S>>,
}

impl<S: Scalar> SystemSpec<S> {
    pub fn new(matrices: Vec<Matrix<S>>) -> Result<Self> {
        if matrices.len() < 2 {
            return Err(Error::TooFew(2));
        }
        let n = matrices[0].nrows();
        for a in &matrices {
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
        Ok(SystemSpec { matrices })
    }

    pub fn matrices(&self) -> &[Matrix<S>] {
        &self.matrices
    }

    pub fn k(&self) -> usize {
        self.matrices.len()
    }

    pub fn n(&self) -> usize {
        self.matrices[0].nrows()
    }
}

/// One sweep of the iteration: `x^(l)s` and `y^(l)s` for every side.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord<S> {
    pub l: usize,
    pub xs: Vec<Vector<S>>,
    pub ys: Vec<Vector<S>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Stop<S> {
    Solved { xs: Vec<Vector<S>>, y: Vector<S> },
    NoSolution { l: usize },
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverTrace<S> {
    pub y0: Vector<S>,
    pub iterations: Vec<IterationRecord<S>>,
    pub stop: Stop<S>,
    /// Per side: coordinates of `y^(l)s` constant over all recorded sweeps.
    pub sleepers_y: Vec<Vec<usize>>,
    /// Per side: coordinates of `x^(l)s` constant over all recorded sweeps.
    pub sleepers_x: Vec<Vec<usize>>,
}

impl<S: Scalar> SolverTrace<S> {
    pub fn solved(&self) -> bool {
        matches!(self.stop, Stop::Solved { .. })
    }

    /// Number of sweeps performed.
    pub fn sweeps(&self) -> usize {
        self.iterations.len()
    }
}

fn constant_coords<S: Scalar>(seq: &[&Vector<S>], cmp: &Cmp) -> Vec<usize> {
    let Some(first) = seq.first() else {
        return vec![];
    };
    (0..first.len())
        .filter(|&i| seq.iter().all(|v| v[i].eq_tol(&first[i], cmp)))
        .collect()
}

/// Run the alternating method. Per sweep `l` and side `s`:
/// `x = conj(A^(s)) ⊗' y`, `y = A^(s) ⊗ x`. Stops `Solved` when two
/// consecutive sweep outputs agree, `NoSolution` when every coordinate
/// has fallen strictly below `y^(0)`, and `BudgetExceeded` at
/// `max_iter` sweeps (default `10 n^k`, capped at `10^6`).
pub fn solve<S: Scalar>(
    sys: &SystemSpec<S>,
    y0: Option<Vector<S>>,
    max_iter: Option<usize>,
    cmp: &Cmp,
) -> Result<SolverTrace<S>> {
    let n = sys.n();
    let k = sys.k();
    let y0 = y0.unwrap_or_else(|| Vector::ones(n));
    if y0.len() != n {
        return Err(Error::DimMismatch(format!("y0 has length {}", y0.len())));
    }
    if !y0.is_positive() {
        return Err(Error::NotPositive);
    }
    let max_iter = max_iter.unwrap_or_else(|| {
        10usize
            .saturating_mul((n as u64).pow(k as u32).min(100_000) as usize)
            .min(1_000_000)
    });
    let mut iterations: Vec<IterationRecord<S>> = Vec::new();
    let mut y = y0.clone();
    let mut stop = Stop::BudgetExceeded;
    for l in 1..=max_iter {
        let mut xs = Vec::with_capacity(k);
        let mut ys = Vec::with_capacity(k);
        for a in sys.matrices() {
            let x = principal_solution(a, &y)?;
            y = a.mul_vec(&x)?;
            xs.push(x);
            ys.push(y.clone());
        }
        let rec = IterationRecord { l, xs, ys };
        let prev = iterations.last().map(|r: &IterationRecord<S>| {
            r.ys.last().expect("k >= 1").clone()
        });
        iterations.push(rec);
        if let Some(prev) = prev {
            if y.eq_tol(&prev, cmp) {
                let last = iterations.last().expect("just pushed");
                for (s, ysl) in last.ys.iter().enumerate() {
                    if !ysl.eq_tol(&y, cmp) {
                        return Err(Error::Internal(format!(
                            "side {s} disagrees at the fixed point"
                        )));
                    }
                }
                stop = Stop::Solved { xs: last.xs.clone(), y: y.clone() };
                break;
            }
        }
        let all_fell = (0..n).all(|i| {
            if S::EXACT {
                y[i].order(&y0[i]) == std::cmp::Ordering::Less
            } else {
                y[i].lt_tol(&y0[i], cmp)
            }
        });
        if all_fell {
            stop = Stop::NoSolution { l };
            break;
        }
    }
    let mut sleepers_y = Vec::with_capacity(k);
    let mut sleepers_x = Vec::with_capacity(k);
    // on NoSolution the final sweep is the one where every coordinate
    // falls; temporary sleepers are constant up to the sweep before it
    let upto = match stop {
        Stop::NoSolution { .. } if iterations.len() > 1 => iterations.len() - 1,
        _ => iterations.len(),
    };
    for s in 0..k {
        let yseq: Vec<&Vector<S>> = iterations[..upto].iter().map(|r| &r.ys[s]).collect();
        let xseq: Vec<&Vector<S>> = iterations[..upto].iter().map(|r| &r.xs[s]).collect();
        sleepers_y.push(constant_coords(&yseq, cmp));
        sleepers_x.push(constant_coords(&xseq, cmp));
    }
    Ok(SolverTrace { y0, iterations, stop, sleepers_y, sleepers_x })
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundKind {
    /// Requires the last matrix all-positive.
    Estimate1,
    /// Requires the declared matrices all-positive.
    Estimate2 { positive: Vec<usize> },
    /// Integer max-plus bound; needs no `rho_sigma`.
    Integer,
}

fn norm_term<S: Scalar>(a: &Matrix<S>, scale: f64) -> Result<f64> {
    let m = a.ncols();
    let norm = proj_norm_mat(a)?;
    let tnorm = proj_norm_mat(&a.transpose())?;
    Ok((scale * norm).min((m as f64 - 1.0) * tnorm))
}

/// Iteration bounds for the alternating method. `rho_sigma = None`
/// triggers the power-iteration estimate of the total distance between
/// the spans; a zero distance means the cones intersect and the bound
/// is inapplicable.
pub fn iteration_bound<S: Scalar>(
    sys: &SystemSpec<S>,
    kind: &BoundKind,
    rho_sigma: Option<f64>,
    cmp: &Cmp,
) -> Result<f64> {
    let n = sys.n() as f64;
    let k = sys.k() as f64;
    match kind {
        BoundKind::Integer => {
            for a in sys.matrices() {
                for i in 0..a.nrows() {
                    for j in 0..a.ncols() {
                        let e = &a[(i, j)];
                        if e.is_zero() {
                            return Err(Error::PositivityRequired);
                        }
                        let l = e.log_value();
                        if (l - l.round()).abs() > 1e-9 {
                            return Err(Error::IntegerRequired);
                        }
                    }
                }
            }
            let best = sys
                .matrices()
                .iter()
                .map(|a| norm_term(a, (n - 1.0) * (k - 1.0) / k))
                .collect::<Result<Vec<f64>>>()?
                .into_iter()
                .fold(f64::INFINITY, f64::min);
            Ok(2.0 * best)
        }
        BoundKind::Estimate1 | BoundKind::Estimate2 { .. } => {
            let positive: Vec<usize> = match kind {
                BoundKind::Estimate1 => vec![sys.k() - 1],
                BoundKind::Estimate2 { positive } => positive.clone(),
                BoundKind::Integer => unreachable!(),
            };
            if positive.is_empty() {
                return Err(Error::TooFew(1));
            }
            for &i in &positive {
                if i >= sys.k() || !sys.matrices()[i].is_positive() {
                    return Err(Error::PositivityRequired);
                }
            }
            let rho = match rho_sigma {
                Some(r) => r,
                None => {
                    let d = distance_cones(
                        sys.matrices(),
                        DistanceKind::Total,
                        cmp,
                        &RadiusOptions::default(),
                    )?;
                    d.value
                }
            };
            if rho <= 0.0 {
                return Err(Error::ConesIntersect);
            }
            let best = positive
                .iter()
                .map(|&i| norm_term(&sys.matrices()[i], 1.0))
                .collect::<Result<Vec<f64>>>()?
                .into_iter()
                .fold(f64::INFINITY, f64::min);
            Ok(2.0 * (n - 1.0) * best / rho)
        }
    }
}
