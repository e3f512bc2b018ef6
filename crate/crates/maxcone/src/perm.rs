//! Max-algebraic permanents, maximal permutations, pseudoadjugates and
//! pseudoinverses, row/column Kleene stars, the essential span and the
//! colorful Minkowski witness.

use crate::cones::{caratheodory_witness, extremals_and_basis, is_member};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::scalar::{Cmp, Scalar};
use crate::spectral::{critical_graph, kleene_star, undirected_components, ConeBasis};

/// Value and one maximal permutation of the max permanent.
#[derive(Debug, Clone, PartialEq)]
pub struct PermanentResult<S> {
    pub value: S,
    /// Lexicographically smallest maximal permutation; `None` iff every
    /// permutation has zero weight.
    pub sigma: Option<Vec<usize>>,
}

const PERM_DP_LIMIT: usize = 20;

/// Exact max-weight assignment over subsets: `h[i][mask]` is the best
/// weight of assigning rows `i..n` to the columns in `mask`.
fn assignment_table<S: Scalar>(a: &Matrix<S>) -> Result<Vec<Vec<S>>> {
    let n = a.nrows();
    if n > PERM_DP_LIMIT {
        return Err(Error::CapExceeded {
            candidates: 1u128 << n,
            cap: 1u128 << PERM_DP_LIMIT,
        });
    }
    let full = 1usize << n;
    let mut h = vec![vec![S::zero(); full]; n + 1];
    h[n][0] = S::one();
    for i in (0..n).rev() {
        for mask in 0..full {
            if (mask as u32).count_ones() as usize != n - i {
                continue;
            }
            let mut best = S::zero();
            for j in 0..n {
                if mask >> j & 1 == 0 || a[(i, j)].is_zero() {
                    continue;
                }
                let rest = &h[i + 1][mask ^ (1 << j)];
                if rest.is_zero() {
                    continue;
                }
                best = best.max_s(&a[(i, j)].tmul(rest));
            }
            h[i][mask] = best;
        }
    }
    Ok(h)
}

/// Max permanent `per(A) = ⊕_σ ∏ a_{i σ(i)}` with a lexicographically
/// smallest maximal permutation.
pub fn permanent<S: Scalar>(a: &Matrix<S>) -> Result<PermanentResult<S>> {
    if !a.is_square() {
        return Err(Error::DimMismatch(format!(
            "square matrix required, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let n = a.nrows();
    if n == 0 {
        return Ok(PermanentResult { value: S::one(), sigma: Some(vec![]) });
    }
    let h = assignment_table(a)?;
    let full = (1usize << n) - 1;
    let value = h[0][full].clone();
    if value.is_zero() {
        return Ok(PermanentResult { value, sigma: None });
    }
    // greedy lexicographic reconstruction against the table
    let mut sigma = Vec::with_capacity(n);
    let mut mask = full;
    let mut target = value.clone();
    for i in 0..n {
        for j in 0..n {
            if mask >> j & 1 == 0 || a[(i, j)].is_zero() {
                continue;
            }
            let rest = &h[i + 1][mask ^ (1 << j)];
            if rest.is_zero() {
                continue;
            }
            if a[(i, j)].tmul(rest) == target {
                sigma.push(j);
                mask ^= 1 << j;
                target = rest.clone();
                break;
            }
        }
    }
    debug_assert_eq!(sigma.len(), n);
    Ok(PermanentResult { value, sigma: Some(sigma) })
}

/// All permutations attaining the permanent, in lexicographic order.
pub fn maximal_permutations<S: Scalar>(a: &Matrix<S>, cmp: &Cmp) -> Result<Vec<Vec<usize>>> {
    let per = permanent(a)?;
    if per.sigma.is_none() {
        return Ok(vec![]);
    }
    let n = a.nrows();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut w = S::one();
        for (i, &j) in perm.iter().enumerate() {
            w = w.tmul(&a[(i, j)]);
        }
        if w.eq_tol(&per.value, cmp) {
            out.push(perm.clone());
        }
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).expect("exists");
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    Ok(out)
}

fn minor<S: Scalar>(a: &Matrix<S>, row: usize, col: usize) -> Matrix<S> {
    let n = a.nrows();
    Matrix::from_fn(n - 1, n - 1, |i, j| {
        let ii = if i < row { i } else { i + 1 };
        let jj = if j < col { j } else { j + 1 };
        a[(ii, jj)].clone()
    })
}

/// Pseudoadjugate: `adj_ij = per(A_ji)`, the permanent of the minor
/// complementary to `a_ji`.
pub fn pseudoadjugate<S: Scalar>(a: &Matrix<S>) -> Result<Matrix<S>> {
    if !a.is_square() {
        return Err(Error::DimMismatch("square matrix required".into()));
    }
    let n = a.nrows();
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            data.push(permanent(&minor(a, j, i))?.value);
        }
    }
    Ok(Matrix::from_vec(n, n, data))
}

/// Pseudoadjugate and pseudoinverse `A^∇ = per(A)^(-1) A^adj`.
pub fn pseudoinverse<S: Scalar>(a: &Matrix<S>) -> Result<(Matrix<S>, Matrix<S>)> {
    let adj = pseudoadjugate(a)?;
    let per = permanent(a)?;
    let inv = per.value.tinv().ok_or(Error::ZeroPermanent)?;
    let nabla = adj.scale(&inv);
    Ok((adj, nabla))
}

/// Column and row Kleene stars of a matrix with nonzero permanent.
#[derive(Debug, Clone, PartialEq)]
pub struct RowColStars<S> {
    pub col_star: Matrix<S>,
    pub row_star: Matrix<S>,
    pub sigma: Vec<usize>,
}

/// Normalized matrices `A^{cσ}` and `A^{rσ}` for a maximal `σ`.
fn sigma_normalized<S: Scalar>(a: &Matrix<S>, sigma: &[usize]) -> Result<(Matrix<S>, Matrix<S>)> {
    let n = a.nrows();
    let mut sigma_inv = vec![0usize; n];
    for (i, &j) in sigma.iter().enumerate() {
        sigma_inv[j] = i;
    }
    let mut col = Vec::with_capacity(n * n);
    let mut row = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let d = a[(j, sigma[j])].tinv().ok_or(Error::ZeroPermanent)?;
            col.push(a[(i, sigma[j])].tmul(&d));
            let si = sigma_inv[i];
            let d = a[(si, i)].tinv().ok_or(Error::ZeroPermanent)?;
            row.push(d.tmul(&a[(si, j)]));
        }
    }
    Ok((Matrix::from_vec(n, n, col), Matrix::from_vec(n, n, row)))
}

/// Kleene stars of `A^{cσ} = A (D^σ)^(-1)` and `A^{rσ} = (D^σ)^(-1) A`,
/// cross-checked against `A ⊗ A^∇` and `A^∇ ⊗ A`.
pub fn row_col_kleene_stars<S: Scalar>(a: &Matrix<S>, cmp: &Cmp) -> Result<RowColStars<S>> {
    let per = permanent(a)?;
    let sigma = per.sigma.ok_or(Error::ZeroPermanent)?;
    let (csig, rsig) = sigma_normalized(a, &sigma)?;
    let col_star = kleene_star(&csig, cmp)?;
    let row_star = kleene_star(&rsig, cmp)?;
    let (_, nabla) = pseudoinverse(a)?;
    if !a.mul(&nabla)?.eq_tol(&col_star, cmp) || !nabla.mul(a)?.eq_tol(&row_star, cmp) {
        return Err(Error::Internal(
            "sigma-normalized stars disagree with the pseudoinverse products".into(),
        ));
    }
    Ok(RowColStars { col_star, row_star, sigma })
}

/// Essential span of `A`: scaled basis of the span of the column Kleene
/// star, and its linear dimension (components of the critical graph of
/// `A^{cσ}`). Dimension `n` means full tropical rank.
pub fn essential_span<S: Scalar>(a: &Matrix<S>, cmp: &Cmp) -> Result<(ConeBasis<S>, usize)> {
    let stars = row_col_kleene_stars(a, cmp)?;
    let basis = extremals_and_basis(&stars.col_star.columns(), cmp)?;
    let (csig, _) = sigma_normalized(a, &stars.sigma)?;
    let cg = critical_graph(&csig, cmp)?;
    let dim = undirected_components(a.nrows(), &cg.critical_edges);
    Ok((basis, dim))
}

/// Colorful Minkowski witness.
#[derive(Debug, Clone, PartialEq)]
pub struct ColorfulWitness<S> {
    /// `extremals[i]` is an extremal of the `i`-th cone.
    pub extremals: Vec<Vector<S>>,
    /// Common point: `u` is in the essential span of `[y^1 .. y^n]`,
    /// in `U`, and in the span of the extremals.
    pub u: Vector<S>,
    pub sigma: Vec<usize>,
}

/// Witness for the colorful Minkowski theorem: extremals `v^i` of the
/// cones `V^i` whose span still meets `U`, built from points
/// `y^i ∈ V^i ∩ U` with nonzero permanent.
pub fn colorful_witness<S: Scalar>(
    u_gens: &Matrix<S>,
    v_gens: &[Matrix<S>],
    ys: &[Vector<S>],
    cmp: &Cmp,
) -> Result<ColorfulWitness<S>> {
    let n = u_gens.nrows();
    if v_gens.len() != n || ys.len() != n {
        return Err(Error::DimMismatch(format!(
            "need {n} cones and {n} points for ambient dimension {n}"
        )));
    }
    for (i, y) in ys.iter().enumerate() {
        if y.is_zero() {
            return Err(Error::ZeroVector);
        }
        if !is_member(y, &v_gens[i], cmp)?.is_member() || !is_member(y, u_gens, cmp)?.is_member() {
            return Err(Error::NotInSpan(vec![i]));
        }
    }
    let a = Matrix::from_cols(ys.to_vec());
    let per = permanent(&a)?;
    let sigma = per.sigma.ok_or(Error::DegenerateColorful)?;
    let stars = row_col_kleene_stars(&a, cmp)?;
    // search the essential span for a point of U; its columns and their
    // join are tried in order
    let mut candidates: Vec<Vector<S>> = stars
        .col_star
        .columns()
        .into_iter()
        .map(|c| c.scaled())
        .collect::<Result<_>>()?;
    let join = candidates
        .iter()
        .fold(Vector::zeros(n), |acc, c| acc.join(c));
    candidates.push(join);
    let u = candidates
        .into_iter()
        .find(|c| matches!(is_member(c, u_gens, cmp), Ok(m) if m.is_member()))
        .ok_or_else(|| Error::Internal("no essential-span point of U found".into()))?;
    let mut extremals: Vec<Option<Vector<S>>> = vec![None; n];
    for i in 0..n {
        let cone = sigma[i];
        let basis = extremals_and_basis(&v_gens[cone].columns(), cmp)?.generators;
        let picks = caratheodory_witness(&ys[cone], &basis, cmp)?;
        // the generator covering coordinate i satisfies v <=_i y^{σ(i)}
        let covering = picks
            .iter()
            .map(|&(idx, _)| basis[idx].clone())
            .find(|v| {
                !v[i].is_zero()
                    && crate::matrix::preorder_le(v, &ys[cone], i).unwrap_or(false)
            })
            .ok_or_else(|| Error::Internal("no covering extremal found".into()))?;
        extremals[cone] = Some(covering);
    }
    let extremals: Vec<Vector<S>> = extremals.into_iter().map(|v| v.expect("filled")).collect();
    if !is_member(&u, &Matrix::from_cols(extremals.clone()), cmp)?.is_member() {
        return Err(Error::Internal("witness u escapes the extremal span".into()));
    }
    Ok(ColorfulWitness { extremals, u, sigma })
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

    fn m2(a: i64, b: i64, c: i64, d: i64) -> M {
        Matrix::from_rows(vec![vec![r(a, 1), r(b, 1)], vec![r(c, 1), r(d, 1)]])
    }

    #[test]
    fn permanent_examples() {
        let id: M = Matrix::identity(3);
        let p = permanent(&id).unwrap();
        assert_eq!(p.value, r(1, 1));
        assert_eq!(p.sigma, Some(vec![0, 1, 2]));

        let p = permanent(&m2(2, 1, 1, 3)).unwrap();
        assert_eq!(p.value, r(6, 1));
        assert_eq!(p.sigma, Some(vec![0, 1]));

        let p = permanent(&m2(0, 1, 0, 1)).unwrap();
        assert_eq!(p.value, r(0, 1));
        assert_eq!(p.sigma, None);
    }

    #[test]
    fn maximal_permutation_enumeration() {
        let cmp = Cmp::default();
        let ones = m2(1, 1, 1, 1);
        let all = maximal_permutations(&ones, &cmp).unwrap();
        assert_eq!(all, vec![vec![0, 1], vec![1, 0]]);

        let a = m2(2, 1, 1, 3);
        assert_eq!(maximal_permutations(&a, &cmp).unwrap(), vec![vec![0, 1]]);

        assert!(maximal_permutations(&m2(0, 1, 0, 1), &cmp).unwrap().is_empty());
    }

    #[test]
    fn pseudoinverse_examples() {
        let id: M = Matrix::identity(2);
        let (adj, nabla) = pseudoinverse(&id).unwrap();
        assert_eq!(adj, id);
        assert_eq!(nabla, id);

        let (adj, nabla) = pseudoinverse(&m2(2, 1, 1, 3)).unwrap();
        assert_eq!(adj, m2(3, 1, 1, 2));
        let want = Matrix::from_rows(vec![
            vec![r(1, 2), r(1, 6)],
            vec![r(1, 6), r(1, 3)],
        ]);
        assert_eq!(nabla, want);

        assert_eq!(
            pseudoinverse(&m2(0, 1, 0, 1)).unwrap_err(),
            Error::ZeroPermanent
        );
    }

    #[test]
    fn row_col_star_examples() {
        let cmp = Cmp::default();
        let id: M = Matrix::identity(2);
        let s = row_col_kleene_stars(&id, &cmp).unwrap();
        assert_eq!(s.col_star, id);
        assert_eq!(s.row_star, id);

        let s = row_col_kleene_stars(&m2(2, 1, 1, 3), &cmp).unwrap();
        let col = Matrix::from_rows(vec![vec![r(1, 1), r(1, 3)], vec![r(1, 2), r(1, 1)]]);
        let row = Matrix::from_rows(vec![vec![r(1, 1), r(1, 2)], vec![r(1, 3), r(1, 1)]]);
        assert_eq!(s.col_star, col);
        assert_eq!(s.row_star, row);
        assert_eq!(s.sigma, vec![0, 1]);

        // a Kleene star is its own column and row star
        let k: M = Matrix::from_rows(vec![vec![r(1, 1), r(1, 2)], vec![r(2, 5), r(1, 1)]]);
        let s = row_col_kleene_stars(&k, &cmp).unwrap();
        assert_eq!(s.col_star, k);
        assert_eq!(s.row_star, k);
        assert_eq!(s.sigma, vec![0, 1]);
    }

    #[test]
    fn essential_span_examples() {
        let cmp = Cmp::default();
        let id: M = Matrix::identity(2);
        let (basis, dim) = essential_span(&id, &cmp).unwrap();
        assert_eq!(dim, 2);
        assert_eq!(basis.generators.len(), 2);

        let (basis, dim) = essential_span(&m2(2, 1, 1, 3), &cmp).unwrap();
        assert_eq!(dim, 2);
        assert_eq!(basis.generators.len(), 2);

        let (basis, dim) = essential_span(&m2(1, 1, 1, 1), &cmp).unwrap();
        assert_eq!(dim, 1);
        assert_eq!(basis.generators.len(), 1);
    }

    #[test]
    fn colorful_examples() {
        let cmp = Cmp::default();
        let id: M = Matrix::identity(2);
        let w = colorful_witness(
            &id,
            &[id.clone(), id.clone()],
            &[Vector::unit(2, 0), Vector::unit(2, 1)],
            &cmp,
        )
        .unwrap();
        assert_eq!(w.extremals[0], Vector::unit(2, 0));
        assert_eq!(w.extremals[1], Vector::unit(2, 1));

        let u_full: M = Matrix::identity(2);
        let v1 = Matrix::from_cols(vec![v(&[(1, 1), (1, 1)])]);
        let v2 = Matrix::from_cols(vec![v(&[(2, 1), (1, 1)])]);
        let w = colorful_witness(
            &u_full,
            &[v1, v2],
            &[v(&[(1, 1), (1, 1)]), v(&[(2, 1), (1, 1)])],
            &cmp,
        )
        .unwrap();
        assert_eq!(w.sigma, vec![1, 0]);
        assert_eq!(w.extremals[0], v(&[(1, 1), (1, 1)]));
        assert_eq!(w.extremals[1], v(&[(1, 1), (1, 2)]));
        let span = Matrix::from_cols(w.extremals.clone());
        assert!(is_member(&w.u, &span, &cmp).unwrap().is_member());

        let degen = colorful_witness(
            &id,
            &[id.clone(), id.clone()],
            &[Vector::unit(2, 0), Vector::unit(2, 0)],
            &cmp,
        );
        assert_eq!(degen.unwrap_err(), Error::DegenerateColorful);
    }
}
