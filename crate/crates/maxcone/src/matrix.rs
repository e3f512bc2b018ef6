//! Dense vectors and matrices over a max semiring scalar, together with the
//! residuated (min-times) operations that the projectors build on.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::scalar::{Cmp, Scalar};

/// Column vector over the semiring.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector<S> {
    data: Vec<S>,
}

impl<S: Scalar> Vector<S> {
    pub fn new(data: Vec<S>) -> Self {
        assert!(!data.is_empty(), "vectors must have dimension >= 1");
        Vector { data }
    }

    pub fn zeros(n: usize) -> Self {
        Vector::new(vec![S::zero(); n])
    }

    pub fn ones(n: usize) -> Self {
        Vector::new(vec![S::one(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![S::zero(); n];
        v[i] = S::one();
        Vector::new(v)
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.data.iter()
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.data[i].is_zero()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_positive(&self) -> bool {
        self.data.iter().all(|x| !x.is_zero())
    }

    /// Largest entry (the max-norm in semiring terms).
    pub fn max_entry(&self) -> S {
        self.data
            .iter()
            .fold(S::zero(), |acc, x| acc.max_s(x))
    }

    /// Scale so the largest entry is the semiring unit.
    pub fn scaled(&self) -> Result<Vector<S>> {
        let m = self.max_entry();
        let inv = m.tinv().ok_or(Error::ZeroVector)?;
        Ok(self.scale(&inv))
    }

    pub fn scale(&self, c: &S) -> Vector<S> {
        Vector::new(self.data.iter().map(|x| x.tmul(c)).collect())
    }

    pub fn join(&self, rhs: &Vector<S>) -> Vector<S> {
        assert_eq!(self.len(), rhs.len());
        Vector::new(
            self.data
                .iter()
                .zip(rhs.iter())
                .map(|(a, b)| a.max_s(b))
                .collect(),
        )
    }

    /// Componentwise minimum.
    pub fn meet(&self, rhs: &Vector<S>) -> Vector<S> {
        assert_eq!(self.len(), rhs.len());
        Vector::new(
            self.data
                .iter()
                .zip(rhs.iter())
                .map(|(a, b)| a.min_s(b))
                .collect(),
        )
    }

    pub fn le(&self, rhs: &Vector<S>) -> bool {
        self.data.iter().zip(rhs.iter()).all(|(a, b)| a.le(b))
    }

    pub fn le_tol(&self, rhs: &Vector<S>, cmp: &Cmp) -> bool {
        self.data.iter().zip(rhs.iter()).all(|(a, b)| a.le_tol(b, cmp))
    }

    pub fn eq_tol(&self, rhs: &Vector<S>, cmp: &Cmp) -> bool {
        self.len() == rhs.len()
            && self.data.iter().zip(rhs.iter()).all(|(a, b)| a.eq_tol(b, cmp))
    }

    /// True when `self = c * rhs` for some `c > 0`.
    pub fn proportional_to(&self, rhs: &Vector<S>, cmp: &Cmp) -> bool {
        if self.len() != rhs.len() {
            return false;
        }
        let (a, b) = (self.max_entry(), rhs.max_entry());
        match (a.tinv(), b.tinv()) {
            (None, None) => true,
            (Some(ia), Some(ib)) => self.scale(&ia).eq_tol(&rhs.scale(&ib), cmp),
            _ => false,
        }
    }
}

impl<S> Index<usize> for Vector<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.data[i]
    }
}

impl<S: Scalar> fmt::Display for Vector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.data.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Dense matrix over the semiring. Zero-row/column flags are computed once
/// at construction; values are immutable afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
    zero_row: bool,
    zero_col: bool,
}

impl<S: Scalar> Matrix<S> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        assert_eq!(data.len(), rows * cols);
        let zero_row = (0..rows).any(|i| (0..cols).all(|j| data[i * cols + j].is_zero()));
        let zero_col = (0..cols).any(|j| (0..rows).all(|i| data[i * cols + j].is_zero()));
        Matrix { rows, cols, data, zero_row, zero_col }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        assert!(r > 0);
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix::from_vec(rows, cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_vec(rows, cols, vec![S::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_cols(cols: Vec<Vector<S>>) -> Self {
        let m = cols.len();
        assert!(m > 0);
        let n = cols[0].len();
        Matrix::from_fn(n, m, |i, j| cols[j][i].clone())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn has_zero_row(&self) -> bool {
        self.zero_row
    }

    pub fn has_zero_col(&self) -> bool {
        self.zero_col
    }

    pub fn col(&self, j: usize) -> Vector<S> {
        Vector::new((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn row(&self, i: usize) -> Vector<S> {
        Vector::new((0..self.cols).map(|j| self[(i, j)].clone()).collect())
    }

    pub fn columns(&self) -> Vec<Vector<S>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Matrix<S> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Entrywise maximum `A ⊕ B`.
    pub fn add(&self, rhs: &Matrix<S>) -> Result<Matrix<S>> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].max_s(&rhs[(i, j)])
        }))
    }

    /// Max-algebraic product `A ⊗ B`.
    pub fn mul(&self, rhs: &Matrix<S>) -> Result<Matrix<S>> {
        if self.cols != rhs.rows {
            return Err(Error::DimMismatch(format!(
                "inner dimensions {} vs {}",
                self.cols, rhs.rows
            )));
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                acc = acc.max_s(&self[(i, k)].tmul(&rhs[(k, j)]));
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &Vector<S>) -> Result<Vector<S>> {
        if self.cols != v.len() {
            return Err(Error::DimMismatch(format!(
                "matrix cols {} vs vector len {}",
                self.cols,
                v.len()
            )));
        }
        Ok(Vector::new(
            (0..self.rows)
                .map(|i| {
                    let mut acc = S::zero();
                    for k in 0..self.cols {
                        acc = acc.max_s(&self[(i, k)].tmul(&v[k]));
                    }
                    acc
                })
                .collect(),
        ))
    }

    pub fn scale(&self, c: &S) -> Matrix<S> {
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].tmul(c))
    }

    pub fn le(&self, rhs: &Matrix<S>) -> bool {
        self.rows == rhs.rows
            && self.cols == rhs.cols
            && self.data.iter().zip(rhs.data.iter()).all(|(a, b)| a.le(b))
    }

    pub fn eq_tol(&self, rhs: &Matrix<S>, cmp: &Cmp) -> bool {
        self.rows == rhs.rows
            && self.cols == rhs.cols
            && self
                .data
                .iter()
                .zip(rhs.data.iter())
                .all(|(a, b)| a.eq_tol(b, cmp))
    }

    pub fn is_positive(&self) -> bool {
        self.data.iter().all(|x| !x.is_zero())
    }

    pub fn pow(&self, k: u32) -> Result<Matrix<S>> {
        if !self.is_square() {
            return Err(Error::DimMismatch("matrix power needs a square matrix".into()));
        }
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Cuninghame-Green conjugate: transpose with inverted entries,
    /// zeros mapping to the `+inf` sentinel of the min-times view.
    pub fn conjugate(&self) -> MinMatrix<S> {
        MinMatrix {
            rows: self.cols,
            cols: self.rows,
            data: {
                let mut d = Vec::with_capacity(self.rows * self.cols);
                for j in 0..self.cols {
                    for i in 0..self.rows {
                        d.push(self[(i, j)].tinv());
                    }
                }
                d
            },
        }
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

/// Matrix over the min-times view; `None` entries are the `+inf` sentinel.
#[derive(Debug, Clone, PartialEq)]
pub struct MinMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<Option<S>>,
}

impl<S: Scalar> MinMatrix<S> {
    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Option<S> {
        &self.data[i * self.cols + j]
    }

    /// Min-times product `B ⊗' y`. Entries `b = +inf` contribute nothing
    /// unless every entry of the row is `+inf`, in which case the result
    /// coordinate is undefined and an error is raised.
    pub fn min_mul(&self, y: &Vector<S>) -> Result<Vector<S>> {
        if self.cols != y.len() {
            return Err(Error::DimMismatch(format!(
                "min-times product: {} vs {}",
                self.cols,
                y.len()
            )));
        }
        let mut out = Vec::with_capacity(self.rows);
        for j in 0..self.rows {
            let mut acc: Option<S> = None;
            for i in 0..self.cols {
                if let Some(b) = self.get(j, i) {
                    let t = b.tmul(&y[i]);
                    acc = Some(match acc {
                        None => t,
                        Some(a) => a.min_s(&t),
                    });
                }
            }
            match acc {
                Some(a) => out.push(a),
                None => return Err(Error::UndefinedResidual(j)),
            }
        }
        Ok(Vector::new(out))
    }

    /// Conjugate back to the max-times view (involution on positive matrices).
    pub fn conjugate(&self) -> Matrix<S> {
        Matrix::from_fn(self.cols, self.rows, |i, j| match self.get(j, i) {
            None => S::zero(),
            Some(x) => x.tinv().expect("finite min-times entry"),
        })
    }
}

/// Residual `y / v = min over supp(v) of y_i v_i^{-1} = max{c : c v <= y}`.
pub fn residual<S: Scalar>(y: &Vector<S>, v: &Vector<S>) -> Result<S> {
    if y.len() != v.len() {
        return Err(Error::DimMismatch(format!("{} vs {}", y.len(), v.len())));
    }
    let mut acc: Option<S> = None;
    for i in 0..v.len() {
        if let Some(inv) = v[i].tinv() {
            let t = y[i].tmul(&inv);
            acc = Some(match acc {
                None => t,
                Some(a) => a.min_s(&t),
            });
        }
    }
    acc.ok_or(Error::ZeroVector)
}

/// Multiorder comparison `u <=_j v`: after scaling the `j`-th coordinates
/// to the unit, `u` is entrywise below `v`.
pub fn preorder_le<S: Scalar>(u: &Vector<S>, v: &Vector<S>, j: usize) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::DimMismatch(format!("{} vs {}", u.len(), v.len())));
    }
    let ui = u[j].tinv().ok_or(Error::ZeroCoordinate(j))?;
    let vi = v[j].tinv().ok_or(Error::ZeroCoordinate(j))?;
    Ok(u.scale(&ui).le(&v.scale(&vi)))
}

/// Principal solution of `A ⊗ x <= y`: the residuation `conj(A) ⊗' y`,
/// with zero columns of `A` mapped to a zero coefficient (such columns
/// never contribute to the product anyway).
pub fn principal_solution<S: Scalar>(a: &Matrix<S>, y: &Vector<S>) -> Result<Vector<S>> {
    if a.nrows() != y.len() {
        return Err(Error::DimMismatch(format!(
            "matrix rows {} vs vector len {}",
            a.nrows(),
            y.len()
        )));
    }
    let mut out = Vec::with_capacity(a.ncols());
    for j in 0..a.ncols() {
        let mut acc: Option<S> = None;
        for i in 0..a.nrows() {
            if let Some(inv) = a[(i, j)].tinv() {
                let t = y[i].tmul(&inv);
                acc = Some(match acc {
                    None => t,
                    Some(x) => x.min_s(&t),
                });
            }
        }
        out.push(acc.unwrap_or_else(S::zero));
    }
    Ok(Vector::new(out))
}

/// Projective norm of a vector: `log` of the largest pairwise ratio.
pub fn proj_norm_vec<S: Scalar>(y: &Vector<S>) -> Result<f64> {
    if !y.is_positive() {
        return Err(Error::PositivityRequired);
    }
    let logs: Vec<f64> = y.iter().map(|x| x.log_value()).collect();
    let hi = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = logs.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(hi - lo)
}

/// Projective norm of a matrix: max over columns of the within-column
/// logarithmic spread.
pub fn proj_norm_mat<S: Scalar>(a: &Matrix<S>) -> Result<f64> {
    if !a.is_positive() {
        return Err(Error::PositivityRequired);
    }
    let mut best = 0.0f64;
    for k in 0..a.ncols() {
        let col = a.col(k);
        best = best.max(proj_norm_vec(&col)?);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{MaxPlusF64, MaxTimesRat};

    fn mt(v: &[&[i64]]) -> Matrix<MaxTimesRat> {
        Matrix::from_rows(
            v.iter()
                .map(|r| r.iter().map(|&x| MaxTimesRat::from_int(x)).collect())
                .collect(),
        )
    }

    fn vt(v: &[i64]) -> Vector<MaxTimesRat> {
        Vector::new(v.iter().map(|&x| MaxTimesRat::from_int(x)).collect())
    }

    #[test]
    fn add_is_entrywise_max() {
        let a = mt(&[&[1, 2], &[3, 0]]);
        let b = mt(&[&[0, 5], &[1, 0]]);
        assert_eq!(a.add(&b).unwrap(), mt(&[&[1, 5], &[3, 0]]));
        assert_eq!(a.add(&a).unwrap(), a);
        assert_eq!(a.add(&Matrix::zeros(2, 2)).unwrap(), a);
    }

    #[test]
    fn mul_examples() {
        let a = mt(&[&[2]]);
        let b = mt(&[&[3]]);
        assert_eq!(a.mul(&b).unwrap(), mt(&[&[6]]));

        let c = mt(&[&[2, 1], &[1, 3]]);
        assert_eq!(Matrix::identity(2).mul(&c).unwrap(), c);
        let ones = vt(&[1, 1]);
        assert_eq!(c.mul_vec(&ones).unwrap(), vt(&[2, 3]));
    }

    #[test]
    fn conjugate_examples() {
        let a = mt(&[&[2]]);
        let c = a.conjugate();
        assert_eq!(c.get(0, 0).clone().unwrap(), MaxTimesRat::from_ratio(1, 2));

        let b = Matrix::from_rows(vec![
            vec![MaxTimesRat::from_int(1), MaxTimesRat::from_int(0)],
            vec![MaxTimesRat::from_ratio(1, 2), MaxTimesRat::from_int(1)],
        ]);
        let cb = b.conjugate();
        assert_eq!(cb.get(0, 1).clone().unwrap(), MaxTimesRat::from_int(2));
        assert_eq!(cb.get(1, 0).clone(), None); // +inf sentinel
        assert_eq!(cb.get(1, 1).clone().unwrap(), MaxTimesRat::from_int(1));

        let pos = mt(&[&[2, 1], &[1, 3]]);
        assert_eq!(pos.conjugate().conjugate(), pos);
    }

    #[test]
    fn min_mul_examples() {
        let a = mt(&[&[2], &[1]]);
        let x = a.conjugate().min_mul(&vt(&[1, 1])).unwrap();
        assert_eq!(x, Vector::new(vec![MaxTimesRat::from_ratio(1, 2)]));

        let id: Matrix<MaxTimesRat> = Matrix::identity(3);
        let y = vt(&[2, 1, 3]);
        assert_eq!(id.conjugate().min_mul(&y).unwrap(), y);

        let b = mt(&[&[1, 1], &[1, 2]]);
        let x = b.conjugate().min_mul(&vt(&[2, 1])).unwrap();
        assert_eq!(
            x,
            Vector::new(vec![MaxTimesRat::from_int(1), MaxTimesRat::from_ratio(1, 2)])
        );
    }

    #[test]
    fn residual_examples() {
        let y = vt(&[2, 1]);
        assert_eq!(residual(&y, &y).unwrap(), MaxTimesRat::from_int(1));
        assert_eq!(residual(&y, &vt(&[1, 1])).unwrap(), MaxTimesRat::from_int(1));
        assert_eq!(
            residual(&vt(&[1, 0]), &vt(&[1, 1])).unwrap(),
            MaxTimesRat::from_int(0)
        );
        assert_eq!(residual(&y, &vt(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn preorder_examples() {
        let u = Vector::new(vec![MaxTimesRat::from_int(1), MaxTimesRat::from_ratio(1, 2)]);
        let v = vt(&[1, 1]);
        assert!(preorder_le(&u, &u, 0).unwrap());
        assert!(preorder_le(&u, &v, 0).unwrap());
        assert!(!preorder_le(&vt(&[1, 2]), &v, 0).unwrap());
        assert!(preorder_le(&vt(&[1, 0]), &v, 1).is_err());
    }

    #[test]
    fn proj_norm_examples() {
        let c = Vector::new(vec![MaxPlusF64::from_maxtimes(3.0); 4]);
        assert!(proj_norm_vec(&c).unwrap().abs() < 1e-12);

        let y = Vector::new(vec![MaxPlusF64::from_maxtimes(2.0), MaxPlusF64::from_maxtimes(1.0)]);
        assert!((proj_norm_vec(&y).unwrap() - 2.0f64.ln()).abs() < 1e-12);

        let a = Matrix::from_rows(vec![
            vec![MaxPlusF64::from_maxtimes(2.0), MaxPlusF64::from_maxtimes(1.0)],
            vec![MaxPlusF64::from_maxtimes(1.0), MaxPlusF64::from_maxtimes(3.0)],
        ]);
        assert!((proj_norm_mat(&a).unwrap() - 3.0f64.ln()).abs() < 1e-12);

        assert!(proj_norm_vec(&Vector::new(vec![MaxPlusF64::one(), MaxPlusF64::zero()])).is_err());
    }

    #[test]
    fn principal_solution_zero_column() {
        let a = mt(&[&[0, 1], &[0, 2]]);
        let x = principal_solution(&a, &vt(&[1, 2])).unwrap();
        assert_eq!(x, vt(&[0, 1]));
    }
}
