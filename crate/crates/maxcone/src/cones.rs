//! Multiorder geometry of finitely generated max cones: membership and
//! Caratheodory witnesses, extremals, types, region matrices and the
//! cellular decomposition into Kleene cones.

use crate::error::{Error, Result};
use crate::matrix::{preorder_le, principal_solution, Matrix, Vector};
use crate::scalar::{Cmp, Scalar};
use crate::spectral::{kleene_star, undirected_components, BasisKind, ConeBasis};

/// Develin-Sturmfels type of a point against the columns of a matrix.
///
/// `col_type[j]` is the argmax set of `a_ij / y_i` over rows; `row_type[i]`
/// is its dual: `j ∈ row_type[i] ⇔ i ∈ col_type[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeCover {
    pub col_type: Vec<Vec<usize>>,
    pub row_type: Vec<Vec<usize>>,
}

/// Type of a positive point `y` against `A` (no zero rows or columns).
///
/// On the float backend the argmax set is computed with tolerance, so it
/// is a superset of the exact argmax set under small perturbations.
pub fn type_of<S: Scalar>(y: &Vector<S>, a: &Matrix<S>, cmp: &Cmp) -> Result<TypeCover> {
    let (n, m) = (a.nrows(), a.ncols());
    if y.len() != n {
        return Err(Error::DimMismatch(format!("{} vs {} rows", y.len(), n)));
    }
    if !y.is_positive() {
        return Err(Error::NotPositive);
    }
    if a.has_zero_row() || a.has_zero_col() {
        return Err(Error::ZeroRowOrColumn);
    }
    let mut col_type = Vec::with_capacity(m);
    for j in 0..m {
        // ratios a_ij / y_i; y positive so all inverses exist
        let ratios: Vec<S> = (0..n)
            .map(|i| a[(i, j)].tmul(&y[i].tinv().expect("positive y")))
            .collect();
        let best = ratios
            .iter()
            .cloned()
            .reduce(|acc, r| acc.max_s(&r))
            .expect("n >= 1");
        col_type.push(
            (0..n)
                .filter(|&i| ratios[i].eq_tol(&best, cmp))
                .collect::<Vec<_>>(),
        );
    }
    let mut row_type = vec![Vec::new(); n];
    for (j, tj) in col_type.iter().enumerate() {
        for &i in tj {
            row_type[i].push(j);
        }
    }
    Ok(TypeCover { col_type, row_type })
}

/// Outcome of a membership test against `span(A)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Membership<S> {
    /// `y = A ⊗ x` for the principal solution `x`.
    Member { x: Vector<S> },
    /// Coordinates `j ∈ supp(y)` with no column below `y` in `<=_j`.
    NotMember { uncovered: Vec<usize> },
}

impl<S> Membership<S> {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

/// Membership of `y` in `span(A)` via the principal solution, with the
/// multiorder cover gap reported on failure.
pub fn is_member<S: Scalar>(y: &Vector<S>, a: &Matrix<S>, cmp: &Cmp) -> Result<Membership<S>> {
    if y.len() != a.nrows() {
        return Err(Error::DimMismatch(format!(
            "{} vs {} rows",
            y.len(),
            a.nrows()
        )));
    }
    let x = principal_solution(a, y)?;
    let p = a.mul_vec(&x)?;
    if p.eq_tol(y, cmp) {
        return Ok(Membership::Member { x });
    }
    let mut uncovered = Vec::new();
    'coords: for j in y.support() {
        for c in a.columns() {
            if c[j].is_zero() {
                continue;
            }
            if preorder_le(&c, y, j)? {
                continue 'coords;
            }
        }
        uncovered.push(j);
    }
    Ok(Membership::NotMember { uncovered })
}

/// Caratheodory witness: at most `|supp(y)|` generators from `gens`
/// whose max combination with the returned coefficients equals `y`.
/// Returned as `(generator index, coefficient)` pairs.
pub fn caratheodory_witness<S: Scalar>(
    y: &Vector<S>,
    gens: &[Vector<S>],
    cmp: &Cmp,
) -> Result<Vec<(usize, S)>> {
    let mut picked: Vec<(usize, S)> = Vec::new();
    let mut uncovered = Vec::new();
    'coords: for j in y.support() {
        for (idx, v) in gens.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            if preorder_le(v, y, j)? {
                let coeff = y[j].tmul(&v[j].tinv().expect("nonzero"));
                match picked.iter_mut().find(|(i, _)| *i == idx) {
                    Some((_, c)) => *c = c.max_s(&coeff),
                    None => picked.push((idx, coeff)),
                }
                continue 'coords;
            }
        }
        uncovered.push(j);
    }
    if !uncovered.is_empty() {
        return Err(Error::NotInSpan(uncovered));
    }
    let mut combo = Vector::zeros(y.len());
    for (idx, c) in &picked {
        combo = combo.join(&gens[*idx].scale(c));
    }
    if !combo.eq_tol(y, cmp) {
        return Err(Error::NotInSpan(
            (0..y.len()).filter(|&i| !combo[i].eq_tol(&y[i], cmp)).collect(),
        ));
    }
    Ok(picked)
}

/// Scaled extremals of the cone generated by `gens`: the unique scaled
/// basis. A vector is kept iff it is `<=_j`-minimal for some `j` in its
/// support; proportional duplicates collapse to one scaled copy.
pub fn extremals_and_basis<S: Scalar>(gens: &[Vector<S>], cmp: &Cmp) -> Result<ConeBasis<S>> {
    let mut scaled: Vec<Vector<S>> = Vec::new();
    for v in gens {
        if v.is_zero() {
            continue;
        }
        let s = v.scaled()?;
        if !scaled.iter().any(|u| u.proportional_to(&s, cmp)) {
            scaled.push(s);
        }
    }
    let mut kept: Vec<Vector<S>> = Vec::new();
    'vectors: for (vi, v) in scaled.iter().enumerate() {
        for j in v.support() {
            let mut minimal = true;
            for (ui, u) in scaled.iter().enumerate() {
                if ui == vi || u[j].is_zero() {
                    continue;
                }
                if preorder_le(u, v, j)? {
                    minimal = false;
                    break;
                }
            }
            if minimal {
                kept.push(v.clone());
                continue 'vectors;
            }
        }
    }
    // canonical order, independent of the input order
    kept.sort_by(|a, b| {
        for i in 0..a.len() {
            let o = a[i].order(&b[i]);
            if o != std::cmp::Ordering::Equal {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    });
    Ok(ConeBasis {
        max_dimension: kept.len(),
        generators: kept,
        kind: BasisKind::Span,
        linear_dimension: None,
    })
}

/// One cell of the decomposition of `span(A)`, indexed by a row type.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell<S> {
    pub row_type: Vec<Vec<usize>>,
    /// Region matrix `A^S`; unit diagonal by construction.
    pub region_matrix: Matrix<S>,
    /// `(A^S)*` when the cell is feasible.
    pub region_star: Option<Matrix<S>>,
    /// Undirected graph on rows: edge `(i, j)` iff `S_i ∩ S_j != ∅`.
    pub gs_edges: Vec<(usize, usize)>,
    /// Connected components of the graph above.
    pub dimension: usize,
    pub feasible: bool,
}

/// Build the region matrix `a^S_ij = ⊕_{k ∈ S_j} a_ik a_jk^{-1}` and its
/// Kleene star. Empty `S_j` falls back to the Kronecker column. A type
/// referencing a zero entry `a_jk`, `k ∈ S_j`, is unrealizable for
/// positive points and comes back infeasible.
pub fn region_star<S: Scalar>(
    row_type: &[Vec<usize>],
    a: &Matrix<S>,
    cmp: &Cmp,
) -> Result<Cell<S>> {
    let (n, m) = (a.nrows(), a.ncols());
    if row_type.len() != n {
        return Err(Error::DimMismatch(format!(
            "row type has {} components, matrix has {} rows",
            row_type.len(),
            n
        )));
    }
    if row_type.iter().flatten().any(|&k| k >= m) {
        return Err(Error::DimMismatch(format!(
            "row type references a column >= {m}"
        )));
    }
    let mut realizable = true;
    let mut region = Matrix::identity(n);
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            if row_type[j].is_empty() {
                data.push(if i == j { S::one() } else { S::zero() });
                continue;
            }
            let mut acc = S::zero();
            for &k in &row_type[j] {
                match a[(j, k)].tinv() {
                    Some(inv) => acc = acc.max_s(&a[(i, k)].tmul(&inv)),
                    None => realizable = false,
                }
            }
            data.push(acc);
        }
    }
    if realizable {
        region = Matrix::from_vec(n, n, data);
    }
    let star = if realizable {
        match kleene_star(&region, cmp) {
            Ok(s) => Some(s),
            Err(Error::Divergent { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let mut gs_edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if row_type[i].iter().any(|k| row_type[j].contains(k)) {
                gs_edges.push((i, j));
            }
        }
    }
    let dimension = undirected_components(n, &gs_edges);
    Ok(Cell {
        row_type: row_type.to_vec(),
        region_matrix: region,
        feasible: star.is_some(),
        region_star: star,
        gs_edges,
        dimension,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct CellOptions {
    /// Keep every feasible closure-distinct cell instead of only the
    /// span-maximal ones.
    pub include_all: bool,
    /// Cap on the number of candidate row types `(2^m - 1)^n`.
    pub cap: u128,
}

impl Default for CellOptions {
    fn default() -> Self {
        CellOptions { include_all: false, cap: 1_000_000 }
    }
}

fn span_contains<S: Scalar>(outer: &Matrix<S>, inner: &Matrix<S>, cmp: &Cmp) -> Result<bool> {
    for c in inner.columns() {
        if !is_member(&c, outer, cmp)?.is_member() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All feasible cells of the decomposition of `span(A)`, enumerated
/// exhaustively over row types with every component nonempty, in
/// canonical row-type order.
pub fn enumerate_cells<S: Scalar>(
    a: &Matrix<S>,
    cmp: &Cmp,
    opts: &CellOptions,
) -> Result<Vec<Cell<S>>> {
    let (n, m) = (a.nrows(), a.ncols());
    if a.has_zero_row() || a.has_zero_col() {
        return Err(Error::ZeroRowOrColumn);
    }
    let per_row = (1u128 << m) - 1;
    let candidates = per_row.checked_pow(n as u32).ok_or(Error::CapExceeded {
        candidates: u128::MAX,
        cap: opts.cap,
    })?;
    if candidates > opts.cap {
        return Err(Error::CapExceeded { candidates, cap: opts.cap });
    }
    let mut feasible: Vec<Cell<S>> = Vec::new();
    // odometer over nonempty subsets (bitmasks 1..2^m) per row
    let mut masks = vec![1u32; n];
    loop {
        // duality demands every column in some S_i (all T_j nonempty)
        if masks.iter().fold(0u32, |acc, &mask| acc | mask) == per_row as u32 {
            let row_type: Vec<Vec<usize>> = masks
                .iter()
                .map(|&mask| (0..m).filter(|k| mask >> k & 1 == 1).collect())
                .collect();
            let cell = region_star(&row_type, a, cmp)?;
            if cell.feasible {
                feasible.push(cell);
            }
        }
        let mut carry = true;
        for mask in masks.iter_mut().rev() {
            *mask += 1;
            if *mask < (1 << m) {
                carry = false;
                break;
            }
            *mask = 1;
        }
        if carry {
            break;
        }
    }
    // one cell per closure: among cells with the same star keep the
    // largest row type (the saturated one, realized by interior points)
    let mut distinct: Vec<Cell<S>> = Vec::new();
    for cell in feasible {
        let star = cell.region_star.as_ref().expect("feasible");
        match distinct.iter_mut().find(|c| {
            c.region_star.as_ref().expect("feasible").eq_tol(star, cmp)
        }) {
            Some(existing) => {
                let size = |c: &Cell<S>| c.row_type.iter().map(Vec::len).sum::<usize>();
                if (size(&cell), &cell.row_type) > (size(existing), &existing.row_type) {
                    *existing = cell;
                }
            }
            None => distinct.push(cell),
        }
    }
    let cells = if opts.include_all {
        distinct
    } else {
        let mut keep = Vec::new();
        for (i, cell) in distinct.iter().enumerate() {
            let star = cell.region_star.as_ref().expect("feasible");
            let mut maximal = true;
            for (j, other) in distinct.iter().enumerate() {
                if i == j {
                    continue;
                }
                let ostar = other.region_star.as_ref().expect("feasible");
                if span_contains(ostar, star, cmp)? && !span_contains(star, ostar, cmp)? {
                    maximal = false;
                    break;
                }
            }
            if maximal {
                keep.push(cell.clone());
            }
        }
        keep
    };
    let mut cells = cells;
    cells.sort_by(|a, b| a.row_type.cmp(&b.row_type));
    Ok(cells)
}
