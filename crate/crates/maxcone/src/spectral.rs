//! Max-algebraic spectral theory: maximum cycle geometric mean, Kleene
//! stars, critical graphs and (sub)eigencone bases.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::scalar::{Cmp, Scalar};

/// A cycle geometric mean kept in exact form `weight^(1/len)`.
///
/// Comparisons cross-power the weights so they stay exact on rational
/// backends, where the root itself need not be representable.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleMean<S> {
    pub weight: S,
    pub len: u32,
}

impl<S: Scalar> CycleMean<S> {
    pub fn zero() -> Self {
        CycleMean { weight: S::zero(), len: 1 }
    }

    /// The mean as a scalar (exact only when the root is representable).
    pub fn value(&self) -> S {
        self.weight.nth_root(self.len)
    }

    pub fn order(&self, other: &CycleMean<S>) -> Ordering {
        self.weight
            .pow_u(other.len)
            .order(&other.weight.pow_u(self.len))
    }

    pub fn cmp_one(&self) -> Ordering {
        self.weight.order(&S::one())
    }

    pub fn eq_one_tol(&self, cmp: &Cmp) -> bool {
        self.weight.eq_tol(&S::one(), cmp)
    }
}

fn require_square<S: Scalar>(a: &Matrix<S>) -> Result<usize> {
    if !a.is_square() {
        return Err(Error::DimMismatch(format!(
            "square matrix required, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    Ok(a.nrows())
}

/// Maximum cycle geometric mean via Karp's algorithm with all nodes as
/// sources, kept in exact `weight^(1/len)` form.
pub fn lambda_mean<S: Scalar>(a: &Matrix<S>) -> Result<CycleMean<S>> {
    let n = require_square(a)?;
    // d[k][v] = best weight of a walk of length exactly k ending at v,
    // starting anywhere; zero weight means no such walk.
    let mut d: Vec<Vec<S>> = Vec::with_capacity(n + 1);
    d.push(vec![S::one(); n]);
    for k in 1..=n {
        let prev = &d[k - 1];
        let mut cur = vec![S::zero(); n];
        for v in 0..n {
            for u in 0..n {
                if prev[u].is_zero() || a[(u, v)].is_zero() {
                    continue;
                }
                cur[v] = cur[v].max_s(&prev[u].tmul(&a[(u, v)]));
            }
        }
        d.push(cur);
    }
    let mut best: Option<CycleMean<S>> = None;
    for v in 0..n {
        if d[n][v].is_zero() {
            continue;
        }
        let mut inner: Option<CycleMean<S>> = None;
        for k in 0..n {
            if d[k][v].is_zero() {
                continue;
            }
            let mean = CycleMean {
                weight: d[n][v].tdiv(&d[k][v]).expect("nonzero walk weight"),
                len: (n - k) as u32,
            };
            inner = Some(match inner {
                None => mean,
                Some(m) if mean.order(&m) == Ordering::Less => mean,
                Some(m) => m,
            });
        }
        if let Some(m) = inner {
            best = Some(match best {
                None => m,
                Some(b) if m.order(&b) == Ordering::Greater => m,
                Some(b) => b,
            });
        }
    }
    Ok(best.unwrap_or_else(CycleMean::zero))
}

/// Maximum cycle geometric mean `lambda(A)`.
pub fn lambda<S: Scalar>(a: &Matrix<S>) -> Result<S> {
    Ok(lambda_mean(a)?.value())
}

/// Strong connectivity of the positive-weight digraph of `A`.
pub fn is_irreducible<S: Scalar>(a: &Matrix<S>) -> Result<bool> {
    let n = require_square(a)?;
    if n == 1 {
        return Ok(true);
    }
    let reach = |transpose: bool| -> Vec<bool> {
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in 0..n {
                let w = if transpose { &a[(v, u)] } else { &a[(u, v)] };
                if !w.is_zero() && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    };
    Ok(reach(false).iter().all(|&x| x) && reach(true).iter().all(|&x| x))
}

/// Floyd-Warshall closure `A ⊕ A^2 ⊕ ... ⊕ A^n` (max-weight paths).
fn plus_closure<S: Scalar>(a: &Matrix<S>) -> Matrix<S> {
    let n = a.nrows();
    let mut b = a.clone();
    for k in 0..n {
        b = Matrix::from_fn(n, n, |i, j| {
            b[(i, j)].max_s(&b[(i, k)].tmul(&b[(k, j)]))
        });
    }
    b
}

/// Kleene star `A* = I ⊕ A ⊕ ... ⊕ A^(n-1)`, defined when `lambda(A) <= 1`.
pub fn kleene_star<S: Scalar>(a: &Matrix<S>, cmp: &Cmp) -> Result<Matrix<S>> {
    let n = require_square(a)?;
    let closure = plus_closure(a);
    for i in 0..n {
        if !closure[(i, i)].le_tol(&S::one(), cmp) {
            let lam = lambda(a)?;
            return Err(Error::Divergent { lambda: lam.log_value().exp() });
        }
    }
    Matrix::identity(n).add(&closure)
}

/// True iff `A ⊗ A = A` and `diag(A) = 1`.
pub fn is_kleene_star<S: Scalar>(a: &Matrix<S>, cmp: &Cmp) -> Result<bool> {
    let n = require_square(a)?;
    for i in 0..n {
        if !a[(i, i)].is_one_tol(cmp) {
            return Ok(false);
        }
    }
    Ok(a.mul(a)?.eq_tol(a, cmp))
}

/// `lambda(A) = 1` under the comparator.
pub fn is_definite<S: Scalar>(a: &Matrix<S>, cmp: &Cmp) -> Result<bool> {
    let n = require_square(a)?;
    let closure = plus_closure(a);
    let mut has_unit_cycle = false;
    for i in 0..n {
        let d = &closure[(i, i)];
        if !d.le_tol(&S::one(), cmp) {
            return Ok(false);
        }
        if d.is_one_tol(cmp) {
            has_unit_cycle = true;
        }
    }
    Ok(has_unit_cycle)
}

/// `lambda(A) = 1` with unit diagonal.
pub fn is_strongly_definite<S: Scalar>(a: &Matrix<S>, cmp: &Cmp) -> Result<bool> {
    let n = require_square(a)?;
    for i in 0..n {
        if !a[(i, i)].is_one_tol(cmp) {
            return Ok(false);
        }
    }
    is_definite(a, cmp)
}

/// Rescale `A` by `lambda(A)^(-1)` so the result is definite.
pub fn normalized<S: Scalar>(a: &Matrix<S>) -> Result<Matrix<S>> {
    let lam = lambda(a)?;
    let inv = lam.tinv().ok_or(Error::NotDefinite)?;
    Ok(a.scale(&inv))
}

/// Critical digraph `C(A)` of a definite matrix, with its strongly
/// connected components.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalGraph {
    pub n: usize,
    pub critical_nodes: Vec<usize>,
    pub critical_edges: Vec<(usize, usize)>,
    /// Strongly connected components of `C(A)`, sorted by smallest member.
    pub scc_partition: Vec<Vec<usize>>,
    /// One representative per component (lowest index).
    pub representatives: Vec<usize>,
    pub non_critical: Vec<usize>,
}

impl CriticalGraph {
    pub fn n_c(&self) -> usize {
        self.scc_partition.len()
    }

    /// Max-algebraic dimension of the subeigencone: `n_c + |non-critical|`.
    pub fn subeigencone_dimension(&self) -> usize {
        self.n_c() + self.non_critical.len()
    }
}

fn scc_of_edges(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    // Kosaraju on the subgraph spanned by the edge endpoints
    let mut fwd = vec![Vec::new(); n];
    let mut bwd = vec![Vec::new(); n];
    let mut active = vec![false; n];
    for &(u, v) in edges {
        fwd[u].push(v);
        bwd[v].push(u);
        active[u] = true;
        active[v] = true;
    }
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if !active[s] || seen[s] {
            continue;
        }
        // iterative postorder
        let mut stack = vec![(s, 0usize)];
        seen[s] = true;
        while let Some(&mut (u, ref mut idx)) = stack.last_mut() {
            if *idx < fwd[u].len() {
                let v = fwd[u][*idx];
                *idx += 1;
                if !seen[v] {
                    seen[v] = true;
                    stack.push((v, 0));
                }
            } else {
                order.push(u);
                stack.pop();
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for &s in order.iter().rev() {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in &bwd[u] {
                if comp[v] == usize::MAX {
                    comp[v] = id;
                    members.push(v);
                    stack.push(v);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    comps.sort_by_key(|c| c[0]);
    comps
}

/// Critical nodes, edges and SCC structure of a definite matrix.
///
/// An edge `(i, j)` is critical iff `a_ij * (A*)_ji = 1`: it then closes a
/// cycle of weight one, and for a definite matrix every such cycle is
/// critical.
pub fn critical_graph<S: Scalar>(a: &Matrix<S>, cmp: &Cmp) -> Result<CriticalGraph> {
    let n = require_square(a)?;
    if !is_definite(a, cmp)? {
        return Err(Error::NotDefinite);
    }
    let star = kleene_star(a, cmp)?;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if a[(i, j)].is_zero() {
                continue;
            }
            if a[(i, j)].tmul(&star[(j, i)]).is_one_tol(cmp) {
                edges.push((i, j));
            }
        }
    }
    let mut node_set = vec![false; n];
    for &(u, v) in &edges {
        node_set[u] = true;
        node_set[v] = true;
    }
    let critical_nodes: Vec<usize> = (0..n).filter(|&i| node_set[i]).collect();
    let non_critical: Vec<usize> = (0..n).filter(|&i| !node_set[i]).collect();
    let scc_partition = scc_of_edges(n, &edges);
    let representatives = scc_partition.iter().map(|c| c[0]).collect();
    Ok(CriticalGraph {
        n,
        critical_nodes,
        critical_edges: edges,
        scc_partition,
        representatives,
        non_critical,
    })
}

/// What a [`ConeBasis`] generates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    Eigencone,
    Subeigencone,
    Span,
}

/// Scaled, non-redundant generating set of a max cone.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeBasis<S> {
    pub generators: Vec<Vector<S>>,
    pub kind: BasisKind,
    /// Cardinality of the basis (max-algebraic dimension).
    pub max_dimension: usize,
    /// Linear dimension when it is computed (subeigencones only).
    pub linear_dimension: Option<usize>,
}

/// Number of connected components of the undirected closure of `C(A)`
/// with all loops present. Computed from the critical edges directly,
/// independently of the `n_c + |non-critical|` formula.
pub(crate) fn undirected_components(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(u, v) in edges {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

/// Bases of the eigencone `V(A)` and subeigencone `V*(A)` of a definite
/// matrix: scaled columns of `A*` at one representative per critical
/// component, plus (for `V*`) the columns at non-critical nodes.
pub fn eigencone_bases<S: Scalar>(
    a: &Matrix<S>,
    cmp: &Cmp,
) -> Result<(ConeBasis<S>, ConeBasis<S>)> {
    let star = kleene_star(a, cmp)?;
    let cg = critical_graph(a, cmp)?;
    let mut eig = Vec::new();
    for &i in &cg.representatives {
        eig.push(star.col(i).scaled()?);
    }
    let mut sub = eig.clone();
    for &j in &cg.non_critical {
        sub.push(star.col(j).scaled()?);
    }
    let lin_dim = undirected_components(cg.n, &cg.critical_edges);
    let v = ConeBasis {
        max_dimension: eig.len(),
        generators: eig,
        kind: BasisKind::Eigencone,
        linear_dimension: None,
    };
    let vstar = ConeBasis {
        max_dimension: sub.len(),
        generators: sub,
        kind: BasisKind::Subeigencone,
        linear_dimension: Some(lin_dim),
    };
    Ok((v, vstar))
}

/// Outcome of intersecting Kleene cones.
#[derive(Debug, Clone, PartialEq)]
pub enum Intersection<S> {
    /// The Kleene star whose span is the intersection.
    Star(Matrix<S>),
    /// Intersection is trivial; carries `lambda` of the entrywise maximum
    /// (max-times magnitude, `> 1`).
    Trivial { lambda: f64 },
}

/// Intersection of the spans of Kleene stars: `span((⊕ A_i)*)` when the
/// entrywise maximum is definite, trivial otherwise.
pub fn kleene_intersection<S: Scalar>(
    stars: &[Matrix<S>],
    cmp: &Cmp,
) -> Result<Intersection<S>> {
    if stars.is_empty() {
        return Err(Error::TooFew(1));
    }
    for a in stars {
        if !is_kleene_star(a, cmp)? {
            return Err(Error::NotKleeneStar);
        }
    }
    let mut sum = stars[0].clone();
    for a in &stars[1..] {
        sum = sum.add(a)?;
    }
    match kleene_star(&sum, cmp) {
        Ok(star) => Ok(Intersection::Star(star)),
        Err(Error::Divergent { lambda }) => Ok(Intersection::Trivial { lambda }),
        Err(e) => Err(e),
    }
}

/// Check items 3-4 of the intersection characterization: the products of
/// the stars taken in any order are definite exactly when the entrywise
/// maximum is. Returns the list of per-permutation verdicts.
pub fn permutation_products_definite<S: Scalar>(
    stars: &[Matrix<S>],
    cmp: &Cmp,
) -> Result<Vec<bool>> {
    let k = stars.len();
    let mut idx: Vec<usize> = (0..k).collect();
    let mut out = Vec::new();
    // Heap's algorithm over the (small) index set
    fn permute<T, F: FnMut(&[T])>(arr: &mut Vec<T>, k: usize, f: &mut F) {
        if k <= 1 {
            f(arr);
            return;
        }
        for i in 0..k {
            permute(arr, k - 1, f);
            if k % 2 == 0 {
                arr.swap(i, k - 1);
            } else {
                arr.swap(0, k - 1);
            }
        }
    }
    let mut res: Result<()> = Ok(());
    permute(&mut idx, k, &mut |perm: &[usize]| {
        if res.is_err() {
            return;
        }
        let mut prod = stars[perm[0]].clone();
        for &i in &perm[1..] {
            match prod.mul(&stars[i]) {
                Ok(p) => prod = p,
                Err(e) => {
                    res = Err(e);
                    return;
                }
            }
        }
        match is_definite(&prod, cmp) {
            Ok(b) => out.push(b),
            Err(e) => res = Err(e),
        }
    });
    res?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::MaxTimesRat;

    type M = Matrix<MaxTimesRat>;

    fn r(p: i64, q: i64) -> MaxTimesRat {
        MaxTimesRat::from_ratio(p, q)
    }

    fn m(rows: Vec<Vec<MaxTimesRat>>) -> M {
        Matrix::from_rows(rows)
    }

    #[test]
    fn lambda_examples() {
        let cmp = Cmp::default();
        let id: M = Matrix::identity(3);
        assert_eq!(lambda(&id).unwrap(), r(1, 1));

        let upper = m(vec![vec![r(0, 1), r(2, 1)], vec![r(0, 1), r(0, 1)]]);
        assert_eq!(lambda(&upper).unwrap(), r(0, 1));

        // 2-cycle with mean sqrt(2 * 1/2) = 1 beats the 1/2 loops
        let a = m(vec![vec![r(1, 2), r(2, 1)], vec![r(1, 2), r(1, 2)]]);
        let mean = lambda_mean(&a).unwrap();
        assert_eq!(mean.cmp_one(), Ordering::Equal);
        assert!(is_definite(&a, &cmp).unwrap());
    }

    #[test]
    fn irreducibility() {
        let id: M = Matrix::identity(2);
        assert!(!is_irreducible(&id).unwrap());
        let pos = m(vec![vec![r(1, 1), r(1, 1)], vec![r(1, 1), r(1, 1)]]);
        assert!(is_irreducible(&pos).unwrap());
        let cyc = m(vec![vec![r(0, 1), r(1, 1)], vec![r(1, 1), r(0, 1)]]);
        assert!(is_irreducible(&cyc).unwrap());
    }

    #[test]
    fn star_examples() {
        let cmp = Cmp::default();
        let z: M = Matrix::zeros(2, 2);
        assert_eq!(kleene_star(&z, &cmp).unwrap(), Matrix::identity(2));

        let a = m(vec![vec![r(1, 1), r(2, 1)], vec![r(2, 5), r(1, 1)]]);
        assert_eq!(kleene_star(&a, &cmp).unwrap(), a);
        assert!(is_kleene_star(&a, &cmp).unwrap());

        let d = m(vec![vec![r(2, 1)]]);
        match kleene_star(&d, &cmp) {
            Err(Error::Divergent { lambda }) => assert!((lambda - 2.0).abs() < 1e-9),
            other => panic!("expected divergence, got {other:?}"),
        }

        let not_star = m(vec![vec![r(1, 1), r(2, 1)], vec![r(1, 1), r(1, 1)]]);
        assert!(!is_kleene_star(&not_star, &cmp).unwrap());
    }

    #[test]
    fn star_fixpoint_oracle() {
        // A* is the least fixpoint of X = I ⊕ A ⊗ X
        let cmp = Cmp::default();
        let a = m(vec![
            vec![r(1, 2), r(2, 1), r(0, 1)],
            vec![r(1, 2), r(1, 2), r(1, 3)],
            vec![r(0, 1), r(1, 4), r(1, 1)],
        ]);
        let star = kleene_star(&a, &cmp).unwrap();
        let mut x: M = Matrix::identity(3);
        for _ in 0..10 {
            x = Matrix::identity(3).add(&a.mul(&x).unwrap()).unwrap();
        }
        assert_eq!(x, star);
        assert_eq!(star.mul(&star).unwrap(), star);
    }

    #[test]
    fn critical_graph_examples() {
        let cmp = Cmp::default();
        let id: M = Matrix::identity(3);
        let cg = critical_graph(&id, &cmp).unwrap();
        assert_eq!(cg.critical_nodes, vec![0, 1, 2]);
        assert_eq!(cg.n_c(), 3);
        assert_eq!(cg.representatives, vec![0, 1, 2]);

        let a = m(vec![vec![r(1, 2), r(2, 1)], vec![r(1, 2), r(1, 2)]]);
        let cg = critical_graph(&a, &cmp).unwrap();
        assert_eq!(cg.critical_nodes, vec![0, 1]);
        assert_eq!(cg.critical_edges, vec![(0, 1), (1, 0)]);
        assert_eq!(cg.n_c(), 1);
        assert_eq!(cg.representatives, vec![0]);

        let b = m(vec![vec![r(1, 1), r(0, 1)], vec![r(0, 1), r(1, 2)]]);
        let cg = critical_graph(&b, &cmp).unwrap();
        assert_eq!(cg.critical_nodes, vec![0]);
        assert_eq!(cg.n_c(), 1);
        assert_eq!(cg.non_critical, vec![1]);
    }

    #[test]
    fn eigencone_examples() {
        let cmp = Cmp::default();
        let a = m(vec![vec![r(1, 2), r(2, 1)], vec![r(1, 2), r(1, 2)]]);
        let (v, vstar) = eigencone_bases(&a, &cmp).unwrap();
        assert_eq!(v.max_dimension, 1);
        assert_eq!(vstar.max_dimension, 1);
        assert_eq!(vstar.linear_dimension, Some(1));
        let g = &v.generators[0];
        assert_eq!(g.as_slice(), &[r(1, 1), r(1, 2)]);

        let b = m(vec![vec![r(1, 1), r(0, 1)], vec![r(0, 1), r(1, 2)]]);
        let (v, vstar) = eigencone_bases(&b, &cmp).unwrap();
        assert_eq!(v.generators.len(), 1);
        assert_eq!(v.generators[0].as_slice(), &[r(1, 1), r(0, 1)]);
        assert_eq!(vstar.generators.len(), 2);
        assert_eq!(vstar.linear_dimension, Some(2));
    }

    #[test]
    fn intersection_examples() {
        let cmp = Cmp::default();
        let a1 = m(vec![vec![r(1, 1), r(1, 2)], vec![r(0, 1), r(1, 1)]]);
        let a2 = m(vec![vec![r(1, 1), r(0, 1)], vec![r(1, 2), r(1, 1)]]);
        match kleene_intersection(&[a1.clone()], &cmp).unwrap() {
            Intersection::Star(s) => assert_eq!(s, a1),
            other => panic!("{other:?}"),
        }
        match kleene_intersection(&[a1, a2], &cmp).unwrap() {
            Intersection::Star(s) => {
                let want = m(vec![vec![r(1, 1), r(1, 2)], vec![r(1, 2), r(1, 1)]]);
                assert_eq!(s, want);
            }
            other => panic!("{other:?}"),
        }

        let b1 = m(vec![vec![r(1, 1), r(1, 1)], vec![r(1, 1), r(1, 1)]]);
        let b2 = m(vec![vec![r(1, 1), r(2, 1)], vec![r(1, 2), r(1, 1)]]);
        match kleene_intersection(&[b1, b2], &cmp).unwrap() {
            Intersection::Trivial { lambda } => {
                assert!((lambda - 2.0f64.sqrt()).abs() < 1e-9)
            }
            other => panic!("{other:?}"),
        }

        let not_star = m(vec![vec![r(1, 1), r(2, 1)], vec![r(1, 1), r(1, 1)]]);
        assert_eq!(
            kleene_intersection(&[not_star], &cmp),
            Err(Error::NotKleeneStar)
        );
    }
}
