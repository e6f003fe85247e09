//! Integer chain complex of a graph, the Laplacian, Smith normal form, and the
//! component group `Φ_G` with its order (the spanning-tree count).
//!
//! All arithmetic is exact over `BigInt`.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::orientations::Orientation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = a * &other[(k, j)];
                    out[(i, j)] += p;
                }
            }
        }
        out
    }

    /// Deletes row `r` and column `c`.
    pub fn minor(&self, r: usize, c: usize) -> IntegerMatrix {
        let mut out = Self::zeros(self.rows - 1, self.cols - 1);
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                let (ii, jj) = (i - (i > r) as usize, j - (j > c) as usize);
                out[(ii, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self[(r, j)]);
            self[(r, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `left * m * right = diag(diagonal)` with `left`, `right` unimodular and
/// each nonzero diagonal entry dividing the next.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: IntegerMatrix,
    pub right: IntegerMatrix,
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = IntegerMatrix::identity(rows);
    let mut right = IntegerMatrix::identity(cols);
    let steps = rows.min(cols);

    for t in 0..steps {
        let Some((pi, pj)) = min_nonzero(&a, t, |_, _| true) else {
            break;
        };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row(i, t, &q);
                left.add_row(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col(j, t, &q);
                right.add_col(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                // a smaller remainder is left in row or column t; make it the pivot
                let (pi, pj) = min_nonzero(&a, t, |i, j| i == t || j == t).unwrap();
                a.swap_rows(t, pi);
                left.swap_rows(t, pi);
                a.swap_cols(t, pj);
                right.swap_cols(t, pj);
                continue;
            }
            // pivot must divide the remaining block
            let pivot = a[(t, t)].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    left.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].sign() == Sign::Minus {
            a.negate_row(t);
            left.negate_row(t);
        }
    }
    let diagonal = (0..steps).map(|i| a[(i, i)].clone()).collect();
    SmithForm {
        diagonal,
        left,
        right,
    }
}

fn min_nonzero(
    a: &IntegerMatrix,
    t: usize,
    allowed: impl Fn(usize, usize) -> bool,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            if a[(i, j)].is_zero() || !allowed(i, j) {
                continue;
            }
            if best.map_or(true, |(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// `|V| x |E|`; the column of `e: u -> v` is `+1` at `u`, `-1` at `v`; loop columns vanish.
pub fn boundary_matrix(g: &WeightedGraph, orientation: &Orientation) -> Result<IntegerMatrix> {
    let mut m = IntegerMatrix::zeros(g.vertex_count(), g.edge_count());
    for (i, e) in g.edges().iter().enumerate() {
        if e.is_loop() {
            continue;
        }
        if !orientation.support().contains(i) {
            return Err(Error::IncompleteOrientation(e.id.clone()));
        }
        let (s, t) = orientation.ends(g, i);
        m[(s, i)] = BigInt::one();
        m[(t, i)] = -BigInt::one();
    }
    Ok(m)
}

/// Transpose of [`boundary_matrix`]: vertex `v` maps to outgoing minus incoming edges.
pub fn coboundary_matrix(g: &WeightedGraph, orientation: &Orientation) -> Result<IntegerMatrix> {
    boundary_matrix(g, orientation).map(|m| m.transpose())
}

/// `∂δ` for the reference orientation in which every edge points along its declared ends.
pub fn laplacian(g: &WeightedGraph) -> IntegerMatrix {
    let o = Orientation::along_declared(g);
    let d = boundary_matrix(g, &o).expect("reference orientation covers every edge");
    d.mul(&d.transpose())
}

/// Laplacian with row and column `vertex` removed.
pub fn reduced_laplacian(g: &WeightedGraph, vertex: usize) -> IntegerMatrix {
    laplacian(g).minor(vertex, vertex)
}

/// Finite abelian group `Z/d1 + .. + Z/dk + Z^free_rank`, `d1 | d2 | ..`, each `di >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentGroup {
    pub invariant_factors: Vec<BigUint>,
    pub free_rank: usize,
}

impl ComponentGroup {
    pub fn order(&self) -> BigUint {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    fn from_diagonal(diagonal: &[BigInt], size: usize) -> Self {
        let mut invariant_factors = Vec::new();
        let mut zeros = size - diagonal.len();
        for d in diagonal {
            if d.is_zero() {
                zeros += 1;
            } else if !d.is_one() {
                invariant_factors.push(d.magnitude().clone());
            }
        }
        ComponentGroup {
            invariant_factors,
            free_rank: zeros,
        }
    }
}

impl fmt::Display for ComponentGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Cokernel of the Laplacian restricted to degree-zero chains, via the
/// reduced Laplacian at vertex 0.
pub fn component_group(g: &WeightedGraph) -> Result<ComponentGroup> {
    component_group_at(g, 0)
}

/// As [`component_group`], deleting `vertex` instead of vertex 0.
pub fn component_group_at(g: &WeightedGraph, vertex: usize) -> Result<ComponentGroup> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let reduced = reduced_laplacian(g, vertex);
    let snf = smith_normal_form(&reduced);
    Ok(ComponentGroup::from_diagonal(&snf.diagonal, reduced.rows()))
}

/// Kirchhoff: determinant of the reduced Laplacian.
pub fn spanning_tree_count(g: &WeightedGraph) -> Result<BigUint> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let det = reduced_laplacian(g, 0).determinant();
    Ok(det.magnitude().clone())
}

/// Spanning-tree count by deletion-contraction, `t(G) = t(G - e) + t(G / e)`
/// over non-loop edges. Exponential in `|E|`.
pub fn spanning_tree_count_oracle(g: &WeightedGraph) -> Result<BigUint> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|e| !e.is_loop())
        .map(|e| e.ends)
        .collect();
    Ok(deletion_contraction(g.vertex_count(), &edges))
}

fn deletion_contraction(n: usize, edges: &[(usize, usize)]) -> BigUint {
    let Some((&(a, b), rest)) = edges.split_first() else {
        return if n == 1 { BigUint::one() } else { BigUint::zero() };
    };
    let deleted = deletion_contraction(n, rest);
    // merge b into a, relabel the last vertex as b, drop new loops
    let relabel = |v: usize| {
        let v = if v == b { a } else { v };
        if v == n - 1 {
            b
        } else {
            v
        }
    };
    let contracted: Vec<(usize, usize)> = rest
        .iter()
        .map(|&(x, y)| (relabel(x), relabel(y)))
        .filter(|(x, y)| x != y)
        .collect();
    deleted + deletion_contraction(n - 1, &contracted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{banana, complete, cycle, path};

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn boundary_single_edge_and_loop() {
        let g = WeightedGraph::unweighted(2, &[(0, 1)]).unwrap();
        let d = boundary_matrix(&g, &Orientation::along_declared(&g)).unwrap();
        assert_eq!(d, IntegerMatrix::from_rows(&[vec![1], vec![-1]]));
        let l = WeightedGraph::unweighted(1, &[(0, 0)]).unwrap();
        let d = boundary_matrix(&l, &Orientation::along_declared(&l)).unwrap();
        assert_eq!(d, IntegerMatrix::from_rows(&[vec![0]]));
        let c = banana(2);
        let d = boundary_matrix(&c, &Orientation::along_declared(&c)).unwrap();
        assert_eq!(d, IntegerMatrix::from_rows(&[vec![1, 1], vec![-1, -1]]));
    }

    #[test]
    fn coboundary_is_transpose() {
        let g = WeightedGraph::unweighted(2, &[(0, 1)]).unwrap();
        let o = Orientation::along_declared(&g);
        let c = coboundary_matrix(&g, &o).unwrap();
        assert_eq!(c[(0, 0)], BigInt::one());
        let iso = WeightedGraph::unweighted(3, &[(0, 1)]).unwrap();
        let c = coboundary_matrix(&iso, &Orientation::along_declared(&iso)).unwrap();
        assert!(c[(0, 2)].is_zero());
        let t = banana(3);
        let o = Orientation::along_declared(&t);
        assert_eq!(coboundary_matrix(&t, &o).unwrap(), boundary_matrix(&t, &o).unwrap().transpose());
    }

    #[test]
    fn partial_orientation_rejected() {
        let g = banana(2);
        let o = Orientation::along_declared(&g).restrict(crate::EdgeSet::singleton(0));
        assert_eq!(
            boundary_matrix(&g, &o).unwrap_err(),
            Error::IncompleteOrientation("e1".into())
        );
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(
            laplacian(&banana(2)),
            IntegerMatrix::from_rows(&[vec![2, -2], vec![-2, 2]])
        );
        assert_eq!(
            laplacian(&WeightedGraph::unweighted(1, &[(0, 0)]).unwrap()),
            IntegerMatrix::from_rows(&[vec![0]])
        );
        assert_eq!(
            laplacian(&cycle(4)),
            IntegerMatrix::from_rows(&[
                vec![2, -1, 0, -1],
                vec![-1, 2, -1, 0],
                vec![0, -1, 2, -1],
                vec![-1, 0, -1, 2],
            ])
        );
    }

    fn check_smith(m: &IntegerMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        let d = s.left.mul(m).mul(&s.right);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let expected = if i == j { s.diagonal[i].clone() } else { BigInt::zero() };
                assert_eq!(d[(i, j)], expected, "entry ({i},{j})");
            }
        }
        assert_eq!(s.left.determinant().abs(), BigInt::one());
        assert_eq!(s.right.determinant().abs(), BigInt::one());
        for w in s.diagonal.windows(2) {
            if w[0].is_zero() {
                assert!(w[1].is_zero(), "zeros must trail");
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        s
    }

    #[test]
    fn smith_examples() {
        let s = check_smith(&IntegerMatrix::identity(2));
        assert_eq!(s.diagonal, vec![BigInt::one(), BigInt::one()]);
        let s = check_smith(&IntegerMatrix::from_rows(&[vec![2, -2], vec![-2, 2]]));
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::zero()]);
        let s = check_smith(&IntegerMatrix::zeros(2, 3));
        assert!(s.diagonal.iter().all(Zero::is_zero));
        let s = check_smith(&IntegerMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        // needs the divisibility fix-up: diag(2, 3) -> diag(1, 6)
        let s = check_smith(&IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal, vec![BigInt::one(), BigInt::from(6)]);
    }

    #[test]
    fn component_group_examples() {
        let phi = component_group(&banana(2)).unwrap();
        assert_eq!(phi.invariant_factors, vec![big(2)]);
        assert_eq!(phi.order(), big(2));
        assert_eq!(component_group(&cycle(4)).unwrap().order(), big(4));
        let tree = path(4);
        assert!(component_group(&tree).unwrap().is_trivial());
        assert_eq!(component_group(&tree).unwrap().order(), big(1));
        // K4: Z/4 + Z/4
        let k4 = component_group(&complete(4)).unwrap();
        assert_eq!(k4.invariant_factors, vec![big(4), big(4)]);
        assert_eq!(k4.to_string(), "Z/4 + Z/4");
        assert_eq!(
            component_group(&WeightedGraph::unweighted(2, &[]).unwrap()).unwrap_err(),
            Error::Disconnected
        );
    }

    #[test]
    fn tree_count_examples() {
        for n in 1..7 {
            assert_eq!(spanning_tree_count(&cycle(n)).unwrap(), big(n as u64));
        }
        assert_eq!(spanning_tree_count(&banana(3)).unwrap(), big(3));
        assert_eq!(spanning_tree_count(&path(5)).unwrap(), big(1));
        assert_eq!(spanning_tree_count_oracle(&banana(2)).unwrap(), big(2));
        assert_eq!(spanning_tree_count_oracle(&cycle(4)).unwrap(), big(4));
        assert_eq!(spanning_tree_count_oracle(&complete(4)).unwrap(), big(16));
        assert_eq!(spanning_tree_count(&complete(5)).unwrap(), big(125));
    }

    #[test]
    fn free_rank_of_full_laplacian() {
        let s = smith_normal_form(&laplacian(&cycle(3)));
        let full = ComponentGroup::from_diagonal(&s.diagonal, 3);
        assert_eq!(full.free_rank, 1);
        assert_eq!(full.invariant_factors, vec![big(3)]);
    }
}
