//! Smith normal form over a Euclidean coefficient domain (integers or
//! rational-coefficient polynomials), with unimodular transform
//! accumulation. The gcd-of-minors determinantal divisors in `matrices`
//! serve as the independent oracle.

use num_bigint::BigUint;

use crate::matrices::Matrix;
use crate::ring::EuclideanRing;

/// `left * input * right = diag(diagonal)` padded with zeros; `left` and
/// `right` unimodular; diagonal entries normalized, each dividing the next,
/// zeros trailing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition<T: EuclideanRing> {
    pub left: Matrix<T>,
    pub diagonal: Vec<T>,
    pub right: Matrix<T>,
}

impl<T: EuclideanRing> SmithDecomposition<T> {
    /// The diagonal as a full rows-by-cols matrix.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> Matrix<T> {
        let mut m = Matrix::zero(rows, cols);
        for (i, d) in self.diagonal.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

struct Worker<T: EuclideanRing> {
    m: Matrix<T>,
    left: Option<Matrix<T>>,
    right: Option<Matrix<T>>,
}

impl<T: EuclideanRing> Worker<T> {
    fn new(m: Matrix<T>, accumulate: bool) -> Self {
        let (r, c) = (m.rows(), m.cols());
        Worker {
            m,
            left: accumulate.then(|| Matrix::identity(r)),
            right: accumulate.then(|| Matrix::identity(c)),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.m.cols() {
            let t = self.m[(a, j)].clone();
            self.m[(a, j)] = self.m[(b, j)].clone();
            self.m[(b, j)] = t;
        }
        if let Some(l) = &mut self.left {
            for j in 0..l.cols() {
                let t = l[(a, j)].clone();
                l[(a, j)] = l[(b, j)].clone();
                l[(b, j)] = t;
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.m.rows() {
            let t = self.m[(i, a)].clone();
            self.m[(i, a)] = self.m[(i, b)].clone();
            self.m[(i, b)] = t;
        }
        if let Some(r) = &mut self.right {
            for i in 0..r.rows() {
                let t = r[(i, a)].clone();
                r[(i, a)] = r[(i, b)].clone();
                r[(i, b)] = t;
            }
        }
    }

    /// row[a] -= q * row[b]
    fn row_axpy(&mut self, a: usize, b: usize, q: &T) {
        for j in 0..self.m.cols() {
            let t = q.mul(&self.m[(b, j)]);
            self.m[(a, j)] = self.m[(a, j)].sub(&t);
        }
        if let Some(l) = &mut self.left {
            for j in 0..l.cols() {
                let t = q.mul(&l[(b, j)]);
                l[(a, j)] = l[(a, j)].sub(&t);
            }
        }
    }

    /// col[a] -= q * col[b]
    fn col_axpy(&mut self, a: usize, b: usize, q: &T) {
        for i in 0..self.m.rows() {
            let t = q.mul(&self.m[(i, b)]);
            self.m[(i, a)] = self.m[(i, a)].sub(&t);
        }
        if let Some(r) = &mut self.right {
            for i in 0..r.rows() {
                let t = q.mul(&r[(i, b)]);
                r[(i, a)] = r[(i, a)].sub(&t);
            }
        }
    }

    /// row[a] += row[b]
    fn row_add(&mut self, a: usize, b: usize) {
        let minus_one = T::zero().sub(&T::one());
        self.row_axpy(a, b, &minus_one);
    }

    /// Divide row `a` by unit `u`.
    fn row_unscale(&mut self, a: usize, u: &T) {
        for j in 0..self.m.cols() {
            self.m[(a, j)] = self.m[(a, j)].exact_div(u);
        }
        if let Some(l) = &mut self.left {
            for j in 0..l.cols() {
                l[(a, j)] = l[(a, j)].exact_div(u);
            }
        }
    }

    /// Extract unit scalar content from rows at or below `t` to keep entry
    /// growth down; a no-op for domains without such content (integers).
    fn extract_content(&mut self, t: usize) {
        for i in t..self.m.rows() {
            let row: Vec<T> = (t..self.m.cols()).map(|j| self.m[(i, j)].clone()).collect();
            if let Some(c) = T::unit_content(&row) {
                if (t..self.m.cols()).all(|j| {
                    let e = &self.m[(i, j)];
                    e.is_zero() || e.rem(&c).is_zero()
                }) && (0..t).all(|j| self.m[(i, j)].is_zero())
                {
                    self.row_unscale(i, &c);
                }
            }
        }
    }

    /// Smallest nonzero entry in the trailing submatrix, ties broken
    /// topmost-then-leftmost.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigUint, usize, usize)> = None;
        for i in t..self.m.rows() {
            for j in t..self.m.cols() {
                let e = &self.m[(i, j)];
                if e.is_zero() {
                    continue;
                }
                let size = e.euclid_size();
                let better = match &best {
                    None => true,
                    Some((s, _, _)) => size < *s,
                };
                if better {
                    best = Some((size, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn reduce(mut self) -> SmithDecomposition<T> {
        let steps = self.m.rows().min(self.m.cols());
        for t in 0..steps {
            self.extract_content(t);
            'pivot: while let Some((pi, pj)) = self.find_pivot(t) {
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                // Clear column t below the pivot.
                for i in t + 1..self.m.rows() {
                    if self.m[(i, t)].is_zero() {
                        continue;
                    }
                    let (q, r) = self.m[(i, t)].div_rem(&self.m[(t, t)]);
                    self.row_axpy(i, t, &q);
                    if !r.is_zero() {
                        continue 'pivot;
                    }
                }
                // Clear row t right of the pivot.
                for j in t + 1..self.m.cols() {
                    if self.m[(t, j)].is_zero() {
                        continue;
                    }
                    let (q, r) = self.m[(t, j)].div_rem(&self.m[(t, t)]);
                    self.col_axpy(j, t, &q);
                    if !r.is_zero() {
                        continue 'pivot;
                    }
                }
                // Pivot must divide the rest of the submatrix.
                for i in t + 1..self.m.rows() {
                    for j in t + 1..self.m.cols() {
                        if !self.m[(i, j)].rem(&self.m[(t, t)]).is_zero() {
                            self.row_add(t, i);
                            continue 'pivot;
                        }
                    }
                }
                break;
            }
            if !self.m[(t, t)].is_zero() {
                let u = self.m[(t, t)].normal_unit();
                if u != T::one() {
                    self.row_unscale(t, &u);
                }
            }
        }
        let diagonal: Vec<T> = (0..steps).map(|i| self.m[(i, i)].clone()).collect();
        let rows = self.m.rows();
        let cols = self.m.cols();
        SmithDecomposition {
            left: self.left.unwrap_or_else(|| Matrix::identity(rows)),
            diagonal,
            right: self.right.unwrap_or_else(|| Matrix::identity(cols)),
        }
    }
}

/// Smith normal form with unimodular transform accumulation.
pub fn smith_normal_form<T: EuclideanRing>(m: &Matrix<T>) -> SmithDecomposition<T> {
    Worker::new(m.clone(), true).reduce()
}

/// Diagonal only; skips transform bookkeeping.
pub fn smith_diagonal<T: EuclideanRing>(m: &Matrix<T>) -> Vec<T> {
    Worker::new(m.clone(), false).reduce().diagonal
}

/// Non-unit diagonal entries of the Smith form, in divisibility order.
pub fn invariant_factors<T: EuclideanRing>(m: &Matrix<T>) -> Vec<T> {
    smith_diagonal(m)
        .into_iter()
        .filter(|d| !d.is_zero() && !d.is_unit())
        .collect()
}

/// Exact inverse of a unimodular matrix: adjugate over determinant (a unit).
pub fn unimodular_inverse<T: EuclideanRing>(m: &Matrix<T>) -> Matrix<T> {
    let det = m.determinant().expect("square unimodular matrix");
    assert!(det.is_unit(), "matrix is not unimodular");
    let adj = m.adjugate().expect("square");
    adj.map(|e| e.exact_div(&det))
}
