//! Dense matrices over an exact coefficient domain: fraction-free
//! determinants, minors and determinantal divisors, adjugates, the
//! characteristic polynomial, and the classical adjugate-column eigenvector
//! procedure for symmetric matrices.

use std::fmt;

use thiserror::Error;

use crate::numeric::{parse_rational, Polynomial, Rational};
use crate::ring::{EuclideanRing, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("NotSquare: {rows}x{cols} matrix where a square one is required")]
    NotSquare { rows: usize, cols: usize },
    #[error("BadOrder: minor order {k} outside 1..={max}")]
    BadOrder { k: usize, max: usize },
    #[error("NotAnEigenvalue: {0} is not a root of the characteristic polynomial")]
    NotAnEigenvalue(String),
    #[error("AdjugateVanishes: adjugate of A - rI is zero at r = {0} (multiple root)")]
    AdjugateVanishes(String),
    #[error("DimensionMismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("NotSymmetric: entry ({0},{1}) differs from ({1},{0})")]
    NotSymmetric(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseMatrixError {
    #[error("EmptyInput: no matrix rows found")]
    EmptyInput,
    #[error("RaggedRows: row {row} has {got} entries, expected {expected}")]
    RaggedRows { row: usize, got: usize, expected: usize },
    #[error("BadEntry: line {line}, column {column}: {message}")]
    BadEntry { line: usize, column: usize, message: String },
}

/// Dense row-major matrix over `T`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        assert!(r >= 1);
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![T::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        let mut m = Matrix::zero(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize, MatrixError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix::new(self.cols, self.rows, data)
    }

    pub fn add(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.add(b))
            .collect();
        Matrix::new(self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.sub(b))
            .collect();
        Matrix::new(self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Matrix<T> {
        Matrix::new(self.rows, self.cols, self.data.iter().map(|a| a.neg()).collect())
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Matrix::<T>::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)].add(&a.mul(&other[(k, j)]));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &T) -> Matrix<T> {
        Matrix::new(self.rows, self.cols, self.data.iter().map(|a| a.mul(c)).collect())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix::new(self.rows, self.cols, self.data.iter().map(f).collect())
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Matrix<T> {
        let mut data = Vec::with_capacity(row_idx.len() * col_idx.len());
        for &i in row_idx {
            for &j in col_idx {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix::new(row_idx.len(), col_idx.len(), data)
    }

    /// Exact determinant by single-step fraction-free (Bareiss) elimination
    /// with row pivoting.
    pub fn determinant(&self) -> Result<T, MatrixError> {
        let n = self.require_square()?;
        let mut m = self.clone();
        let mut sign_flip = false;
        let mut prev = T::one();
        for k in 0..n.saturating_sub(1) {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign_flip = !sign_flip;
                    }
                    None => return Ok(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[(k, k)].mul(&m[(i, j)]).sub(&m[(i, k)].mul(&m[(k, j)]));
                    m[(i, j)] = num.exact_div(&prev);
                }
                m[(i, k)] = T::zero();
            }
            prev = m[(k, k)].clone();
        }
        let det = m[(n - 1, n - 1)].clone();
        Ok(if sign_flip { det.neg() } else { det })
    }

    /// Reference determinant by cofactor expansion; test oracle for n <= 4.
    pub fn determinant_cofactor(&self) -> Result<T, MatrixError> {
        let n = self.require_square()?;
        if n == 1 {
            return Ok(self[(0, 0)].clone());
        }
        let mut det = T::zero();
        let rows: Vec<usize> = (1..n).collect();
        for j in 0..n {
            if self[(0, j)].is_zero() {
                continue;
            }
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = self.submatrix(&rows, &cols).determinant_cofactor()?;
            let term = self[(0, j)].mul(&minor);
            det = if j % 2 == 0 { det.add(&term) } else { det.sub(&term) };
        }
        Ok(det)
    }

    /// Classical adjugate: `M * adjugate(M) = det(M) * I`.
    pub fn adjugate(&self) -> Result<Matrix<T>, MatrixError> {
        let n = self.require_square()?;
        if n == 1 {
            return Ok(Matrix::identity(1));
        }
        let mut adj = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let minor = self.submatrix(&rows, &cols).determinant()?;
                adj[(j, i)] = if (i + j) % 2 == 0 { minor } else { minor.neg() };
            }
        }
        Ok(adj)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T: Ring> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T: Ring> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl<T: Ring> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} {:?}", self.rows, self.cols, self.data)
    }
}

/// All k-element index subsets of `0..n` in lexicographic order.
pub(crate) fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k == 0 || k > n {
        return if k == 0 { vec![Vec::new()] } else { out };
    }
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Normalized gcd of all k-by-k minors; zero when every such minor vanishes.
/// The independent oracle for the Smith normal form.
pub fn determinantal_divisor<T: EuclideanRing>(m: &Matrix<T>, k: usize) -> Result<T, MatrixError> {
    let max = m.rows().min(m.cols());
    if k == 0 || k > max {
        return Err(MatrixError::BadOrder { k, max });
    }
    let mut g = T::zero();
    for rows in index_subsets(m.rows(), k) {
        for cols in index_subsets(m.cols(), k) {
            let minor = m.submatrix(&rows, &cols).determinant()?;
            g = g.gcd(&minor);
            if g.is_unit() {
                let u = g.normal_unit();
                return Ok(g.exact_div(&u));
            }
        }
    }
    Ok(g)
}

/// `s*I - A` as a polynomial matrix.
pub fn characteristic_matrix(a: &Matrix<Rational>) -> Result<Matrix<Polynomial>, MatrixError> {
    let n = a.require_square()?;
    let mut m = a.map(|c| Polynomial::constant(-c.clone()));
    for i in 0..n {
        let diag = &m[(i, i)] + &Polynomial::monomial(Rational::one(), 1);
        m[(i, i)] = diag;
    }
    Ok(m)
}

/// Monic characteristic polynomial `det(sI - A)`.
pub fn char_poly(a: &Matrix<Rational>) -> Result<Polynomial, MatrixError> {
    let m = characteristic_matrix(a)?;
    let det = m.determinant()?;
    debug_assert!(det.is_monic());
    Ok(det)
}

/// Square rational matrix constrained to be symmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricMatrix {
    inner: Matrix<Rational>,
}

impl SymmetricMatrix {
    pub fn new(m: Matrix<Rational>) -> Result<Self, MatrixError> {
        let n = m.require_square()?;
        for i in 0..n {
            for j in i + 1..n {
                if m[(i, j)] != m[(j, i)] {
                    return Err(MatrixError::NotSymmetric(i, j));
                }
            }
        }
        Ok(SymmetricMatrix { inner: m })
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.inner
    }

    pub fn dim(&self) -> usize {
        self.inner.rows()
    }
}

/// The historic cofactor-column eigenvector: the first nonzero column of
/// `adjugate(A - rI)`, scanned left to right. Fails with `AdjugateVanishes`
/// at eigenvalues of multiplicity >= 2, where the generic practice breaks.
pub fn adjugate_eigenvector(a: &SymmetricMatrix, r: &Rational) -> Result<Vec<Rational>, MatrixError> {
    let n = a.dim();
    let shifted = a.matrix().sub(&Matrix::identity(n).scale(r));
    if !shifted.determinant()?.is_zero() {
        return Err(MatrixError::NotAnEigenvalue(r.to_string()));
    }
    let adj = shifted.adjugate()?;
    for j in 0..n {
        let col = adj.column(j);
        if col.iter().any(|c| !c.is_zero()) {
            return Ok(col);
        }
    }
    Err(MatrixError::AdjugateVanishes(r.to_string()))
}

/// Gauss-Jordan inverse over the rationals; `None` when singular.
pub fn invert(m: &Matrix<Rational>) -> Option<Matrix<Rational>> {
    let n = m.require_square().ok()?;
    let mut a = m.clone();
    let mut inv = Matrix::<Rational>::identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&i| !a[(i, col)].is_zero())?;
        a.swap_rows(col, pivot);
        inv.swap_rows(col, pivot);
        let p = a[(col, col)].clone();
        for j in 0..n {
            a[(col, j)] = &a[(col, j)] / &p;
            inv[(col, j)] = &inv[(col, j)] / &p;
        }
        for i in 0..n {
            if i == col || a[(i, col)].is_zero() {
                continue;
            }
            let f = a[(i, col)].clone();
            for j in 0..n {
                let t = &a[(col, j)] * &f;
                a[(i, j)] = &a[(i, j)] - &t;
                let t = &inv[(col, j)] * &f;
                inv[(i, j)] = &inv[(i, j)] - &t;
            }
        }
    }
    Some(inv)
}

/// Basis of the right nullspace of a rational matrix.
pub fn nullspace(m: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let pv = a[(r, c)].clone();
        for j in 0..cols {
            a[(r, j)] = &a[(r, j)] / &pv;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in 0..cols {
                let t = &a[(r, j)] * &f;
                a[(i, j)] = &a[(i, j)] - &t;
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -a[(row, free)].clone();
        }
        basis.push(v);
    }
    basis
}

/// Parse the shared matrix text format: `#` comment lines, one row per
/// line, whitespace-separated integer or `p/q` entries.
pub fn parse_matrix_text(content: &str) -> Result<Matrix<Rational>, ParseMatrixError> {
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut expected = None;
    for (line_no, line) in content.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for (col_no, token) in line.split_whitespace().enumerate() {
            let value = parse_rational(token).map_err(|message| ParseMatrixError::BadEntry {
                line: line_no + 1,
                column: col_no + 1,
                message,
            })?;
            row.push(value);
        }
        if let Some(expected) = expected {
            if row.len() != expected {
                return Err(ParseMatrixError::RaggedRows {
                    row: rows.len() + 1,
                    got: row.len(),
                    expected,
                });
            }
        } else {
            expected = Some(row.len());
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ParseMatrixError::EmptyInput);
    }
    Ok(Matrix::from_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    pub(crate) fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
        )
    }

    fn note19() -> Matrix<Rational> {
        mat(&[&[1, -1, 0], &[-1, 2, 1], &[0, 1, 1]])
    }

    #[test]
    fn determinant_basics() {
        assert_eq!(Matrix::<Rational>::identity(3).determinant().unwrap(), int(1));
        assert_eq!(note19().determinant().unwrap(), int(0));
        assert_eq!(mat(&[&[1, 2], &[3, 4]]).determinant().unwrap(), int(-2));
        assert!(mat(&[&[1, 2, 3]]).determinant().is_err());
    }

    #[test]
    fn determinant_multiplicative() {
        let a = mat(&[&[2, 1, 0], &[1, -1, 3], &[0, 4, 1]]);
        let b = mat(&[&[1, 0, 2], &[-2, 1, 1], &[3, 3, 0]]);
        let lhs = a.mul(&b).determinant().unwrap();
        let rhs = a.determinant().unwrap() * b.determinant().unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let samples = [
            mat(&[&[0, 2], &[5, -1]]),
            mat(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]),
            mat(&[&[3, 1, 4, 1], &[5, 9, 2, 6], &[5, 3, 5, 8], &[9, 7, 9, 3]]),
        ];
        for m in &samples {
            assert_eq!(m.determinant().unwrap(), m.determinant_cofactor().unwrap());
        }
    }

    #[test]
    fn adjugate_identity() {
        let m = mat(&[&[1, 2, 0], &[0, 3, 1], &[4, 0, 1]]);
        let det = m.determinant().unwrap();
        let prod = m.mul(&m.adjugate().unwrap());
        assert_eq!(prod, Matrix::identity(3).scale(&det));
        // and over polynomials
        let p = characteristic_matrix(&m).unwrap();
        let pd = p.determinant().unwrap();
        let prod = p.mul(&p.adjugate().unwrap());
        let mut expected = Matrix::<Polynomial>::zero(3, 3);
        for i in 0..3 {
            expected[(i, i)] = pd.clone();
        }
        assert_eq!(prod, expected);
    }

    #[test]
    fn char_poly_note19() {
        // s(s-1)(s-3) = s^3 - 4s^2 + 3s
        assert_eq!(char_poly(&note19()).unwrap(), Polynomial::from_i64(&[0, 3, -4, 1]));
        assert_eq!(
            char_poly(&Matrix::identity(2)).unwrap(),
            Polynomial::from_i64(&[1, -2, 1])
        );
    }

    #[test]
    fn char_poly_companion() {
        // companion of s^3 - 2s + 7, coefficients in the last column
        let c = mat(&[&[0, 0, -7], &[1, 0, 2], &[0, 1, 0]]);
        assert_eq!(char_poly(&c).unwrap(), Polynomial::from_i64(&[7, -2, 0, 1]));
    }

    #[test]
    fn determinantal_divisor_jordan_block() {
        // sI - J2(0) = [[s, -1], [0, s]]
        let j = mat(&[&[0, 1], &[0, 0]]);
        let cm = characteristic_matrix(&j).unwrap();
        assert_eq!(determinantal_divisor(&cm, 1).unwrap(), Polynomial::one());
        assert_eq!(
            determinantal_divisor(&cm, 2).unwrap(),
            Polynomial::from_i64(&[0, 0, 1])
        );
        assert!(determinantal_divisor(&cm, 3).is_err());
        let zero2 = characteristic_matrix(&mat(&[&[0, 0], &[0, 0]])).unwrap();
        assert_eq!(determinantal_divisor(&zero2, 1).unwrap(), Polynomial::from_i64(&[0, 1]));
    }

    #[test]
    fn adjugate_eigenvectors_note19() {
        let a = SymmetricMatrix::new(note19()).unwrap();
        assert_eq!(adjugate_eigenvector(&a, &int(1)).unwrap(), vec![int(-1), int(0), int(-1)]);
        assert_eq!(adjugate_eigenvector(&a, &int(0)).unwrap(), vec![int(1), int(1), int(-1)]);
        // documented discrepancy with the printed third vector: computation
        // gives the direction (1, -2, -1)
        let v = adjugate_eigenvector(&a, &int(3)).unwrap();
        let scale = &v[0];
        let dir: Vec<Rational> = v.iter().map(|c| c / scale).collect();
        assert_eq!(dir, vec![int(1), int(-2), int(-1)]);
    }

    #[test]
    fn adjugate_vanishes_on_multiple_root() {
        let a = SymmetricMatrix::new(mat(&[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!(
            adjugate_eigenvector(&a, &int(2)),
            Err(MatrixError::AdjugateVanishes("2".into()))
        );
        assert!(matches!(
            adjugate_eigenvector(&a, &int(5)),
            Err(MatrixError::NotAnEigenvalue(_))
        ));
    }

    #[test]
    fn parse_and_render() {
        let text = "# note 19\n1 -1 0\n-1 2 1\n0 1 1\n";
        let m = parse_matrix_text(text).unwrap();
        assert_eq!(m, note19());
        let rendered = m.to_string();
        assert_eq!(parse_matrix_text(&rendered).unwrap(), m);
        assert_eq!(
            parse_matrix_text("1/2").unwrap(),
            Matrix::from_rows(vec![vec![rat(1, 2)]])
        );
        assert_eq!(
            parse_matrix_text("1 2\n3"),
            Err(ParseMatrixError::RaggedRows { row: 2, got: 1, expected: 2 })
        );
        assert_eq!(parse_matrix_text("# only\n\n"), Err(ParseMatrixError::EmptyInput));
        assert!(matches!(
            parse_matrix_text("1 x\n2 3"),
            Err(ParseMatrixError::BadEntry { line: 1, column: 2, .. })
        ));
    }

    #[test]
    fn inverse_and_nullspace() {
        let m = mat(&[&[2, 1], &[1, 1]]);
        let inv = invert(&m).unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(invert(&note19()).is_none());
        let ns = nullspace(&note19());
        assert_eq!(ns.len(), 1);
        // A v = 0
        let v = Matrix::new(3, 1, ns[0].clone());
        assert!(note19().mul(&v).is_zero_matrix());
    }

    #[test]
    fn cayley_hamilton_small() {
        for m in [mat(&[&[1, 2], &[3, 4]]), mat(&[&[0, 1, 0], &[0, 0, 1], &[2, -5, 4]])] {
            let p = char_poly(&m).unwrap();
            let n = m.rows();
            let mut acc = Matrix::<Rational>::zero(n, n);
            let mut power = Matrix::<Rational>::identity(n);
            for c in p.coeffs() {
                acc = acc.add(&power.scale(c));
                power = power.mul(&m);
            }
            assert!(acc.is_zero_matrix());
        }
    }
}
