//! Similarity theory of square rational matrices: invariant factors of the
//! characteristic matrix, elementary divisors, Frobenius and Jordan
//! canonical forms, explicit similarity transforms, and the constructor for
//! prescribed elementary divisors.

use std::cmp::Ordering;

use thiserror::Error;

use crate::matrices::{characteristic_matrix, invert, Matrix, MatrixError};
use crate::numeric::{factor_over_rationals, FactorConfig, NumericError, Polynomial, Rational};
use crate::ring::Ring;
use crate::smith::{smith_normal_form, unimodular_inverse};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonicalError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("NonSplitCharPoly: irreducible factor {0} of degree > 1 remains")]
    NonSplitCharPoly(Polynomial),
    #[error("NotSimilar: the matrices have different invariant factors")]
    NotSimilar,
    #[error("EmptyList: a nonempty elementary divisor list is required")]
    EmptyList,
}

/// Prime-power similarity invariants `(irreducible, exponent)`, repetition
/// allowed, sorted by (irreducible degree, coefficients lexicographic,
/// exponent descending).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryDivisorList {
    entries: Vec<(Polynomial, u32)>,
}

impl ElementaryDivisorList {
    pub fn new(mut entries: Vec<(Polynomial, u32)>) -> Self {
        entries.sort_by(|(p, e), (q, f)| p.cmp_lex(q).then(f.cmp(e)));
        ElementaryDivisorList { entries }
    }

    pub fn entries(&self) -> &[(Polynomial, u32)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Product of all `irreducible^exponent`.
    pub fn product(&self) -> Polynomial {
        let mut p = Polynomial::one();
        for (f, e) in &self.entries {
            p = &p * &f.pow(*e);
        }
        p
    }

    pub fn all_linear(&self) -> bool {
        self.entries.iter().all(|(f, _)| f.degree() == Some(1))
    }
}

/// Jordan blocks `(eigenvalue, size)` sorted by (eigenvalue ascending, size
/// descending), plus the assembled matrix with superdiagonal ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanForm {
    pub blocks: Vec<(Rational, usize)>,
    pub matrix: Matrix<Rational>,
}

impl JordanForm {
    pub fn from_blocks(mut blocks: Vec<(Rational, usize)>) -> Self {
        blocks.sort_by(|(a, s), (b, t)| a.cmp(b).then(t.cmp(s)));
        let n: usize = blocks.iter().map(|(_, s)| s).sum();
        let mut m = Matrix::zero(n, n);
        let mut at = 0;
        for (eigenvalue, size) in &blocks {
            for k in 0..*size {
                m[(at + k, at + k)] = eigenvalue.clone();
                if k + 1 < *size {
                    m[(at + k, at + k + 1)] = Rational::one();
                }
            }
            at += size;
        }
        JordanForm { blocks, matrix: m }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

/// Companion blocks of the non-unit invariant factors, divisibility order;
/// the last block's polynomial is the minimal polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCanonicalForm {
    pub blocks: Vec<Polynomial>,
    pub matrix: Matrix<Rational>,
}

/// Companion matrix: subdiagonal ones, negated coefficients in the last
/// column.
pub fn companion(p: &Polynomial) -> Matrix<Rational> {
    assert!(p.is_monic(), "companion matrix needs a monic polynomial");
    let k = p.degree().expect("nonzero");
    assert!(k >= 1, "companion matrix needs degree >= 1");
    let mut m = Matrix::zero(k, k);
    for i in 1..k {
        m[(i, i - 1)] = Rational::one();
    }
    for i in 0..k {
        m[(i, k - 1)] = -p.coeff(i);
    }
    m
}

fn block_diagonal(blocks: &[Matrix<Rational>]) -> Matrix<Rational> {
    let n: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut m = Matrix::zero(n.max(1), n.max(1));
    let mut at = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m[(at + i, at + j)] = b[(i, j)].clone();
            }
        }
        at += b.rows();
    }
    m
}

/// Non-unit invariant factors of `sI - A`, monic, in divisibility order.
/// The last entry is the minimal polynomial of `A`.
pub fn similarity_invariants(a: &Matrix<Rational>) -> Result<Vec<Polynomial>, CanonicalError> {
    let cm = characteristic_matrix(a)?;
    Ok(crate::smith::invariant_factors(&cm))
}

pub fn minimal_polynomial(a: &Matrix<Rational>) -> Result<Polynomial, CanonicalError> {
    Ok(similarity_invariants(a)?
        .pop()
        .expect("sI - A always has a non-unit factor"))
}

/// Factor every invariant factor; union with multiplicity.
pub fn elementary_divisors(
    a: &Matrix<Rational>,
    config: &FactorConfig,
) -> Result<ElementaryDivisorList, CanonicalError> {
    let mut entries = Vec::new();
    for factor in similarity_invariants(a)? {
        let factorization = factor_over_rationals(&factor, config)?;
        entries.extend(factorization.factors);
    }
    Ok(ElementaryDivisorList::new(entries))
}

/// True iff the invariant factors of `sI - A` and `sI - B` coincide.
pub fn is_similar(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Result<bool, CanonicalError> {
    let n = a.require_square()?;
    let m = b.require_square()?;
    if n != m {
        return Err(MatrixError::DimensionMismatch(a.rows(), a.cols(), b.rows(), b.cols()).into());
    }
    Ok(similarity_invariants(a)? == similarity_invariants(b)?)
}

/// Frobenius form: companion blocks of the non-unit invariant factors.
pub fn rational_form(a: &Matrix<Rational>) -> Result<RationalCanonicalForm, CanonicalError> {
    let factors = similarity_invariants(a)?;
    let blocks_m: Vec<Matrix<Rational>> = factors.iter().map(companion).collect();
    Ok(RationalCanonicalForm {
        matrix: block_diagonal(&blocks_m),
        blocks: factors,
    })
}

/// Jordan form over the rationals; a typed error when the characteristic
/// polynomial does not split into linear factors.
pub fn jordan_form(a: &Matrix<Rational>, config: &FactorConfig) -> Result<JordanForm, CanonicalError> {
    let divisors = elementary_divisors(a, config)?;
    jordan_from_divisors(&divisors)
}

pub fn jordan_from_divisors(divisors: &ElementaryDivisorList) -> Result<JordanForm, CanonicalError> {
    let mut blocks = Vec::new();
    for (f, e) in divisors.entries() {
        if f.degree() != Some(1) {
            return Err(CanonicalError::NonSplitCharPoly(f.clone()));
        }
        blocks.push((-f.coeff(0), *e as usize));
    }
    Ok(JordanForm::from_blocks(blocks))
}

/// Block-diagonal companion realization of prescribed elementary divisors:
/// one companion block of `irreducible^exponent` per entry.
pub fn build_normal_form(divisors: &ElementaryDivisorList) -> Result<Matrix<Rational>, CanonicalError> {
    if divisors.is_empty() {
        return Err(CanonicalError::EmptyList);
    }
    let blocks: Vec<Matrix<Rational>> = divisors
        .entries()
        .iter()
        .map(|(f, e)| companion(&f.pow(*e)))
        .collect();
    Ok(block_diagonal(&blocks))
}

/// An invertible `S` with `S^-1 A S = F`, built by pushing the polynomial
/// Smith transforms of `sI - A` and `sI - F` down to scalar matrices:
/// the transform `Q(s)` with `P(s)(sI-A)Q(s) = sI-F` is evaluated on the
/// right at `F`, which yields a constant solution of `A S = S F`.
pub fn similarity_transform(
    a: &Matrix<Rational>,
    f: &Matrix<Rational>,
) -> Result<Matrix<Rational>, CanonicalError> {
    let snf_a = smith_normal_form(&characteristic_matrix(a)?);
    let snf_f = smith_normal_form(&characteristic_matrix(f)?);
    if snf_a.diagonal != snf_f.diagonal {
        return Err(CanonicalError::NotSimilar);
    }
    // L_A (sI-A) R_A = D = L_F (sI-F) R_F, so Q = R_A R_F^-1 satisfies
    // P (sI-A) Q = sI-F.
    let q = snf_a.right.mul(&unimodular_inverse(&snf_f.right));
    let s = right_evaluate(&q, f);
    let s_inv = invert(&s).ok_or(CanonicalError::NotSimilar)?;
    debug_assert_eq!(s_inv.mul(&a.mul(&s)), *f);
    Ok(s)
}

/// Evaluate a polynomial matrix `Q(s) = sum Q_k s^k` as `sum Q_k * X^k`.
fn right_evaluate(q: &Matrix<Polynomial>, x: &Matrix<Rational>) -> Matrix<Rational> {
    let max_deg = (0..q.rows())
        .flat_map(|i| (0..q.cols()).map(move |j| (i, j)))
        .filter_map(|ij| q[ij].degree())
        .max()
        .unwrap_or(0);
    let n = x.rows();
    let mut acc = Matrix::zero(q.rows(), q.cols());
    let mut power = Matrix::<Rational>::identity(n);
    for k in 0..=max_deg {
        let coeff_matrix = q.map(|p| p.coeff(k));
        acc = acc.add(&coeff_matrix.mul(&power));
        if k < max_deg {
            power = power.mul(x);
        }
    }
    acc
}

/// Rank normal form under two-sided invertible transformations:
/// `P * A * Q` is the identity block of size `rank` padded with zeros.
pub fn equivalence_normal_form(
    a: &Matrix<Rational>,
) -> (Matrix<Rational>, Matrix<Rational>, usize) {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.clone();
    let mut p = Matrix::<Rational>::identity(rows);
    let mut q = Matrix::<Rational>::identity(cols);
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        // pivot search in the trailing block
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !m[(i, j)].is_zero())
        else {
            break;
        };
        swap_rows(&mut m, &mut p, t, pi);
        swap_cols(&mut m, &mut q, t, pj);
        let pivot = m[(t, t)].clone();
        scale_row(&mut m, &mut p, t, &pivot.recip());
        for i in 0..rows {
            if i != t && !m[(i, t)].is_zero() {
                let f = m[(i, t)].clone();
                axpy_row(&mut m, &mut p, i, t, &f);
            }
        }
        for j in 0..cols {
            if j != t && !m[(t, j)].is_zero() {
                let f = m[(t, j)].clone();
                axpy_col(&mut m, &mut q, j, t, &f);
            }
        }
        rank += 1;
    }
    (p, q, rank)
}

fn swap_rows(m: &mut Matrix<Rational>, p: &mut Matrix<Rational>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let t = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = t;
    }
    for j in 0..p.cols() {
        let t = p[(a, j)].clone();
        p[(a, j)] = p[(b, j)].clone();
        p[(b, j)] = t;
    }
}

fn swap_cols(m: &mut Matrix<Rational>, q: &mut Matrix<Rational>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let t = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = t;
    }
    for i in 0..q.rows() {
        let t = q[(i, a)].clone();
        q[(i, a)] = q[(i, b)].clone();
        q[(i, b)] = t;
    }
}

fn scale_row(m: &mut Matrix<Rational>, p: &mut Matrix<Rational>, r: usize, c: &Rational) {
    for j in 0..m.cols() {
        m[(r, j)] = &m[(r, j)] * c;
    }
    for j in 0..p.cols() {
        p[(r, j)] = &p[(r, j)] * c;
    }
}

/// row[i] -= f * row[t]
fn axpy_row(m: &mut Matrix<Rational>, p: &mut Matrix<Rational>, i: usize, t: usize, f: &Rational) {
    for j in 0..m.cols() {
        let v = &m[(t, j)] * f;
        m[(i, j)] = &m[(i, j)] - &v;
    }
    for j in 0..p.cols() {
        let v = &p[(t, j)] * f;
        p[(i, j)] = &p[(i, j)] - &v;
    }
}

/// col[j] -= f * col[t]
fn axpy_col(m: &mut Matrix<Rational>, q: &mut Matrix<Rational>, j: usize, t: usize, f: &Rational) {
    for i in 0..m.rows() {
        let v = &m[(i, t)] * f;
        m[(i, j)] = &m[(i, j)] - &v;
    }
    for i in 0..q.rows() {
        let v = &q[(i, t)] * f;
        q[(i, j)] = &q[(i, j)] - &v;
    }
}

/// Ordering helper for tests and display: blocks by eigenvalue then size.
pub fn cmp_blocks(a: &(Rational, usize), b: &(Rational, usize)) -> Ordering {
    a.0.cmp(&b.0).then(b.1.cmp(&a.1))
}
