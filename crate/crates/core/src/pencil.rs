//! Regular matrix pencils `A + sB`: regularity, finite and infinite
//! elementary divisors, strict equivalence, reduction to Jordan pencil form,
//! and the symmetric-pair theory (definiteness, inertia, simultaneous
//! diagonalization, the linear-divisor splitting criterion).

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::canonical::{
    jordan_form, similarity_transform, CanonicalError, ElementaryDivisorList, JordanForm,
};
use crate::matrices::{invert, nullspace, Matrix, MatrixError, SymmetricMatrix};
use crate::numeric::{
    factor_over_rationals, isolate_real_roots, FactorConfig, NumericError, Polynomial, Rational,
    RootInterval,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PencilError {
    #[error("SingularPencil: det(A + sB) vanishes identically")]
    SingularPencil,
    #[error("SingularPhi: det(Phi) = 0")]
    SingularPhi,
    #[error("SingularPsi: det(Psi) = 0")]
    SingularPsi,
    #[error("PsiNotDefinite: Psi is not positive definite")]
    PsiNotDefinite,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Canonical(#[from] CanonicalError),
}

/// The one-parameter family `P(s) = A + s*B`, Weierstrass' convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pencil {
    a: Matrix<Rational>,
    b: Matrix<Rational>,
}

impl Pencil {
    pub fn new(a: Matrix<Rational>, b: Matrix<Rational>) -> Result<Self, PencilError> {
        a.require_square()?;
        if a.rows() != b.rows() || a.cols() != b.cols() {
            return Err(MatrixError::DimensionMismatch(a.rows(), a.cols(), b.rows(), b.cols()).into());
        }
        Ok(Pencil { a, b })
    }

    pub fn a(&self) -> &Matrix<Rational> {
        &self.a
    }

    pub fn b(&self) -> &Matrix<Rational> {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    /// `A + s*B` as a polynomial matrix.
    pub fn polynomial_matrix(&self) -> Matrix<Polynomial> {
        let mut m = self.a.map(|c| Polynomial::constant(c.clone()));
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let e = &m[(i, j)] + &Polynomial::monomial(self.b[(i, j)].clone(), 1);
                m[(i, j)] = e;
            }
        }
        m
    }

    pub fn determinant(&self) -> Polynomial {
        self.polynomial_matrix().determinant().expect("square pencil")
    }

    /// The reversed pencil `B + sigma*A`, whose divisors at `sigma = 0`
    /// carry the infinite structure.
    pub fn reversed(&self) -> Pencil {
        Pencil {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }
}

/// Weierstrass' complete strict-equivalence invariants of a regular pencil.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilInvariants {
    pub finite: ElementaryDivisorList,
    pub infinite_degrees: Vec<usize>,
    pub regular: bool,
}

/// `true` iff `det(A + sB)` is not the zero polynomial.
pub fn is_regular(p: &Pencil) -> bool {
    !p.determinant().is_zero()
}

/// Finite divisors from the Smith form of `A + sB`; infinite degrees from
/// the `sigma`-power divisors of the reversed pencil.
pub fn pencil_invariants(p: &Pencil, config: &FactorConfig) -> Result<PencilInvariants, PencilError> {
    if !is_regular(p) {
        return Err(PencilError::SingularPencil);
    }
    let mut entries = Vec::new();
    for factor in crate::smith::invariant_factors(&p.polynomial_matrix()) {
        entries.extend(factor_over_rationals(&factor, config)?.factors);
    }
    let finite = ElementaryDivisorList::new(entries);

    let mut infinite_degrees = Vec::new();
    for factor in crate::smith::invariant_factors(&p.reversed().polynomial_matrix()) {
        let e = factor
            .coeffs()
            .iter()
            .take_while(|c| c.is_zero())
            .count();
        if e > 0 {
            infinite_degrees.push(e);
        }
    }
    infinite_degrees.sort_unstable();
    debug_assert_eq!(
        finite.entries().iter().map(|(f, e)| f.degree().unwrap() * *e as usize).sum::<usize>()
            + infinite_degrees.iter().sum::<usize>(),
        p.dim()
    );
    Ok(PencilInvariants {
        finite,
        infinite_degrees,
        regular: true,
    })
}

/// Strict equivalence of regular pencils: coincidence of finite divisors
/// and infinite degree multisets.
pub fn strictly_equivalent(
    p1: &Pencil,
    p2: &Pencil,
    config: &FactorConfig,
) -> Result<bool, PencilError> {
    if p1.dim() != p2.dim() {
        return Err(MatrixError::DimensionMismatch(p1.dim(), p1.dim(), p2.dim(), p2.dim()).into());
    }
    let i1 = pencil_invariants(p1, config)?;
    let i2 = pencil_invariants(p2, config)?;
    Ok(i1 == i2)
}

/// Reduce `s*Phi - Psi` to `sI - J`: invertible `H`, `K` with
/// `H (s*Phi - Psi) K = sI - J` where `J` is the Jordan form of
/// `Psi * Phi^-1`.
pub fn pencil_to_jordan(
    phi: &Matrix<Rational>,
    psi: &Matrix<Rational>,
    config: &FactorConfig,
) -> Result<(Matrix<Rational>, Matrix<Rational>, JordanForm), PencilError> {
    phi.require_square()?;
    if phi.rows() != psi.rows() || phi.cols() != psi.cols() {
        return Err(MatrixError::DimensionMismatch(phi.rows(), phi.cols(), psi.rows(), psi.cols()).into());
    }
    let phi_inv = invert(phi).ok_or(PencilError::SingularPhi)?;
    let w = psi.mul(&phi_inv);
    let j = jordan_form(&w, config)?;
    let u = similarity_transform(&w, &j.matrix)?;
    let h = invert(&u).expect("similarity transform is invertible");
    let k = phi_inv.mul(&u);
    Ok((h, k, j))
}

/// Sylvester criterion: all leading principal minors strictly positive.
pub fn is_positive_definite(s: &SymmetricMatrix) -> bool {
    leading_minors(s.matrix()).iter().all(|d| d.is_positive())
}

fn leading_minors(m: &Matrix<Rational>) -> Vec<Rational> {
    let n = m.rows();
    (1..=n)
        .map(|k| {
            let idx: Vec<usize> = (0..k).collect();
            m.submatrix(&idx, &idx).determinant().expect("square")
        })
        .collect()
}

/// Sign distribution of the real spectrum of a symmetric matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    /// The leading minors used, when the Jacobi quotient path applies.
    pub principal_minors: Vec<Rational>,
}

/// Inertia via the Jacobi principal-minor quotients when every leading
/// minor is nonzero, otherwise via exact symmetric congruence elimination.
pub fn inertia(s: &SymmetricMatrix) -> Inertia {
    let minors = leading_minors(s.matrix());
    if minors.iter().all(|d| !d.is_zero()) {
        let mut prev = Rational::one();
        let mut positive = 0;
        let mut negative = 0;
        for d in &minors {
            if (d / &prev).is_positive() {
                positive += 1;
            } else {
                negative += 1;
            }
            prev = d.clone();
        }
        return Inertia {
            positive,
            negative,
            zero: 0,
            principal_minors: minors,
        };
    }
    let (positive, negative, zero) = congruence_inertia(s.matrix().clone());
    Inertia {
        positive,
        negative,
        zero,
        principal_minors: Vec::new(),
    }
}

/// Symmetric congruence elimination with diagonal pivoting; the off-diagonal
/// fallback adds a row and column to manufacture a nonzero diagonal entry.
fn congruence_inertia(mut m: Matrix<Rational>) -> (usize, usize, usize) {
    let n = m.rows();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut t = 0;
    while t < n {
        if m[(t, t)].is_zero() {
            if let Some(k) = (t + 1..n).find(|&k| !m[(k, k)].is_zero()) {
                sym_swap(&mut m, t, k);
            } else if let Some((i, j)) = (t..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !m[(i, j)].is_zero())
            {
                // congruence x_i -> x_i + x_j puts 2*m[i][j] on the diagonal
                sym_row_col_add(&mut m, i, j);
                sym_swap(&mut m, t, i);
            } else {
                zero += n - t;
                break;
            }
        }
        let d = m[(t, t)].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in t + 1..n {
            if m[(i, t)].is_zero() {
                continue;
            }
            let f = &m[(i, t)] / &d;
            for j in 0..n {
                let v = &m[(t, j)] * &f;
                m[(i, j)] = &m[(i, j)] - &v;
            }
            for j in 0..n {
                let v = &m[(j, t)] * &f;
                m[(j, i)] = &m[(j, i)] - &v;
            }
        }
        t += 1;
    }
    (pos, neg, zero)
}

fn sym_swap(m: &mut Matrix<Rational>, a: usize, b: usize) {
    if a == b {
        return;
    }
    let n = m.rows();
    for j in 0..n {
        let t = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = t;
    }
    for i in 0..n {
        let t = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = t;
    }
}

/// row[i] += row[j] and col[i] += col[j]
fn sym_row_col_add(m: &mut Matrix<Rational>, i: usize, j: usize) {
    let n = m.rows();
    for c in 0..n {
        m[(i, c)] = &m[(i, c)] + &m[(j, c)].clone();
    }
    for r in 0..n {
        m[(r, i)] = &m[(r, i)] + &m[(r, j)].clone();
    }
}

/// Exact congruence `T` diagonalizing a symmetric pair with rational
/// spectrum: `T' Psi T` positive diagonal, `T' Phi T` diagonal, ratios
/// equal to the pencil roots with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimultaneousDiagonalization {
    pub t: Matrix<Rational>,
    pub diag_phi: Vec<Rational>,
    pub diag_psi: Vec<Rational>,
}

/// Exact spectral data returned when the pencil roots are irrational:
/// isolating intervals with multiplicity, plus the linear-divisor flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralCertificate {
    pub root_intervals: Vec<RootInterval>,
    pub all_divisors_linear: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagonalizationOutcome {
    Diagonalized(SimultaneousDiagonalization),
    Certificate(SpectralCertificate),
}

/// Simultaneously diagonalize the pair `(Phi, Psi)` with `Psi` positive
/// definite. Rational spectrum gives an exact congruence; otherwise an
/// exact spectral certificate (the divisors are linear either way).
pub fn simultaneous_diagonalize(
    phi: &SymmetricMatrix,
    psi: &SymmetricMatrix,
    config: &FactorConfig,
) -> Result<DiagonalizationOutcome, PencilError> {
    let n = phi.dim();
    if n != psi.dim() {
        return Err(MatrixError::DimensionMismatch(n, n, psi.dim(), psi.dim()).into());
    }
    if !is_positive_definite(psi) {
        return Err(PencilError::PsiNotDefinite);
    }
    // det(Phi - s*Psi)
    let pencil = Pencil::new(phi.matrix().clone(), psi.matrix().neg())?;
    let det = pencil.determinant();
    let roots = match factor_over_rationals(&det, config) {
        Ok(f) if f.splits_linearly() => f.rational_roots(),
        _ => {
            return Ok(DiagonalizationOutcome::Certificate(SpectralCertificate {
                root_intervals: isolate_real_roots(&det)?,
                all_divisors_linear: pair_splits(phi.matrix(), psi.matrix())?,
            }))
        }
    };
    let mut columns: Vec<(Rational, Vec<Rational>)> = Vec::new();
    for (root, multiplicity) in roots {
        let shifted = phi.matrix().sub(&psi.matrix().scale(&root));
        let basis = nullspace(&shifted);
        debug_assert_eq!(basis.len(), multiplicity as usize, "eigenspace dim = root multiplicity");
        // Gram-Schmidt in the Psi inner product, no normalization.
        let mut ortho: Vec<Vec<Rational>> = Vec::new();
        for v in basis {
            let mut w = v;
            for u in &ortho {
                let c = &psi_dot(psi, &w, u) / &psi_dot(psi, u, u);
                for (wk, uk) in w.iter_mut().zip(u) {
                    *wk = &*wk - &(&c * uk);
                }
            }
            ortho.push(w);
        }
        for u in ortho {
            columns.push((root.clone(), u));
        }
    }
    debug_assert_eq!(columns.len(), n);
    let mut t = Matrix::<Rational>::zero(n, n);
    let mut diag_phi = Vec::with_capacity(n);
    let mut diag_psi = Vec::with_capacity(n);
    for (j, (root, col)) in columns.iter().enumerate() {
        for i in 0..n {
            t[(i, j)] = col[i].clone();
        }
        let d = psi_dot(psi, col, col);
        diag_phi.push(root * &d);
        diag_psi.push(d);
    }
    Ok(DiagonalizationOutcome::Diagonalized(SimultaneousDiagonalization {
        t,
        diag_phi,
        diag_psi,
    }))
}

fn psi_dot(psi: &SymmetricMatrix, u: &[Rational], v: &[Rational]) -> Rational {
    let m = psi.matrix();
    let n = m.rows();
    let mut acc = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            acc += &u[i] * &m[(i, j)] * &v[j];
        }
    }
    acc
}

/// True iff the minimal polynomial of `Psi^-1 Phi` is squarefree, i.e. all
/// elementary divisors of the pair are linear. A gcd-only test.
pub fn pair_splits(phi: &Matrix<Rational>, psi: &Matrix<Rational>) -> Result<bool, PencilError> {
    let psi_inv = invert(psi).ok_or(PencilError::SingularPsi)?;
    let w = psi_inv.mul(phi);
    let m = crate::canonical::minimal_polynomial(&w)?;
    Ok(crate::numeric::poly_gcd(&m, &m.derivative()).is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
        )
    }

    fn sym(rows: &[&[i64]]) -> SymmetricMatrix {
        SymmetricMatrix::new(mat(rows)).unwrap()
    }

    fn cfg() -> FactorConfig {
        FactorConfig::default()
    }

    fn lin(root: i64) -> Polynomial {
        Polynomial::from_i64(&[-root, 1])
    }

    #[test]
    fn regularity() {
        let a = mat(&[&[5, 1], &[0, 2]]);
        assert!(is_regular(&Pencil::new(a.clone(), Matrix::identity(2)).unwrap()));
        let b = mat(&[&[1, 0], &[0, 0]]);
        assert!(!is_regular(&Pencil::new(b.clone(), b.clone()).unwrap()));
        // Villarceau pair: K = cI, M = [[g,a],[a,f]] with fg != a^2
        let m = mat(&[&[2, 1], &[1, 3]]);
        let k = mat(&[&[4, 0], &[0, 4]]);
        assert!(is_regular(&Pencil::new(k, m).unwrap()));
    }

    #[test]
    fn invariants_with_infinite_part() {
        // A = -I, B = diag(0,1): finite {(s-1)}, infinite degrees {1}
        let p = Pencil::new(Matrix::identity(2).neg(), mat(&[&[0, 0], &[0, 1]])).unwrap();
        let inv = pencil_invariants(&p, &cfg()).unwrap();
        assert_eq!(inv.finite.entries(), &[(lin(1), 1)]);
        assert_eq!(inv.infinite_degrees, vec![1]);
    }

    #[test]
    fn invariants_of_characteristic_pencil() {
        // sI - I
        let p = Pencil::new(Matrix::identity(3).neg(), Matrix::identity(3)).unwrap();
        let inv = pencil_invariants(&p, &cfg()).unwrap();
        assert_eq!(inv.finite.entries(), &[(lin(1), 1), (lin(1), 1), (lin(1), 1)]);
        assert!(inv.infinite_degrees.is_empty());
    }

    #[test]
    fn singular_pencil_rejected() {
        let b = mat(&[&[1, 0], &[0, 0]]);
        let p = Pencil::new(b.clone(), b).unwrap();
        assert_eq!(pencil_invariants(&p, &cfg()), Err(PencilError::SingularPencil));
    }

    #[test]
    fn strict_equivalence_distinguishes_jordan_structure() {
        let j = mat(&[&[0, 1], &[0, 0]]);
        let z = mat(&[&[0, 0], &[0, 0]]);
        let pj = Pencil::new(j.neg(), Matrix::identity(2)).unwrap();
        let pz = Pencil::new(z.neg(), Matrix::identity(2)).unwrap();
        assert!(!strictly_equivalent(&pj, &pz, &cfg()).unwrap());
        assert!(strictly_equivalent(&pj, &pj, &cfg()).unwrap());
    }

    #[test]
    fn pencil_to_jordan_identity_phi() {
        let phi = Matrix::<Rational>::identity(2);
        let psi = mat(&[&[3, 1], &[0, 3]]);
        let (h, k, j) = pencil_to_jordan(&phi, &psi, &cfg()).unwrap();
        assert_eq!(j.blocks, vec![(int(3), 2)]);
        check_pencil_residual(&h, &phi, &psi, &k, &j);
    }

    #[test]
    fn pencil_to_jordan_nonsplit() {
        let phi = Matrix::<Rational>::identity(2);
        let psi = mat(&[&[0, 1], &[-1, 0]]);
        match pencil_to_jordan(&phi, &psi, &cfg()) {
            Err(PencilError::Canonical(CanonicalError::NonSplitCharPoly(f))) => {
                assert_eq!(f, Polynomial::from_i64(&[1, 0, 1]));
            }
            other => panic!("expected NonSplitCharPoly, got {other:?}"),
        }
        let singular = mat(&[&[0, 0], &[0, 0]]);
        assert!(matches!(
            pencil_to_jordan(&singular, &psi, &cfg()),
            Err(PencilError::SingularPhi)
        ));
    }

    /// H (s*Phi - Psi) K = sI - J, checked coefficient-wise.
    pub(crate) fn check_pencil_residual(
        h: &Matrix<Rational>,
        phi: &Matrix<Rational>,
        psi: &Matrix<Rational>,
        k: &Matrix<Rational>,
        j: &JordanForm,
    ) {
        // degree-1 coefficient: H Phi K = I
        assert_eq!(h.mul(phi).mul(k), Matrix::identity(phi.rows()));
        // degree-0 coefficient: -H Psi K = -J
        assert_eq!(h.mul(psi).mul(k), j.matrix);
    }

    #[test]
    fn definiteness() {
        assert!(is_positive_definite(&sym(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])));
        assert!(is_positive_definite(&sym(&[&[2, 1], &[1, 2]])));
        assert!(!is_positive_definite(&sym(&[&[1, 2], &[2, 1]])));
    }

    #[test]
    fn inertia_examples() {
        // note-19 matrix: eigenvalues 0, 1, 3
        let i = inertia(&sym(&[&[1, -1, 0], &[-1, 2, 1], &[0, 1, 1]]));
        assert_eq!((i.positive, i.negative, i.zero), (2, 0, 1));
        let i = inertia(&sym(&[&[1, 0], &[0, 1]]));
        assert_eq!((i.positive, i.negative, i.zero), (2, 0, 0));
        assert_eq!(i.principal_minors, vec![int(1), int(1)]);
        // off-diagonal fallback: eigenvalues +-1
        let i = inertia(&sym(&[&[0, 1], &[1, 0]]));
        assert_eq!((i.positive, i.negative, i.zero), (1, 1, 0));
        assert!(i.principal_minors.is_empty());
    }

    #[test]
    fn diagonalize_simple_pair() {
        let phi = sym(&[&[3, 1], &[1, 3]]);
        let psi = sym(&[&[1, 0], &[0, 1]]);
        let out = simultaneous_diagonalize(&phi, &psi, &cfg()).unwrap();
        let DiagonalizationOutcome::Diagonalized(d) = out else {
            panic!("expected exact diagonalization");
        };
        check_diagonalization(&phi, &psi, &d);
        let mut ratios: Vec<Rational> = d
            .diag_phi
            .iter()
            .zip(&d.diag_psi)
            .map(|(a, b)| a / b)
            .collect();
        ratios.sort();
        assert_eq!(ratios, vec![int(2), int(4)]);
    }

    #[test]
    fn diagonalize_multiple_root() {
        // Phi = 2*Psi: double root 2, still fully diagonalized
        let psi = sym(&[&[2, 1], &[1, 2]]);
        let phi = sym(&[&[4, 2], &[2, 4]]);
        let out = simultaneous_diagonalize(&phi, &psi, &cfg()).unwrap();
        let DiagonalizationOutcome::Diagonalized(d) = out else {
            panic!("expected exact diagonalization");
        };
        check_diagonalization(&phi, &psi, &d);
        for (a, b) in d.diag_phi.iter().zip(&d.diag_psi) {
            assert_eq!(a / b, int(2));
        }
    }

    #[test]
    fn diagonalize_irrational_spectrum_certificate() {
        // det(Phi - s I) = s^2 - 2, roots +-sqrt(2)
        let phi = sym(&[&[1, 1], &[1, -1]]);
        let psi = sym(&[&[1, 0], &[0, 1]]);
        let out = simultaneous_diagonalize(&phi, &psi, &cfg()).unwrap();
        let DiagonalizationOutcome::Certificate(c) = out else {
            panic!("expected certificate");
        };
        assert_eq!(c.root_intervals.len(), 2);
        assert!(c.all_divisors_linear);
    }

    #[test]
    fn psi_must_be_definite() {
        let phi = sym(&[&[1, 0], &[0, 1]]);
        let psi = sym(&[&[1, 2], &[2, 1]]);
        assert_eq!(
            simultaneous_diagonalize(&phi, &psi, &cfg()),
            Err(PencilError::PsiNotDefinite)
        );
    }

    fn check_diagonalization(
        phi: &SymmetricMatrix,
        psi: &SymmetricMatrix,
        d: &SimultaneousDiagonalization,
    ) {
        let tt = d.t.transpose();
        assert_eq!(
            tt.mul(psi.matrix()).mul(&d.t),
            Matrix::diagonal(&d.diag_psi)
        );
        assert_eq!(
            tt.mul(phi.matrix()).mul(&d.t),
            Matrix::diagonal(&d.diag_phi)
        );
        assert!(d.diag_psi.iter().all(|v| v.is_positive()));
    }

    #[test]
    fn pair_splits_examples() {
        let phi = mat(&[&[0, 1], &[0, 0]]);
        assert!(!pair_splits(&phi, &Matrix::identity(2)).unwrap());
        assert!(pair_splits(&mat(&[&[2, 0], &[0, 5]]), &mat(&[&[1, 0], &[0, 3]])).unwrap());
        assert_eq!(
            pair_splits(&phi, &mat(&[&[0, 0], &[0, 0]])),
            Err(PencilError::SingularPsi)
        );
        // symmetric Phi with positive definite Psi always splits
        let phi = mat(&[&[7, 2], &[2, 7]]);
        let psi = mat(&[&[2, 1], &[1, 2]]);
        assert!(pair_splits(&phi, &psi).unwrap());
    }
}
