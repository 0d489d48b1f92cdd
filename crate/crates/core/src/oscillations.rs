//! Linear ODE stability: closed-form solutions of `x' = Ax` through the
//! Jordan chains, the linear-divisor splitting criterion, exact stability
//! classification, and the second-order oscillation problem
//! `M x'' + K x = 0` where only the signs of the pencil roots matter.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::canonical::{jordan_form, minimal_polynomial, similarity_transform, CanonicalError};
use crate::matrices::{nullspace, Matrix, MatrixError, SymmetricMatrix};
use crate::numeric::{
    factor_over_rationals, isolate_real_roots, poly_gcd, FactorConfig, NumericError, Polynomial,
    Rational, RootInterval,
};
use crate::pencil::{is_positive_definite, Pencil, PencilError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OscillationError {
    #[error("MNotDefinite: the mass matrix is not positive definite")]
    MNotDefinite,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Canonical(#[from] CanonicalError),
    #[error(transparent)]
    Pencil(#[from] PencilError),
}

/// One Jordan chain of `A`: `A v_1 = sigma v_1` and
/// `A v_j = sigma v_j + v_{j-1}` for `j > 1`. The chain of length `r`
/// yields the solutions
/// `x_m(t) = e^{sigma t} (t^{m-1}/(m-1)! v_1 + ... + v_m)`, `m <= r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionChain {
    pub eigenvalue: Rational,
    pub vectors: Vec<Vec<Rational>>,
}

impl SolutionChain {
    pub fn length(&self) -> usize {
        self.vectors.len()
    }

    /// Coefficient vectors of the polynomial part of `x_m`, ascending in
    /// powers of `t` and already divided by the factorials.
    pub fn polynomial_part(&self, m: usize) -> Vec<Vec<Rational>> {
        assert!(m >= 1 && m <= self.length());
        let n = self.vectors[0].len();
        let mut coeffs: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n]; m];
        let mut fact = Rational::one();
        for i in (0..m).rev() {
            // vectors[i] contributes at degree m-1-i with weight 1/(m-1-i)!
            let d = m - 1 - i;
            if d > 1 {
                fact = &fact * Rational::from_integer((d as i64).into());
            }
            let inv = fact.recip();
            for (k, v) in self.vectors[i].iter().enumerate() {
                coeffs[d][k] = v * &inv;
            }
        }
        coeffs
    }
}

/// A full fundamental system for `x' = Ax`, one chain per Jordan block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicSolution {
    pub chains: Vec<SolutionChain>,
}

impl SymbolicSolution {
    pub fn dimension(&self) -> usize {
        self.chains.iter().map(|c| c.length()).sum()
    }

    /// Verify every solution symbolically: with `x = e^{sigma t} p(t)`,
    /// the equation `x' = Ax` reads `sigma p + p' = A p` coefficient-wise.
    pub fn satisfies(&self, a: &Matrix<Rational>) -> bool {
        for chain in &self.chains {
            for m in 1..=chain.length() {
                let p = chain.polynomial_part(m);
                let deg = p.len() - 1;
                for d in 0..=deg {
                    let n = p[d].len();
                    for k in 0..n {
                        // coefficient of t^d in sigma*p + p' - A*p
                        let mut lhs = &chain.eigenvalue * &p[d][k];
                        if d < deg {
                            lhs += &p[d + 1][k] * Rational::from_integer(((d + 1) as i64).into());
                        }
                        let mut rhs = Rational::zero();
                        for c in 0..n {
                            rhs += &a[(k, c)] * &p[d][c];
                        }
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Fundamental system of `x' = Ax` via the Jordan reduction; requires the
/// characteristic polynomial to split over the rationals.
pub fn solve_first_order(
    a: &Matrix<Rational>,
    config: &FactorConfig,
) -> Result<SymbolicSolution, OscillationError> {
    let j = jordan_form(a, config)?;
    let s = similarity_transform(a, &j.matrix)?;
    let mut chains = Vec::new();
    let mut col = 0;
    for (eigenvalue, size) in &j.blocks {
        let vectors = (col..col + *size).map(|c| s.column(c)).collect();
        chains.push(SolutionChain {
            eigenvalue: eigenvalue.clone(),
            vectors,
        });
        col += *size;
    }
    Ok(SymbolicSolution { chains })
}

/// All elementary divisors of `A` are linear iff the minimal polynomial is
/// squarefree. Pure gcd computation, no factorization.
pub fn splitting_criterion(a: &Matrix<Rational>) -> Result<bool, OscillationError> {
    let m = minimal_polynomial(a)?;
    Ok(poly_gcd(&m, &m.derivative()).is_one())
}

/// Why a system is unbounded, with the exact algebraic witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnboundedWitness {
    /// An irreducible factor of the characteristic polynomial whose roots
    /// have positive real part (or a positive real root).
    PositiveRealPart { factor: Polynomial },
    /// A critical factor (real part zero) dividing the minimal polynomial
    /// more than once: secular terms `t^k e^{i omega t}` appear.
    NonlinearCriticalDivisor { factor: Polynomial, exponent: u32 },
    /// Second order: a negative pencil root gives a real exponential.
    NegativePencilRoot { root: RootInterval },
    /// Second order: a zero pencil root gives the drift solution `t v`.
    ZeroRootDrift { direction: Vec<Rational> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilityVerdict {
    Bounded,
    Unbounded(UnboundedWitness),
    /// Some irreducible factor has degree >= 3, so the real parts of its
    /// roots are not rationally decidable here; the exact real spectrum of
    /// the characteristic polynomial is returned instead.
    Undecided { real_root_intervals: Vec<RootInterval> },
}

/// Exact boundedness of all solutions of `x' = Ax`. Decided whenever every
/// irreducible factor of the characteristic polynomial has degree at most
/// two; critical factors are checked against the minimal polynomial.
pub fn classify_stability_first_order(
    a: &Matrix<Rational>,
    config: &FactorConfig,
) -> Result<StabilityVerdict, OscillationError> {
    let char_poly = crate::matrices::char_poly(a)?;
    let factorization = match factor_over_rationals(&char_poly, config) {
        Ok(f) => f,
        Err(NumericError::FactorDegreeExceeded(_, _)) => {
            return Ok(StabilityVerdict::Undecided {
                real_root_intervals: isolate_real_roots(&char_poly)?,
            })
        }
        Err(e) => return Err(e.into()),
    };
    let mut critical: Vec<Polynomial> = Vec::new();
    let mut undecidable = false;
    for (f, _) in &factorization.factors {
        match f.degree().expect("irreducible factors are nonconstant") {
            1 => {
                let root = -f.coeff(0);
                if root.is_positive() {
                    return Ok(StabilityVerdict::Unbounded(UnboundedWitness::PositiveRealPart {
                        factor: f.clone(),
                    }));
                }
                if root.is_zero() {
                    critical.push(f.clone());
                }
            }
            2 => {
                let b = f.coeff(1);
                let c = f.coeff(0);
                let disc = &(&b * &b) - &(Rational::from_integer(4.into()) * &c);
                if disc.is_negative() {
                    // complex pair, real part -b/2
                    if b.is_negative() {
                        return Ok(StabilityVerdict::Unbounded(
                            UnboundedWitness::PositiveRealPart { factor: f.clone() },
                        ));
                    }
                    if b.is_zero() {
                        critical.push(f.clone());
                    }
                } else {
                    // irrational real pair; both roots negative iff b>0, c>0
                    if !(b.is_positive() && c.is_positive()) {
                        return Ok(StabilityVerdict::Unbounded(
                            UnboundedWitness::PositiveRealPart { factor: f.clone() },
                        ));
                    }
                }
            }
            _ => undecidable = true,
        }
    }
    if undecidable {
        return Ok(StabilityVerdict::Undecided {
            real_root_intervals: isolate_real_roots(&char_poly)?,
        });
    }
    if !critical.is_empty() {
        let minimal = minimal_polynomial(a)?;
        for f in critical {
            let mut exponent = 0;
            let mut power = Polynomial::one();
            loop {
                power = &power * &f;
                if !power.divides(&minimal) {
                    break;
                }
                exponent += 1;
            }
            if exponent > 1 {
                return Ok(StabilityVerdict::Unbounded(
                    UnboundedWitness::NonlinearCriticalDivisor {
                        factor: f,
                        exponent,
                    },
                ));
            }
        }
    }
    Ok(StabilityVerdict::Bounded)
}

/// `M x'' + K x = 0` with symmetric `M`, `K` and positive definite `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondOrderAnalysis {
    /// Real roots of `det(K - lambda M)`, exact when rational.
    pub pencil_roots: Vec<RootInterval>,
    pub verdict: StabilityVerdict,
}

/// Boundedness of the oscillation problem. All pencil roots are real;
/// solutions are bounded iff every root is positive — root multiplicity is
/// irrelevant because the symmetric pair is always diagonalizable.
pub fn analyze_second_order(
    m: &SymmetricMatrix,
    k: &SymmetricMatrix,
    config: &FactorConfig,
) -> Result<SecondOrderAnalysis, OscillationError> {
    if m.dim() != k.dim() {
        return Err(MatrixError::DimensionMismatch(m.dim(), m.dim(), k.dim(), k.dim()).into());
    }
    if !is_positive_definite(m) {
        return Err(OscillationError::MNotDefinite);
    }
    // det(K - lambda M); regular since M is definite
    let pencil = Pencil::new(k.matrix().clone(), m.matrix().neg())?;
    let det = pencil.determinant();
    let mut roots = isolate_real_roots(&det)?;
    debug_assert_eq!(
        roots.iter().map(|r| r.multiplicity as usize).sum::<usize>(),
        m.dim(),
        "a definite pair has a full real spectrum"
    );
    // Pin down rational roots missed by bisection, when factoring succeeds.
    if let Ok(f) = factor_over_rationals(&det, config) {
        for (root, multiplicity) in f.rational_roots() {
            for iv in roots.iter_mut() {
                if iv.exact_root.is_none() && iv.contains(&root) {
                    *iv = RootInterval {
                        low: root.clone(),
                        high: root.clone(),
                        multiplicity,
                        exact_root: Some(root.clone()),
                    };
                }
            }
        }
    }
    let mut verdict = StabilityVerdict::Bounded;
    for iv in &roots {
        match iv.root_sign() {
            0 => {
                let direction = nullspace(k.matrix())
                    .into_iter()
                    .next()
                    .expect("zero pencil root means K is singular");
                verdict = StabilityVerdict::Unbounded(UnboundedWitness::ZeroRootDrift {
                    direction,
                });
                break;
            }
            -1 => {
                verdict = StabilityVerdict::Unbounded(UnboundedWitness::NegativePencilRoot {
                    root: iv.clone(),
                });
                break;
            }
            _ => {}
        }
    }
    Ok(SecondOrderAnalysis {
        pencil_roots: roots,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

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

    #[test]
    fn solve_diagonalizable() {
        let a = mat(&[&[2, 1], &[1, 2]]);
        let sol = solve_first_order(&a, &cfg()).unwrap();
        assert_eq!(sol.dimension(), 2);
        assert!(sol.chains.iter().all(|c| c.length() == 1));
        let mut eigs: Vec<_> = sol.chains.iter().map(|c| c.eigenvalue.clone()).collect();
        eigs.sort();
        assert_eq!(eigs, vec![int(1), int(3)]);
        assert!(sol.satisfies(&a));
    }

    #[test]
    fn solve_jordan_chain() {
        // J_2(3) conjugated by a shear
        let a = mat(&[&[3, 1], &[0, 3]]);
        let sol = solve_first_order(&a, &cfg()).unwrap();
        assert_eq!(sol.chains.len(), 1);
        assert_eq!(sol.chains[0].length(), 2);
        assert_eq!(sol.chains[0].eigenvalue, int(3));
        assert!(sol.satisfies(&a));
        // chain relations directly
        let c = &sol.chains[0];
        let v1 = Matrix::from_rows(c.vectors[0].iter().map(|x| vec![x.clone()]).collect());
        let v2 = Matrix::from_rows(c.vectors[1].iter().map(|x| vec![x.clone()]).collect());
        assert_eq!(a.mul(&v1), v1.scale(&int(3)));
        assert_eq!(a.mul(&v2), v2.scale(&int(3)).add(&v1));
    }

    #[test]
    fn solve_rejects_nonsplit() {
        let rot = mat(&[&[0, -1], &[1, 0]]);
        assert!(matches!(
            solve_first_order(&rot, &cfg()),
            Err(OscillationError::Canonical(CanonicalError::NonSplitCharPoly(_)))
        ));
    }

    #[test]
    fn polynomial_part_factorials() {
        let chain = SolutionChain {
            eigenvalue: int(0),
            vectors: vec![vec![int(1), int(0)], vec![int(0), int(1)], vec![int(0), int(0)]],
        };
        // x_3 = t^2/2 v1 + t v2 + v3
        let p = chain.polynomial_part(3);
        assert_eq!(p[2], vec![rat(1, 2), int(0)]);
        assert_eq!(p[1], vec![int(0), int(1)]);
        assert_eq!(p[0], vec![int(0), int(0)]);
    }

    #[test]
    fn splitting_criterion_examples() {
        assert!(splitting_criterion(&mat(&[&[2, 0], &[0, 3]])).unwrap());
        assert!(splitting_criterion(&mat(&[&[0, -1], &[1, 0]])).unwrap());
        assert!(!splitting_criterion(&mat(&[&[3, 1], &[0, 3]])).unwrap());
        // repeated eigenvalue but diagonalizable: still splits
        assert!(splitting_criterion(&mat(&[&[5, 0], &[0, 5]])).unwrap());
    }

    #[test]
    fn stability_negative_spectrum() {
        let a = mat(&[&[-1, 0], &[0, -3]]);
        assert_eq!(
            classify_stability_first_order(&a, &cfg()).unwrap(),
            StabilityVerdict::Bounded
        );
    }

    #[test]
    fn stability_positive_root() {
        let a = mat(&[&[-1, 0], &[0, 2]]);
        match classify_stability_first_order(&a, &cfg()).unwrap() {
            StabilityVerdict::Unbounded(UnboundedWitness::PositiveRealPart { factor }) => {
                assert_eq!(factor, Polynomial::from_i64(&[-2, 1]));
            }
            v => panic!("expected positive real part, got {v:?}"),
        }
    }

    #[test]
    fn stability_pure_rotation_is_bounded() {
        let a = mat(&[&[0, -1], &[1, 0]]);
        assert_eq!(
            classify_stability_first_order(&a, &cfg()).unwrap(),
            StabilityVerdict::Bounded
        );
    }

    #[test]
    fn stability_secular_term_detected() {
        // two rotation blocks chained: (s^2+1)^2 divides the minimal polynomial
        let a = mat(&[
            &[0, -1, 1, 0],
            &[1, 0, 0, 1],
            &[0, 0, 0, -1],
            &[0, 0, 1, 0],
        ]);
        match classify_stability_first_order(&a, &cfg()).unwrap() {
            StabilityVerdict::Unbounded(UnboundedWitness::NonlinearCriticalDivisor {
                factor,
                exponent,
            }) => {
                assert_eq!(factor, Polynomial::from_i64(&[1, 0, 1]));
                assert_eq!(exponent, 2);
            }
            v => panic!("expected secular witness, got {v:?}"),
        }
        // two independent rotation blocks: minimal polynomial s^2+1, bounded
        let b = mat(&[
            &[0, -1, 0, 0],
            &[1, 0, 0, 0],
            &[0, 0, 0, -1],
            &[0, 0, 1, 0],
        ]);
        assert_eq!(
            classify_stability_first_order(&b, &cfg()).unwrap(),
            StabilityVerdict::Bounded
        );
    }

    #[test]
    fn stability_repeated_zero_chain() {
        let a = mat(&[&[0, 1], &[0, 0]]);
        match classify_stability_first_order(&a, &cfg()).unwrap() {
            StabilityVerdict::Unbounded(UnboundedWitness::NonlinearCriticalDivisor {
                factor,
                exponent,
            }) => {
                assert_eq!(factor, Polynomial::from_i64(&[0, 1]));
                assert_eq!(exponent, 2);
            }
            v => panic!("expected secular witness, got {v:?}"),
        }
    }

    #[test]
    fn stability_irrational_real_pair() {
        // char = s^2 - 2: roots +-sqrt(2), one positive
        let a = mat(&[&[0, 2], &[1, 0]]);
        assert!(matches!(
            classify_stability_first_order(&a, &cfg()).unwrap(),
            StabilityVerdict::Unbounded(UnboundedWitness::PositiveRealPart { .. })
        ));
        // char = s^2 + 4s + 1: both roots negative irrational
        let b = mat(&[&[0, -1], &[1, -4]]);
        assert_eq!(
            classify_stability_first_order(&b, &cfg()).unwrap(),
            StabilityVerdict::Bounded
        );
    }

    #[test]
    fn stability_undecided_cubic_factor() {
        // companion of s^3 + s + 1 (irreducible, one negative real root,
        // complex pair with positive real part — but not rationally visible)
        let a = mat(&[&[0, 0, -1], &[1, 0, -1], &[0, 1, 0]]);
        match classify_stability_first_order(&a, &cfg()).unwrap() {
            StabilityVerdict::Undecided { real_root_intervals } => {
                assert_eq!(real_root_intervals.len(), 1);
                assert_eq!(real_root_intervals[0].root_sign(), -1);
            }
            v => panic!("expected undecided, got {v:?}"),
        }
    }

    #[test]
    fn second_order_all_positive_roots() {
        // Villarceau pair: M = [[2,1],[1,3]], K = 5I
        // det(K - lambda M) = 5 lambda^2 - 25 lambda + 25
        let m = sym(&[&[2, 1], &[1, 3]]);
        let k = sym(&[&[5, 0], &[0, 5]]);
        let out = analyze_second_order(&m, &k, &cfg()).unwrap();
        assert_eq!(out.verdict, StabilityVerdict::Bounded);
        assert_eq!(out.pencil_roots.len(), 2);
        assert!(out.pencil_roots.iter().all(|r| r.root_sign() == 1));
        assert!(out.pencil_roots.iter().all(|r| r.exact_root.is_none()));
    }

    #[test]
    fn second_order_multiple_root_still_bounded() {
        // K = 4M: double pencil root 4; multiplicity must not matter
        let m = sym(&[&[2, 1], &[1, 2]]);
        let k = sym(&[&[8, 4], &[4, 8]]);
        let out = analyze_second_order(&m, &k, &cfg()).unwrap();
        assert_eq!(out.verdict, StabilityVerdict::Bounded);
        assert_eq!(out.pencil_roots.len(), 1);
        assert_eq!(out.pencil_roots[0].exact_root, Some(int(4)));
        assert_eq!(out.pencil_roots[0].multiplicity, 2);
    }

    #[test]
    fn second_order_doubling_oracle_agrees_on_multiple_root() {
        // first-order doubling of x'' = -4x in two coordinates:
        // char = (s^2+4)^2 but minimal polynomial s^2+4 — bounded both ways
        let a = mat(&[
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[-4, 0, 0, 0],
            &[0, -4, 0, 0],
        ]);
        assert_eq!(
            classify_stability_first_order(&a, &cfg()).unwrap(),
            StabilityVerdict::Bounded
        );
        let out = analyze_second_order(
            &sym(&[&[1, 0], &[0, 1]]),
            &sym(&[&[4, 0], &[0, 4]]),
            &cfg(),
        )
        .unwrap();
        assert_eq!(out.verdict, StabilityVerdict::Bounded);
    }

    #[test]
    fn second_order_zero_root_drift() {
        // K singular: drift along ker K
        let m = sym(&[&[1, 0], &[0, 1]]);
        let k = sym(&[&[1, -1], &[-1, 1]]);
        let out = analyze_second_order(&m, &k, &cfg()).unwrap();
        match out.verdict {
            StabilityVerdict::Unbounded(UnboundedWitness::ZeroRootDrift { direction }) => {
                // direction spans ker K = span (1,1)
                assert_eq!(&direction[0], &direction[1]);
                assert!(!direction[0].is_zero());
            }
            v => panic!("expected drift, got {v:?}"),
        }
    }

    #[test]
    fn second_order_negative_root() {
        let m = sym(&[&[1, 0], &[0, 1]]);
        let k = sym(&[&[-1, 0], &[0, 2]]);
        let out = analyze_second_order(&m, &k, &cfg()).unwrap();
        assert!(matches!(
            out.verdict,
            StabilityVerdict::Unbounded(UnboundedWitness::NegativePencilRoot { .. })
        ));
    }

    #[test]
    fn second_order_requires_definite_mass() {
        let m = sym(&[&[1, 2], &[2, 1]]);
        let k = sym(&[&[1, 0], &[0, 1]]);
        assert_eq!(
            analyze_second_order(&m, &k, &cfg()),
            Err(OscillationError::MNotDefinite)
        );
    }

    #[test]
    fn second_order_non_dyadic_rational_root_exact() {
        // det(K - lambda M) = (1 - 3 lambda)(1 - lambda): roots 1/3 and 1
        let m = sym(&[&[3, 0], &[0, 1]]);
        let k = sym(&[&[1, 0], &[0, 1]]);
        let out = analyze_second_order(&m, &k, &cfg()).unwrap();
        let exact: Vec<_> = out
            .pencil_roots
            .iter()
            .map(|r| r.exact_root.clone().unwrap())
            .collect();
        assert_eq!(exact, vec![rat(1, 3), int(1)]);
        assert_eq!(out.verdict, StabilityVerdict::Bounded);
    }
}
