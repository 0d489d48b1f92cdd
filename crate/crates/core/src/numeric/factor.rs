use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{poly_gcd, NumericError, Polynomial, Rational};

/// Bounds for the classical interpolation factorizer. Exceeding either bound
/// is an explicit error, never a silent fallback.
#[derive(Debug, Clone, Copy)]
pub struct FactorConfig {
    /// Maximum degree of a squarefree component that will be factored.
    pub degree_bound: usize,
    /// Trial-division limit for the integer factorizations inside the search.
    pub trial_division_bound: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            degree_bound: 10,
            trial_division_bound: 1_000_000,
        }
    }
}

/// `unit * prod(factor^exponent)` with monic irreducible factors, pairwise
/// distinct, sorted by (degree, coefficients lexicographically).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleFactorization {
    pub unit: Rational,
    pub factors: Vec<(Polynomial, u32)>,
}

impl IrreducibleFactorization {
    pub fn reconstruct(&self) -> Polynomial {
        let mut p = Polynomial::constant(self.unit.clone());
        for (f, e) in &self.factors {
            p = &p * &f.pow(*e);
        }
        p
    }

    /// All factors linear? (the Jordan-splitting condition)
    pub fn splits_linearly(&self) -> bool {
        self.factors.iter().all(|(f, _)| f.degree() == Some(1))
    }

    /// Roots of the linear factors, with exponents.
    pub fn rational_roots(&self) -> Vec<(Rational, u32)> {
        self.factors
            .iter()
            .filter(|(f, _)| f.degree() == Some(1))
            .map(|(f, e)| (-f.coeff(0), *e))
            .collect()
    }
}

/// Yun's algorithm: monic squarefree pairwise-coprime `g_i` with
/// `p = lc(p) * prod(g_i^i)`.
pub fn squarefree_decomposition(p: &Polynomial) -> Result<Vec<(Polynomial, u32)>, NumericError> {
    if p.is_zero() {
        return Err(NumericError::ZeroPolynomial);
    }
    let f = p.monic();
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let deriv = f.derivative();
    let g = poly_gcd(&f, &deriv);
    let mut c = f.div_rem(&g).0;
    let mut d = &deriv.div_rem(&g).0 - &c.derivative();
    let mut out = Vec::new();
    let mut i = 1u32;
    while c.degree() != Some(0) {
        let a = poly_gcd(&c, &d);
        if a.degree() != Some(0) {
            out.push((a.clone(), i));
        }
        c = c.div_rem(&a).0;
        d = &d.div_rem(&a).0 - &c.derivative();
        i += 1;
    }
    Ok(out)
}

/// Complete factorization into monic irreducibles over the rationals:
/// squarefree decomposition, then rational-root extraction, then Kronecker's
/// interpolation search for the residual factors.
pub fn factor_over_rationals(
    p: &Polynomial,
    config: &FactorConfig,
) -> Result<IrreducibleFactorization, NumericError> {
    if p.is_zero() {
        return Err(NumericError::ZeroPolynomial);
    }
    let unit = p.leading_coeff().clone();
    let mut factors: Vec<(Polynomial, u32)> = Vec::new();
    for (component, multiplicity) in squarefree_decomposition(p)? {
        let deg = component.degree().unwrap_or(0);
        if deg > config.degree_bound {
            return Err(NumericError::FactorDegreeExceeded(deg, config.degree_bound));
        }
        for irreducible in factor_squarefree(&component, config)? {
            factors.push((irreducible, multiplicity));
        }
    }
    factors.sort_by(|(a, _), (b, _)| a.cmp_lex(b));
    Ok(IrreducibleFactorization { unit, factors })
}

/// Factor a monic squarefree polynomial; returns monic irreducibles.
fn factor_squarefree(p: &Polynomial, config: &FactorConfig) -> Result<Vec<Polynomial>, NumericError> {
    let mut rest = to_primitive_integer(p);
    let mut out = Vec::new();

    // Root zero first so later point evaluations are nonzero.
    while rest.coeff(0).is_zero() && rest.degree() > Some(0) {
        out.push(Polynomial::monomial(Rational::one(), 1));
        rest = rest.div_rem(&Polynomial::monomial(Rational::one(), 1)).0;
    }
    for root in rational_roots(&rest, config)? {
        out.push(Polynomial::linear_root(&root));
        rest = rest.div_rem(&Polynomial::linear_root(&root)).0;
        rest = to_primitive_integer(&rest);
    }
    kronecker_split(&rest, config, &mut out)?;
    out.sort_by(|a, b| a.cmp_lex(b));
    Ok(out)
}

/// Recursively split `p` (integer coefficients, no rational roots) by
/// Kronecker's method; pushes the monic irreducible factors found.
fn kronecker_split(
    p: &Polynomial,
    config: &FactorConfig,
    out: &mut Vec<Polynomial>,
) -> Result<(), NumericError> {
    let deg = match p.degree() {
        None | Some(0) => return Ok(()),
        Some(d) => d,
    };
    if deg <= 2 {
        // Squarefree, no rational roots: degree <= 2 is irreducible.
        out.push(p.monic());
        return Ok(());
    }
    for d in 2..=deg / 2 {
        // d+1 sample points 0, 1, -1, 2, -2, ...
        let points: Vec<Rational> = sample_points(d + 1);
        let mut divisor_sets: Vec<Vec<BigInt>> = Vec::with_capacity(d + 1);
        for x in &points {
            let v = p.eval(x);
            debug_assert!(v.denom().is_one());
            let divs = all_divisors(v.numer(), config)?;
            divisor_sets.push(divs);
        }
        let mut choice = vec![0usize; d + 1];
        'outer: loop {
            // Fix the first value positive; -g divides whenever g does.
            let values: Vec<Rational> = choice
                .iter()
                .enumerate()
                .map(|(i, &ci)| {
                    let (idx, negate) = if i == 0 { (ci, false) } else { (ci / 2, ci % 2 == 1) };
                    let base = &divisor_sets[i][idx];
                    Rational::from(if negate { -base } else { base.clone() })
                })
                .collect();
            if let Some(g) = interpolate(&points, &values) {
                if g.degree() == Some(d) && g.monic().divides(p) {
                    let g = g.monic();
                    let rest = p.div_rem(&g).0;
                    kronecker_split(&to_primitive_integer(&g), config, out)?;
                    kronecker_split(&to_primitive_integer(&rest), config, out)?;
                    return Ok(());
                }
            }
            // Advance the mixed-radix counter over (divisor, sign) choices.
            for i in 0..=d {
                let radix = if i == 0 {
                    divisor_sets[i].len()
                } else {
                    2 * divisor_sets[i].len()
                };
                choice[i] += 1;
                if choice[i] < radix {
                    continue 'outer;
                }
                choice[i] = 0;
            }
            break;
        }
    }
    out.push(p.monic());
    Ok(())
}

fn sample_points(count: usize) -> Vec<Rational> {
    let mut pts = Vec::with_capacity(count);
    let mut k = 0i64;
    while pts.len() < count {
        pts.push(Rational::from(BigInt::from(k)));
        if k > 0 && pts.len() < count {
            pts.push(Rational::from(BigInt::from(-k)));
        }
        k += 1;
    }
    pts
}

/// Lagrange interpolation; `None` when any coefficient is non-integral
/// (such candidates cannot be integer factors).
fn interpolate(points: &[Rational], values: &[Rational]) -> Option<Polynomial> {
    let mut acc = Polynomial::zero();
    for (i, (xi, yi)) in points.iter().zip(values).enumerate() {
        let mut basis = Polynomial::constant(yi.clone());
        for (j, xj) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let scale = (xi - xj).recip();
            basis = &basis * &Polynomial::linear_root(xj).scale(&scale);
        }
        acc = &acc + &basis;
    }
    if acc.coeffs().iter().all(|c| c.denom().is_one()) {
        Some(acc)
    } else {
        None
    }
}

/// All rational roots of a squarefree integer-coefficient polynomial with
/// nonzero constant term, via the rational root theorem.
fn rational_roots(p: &Polynomial, config: &FactorConfig) -> Result<Vec<Rational>, NumericError> {
    let deg = match p.degree() {
        None | Some(0) => return Ok(Vec::new()),
        Some(d) => d,
    };
    let a0 = p.coeff(0);
    let an = p.coeff(deg);
    debug_assert!(!a0.is_zero() && a0.denom().is_one() && an.denom().is_one());
    let num_divs = all_divisors(a0.numer(), config)?;
    let den_divs = all_divisors(an.numer(), config)?;
    let mut roots = Vec::new();
    for n in &num_divs {
        for d in &den_divs {
            for cand in [Rational::new(n.clone(), d.clone()), Rational::new(-n.clone(), d.clone())] {
                if p.eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    Ok(roots)
}

/// Positive divisors of `|n|`, `n` nonzero, via bounded trial division.
fn all_divisors(n: &BigInt, config: &FactorConfig) -> Result<Vec<BigInt>, NumericError> {
    let mut remaining = n.abs();
    assert!(!remaining.is_zero());
    let bound = config.trial_division_bound;
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let push = |p: BigInt, e: u32, primes: &mut Vec<(BigInt, u32)>| {
        if e > 0 {
            primes.push((p, e));
        }
    };
    let mut d = 2u64;
    let mut scan_complete = false;
    while d <= bound {
        let big_d = BigInt::from(d);
        if &big_d * &big_d > remaining {
            scan_complete = true;
            break;
        }
        let mut e = 0u32;
        while (&remaining % &big_d).is_zero() {
            remaining /= &big_d;
            e += 1;
        }
        push(big_d, e, &mut primes);
        d += if d == 2 { 1 } else { 2 };
    }
    if !remaining.is_one() {
        // With a complete scan the cofactor has no divisor up to its square
        // root, hence is prime. A cut-short scan leaves it undetermined.
        if !scan_complete {
            return Err(NumericError::IntegerFactorizationExceeded(bound, n.to_string()));
        }
        push(remaining, 1, &mut primes);
    }
    let mut divisors = vec![BigInt::one()];
    for (p, e) in &primes {
        let mut next = Vec::with_capacity(divisors.len() * (*e as usize + 1));
        for div in &divisors {
            let mut power = BigInt::one();
            for _ in 0..=*e {
                next.push(div * &power);
                power *= p;
            }
        }
        divisors = next;
    }
    divisors.sort();
    Ok(divisors)
}

/// Clear denominators and content: primitive integer-coefficient polynomial
/// with the same roots and positive leading coefficient.
fn to_primitive_integer(p: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return Polynomial::zero();
    }
    let content = super::rational_content(p.coeffs().iter()).expect("nonzero polynomial");
    let scaled = p.scale(&content.recip());
    if scaled.leading_coeff().is_negative() {
        -&scaled
    } else {
        scaled
    }
}
