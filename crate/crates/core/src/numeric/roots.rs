use num_traits::{One, Signed, Zero};

use super::{squarefree_decomposition, NumericError, Polynomial, Rational};

/// An isolating interval for one distinct real root. When the root is known
/// exactly, `low == high == exact_root`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub low: Rational,
    pub high: Rational,
    pub multiplicity: u32,
    pub exact_root: Option<Rational>,
}

impl RootInterval {
    fn exact(root: Rational, multiplicity: u32) -> Self {
        RootInterval {
            low: root.clone(),
            high: root.clone(),
            multiplicity,
            exact_root: Some(root),
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.low <= x && x <= &self.high
    }

    /// Exact sign of the root: -1, 0, or 1. Isolating intervals never
    /// straddle zero unless the root is exactly zero.
    pub fn root_sign(&self) -> i32 {
        if let Some(r) = &self.exact_root {
            return if r.is_zero() {
                0
            } else if r.is_positive() {
                1
            } else {
                -1
            };
        }
        // The root is strictly interior; bisection splits the symmetric
        // starting interval at zero first, so intervals never straddle it.
        if !self.low.is_negative() {
            1
        } else {
            debug_assert!(!self.high.is_positive());
            -1
        }
    }
}

struct SturmChain {
    chain: Vec<Polynomial>,
}

impl SturmChain {
    fn new(p: &Polynomial) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            if r.is_zero() {
                break;
            }
            // Scale by a positive constant; signs are all that matter.
            let scale = r.leading_coeff().abs().recip();
            chain.push((-&r).scale(&scale));
        }
        SturmChain { chain }
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for p in &self.chain {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let sign = v.is_positive();
            if let Some(prev) = last {
                if prev != sign {
                    count += 1;
                }
            }
            last = Some(sign);
        }
        count
    }

    /// Distinct roots in the open interval `(a, b)`; endpoints must not be
    /// roots of the head polynomial.
    fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a) - self.variations(b)
    }
}

/// Strict upper bound on root magnitude (Cauchy bound), rounded up to an
/// integer power of two so bisection midpoints stay dyadic.
fn root_bound(p: &Polynomial) -> Rational {
    let lc = p.leading_coeff();
    let mut max = Rational::zero();
    for c in p.coeffs() {
        let m = (c / lc).abs();
        if m > max {
            max = m;
        }
    }
    let target = max + Rational::one();
    let mut bound = Rational::one();
    while bound < target {
        bound = &bound * Rational::from_integer(2.into());
    }
    bound
}

/// Isolate the distinct real roots of `p`: pairwise disjoint intervals in
/// ascending order, one per root, with multiplicity read off the squarefree
/// structure and rational roots reported exactly when bisection lands on
/// them. Splitting at the simplest dyadic point of each interval guarantees
/// every integer root is hit; linear squarefree components always pin
/// their root down exactly.
pub fn isolate_real_roots(p: &Polynomial) -> Result<Vec<RootInterval>, NumericError> {
    if p.is_zero() {
        return Err(NumericError::ZeroPolynomial);
    }
    let components = squarefree_decomposition(p)?;
    if components.is_empty() {
        return Ok(Vec::new());
    }
    let mut squarefree = Polynomial::one();
    for (g, _) in &components {
        squarefree = &squarefree * g;
    }
    let chain = SturmChain::new(&squarefree);
    let bound = root_bound(&squarefree);
    let mut intervals: Vec<Isolated> = Vec::new();
    isolate_rec(&squarefree, &chain, &(-&bound), &bound, &mut intervals);

    // Separate intervals that share an endpoint; each root is strictly
    // interior, so refinement terminates.
    let mut i = 1;
    while i < intervals.len() {
        while touching(&intervals[i - 1], &intervals[i]) {
            let left = intervals[i - 1].clone();
            intervals[i - 1] = refine_once(&squarefree, &chain, left);
            let right = intervals[i].clone();
            intervals[i] = refine_once(&squarefree, &chain, right);
        }
        i += 1;
    }

    Ok(intervals
        .into_iter()
        .map(|iso| attach_multiplicity(iso, &components))
        .collect())
}

#[derive(Clone)]
enum Isolated {
    Exact(Rational),
    Interval(Rational, Rational),
}

fn touching(a: &Isolated, b: &Isolated) -> bool {
    let high = match a {
        Isolated::Exact(r) => r,
        Isolated::Interval(_, h) => h,
    };
    let low = match b {
        Isolated::Exact(r) => r,
        Isolated::Interval(l, _) => l,
    };
    high >= low
}

/// The dyadic rational of minimal level strictly inside `(a, b)`; among
/// the candidates at that level, the middle one. Splitting here keeps every
/// level-`j` dyadic point reachable as a future split point, so simple
/// rational roots (integers in particular) are detected exactly.
fn dyadic_split_point(a: &Rational, b: &Rational) -> Rational {
    use num_bigint::BigInt;
    let mut denom = BigInt::from(1);
    loop {
        let scale = Rational::from_integer(denom.clone());
        let lo = (a * &scale).floor().to_integer() + 1;
        let hi = (b * &scale).ceil().to_integer() - 1;
        if lo <= hi {
            let k = &lo + (&hi - &lo) / BigInt::from(2);
            return Rational::new(k, denom);
        }
        denom *= 2;
    }
}

fn isolate_rec(
    p: &Polynomial,
    chain: &SturmChain,
    a: &Rational,
    b: &Rational,
    out: &mut Vec<Isolated>,
) {
    let count = chain.count(a, b);
    if count == 0 {
        return;
    }
    let width = b - a;
    if count == 1 && width < Rational::one() {
        out.push(Isolated::Interval(a.clone(), b.clone()));
        return;
    }
    let mid = dyadic_split_point(a, b);
    if p.eval(&mid).is_zero() {
        // Bracket the exact root so both sides keep non-root endpoints.
        let left_gap = &mid - a;
        let right_gap = b - &mid;
        let gap = if left_gap < right_gap { left_gap } else { right_gap };
        let mut eps = &gap / Rational::from_integer(2.into());
        loop {
            while p.eval(&(&mid - &eps)).is_zero() || p.eval(&(&mid + &eps)).is_zero() {
                eps = &eps / Rational::from_integer(2.into());
            }
            if chain.count(&(&mid - &eps), &(&mid + &eps)) == 1 {
                break;
            }
            eps = &eps / Rational::from_integer(2.into());
        }
        isolate_rec(p, chain, a, &(&mid - &eps), out);
        out.push(Isolated::Exact(mid.clone()));
        isolate_rec(p, chain, &(&mid + &eps), b, out);
    } else {
        isolate_rec(p, chain, a, &mid, out);
        isolate_rec(p, chain, &mid, b, out);
    }
}

/// Halve an isolating interval (exact roots are left alone).
fn refine_once(p: &Polynomial, chain: &SturmChain, iso: Isolated) -> Isolated {
    match iso {
        Isolated::Exact(r) => Isolated::Exact(r),
        Isolated::Interval(a, b) => {
            let mid = dyadic_split_point(&a, &b);
            if p.eval(&mid).is_zero() {
                return Isolated::Exact(mid);
            }
            if chain.count(&a, &mid) == 1 {
                Isolated::Interval(a, mid)
            } else {
                Isolated::Interval(mid, b)
            }
        }
    }
}

fn attach_multiplicity(iso: Isolated, components: &[(Polynomial, u32)]) -> RootInterval {
    match iso {
        Isolated::Exact(r) => {
            for (g, m) in components {
                if g.eval(&r).is_zero() {
                    return RootInterval::exact(r, *m);
                }
            }
            unreachable!("exact root belongs to some squarefree component")
        }
        Isolated::Interval(a, b) => {
            for (g, m) in components {
                let va = g.eval(&a);
                let vb = g.eval(&b);
                if va.is_positive() != vb.is_positive() {
                    // A linear component pins the root down exactly.
                    if g.degree() == Some(1) {
                        let root = -(&g.coeff(0) / &g.coeff(1));
                        return RootInterval::exact(root, *m);
                    }
                    return RootInterval {
                        low: a,
                        high: b,
                        multiplicity: *m,
                        exact_root: None,
                    };
                }
            }
            unreachable!("isolating interval must carry a sign change of one component")
        }
    }
}
