use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{NumericError, Rational};

/// Dense univariate polynomial over the rationals.
///
/// `coeffs[k]` is the coefficient of the degree-`k` term; the vector never
/// ends in a zero, and the zero polynomial is signalled by `degree() == None`
/// rather than by any sentinel coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Polynomial { coeffs }
    }

    /// `x - r`.
    pub fn linear_root(r: &Rational) -> Self {
        Polynomial::new(vec![-r.clone(), Rational::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading coefficient; panics on the zero polynomial.
    pub fn leading_coeff(&self) -> &Rational {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(k.into()))
            .collect();
        Polynomial::new(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let lc = self.leading_coeff().clone();
        self.scale(&lc.recip())
    }

    /// Euclidean division; panics when the divisor is zero.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let d = divisor.coeffs.len();
        if self.coeffs.len() < d {
            return (Polynomial::zero(), self.clone());
        }
        let lc = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - d + 1];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + d - 1] / lc;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    let t = dc * &c;
                    rem[i + j] = &rem[i + j] - &t;
                }
            }
            quot[i] = c;
        }
        rem.truncate(d - 1);
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Reverse of coefficients padded to length `n + 1`: `x^n * p(1/x)`.
    /// Used for the reversed-pencil construction.
    pub fn reverse_to_degree(&self, n: usize) -> Polynomial {
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            assert!(k <= n, "reverse_to_degree below actual degree");
            coeffs[n - k] = c.clone();
        }
        Polynomial::new(coeffs)
    }

    /// Compare by (degree, coefficient sequence high-to-low): the fixed
    /// ordering used for factor lists and elementary divisors.
    pub fn cmp_lex(&self, other: &Polynomial) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| {
                for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
                    let ord = a.cmp(b);
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                Ordering::Equal
            })
    }

    /// Render with an explicit variable letter.
    pub fn display_with(&self, var: char) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let first = out.is_empty();
            if c.is_negative() {
                out.push_str(if first { "-" } else { " - " });
            } else if !first {
                out.push_str(" + ");
            }
            let mag = c.abs();
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            if k > 0 {
                if show_coeff {
                    out.push('*');
                }
                out.push(var);
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with('s'))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, other: &Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            coeffs[i] = &coeffs[i] + c;
        }
        Polynomial::new(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, other: &Polynomial) -> Polynomial {
        self + &(-other)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Polynomial::new(coeffs)
    }
}

/// Monic gcd by the Euclidean algorithm, remainders re-scaled to monic each
/// step to keep coefficients small. `gcd(0, 0) = 0`.
pub fn poly_gcd(p: &Polynomial, q: &Polynomial) -> Polynomial {
    let mut a = p.monic();
    let mut b = q.monic();
    while !b.is_zero() {
        let r = a.div_rem(&b).1;
        a = b;
        b = r.monic();
    }
    a
}

/// Monic product of the distinct irreducible factors of `p`.
pub fn squarefree_part(p: &Polynomial) -> Result<Polynomial, NumericError> {
    if p.is_zero() {
        return Err(NumericError::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(Polynomial::one());
    }
    let g = poly_gcd(p, &p.derivative());
    Ok(p.div_rem(&g).0.monic())
}

/// Parse the CLI polynomial syntax: terms `c*v^k`, `c*v`, `v^k`, `v`, or a
/// bare rational, joined by `+`/`-`. The variable letter is configurable.
pub fn parse_polynomial(text: &str, var: char) -> Result<Polynomial, NumericError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(NumericError::Parse("empty polynomial".into()));
    }
    let mut terms: Vec<(String, bool)> = Vec::new();
    let mut cur = String::new();
    let mut neg = text.starts_with('-');
    let mut chars = text.chars().peekable();
    if neg {
        chars.next();
    }
    let mut pending_neg = neg;
    for ch in chars {
        match ch {
            '+' | '-' => {
                if cur.trim().is_empty() {
                    return Err(NumericError::Parse(format!("dangling sign in `{text}`")));
                }
                terms.push((cur.clone(), pending_neg));
                cur.clear();
                pending_neg = ch == '-';
            }
            _ => cur.push(ch),
        }
    }
    neg = pending_neg;
    if cur.trim().is_empty() {
        return Err(NumericError::Parse(format!("dangling sign in `{text}`")));
    }
    terms.push((cur, neg));

    let mut poly = Polynomial::zero();
    for (term, negated) in terms {
        let term = term.replace(' ', "");
        let (coeff_text, power) = match term.find(var) {
            None => (term.as_str(), 0usize),
            Some(pos) => {
                let coeff = &term[..pos];
                let rest = &term[pos + var.len_utf8()..];
                let k = if rest.is_empty() {
                    1
                } else {
                    let rest = rest
                        .strip_prefix('^')
                        .ok_or_else(|| NumericError::Parse(format!("bad term `{term}`")))?;
                    rest.parse::<usize>()
                        .map_err(|_| NumericError::Parse(format!("bad exponent in `{term}`")))?
                };
                (coeff.strip_suffix('*').unwrap_or(coeff), k)
            }
        };
        let mut c = if coeff_text.is_empty() {
            Rational::one()
        } else {
            super::parse_rational(coeff_text).map_err(NumericError::Parse)?
        };
        if negated {
            c = -c;
        }
        poly = &poly + &Polynomial::monomial(c, power);
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::super::rational::{int, rat};
    use super::*;

    fn p(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_i64(coeffs)
    }

    #[test]
    fn degree_and_zero() {
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(p(&[5]).degree(), Some(0));
        assert_eq!(p(&[0, 0, 3]).degree(), Some(2));
        assert!(Polynomial::new(vec![Rational::zero()]).is_zero());
    }

    #[test]
    fn ring_ops() {
        let a = p(&[1, 2, 1]); // (s+1)^2
        let b = p(&[-1, 1]); // s-1
        assert_eq!(&a * &b, p(&[-1, -1, 1, 1]));
        assert_eq!(&(&a + &b) - &b, a);
        let (q, r) = p(&[-1, 0, 0, 1]).div_rem(&p(&[-1, 1]));
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_examples() {
        // gcd(s^2-1, s^2-2s+1) = s-1
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[1, -2, 1])), p(&[-1, 1]));
        // gcd(p, 0) = monic(p)
        assert_eq!(poly_gcd(&p(&[2, 4]), &Polynomial::zero()), Polynomial::new(vec![rat(1, 2), int(1)]));
        // gcd(s^2+1, s+2) = 1
        assert_eq!(poly_gcd(&p(&[1, 0, 1]), &p(&[2, 1])), Polynomial::one());
        assert!(poly_gcd(&Polynomial::zero(), &Polynomial::zero()).is_zero());
    }

    #[test]
    fn squarefree_examples() {
        // (s-1)^2 (s-2) -> (s-1)(s-2)
        let q = &p(&[1, -2, 1]) * &p(&[-2, 1]);
        assert_eq!(squarefree_part(&q).unwrap(), &p(&[-1, 1]) * &p(&[-2, 1]));
        assert_eq!(squarefree_part(&p(&[0, 1])).unwrap(), p(&[0, 1]));
        // (s^2+1)^3 -> s^2+1
        assert_eq!(squarefree_part(&p(&[1, 0, 1]).pow(3)).unwrap(), p(&[1, 0, 1]));
        assert_eq!(squarefree_part(&Polynomial::zero()), Err(NumericError::ZeroPolynomial));
    }

    #[test]
    fn parse_and_display_round_trip() {
        let q = parse_polynomial("s^3 - 2*s + 7/2", 's').unwrap();
        assert_eq!(q, Polynomial::new(vec![rat(7, 2), int(-2), int(0), int(1)]));
        assert_eq!(parse_polynomial(&q.to_string(), 's').unwrap(), q);
        assert_eq!(parse_polynomial("-x", 'x').unwrap(), p(&[0, -1]));
        assert!(parse_polynomial("s^", 's').is_err());
        assert!(parse_polynomial("", 's').is_err());
        assert!(parse_polynomial("2 +", 's').is_err());
    }

    #[test]
    fn eval_and_reverse() {
        let q = p(&[1, -3, 0, 2]);
        assert_eq!(q.eval(&int(2)), int(11));
        assert_eq!(q.reverse_to_degree(3), p(&[2, 0, -3, 1]));
        assert_eq!(p(&[0, 1]).reverse_to_degree(2), Polynomial::monomial(int(1), 1));
    }
}
