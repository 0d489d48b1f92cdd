use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar. `num_rational::BigRational` already keeps the
/// reduced-form invariant (coprime numerator/denominator, denominator > 0).
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Parse `p`, `-p`, or `p/q`.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty rational".into());
    }
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| format!("bad numerator `{n}`"))?;
            let d: BigInt = d.trim().parse().map_err(|_| format!("bad denominator `{d}`"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in `{text}`"));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = text.parse().map_err(|_| format!("bad integer `{text}`"))?;
            Ok(Rational::from(n))
        }
    }
}

/// Positive rational `g` with every input an integer multiple of `g`,
/// i.e. gcd of numerators over lcm of denominators. `None` when every
/// input is zero (or the iterator is empty).
pub fn rational_content<'a>(values: impl Iterator<Item = &'a Rational>) -> Option<Rational> {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    let mut seen = false;
    for v in values {
        if v.is_zero() {
            continue;
        }
        seen = true;
        num_gcd = num_gcd.gcd(v.numer());
        den_lcm = den_lcm.lcm(v.denom());
    }
    if !seen {
        return None;
    }
    Some(Rational::new(num_gcd.abs(), den_lcm))
}
