//! Coefficient-domain traits shared by the matrix and Smith-form machinery.
//!
//! Two domains matter here: exact rationals (a field) and univariate
//! polynomials over them (a Euclidean ring). Integer matrices additionally
//! use `BigInt` for the arithmetic Smith form.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::numeric::{Polynomial, Rational};

/// A commutative ring with exact division where it exists.
///
/// `exact_div` is only ever called on divisible pairs (fraction-free
/// elimination guarantees this); a non-exact quotient is a logic error.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn exact_div(&self, other: &Self) -> Self;
}

/// Euclidean structure on top of [`Ring`]: division with remainder, a size
/// function for pivot selection, and unit normalization (positive integers,
/// monic polynomials).
pub trait EuclideanRing: Ring {
    /// `self = q * d + r` with `r` zero or strictly smaller than `d`.
    fn div_rem(&self, d: &Self) -> (Self, Self);

    /// Pivot size: absolute value for integers, degree for polynomials.
    fn euclid_size(&self) -> BigUint;

    /// The unit `u` with `self / u` in normal form; `1` for zero.
    fn normal_unit(&self) -> Self;

    fn is_unit(&self) -> bool;

    /// Optional unit scalar dividing every element of `row`, used to keep
    /// entry growth down during elimination. `None` means "nothing to do".
    fn unit_content(_row: &[Self]) -> Option<Self> {
        None
    }

    fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Normalized gcd (positive / monic); `gcd(0, 0) = 0`.
    fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let u = a.normal_unit();
            a.exact_div(&u)
        }
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Self {
        self / other
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Self {
        debug_assert!(num_traits::Zero::is_zero(&(self % other)), "non-exact integer division");
        self / other
    }
}

impl EuclideanRing for BigInt {
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        use num_integer::Integer;
        // Euclidean remainder: 0 <= r < |d|.
        let (mut q, mut r) = Integer::div_rem(self, d);
        if r.is_negative() {
            if d.is_negative() {
                r -= d;
                q += BigInt::from(1);
            } else {
                r += d;
                q -= BigInt::from(1);
            }
        }
        (q, r)
    }

    fn euclid_size(&self) -> BigUint {
        self.magnitude().clone()
    }

    fn normal_unit(&self) -> Self {
        if self.is_negative() {
            BigInt::from(-1)
        } else {
            BigInt::from(1)
        }
    }

    fn is_unit(&self) -> bool {
        self.magnitude() == &BigUint::from(1u32)
    }
}

impl Ring for Polynomial {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn one() -> Self {
        Polynomial::one()
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Self {
        let (q, r) = Polynomial::div_rem(self, other);
        debug_assert!(Polynomial::is_zero(&r), "non-exact polynomial division");
        q
    }
}

impl EuclideanRing for Polynomial {
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        Polynomial::div_rem(self, d)
    }

    fn euclid_size(&self) -> BigUint {
        match self.degree() {
            // Nonzero constants sort below every positive degree.
            Some(d) => BigUint::from(d),
            None => BigUint::from(0u32),
        }
    }

    fn normal_unit(&self) -> Self {
        if Polynomial::is_zero(self) {
            Polynomial::one()
        } else {
            Polynomial::constant(self.leading_coeff().clone())
        }
    }

    fn is_unit(&self) -> bool {
        self.degree() == Some(0)
    }

    fn unit_content(row: &[Self]) -> Option<Self> {
        let content = crate::numeric::rational_content(
            row.iter().flat_map(|p| p.coeffs().iter()),
        )?;
        if content.is_one() {
            None
        } else {
            Some(Polynomial::constant(content))
        }
    }
}
