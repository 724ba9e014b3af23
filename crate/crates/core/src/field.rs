//! Exact coefficient fields.
//!
//! Everything in this crate is generic over [`Field`]. Two instances ship:
//! arbitrary-precision rationals ([`Rational`]) and prime fields ([`Fp`]).
//! Floating point types are deliberately not fields here.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rationals in lowest terms with positive denominator.
pub type Rational = BigRational;

/// A commutative field with exact arithmetic.
pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn from_i64(value: i64) -> Self;

    /// `-1` detection for pretty printing.
    fn is_minus_one(&self) -> bool {
        (-self.clone()).is_one()
    }
}

impl Field for BigRational {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }

    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }
}

/// Element of the prime field `F_p`.
///
/// The modulus travels with the value. Constants produced through
/// [`Zero::zero`], [`One::one`] or [`Field::from_i64`] carry modulus `0` and
/// adopt the modulus of whatever they are combined with.
#[derive(Clone, Copy)]
pub struct Fp {
    value: i64,
    modulus: u32,
}

impl Fp {
    pub fn new(value: i64, modulus: u32) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        Fp {
            value: value.rem_euclid(modulus as i64),
            modulus,
        }
    }

    pub fn modulus(&self) -> Option<u32> {
        (self.modulus != 0).then_some(self.modulus)
    }

    /// Representative in `[0, p)`; free constants are returned as-is.
    pub fn value(&self) -> i64 {
        self.value
    }

    fn common(a: &Fp, b: &Fp) -> u32 {
        match (a.modulus, b.modulus) {
            (0, q) | (q, 0) => q,
            (p, q) if p == q => p,
            (p, q) => panic!("mixed prime field moduli {p} and {q}"),
        }
    }

    fn bind(&self, p: u32) -> i64 {
        if p == 0 {
            self.value
        } else {
            self.value.rem_euclid(p as i64)
        }
    }

    fn make(value: i64, p: u32) -> Fp {
        if p == 0 {
            Fp { value, modulus: 0 }
        } else {
            Fp::new(value, p)
        }
    }
}

/// Deterministic primality test; adequate for moduli below `2^31`.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        let p = Fp::common(self, other);
        self.bind(p) == other.bind(p)
    }
}

impl Eq for Fp {}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus == 0 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{} (mod {})", self.value, self.modulus)
        }
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let p = Fp::common(&self, &rhs);
        Fp::make(self.bind(p) + rhs.bind(p), p)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let p = Fp::common(&self, &rhs);
        Fp::make(self.bind(p) - rhs.bind(p), p)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::make(-self.value, self.modulus)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let p = Fp::common(&self, &rhs);
        if p == 0 {
            let v = self
                .value
                .checked_mul(rhs.value)
                .expect("overflow in unbound prime field constant");
            return Fp::make(v, 0);
        }
        let v = (self.bind(p) as i128 * rhs.bind(p) as i128).rem_euclid(p as i128);
        Fp::make(v as i64, p)
    }
}

impl Div for Fp {
    type Output = Fp;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Fp) -> Fp {
        let p = Fp::common(&self, &rhs);
        self * Fp::make(rhs.bind(p), p).inv()
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp {
            value: 0,
            modulus: 0,
        }
    }
    fn is_zero(&self) -> bool {
        self.bind(self.modulus) == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp {
            value: 1,
            modulus: 0,
        }
    }
}

impl Field for Fp {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        if self.modulus == 0 {
            // Only +-1 are invertible without knowing p.
            return match self.value {
                1 | -1 => *self,
                v => panic!("cannot invert unbound constant {v}"),
            };
        }
        let p = self.modulus as i64;
        let ext = self.value.extended_gcd(&p);
        Fp::new(ext.x, self.modulus)
    }

    fn from_i64(value: i64) -> Self {
        Fp { value, modulus: 0 }
    }
}

/// Render a rational as `n` or `n/d`.
pub fn rational_to_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Small-integer view of a rational, when it has one.
pub fn rational_to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

/// The image of `q` in `F_p`, or `None` when `p` divides its denominator.
pub fn rational_to_fp(q: &Rational, p: u32) -> Option<Fp> {
    let m = BigInt::from(p);
    let reduce = |n: &BigInt| n.mod_floor(&m).to_i64().expect("reduced below p");
    let den = Fp::new(reduce(q.denom()), p);
    if den.value() == 0 {
        return None;
    }
    Some(Fp::new(reduce(q.numer()), p) / den)
}

/// `true` when the rational is a negative number.
pub fn rational_is_negative(q: &Rational) -> bool {
    q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_mod_p() {
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(rational_to_fp(&half, 7).unwrap().value(), 4);
        assert_eq!(rational_to_fp(&-half, 7).unwrap().value(), 3);
        assert!(rational_to_fp(&Rational::new(BigInt::from(1), BigInt::from(14)), 7).is_none());
    }

    #[test]
    fn rational_inverse() {
        let a = Rational::new(BigInt::from(-3), BigInt::from(4));
        assert_eq!(a.inv(), Rational::new(BigInt::from(-4), BigInt::from(3)));
        assert!((a.clone() * a.inv()).is_one());
    }

    #[test]
    fn prime_field_inverse_and_free_constants() {
        let p = 7;
        for v in 1..7 {
            let a = Fp::new(v, p);
            assert_eq!(a * a.inv(), Fp::new(1, p));
        }
        let minus_one = -Fp::one();
        assert_eq!(minus_one + Fp::new(3, p), Fp::new(2, p));
        assert_eq!(Fp::new(6, p), -Fp::one());
        assert!((Fp::new(7, p)).is_zero());
        assert!(!Fp::new(5, p).is_minus_one());
        assert!(Fp::new(6, p).is_minus_one());
    }

    #[test]
    #[should_panic]
    fn mixed_moduli_panic() {
        let _ = Fp::new(1, 5) + Fp::new(1, 7);
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(2147483647));
        assert!(!is_prime(2147483647 - 2));
    }
}
