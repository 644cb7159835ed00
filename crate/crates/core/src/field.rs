//! Exact scalar fields: the rationals and prime fields `F_p`.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact field. Every algebra, module and presentation in the crate is
/// generic over this trait.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Eq
    + Hash
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Send
    + Sync
    + 'static
{
    /// 0 for the rationals, `p` for `F_p`.
    fn characteristic() -> u64;

    fn from_i64(v: i64) -> Self;

    /// Multiplicative inverse; `None` on zero.
    fn inverse(&self) -> Option<Self>;

    /// All elements, for finite fields.
    fn elements() -> Option<Vec<Self>>;

    /// Short display name ("Q", "F2", ...).
    fn name() -> String;

    /// Parse from the textual form used in JSON dumps ("3", "-1/2").
    fn parse(s: &str) -> Option<Self>;

    /// Smallest sample of coefficients used for random trial combinations.
    fn small_coefficients() -> Vec<Self> {
        let mut out: Vec<Self> = Vec::new();
        for v in [-1i64, 0, 1, 2] {
            let x = Self::from_i64(v);
            if !out.contains(&x) {
                out.push(x);
            }
        }
        out
    }
}

/// The rational numbers with arbitrary-precision numerator and denominator.
/// `num-rational` keeps values normalized (lowest terms, positive denominator).
pub type Q = BigRational;

impl Field for BigRational {
    fn characteristic() -> u64 {
        0
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn elements() -> Option<Vec<Self>> {
        None
    }

    fn name() -> String {
        "Q".to_string()
    }

    fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().ok()?;
                let d: BigInt = d.trim().parse().ok()?;
                if d.is_zero() {
                    return None;
                }
                Some(BigRational::new(n, d))
            }
            None => Some(BigRational::from_integer(s.parse().ok()?)),
        }
    }
}

/// Residues modulo the prime `P`, stored canonically in `0..P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;
pub type F101 = Fp<101>;

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp((self.0 + o.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp((self.0 + P - o.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inverse().expect("division by zero in F_p")
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> AddAssign for Fp<P> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<const P: u64> SubAssign for Fp<P> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<const P: u64> MulAssign for Fp<P> {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn characteristic() -> u64 {
        P
    }

    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }

    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            // Fermat; P is prime.
            Some(self.pow(P - 2))
        }
    }

    fn elements() -> Option<Vec<Self>> {
        Some((0..P).map(Fp).collect())
    }

    fn name() -> String {
        format!("F{P}")
    }

    fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n = Self::new(n.trim().parse().ok()?);
                let d = Self::new(d.trim().parse().ok()?);
                Some(n * d.inverse()?)
            }
            None => Some(Self::new(s.parse().ok()?)),
        }
    }
}

/// True when `p` is prime (trial division; `p` is small here).
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Lowest-terms check for a rational; always true for values produced by
/// `num-rational`, kept as an explicit invariant check for tests.
pub fn is_normalized(q: &Q) -> bool {
    use num_integer::Integer;
    q.denom().is_positive() && q.numer().gcd(q.denom()).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_inverse_and_normal_form() {
        let half = Q::from_i64(1) / Q::from_i64(2);
        assert_eq!(Q::from_i64(2).inverse().unwrap(), half);
        let x = Q::parse("4/-8").unwrap();
        assert_eq!(x, -half.clone());
        assert!(is_normalized(&x));
        assert!(Q::zero().inverse().is_none());
    }

    #[test]
    fn prime_field_arithmetic() {
        let a = F101::from_i64(-3);
        assert_eq!(a.value(), 98);
        assert_eq!(a * a.inverse().unwrap(), F101::one());
        assert_eq!(F2::from_i64(3), F2::one());
        assert_eq!(F3::parse("1/2").unwrap(), F3::from_i64(2));
        assert_eq!(F2::small_coefficients().len(), 2);
        assert_eq!(F101::elements().unwrap().len(), 101);
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(101));
        assert!(!is_prime(1) && !is_prime(91));
    }
}
