//! The scalar field abstraction used by the exact linear algebra.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Num, ToPrimitive};

/// An exact field of characteristic zero.
///
/// Implemented for the rational types from `num-rational`. Floating point
/// types are deliberately excluded: every question asked of this trait
/// (rank, idempotency, membership in a radical) is an exact yes/no question.
pub trait Field:
    Clone + Debug + Display + PartialEq + Num + std::ops::Neg<Output = Self> + FromStr + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_f64_lossy(&self) -> f64;

    /// Numerator and denominator as integers, if they fit in an `i128`.
    fn to_parts(&self) -> Option<(i128, i128)>;
}

macro_rules! rational_field {
    ($int:ty) => {
        impl Field for Ratio<$int> {
            fn from_i64(v: i64) -> Self {
                Ratio::from_integer(<$int>::from(v))
            }

            fn from_ratio(num: i64, den: i64) -> Self {
                Ratio::new(<$int>::from(num), <$int>::from(den))
            }

            fn to_f64_lossy(&self) -> f64 {
                self.to_f64().unwrap_or(f64::NAN)
            }

            fn to_parts(&self) -> Option<(i128, i128)> {
                Some((self.numer().to_i128()?, self.denom().to_i128()?))
            }
        }
    };
}

rational_field!(i64);
rational_field!(i128);
rational_field!(BigInt);

/// `v` as a field element.
pub fn int<F: Field>(v: i64) -> F {
    F::from_i64(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Rational64};

    #[test]
    fn parses_fractions() {
        let q: BigRational = "3/6".parse().unwrap();
        assert_eq!(q, BigRational::from_ratio(1, 2));
        assert_eq!(q.to_string(), "1/2");
        let r: Rational64 = "-4".parse().unwrap();
        assert_eq!(r, Rational64::from_i64(-4));
        assert_eq!(r.to_parts(), Some((-4, 1)));
    }
}
