//! The scalar field: arbitrary-precision fractions in lowest terms.

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact fraction with a positive denominator, always reduced.
pub type Rational = BigRational;

/// Shorthand for `num / den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"5"`, `"-2/3"` or `"4/-6"` into a reduced fraction.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    text.parse::<Rational>().ok()
}
