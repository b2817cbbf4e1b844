//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Ground-field element: an arbitrary-precision rational in lowest terms.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: usize) -> Scalar {
    (1..=n).fold(Scalar::one(), |acc, i| acc * int(i as i64))
}

/// `+1` for an even count, `-1` for an odd count.
pub fn sign(odd: bool) -> Scalar {
    if odd {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

/// Always `p/q`, including `q = 1`.
pub fn to_fraction_string(c: &Scalar) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Coefficient prefix used when printing `c * term`; empty for `1`.
pub(crate) fn coefficient_prefix(c: &Scalar) -> String {
    let a = c.abs();
    if a.is_one() {
        String::new()
    } else if a.is_integer() {
        format!("{} ", a.numer())
    } else {
        format!("{}/{} ", a.numer(), a.denom())
    }
}

/// Joins `(coefficient, rendered term)` pairs as `a - 1/2 b + c`; `0` when empty.
pub fn format_terms<I, S>(terms: I) -> String
where
    I: IntoIterator<Item = (Scalar, S)>,
    S: AsRef<str>,
{
    let mut out = String::new();
    for (c, body) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let body = body.as_ref();
        if body == "1" {
            let a = c.abs();
            if a.is_integer() {
                out.push_str(&a.numer().to_string());
            } else {
                out.push_str(&format!("{}/{}", a.numer(), a.denom()));
            }
        } else {
            out.push_str(&coefficient_prefix(&c));
            out.push_str(body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let c = ratio(4, -6);
        assert_eq!(c.numer(), &BigInt::from(-2));
        assert_eq!(c.denom(), &BigInt::from(3));
        assert_eq!(to_fraction_string(&c), "-2/3");
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(5), int(120));
    }

    #[test]
    fn term_formatting() {
        let s = format_terms(vec![(ratio(1, 2), "x⊗y"), (int(-1), "z"), (int(3), "1")]);
        assert_eq!(s, "1/2 x⊗y - z + 3");
        assert_eq!(format_terms(Vec::<(Scalar, &str)>::new()), "0");
        assert_eq!(format_terms(vec![(int(-2), "x")]), "-2 x");
    }
}
