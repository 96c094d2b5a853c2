//! Exact rational scalars.
//!
//! `Rational` is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator, so equality of values is equality of
//! representations. Every scalar in this crate is one of these; there is no
//! floating point anywhere.

use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;
use num_traits::{One, Signed};

use alloc::string::{String, ToString};
use alloc::vec::Vec;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`, reduced. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Vector of integer rationals.
pub fn rvec(entries: &[i64]) -> Vec<Rational> {
    entries.iter().map(|&n| rat(n)).collect()
}

/// Canonical string form: `p/q` with `q > 0` and `gcd(|p|,q) = 1`,
/// plain `p` when the value is an integer.
pub fn to_canonical_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        let mut s = r.numer().to_string();
        s.push('/');
        s.push_str(&r.denom().to_string());
        s
    }
}

/// Outcome of parsing a rational string strictly.
pub enum ParsedRational {
    /// Input was already canonical.
    Canonical(Rational),
    /// Input denoted a valid rational but not in canonical form; carries the
    /// value and its canonical rendering, e.g. `2/4` -> suggestion `1/2`.
    NonCanonical { value: Rational, suggestion: String },
    /// Input is not a rational at all.
    Invalid,
}

/// Parse `p` or `p/q`, reporting whether the text was canonical.
///
/// Canonical means: `q > 0`, `gcd(|p|, q) = 1`, no `+` sign, no leading
/// zeros, integers written without `/1`.
pub fn parse_strict(text: &str) -> ParsedRational {
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let Some(numer) = parse_int_strict(num_text) else {
        return ParsedRational::Invalid;
    };
    let denom = match den_text {
        None => BigInt::one(),
        Some(d) => match parse_int_strict(d) {
            Some(v) if v.is_positive() => v,
            _ => return ParsedRational::Invalid,
        },
    };
    let value = Rational::new(numer.clone(), denom.clone());
    let canonical = *value.numer() == numer && *value.denom() == denom && den_text != Some("1");
    if canonical {
        ParsedRational::Canonical(value)
    } else {
        let suggestion = to_canonical_string(&value);
        ParsedRational::NonCanonical { value, suggestion }
    }
}

fn parse_int_strict(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    if text.starts_with('-') && digits == "0" {
        return None;
    }
    text.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn canonical_strings() {
        assert_eq!(to_canonical_string(&rat(5)), "5");
        assert_eq!(to_canonical_string(&rat(-3)), "-3");
        assert_eq!(to_canonical_string(&ratio(1, 2)), "1/2");
        assert_eq!(to_canonical_string(&ratio(-2, 4)), "-1/2");
        assert_eq!(to_canonical_string(&Rational::zero()), "0");
    }

    #[test]
    fn strict_parse_accepts_canonical() {
        for s in ["0", "5", "-3", "1/2", "-7/3", "22/7"] {
            match parse_strict(s) {
                ParsedRational::Canonical(v) => assert_eq!(to_canonical_string(&v), s),
                _ => panic!("{s} should parse as canonical"),
            }
        }
    }

    #[test]
    fn strict_parse_flags_noncanonical() {
        match parse_strict("2/4") {
            ParsedRational::NonCanonical { value, suggestion } => {
                assert_eq!(value, ratio(1, 2));
                assert_eq!(suggestion, "1/2");
            }
            _ => panic!("2/4 is not canonical"),
        }
        assert!(matches!(parse_strict("3/1"), ParsedRational::NonCanonical { .. }));
        assert!(matches!(parse_strict("-0"), ParsedRational::Invalid));
        assert!(matches!(parse_strict("1/-2"), ParsedRational::Invalid));
        assert!(matches!(parse_strict("01"), ParsedRational::Invalid));
        assert!(matches!(parse_strict("1/0"), ParsedRational::Invalid));
        assert!(matches!(parse_strict("a"), ParsedRational::Invalid));
        assert!(matches!(parse_strict(""), ParsedRational::Invalid));
    }
}
