//! Exact valuations and thresholds.
//!
//! Every preference value and every threshold is an exact rational so that
//! comparisons like `p(f) >= p(e) + gamma` never depend on float rounding.
//! Inputs are bounded (numerator and denominator at most [`MAX_COMPONENT`])
//! so that sums of two values and their comparisons fit in `i128`.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

/// Largest accepted numerator or denominator magnitude after reduction.
pub const MAX_COMPONENT: i128 = 1_000_000_000_000_000;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Value(Ratio<i128>);

impl Value {
    pub const ZERO: Value = Value(Ratio::new_raw(0, 1));

    pub fn new(numer: i128, denom: i128) -> Self {
        Value(Ratio::new(numer, denom))
    }

    pub fn from_int(v: i64) -> Self {
        Value(Ratio::from_integer(v as i128))
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn half(self) -> Self {
        Value(self.0 / 2)
    }
}

impl std::ops::Add for Value {
    type Output = Value;
    fn add(self, rhs: Value) -> Value {
        Value(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Value {
    type Output = Value;
    fn sub(self, rhs: Value) -> Value {
        Value(self.0 - rhs.0)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom() == &1 {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueParseError(pub String);

impl fmt::Display for ValueParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ValueParseError {}

fn parse_int(s: &str, whole: &str) -> Result<i128, ValueParseError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ValueParseError(format!("malformed number `{whole}`")));
    }
    // 40 digits overflow i128; anything this long is out of range anyway
    if s.trim_start_matches('0').len() > 30 {
        return Err(ValueParseError(format!("number `{whole}` out of range")));
    }
    s.parse::<i128>()
        .map_err(|_| ValueParseError(format!("number `{whole}` out of range")))
}

impl FromStr for Value {
    type Err = ValueParseError;

    /// Accepts integers (`3`), decimals (`2.25`) and fractions (`7/4`), with
    /// an optional leading sign.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (neg, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text.strip_prefix('+').unwrap_or(text)),
        };
        let ratio = if let Some((n, d)) = body.split_once('/') {
            let n = parse_int(n, text)?;
            let d = parse_int(d, text)?;
            if d.is_zero() {
                return Err(ValueParseError(format!("zero denominator in `{text}`")));
            }
            Ratio::new(n, d)
        } else if let Some((int, frac)) = body.split_once('.') {
            let int = if int.is_empty() { 0 } else { parse_int(int, text)? };
            let digits = parse_int(frac, text)?;
            if frac.len() > 18 {
                return Err(ValueParseError(format!("too many decimals in `{text}`")));
            }
            let scale = 10i128.pow(frac.len() as u32);
            Ratio::new(int * scale + digits, scale)
        } else {
            Ratio::from_integer(parse_int(body, text)?)
        };
        if ratio.numer().abs() > MAX_COMPONENT || *ratio.denom() > MAX_COMPONENT {
            return Err(ValueParseError(format!("number `{text}` out of range")));
        }
        Ok(Value(if neg { -ratio } else { ratio }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Value {
        s.parse().unwrap()
    }

    #[test]
    fn parses_all_forms() {
        assert_eq!(v("3"), Value::from_int(3));
        assert_eq!(v("2.5"), Value::new(5, 2));
        assert_eq!(v("0.125"), Value::new(1, 8));
        assert_eq!(v("6/4"), Value::new(3, 2));
        assert_eq!(v("-1"), Value::from_int(-1));
        assert_eq!(v(".5"), Value::new(1, 2));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "a", "1/0", "1.", "1/2/3", "--1", "1e3", "99999999999999999999"] {
            assert!(bad.parse::<Value>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "7", "5/2", "1/3"] {
            assert_eq!(v(s).to_string(), s);
        }
        assert_eq!(v("0.5").to_string(), "1/2");
    }

    #[test]
    fn threshold_arithmetic_is_exact() {
        // 0.1 + 0.2 == 0.3 exactly
        assert_eq!(v("0.1") + v("0.2"), v("0.3"));
        assert!(v("3") >= v("2") + v("1"));
        assert!(v("3") < v("2") + v("1.0000001"));
    }
}
