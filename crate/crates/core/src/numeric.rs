//! Shared multi-precision helpers.

use std::collections::BTreeMap;

use num_traits::Zero;
use rug::{Complex, Float};

use crate::poly::Rational;

/// Numeric parameter assignment.
pub type ParamValues = BTreeMap<String, Complex>;

/// Default number of significant decimal digits for reporting.
pub const DEFAULT_PRECISION: u32 = 15;
/// Largest supported reporting precision.
pub const MAX_PRECISION: u32 = 40;

/// Binary precision used internally for a requested number of decimal digits.
///
/// Cube roots of rounding noise must stay below the `10^(-digits/2)` branch
/// guard, so the working precision is a little over twice the request.
pub fn work_bits(digits: u32) -> u32 {
    ((2 * digits + 10) as f64 * std::f64::consts::LOG2_10).ceil() as u32
}

pub fn float_from_rational(q: &Rational, bits: u32) -> Float {
    let r = rug::Rational::from((
        rug::Integer::from_str_radix(&q.numer().to_str_radix(16), 16).expect("integer"),
        rug::Integer::from_str_radix(&q.denom().to_str_radix(16), 16).expect("integer"),
    ));
    Float::with_val(bits, &r)
}

pub fn complex_from_rational(q: &Rational, bits: u32) -> Complex {
    if q.is_zero() {
        return Complex::new(bits);
    }
    Complex::with_val(bits, (float_from_rational(q, bits), 0))
}

/// Parses a decimal literal such as `7.0`, `-2.5e3` or `1/3` at `bits` precision.
pub fn parse_real(text: &str, bits: u32) -> Option<Float> {
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: rug::Integer = n.trim().parse().ok()?;
        let d: rug::Integer = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        return Some(Float::with_val(bits, &rug::Rational::from((n, d))));
    }
    let parsed = Float::parse(t).ok()?;
    Some(Float::with_val(bits, parsed))
}

pub fn magnitude(z: &Complex) -> f64 {
    let r = z.real().to_f64();
    let i = z.imag().to_f64();
    r.hypot(i)
}

pub fn to_pair(z: &Complex) -> (f64, f64) {
    (z.real().to_f64(), z.imag().to_f64())
}

/// Decimal rendering with `digits` significant digits.
pub fn format_float(x: &Float, digits: u32) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let s = x.to_string_radix(10, Some(digits as usize));
    normalise_decimal(&s)
}

fn normalise_decimal(s: &str) -> String {
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m.to_string(), e.parse::<i64>().unwrap_or(0)),
        None => (s.to_string(), 0),
    };
    if exp == 0 {
        return trim_zeros(&mant);
    }
    if (-6..=20).contains(&exp) {
        let neg = mant.starts_with('-');
        let m = mant.trim_start_matches('-');
        let (ip, fp) = m.split_once('.').unwrap_or((m, ""));
        let digits: String = format!("{ip}{fp}");
        let point = ip.len() as i64 + exp;
        let body = if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), digits)
        } else if point as usize >= digits.len() {
            format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
        } else {
            format!("{}.{}", &digits[..point as usize], &digits[point as usize..])
        };
        let body = trim_zeros(&body);
        if neg {
            format!("-{body}")
        } else {
            body
        }
    } else {
        format!("{}e{}", trim_zeros(&mant), exp)
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        let t = s.trim_end_matches('0').trim_end_matches('.');
        t.to_string()
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_decimals() {
        let bits = work_bits(15);
        let x = parse_real("1.963798039", bits).unwrap();
        assert_eq!(format_float(&x, 10), "1.963798039");
        let y = parse_real("-0.000125", bits).unwrap();
        assert_eq!(format_float(&y, 15), "-0.000125");
        let z = parse_real("1/4", bits).unwrap();
        assert_eq!(format_float(&z, 15), "0.25");
        assert_eq!(format_float(&Float::with_val(bits, 1200), 15), "1200");
    }

    #[test]
    fn rational_conversion_is_exact_for_dyadics() {
        let q = crate::poly::rational(-3, 8);
        assert_eq!(float_from_rational(&q, 64).to_f64(), -0.375);
    }
}
