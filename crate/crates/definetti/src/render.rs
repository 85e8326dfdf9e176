//! Exact decimal rendering and parsing of rationals.

use definetti_core::{BigInt, BigRational};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Significant digits used for every decimal the crate prints.
pub const SIGNIFICANT_DIGITS: u32 = 12;

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), e as usize)
}

fn scale10(q: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        q * BigRational::from_integer(pow10(e as u32))
    } else {
        q / BigRational::from_integer(pow10((-e) as u32))
    }
}

fn round_half_even(q: &BigRational) -> BigInt {
    let floor = q.floor();
    let frac = q - &floor;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let base = floor.to_integer();
    match frac.cmp(&half) {
        std::cmp::Ordering::Less => base,
        std::cmp::Ordering::Greater => base + 1,
        std::cmp::Ordering::Equal => {
            if base.is_even() {
                base
            } else {
                base + 1
            }
        }
    }
}

/// `q` to [`SIGNIFICANT_DIGITS`] significant digits, rounding half to even,
/// with trailing zeros removed. Plain notation for exponents in `-7..=14`,
/// scientific otherwise.
pub fn decimal(q: &BigRational) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let negative = q.is_negative();
    let a = q.abs();
    let digits = SIGNIFICANT_DIGITS as i64;

    // exponent e with 10^e <= a < 10^(e+1)
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    while scale10(&BigRational::one(), e) > a {
        e -= 1;
    }
    while scale10(&BigRational::one(), e + 1) <= a {
        e += 1;
    }
    let mut mantissa = round_half_even(&scale10(&a, digits - 1 - e));
    if mantissa == pow10(SIGNIFICANT_DIGITS) {
        mantissa = pow10(SIGNIFICANT_DIGITS - 1);
        e += 1;
    }
    let m = mantissa.to_string();
    let body = if (-7..=14).contains(&e) {
        if e >= digits - 1 {
            format!("{m}{}", "0".repeat((e - digits + 1) as usize))
        } else if e >= 0 {
            let (int, frac) = m.split_at(e as usize + 1);
            join_fraction(int, frac)
        } else {
            let padded = format!("{}{m}", "0".repeat((-e - 1) as usize));
            join_fraction("0", &padded)
        }
    } else {
        let (lead, rest) = m.split_at(1);
        format!("{}e{e}", join_fraction(lead, rest))
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

fn join_fraction(int: &str, frac: &str) -> String {
    let frac = frac.trim_end_matches('0');
    if frac.is_empty() {
        int.to_string()
    } else {
        format!("{int}.{frac}")
    }
}

/// A double rendered through its exact binary value.
pub fn decimal_f64(x: f64) -> String {
    if x.is_nan() {
        return "NaN".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let q = BigRational::from_float(x).expect("finite doubles are rational");
    decimal(&q)
}

/// `p/q = <decimal>`, or a bare integer when the denominator is one.
pub fn exact(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{} = {}", q.numer(), q.denom(), decimal(q))
    }
}

/// Parses `p`, `p/q` or a decimal literal such as `-0.125` or `2.5e-3`
/// exactly.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let value = scale10(&BigRational::from_integer(digits), exponent - frac.len() as i64);
    Some(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn renders_figure_anchor() {
        assert_eq!(decimal(&q(200, 401)), "0.498753117207");
        assert_eq!(decimal(&q(4, 5)), "0.8");
        assert_eq!(exact(&q(4, 5)), "4/5 = 0.8");
        assert_eq!(exact(&q(1, 5)), "1/5 = 0.2");
        assert_eq!(exact(&q(3, 1)), "3");
        assert_eq!(decimal(&q(0, 1)), "0");
    }

    #[test]
    fn rounds_half_to_even() {
        // 12 significant digits: the 13th digit is exactly 5
        assert_eq!(decimal(&parse_rational("1.000000000025").unwrap()), "1.00000000002");
        assert_eq!(decimal(&parse_rational("1.000000000035").unwrap()), "1.00000000004");
        assert_eq!(decimal(&parse_rational("1.0000000000351").unwrap()), "1.00000000004");
        assert_eq!(decimal(&parse_rational("0.9999999999995").unwrap()), "1");
    }

    #[test]
    fn plain_and_scientific_ranges() {
        assert_eq!(decimal(&q(1, 3)), "0.333333333333");
        assert_eq!(decimal(&q(-2, 3)), "-0.666666666667");
        assert_eq!(decimal(&q(123456789, 1000)), "123456.789");
        assert_eq!(decimal(&q(1, 1_000_000)), "0.000001");
        assert_eq!(decimal(&q(1, 100_000_000)), "1e-8");
        assert_eq!(decimal(&parse_rational("1.5e20").unwrap()), "1.5e20");
        assert_eq!(decimal(&parse_rational("12345678901234").unwrap()), "12345678901200");
    }

    #[test]
    fn doubles_go_through_exact_value() {
        assert_eq!(decimal_f64(0.2), "0.2");
        assert_eq!(decimal_f64(80.68575739983), "80.6857573998");
        assert_eq!(decimal_f64(f64::NAN), "NaN");
    }

    #[test]
    fn parses_exact_literals() {
        assert_eq!(parse_rational("0.5"), Some(q(1, 2)));
        assert_eq!(parse_rational("-3/4"), Some(q(-3, 4)));
        assert_eq!(parse_rational("2.5e-1"), Some(q(1, 4)));
        assert_eq!(parse_rational("50"), Some(q(50, 1)));
        assert_eq!(parse_rational(".25"), Some(q(1, 4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational(""), None);
    }
}
