//! Decimal rendering of exact rationals.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

fn pow10(n: usize) -> BigUint {
    BigUint::from(10u32).pow(n as u32)
}

fn split_sign(value: &BigRational) -> (bool, BigUint, BigUint) {
    let negative = value.is_negative();
    let numer = value.numer().abs().to_biguint().expect("non-negative");
    let denom = value.denom().abs().to_biguint().expect("non-negative");
    (negative, numer, denom)
}

fn place_point(digits: String, places: usize) -> String {
    if places == 0 {
        return digits;
    }
    let padded = format!("{:0>width$}", digits, width = places + 1);
    let (int, frac) = padded.split_at(padded.len() - places);
    format!("{int}.{frac}")
}

/// Truncates toward zero to `places` decimals: 2/27 with 4 places is `0.0740`.
pub fn truncate(value: &BigRational, places: usize) -> String {
    let (negative, numer, denom) = split_sign(value);
    let scaled = (numer * pow10(places)) / denom;
    let body = place_point(scaled.to_str_radix(10), places);
    if negative && !scaled.is_zero() {
        format!("-{body}")
    } else {
        body
    }
}

/// Rounds to `sig` significant digits, ties to even, in plain positional form.
pub fn round_significant(value: &BigRational, sig: usize) -> String {
    assert!(sig >= 1);
    let (negative, numer, denom) = split_sign(value);
    if numer.is_zero() {
        return place_point("0".repeat(sig), sig - 1);
    }

    // exponent e with 10^e <= value < 10^{e+1}
    let mut e = (numer.bits() as i64 - denom.bits() as i64) * 30103 / 100000;
    let ge_pow = |e: i64| -> bool {
        if e >= 0 {
            numer >= &denom * pow10(e as usize)
        } else {
            &numer * pow10((-e) as usize) >= denom
        }
    };
    while !ge_pow(e) {
        e -= 1;
    }
    while ge_pow(e + 1) {
        e += 1;
    }

    // value * 10^{sig-1-e}, rounded half to even
    let shift = sig as i64 - 1 - e;
    let (num, den) = if shift >= 0 {
        (numer * pow10(shift as usize), denom)
    } else {
        (numer, denom * pow10((-shift) as usize))
    };
    let (mut q, r) = num.div_rem(&den);
    let twice = r << 1u32;
    if twice > den || (twice == den && q.is_odd()) {
        q += 1u32;
    }
    if q == pow10(sig) {
        q /= 10u32;
        e += 1;
    }

    let digits = q.to_str_radix(10);
    let body = if e >= 0 {
        let int_len = e as usize + 1;
        if int_len >= sig {
            format!("{digits}{}", "0".repeat(int_len - sig))
        } else {
            format!("{}.{}", &digits[..int_len], &digits[int_len..])
        }
    } else {
        format!("0.{}{digits}", "0".repeat((-e - 1) as usize))
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Same as [`round_significant`] for a finite float, via its exact binary value.
pub fn round_significant_f64(value: f64, sig: usize) -> String {
    match BigRational::from_float(value) {
        Some(r) => round_significant(&r, sig),
        None => value.to_string(),
    }
}

pub fn ratio(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> BigRational {
    BigRational::new(numer.into(), denom.into())
}

pub fn ratio_u(numer: BigUint, denom: BigUint) -> BigRational {
    BigRational::new(
        BigInt::from_biguint(Sign::Plus, numer),
        BigInt::from_biguint(Sign::Plus, denom),
    )
}

/// Parts `(numerator, denominator)` of a reduced rational, as strings.
pub fn parts(value: &BigRational) -> (String, String) {
    (value.numer().to_string(), value.denom().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation() {
        assert_eq!(truncate(&ratio(2, 27), 4), "0.0740");
        assert_eq!(truncate(&ratio(0, 1), 4), "0.0000");
        assert_eq!(truncate(&ratio(596, 2700), 4), "0.2207");
        assert_eq!(truncate(&ratio(29999, 10000), 2), "2.99");
        assert_eq!(truncate(&ratio(-1, 3), 3), "-0.333");
        assert_eq!(truncate(&ratio(7, 1), 0), "7");
    }

    #[test]
    fn significant_half_even() {
        assert_eq!(round_significant(&ratio(1, 1), 12), "1.00000000000");
        assert_eq!(round_significant(&ratio(2, 9), 12), "0.222222222222");
        assert_eq!(round_significant(&ratio(2, 3), 3), "0.667");
        assert_eq!(round_significant(&ratio(125, 100), 2), "1.2");
        assert_eq!(round_significant(&ratio(135, 100), 2), "1.4");
        assert_eq!(round_significant(&ratio(9999, 1000), 3), "10.0");
        assert_eq!(round_significant(&ratio(123456, 1), 3), "123000");
        assert_eq!(round_significant(&ratio(1, 1000), 2), "0.0010");
        assert_eq!(round_significant(&ratio(0, 1), 3), "0.00");
        assert_eq!(round_significant(&ratio(-5, 4), 2), "-1.2");
        assert_eq!(round_significant_f64(0.5, 4), "0.5000");
    }
}
