//! Shared exact-arithmetic helpers: rational parsing and formatting,
//! generalized binomial coefficients, and modular arithmetic on `u64`
//! residues including a deterministic primality test.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience constructor for integer rationals.
pub fn rint(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"n"` or `"n/d"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational literal".to_string());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("bad integer `{num}` in rational literal `{s}`"))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| format!("bad denominator `{d}` in rational literal `{s}`"))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(format!("zero denominator in rational literal `{s}`"));
    }
    Ok(BigRational::new(n, d))
}

/// Formats a rational as `"n"` or `"n/d"`, denominator always positive.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Generalized binomial coefficient `C(n, k)` for any integer `n`,
/// i.e. the coefficient of `u^k` in the series `(1+u)^n`.
pub fn binomial(n: i64, k: u32) -> BigInt {
    let mut num = BigInt::one();
    for t in 0..k as i64 {
        num *= BigInt::from(n - t);
    }
    let mut den = BigInt::one();
    for t in 1..=k as i64 {
        den *= BigInt::from(t);
    }
    // The falling factorial of length k is always divisible by k!.
    num / den
}

/// Binomial coefficient with nonnegative big-integer-safe inputs.
pub fn binomial_u(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    acc
}

/// Floor of an exact rational as a plain `i64`, panicking when the value
/// is outside the `i64` range (far beyond any input this crate handles).
pub fn rational_floor_i64(q: &BigRational) -> i64 {
    q.floor()
        .to_integer()
        .to_i64()
        .expect("rational floor exceeds i64 range")
}

/// Ceiling counterpart of [`rational_floor_i64`].
pub fn rational_ceil_i64(q: &BigRational) -> i64 {
    q.ceil()
        .to_integer()
        .to_i64()
        .expect("rational ceiling exceeds i64 range")
}

/// `|a|` of a big integer.
pub fn big_abs(a: &BigInt) -> BigInt {
    a.abs()
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse modulo a prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

/// Reduces an arbitrary big integer into `[0, p)`.
pub fn bigint_mod(a: &BigInt, p: u64) -> u64 {
    let m = a % BigInt::from(p);
    let m = if m.is_negative() { m + BigInt::from(p) } else { m };
    m.to_u64().expect("residue fits u64")
}

/// Deterministic Miller-Rabin primality test, valid for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-3", "5/14", "-1/9", "125/101"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(format_rational(&q), s);
        }
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert_eq!(format_rational(&parse_rational("2/-4").unwrap()), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 0), BigInt::from(1));
        assert_eq!(binomial(2, 3), BigInt::from(0));
        // Series coefficients of (1+u)^{-1} = 1 - u + u^2 - ...
        assert_eq!(binomial(-1, 0), BigInt::from(1));
        assert_eq!(binomial(-1, 1), BigInt::from(-1));
        assert_eq!(binomial(-1, 2), BigInt::from(1));
        assert_eq!(binomial(-3, 2), BigInt::from(6));
        assert_eq!(binomial_u(8, 4), BigInt::from(70));
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..200).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            primes[..12],
            [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
        );
        assert!(is_prime_u64(2_147_483_647)); // 2^31 - 1
        assert!(!is_prime_u64(2_147_483_649));
        assert!(!is_prime_u64(1));
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(mul_mod(u64::MAX - 1, u64::MAX - 2, u64::MAX), 2);
        assert_eq!(pow_mod(3, 100, 101), 1); // Fermat
        assert_eq!(mul_mod(inv_mod(7, 13), 7, 13), 1);
        assert_eq!(bigint_mod(&BigInt::from(-1), 7), 6);
    }

    #[test]
    fn rational_rounding() {
        assert_eq!(rational_floor_i64(&rat(7, 2)), 3);
        assert_eq!(rational_ceil_i64(&rat(7, 2)), 4);
        assert_eq!(rational_floor_i64(&rat(-7, 2)), -4);
        assert_eq!(rational_ceil_i64(&rat(-7, 2)), -3);
        assert_eq!(rational_floor_i64(&rint(5)), 5);
    }
}
