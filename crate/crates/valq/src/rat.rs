//! Exact rational scalars and p-adic valuations of rationals.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
///
/// `i128` components are ample for the desk-scale inputs this crate targets
/// (primes up to 97, extensions of degree at most 3, low-degree corpora).
/// Overflow checks stay enabled in all profiles so a wrap can never produce
/// a wrong exact value silently.
pub type Rat = Ratio<i128>;

pub fn rat(numer: i128, denom: i128) -> Rat {
    Ratio::new(numer, denom)
}

pub fn rat_int(n: i128) -> Rat {
    Ratio::from_integer(n)
}

fn vp_int(mut n: i128, p: i128) -> i64 {
    debug_assert!(n != 0);
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

/// p-adic valuation of a rational; `None` for zero.
pub fn vp(r: &Rat, p: u32) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    let p = i128::from(p);
    Some(vp_int(*r.numer(), p) - vp_int(*r.denom(), p))
}

/// Inverse of `a` modulo the prime `p`.
pub fn mod_inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    // p is tiny, so a^(p-2) by repeated squaring is plenty.
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Residue of a p-integral rational modulo p.
pub fn rat_mod_p(r: &Rat, p: u64) -> Result<u64> {
    if r.is_zero() {
        return Ok(0);
    }
    if vp(r, p as u32).unwrap() < 0 {
        return Err(Error::DomainMismatch(format!(
            "{} is not p-integral at p = {}",
            fmt_rat(r),
            p
        )));
    }
    let p_i = i128::from(p);
    let n = r.numer().rem_euclid(p_i) as u64;
    let d = r.denom().rem_euclid(p_i) as u64;
    if d == 0 {
        // Denominator divisible by p, numerator even more so: residue 0.
        return Ok(0);
    }
    Ok(n % p * mod_inv(d, p) % p)
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Desk-scale prime guard: p must be prime and at most 97.
pub fn check_prime(p: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > 97 {
        return Err(Error::UnsupportedPrime(p));
    }
    Ok(())
}

/// Parses "a" or "a/b" with an optional leading sign. No decimals.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let err = |msg: &str| Error::Parse {
        col: 1,
        msg: format!("{msg}: {s:?}"),
    };
    let (numer_str, denom_str) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let numer: i128 = numer_str.parse().map_err(|_| err("invalid rational"))?;
    let denom: i128 = denom_str.parse().map_err(|_| err("invalid rational"))?;
    if denom == 0 {
        return Err(err("zero denominator"));
    }
    Ok(Ratio::new(numer, denom))
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sign-split rendering used by the polynomial printers: (is_negative, |r| text).
pub fn fmt_rat_abs(r: &Rat) -> (bool, String) {
    (r.is_negative(), fmt_rat(&r.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vp_basic() {
        assert_eq!(vp(&rat(8, 3), 2), Some(3));
        assert_eq!(vp(&rat(3, 4), 2), Some(-2));
        assert_eq!(vp(&rat(0, 1), 2), None);
        assert_eq!(vp(&rat(-6, 1), 3), Some(1));
    }

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-3/4", "0", "17", "-1", "1/2"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s);
        }
        assert_eq!(fmt_rat(&parse_rat("2/4").unwrap()), "1/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1.5").is_err());
    }

    #[test]
    fn residues_mod_p() {
        assert_eq!(rat_mod_p(&rat(3, 5), 2).unwrap(), 1);
        assert_eq!(rat_mod_p(&rat(4, 3), 2).unwrap(), 0);
        assert_eq!(rat_mod_p(&rat(1, 3), 5).unwrap(), 2);
        assert!(rat_mod_p(&rat(1, 2), 2).is_err());
    }

    #[test]
    fn prime_guard() {
        assert!(check_prime(2).is_ok());
        assert!(check_prime(97).is_ok());
        assert!(matches!(check_prime(1), Err(Error::NotPrime(1))));
        assert!(matches!(check_prime(4), Err(Error::NotPrime(4))));
        assert!(matches!(check_prime(101), Err(Error::UnsupportedPrime(101))));
    }
}
