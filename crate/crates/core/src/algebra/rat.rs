//! Arbitrary-precision rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number; always stored reduced with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_from_bigint(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Fall back to a scaled division for huge numerators/denominators.
    let n = r.numer();
    let d = r.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift = (nb - db).clamp(-1000, 1000);
    let (nn, dd) = if shift > 0 {
        (n.clone(), d << shift as usize)
    } else {
        (n << (-shift) as usize, d.clone())
    };
    let q = Rat::new(nn, dd).to_f64().unwrap_or(0.0);
    q * 2f64.powi(shift as i32)
}

/// Parses `p`, `-p`, `p/q` or a finite decimal such as `0.125`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rat::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.trim_start().starts_with('-');
        let ip = ip.trim().trim_start_matches(['-', '+']);
        if !fp.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let ipv: BigInt = if ip.is_empty() {
            BigInt::zero()
        } else {
            ip.parse().ok()?
        };
        let scale = BigInt::from(10).pow(fp.len() as u32);
        let fpv: BigInt = if fp.is_empty() {
            BigInt::zero()
        } else {
            fp.parse().ok()?
        };
        let mut v = Rat::new(ipv * &scale + fpv, scale);
        if neg {
            v = -v;
        }
        return Some(v);
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rat::from_integer(n))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn is_nonpositive_integer(r: &Rat) -> bool {
    is_integer(r) && !r.is_positive()
}

/// Least common multiple of the denominators.
pub fn denom_lcm<'a, I: IntoIterator<Item = &'a Rat>>(it: I) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Exact square root of a non-negative integer, if it is a perfect square.
pub fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Exact square root of a rational, if it exists in Q.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    let n = isqrt_exact(r.numer())?;
    let d = isqrt_exact(r.denom())?;
    Some(Rat::new(n, d))
}

/// Splits `n != 0` as `s^2 * f` where `f` carries no square factor found by
/// trial division up to 10^6 (the cofactor is also checked for being a square).
pub fn square_free_split(n: &BigInt) -> (BigInt, BigInt) {
    let sign = if n.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let mut m = n.abs();
    let mut s = BigInt::one();
    let mut f = BigInt::one();
    let mut p: u64 = 2;
    while p <= 1_000_000 {
        let pb = BigInt::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0u32;
        while (&m % &pb).is_zero() {
            m /= &pb;
            e += 1;
        }
        if e > 0 {
            s *= pb.pow(e / 2);
            if e % 2 == 1 {
                f *= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if let Some(r) = isqrt_exact(&m) {
        s *= r;
    } else {
        f *= m;
    }
    (s, sign * f)
}
