//! Polynomial GCD over Q via small-prime modular images and CRT.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{int_exact_div, Poly};

static PRIMES: Mutex<Vec<u64>> = Mutex::new(Vec::new());

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
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

/// The `i`-th prime below 2^62, counting downwards.
pub(crate) fn prime(i: usize) -> u64 {
    let mut primes = PRIMES.lock().unwrap_or_else(|e| e.into_inner());
    let mut candidate = primes.last().copied().unwrap_or(1u64 << 62);
    while primes.len() <= i {
        candidate -= 1;
        while !is_prime_u64(candidate) {
            candidate -= 1;
        }
        primes.push(candidate);
    }
    primes[i]
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    let m = c.mod_floor(&BigInt::from(p));
    m.to_u64().unwrap()
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` modulo `b` over GF(p); both ascending, `b` nonzero.
fn rem_mod(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while a.len() > db {
        let top = a.len() - 1;
        let c = mul_mod(a[top], inv, p);
        if c != 0 {
            let shift = top - db;
            for (j, bj) in b.iter().enumerate() {
                let t = mul_mod(c, *bj, p);
                a[shift + j] = (a[shift + j] + p - t) % p;
            }
        }
        a.pop();
        trim(a);
    }
}

/// Monic gcd over GF(p).
fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        rem_mod(&mut x, &y, p);
        std::mem::swap(&mut x, &mut y);
    }
    if let Some(&lc) = x.last() {
        let inv = inv_mod(lc, p);
        for c in x.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    x
}

fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return v.to_vec();
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    v.iter().map(|c| c / &g).collect()
}

/// gcd of primitive integer polynomials (ascending, nonempty), returned
/// primitive with positive leading coefficient.
fn int_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let gamma = a.last().unwrap().gcd(b.last().unwrap());
    let mut acc: Option<(Vec<BigInt>, BigInt)> = None;
    let mut best_deg = usize::MAX;
    let mut i = 0;
    loop {
        let p = prime(i);
        i += 1;
        let pb = BigInt::from(p);
        if (a.last().unwrap() % &pb).is_zero() || (b.last().unwrap() % &pb).is_zero() {
            continue;
        }
        let am: Vec<u64> = a.iter().map(|c| reduce(c, p)).collect();
        let bm: Vec<u64> = b.iter().map(|c| reduce(c, p)).collect();
        let g = gcd_mod(&am, &bm, p);
        let d = g.len() - 1;
        if d == 0 {
            return vec![BigInt::one()];
        }
        if d > best_deg {
            continue;
        }
        let gm = reduce(&gamma, p);
        let g: Vec<u64> = g.iter().map(|c| mul_mod(*c, gm, p)).collect();
        if d < best_deg {
            best_deg = d;
            acc = Some((g.iter().map(|c| sym_u64(*c, p)).collect(), pb));
            continue;
        }
        let (h, m) = acc.take().unwrap();
        let minv = inv_mod(reduce(&m, p), p);
        let mut changed = false;
        let new: Vec<BigInt> = h
            .iter()
            .zip(g.iter())
            .map(|(hc, gc)| {
                let diff = (gc + p - reduce(hc, p)) % p;
                let k = mul_mod(diff, minv, p);
                if k == 0 {
                    hc.clone()
                } else {
                    changed = true;
                    hc + &m * sym_u64(k, p)
                }
            })
            .collect();
        let stable = !changed;
        acc = Some((new, m * pb));
        if stable {
            let cand = primitive(&acc.as_ref().unwrap().0);
            if int_exact_div(a, &cand).is_some() && int_exact_div(b, &cand).is_some() {
                return cand;
            }
        }
    }
}

/// Symmetric lift of a residue to (-p/2, p/2].
fn sym_u64(c: u64, p: u64) -> BigInt {
    if c > p / 2 {
        BigInt::from(c) - BigInt::from(p)
    } else {
        BigInt::from(c)
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let (_, pa) = a.to_primitive();
    let (_, pb) = b.to_primitive();
    if pa == pb {
        return a.monic();
    }
    let g = int_gcd(&pa, &pb);
    Poly::from_ints(&g).monic()
}

/// Monic least common multiple.
pub fn poly_lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let g = poly_gcd(a, b);
    (a.exact_div(&g) * b).monic()
}

/// Extended Euclid over Q: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn poly_xgcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &(&q * &s1);
        s0 = std::mem::replace(&mut s1, s);
        let t = &t0 - &(&q * &t1);
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.is_zero() {
        return (r0, s0, t0);
    }
    let inv = r0.lc().recip();
    (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
}
