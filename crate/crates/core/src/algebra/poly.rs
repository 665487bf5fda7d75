//! Univariate polynomials over the rationals, stored as sparse exponent maps.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{denom_lcm, rint, Rat};

/// Polynomial in `x` with rational coefficients. Zero coefficients are never
/// stored, so the zero polynomial has an empty map and no degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<u32, Rat>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn x() -> Poly {
        Poly::monomial(Rat::one(), 1)
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::monomial(c, 0)
    }

    pub fn monomial(c: Rat, e: u32) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Poly { terms }
    }

    /// Builds from dense coefficients in ascending exponent order.
    pub fn from_coeffs<I: IntoIterator<Item = Rat>>(coeffs: I) -> Poly {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32, c))
            .collect();
        Poly { terms }
    }

    pub fn from_i64(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| rint(c)))
    }

    pub fn from_ints(coeffs: &[BigInt]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|c| Rat::from_integer(c.clone())))
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, Rat)>>(terms: I) -> Poly {
        let mut p = Poly::zero();
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    /// `x - r`
    pub fn linear_root(r: &Rat) -> Poly {
        Poly::from_coeffs([-r.clone(), Rat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.degree().unwrap_or(0) == 0
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> u32 {
        self.degree().unwrap_or(0)
    }

    pub fn lowest_exponent(&self) -> Option<u32> {
        self.terms.keys().next().copied()
    }

    pub fn lc(&self) -> Rat {
        self.terms
            .values()
            .next_back()
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn coeff(&self, e: u32) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &Rat)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Dense ascending coefficient vector (empty for zero).
    pub fn dense(&self) -> Vec<Rat> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => {
                let mut v = vec![Rat::zero(); d as usize + 1];
                for (e, c) in &self.terms {
                    v[*e as usize] = c.clone();
                }
                v
            }
        }
    }

    fn add_term(&mut self, e: u32, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                v.is_zero()
            }
            None => {
                self.terms.insert(e, c.clone());
                false
            }
        };
        if remove {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: u32) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| **e > 0)
                .map(|(e, c)| (e - 1, c * rint(*e as i64)))
                .collect(),
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        let mut last = match self.degree() {
            None => return acc,
            Some(d) => d,
        };
        for (e, c) in self.terms.iter().rev() {
            for _ in *e..last {
                acc *= x;
            }
            acc += c;
            last = *e;
        }
        for _ in 0..last {
            acc *= x;
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Polynomial composition `self(g(x))`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero();
        let mut last = match self.degree() {
            None => return acc,
            Some(d) => d,
        };
        for (e, c) in self.terms.iter().rev() {
            for _ in *e..last {
                acc = &acc * g;
            }
            acc.add_term(0, c);
            last = *e;
        }
        for _ in 0..last {
            acc = &acc * g;
        }
        acc
    }

    /// `self(x^k)`
    pub fn expand_exponents(&self, k: u32) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// `self(x^(1/k))`; every exponent must be divisible by `k`.
    pub fn contract_exponents(&self, k: u32) -> Option<Poly> {
        if self.terms.keys().any(|e| e % k != 0) {
            return None;
        }
        Some(Poly {
            terms: self.terms.iter().map(|(e, c)| (e / k, c.clone())).collect(),
        })
    }

    /// gcd of the exponents present (0 for constants or zero).
    pub fn exponent_gcd(&self) -> u32 {
        self.terms.keys().fold(0u32, |g, e| g.gcd(e))
    }

    /// Splits into a rational content and a primitive integer polynomial with
    /// positive leading coefficient (dense, ascending).
    pub fn to_primitive(&self) -> (Rat, Vec<BigInt>) {
        if self.is_zero() {
            return (Rat::zero(), Vec::new());
        }
        let l = denom_lcm(self.terms.values());
        let dense = self.dense();
        let ints: Vec<BigInt> = dense
            .iter()
            .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (Rat::new(g, l), prim)
    }

    /// Exact quotient `self / d`; panics when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        self.try_exact_div(d)
            .expect("exact_div: divisor does not divide")
    }

    /// Exact quotient over Z[x] via primitive parts (Gauss lemma), or `None`
    /// when `d` does not divide `self`.
    pub fn try_exact_div(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.is_constant() {
            return Some(self.scale(&d.lc().recip()));
        }
        let (ca, a) = self.to_primitive();
        let (cd, b) = d.to_primitive();
        let q = int_exact_div(&a, &b)?;
        Some(Poly::from_ints(&q).scale(&(ca / cd)))
    }

    /// Euclidean division over Q.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let db = d.deg() as usize;
        let da = match self.degree() {
            None => return (Poly::zero(), Poly::zero()),
            Some(x) => x as usize,
        };
        if da < db {
            return (Poly::zero(), self.clone());
        }
        let mut r = self.dense();
        let b = d.dense();
        let inv = d.lc().recip();
        let mut q = vec![Rat::zero(); da - db + 1];
        for i in (db..=da).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = &r[i] * &inv;
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    let t = &c * bj;
                    r[i - db + j] -= t;
                }
            }
            q[i - db] = c;
        }
        r.truncate(db);
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Content-free integer coefficients as `(coeffs, common denominator)`.
    fn int_form(&self) -> (Vec<BigInt>, BigInt) {
        let l = denom_lcm(self.terms.values());
        let v = self
            .dense()
            .iter()
            .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
            .collect();
        (v, l)
    }
}

/// Exact division of dense integer polynomials (ascending); `None` if the
/// quotient is not integral or a remainder is left.
pub(crate) fn int_exact_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return if a.iter().all(|c| c.is_zero()) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let lb = &b[db];
    let mut r: Vec<BigInt> = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (db..a.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let (c, rem) = r[i].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                r[i - db + j] -= &c * bj;
            }
        }
        q[i - db] = c;
    }
    if r[..db].iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(q)
}

pub(crate) fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if self.num_terms() == 1 || rhs.num_terms() == 1 {
            let (mono, other) = if self.num_terms() == 1 {
                (self, rhs)
            } else {
                (rhs, self)
            };
            let (e, c) = mono.terms.iter().next().unwrap();
            return other.scale(c).shift(*e);
        }
        let (a, da) = self.int_form();
        let (b, db) = rhs.int_form();
        let den = da * db;
        let prod = int_mul(&a, &b);
        Poly::from_coeffs(prod.into_iter().map(|c| Rat::new(c, den.clone())))
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Canonical rendering: decreasing exponents, explicit signs, `p/q`
/// coefficients, unit coefficients omitted, e.g. `3/2*x^3 - x + 4`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (*e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}*x")?,
                (_, true) => write!(f, "x^{e}")?,
                (_, false) => write!(f, "{a}*x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn render_is_canonical() {
        assert_eq!(p(&[-4, 0, 1]).to_string(), "x^2 - 4");
        assert_eq!(
            Poly::from_coeffs([rat(1, 3), rint(-2)]).to_string(),
            "-2*x + 1/3"
        );
        assert_eq!(p(&[0, 0, 0, -1]).to_string(), "-x^3");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn division_identity() {
        let a = p(&[1, 2, 3, 4, 5]);
        let b = Poly::from_coeffs([rat(1, 2), rint(0), rint(3)]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn exact_division() {
        let a = p(&[-8, 0, 0, 1]);
        let b = p(&[-2, 1]);
        assert_eq!(a.exact_div(&b), p(&[4, 2, 1]));
        assert!(a.try_exact_div(&p(&[1, 1])).is_none());
        let half = Poly::from_coeffs([rat(-1, 2), rat(1, 3)]);
        assert_eq!((&half * &b).exact_div(&half), b);
    }

    #[test]
    fn compose_and_eval() {
        let f = p(&[1, 0, 1]);
        let g = p(&[0, 2]);
        assert_eq!(f.compose(&g), p(&[1, 0, 4]));
        assert_eq!(f.eval(&rat(1, 2)), rat(5, 4));
        assert_eq!(p(&[0, 0, 0, 1]).eval(&rint(2)), rint(8));
    }

    #[test]
    fn exponent_lattice() {
        let f = p(&[1, 0, 0, 0, 1]);
        assert_eq!(f.exponent_gcd(), 4);
        assert_eq!(f.contract_exponents(2).unwrap(), p(&[1, 0, 1]));
        assert!(p(&[1, 1]).contract_exponents(2).is_none());
    }
}
