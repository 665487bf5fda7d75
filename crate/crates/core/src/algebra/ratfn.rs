//! Reduced rational functions in `x` over Q.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::poly_gcd;
use super::poly::Poly;
use super::rat::Rat;

/// `num/den` with `gcd(num, den) = 1` and `den` monic, so equal functions
/// have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    /// Normalizes an arbitrary fraction. Panics on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> RatFn {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFn::zero();
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        RatFn::from_coprime(num, den)
    }

    /// Caller guarantees coprimality; only the leading coefficient is fixed up.
    pub(crate) fn from_coprime(num: Poly, den: Poly) -> RatFn {
        let lc = den.lc();
        if lc.is_one() {
            RatFn { num, den }
        } else {
            let inv = lc.recip();
            RatFn {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> RatFn {
        RatFn {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> RatFn {
        RatFn::constant(Rat::one())
    }

    pub fn x() -> RatFn {
        RatFn::from_poly(Poly::x())
    }

    pub fn constant(c: Rat) -> RatFn {
        RatFn::from_poly(Poly::constant(c))
    }

    pub fn from_int(c: i64) -> RatFn {
        RatFn::constant(Rat::from_integer(c.into()))
    }

    pub fn from_poly(p: Poly) -> RatFn {
        RatFn {
            num: p,
            den: Poly::one(),
        }
    }

    /// `c * x^e` for any integer `e`.
    pub fn monomial(c: Rat, e: i32) -> RatFn {
        if e >= 0 {
            RatFn::from_poly(Poly::monomial(c, e as u32))
        } else {
            RatFn::from_coprime(Poly::constant(c), Poly::monomial(Rat::one(), (-e) as u32))
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// `max(deg num, deg den)`.
    pub fn rational_degree(&self) -> u32 {
        self.num.deg().max(self.den.deg())
    }

    pub fn scale(&self, c: &Rat) -> RatFn {
        if c.is_zero() {
            return RatFn::zero();
        }
        RatFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> RatFn {
        assert!(!self.is_zero(), "reciprocal of zero rational function");
        RatFn::from_coprime(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, n: i32) -> RatFn {
        let base = if n < 0 { self.recip() } else { self.clone() };
        let e = n.unsigned_abs();
        RatFn {
            num: base.num.pow(e),
            den: base.den.pow(e),
        }
    }

    pub fn derivative(&self) -> RatFn {
        if self.den.is_constant() {
            return RatFn::from_poly(self.num.derivative());
        }
        // (a/b)' with b = g*v, b' = g*u: (a'v - au)/(b v)
        let db = self.den.derivative();
        let g = poly_gcd(&self.den, &db);
        let v = self.den.exact_div(&g);
        let u = db.exact_div(&g);
        let top = &(&self.num.derivative() * &v) - &(&self.num * &u);
        RatFn::new(top, &self.den * &v)
    }

    /// n-th derivative.
    pub fn diff(&self, n: u32) -> RatFn {
        let mut f = self.clone();
        for _ in 0..n {
            f = f.derivative();
        }
        f
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// Composition `self(g(x))`.
    pub fn compose(&self, g: &RatFn) -> RatFn {
        if let Some(c) = g.as_constant() {
            return RatFn::constant(self.eval(&c).expect("composition hits a pole"));
        }
        if self.is_constant() {
            return self.clone();
        }
        if g.is_polynomial() {
            return RatFn::from_coprime(self.num.compose(&g.num), self.den.compose(&g.num));
        }
        let m = self.num.deg();
        let n = self.den.deg();
        let top = m.max(n);
        let qpow = powers(&g.den, top);
        let mut a = homogenize(&self.num, &g.num, &qpow);
        let mut b = homogenize(&self.den, &g.num, &qpow);
        if n > m {
            a = &a * &qpow[(n - m) as usize];
        } else if m > n {
            b = &b * &qpow[(m - n) as usize];
        }
        RatFn::from_coprime(a, b)
    }

    /// `self(x^k)`.
    pub fn expand_exponents(&self, k: u32) -> RatFn {
        RatFn {
            num: self.num.expand_exponents(k),
            den: self.den.expand_exponents(k),
        }
    }

    /// `g` with `self = g(x^k)`, if it exists.
    pub fn contract_exponents(&self, k: u32) -> Option<RatFn> {
        Some(RatFn {
            num: self.num.contract_exponents(k)?,
            den: self.den.contract_exponents(k)?,
        })
    }

    /// Largest `k` with `self = g(x^k)`, `None` for constants (any `k` works).
    pub fn exponent_support_gcd(&self) -> Option<u32> {
        if self.is_constant() {
            return None;
        }
        let g = num_integer::gcd(self.num.exponent_gcd(), self.den.exponent_gcd());
        Some(g)
    }

    /// Order of vanishing at 0: positive for zeros, negative for poles.
    /// `None` for the zero function.
    pub fn valuation_at_zero(&self) -> Option<i64> {
        let a = self.num.lowest_exponent()? as i64;
        let b = self.den.lowest_exponent().unwrap_or(0) as i64;
        Some(a - b)
    }

    /// `self(x + c)`.
    pub fn shift(&self, c: &Rat) -> RatFn {
        if c.is_zero() {
            return self.clone();
        }
        let lin = Poly::from_coeffs([c.clone(), Rat::one()]);
        RatFn::from_coprime(self.num.compose(&lin), self.den.compose(&lin))
    }
}

fn powers(q: &Poly, n: u32) -> Vec<Poly> {
    let mut v = Vec::with_capacity(n as usize + 1);
    v.push(Poly::one());
    for i in 0..n as usize {
        let next = &v[i] * q;
        v.push(next);
    }
    v
}

/// `Σ a_i p^i q^(m-i)` for `a` of degree `m`.
fn homogenize(a: &Poly, p: &Poly, qpow: &[Poly]) -> Poly {
    let m = match a.degree() {
        None => return Poly::zero(),
        Some(m) => m,
    };
    let mut acc = Poly::constant(a.lc());
    for j in 1..=m {
        let c = a.coeff(m - j);
        acc = &acc * p;
        if !c.is_zero() {
            acc = &acc + &qpow[j as usize].scale(&c);
        }
    }
    acc
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFn::new(&self.num + &rhs.num, self.den.clone());
        }
        let g = poly_gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFn::from_coprime(num, &self.den * &rhs.den);
        }
        let b1 = self.den.exact_div(&g);
        let d1 = rhs.den.exact_div(&g);
        let t = &(&self.num * &d1) + &(&rhs.num * &b1);
        if t.is_zero() {
            return RatFn::zero();
        }
        let h = poly_gcd(&t, &g);
        if h.is_one() {
            RatFn::from_coprime(t, &b1 * &rhs.den)
        } else {
            RatFn::from_coprime(t.exact_div(&h), &b1 * &rhs.den.exact_div(&h))
        }
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.exact_div(&g1), rhs.den.exact_div(&g1))
        };
        let (c, b) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.exact_div(&g2), self.den.exact_div(&g2))
        };
        RatFn::from_coprime(&a * &c, &b * &d)
    }
}

impl Div for &RatFn {
    type Output = RatFn;
    fn div(self, rhs: &RatFn) -> RatFn {
        self * &rhs.recip()
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFn> for RatFn {
            type Output = RatFn;
            fn $m(self, rhs: RatFn) -> RatFn {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFn> for RatFn {
            type Output = RatFn;
            fn $m(self, rhs: &RatFn) -> RatFn {
                (&self).$m(rhs)
            }
        }
        impl $tr<RatFn> for &RatFn {
            type Output = RatFn;
            fn $m(self, rhs: RatFn) -> RatFn {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<Poly> for RatFn {
    fn from(p: Poly) -> RatFn {
        RatFn::from_poly(p)
    }
}

impl From<Rat> for RatFn {
    fn from(c: Rat) -> RatFn {
        RatFn::constant(c)
    }
}

/// Numerator and denominator are parenthesized only when they have more than
/// one term: `(x^2 + 1)/(x^2 - 1)`, `-1/x^2`, `3/2*x/(x^2 + 1)`.
impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.num_terms() > 1 {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({self})")
    }
}

impl serde::Serialize for RatFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Default for RatFn {
    fn default() -> Self {
        RatFn::zero()
    }
}
