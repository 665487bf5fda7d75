//! Elements of Q and of quadratic fields Q(sqrt(d)).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::rat::{is_integer, rat_from_bigint, rat_to_f64, square_free_split, Rat};

/// `Rational(r)` or `p + q*sqrt(d)` with `q != 0` and `d` a squarefree integer
/// other than 0 and 1. Mixing two different quadratic fields panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum AlgNum {
    Rational(Rat),
    Quadratic { p: Rat, q: Rat, d: BigInt },
}

impl AlgNum {
    pub fn zero() -> AlgNum {
        AlgNum::Rational(Rat::zero())
    }

    pub fn one() -> AlgNum {
        AlgNum::Rational(Rat::one())
    }

    pub fn int(n: i64) -> AlgNum {
        AlgNum::Rational(Rat::from_integer(n.into()))
    }

    /// Builds `p + q*sqrt(d)` for any rational radicand, normalizing it.
    pub fn quadratic(p: Rat, q: Rat, radicand: &Rat) -> AlgNum {
        if q.is_zero() || radicand.is_zero() {
            return AlgNum::Rational(p);
        }
        // sqrt(n/m) = sqrt(n*m)/m
        let nm = radicand.numer() * radicand.denom();
        let (s, f) = square_free_split(&nm);
        let coef = q * Rat::new(s, radicand.denom().clone());
        if f.is_one() {
            return AlgNum::Rational(p + coef);
        }
        AlgNum::Quadratic { p, q: coef, d: f }
    }

    /// `sqrt(r)` (principal branch; imaginary for negative `r`).
    pub fn sqrt(r: &Rat) -> AlgNum {
        AlgNum::quadratic(Rat::zero(), Rat::one(), r)
    }

    /// Both roots of `a z^2 + b z + c`, `a != 0`, "+" root first.
    pub fn quadratic_roots(a: &Rat, b: &Rat, c: &Rat) -> [AlgNum; 2] {
        let disc = b * b - Rat::from_integer(4.into()) * a * c;
        let two_a = a * Rat::from_integer(2.into());
        let p = -b / &two_a;
        let q = two_a.recip();
        [
            AlgNum::quadratic(p.clone(), q.clone(), &disc),
            AlgNum::quadratic(p, -q, &disc),
        ]
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            AlgNum::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, AlgNum::Rational(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, AlgNum::Rational(r) if r.is_zero())
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, AlgNum::Rational(r) if is_integer(r))
    }

    pub fn is_nonpositive_integer(&self) -> bool {
        matches!(self, AlgNum::Rational(r) if is_integer(r) && !r.is_positive())
    }

    pub fn radicand(&self) -> Option<&BigInt> {
        match self {
            AlgNum::Quadratic { d, .. } => Some(d),
            _ => None,
        }
    }

    pub fn conj(&self) -> AlgNum {
        match self {
            AlgNum::Rational(_) => self.clone(),
            AlgNum::Quadratic { p, q, d } => AlgNum::Quadratic {
                p: p.clone(),
                q: -q,
                d: d.clone(),
            },
        }
    }

    /// Norm down to Q: `p^2 - d q^2`.
    pub fn norm(&self) -> Rat {
        match self {
            AlgNum::Rational(r) => r * r,
            AlgNum::Quadratic { p, q, d } => p * p - rat_from_bigint(d.clone()) * q * q,
        }
    }

    /// Trace down to Q.
    pub fn trace(&self) -> Rat {
        match self {
            AlgNum::Rational(r) => r * Rat::from_integer(2.into()),
            AlgNum::Quadratic { p, .. } => p * Rat::from_integer(2.into()),
        }
    }

    pub fn recip(&self) -> AlgNum {
        match self {
            AlgNum::Rational(r) => AlgNum::Rational(r.recip()),
            AlgNum::Quadratic { .. } => {
                let n = self.norm();
                self.conj().scale(&n.recip())
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> AlgNum {
        match self {
            AlgNum::Rational(r) => AlgNum::Rational(r * c),
            AlgNum::Quadratic { p, q, d } => {
                if c.is_zero() {
                    AlgNum::zero()
                } else {
                    AlgNum::Quadratic {
                        p: p * c,
                        q: q * c,
                        d: d.clone(),
                    }
                }
            }
        }
    }

    pub fn pow(&self, n: u32) -> AlgNum {
        let mut acc = AlgNum::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            AlgNum::Rational(r) => Complex64::new(rat_to_f64(r), 0.0),
            AlgNum::Quadratic { p, q, d } => {
                let df = rat_to_f64(&rat_from_bigint(d.clone()));
                let root = if df < 0.0 {
                    Complex64::new(0.0, (-df).sqrt())
                } else {
                    Complex64::new(df.sqrt(), 0.0)
                };
                Complex64::new(rat_to_f64(p), 0.0) + root * rat_to_f64(q)
            }
        }
    }

    fn parts(&self) -> (Rat, Rat, Option<&BigInt>) {
        match self {
            AlgNum::Rational(r) => (r.clone(), Rat::zero(), None),
            AlgNum::Quadratic { p, q, d } => (p.clone(), q.clone(), Some(d)),
        }
    }

    fn field(a: Option<&BigInt>, b: Option<&BigInt>) -> Option<BigInt> {
        match (a, b) {
            (Some(x), Some(y)) => {
                assert_eq!(x, y, "arithmetic across different quadratic fields");
                Some(x.clone())
            }
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }

    fn build(p: Rat, q: Rat, d: Option<BigInt>) -> AlgNum {
        match d {
            Some(d) if !q.is_zero() => AlgNum::Quadratic { p, q, d },
            _ => AlgNum::Rational(p),
        }
    }

    /// Deterministic order: rationals ascending, then quadratic numbers by
    /// field, rational part and |surd part|, with conjugates adjacent.
    pub fn canonical_cmp(&self, other: &AlgNum) -> Ordering {
        match (self, other) {
            (AlgNum::Rational(a), AlgNum::Rational(b)) => a.cmp(b),
            (AlgNum::Rational(_), _) => Ordering::Less,
            (_, AlgNum::Rational(_)) => Ordering::Greater,
            (
                AlgNum::Quadratic {
                    p: p1,
                    q: q1,
                    d: d1,
                },
                AlgNum::Quadratic {
                    p: p2,
                    q: q2,
                    d: d2,
                },
            ) => d1
                .cmp(d2)
                .then_with(|| p1.cmp(p2))
                .then_with(|| q1.abs().cmp(&q2.abs()))
                .then_with(|| q1.is_negative().cmp(&q2.is_negative())),
        }
    }
}

impl Add for &AlgNum {
    type Output = AlgNum;
    fn add(self, rhs: &AlgNum) -> AlgNum {
        let (p1, q1, d1) = self.parts();
        let (p2, q2, d2) = rhs.parts();
        let d = AlgNum::field(d1, d2);
        AlgNum::build(p1 + p2, q1 + q2, d)
    }
}

impl Sub for &AlgNum {
    type Output = AlgNum;
    fn sub(self, rhs: &AlgNum) -> AlgNum {
        self + &(-rhs)
    }
}

impl Mul for &AlgNum {
    type Output = AlgNum;
    fn mul(self, rhs: &AlgNum) -> AlgNum {
        let (p1, q1, d1) = self.parts();
        let (p2, q2, d2) = rhs.parts();
        let d = AlgNum::field(d1, d2);
        let dr = d.clone().map(rat_from_bigint).unwrap_or_else(Rat::zero);
        let p = &p1 * &p2 + dr * &q1 * &q2;
        let q = p1 * q2 + q1 * p2;
        AlgNum::build(p, q, d)
    }
}

impl Div for &AlgNum {
    type Output = AlgNum;
    fn div(self, rhs: &AlgNum) -> AlgNum {
        assert!(!rhs.is_zero(), "division by zero algebraic number");
        self * &rhs.recip()
    }
}

impl Neg for &AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        self.scale(&-Rat::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<AlgNum> for AlgNum {
            type Output = AlgNum;
            fn $m(self, rhs: AlgNum) -> AlgNum {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&AlgNum> for AlgNum {
            type Output = AlgNum;
            fn $m(self, rhs: &AlgNum) -> AlgNum {
                (&self).$m(rhs)
            }
        }
        impl $tr<AlgNum> for &AlgNum {
            type Output = AlgNum;
            fn $m(self, rhs: AlgNum) -> AlgNum {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        -&self
    }
}

impl From<Rat> for AlgNum {
    fn from(r: Rat) -> AlgNum {
        AlgNum::Rational(r)
    }
}

impl From<i64> for AlgNum {
    fn from(n: i64) -> AlgNum {
        AlgNum::int(n)
    }
}

/// `p/q` or `p/q + r/s*sqrt(d)`.
impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgNum::Rational(r) => write!(f, "{r}"),
            AlgNum::Quadratic { p, q, d } => {
                let neg = q.is_negative();
                let a = q.abs();
                if !p.is_zero() {
                    write!(f, "{p}{}", if neg { " - " } else { " + " })?;
                } else if neg {
                    write!(f, "-")?;
                }
                if a.is_one() {
                    write!(f, "sqrt({d})")
                } else {
                    write!(f, "{a}*sqrt({d})")
                }
            }
        }
    }
}

impl fmt::Debug for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl serde::Serialize for AlgNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat, rint};

    #[test]
    fn radicand_is_normalized() {
        let a = AlgNum::sqrt(&rint(12));
        assert_eq!(a.to_string(), "2*sqrt(3)");
        assert_eq!(AlgNum::sqrt(&rat(1, 2)).to_string(), "1/2*sqrt(2)");
        assert_eq!(AlgNum::sqrt(&rint(9)), AlgNum::int(3));
    }

    #[test]
    fn quadratic_roots_satisfy_equation() {
        let [r1, r2] = AlgNum::quadratic_roots(&rint(1), &rint(-1), &rint(-1));
        assert_eq!(r1.to_string(), "1/2 + 1/2*sqrt(5)");
        assert_eq!(&r1 + &r2, AlgNum::one());
        assert_eq!(&r1 * &r2, AlgNum::int(-1));
        assert_eq!(&r1 * &r1 - &r1 - AlgNum::one(), AlgNum::zero());
        assert_eq!(&AlgNum::one() / &r1, &r1 - &AlgNum::one());
    }

    #[test]
    fn ordering_keeps_conjugates_adjacent() {
        let [a, b] = AlgNum::quadratic_roots(&rint(1), &rint(0), &rint(-2));
        let mut v = vec![a.clone(), AlgNum::int(3), b.clone(), AlgNum::int(-1)];
        v.sort_by(|x, y| x.canonical_cmp(y));
        assert_eq!(v, vec![AlgNum::int(-1), AlgNum::int(3), a, b]);
    }
}
