use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{Poly, Rat, RatFn};
use crate::ode::{Family, Location, SingularityProfile};

use super::EquivError;

/// `x -> (a x + b)/(c x + d)` with `ad - bc != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Moebius {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl Moebius {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Moebius {
        assert!(!(&a * &d - &b * &c).is_zero(), "degenerate Moebius map");
        Moebius { a, b, c, d }
    }

    pub fn identity() -> Moebius {
        Moebius::new(Rat::one(), Rat::zero(), Rat::zero(), Rat::one())
    }

    /// `x -> λ x`
    pub fn scaling(lambda: Rat) -> Moebius {
        Moebius::new(lambda, Rat::zero(), Rat::zero(), Rat::one())
    }

    pub fn is_identity(&self) -> bool {
        self.to_ratfn() == RatFn::x()
    }

    pub fn to_ratfn(&self) -> RatFn {
        RatFn::new(
            Poly::from_coeffs([self.b.clone(), self.a.clone()]),
            Poly::from_coeffs([self.d.clone(), self.c.clone()]),
        )
    }

    /// Reads a degree-one rational function back.
    pub fn from_ratfn(f: &RatFn) -> Option<Moebius> {
        if f.rational_degree() != 1 {
            return None;
        }
        let (n, d) = (f.num(), f.den());
        Some(Moebius::new(n.coeff(1), n.coeff(0), d.coeff(1), d.coeff(0)))
    }

    pub fn inverse(&self) -> Moebius {
        Moebius::new(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Moebius) -> Moebius {
        Moebius::new(
            &self.a * &other.a + &self.b * &other.c,
            &self.a * &other.b + &self.b * &other.d,
            &self.c * &other.a + &self.d * &other.c,
            &self.c * &other.b + &self.d * &other.d,
        )
    }

    /// `λ · self`
    pub fn scaled(&self, lambda: &Rat) -> Moebius {
        Moebius::new(
            &self.a * lambda,
            &self.b * lambda,
            self.c.clone(),
            self.d.clone(),
        )
    }

    /// Image of a point on the projective line.
    pub fn apply(&self, p: &Location) -> Option<Location> {
        match p {
            Location::Finite(x) => {
                let den = &self.c * x + &self.d;
                if den.is_zero() {
                    Some(Location::Infinity)
                } else {
                    Some(Location::Finite((&self.a * x + &self.b) / den))
                }
            }
            Location::Infinity => {
                if self.c.is_zero() {
                    Some(Location::Infinity)
                } else {
                    Some(Location::Finite(&self.a / &self.c))
                }
            }
            Location::Unresolved(_) => None,
        }
    }
}

impl fmt::Display for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> {}", self.to_ratfn())
    }
}

/// A Moebius map up to the free scale `x -> λ x` on the seed side when
/// `free_scale` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusCandidate {
    pub base: Moebius,
    pub free_scale: bool,
}

/// The map sending `p` to 0 and `q` to ∞.
fn zero_infinity(p: &Location, q: &Location) -> Moebius {
    let one = Rat::one;
    let zero = Rat::zero;
    match (p, q) {
        (Location::Finite(p), Location::Finite(q)) => Moebius::new(one(), -p, one(), -q),
        (Location::Infinity, Location::Finite(q)) => Moebius::new(zero(), one(), one(), -q),
        (Location::Finite(p), Location::Infinity) => Moebius::new(one(), -p, zero(), one()),
        _ => unreachable!("zero_infinity needs two distinct resolved points"),
    }
}

/// The map sending `p, r, q` to `0, 1, ∞`.
fn three_points(p: &Location, r: &Location, q: &Location) -> Moebius {
    let m = zero_infinity(p, q);
    match m.apply(r) {
        Some(Location::Finite(v)) => m.scaled(&v.recip()),
        _ => unreachable!("distinct points stay distinct"),
    }
}

fn resolved(profile: &SingularityProfile) -> Result<(), EquivError> {
    if profile.has_unresolved() {
        Err(EquivError::UnresolvedSingularity)
    } else {
        Ok(())
    }
}

/// Maps moving the input's singular points onto the seed's: regular point to
/// 0 and irregular point to ∞ (free scale), or for 3F2 the six maps onto
/// `{0, 1, ∞}`.
pub fn moebius_candidates(
    profile: &SingularityProfile,
    family: Family,
) -> Result<Vec<MoebiusCandidate>, EquivError> {
    resolved(profile)?;
    let reg: Vec<&Location> = profile.regular().map(|p| &p.location).collect();
    let irr: Vec<&Location> = profile.irregular().map(|p| &p.location).collect();
    if family == Family::F32 {
        if reg.len() != 3 || !irr.is_empty() {
            return Ok(Vec::new());
        }
        let perms = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        return Ok(perms
            .iter()
            .map(|[i, j, k]| MoebiusCandidate {
                base: three_points(reg[*i], reg[*j], reg[*k]),
                free_scale: false,
            })
            .collect());
    }
    if reg.len() != 1 || irr.len() != 1 {
        return Ok(Vec::new());
    }
    Ok(vec![MoebiusCandidate {
        base: zero_infinity(reg[0], irr[0]),
        free_scale: true,
    }])
}

impl serde::Serialize for Moebius {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
