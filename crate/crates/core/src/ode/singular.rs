use std::fmt;

use crate::algebra::{squarefree_and_rational_roots, Poly, Rat, RatFn};

use super::Invariants;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Finite(Rat),
    Infinity,
    /// Roots of an irreducible non-linear factor of the denominators.
    Unresolved(Poly),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Finite(r) => write!(f, "{r}"),
            Location::Infinity => write!(f, "infinity"),
            Location::Unresolved(p) => write!(f, "roots of {p}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointKind {
    Regular,
    Irregular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    pub location: Location,
    pub kind: PointKind,
    /// Pole orders of `(I1, I0)`.
    pub pole_orders: (u32, u32),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SingularityProfile {
    pub points: Vec<SingularPoint>,
}

impl SingularityProfile {
    pub fn regular(&self) -> impl Iterator<Item = &SingularPoint> {
        self.points.iter().filter(|p| p.kind == PointKind::Regular)
    }

    pub fn irregular(&self) -> impl Iterator<Item = &SingularPoint> {
        self.points
            .iter()
            .filter(|p| p.kind == PointKind::Irregular)
    }

    pub fn has_unresolved(&self) -> bool {
        self.points
            .iter()
            .any(|p| matches!(p.location, Location::Unresolved(_)))
    }
}

fn kind(o1: u32, o0: u32) -> PointKind {
    if o1 <= 2 && o0 <= 3 {
        PointKind::Regular
    } else {
        PointKind::Irregular
    }
}

/// Multiplicity of the irreducible `f` in `p`.
fn multiplicity(p: &Poly, f: &Poly) -> u32 {
    let mut m = 0;
    let mut cur = p.clone();
    while let Some(q) = cur.try_exact_div(f) {
        if cur.is_constant() {
            break;
        }
        cur = q;
        m += 1;
    }
    m
}

/// Pole orders at 0.
fn orders_at_zero(inv: &Invariants) -> (u32, u32) {
    let ord = |f: &RatFn| -> u32 {
        match f.valuation_at_zero() {
            Some(v) if v < 0 => (-v) as u32,
            _ => 0,
        }
    };
    (ord(&inv.i1), ord(&inv.i0))
}

/// Finite singular points by increasing location, unresolved factors, then
/// infinity when it is singular.
pub fn singularity_profile(inv: &Invariants) -> SingularityProfile {
    let mut points = Vec::new();
    let den = crate::algebra::poly_lcm(inv.i1.den(), inv.i0.den());
    if !den.is_constant() {
        for f in squarefree_and_rational_roots(&den) {
            let o1 = multiplicity(inv.i1.den(), &f.poly);
            let o0 = multiplicity(inv.i0.den(), &f.poly);
            let location = match f.root {
                Some(r) => Location::Finite(r),
                None => Location::Unresolved(f.poly.clone()),
            };
            points.push(SingularPoint {
                location,
                kind: kind(o1, o0),
                pole_orders: (o1, o0),
            });
        }
    }
    let at_inf = inv.transform(&RatFn::x().recip());
    let (o1, o0) = orders_at_zero(&at_inf);
    if o1 > 0 || o0 > 0 {
        points.push(SingularPoint {
            location: Location::Infinity,
            kind: kind(o1, o0),
            pole_orders: (o1, o0),
        });
    }
    SingularityProfile { points }
}
