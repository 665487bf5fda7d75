//! Third-order ODE model, invariants and their transport, seed equations.

pub mod absolute;
pub mod invariants;
pub mod seed;
pub mod singular;

use std::fmt;

use crate::algebra::{Rat, RatFn};

pub use absolute::{invert_l, l_profile, LError, LProfile};
pub use invariants::{
    gauge_between, j_invariants, schwarzian, to_normal_form, transform_invariants, Invariants, JInv,
};
pub use seed::{seed, seed_symmetric, Family, SeedError, SeedFamily};
pub use singular::{singularity_profile, Location, PointKind, SingularPoint, SingularityProfile};

fn q(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// `y''' + c2 y'' + c1 y' + c0 y = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ode3 {
    pub c2: RatFn,
    pub c1: RatFn,
    pub c0: RatFn,
}

impl Ode3 {
    pub fn new(c2: RatFn, c1: RatFn, c0: RatFn) -> Ode3 {
        Ode3 { c2, c1, c0 }
    }

    /// `y''' = i1 y' + i0 y`.
    pub fn normal(inv: &Invariants) -> Ode3 {
        Ode3 {
            c2: RatFn::zero(),
            c1: -&inv.i1,
            c0: -&inv.i0,
        }
    }

    pub fn invariants(&self) -> Invariants {
        let c2 = &self.c2;
        let c2p = c2.derivative();
        let c2pp = c2p.derivative();
        let c2sq = c2 * c2;
        let i1 = &(&c2p + &c2sq.scale(&q(1, 3))) - &self.c1;
        let i0 = &c2pp.scale(&q(1, 3)) - &(&c2sq * c2).scale(&q(2, 27));
        let i0 = &(&i0 + &(&self.c1 * c2).scale(&q(1, 3))) - &self.c0;
        Invariants { i1, i0 }
    }

    /// Equation satisfied by `u` when `y = e^{∫w} u` solves `self`.
    pub fn gauge(&self, w: &RatFn) -> Ode3 {
        let w1 = w.derivative();
        let w2 = w1.derivative();
        let ww = w * w;
        let e2 = &w1 + &ww; // (e^{∫w})''/e^{∫w}
        let e3 = &(&w2 + &(w * &w1).scale(&q(3, 1))) + &(&ww * w);
        let c2 = &self.c2 + &w.scale(&q(3, 1));
        let c1 = &(&self.c1 + &e2.scale(&q(3, 1))) + &(&self.c2 * w).scale(&q(2, 1));
        let c0 = &(&(&self.c0 + &e3) + &(&self.c2 * &e2)) + &(&self.c1 * w);
        Ode3 { c2, c1, c0 }
    }

    /// Equation satisfied by `u(x) = Y(g(x))` when `Y` solves `self`.
    pub fn substitute(&self, g: &RatFn) -> Ode3 {
        let g1 = g.derivative();
        let g2 = g1.derivative();
        let g3 = g2.derivative();
        let g1c = &(&g1 * &g1) * &g1;
        let (c2, c1, c0) = (self.c2.compose(g), self.c1.compose(g), self.c0.compose(g));
        // u''' = a Y' + b Y'' + e Y, then Y', Y'' rewritten through u', u''
        let a = &g3 - &(&g1c * &c1);
        let b = &(&g1 * &g2).scale(&q(3, 1)) - &(&g1c * &c2);
        let e = -(&g1c * &c0);
        let k2 = &b / &(&g1 * &g1);
        let k1 = &(&a / &g1) - &(&(&b * &g2) / &g1c);
        Ode3 {
            c2: -k2,
            c1: -k1,
            c0: -e,
        }
    }
}

impl fmt::Display for Ode3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "y''' + ({})*y'' + ({})*y' + ({})*y = 0",
            self.c2, self.c1, self.c0
        )
    }
}
