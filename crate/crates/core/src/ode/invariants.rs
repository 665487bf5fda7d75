use crate::algebra::{Rat, RatFn};

use super::Ode3;

fn q(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Gauge-invariant pair of a third-order equation; the normal form is
/// `y''' = i1 y' + i0 y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Invariants {
    pub i1: RatFn,
    pub i0: RatFn,
}

impl Invariants {
    pub fn new(i1: RatFn, i0: RatFn) -> Invariants {
        Invariants { i1, i0 }
    }

    pub fn is_zero(&self) -> bool {
        self.i1.is_zero() && self.i0.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.i1.is_constant() && self.i0.is_constant()
    }

    /// Invariants of the equation solved by `Y(f(x))`.
    pub fn transform(&self, f: &RatFn) -> Invariants {
        transform_invariants(self, f)
    }
}

/// Shifted invariants `J1 = x^2 I1 + 1`, `J2 = x^3 I0 + x^2 I1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JInv {
    pub j1: RatFn,
    pub j2: RatFn,
}

impl JInv {
    pub fn to_invariants(&self) -> Invariants {
        let x = RatFn::x();
        let x2 = &x * &x;
        let x3 = &x2 * &x;
        let i1 = &(&self.j1 - &RatFn::one()) / &x2;
        let i0 = &(&(&self.j2 - &self.j1) + &RatFn::one()) / &x3;
        Invariants { i1, i0 }
    }
}

pub fn j_invariants(inv: &Invariants) -> JInv {
    let x = RatFn::x();
    let x2 = &x * &x;
    let x2i1 = &x2 * &inv.i1;
    JInv {
        j1: &x2i1 + &RatFn::one(),
        j2: &(&(&x2 * &x) * &inv.i0) + &x2i1,
    }
}

/// Normal-form invariants and the gauge witness `c2/3`; solutions satisfy
/// `y = e^{-∫c2/3} u` with `u''' = I1 u' + I0 u`.
pub fn to_normal_form(ode: &Ode3) -> (Invariants, RatFn) {
    (ode.invariants(), ode.c2.scale(&q(1, 3)))
}

/// `(c2_a - c2_b)/3`.
pub fn gauge_between(c2_a: &RatFn, c2_b: &RatFn) -> RatFn {
    (c2_a - c2_b).scale(&q(1, 3))
}

/// `F'''/F' - (3/2)(F''/F')^2`.
pub fn schwarzian(f: &RatFn) -> RatFn {
    assert!(!f.is_constant(), "Schwarzian of a constant");
    let f1 = f.derivative();
    let f2 = f1.derivative();
    let f3 = f2.derivative();
    let r = &f2 / &f1;
    &(&f3 / &f1) - &(&r * &r).scale(&q(3, 2))
}

/// Invariants of the equation satisfied by `Y(F(x))`:
/// `Ĩ1 = F'^2 I1(F) - 2 S(F)`, `Ĩ0 = F' F'' I1(F) + F'^3 I0(F) - S(F)'`.
pub fn transform_invariants(inv: &Invariants, f: &RatFn) -> Invariants {
    assert!(!f.is_constant(), "substitution by a constant");
    if f == &RatFn::x() {
        return inv.clone();
    }
    let f1 = f.derivative();
    let f2 = f1.derivative();
    let s = schwarzian(f);
    let i1f = inv.i1.compose(f);
    let i0f = inv.i0.compose(f);
    let f1sq = &f1 * &f1;
    let i1 = &(&f1sq * &i1f) - &s.scale(&q(2, 1));
    let i0 = &(&(&(&f1 * &f2) * &i1f) + &(&(&f1sq * &f1) * &i0f)) - &s.derivative();
    Invariants { i1, i0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Poly, Rat};

    fn rf(n: &[i64], d: &[i64]) -> RatFn {
        RatFn::new(Poly::from_i64(n), Poly::from_i64(d))
    }

    fn seed_0f2_11() -> Ode3 {
        Ode3::new(
            rf(&[3], &[0, 1]),
            rf(&[1], &[0, 0, 1]),
            rf(&[-1], &[0, 0, 1]),
        )
    }

    #[test]
    fn seed_invariants() {
        let inv = seed_0f2_11().invariants();
        assert_eq!(inv.i1, rf(&[-1], &[0, 0, 1]));
        assert_eq!(inv.i0, rf(&[1, 1], &[0, 0, 0, 1]));
        let j = j_invariants(&inv);
        assert_eq!(j.j1, RatFn::zero());
        assert_eq!(j.j2, RatFn::x());
        assert_eq!(j.to_invariants(), inv);
    }

    #[test]
    fn normal_form_is_self_consistent() {
        let ode = seed_0f2_11();
        let (inv, w) = to_normal_form(&ode);
        assert_eq!(w, rf(&[1], &[0, 1]));
        assert_eq!(Ode3::normal(&inv).invariants(), inv);
        assert_eq!(ode.gauge(&-&w), Ode3::normal(&inv));
    }

    #[test]
    fn schwarzian_table() {
        let m = rf(&[3, 2], &[-1, 5]);
        assert!(schwarzian(&m).is_zero());
        for k in 2..=6i64 {
            let xk = RatFn::from_poly(Poly::monomial(Rat::from_integer(1.into()), k as u32));
            let want = RatFn::monomial(q(1 - k * k, 2), -2);
            assert_eq!(schwarzian(&xk), want);
        }
    }

    #[test]
    fn transport_matches_substitution() {
        let ode = seed_0f2_11();
        for f in [
            rf(&[0, 0, 1], &[1]),
            rf(&[0, 2], &[-1, 1]),
            rf(&[1, 0, 1], &[0, 1, 3]),
        ] {
            let direct = ode.substitute(&f).invariants();
            assert_eq!(transform_invariants(&ode.invariants(), &f), direct);
        }
    }
}
