use num_traits::Zero;

use crate::algebra::{rational_roots, AlgNum, Poly, Rat, RatFn};
use crate::ode::{Invariants, Location};

use super::EquivError;

/// Invariants moved so that `point` sits at the origin.
pub fn centered(inv: &Invariants, point: &Location) -> Invariants {
    match point {
        Location::Finite(p) => Invariants::new(inv.i1.shift(p), inv.i0.shift(p)),
        Location::Infinity => inv.transform(&RatFn::x().recip()),
        Location::Unresolved(_) => panic!("indicial roots at an unresolved point"),
    }
}

/// Coefficient of `x^-n` of `f` at the origin, assuming the pole order is at
/// most `n`.
pub(crate) fn leading_at_zero(f: &RatFn, n: u32) -> Rat {
    if f.is_zero() {
        return Rat::zero();
    }
    let g = f * &RatFn::monomial(Rat::from_integer(1.into()), n as i32);
    g.eval(&Rat::zero()).expect("pole order exceeds the bound")
}

/// Local exponents of `y''' = I1 y' + I0 y` at a regular point: roots of
/// `ρ(ρ-1)(ρ-2) - qρ - s`, with `q`, `s` the `x^-2`, `x^-3` coefficients.
pub fn indicial_roots(inv: &Invariants, point: &Location) -> Result<[AlgNum; 3], EquivError> {
    let c = centered(inv, point);
    let q = leading_at_zero(&c.i1, 2);
    let s = leading_at_zero(&c.i0, 3);
    let cubic = Poly::from_coeffs([
        -s,
        Rat::from_integer(2.into()) - q,
        Rat::from_integer((-3).into()),
        Rat::from_integer(1.into()),
    ]);
    cubic_roots(&cubic)
}

fn cubic_roots(cubic: &Poly) -> Result<[AlgNum; 3], EquivError> {
    let roots = rational_roots(cubic);
    let Some(r) = roots.first() else {
        return Err(EquivError::IrrationalBeyondQuadratic);
    };
    let mut rest = cubic.exact_div(&Poly::linear_root(r));
    let mut out = vec![AlgNum::Rational(r.clone())];
    // repeated rational roots divide out again
    while rest.deg() > 0 {
        match rational_roots(&rest).first() {
            Some(r2) => {
                rest = rest.exact_div(&Poly::linear_root(r2));
                out.push(AlgNum::Rational(r2.clone()));
            }
            None => {
                let [a, b] =
                    AlgNum::quadratic_roots(&rest.coeff(2), &rest.coeff(1), &rest.coeff(0));
                out.push(a);
                out.push(b);
                break;
            }
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat, rint};
    use crate::ode::{seed, SeedFamily};

    #[test]
    fn seed_0f2_exponents() {
        let (a, b) = (rat(1, 3), rat(5, 7));
        let inv = seed(&SeedFamily::f0f2(a.clone(), b.clone()))
            .unwrap()
            .invariants();
        let e = indicial_roots(&inv, &Location::Finite(rint(0))).unwrap();
        // normal form shifts the raw exponents {0, 1-α, 1-β} by (α+β+1)/3
        let shift = (&a + &b + rint(1)) / rint(3);
        let mut want = [rint(0), rint(1) - &a, rint(1) - &b].map(|r| AlgNum::Rational(r + &shift));
        want.sort_by(|x, y| x.canonical_cmp(y));
        assert_eq!(e, want);
        let sum = &(&e[0] + &e[1]) + &e[2];
        assert_eq!(sum, AlgNum::int(3));
    }

    #[test]
    fn trivial_equation() {
        let inv = Invariants::new(RatFn::zero(), RatFn::zero());
        assert_eq!(
            indicial_roots(&inv, &Location::Finite(rint(4))).unwrap(),
            [0, 1, 2].map(AlgNum::int)
        );
    }

    #[test]
    fn irreducible_cubic() {
        let c = Poly::from_i64(&[-2, 0, 0, 1]);
        assert_eq!(cubic_roots(&c), Err(EquivError::IrrationalBeyondQuadratic));
    }
}
