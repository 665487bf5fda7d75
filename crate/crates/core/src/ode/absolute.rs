use thiserror::Error;

use crate::algebra::{Rat, RatFn};

use super::Invariants;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LError {
    #[error("relative invariant r = I1' - 2 I0 vanishes identically")]
    DegenerateR,
    #[error("absolute invariants are degenerate (L1 constant or L2 zero)")]
    DegenerateL,
}

/// Relative invariant `r`, absolute invariants `L1`, `L2` and the inversion
/// intermediates `s = L2 L1 / L1'`, `t = L1 / s^3` when defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LProfile {
    pub r: RatFn,
    pub l1: RatFn,
    pub l2: RatFn,
    pub s: Option<RatFn>,
    pub t: Option<RatFn>,
    /// Why `s`/`t` are absent.
    pub degenerate: Option<LError>,
}

fn c(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn l_profile(inv: &Invariants) -> Result<LProfile, LError> {
    let i1 = &inv.i1;
    let r = &i1.derivative() - &inv.i0.scale(&c(2));
    if r.is_zero() {
        return Err(LError::DegenerateR);
    }
    let r1 = r.derivative();
    let r2 = r1.derivative();
    let r3 = r2.derivative();
    let rr = &r * &r;
    let base = &(&(&r * &r2).scale(&c(6)) + &(i1 * &rr).scale(&c(9))) - &(&r1 * &r1).scale(&c(7));
    let l1 = &base.pow(3) / &r.pow(8);
    let l2num = &(&(&i1.derivative() * &(&rr * &r)).scale(&c(27))
        - &(&(i1 * &rr) * &r1).scale(&c(18)))
        + &(&(&r1 * &r1) * &r1).scale(&c(56));
    let l2num = &(&l2num - &(&(&r2 * &r1) * &r).scale(&c(72))) + &(&r3 * &rr).scale(&c(18));
    let l2 = &l2num / &rr.pow(2);
    let (s, t, degenerate) = match st(&l1, &l2) {
        Ok((s, t)) => (Some(s), Some(t), None),
        Err(e) => (None, None, Some(e)),
    };
    Ok(LProfile {
        r,
        l1,
        l2,
        s,
        t,
        degenerate,
    })
}

fn st(l1: &RatFn, l2: &RatFn) -> Result<(RatFn, RatFn), LError> {
    let d1 = l1.derivative();
    if d1.is_zero() || l2.is_zero() || l1.is_zero() {
        return Err(LError::DegenerateL);
    }
    let s = &(l2 * l1) / &d1;
    let t = l1 / &s.pow(3);
    Ok((s, t))
}

/// Recovers `(I1, I0)` from `(L1, L2)`.
pub fn invert_l(l1: &RatFn, l2: &RatFn) -> Result<Invariants, LError> {
    let (s, t) = st(l1, l2)?;
    let t1 = t.derivative();
    let t2 = t1.derivative();
    let t3 = t2.derivative();
    let tt = &t * &t;
    let i1 = &(&(&(&s * &tt) * &t) - &(&t2 * &t).scale(&c(6))) + &(&t1 * &t1).scale(&c(7));
    let i1 = &i1 / &tt.scale(&c(9));
    let sp9 = &s.derivative() - &RatFn::from_int(9);
    let t4 = &tt * &tt;
    let i0 = &(&(&sp9 * &t4) + &(&(&t1 * &s) * &(&tt * &t))) - &(&t3 * &tt).scale(&c(6));
    let i0 = &(&i0 + &(&(&t2 * &t1) * &t).scale(&c(20))) - &(&(&t1 * &t1) * &t1).scale(&c(14));
    let i0 = &i0 / &(&tt * &t).scale(&c(18));
    Ok(Invariants { i1, i0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;
    use crate::ode::seed::{seed, SeedFamily};

    fn rf(n: &[i64], d: &[i64]) -> RatFn {
        RatFn::new(Poly::from_i64(n), Poly::from_i64(d))
    }

    #[test]
    fn round_trip_on_seed() {
        let inv = seed(&SeedFamily::f1f2(3, 2, 5)).unwrap().invariants();
        let lp = l_profile(&inv).unwrap();
        assert_eq!(invert_l(&lp.l1, &lp.l2).unwrap(), inv);
    }

    #[test]
    fn degenerate_r() {
        let i1 = rf(&[1, 0, 3], &[0, 1]);
        let inv = Invariants::new(
            i1.clone(),
            i1.derivative().scale(&Rat::new(1.into(), 2.into())),
        );
        assert_eq!(l_profile(&inv), Err(LError::DegenerateR));
        assert_eq!(
            invert_l(&RatFn::from_int(3), &RatFn::x()),
            Err(LError::DegenerateL)
        );
    }

    #[test]
    fn canonical_1f2_example() {
        // invariants of the 1F2(1;1,1) seed moved by x -> (1-x)/x
        let inv = Invariants::new(
            rf(&[1, -2], &[0, 0, 0, 1, -2, 1]),
            RatFn::new(
                Poly::from_i64(&[2, -5, 4]),
                Poly::from_i64(&[0, 0, 0, 0, -1, 3, -3, 1]),
            ),
        );
        let lp = l_profile(&inv).unwrap();
        assert_eq!(lp.l1, rf(&[729, -2430, 2700, -1000], &[0, 1, -2, 1]));
        assert_eq!(lp.l2, rf(&[9, -7], &[-1, 1]));
        assert_eq!(invert_l(&lp.l1, &lp.l2).unwrap(), inv);
    }
}
