use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgNum, Poly, Rat, RatFn};

use super::Ode3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    F32,
    F22,
    F12,
    F02,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::F32, Family::F22, Family::F12, Family::F02];

    /// `(p, q)` of the seed's pFq.
    pub fn pq(self) -> (usize, usize) {
        match self {
            Family::F32 => (3, 2),
            Family::F22 => (2, 2),
            Family::F12 => (1, 2),
            Family::F02 => (0, 2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::F32 => "3F2",
            Family::F22 => "2F2",
            Family::F12 => "1F2",
            Family::F02 => "0F2",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SeedError {
    #[error("{family} takes {expected} upper and {expected_lower} lower parameters")]
    WrongArity {
        family: Family,
        expected: usize,
        expected_lower: usize,
    },
    #[error("parameters generate irrational equation coefficients")]
    IrrationalCoefficients,
}

/// A seed equation: family plus exact upper and lower pFq parameters.
/// Parameter names follow the family: `0F2(;α,β)`, `1F2(α;β,γ)`,
/// `2F2(α,β;δ,γ)`, `3F2(α,β,γ;δ,η)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeedFamily {
    pub family: Family,
    pub upper: Vec<AlgNum>,
    pub lower: Vec<AlgNum>,
}

impl SeedFamily {
    pub fn new(
        family: Family,
        upper: Vec<AlgNum>,
        lower: Vec<AlgNum>,
    ) -> Result<SeedFamily, SeedError> {
        let (p, q) = family.pq();
        if upper.len() != p || lower.len() != q {
            return Err(SeedError::WrongArity {
                family,
                expected: p,
                expected_lower: q,
            });
        }
        let s = SeedFamily {
            family,
            upper,
            lower,
        };
        s.symmetric()?;
        Ok(s)
    }

    /// Builds from the flat parameter list (upper first).
    pub fn from_params(family: Family, params: Vec<AlgNum>) -> Result<SeedFamily, SeedError> {
        let (p, q) = family.pq();
        if params.len() != p + q {
            return Err(SeedError::WrongArity {
                family,
                expected: p,
                expected_lower: q,
            });
        }
        let mut upper = params;
        let lower = upper.split_off(p);
        SeedFamily::new(family, upper, lower)
    }

    pub fn f0f2<A: Into<AlgNum>>(a: A, b: A) -> SeedFamily {
        SeedFamily::new(Family::F02, vec![], vec![a.into(), b.into()]).unwrap()
    }

    pub fn f1f2<A: Into<AlgNum>>(a: A, b: A, c: A) -> SeedFamily {
        SeedFamily::new(Family::F12, vec![a.into()], vec![b.into(), c.into()]).unwrap()
    }

    pub fn f2f2<A: Into<AlgNum>>(a: A, b: A, d: A, g: A) -> SeedFamily {
        SeedFamily::new(
            Family::F22,
            vec![a.into(), b.into()],
            vec![d.into(), g.into()],
        )
        .unwrap()
    }

    pub fn f3f2<A: Into<AlgNum>>(a: A, b: A, g: A, d: A, e: A) -> SeedFamily {
        SeedFamily::new(
            Family::F32,
            vec![a.into(), b.into(), g.into()],
            vec![d.into(), e.into()],
        )
        .unwrap()
    }

    /// Upper then lower.
    pub fn params(&self) -> Vec<AlgNum> {
        self.upper
            .iter()
            .chain(self.lower.iter())
            .cloned()
            .collect()
    }

    /// Sorts both lists canonically.
    pub fn canonical(&self) -> SeedFamily {
        let mut s = self.clone();
        s.upper.sort_by(|a, b| a.canonical_cmp(b));
        s.lower.sort_by(|a, b| a.canonical_cmp(b));
        s
    }

    /// Elementary symmetric functions `(u1, u2, u3)` of the upper list and
    /// `(l1, l2)` of the lower list, all required rational.
    pub fn symmetric(&self) -> Result<([Rat; 3], [Rat; 2]), SeedError> {
        let up = elementary(&self.upper)?;
        let lo = elementary(&self.lower)?;
        Ok((
            [up[0].clone(), up[1].clone(), up[2].clone()],
            [lo[0].clone(), lo[1].clone()],
        ))
    }
}

impl fmt::Display for SeedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[AlgNum]| {
            v.iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "{}({}; {})",
            self.family,
            join(&self.upper),
            join(&self.lower)
        )
    }
}

fn elementary(v: &[AlgNum]) -> Result<[Rat; 3], SeedError> {
    // e_k of v, k = 1..3 (missing ones zero)
    let mut e = [
        AlgNum::one(),
        AlgNum::zero(),
        AlgNum::zero(),
        AlgNum::zero(),
    ];
    let fields: Vec<_> = v.iter().filter_map(|a| a.radicand()).collect();
    if fields.windows(2).any(|w| w[0] != w[1]) {
        return Err(SeedError::IrrationalCoefficients);
    }
    for a in v {
        for k in (1..4).rev() {
            e[k] = &e[k] + &(&e[k - 1] * a);
        }
    }
    let mut out = [
        Rat::from_integer(0.into()),
        Rat::from_integer(0.into()),
        Rat::from_integer(0.into()),
    ];
    for k in 0..3 {
        out[k] = e[k + 1]
            .as_rational()
            .cloned()
            .ok_or(SeedError::IrrationalCoefficients)?;
    }
    Ok(out)
}

fn poly(c: &[Rat]) -> Poly {
    Poly::from_coeffs(c.iter().cloned())
}

fn xpow(e: u32) -> Poly {
    Poly::monomial(Rat::from_integer(1.into()), e)
}

/// The seed equation's coefficient triple.
pub fn seed(s: &SeedFamily) -> Result<Ode3, SeedError> {
    let (u, l) = s.symmetric()?;
    Ok(seed_symmetric(s.family, &u, &l))
}

/// Seed equation from the elementary symmetric functions of the upper
/// (`u1, u2, u3`) and lower (`l1, l2`) parameter lists.
pub fn seed_symmetric(family: Family, up: &[Rat; 3], lo: &[Rat; 2]) -> Ode3 {
    let [u1, u2, u3] = up;
    let [l1, l2] = lo;
    let one = Rat::from_integer(1.into());
    let x = || xpow(1);
    let x2 = || xpow(2);
    match family {
        Family::F02 => Ode3::new(
            RatFn::new(poly(&[l1 + &one]), x()),
            RatFn::new(poly(&[l2.clone()]), x2()),
            RatFn::new(poly(&[-one.clone()]), x2()),
        ),
        Family::F12 => Ode3::new(
            RatFn::new(poly(&[l1 + &one]), x()),
            RatFn::new(poly(&[l2.clone(), -one.clone()]), x2()),
            RatFn::new(poly(&[-u1]), x2()),
        ),
        Family::F22 => Ode3::new(
            RatFn::new(poly(&[l1 + &one, -one.clone()]), x()),
            RatFn::new(poly(&[l2.clone(), -(u1 + &one)]), x2()),
            RatFn::new(poly(&[-u2]), x2()),
        ),
        Family::F32 => {
            let xm1 = poly(&[-one.clone(), one.clone()]);
            Ode3::new(
                RatFn::new(
                    poly(&[-(l1 + &one), u1 + Rat::from_integer(3.into())]),
                    &x() * &xm1,
                ),
                RatFn::new(poly(&[-l2, u2 + u1 + &one]), &x2() * &xm1),
                RatFn::new(poly(&[u3.clone()]), &x2() * &xm1),
            )
        }
    }
}

impl serde::Serialize for SeedFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SeedFamily", 3)?;
        st.serialize_field("family", self.family.name())?;
        st.serialize_field("upper", &self.upper)?;
        st.serialize_field("lower", &self.lower)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat, rint};

    /// θ∏(θ+b-1) - x∏(θ+a), made monic in y'''.
    fn theta_form(s: &SeedFamily) -> Ode3 {
        // operators as coefficient vectors over y, y', y'', y''' (RatFn)
        type Op = [RatFn; 4];
        let zero = || RatFn::zero();
        let x = RatFn::x();
        let theta = |op: &Op| -> Op {
            // θ(Σ f_k D^k) = Σ x f_k' D^k + x f_k D^{k+1}
            let mut out: Op = [zero(), zero(), zero(), zero()];
            for k in 0..4 {
                out[k] = &out[k] + &(&x * &op[k].derivative());
                if k < 3 {
                    out[k + 1] = &out[k + 1] + &(&x * &op[k]);
                }
            }
            out
        };
        let shift = |op: &Op, c: &Rat| -> Op {
            let mut t = theta(op);
            for k in 0..4 {
                t[k] = &t[k] + &op[k].scale(c);
            }
            t
        };
        let id: Op = [RatFn::one(), zero(), zero(), zero()];
        let mut lhs = theta(&id);
        for b in &s.lower {
            lhs = shift(
                &lhs,
                &(b.as_rational().unwrap() - Rat::from_integer(1.into())),
            );
        }
        let mut rhs = id.clone();
        for a in &s.upper {
            rhs = shift(&rhs, a.as_rational().unwrap());
        }
        let op: Vec<RatFn> = (0..4).map(|k| &lhs[k] - &(&x * &rhs[k])).collect();
        Ode3::new(&op[2] / &op[3], &op[1] / &op[3], &op[0] / &op[3])
    }

    #[test]
    fn explicit_formulas_match_theta_operator() {
        let cases = [
            SeedFamily::f0f2(rat(1, 3), rat(2, 7)),
            SeedFamily::f1f2(rat(1, 3), rat(2, 7), rat(5, 4)),
            SeedFamily::f2f2(rat(1, 3), rat(2, 7), rat(5, 4), rat(-3, 5)),
            SeedFamily::f3f2(rat(1, 3), rat(2, 7), rat(5, 4), rat(-3, 5), rat(7, 9)),
        ];
        for s in cases {
            assert_eq!(seed(&s).unwrap(), theta_form(&s), "{s}");
        }
    }

    #[test]
    fn printed_0f2_and_1f2() {
        let ode = seed(&SeedFamily::f0f2(rint(1), rint(1))).unwrap();
        assert_eq!(ode.c2.to_string(), "3/x");
        assert_eq!(ode.c1.to_string(), "1/x^2");
        assert_eq!(ode.c0.to_string(), "-1/x^2");
        let ode = seed(&SeedFamily::f1f2(rint(2), rint(3), rint(5))).unwrap();
        assert_eq!(ode.c1.to_string(), "(-x + 15)/x^2");
        assert_eq!(ode.c0.to_string(), "-2/x^2");
    }

    #[test]
    fn zero_3f2() {
        let z = rint(0);
        let ode = seed(&SeedFamily::f3f2(
            z.clone(),
            z.clone(),
            z.clone(),
            z.clone(),
            z,
        ))
        .unwrap();
        assert_eq!(ode.c2.to_string(), "(3*x - 1)/(x^2 - x)");
        assert_eq!(ode.c1.to_string(), "1/(x^2 - x)");
        assert!(ode.c0.is_zero());
    }

    #[test]
    fn conjugate_parameters_give_rational_equation() {
        let [a, b] = AlgNum::quadratic_roots(&rint(1), &rint(-1), &rint(-1));
        let s = SeedFamily::new(
            Family::F22,
            vec![a, b],
            vec![rint(2).into(), rat(1, 3).into()],
        )
        .unwrap();
        assert!(seed(&s).is_ok());
        let [a, _] = AlgNum::quadratic_roots(&rint(1), &rint(-1), &rint(-1));
        assert_eq!(
            SeedFamily::new(Family::F12, vec![a], vec![rint(2).into(), rint(3).into()]),
            Err(SeedError::IrrationalCoefficients)
        );
    }
}
