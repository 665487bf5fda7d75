use crate::algebra::{poly_gcd, Poly, Rat, RatFn};

use super::RatminError;

/// `Q(x, t) = N(x) D(t) - N(t) D(x)` as a polynomial in `x` whose
/// coefficients are polynomials in `t` (ascending in `x`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivarQ {
    pub coeffs: Vec<Poly>,
}

impl BivarQ {
    pub fn degree_x(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// `Q(x, t0)`.
    pub fn specialize(&self, t0: &Rat) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c.eval(t0)))
    }

    /// Coefficient polynomial `Q(t, x)` with the roles swapped, for the
    /// antisymmetry check.
    pub fn swapped(&self) -> BivarQ {
        let dt = self
            .coeffs
            .iter()
            .map(|c| c.deg() as usize)
            .max()
            .unwrap_or(0);
        let mut out = vec![Poly::zero(); dt + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            for (j, v) in c.terms() {
                out[j as usize] = &out[j as usize] + &Poly::monomial(v.clone(), i as u32);
            }
        }
        while out.len() > 1 && out.last().is_some_and(|p| p.is_zero()) {
            out.pop();
        }
        BivarQ { coeffs: out }
    }
}

pub fn build_q(l: &RatFn) -> BivarQ {
    let (n, d) = (l.num(), l.den());
    let top = n.deg().max(d.deg()) as usize;
    let coeffs = (0..=top)
        .map(|i| &d.scale(&n.coeff(i as u32)) - &n.scale(&d.coeff(i as u32)))
        .collect();
    BivarQ { coeffs }
}

/// gcd of the two specializations at `t0`; rejects values where either
/// specialization drops degree in `x`.
pub fn sample_p(q1: &BivarQ, q2: &BivarQ, t0: &Rat) -> Result<Poly, RatminError> {
    let a = q1.specialize(t0);
    let b = q2.specialize(t0);
    if a.deg() as usize != q1.degree_x()
        || b.deg() as usize != q2.degree_x()
        || a.is_zero()
        || b.is_zero()
    {
        return Err(RatminError::BadSample);
    }
    let g = poly_gcd(&a, &b);
    if g.is_constant() {
        return Err(RatminError::BadSample);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rint;

    fn q_of(l: &RatFn) -> Poly {
        // Q(x, t) flattened with t -> 1000 for easy comparison
        build_q(l).specialize(&rint(1000))
    }

    #[test]
    fn build_examples() {
        let x2 = RatFn::x().pow(2);
        assert_eq!(
            build_q(&x2).coeffs,
            vec![Poly::from_i64(&[0, 0, -1]), Poly::zero(), Poly::one()]
        );
        let l = RatFn::new(Poly::from_i64(&[1, 0, 1]), Poly::from_i64(&[0, 1]));
        // (x^2+1) t - (t^2+1) x at t = 1000
        assert_eq!(q_of(&l), Poly::from_i64(&[1000, -1_000_001, 1000]));
        let q = build_q(&l);
        let sw = q.swapped();
        for t in [rint(2), rint(-3)] {
            assert_eq!(sw.specialize(&t), q.specialize(&t).scale(&rint(-1)));
        }
    }

    #[test]
    fn sample_examples() {
        let q = |k| build_q(&RatFn::x().pow(k));
        assert_eq!(
            sample_p(&q(4), &q(6), &rint(2)).unwrap(),
            Poly::from_i64(&[-4, 0, 1])
        );
        assert_eq!(
            sample_p(&q(2), &q(3), &rint(2)).unwrap(),
            Poly::from_i64(&[-2, 1])
        );
        assert_eq!(
            sample_p(&q(1), &q(1), &rint(5)).unwrap(),
            Poly::from_i64(&[-5, 1])
        );
    }
}
