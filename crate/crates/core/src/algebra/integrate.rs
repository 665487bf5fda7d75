//! Integration of rational functions: Hermite reduction for the rational
//! part, Rothstein-Trager style residues for the logarithmic part.

use num_traits::{One, Zero};

use super::algnum::AlgNum;
use super::gcd::{poly_gcd, poly_xgcd};
use super::poly::Poly;
use super::rat::{rat_from_bigint, rat_sqrt, Rat};
use super::ratfn::RatFn;
use super::roots::{rational_roots, squarefree_and_rational_roots};

/// `residue * log(argument)`. When the residue is irrational the argument is
/// an irreducible monic quadratic `x^2 + b x + c` and the term stands for the
/// conjugate pair `r log(x - ρ) + r̄ log(x - ρ̄)` with `ρ = (-b + sqrt(b^2 - 4c))/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogTerm {
    pub residue: AlgNum,
    pub argument: Poly,
}

impl LogTerm {
    /// The root `ρ` of a quadratic argument paired with `residue`.
    pub fn paired_root(&self) -> Option<AlgNum> {
        if self.residue.is_rational() {
            return None;
        }
        let b = self.argument.coeff(1);
        let c = self.argument.coeff(0);
        Some(AlgNum::quadratic_roots(&Rat::one(), &b, &c)[0].clone())
    }

    pub fn derivative(&self) -> RatFn {
        let f = &self.argument;
        match &self.residue {
            AlgNum::Rational(c) => RatFn::new(f.derivative(), f.clone()).scale(c),
            AlgNum::Quadratic { p, q, d } => {
                // residue p + q√d at ρ with √Δ = s√d
                let b = f.coeff(1);
                let c = f.coeff(0);
                let delta = &b * &b - Rat::from_integer(4.into()) * &c;
                let s =
                    rat_sqrt(&(&delta / rat_from_bigint(d.clone()))).expect("radicand mismatch");
                let two = Rat::from_integer(2.into());
                let num =
                    Poly::from_coeffs([p * &b + q * &s * rat_from_bigint(d.clone()), two * p]);
                RatFn::new(num, f.clone())
            }
        }
    }
}

/// `rational_part + Σ log terms + ∫ unevaluated_remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralForm {
    pub rational_part: RatFn,
    pub log_terms: Vec<LogTerm>,
    pub unevaluated_remainder: Option<RatFn>,
}

impl IntegralForm {
    pub fn zero() -> IntegralForm {
        IntegralForm {
            rational_part: RatFn::zero(),
            log_terms: Vec::new(),
            unevaluated_remainder: None,
        }
    }

    /// Exact derivative; equals the integrand.
    pub fn derivative(&self) -> RatFn {
        let mut acc = self.rational_part.derivative();
        for t in &self.log_terms {
            acc = &acc + &t.derivative();
        }
        if let Some(r) = &self.unevaluated_remainder {
            acc = &acc + r;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.rational_part.is_zero()
            && self.log_terms.is_empty()
            && self.unevaluated_remainder.is_none()
    }
}

fn integrate_poly(p: &Poly) -> Poly {
    Poly::from_terms(
        p.terms()
            .map(|(e, c)| (e + 1, c / Rat::from_integer((e as i64 + 1).into()))),
    )
}

/// Solves `s a + t b = c` with `deg s < deg b`, for coprime `a`, `b`.
fn solve_diophantine(a: &Poly, b: &Poly, c: &Poly) -> (Poly, Poly) {
    let (g, s0, _) = poly_xgcd(a, b);
    debug_assert!(g.is_one());
    let s = (&s0 * c).rem(b);
    let t = (c - &(&s * a)).exact_div(b);
    (s, t)
}

/// Hermite reduction of a proper `a/d` (`d` monic, coprime to `a`): returns
/// `(g, h_num, d_star)` with `a/d = g' + h_num/d_star` and `d_star` squarefree.
fn hermite(a: &Poly, d: &Poly) -> (RatFn, Poly, Poly) {
    let mut g = RatFn::zero();
    let mut a = a.clone();
    let mut dm = poly_gcd(d, &d.derivative());
    let ds = d.exact_div(&dm);
    while !dm.is_constant() {
        let dm2 = poly_gcd(&dm, &dm.derivative());
        let dms = dm.exact_div(&dm2);
        let lhs = -(&ds * &dm.derivative()).exact_div(&dm);
        let (b, c) = solve_diophantine(&lhs, &dms, &a);
        a = &c - &(&b.derivative() * &ds).exact_div(&dms);
        g = &g + &RatFn::new(b, dm.clone());
        dm = dm2;
    }
    (g, a, ds)
}

fn resultant(a: &Poly, b: &Poly) -> Rat {
    if a.is_zero() || b.is_zero() {
        return Rat::zero();
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = Rat::one();
    loop {
        let m = a.deg();
        let n = b.deg();
        if n == 0 {
            return acc * num_traits::pow(b.lc(), m as usize);
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return Rat::zero();
        }
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc *= num_traits::pow(b.lc(), (m - r.deg()) as usize);
        a = b;
        b = r;
    }
}

/// Newton interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[Rat], ys: &[Rat]) -> Poly {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = Poly::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = &(&p * &Poly::linear_root(&xs[i])) + &Poly::constant(coef[i].clone());
    }
    p
}

fn eval_alg(p: &Poly, x: &AlgNum) -> AlgNum {
    let mut acc = AlgNum::zero();
    for c in p.dense().iter().rev() {
        acc = &(&acc * x) + &AlgNum::Rational(c.clone());
    }
    acc
}

/// Logarithmic part of `a/d` with `d` squarefree monic and `deg a < deg d`.
fn log_part(a: &Poly, d: &Poly) -> (Vec<LogTerm>, Option<RatFn>) {
    let mut terms: Vec<LogTerm> = Vec::new();
    if a.is_zero() {
        return (terms, None);
    }
    let mut linear = Poly::one();
    for f in squarefree_and_rational_roots(d) {
        if let Some(r) = &f.root {
            let res = a.eval(r) / d.derivative().eval(r);
            linear = &linear * &f.poly;
            if res.is_zero() {
                continue;
            }
            push_rational(&mut terms, res, &f.poly);
        }
    }
    let g = d.exact_div(&linear);
    if g.is_constant() {
        return (terms, None);
    }
    // numerator over the non-linear part: a/d = a1/linear + a2/g
    let (_, s, _) = poly_xgcd(&linear, &g);
    let a2 = (&s * a).rem(&g);
    if a2.is_zero() {
        return (terms, None);
    }
    let gp = g.derivative();
    let n = g.deg() as i64;
    let zs: Vec<Rat> = (0..=n).map(|i| Rat::from_integer(i.into())).collect();
    let vals: Vec<Rat> = zs
        .iter()
        .map(|z| resultant(&g, &(&a2 - &gp.scale(z))))
        .collect();
    let rz = interpolate(&zs, &vals);
    let mut rest = RatFn::new(a2.clone(), g.clone());
    for c in rational_roots(&rz) {
        if c.is_zero() {
            continue;
        }
        let h = poly_gcd(&g, &(&a2 - &gp.scale(&c)));
        if h.is_constant() {
            continue;
        }
        let t = LogTerm {
            residue: AlgNum::Rational(c.clone()),
            argument: h.clone(),
        };
        rest = &rest - &t.derivative();
        push_rational(&mut terms, c, &h);
    }
    if rest.is_zero() {
        return (terms, None);
    }
    let gr = rest.den().clone();
    if gr.deg() == 2 {
        let roots = AlgNum::quadratic_roots(&Rat::one(), &gr.coeff(1), &gr.coeff(0));
        let rho = &roots[0];
        let residue = &eval_alg(rest.num(), rho) / &eval_alg(&gr.derivative(), rho);
        let t = LogTerm {
            residue,
            argument: gr,
        };
        debug_assert_eq!(t.derivative(), rest);
        terms.push(t);
        return (terms, None);
    }
    (terms, Some(rest))
}

fn push_rational(terms: &mut Vec<LogTerm>, res: Rat, factor: &Poly) {
    let res = AlgNum::Rational(res);
    if let Some(t) = terms.iter_mut().find(|t| t.residue == res) {
        t.argument = &t.argument * factor;
    } else {
        terms.push(LogTerm {
            residue: res,
            argument: factor.clone(),
        });
    }
}

/// Antiderivative of a rational function.
pub fn integrate_rational(w: &RatFn) -> IntegralForm {
    if w.is_zero() {
        return IntegralForm::zero();
    }
    let (q, r) = w.num().div_rem(w.den());
    let mut rational = RatFn::from_poly(integrate_poly(&q));
    if r.is_zero() {
        return IntegralForm {
            rational_part: rational,
            log_terms: Vec::new(),
            unevaluated_remainder: None,
        };
    }
    let (g, h, ds) = hermite(&r, w.den());
    rational = &rational + &g;
    let (hq, hr) = h.div_rem(&ds);
    rational = &rational + &RatFn::from_poly(integrate_poly(&hq));
    let (mut log_terms, remainder) = log_part(&hr, &ds);
    log_terms.sort_by(|a, b| {
        a.residue
            .canonical_cmp(&b.residue)
            .then_with(|| a.argument.to_string().cmp(&b.argument.to_string()))
    });
    IntegralForm {
        rational_part: rational,
        log_terms,
        unevaluated_remainder: remainder,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rint;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFn {
        RatFn::new(p(n), p(d))
    }

    #[test]
    fn logarithmic_derivative() {
        let f = integrate_rational(&rf(&[0, 2], &[-1, 0, 1]));
        assert!(f.rational_part.is_zero());
        assert_eq!(
            f.log_terms,
            vec![LogTerm {
                residue: AlgNum::one(),
                argument: p(&[-1, 0, 1])
            }]
        );
    }

    #[test]
    fn pure_rational() {
        let f = integrate_rational(&rf(&[1], &[0, 0, 1]));
        assert_eq!(f.rational_part, rf(&[-1], &[0, 1]));
        assert!(f.log_terms.is_empty());
    }

    #[test]
    fn partial_fractions() {
        let w = &rf(&[1], &[0, 1]) + &rf(&[3], &[-1, 1]);
        let f = integrate_rational(&w);
        assert_eq!(
            f.log_terms,
            vec![
                LogTerm {
                    residue: AlgNum::one(),
                    argument: p(&[0, 1])
                },
                LogTerm {
                    residue: AlgNum::int(3),
                    argument: p(&[-1, 1])
                },
            ]
        );
    }

    #[test]
    fn quadratic_residues() {
        for w in [
            rf(&[1], &[2, 0, 1]),
            rf(&[3, 1], &[-3, 1, 1]),
            rf(&[1, 0, 5], &[0, 1, 0, 1, 0, 0, 0, 0]),
        ] {
            let f = integrate_rational(&w);
            assert!(f.unevaluated_remainder.is_none(), "{w}");
            assert_eq!(f.derivative(), w);
        }
    }

    #[test]
    fn hard_residues_stay_unevaluated() {
        let w = rf(&[1], &[1, 1, 0, 1]);
        let f = integrate_rational(&w);
        assert!(f.unevaluated_remainder.is_some());
        assert_eq!(f.derivative(), w);
    }

    #[test]
    fn resultant_small() {
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[-2, 1])), rint(-1));
        assert_eq!(resultant(&p(&[-4, 0, 1]), &p(&[-2, 1])), rint(0));
    }
}
