use num_complex::Complex64;

use crate::algebra::{rat::rat_to_f64, squarefree_and_rational_roots, AlgNum, Poly, RatFn};
use crate::solutions::Expr;

use super::VerifyError;

fn eval_poly(p: &Poly, x: Complex64) -> Complex64 {
    let top = p.deg();
    let mut acc = Complex64::new(0.0, 0.0);
    for e in (0..=top).rev() {
        acc = acc * x + rat_to_f64(&p.coeff(e));
    }
    acc
}

pub fn eval_ratfn(f: &RatFn, x: Complex64) -> Result<Complex64, VerifyError> {
    let d = eval_poly(f.den(), x);
    if d.norm() == 0.0 {
        return Err(VerifyError::Pole);
    }
    Ok(eval_poly(f.num(), x) / d)
}

/// A rational function kept as `lc * Π num_i^m_i / Π den_j^n_j`. Near a
/// cluster of repeated roots the expanded polynomials lose most of their
/// digits; the squarefree factors do not.
pub(crate) struct FactoredRatFn {
    lc: f64,
    num: Vec<(Poly, u32)>,
    den: Vec<(Poly, u32)>,
}

impl FactoredRatFn {
    pub(crate) fn new(f: &RatFn) -> FactoredRatFn {
        let split = |p: &Poly| -> Vec<(Poly, u32)> {
            if p.is_zero() {
                return Vec::new();
            }
            squarefree_and_rational_roots(p)
                .into_iter()
                .map(|f| (f.poly, f.multiplicity))
                .collect()
        };
        let lc = if f.num().is_zero() {
            0.0
        } else {
            rat_to_f64(&(f.num().lc() / f.den().lc()))
        };
        FactoredRatFn {
            lc,
            num: split(f.num()),
            den: split(f.den()),
        }
    }

    pub(crate) fn eval(&self, x: Complex64) -> Result<Complex64, VerifyError> {
        let mut v = Complex64::new(self.lc, 0.0);
        for (p, m) in &self.num {
            v *= eval_poly(p, x).powu(*m);
        }
        for (p, m) in &self.den {
            let d = eval_poly(p, x);
            if d.norm() == 0.0 {
                return Err(VerifyError::Pole);
            }
            v /= d.powu(*m);
        }
        Ok(v)
    }
}

pub(crate) fn pfq_eval(
    upper: &[AlgNum],
    lower: &[AlgNum],
    z: Complex64,
    order: usize,
) -> Result<(Complex64, f64), VerifyError> {
    if lower.iter().any(AlgNum::is_nonpositive_integer) {
        return Err(VerifyError::UndefinedSeries);
    }
    if upper.len() > lower.len() && z.norm() > 0.8 {
        return Err(VerifyError::OutOfDisk);
    }
    let up: Vec<Complex64> = upper.iter().map(AlgNum::to_complex).collect();
    let lo: Vec<Complex64> = lower.iter().map(AlgNum::to_complex).collect();
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for m in 0..order {
        sum += term;
        let mf = m as f64;
        let num: Complex64 = up.iter().map(|a| a + mf).product();
        let den: Complex64 = lo.iter().map(|b| b + mf).product::<Complex64>() * (mf + 1.0);
        term = term * num / den * z;
    }
    Ok((sum, term.norm()))
}

/// Integral of `w` from `1/4` to `x` (the base point fixes the arbitrary
/// constant of an exponential-integral factor), composite Gauss-Legendre.
fn path_integral(w: &RatFn, x: Complex64) -> Result<Complex64, VerifyError> {
    const NODES: [(f64, f64); 5] = [
        (0.0, 0.568_888_888_888_888_9),
        (-0.538_469_310_105_683, 0.478_628_670_499_366_5),
        (0.538_469_310_105_683, 0.478_628_670_499_366_5),
        (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
        (0.906_179_845_938_664, 0.236_926_885_056_189_1),
    ];
    let a = Complex64::new(0.25, 0.0);
    let segs = 64;
    let h = (x - a) / segs as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for s in 0..segs {
        let mid = a + h * (s as f64 + 0.5);
        for (t, wt) in NODES {
            acc += eval_ratfn(w, mid + h * (t / 2.0))? * (wt / 2.0);
        }
    }
    Ok(acc * h)
}

/// Value at `x` and a truncation estimate (largest first omitted term).
pub fn expr_eval(e: &Expr, x: Complex64, order: usize) -> Result<(Complex64, f64), VerifyError> {
    Ok(match e {
        Expr::Constant(c) => (c.to_complex(), 0.0),
        Expr::Variable => (x, 0.0),
        Expr::Rational(f) => (eval_ratfn(f, x)?, 0.0),
        Expr::Power(b, p) => {
            let (v, err) = expr_eval(b, x, order)?;
            if v.norm() == 0.0 {
                return Err(VerifyError::Pole);
            }
            ((v.ln() * p.to_complex()).exp(), err)
        }
        Expr::Product(fs) => {
            let mut acc = Complex64::new(1.0, 0.0);
            let mut err: f64 = 0.0;
            for f in fs {
                let (v, e) = expr_eval(f, x, order)?;
                acc *= v;
                err = err.max(e);
            }
            (acc, err)
        }
        Expr::Sum(ts) => {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut err: f64 = 0.0;
            for t in ts {
                let (v, e) = expr_eval(t, x, order)?;
                acc += v;
                err = err.max(e);
            }
            (acc, err)
        }
        Expr::ExpIntegral(form) => {
            let mut s = eval_ratfn(&form.rational_part, x)?;
            for t in &form.log_terms {
                match t.paired_root() {
                    None => {
                        s += t.residue.to_complex()
                            * eval_ratfn(&RatFn::from_poly(t.argument.clone()), x)?.ln()
                    }
                    Some(rho) => {
                        s += t.residue.to_complex() * (x - rho.to_complex()).ln();
                        s += t.residue.conj().to_complex() * (x - rho.conj().to_complex()).ln();
                    }
                }
            }
            if let Some(r) = &form.unevaluated_remainder {
                s += path_integral(r, x)?;
            }
            (s.exp(), 0.0)
        }
        Expr::Pfq { upper, lower, arg } => pfq_eval(upper, lower, eval_ratfn(arg, x)?, order)?,
        Expr::MeijerG(_) => return Err(VerifyError::UnsupportedNode("MeijerG")),
    })
}
