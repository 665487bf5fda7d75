//! Exact certificate (invariant transport) and numeric residual checks.

mod eval;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::rat::rat;
use crate::algebra::{complex_roots, squarefree, AlgNum, Poly, RatFn};
use crate::ode::{seed, transform_invariants, Invariants, Ode3, SeedFamily};
use crate::solutions::{Expr, TransformChain};

pub use eval::{eval_ratfn, expr_eval};
use eval::{pfq_eval, FactoredRatFn};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("series undefined: a lower parameter is a non-positive integer")]
    UndefinedSeries,
    #[error("unsupported node: {0}")]
    UnsupportedNode(&'static str),
    #[error("pFq argument outside the convergence disk")]
    OutOfDisk,
    #[error("evaluation point is a pole")]
    Pole,
}

/// Exact coefficients `c_0 .. c_{n-1}` of `pFq(upper; lower; x)`.
pub fn pfq_series(
    upper: &[AlgNum],
    lower: &[AlgNum],
    n: usize,
) -> Result<Vec<AlgNum>, VerifyError> {
    if lower.iter().any(AlgNum::is_nonpositive_integer) {
        return Err(VerifyError::UndefinedSeries);
    }
    let mut out = Vec::with_capacity(n);
    let mut c = AlgNum::one();
    for m in 0..n {
        out.push(c.clone());
        let mm = AlgNum::int(m as i64);
        let num = upper.iter().fold(AlgNum::one(), |acc, a| acc * (a + &mm));
        let den = lower
            .iter()
            .fold(AlgNum::int(m as i64 + 1), |acc, b| acc * (b + &mm));
        c = c * num / den;
    }
    Ok(out)
}

fn shift_all(v: &[AlgNum]) -> Vec<AlgNum> {
    v.iter().map(|a| a + &AlgNum::one()).collect()
}

fn simplify_product(factors: Vec<Expr>) -> Expr {
    if factors.iter().any(|f| {
        matches!(f, Expr::Constant(c) if c.is_zero())
            || matches!(f, Expr::Rational(r) if r.is_zero())
    }) {
        return Expr::Constant(AlgNum::zero());
    }
    Expr::product(factors)
}

fn is_zero_expr(e: &Expr) -> bool {
    matches!(e, Expr::Constant(c) if c.is_zero()) || matches!(e, Expr::Rational(r) if r.is_zero())
}

fn simplify_sum(terms: Vec<Expr>) -> Expr {
    let mut out: Vec<Expr> = Vec::new();
    for t in terms {
        match t {
            Expr::Sum(inner) => out.extend(inner),
            t if is_zero_expr(&t) => {}
            t => out.push(t),
        }
    }
    match out.len() {
        0 => Expr::Constant(AlgNum::zero()),
        1 => out.pop().unwrap(),
        _ => Expr::Sum(out),
    }
}

/// Exact symbolic `d/dx`.
pub fn expr_diff(e: &Expr) -> Result<Expr, VerifyError> {
    Ok(match e {
        Expr::Constant(_) => Expr::Constant(AlgNum::zero()),
        Expr::Variable => Expr::Constant(AlgNum::one()),
        Expr::Rational(f) => Expr::Rational(f.derivative()),
        Expr::Power(b, p) => {
            let db = expr_diff(b)?;
            simplify_product(vec![
                Expr::Constant(p.clone()),
                Expr::power((**b).clone(), p - &AlgNum::one()),
                db,
            ])
        }
        Expr::Product(v) => {
            let mut terms = Vec::with_capacity(v.len());
            for i in 0..v.len() {
                let mut fs = v.clone();
                fs[i] = expr_diff(&v[i])?;
                terms.push(simplify_product(fs));
            }
            simplify_sum(terms)
        }
        Expr::Sum(v) => simplify_sum(v.iter().map(expr_diff).collect::<Result<_, _>>()?),
        Expr::ExpIntegral(form) => {
            simplify_product(vec![Expr::Rational(form.derivative()), e.clone()])
        }
        Expr::Pfq { upper, lower, arg } => {
            let num = upper.iter().fold(AlgNum::one(), |acc, a| acc * a);
            let den = lower.iter().fold(AlgNum::one(), |acc, b| acc * b);
            simplify_product(vec![
                Expr::Constant(num / den),
                Expr::Rational(arg.derivative()),
                Expr::Pfq {
                    upper: shift_all(upper),
                    lower: shift_all(lower),
                    arg: arg.clone(),
                },
            ])
        }
        Expr::MeijerG(_) => return Err(VerifyError::UnsupportedNode("MeijerG")),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericEntry {
    pub element: usize,
    /// `[re, im]` pairs.
    pub points: Vec<[f64; 2]>,
    pub max_relative_residual: Option<f64>,
    pub skipped: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub exact_ok: bool,
    pub numeric: Vec<NumericEntry>,
    pub series_order: usize,
    pub tolerance: f64,
    /// Every checked residual within tolerance; `None` when nothing was checked.
    pub numeric_ok: Option<bool>,
}

impl VerificationReport {
    pub fn new(
        exact_ok: bool,
        numeric: Vec<NumericEntry>,
        series_order: usize,
        tolerance: f64,
    ) -> VerificationReport {
        let checked: Vec<f64> = numeric
            .iter()
            .filter_map(|n| n.max_relative_residual)
            .collect();
        let numeric_ok = (!checked.is_empty()).then(|| checked.iter().all(|r| *r <= tolerance));
        VerificationReport {
            exact_ok,
            numeric,
            series_order,
            tolerance,
            numeric_ok,
        }
    }
}

/// `max |y''' + c2 y'' + c1 y' + c0 y| / max |term|` over the points.
pub fn residual_check(
    ode: &Ode3,
    e: &Expr,
    points: &[Complex64],
    series_order: usize,
) -> Result<f64, VerifyError> {
    let d1 = expr_diff(e)?;
    let d2 = expr_diff(&d1)?;
    let d3 = expr_diff(&d2)?;
    let [c2, c1, c0] = [&ode.c2, &ode.c1, &ode.c0].map(FactoredRatFn::new);
    let mut worst: f64 = 0.0;
    for &x in points {
        let y = [e, &d1, &d2, &d3].map(|t| expr_eval(t, x, series_order).map(|v| v.0));
        let [y0, y1, y2, y3] = [y[0].clone()?, y[1].clone()?, y[2].clone()?, y[3].clone()?];
        let terms = [y3, c2.eval(x)? * y2, c1.eval(x)? * y1, c0.eval(x)? * y0];
        let scale = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
        let res: Complex64 = terms.iter().sum();
        let rel = if scale == 0.0 {
            0.0
        } else {
            res.norm() / scale
        };
        worst = worst.max(rel);
    }
    Ok(worst)
}

/// Roots of the squarefree factors, so repeated roots do not come back as
/// numerically split clusters.
fn push_roots(p: &Poly, pts: &mut Vec<Complex64>) {
    if p.deg() > 0 {
        for (f, _) in squarefree(p) {
            pts.extend(complex_roots(&f));
        }
    }
}

/// Zeros and poles of power bases: derivatives blow up there and cancel in
/// floating point.
fn branch_points(e: &Expr, pts: &mut Vec<Complex64>) {
    match e {
        Expr::Power(b, _) => {
            if let Expr::Rational(r) = b.as_ref() {
                push_roots(r.num(), pts);
                push_roots(r.den(), pts);
            }
            branch_points(b, pts);
        }
        Expr::Product(v) | Expr::Sum(v) => v.iter().for_each(|t| branch_points(t, pts)),
        _ => {}
    }
}

/// Singular points of the coefficients and branch points of `e`.
fn singularities(ode: &Ode3, e: &Expr) -> Vec<Complex64> {
    let mut pts = Vec::new();
    for c in [&ode.c2, &ode.c1, &ode.c0] {
        push_roots(c.den(), &mut pts);
    }
    branch_points(e, &mut pts);
    let mut out: Vec<Complex64> = Vec::new();
    for p in pts {
        if out.iter().all(|q| (p - q).norm() > 1e-9) {
            out.push(p);
        }
    }
    out
}

#[derive(PartialEq)]
struct PfqNode {
    upper: Vec<AlgNum>,
    lower: Vec<AlgNum>,
    arg: RatFn,
}

fn pfq_nodes(e: &Expr, out: &mut Vec<PfqNode>) {
    match e {
        Expr::Pfq { upper, lower, arg } => {
            let n = PfqNode {
                upper: upper.clone(),
                lower: lower.clone(),
                arg: arg.clone(),
            };
            if !out.contains(&n) {
                out.push(n);
            }
        }
        Expr::Power(b, _) => pfq_nodes(b, out),
        Expr::Product(v) | Expr::Sum(v) => v.iter().for_each(|t| pfq_nodes(t, out)),
        _ => {}
    }
}

/// Truncation estimate below which a sample point counts as accurate.
const TRUNCATION_OK: f64 = 1e-12;

/// Rank candidate points by the worst relative truncation estimate (first
/// omitted term over partial sum) of the pFq nodes, dropping points within
/// `margin` of a singular or branch point.
fn rank(
    cands: impl Iterator<Item = Complex64>,
    sing: &[Complex64],
    margin: f64,
    nodes: &[PfqNode],
    order: usize,
) -> Vec<(f64, Complex64)> {
    let mut out: Vec<(f64, Complex64)> = cands
        .filter(|z| sing.iter().all(|s| (z - s).norm() >= margin))
        .filter_map(|z| {
            let mut worst: f64 = 0.0;
            for n in nodes {
                let a = eval_ratfn(&n.arg, z).ok()?;
                let (sum, next) = pfq_eval(&n.upper, &n.lower, a, order).ok()?;
                let est = next / sum.norm();
                if !est.is_finite() {
                    return None;
                }
                worst = worst.max(est);
            }
            Some((worst, z))
        })
        .collect();
    // accurate enough: nearest to the default region first; otherwise most accurate
    let key = |(est, z): &(f64, Complex64)| {
        if *est <= TRUNCATION_OK {
            (0, (z - 0.25).norm())
        } else {
            (1, *est)
        }
    };
    out.sort_by(|a, b| {
        let (ka, kb) = (key(a), key(b));
        ka.0.cmp(&kb.0)
            .then(ka.1.total_cmp(&kb.1))
            .then(a.1.re.total_cmp(&b.1.re))
            .then(a.1.im.total_cmp(&b.1.im))
    });
    out
}

/// Points where some pFq argument is small, so the truncated series is
/// accurate even when the grid misses those neighbourhoods.
fn small_argument_points(nodes: &[PfqNode]) -> Vec<Complex64> {
    let mut args: Vec<&RatFn> = Vec::new();
    for n in nodes {
        if !n.arg.is_constant() && !args.contains(&&n.arg) {
            args.push(&n.arg);
        }
    }
    let mut out: Vec<Complex64> = Vec::new();
    for arg in args {
        for d in [4, 8, 16, 32, 64, 128, 256] {
            for t in [rat(1, d), rat(-1, d)] {
                for z in complex_roots(&(arg.num() - &arg.den().scale(&t))) {
                    if out.iter().all(|w| (w - z).norm() > 1e-9) {
                        out.push(z);
                    }
                }
            }
        }
    }
    out
}

fn grid(step: f64, half_width: i32) -> impl Iterator<Item = Complex64> {
    (-half_width..=half_width).flat_map(move |j| {
        (-half_width..=half_width).map(move |k| Complex64::new(j as f64 * step, k as f64 * step))
    })
}

/// Sample points on the grid `k/64` in `(0, 1/2)`, at least an eighth of
/// the smallest real singularity gap away from every real singular point
/// and branch point. When the grid cannot supply `count` points with
/// truncation estimate below [`TRUNCATION_OK`], complex grids are searched
/// instead (step 1/16 on `[-4, 4]^2`, step 1/2 on `[-32, 32]^2`) with the
/// margin taken from all complex singular points. Accurate points nearest
/// `1/4` are preferred.
pub fn sample_points(ode: &Ode3, e: &Expr, count: usize, order: usize) -> Vec<Complex64> {
    let sing = singularities(ode, e);
    // the residual evaluates the derivatives too, and their shifted series
    // converge more slowly
    let mut nodes = Vec::new();
    let mut d = e.clone();
    for k in 0..4 {
        pfq_nodes(&d, &mut nodes);
        if k < 3 {
            match expr_diff(&d) {
                Ok(n) => d = n,
                Err(_) => break,
            }
        }
    }

    let real: Vec<Complex64> = sing.iter().filter(|z| z.im.abs() < 1e-9).copied().collect();
    let mut xs: Vec<f64> = real.iter().map(|z| z.re).collect();
    xs.sort_by(f64::total_cmp);
    let gap = xs.windows(2).map(|w| w[1] - w[0]).fold(1.0, f64::min);
    let ranked = rank(
        (1..32).map(|k| Complex64::new(k as f64 / 64.0, 0.0)),
        &real,
        gap / 8.0,
        &nodes,
        order,
    );
    let real_ok = ranked.len() >= count && ranked[count - 1].0 <= TRUNCATION_OK;
    let mut pts: Vec<Complex64> = if real_ok {
        ranked.into_iter().take(count).map(|c| c.1).collect()
    } else {
        let mut gap: f64 = 1.0;
        for (i, a) in sing.iter().enumerate() {
            for b in &sing[i + 1..] {
                gap = gap.min((a - b).norm());
            }
        }
        // the default margin first, then narrower ones: near a singular point
        // where the argument is small the series is still accurate
        let cands: Vec<Complex64> = grid(1.0 / 16.0, 64)
            .chain(grid(0.5, 64).filter(|z| z.re.abs() > 4.0 || z.im.abs() > 4.0))
            .chain(small_argument_points(&nodes))
            .collect();
        let all = rank(cands.into_iter(), &sing, gap / 128.0, &nodes, order);
        let mut ranked = Vec::new();
        for div in [8.0, 32.0, 128.0] {
            ranked = all
                .iter()
                .filter(|(_, z)| sing.iter().all(|s| (z - s).norm() >= gap / div))
                .copied()
                .collect();
            if ranked.len() >= count && ranked[count - 1].0 <= TRUNCATION_OK {
                break;
            }
        }
        ranked.into_iter().take(count).map(|c| c.1).collect()
    };
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts
}

/// Authoritative certificate: the seed's invariants transported through the
/// composed substitution equal the input's.
pub fn exact_equivalence_check(
    input_inv: &Invariants,
    family: &SeedFamily,
    chain: &TransformChain,
) -> bool {
    let Ok(ode) = seed(family) else { return false };
    let g = chain.composed();
    if g.is_constant() {
        return false;
    }
    transform_invariants(&ode.invariants(), &g) == *input_inv
}

/// Numeric entry for one basis element; Meijer G elements are skipped.
pub fn numeric_entry(
    ode: &Ode3,
    index: usize,
    e: &Expr,
    series_order: usize,
    count: usize,
) -> NumericEntry {
    if e.contains_meijerg() {
        return NumericEntry {
            element: index,
            points: vec![],
            max_relative_residual: None,
            skipped: Some("MeijerG element: exact certificate only".into()),
        };
    }
    let points = sample_points(ode, e, count, series_order);
    if points.is_empty() {
        return NumericEntry {
            element: index,
            points: vec![],
            max_relative_residual: None,
            skipped: Some("no admissible sample point".into()),
        };
    }
    let res = residual_check(ode, e, &points, series_order);
    let points: Vec<[f64; 2]> = points.iter().map(|z| [z.re, z.im]).collect();
    match res {
        Ok(r) => NumericEntry {
            element: index,
            points,
            max_relative_residual: Some(r),
            skipped: None,
        },
        Err(err) => NumericEntry {
            element: index,
            points,
            max_relative_residual: None,
            skipped: Some(err.to_string()),
        },
    }
}
