//! Squarefree decomposition, rational roots and numeric complex roots.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gcd::poly_gcd;
use super::poly::Poly;
use super::rat::{rat_to_f64, Rat};

/// One factor of a squarefree-and-rational-root splitting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    /// Monic factor; linear when `root` is present.
    pub poly: Poly,
    pub multiplicity: u32,
    pub root: Option<Rat>,
}

/// Yun's algorithm: monic squarefree, pairwise coprime `(s_i, i)` with
/// `p = lc * Π s_i^i`. Trivial factors are omitted.
pub fn squarefree(p: &Poly) -> Vec<(Poly, u32)> {
    assert!(!p.is_zero(), "squarefree decomposition of zero");
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let f = p.monic();
    let df = f.derivative();
    let a0 = poly_gcd(&f, &df);
    let mut b = f.exact_div(&a0);
    let c = df.exact_div(&a0);
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = poly_gcd(&b, &d);
        let nb = b.exact_div(&a);
        let c = d.exact_div(&a);
        d = &c - &nb.derivative();
        if !a.is_constant() {
            out.push((a, i));
        }
        b = nb;
        i += 1;
    }
    out
}

/// Splits `p` into squarefree factors with every rational root exposed as a
/// linear factor. Linear factors come first, by ascending root.
pub fn squarefree_and_rational_roots(p: &Poly) -> Vec<Factor> {
    let mut linear = Vec::new();
    let mut rest = Vec::new();
    for (s, m) in squarefree(p) {
        let (roots, cofactor) = split_rational_roots(&s);
        for r in roots {
            linear.push(Factor {
                poly: Poly::linear_root(&r),
                multiplicity: m,
                root: Some(r),
            });
        }
        if !cofactor.is_constant() {
            rest.push(Factor {
                poly: cofactor,
                multiplicity: m,
                root: None,
            });
        }
    }
    linear.sort_by(|a, b| a.root.cmp(&b.root));
    linear.extend(rest);
    linear
}

/// Distinct rational roots of `p`, ascending.
pub fn rational_roots(p: &Poly) -> Vec<Rat> {
    if p.is_zero() || p.is_constant() {
        return Vec::new();
    }
    let mut out: Vec<Rat> = squarefree(p)
        .into_iter()
        .flat_map(|(s, _)| split_rational_roots(&s).0)
        .collect();
    out.sort();
    out
}

/// Rational roots of a squarefree polynomial and the monic cofactor left
/// after removing them.
fn split_rational_roots(s: &Poly) -> (Vec<Rat>, Poly) {
    let mut roots = Vec::new();
    let mut rest = s.monic();
    if let Some(e) = rest.lowest_exponent() {
        if e > 0 {
            roots.push(Rat::zero());
            rest = rest.exact_div(&Poly::x());
        }
    }
    let try_root = |r: Rat, rest: &mut Poly, roots: &mut Vec<Rat>| {
        if rest.deg() == 0 || roots.contains(&r) {
            return;
        }
        if rest.eval(&r).is_zero() {
            *rest = rest.exact_div(&Poly::linear_root(&r));
            roots.push(r);
        }
    };
    // small-divisor enumeration: exact and complete when the bounds are tiny
    let (_, prim) = rest.to_primitive();
    if rest.deg() > 0 {
        let lc = prim.last().unwrap().abs();
        let c0 = prim[0].abs();
        if lc <= BigInt::from(2000) && c0 <= BigInt::from(2000) {
            let lc = lc.to_i64().unwrap();
            let c0 = c0.to_i64().unwrap();
            for q in divisors(lc) {
                for pnum in divisors(c0) {
                    for sign in [1, -1] {
                        try_root(
                            Rat::new((sign * pnum).into(), q.into()),
                            &mut rest,
                            &mut roots,
                        );
                    }
                }
            }
            roots.sort();
            return (roots, rest);
        }
    }
    if rest.deg() > 0 {
        for z in complex_roots(&rest) {
            if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
                continue;
            }
            for cand in convergents(z.re) {
                try_root(cand, &mut rest, &mut roots);
            }
        }
    }
    roots.sort();
    (roots, rest)
}

fn divisors(n: i64) -> Vec<i64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Continued-fraction convergents of `x` with denominators up to 1e9.
fn convergents(x: f64) -> Vec<Rat> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut v = x;
    for _ in 0..40 {
        let a = v.floor();
        let ai = match BigInt::from_f64_checked(a) {
            Some(a) => a,
            None => break,
        };
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > BigInt::from(1_000_000_000u64) {
            break;
        }
        out.push(Rat::new(h2.clone(), k2.clone()));
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let frac = v - a;
        if frac.abs() < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    out
}

trait FromF64Checked: Sized {
    fn from_f64_checked(x: f64) -> Option<Self>;
}

impl FromF64Checked for BigInt {
    fn from_f64_checked(x: f64) -> Option<BigInt> {
        if x.is_finite() {
            num_traits::FromPrimitive::from_f64(x)
        } else {
            None
        }
    }
}

/// All complex roots of a nonconstant polynomial by Aberth iteration in
/// double precision, polished with Newton steps.
pub fn complex_roots(p: &Poly) -> Vec<Complex64> {
    let n = match p.degree() {
        None | Some(0) => return Vec::new(),
        Some(n) => n as usize,
    };
    let lc = p.lc();
    let coeffs: Vec<Complex64> = p
        .dense()
        .iter()
        .map(|c| Complex64::new(rat_to_f64(&(c / &lc)), 0.0))
        .collect();
    if n == 1 {
        return vec![-coeffs[0]];
    }
    let radius = 1.0
        + coeffs[..n]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
            .min(1e150);
    // start on a circle scaled to the geometric root magnitude
    let geo = coeffs[0].norm().powf(1.0 / n as f64).clamp(1e-3, radius);
    let mut z: Vec<Complex64> = (0..n)
        .map(|i| {
            let ang = 2.0 * std::f64::consts::PI * (i as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(geo, ang)
        })
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            d = d * x + v;
            v = v * x + c;
        }
        (v, d)
    };
    for _ in 0..800 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 0.0 {
                        s += diff.inv();
                    }
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                max_step = max_step.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (v, d) = eval(*zi);
            if d.norm() == 0.0 {
                break;
            }
            let step = v / d;
            if step.is_finite() {
                *zi -= step;
            }
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat, rint};

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    fn lin(r: i64) -> Poly {
        Poly::linear_root(&rint(r))
    }

    #[test]
    fn visible_factorization() {
        let f = &p(&[0, 0, 0, 1]) * &lin(1).pow(2);
        let fs = squarefree_and_rational_roots(&f);
        assert_eq!(fs.len(), 2);
        assert_eq!((fs[0].poly.clone(), fs[0].multiplicity), (p(&[0, 1]), 3));
        assert_eq!((fs[1].poly.clone(), fs[1].multiplicity), (lin(1), 2));
    }

    #[test]
    fn divisor_pairs() {
        let f = &p(&[-1, 0, 1]) * &lin(-2).pow(4);
        let fs = squarefree_and_rational_roots(&f);
        let got: Vec<(Option<Rat>, u32)> = fs
            .iter()
            .map(|f| (f.root.clone(), f.multiplicity))
            .collect();
        assert_eq!(
            got,
            vec![(Some(rint(-2)), 4), (Some(rint(-1)), 1), (Some(rint(1)), 1)]
        );
    }

    #[test]
    fn irreducible_quadratic_kept() {
        let fs = squarefree_and_rational_roots(&p(&[1, 0, 1]));
        assert_eq!(
            fs,
            vec![Factor {
                poly: p(&[1, 0, 1]),
                multiplicity: 1,
                root: None
            }]
        );
    }

    #[test]
    fn large_coefficient_roots_found_numerically() {
        let r1 = rat(123457, 1001);
        let r2 = rat(-99991, 7);
        let f = &(&Poly::linear_root(&r1) * &Poly::linear_root(&r2)) * &p(&[3, 0, 0, 1]);
        assert_eq!(rational_roots(&f), vec![r2, r1]);
    }

    #[test]
    fn complex_roots_of_cyclotomic() {
        let z = complex_roots(&p(&[1, 0, 0, 0, 1]));
        for r in z {
            assert!(((r.powu(4)) + 1.0).norm() < 1e-12);
        }
    }
}
