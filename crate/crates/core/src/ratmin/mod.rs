//! Degree-minimizing rational substitution for the absolute invariants:
//! find `F` and `L̃i` with `Li = L̃i ∘ F`, `deg F` maximal.

mod bivar;
mod decompose;

use thiserror::Error;

use crate::algebra::{poly_gcd, Poly, Rat, RatFn};
use crate::trace::Trace;

pub use bivar::{build_q, sample_p, BivarQ};
pub use decompose::decompose_through;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RatminError {
    #[error("invariants are already of minimal degree (only Moebius reductions exist)")]
    AlreadyMinimal,
    #[error("sample value is degenerate")]
    BadSample,
    #[error("L does not decompose through F")]
    NoDecomposition,
    #[error("no valid candidate after {0} sample values")]
    SamplesExhausted(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimizationResult {
    pub f: RatFn,
    pub lmin: (RatFn, RatFn),
    pub samples_used: Vec<Rat>,
}

pub const MAX_SAMPLES: usize = 32;

/// `1, -1, 2, -2, 3, ...`
pub fn sample_schedule() -> impl Iterator<Item = Rat> {
    (1..).flat_map(|n: i64| [Rat::from_integer(n.into()), Rat::from_integer((-n).into())])
}

pub fn candidate_f(p0: &Poly, p1: &Poly) -> RatFn {
    RatFn::new(p0.clone(), p1.clone())
}

/// `F` is a coprime non-constant quotient whose degree divides both `Li`
/// and both `Li` decompose through it.
pub fn validate_f(f: &RatFn, l1: &RatFn, l2: &RatFn) -> bool {
    validated(f, l1, l2).is_some()
}

fn validated(f: &RatFn, l1: &RatFn, l2: &RatFn) -> Option<(RatFn, RatFn)> {
    if f.is_constant() {
        return None;
    }
    let m = f.rational_degree();
    if l1.rational_degree() % m != 0 || l2.rational_degree() % m != 0 {
        return None;
    }
    Some((
        decompose_through(l1, f).ok()?,
        decompose_through(l2, f).ok()?,
    ))
}

/// One pass of the sampled-GCD construction.
fn minimize_once(
    l1: &RatFn,
    l2: &RatFn,
    trace: &mut Trace,
) -> Result<MinimizationResult, RatminError> {
    let q1 = build_q(l1);
    let q2 = build_q(l2);
    let mut valid: Vec<(Rat, Poly)> = Vec::new();
    let mut attempts = 0;
    for t in sample_schedule().take(MAX_SAMPLES) {
        attempts += 1;
        let p = match sample_p(&q1, &q2, &t) {
            Ok(p) => p,
            Err(_) => {
                trace.push("ratmin", format!("t = {t}: rejected"));
                continue;
            }
        };
        trace.push("ratmin", format!("t = {t}: gcd degree {}", p.deg()));
        valid.push((t, p));
        let dmin = valid.iter().map(|(_, p)| p.deg()).min().unwrap();
        let (tb, pb) = valid.last().unwrap();
        if pb.deg() != dmin {
            continue;
        }
        let earlier: Vec<&(Rat, Poly)> = valid[..valid.len() - 1]
            .iter()
            .filter(|(_, p)| p.deg() == dmin)
            .collect();
        if dmin == 1 && !earlier.is_empty() {
            return Err(RatminError::AlreadyMinimal);
        }
        for (ta, pa) in earlier {
            if !poly_gcd(pa, pb).is_one() {
                continue;
            }
            let f = candidate_f(pa, pb);
            if let Some((m1, m2)) = validated(&f, l1, l2) {
                trace.push("ratmin", format!("accepted F = {f} from t = {ta}, {tb}"));
                return Ok(MinimizationResult {
                    f,
                    lmin: (m1, m2),
                    samples_used: vec![ta.clone(), tb.clone()],
                });
            }
            trace.push(
                "ratmin",
                format!("candidate from t = {ta}, {tb} failed validation"),
            );
        }
    }
    Err(RatminError::SamplesExhausted(attempts))
}

/// Sampled-GCD minimization repeated until no further reduction exists;
/// the substitutions compose as `F = F_1 ∘ F_2 ∘ ...` applied innermost first.
pub fn minimize_invariants(
    l1: &RatFn,
    l2: &RatFn,
    trace: &mut Trace,
) -> Result<MinimizationResult, RatminError> {
    let mut res = minimize_once(l1, l2, trace)?;
    loop {
        match minimize_once(&res.lmin.0, &res.lmin.1, trace) {
            Ok(next) => {
                res.f = next.f.compose(&res.f);
                res.lmin = next.lmin;
                res.samples_used.extend(next.samples_used);
            }
            Err(RatminError::AlreadyMinimal) => return Ok(res),
            Err(e) => return Err(e),
        }
    }
}


#[cfg(test)]
mod example_tests {
    use super::*;
    use crate::equiv::equiv_power_moebius;
    use crate::ode::{invert_l, l_profile, transform_invariants, Family, Ode3, SeedFamily};

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    fn second_example() -> Ode3 {
        let x = p(&[0, 1]);
        let xp2 = p(&[2, 1]);
        let quad = p(&[1, 1, -1]);
        let c2 = RatFn::new(p(&[6, 12, -15, -6]), &(&x * &quad) * &xp2);
        let c1 = RatFn::new(
            -p(&[16, 48, 36, -20, 9, 81, -20, -30, -6]),
            &(&x.pow(4) * &xp2.pow(2)) * &quad.pow(2),
        );
        let c0 = RatFn::new(xp2.pow(3), &quad.pow(2) * &x.pow(5));
        Ode3::new(c2, c1, c0)
    }

    #[test]
    fn second_example_rational_branch() {
        let inv = second_example().invariants();
        let prof = l_profile(&inv).unwrap();
        let mut trace = Trace::new();
        let res = minimize_invariants(&prof.l1, &prof.l2, &mut trace).unwrap();
        assert_eq!(res.f.rational_degree(), 2);
        let canon = invert_l(&res.lmin.0, &res.lmin.1).unwrap();
        assert_eq!(transform_invariants(&canon, &res.f), inv);
        let found = equiv_power_moebius(&canon, &mut trace).unwrap();
        assert_eq!(found[0].family.family, Family::F12);
        // same Moebius class as the published canonical equation
        let jk = SeedFamily::f1f2(1, 1, 1);
        assert!(found.iter().any(|e| e.family == jk.canonical()));
    }
}
