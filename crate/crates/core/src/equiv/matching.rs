use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{solve_linear, AlgNum, LinearSolution, Rat, RatFn};
use crate::ode::{seed, seed_symmetric, Family, Invariants, Location, SeedFamily};

use super::indicial::indicial_roots;
use super::moebius::{Moebius, MoebiusCandidate};

/// A verified identification `inv = T(seed invariants, moebius)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamMatch {
    pub seed: SeedFamily,
    pub moebius: Moebius,
    pub lambda: Rat,
}

fn r(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Coefficient of `x^e` when `f` is a Laurent polynomial.
fn laurent(f: &RatFn, e: i64) -> Option<Rat> {
    let den = f.den();
    if den.num_terms() != 1 {
        return None;
    }
    let n = den.deg() as i64;
    if e + n < 0 {
        return Some(Rat::zero());
    }
    Some(f.num().coeff((e + n) as u32))
}

fn laurent_terms(f: &RatFn) -> Option<BTreeMap<i64, Rat>> {
    let den = f.den();
    if den.num_terms() != 1 {
        return None;
    }
    let n = den.deg() as i64;
    Some(
        f.num()
            .terms()
            .map(|(e, c)| (e as i64 - n, c.clone()))
            .collect(),
    )
}

/// Lower-parameter symmetric functions `(b1 + b2, b1 b2)` for each choice of
/// which local exponent corresponds to the analytic solution.
fn lower_choices(e: &[AlgNum; 3]) -> Vec<(AlgNum, AlgNum, [Rat; 2])> {
    let mut out = Vec::new();
    for j in 0..3 {
        let k = (j + 1) % 3;
        let l = (j + 2) % 3;
        let one = AlgNum::one();
        let b1 = &one - &(&e[k] - &e[j]);
        let b2 = &one - &(&e[l] - &e[j]);
        let (s, p) = (&b1 + &b2, &b1 * &b2);
        if let (Some(s), Some(p)) = (s.as_rational(), p.as_rational()) {
            let sym = [s.clone(), p.clone()];
            if !out
                .iter()
                .any(|(_, _, o): &(AlgNum, AlgNum, [Rat; 2])| o == &sym)
            {
                out.push((b1, b2, sym));
            }
        }
    }
    out
}

fn scaled(inv: &Invariants, lambda: &Rat) -> Invariants {
    inv.transform(&RatFn::x().scale(lambda))
}

/// Recovers parameters for a candidate placement. All verified matches are
/// returned, in the order the exponent assignments were tried.
pub fn match_parameters(
    inv: &Invariants,
    family: Family,
    cand: &MoebiusCandidate,
) -> Vec<ParamMatch> {
    let hat = inv.transform(&cand.base.inverse().to_ratfn());
    let found = if family == Family::F32 {
        match_3f2(&hat)
    } else {
        match_scaled(&hat, family)
    };
    let mut out: Vec<ParamMatch> = Vec::new();
    for (s, lambda) in found {
        let m = cand.base.scaled(&lambda);
        let Ok(ode) = seed(&s) else { continue };
        if ode.invariants().transform(&m.to_ratfn()) != *inv {
            continue;
        }
        let pm = ParamMatch {
            seed: s.canonical(),
            moebius: m,
            lambda,
        };
        if !out.contains(&pm) {
            out.push(pm);
        }
    }
    out
}

fn lambda_for(hat: &Invariants, family: Family) -> Option<Rat> {
    let l = match family {
        Family::F02 => laurent(&hat.i0, -2)?,
        Family::F12 => laurent(&hat.i1, -1)?,
        Family::F22 => {
            let a = laurent(&hat.i0, 0)? * r(27) / r(2);
            let b = laurent(&hat.i1, 0)? * r(3);
            if b.is_zero() {
                return None;
            }
            a / b
        }
        Family::F32 => return Some(Rat::one()),
    };
    (!l.is_zero()).then_some(l)
}

fn match_scaled(hat: &Invariants, family: Family) -> Vec<(SeedFamily, Rat)> {
    let mut out = Vec::new();
    let Ok(e) = indicial_roots(hat, &Location::Finite(Rat::zero())) else {
        return out;
    };
    let Some(lambda) = lambda_for(hat, family) else {
        return out;
    };
    let unknowns = match family {
        Family::F02 => 0,
        Family::F12 => 1,
        _ => 2,
    };
    for (b1, b2, lo) in lower_choices(&e) {
        let base = |up: [Rat; 3]| scaled(&seed_symmetric(family, &up, &lo).invariants(), &lambda);
        let t0 = base([r(0), r(0), r(0)]);
        let dirs: Vec<Invariants> = (0..unknowns)
            .map(|i| {
                let mut up = [r(0), r(0), r(0)];
                up[i] = r(1);
                base(up)
            })
            .collect();
        let Some(u) = solve_affine(hat, &t0, &dirs) else {
            continue;
        };
        let upper = match family {
            Family::F02 => vec![],
            Family::F12 => vec![AlgNum::Rational(u[0].clone())],
            _ => AlgNum::quadratic_roots(&Rat::one(), &-&u[0], &u[1]).to_vec(),
        };
        if let Ok(s) = SeedFamily::new(family, upper, vec![b1.clone(), b2.clone()]) {
            out.push((s, lambda.clone()));
        }
    }
    out
}

/// Solves `target = t0 + Σ u_i (dirs_i - t0)` coefficientwise.
fn solve_affine(target: &Invariants, t0: &Invariants, dirs: &[Invariants]) -> Option<Vec<Rat>> {
    let parts = |inv: &Invariants| -> Option<[BTreeMap<i64, Rat>; 2]> {
        Some([laurent_terms(&inv.i1)?, laurent_terms(&inv.i0)?])
    };
    let tgt = parts(target)?;
    let base = parts(t0)?;
    let ds: Vec<[BTreeMap<i64, Rat>; 2]> = dirs.iter().map(parts).collect::<Option<_>>()?;
    let mut keys = std::collections::BTreeSet::new();
    for p in std::iter::once(&tgt)
        .chain(std::iter::once(&base))
        .chain(ds.iter())
    {
        for (w, m) in p.iter().enumerate() {
            keys.extend(m.keys().map(|e| (w, *e)));
        }
    }
    let get = |p: &[BTreeMap<i64, Rat>; 2], (w, e): (usize, i64)| {
        p[w].get(&e).cloned().unwrap_or_else(Rat::zero)
    };
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for k in keys {
        let b0 = get(&base, k);
        rows.push(ds.iter().map(|d| get(d, k) - &b0).collect::<Vec<_>>());
        rhs.push(get(&tgt, k) - b0);
    }
    if dirs.is_empty() {
        return rhs.iter().all(|v| v.is_zero()).then(Vec::new);
    }
    match solve_linear(&rows, &rhs) {
        LinearSolution::Unique(v) => Some(v),
        _ => None,
    }
}

fn match_3f2(hat: &Invariants) -> Vec<(SeedFamily, Rat)> {
    let mut out = Vec::new();
    let (Ok(at0), Ok(at1), Ok(at_inf)) = (
        indicial_roots(hat, &Location::Finite(Rat::zero())),
        indicial_roots(hat, &Location::Finite(Rat::one())),
        indicial_roots(hat, &Location::Infinity),
    ) else {
        return out;
    };
    let mut shifts: Vec<Rat> = Vec::new();
    for k in 0..3 {
        for i in 0..3 {
            for i2 in 0..3 {
                if i == k || i2 == k || i == i2 {
                    continue;
                }
                if &at1[i2] - &at1[i] != AlgNum::one() {
                    continue;
                }
                if let Some(s) = (&at1[k] - &at1[i]).as_rational() {
                    if !shifts.contains(s) {
                        shifts.push(s.clone());
                    }
                }
            }
        }
    }
    for (b1, b2, lo) in lower_choices(&at0) {
        for s in &shifts {
            let s1 = &lo[0] - s;
            let adj = AlgNum::Rational(&s1 / r(3) - r(1));
            let upper: Vec<AlgNum> = at_inf.iter().map(|e| e + &adj).collect();
            if let Ok(sf) = SeedFamily::new(Family::F32, upper, vec![b1.clone(), b2.clone()]) {
                out.push((sf, Rat::one()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat, rint};
    use crate::algebra::Poly;
    use crate::equiv::moebius::moebius_candidates;
    use crate::ode::singularity_profile;

    fn recover(s: &SeedFamily, m: &Moebius) -> Vec<ParamMatch> {
        let inv = seed(s).unwrap().invariants().transform(&m.to_ratfn());
        let prof = singularity_profile(&inv);
        let mut all = Vec::new();
        for c in moebius_candidates(&prof, s.family).unwrap() {
            all.extend(match_parameters(&inv, s.family, &c));
        }
        all
    }

    #[test]
    fn identity_recovers_every_family() {
        let m = Moebius::new(rint(3), rint(1), rint(1), rint(-2));
        for s in [
            SeedFamily::f0f2(rat(1, 3), rat(-5, 7)),
            SeedFamily::f1f2(rat(2, 3), rat(1, 5), rat(7, 4)),
            SeedFamily::f2f2(rat(1, 3), rat(2, 7), rat(5, 4), rat(-3, 5)),
            SeedFamily::f3f2(rat(1, 3), rat(2, 7), rat(5, 4), rat(-3, 5), rat(7, 9)),
        ] {
            let found = recover(&s, &m);
            assert!(
                found
                    .iter()
                    .any(|p| p.seed == s.canonical() && p.moebius == m),
                "{s}: {found:?}"
            );
        }
    }

    #[test]
    fn conjugate_upper_parameters() {
        let [a, b] = AlgNum::quadratic_roots(&rint(1), &rint(-1), &rint(-3));
        let s = SeedFamily::new(
            Family::F22,
            vec![a, b],
            vec![rat(1, 3).into(), rat(3, 4).into()],
        )
        .unwrap();
        let m = Moebius::new(rint(1), rint(1), rint(2), rint(-1));
        assert!(recover(&s, &m).iter().any(|p| p.seed == s.canonical()));
    }

    #[test]
    fn laurent_reads_monomial_denominators() {
        let f = RatFn::new(Poly::from_i64(&[3, 0, 5]), Poly::from_i64(&[0, 0, 1]));
        assert_eq!(laurent(&f, -2), Some(rint(3)));
        assert_eq!(laurent(&f, 0), Some(rint(5)));
        assert_eq!(laurent(&f, -1), Some(rint(0)));
    }
}
