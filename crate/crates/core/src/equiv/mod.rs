//! Equivalence under `x -> (a x^k + b)/(c x^k + d)` and gauge transformations.

pub mod classify;
pub mod indicial;
pub mod matching;
pub mod moebius;
pub mod power;
#[rustfmt::skip]
mod signature_table;

use thiserror::Error;

use crate::algebra::{Rat, RatFn};
use crate::ode::{j_invariants, seed, singularity_profile, Invariants, SeedFamily};
use crate::trace::Trace;

pub use classify::{classify, generate_signature_table, katz_rank, FamilySignature};
pub use indicial::indicial_roots;
pub use matching::{match_parameters, ParamMatch};
pub use moebius::{moebius_candidates, Moebius, MoebiusCandidate};
pub use power::power_minimize;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EquivError {
    #[error("both shifted invariants are constant")]
    BothConstant,
    #[error("invariants are constant (exponential solutions, outside the hypergeometric classes)")]
    ConstantInvariants,
    #[error("singularity signature matches no seed family ({0})")]
    NoCandidateFamily(String),
    #[error("a singular point is not rational")]
    UnresolvedSingularity,
    #[error("local exponents are irrational beyond quadratic")]
    IrrationalBeyondQuadratic,
    #[error("no parameter assignment reproduces the invariants")]
    NoMatch,
}

impl EquivError {
    /// Pipeline stage that produced the failure.
    pub fn stage(&self) -> &'static str {
        match self {
            EquivError::BothConstant | EquivError::ConstantInvariants => "power_minimize",
            EquivError::NoCandidateFamily(_) => "classify",
            EquivError::UnresolvedSingularity => "moebius_candidates",
            EquivError::IrrationalBeyondQuadratic | EquivError::NoMatch => "match_parameters",
        }
    }
}

/// `inv = T(seed invariants, M(x^k))`, checked on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivPM {
    pub power: u32,
    pub moebius: Moebius,
    pub family: SeedFamily,
    pub lambda: Rat,
}

impl EquivPM {
    pub fn new(
        power: u32,
        moebius: Moebius,
        family: SeedFamily,
        lambda: Rat,
        inv: &Invariants,
    ) -> Option<EquivPM> {
        let e = EquivPM {
            power,
            moebius,
            family,
            lambda,
        };
        e.check(inv).then_some(e)
    }

    /// `x -> M(x^k)`.
    pub fn map(&self) -> RatFn {
        self.moebius
            .to_ratfn()
            .compose(&RatFn::x().pow(self.power as i32))
    }

    pub fn check(&self, inv: &Invariants) -> bool {
        match seed(&self.family) {
            Ok(ode) => ode.invariants().transform(&self.map()) == *inv,
            Err(_) => false,
        }
    }
}

fn divisors_desc(k: u32) -> Vec<u32> {
    (1..=k).rev().filter(|d| k % d == 0).collect()
}

/// All verified power+Moebius identifications, in candidate order. Tries the
/// maximal power first and falls back to its divisors.
pub fn equiv_power_moebius(
    inv: &Invariants,
    trace: &mut Trace,
) -> Result<Vec<EquivPM>, EquivError> {
    if inv.is_constant() {
        return Err(EquivError::ConstantInvariants);
    }
    let j = j_invariants(inv);
    let (kmax, _) = power_minimize(&j)?;
    trace.push("power_minimize", format!("k = {kmax}"));
    let mut last = EquivError::NoMatch;
    for k in divisors_desc(kmax) {
        let jm = power::contract(&j, k);
        let inv_min = jm.to_invariants();
        let profile = singularity_profile(&inv_min);
        let summary: Vec<String> = profile
            .points
            .iter()
            .map(|p| format!("{} {:?} {:?}", p.location, p.kind, p.pole_orders))
            .collect();
        trace.push(
            "singularity_profile",
            format!("k = {k}: [{}]", summary.join("; ")),
        );
        let families = classify(&profile, &inv_min);
        trace.push(
            "classify",
            format!(
                "candidates {:?}",
                families.iter().map(|f| f.name()).collect::<Vec<_>>()
            ),
        );
        if families.is_empty() {
            last = EquivError::NoCandidateFamily(summary.join("; "));
            continue;
        }
        let mut found = Vec::new();
        let mut stage_err = None;
        for fam in families {
            let cands = match moebius_candidates(&profile, fam) {
                Ok(c) => c,
                Err(e) => {
                    trace.push("moebius_candidates", format!("{fam}: {e}"));
                    stage_err = Some(e);
                    continue;
                }
            };
            for c in cands {
                let matches = match_parameters(&inv_min, fam, &c);
                trace.push(
                    "match_parameters",
                    format!("{fam} via {}: {} verified", c.base, matches.len()),
                );
                for m in matches {
                    if let Some(e) = EquivPM::new(k, m.moebius, m.seed, m.lambda, inv) {
                        if !found.contains(&e) {
                            found.push(e);
                        }
                    }
                }
            }
        }
        if !found.is_empty() {
            return Ok(found);
        }
        last = stage_err.unwrap_or(EquivError::NoMatch);
    }
    Err(last)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat, rint};
    use crate::algebra::Poly;
    use crate::ode::Ode3;

    fn rf(n: &[i64], d: &[i64]) -> RatFn {
        RatFn::new(Poly::from_i64(n), Poly::from_i64(d))
    }

    #[test]
    fn random_2f2_through_fifth_power() {
        let s = SeedFamily::f2f2(rat(1, 3), rat(2, 7), rat(5, 4), rat(-3, 5));
        let map = rf(&[1, 0, 0, 0, 0, 3], &[-2, 0, 0, 0, 0, 1]);
        let ode = seed(&s).unwrap().substitute(&map).gauge(&rf(&[1], &[3, 1]));
        let found = equiv_power_moebius(&ode.invariants(), &mut Trace::new()).unwrap();
        let hit = found
            .iter()
            .find(|e| e.family == s.canonical())
            .expect("planted family");
        assert_eq!(hit.power, 5);
        assert_eq!(hit.map(), map);
    }

    #[test]
    fn constant_invariants() {
        let ode = Ode3::new(RatFn::zero(), RatFn::zero(), RatFn::from_int(-1));
        assert_eq!(
            equiv_power_moebius(&ode.invariants(), &mut Trace::new()),
            Err(EquivError::ConstantInvariants)
        );
    }

    #[test]
    fn composed_argument_of_first_example() {
        let x = RatFn::x();
        let x2 = &x * &x;
        let c2 = RatFn::new(
            Poly::from_coeffs([rat(-37, 12), rint(0), rint(9)]),
            Poly::from_i64(&[0, -1, 0, 1]),
        );
        let c1 = RatFn::new(
            Poly::from_coeffs([rat(11, 4), rint(0), rint(15)]),
            Poly::from_i64(&[0, 0, -1, 0, 1]),
        );
        let c0 = &RatFn::from_int(16) / &(&x * &(&x2 - &RatFn::one()).pow(4));
        let ode = Ode3::new(c2, c1, c0);
        let found = equiv_power_moebius(&ode.invariants(), &mut Trace::new()).unwrap();
        let want = SeedFamily::f0f2(rint(2), rat(1, 24)).canonical();
        let hit = found
            .iter()
            .find(|e| e.family == want)
            .expect("0F2(2, 1/24)");
        assert_eq!(hit.power, 2);
        assert_eq!(hit.map(), rf(&[0, 0, 2], &[-1, 0, 1]));
    }
}
