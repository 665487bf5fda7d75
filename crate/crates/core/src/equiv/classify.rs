use std::collections::BTreeSet;
use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgNum, Rat};
use crate::ode::{
    seed, singularity_profile, Family, Invariants, SeedFamily, SingularPoint, SingularityProfile,
};

use super::moebius::Moebius;
use super::signature_table::SIGNATURES;

/// Singularity signature of one seed family, as observed over random
/// parameters and Moebius placements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySignature {
    pub family: Family,
    pub regular_points: usize,
    pub irregular_points: usize,
    /// Observed `(I1, I0)` pole orders at regular points.
    pub regular_orders: &'static [(u32, u32)],
    /// Observed `(I1, I0)` pole orders at the irregular point.
    pub irregular_orders: &'static [(u32, u32)],
    /// Katz rank of the irregular point as `(numerator, denominator)`.
    pub katz_rank: Option<(u32, u32)>,
}

/// `max((o1 - 2)/2, (o0 - 3)/3)` clamped at zero.
pub fn katz_rank(orders: (u32, u32)) -> Rat {
    let a = Rat::new((orders.0 as i64 - 2).into(), 2.into());
    let b = Rat::new((orders.1 as i64 - 3).into(), 3.into());
    a.max(b).max(Rat::from_integer(0.into()))
}

/// Families whose signature matches the profile of a power-minimized
/// equation, in table order.
pub fn classify(profile: &SingularityProfile, _inv: &Invariants) -> Vec<Family> {
    let reg = profile.regular().count();
    let irr: Vec<&SingularPoint> = profile.irregular().collect();
    SIGNATURES
        .iter()
        .filter(|s| s.regular_points == reg && s.irregular_points == irr.len())
        .filter(|s| match s.katz_rank {
            None => true,
            Some((n, d)) => {
                let want = Rat::new(n.into(), d.into());
                irr.iter().all(|p| katz_rank(p.pole_orders) == want)
            }
        })
        .map(|s| s.family)
        .collect()
}

fn random_param(rng: &mut ChaCha8Rng) -> AlgNum {
    loop {
        let n: i64 = rng.gen_range(-12..=12);
        let d: i64 = rng.gen_range(2..=7);
        let r = Rat::new(n.into(), d.into());
        if !r.is_integer() {
            return AlgNum::Rational(r);
        }
    }
}

fn random_moebius(rng: &mut ChaCha8Rng) -> Moebius {
    loop {
        let v: Vec<i64> = (0..4).map(|_| rng.gen_range(-4..=4)).collect();
        if v[0] * v[3] - v[1] * v[2] != 0 {
            let r = |i: usize| Rat::from_integer(v[i].into());
            return Moebius::new(r(0), r(1), r(2), r(3));
        }
    }
}

fn random_seed(family: Family, rng: &mut ChaCha8Rng) -> SeedFamily {
    let (p, q) = family.pq();
    let params = (0..p + q).map(|_| random_param(rng)).collect();
    SeedFamily::from_params(family, params).unwrap()
}

/// Source text of the signature table, regenerated from random seeds.
pub fn generate_signature_table() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_7ab1e);
    let mut out = String::new();
    writeln!(
        out,
        "// @generated by `cargo run -p hyperode --example gen_tables`; do not edit."
    )
    .unwrap();
    writeln!(
        out,
        "// Sampled: 6 parameter tuples x 6 Moebius placements per family."
    )
    .unwrap();
    writeln!(out).unwrap();
    writeln!(out, "use crate::ode::Family;").unwrap();
    writeln!(out).unwrap();
    writeln!(out, "use super::classify::FamilySignature;").unwrap();
    writeln!(out).unwrap();
    writeln!(out, "pub const SIGNATURES: &[FamilySignature] = &[").unwrap();
    for family in Family::ALL {
        let mut counts = BTreeSet::new();
        let mut reg_orders = BTreeSet::new();
        let mut irr_orders = BTreeSet::new();
        let mut ranks = BTreeSet::new();
        for _ in 0..6 {
            let s = random_seed(family, &mut rng);
            let inv = seed(&s).unwrap().invariants();
            for _ in 0..6 {
                let m = random_moebius(&mut rng);
                let prof = singularity_profile(&inv.transform(&m.to_ratfn()));
                counts.insert((prof.regular().count(), prof.irregular().count()));
                reg_orders.extend(prof.regular().map(|p| p.pole_orders));
                for p in prof.irregular() {
                    irr_orders.insert(p.pole_orders);
                    ranks.insert(katz_rank(p.pole_orders));
                }
            }
        }
        assert_eq!(counts.len(), 1, "{family}: point counts vary over samples");
        assert!(ranks.len() <= 1, "{family}: Katz rank varies over samples");
        let (reg, irr) = counts.into_iter().next().unwrap();
        let list = |s: &BTreeSet<(u32, u32)>| {
            s.iter()
                .map(|(a, b)| format!("({a}, {b})"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let rank = match ranks.into_iter().next() {
            None => "None".to_string(),
            Some(r) => format!("Some(({}, {}))", r.numer(), r.denom()),
        };
        writeln!(out, "    FamilySignature {{").unwrap();
        writeln!(out, "        family: Family::{family:?},").unwrap();
        writeln!(out, "        regular_points: {reg},").unwrap();
        writeln!(out, "        irregular_points: {irr},").unwrap();
        writeln!(out, "        regular_orders: &[{}],", list(&reg_orders)).unwrap();
        writeln!(out, "        irregular_orders: &[{}],", list(&irr_orders)).unwrap();
        writeln!(out, "        katz_rank: {rank},").unwrap();
        writeln!(out, "    }},").unwrap();
    }
    writeln!(out, "];").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checked_in_table_is_current() {
        let current = include_str!("signature_table.rs");
        assert_eq!(current, generate_signature_table());
    }

    #[test]
    fn families_are_distinguished() {
        for (i, a) in SIGNATURES.iter().enumerate() {
            for b in &SIGNATURES[i + 1..] {
                assert!(
                    (a.regular_points, a.irregular_points, a.katz_rank)
                        != (b.regular_points, b.irregular_points, b.katz_rank)
                );
            }
        }
    }

    #[test]
    fn four_points_match_nothing() {
        use crate::algebra::rat::rint;
        use crate::ode::{Location, PointKind};
        let points = (0..4)
            .map(|i| SingularPoint {
                location: Location::Finite(rint(i)),
                kind: PointKind::Regular,
                pole_orders: (2, 3),
            })
            .collect();
        let prof = SingularityProfile { points };
        assert!(classify(
            &prof,
            &Invariants::new(crate::algebra::RatFn::zero(), crate::algebra::RatFn::zero())
        )
        .is_empty());
    }
}
