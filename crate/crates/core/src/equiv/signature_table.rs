// @generated by `cargo run -p hyperode --example gen_tables`; do not edit.
// Sampled: 6 parameter tuples x 6 Moebius placements per family.

use crate::ode::Family;

use super::classify::FamilySignature;

pub const SIGNATURES: &[FamilySignature] = &[
    FamilySignature {
        family: Family::F32,
        regular_points: 3,
        irregular_points: 0,
        regular_orders: &[(2, 3)],
        irregular_orders: &[],
        katz_rank: None,
    },
    FamilySignature {
        family: Family::F22,
        regular_points: 1,
        irregular_points: 1,
        regular_orders: &[(2, 3)],
        irregular_orders: &[(4, 6)],
        katz_rank: Some((1, 1)),
    },
    FamilySignature {
        family: Family::F12,
        regular_points: 1,
        irregular_points: 1,
        regular_orders: &[(2, 3)],
        irregular_orders: &[(3, 4)],
        katz_rank: Some((1, 2)),
    },
    FamilySignature {
        family: Family::F02,
        regular_points: 1,
        irregular_points: 1,
        regular_orders: &[(2, 3)],
        irregular_orders: &[(2, 4)],
        katz_rank: Some((1, 3)),
    },
];
