// @generated by `cargo run -p hyperode --example gen_tables`; do not edit.

use super::basis::{Affine, SlotShape};

pub static BASIS_TABLE: &[(&str, [SlotShape; 3])] = &[
    (
        "3F2",
        [
            SlotShape { exponent: Affine(0, &[0, 0, 0, 0, 0]), upper: &[Affine(0, &[1, 0, 0, 0, 0]), Affine(0, &[0, 1, 0, 0, 0]), Affine(0, &[0, 0, 1, 0, 0])], lower: &[Affine(0, &[0, 0, 0, 1, 0]), Affine(0, &[0, 0, 0, 0, 1])] },
            SlotShape { exponent: Affine(1, &[0, 0, 0, 0, -1]), upper: &[Affine(1, &[1, 0, 0, 0, -1]), Affine(1, &[0, 1, 0, 0, -1]), Affine(1, &[0, 0, 1, 0, -1])], lower: &[Affine(2, &[0, 0, 0, 0, -1]), Affine(1, &[0, 0, 0, 1, -1])] },
            SlotShape { exponent: Affine(1, &[0, 0, 0, -1, 0]), upper: &[Affine(1, &[1, 0, 0, -1, 0]), Affine(1, &[0, 1, 0, -1, 0]), Affine(1, &[0, 0, 1, -1, 0])], lower: &[Affine(2, &[0, 0, 0, -1, 0]), Affine(1, &[0, 0, 0, -1, 1])] },
        ],
    ),
    (
        "2F2",
        [
            SlotShape { exponent: Affine(0, &[0, 0, 0, 0]), upper: &[Affine(0, &[1, 0, 0, 0]), Affine(0, &[0, 1, 0, 0])], lower: &[Affine(0, &[0, 0, 1, 0]), Affine(0, &[0, 0, 0, 1])] },
            SlotShape { exponent: Affine(1, &[0, 0, 0, -1]), upper: &[Affine(1, &[1, 0, 0, -1]), Affine(1, &[0, 1, 0, -1])], lower: &[Affine(2, &[0, 0, 0, -1]), Affine(1, &[0, 0, 1, -1])] },
            SlotShape { exponent: Affine(1, &[0, 0, -1, 0]), upper: &[Affine(1, &[1, 0, -1, 0]), Affine(1, &[0, 1, -1, 0])], lower: &[Affine(2, &[0, 0, -1, 0]), Affine(1, &[0, 0, -1, 1])] },
        ],
    ),
    (
        "1F2",
        [
            SlotShape { exponent: Affine(0, &[0, 0, 0]), upper: &[Affine(0, &[1, 0, 0])], lower: &[Affine(0, &[0, 1, 0]), Affine(0, &[0, 0, 1])] },
            SlotShape { exponent: Affine(1, &[0, 0, -1]), upper: &[Affine(1, &[1, 0, -1])], lower: &[Affine(2, &[0, 0, -1]), Affine(1, &[0, 1, -1])] },
            SlotShape { exponent: Affine(1, &[0, -1, 0]), upper: &[Affine(1, &[1, -1, 0])], lower: &[Affine(2, &[0, -1, 0]), Affine(1, &[0, -1, 1])] },
        ],
    ),
    (
        "0F2",
        [
            SlotShape { exponent: Affine(0, &[0, 0]), upper: &[], lower: &[Affine(0, &[1, 0]), Affine(0, &[0, 1])] },
            SlotShape { exponent: Affine(1, &[0, -1]), upper: &[], lower: &[Affine(2, &[0, -1]), Affine(1, &[1, -1])] },
            SlotShape { exponent: Affine(1, &[-1, 0]), upper: &[], lower: &[Affine(2, &[-1, 0]), Affine(1, &[-1, 1])] },
        ],
    ),
];
