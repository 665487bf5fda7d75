use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::{AlgNum, RatFn};
use crate::ode::{Family, SeedFamily};

use super::basis_table::BASIS_TABLE;
use super::expr::{cancel_params, Expr, MeijerG};

/// `constant + Σ coeffs[i] * params[i]` over the flat parameter list
/// (upper first, then lower).
#[derive(Clone, Copy, Debug)]
pub struct Affine(pub i64, pub &'static [i64]);

impl Affine {
    pub fn eval(&self, params: &[AlgNum]) -> AlgNum {
        let mut acc = AlgNum::int(self.0);
        for (c, p) in self.1.iter().zip(params) {
            if *c != 0 {
                acc = acc + p * &AlgNum::int(*c);
            }
        }
        acc
    }
}

/// One Frobenius solution at the origin: `x^exponent * pFq(upper; lower; x)`.
#[derive(Clone, Copy, Debug)]
pub struct SlotShape {
    pub exponent: Affine,
    pub upper: &'static [Affine],
    pub lower: &'static [Affine],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "of")]
pub enum SlotStatus {
    Native,
    /// A lower parameter is a non-positive integer after order reduction.
    Missing,
    /// Coincides with the given (1-based) earlier slot.
    Duplicate(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisElement {
    pub slot: usize,
    pub status: SlotStatus,
    pub meijerg_replacement: bool,
    pub expr: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    pub family: SeedFamily,
    pub elements: Vec<BasisElement>,
}

fn shapes(family: Family) -> &'static [SlotShape; 3] {
    &BASIS_TABLE
        .iter()
        .find(|(name, _)| *name == family.name())
        .expect("family in basis table")
        .1
}

/// The native slot as `(exponent, reduced upper, reduced lower)`.
pub fn native_slot(family: &SeedFamily, slot: usize) -> (AlgNum, Vec<AlgNum>, Vec<AlgNum>) {
    let params = family.params();
    let sh = &shapes(family.family)[slot - 1];
    let up: Vec<AlgNum> = sh.upper.iter().map(|a| a.eval(&params)).collect();
    let lo: Vec<AlgNum> = sh.lower.iter().map(|a| a.eval(&params)).collect();
    let (up, lo) = cancel_params(&up, &lo);
    (sh.exponent.eval(&params), up, lo)
}

/// Slot flags; order reduction is applied before the degeneracy tests.
pub fn detect_special(family: &SeedFamily) -> [SlotStatus; 3] {
    let slots: Vec<_> = (1..=3).map(|j| native_slot(family, j)).collect();
    let mut out = [SlotStatus::Native; 3];
    for j in 0..3 {
        if slots[j].2.iter().any(AlgNum::is_nonpositive_integer) {
            out[j] = SlotStatus::Missing;
        } else if let Some(i) =
            (0..j).find(|&i| out[i] == SlotStatus::Native && slots[i] == slots[j])
        {
            out[j] = SlotStatus::Duplicate(i + 1);
        }
    }
    out
}

fn one_minus(a: &AlgNum) -> AlgNum {
    AlgNum::one() - a
}

/// Table of Meijer G replacements; the column equals the slot.
pub fn meijerg_replacement(family: &SeedFamily, slot: usize) -> Expr {
    let x = RatFn::x();
    let neg_x = -&x;
    let a: Vec<AlgNum> = match family.family {
        Family::F02 => vec![],
        Family::F12 => vec![one_minus(&family.upper[0])],
        Family::F22 => vec![one_minus(&family.upper[1]), one_minus(&family.upper[0])],
        Family::F32 => vec![
            one_minus(&family.upper[1]),
            one_minus(&family.upper[0]),
            one_minus(&family.upper[2]),
        ],
    };
    let l0 = one_minus(&family.lower[0]);
    let l1 = one_minus(&family.lower[1]);
    let z = AlgNum::zero();
    // per family: (second b entry, third b entry) of the first column
    let (b1, b2) = match family.family {
        Family::F02 | Family::F32 => (l0.clone(), l1.clone()),
        Family::F12 => (l0.clone(), l1.clone()),
        Family::F22 => (l1.clone(), l0.clone()),
    };
    let n = a.len();
    let g = match slot {
        1 => MeijerG::new(2, n, a, vec![z, b1, b2], x),
        2 => {
            let (c1, c2) = match family.family {
                Family::F12 => (l1.clone(), l0.clone()),
                _ => (b1, b2),
            };
            MeijerG::new(3, n, a, vec![z, c1, c2], neg_x)
        }
        3 => {
            let (c1, c2) = match family.family {
                Family::F02 | Family::F32 => (l0, l1),
                Family::F12 | Family::F22 => (l1, l0),
            };
            MeijerG::new(2, n, a, vec![c1, c2, z], x)
        }
        _ => panic!("slot out of range"),
    };
    Expr::MeijerG(g)
}

/// Index of the lower parameter that the first Meijer G column pairs
/// with `0` in its leading b-group.
fn first_column_lower(family: Family) -> usize {
    match family {
        Family::F22 => 1,
        _ => 0,
    }
}

/// When the first slot is missing because of one lower parameter, orders the
/// lower pair so that parameter is the one the first column pairs with `0`.
fn relabel(family: &SeedFamily) -> SeedFamily {
    let (_, _, lo) = native_slot(family, 1);
    if !lo.iter().any(AlgNum::is_nonpositive_integer) {
        return family.clone();
    }
    let k = first_column_lower(family.family);
    let bad = |a: &AlgNum| a.is_nonpositive_integer() && lo.contains(a);
    if bad(&family.lower[k]) || !bad(&family.lower[1 - k]) {
        return family.clone();
    }
    let mut f = family.clone();
    f.lower.swap(0, 1);
    f
}

fn native_expr(exponent: AlgNum, up: Vec<AlgNum>, lo: Vec<AlgNum>) -> Expr {
    let series = Expr::pfq(up, lo, RatFn::x()).expect("native slot has valid lower parameters");
    Expr::product(vec![Expr::power(Expr::Variable, exponent), series])
}

/// Three solutions at the origin, Meijer G replacements in flagged slots.
pub fn seed_basis(family: &SeedFamily) -> Basis {
    let fam = relabel(family);
    let flags = detect_special(&fam);
    let elements = (1..=3)
        .map(|slot| {
            let status = flags[slot - 1];
            let (expr, repl) = match status {
                SlotStatus::Native => {
                    let (e, up, lo) = native_slot(&fam, slot);
                    (native_expr(e, up, lo), false)
                }
                _ => (meijerg_replacement(&fam, slot).reduce_order(), true),
            };
            BasisElement {
                slot,
                status,
                meijerg_replacement: repl,
                expr,
            }
        })
        .collect();
    Basis {
        family: fam,
        elements,
    }
}

/// Source of `basis_table.rs`: Frobenius solutions of
/// `θ(θ+b1-1)(θ+b2-1) y = x Π(θ+a_i) y` derived with affine parameter
/// arithmetic. Exponents are the indicial roots `0, 1-b2, 1-b1`; for root
/// `ρ` the recurrence `c_{n+1}/c_n = Π(n+ρ+a_i) / Π_r(n+1+ρ-r)` gives upper
/// parameters `a_i+ρ` and lower parameters `1+ρ-r` over the other roots.
pub fn generate_basis_table() -> String {
    type Aff = (i64, Vec<i64>);
    fn unit(n: usize, i: usize) -> Aff {
        let mut v = vec![0; n];
        v[i] = 1;
        (0, v)
    }
    fn add(a: &Aff, b: &Aff) -> Aff {
        (
            a.0 + b.0,
            a.1.iter().zip(&b.1).map(|(x, y)| x + y).collect(),
        )
    }
    fn neg(a: &Aff) -> Aff {
        (-a.0, a.1.iter().map(|x| -x).collect())
    }
    fn konst(n: usize, c: i64) -> Aff {
        (c, vec![0; n])
    }
    fn render(a: &Aff) -> String {
        format!("Affine({}, &{:?})", a.0, a.1)
    }
    let mut out = String::new();
    out.push_str("// @generated by `cargo run -p hyperode --example gen_tables`; do not edit.\n\n");
    out.push_str("use super::basis::{Affine, SlotShape};\n\n");
    out.push_str("pub static BASIS_TABLE: &[(&str, [SlotShape; 3])] = &[\n");
    for fam in Family::ALL {
        let (p, _) = fam.pq();
        let n = p + 2;
        let upper: Vec<Aff> = (0..p).map(|i| unit(n, i)).collect();
        let (b1, b2) = (unit(n, p), unit(n, p + 1));
        let one = konst(n, 1);
        let roots = [konst(n, 0), add(&one, &neg(&b1)), add(&one, &neg(&b2))];
        let _ = writeln!(out, "    (\n        \"{}\",\n        [", fam.name());
        for &ri in &[0usize, 2, 1] {
            let rho = &roots[ri];
            let up: Vec<String> = upper.iter().map(|a| render(&add(a, rho))).collect();
            let lo: Vec<String> = (0..3)
                .filter(|&j| j != ri)
                .map(|j| render(&add(&add(&one, rho), &neg(&roots[j]))))
                .collect();
            let _ = writeln!(
                out,
                "            SlotShape {{ exponent: {}, upper: &[{}], lower: &[{}] }},",
                render(rho),
                up.join(", "),
                lo.join(", ")
            );
        }
        out.push_str("        ],\n    ),\n");
    }
    out.push_str("];\n");
    out
}
