use num_integer::Integer;

use crate::algebra::{Rat, RatFn};
use crate::ode::JInv;

use super::EquivError;

/// Largest `k` with both shifted invariants functions of `x^k`, and the pair
/// they come from: `J1(x) = J̃1(x^{1/k})/k^2`, `J2(x) = J̃2(x^{1/k})/k^3`.
pub fn power_minimize(j: &JInv) -> Result<(u32, JInv), EquivError> {
    let k = match (j.j1.exponent_support_gcd(), j.j2.exponent_support_gcd()) {
        (None, None) => return Err(EquivError::BothConstant),
        (Some(a), None) | (None, Some(a)) => a,
        (Some(a), Some(b)) => a.gcd(&b),
    };
    Ok((k, contract(j, k)))
}

/// Undoes the power rule for a given `k` dividing the exponent lattice.
pub fn contract(j: &JInv, k: u32) -> JInv {
    if k == 1 {
        return j.clone();
    }
    let kk = Rat::from_integer(k.into());
    JInv {
        j1: contracted(&j.j1, k).scale(&(&kk * &kk).recip()),
        j2: contracted(&j.j2, k).scale(&(&kk * &kk * &kk).recip()),
    }
}

fn contracted(f: &RatFn, k: u32) -> RatFn {
    if f.is_constant() {
        return f.clone();
    }
    f.contract_exponents(k)
        .expect("k divides the exponent lattice")
}

/// The forward rule `J̃1 = k^2 J1(x^k)`, `J̃2 = k^3 J2(x^k)`.
pub fn expand(j: &JInv, k: u32) -> JInv {
    let kk = Rat::from_integer(k.into());
    JInv {
        j1: j.j1.expand_exponents(k).scale(&(&kk * &kk)),
        j2: j.j2.expand_exponents(k).scale(&(&kk * &kk * &kk)),
    }
}
