use crate::algebra::{Poly, Rat, RatFn};

use super::RatminError;

/// `L̃` with `L = L̃ ∘ F`, via `F`-adic expansion of numerator and
/// denominator in the basis `p^i q^(n-i)`.
pub fn decompose_through(l: &RatFn, f: &RatFn) -> Result<RatFn, RatminError> {
    if f.is_constant() {
        return Err(RatminError::NoDecomposition);
    }
    let m = f.rational_degree();
    let dl = l.rational_degree();
    if dl % m != 0 {
        return Err(RatminError::NoDecomposition);
    }
    let n = dl / m;
    // Post-compose with a Moebius map so that the numerator has the larger
    // degree; the basis degrees i*m + (n-i)*deg q are then distinct.
    let (mu_inv, g) = if f.num().deg() > f.den().deg() {
        (None, f.clone())
    } else {
        let v = if f.num().deg() == f.den().deg() {
            f.num().lc() / f.den().lc()
        } else {
            Rat::from_integer(0.into())
        };
        // g = 1/(F - v), F = v + 1/g
        let g = (f - &RatFn::constant(v.clone())).recip();
        (Some(v), g)
    };
    let (p, q) = (g.num(), g.den());
    let a = expand(l.num(), p, q, n).ok_or(RatminError::NoDecomposition)?;
    let b = expand(l.den(), p, q, n).ok_or(RatminError::NoDecomposition)?;
    if b.is_zero() {
        return Err(RatminError::NoDecomposition);
    }
    let lg = RatFn::new(a, b);
    let out = match mu_inv {
        None => lg,
        // L = lg(g) and g = 1/(F - v), so L̃(y) = lg(1/(y - v))
        Some(v) => {
            let inner = (&RatFn::x() - &RatFn::constant(v)).recip();
            lg.compose(&inner)
        }
    };
    if out.compose(f) != *l {
        return Err(RatminError::NoDecomposition);
    }
    Ok(out)
}

/// Coefficients `a_i` with `target = sum a_i p^i q^(n-i)`, if they exist.
fn expand(target: &Poly, p: &Poly, q: &Poly, n: u32) -> Option<Poly> {
    let m = p.deg();
    let dq = q.deg();
    let mut rest = target.clone();
    let mut coeffs = vec![Rat::from_integer(0.into()); n as usize + 1];
    for i in (0..=n).rev() {
        let basis = &p.pow(i) * &q.pow(n - i);
        let e = i * m + (n - i) * dq;
        let c = rest.coeff(e) / basis.lc();
        if c != Rat::from_integer(0.into()) {
            rest = &rest - &basis.scale(&c);
            coeffs[i as usize] = c;
        }
    }
    rest.is_zero().then(|| Poly::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat::rint, solve_linear, LinearSolution};

    fn rf(n: &[i64], d: &[i64]) -> RatFn {
        RatFn::new(Poly::from_i64(n), Poly::from_i64(d))
    }

    /// Undetermined coefficients: `N_L * B_h(p, q) - D_L * A_h(p, q) = 0`.
    fn oracle(l: &RatFn, f: &RatFn) -> Option<RatFn> {
        let n = l.rational_degree() / f.rational_degree();
        let (p, q) = (f.num(), f.den());
        let basis: Vec<Poly> = (0..=n).map(|i| &p.pow(i) * &q.pow(n - i)).collect();
        let cols: Vec<Poly> = basis
            .iter()
            .map(|b| -(l.den() * b))
            .chain(basis.iter().map(|b| l.num() * b))
            .collect();
        let rows = cols.iter().map(|c| c.deg()).max().unwrap() + 1;
        let mat: Vec<Vec<Rat>> = (0..rows)
            .map(|r| cols.iter().map(|c| c.coeff(r)).collect())
            .collect();
        let rhs = vec![rint(0); rows as usize];
        let LinearSolution::Parametric { nullspace, .. } = solve_linear(&mat, &rhs) else {
            return None;
        };
        let v = nullspace.first()?;
        let k = n as usize + 1;
        let a = Poly::from_coeffs(v[..k].iter().cloned());
        let b = Poly::from_coeffs(v[k..].iter().cloned());
        Some(RatFn::new(a, b))
    }

    #[test]
    fn against_oracle() {
        let cases = [
            (rf(&[1, 0, 0, 0, 1], &[0, 0, 1]), rf(&[0, 0, 1], &[1])),
            (
                rf(&[0, 0, 0, 0, 0, 0, 1], &[1]),
                rf(&[-4, 0, 1], &[-9, 0, 1]),
            ),
            (
                rf(&[1, 2, 0, 1], &[3, -1, 0, 0, 0, 0, 1]),
                rf(&[1, 1], &[0, 1]),
            ),
        ];
        for (inner_l, f) in cases {
            let l = inner_l.compose(&f);
            let got = decompose_through(&l, &f).unwrap();
            assert_eq!(got.compose(&f), l);
            assert_eq!(Some(got), oracle(&l, &f));
        }
    }

    #[test]
    fn rejects_non_decomposable() {
        let l = rf(&[1, 1, 1, 0, 1], &[1]);
        assert_eq!(
            decompose_through(&l, &rf(&[0, 0, 1], &[1])),
            Err(RatminError::NoDecomposition)
        );
        assert_eq!(
            decompose_through(&RatFn::x().pow(3), &RatFn::x().pow(2)),
            Err(RatminError::NoDecomposition)
        );
    }
}
