//! Exact dense linear systems over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::rat::{denom_lcm, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<Rat>),
    /// `particular + Σ t_i * nullspace[i]` for free `t_i`.
    Parametric {
        particular: Vec<Rat>,
        nullspace: Vec<Vec<Rat>>,
        rank: usize,
    },
    Inconsistent,
}

impl LinearSolution {
    /// Some solution, when one exists (free parameters set to zero).
    pub fn any(&self) -> Option<&[Rat]> {
        match self {
            LinearSolution::Unique(v) => Some(v),
            LinearSolution::Parametric { particular, .. } => Some(particular),
            LinearSolution::Inconsistent => None,
        }
    }
}

fn int_row(row: &[Rat], rhs: &Rat) -> Vec<BigInt> {
    let l = denom_lcm(row.iter().chain(std::iter::once(rhs)));
    let lr = Rat::from_integer(l);
    row.iter()
        .chain(std::iter::once(rhs))
        .map(|c| (c * &lr).to_integer())
        .collect()
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g > BigInt::from(1) {
        for c in row.iter_mut() {
            *c = &*c / &g;
        }
    }
}

/// Solves `matrix * v = rhs` by fraction-free elimination on integer rows.
pub fn solve_linear(matrix: &[Vec<Rat>], rhs: &[Rat]) -> LinearSolution {
    assert_eq!(matrix.len(), rhs.len(), "row count mismatch");
    let ncols = matrix.first().map_or(0, |r| r.len());
    let mut rows: Vec<Vec<BigInt>> = matrix
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            assert_eq!(r.len(), ncols, "ragged matrix");
            int_row(r, b)
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by_key(|&i| rows[i][col].abs())
        else {
            continue;
        };
        rows.swap(r, pr);
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let a = rows[r][col].clone();
            let b = rows[i][col].clone();
            let g = a.gcd(&b);
            let (fa, fb) = (&a / &g, &b / &g);
            let (src, dst) = if i < r {
                let (lo, hi) = rows.split_at_mut(r);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = rows.split_at_mut(i);
                (&lo[r], &mut hi[0])
            };
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                *d = &*d * &fa - s * &fb;
            }
            make_primitive(dst);
        }
        pivots.push(col);
        r += 1;
    }
    let rank = pivots.len();
    if rows[rank..].iter().any(|row| !row[ncols].is_zero()) {
        return LinearSolution::Inconsistent;
    }
    let mut particular = vec![Rat::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = Rat::new(rows[i][ncols].clone(), rows[i][c].clone());
    }
    if rank == ncols {
        return LinearSolution::Unique(particular);
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let nullspace = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::from_integer(1.into());
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -Rat::new(rows[i][f].clone(), rows[i][c].clone());
            }
            v
        })
        .collect();
    LinearSolution::Parametric {
        particular,
        nullspace,
        rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat, rint};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter()
            .map(|r| r.iter().map(|&c| rint(c)).collect())
            .collect()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(
            solve_linear(&m(&[&[1, 0], &[0, 1]]), &[rint(3), rint(4)]),
            LinearSolution::Unique(vec![rint(3), rint(4)])
        );
        match solve_linear(&m(&[&[1, 1]]), &[rint(2)]) {
            LinearSolution::Parametric {
                rank, nullspace, ..
            } => {
                assert_eq!(rank, 1);
                assert_eq!(nullspace.len(), 1);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            solve_linear(&m(&[&[1], &[1]]), &[rint(1), rint(2)]),
            LinearSolution::Inconsistent
        );
    }

    #[test]
    fn rational_entries() {
        let a = vec![vec![rat(1, 2), rat(1, 3)], vec![rat(2, 7), rint(-1)]];
        let x = [rat(5, 3), rat(-2, 9)];
        let b: Vec<Rat> = a.iter().map(|r| &r[0] * &x[0] + &r[1] * &x[1]).collect();
        assert_eq!(solve_linear(&a, &b), LinearSolution::Unique(x.to_vec()));
    }

    #[test]
    fn parametric_solutions_satisfy_system() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let b = [rint(10), rint(20), rint(2)];
        let LinearSolution::Parametric {
            particular,
            nullspace,
            rank,
        } = solve_linear(&a, &b)
        else {
            panic!()
        };
        assert_eq!(rank, 2);
        for v in std::iter::once(&particular).chain(nullspace.iter()) {
            let is_null = !std::ptr::eq(v, &particular);
            for (row, bi) in a.iter().zip(b.iter()) {
                let s: Rat = row.iter().zip(v).map(|(x, y)| x * y).sum();
                assert_eq!(s, if is_null { Rat::zero() } else { bi.clone() });
            }
        }
    }
}
