//! Fraction-free (Bareiss) elimination over the integers: rank, right null
//! space and inverse. Pivots are the first nonzero entry in column order, so
//! every result is deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

fn div_exact(a: BigInt, b: &BigInt) -> BigInt {
    if b.is_one() {
        return a;
    }
    let (q, r) = a.div_rem(b);
    assert!(r.is_zero(), "Bareiss division left a remainder");
    q
}

/// Row echelon form produced by fraction-free elimination.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: IntMatrix,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn echelon(mut m: IntMatrix, ncols: usize) -> Echelon {
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            if factor.is_zero() {
                if pivot != prev {
                    for x in row[c + 1..].iter_mut() {
                        if !x.is_zero() {
                            *x = div_exact(&pivot * &*x, &prev);
                        }
                    }
                }
                continue;
            }
            for j in c + 1..ncols {
                let v = &pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = div_exact(v, &prev);
            }
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    Echelon {
        rows: m,
        pivots,
        ncols,
    }
}

pub fn rank(m: &[Vec<BigInt>], ncols: usize) -> usize {
    echelon(m.to_vec(), ncols).rank()
}

/// Scales a rational vector to a primitive integer vector, keeping signs.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Basis of `{x : M x = 0}` as primitive integer vectors, one per free
/// column, each with a positive entry at its free column.
pub fn nullspace(m: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let ech = echelon(m.to_vec(), ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![BigRational::zero(); ncols];
        x[free] = BigRational::one();
        for (r, &p) in ech.pivots.iter().enumerate().rev() {
            let row = &ech.rows[r];
            let mut s = BigRational::zero();
            for j in p + 1..ncols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    s += &x[j] * BigRational::from_integer(row[j].clone());
                }
            }
            x[p] = -s / BigRational::from_integer(row[p].clone());
        }
        basis.push(primitive_integer_vector(&x));
    }
    basis
}

/// Fraction-free Gauss-Jordan on `[A | I]`. Returns `(N, d)` with
/// `A⁻¹ = N / d`, or `None` for a singular or non-square matrix.
pub fn inverse_scaled(a: &[Vec<BigInt>]) -> Option<(IntMatrix, BigInt)> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return None;
    }
    let width = 2 * n;
    let mut aug: IntMatrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            r
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !aug[i][k].is_zero())?;
        aug.swap(k, p);
        let pivot_row = aug[k].clone();
        let pivot = pivot_row[k].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let factor = std::mem::take(&mut row[k]);
            if factor.is_zero() {
                if pivot != prev {
                    for x in row.iter_mut() {
                        if !x.is_zero() {
                            *x = div_exact(&pivot * &*x, &prev);
                        }
                    }
                }
                continue;
            }
            for j in 0..width {
                if j == k {
                    continue;
                }
                if pivot_row[j].is_zero() {
                    if pivot != prev && !row[j].is_zero() {
                        row[j] = div_exact(&pivot * &row[j], &prev);
                    }
                    continue;
                }
                let v = &pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = div_exact(v, &prev);
            }
        }
        prev = pivot;
    }
    // The left block is now prev·I.
    let right = aug.into_iter().map(|row| row[n..].to_vec()).collect();
    Some((right, prev))
}

/// Exact inverse over ℚ.
pub fn inverse(a: &[Vec<BigInt>]) -> Option<Vec<Vec<BigRational>>> {
    let (num, d) = inverse_scaled(a)?;
    Some(
        num.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| BigRational::new(x, d.clone()))
                    .collect()
            })
            .collect(),
    )
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner)
                        .filter(|&t| !row[t].is_zero())
                        .map(|t| &row[t] * &b[t][j])
                        .sum()
                })
                .collect()
        })
        .collect()
}

pub fn is_identity(m: &[Vec<BigInt>]) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.len() == m.len()
            && row
                .iter()
                .enumerate()
                .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
    })
}

pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn is_nonzero(v: &[BigInt]) -> bool {
    v.iter().any(|x| !x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Rank by plain Gaussian elimination over ℚ.
    fn rational_rank(m: &[Vec<BigInt>], ncols: usize) -> usize {
        let mut q: Vec<Vec<BigRational>> = m
            .iter()
            .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
            .collect();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..q.len()).find(|&i| !q[i][c].is_zero()) else {
                continue;
            };
            q.swap(r, p);
            for i in r + 1..q.len() {
                let f = &q[i][c] / &q[r][c];
                let pivot_row = q[r].clone();
                for (x, y) in q[i][c..ncols].iter_mut().zip(&pivot_row[c..ncols]) {
                    *x -= &f * y;
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn d_matrix_2_2_kernel() {
        // D on {a0a2, a1^2} -> {a0a1}: images a0a1 and 2a0a1.
        let m = int_matrix(&[&[1, 2]]);
        let ns = nullspace(&m, 2);
        assert_eq!(ns, vec![vec![BigInt::from(-2), BigInt::from(1)]]);
    }

    #[test]
    fn empty_and_full_rank() {
        assert_eq!(nullspace(&[], 3).len(), 3);
        let id = int_matrix(&[&[1, 0], &[0, 1]]);
        assert!(nullspace(&id, 2).is_empty());
        assert_eq!(rank(&id, 2), 2);
    }

    #[test]
    fn inverse_of_beta_3_3() {
        let beta = int_matrix(&[&[1, 0, 0], &[3, 1, 0], &[6, 3, 1]]);
        let (n, d) = inverse_scaled(&beta).unwrap();
        assert!(d.is_one());
        assert_eq!(n, int_matrix(&[&[1, 0, 0], &[-3, 1, 0], &[3, -3, 1]]));
    }

    #[test]
    fn singular_has_no_inverse() {
        assert!(inverse_scaled(&int_matrix(&[&[1, 2], &[2, 4]])).is_none());
        assert!(inverse_scaled(&int_matrix(&[&[1, 2]])).is_none());
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = IntMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-4i64..5, c), r).prop_map(|rows| {
                rows.into_iter()
                    .map(|r| r.into_iter().map(BigInt::from).collect())
                    .collect()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_matches_rational_elimination(m in arb_matrix(6)) {
            let ncols = m[0].len();
            prop_assert_eq!(rank(&m, ncols), rational_rank(&m, ncols));
        }

        #[test]
        fn nullspace_vectors_are_annihilated(m in arb_matrix(6)) {
            let ncols = m[0].len();
            let ns = nullspace(&m, ncols);
            prop_assert_eq!(ns.len() + rank(&m, ncols), ncols);
            for v in &ns {
                prop_assert!(is_nonzero(v));
                for row in &m {
                    let dot: BigInt = row.iter().zip(v).map(|(a, b)| a * b).sum();
                    prop_assert!(dot.is_zero());
                }
            }
        }

        #[test]
        fn inverse_times_matrix_is_identity(
            m in (1usize..6).prop_flat_map(|n| proptest::collection::vec(
                proptest::collection::vec(-5i64..6, n), n))
        ) {
            let a: IntMatrix = m.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect()).collect();
            let n = a.len();
            match inverse_scaled(&a) {
                None => prop_assert!(rank(&a, n) < n),
                Some((num, d)) => {
                    let prod = mat_mul(&a, &num);
                    for (i, row) in prod.iter().enumerate() {
                        for (j, x) in row.iter().enumerate() {
                            let want = if i == j { d.clone() } else { BigInt::zero() };
                            prop_assert_eq!(x, &want);
                        }
                    }
                }
            }
        }
    }
}
