//! Fraction-free elimination over the integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type IMatrix = Vec<Vec<BigInt>>;

/// Leading principal minors of `m` via Bareiss elimination without pivoting.
///
/// Elimination stops at the first vanishing minor; the returned vector then
/// ends with that zero.
pub fn leading_minors(m: &IMatrix) -> Vec<BigInt> {
    let n = m.len();
    let mut a = m.clone();
    let mut prev = BigInt::one();
    let mut minors = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = a[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &pivot * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = pivot;
    }
    minors
}

/// Determinant and adjugate of a matrix whose leading principal minors are all
/// nonzero, by fraction-free Gauss-Jordan elimination on `[m | I]`.
pub fn det_adjugate(m: &IMatrix) -> Option<(BigInt, IMatrix)> {
    let n = m.len();
    let mut a: IMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        if pivot.is_zero() {
            return None;
        }
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..2 * n {
                if j == k {
                    continue;
                }
                let v = &pivot * &a[i][j] - &f * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = pivot;
    }
    // Left block is now det * I; the right block is the adjugate up to the
    // row scaling that Gauss-Jordan leaves on the pivot rows.
    let det = prev;
    let adj = (0..n)
        .map(|i| {
            let s = &a[i][i];
            (0..n).map(|j| &a[i][n + j] * &det / s).collect()
        })
        .collect();
    Some((det, adj))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn mul(a: &IMatrix, b: &IMatrix) -> IMatrix {
        let n = a.len();
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
            .collect()
    }

    #[test]
    fn minors_of_a_chain() {
        let m = im(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        let got: Vec<i64> = leading_minors(&m).iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(got, vec![2, 3, 4]);
    }

    #[test]
    fn singular_stops() {
        let m = im(&[&[1, -1], &[-1, 1]]);
        let got = leading_minors(&m);
        assert_eq!(got.last().unwrap(), &BigInt::zero());
    }

    #[test]
    fn adjugate_identity() {
        let m = im(&[&[3, -1, 0, 0], &[-1, 2, -1, -1], &[0, -1, 5, 0], &[0, -1, 0, 2]]);
        let (det, adj) = det_adjugate(&m).unwrap();
        let prod = mul(&m, &adj);
        for (i, row) in prod.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(x, &if i == j { det.clone() } else { BigInt::zero() });
            }
        }
        assert_eq!(det, leading_minors(&m)[3]);
    }
}
