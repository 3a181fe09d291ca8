//! Exact enumeration of integer points in an ellipsoid
//! `(x - c)^T Q (x - c) <= r` with `x >= lower`, by Fincke-Pohst recursion
//! over a rational `LDL^T`-style decomposition.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{self, Q};

pub struct Ellipsoid {
    n: usize,
    /// Diagonal `q_ii` and upper `q_ij` (i < j) of the decomposition
    /// `x^T Q x = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2`.
    q: Vec<Vec<Q>>,
    center: Vec<Q>,
    radius: Q,
}

impl Ellipsoid {
    /// `form` must be symmetric positive definite.
    pub fn new(form: &[Vec<Q>], center: Vec<Q>, radius: Q) -> Self {
        let n = form.len();
        let mut q: Vec<Vec<Q>> = form.to_vec();
        for i in 0..n {
            for j in i + 1..n {
                q[j][i] = q[i][j].clone();
                q[i][j] = &q[i][j] / &q[i][i];
            }
            for k in i + 1..n {
                for l in k..n {
                    let d = &q[k][i] * &q[i][l];
                    q[k][l] -= d;
                }
            }
        }
        Ellipsoid { n, q, center, radius }
    }

    /// Per-coordinate bounds `c_i ± sqrt(r * (Q^{-1})_ii)`, given the inverse diagonal.
    pub fn coordinate_box(center: &[Q], radius: &Q, inv_diag: &[Q]) -> Vec<(BigInt, BigInt)> {
        center
            .iter()
            .zip(inv_diag)
            .map(|(c, d)| {
                let s = Q::from_integer(rat::floor_sqrt(&(radius * d)) + 1);
                (rat::floor_int(&(c - &s)), rat::ceil_int(&(c + &s)))
            })
            .collect()
    }

    /// Calls `visit` on every integer point with `x_i >= lower_i`, `x_i <= upper_i`
    /// inside the ellipsoid. Aborts after `cap` search nodes.
    pub fn for_each(
        &self,
        lower: &[BigInt],
        upper: &[BigInt],
        cap: u64,
        visit: &mut dyn FnMut(&[BigInt]) -> Result<()>,
    ) -> Result<u64> {
        self.for_each_pruned(lower, upper, cap, &|_, _| true, visit)
    }

    /// Like [`Ellipsoid::for_each`]; coordinates are fixed from the last down
    /// to the first, and a branch is dropped once `keep(i, x)` is false right
    /// after `x_i` is set (only `x_i..` are meaningful then).
    pub fn for_each_pruned(
        &self,
        lower: &[BigInt],
        upper: &[BigInt],
        cap: u64,
        keep: &dyn Fn(usize, &[BigInt]) -> bool,
        visit: &mut dyn FnMut(&[BigInt]) -> Result<()>,
    ) -> Result<u64> {
        if self.radius.is_negative() {
            return Ok(0);
        }
        let mut x = vec![BigInt::zero(); self.n];
        let mut y = vec![Q::zero(); self.n];
        let mut nodes = 0u64;
        if self.n == 0 {
            visit(&x)?;
            return Ok(1);
        }
        self.rec(self.n - 1, self.radius.clone(), lower, upper, &mut x, &mut y, &mut nodes, cap, keep, visit)?;
        Ok(nodes)
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        &self,
        i: usize,
        budget: Q,
        lower: &[BigInt],
        upper: &[BigInt],
        x: &mut Vec<BigInt>,
        y: &mut Vec<Q>,
        nodes: &mut u64,
        cap: u64,
        keep: &dyn Fn(usize, &[BigInt]) -> bool,
        visit: &mut dyn FnMut(&[BigInt]) -> Result<()>,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > cap {
            return Err(Error::ResourceCap(format!("ellipsoid enumeration exceeded {cap} nodes")));
        }
        // y_i must satisfy q_ii (y_i - t)^2 <= budget
        let mut t = Q::zero();
        for j in i + 1..self.n {
            t -= &self.q[i][j] * &y[j];
        }
        let span = &budget / &self.q[i][i];
        let s = Q::from_integer(rat::floor_sqrt(&span) + 1);
        let mid = &self.center[i] + &t;
        let lo = rat::floor_int(&(&mid - &s)).max(lower[i].clone());
        let hi = rat::ceil_int(&(&mid + &s)).min(upper[i].clone());
        let mut xi = lo;
        while xi <= hi {
            let yi = Q::from_integer(xi.clone()) - &self.center[i];
            let dev = &yi - &t;
            let used = &self.q[i][i] * &dev * &dev;
            if used <= budget {
                x[i] = xi.clone();
                y[i] = yi;
                if keep(i, x) {
                    if i == 0 {
                        visit(x)?;
                    } else {
                        self.rec(i - 1, &budget - &used, lower, upper, x, y, nodes, cap, keep, visit)?;
                    }
                }
            }
            xi += 1;
        }
        Ok(())
    }
}
