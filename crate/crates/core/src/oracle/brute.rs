//! Brute-force searches in plain `i128` arithmetic. Nothing here touches the
//! rational lattice code: the intersection matrix, its inverse and every
//! pairing are recomputed from the Euler numbers and edges.

use crate::error::{Error, Result};

pub const DEFAULT_CAP: u64 = 10_000_000;

fn overflow() -> Error {
    Error::ResourceCap("oracle arithmetic overflowed i128".into())
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or_else(overflow)
}

fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or_else(overflow)
}

fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -floor_div(-a, b)
}

fn isqrt(x: i128) -> i128 {
    if x <= 0 {
        return 0;
    }
    let mut r = (x as f64).sqrt() as i128;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// Rational cycle `num / den` with `den > 0` and the fraction reduced.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scaled {
    pub num: Vec<i128>,
    pub den: i128,
}

impl Scaled {
    pub fn new(num: Vec<i128>, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = num.iter().fold(den.abs(), |g, &x| gcd(g, x));
        Scaled { num: num.iter().map(|x| sign * x / g).collect(), den: sign * den / g }
    }

    pub fn integral(num: Vec<i128>) -> Self {
        Scaled { num, den: 1 }
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&x| x == 0)
    }

    /// Coefficient-wise floor as an integral vector.
    pub fn floor(&self) -> Vec<i128> {
        self.num.iter().map(|&x| floor_div(x, self.den)).collect()
    }

    /// Fractional part, coefficient-wise in `[0, 1)`.
    pub fn frac(&self) -> Scaled {
        Scaled::new(self.num.iter().map(|&x| x.rem_euclid(self.den)).collect(), self.den)
    }
}

/// Weighted tree as an intersection matrix.
#[derive(Debug, Clone)]
pub struct Plumbing {
    pub euler: Vec<i64>,
    pub adj: Vec<Vec<usize>>,
    det: i128,
    /// Adjugate of `A`: `A^{-1} = adj / det`.
    adjugate: Vec<Vec<i128>>,
}

/// Determinant by Bareiss elimination with row pivoting.
fn det(mut m: Vec<Vec<i128>>) -> Result<i128> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = mul(m[k][k], m[i][j])? - mul(m[i][k], m[k][j])?;
                m[i][j] = t / prev;
            }
        }
        prev = m[k][k];
    }
    Ok(sign * m[n - 1][n - 1])
}

impl Plumbing {
    pub fn new(euler: &[i64], edges: &[(usize, usize)]) -> Result<Self> {
        let n = euler.len();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let a = Self::matrix(euler, &adj);
        let d = det(a.clone())?;
        if d == 0 {
            return Err(Error::NotNegativeDefinite { order: n, minor: "0".into() });
        }
        // cofactor expansion, one minor per entry
        let mut adjugate = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Vec<i128>> = (0..n)
                    .filter(|&r| r != j)
                    .map(|r| (0..n).filter(|&c| c != i).map(|c| a[r][c]).collect())
                    .collect();
                let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                adjugate[i][j] = s * det(minor)?;
            }
        }
        Ok(Plumbing { euler: euler.to_vec(), adj, det: d, adjugate })
    }

    fn matrix(euler: &[i64], adj: &[Vec<usize>]) -> Vec<Vec<i128>> {
        let n = euler.len();
        let mut a = vec![vec![0i128; n]; n];
        for v in 0..n {
            a[v][v] = euler[v] as i128;
            for &u in &adj[v] {
                a[v][u] = 1;
            }
        }
        a
    }

    pub fn n(&self) -> usize {
        self.euler.len()
    }

    /// Negative definite iff every leading minor of `-A` is positive.
    pub fn is_negative_definite(&self) -> Result<bool> {
        let a = Self::matrix(&self.euler, &self.adj);
        for k in 1..=self.n() {
            let m: Vec<Vec<i128>> = (0..k).map(|r| (0..k).map(|c| -a[r][c]).collect()).collect();
            if det(m)? <= 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `(x, E_v)` for integral `x`.
    fn pair(&self, x: &[i128], v: usize) -> Result<i128> {
        let mut s = mul(self.euler[v] as i128, x[v])?;
        for &u in &self.adj[v] {
            s = add(s, x[u])?;
        }
        Ok(s)
    }

    /// `(x, E_v)` for every `v`, scaled by `x.den`.
    pub fn pairings(&self, x: &Scaled) -> Result<Vec<i128>> {
        (0..self.n()).map(|v| self.pair(&x.num, v)).collect()
    }

    /// `(x, y)` as a reduced fraction.
    pub fn form(&self, x: &Scaled, y: &Scaled) -> Result<(i128, i128)> {
        let p = self.pairings(x)?;
        let mut s = 0i128;
        for (a, b) in p.iter().zip(&y.num) {
            s = add(s, mul(*a, *b)?)?;
        }
        let d = mul(x.den, y.den)?;
        let g = gcd(s, d).max(1);
        Ok((s / g, d / g))
    }

    pub fn is_antinef(&self, x: &Scaled) -> Result<bool> {
        Ok(self.pairings(x)?.iter().all(|&p| p <= 0))
    }

    /// Solution of `A x = b`.
    pub fn solve(&self, b: &[i128]) -> Result<Scaled> {
        let n = self.n();
        let mut num = vec![0i128; n];
        for (i, slot) in num.iter_mut().enumerate() {
            for j in 0..n {
                *slot = add(*slot, mul(self.adjugate[i][j], b[j])?)?;
            }
        }
        Ok(Scaled::new(num, self.det))
    }

    /// `E*_v`, with `(E*_v, E_w) = -δ_vw`.
    pub fn dual(&self, v: usize) -> Result<Scaled> {
        let mut b = vec![0i128; self.n()];
        b[v] = -1;
        self.solve(&b)
    }

    /// `Z_K`, with `(Z_K, E_v) = e_v + 2`.
    pub fn canonical(&self) -> Result<Scaled> {
        let b: Vec<i128> = self.euler.iter().map(|&e| e as i128 + 2).collect();
        self.solve(&b)
    }

    /// `χ(x) = (-(x, x) + (x, Z_K)) / 2` for integral `x`, using `(Z_K, E_v) = e_v + 2`.
    pub fn chi(&self, x: &[i128]) -> Result<i128> {
        let mut s = 0i128;
        for v in 0..self.n() {
            let p = self.pair(x, v)?;
            s = add(s, mul(x[v], self.euler[v] as i128 + 2 - p)?)?;
        }
        Ok(s / 2)
    }

    /// Vertices in breadth-first order from 0, and for each position the
    /// vertices whose closed neighbourhood is complete once that position is set.
    fn search_order(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let n = self.n();
        let mut order = vec![0];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    order.push(u);
                }
            }
            i += 1;
        }
        let mut pos = vec![0; n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let mut closes = vec![Vec::new(); n];
        for v in 0..n {
            let last = self.adj[v].iter().map(|&u| pos[u]).chain([pos[v]]).max().expect("nonempty");
            closes[last].push(v);
        }
        (order, closes)
    }

    /// Every integral `z` with `0 <= z <= upper` and `base + z` antinef, where
    /// `base` is given scaled by `den`.
    fn antinef_points(&self, base: &Scaled, upper: &[i128], cap: u64) -> Result<Vec<Vec<i128>>> {
        let n = self.n();
        let (order, closes) = self.search_order();
        let mut x = base.num.clone();
        let mut z = vec![0i128; n];
        let mut out = Vec::new();
        let mut nodes = 0u64;
        #[allow(clippy::too_many_arguments)]
        fn rec(
            p: &Plumbing,
            pos: usize,
            order: &[usize],
            closes: &[Vec<usize>],
            den: i128,
            upper: &[i128],
            x: &mut Vec<i128>,
            z: &mut Vec<i128>,
            out: &mut Vec<Vec<i128>>,
            nodes: &mut u64,
            cap: u64,
        ) -> Result<()> {
            *nodes += 1;
            if *nodes > cap {
                return Err(Error::ResourceCap(format!("oracle search exceeded {cap} nodes")));
            }
            if pos == order.len() {
                out.push(z.clone());
                return Ok(());
            }
            let v = order[pos];
            let start = x[v];
            for k in 0..=upper[v] {
                z[v] = k;
                x[v] = add(start, mul(k, den)?)?;
                let mut ok = true;
                for &w in &closes[pos] {
                    if p.pair(x, w)? > 0 {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    rec(p, pos + 1, order, closes, den, upper, x, z, out, nodes, cap)?;
                }
            }
            x[v] = start;
            z[v] = 0;
            Ok(())
        }
        rec(self, 0, &order, &closes, base.den, upper, &mut x, &mut z, &mut out, &mut nodes, cap)?;
        Ok(out)
    }

    /// Some antinef `l + z` with integral `z >= 0`: add `E_v` at the largest
    /// offending vertex until none is left.
    fn repair(&self, l: &Scaled, cap: u64) -> Result<Vec<i128>> {
        let mut x = l.num.clone();
        let mut z = vec![0i128; self.n()];
        'steps: for _ in 0..cap {
            for v in (0..self.n()).rev() {
                if self.pair(&x, v)? > 0 {
                    z[v] += 1;
                    x[v] = add(x[v], l.den)?;
                    continue 'steps;
                }
            }
            return Ok(z);
        }
        Err(Error::ResourceCap(format!("oracle repair exceeded {cap} steps")))
    }
}

fn le(a: &[i128], b: &[i128]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Minimal elements of a finite set under the coefficient-wise order.
fn minimal_elements(points: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let mut out: Vec<Vec<i128>> = points
        .iter()
        .filter(|p| !points.iter().any(|q| q != *p && le(q, p)))
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

fn unique_minimum(points: &[Vec<i128>], what: &str) -> Result<Vec<i128>> {
    let mins = minimal_elements(points);
    match mins.len() {
        1 => Ok(mins.into_iter().next().expect("one element")),
        0 => Err(Error::Invariant(format!("{what}: no candidate in the search box"))),
        _ => Err(Error::Invariant(format!("{what}: minimum is not unique, minimal elements {mins:?}"))),
    }
}

/// Smallest `l + z` (integral `z >= 0`) that is antinef. The search box is
/// `[0, z_0]` for the `z_0` found by [`Plumbing::repair`].
pub fn brute_min_antinef(p: &Plumbing, l: &Scaled, cap: u64) -> Result<Scaled> {
    let up = p.repair(l, cap)?;
    let points = p.antinef_points(l, &up, cap)?;
    let z = unique_minimum(&points, "minimal antinef lift")?;
    let num: Vec<i128> = l.num.iter().zip(&z).map(|(a, b)| a + b * l.den).collect();
    Ok(Scaled::new(num, l.den))
}

/// Minimum of the nonzero effective integral antinef cycles.
pub fn brute_fundamental_cycle(p: &Plumbing, cap: u64) -> Result<Vec<i128>> {
    let mut start = vec![0i128; p.n()];
    start[0] = 1;
    let mut up = p.repair(&Scaled::integral(start), cap)?;
    up[0] += 1;
    let zero = Scaled::integral(vec![0; p.n()]);
    let points: Vec<Vec<i128>> =
        p.antinef_points(&zero, &up, cap)?.into_iter().filter(|z| z.iter().any(|&x| x != 0)).collect();
    unique_minimum(&points, "fundamental cycle")
}

/// Inclusive integer box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBox {
    pub lower: Vec<i128>,
    pub upper: Vec<i128>,
}

impl SearchBox {
    pub fn volume(&self) -> Option<u128> {
        self.lower
            .iter()
            .zip(&self.upper)
            .try_fold(1u128, |acc, (l, u)| acc.checked_mul((u - l + 1).max(0) as u128))
    }

    pub fn contains(&self, x: &[i128]) -> bool {
        x.iter().zip(self.lower.iter().zip(&self.upper)).all(|(v, (l, u))| l <= v && v <= u)
    }
}

/// Every point `x` of `b` with `2 χ(x) <= bound`.
///
/// `2 χ(x) = sum_v (-e_v x_v^2 + (e_v + 2) x_v) - 2 sum_{uw} x_u x_w` is a sum
/// over vertices and edges of a tree, so the least value over a subtree with
/// its root fixed is a dynamic program. The enumeration assigns vertices in
/// preorder and drops a branch as soon as the exact least completion exceeds
/// `bound`; every visited node therefore leads to at least one point.
pub fn chi_points(p: &Plumbing, b: &SearchBox, bound: i128, cap: u64) -> Result<Vec<Vec<i128>>> {
    let n = p.n();
    if b.lower.iter().zip(&b.upper).any(|(l, u)| l > u) {
        return Ok(Vec::new());
    }
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![0];
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for &u in &p.adj[v] {
            if u != parent[v] {
                parent[u] = v;
                order.push(u);
            }
        }
        i += 1;
    }
    let children: Vec<Vec<usize>> =
        (0..n).map(|v| p.adj[v].iter().copied().filter(|&u| u != parent[v]).collect()).collect();
    let node = |v: usize, a: i128| -> Result<i128> {
        let e = p.euler[v] as i128;
        add(mul(-e, mul(a, a)?)?, mul(e + 2, a)?)
    };
    // least[v][x - lower_parent]: least value of v's subtree plus the edge to its
    // parent, given the parent's value x
    let mut least: Vec<Vec<i128>> = vec![Vec::new(); n];
    let mut work = 0u64;
    for &v in order.iter().rev() {
        let mut sub = Vec::new();
        for a in b.lower[v]..=b.upper[v] {
            let mut t = node(v, a)?;
            for &c in &children[v] {
                t = add(t, least[c][(a - b.lower[v]) as usize])?;
            }
            sub.push(t);
        }
        if parent[v] == usize::MAX {
            least[v] = vec![*sub.iter().min().expect("nonempty range")];
            continue;
        }
        let q = parent[v];
        let mut row = Vec::new();
        for x in b.lower[q]..=b.upper[q] {
            let mut best = i128::MAX;
            for (k, a) in (b.lower[v]..=b.upper[v]).enumerate() {
                best = best.min(add(sub[k], mul(-2, mul(a, x)?)?)?);
            }
            work += (b.upper[v] - b.lower[v] + 1) as u64;
            if work > cap {
                return Err(Error::ResourceCap(format!("oracle χ table exceeded {cap} steps")));
            }
            row.push(best);
        }
        least[v] = row;
    }
    let mut out = Vec::new();
    let mut x = vec![0i128; n];
    let mut nodes = 0u64;
    struct Ctx<'a> {
        p: &'a Plumbing,
        b: &'a SearchBox,
        order: &'a [usize],
        parent: &'a [usize],
        children: &'a [Vec<usize>],
        least: &'a [Vec<i128>],
        bound: i128,
        cap: u64,
    }
    fn rec(
        cx: &Ctx,
        pos: usize,
        partial: i128,
        pending: i128,
        x: &mut Vec<i128>,
        out: &mut Vec<Vec<i128>>,
        nodes: &mut u64,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > cx.cap {
            return Err(Error::ResourceCap(format!("oracle χ search exceeded {} nodes", cx.cap)));
        }
        if pos == cx.order.len() {
            out.push(x.clone());
            return Ok(());
        }
        let v = cx.order[pos];
        let (lo, hi) = (cx.b.lower[v], cx.b.upper[v]);
        let q = cx.parent[v];
        let own = if q == usize::MAX { 0 } else { cx.least[v][(x[q] - cx.b.lower[q]) as usize] };
        let e = cx.p.euler[v] as i128;
        for a in lo..=hi {
            let mut here = add(mul(-e, mul(a, a)?)?, mul(e + 2, a)?)?;
            if q != usize::MAX {
                here = add(here, mul(-2, mul(a, x[q])?)?)?;
            }
            let mut rest = pending - own;
            for &c in &cx.children[v] {
                rest = add(rest, cx.least[c][(a - lo) as usize])?;
            }
            let total = add(partial, here)?;
            if add(total, rest)? > cx.bound {
                continue;
            }
            x[v] = a;
            rec(cx, pos + 1, total, rest, x, out, nodes)?;
        }
        x[v] = 0;
        Ok(())
    }
    if least[order[0]][0] > bound {
        return Ok(out);
    }
    let cx = Ctx { p, b, order: &order, parent: &parent, children: &children, least: &least, bound, cap };
    rec(&cx, 0, 0, 0, &mut x, &mut out, &mut nodes)?;
    Ok(out)
}

/// Box around `{x >= 0 : χ(x) <= 1}`. With `Q = -A` and `k = Z_K`,
/// `χ(x) = ((x - k/2)^T Q (x - k/2) - k^T Q k / 4) / 2`, so the set is an
/// ellipsoid of squared radius `R = 2 + k^T Q k / 4`, and coordinate `i`
/// stays within `sqrt(R (Q^{-1})_ii)` of `k_i / 2`. `stretch` scales the
/// half-widths.
pub fn chi_box(p: &Plumbing, stretch: i128) -> Result<SearchBox> {
    let k = p.canonical()?;
    // k^T Q k = -(k, k)
    let (s, d) = p.form(&k, &k)?;
    // R = (8d - s) / (4d)
    let (rn, rd) = (add(mul(8, d)?, -s)?, mul(4, d)?);
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for i in 0..p.n() {
        // (Q^{-1})_ii = -adj_ii / det
        let (qn, qd) = (-p.adjugate[i][i], p.det);
        let (qn, qd) = if qd < 0 { (-qn, -qd) } else { (qn, qd) };
        // half-width h with h^2 <= stretch^2 R q
        let num = mul(mul(mul(stretch, stretch)?, rn)?, qn)?;
        let den = mul(rd, qd)?;
        let h = isqrt(mul(num, den)?) / den + 1;
        // k_i / 2 = k.num_i / (2 k.den)
        let twice = mul(2, k.den)?;
        lower.push(floor_div(k.num[i] - mul(h, twice)?, twice).max(0));
        upper.push(ceil_div(k.num[i] + mul(h, twice)?, twice));
    }
    Ok(SearchBox { lower, upper })
}

/// Minimum of `χ` over nonzero effective integral cycles, with all minimisers.
/// With `margin`, the box with doubled half-widths is searched too and must
/// hold no point with `χ <= 1` outside the inner box.
pub fn brute_min_chi(p: &Plumbing, cap: u64, margin: bool) -> Result<(i128, Vec<Vec<i128>>)> {
    let inner = chi_box(p, 1)?;
    let pts = chi_points(p, &inner, 2, cap)?;
    let mut best = i128::MAX;
    let mut arg: Vec<Vec<i128>> = Vec::new();
    for x in pts.into_iter().filter(|x| x.iter().any(|&v| v != 0)) {
        let c = p.chi(&x)?;
        if c < best {
            best = c;
            arg.clear();
        }
        if c == best {
            arg.push(x);
        }
    }
    if margin {
        let outer = chi_box(p, 2)?;
        if let Some(x) = chi_points(p, &outer, 2, cap)?.into_iter().find(|x| !inner.contains(x)) {
            return Err(Error::Invariant(format!("χ <= 1 at {x:?} outside the derived box")));
        }
    }
    if best > 1 {
        return Err(Error::Invariant("no nonzero cycle with χ <= 1 in the derived box".into()));
    }
    arg.sort();
    Ok((best, arg))
}

/// Unique minimum of `{0 < l <= Z_min : χ(l) = 0}`.
pub fn brute_minimally_elliptic(p: &Plumbing, cap: u64) -> Result<Vec<i128>> {
    let zmin = brute_fundamental_cycle(p, cap)?;
    let b = SearchBox { lower: vec![0; p.n()], upper: zmin };
    let mut hits = Vec::new();
    for x in chi_points(p, &b, 0, cap)? {
        if x.iter().any(|&v| v != 0) && p.chi(&x)? == 0 {
            hits.push(x);
        }
    }
    unique_minimum(&hits, "minimally elliptic cycle")
}

/// Antinef `l` with `0 <= l <= Z_K` and `Z_K - l` integral, sorted.
pub fn brute_lemci(p: &Plumbing, cap: u64) -> Result<Vec<Scaled>> {
    let zk = p.canonical()?;
    if zk.num.iter().any(|&x| x < 0) {
        return Ok(Vec::new());
    }
    // l = frac(Z_K) + z with 0 <= z <= floor(Z_K)
    let base = zk.frac();
    let up = zk.floor();
    let mut out: Vec<Scaled> = p
        .antinef_points(&base, &up, cap)?
        .into_iter()
        .map(|z| Scaled::new(base.num.iter().zip(&z).map(|(a, b)| a + b * base.den).collect(), base.den))
        .collect();
    out.sort();
    Ok(out)
}

/// Connected vertex sets whose own canonical cycle is integral and nonzero.
pub fn brute_subsupports(p: &Plumbing, max_vertices: usize) -> Result<Vec<Vec<usize>>> {
    let n = p.n();
    if n > max_vertices {
        return Err(Error::ResourceCap(format!("subsupport search refuses {n} vertices (cap {max_vertices})")));
    }
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let index = |v: usize| set.iter().position(|&x| x == v);
        let mut edges = Vec::new();
        for (i, &v) in set.iter().enumerate() {
            for &u in &p.adj[v] {
                if let Some(j) = index(u) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        if edges.len() + 1 != set.len() {
            continue;
        }
        let euler: Vec<i64> = set.iter().map(|&v| p.euler[v]).collect();
        let zk = Plumbing::new(&euler, &edges)?.canonical()?;
        if zk.is_integral() && !zk.is_zero() {
            out.push(set);
        }
    }
    out.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    Ok(out)
}
