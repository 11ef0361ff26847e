//! Prime-field arithmetic and the polynomial/matrix routines used by the
//! modular character-table computation: RREF, characteristic polynomials via
//! Hessenberg form, and deterministic root extraction.

use std::collections::HashMap;

/// Arithmetic mod an odd prime p (p fits comfortably in u64; products go
/// through u128).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(is_prime(p));
        PrimeField { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.p as u128) as u64
    }

    pub fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    /// Embed a signed integer.
    pub fn from_i64(&self, v: i64) -> u64 {
        let r = v.rem_euclid(self.p as i64);
        r as u64
    }

    /// Lift to the symmetric range (-p/2, p/2].
    pub fn to_symmetric(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The smallest prime p with p = 1 (mod m) and p > bound.
pub fn prime_one_mod(m: u64, bound: u64) -> u64 {
    let mut p = m + 1;
    loop {
        if p > bound && is_prime(p) {
            return p;
        }
        p += m;
    }
}

/// An element of multiplicative order exactly n in F_p (requires n | p-1).
pub fn element_of_order(f: PrimeField, n: u64) -> u64 {
    let p = f.p;
    debug_assert_eq!((p - 1) % n, 0);
    let cof = (p - 1) / n;
    'outer: for g in 2..p {
        let x = f.pow(g, cof);
        // x has order dividing n; check it is exactly n.
        for (q, _) in crate::group::factorize(n) {
            if f.pow(x, n / q) == 1 {
                continue 'outer;
            }
        }
        return x;
    }
    unreachable!("F_p* is cyclic, so an element of each dividing order exists");
}

/// Discrete logs base `theta` (of multiplicative order n): value -> exponent.
pub fn dlog_table(f: PrimeField, theta: u64, n: u64) -> HashMap<u64, u32> {
    let mut table = HashMap::with_capacity(n as usize);
    let mut x = 1u64;
    for e in 0..n as u32 {
        table.insert(x, e);
        x = f.mul(x, theta);
    }
    debug_assert_eq!(x, 1);
    table
}

// ---------------------------------------------------------------------------
// Matrices (row-major Vec<u64>)
// ---------------------------------------------------------------------------

/// Row-reduce in place; returns pivot column indices. `cols` is the row width.
pub fn rref(f: PrimeField, rows: &mut Vec<Vec<u64>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in 0..cols {
                    let t = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the kernel of the matrix (rows x cols), as rows.
pub fn kernel_basis(f: PrimeField, matrix: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = matrix.to_vec();
    let pivots = rref(f, &mut rows, cols);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(rows[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// Characteristic polynomial of a square matrix, monic, coefficients
/// ascending (c0 + c1 x + ... + x^k). Hessenberg reduction then a recurrence.
pub fn charpoly(f: PrimeField, mat: &[Vec<u64>]) -> Vec<u64> {
    let n = mat.len();
    if n == 0 {
        return vec![1];
    }
    let mut h: Vec<Vec<u64>> = mat.to_vec();
    // Reduce to upper Hessenberg form by similarity transforms.
    for c in 0..n.saturating_sub(2) {
        let Some(pr) = (c + 1..n).find(|&r| h[r][c] != 0) else {
            continue;
        };
        if pr != c + 1 {
            h.swap(pr, c + 1);
            for row in h.iter_mut() {
                row.swap(pr, c + 1);
            }
        }
        let inv = f.inv(h[c + 1][c]);
        for r in c + 2..n {
            if h[r][c] == 0 {
                continue;
            }
            let factor = f.mul(h[r][c], inv);
            for j in 0..n {
                let t = f.mul(factor, h[c + 1][j]);
                h[r][j] = f.sub(h[r][j], t);
            }
            // Column operation to keep similarity: col[c+1] += factor * col[r].
            for i in 0..n {
                let t = f.mul(factor, h[i][r]);
                h[i][c + 1] = f.add(h[i][c + 1], t);
            }
        }
    }
    // p_k(x) = charpoly of leading k x k block of the Hessenberg matrix.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        // p_k = (x - h[k-1][k-1]) p_{k-1} - sum_{i<k-1} h[i][k-1] (prod of subdiagonals) p_i
        let mut pk = poly_shift_mul(f, &polys[k - 1], h[k - 1][k - 1]);
        let mut beta = 1u64;
        for i in (0..k - 1).rev() {
            beta = f.mul(beta, h[i + 1][i]);
            let coeff = f.mul(beta, h[i][k - 1]);
            if coeff != 0 {
                for (j, &c) in polys[i].iter().enumerate() {
                    let t = f.mul(coeff, c);
                    pk[j] = f.sub(pk[j], t);
                }
            }
        }
        polys.push(pk);
    }
    polys.pop().unwrap()
}

/// (x - a) * p
fn poly_shift_mul(f: PrimeField, p: &[u64], a: u64) -> Vec<u64> {
    let mut out = vec![0u64; p.len() + 1];
    for (i, &c) in p.iter().enumerate() {
        out[i + 1] = f.add(out[i + 1], c);
        let t = f.mul(a, c);
        out[i] = f.sub(out[i], t);
    }
    out
}

// ---------------------------------------------------------------------------
// Polynomials (coefficients ascending, no trailing zeros)
// ---------------------------------------------------------------------------

pub fn poly_trim(p: &mut Vec<u64>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

pub fn poly_is_zero(p: &[u64]) -> bool {
    p.iter().all(|&c| c == 0)
}

pub fn poly_mul(f: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    if poly_is_zero(a) || poly_is_zero(b) {
        return vec![0];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

/// Remainder of a mod b (b nonzero).
pub fn poly_rem(f: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let mut bb = b.to_vec();
    poly_trim(&mut bb);
    debug_assert!(!poly_is_zero(&bb));
    let lead_inv = f.inv(*bb.last().unwrap());
    while r.len() >= bb.len() && !poly_is_zero(&r) {
        let shift = r.len() - bb.len();
        let factor = f.mul(*r.last().unwrap(), lead_inv);
        for (i, &c) in bb.iter().enumerate() {
            let t = f.mul(factor, c);
            r[shift + i] = f.sub(r[shift + i], t);
        }
        poly_trim(&mut r);
        if r.len() < bb.len() {
            break;
        }
        if *r.last().unwrap() == 0 {
            poly_trim(&mut r);
        }
    }
    r
}

pub fn poly_gcd(f: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !poly_is_zero(&y) {
        let r = poly_rem(f, &x, &y);
        x = y;
        y = r;
    }
    // Monic normalization.
    if !poly_is_zero(&x) {
        let inv = f.inv(*x.last().unwrap());
        for c in x.iter_mut() {
            *c = f.mul(*c, inv);
        }
    }
    x
}

/// base^e mod (m), all polynomials.
pub fn poly_powmod(f: PrimeField, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(f, &poly_mul(f, &acc, &b), m);
        }
        b = poly_rem(f, &poly_mul(f, &b, &b), m);
        e >>= 1;
    }
    acc
}

pub fn poly_derivative(f: PrimeField, p: &[u64]) -> Vec<u64> {
    if p.len() <= 1 {
        return vec![0];
    }
    let mut out: Vec<u64> = (1..p.len())
        .map(|i| f.mul(p[i], (i as u64) % f.p))
        .collect();
    poly_trim(&mut out);
    out
}

/// Deterministic xorshift rng for the equal-degree splitting.
pub struct SplitRng(u64);

impl SplitRng {
    pub fn new() -> Self {
        SplitRng(0x9e3779b97f4a7c15)
    }
    pub fn next(&mut self, modulus: u64) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x % modulus
    }
}

impl Default for SplitRng {
    fn default() -> Self {
        Self::new()
    }
}

/// All roots of `poly` in F_p with multiplicities, sorted by root value.
///
/// Multiplicities come from repeated division; distinct roots from
/// gcd(f, x^p - x) followed by randomized splitting with a fixed-seed rng,
/// so the output is deterministic.
pub fn roots_with_multiplicity(f: PrimeField, poly: &[u64]) -> Vec<(u64, u32)> {
    let mut p = poly.to_vec();
    poly_trim(&mut p);
    if poly_is_zero(&p) || p.len() == 1 {
        return vec![];
    }
    // Distinct roots: gcd with x^p - x.
    let xp = poly_powmod(f, &[0, 1], f.p, &p);
    // x^p - x mod p
    let mut xpx = xp;
    if xpx.len() < 2 {
        xpx.resize(2, 0);
    }
    xpx[1] = f.sub(xpx[1], 1);
    poly_trim(&mut xpx);
    let linear_part = poly_gcd(f, &p, &xpx);
    let mut distinct = Vec::new();
    split_roots(f, &linear_part, &mut SplitRng::new(), &mut distinct);
    distinct.sort_unstable();
    // Multiplicity of each root by repeated synthetic division.
    let mut out = Vec::new();
    for r in distinct {
        let mut mult = 0u32;
        loop {
            let (q, rem) = synth_div(f, &p, r);
            if rem != 0 {
                break;
            }
            p = q;
            mult += 1;
        }
        debug_assert!(mult > 0);
        out.push((r, mult));
    }
    out
}

/// Divide by (x - r): returns (quotient, remainder value).
fn synth_div(f: PrimeField, p: &[u64], r: u64) -> (Vec<u64>, u64) {
    let n = p.len();
    if n <= 1 {
        return (vec![], p.first().copied().unwrap_or(0));
    }
    let mut q = vec![0u64; n - 1];
    q[n - 2] = p[n - 1];
    for i in (1..n - 1).rev() {
        q[i - 1] = f.add(p[i], f.mul(r, q[i]));
    }
    let rem = f.add(p[0], f.mul(r, q[0]));
    (q, rem)
}

/// Recursively split a squarefree product of linear factors.
fn split_roots(f: PrimeField, poly: &[u64], rng: &mut SplitRng, out: &mut Vec<u64>) {
    let mut p = poly.to_vec();
    poly_trim(&mut p);
    match p.len() {
        0 | 1 => {}
        2 => {
            // c0 + c1 x = 0 -> x = -c0/c1
            let root = f.mul(f.neg(p[0]), f.inv(p[1]));
            out.push(root);
        }
        _ => {
            // (x + a)^((p-1)/2) - 1 captures roots r with x = r + a a QR.
            loop {
                let a = rng.next(f.p);
                let shifted = vec![a, 1];
                let mut g = poly_powmod(f, &shifted, (f.p - 1) / 2, &p);
                if g.is_empty() {
                    g = vec![0];
                }
                if g[0] == 0 {
                    g[0] = f.p - 1;
                } else {
                    g[0] = f.sub(g[0], 1);
                }
                poly_trim(&mut g);
                let d = poly_gcd(f, &p, &g);
                if d.len() > 1 && d.len() < p.len() {
                    let mut rest = p.clone();
                    rest = poly_div_exact(f, &rest, &d);
                    split_roots(f, &d, rng, out);
                    split_roots(f, &rest, rng, out);
                    return;
                }
            }
        }
    }
}

/// Exact polynomial division (remainder must be zero).
pub fn poly_div_exact(f: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let mut bb = b.to_vec();
    poly_trim(&mut bb);
    let lead_inv = f.inv(*bb.last().unwrap());
    let mut q = vec![0u64; r.len().saturating_sub(bb.len()) + 1];
    while r.len() >= bb.len() && !poly_is_zero(&r) {
        let shift = r.len() - bb.len();
        let factor = f.mul(*r.last().unwrap(), lead_inv);
        q[shift] = factor;
        for (i, &c) in bb.iter().enumerate() {
            let t = f.mul(factor, c);
            r[shift + i] = f.sub(r[shift + i], t);
        }
        poly_trim(&mut r);
        if r.len() == 1 && r[0] == 0 {
            break;
        }
    }
    debug_assert!(poly_is_zero(&r), "division was not exact");
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let f = PrimeField::new(101);
        assert_eq!(f.add(100, 5), 4);
        assert_eq!(f.sub(3, 10), 94);
        assert_eq!(f.mul(50, 50), 2500 % 101);
        assert_eq!(f.mul(f.inv(37), 37), 1);
        assert_eq!(f.pow(2, 100), 1);
        assert_eq!(f.from_i64(-1), 100);
        assert_eq!(f.to_symmetric(100), -1);
        assert_eq!(f.to_symmetric(50), 50);
    }

    #[test]
    fn primes_and_orders() {
        assert!(is_prime(2) && is_prime(97) && is_prime(7919));
        assert!(!is_prime(1) && !is_prime(91));
        let p = prime_one_mod(12, 60);
        assert_eq!(p, 61);
        assert!(is_prime(p) && p % 12 == 1);
        let f = PrimeField::new(61);
        let w = element_of_order(f, 12);
        assert_eq!(f.pow(w, 12), 1);
        for d in [1, 2, 3, 4, 6] {
            assert_ne!(f.pow(w, d), 1);
        }
        let table = dlog_table(f, w, 12);
        assert_eq!(table.len(), 12);
        assert_eq!(table[&1], 0);
        assert_eq!(table[&w], 1);
    }

    #[test]
    fn rref_and_kernel() {
        let f = PrimeField::new(97);
        // x + y + z = 0 has kernel of rank 2.
        let m = vec![vec![1, 1, 1]];
        let basis = kernel_basis(f, &m, 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let s = v.iter().fold(0, |a, &b| f.add(a, b));
            assert_eq!(s, 0);
        }
        // Full-rank matrix has empty kernel.
        let m = vec![vec![1, 0], vec![3, 1]];
        assert!(kernel_basis(f, &m, 2).is_empty());
    }

    #[test]
    fn charpoly_small() {
        let f = PrimeField::new(97);
        // [[2, 0], [0, 3]] -> (x-2)(x-3) = x^2 - 5x + 6
        let m = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(charpoly(f, &m), vec![6, 97 - 5, 1]);
        // Companion-style matrix of x^3 - 1: eigenvalues are cube roots of 1.
        let m = vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]];
        let cp = charpoly(f, &m);
        assert_eq!(cp, vec![96, 0, 0, 1]); // x^3 - 1
        // 4x4 with a repeated eigenvalue.
        let m = vec![
            vec![5, 1, 0, 0],
            vec![0, 5, 0, 0],
            vec![0, 0, 7, 0],
            vec![0, 0, 0, 9],
        ];
        let cp = charpoly(f, &m);
        let roots = roots_with_multiplicity(f, &cp);
        assert_eq!(roots, vec![(5, 2), (7, 1), (9, 1)]);
    }

    #[test]
    fn poly_roots() {
        let f = PrimeField::new(101);
        // (x-3)^2 (x-7) (x-50)
        let mut p = vec![1u64];
        for (r, k) in [(3u64, 2), (7, 1), (50, 1)] {
            for _ in 0..k {
                p = poly_mul(f, &p, &[f.neg(r), 1]);
            }
        }
        assert_eq!(
            roots_with_multiplicity(f, &p),
            vec![(3, 2), (7, 1), (50, 1)]
        );
        // Irreducible quadratic has no roots.
        // x^2 + 1 over F_103 (103 = 3 mod 4).
        let f = PrimeField::new(103);
        assert!(roots_with_multiplicity(f, &[1, 0, 1]).is_empty());
    }

    #[test]
    fn poly_roots_many() {
        // Root extraction across a larger field, exercising the splitter.
        let f = PrimeField::new(7919);
        let roots: Vec<u64> = vec![1, 17, 100, 256, 1000, 4000, 7000, 7918];
        let mut p = vec![1u64];
        for &r in &roots {
            p = poly_mul(f, &p, &[f.neg(r), 1]);
        }
        let found = roots_with_multiplicity(f, &p);
        assert_eq!(found.len(), roots.len());
        let mut expect = roots.clone();
        expect.sort_unstable();
        assert_eq!(found.iter().map(|&(r, _)| r).collect::<Vec<_>>(), expect);
        assert!(found.iter().all(|&(_, m)| m == 1));
    }

    #[test]
    fn division_helpers() {
        let f = PrimeField::new(97);
        let a = poly_mul(f, &[1, 2, 1], &[3, 1]); // (x+1)^2 (x+3)
        let q = poly_div_exact(f, &a, &[3, 1]);
        assert_eq!(q, vec![1, 2, 1]);
        let r = poly_rem(f, &a, &[1, 1]);
        assert!(poly_is_zero(&r));
        let g = poly_gcd(f, &a, &[1, 2, 1]);
        assert_eq!(g, vec![1, 2, 1]); // monic (x+1)^2
    }
}
