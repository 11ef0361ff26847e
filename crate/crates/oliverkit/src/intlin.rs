//! Exact integer linear algebra.
//!
//! The central routine computes a basis of the integer kernel
//! {x in Z^n : Ax = 0} by streaming the constraint rows one at a time over a
//! column transformation matrix: each new row is reduced by a gcd dance on
//! the active columns, the single column left with a nonzero dot product is
//! retired, and the columns that survive every row form the kernel basis.
//! Kernels of integer matrices are saturated, so the basis generates all
//! integer solutions.
//!
//! Arithmetic runs in checked i128 and falls back to arbitrary precision if
//! a coefficient overflows.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive, Zero};

pub struct IntegerKernel {
    /// Basis vectors of the kernel lattice, each of length n.
    pub basis: Vec<Vec<i128>>,
    /// Rank of the constraint matrix.
    pub rank: usize,
}

/// Kernel of the m x n matrix given by `rows`.
pub fn integer_kernel(rows: &[Vec<i64>], n: usize) -> Result<IntegerKernel> {
    if let Some((basis, rank)) = kernel_impl::<i128>(rows, n) {
        return Ok(IntegerKernel { basis, rank });
    }
    let (big_basis, rank) = kernel_impl::<BigInt>(rows, n)
        .expect("arbitrary-precision kernel cannot overflow");
    let mut basis = Vec::with_capacity(big_basis.len());
    for v in big_basis {
        let mut out = Vec::with_capacity(n);
        for x in v {
            out.push(x.to_i128().ok_or_else(|| {
                Error::Domain("kernel basis coefficient exceeds 128 bits".into())
            })?);
        }
        basis.push(out);
    }
    Ok(IntegerKernel { basis, rank })
}

fn kernel_impl<T>(rows: &[Vec<i64>], n: usize) -> Option<(Vec<Vec<T>>, usize)>
where
    T: Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + FromPrimitive + Clone,
{
    // Active columns of the transformation matrix, initially the identity.
    let mut cols: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let mut v = vec![T::zero(); n];
            v[i] = T::one();
            v
        })
        .collect();
    let mut rank = 0;
    for row in rows {
        debug_assert_eq!(row.len(), n);
        let a: Vec<T> = row.iter().map(|&x| T::from_i64(x).unwrap()).collect();
        let mut dots: Vec<T> = cols.iter().map(|c| dot(&a, c)).collect::<Option<_>>()?;
        loop {
            // Smallest and second nonzero dot by absolute value.
            let mut best: Option<usize> = None;
            let mut other: Option<usize> = None;
            for (j, d) in dots.iter().enumerate() {
                if d.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(j),
                    Some(b) => {
                        if d.abs() < dots[b].abs() {
                            other = Some(b);
                            best = Some(j);
                        } else {
                            other = Some(j);
                        }
                    }
                }
            }
            let (Some(b), Some(o)) = (best, other) else {
                // At most one nonzero dot left: retire that column.
                if let Some(b) = best {
                    cols.swap_remove(b);
                    dots.swap_remove(b);
                    rank += 1;
                }
                break;
            };
            // Reduce column o against column b.
            let (q, r) = dots[o].div_rem(&dots[b]);
            let scaled: Vec<T> = cols[b]
                .iter()
                .map(|x| x.checked_mul(&q))
                .collect::<Option<_>>()?;
            let updated: Vec<T> = cols[o]
                .iter()
                .zip(&scaled)
                .map(|(x, s)| x.checked_sub(s))
                .collect::<Option<_>>()?;
            cols[o] = updated;
            dots[o] = r;
        }
    }
    Some((cols, rank))
}

fn dot<T>(a: &[T], b: &[T]) -> Option<T>
where
    T: Zero + CheckedAdd + CheckedMul,
{
    let mut s = T::zero();
    for (x, y) in a.iter().zip(b) {
        s = s.checked_add(&x.checked_mul(y)?)?;
    }
    Some(s)
}

/// Integer type usable by the streaming eliminators.
pub trait StreamInt:
    Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + FromPrimitive + ToPrimitive + Clone
{
}
impl<T> StreamInt for T where
    T: Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + FromPrimitive + ToPrimitive + Clone
{
}

/// Result of feeding one column to [`ColumnKernel`].
pub enum PushOutcome<T> {
    /// The column is independent of everything pushed so far.
    Independent,
    /// The column closed a dependency: the expression (over all columns
    /// pushed so far, this one last) combines them to zero.
    Dependent(Vec<T>),
    /// Fixed-width arithmetic overflowed; rerun with a wider type.
    Overflow,
}

/// Column-streaming integer kernel.
///
/// Columns of an (m x n) matrix arrive one at a time; the eliminator keeps at
/// most m pivot columns (in reduced staircase form) together with expression
/// vectors recording each pivot as an integer combination of the pushed
/// columns. A column that reduces to zero yields a kernel vector of the
/// partial matrix immediately, so a caller scanning for a kernel certificate
/// can stop early; the expressions emitted over all n columns form a basis of
/// the full kernel, and the pivot count is the rank.
pub struct ColumnKernel<T> {
    /// Pivot slot per leading row: (reduced column, expression).
    pivots: Vec<Option<(Vec<T>, Vec<T>)>>,
    pushed: usize,
    rank: usize,
}

impl<T: StreamInt> ColumnKernel<T> {
    pub fn new(num_rows: usize) -> Self {
        ColumnKernel {
            pivots: (0..num_rows).map(|_| None).collect(),
            pushed: 0,
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn columns_pushed(&self) -> usize {
        self.pushed
    }

    pub fn push(&mut self, column: &[i64]) -> PushOutcome<T> {
        debug_assert_eq!(column.len(), self.pivots.len());
        self.pushed += 1;
        let mut v: Vec<T> = column
            .iter()
            .map(|&x| T::from_i64(x).expect("i64 converts into any stream integer"))
            .collect();
        let mut expr = vec![T::zero(); self.pushed];
        expr[self.pushed - 1] = T::one();
        loop {
            let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
                return PushOutcome::Dependent(expr);
            };
            match &mut self.pivots[lead] {
                slot @ None => {
                    *slot = Some((v, expr));
                    self.rank += 1;
                    return PushOutcome::Independent;
                }
                Some((pcol, pexpr)) => {
                    let a = pcol[lead].clone();
                    let b = v[lead].clone();
                    let (q, r) = b.div_rem(&a);
                    if r.is_zero() {
                        // v -= q * pivot.
                        let nq = T::zero() - q;
                        let Some(nv) = combine(&v, &T::one(), pcol, &nq) else {
                            return PushOutcome::Overflow;
                        };
                        let Some(ne) = combine(&expr, &T::one(), pexpr, &nq) else {
                            return PushOutcome::Overflow;
                        };
                        v = nv;
                        expr = ne;
                    } else {
                        // Bezout: g = x a + y b. The pivot becomes the gcd
                        // combination; v keeps a zero at the pivot row.
                        let Some((g, x, y)) = ext_gcd_t(&a, &b) else {
                            return PushOutcome::Overflow;
                        };
                        let pa = a.div_floor(&g);
                        let pb = b.div_floor(&g);
                        let Some(new_pcol) = combine(pcol, &x, &v, &y) else {
                            return PushOutcome::Overflow;
                        };
                        let Some(new_pexpr) = combine(pexpr, &x, &expr, &y) else {
                            return PushOutcome::Overflow;
                        };
                        let nb = T::zero() - pb;
                        let Some(nv) = combine(&v, &pa, pcol, &nb) else {
                            return PushOutcome::Overflow;
                        };
                        let Some(ne) = combine(&expr, &pa, pexpr, &nb) else {
                            return PushOutcome::Overflow;
                        };
                        *pcol = new_pcol;
                        *pexpr = new_pexpr;
                        v = nv;
                        expr = ne;
                    }
                }
            }
        }
    }
}

/// cu*u + cw*w with zero padding to the longer length.
fn combine<T: StreamInt>(u: &[T], cu: &T, w: &[T], cw: &T) -> Option<Vec<T>> {
    let n = u.len().max(w.len());
    let mut out = Vec::with_capacity(n);
    let zero = T::zero();
    for i in 0..n {
        let a = u.get(i).unwrap_or(&zero).checked_mul(cu)?;
        let b = w.get(i).unwrap_or(&zero).checked_mul(cw)?;
        out.push(a.checked_add(&b)?);
    }
    Some(out)
}

/// Extended gcd with checked arithmetic: (g, x, y) with g = x a + y b, g > 0.
fn ext_gcd_t<T: StreamInt>(a: &T, b: &T) -> Option<(T, T, T)> {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (T::one(), T::zero());
    let (mut old_t, mut t) = (T::zero(), T::one());
    while !r.is_zero() {
        let (q, rem) = old_r.div_rem(&r);
        old_r = std::mem::replace(&mut r, rem);
        let ns = old_s.checked_sub(&q.checked_mul(&s)?)?;
        old_s = std::mem::replace(&mut s, ns);
        let nt = old_t.checked_sub(&q.checked_mul(&t)?)?;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        old_r = T::zero() - old_r;
        old_s = T::zero() - old_s;
        old_t = T::zero() - old_t;
    }
    Some((old_r, old_s, old_t))
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g, g = gcd(a, b) >= 0.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            return (-a, -1, 0);
        }
        return (a, 1, 0);
    }
    let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
    // a = q*b + r with r = a.rem_euclid(b), q = (a - r) / b
    let q = (a - a.rem_euclid(b)) / b;
    (g, y, x - q * y)
}

/// Gcd of a list together with Bezout coefficients: sum c_i v_i = g >= 0.
/// The gcd of an empty or all-zero list is 0.
pub fn gcd_combo(values: &[i128]) -> (i128, Vec<i128>) {
    let mut g = 0i128;
    let mut coeffs = vec![0i128; values.len()];
    for (i, &v) in values.iter().enumerate() {
        if v == 0 {
            continue;
        }
        if g == 0 {
            let s = v.signum();
            g = v * s;
            coeffs[i] = s;
            continue;
        }
        let (g2, x, y) = ext_gcd(g, v);
        for c in coeffs.iter_mut() {
            *c *= x;
        }
        coeffs[i] = y;
        g = g2;
        if g == 1 {
            break;
        }
    }
    (g, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_annihilates(rows: &[Vec<i64>], basis: &[Vec<i128>]) {
        for v in basis {
            for row in rows {
                let s: i128 = row.iter().zip(v).map(|(&a, &x)| a as i128 * x).sum();
                assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn sum_zero_kernel() {
        let rows = vec![vec![1i64, 1, 1]];
        let k = integer_kernel(&rows, 3).unwrap();
        assert_eq!(k.rank, 1);
        assert_eq!(k.basis.len(), 2);
        check_annihilates(&rows, &k.basis);
        // The kernel is saturated: the gcd of the 2x2 minors of the basis
        // matrix is 1.
        let b = &k.basis;
        let minors: Vec<i128> = (0..3)
            .map(|skip| {
                let c: Vec<usize> = (0..3).filter(|&j| j != skip).collect();
                b[0][c[0]] * b[1][c[1]] - b[0][c[1]] * b[1][c[0]]
            })
            .collect();
        let g = minors.iter().fold(0i128, |acc, &m| {
            num_integer::gcd(acc, m)
        });
        assert_eq!(g, 1);
    }

    #[test]
    fn full_rank_trivial_kernel() {
        let rows = vec![vec![2i64, 1], vec![1, 1]];
        let k = integer_kernel(&rows, 2).unwrap();
        assert_eq!(k.rank, 2);
        assert!(k.basis.is_empty());
    }

    #[test]
    fn dependent_rows() {
        let rows = vec![vec![1i64, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        let k = integer_kernel(&rows, 3).unwrap();
        assert_eq!(k.rank, 2);
        assert_eq!(k.basis.len(), 1);
        check_annihilates(&rows, &k.basis);
        // Kernel generated by (1, 1, -1) up to sign.
        let v = &k.basis[0];
        assert_eq!(v.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 1, 1]);
    }

    #[test]
    fn scaled_constraint_still_saturated() {
        // 10x + 10y = 0 has kernel (1, -1), not (10, -10).
        let rows = vec![vec![10i64, 10]];
        let k = integer_kernel(&rows, 2).unwrap();
        assert_eq!(k.basis.len(), 1);
        assert_eq!(k.basis[0].iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 1]);
    }

    #[test]
    fn bigint_path_matches() {
        let rows = vec![vec![3i64, -1, 4, -1], vec![5, 9, -2, 6]];
        let (narrow, r1) = kernel_impl::<i128>(&rows, 4).unwrap();
        let (wide, r2) = kernel_impl::<BigInt>(&rows, 4).unwrap();
        assert_eq!(r1, r2);
        assert_eq!(narrow.len(), wide.len());
        for (v, w) in narrow.iter().zip(&wide) {
            let w128: Vec<i128> = w.iter().map(|x| x.to_i128().unwrap()).collect();
            assert_eq!(*v, w128);
        }
    }

    #[test]
    fn ext_gcd_identity() {
        for (a, b) in [(12, 18), (-12, 18), (0, 5), (5, 0), (-7, -21), (1, 1)] {
            let (g, x, y) = ext_gcd(a, b);
            assert!(g >= 0);
            assert_eq!(a * x + b * y, g);
            assert_eq!(g, num_integer::gcd(a, b));
        }
    }

    #[test]
    fn gcd_combo_identity() {
        let cases: Vec<Vec<i128>> = vec![
            vec![6, 10, 15],
            vec![0, 0, 4, 6],
            vec![-4, 6],
            vec![0, 0],
            vec![],
            vec![7],
        ];
        for values in cases {
            let (g, coeffs) = gcd_combo(&values);
            let s: i128 = values.iter().zip(&coeffs).map(|(v, c)| v * c).sum();
            assert_eq!(s, g);
            let expect = values.iter().fold(0i128, |a, &v| num_integer::gcd(a, v));
            assert_eq!(g, expect);
        }
    }

    #[test]
    fn random_kernels_annihilate() {
        // Deterministic pseudo-random small matrices.
        let mut state = 0x243f6a8885a308d3u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..50 {
            let m = (next() % 4 + 1) as usize;
            let n = (next() % 5 + 1) as usize;
            let rows: Vec<Vec<i64>> = (0..m)
                .map(|_| (0..n).map(|_| (next() % 11) as i64 - 5).collect())
                .collect();
            let k = integer_kernel(&rows, n).unwrap();
            assert_eq!(k.rank + k.basis.len(), n);
            check_annihilates(&rows, &k.basis);
        }
    }

    fn stream_all(rows: &[Vec<i64>], n: usize) -> (Vec<Vec<i128>>, usize) {
        let m = rows.len();
        let mut ck = ColumnKernel::<i128>::new(m);
        let mut exprs = Vec::new();
        for j in 0..n {
            let col: Vec<i64> = rows.iter().map(|r| r[j]).collect();
            match ck.push(&col) {
                PushOutcome::Independent => {}
                PushOutcome::Dependent(mut e) => {
                    e.resize(n, 0);
                    exprs.push(e);
                }
                PushOutcome::Overflow => panic!("overflow on tiny input"),
            }
        }
        (exprs, ck.rank())
    }

    #[test]
    fn streamed_columns_match_row_streaming() {
        let mut state = 0x13198a2e03707344u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..60 {
            let m = (next() % 4 + 1) as usize;
            let n = (next() % 6 + 1) as usize;
            let rows: Vec<Vec<i64>> = (0..m)
                .map(|_| (0..n).map(|_| (next() % 11) as i64 - 5).collect())
                .collect();
            let k = integer_kernel(&rows, n).unwrap();
            let (exprs, rank) = stream_all(&rows, n);
            assert_eq!(rank, k.rank);
            assert_eq!(exprs.len(), k.basis.len());
            check_annihilates(&rows, &exprs);
        }
    }

    #[test]
    fn duplicate_column_detected_immediately() {
        // Rows of the matrix [[2, 3, 2], [1, 0, 1]]: third column repeats the
        // first, and the dependency is reported the moment it arrives.
        let rows = vec![vec![2, 3, 2], vec![1, 0, 1]];
        let mut ck = ColumnKernel::<i128>::new(2);
        assert!(matches!(ck.push(&[2, 1]), PushOutcome::Independent));
        assert!(matches!(ck.push(&[3, 0]), PushOutcome::Independent));
        let PushOutcome::Dependent(e) = ck.push(&[2, 1]) else {
            panic!("dependent column not detected");
        };
        check_annihilates(&rows, &[e.clone()]);
        assert_eq!(e[2].abs(), 1);
        assert_eq!(ck.rank(), 2);
    }

    #[test]
    fn bigint_stream_agrees() {
        let rows = vec![vec![6, 10, -15, 1], vec![0, 4, -4, 8]];
        let (exprs, rank) = stream_all(&rows, 4);
        let mut ck = ColumnKernel::<BigInt>::new(2);
        let mut big_exprs = Vec::new();
        for j in 0..4 {
            let col: Vec<i64> = rows.iter().map(|r| r[j]).collect();
            match ck.push(&col) {
                PushOutcome::Independent => {}
                PushOutcome::Dependent(e) => {
                    let mut ee: Vec<i128> = e.iter().map(|x| x.to_i128().unwrap()).collect();
                    ee.resize(4, 0);
                    big_exprs.push(ee);
                }
                PushOutcome::Overflow => unreachable!(),
            }
        }
        assert_eq!(ck.rank(), rank);
        assert_eq!(big_exprs, exprs);
        check_annihilates(&rows, &big_exprs);
    }
}
