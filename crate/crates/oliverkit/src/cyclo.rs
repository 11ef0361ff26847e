//! Exact cyclotomic integer arithmetic.
//!
//! Values live in Z[x]/(Phi_m(x)) with the power basis 1, x, ..., x^(phi-1),
//! where Phi_m is the m-th cyclotomic polynomial; x stands for a fixed
//! primitive m-th root of unity. Contexts (the polynomial plus reduction
//! tables) are memoized per modulus. Coefficient arithmetic is checked i64,
//! so an overflow is a loud failure rather than a wrong answer.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Shared per-modulus data: Phi_m and reduction tables.
pub struct CycloContext {
    pub m: u32,
    pub phi: usize,
    /// Phi_m, ascending coefficients, monic, length phi + 1.
    pub phi_poly: Vec<i64>,
    /// reduction[k] expresses x^(phi + k) in the power basis, k = 0..phi-1.
    reduction: Vec<Vec<i64>>,
    /// root_power[e] expresses x^e (e = 0..m-1) in the power basis.
    root_power: Vec<Vec<i64>>,
}

fn contexts() -> &'static Mutex<HashMap<u32, Arc<CycloContext>>> {
    static CTX: OnceLock<Mutex<HashMap<u32, Arc<CycloContext>>>> = OnceLock::new();
    CTX.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The context for modulus m (computed once per modulus).
pub fn context(m: u32) -> Arc<CycloContext> {
    assert!(m >= 1);
    let mut map = contexts().lock().unwrap();
    if let Some(c) = map.get(&m) {
        return c.clone();
    }
    let ctx = Arc::new(CycloContext::build(m));
    map.insert(m, ctx.clone());
    ctx
}

/// The m-th cyclotomic polynomial, ascending coefficients.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    let mut memo: HashMap<u32, Vec<i64>> = HashMap::new();
    cyclo_poly_memo(m, &mut memo)
}

fn cyclo_poly_memo(m: u32, memo: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Phi_d for every proper divisor d.
    let mut f = vec![0i64; m as usize + 1];
    f[0] = -1;
    f[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclo_poly_memo(d, memo);
            f = int_poly_div_exact(&f, &phi_d);
        }
    }
    memo.insert(m, f.clone());
    f
}

/// Exact division of integer polynomials, divisor monic.
fn int_poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    debug_assert_eq!(*b.last().unwrap(), 1);
    let mut r = a.to_vec();
    let n = r.len();
    let k = b.len();
    debug_assert!(n >= k);
    let mut q = vec![0i64; n - k + 1];
    for shift in (0..=n - k).rev() {
        let factor = r[shift + k - 1];
        q[shift] = factor;
        if factor != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = r[shift + i].checked_sub(factor.checked_mul(c).unwrap()).unwrap();
            }
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0), "division was not exact");
    q
}

impl CycloContext {
    fn build(m: u32) -> CycloContext {
        let phi_poly = cyclotomic_polynomial(m);
        let phi = phi_poly.len() - 1;
        // x^phi = -(c_0 + c_1 x + ... + c_{phi-1} x^{phi-1})
        let base: Vec<i64> = phi_poly[..phi].iter().map(|&c| -c).collect();
        let mut reduction: Vec<Vec<i64>> = Vec::with_capacity(phi.max(1));
        reduction.push(base);
        for _ in 1..phi {
            let prev = reduction.last().unwrap().clone();
            reduction.push(shift_reduce(&prev, &reduction[0], phi));
        }
        // Powers of the root: x^e for e = 0..m-1.
        let mut root_power = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; phi];
        if phi > 0 {
            cur[0] = 1;
        }
        root_power.push(cur.clone());
        for _ in 1..m {
            cur = shift_reduce(&cur, &reduction[0], phi);
            root_power.push(cur.clone());
        }
        CycloContext {
            m,
            phi,
            phi_poly,
            reduction,
            root_power,
        }
    }
}

/// Multiply a basis-representation vector by x and reduce the overflow term.
fn shift_reduce(v: &[i64], x_phi_row: &[i64], phi: usize) -> Vec<i64> {
    let mut out = vec![0i64; phi];
    if phi == 0 {
        return out;
    }
    for i in 0..phi - 1 {
        out[i + 1] = v[i];
    }
    let carry = v[phi - 1];
    if carry != 0 {
        for i in 0..phi {
            out[i] = out[i]
                .checked_add(carry.checked_mul(x_phi_row[i]).unwrap())
                .unwrap();
        }
    }
    out
}

/// A cyclotomic integer: an element of Z[zeta_m] in the power basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    pub m: u32,
    pub coeffs: Vec<i64>,
}

impl Cyclotomic {
    pub fn zero(m: u32) -> Self {
        let ctx = context(m);
        Cyclotomic {
            m,
            coeffs: vec![0; ctx.phi],
        }
    }

    pub fn integer(m: u32, n: i64) -> Self {
        let mut z = Self::zero(m);
        if !z.coeffs.is_empty() {
            z.coeffs[0] = n;
        } else {
            // m = 1: Phi_1 = x - 1 has degree 1, so phi = 1; unreachable.
            unreachable!("phi(m) >= 1 for all m >= 1");
        }
        z
    }

    pub fn one(m: u32) -> Self {
        Self::integer(m, 1)
    }

    /// zeta_m^e.
    pub fn root_power(m: u32, e: i64) -> Self {
        let ctx = context(m);
        let e = e.rem_euclid(m as i64) as usize;
        Cyclotomic {
            m,
            coeffs: ctx.root_power[e].clone(),
        }
    }

    /// Sum of mult * zeta_m^exp over an exponent multiset.
    pub fn from_exponent_multiset(m: u32, terms: &[(u32, i64)]) -> Self {
        let ctx = context(m);
        let mut coeffs = vec![0i64; ctx.phi];
        for &(exp, mult) in terms {
            let row = &ctx.root_power[(exp % m) as usize];
            for (c, &r) in coeffs.iter_mut().zip(row) {
                *c = c.checked_add(mult.checked_mul(r).unwrap()).unwrap();
            }
        }
        Cyclotomic { m, coeffs }
    }

    /// Reduce a full length-m exponent accumulator (counts of zeta^e) at once.
    pub fn from_exponent_vector(m: u32, counts: &[i64]) -> Self {
        debug_assert_eq!(counts.len(), m as usize);
        let ctx = context(m);
        let mut coeffs = vec![0i64; ctx.phi];
        for (e, &mult) in counts.iter().enumerate() {
            if mult == 0 {
                continue;
            }
            let row = &ctx.root_power[e];
            for (c, &r) in coeffs.iter_mut().zip(row) {
                *c = c.checked_add(mult.checked_mul(r).unwrap()).unwrap();
            }
        }
        Cyclotomic { m, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Some(n) when the value is the rational integer n.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        debug_assert_eq!(self.m, other.m);
        Cyclotomic {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| a.checked_add(b).unwrap())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        debug_assert_eq!(self.m, other.m);
        Cyclotomic {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| a.checked_sub(b).unwrap())
                .collect(),
        }
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            m: self.m,
            coeffs: self.coeffs.iter().map(|&a| -a).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Cyclotomic {
        Cyclotomic {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .map(|&a| a.checked_mul(k).unwrap())
                .collect(),
        }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        debug_assert_eq!(self.m, other.m);
        let ctx = context(self.m);
        let phi = ctx.phi;
        // Convolution with i128 accumulators, then one reduction pass.
        let mut conv = vec![0i128; 2 * phi.max(1) - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                conv[i + j] += a as i128 * b as i128;
            }
        }
        let mut out = vec![0i128; phi];
        out[..phi].copy_from_slice(&conv[..phi]);
        for k in phi..conv.len() {
            let c = conv[k];
            if c == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(&ctx.reduction[k - phi]) {
                *o += c * r as i128;
            }
        }
        Cyclotomic {
            m: self.m,
            coeffs: out
                .into_iter()
                .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
                .collect(),
        }
    }

    /// The Galois automorphism zeta -> zeta^k (requires gcd(k, m) = 1).
    pub fn galois(&self, k: u32) -> Cyclotomic {
        debug_assert_eq!(num_integer::gcd(k as u64, self.m as u64), 1);
        let ctx = context(self.m);
        let mut coeffs = vec![0i64; ctx.phi];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let e = (i as u64 * k as u64 % self.m as u64) as usize;
            let row = &ctx.root_power[e];
            for (c, &r) in coeffs.iter_mut().zip(row) {
                *c = c.checked_add(a.checked_mul(r).unwrap()).unwrap();
            }
        }
        Cyclotomic { m: self.m, coeffs }
    }

    /// Complex conjugation (zeta -> zeta^(m-1) = inverse root).
    pub fn conj(&self) -> Cyclotomic {
        if self.m <= 2 {
            return self.clone();
        }
        self.galois(self.m - 1)
    }
}

impl std::fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}*")?;
                    }
                    write!(f, "z{}^{i}", self.m)?;
                }
            }
        }
        Ok(())
    }
}
