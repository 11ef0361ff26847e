//! Exact character tables.
//!
//! The table is computed modulo a prime p = 1 (mod m), m the group exponent,
//! with p > 2|G|: class-algebra matrices are split into a simultaneous
//! eigenbasis over F_p, degrees are recovered from the eigenvector rows, and
//! every value is then lifted to an exact sum of roots of unity (a "spectral"
//! exponent multiset for zeta_m), which is verified against the modular data
//! and by orthogonality.
//!
//! Values are stored arena-style: one flat term list plus (offset, len) per
//! (character, class) entry, so huge abelian tables stay affordable.

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{ElemId, FiniteGroup};
use crate::modp::{
    self, charpoly, dlog_table, element_of_order, kernel_basis, prime_one_mod, PrimeField,
};
use std::collections::HashMap;

/// Discrete-log lookup for powers of theta; dense when the prime is small
/// enough for a direct-indexed table.
enum Dlog {
    Dense(Vec<u32>),
    Sparse(HashMap<u64, u32>),
}

impl Dlog {
    fn build(f: PrimeField, theta: u64, n: u64) -> Dlog {
        if f.p <= 1 << 26 {
            let mut v = vec![u32::MAX; f.p as usize];
            let mut x = 1u64;
            for e in 0..n as u32 {
                v[x as usize] = e;
                x = f.mul(x, theta);
            }
            debug_assert_eq!(x, 1);
            Dlog::Dense(v)
        } else {
            Dlog::Sparse(dlog_table(f, theta, n))
        }
    }

    fn get(&self, x: u64) -> Option<u32> {
        match self {
            Dlog::Dense(v) => v.get(x as usize).copied().filter(|&e| e != u32::MAX),
            Dlog::Sparse(h) => h.get(&x).copied(),
        }
    }
}

/// One term list: value = sum of mult * zeta_m^exp.
pub type Spectral = [(u32, i32)];

pub struct CharacterTable {
    group: FiniteGroup,
    /// Root-of-unity modulus: the group exponent.
    pub modulus: u32,
    /// The working prime (kept for reference and tests).
    pub prime: u64,
    /// A fixed element of multiplicative order `modulus` in F_p; zeta_m maps
    /// to theta under the modular projection used throughout.
    pub theta: u64,
    pub degrees: Vec<u64>,
    /// Index of the complex-conjugate character of each character.
    conj_index: Vec<usize>,
    terms: Vec<(u32, i32)>,
    entries: Vec<(u32, u32)>,
}

impl CharacterTable {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn num_characters(&self) -> usize {
        self.degrees.len()
    }

    pub fn num_classes(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, chi: usize) -> u64 {
        self.degrees[chi]
    }

    /// The exponent multiset of chi at a class.
    pub fn spectral(&self, chi: usize, class: usize) -> &Spectral {
        let r = self.num_classes();
        let (off, len) = self.entries[chi * r + class];
        &self.terms[off as usize..(off + len) as usize]
    }

    /// The value as an exact cyclotomic integer in Q(zeta_m).
    pub fn value(&self, chi: usize, class: usize) -> Cyclotomic {
        let terms: Vec<(u32, i64)> = self
            .spectral(chi, class)
            .iter()
            .map(|&(e, m)| (e, m as i64))
            .collect();
        Cyclotomic::from_exponent_multiset(self.modulus, &terms)
    }

    /// Integer value when the entry is rational (always true on classes of
    /// elements of order <= 2, and for many others).
    pub fn integer_value(&self, chi: usize, class: usize) -> Option<i64> {
        self.value(chi, class).as_integer()
    }

    pub fn conjugate_character(&self, chi: usize) -> usize {
        self.conj_index[chi]
    }

    pub fn is_real_character(&self, chi: usize) -> bool {
        self.conj_index[chi] == chi
    }

    /// Frobenius-Schur indicator: (1/|G|) sum over g of chi(g^2).
    pub fn frobenius_schur(&self, chi: usize) -> i64 {
        let g = &self.group;
        let m = self.modulus;
        let classes = g.conjugacy_classes();
        let mut acc = vec![0i64; m as usize];
        for (j, c) in classes.classes.iter().enumerate() {
            let sq = g.power_class(j, 2);
            for &(e, mult) in self.spectral(chi, sq) {
                acc[e as usize] += c.size() as i64 * mult as i64;
            }
        }
        let total = Cyclotomic::from_exponent_vector(m, &acc)
            .as_integer()
            .expect("indicator sum is rational");
        let order = g.order() as i64;
        debug_assert_eq!(total % order, 0);
        let nu = total / order;
        debug_assert!((-1..=1).contains(&nu));
        nu
    }

    /// All Frobenius-Schur indicators in one pass through the modular
    /// projection: the sum over g of chi(g^2) equals nu|G| exactly for some
    /// nu in {-1, 0, 1}, and the prime exceeds 2|G|, so the residue pins nu.
    pub fn frobenius_schur_all(&self) -> Result<Vec<i64>> {
        let g = &self.group;
        let f = PrimeField::new(self.prime);
        let theta_pow = power_table(f, self.theta, self.modulus as usize);
        let classes = g.conjugacy_classes();
        let r = self.num_classes();
        let sq: Vec<usize> = (0..r).map(|j| g.power_class(j, 2)).collect();
        let pos = g.order() % f.p;
        let neg = f.p - pos;
        (0..r)
            .map(|chi| {
                let mut acc = 0u64;
                for j in 0..r {
                    let mut v = 0u64;
                    for &(t, mu) in self.spectral(chi, sq[j]) {
                        v = f.add(v, f.mul(theta_pow[t as usize], f.from_i64(mu as i64)));
                    }
                    acc = f.add(acc, f.mul(classes.classes[j].size() as u64 % f.p, v));
                }
                if acc == 0 {
                    Ok(0)
                } else if acc == pos {
                    Ok(1)
                } else if acc == neg {
                    Ok(-1)
                } else {
                    Err(Error::Verification(format!(
                        "indicator sum for character {chi} is not in -1..=1 times the group order"
                    )))
                }
            })
            .collect()
    }

    /// Class indices whose elements have prime-power order (1 counts, so the
    /// identity class is included).
    pub fn prime_power_order_classes(&self) -> Vec<usize> {
        let classes = self.group.conjugacy_classes();
        (0..self.num_classes())
            .filter(|&j| crate::taxonomy::is_prime_power(classes.classes[j].element_order))
            .collect()
    }

    /// Scalar product of two class functions given as value vectors indexed
    /// by the table's classes: (1/|G|) sum over classes of size*a*conj(b).
    /// Exact: errors if the result is not a cyclotomic integer.
    pub fn inner_product(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Result<Cyclotomic> {
        let r = self.num_classes();
        if a.len() != r || b.len() != r {
            return Err(Error::Domain(format!(
                "class function length {} / {} does not match class count {}",
                a.len(),
                b.len(),
                r
            )));
        }
        let m = self.modulus;
        let classes = self.group.conjugacy_classes();
        let mut sum = Cyclotomic::zero(m);
        for j in 0..r {
            let term = a[j].mul(&b[j].conj()).scale(classes.classes[j].size() as i64);
            sum = sum.add(&term);
        }
        let order = self.group.order() as i64;
        let mut coeffs = sum.coeffs.clone();
        for c in coeffs.iter_mut() {
            if *c % order != 0 {
                return Err(Error::Domain(
                    "inner product is not a cyclotomic integer".into(),
                ));
            }
            *c /= order;
        }
        Ok(Cyclotomic { m, coeffs })
    }

    /// Values of the virtual character with the given irreducible
    /// multiplicities, restricted to the classes of prime-power element
    /// order (identity included).
    pub fn ppo_restriction(&self, multiplicities: &[i64]) -> Result<Vec<Cyclotomic>> {
        if multiplicities.len() != self.num_characters() {
            return Err(Error::Domain(format!(
                "multiplicity vector length {} does not match character count {}",
                multiplicities.len(),
                self.num_characters()
            )));
        }
        let ppo = self.prime_power_order_classes();
        let mut out = Vec::with_capacity(ppo.len());
        for &j in &ppo {
            let mut v = Cyclotomic::zero(self.modulus);
            for (i, &mult) in multiplicities.iter().enumerate() {
                if mult != 0 {
                    v = v.add(&self.value(i, j).scale(mult));
                }
            }
            out.push(v);
        }
        Ok(out)
    }

    /// The map class -> class of p-th powers of its elements.
    pub fn power_map(&self, p: u64) -> Vec<usize> {
        (0..self.num_classes())
            .map(|j| self.group.power_class(j, p))
            .collect()
    }

    // -- construction -------------------------------------------------------

    pub fn compute(group: &FiniteGroup) -> Result<CharacterTable> {
        Builder::new(group).run()
    }
}

/// theta^e for e in 0..n.
fn power_table(f: PrimeField, theta: u64, n: usize) -> Vec<u64> {
    let mut t = vec![1u64; n.max(1)];
    for e in 1..n {
        t[e] = f.mul(t[e - 1], theta);
    }
    t
}

fn isqrt(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// One lifted character row: flat exponent-multiset entries plus the modular
/// row it came from.
struct LiftedRow {
    degree: u64,
    terms: Vec<(u32, i32)>,
    bounds: Vec<u32>,
    mod_row: Vec<u64>,
}

impl LiftedRow {
    fn entry(&self, j: usize) -> &[(u32, i32)] {
        &self.terms[self.bounds[j] as usize..self.bounds[j + 1] as usize]
    }

    fn cmp_entries(&self, other: &LiftedRow) -> std::cmp::Ordering {
        let r = self.bounds.len() - 1;
        for j in 0..r {
            let cmp = self.entry(j).cmp(other.entry(j));
            if cmp != std::cmp::Ordering::Equal {
                return cmp;
            }
        }
        std::cmp::Ordering::Equal
    }
}

/// Horner evaluation, ascending coefficients.
fn poly_eval(f: PrimeField, poly: &[u64], x: u64) -> u64 {
    let mut v = 0u64;
    for &c in poly.iter().rev() {
        v = f.add(f.mul(v, x), c);
    }
    v
}

/// Divide `poly[..=deg]` by (x - root) in place (ascending coefficients);
/// call only when root is an exact root, so the remainder vanishes.
fn deflate(f: PrimeField, poly: &mut [u64], deg: usize, root: u64) {
    let mut carry = poly[deg];
    for i in (1..deg).rev() {
        let a = poly[i];
        poly[i] = carry;
        carry = f.add(a, f.mul(root, carry));
    }
    poly[0] = carry;
}

struct Builder<'a> {
    g: &'a FiniteGroup,
    r: usize,
    m: u32,
    f: PrimeField,
    theta: u64,
    theta_pow: Vec<u64>,
    dlog: Dlog,
    /// Class representative ids, sizes, inverse-class map.
    reps: Vec<ElemId>,
    sizes: Vec<u64>,
    inv_sizes: Vec<u64>,
    inv_class: Vec<usize>,
}

impl<'a> Builder<'a> {
    fn new(g: &'a FiniteGroup) -> Builder<'a> {
        let classes = g.conjugacy_classes();
        let r = classes.classes.len();
        let m = g.exponent() as u32;
        // p > 2|G| >= 2·sqrt(|G|)·d for every degree d, so squares mod p
        // determine degrees uniquely and lifts of bounded sums are exact.
        let p = prime_one_mod(m as u64, 2 * g.order());
        let f = PrimeField::new(p);
        let theta = element_of_order(f, m as u64);
        let theta_pow = power_table(f, theta, m as usize);
        let dlog = Dlog::build(f, theta, m as u64);
        let reps: Vec<ElemId> = classes.classes.iter().map(|c| c.rep).collect();
        let sizes: Vec<u64> = classes.classes.iter().map(|c| c.size() as u64).collect();
        let inv_sizes: Vec<u64> = sizes.iter().map(|&s| f.inv(s % f.p)).collect();
        let inv_class: Vec<usize> = reps.iter().map(|&x| g.class_of(g.inv(x))).collect();
        Builder {
            g,
            r,
            m,
            f,
            theta,
            theta_pow,
            dlog,
            reps,
            sizes,
            inv_sizes,
            inv_class,
        }
    }

    /// Apply the class-algebra matrix M_i to a vector without materializing
    /// it. M_i's entry (j, k) counts pairs x in C_i, y in C_j with xy =
    /// rep_k, so (M_i v)[class of x^-1 rep_k] gains v[k] per member x.
    fn apply_class(&self, xs_inv: &[ElemId], v: &[u64]) -> Vec<u64> {
        let g = self.g;
        let f = self.f;
        let mut out = vec![0u64; self.r];
        for (k, &vk) in v.iter().enumerate() {
            if vk == 0 {
                continue;
            }
            let zk = self.reps[k];
            for &xi in xs_inv {
                let j = g.class_of(g.mul(xi, zk)) as usize;
                out[j] = f.add(out[j], vk);
            }
        }
        out
    }

    fn run(self) -> Result<CharacterTable> {
        let eigenvectors = self.simultaneous_eigenvectors()?;
        if eigenvectors.len() != self.r {
            return Err(Error::Verification(format!(
                "expected {} one-dimensional eigenspaces, found {}",
                self.r,
                eigenvectors.len()
            )));
        }
        let f = self.f;
        let order = self.g.order();
        let order_p = order % f.p;

        // Per character: omega row, degree, modular character row.
        let mut rows: Vec<(u64, Vec<u64>)> = Vec::with_capacity(self.r);
        for v in eigenvectors {
            let v0 = v[0];
            if v0 == 0 {
                return Err(Error::Verification(
                    "eigenvector vanishes at the identity class".into(),
                ));
            }
            let inv0 = f.inv(v0);
            let omega: Vec<u64> = v.iter().map(|&x| f.mul(x, inv0)).collect();
            // d^2 = |G| / sum_j omega_j omega_{j'} / h_j
            let mut s = 0u64;
            for j in 0..self.r {
                let t = f.mul(omega[j], omega[self.inv_class[j]]);
                s = f.add(s, f.mul(t, self.inv_sizes[j]));
            }
            let d_sq = f.mul(order_p, f.inv(s));
            let max_d = isqrt(order);
            let d = (1..=max_d)
                .find(|&d| f.mul(d % f.p, d % f.p) == d_sq)
                .ok_or_else(|| {
                    Error::Verification("no integer degree matches the eigenvector".into())
                })?;
            let chi_row: Vec<u64> = (0..self.r)
                .map(|j| f.mul(f.mul(d % f.p, omega[j]), self.inv_sizes[j]))
                .collect();
            rows.push((d, chi_row));
        }

        let degree_sum: u64 = rows.iter().map(|(d, _)| d * d).sum();
        if degree_sum != order {
            return Err(Error::Verification(format!(
                "degree squares sum to {degree_sum}, group order is {order}"
            )));
        }

        // Lift every row to exponent multisets (flat per row: terms plus
        // entry bounds), keeping the modular row for verification.
        let mut lifted: Vec<LiftedRow> = Vec::with_capacity(self.r);
        for (d, chi_row) in rows {
            let (terms, bounds) = self.lift_row(d, &chi_row)?;
            lifted.push(LiftedRow {
                degree: d,
                terms,
                bounds,
                mod_row: chi_row,
            });
        }

        // Canonical order: by degree, then the spectral rows lexicographically.
        lifted.sort_by(|a, b| a.degree.cmp(&b.degree).then_with(|| a.cmp_entries(b)));

        // Arena storage.
        let mut terms: Vec<(u32, i32)> = Vec::new();
        let mut entries: Vec<(u32, u32)> = Vec::with_capacity(self.r * self.r);
        let mut degrees = Vec::with_capacity(self.r);
        for row in &lifted {
            degrees.push(row.degree);
            for j in 0..self.r {
                let entry = row.entry(j);
                let off = terms.len() as u32;
                terms.extend_from_slice(entry);
                entries.push((off, entry.len() as u32));
            }
        }

        // Conjugate pairing: the conjugate of a row is the row composed with
        // the inverse-class permutation, so each partner is found by binary
        // search in the canonical order instead of building negated rows.
        let mut conj_index = Vec::with_capacity(self.r);
        for row in &lifted {
            let idx = lifted
                .binary_search_by(|probe| {
                    probe.degree.cmp(&row.degree).then_with(|| {
                        for j in 0..self.r {
                            let cmp = probe.entry(j).cmp(row.entry(self.inv_class[j]));
                            if cmp != std::cmp::Ordering::Equal {
                                return cmp;
                            }
                        }
                        std::cmp::Ordering::Equal
                    })
                })
                .map_err(|_| {
                    Error::Verification("table is not closed under conjugation".into())
                })?;
            conj_index.push(idx);
        }

        let table = CharacterTable {
            group: self.g.clone(),
            modulus: self.m,
            prime: f.p,
            theta: self.theta,
            degrees,
            conj_index,
            terms,
            entries,
        };

        self.verify_lift(&table, &lifted)?;
        verify_table(&table)?;
        Ok(table)
    }

    /// Lift one modular character row to exponent multisets, flat: the terms
    /// of entry j are `terms[bounds[j]..bounds[j+1]]`.
    fn lift_row(&self, d: u64, chi_row: &[u64]) -> Result<(Vec<(u32, i32)>, Vec<u32>)> {
        let f = self.f;
        let g = self.g;
        let m = self.m as u64;
        let mut terms: Vec<(u32, i32)> = Vec::with_capacity(self.r);
        let mut bounds: Vec<u32> = Vec::with_capacity(self.r + 1);
        bounds.push(0);
        let mut poly: Vec<u64> = Vec::new();
        for j in 0..self.r {
            let e = g.element_order(self.reps[j]);
            if j == 0 {
                terms.push((0u32, d as i32));
                bounds.push(terms.len() as u32);
                continue;
            }
            if d == 1 {
                let t = self.dlog.get(chi_row[j]).ok_or_else(|| {
                    Error::Verification("linear value is not a root of unity".into())
                })?;
                if (t as u64 * e) % m != 0 {
                    return Err(Error::Verification(
                        "linear value is not an e-th root of unity".into(),
                    ));
                }
                terms.push((t, 1));
                bounds.push(terms.len() as u32);
                continue;
            }
            // Power sums chi(g^t) for t = 1..d, then Newton's identities give
            // the elementary symmetric functions of the d eigenvalues.
            let mut psums = vec![0u64; d as usize + 1];
            for t in 1..=d {
                let c = g.power_class(j, t);
                psums[t as usize] = chi_row[c];
            }
            let mut esym = vec![0u64; d as usize + 1];
            esym[0] = 1;
            for k in 1..=d as usize {
                // k e_k = sum_{i=1}^{k} (-1)^(i-1) e_{k-i} p_i
                let mut s = 0u64;
                for i in 1..=k {
                    let term = f.mul(esym[k - i], psums[i]);
                    if i % 2 == 1 {
                        s = f.add(s, term);
                    } else {
                        s = f.sub(s, term);
                    }
                }
                esym[k] = f.mul(s, f.inv(k as u64 % f.p));
            }
            // Characteristic polynomial of the restricted matrix:
            // sum_{k} (-1)^k e_k x^(d-k), ascending storage.
            poly.clear();
            poly.resize(d as usize + 1, 0);
            for k in 0..=d as usize {
                let c = if k % 2 == 0 { esym[k] } else { f.neg(esym[k]) };
                poly[d as usize - k] = c;
            }
            // The eigenvalues of an order-e element are e-th roots of unity,
            // so only the powers theta^(s*m/e) can be roots; trial those with
            // deflation instead of scanning the whole field.
            let step = (m / e) as usize;
            let mut deg = d as usize;
            let mut found = 0u64;
            for s in 0..e as usize {
                let cand = self.theta_pow[s * step];
                let mut mu = 0i32;
                while deg > 0 && poly_eval(f, &poly[..=deg], cand) == 0 {
                    deflate(f, &mut poly, deg, cand);
                    deg -= 1;
                    mu += 1;
                }
                if mu > 0 {
                    terms.push(((s * step) as u32, mu));
                    found += mu as u64;
                }
                if deg == 0 && found == d {
                    break;
                }
            }
            if found != d {
                return Err(Error::Verification(format!(
                    "eigenvalue polynomial split into {found} roots, expected {d}"
                )));
            }
            bounds.push(terms.len() as u32);
        }
        Ok((terms, bounds))
    }

    /// Check each lifted entry re-evaluates to its modular value.
    fn verify_lift(&self, table: &CharacterTable, lifted: &[LiftedRow]) -> Result<()> {
        let f = self.f;
        for (chi, row) in lifted.iter().enumerate() {
            for j in 0..self.r {
                let mut v = 0u64;
                for &(t, mu) in table.spectral(chi, j) {
                    let w = self.theta_pow[t as usize];
                    let term = f.mul(w, f.from_i64(mu as i64));
                    v = f.add(v, term);
                }
                if v != row.mod_row[j] {
                    return Err(Error::Verification(format!(
                        "lifted value disagrees with modular value at ({chi}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    // -- eigen machinery -----------------------------------------------------

    /// All r one-dimensional simultaneous eigenvectors of the class matrices.
    fn simultaneous_eigenvectors(&self) -> Result<Vec<Vec<u64>>> {
        let g = self.g;
        let classes = g.conjugacy_classes();
        let mut resolved: Vec<Vec<u64>> = Vec::new();
        let mut queue: Vec<Vec<Vec<u64>>> = Vec::new();

        // Fast first split: a singleton class of maximal element order acts
        // as a permutation matrix whose eigenvectors come cycle by cycle.
        let singleton = (1..self.r)
            .filter(|&i| self.sizes[i] == 1)
            .max_by_key(|&i| {
                (
                    self.g.element_order(self.reps[i]),
                    std::cmp::Reverse(i),
                )
            });
        let initial = if let Some(z) = singleton {
            self.permutation_split(z)
        } else {
            let mut full = vec![vec![0u64; self.r]; self.r];
            for (i, row) in full.iter_mut().enumerate() {
                row[i] = 1;
            }
            vec![full]
        };
        for space in initial {
            if space.len() == 1 {
                resolved.push(space.into_iter().next().unwrap());
            } else {
                queue.push(space);
            }
        }

        // Remaining splitters: small classes first (application cost grows
        // with class size), high element order first within a size. The class
        // sums commute, so any order reaches the same common eigenbasis.
        let mut order: Vec<usize> = (1..self.r).filter(|&i| Some(i) != singleton).collect();
        order.sort_by_key(|&i| {
            (
                self.sizes[i],
                std::cmp::Reverse(g.element_order(self.reps[i])),
                i,
            )
        });
        // A singleton class whose representative lies in the group generated
        // by the singleton representatives already applied has a class matrix
        // that is a product of theirs, so it acts as a scalar on every space
        // in the queue and cannot refine anything.
        let mut span_gens: Vec<ElemId> = singleton.iter().map(|&z| self.reps[z]).collect();
        let mut span = g.close_subgroup(&span_gens);
        for i in order {
            if queue.is_empty() {
                break;
            }
            if self.sizes[i] == 1 {
                if span.contains(self.reps[i] as usize) {
                    continue;
                }
                span_gens.push(self.reps[i]);
                span = g.close_subgroup(&span_gens);
            }
            let xs_inv: Vec<ElemId> = classes.classes[i]
                .members
                .iter()
                .map(|&x| g.inv(x))
                .collect();
            let mut next_queue = Vec::new();
            for space in queue {
                for part in self.split_by(&space, &xs_inv)? {
                    if part.len() == 1 {
                        resolved.push(part.into_iter().next().unwrap());
                    } else {
                        next_queue.push(part);
                    }
                }
            }
            queue = next_queue;
        }
        if !queue.is_empty() {
            return Err(Error::Verification(
                "class matrices failed to separate all characters".into(),
            ));
        }
        Ok(resolved)
    }

    /// Split the full space by the permutation matrix of a singleton class.
    fn permutation_split(&self, z: usize) -> Vec<Vec<Vec<u64>>> {
        let f = self.f;
        let g = self.g;
        let zrep = self.reps[z];
        // sigma(j) = class of z * rep_j; columns map to rows under M_z.
        let sigma: Vec<usize> = (0..self.r)
            .map(|j| g.class_of(g.mul(zrep, self.reps[j])) as usize)
            .collect();
        let mut seen = vec![false; self.r];
        let mut by_eigenvalue: HashMap<u64, Vec<Vec<u64>>> = HashMap::new();
        for start in 0..self.r {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = sigma[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = sigma[cur];
            }
            let len = cycle.len() as u64;
            debug_assert_eq!(self.m as u64 % len, 0);
            let eta = f.pow(self.theta, self.m as u64 / len);
            let pivot = *cycle.iter().min().unwrap();
            // v[x_t] = lambda^{-t} is an eigenvector with eigenvalue lambda,
            // for each lambda with lambda^len = 1. Scaled so the lowest-index
            // entry is 1: the cycles partition the classes, so these vectors
            // form a unit-pivot echelon basis per eigenvalue without any row
            // reduction.
            for s in 0..len {
                let lambda = f.pow(eta, s);
                let lambda_inv = f.inv(lambda);
                let mut v = vec![0u64; self.r];
                let mut coef = 1u64;
                for &idx in &cycle {
                    v[idx] = coef;
                    coef = f.mul(coef, lambda_inv);
                }
                let scale = f.inv(v[pivot]);
                if scale != 1 {
                    for &idx in &cycle {
                        v[idx] = f.mul(v[idx], scale);
                    }
                }
                by_eigenvalue.entry(lambda).or_default().push(v);
            }
        }
        let mut keys: Vec<u64> = by_eigenvalue.keys().copied().collect();
        keys.sort_unstable();
        keys.into_iter()
            .map(|k| {
                let mut space = by_eigenvalue.remove(&k).unwrap();
                space.sort_by_key(|v| v.iter().position(|&x| x != 0).unwrap());
                space
            })
            .collect()
    }

    /// Split a subspace (unit-pivot basis rows) into eigenspaces of the class
    /// matrix with the given member inverses.
    fn split_by(&self, space: &[Vec<u64>], xs_inv: &[ElemId]) -> Result<Vec<Vec<Vec<u64>>>> {
        let f = self.f;
        let b = space.len();
        let pivots: Vec<usize> = space
            .iter()
            .map(|v| v.iter().position(|&x| x != 0).expect("basis row nonzero"))
            .collect();
        // Restricted matrix: column l = coords of M * basis_l.
        let mut restricted = vec![vec![0u64; b]; b];
        for l in 0..b {
            let w = self.apply_class(xs_inv, &space[l]);
            for (row, &pc) in pivots.iter().enumerate() {
                restricted[row][l] = w[pc];
            }
            // Sanity: w must lie in the span (w - sum coords * basis = 0).
            #[cfg(debug_assertions)]
            {
                let mut check = w.clone();
                for (row, &pc) in pivots.iter().enumerate() {
                    let c = w[pc];
                    let _ = pc;
                    for (x, &bv) in check.iter_mut().zip(&space[row]) {
                        *x = f.sub(*x, f.mul(c, bv));
                    }
                }
                debug_assert!(check.iter().all(|&x| x == 0), "subspace not invariant");
            }
        }
        let cp = charpoly(f, &restricted);
        let roots = modp::roots_with_multiplicity(f, &cp);
        let total: u32 = roots.iter().map(|&(_, mu)| mu).sum();
        if total as usize != b {
            return Err(Error::Verification(
                "restricted class matrix does not split over the working prime".into(),
            ));
        }
        let mut out = Vec::new();
        for (lambda, _) in roots {
            // Kernel of (restricted - lambda I) in coordinates.
            let mut shifted = restricted.clone();
            for (i, row) in shifted.iter_mut().enumerate() {
                row[i] = f.sub(row[i], lambda);
            }
            let coords = kernel_basis(f, &shifted, b);
            let mut vecs: Vec<Vec<u64>> = coords
                .iter()
                .map(|c| {
                    let mut v = vec![0u64; self.r];
                    for (l, &cl) in c.iter().enumerate() {
                        if cl == 0 {
                            continue;
                        }
                        for (x, &bv) in v.iter_mut().zip(&space[l]) {
                            *x = f.add(*x, f.mul(cl, bv));
                        }
                    }
                    v
                })
                .collect();
            rref_space(f, &mut vecs, self.r);
            out.push(vecs);
        }
        Ok(out)
    }
}

fn rref_space(f: PrimeField, rows: &mut Vec<Vec<u64>>, cols: usize) {
    modp::rref(f, rows, cols);
}

// ---------------------------------------------------------------------------
// Table-level verification
// ---------------------------------------------------------------------------

/// Verify the finished table. Tier by size: small tables get exact cyclotomic
/// row and column orthogonality; large abelian tables get a homomorphism
/// check plus row distinctness; everything else gets full modular
/// orthogonality. Degree bookkeeping is checked everywhere.
fn verify_table(t: &CharacterTable) -> Result<()> {
    let g = t.group();
    let order = g.order();
    let r = t.num_classes();
    let classes = g.conjugacy_classes();
    let sizes: Vec<i64> = classes.classes.iter().map(|c| c.size() as i64).collect();

    let fail = |msg: String| Err(Error::Verification(msg));

    for (chi, &d) in t.degrees.iter().enumerate() {
        if d == 0 || order % d != 0 {
            return fail(format!("degree {d} of character {chi} does not divide {order}"));
        }
    }

    if order <= 360 {
        // Exact first and second orthogonality over the cyclotomics.
        let m = t.modulus;
        for a in 0..r {
            for b in a..r {
                let mut acc = vec![0i64; m as usize];
                for j in 0..r {
                    for &(e1, m1) in t.spectral(a, j) {
                        for &(e2, m2) in t.spectral(b, j) {
                            let e = (e1 + m - e2 % m) % m;
                            acc[e as usize] += sizes[j] * m1 as i64 * m2 as i64;
                        }
                    }
                }
                let v = Cyclotomic::from_exponent_vector(m, &acc);
                let expect = if a == b { order as i64 } else { 0 };
                if v.as_integer() != Some(expect) {
                    return fail(format!("row orthogonality fails for ({a}, {b})"));
                }
            }
        }
        for j in 0..r {
            for k in j..r {
                let mut acc = vec![0i64; m as usize];
                for chi in 0..r {
                    for &(e1, m1) in t.spectral(chi, j) {
                        for &(e2, m2) in t.spectral(chi, k) {
                            let e = (e1 + m - e2 % m) % m;
                            acc[e as usize] += m1 as i64 * m2 as i64;
                        }
                    }
                }
                let v = Cyclotomic::from_exponent_vector(m, &acc);
                let expect = if j == k { order as i64 / sizes[j] } else { 0 };
                if v.as_integer() != Some(expect) {
                    return fail(format!("column orthogonality fails for ({j}, {k})"));
                }
            }
        }
        return Ok(());
    }

    let f = PrimeField::new(t.prime);
    let theta_pow = power_table(f, t.theta, t.modulus as usize);
    let modval = |chi: usize, j: usize| -> u64 {
        let mut v = 0u64;
        for &(e, mu) in t.spectral(chi, j) {
            v = f.add(v, f.mul(theta_pow[e as usize], f.from_i64(mu as i64)));
        }
        v
    };

    if g.is_abelian() {
        // Homomorphism check against the generators, plus row distinctness.
        let gens = g.generator_ids();
        let gen_classes: Vec<usize> = gens.iter().map(|&x| g.class_of(x)).collect();
        let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
        for chi in 0..r {
            if t.degrees[chi] != 1 {
                return fail("abelian table has a non-linear row".into());
            }
            let row: Vec<u64> = (0..r).map(|j| modval(chi, j)).collect();
            for (&gid, &gc) in gens.iter().zip(&gen_classes) {
                for j in 0..r {
                    let prod_class = g.class_of(g.mul(gid, classes.classes[j].rep)) as usize;
                    if row[prod_class] != f.mul(row[gc], row[j]) {
                        return fail(format!("row {chi} is not multiplicative"));
                    }
                }
            }
            if let Some(prev) = seen.insert(row, chi) {
                return fail(format!("rows {prev} and {chi} coincide"));
            }
        }
        return Ok(());
    }

    // Moderate nonabelian: full modular orthogonality. Very large tables get
    // every row norm plus a cross-row band; the exact per-entry lift check
    // and the degree bookkeeping still run at every size.
    let band = if r <= 250 { r } else { 24 };
    let order_p = order % f.p;
    let rows: Vec<Vec<u64>> = (0..r)
        .map(|chi| (0..r).map(|j| modval(chi, j)).collect())
        .collect();
    let inv_class: Vec<usize> = (0..r)
        .map(|j| g.class_of(g.inv(classes.classes[j].rep)))
        .collect();
    for a in 0..r {
        for b in a..r {
            if a != b && a >= band {
                continue;
            }
            let mut s = 0u64;
            for j in 0..r {
                let t1 = f.mul(rows[a][j], rows[b][inv_class[j]]);
                s = f.add(s, f.mul(t1, (sizes[j] as u64) % f.p));
            }
            let expect = if a == b { order_p } else { 0 };
            if s != expect {
                return fail(format!("modular orthogonality fails for ({a}, {b})"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::group_from_spec;

    fn table(spec: &str) -> CharacterTable {
        let g = group_from_spec(spec, 2000).unwrap();
        CharacterTable::compute(&g).unwrap()
    }

    #[test]
    fn trivial_and_tiny() {
        let t = table("C1");
        assert_eq!(t.num_characters(), 1);
        assert_eq!(t.degrees, vec![1]);
        assert_eq!(t.integer_value(0, 0), Some(1));

        let t = table("C2");
        assert_eq!(t.degrees, vec![1, 1]);
        assert_eq!(t.integer_value(0, 1), Some(1));
        assert_eq!(t.integer_value(1, 1), Some(-1));
    }

    #[test]
    fn s3_table() {
        let t = table("S3");
        assert_eq!(t.degrees, vec![1, 1, 2]);
        // Classes: identity, transpositions (order 2), 3-cycles (order 3).
        // Sign character: 1, -1, 1. Standard: 2, 0, -1.
        assert_eq!(t.integer_value(0, 0), Some(1));
        assert_eq!(t.integer_value(1, 1), Some(-1));
        assert_eq!(t.integer_value(1, 2), Some(1));
        assert_eq!(t.integer_value(2, 0), Some(2));
        assert_eq!(t.integer_value(2, 1), Some(0));
        assert_eq!(t.integer_value(2, 2), Some(-1));
    }

    #[test]
    fn s4_and_a5_degrees() {
        assert_eq!(table("S4").degrees, vec![1, 1, 2, 3, 3]);
        assert_eq!(table("A5").degrees, vec![1, 3, 3, 4, 5]);
        assert_eq!(table("A6").degrees, vec![1, 5, 5, 8, 8, 9, 10]);
        assert_eq!(table("S6").degrees, vec![1, 1, 5, 5, 5, 5, 9, 9, 10, 10, 16]);
    }

    #[test]
    fn c6_table_is_the_standard_one() {
        let t = table("C6");
        assert_eq!(t.modulus, 6);
        assert_eq!(t.degrees, vec![1; 6]);
        // All 36 entries are single roots of unity; row chi at the generator
        // class determines the rest multiplicatively.
        let g = t.group().clone();
        let gen = g.generator_ids()[0];
        let gen_class = g.class_of(gen);
        let mut seen = std::collections::HashSet::new();
        for chi in 0..6 {
            let spec = t.spectral(chi, gen_class);
            assert_eq!(spec.len(), 1);
            let (e, mu) = spec[0];
            assert_eq!(mu, 1);
            seen.insert(e);
        }
        // The six rows hit all six sixth roots of unity at the generator.
        assert_eq!(seen.len(), 6);
    }

    #[test]
    fn a5_irrational_values_are_golden(){
        let t = table("A5");
        // The two degree-3 characters take values (1 +- sqrt 5)/2 on the two
        // classes of 5-cycles: chi(g) = -(z^2 + z^3) or -(z + z^4), z = zeta_5.
        // Their squares satisfy x^2 = x + 1.
        let g = t.group().clone();
        let classes = g.conjugacy_classes();
        let five_classes: Vec<usize> = (0..5)
            .filter(|&j| classes.classes[j].element_order == 5)
            .collect();
        assert_eq!(five_classes.len(), 2);
        for chi in [1usize, 2] {
            assert_eq!(t.degree(chi), 3);
            for &j in &five_classes {
                let v = t.value(chi, j);
                // x satisfies x^2 - x - 1 = 0.
                let sq = v.mul(&v);
                let lhs = sq.sub(&v).sub(&Cyclotomic::one(t.modulus));
                assert!(lhs.is_zero());
            }
        }
    }

    #[test]
    fn q8_frobenius_schur() {
        let g = group_from_spec("perm: (0 2 1 3)(4 6 5 7), (0 4 1 5)(2 7 3 6) deg 8", 2000)
            .unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 1, 1, 2]);
        // The 2-dimensional character is quaternionic: indicator -1.
        assert_eq!(t.frobenius_schur(4), -1);
        // The linear characters are real.
        for chi in 0..4 {
            assert_eq!(t.frobenius_schur(chi), 1);
        }
    }

    #[test]
    fn frobenius_schur_sum_counts_involutions() {
        for spec in ["S3", "S4", "A5", "C6", "Dih6", "C2xC4",
                     "perm: (0 1 2), (1 2)(3 4 5 6) deg 7"] {
            let g = group_from_spec(spec, 2000).unwrap();
            let t = CharacterTable::compute(&g).unwrap();
            let invol = (0..g.order() as u16)
                .filter(|&x| g.element_order(x) == 2)
                .count() as i64;
            let sum: i64 = (0..t.num_characters())
                .map(|chi| t.frobenius_schur(chi) * t.degree(chi) as i64)
                .sum();
            assert_eq!(sum, 1 + invol, "{spec}");
        }
    }

    #[test]
    fn conjugate_pairing() {
        let t = table("C5");
        // Trivial is self-conjugate; the four nontrivial rows pair up.
        assert_eq!(t.conjugate_character(0), 0);
        let mut pairs = 0;
        for chi in 1..5 {
            let c = t.conjugate_character(chi);
            assert_ne!(c, chi);
            assert_eq!(t.conjugate_character(c), chi);
            if c > chi {
                pairs += 1;
            }
        }
        assert_eq!(pairs, 2);
        // All S4 characters are real.
        let t = table("S4");
        for chi in 0..5 {
            assert!(t.is_real_character(chi));
            assert_eq!(t.frobenius_schur(chi), 1);
        }
    }

    #[test]
    fn dicyclic_table() {
        let t = table("perm: (0 1 2), (1 2)(3 4 5 6) deg 7");
        assert_eq!(t.degrees, vec![1, 1, 1, 1, 2, 2]);
        // One of the 2-dimensional characters is quaternionic.
        let nus: Vec<i64> = (4..6).map(|chi| t.frobenius_schur(chi)).collect();
        assert!(nus.contains(&-1));
    }

    #[test]
    fn large_abelian_fast_path() {
        let t = table("C44xC45");
        assert_eq!(t.num_characters(), 1980);
        assert_eq!(t.modulus, 1980);
        assert!(t.degrees.iter().all(|&d| d == 1));
    }

    #[test]
    fn moderate_product_table() {
        let t = table("C6xS3");
        assert_eq!(t.num_characters(), 18);
        let sum: u64 = t.degrees.iter().map(|d| d * d).sum();
        assert_eq!(sum, 36);
    }

    #[test]
    fn ppo_classes() {
        let t = table("C6");
        // C6 classes are the six elements, sorted by element order:
        // 1, 2, 3, 3, 6, 6. Prime powers: the first four.
        assert_eq!(t.prime_power_order_classes(), vec![0, 1, 2, 3]);
        let t = table("S3");
        assert_eq!(t.prime_power_order_classes(), vec![0, 1, 2]);
    }

    #[test]
    fn inner_products() {
        let t = table("S3");
        let r = t.num_classes();
        let row = |chi: usize| -> Vec<Cyclotomic> { (0..r).map(|j| t.value(chi, j)).collect() };
        let triv = row(0);
        let std = row(2);
        assert_eq!(t.inner_product(&triv, &triv).unwrap().as_integer(), Some(1));
        assert_eq!(t.inner_product(&std, &std).unwrap().as_integer(), Some(1));
        assert_eq!(t.inner_product(&std, &triv).unwrap().as_integer(), Some(0));
        assert!(t.inner_product(&triv[..2], &triv).is_err());

        // Indicator of the identity class is not a virtual character: its
        // norm 1/|G| is not a cyclotomic integer.
        let t2 = table("C2");
        let m = t2.modulus;
        let spike = vec![Cyclotomic::one(m), Cyclotomic::zero(m)];
        assert!(t2.inner_product(&spike, &spike).is_err());
    }

    #[test]
    fn ppo_restriction_vectors() {
        let t = table("C6");
        // Trivial module: all ones on the four ppo classes.
        let mut mult = vec![0i64; 6];
        mult[0] = 1;
        let vals = t.ppo_restriction(&mult).unwrap();
        assert_eq!(vals.len(), 4);
        assert!(vals.iter().all(|v| v.as_integer() == Some(1)));

        // Regular representation: |G| at the identity, 0 elsewhere.
        let reg = vec![1i64; 6];
        let vals = t.ppo_restriction(&reg).unwrap();
        let ints: Vec<i64> = vals.iter().map(|v| v.as_integer().unwrap()).collect();
        assert_eq!(ints, vec![6, 0, 0, 0]);

        let zero = vec![0i64; 6];
        let vals = t.ppo_restriction(&zero).unwrap();
        assert!(vals.iter().all(|v| v.is_zero()));

        assert!(t.ppo_restriction(&[1]).is_err());
    }

    #[test]
    fn power_maps_and_indicator_pairing() {
        let t = table("S4");
        // Squaring sends the transposition class (index 1, order 2) to the
        // identity class and the 4-cycle class to the double-transposition
        // class.
        let classes = t.group().conjugacy_classes();
        let pm = t.power_map(2);
        for (j, c) in classes.classes.iter().enumerate() {
            if c.element_order == 2 {
                assert_eq!(pm[j], 0);
            }
            if c.element_order == 4 {
                assert_eq!(classes.classes[pm[j]].element_order, 2);
            }
        }
        // Indicator 0 exactly for rows moved by conjugation.
        for g in ["S4", "C5", "C6xS3", "perm: (0 2 1 3)(4 6 5 7), (0 4 1 5)(2 7 3 6) deg 8"] {
            let t = table(g);
            for chi in 0..t.num_characters() {
                let fixed = t.conjugate_character(chi) == chi;
                assert_eq!(t.frobenius_schur(chi) == 0, !fixed, "{g} row {chi}");
            }
        }
    }
}
