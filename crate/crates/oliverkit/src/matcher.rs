//! Matched-module membership: decides, for each coefficient flavor, whether
//! the group carries a pair of modules (V_0, V_1) with equal characters on
//! every element of prime-power order and fixed-subspace dimensions (0, 1).
//!
//! The decision is an integer-lattice problem over the character table. A
//! virtual difference delta (multiplicities of V_1 minus V_0) must vanish on
//! every prime-power-order class and respect the flavor's symmetry; the
//! flavor symmetry is built into a reduced variable set (one variable per
//! flavor-irreducible), and the vanishing conditions become integer rows,
//! phi(e) of them per Galois orbit of classes with element order e. One
//! orbit representative suffices because a Galois automorphism sigma_k maps
//! the value of any character at g to its value at g^k, so a value vanishing
//! at the representative vanishes across the orbit; the full per-class check
//! is still run on every produced basis (`build_match_lattice`) and witness.
//!
//! Membership holds iff the kernel of the constraint matrix contains a
//! vector with trivial-character coordinate 1, decided by a gcd over the
//! streamed kernel; the witness splits that vector into its positive and
//! negative parts.

use crate::chartab::CharacterTable;
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::intlin::{ColumnKernel, PushOutcome, StreamInt};
use num_bigint::BigInt;
use serde::Serialize;

/// Coefficient flavor of the matched-module question.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Flavor {
    #[serde(rename = "complex")]
    Complex,
    #[serde(rename = "complex_selfconjugate")]
    ComplexSelfconjugate,
    #[serde(rename = "real")]
    Real,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::Complex, Flavor::ComplexSelfconjugate, Flavor::Real];

    pub fn parse(s: &str) -> Result<Flavor> {
        Ok(match s {
            "complex" => Flavor::Complex,
            "complex_selfconjugate" => Flavor::ComplexSelfconjugate,
            "real" => Flavor::Real,
            other => {
                return Err(Error::Parse(format!(
                    "unknown flavor {other:?}; expected complex, complex_selfconjugate or real"
                )))
            }
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Complex => "complex",
            Flavor::ComplexSelfconjugate => "complex_selfconjugate",
            Flavor::Real => "real",
        }
    }

    fn strategy(self) -> &'static dyn FlavorStrategy {
        match self {
            Flavor::Complex => &ComplexStrategy,
            Flavor::ComplexSelfconjugate => &SelfconjugateStrategy,
            Flavor::Real => &RealStrategy,
        }
    }
}

/// One variable of the reduced multiplicity space: a formal nonnegative
/// multiple of the listed irreducibles (index, multiplicity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlavorVariable {
    pub parts: Vec<(usize, i64)>,
}

/// A flavor's encoding of module multiplicity vectors.
///
/// Each strategy fixes the reduced variable set (always listing the trivial
/// character alone as variable 0), the basis in which witness vectors are
/// expressed, and the conversion from witness vectors back to complex
/// irreducible multiplicities.
trait FlavorStrategy: Sync {
    /// Reduced variables; variable 0 is the trivial character.
    fn variables(&self, table: &CharacterTable) -> Vec<FlavorVariable>;

    /// Witness vectors from a reduced lattice vector (positive part, negative part).
    fn witness_vectors(&self, table: &CharacterTable, delta: &[i64]) -> (Vec<u64>, Vec<u64>);

    /// Complex irreducible multiplicities of a witness vector, checking the
    /// flavor's symmetry; `None` when the vector is malformed for the flavor.
    fn complex_multiplicities(&self, table: &CharacterTable, v: &[u64]) -> Option<Vec<i64>>;
}

struct ComplexStrategy;
struct SelfconjugateStrategy;
struct RealStrategy;

impl FlavorStrategy for ComplexStrategy {
    fn variables(&self, table: &CharacterTable) -> Vec<FlavorVariable> {
        (0..table.num_characters())
            .map(|i| FlavorVariable { parts: vec![(i, 1)] })
            .collect()
    }

    fn witness_vectors(&self, _table: &CharacterTable, delta: &[i64]) -> (Vec<u64>, Vec<u64>) {
        split_parts(delta)
    }

    fn complex_multiplicities(&self, table: &CharacterTable, v: &[u64]) -> Option<Vec<i64>> {
        if v.len() != table.num_characters() {
            return None;
        }
        v.iter().map(|&x| i64::try_from(x).ok()).collect()
    }
}

impl FlavorStrategy for SelfconjugateStrategy {
    fn variables(&self, table: &CharacterTable) -> Vec<FlavorVariable> {
        let mut vars = Vec::new();
        for i in 0..table.num_characters() {
            let c = table.conjugate_character(i);
            if c == i {
                vars.push(FlavorVariable { parts: vec![(i, 1)] });
            } else if i < c {
                vars.push(FlavorVariable {
                    parts: vec![(i, 1), (c, 1)],
                });
            }
        }
        vars
    }

    fn witness_vectors(&self, table: &CharacterTable, delta: &[i64]) -> (Vec<u64>, Vec<u64>) {
        let expanded = expand(&self.variables(table), delta, table.num_characters());
        split_parts(&expanded)
    }

    fn complex_multiplicities(&self, table: &CharacterTable, v: &[u64]) -> Option<Vec<i64>> {
        if v.len() != table.num_characters() {
            return None;
        }
        // Self-conjugate module: multiplicities symmetric under conjugation.
        for i in 0..v.len() {
            if v[table.conjugate_character(i)] != v[i] {
                return None;
            }
        }
        v.iter().map(|&x| i64::try_from(x).ok()).collect()
    }
}

impl FlavorStrategy for RealStrategy {
    /// Real irreducibles: an indicator-1 character as-is; an indicator-0
    /// conjugate pair fused; an indicator-(-1) character doubled.
    fn variables(&self, table: &CharacterTable) -> Vec<FlavorVariable> {
        let mut vars = Vec::new();
        for i in 0..table.num_characters() {
            let c = table.conjugate_character(i);
            if c == i {
                if table.frobenius_schur(i) == 1 {
                    vars.push(FlavorVariable { parts: vec![(i, 1)] });
                } else {
                    vars.push(FlavorVariable { parts: vec![(i, 2)] });
                }
            } else if i < c {
                vars.push(FlavorVariable {
                    parts: vec![(i, 1), (c, 1)],
                });
            }
        }
        vars
    }

    fn witness_vectors(&self, _table: &CharacterTable, delta: &[i64]) -> (Vec<u64>, Vec<u64>) {
        split_parts(delta)
    }

    fn complex_multiplicities(&self, table: &CharacterTable, v: &[u64]) -> Option<Vec<i64>> {
        let vars = self.variables(table);
        if v.len() != vars.len() {
            return None;
        }
        let signed: Vec<i64> = v
            .iter()
            .map(|&x| i64::try_from(x).ok())
            .collect::<Option<_>>()?;
        Some(expand(&vars, &signed, table.num_characters()))
    }
}

/// Positive/negative parts of a signed vector.
fn split_parts(delta: &[i64]) -> (Vec<u64>, Vec<u64>) {
    let v1 = delta.iter().map(|&x| x.max(0) as u64).collect();
    let v0 = delta.iter().map(|&x| (-x).max(0) as u64).collect();
    (v0, v1)
}

/// Expand a reduced vector into complex irreducible multiplicities.
fn expand(vars: &[FlavorVariable], reduced: &[i64], r: usize) -> Vec<i64> {
    let mut out = vec![0i64; r];
    for (var, &coef) in vars.iter().zip(reduced) {
        for &(i, mult) in &var.parts {
            out[i] += coef * mult;
        }
    }
    out
}

/// A matched pair of modules: multiplicity vectors over the table's
/// irreducibles (complex flavors) or over the real irreducibles (real
/// flavor), with the complex irreducible degrees for readability.
#[derive(Debug, Clone, Serialize)]
pub struct MatchedPairWitness {
    pub flavor: Flavor,
    pub v0: Vec<u64>,
    pub v1: Vec<u64>,
    pub degrees: Vec<u64>,
}

/// Basis of {delta : delta vanishes on all prime-power-order classes and
/// respects the flavor symmetry}, stored both over the reduced variables and
/// expanded over the table's irreducibles.
#[derive(Debug, Clone)]
pub struct MatchLattice {
    pub flavor: Flavor,
    pub variables: Vec<FlavorVariable>,
    /// Basis rows over the reduced variables.
    pub reduced_basis: Vec<Vec<i64>>,
    /// The same rows expanded over the table's irreducibles.
    pub basis: Vec<Vec<i64>>,
    /// Rank of the constraint system.
    pub constraint_rank: usize,
}

impl MatchLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

// ---------------------------------------------------------------------------
// Constraint system
// ---------------------------------------------------------------------------

/// The vanishing conditions as integer columns, one per reduced variable.
struct ConstraintSystem {
    num_rows: usize,
    /// Column-major coefficients; columns[v] has length num_rows.
    columns: Vec<Vec<i64>>,
}

/// The value of a flavor variable at one class, as a cyclotomic integer at
/// the class's own level e (element order): the table stores values as
/// multisets of exponents of zeta_m, all divisible by m/e on such a class.
fn variable_value_at_level(
    table: &CharacterTable,
    var: &FlavorVariable,
    class: usize,
    e: u64,
) -> Cyclotomic {
    let m = table.modulus as u64;
    let step = m / e;
    let mut terms: Vec<(u32, i64)> = Vec::new();
    for &(i, mult) in &var.parts {
        for &(t, mu) in table.spectral(i, class) {
            debug_assert_eq!(t as u64 % step, 0);
            terms.push(((t as u64 / step) as u32, mu as i64 * mult));
        }
    }
    Cyclotomic::from_exponent_multiset(e as u32, &terms)
}

fn constraint_system(table: &CharacterTable, vars: &[FlavorVariable]) -> ConstraintSystem {
    let g = table.group();
    let m = g.exponent();
    let classes = g.conjugacy_classes();
    let ppo = table.prime_power_order_classes();

    // Galois orbits of ppo classes: c -> class of g^k over k coprime to m.
    let mut orbit_reps = Vec::new();
    let mut orders = Vec::new();
    let mut seen = vec![false; table.num_classes()];
    for &c in &ppo {
        if seen[c] {
            continue;
        }
        orbit_reps.push(c);
        orders.push(classes.classes[c].element_order);
        let mut k = 1u64;
        while k < m {
            if num_integer::gcd(k, m) == 1 {
                seen[g.power_class(c, k)] = true;
            }
            k += 1;
        }
        if m == 1 {
            seen[c] = true;
        }
    }

    let phi = |e: u64| -> usize { crate::cyclo::context(e as u32).phi };
    let num_rows: usize = orders.iter().map(|&e| phi(e)).sum();
    let mut columns = Vec::with_capacity(vars.len());
    for var in vars {
        let mut col = Vec::with_capacity(num_rows);
        for (idx, &c) in orbit_reps.iter().enumerate() {
            let val = variable_value_at_level(table, var, c, orders[idx]);
            col.extend_from_slice(&val.coeffs);
        }
        debug_assert_eq!(col.len(), num_rows);
        columns.push(col);
    }
    ConstraintSystem { num_rows, columns }
}

// ---------------------------------------------------------------------------
// Kernel runs
// ---------------------------------------------------------------------------

/// Gcd-folding state over the trivial coordinates of streamed kernel vectors:
/// keeps one representative kernel vector whose trivial coordinate is the
/// running gcd.
struct GcdFold<T> {
    gcd: T,
    rep: Vec<T>,
}

impl<T: StreamInt> GcdFold<T> {
    fn new() -> Self {
        GcdFold {
            gcd: T::zero(),
            rep: Vec::new(),
        }
    }

    /// Fold a kernel vector in; `None` on arithmetic overflow.
    fn fold(&mut self, expr: &[T], nvars: usize) -> Option<()> {
        let t = expr.first().cloned().unwrap_or_else(T::zero);
        if t.is_zero() {
            return Some(());
        }
        let mut e = expr.to_vec();
        e.resize(nvars, T::zero());
        if self.gcd.is_zero() {
            if t.is_negative() {
                for x in e.iter_mut() {
                    *x = T::zero() - x.clone();
                }
            }
            self.gcd = t.abs();
            self.rep = e;
            return Some(());
        }
        // gcd' = x*gcd + y*t; rep' = x*rep + y*e keeps coordinate 0 = gcd'.
        let (g, x, y) = ext_gcd_generic(&self.gcd, &t)?;
        if g == self.gcd {
            return Some(());
        }
        let mut rep = vec![T::zero(); nvars];
        self.rep.resize(nvars, T::zero());
        for i in 0..nvars {
            let a = self.rep[i].checked_mul(&x)?;
            let b = e[i].checked_mul(&y)?;
            rep[i] = a.checked_add(&b)?;
        }
        self.gcd = g;
        self.rep = rep;
        Some(())
    }

    fn matched(&self) -> bool {
        self.gcd == T::one()
    }
}

fn ext_gcd_generic<T: StreamInt>(a: &T, b: &T) -> Option<(T, T, T)> {
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

enum MembershipRun {
    Done { delta: Option<Vec<i64>> },
    Overflow,
}

/// Stream the kernel, folding trivial coordinates; stops as soon as the gcd
/// reaches 1. Any kernel vector of a column prefix, padded with zeros, is a
/// kernel vector of the whole system, so stopping early is sound.
fn membership_run<T: StreamInt>(sys: &ConstraintSystem) -> MembershipRun {
    let nvars = sys.columns.len();
    let mut ck: ColumnKernel<T> = ColumnKernel::new(sys.num_rows);
    let mut fold: GcdFold<T> = GcdFold::new();
    for col in &sys.columns {
        match ck.push(col) {
            PushOutcome::Independent => {}
            PushOutcome::Dependent(expr) => {
                if fold.fold(&expr, nvars).is_none() {
                    return MembershipRun::Overflow;
                }
                if fold.matched() {
                    break;
                }
            }
            PushOutcome::Overflow => return MembershipRun::Overflow,
        }
    }
    if !fold.matched() {
        return MembershipRun::Done { delta: None };
    }
    let delta: Option<Vec<i64>> = fold.rep.iter().map(|x| to_i64(x)).collect();
    match delta {
        Some(d) => MembershipRun::Done { delta: Some(d) },
        None => MembershipRun::Overflow,
    }
}

fn to_i64<T: StreamInt>(x: &T) -> Option<i64> {
    x.to_i64()
}

/// Full kernel basis over the reduced variables.
fn kernel_run<T: StreamInt>(sys: &ConstraintSystem) -> Option<(Vec<Vec<i64>>, usize)> {
    let nvars = sys.columns.len();
    let mut ck: ColumnKernel<T> = ColumnKernel::new(sys.num_rows);
    let mut basis = Vec::new();
    for col in &sys.columns {
        match ck.push(col) {
            PushOutcome::Independent => {}
            PushOutcome::Dependent(expr) => {
                let mut row: Vec<i64> = expr.iter().map(|x| to_i64(x)).collect::<Option<_>>()?;
                row.resize(nvars, 0);
                basis.push(row);
            }
            PushOutcome::Overflow => return None,
        }
    }
    Some((basis, ck.rank()))
}

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

/// Compute the full lattice of flavored virtual characters vanishing on all
/// prime-power-order classes. Every basis row is re-verified by evaluating
/// its expansion on every ppo class exactly.
pub fn build_match_lattice(table: &CharacterTable, flavor: Flavor) -> Result<MatchLattice> {
    let strat = flavor.strategy();
    let vars = strat.variables(table);
    let r = table.num_characters();

    if table.prime_power_order_classes().len() == table.num_classes() {
        // Characters are linearly independent as class functions, so a
        // constraint on every class forces the zero lattice.
        return Ok(MatchLattice {
            flavor,
            variables: vars,
            reduced_basis: Vec::new(),
            basis: Vec::new(),
            constraint_rank: r,
        });
    }

    let sys = constraint_system(table, &vars);
    let (reduced_basis, constraint_rank) = match kernel_run::<i128>(&sys) {
        Some(out) => out,
        None => kernel_run::<BigInt>(&sys)
            .ok_or_else(|| Error::Domain("lattice basis entry exceeds 64 bits".into()))?,
    };
    let basis: Vec<Vec<i64>> = reduced_basis
        .iter()
        .map(|row| expand(&vars, row, r))
        .collect();
    for (idx, row) in basis.iter().enumerate() {
        if !vanishes_on_all_ppo(table, row) {
            return Err(Error::Verification(format!(
                "lattice basis row {idx} does not vanish on every prime-power-order class"
            )));
        }
    }
    Ok(MatchLattice {
        flavor,
        variables: vars,
        reduced_basis,
        basis,
        constraint_rank,
    })
}

/// Exact check that a virtual character (complex multiplicities) vanishes on
/// every prime-power-order class, identity included.
fn vanishes_on_all_ppo(table: &CharacterTable, mults: &[i64]) -> bool {
    match table.ppo_restriction(mults) {
        Ok(vals) => vals.iter().all(Cyclotomic::is_zero),
        Err(_) => false,
    }
}

/// Decide membership for a table already computed; returns the witness for
/// positive answers. The negative answer is certified by the completed gcd
/// over the kernel's trivial coordinates.
pub fn membership_with_table(
    table: &CharacterTable,
    flavor: Flavor,
) -> Result<(bool, Option<MatchedPairWitness>)> {
    if table.prime_power_order_classes().len() == table.num_classes() {
        return Ok((false, None));
    }
    let strat = flavor.strategy();
    let vars = strat.variables(table);
    let sys = constraint_system(table, &vars);
    let delta = match membership_run::<i128>(&sys) {
        MembershipRun::Done { delta } => delta,
        MembershipRun::Overflow => match membership_run::<BigInt>(&sys) {
            MembershipRun::Done { delta } => delta,
            MembershipRun::Overflow => {
                return Err(Error::Domain("witness coordinate exceeds 64 bits".into()))
            }
        },
    };
    let Some(delta) = delta else {
        return Ok((false, None));
    };
    debug_assert_eq!(delta[0], 1);
    let (v0, v1) = strat.witness_vectors(table, &delta);
    let witness = MatchedPairWitness {
        flavor,
        v0,
        v1,
        degrees: (0..table.num_characters()).map(|i| table.degree(i)).collect(),
    };
    if !verify_witness(table, &witness) {
        return Err(Error::Verification(format!(
            "constructed {} witness failed independent re-verification",
            flavor.name()
        )));
    }
    Ok((true, Some(witness)))
}

/// Decide membership for a group, computing its character table.
pub fn m_class_membership(
    g: &FiniteGroup,
    flavor: Flavor,
) -> Result<(bool, Option<MatchedPairWitness>)> {
    let table = CharacterTable::compute(g)?;
    membership_with_table(&table, flavor)
}

/// Recheck every witness invariant from raw character values: vector shape
/// and flavor symmetry, trivial multiplicities exactly (0, 1), and equality
/// of the two characters on every nonidentity prime-power-order class. (The
/// identity class is where the trivial-multiplicity pinning lives; forcing
/// equality there too would reject the trivial-group witness.)
pub fn verify_witness(table: &CharacterTable, w: &MatchedPairWitness) -> bool {
    let strat = w.flavor.strategy();
    let Some(m0) = strat.complex_multiplicities(table, &w.v0) else {
        return false;
    };
    let Some(m1) = strat.complex_multiplicities(table, &w.v1) else {
        return false;
    };
    if m0[0] != 0 || m1[0] != 1 {
        return false;
    }
    let (Ok(r0), Ok(r1)) = (table.ppo_restriction(&m0), table.ppo_restriction(&m1)) else {
        return false;
    };
    // Entry 0 is the identity class (classes are sorted identity-first).
    r0.iter().zip(&r1).skip(1).all(|(a, b)| a == b)
}

// ---------------------------------------------------------------------------
// Independent bounded oracle
// ---------------------------------------------------------------------------

/// Exhaustive bounded search for a matched pair, independent of the kernel
/// machinery: candidate differences delta with trivial coordinate 1 are
/// enumerated over supports of up to three further variables with
/// coefficients up to `bound` (plus supports of up to five with unit
/// coefficients when the variable count is at most 12), prefiltered by the
/// integer constraint rows, and confirmed against raw cyclotomic values on
/// every prime-power-order class. The first hit in the deterministic
/// enumeration order is returned.
pub fn brute_force_witness(
    table: &CharacterTable,
    flavor: Flavor,
    bound: i64,
) -> Option<MatchedPairWitness> {
    let strat = flavor.strategy();
    let vars = strat.variables(table);
    let n = vars.len();
    let sys = constraint_system(table, &vars);
    let r = table.num_characters();

    let confirm = |delta: &[i64]| -> bool {
        // Raw values on every prime-power-order class, identity included
        // (the identity row makes the two dimensions equal).
        vanishes_on_all_ppo(table, &expand(&vars, delta, r))
    };

    let prefilter = |delta: &[i64], support: &[usize]| -> bool {
        for row in 0..sys.num_rows {
            let mut acc: i64 = sys.columns[0][row];
            for &v in support {
                acc += delta[v] * sys.columns[v][row];
            }
            if acc != 0 {
                return false;
            }
        }
        true
    };

    let emit = |delta: &[i64], support: &[usize]| -> Option<MatchedPairWitness> {
        if !prefilter(delta, support) {
            return None;
        }
        if !confirm(delta) {
            return None;
        }
        let (v0, v1) = strat.witness_vectors(table, delta);
        let w = MatchedPairWitness {
            flavor,
            v0,
            v1,
            degrees: (0..r).map(|i| table.degree(i)).collect(),
        };
        verify_witness(table, &w).then_some(w)
    };

    // Supports of size up to 3 with coefficients in [-bound, bound].
    let mut delta = vec![0i64; n];
    delta[0] = 1;
    let others: Vec<usize> = (1..n).collect();
    for k in 0..=3usize.min(others.len()) {
        let mut found = None;
        for_each_combination(&others, k, &mut |support| {
            if found.is_some() {
                return;
            }
            let mut coefs = vec![-bound; k];
            loop {
                if coefs.iter().all(|&c| c != 0) {
                    for (s, &c) in support.iter().zip(&coefs) {
                        delta[*s] = c;
                    }
                    if let Some(w) = emit(&delta, support) {
                        found = Some(w);
                    }
                    for &s in support {
                        delta[s] = 0;
                    }
                    if found.is_some() {
                        return;
                    }
                }
                // Odometer over [-bound, bound]^k.
                let mut pos = 0;
                loop {
                    if pos == k {
                        return;
                    }
                    coefs[pos] += 1;
                    if coefs[pos] <= bound {
                        break;
                    }
                    coefs[pos] = -bound;
                    pos += 1;
                }
            }
        });
        if found.is_some() {
            return found;
        }
    }

    // Wider supports with unit coefficients, only for small variable counts.
    if n <= 12 {
        for k in 4..=5usize.min(others.len()) {
            let mut found = None;
            for_each_combination(&others, k, &mut |support| {
                if found.is_some() {
                    return;
                }
                for mask in 0..(1u32 << k) {
                    for (bit, &s) in support.iter().enumerate() {
                        delta[s] = if mask >> bit & 1 == 1 { 1 } else { -1 };
                    }
                    if let Some(w) = emit(&delta, support) {
                        found = Some(w);
                    }
                    for &s in support {
                        delta[s] = 0;
                    }
                    if found.is_some() {
                        return;
                    }
                }
            });
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

/// All k-subsets of `items`, lexicographically.
fn for_each_combination(items: &[usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        let need = k - cur.len();
        let mut i = start;
        while i + need <= items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, f);
            cur.pop();
            i += 1;
        }
    }
    if k == 0 {
        f(&[]);
        return;
    }
    let mut cur = Vec::with_capacity(k);
    rec(items, k, 0, &mut cur, f);
}
