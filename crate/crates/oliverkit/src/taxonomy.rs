//! Group classification: the five-class and six-class labels, the
//! no-small-chain criterion with explicit witnesses, and the co-Sylow /
//! large-subgroup machinery.
//!
//! Label decision order: prime-power order first, then a dihedral-of-order-2pq
//! subquotient, then an element of non-prime-power order conjugate to its
//! inverse, then any element of non-prime-power order, else the remaining
//! class. Each test is only reached when the stronger ones fail, so the five
//! labels partition all groups.

use crate::error::{Error, Result};
use crate::group::{factorize, ElemId, FiniteGroup};
use crate::subgroup::{BitSet, SubgroupHandle};
use serde::Serialize;
use std::collections::HashSet;

/// Five-way classification label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClassLabel {
    /// Prime-power order (includes the trivial group).
    #[serde(rename = "P")]
    PrimePower,
    /// Every element has prime-power order, but the group order does not.
    #[serde(rename = "A")]
    PpoOnly,
    /// Has an element of non-prime-power order; no such element is conjugate
    /// to its inverse; no dihedral-of-order-2pq subquotient.
    #[serde(rename = "B")]
    Npp,
    /// Some element of non-prime-power order is conjugate to its inverse,
    /// but there is no dihedral-of-order-2pq subquotient.
    #[serde(rename = "C")]
    NppSelfInverse,
    /// Has a subquotient dihedral of order 2pq, p and q distinct primes.
    #[serde(rename = "D")]
    DihedralPq,
}

/// Six-way refinement: the first two labels split on whether the Sylow
/// 2-subgroup is normal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SixClassLabel {
    #[serde(rename = "A_nrm2")]
    ANormalSylow2,
    #[serde(rename = "A_not_nrm2")]
    ANotNormalSylow2,
    #[serde(rename = "B_nrm2")]
    BNormalSylow2,
    #[serde(rename = "B_not_nrm2")]
    BNotNormalSylow2,
    #[serde(rename = "C")]
    C,
    #[serde(rename = "D")]
    D,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub five: ClassLabel,
    /// `None` exactly for prime-power-order groups.
    pub six: Option<SixClassLabel>,
    pub has_normal_sylow2: bool,
    /// The (p, q) of a found dihedral subquotient, when `five` is `DihedralPq`.
    pub dihedral_pq: Option<(u64, u64)>,
}

/// Whether `n` is a prime power; 1 counts.
pub fn is_prime_power(n: u64) -> bool {
    factorize(n).len() <= 1
}

/// Non-prime-power order ("composite mixed order").
pub fn is_npp(n: u64) -> bool {
    factorize(n).len() >= 2
}

/// Classify a group into the five- and six-class taxonomy.
pub fn classify(g: &FiniteGroup) -> Classification {
    let has_normal_sylow2 = g.sylow_subgroup(2).is_normal();
    if g.probe().is_prime_power_order() {
        return Classification {
            five: ClassLabel::PrimePower,
            six: None,
            has_normal_sylow2,
            dihedral_pq: None,
        };
    }
    let dihedral_pq = dihedral_pq_subquotient(g);
    let five = if dihedral_pq.is_some() {
        ClassLabel::DihedralPq
    } else {
        let classes = g.conjugacy_classes();
        let mut has_npp = false;
        let mut npp_real = false;
        for c in &classes.classes {
            if is_npp(c.element_order) {
                has_npp = true;
                if classes.class_of[g.inv(c.rep) as usize] as usize
                    == classes.class_of[c.rep as usize] as usize
                {
                    npp_real = true;
                    break;
                }
            }
        }
        if npp_real {
            ClassLabel::NppSelfInverse
        } else if has_npp {
            ClassLabel::Npp
        } else {
            ClassLabel::PpoOnly
        }
    };
    let six = Some(match five {
        ClassLabel::PrimePower => unreachable!(),
        ClassLabel::PpoOnly => {
            if has_normal_sylow2 {
                SixClassLabel::ANormalSylow2
            } else {
                SixClassLabel::ANotNormalSylow2
            }
        }
        ClassLabel::Npp => {
            if has_normal_sylow2 {
                SixClassLabel::BNormalSylow2
            } else {
                SixClassLabel::BNotNormalSylow2
            }
        }
        ClassLabel::NppSelfInverse => SixClassLabel::C,
        ClassLabel::DihedralPq => SixClassLabel::D,
    });
    Classification {
        five,
        six,
        has_normal_sylow2,
        dihedral_pq,
    }
}

/// Search for a subquotient isomorphic to a dihedral group of order 2pq with
/// p, q distinct primes (p = 2 allowed). Returns the (p, q) found.
///
/// Every such subquotient H/K forces an element of order divisible by pq in
/// H, and H must be nonabelian, which prunes most of the lattice scan.
pub fn dihedral_pq_subquotient(g: &FiniteGroup) -> Option<(u64, u64)> {
    if let Some(pq) = g.probe().dihedral_pq {
        return Some(pq);
    }
    if g.is_abelian() {
        return None;
    }
    if let Some(pq) = dihedral_pair_search(g) {
        return Some(pq);
    }
    // Semiprime targets dividing some element order.
    let mut semiprimes: Vec<u64> = Vec::new();
    for c in &g.conjugacy_classes().classes {
        let fac = factorize(c.element_order);
        for i in 0..fac.len() {
            for j in i + 1..fac.len() {
                let pq = fac[i].0 * fac[j].0;
                if !semiprimes.contains(&pq) {
                    semiprimes.push(pq);
                }
            }
        }
    }
    if semiprimes.is_empty() {
        return None;
    }
    let lat = g.subgroup_lattice();
    for class in lat.classes() {
        let h_order = class.order;
        if !semiprimes.iter().any(|pq| h_order % (2 * pq) == 0) {
            continue;
        }
        let handle = lat.handle(class.rep);
        if handle.is_abelian() {
            continue;
        }
        let has_pq_element = handle.members().iter().any(|x| {
            let o = g.element_order(x as ElemId);
            semiprimes.iter().any(|pq| o % pq == 0)
        });
        if !has_pq_element {
            continue;
        }
        let sub = if handle.is_full() {
            g.clone()
        } else {
            handle.as_group(format!("{}|sub{}", g.label(), h_order))
        };
        if let Some(pq) = sub.probe().dihedral_pq {
            return Some(pq);
        }
        for (k_set, k_gens) in sub.normal_subgroup_sets() {
            let k_order = k_set.count() as u64;
            let q_order = h_order / k_order;
            if q_order % 2 != 0 {
                continue;
            }
            let half = q_order / 2;
            let hf = factorize(half);
            if !(hf.len() == 2 && hf.iter().all(|&(_, e)| e == 1)) {
                continue;
            }
            let k_handle = SubgroupHandle::new(sub.clone(), k_set, k_gens);
            if !k_handle.is_normal() {
                continue;
            }
            let quot = match sub.quotient(&k_handle) {
                Ok(q) => q,
                Err(_) => continue,
            };
            if let Some(pq) = quot.probe().dihedral_pq {
                return Some(pq);
            }
        }
    }
    None
}

/// Direct subgroup search: an element x whose order is a product of two
/// distinct primes, inverted by an involution s, generates with it a
/// dihedral group of order 2pq (s cannot lie in the cyclic part: there it
/// would commute with x, and x is not its own inverse). This finds the
/// common case in a pass over the multiplication table, well before any
/// subgroup lattice is built.
fn dihedral_pair_search(g: &FiniteGroup) -> Option<(u64, u64)> {
    let n = g.order();
    let involutions: Vec<ElemId> = (0..n)
        .map(|i| i as ElemId)
        .filter(|&s| g.element_order(s) == 2)
        .collect();
    if involutions.is_empty() {
        return None;
    }
    for class in &g.conjugacy_classes().classes {
        let fac = factorize(class.element_order);
        if fac.len() != 2 || fac.iter().any(|&(_, e)| e != 1) {
            continue;
        }
        let x = class.rep;
        let xi = g.inv(x);
        if involutions
            .iter()
            .any(|&s| g.mul(g.mul(s, x), s) == xi)
        {
            let (p, q) = (fac[0].0, fac[1].0);
            return Some((p.min(q), p.max(q)));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Chain criterion
// ---------------------------------------------------------------------------

/// A disqualifying chain P normal in H normal in G: |P| and |G:H| are prime
/// powers (1 counts) and H/P is cyclic.
#[derive(Debug, Clone)]
pub struct ChainWitness {
    pub p_subgroup: SubgroupHandle,
    pub h_subgroup: SubgroupHandle,
}

#[derive(Debug, Clone)]
pub struct OliverOutcome {
    pub is_oliver: bool,
    /// Present exactly when the group is not in the class (some chain exists).
    pub witness: Option<ChainWitness>,
}

/// Decide the chain criterion: the group qualifies iff no chain
/// P normal-in H normal-in G exists with |P| and |G:H| prime powers and H/P
/// cyclic. The search is deterministic: H descends through the normal
/// subgroups of prime-power index by (order, member list), and the first H
/// that admits a chain supplies the witness.
pub fn oliver_check(g: &FiniteGroup) -> OliverOutcome {
    if is_prime_power(g.order()) {
        // |G| and the index of H = G are prime powers and G/G is trivial, so
        // (G, G) is always a chain; cyclic groups get the slimmer (1, G).
        let p_subgroup = if g.probe().is_cyclic {
            g.trivial_subgroup()
        } else {
            g.full_subgroup()
        };
        return OliverOutcome {
            is_oliver: false,
            witness: Some(ChainWitness {
                p_subgroup,
                h_subgroup: g.full_subgroup(),
            }),
        };
    }
    for (h_set, h_gens) in prime_power_index_normals(g) {
        if let Some((p_set, p_gens)) = chain_through(g, &h_set, &h_gens) {
            return OliverOutcome {
                is_oliver: false,
                witness: Some(ChainWitness {
                    p_subgroup: SubgroupHandle::new(g.clone(), p_set, p_gens),
                    h_subgroup: SubgroupHandle::new(g.clone(), h_set, h_gens),
                }),
            };
        }
    }
    OliverOutcome {
        is_oliver: true,
        witness: None,
    }
}

/// The normal subgroups of prime-power index, descending by (order, member
/// list). For each prime q these are exactly the preimages of the subgroups
/// of the q-group G / O^q(G) that are invariant under conjugation by G, so
/// the enumeration works inside those small quotients and never touches the
/// full subgroup lattice.
fn prime_power_index_normals(g: &FiniteGroup) -> Vec<(BitSet, Vec<ElemId>)> {
    let n = g.order() as usize;
    let g_gens = g.generator_ids();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out: Vec<(BitSet, Vec<ElemId>)> = Vec::new();
    for (q, _) in factorize(g.order()) {
        let (n_set, n_gens) = coprime_generated(g, q);
        // Coset table for G / O^q: id 0 is the subgroup itself.
        let members: Vec<ElemId> = n_set.iter().map(|x| x as ElemId).collect();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps: Vec<ElemId> = Vec::new();
        for x in 0..n as ElemId {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &m in &members {
                coset_of[g.mul(x, m) as usize] = c;
            }
        }
        let k = reps.len();
        let close_q = |gens: &[u32]| -> BitSet {
            let mut set = BitSet::new(k);
            set.insert(0);
            let mut list = vec![0u32];
            let mut head = 0;
            while head < list.len() {
                let x = reps[list[head] as usize];
                head += 1;
                for &gn in gens {
                    let y = coset_of[g.mul(x, reps[gn as usize]) as usize];
                    if !set.contains(y as usize) {
                        set.insert(y as usize);
                        list.push(y);
                    }
                }
            }
            set
        };
        // Conjugation by G permutes the cosets; the invariant subgroups are
        // exactly the joins of subgroups generated by single orbits.
        let maps: Vec<Vec<u32>> = g_gens
            .iter()
            .map(|&gg| {
                (0..k)
                    .map(|c| coset_of[g.conj(reps[c], gg) as usize])
                    .collect()
            })
            .collect();
        let mut orbit_seen = vec![false; k];
        orbit_seen[0] = true;
        let mut atoms: Vec<(BitSet, Vec<u32>)> = Vec::new();
        let mut atom_keys: HashSet<Vec<usize>> = HashSet::new();
        for c0 in 1..k {
            if orbit_seen[c0] {
                continue;
            }
            let mut orbit = vec![c0 as u32];
            orbit_seen[c0] = true;
            let mut head = 0;
            while head < orbit.len() {
                let c = orbit[head] as usize;
                head += 1;
                for map in &maps {
                    let d = map[c] as usize;
                    if !orbit_seen[d] {
                        orbit_seen[d] = true;
                        orbit.push(d as u32);
                    }
                }
            }
            let mut gens: Vec<u32> = Vec::new();
            let mut set = close_q(&gens);
            for &o in &orbit {
                if !set.contains(o as usize) {
                    gens.push(o);
                    set = close_q(&gens);
                }
            }
            if atom_keys.insert(set.iter().collect()) {
                atoms.push((set, gens));
            }
        }
        // Join closure starting from the trivial subgroup.
        let mut found: HashSet<Vec<usize>> = HashSet::new();
        let mut list: Vec<(BitSet, Vec<u32>)> = Vec::new();
        let trivial = close_q(&[]);
        found.insert(trivial.iter().collect());
        list.push((trivial, Vec::new()));
        let mut head = 0;
        while head < list.len() {
            for ai in 0..atoms.len() {
                if atoms[ai].0.is_subset(&list[head].0) {
                    continue;
                }
                let mut gens = list[head].1.clone();
                gens.extend_from_slice(&atoms[ai].1);
                let set = close_q(&gens);
                if found.insert(set.iter().collect()) {
                    list.push((set, gens));
                }
            }
            head += 1;
        }
        for (s_set, s_gens) in list {
            let mut h_set = BitSet::new(n);
            for x in 0..n {
                if s_set.contains(coset_of[x] as usize) {
                    h_set.insert(x);
                }
            }
            if !seen.insert(h_set.iter().collect()) {
                continue;
            }
            let mut h_gens = n_gens.clone();
            h_gens.extend(s_gens.iter().map(|&c| reps[c as usize]));
            out.push((h_set, h_gens));
        }
    }
    out.sort_by(|a, b| {
        a.0.count()
            .cmp(&b.0.count())
            .then_with(|| a.0.iter().cmp(b.0.iter()))
    });
    out.reverse();
    out
}

/// A subgroup P normal in H with |P| a prime power and H/P cyclic, if one
/// exists, for H given by its members and a generating set. Writing D for
/// the derived subgroup of H and A for the abelian quotient H/D, such a P
/// exists iff |D| is a power of some prime p and every Sylow subgroup of A
/// away from p is cyclic; the canonical choice is then the preimage in H of
/// the p-part of A (the trivial subgroup when H itself is cyclic).
fn chain_through(
    g: &FiniteGroup,
    h_set: &BitSet,
    h_gens: &[ElemId],
) -> Option<(BitSet, Vec<ElemId>)> {
    let h_order = h_set.count() as u64;
    let (d_set, _) = derived_subgroup_of(g, h_gens);
    let d_order = d_set.count() as u64;
    let forced = if d_order == 1 {
        None
    } else {
        let fac = factorize(d_order);
        if fac.len() != 1 {
            return None;
        }
        Some(fac[0].0)
    };
    let a_order = h_order / d_order;
    let mut noncyclic: Vec<u64> = Vec::new();
    for (t, _) in factorize(a_order) {
        // The t-Sylow of A = H/D is cyclic iff x^t lands in D for exactly
        // t * |D| members of H.
        let cnt = h_set
            .iter()
            .filter(|&x| d_set.contains(g.pow(x as ElemId, t) as usize))
            .count() as u64;
        debug_assert_eq!(cnt % d_order, 0);
        if cnt != t * d_order {
            noncyclic.push(t);
        }
    }
    let p = match forced {
        Some(p) => {
            if noncyclic.iter().any(|&t| t != p) {
                return None;
            }
            p
        }
        None => match noncyclic[..] {
            [] => {
                // D trivial and every Sylow of A cyclic: H itself is cyclic.
                let mut set = BitSet::new(g.order() as usize);
                set.insert(0);
                return Some((set, Vec::new()));
            }
            [t] => t,
            _ => return None,
        },
    };
    let mut pa = 1u64;
    while h_order % (pa * p) == 0 {
        pa *= p;
    }
    let mut p_set = BitSet::new(g.order() as usize);
    for x in h_set.iter() {
        if d_set.contains(g.pow(x as ElemId, pa) as usize) {
            p_set.insert(x);
        }
    }
    let p_gens = small_generating_set(g, &p_set);
    Some((p_set, p_gens))
}

/// Derived subgroup of the subgroup generated by `h_gens`: the closure of the
/// generator commutators under the group operation and conjugation by the
/// generators.
fn derived_subgroup_of(g: &FiniteGroup, h_gens: &[ElemId]) -> (BitSet, Vec<ElemId>) {
    let mut gens: Vec<ElemId> = Vec::new();
    let mut set = g.close_subgroup(&gens);
    for &a in h_gens {
        for &b in h_gens {
            let c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
            if !set.contains(c as usize) {
                gens.push(c);
                set = g.close_subgroup(&gens);
            }
        }
    }
    let mut i = 0;
    while i < gens.len() {
        for &h in h_gens {
            let c = g.conj(gens[i], h);
            if !set.contains(c as usize) {
                gens.push(c);
                set = g.close_subgroup(&gens);
            }
        }
        i += 1;
    }
    (set, gens)
}

/// Greedy small generating set for a subgroup given by its member set.
fn small_generating_set(g: &FiniteGroup, set: &BitSet) -> Vec<ElemId> {
    let mut gens: Vec<ElemId> = Vec::new();
    let mut cl = g.close_subgroup(&gens);
    for x in set.iter() {
        if !cl.contains(x) {
            gens.push(x as ElemId);
            cl = g.close_subgroup(&gens);
        }
    }
    gens
}

/// Members and a short generating set of the subgroup generated by all
/// elements of order coprime to q (the smallest normal subgroup with q-group
/// quotient).
fn coprime_generated(g: &FiniteGroup, q: u64) -> (BitSet, Vec<ElemId>) {
    let mut gens: Vec<ElemId> = Vec::new();
    let mut set = g.close_subgroup(&gens);
    for x in 0..g.order() as ElemId {
        if g.element_order(x) % q != 0 && !set.contains(x as usize) {
            gens.push(x);
            set = g.close_subgroup(&gens);
        }
    }
    (set, gens)
}

// ---------------------------------------------------------------------------
// Co-Sylow and large subgroups
// ---------------------------------------------------------------------------

/// The smallest normal subgroup with p-group quotient: the closure of all
/// elements of order coprime to p. Equals the whole group when p does not
/// divide the order.
pub fn co_sylow(g: &FiniteGroup, p: u64) -> SubgroupHandle {
    if p < 2 {
        let gens = g.generator_ids();
        return g.subgroup_generated(&gens);
    }
    let (set, gens) = coprime_generated(g, p);
    SubgroupHandle::new(g.clone(), set, gens)
}

/// A subgroup is large when it contains the co-Sylow subgroup at some prime
/// dividing the group order.
pub fn is_large_subgroup(g: &FiniteGroup, members: &BitSet) -> bool {
    if members.count() as u64 == g.order() {
        return true;
    }
    factorize(g.order())
        .iter()
        .any(|&(p, _)| co_sylow(g, p).members().is_subset(members))
}

// ---------------------------------------------------------------------------
// Numeric invariant attached to qualifying groups
// ---------------------------------------------------------------------------

/// Where the numeric invariant value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InvariantSource {
    /// The chain criterion holds, which forces the value 1.
    ComputedOne,
    UserSupplied,
    Unknown,
}

/// The integer n_G attached to a group that satisfies the chain criterion.
/// For groups that do satisfy it the value is 1; otherwise it must be
/// supplied externally or stays unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OliverNumber {
    #[serde(serialize_with = "serialize_value")]
    pub value: Option<u64>,
    #[serde(rename = "provenance")]
    pub source: InvariantSource,
}

fn serialize_value<S: serde::Serializer>(v: &Option<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(n) => s.serialize_u64(*n),
        None => s.serialize_str("unknown"),
    }
}

impl OliverNumber {
    /// Derive the invariant for a group. Errors on prime-power-order groups,
    /// where it is undefined.
    pub fn for_group(g: &FiniteGroup, supplied: Option<u64>) -> Result<OliverNumber> {
        if g.probe().is_prime_power_order() {
            return Err(Error::OliverNumber(format!(
                "the invariant is undefined for prime-power-order groups ({})",
                g.label()
            )));
        }
        if oliver_check(g).is_oliver {
            return Ok(OliverNumber {
                value: Some(1),
                source: InvariantSource::ComputedOne,
            });
        }
        Ok(match supplied {
            Some(v) => OliverNumber {
                value: Some(v),
                source: InvariantSource::UserSupplied,
            },
            None => OliverNumber {
                value: None,
                source: InvariantSource::Unknown,
            },
        })
    }
}

// ---------------------------------------------------------------------------
// Consolidated report
// ---------------------------------------------------------------------------

/// Names of a disqualifying chain, for serialization.
#[derive(Debug, Clone, Serialize)]
pub struct ChainWitnessNames {
    #[serde(rename = "P")]
    pub p: String,
    #[serde(rename = "H")]
    pub h: String,
}

impl ChainWitness {
    pub fn names(&self) -> ChainWitnessNames {
        ChainWitnessNames {
            p: self.p_subgroup.structure_name(),
            h: self.h_subgroup.structure_name(),
        }
    }
}

/// Everything the taxonomy derives about one group, as one flat record.
#[derive(Debug, Clone, Serialize)]
pub struct TaxonomyReport {
    pub group: String,
    pub order: u64,
    pub is_prime_power_order: bool,
    pub has_npp_element: bool,
    pub has_npp_conj_inverse: bool,
    pub has_dpq_subquotient: bool,
    pub class_label: ClassLabel,
    pub has_normal_sylow2: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub six_class_label: Option<SixClassLabel>,
    pub oliver: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oliver_chain_witness: Option<ChainWitnessNames>,
    pub ko_recipe_id: u8,
}

impl TaxonomyReport {
    pub fn for_group(g: &FiniteGroup) -> TaxonomyReport {
        let classes = g.conjugacy_classes();
        let has_npp_element = classes.classes.iter().any(|c| is_npp(c.element_order));
        let has_npp_conj_inverse = classes.classes.iter().enumerate().any(|(i, c)| {
            is_npp(c.element_order) && g.class_of(g.inv(c.rep)) == i
        });
        let class = classify(g);
        let outcome = oliver_check(g);
        TaxonomyReport {
            group: g.label().to_string(),
            order: g.order(),
            is_prime_power_order: g.probe().is_prime_power_order(),
            has_npp_element,
            has_npp_conj_inverse,
            has_dpq_subquotient: class.five == ClassLabel::DihedralPq,
            ko_recipe_id: crate::realizability::recipe_id(&class),
            class_label: class.five,
            has_normal_sylow2: class.has_normal_sylow2,
            six_class_label: class.six,
            oliver: outcome.is_oliver,
            oliver_chain_witness: outcome.witness.map(|w| w.names()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::group_from_spec;

    fn g(spec: &str) -> FiniteGroup {
        group_from_spec(spec, 2000).unwrap()
    }

    const DIC3: &str = "perm: (0 1 2), (1 2)(3 4 5 6) deg 7";
    const DIC5: &str = "perm: (0 1 2 3 4), (1 4)(2 3)(5 6 7 8) deg 9";

    #[test]
    fn five_class_labels() {
        let cases = [
            ("C1", ClassLabel::PrimePower),
            ("C8", ClassLabel::PrimePower),
            ("Dih4", ClassLabel::PrimePower),
            ("C6", ClassLabel::Npp),
            ("C15", ClassLabel::Npp),
            ("S3", ClassLabel::PpoOnly),
            ("S4", ClassLabel::PpoOnly),
            ("A5", ClassLabel::PpoOnly),
            ("A6", ClassLabel::PpoOnly),
            ("Dih15", ClassLabel::DihedralPq),
            ("Dih6", ClassLabel::DihedralPq),
            ("S3xC5", ClassLabel::Npp),
            ("C3xS4", ClassLabel::Npp),
            ("S3xA4", ClassLabel::DihedralPq),
            (DIC3, ClassLabel::NppSelfInverse),
            (DIC5, ClassLabel::NppSelfInverse),
        ];
        for (spec, expect) in cases {
            assert_eq!(classify(&g(spec)).five, expect, "{spec}");
        }
    }

    #[test]
    fn six_class_labels() {
        let cases = [
            ("S3", Some(SixClassLabel::ANotNormalSylow2)),
            ("S4", Some(SixClassLabel::ANotNormalSylow2)),
            ("C6", Some(SixClassLabel::BNormalSylow2)),
            ("C15", Some(SixClassLabel::BNormalSylow2)),
            ("S3xC5", Some(SixClassLabel::BNotNormalSylow2)),
            ("Dih15", Some(SixClassLabel::D)),
            (DIC3, Some(SixClassLabel::C)),
            ("C8", None),
        ];
        for (spec, expect) in cases {
            assert_eq!(classify(&g(spec)).six, expect, "{spec}");
        }
    }

    #[test]
    fn dihedral_subquotient_values() {
        assert_eq!(dihedral_pq_subquotient(&g("Dih15")), Some((3, 5)));
        assert_eq!(dihedral_pq_subquotient(&g("Dih6")), Some((2, 3)));
        assert_eq!(dihedral_pq_subquotient(&g("S3xA4")), Some((2, 3)));
        // Dih30 contains a dihedral subgroup of order 12, found before the
        // order-30 quotients in the ascending scan.
        assert_eq!(dihedral_pq_subquotient(&g("Dih30")), Some((2, 3)));
        assert_eq!(dihedral_pq_subquotient(&g("S4")), None);
        assert_eq!(dihedral_pq_subquotient(&g("C3xS4")), None);
        assert_eq!(dihedral_pq_subquotient(&g(DIC3)), None);
        // Dihedral of order 2*9 has no 2pq quotient with p, q distinct.
        assert_eq!(dihedral_pq_subquotient(&g("Dih9")), None);
    }

    #[test]
    fn chain_criterion_negative_cases_with_witnesses() {
        // Cyclic groups: the first chain found is (1, G).
        let out = oliver_check(&g("C12"));
        assert!(!out.is_oliver);
        let w = out.witness.unwrap();
        assert_eq!(w.p_subgroup.order(), 1);
        assert_eq!(w.h_subgroup.order(), 12);

        // S4: the first chain is (V4, A4).
        let out = oliver_check(&g("S4"));
        assert!(!out.is_oliver);
        let w = out.witness.unwrap();
        assert_eq!(w.p_subgroup.order(), 4);
        assert_eq!(w.p_subgroup.structure_name(), "V4");
        assert_eq!(w.h_subgroup.order(), 12);
        assert_eq!(w.h_subgroup.structure_name(), "A4");
        assert!(w.p_subgroup.is_normal()); // V4 happens to be normal in S4 too

        // Dih15: (1, C15).
        let out = oliver_check(&g("Dih15"));
        assert!(!out.is_oliver);
        let w = out.witness.unwrap();
        assert_eq!(w.p_subgroup.order(), 1);
        assert_eq!(w.h_subgroup.order(), 15);
        assert_eq!(w.h_subgroup.structure_name(), "C15");

        // Dih9: (C9, Dih9).
        let out = oliver_check(&g("Dih9"));
        assert!(!out.is_oliver);
        let w = out.witness.unwrap();
        assert_eq!(w.p_subgroup.order(), 9);
        assert_eq!(w.h_subgroup.order(), 18);

        // Prime-power groups always fail the criterion.
        assert!(!oliver_check(&g("Dih4")).is_oliver);
        assert!(!oliver_check(&g("C8")).is_oliver);
    }

    #[test]
    fn chain_criterion_positive_cases() {
        for spec in ["A5", "S6", "C3xS4", "S3xA4", "A6"] {
            let out = oliver_check(&g(spec));
            assert!(out.is_oliver, "{spec}");
            assert!(out.witness.is_none());
        }
    }

    #[test]
    fn chain_criterion_c30_squared() {
        let out = oliver_check(&g("C30xC30"));
        assert!(out.is_oliver);
    }

    #[test]
    fn witness_chain_is_valid() {
        for spec in ["C12", "S4", "Dih15", "Dih9", "Dih6", "S3xC5", DIC3] {
            let grp = g(spec);
            let out = oliver_check(&grp);
            if let Some(w) = out.witness {
                assert!(!out.is_oliver);
                // H normal in G, |G:H| prime power.
                assert!(w.h_subgroup.is_normal(), "{spec}");
                assert!(is_prime_power(grp.order() / w.h_subgroup.order()));
                // |P| prime power, P inside H, P normal in H.
                assert!(is_prime_power(w.p_subgroup.order()));
                assert!(w.p_subgroup.members().is_subset(w.h_subgroup.members()));
                for h in w.h_subgroup.members().iter() {
                    for p in w.p_subgroup.members().iter() {
                        let c = grp.conj(p as ElemId, h as ElemId);
                        assert!(w.p_subgroup.contains(c));
                    }
                }
                // H/P cyclic: verified through the actual quotient group.
                let h_group = w.h_subgroup.as_group("H");
                let mut p_in_h = BitSet::new(h_group.order() as usize);
                for x in w.p_subgroup.members().iter() {
                    let id = h_group.element_id(grp.element(x as ElemId)).unwrap();
                    p_in_h.insert(id as usize);
                }
                let p_gens: Vec<ElemId> = w
                    .p_subgroup
                    .generator_ids()
                    .iter()
                    .map(|&x| h_group.element_id(grp.element(x)).unwrap())
                    .collect();
                let p_handle = SubgroupHandle::new(h_group.clone(), p_in_h, p_gens);
                let quot = h_group.quotient(&p_handle).unwrap();
                assert!(quot.probe().is_cyclic, "{spec}");
            }
        }
    }

    #[test]
    fn co_sylow_subgroups() {
        let s4 = g("S4");
        assert_eq!(co_sylow(&s4, 2).order(), 12);
        assert_eq!(co_sylow(&s4, 2).structure_name(), "A4");
        assert_eq!(co_sylow(&s4, 3).order(), 24);
        assert_eq!(co_sylow(&s4, 5).order(), 24);
        let c12 = g("C12");
        assert_eq!(co_sylow(&c12, 2).order(), 3);
        assert_eq!(co_sylow(&c12, 3).order(), 4);
    }

    #[test]
    fn large_subgroups() {
        let s4 = g("S4");
        let lat = s4.subgroup_lattice();
        let large_orders: Vec<u64> = lat
            .classes()
            .iter()
            .filter(|c| is_large_subgroup(&s4, lat.members_of(c.rep)))
            .map(|c| c.order)
            .collect();
        assert_eq!(large_orders, vec![12, 24]);

        let c6 = g("C6");
        let lat = c6.subgroup_lattice();
        let large_orders: Vec<u64> = lat
            .classes()
            .iter()
            .filter(|c| is_large_subgroup(&c6, lat.members_of(c.rep)))
            .map(|c| c.order)
            .collect();
        assert_eq!(large_orders, vec![2, 3, 6]);
    }

    #[test]
    fn invariant_values() {
        let n = OliverNumber::for_group(&g("A5"), None).unwrap();
        assert_eq!(n.value, Some(1));
        assert_eq!(n.source, InvariantSource::ComputedOne);

        let n = OliverNumber::for_group(&g("C6"), None).unwrap();
        assert_eq!(n.value, None);
        assert_eq!(n.source, InvariantSource::Unknown);

        let n = OliverNumber::for_group(&g("C6"), Some(6)).unwrap();
        assert_eq!(n.value, Some(6));
        assert_eq!(n.source, InvariantSource::UserSupplied);

        assert!(OliverNumber::for_group(&g("C8"), None).is_err());
    }

    #[test]
    fn real_npp_classes_detected_exactly() {
        // Dih6 has order-6 rotations conjugate to their inverses, but it is
        // in the dihedral class, which wins.
        let c = classify(&g("Dih6"));
        assert_eq!(c.five, ClassLabel::DihedralPq);
        // Abelian groups never have an npp element conjugate to its inverse.
        for spec in ["C6", "C12", "C30", "C6xC2"] {
            let cls = classify(&g(spec));
            assert_eq!(cls.five, ClassLabel::Npp, "{spec}");
        }
    }

    #[test]
    fn pair_search_agrees_with_lattice_scan() {
        // Groups where the involution search must fire, with the found pair.
        for (spec, pair) in [
            ("Dih6", (2, 3)),
            ("Dih15", (3, 5)),
            ("Dih10", (2, 5)),
            ("Dih21", (3, 7)),
            ("S3xC2", (2, 3)),
            ("S5", (2, 3)),
        ] {
            let grp = g(spec);
            assert_eq!(dihedral_pair_search(&grp), Some(pair), "{spec}");
            assert_eq!(dihedral_pq_subquotient(&grp), Some(pair), "{spec}");
        }
        // Groups where it must not fire, and the full answer.
        for (spec, full) in [
            ("S3", None),
            ("S4", None),
            ("A5", None),
            (DIC3, None),
            (DIC5, None),
            ("C3xS4", None),
            // A quotient-only example: no dihedral subgroup of order 12
            // reaches through the pair search, but S4 x C3 / (V4 x 1) is
            // not one... use A4xC6: (A4xC6)/(V4x1) = C3xC6 abelian; none.
            ("A4xC6", None),
        ] {
            let grp = g(spec);
            assert_eq!(dihedral_pq_subquotient(&grp), full, "{spec}");
        }
    }

    #[test]
    fn report_fields_for_reference_groups() {
        let r = TaxonomyReport::for_group(&g("C6"));
        assert_eq!(r.group, "C6");
        assert_eq!(r.order, 6);
        assert!(!r.is_prime_power_order);
        assert!(r.has_npp_element);
        assert!(!r.has_npp_conj_inverse);
        assert!(!r.has_dpq_subquotient);
        assert_eq!(r.class_label, ClassLabel::Npp);
        assert!(r.has_normal_sylow2);
        assert_eq!(r.six_class_label, Some(SixClassLabel::BNormalSylow2));
        assert!(!r.oliver);
        assert!(r.oliver_chain_witness.is_some());
        assert_eq!(r.ko_recipe_id, 2);

        let r = TaxonomyReport::for_group(&g("A5"));
        assert!(r.oliver);
        assert!(r.oliver_chain_witness.is_none());
        assert_eq!(r.class_label, ClassLabel::PpoOnly);
        assert_eq!(r.six_class_label, Some(SixClassLabel::ANotNormalSylow2));
        assert_eq!(r.ko_recipe_id, 3);

        let r = TaxonomyReport::for_group(&g(DIC3));
        assert!(r.has_npp_conj_inverse);
        assert!(!r.has_dpq_subquotient);
        assert_eq!(r.class_label, ClassLabel::NppSelfInverse);
        assert_eq!(r.six_class_label, Some(SixClassLabel::C));
        assert_eq!(r.ko_recipe_id, 5);

        let r = TaxonomyReport::for_group(&g("C8"));
        assert!(r.is_prime_power_order);
        assert_eq!(r.class_label, ClassLabel::PrimePower);
        assert_eq!(r.six_class_label, None);
        assert_eq!(r.ko_recipe_id, 0);
        assert!(!r.oliver);
    }

    #[test]
    fn report_serialization_is_flat_and_stable() {
        let j = serde_json::to_value(TaxonomyReport::for_group(&g("S4"))).unwrap();
        assert_eq!(j["group"], "S4");
        assert_eq!(j["order"], 24);
        assert_eq!(j["class_label"], "A");
        assert_eq!(j["six_class_label"], "A_not_nrm2");
        assert_eq!(j["oliver"], false);
        assert_eq!(j["oliver_chain_witness"]["P"], "V4");
        assert_eq!(j["oliver_chain_witness"]["H"], "A4");
        assert_eq!(j["ko_recipe_id"], 3);

        let j = serde_json::to_value(TaxonomyReport::for_group(&g("C4"))).unwrap();
        assert!(j.get("six_class_label").is_none());
        assert!(j.get("oliver_chain_witness").is_some());

        let j = serde_json::to_value(TaxonomyReport::for_group(&g("S3xA4"))).unwrap();
        assert_eq!(j["class_label"], "D");
        assert_eq!(j["oliver"], true);
        assert!(j.get("oliver_chain_witness").is_none());
    }
}
