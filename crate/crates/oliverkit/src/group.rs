//! Finite permutation groups with full element enumeration under an order cap.
//!
//! A stabilizer chain computes the order first, so oversized inputs are
//! rejected before any enumeration is attempted. Everything downstream
//! (conjugacy classes, the Cayley table, quotients, Sylow subgroups) is
//! computed lazily and cached behind thread-safe cells.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::subgroup::{BitSet, SubgroupHandle, SubgroupLattice};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

/// Element ids index into the enumeration order; the identity is always 0.
pub type ElemId = u16;

/// Hard ceiling on enumerable order (element ids are 16-bit).
pub const HARD_ORDER_LIMIT: u64 = u16::MAX as u64;

// ---------------------------------------------------------------------------
// Stabilizer chain (order computation with early cap bailout)
// ---------------------------------------------------------------------------

struct ChainLevel {
    base: u16,
    gens: Vec<Permutation>,
}

struct Chain {
    degree: usize,
    levels: Vec<ChainLevel>,
    // transversals[j][p] maps the level-j base point to p.
    transversals: Vec<Vec<Option<Permutation>>>,
    orbits: Vec<Vec<u16>>,
}

impl Chain {
    fn gens_at(&self, j: usize) -> Vec<&Permutation> {
        self.levels[j..].iter().flat_map(|l| l.gens.iter()).collect()
    }

    fn rebuild_orbits(&mut self) {
        self.transversals.clear();
        self.orbits.clear();
        for j in 0..self.levels.len() {
            let base = self.levels[j].base;
            let gens: Vec<Permutation> = self.gens_at(j).into_iter().cloned().collect();
            let mut trans: Vec<Option<Permutation>> = vec![None; self.degree];
            trans[base as usize] = Some(Permutation::identity(self.degree));
            let mut orbit = vec![base];
            let mut head = 0;
            while head < orbit.len() {
                let p = orbit[head];
                head += 1;
                let tp = trans[p as usize].clone().unwrap();
                for g in &gens {
                    let q = g.apply(p);
                    if trans[q as usize].is_none() {
                        trans[q as usize] = Some(tp.compose(g));
                        orbit.push(q);
                    }
                }
            }
            self.transversals.push(trans);
            self.orbits.push(orbit);
        }
    }

    fn partial_order(&self) -> u128 {
        self.orbits.iter().map(|o| o.len() as u128).product()
    }

    /// Sift through levels `from..`; returns the residue and the level it stuck at.
    fn sift(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for j in from..self.levels.len() {
            let img = g.apply(self.levels[j].base);
            match &self.transversals[j][img as usize] {
                None => return (g, j),
                Some(t) => g = g.compose(&t.inverse()),
            }
        }
        (g, self.levels.len())
    }

    fn add_level_for(&mut self, res: &Permutation) {
        let base = (0..self.degree as u16)
            .find(|&p| res.apply(p) != p)
            .expect("non-identity residue moves a point");
        self.levels.push(ChainLevel { base, gens: Vec::new() });
    }

    /// Find one Schreier generator that does not sift to the identity.
    fn find_violation(&self) -> Option<(Permutation, usize)> {
        for j in (0..self.levels.len()).rev() {
            let gens: Vec<Permutation> = self.gens_at(j).into_iter().cloned().collect();
            for &p in &self.orbits[j] {
                let tp = self.transversals[j][p as usize].as_ref().unwrap();
                for g in &gens {
                    let q = g.apply(p);
                    let tq = self.transversals[j][q as usize].as_ref().unwrap();
                    let schreier = tp.compose(g).compose(&tq.inverse());
                    let (res, lvl) = self.sift(schreier, j + 1);
                    if !res.is_identity() {
                        return Some((res, lvl));
                    }
                }
            }
        }
        None
    }
}

/// Compute `|<gens>|`, bailing out with `OrderCapExceeded` as soon as the
/// partial stabilizer chain proves the order exceeds `cap`.
pub fn group_order_capped(gens: &[Permutation], degree: usize, cap: u64) -> Result<u64> {
    let mut chain = Chain {
        degree,
        levels: Vec::new(),
        transversals: Vec::new(),
        orbits: Vec::new(),
    };
    let mut pending: Vec<Permutation> =
        gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    loop {
        while let Some(g) = pending.pop() {
            chain.rebuild_orbits();
            let (res, lvl) = chain.sift(g, 0);
            if res.is_identity() {
                continue;
            }
            if lvl == chain.levels.len() {
                chain.add_level_for(&res);
            }
            chain.levels[lvl].gens.push(res);
        }
        chain.rebuild_orbits();
        let order = chain.partial_order();
        if order > cap as u128 {
            return Err(Error::OrderCapExceeded {
                order: order.min(u64::MAX as u128) as u64,
                cap,
            });
        }
        match chain.find_violation() {
            Some((res, lvl)) => {
                if lvl == chain.levels.len() {
                    chain.add_level_for(&res);
                }
                chain.levels[lvl].gens.push(res);
            }
            None => return Ok(chain.partial_order() as u64),
        }
    }
}

// ---------------------------------------------------------------------------
// Conjugacy classes
// ---------------------------------------------------------------------------

/// One conjugacy class of group elements.
#[derive(Debug, Clone)]
pub struct ConjClass {
    /// Element id of the representative (lexicographically least image array).
    pub rep: ElemId,
    /// Common order of the class members.
    pub element_order: u64,
    /// Member element ids, ascending.
    pub members: Vec<ElemId>,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

pub struct ConjClasses {
    pub classes: Vec<ConjClass>,
    /// Element id -> class index.
    pub class_of: Vec<u16>,
}

// ---------------------------------------------------------------------------
// Structure probe
// ---------------------------------------------------------------------------

/// Cheap isomorphism-type observations used by the classifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureProbe {
    pub order: u64,
    pub is_cyclic: bool,
    pub is_abelian: bool,
    /// `Some((p, k))` when the order is `p^k` (the trivial group reports `k = 0`
    /// with `p = 1` and still counts as prime-power order).
    pub prime_power: Option<(u64, u32)>,
    /// `Some((p, q))`, `p < q` distinct primes, when the group is dihedral of
    /// order `2pq`: a cyclic normal subgroup of order `pq` with an involution
    /// outside it acting by inversion. `p = 2` is allowed.
    pub dihedral_pq: Option<(u64, u64)>,
}

impl StructureProbe {
    pub fn is_prime_power_order(&self) -> bool {
        self.prime_power.is_some()
    }
    pub fn is_dihedral_2pq(&self) -> bool {
        self.dihedral_pq.is_some()
    }
}

/// Prime factorization with multiplicities, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

// ---------------------------------------------------------------------------
// FiniteGroup
// ---------------------------------------------------------------------------

pub(crate) struct GroupData {
    label: String,
    degree: usize,
    generators: Vec<Permutation>,
    /// All elements; id 0 is the identity, the rest in BFS discovery order.
    elements: Vec<Permutation>,
    index: HashMap<Permutation, ElemId>,
    /// BFS provenance: `elements[i] = elements[parent[i]] * generators[gen_of[i]]`.
    parent: Vec<ElemId>,
    gen_of: Vec<u16>,
    inv: Vec<ElemId>,
    ord: Vec<u64>,
    cayley: OnceLock<Vec<ElemId>>,
    classes: OnceLock<ConjClasses>,
    probe: OnceLock<StructureProbe>,
    center: OnceLock<Vec<ElemId>>,
    pub(crate) lattice: OnceLock<Arc<SubgroupLattice>>,
}

/// A fully enumerated finite permutation group. Cheap to clone.
#[derive(Clone)]
pub struct FiniteGroup {
    pub(crate) data: Arc<GroupData>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.label(), self.order())
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
    }
}
impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Build a group from generators, enumerating all elements.
    ///
    /// The order is computed by a stabilizer chain first; if it exceeds `cap`
    /// (or the hard 16-bit id limit) no enumeration happens.
    pub fn from_generators(
        label: impl Into<String>,
        generators: Vec<Permutation>,
        degree: usize,
        cap: u64,
    ) -> Result<Self> {
        let cap = cap.min(HARD_ORDER_LIMIT);
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::Domain(format!(
                    "generator degree {} does not match group degree {}",
                    g.degree(),
                    degree
                )));
            }
        }
        let order = group_order_capped(&generators, degree.max(1), cap)?;
        let degree = degree.max(1);

        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity, 0 as ElemId);
        let mut parent = vec![0 as ElemId];
        let mut gen_of = vec![0u16];
        let mut head = 0usize;
        while head < elements.len() {
            let cur = elements[head].clone();
            for (k, g) in generators.iter().enumerate() {
                let next = cur.compose(g);
                if !index.contains_key(&next) {
                    let id = elements.len() as ElemId;
                    index.insert(next.clone(), id);
                    elements.push(next);
                    parent.push(head as ElemId);
                    gen_of.push(k as u16);
                }
            }
            head += 1;
        }
        debug_assert_eq!(elements.len() as u64, order);

        let inv: Vec<ElemId> = elements.iter().map(|e| index[&e.inverse()]).collect();
        let ord: Vec<u64> = elements.iter().map(|e| e.order()).collect();

        Ok(FiniteGroup {
            data: Arc::new(GroupData {
                label: label.into(),
                degree,
                generators,
                elements,
                index,
                parent,
                gen_of,
                inv,
                ord,
                cayley: OnceLock::new(),
                classes: OnceLock::new(),
                probe: OnceLock::new(),
                center: OnceLock::new(),
                lattice: OnceLock::new(),
            }),
        })
    }

    pub fn label(&self) -> &str {
        &self.data.label
    }

    pub fn degree(&self) -> usize {
        self.data.degree
    }

    pub fn order(&self) -> u64 {
        self.data.elements.len() as u64
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.data.generators
    }

    /// Generator element ids.
    pub fn generator_ids(&self) -> Vec<ElemId> {
        self.data.generators.iter().map(|g| self.data.index[g]).collect()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.data.elements
    }

    pub fn element(&self, id: ElemId) -> &Permutation {
        &self.data.elements[id as usize]
    }

    pub fn element_id(&self, p: &Permutation) -> Option<ElemId> {
        self.data.index.get(p).copied()
    }

    pub fn inv(&self, id: ElemId) -> ElemId {
        self.data.inv[id as usize]
    }

    pub fn element_order(&self, id: ElemId) -> u64 {
        self.data.ord[id as usize]
    }

    /// Exponent: lcm of all element orders.
    pub fn exponent(&self) -> u64 {
        self.data.ord.iter().fold(1u64, |a, &b| num_integer::lcm(a, b))
    }

    /// Full multiplication table, built on first use.
    /// `mul(a, b)` is "apply a, then b".
    fn cayley(&self) -> &[ElemId] {
        self.data.cayley.get_or_init(|| {
            let n = self.data.elements.len();
            let ngens = self.data.generators.len().max(1);
            // right_action[k][x] = id(elements[x] * gens[k])
            let mut right_action = vec![vec![0 as ElemId; n]; ngens];
            for (k, g) in self.data.generators.iter().enumerate() {
                for (x, e) in self.data.elements.iter().enumerate() {
                    right_action[k][x] = self.data.index[&e.compose(g)];
                }
            }
            let mut table = vec![0 as ElemId; n * n];
            for a in 0..n {
                table[a * n] = a as ElemId; // a * identity
                // BFS order guarantees parents appear before children.
                for b in 1..n {
                    let pb = self.data.parent[b] as usize;
                    let k = self.data.gen_of[b] as usize;
                    table[a * n + b] = right_action[k][table[a * n + pb] as usize];
                }
            }
            table
        })
    }

    /// Product of elements by id: `a` then `b`.
    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        let n = self.data.elements.len();
        self.cayley()[a as usize * n + b as usize]
    }

    /// `g^-1 * x * g` by ids.
    pub fn conj(&self, x: ElemId, g: ElemId) -> ElemId {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `x^e` by ids.
    pub fn pow(&self, x: ElemId, mut e: u64) -> ElemId {
        let o = self.element_order(x);
        e %= o;
        let mut base = x;
        let mut acc = 0 as ElemId;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Conjugacy classes, ordered by (element order, class size, lex-least
    /// representative). The identity class is always first.
    pub fn conjugacy_classes(&self) -> &ConjClasses {
        self.data.classes.get_or_init(|| {
            let n = self.data.elements.len();
            let gens = self.generator_ids();
            let mut class_of = vec![u16::MAX; n];
            let mut raw: Vec<Vec<ElemId>> = Vec::new();
            for start in 0..n as ElemId {
                if class_of[start as usize] != u16::MAX {
                    continue;
                }
                let cid = raw.len() as u16;
                class_of[start as usize] = cid;
                let mut members = vec![start];
                let mut head = 0;
                while head < members.len() {
                    let x = members[head];
                    head += 1;
                    for &g in &gens {
                        let y = self.conj(x, g);
                        if class_of[y as usize] == u16::MAX {
                            class_of[y as usize] = cid;
                            members.push(y);
                        }
                    }
                }
                members.sort_unstable();
                raw.push(members);
            }
            let mut classes: Vec<ConjClass> = raw
                .into_iter()
                .map(|members| {
                    let rep = *members
                        .iter()
                        .min_by_key(|&&m| self.data.elements[m as usize].images())
                        .unwrap();
                    ConjClass {
                        rep,
                        element_order: self.data.ord[rep as usize],
                        members,
                    }
                })
                .collect();
            classes.sort_by(|a, b| {
                (a.element_order, a.members.len(), self.data.elements[a.rep as usize].images())
                    .cmp(&(b.element_order, b.members.len(), self.data.elements[b.rep as usize].images()))
            });
            let mut class_of = vec![0u16; n];
            for (i, c) in classes.iter().enumerate() {
                for &m in &c.members {
                    class_of[m as usize] = i as u16;
                }
            }
            ConjClasses { classes, class_of }
        })
    }

    pub fn class_of(&self, id: ElemId) -> usize {
        self.conjugacy_classes().class_of[id as usize] as usize
    }

    /// Class of `rep(class)^t`.
    pub fn power_class(&self, class: usize, t: u64) -> usize {
        let rep = self.conjugacy_classes().classes[class].rep;
        self.class_of(self.pow(rep, t))
    }

    /// Element ids of the center.
    pub fn center(&self) -> &[ElemId] {
        self.data.center.get_or_init(|| {
            let gens = self.generator_ids();
            (0..self.data.elements.len() as ElemId)
                .filter(|&x| gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
                .collect()
        })
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_ids();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Cheap structural observations (cached).
    pub fn probe(&self) -> &StructureProbe {
        self.data.probe.get_or_init(|| {
            let order = self.order();
            let factors = factorize(order);
            let prime_power = match factors.len() {
                0 => Some((1, 0)),
                1 => Some(factors[0]),
                _ => None,
            };
            let is_abelian = self.is_abelian();
            let is_cyclic = self.data.ord.iter().any(|&o| o == order);
            let dihedral_pq = self.detect_dihedral_pq(&factors);
            StructureProbe {
                order,
                is_cyclic,
                is_abelian,
                prime_power,
                dihedral_pq,
            }
        })
    }

    /// Dihedral of order 2pq detection, `p < q` distinct primes (`p = 2` gives
    /// the dihedral groups of order `4q`).
    fn detect_dihedral_pq(&self, factors: &[(u64, u32)]) -> Option<(u64, u64)> {
        let order = self.order();
        if order % 2 != 0 {
            return None;
        }
        let half = order / 2;
        // half must be a product of two distinct primes.
        let hf = factorize(half);
        let (p, q) = match hf.as_slice() {
            [(a, 1), (b, 1)] => (*a, *b),
            [(2, 2)] => return None, // half = 4 is a prime square, not pq
            _ => return None,
        };
        debug_assert!(factors.len() >= 2 || p == 2);
        let n = self.data.elements.len();
        let a = (0..n as ElemId).find(|&x| self.data.ord[x as usize] == half)?;
        // <a> has index 2, hence is normal; look for an inverting involution outside.
        let mut in_cyclic = vec![false; n];
        let mut x = 0 as ElemId;
        loop {
            in_cyclic[x as usize] = true;
            x = self.mul(x, a);
            if x == 0 {
                break;
            }
        }
        let a_inv = self.inv(a);
        let found = (0..n as ElemId).any(|t| {
            !in_cyclic[t as usize]
                && self.data.ord[t as usize] == 2
                && self.conj(a, t) == a_inv
        });
        found.then_some((p, q))
    }

    // -- subgroup constructions ------------------------------------------------

    /// Closure of a set of element ids as a subgroup handle.
    pub fn subgroup_generated(&self, gens: &[ElemId]) -> SubgroupHandle {
        let members = self.close_subgroup(gens);
        SubgroupHandle::new(self.clone(), members, gens.to_vec())
    }

    pub(crate) fn close_subgroup(&self, gens: &[ElemId]) -> BitSet {
        let n = self.data.elements.len();
        let mut set = BitSet::new(n);
        set.insert(0);
        let mut list = vec![0 as ElemId];
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !set.contains(y as usize) {
                    set.insert(y as usize);
                    list.push(y);
                }
            }
        }
        set
    }

    /// Whether a member set is closed under conjugation by the full group.
    pub(crate) fn is_normal_set(&self, members: &BitSet) -> bool {
        let gens = self.generator_ids();
        members.iter().all(|x| {
            gens.iter()
                .all(|&g| members.contains(self.conj(x as ElemId, g) as usize))
        })
    }

    /// The trivial subgroup.
    pub fn trivial_subgroup(&self) -> SubgroupHandle {
        self.subgroup_generated(&[])
    }

    /// The whole group as a subgroup of itself.
    pub fn full_subgroup(&self) -> SubgroupHandle {
        let gens = self.generator_ids();
        self.subgroup_generated(&gens)
    }

    /// A Sylow p-subgroup (deterministic choice). If `p` does not divide the
    /// order this is the trivial subgroup.
    pub fn sylow_subgroup(&self, p: u64) -> SubgroupHandle {
        let order = self.order();
        let mut pk = 1u64;
        let mut m = order;
        while m % p == 0 {
            pk *= p;
            m /= p;
        }
        if pk == 1 {
            return self.trivial_subgroup();
        }
        let n = self.data.elements.len();
        let is_p_element = |x: ElemId| {
            let o = self.data.ord[x as usize];
            o > 1 && factorize(o).len() == 1 && factorize(o)[0].0 == p
        };
        // Seed with the least p-element of maximal order.
        let seed = (0..n as ElemId)
            .filter(|&x| is_p_element(x))
            .max_by_key(|&x| (self.data.ord[x as usize], std::cmp::Reverse(x)))
            .expect("p divides the order, so a p-element exists");
        let mut gens = vec![seed];
        let mut members = self.close_subgroup(&gens);
        while (members.count() as u64) < pk {
            // Normalizer scan; any p-element of N(P) \ P extends P to a larger p-group.
            let next = (0..n as ElemId)
                .filter(|&y| is_p_element(y) && !members.contains(y as usize))
                .find(|&y| {
                    members
                        .iter()
                        .all(|x| members.contains(self.conj(x as ElemId, y) as usize))
                })
                .expect("a proper p-subgroup has a p-element in its normalizer outside it");
            gens.push(next);
            members = self.close_subgroup(&gens);
        }
        SubgroupHandle::new(self.clone(), members, gens)
    }

    /// Quotient by a normal subgroup, as the left-coset action group.
    pub fn quotient(&self, normal: &SubgroupHandle) -> Result<FiniteGroup> {
        if normal.group() != self {
            return Err(Error::Domain(
                "subgroup handle belongs to a different group".into(),
            ));
        }
        if !normal.is_normal() {
            return Err(Error::Domain(format!(
                "quotient by non-normal subgroup of {}",
                self.label()
            )));
        }
        let n = self.data.elements.len();
        let members: Vec<ElemId> = normal.members().iter().map(|i| i as ElemId).collect();
        let mut coset_of = vec![u16::MAX; n];
        let mut reps: Vec<ElemId> = Vec::new();
        for x in 0..n as ElemId {
            if coset_of[x as usize] != u16::MAX {
                continue;
            }
            let c = reps.len() as u16;
            reps.push(x);
            for &m in &members {
                coset_of[self.mul(x, m) as usize] = c;
            }
        }
        let ncosets = reps.len();
        let gen_perms: Vec<Permutation> = self
            .generator_ids()
            .iter()
            .map(|&g| {
                let images: Vec<u16> = reps
                    .iter()
                    .map(|&r| coset_of[self.mul(g, r) as usize])
                    .collect();
                Permutation::from_images(images).expect("coset action is a permutation")
            })
            .collect();
        let label = format!("{}/{}", self.label(), normal.structure_name());
        FiniteGroup::from_generators(label, gen_perms, ncosets, HARD_ORDER_LIMIT)
    }

    /// Invariant factors of an abelian group, largest first (e.g. `[30, 3]`).
    pub fn abelian_invariants(&self) -> Option<Vec<u64>> {
        if !self.is_abelian() {
            return None;
        }
        Some(abelian_invariants_from_counts(self.order(), |d| {
            self.data.ord.iter().filter(|&&o| d % o == 0).count()
        }))
    }

    /// Best-effort readable isomorphism-type name (used in reports).
    pub fn structure_name(&self) -> String {
        structure_name_impl(
            self.order(),
            &self.order_multiset(),
            self.probe().is_cyclic,
            self.abelian_invariants(),
        )
    }

    fn order_multiset(&self) -> Vec<(u64, usize)> {
        let mut counts: std::collections::BTreeMap<u64, usize> = Default::default();
        for &o in &self.data.ord {
            *counts.entry(o).or_default() += 1;
        }
        counts.into_iter().collect()
    }

    pub(crate) fn order_multiset_of(&self, members: &BitSet) -> Vec<(u64, usize)> {
        let mut counts: std::collections::BTreeMap<u64, usize> = Default::default();
        for x in members.iter() {
            *counts.entry(self.data.ord[x]).or_default() += 1;
        }
        counts.into_iter().collect()
    }
}

/// Invariant factors of an abelian group, largest first, from the counts of
/// elements whose order divides each d. Per prime the counts determine the
/// type via the conjugate-partition trick.
pub(crate) fn abelian_invariants_from_counts(
    order: u64,
    count_dividing: impl Fn(u64) -> usize,
) -> Vec<u64> {
    if order == 1 {
        return vec![];
    }
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for (p, k) in factorize(order) {
        // counts[j] = log_p #{x : x^(p^j) = 1}
        let mut counts = vec![0u32; k as usize + 1];
        for j in 0..=k {
            let mut v = count_dividing(p.pow(j)) as u64;
            let mut log = 0u32;
            while v > 1 {
                debug_assert_eq!(v % p, 0);
                v /= p;
                log += 1;
            }
            counts[j as usize] = log;
        }
        // counts[j] - counts[j-1] is the number of partition parts >= j.
        let nparts = (counts[1] - counts[0]) as usize;
        let mut partition = vec![0u32; nparts];
        for j in 1..=k as usize {
            let parts_ge_j = (counts[j] - counts[j - 1]) as usize;
            for part in partition.iter_mut().take(parts_ge_j) {
                *part += 1;
            }
        }
        per_prime.push((p, partition));
    }
    let rank = per_prime.iter().map(|(_, l)| l.len()).max().unwrap_or(0);
    (0..rank)
        .map(|i| {
            per_prime
                .iter()
                .map(|(p, lambda)| {
                    lambda.get(i).map_or(1, |&e| p.pow(e))
                })
                .product()
        })
        .collect()
}

/// Name a group from its order statistics. Covers the types that actually
/// appear in witnesses; anything else gets a generic `G<order>` tag.
pub(crate) fn structure_name_impl(
    order: u64,
    order_multiset: &[(u64, usize)],
    is_cyclic: bool,
    abelian_invariants: Option<Vec<u64>>,
) -> String {
    if order == 1 {
        return "1".into();
    }
    if is_cyclic {
        return format!("C{order}");
    }
    if let Some(inv) = abelian_invariants {
        if inv == [2, 2] {
            return "V4".into();
        }
        return inv
            .iter()
            .map(|d| format!("C{d}"))
            .collect::<Vec<_>>()
            .join("x");
    }
    let count = |o: u64| {
        order_multiset
            .iter()
            .find(|&&(ord, _)| ord == o)
            .map(|&(_, c)| c)
            .unwrap_or(0)
    };
    // Dihedral: cyclic half plus n involutions outside (n odd) or n+1 total (n even).
    if order % 2 == 0 {
        let half = order / 2;
        let invol = count(2);
        let looks_dihedral = if half % 2 == 1 {
            invol == half as usize
        } else {
            invol == half as usize + 1
        };
        if looks_dihedral && count(half) >= 1 && half >= 3 {
            // Verify there are enough elements in a cyclic C_half worth of orders.
            return format!("Dih{half}");
        }
    }
    match (order, count(2), count(3), count(4), count(5), count(6)) {
        (8, 1, _, 6, _, _) => "Q8".into(),
        (12, 3, 8, 0, _, _) => "A4".into(),
        (24, 9, 8, 6, _, _) => "S4".into(),
        (60, 15, 20, 0, 24, 0) => "A5".into(),
        (120, 25, 20, 30, 24, 20) => "S5".into(),
        (360, 45, 80, 90, 144, 0) => "A6".into(),
        _ => format!("G{order}"),
    }
}
