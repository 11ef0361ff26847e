//! Subgroups as bitsets over element ids, and the full subgroup lattice
//! up to conjugacy.
//!
//! The lattice is computed by join closure: starting from the cyclic
//! subgroups, each known class representative is joined with every cyclic
//! subgroup until nothing new appears. Every subgroup is a join of cyclic
//! ones, and joining class representatives against the full (conjugation
//! closed) cyclic family reaches every conjugacy class.

use crate::group::{ElemId, FiniteGroup};
use std::collections::HashMap;
use std::sync::Arc;

// ---------------------------------------------------------------------------
// BitSet
// ---------------------------------------------------------------------------

/// Fixed-universe bitset over element ids.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn key(&self) -> &[u64] {
        &self.words
    }

    /// Sorted member list (useful as a canonical ordering key).
    pub fn to_vec(&self) -> Vec<ElemId> {
        self.iter().map(|i| i as ElemId).collect()
    }
}

// ---------------------------------------------------------------------------
// SubgroupHandle
// ---------------------------------------------------------------------------

/// A subgroup of a specific enumerated group.
#[derive(Clone)]
pub struct SubgroupHandle {
    group: FiniteGroup,
    members: BitSet,
    gens: Vec<ElemId>,
    normal: bool,
}

impl SubgroupHandle {
    pub(crate) fn new(group: FiniteGroup, members: BitSet, gens: Vec<ElemId>) -> Self {
        let normal = group.is_normal_set(&members);
        SubgroupHandle {
            group,
            members,
            gens,
            normal,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> u64 {
        self.members.count() as u64
    }

    pub fn index(&self) -> u64 {
        self.group.order() / self.order()
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn generator_ids(&self) -> &[ElemId] {
        &self.gens
    }

    /// Whether the subgroup is normal in its parent group.
    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn contains(&self, id: ElemId) -> bool {
        self.members.contains(id as usize)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_full(&self) -> bool {
        self.order() == self.group.order()
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.members
            .iter()
            .any(|x| self.group.element_order(x as ElemId) == n)
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().all(|&a| {
            self.gens
                .iter()
                .all(|&b| self.group.mul(a, b) == self.group.mul(b, a))
        })
    }

    /// The conjugate subgroup `g^-1 H g`.
    pub fn conjugate_by(&self, g: ElemId) -> BitSet {
        let mut out = BitSet::new(self.members.universe());
        for x in self.members.iter() {
            out.insert(self.group.conj(x as ElemId, g) as usize);
        }
        out
    }

    /// Readable isomorphism-type tag for reports.
    pub fn structure_name(&self) -> String {
        let order = self.order();
        let multiset = self.group.order_multiset_of(&self.members);
        let invariants = self.is_abelian().then(|| {
            crate::group::abelian_invariants_from_counts(order, |d| {
                multiset
                    .iter()
                    .filter(|&&(o, _)| d % o == 0)
                    .map(|&(_, c)| c)
                    .sum()
            })
        });
        crate::group::structure_name_impl(order, &multiset, self.is_cyclic(), invariants)
    }

    /// The subgroup as a standalone enumerated group (same permutation degree,
    /// its own element ids).
    pub fn as_group(&self, label: impl Into<String>) -> FiniteGroup {
        let gens: Vec<_> = self
            .gens
            .iter()
            .map(|&g| self.group.element(g).clone())
            .collect();
        FiniteGroup::from_generators(label, gens, self.group.degree(), self.order())
            .expect("subgroup order is already known to fit")
    }

    /// Generator permutations in cycle notation (for reports).
    pub fn generator_cycles(&self) -> Vec<String> {
        if self.gens.is_empty() {
            vec!["()".to_string()]
        } else {
            self.gens
                .iter()
                .map(|&g| self.group.element(g).to_string())
                .collect()
        }
    }
}

impl std::fmt::Debug for SubgroupHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subgroup(order {} of {})",
            self.order(),
            self.group.label()
        )
    }
}

// ---------------------------------------------------------------------------
// Subgroup lattice
// ---------------------------------------------------------------------------

/// One conjugacy class of subgroups.
#[derive(Debug)]
pub struct SubgroupClass {
    /// Subgroup id of the representative (lex-least member list in the class).
    pub rep: u32,
    /// All subgroup ids in the class, ascending.
    pub members: Vec<u32>,
    pub order: u64,
    /// Normal means the class is a single subgroup.
    pub is_normal: bool,
}

/// All subgroups of a group, grouped into conjugacy classes.
pub struct SubgroupLattice {
    group: FiniteGroup,
    /// Every subgroup as a bitset; ids index this list.
    subgroups: Vec<BitSet>,
    /// A generating set for each subgroup.
    gens: Vec<Vec<ElemId>>,
    /// Classes sorted by (order, representative member list).
    classes: Vec<SubgroupClass>,
    class_of: Vec<u32>,
}

impl SubgroupLattice {
    pub fn subgroup_count(&self) -> usize {
        self.subgroups.len()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn members_of(&self, id: u32) -> &BitSet {
        &self.subgroups[id as usize]
    }

    pub fn class_of(&self, id: u32) -> u32 {
        self.class_of[id as usize]
    }

    pub fn handle(&self, id: u32) -> SubgroupHandle {
        SubgroupHandle::new(
            self.group.clone(),
            self.subgroups[id as usize].clone(),
            self.gens[id as usize].clone(),
        )
    }

    /// Ids of the normal subgroups, ascending by subgroup id.
    pub fn normal_subgroup_ids(&self) -> Vec<u32> {
        self.classes
            .iter()
            .filter(|c| c.is_normal)
            .map(|c| c.rep)
            .collect()
    }

    /// Look up the class of an explicit member set, if it is a known subgroup.
    pub fn class_of_set(&self, set: &BitSet) -> Option<u32> {
        self.subgroups
            .iter()
            .position(|s| s == set)
            .map(|i| self.class_of[i as usize])
    }

    pub fn compute(group: &FiniteGroup) -> Arc<SubgroupLattice> {
        group
            .data
            .lattice
            .get_or_init(|| Arc::new(Self::build(group)))
            .clone()
    }

    fn build(group: &FiniteGroup) -> SubgroupLattice {
        let n = group.order() as usize;
        let mut subgroups: Vec<BitSet> = Vec::new();
        let mut gens: Vec<Vec<ElemId>> = Vec::new();
        let mut raw_class_members: Vec<Vec<u32>> = Vec::new();
        let mut class_of: Vec<u32> = Vec::new();
        let mut by_key: HashMap<BitSet, u32> = HashMap::new();
        let group_gens = group.generator_ids();

        // Register a subgroup's whole conjugation orbit as one class.
        // Returns the new class id if the subgroup was unknown.
        let register = |set: BitSet,
                            set_gens: Vec<ElemId>,
                            subgroups: &mut Vec<BitSet>,
                            gens: &mut Vec<Vec<ElemId>>,
                            raw_class_members: &mut Vec<Vec<u32>>,
                            class_of: &mut Vec<u32>,
                            by_key: &mut HashMap<BitSet, u32>|
         -> Option<u32> {
            if by_key.contains_key(&set) {
                return None;
            }
            let class_id = raw_class_members.len() as u32;
            // Conjugation orbit BFS; track a conjugator per member so each
            // orbit member gets valid generators.
            let mut orbit: Vec<(BitSet, ElemId)> = vec![(set.clone(), 0)];
            let mut seen: HashMap<BitSet, ()> = HashMap::new();
            seen.insert(set, ());
            let mut members = Vec::new();
            let mut head = 0;
            while head < orbit.len() {
                let (cur, conjugator) = orbit[head].clone();
                head += 1;
                let id = subgroups.len() as u32;
                let cur_gens: Vec<ElemId> = set_gens
                    .iter()
                    .map(|&g| group.conj(g, conjugator))
                    .collect();
                by_key.insert(cur.clone(), id);
                subgroups.push(cur.clone());
                gens.push(cur_gens);
                class_of.push(class_id);
                members.push(id);
                for &g in &group_gens {
                    let next_conj = group.mul(conjugator, g);
                    let mut next = BitSet::new(n);
                    for x in cur.iter() {
                        next.insert(group.conj(x as ElemId, g) as usize);
                    }
                    if !seen.contains_key(&next) {
                        seen.insert(next.clone(), ());
                        orbit.push((next, next_conj));
                    }
                }
            }
            raw_class_members.push(members);
            Some(class_id)
        };

        // Seed: trivial subgroup and every cyclic subgroup.
        let mut worklist: Vec<u32> = Vec::new();
        let trivial = group.close_subgroup(&[]);
        if let Some(c) = register(
            trivial,
            vec![],
            &mut subgroups,
            &mut gens,
            &mut raw_class_members,
            &mut class_of,
            &mut by_key,
        ) {
            worklist.push(c);
        }
        for x in 1..n as ElemId {
            let set = group.close_subgroup(&[x]);
            if let Some(c) = register(
                set,
                vec![x],
                &mut subgroups,
                &mut gens,
                &mut raw_class_members,
                &mut class_of,
                &mut by_key,
            ) {
                worklist.push(c);
            }
        }
        // All cyclic subgroups (including conjugates) are now present.
        let cyclic_ids: Vec<u32> = (0..subgroups.len() as u32).collect();

        let mut next = 0;
        while next < worklist.len() {
            let class_id = worklist[next];
            next += 1;
            let rep_id = raw_class_members[class_id as usize][0];
            let rep_set = subgroups[rep_id as usize].clone();
            let rep_gens = gens[rep_id as usize].clone();
            if rep_set.count() == n {
                continue;
            }
            for &cid in &cyclic_ids {
                let cyc = &subgroups[cid as usize];
                if cyc.is_subset(&rep_set) {
                    continue;
                }
                let mut join_gens = rep_gens.clone();
                join_gens.extend_from_slice(&gens[cid as usize]);
                let join = group.close_subgroup(&join_gens);
                if let Some(c) = register(
                    join,
                    join_gens,
                    &mut subgroups,
                    &mut gens,
                    &mut raw_class_members,
                    &mut class_of,
                    &mut by_key,
                ) {
                    worklist.push(c);
                }
            }
        }

        // Canonicalize: representative = lex-least member list in each class;
        // classes sorted by (order, that list).
        let mut classes: Vec<SubgroupClass> = raw_class_members
            .iter()
            .map(|members| {
                let rep = *members
                    .iter()
                    .min_by_key(|&&id| subgroups[id as usize].to_vec())
                    .unwrap();
                SubgroupClass {
                    rep,
                    members: members.clone(),
                    order: subgroups[rep as usize].count() as u64,
                    is_normal: members.len() == 1,
                }
            })
            .collect();
        classes.sort_by_key(|c| (c.order, subgroups[c.rep as usize].to_vec()));
        let mut new_class_of = vec![0u32; subgroups.len()];
        for (i, c) in classes.iter().enumerate() {
            for &m in &c.members {
                new_class_of[m as usize] = i as u32;
            }
        }

        SubgroupLattice {
            group: group.clone(),
            subgroups,
            gens,
            classes,
            class_of: new_class_of,
        }
    }
}

impl FiniteGroup {
    /// The full subgroup lattice (computed once, cached).
    pub fn subgroup_lattice(&self) -> Arc<SubgroupLattice> {
        SubgroupLattice::compute(self)
    }

    /// All normal subgroups, each with a generating set, sorted by
    /// (order, member list). Much cheaper than the full lattice: every normal
    /// subgroup is a join of normal closures of single elements, so the join
    /// closure of the per-conjugacy-class closures finds them all.
    pub fn normal_subgroup_sets(&self) -> Vec<(BitSet, Vec<ElemId>)> {
        let classes = self.conjugacy_classes();
        let mut atoms: Vec<(BitSet, Vec<ElemId>)> = Vec::new();
        let mut seen: HashMap<BitSet, ()> = HashMap::new();
        let trivial = self.close_subgroup(&[]);
        seen.insert(trivial.clone(), ());
        let mut found = vec![(trivial, Vec::new())];
        for c in &classes.classes {
            let set = self.close_subgroup(&c.members);
            if !seen.contains_key(&set) {
                seen.insert(set.clone(), ());
                atoms.push((set.clone(), c.members.clone()));
                found.push((set, c.members.clone()));
            }
        }
        let mut head = 0;
        while head < found.len() {
            let (cur, cur_gens) = found[head].clone();
            head += 1;
            for (atom, atom_gens) in &atoms {
                if atom.is_subset(&cur) {
                    continue;
                }
                let mut gens = cur_gens.clone();
                gens.extend_from_slice(atom_gens);
                let join = self.close_subgroup(&gens);
                if !seen.contains_key(&join) {
                    seen.insert(join.clone(), ());
                    found.push((join, gens));
                }
            }
        }
        found.sort_by_key(|(set, _)| (set.count(), set.to_vec()));
        found
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::group_from_spec;

    fn g(spec: &str) -> FiniteGroup {
        group_from_spec(spec, 2000).unwrap()
    }

    #[test]
    fn bitset_basics() {
        let mut b = BitSet::new(130);
        b.insert(0);
        b.insert(64);
        b.insert(129);
        assert!(b.contains(0) && b.contains(64) && b.contains(129));
        assert!(!b.contains(1));
        assert_eq!(b.count(), 3);
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        let mut c = BitSet::new(130);
        c.insert(64);
        assert!(c.is_subset(&b));
        assert!(!b.is_subset(&c));
    }

    #[test]
    fn lattice_of_s4_has_30_subgroups_in_11_classes() {
        let lat = g("S4").subgroup_lattice();
        assert_eq!(lat.subgroup_count(), 30);
        assert_eq!(lat.class_count(), 11);
        let orders: Vec<u64> = lat.classes().iter().map(|c| c.order).collect();
        assert_eq!(orders, vec![1, 2, 2, 3, 4, 4, 4, 6, 8, 12, 24]);
        let normal_orders: Vec<u64> = lat
            .classes()
            .iter()
            .filter(|c| c.is_normal)
            .map(|c| c.order)
            .collect();
        assert_eq!(normal_orders, vec![1, 4, 12, 24]);
    }

    #[test]
    fn lattice_of_small_groups() {
        // C6: one subgroup per divisor.
        let lat = g("C6").subgroup_lattice();
        assert_eq!(lat.subgroup_count(), 4);
        assert_eq!(lat.class_count(), 4);
        assert!(lat.classes().iter().all(|c| c.is_normal));

        // S3: 1, three C2, one C3, S3.
        let lat = g("S3").subgroup_lattice();
        assert_eq!(lat.subgroup_count(), 6);
        assert_eq!(lat.class_count(), 4);

        // Q8: 1, C2, three C4, Q8; all normal.
        let q8 = group_from_spec("perm: (0 2 1 3)(4 6 5 7), (0 4 1 5)(2 7 3 6) deg 8", 2000)
            .unwrap();
        assert_eq!(q8.order(), 8);
        let lat = q8.subgroup_lattice();
        assert_eq!(lat.subgroup_count(), 6);
        assert_eq!(lat.class_count(), 6);
        assert!(lat.classes().iter().all(|c| c.is_normal));

        // A5: 59 subgroups, 9 classes, only 1 and A5 normal.
        let lat = g("A5").subgroup_lattice();
        assert_eq!(lat.subgroup_count(), 59);
        assert_eq!(lat.class_count(), 9);
        assert_eq!(lat.normal_subgroup_ids().len(), 2);
    }

    #[test]
    fn classes_sorted_and_consistent() {
        let grp = g("A4");
        let lat = grp.subgroup_lattice();
        // 1, three C2, V4, four C3, A4 -> 10 subgroups, 5 classes.
        assert_eq!(lat.subgroup_count(), 10);
        assert_eq!(lat.class_count(), 5);
        let mut prev: Option<(u64, Vec<ElemId>)> = None;
        for c in lat.classes() {
            let key = (c.order, lat.members_of(c.rep).to_vec());
            if let Some(p) = &prev {
                assert!(*p < key);
            }
            prev = Some(key);
            for &m in &c.members {
                assert_eq!(lat.class_of(m), lat.class_of(c.rep));
                assert_eq!(lat.members_of(m).count() as u64, c.order);
            }
            // Representative has the lex-least member list.
            let rep_key = lat.members_of(c.rep).to_vec();
            for &m in &c.members {
                assert!(lat.members_of(m).to_vec() >= rep_key);
            }
        }
    }

    #[test]
    fn handles_report_structure() {
        let s4 = g("S4");
        let lat = s4.subgroup_lattice();
        let names: Vec<String> = lat
            .classes()
            .iter()
            .map(|c| lat.handle(c.rep).structure_name())
            .collect();
        assert!(names.contains(&"V4".to_string()));
        assert!(names.contains(&"A4".to_string()));
        assert!(names.contains(&"S4".to_string()));
        let v4_class = lat
            .classes()
            .iter()
            .find(|c| c.order == 4 && c.is_normal)
            .unwrap();
        assert_eq!(lat.handle(v4_class.rep).structure_name(), "V4");
        assert!(lat.handle(v4_class.rep).is_normal());
    }

    #[test]
    fn subgroup_conjugates_stay_in_class() {
        let grp = g("S4");
        let lat = grp.subgroup_lattice();
        for c in lat.classes() {
            let h = lat.handle(c.rep);
            for gid in 0..grp.order() as ElemId {
                let conj = h.conjugate_by(gid);
                let cls = lat.class_of_set(&conj).expect("conjugate is a subgroup");
                assert_eq!(cls, lat.class_of(c.rep));
            }
        }
    }
}
