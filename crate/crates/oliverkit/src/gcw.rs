//! Combinatorial equivariant cell complexes.
//!
//! A complex is a multiset of orbit cells (stabilizer, dimension, count);
//! attaching maps are not modeled because every quantity in scope (the Euler
//! characteristic of each fixed set) depends only on the multiset. The
//! fixed-set count for a cell with stabilizer H under a subgroup K is the
//! number of cosets gH with g^-1 K g contained in H, found by a direct coset
//! scan.

use crate::error::{Error, Result};
use crate::group::{ElemId, FiniteGroup};
use crate::parse::{group_from_spec, permutation_from_cycles_str};
use crate::subgroup::{BitSet, SubgroupHandle};
use serde_json::{json, Value};

/// One orbit-cell entry: `count` copies of (G/H) x D^dimension.
#[derive(Clone)]
pub struct Cell {
    pub stabilizer: SubgroupHandle,
    pub dimension: u32,
    pub count: u64,
}

/// A finite equivariant cell complex over a fixed group.
#[derive(Clone)]
pub struct GCWComplex {
    group: FiniteGroup,
    cells: Vec<Cell>,
    basepoint_fixed: bool,
}

impl GCWComplex {
    /// Build a complex from orbit cells. Counts must be positive and every
    /// stabilizer must be a subgroup handle of `group` itself.
    pub fn new(group: &FiniteGroup, cells: Vec<Cell>) -> Result<GCWComplex> {
        for c in &cells {
            if c.count == 0 {
                return Err(Error::Domain("cell count must be positive".into()));
            }
            if c.stabilizer.group() != group {
                return Err(Error::Domain(
                    "cell stabilizer does not belong to the complex's group".into(),
                ));
            }
        }
        Ok(Self::normalized(group.clone(), cells))
    }

    fn normalized(group: FiniteGroup, mut cells: Vec<Cell>) -> GCWComplex {
        cells.retain(|c| c.count > 0);
        cells.sort_by(|a, b| {
            (a.dimension, a.stabilizer.order(), a.stabilizer.members().key())
                .cmp(&(b.dimension, b.stabilizer.order(), b.stabilizer.members().key()))
        });
        let mut merged: Vec<Cell> = Vec::with_capacity(cells.len());
        for c in cells {
            match merged.last_mut() {
                Some(last)
                    if last.dimension == c.dimension
                        && last.stabilizer.members().key() == c.stabilizer.members().key() =>
                {
                    last.count += c.count;
                }
                _ => merged.push(c),
            }
        }
        let basepoint_fixed = merged
            .iter()
            .any(|c| c.dimension == 0 && c.stabilizer.is_full());
        GCWComplex {
            group,
            cells: merged,
            basepoint_fixed,
        }
    }

    /// A single cell fixed by the whole group.
    pub fn point(group: &FiniteGroup) -> GCWComplex {
        Self::normalized(
            group.clone(),
            vec![Cell {
                stabilizer: group.full_subgroup(),
                dimension: 0,
                count: 1,
            }],
        )
    }

    /// The empty complex.
    pub fn empty(group: &FiniteGroup) -> GCWComplex {
        Self::normalized(group.clone(), Vec::new())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Whether some 0-cell is fixed by the whole group.
    pub fn basepoint_fixed(&self) -> bool {
        self.basepoint_fixed
    }

    /// Euler characteristic of the subcomplex fixed by `k`.
    pub fn chi_fixed(&self, k: &SubgroupHandle) -> Result<i64> {
        if k.group() != &self.group {
            return Err(Error::Domain(
                "fixed-set query subgroup does not belong to the complex's group".into(),
            ));
        }
        let k_gens: Vec<ElemId> = k.generator_ids().to_vec();
        let mut chi: i64 = 0;
        for c in &self.cells {
            let fixed = fixed_coset_count(&self.group, c.stabilizer.members(), &k_gens);
            let sign = if c.dimension % 2 == 0 { 1 } else { -1 };
            chi += sign * c.count as i64 * fixed;
        }
        Ok(chi)
    }

    /// One-point union: merges the cells and identifies one group-fixed
    /// basepoint 0-cell from each side into a single cell.
    pub fn wedge(&self, other: &GCWComplex) -> Result<GCWComplex> {
        if self.group != other.group {
            return Err(Error::Domain(
                "wedge requires both complexes over the same group".into(),
            ));
        }
        if !self.basepoint_fixed || !other.basepoint_fixed {
            return Err(Error::Domain(
                "wedge requires a group-fixed basepoint 0-cell on both sides".into(),
            ));
        }
        let mut cells = self.cells.clone();
        cells.extend(other.cells.iter().cloned());
        let slot = cells
            .iter_mut()
            .find(|c| c.dimension == 0 && c.stabilizer.is_full())
            .expect("a fixed basepoint was just checked");
        slot.count -= 1;
        Ok(Self::normalized(self.group.clone(), cells))
    }

    /// Disjoint union: merges the cells.
    pub fn disjoint_union(&self, other: &GCWComplex) -> Result<GCWComplex> {
        if self.group != other.group {
            return Err(Error::Domain(
                "disjoint union requires both complexes over the same group".into(),
            ));
        }
        let mut cells = self.cells.clone();
        cells.extend(other.cells.iter().cloned());
        Ok(Self::normalized(self.group.clone(), cells))
    }

    /// Fixed-set Euler characteristic for one representative of every
    /// subgroup conjugacy class. Conjugation invariance is re-checked on
    /// every member of every class.
    pub fn chi_report(&self) -> Result<Vec<ChiEntry>> {
        let lat = self.group.subgroup_lattice();
        let mut out = Vec::with_capacity(lat.class_count());
        for (idx, class) in lat.classes().iter().enumerate() {
            let rep = lat.handle(class.rep);
            let chi = self.chi_fixed(&rep)?;
            for &member in &class.members {
                if member != class.rep {
                    let other = self.chi_fixed(&lat.handle(member))?;
                    if other != chi {
                        return Err(Error::Verification(format!(
                            "fixed-set characteristic is not constant on the subgroup class \
                             of order {} ({} vs {})",
                            class.order, chi, other
                        )));
                    }
                }
            }
            out.push(ChiEntry {
                class_index: idx,
                order: class.order,
                structure: rep.structure_name(),
                generators: rep.generator_cycles(),
                chi,
            });
        }
        Ok(out)
    }

    /// Serialize as a group spec plus the cell list.
    pub fn to_json(&self) -> Value {
        let cells: Vec<Value> = self
            .cells
            .iter()
            .map(|c| {
                json!({
                    "stabilizer": c.stabilizer.generator_cycles(),
                    "dimension": c.dimension,
                    "count": c.count,
                })
            })
            .collect();
        json!({ "group": self.group.label(), "cells": cells })
    }

    /// Parse a complex, building its group from the embedded spec.
    pub fn from_json(v: &Value, cap: u64) -> Result<GCWComplex> {
        let spec = v
            .get("group")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("complex JSON needs a \"group\" spec string".into()))?;
        let group = group_from_spec(spec, cap)?;
        Self::from_json_over(v, &group)
    }

    /// Parse a complex over an existing group instance (the embedded spec
    /// must agree with the group's label).
    pub fn from_json_over(v: &Value, group: &FiniteGroup) -> Result<GCWComplex> {
        let spec = v
            .get("group")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("complex JSON needs a \"group\" spec string".into()))?;
        if crate::parse::normalize_label(spec) != group.label() {
            return Err(Error::Parse(format!(
                "complex is over {:?} but {:?} was expected",
                spec,
                group.label()
            )));
        }
        let cell_values = v
            .get("cells")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("complex JSON needs a \"cells\" array".into()))?;
        let mut cells = Vec::with_capacity(cell_values.len());
        for cv in cell_values {
            let gens = cv
                .get("stabilizer")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("cell needs a \"stabilizer\" generator list".into()))?;
            let mut ids: Vec<ElemId> = Vec::with_capacity(gens.len());
            for gv in gens {
                let s = gv
                    .as_str()
                    .ok_or_else(|| Error::Parse("stabilizer generators must be strings".into()))?;
                let p = permutation_from_cycles_str(s, group.degree())?;
                let id = group.element_id(&p).ok_or_else(|| {
                    Error::Parse(format!("stabilizer generator {s} is not an element of the group"))
                })?;
                ids.push(id);
            }
            let dimension = cv
                .get("dimension")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse("cell needs a nonnegative \"dimension\"".into()))?;
            let count = cv
                .get("count")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse("cell needs a positive \"count\"".into()))?;
            if count == 0 {
                return Err(Error::Parse("cell count must be positive".into()));
            }
            cells.push(Cell {
                stabilizer: group.subgroup_generated(&ids),
                dimension: dimension as u32,
                count,
            });
        }
        GCWComplex::new(group, cells)
    }
}

/// One row of a fixed-set report.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ChiEntry {
    pub class_index: usize,
    pub order: u64,
    pub structure: String,
    pub generators: Vec<String>,
    pub chi: i64,
}

/// Number of cosets gH fixed by K: those with g^-1 K g inside H. The test
/// only needs the generators of K, and is independent of the coset
/// representative.
fn fixed_coset_count(g: &FiniteGroup, h_members: &BitSet, k_gens: &[ElemId]) -> i64 {
    let n = g.order() as usize;
    let mut visited = BitSet::new(n);
    let h_ids: Vec<ElemId> = h_members.iter().map(|x| x as ElemId).collect();
    let mut fixed = 0i64;
    for x in 0..n as ElemId {
        if visited.contains(x as usize) {
            continue;
        }
        for &h in &h_ids {
            visited.insert(g.mul(x, h) as usize);
        }
        let xi = g.inv(x);
        if k_gens
            .iter()
            .all(|&k| h_members.contains(g.mul(g.mul(xi, k), x) as usize))
        {
            fixed += 1;
        }
    }
    fixed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::group_from_spec;

    fn g(spec: &str) -> FiniteGroup {
        group_from_spec(spec, 2000).unwrap()
    }

    fn free_cell(group: &FiniteGroup, dim: u32, count: u64) -> Cell {
        Cell {
            stabilizer: group.trivial_subgroup(),
            dimension: dim,
            count,
        }
    }

    #[test]
    fn single_fixed_point() {
        let s4 = g("S4");
        let x = GCWComplex::point(&s4);
        assert!(x.basepoint_fixed());
        let lat = s4.subgroup_lattice();
        for class in lat.classes() {
            let k = lat.handle(class.rep);
            assert_eq!(x.chi_fixed(&k).unwrap(), 1);
        }
    }

    #[test]
    fn fixed_point_plus_free_arc() {
        let s4 = g("S4");
        let x = GCWComplex::new(
            &s4,
            vec![
                Cell {
                    stabilizer: s4.full_subgroup(),
                    dimension: 0,
                    count: 1,
                },
                free_cell(&s4, 1, 1),
            ],
        )
        .unwrap();
        assert_eq!(x.chi_fixed(&s4.full_subgroup()).unwrap(), 1);
        assert_eq!(x.chi_fixed(&s4.trivial_subgroup()).unwrap(), 1 - 24);
    }

    #[test]
    fn wedge_identity_over_all_classes() {
        let s3 = g("S3");
        let c3 = s3.subgroup_generated(&[s3
            .element_id(&permutation_from_cycles_str("(0 1 2)", 3).unwrap())
            .unwrap()]);
        let x0 = GCWComplex::new(
            &s3,
            vec![
                Cell {
                    stabilizer: s3.full_subgroup(),
                    dimension: 0,
                    count: 2,
                },
                Cell {
                    stabilizer: c3.clone(),
                    dimension: 1,
                    count: 3,
                },
                free_cell(&s3, 2, 1),
            ],
        )
        .unwrap();
        let x1 = GCWComplex::new(
            &s3,
            vec![
                Cell {
                    stabilizer: s3.full_subgroup(),
                    dimension: 0,
                    count: 1,
                },
                Cell {
                    stabilizer: c3,
                    dimension: 0,
                    count: 2,
                },
                free_cell(&s3, 1, 2),
            ],
        )
        .unwrap();
        let w = x0.wedge(&x1).unwrap();
        let lat = s3.subgroup_lattice();
        for class in lat.classes() {
            let k = lat.handle(class.rep);
            assert_eq!(
                w.chi_fixed(&k).unwrap(),
                x0.chi_fixed(&k).unwrap() + x1.chi_fixed(&k).unwrap() - 1
            );
        }
        // Wedging with a point changes nothing.
        let wp = x0.wedge(&GCWComplex::point(&s3)).unwrap();
        for class in lat.classes() {
            let k = lat.handle(class.rep);
            assert_eq!(wp.chi_fixed(&k).unwrap(), x0.chi_fixed(&k).unwrap());
        }
    }

    #[test]
    fn wedge_needs_basepoints() {
        let s3 = g("S3");
        let free = GCWComplex::new(&s3, vec![free_cell(&s3, 0, 1)]).unwrap();
        assert!(!free.basepoint_fixed());
        let p = GCWComplex::point(&s3);
        assert!(free.wedge(&p).is_err());
        assert!(p.wedge(&free).is_err());
    }

    #[test]
    fn report_counts_orbits() {
        let s3 = g("S3");
        let free = GCWComplex::new(&s3, vec![free_cell(&s3, 0, 1)]).unwrap();
        let report = free.chi_report().unwrap();
        for entry in &report {
            let expect = if entry.order == 1 { 6 } else { 0 };
            assert_eq!(entry.chi, expect, "subgroup of order {}", entry.order);
        }

        let both = free.disjoint_union(&GCWComplex::point(&s3)).unwrap();
        let report = both.chi_report().unwrap();
        for entry in &report {
            let expect = if entry.order == 1 { 7 } else { 1 };
            assert_eq!(entry.chi, expect, "subgroup of order {}", entry.order);
        }
    }

    #[test]
    fn disjoint_union_additive() {
        let s3 = g("S3");
        let p = GCWComplex::point(&s3);
        let two = p.disjoint_union(&p).unwrap();
        let lat = s3.subgroup_lattice();
        for class in lat.classes() {
            assert_eq!(two.chi_fixed(&lat.handle(class.rep)).unwrap(), 2);
        }
        let x = GCWComplex::new(&s3, vec![free_cell(&s3, 1, 2)]).unwrap();
        let same = x.disjoint_union(&GCWComplex::empty(&s3)).unwrap();
        for class in lat.classes() {
            let k = lat.handle(class.rep);
            assert_eq!(same.chi_fixed(&k).unwrap(), x.chi_fixed(&k).unwrap());
        }
    }

    #[test]
    fn plain_characteristic_is_alternating_count() {
        let s4 = g("S4");
        let a4_gens: Vec<ElemId> = ["(0 1 2)", "(0 1)(2 3)"]
            .iter()
            .map(|s| {
                s4.element_id(&permutation_from_cycles_str(s, 4).unwrap())
                    .unwrap()
            })
            .collect();
        let a4 = s4.subgroup_generated(&a4_gens);
        assert_eq!(a4.order(), 12);
        let x = GCWComplex::new(
            &s4,
            vec![
                Cell {
                    stabilizer: a4,
                    dimension: 0,
                    count: 3,
                },
                free_cell(&s4, 1, 2),
                Cell {
                    stabilizer: s4.full_subgroup(),
                    dimension: 2,
                    count: 1,
                },
            ],
        )
        .unwrap();
        // 3 * [S4 : A4] - 2 * 24 + 1 * 1.
        let expect = 3 * 2 - 2 * 24 + 1;
        assert_eq!(x.chi_fixed(&s4.trivial_subgroup()).unwrap(), expect);
    }

    #[test]
    fn json_round_trip() {
        let s4 = g("S4");
        let x = GCWComplex::new(
            &s4,
            vec![
                Cell {
                    stabilizer: s4.full_subgroup(),
                    dimension: 0,
                    count: 1,
                },
                Cell {
                    stabilizer: s4.sylow_subgroup(2),
                    dimension: 1,
                    count: 4,
                },
                free_cell(&s4, 3, 2),
            ],
        )
        .unwrap();
        let v = x.to_json();
        let y = GCWComplex::from_json(&v, 2000).unwrap();
        assert_eq!(y.cells().len(), x.cells().len());
        let lat = s4.subgroup_lattice();
        for class in lat.classes() {
            let k = lat.handle(class.rep);
            // y has its own group instance; query via its lattice.
            let ylat = y.group().subgroup_lattice();
            let yk = ylat.handle(class.rep);
            assert_eq!(y.chi_fixed(&yk).unwrap(), x.chi_fixed(&k).unwrap());
        }

        assert!(GCWComplex::from_json(&json!({"cells": []}), 2000).is_err());
        let bad = json!({"group": "S4", "cells": [{"stabilizer": ["(0 1 2 3 4)"], "dimension": 0, "count": 1}]});
        assert!(GCWComplex::from_json(&bad, 2000).is_err());
        let zero = json!({"group": "S4", "cells": [{"stabilizer": ["()"], "dimension": 0, "count": 0}]});
        assert!(GCWComplex::from_json(&zero, 2000).is_err());
    }

    #[test]
    fn mixed_group_operations_rejected() {
        let s3a = g("S3");
        let s3b = g("S3");
        let pa = GCWComplex::point(&s3a);
        let pb = GCWComplex::point(&s3b);
        // Distinct instances are distinct groups, even with equal labels.
        assert!(pa.wedge(&pb).is_err());
        assert!(pa.disjoint_union(&pb).is_err());
        assert!(pa.chi_fixed(&s3b.full_subgroup()).is_err());
    }
}
