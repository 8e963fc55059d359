//! Subgroup-order sums and commutator series.
//!
//! `σ₁(G) = (1/|G|) · Σ_{H ≤ G} |H|`, always carried as an exact [`Rational`].

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::lattice::{all_subgroups, Subgroup, SubgroupLattice};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sigma1Breakdown {
    pub group_order: u64,
    /// subgroup order → number of subgroups of that order
    pub counts: BTreeMap<u64, u64>,
    pub total_sum: u64,
    pub sigma1: Rational,
}

impl Sigma1Breakdown {
    pub fn from_lattice(lattice: &SubgroupLattice) -> Result<Sigma1Breakdown> {
        let mut counts = BTreeMap::new();
        for h in lattice.subgroups() {
            *counts.entry(h.order() as u64).or_insert(0u64) += 1;
        }
        let total_sum = counts.iter().try_fold(0u64, |acc, (&order, &count)| {
            order
                .checked_mul(count)
                .and_then(|x| acc.checked_add(x))
                .ok_or(Error::Overflow("subgroup order sum"))
        })?;
        let group_order = lattice.group().order() as u64;
        Ok(Sigma1Breakdown {
            group_order,
            counts,
            total_sum,
            sigma1: Rational::from_counts(total_sum, group_order)?,
        })
    }
}

pub fn sigma1(group: &Arc<Group>) -> Result<Rational> {
    Ok(sigma1_breakdown(group)?.sigma1)
}

pub fn sigma1_breakdown(group: &Arc<Group>) -> Result<Sigma1Breakdown> {
    Sigma1Breakdown::from_lattice(&all_subgroups(group)?)
}

pub fn sigma1_of_lattice(lattice: &SubgroupLattice) -> Result<Rational> {
    Ok(Sigma1Breakdown::from_lattice(lattice)?.sigma1)
}

/// σ₁ of the subgroup `h` itself, from the part of the lattice below it.
pub fn sigma1_of_subgroup(lattice: &SubgroupLattice, h: usize) -> Result<Rational> {
    let top = lattice.subgroup(h);
    let sum = lattice
        .subgroups()
        .iter()
        .filter(|k| k.is_subgroup_of(top))
        .try_fold(0u64, |acc, k| acc.checked_add(k.order() as u64))
        .ok_or(Error::Overflow("subgroup order sum"))?;
    Rational::from_counts(sum, top.order() as u64)
}

pub fn is_cyclic_subgroup(g: &Group, h: &Subgroup) -> bool {
    h.members().iter().any(|x| g.element_order(x) == h.order())
}

/// `Σ |H|` over cyclic subgroups; never less than `|G|`.
pub fn cyclic_subgroup_sum(lattice: &SubgroupLattice) -> Result<u64> {
    let g = lattice.group();
    lattice
        .subgroups()
        .iter()
        .filter(|h| is_cyclic_subgroup(g, h))
        .try_fold(0u64, |acc, h| acc.checked_add(h.order() as u64))
        .ok_or(Error::Overflow("cyclic subgroup sum"))
}

/// `Σ |H|` over one conjugacy class of non-normal maximal subgroups, which
/// always equals `|G|`.
pub fn nonnormal_maximal_class_sum(lattice: &SubgroupLattice, class_id: usize) -> Result<u64> {
    let class = lattice
        .classes()
        .get(class_id)
        .ok_or_else(|| Error::Precondition(format!("no conjugacy class {class_id}")))?;
    if class.is_normal {
        return Err(Error::Precondition(format!("class {class_id} is normal")));
    }
    if !lattice.is_maximal(class.representative) {
        return Err(Error::Precondition(format!("class {class_id} is not maximal")));
    }
    (class.order as u64)
        .checked_mul(class.size() as u64)
        .ok_or(Error::Overflow("class sum"))
}

/// Class ids of the non-normal maximal conjugacy classes.
pub fn nonnormal_maximal_classes(lattice: &SubgroupLattice) -> Vec<usize> {
    lattice
        .classes()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_normal && lattice.is_maximal(c.representative))
        .map(|(i, _)| i)
        .collect()
}

/// Subgroup generated by all `[a, b]`, `a ∈ A`, `b ∈ B`.
pub fn commutator_subgroup(g: &Group, a: &ElementSet, b: &ElementSet) -> ElementSet {
    let mut commutators = ElementSet::new(g.order());
    for x in a.iter() {
        for y in b.iter() {
            commutators.insert(g.commutator(x, y));
        }
    }
    g.generated(&commutators.to_vec())
}

/// `G ⊇ G' ⊇ G'' ⊇ …` up to and including the first repeated term.
pub fn derived_series(g: &Group) -> Vec<Subgroup> {
    series(g, |current| commutator_subgroup(g, current, current))
}

/// `γ₁ = G`, `γ_{k+1} = [γ_k, G]`, until it stabilizes.
pub fn lower_central_series(g: &Group) -> Vec<Subgroup> {
    let whole = ElementSet::full(g.order());
    series(g, |current| commutator_subgroup(g, current, &whole))
}

fn series(g: &Group, next: impl Fn(&ElementSet) -> ElementSet) -> Vec<Subgroup> {
    let mut current = ElementSet::full(g.order());
    let mut out = vec![Subgroup::from_members(g, current.clone())];
    loop {
        let n = next(&current);
        if n == current {
            return out;
        }
        out.push(Subgroup::from_members(g, n.clone()));
        current = n;
    }
}
