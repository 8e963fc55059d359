//! Structural classification and exact bound verdicts.
//!
//! Nilpotency and supersolvability each have two independent tests: a
//! lattice-level criterion used by default and an oracle built from series or
//! normal chains. Callers that verify results compare both.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::arith::Factorization;
use crate::error::Result;
use crate::group::Group;
use crate::invariants::{
    derived_series, is_cyclic_subgroup, lower_central_series, nonnormal_maximal_classes,
    sigma1_of_lattice,
};
use crate::lattice::SubgroupLattice;
use crate::products::{quotient_with_projection, Quotient};
use crate::rational::Rational;

pub fn is_cyclic(g: &Group) -> bool {
    (0..g.order()).any(|x| g.element_order(x) == g.order())
}

pub fn is_abelian(g: &Group) -> bool {
    g.is_abelian()
}

/// Order is a prime power; the trivial group counts.
pub fn is_p_group(g: &Group) -> bool {
    prime_divisors(g.order()).len() <= 1
}

pub(crate) fn prime_divisors(n: usize) -> Vec<usize> {
    Factorization::of(n as u64)
        .expect("group orders are positive")
        .primes()
        .map(|p| p as usize)
        .collect()
}

/// Every Sylow subgroup is normal.
pub fn is_nilpotent(lattice: &SubgroupLattice) -> bool {
    prime_divisors(lattice.group().order()).into_iter().all(|p| {
        lattice
            .sylow_subgroups(p)
            .map(|s| s.len() == 1)
            .unwrap_or(false)
    })
}

/// The lower central series reaches the trivial subgroup.
pub fn is_nilpotent_by_series(g: &Group) -> bool {
    lower_central_series(g).last().is_some_and(|s| s.is_trivial())
}

/// Every maximal subgroup has prime index.
pub fn is_supersolvable(lattice: &SubgroupLattice) -> bool {
    let n = lattice.group().order();
    lattice.maximal_subgroups().iter().all(|&m| {
        let index = n / lattice.subgroup(m).order();
        prime_divisors(index) == [index]
    })
}

/// Searches for `1 = N₀ < N₁ < … < N_k = G` with each `Nᵢ` normal in `G` and
/// each `N_{i+1}/Nᵢ` cyclic, by reachability over the normal subgroups.
pub fn is_supersolvable_by_chain(lattice: &SubgroupLattice) -> Result<bool> {
    let g = lattice.group();
    let normals = lattice.normal_subgroups();
    let mut quotients: HashMap<usize, Quotient> = HashMap::new();
    let mut reachable: Vec<usize> = vec![0];
    for &m in &normals[1..] {
        let big = lattice.subgroup(m);
        let mut ok = false;
        for &n in &reachable {
            let small = lattice.subgroup(n);
            if !small.is_subgroup_of(big) || small.order() == big.order() {
                continue;
            }
            if !quotients.contains_key(&n) {
                quotients.insert(n, quotient_with_projection(g, small.members())?);
            }
            let q = &quotients[&n];
            let target = big.order() / small.order();
            if big
                .members()
                .iter()
                .any(|x| q.group.element_order(q.projection[x]) == target)
            {
                ok = true;
                break;
            }
        }
        if ok {
            reachable.push(m);
        }
    }
    Ok(reachable.contains(&lattice.whole()))
}

pub fn is_solvable(g: &Group) -> bool {
    derived_series(g).last().is_some_and(|s| s.is_trivial())
}

pub fn has_cyclic_maximal_subgroup(lattice: &SubgroupLattice) -> bool {
    let g = lattice.group();
    lattice
        .maximal_subgroups()
        .iter()
        .any(|&m| is_cyclic_subgroup(g, lattice.subgroup(m)))
}

/// Shape of the non-normal maximal subgroups of a non-nilpotent group with
/// `σ₁ < 3`: there should be exactly one such conjugacy class and its members
/// should be cyclic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MaximalClassShape {
    pub applies: bool,
    pub unique_nonnormal_class: bool,
    pub class_members_cyclic: bool,
}

pub fn nonnormal_maximal_shape(lattice: &SubgroupLattice) -> Result<MaximalClassShape> {
    let sigma1 = sigma1_of_lattice(lattice)?;
    if sigma1 >= Rational::integer(3) || is_nilpotent(lattice) {
        return Ok(MaximalClassShape {
            applies: false,
            unique_nonnormal_class: false,
            class_members_cyclic: false,
        });
    }
    let classes = nonnormal_maximal_classes(lattice);
    let g = lattice.group();
    let cyclic = classes.iter().all(|&c| {
        lattice.classes()[c]
            .members
            .iter()
            .all(|&h| is_cyclic_subgroup(g, lattice.subgroup(h)))
    });
    Ok(MaximalClassShape {
        applies: true,
        unique_nonnormal_class: classes.len() == 1,
        class_members_cyclic: !classes.is_empty() && cyclic,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Bound {
    Two,
    TwoPlus4OverN,
    TwoPlus11OverN,
    Three,
}

impl Bound {
    pub const ALL: [Bound; 4] = [
        Bound::Two,
        Bound::TwoPlus4OverN,
        Bound::TwoPlus11OverN,
        Bound::Three,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Bound::Two => "TWO",
            Bound::TwoPlus4OverN => "TWO_PLUS_4_OVER_N",
            Bound::TwoPlus11OverN => "TWO_PLUS_11_OVER_N",
            Bound::Three => "THREE",
        }
    }

    /// The bound evaluated at group order `n`.
    pub fn value(self, n: u64) -> Result<Rational> {
        let two = Rational::integer(2);
        match self {
            Bound::Two => Ok(two),
            Bound::TwoPlus4OverN => two.checked_add(Rational::from_counts(4, n)?),
            Bound::TwoPlus11OverN => two.checked_add(Rational::from_counts(11, n)?),
            Bound::Three => Ok(Rational::integer(3)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Below,
    Equal,
    Above,
}

pub fn compare_to_bound(sigma1: Rational, order: u64, bound: Bound) -> Result<Verdict> {
    let b = bound.value(order)?;
    Ok(match sigma1.cmp(&b) {
        std::cmp::Ordering::Less => Verdict::Below,
        std::cmp::Ordering::Equal => Verdict::Equal,
        std::cmp::Ordering::Greater => Verdict::Above,
    })
}

pub fn bound_verdict(lattice: &SubgroupLattice, bound: Bound) -> Result<Verdict> {
    compare_to_bound(
        sigma1_of_lattice(lattice)?,
        lattice.group().order() as u64,
        bound,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralProfile {
    pub order: u64,
    pub is_cyclic: bool,
    pub is_abelian: bool,
    pub is_p_group: bool,
    pub is_nilpotent: bool,
    pub is_supersolvable: bool,
    pub is_solvable: bool,
    pub has_cyclic_maximal: bool,
    pub nonnormal_maximal_class_count: u64,
    pub sigma1: Rational,
    pub bound_verdicts: BTreeMap<&'static str, Verdict>,
}

impl StructuralProfile {
    pub fn of(lattice: &SubgroupLattice) -> Result<StructuralProfile> {
        let g = lattice.group();
        let sigma1 = sigma1_of_lattice(lattice)?;
        let order = g.order() as u64;
        let bound_verdicts = Bound::ALL
            .iter()
            .map(|&b| Ok((b.name(), compare_to_bound(sigma1, order, b)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(StructuralProfile {
            order,
            is_cyclic: is_cyclic(g),
            is_abelian: is_abelian(g),
            is_p_group: is_p_group(g),
            is_nilpotent: is_nilpotent(lattice),
            is_supersolvable: is_supersolvable(lattice),
            is_solvable: is_solvable(g),
            has_cyclic_maximal: has_cyclic_maximal_subgroup(lattice),
            nonnormal_maximal_class_count: nonnormal_maximal_classes(lattice).len() as u64,
            sigma1,
            bound_verdicts,
        })
    }

    /// cyclic ⇒ abelian ⇒ nilpotent ⇒ supersolvable ⇒ solvable
    pub fn implication_chain_holds(&self) -> bool {
        (!self.is_cyclic || self.is_abelian)
            && (!self.is_abelian || self.is_nilpotent)
            && (!self.is_nilpotent || self.is_supersolvable)
            && (!self.is_supersolvable || self.is_solvable)
    }
}
