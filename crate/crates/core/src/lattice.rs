//! Complete subgroup lattices.
//!
//! Enumeration seeds the lattice with every cyclic subgroup and then joins
//! each known subgroup with each cyclic generator until nothing new appears.
//! Every subgroup `⟨g1, …, gk⟩` is reached through the chain
//! `⟨g1⟩ ⊂ ⟨g1,g2⟩ ⊂ …`, so the fixed point is the full lattice.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::bitset::ElementSet;
use crate::config::limits;
use crate::error::{Error, Result};
use crate::group::Group;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: ElementSet,
    order: usize,
    is_normal: bool,
    generators: Vec<usize>,
}

impl Subgroup {
    /// `members` must be a subgroup of `g`.
    pub fn from_members(g: &Group, members: ElementSet) -> Subgroup {
        let generators = greedy_generators(g, &members);
        Subgroup::with_generators(g, members, generators)
    }

    fn with_generators(g: &Group, members: ElementSet, generators: Vec<usize>) -> Subgroup {
        let is_normal = is_normal(g, &members);
        Subgroup {
            order: members.len(),
            members,
            is_normal,
            generators,
        }
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    /// A generating set, as element indices of the parent.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order <= other.order && self.members.is_subset(&other.members)
    }
}

fn greedy_generators(g: &Group, members: &ElementSet) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = g.generated(&gens);
    for x in members.iter() {
        if span.len() == members.len() {
            break;
        }
        if !span.contains(x) {
            gens.push(x);
            span = g.generated(&gens);
        }
    }
    gens
}

/// True iff conjugation by every generator of `g` fixes `h`.
pub fn is_normal(g: &Group, h: &ElementSet) -> bool {
    g.generator_indices()
        .iter()
        .all(|&s| h.iter().all(|x| h.contains(g.conjugate(x, s))))
}

/// `{ g⁻¹ x g : x ∈ h }`
pub fn conjugate_set(g: &Group, h: &ElementSet, by: usize) -> ElementSet {
    ElementSet::from_indices(g.order(), h.iter().map(|x| g.conjugate(x, by)))
}

/// Largest subgroup of `g` in which `h` is normal.
pub fn normalizer(g: &Group, h: &ElementSet) -> Subgroup {
    let members = ElementSet::from_indices(
        g.order(),
        (0..g.order()).filter(|&s| h.iter().all(|x| h.contains(g.conjugate(x, s)))),
    );
    Subgroup::from_members(g, members)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Smallest subgroup index in the class.
    pub representative: usize,
    /// Subgroup indices, ascending.
    pub members: Vec<usize>,
    pub order: usize,
    pub is_normal: bool,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    group: Arc<Group>,
    subgroups: Vec<Subgroup>,
    lookup: HashMap<ElementSet, usize>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    maximal: Vec<usize>,
}

pub fn all_subgroups(group: &Arc<Group>) -> Result<SubgroupLattice> {
    all_subgroups_bounded(group, limits().max_lattice_order)
}

pub fn all_subgroups_bounded(group: &Arc<Group>, bound: usize) -> Result<SubgroupLattice> {
    let g = group.as_ref();
    let n = g.order();
    if n > bound {
        return Err(Error::LatticeTooLarge { order: n, limit: bound });
    }
    // Any subset closure that outgrows the largest proper divisor is all of G.
    let largest_proper = if n == 1 { 0 } else { n / smallest_prime_factor(n) };
    let whole = ElementSet::full(n);

    let mut found: Vec<(ElementSet, Vec<usize>)> = Vec::new();
    let mut lookup: HashMap<ElementSet, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut cyclic_generators = Vec::new();

    let trivial = ElementSet::from_indices(n, [Group::IDENTITY]);
    lookup.insert(trivial.clone(), 0);
    found.push((trivial, Vec::new()));
    for x in 1..n {
        let set = cyclic_span(g, x);
        if !lookup.contains_key(&set) {
            lookup.insert(set.clone(), found.len());
            queue.push_back(found.len());
            found.push((set, vec![x]));
            cyclic_generators.push(x);
        }
    }

    while let Some(i) = queue.pop_front() {
        for &c in &cyclic_generators {
            if found[i].0.contains(c) {
                continue;
            }
            let (base, base_gens) = &found[i];
            let joined = join(g, base, base_gens, c, largest_proper, &whole);
            if !lookup.contains_key(&joined) {
                let mut gens = base_gens.clone();
                gens.push(c);
                lookup.insert(joined.clone(), found.len());
                queue.push_back(found.len());
                found.push((joined, gens));
            }
        }
    }

    found.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    let subgroups: Vec<Subgroup> = found
        .into_iter()
        .map(|(members, gens)| Subgroup::with_generators(g, members, gens))
        .collect();
    let lookup: HashMap<ElementSet, usize> = subgroups
        .iter()
        .enumerate()
        .map(|(i, s)| (s.members.clone(), i))
        .collect();

    let (classes, class_of) = conjugacy_partition(g, &subgroups, &lookup);
    let maximal = find_maximal(&subgroups);
    Ok(SubgroupLattice {
        group: Arc::clone(group),
        subgroups,
        lookup,
        classes,
        class_of,
        maximal,
    })
}

pub(crate) fn smallest_prime_factor(n: usize) -> usize {
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 1;
    }
    n
}

fn cyclic_span(g: &Group, x: usize) -> ElementSet {
    let mut set = ElementSet::new(g.order());
    let mut y = x;
    set.insert(Group::IDENTITY);
    while set.insert(y) {
        y = g.mul(y, x);
    }
    set
}

/// `⟨base ∪ {extra}⟩`.
fn join(
    g: &Group,
    base: &ElementSet,
    base_gens: &[usize],
    extra: usize,
    largest_proper: usize,
    whole: &ElementSet,
) -> ElementSet {
    let mut set = base.clone();
    let mut size = set.len();
    let mut pending: Vec<usize> = Vec::new();
    // Products of base members by base generators stay in the base.
    for x in base.iter() {
        let y = g.mul(x, extra);
        if set.insert(y) {
            pending.push(y);
            size += 1;
        }
    }
    while let Some(x) = pending.pop() {
        if size > largest_proper {
            return whole.clone();
        }
        for &s in base_gens.iter().chain(std::iter::once(&extra)) {
            let y = g.mul(x, s);
            if set.insert(y) {
                pending.push(y);
                size += 1;
            }
        }
    }
    if size > largest_proper {
        return whole.clone();
    }
    set
}

fn conjugacy_partition(
    g: &Group,
    subgroups: &[Subgroup],
    lookup: &HashMap<ElementSet, usize>,
) -> (Vec<ConjugacyClass>, Vec<usize>) {
    let mut class_of = vec![usize::MAX; subgroups.len()];
    let mut classes = Vec::new();
    for start in 0..subgroups.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[start] = id;
        let mut members = vec![start];
        let mut frontier = vec![start];
        while let Some(i) = frontier.pop() {
            for &s in g.generator_indices() {
                let conj = conjugate_set(g, &subgroups[i].members, s);
                let j = lookup[&conj];
                if class_of[j] == usize::MAX {
                    class_of[j] = id;
                    members.push(j);
                    frontier.push(j);
                }
            }
        }
        members.sort_unstable();
        classes.push(ConjugacyClass {
            representative: start,
            order: subgroups[start].order,
            is_normal: subgroups[start].is_normal,
            members,
        });
    }
    (classes, class_of)
}

fn find_maximal(subgroups: &[Subgroup]) -> Vec<usize> {
    let top = subgroups.len() - 1;
    (0..top)
        .filter(|&i| {
            let h = &subgroups[i];
            !subgroups[i + 1..top]
                .iter()
                .any(|k| k.order > h.order && k.order % h.order == 0 && h.members.is_subset(&k.members))
        })
        .collect()
}

impl SubgroupLattice {
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    /// Sorted by `(order, members)`; index 0 is trivial, the last is `G`.
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn whole(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn index_of(&self, members: &ElementSet) -> Option<usize> {
        self.lookup.get(members).copied()
    }

    /// Classes sorted by `(order, representative members)`.
    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, subgroup: usize) -> usize {
        self.class_of[subgroup]
    }

    pub fn maximal_subgroups(&self) -> &[usize] {
        &self.maximal
    }

    pub fn is_maximal(&self, subgroup: usize) -> bool {
        self.maximal.binary_search(&subgroup).is_ok()
    }

    pub fn normal_subgroups(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.subgroups[i].is_normal).collect()
    }

    /// Indices of subgroups of order `p^k`, the full `p`-part of `|G|`.
    pub fn sylow_subgroups(&self, p: usize) -> Result<Vec<usize>> {
        let n = self.group.order();
        if p < 2 || smallest_prime_factor(p) != p {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if n % p != 0 {
            return Err(Error::Domain(format!("{p} does not divide |G| = {n}")));
        }
        let mut pk = 1;
        while n % (pk * p) == 0 {
            pk *= p;
        }
        Ok((0..self.len()).filter(|&i| self.subgroups[i].order == pk).collect())
    }

    /// Whether subgroup `h` is contained in subgroup `k`.
    pub fn is_subgroup_of(&self, h: usize, k: usize) -> bool {
        self.subgroups[h].is_subgroup_of(&self.subgroups[k])
    }
}

pub fn conjugacy_classes(lattice: &SubgroupLattice) -> &[ConjugacyClass] {
    lattice.classes()
}

pub fn maximal_subgroups(lattice: &SubgroupLattice) -> &[usize] {
    lattice.maximal_subgroups()
}

pub fn sylow_subgroups(lattice: &SubgroupLattice, p: usize) -> Result<Vec<usize>> {
    lattice.sylow_subgroups(p)
}
