//! Concrete finite groups realized as permutation groups.
//!
//! A [`Group`] stores its full, canonically sorted element list. All other
//! modules address elements by their index in that list; index 0 is always the
//! identity because the identity is the lexicographically least permutation.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::bitset::ElementSet;
use crate::config::{limits, MUL_TABLE_MAX_ORDER};
use crate::error::{Error, Result};
use crate::perm::Permutation;

pub struct Group {
    degree: usize,
    generators: Vec<Permutation>,
    generator_indices: Vec<usize>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    mul_table: OnceLock<Option<Vec<u32>>>,
    inverses: OnceLock<Vec<u32>>,
    orders: OnceLock<Vec<u32>>,
}

/// Closes `gens` under composition using the configured maximum order.
pub fn close_generators(degree: usize, gens: &[Permutation]) -> Result<Group> {
    close_generators_bounded(degree, gens, limits().max_group_order)
}

pub fn close_generators_bounded(
    degree: usize,
    gens: &[Permutation],
    max_order: usize,
) -> Result<Group> {
    for g in gens {
        if g.degree() != degree {
            return Err(Error::InvalidPermutation(format!(
                "generator {g} has degree {} but the group has degree {degree}",
                g.degree()
            )));
        }
    }
    let identity = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if !seen.contains(&y) {
                if seen.len() >= max_order {
                    return Err(Error::GroupTooLarge { limit: max_order });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort_unstable();
    Ok(Group::from_sorted(degree, gens.to_vec(), elements))
}

impl Group {
    fn from_sorted(degree: usize, generators: Vec<Permutation>, elements: Vec<Permutation>) -> Group {
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let generator_indices = generators.iter().map(|g| index[g] as usize).collect();
        Group {
            degree,
            generators,
            generator_indices,
            elements,
            index,
            mul_table: OnceLock::new(),
            inverses: OnceLock::new(),
            orders: OnceLock::new(),
        }
    }

    pub fn trivial() -> Group {
        close_generators_bounded(1, &[], 1).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub const IDENTITY: usize = 0;

    fn table(&self) -> Option<&Vec<u32>> {
        self.mul_table
            .get_or_init(|| {
                let n = self.order();
                if n > MUL_TABLE_MAX_ORDER {
                    return None;
                }
                // Right multiplication by generators plus a BFS spanning tree
                // fills each row with one lookup per entry.
                let gens = &self.generators;
                let right: Vec<u32> = self
                    .elements
                    .iter()
                    .flat_map(|p| gens.iter().map(move |g| self.index[&p.then(g)]))
                    .collect();
                let k = gens.len();
                let mut tree: Vec<(usize, usize, usize)> = Vec::with_capacity(n);
                let mut seen = vec![false; n];
                seen[Self::IDENTITY] = true;
                let mut queue = VecDeque::from([Self::IDENTITY]);
                while let Some(x) = queue.pop_front() {
                    for i in 0..k {
                        let y = right[x * k + i] as usize;
                        if !seen[y] {
                            seen[y] = true;
                            tree.push((y, x, i));
                            queue.push_back(y);
                        }
                    }
                }
                let mut t = vec![0u32; n * n];
                for a in 0..n {
                    let row = &mut t[a * n..(a + 1) * n];
                    row[Self::IDENTITY] = a as u32;
                    for &(b, parent, i) in &tree {
                        row[b] = right[row[parent] as usize * k + i];
                    }
                }
                Some(t)
            })
            .as_ref()
    }

    pub fn has_mul_table(&self) -> bool {
        self.table().is_some()
    }

    /// Index of `elements[a] · elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self.table() {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&self.elements[a].then(&self.elements[b])] as usize,
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses.get_or_init(|| {
            self.elements
                .iter()
                .map(|p| self.index[&p.inverse()])
                .collect()
        })[a] as usize
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.orders
            .get_or_init(|| self.elements.iter().map(|p| p.order() as u32).collect())[a]
            as usize
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut result = Self::IDENTITY;
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    /// `a⁻¹ b⁻¹ a b`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `g⁻¹ x g`
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generator_indices;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> ElementSet {
        ElementSet::from_indices(
            self.order(),
            (0..self.order()).filter(|&x| {
                self.generator_indices
                    .iter()
                    .all(|&g| self.mul(x, g) == self.mul(g, x))
            }),
        )
    }

    /// Subgroup generated by the given element indices.
    pub fn generated(&self, gens: &[usize]) -> ElementSet {
        let mut set = ElementSet::new(self.order());
        set.insert(Self::IDENTITY);
        let mut queue = vec![Self::IDENTITY];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        set
    }

    /// Sorted element-order multiset.
    pub fn order_statistics(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    /// Materializes a subset (assumed to be a subgroup) as a group in its own
    /// right, on the same points.
    pub fn subgroup_as_group(&self, members: &ElementSet) -> Result<Group> {
        let gens = small_generating_set(self, members);
        close_generators_bounded(self.degree, &gens, members.len())
    }
}

/// Greedy generating set of the subgroup `members`, preferring elements of
/// large order.
fn small_generating_set(g: &Group, members: &ElementSet) -> Vec<Permutation> {
    let mut candidates: Vec<usize> = members.iter().collect();
    candidates.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut chosen: Vec<usize> = Vec::new();
    let mut span = g.generated(&chosen);
    for x in candidates {
        if span.len() == members.len() {
            break;
        }
        if !span.contains(x) {
            chosen.push(x);
            span = g.generated(&chosen);
        }
    }
    chosen.into_iter().map(|i| g.elements[i].clone()).collect()
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("order", &self.order())
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

/// Walks the Cayley graph of `⟨gens⟩` in `src`, assigning `images` to the
/// generators and extending by `combine`. Every edge is checked, so a
/// `Some` result is a homomorphism on `⟨gens⟩`. Entries outside `⟨gens⟩`
/// stay `None`.
pub(crate) fn extend_on_generators<T, F>(
    src: &Group,
    gens: &[usize],
    images: &[T],
    identity: T,
    combine: F,
) -> Option<Vec<Option<T>>>
where
    T: Clone + PartialEq,
    F: Fn(&T, &T) -> T,
{
    debug_assert_eq!(gens.len(), images.len());
    let mut map: Vec<Option<T>> = vec![None; src.order()];
    map[Group::IDENTITY] = Some(identity);
    let mut queue = VecDeque::from([Group::IDENTITY]);
    while let Some(x) = queue.pop_front() {
        let fx = map[x].clone().expect("visited");
        for (&g, img) in gens.iter().zip(images) {
            let y = src.mul(x, g);
            let value = combine(&fx, img);
            match &map[y] {
                Some(existing) => {
                    if *existing != value {
                        return None;
                    }
                }
                None => {
                    map[y] = Some(value);
                    queue.push_back(y);
                }
            }
        }
    }
    Some(map)
}
