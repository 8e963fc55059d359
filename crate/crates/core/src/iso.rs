//! Isomorphism testing for small groups.
//!
//! Cheap invariants (order, abelianness, center order, element-order multiset)
//! reject most pairs. Survivors are settled by backtracking over images of a
//! greedy generating set, extending each partial assignment along the Cayley
//! graph and discarding it as soon as a relation or injectivity fails.

use crate::bitset::ElementSet;
use crate::config::limits;
use crate::error::{Error, Result};
use crate::group::{extend_on_generators, Group};

pub fn are_isomorphic(g: &Group, h: &Group) -> Result<bool> {
    Ok(find_isomorphism(g, h)?.is_some())
}

/// Returns an index map `φ` with `φ(a·b) = φ(a)·φ(b)` if one exists.
pub fn find_isomorphism(g: &Group, h: &Group) -> Result<Option<Vec<usize>>> {
    find_isomorphism_bounded(g, h, limits().max_isomorphism_order)
}

pub fn find_isomorphism_bounded(g: &Group, h: &Group, bound: usize) -> Result<Option<Vec<usize>>> {
    let order = g.order().max(h.order());
    if order > bound {
        return Err(Error::UnsupportedSize { order, limit: bound });
    }
    if g.order() != h.order()
        || g.is_abelian() != h.is_abelian()
        || g.center().len() != h.center().len()
        || g.order_statistics() != h.order_statistics()
    {
        return Ok(None);
    }
    let gens = greedy_generators(g);
    if gens.is_empty() {
        return Ok(Some(vec![Group::IDENTITY]));
    }
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            (0..h.order())
                .filter(|&y| h.element_order(y) == g.element_order(x))
                .collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    Ok(backtrack(g, h, &gens, &candidates, &mut images))
}

fn backtrack(
    g: &Group,
    h: &Group,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let depth = images.len();
    for &c in &candidates[depth] {
        images.push(c);
        if let Some(map) = partial_embedding(g, h, &gens[..=depth], images) {
            if depth + 1 == gens.len() {
                return Some(map.into_iter().map(|x| x.expect("generators span")).collect());
            }
            if let Some(found) = backtrack(g, h, gens, candidates, images) {
                return Some(found);
            }
        }
        images.pop();
    }
    None
}

/// Injective homomorphism on `⟨gens⟩` with the given generator images, if
/// the assignment admits one.
fn partial_embedding(
    g: &Group,
    h: &Group,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<Option<usize>>> {
    let map = extend_on_generators(g, gens, images, Group::IDENTITY, |&x, &y| h.mul(x, y))?;
    let mut hit = ElementSet::new(h.order());
    for &v in map.iter().flatten() {
        if !hit.insert(v) {
            return None;
        }
    }
    Some(map)
}

/// Irredundant generating set, largest element orders first.
fn greedy_generators(g: &Group) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut gens = Vec::new();
    let mut span = g.generated(&gens);
    for x in order {
        if span.len() == g.order() {
            break;
        }
        if !span.contains(x) {
            gens.push(x);
            span = g.generated(&gens);
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::close_generators;
    use crate::perm::Permutation;
    use crate::products::direct_product;

    fn cyclic(n: usize) -> Group {
        let images: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        close_generators(n, &[Permutation::from_usize(&images).unwrap()]).unwrap()
    }

    fn dihedral4() -> Group {
        close_generators(
            4,
            &[
                Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[&[1, 3]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn c4_is_not_klein() {
        let v = direct_product(&cyclic(2), &cyclic(2)).unwrap();
        assert!(!are_isomorphic(&cyclic(4), &v).unwrap());
    }

    #[test]
    fn found_map_is_an_isomorphism() {
        // D4 in two different permutation realizations.
        let d4 = dihedral4();
        let other = close_generators(
            4,
            &[
                Permutation::from_cycles(4, &[&[0, 2, 1, 3]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 1]]).unwrap(),
            ],
        )
        .unwrap();
        let phi = find_isomorphism(&d4, &other).unwrap().expect("isomorphic");
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(phi[d4.mul(a, b)], other.mul(phi[a], phi[b]));
            }
        }
    }

    #[test]
    fn size_bound_is_enforced() {
        let g = cyclic(70);
        assert_eq!(
            are_isomorphic(&g, &g).unwrap_err(),
            Error::UnsupportedSize { order: 70, limit: 64 }
        );
        assert!(find_isomorphism_bounded(&g, &g, 100).unwrap().is_some());
    }

    #[test]
    fn different_orders_are_not_isomorphic() {
        assert!(!are_isomorphic(&cyclic(3), &cyclic(4)).unwrap());
    }
}
