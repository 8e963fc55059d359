//! Direct and semidirect products, automorphisms and quotients.

use std::sync::Arc;

use crate::bitset::ElementSet;
use crate::config::limits;
use crate::error::{Error, Result};
use crate::group::{close_generators, close_generators_bounded, extend_on_generators, Group};
use crate::perm::Permutation;

/// `G × H` acting on the disjoint union of the two point sets.
pub fn direct_product(g: &Group, h: &Group) -> Result<Group> {
    let max = limits().max_group_order;
    if g.order().saturating_mul(h.order()) > max {
        return Err(Error::GroupTooLarge { limit: max });
    }
    let degree = g.degree() + h.degree();
    let gens: Vec<Permutation> = g
        .generators()
        .iter()
        .map(|p| p.embed(0, degree))
        .chain(h.generators().iter().map(|p| p.embed(g.degree(), degree)))
        .collect();
    close_generators(degree, &gens)
}

/// Right regular representation of an abstract group on `order` labels.
///
/// `mul` must be an associative multiplication on `0..order` with `0` as the
/// identity; `gens` are labels generating the group.
pub fn regular_representation(
    order: usize,
    gens: &[usize],
    mul: impl Fn(usize, usize) -> usize,
) -> Result<Group> {
    let perms = gens
        .iter()
        .map(|&x| {
            let images: Vec<usize> = (0..order).map(|y| mul(y, x)).collect();
            Permutation::from_usize(&images)
        })
        .collect::<Result<Vec<_>>>()?;
    close_generators_bounded(order.max(1), &perms, order.max(1))
}

/// A multiplication-preserving bijection of a group, on element indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Automorphism {
    source_order: usize,
    images: Vec<u32>,
}

impl Automorphism {
    pub fn identity(source: &Group) -> Self {
        Automorphism {
            source_order: source.order(),
            images: (0..source.order() as u32).collect(),
        }
    }

    /// Validates a full index map. Multiplicativity is checked against every
    /// generator, which implies it on the whole group.
    pub fn new(source: &Group, images: Vec<usize>) -> Result<Self> {
        let n = source.order();
        if images.len() != n {
            return Err(Error::InvalidAutomorphism(format!(
                "expected {n} images, got {}",
                images.len()
            )));
        }
        let mut hit = ElementSet::new(n);
        for &x in &images {
            if x >= n || !hit.insert(x) {
                return Err(Error::InvalidAutomorphism("map is not a bijection".into()));
            }
        }
        for a in 0..n {
            for &g in source.generator_indices() {
                if images[source.mul(a, g)] != source.mul(images[a], images[g]) {
                    return Err(Error::InvalidAutomorphism(
                        "map does not preserve multiplication".into(),
                    ));
                }
            }
        }
        Ok(Automorphism {
            source_order: n,
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Extends images of the source's generators (in `generator_indices`
    /// order) to an automorphism.
    pub fn from_generator_images(source: &Group, gen_images: &[usize]) -> Result<Self> {
        let gens = source.generator_indices();
        if gens.len() != gen_images.len() {
            return Err(Error::InvalidAutomorphism(format!(
                "expected {} generator images, got {}",
                gens.len(),
                gen_images.len()
            )));
        }
        let map = extend_on_generators(source, gens, gen_images, Group::IDENTITY, |&x, &g| {
            source.mul(x, g)
        })
        .ok_or_else(|| {
            Error::InvalidAutomorphism("generator images violate a relation".into())
        })?;
        let images: Vec<usize> = map.into_iter().map(|x| x.expect("generators span")).collect();
        Automorphism::new(source, images)
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn source_order(&self) -> usize {
        self.source_order
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        assert_eq!(self.source_order, other.source_order);
        Automorphism {
            source_order: self.source_order,
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn order(&self) -> usize {
        let mut power = self.clone();
        let mut k = 1;
        while !power.is_identity() {
            power = power.compose(self);
            k += 1;
        }
        k
    }
}

/// `N ⋊ K` with `(n1,k1)(n2,k2) = (n1·α_{k1}(n2), k1·k2)`.
///
/// `action[i]` is the automorphism assigned to `K.generator_indices()[i]`;
/// the assignment must extend to a homomorphism `K → Aut(N)`. The result is
/// realized by its regular representation on `|N|·|K|` points.
pub fn semidirect_product(n: &Group, k: &Group, action: &[Automorphism]) -> Result<Group> {
    let kgens = k.generator_indices();
    if action.len() != kgens.len() {
        return Err(Error::InvalidAction(format!(
            "{} automorphisms given for {} generators",
            action.len(),
            kgens.len()
        )));
    }
    if let Some(a) = action.iter().find(|a| a.source_order() != n.order()) {
        return Err(Error::InvalidAction(format!(
            "automorphism acts on a group of order {} but N has order {}",
            a.source_order(),
            n.order()
        )));
    }
    let order = n.order() * k.order();
    let max = limits().max_group_order;
    if order > max {
        return Err(Error::GroupTooLarge { limit: max });
    }
    let alphas = extend_on_generators(k, kgens, action, Automorphism::identity(n), |x, g| {
        x.compose(g)
    })
    .ok_or_else(|| Error::InvalidAction("relation of K is not respected".into()))?;
    let alphas: Vec<Automorphism> = alphas.into_iter().map(|a| a.expect("generators span")).collect();

    let nk = k.order();
    let mul = |x: usize, y: usize| {
        let (n1, k1) = (x / nk, x % nk);
        let (n2, k2) = (y / nk, y % nk);
        let nn = n.mul(n1, alphas[k1].apply(n2));
        nn * nk + k.mul(k1, k2)
    };
    let gens: Vec<usize> = n
        .generator_indices()
        .iter()
        .map(|&g| g * nk)
        .chain(kgens.iter().copied())
        .collect();
    regular_representation(order, &gens, mul)
}

/// A quotient group together with the projection `G → G/N` on indices.
#[derive(Debug)]
pub struct Quotient {
    pub group: Arc<Group>,
    /// `projection[x]` is the index of the image of element `x`.
    pub projection: Vec<usize>,
}

pub fn quotient_group(g: &Group, normal: &ElementSet) -> Result<Group> {
    quotient_with_projection(g, normal).map(|q| Arc::try_unwrap(q.group).expect("unique"))
}

/// Action of `G` on the right cosets `Nx` by right multiplication.
pub fn quotient_with_projection(g: &Group, normal: &ElementSet) -> Result<Quotient> {
    if !crate::lattice::is_normal(g, normal) {
        return Err(Error::NotNormal);
    }
    let order = g.order();
    let members: Vec<usize> = normal.iter().collect();
    let mut coset_of = vec![usize::MAX; order];
    let mut reps = Vec::new();
    for x in 0..order {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &m in &members {
            coset_of[g.mul(m, x)] = id;
        }
    }
    let cosets = reps.len();
    let induced = |x: usize| -> Permutation {
        let images: Vec<u32> = reps.iter().map(|&r| coset_of[g.mul(r, x)] as u32).collect();
        Permutation::new(images).expect("coset action is a permutation")
    };
    let gens: Vec<Permutation> = g.generator_indices().iter().map(|&x| induced(x)).collect();
    let quotient = close_generators_bounded(cosets, &gens, cosets)?;
    let projection = (0..order)
        .map(|x| quotient.index_of(&induced(x)).expect("image lies in the quotient"))
        .collect();
    Ok(Quotient {
        group: Arc::new(quotient),
        projection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic;

    fn cyclic(n: usize) -> Group {
        let images: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        close_generators(n, &[Permutation::from_usize(&images).unwrap()]).unwrap()
    }

    fn a4() -> Group {
        close_generators(
            4,
            &[
                Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn direct_product_of_coprime_cyclics_is_cyclic() {
        let g = direct_product(&cyclic(2), &cyclic(3)).unwrap();
        assert_eq!(g.order(), 6);
        assert!(are_isomorphic(&g, &cyclic(6)).unwrap());
    }

    #[test]
    fn trivial_action_gives_direct_product() {
        let n = cyclic(3);
        let k = cyclic(4);
        let action = vec![Automorphism::identity(&n)];
        let sd = semidirect_product(&n, &k, &action).unwrap();
        assert_eq!(sd.order(), 12);
        assert!(are_isomorphic(&sd, &direct_product(&n, &k).unwrap()).unwrap());
    }

    #[test]
    fn klein_by_three_cycle_is_a4() {
        let v = direct_product(&cyclic(2), &cyclic(2)).unwrap();
        let [a, b] = [v.generator_indices()[0], v.generator_indices()[1]];
        // a -> b -> ab -> a
        let alpha = Automorphism::from_generator_images(&v, &[b, v.mul(a, b)]).unwrap();
        assert_eq!(alpha.order(), 3);
        let sd = semidirect_product(&v, &cyclic(3), &[alpha]).unwrap();
        assert_eq!(sd.order(), 12);
        assert!(are_isomorphic(&sd, &a4()).unwrap());
    }

    #[test]
    fn frobenius_twenty() {
        let n = cyclic(5);
        let g = n.generator_indices()[0];
        let alpha = Automorphism::from_generator_images(&n, &[n.pow(g, 2)]).unwrap();
        assert_eq!(alpha.order(), 4);
        let f20 = semidirect_product(&n, &cyclic(4), &[alpha]).unwrap();
        assert_eq!(f20.order(), 20);
        let stats = f20.order_statistics();
        let count = |k| stats.iter().filter(|&&o| o == k).count();
        assert_eq!((count(1), count(2), count(4), count(5)), (1, 5, 10, 4));
    }

    #[test]
    fn action_must_respect_relations() {
        // x -> x^2 has order 4 on C5, which cannot be the image of a C2 generator.
        let n = cyclic(5);
        let g = n.generator_indices()[0];
        let alpha = Automorphism::from_generator_images(&n, &[n.pow(g, 2)]).unwrap();
        assert!(matches!(
            semidirect_product(&n, &cyclic(2), &[alpha]),
            Err(Error::InvalidAction(_))
        ));
    }

    #[test]
    fn non_automorphisms_are_rejected() {
        let n = cyclic(4);
        let g = n.generator_indices()[0];
        // generator -> its square is not injective
        assert!(Automorphism::from_generator_images(&n, &[n.pow(g, 2)]).is_err());
        assert!(Automorphism::new(&n, vec![0, 0, 1, 2]).is_err());
    }

    #[test]
    fn quotients() {
        let g = a4();
        let whole = ElementSet::full(g.order());
        assert_eq!(quotient_group(&g, &whole).unwrap().order(), 1);

        // V4 = identity plus the three double transpositions.
        let v4 = ElementSet::from_indices(
            12,
            (0..12).filter(|&x| g.element_order(x) <= 2),
        );
        assert_eq!(v4.len(), 4);
        let q = quotient_with_projection(&g, &v4).unwrap();
        assert_eq!(q.group.order(), 3);
        for a in 0..12 {
            for b in 0..12 {
                assert_eq!(q.projection[g.mul(a, b)], q.group.mul(q.projection[a], q.projection[b]));
            }
        }

        let c3 = g.generated(&[g.generator_indices()[1]]);
        assert_eq!(quotient_group(&g, &c3).unwrap_err(), Error::NotNormal);
    }
}
