//! Subgroups up to conjugacy, coset actions and abelianizations.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::abelian::{decompose_abelian, AbelianGroup};
use crate::error::GroupError;
use crate::group::FiniteGroup;

/// One conjugacy class of subgroups `U ≤ G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SubgroupClass {
    /// Lexicographically least member of the class, as sorted element indices.
    pub representative: Vec<usize>,
    /// A generating set of the representative.
    pub generators: Vec<usize>,
    /// `(G : U)`
    pub index: usize,
    pub normalizer_order: usize,
    /// `|N_G(U)| / |U|`, the centralizer order of the coset action.
    pub centralizer_order: usize,
    /// Number of conjugates of `U`.
    pub class_size: usize,
    pub is_full_group: bool,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.representative.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.representative
    }
}

/// Every subgroup of `G`, each as a sorted element list together with a
/// generating set. Built from the cyclic subgroups by repeated joins.
pub fn all_subgroups(group: &FiniteGroup) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut found: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut cyclic = Vec::new();
    for g in group.elements() {
        let elems = group.closure(&[g]);
        if !found.contains_key(&elems) {
            let gens = if g == 0 { Vec::new() } else { vec![g] };
            found.insert(elems.clone(), gens.clone());
            cyclic.push((elems, gens));
        }
    }
    let mut frontier = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (h_elems, h_gens) in &frontier {
            for (c_elems, c_gens) in &cyclic {
                if c_elems.iter().all(|x| h_elems.binary_search(x).is_ok()) {
                    continue;
                }
                let mut gens = h_gens.clone();
                gens.extend(c_gens);
                let joined = group.closure(&gens);
                if !found.contains_key(&joined) {
                    found.insert(joined.clone(), gens.clone());
                    next.push((joined, gens));
                }
            }
        }
        frontier = next;
    }
    found.into_iter().collect()
}

fn conjugate_set(group: &FiniteGroup, g: usize, set: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = set.iter().map(|&x| group.conjugate(g, x)).collect();
    out.sort_unstable();
    out
}

/// Conjugacy classes of subgroups, ordered by ascending order of `U` with
/// ties broken by the representative; the last class is `G` itself.
pub fn subgroup_classes(group: &FiniteGroup) -> Vec<SubgroupClass> {
    let subgroups = all_subgroups(group);
    let mut assigned: HashSet<Vec<usize>> = HashSet::new();
    let mut classes = Vec::new();
    for (elems, gens) in &subgroups {
        if assigned.contains(elems) {
            continue;
        }
        let mut conjugates: Vec<Vec<usize>> = Vec::new();
        let mut normalizer_order = 0;
        let mut conj_gens = gens.clone();
        for g in group.elements() {
            let conj = conjugate_set(group, g, elems);
            if conj == *elems {
                normalizer_order += 1;
            }
            conjugates.push(conj);
        }
        conjugates.sort();
        conjugates.dedup();
        let representative = conjugates[0].clone();
        if representative != *elems {
            // Carry the generating set over to the chosen representative.
            let g = group
                .elements()
                .find(|&g| conjugate_set(group, g, elems) == representative)
                .expect("representative is a conjugate");
            conj_gens = gens.iter().map(|&x| group.conjugate(g, x)).collect();
        }
        let order = elems.len();
        debug_assert_eq!(conjugates.len() * normalizer_order, group.order());
        classes.push(SubgroupClass {
            generators: conj_gens,
            index: group.order() / order,
            normalizer_order,
            centralizer_order: normalizer_order / order,
            class_size: conjugates.len(),
            is_full_group: order == group.order(),
            representative,
        });
        assigned.extend(conjugates);
    }
    classes.sort_by(|a, b| {
        (a.order(), &a.representative).cmp(&(b.order(), &b.representative))
    });
    classes
}

/// The action of `G` on the left cosets `G/U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationAction {
    degree: usize,
    /// `images[g][j]` is the point `g·j`.
    images: Vec<Vec<usize>>,
    transversal: Vec<usize>,
    /// Point `j` with `g ∈ t_j U`.
    point_of: Vec<usize>,
}

impl PermutationAction {
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn act(&self, g: usize, point: usize) -> usize {
        self.images[g][point]
    }

    pub fn permutation(&self, g: usize) -> &[usize] {
        &self.images[g]
    }

    /// The permutation of every group element, indexed by element.
    pub fn images(&self) -> &[Vec<usize>] {
        &self.images
    }

    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    /// The coset point containing element `g`.
    pub fn point_of(&self, g: usize) -> usize {
        self.point_of[g]
    }

    pub fn stabilizer(&self, point: usize) -> Vec<usize> {
        (0..self.images.len())
            .filter(|&g| self.images[g][point] == point)
            .collect()
    }
}

/// Coset action with the transversal found by scanning elements in index order.
pub fn coset_action(group: &FiniteGroup, subgroup: &[usize]) -> PermutationAction {
    let d = group.order();
    let mut point_of = vec![usize::MAX; d];
    let mut transversal = Vec::new();
    for g in group.elements() {
        if point_of[g] == usize::MAX {
            let j = transversal.len();
            transversal.push(g);
            for &u in subgroup {
                point_of[group.mul(g, u)] = j;
            }
        }
    }
    finish_action(group, transversal, point_of)
}

/// Coset action for a caller-chosen transversal. `transversal[0]` must be the
/// identity and the entries must lie in distinct cosets.
pub fn coset_action_with_transversal(
    group: &FiniteGroup,
    subgroup: &[usize],
    transversal: &[usize],
) -> Result<PermutationAction, GroupError> {
    let d = group.order();
    if transversal.len() * subgroup.len() != d {
        return Err(GroupError::BadTransversal(format!(
            "expected {} representatives, got {}",
            d / subgroup.len(),
            transversal.len()
        )));
    }
    if transversal.first() != Some(&0) {
        return Err(GroupError::BadTransversal("first representative must be the identity".into()));
    }
    let mut point_of = vec![usize::MAX; d];
    for (j, &t) in transversal.iter().enumerate() {
        for &u in subgroup {
            let x = group.mul(t, u);
            if point_of[x] != usize::MAX {
                return Err(GroupError::BadTransversal(format!(
                    "representatives {} and {} share a coset",
                    transversal[point_of[x]], t
                )));
            }
            point_of[x] = j;
        }
    }
    Ok(finish_action(group, transversal.to_vec(), point_of))
}

fn finish_action(group: &FiniteGroup, transversal: Vec<usize>, point_of: Vec<usize>) -> PermutationAction {
    let images = group
        .elements()
        .map(|g| transversal.iter().map(|&t| point_of[group.mul(g, t)]).collect())
        .collect();
    PermutationAction {
        degree: transversal.len(),
        images,
        transversal,
        point_of,
    }
}

/// `U/[U,U]` in invariant-factor form together with the projection from `U`.
#[derive(Debug, Clone)]
pub struct Abelianization {
    group: AbelianGroup,
    commutator: Vec<usize>,
    /// Indexed by element of the ambient group; `None` outside `U`.
    projection: Vec<Option<usize>>,
}

impl Abelianization {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn commutator_subgroup(&self) -> &[usize] {
        &self.commutator
    }

    /// Image of `u ∈ U` in `U/[U,U]`, as a mixed-radix index.
    #[inline]
    pub fn project(&self, u: usize) -> usize {
        self.projection[u].expect("element lies in the subgroup")
    }

    pub fn try_project(&self, g: usize) -> Option<usize> {
        self.projection[g]
    }
}

/// Abelianization of the subgroup with sorted element list `subgroup`.
pub fn abelianization(group: &FiniteGroup, subgroup: &[usize]) -> Abelianization {
    let mut commutators: Vec<usize> = subgroup
        .iter()
        .flat_map(|&a| subgroup.iter().map(move |&b| group.commutator(a, b)))
        .collect();
    commutators.sort_unstable();
    commutators.dedup();
    let commutator = group.closure(&commutators);

    // Label cosets of [U,U] in U, the trivial coset first.
    let mut coset = vec![usize::MAX; group.order()];
    let mut reps = Vec::new();
    for &u in subgroup {
        if coset[u] == usize::MAX {
            for &k in &commutator {
                coset[group.mul(u, k)] = reps.len();
            }
            reps.push(u);
        }
    }
    let m = reps.len();
    let mut table = vec![0; m * m];
    for i in 0..m {
        for j in 0..m {
            table[i * m + j] = coset[group.mul(reps[i], reps[j])];
        }
    }
    let (ab, coords) = decompose_abelian(m, |i, j| table[i * m + j]);
    let mut projection = vec![None; group.order()];
    for &u in subgroup {
        projection[u] = Some(coords[coset[u]]);
    }
    Abelianization {
        group: ab,
        commutator,
        projection,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};

    fn group(spec: GroupSpec) -> FiniteGroup {
        build_group(&spec).unwrap()
    }

    /// Subgroups by testing every subset; only for tiny groups.
    fn subgroups_by_subsets(g: &FiniteGroup) -> usize {
        let d = g.order();
        (0u32..1 << d)
            .filter(|mask| {
                let set: Vec<usize> = (0..d).filter(|i| mask >> i & 1 == 1).collect();
                !set.is_empty() && g.is_subgroup(&set)
            })
            .count()
    }

    #[test]
    fn class_examples() {
        let c2 = subgroup_classes(&group(GroupSpec::cyclic(2)));
        let summary: Vec<_> = c2.iter().map(|c| (c.index, c.centralizer_order)).collect();
        assert_eq!(summary, vec![(2, 2), (1, 1)]);

        let s3 = subgroup_classes(&group(GroupSpec::symmetric(3)));
        let summary: Vec<_> = s3.iter().map(|c| (c.index, c.centralizer_order)).collect();
        assert_eq!(summary, vec![(6, 6), (3, 1), (2, 2), (1, 1)]);
        assert!(s3.last().unwrap().is_full_group);
        assert_eq!(s3.iter().filter(|c| c.is_full_group).count(), 1);

        let c1 = subgroup_classes(&group(GroupSpec::cyclic(1)));
        assert_eq!(c1.len(), 1);
        assert_eq!((c1[0].index, c1[0].centralizer_order), (1, 1));
    }

    #[test]
    fn class_sizes_account_for_every_subgroup() {
        for spec in [
            GroupSpec::symmetric(3),
            GroupSpec::dihedral(4),
            GroupSpec::quaternion(),
            GroupSpec::klein_four(),
            GroupSpec::cyclic(6),
        ] {
            let g = group(spec);
            let classes = subgroup_classes(&g);
            let total: usize = classes.iter().map(|c| c.class_size).sum();
            assert_eq!(total, subgroups_by_subsets(&g), "{}", g.name());
            assert_eq!(total, all_subgroups(&g).len());
            for c in &classes {
                assert!(g.is_subgroup(&c.representative));
                assert_eq!(c.index * c.order(), g.order());
                assert_eq!(c.centralizer_order * c.order(), c.normalizer_order);
                assert_eq!(g.closure(&c.generators), c.representative);
            }
        }
    }

    #[test]
    fn s4_has_eleven_classes_and_thirty_subgroups() {
        let g = group(GroupSpec::symmetric(4));
        let classes = subgroup_classes(&g);
        assert_eq!(classes.len(), 11);
        assert_eq!(classes.iter().map(|c| c.class_size).sum::<usize>(), 30);
    }

    #[test]
    fn coset_action_examples() {
        let s3 = group(GroupSpec::symmetric(3));
        let full: Vec<usize> = s3.elements().collect();
        let trivial = coset_action(&s3, &full);
        assert_eq!(trivial.degree(), 1);

        let c4 = group(GroupSpec::cyclic(4));
        let regular = coset_action(&c4, &[0]);
        assert_eq!(regular.degree(), 4);
        let gen = c4.generators()[0];
        let cycles = crate::group::cycle_notation(regular.permutation(gen));
        assert_eq!(cycles.matches('(').count(), 1);
        assert_eq!(cycles.split(' ').count(), 4);

        let classes = subgroup_classes(&s3);
        let c2 = &classes[1];
        let natural = coset_action(&s3, c2.elements());
        assert_eq!(natural.degree(), 3);
        assert_eq!(natural.stabilizer(0), c2.representative);
    }

    #[test]
    fn coset_action_is_a_homomorphism() {
        for spec in [GroupSpec::symmetric(4), GroupSpec::dihedral(4), GroupSpec::quaternion()] {
            let g = group(spec);
            for class in subgroup_classes(&g) {
                let action = coset_action(&g, class.elements());
                assert_eq!(action.transversal()[0], 0);
                for a in g.elements() {
                    for b in g.elements() {
                        for j in 0..action.degree() {
                            assert_eq!(
                                action.act(g.mul(a, b), j),
                                action.act(a, action.act(b, j))
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bad_transversals_are_rejected() {
        let s3 = group(GroupSpec::symmetric(3));
        let c2 = subgroup_classes(&s3)[1].clone();
        let u = c2.elements();
        assert!(coset_action_with_transversal(&s3, u, &[0, 1]).is_err());
        let other = u[1];
        assert!(coset_action_with_transversal(&s3, u, &[0, other, 2]).is_err());
    }

    #[test]
    fn abelianization_examples() {
        let s3 = group(GroupSpec::symmetric(3));
        let full: Vec<usize> = s3.elements().collect();
        assert_eq!(abelianization(&s3, &full).group().factors(), &[2]);
        let c4 = group(GroupSpec::cyclic(4));
        let full: Vec<usize> = c4.elements().collect();
        assert_eq!(abelianization(&c4, &full).group().factors(), &[4]);
        let v4 = group(GroupSpec::klein_four());
        let full: Vec<usize> = v4.elements().collect();
        assert_eq!(abelianization(&v4, &full).group().factors(), &[2, 2]);
        let q8 = group(GroupSpec::quaternion());
        let full: Vec<usize> = q8.elements().collect();
        assert_eq!(abelianization(&q8, &full).group().factors(), &[2, 2]);
    }

    #[test]
    fn abelianization_projection_is_surjective_with_commutator_kernel() {
        let g = group(GroupSpec::symmetric(4));
        for class in subgroup_classes(&g) {
            let u = class.elements();
            let ab = abelianization(&g, u);
            let a = ab.group();
            let mut hit = vec![false; a.order()];
            for &x in u {
                hit[ab.project(x)] = true;
                for &y in u {
                    assert_eq!(ab.project(g.mul(x, y)), a.add(ab.project(x), ab.project(y)));
                }
            }
            assert!(hit.iter().all(|&h| h));
            let kernel: Vec<usize> = u.iter().copied().filter(|&x| ab.project(x) == 0).collect();
            assert_eq!(kernel, ab.commutator_subgroup());
        }
    }
}
