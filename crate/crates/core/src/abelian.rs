//! Finite abelian groups in invariant-factor form, and the group Hom(G, A).

use std::collections::HashMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::GroupError;
use crate::group::FiniteGroup;
use crate::subgroup::abelianization;

/// A finite abelian group `Z/e₁ × … × Z/eₛ` with `e₁ | e₂ | … | eₛ`.
///
/// Elements are addressed by their mixed-radix index, the first factor being
/// the most significant digit. Index order is therefore lexicographic order
/// on coordinate vectors, and index `0` is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AbelianSpec", into = "AbelianSpec")]
pub struct AbelianGroup {
    factors: Vec<usize>,
    order: usize,
    add_table: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct AbelianSpec {
    invariant_factors: Vec<usize>,
}

impl TryFrom<AbelianSpec> for AbelianGroup {
    type Error = GroupError;

    fn try_from(spec: AbelianSpec) -> Result<Self, Self::Error> {
        AbelianGroup::new(spec.invariant_factors)
    }
}

impl From<AbelianGroup> for AbelianSpec {
    fn from(a: AbelianGroup) -> Self {
        AbelianSpec {
            invariant_factors: a.factors,
        }
    }
}

const ADD_TABLE_LIMIT: usize = 256;

impl AbelianGroup {
    /// Validates an invariant-factor list (each factor ≥ 2, each dividing the next).
    pub fn new(factors: Vec<usize>) -> Result<Self, GroupError> {
        if let Some(&e) = factors.iter().find(|&&e| e < 2) {
            return Err(GroupError::BadAbelian(format!("factor {e} is smaller than 2")));
        }
        if let Some(w) = factors.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(GroupError::BadAbelian(format!(
                "factor {} does not divide {}",
                w[0], w[1]
            )));
        }
        let order = factors
            .iter()
            .try_fold(1usize, |acc, &e| acc.checked_mul(e))
            .ok_or_else(|| GroupError::BadAbelian("order overflows".into()))?;
        let mut group = AbelianGroup {
            factors,
            order,
            add_table: Vec::new(),
        };
        if order <= ADD_TABLE_LIMIT {
            let mut table = vec![0; order * order];
            for a in 0..order {
                for b in 0..order {
                    table[a * order + b] = group.add_digits(a, b);
                }
            }
            group.add_table = table;
        }
        Ok(group)
    }

    pub fn trivial() -> Self {
        Self::new(Vec::new()).expect("trivial group")
    }

    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 1 {
            Ok(Self::trivial())
        } else {
            Self::new(vec![n])
        }
    }

    /// Normalizes an arbitrary product of cyclic groups, e.g. `[6, 2] → [2, 6]`.
    pub fn from_cyclic_orders(orders: &[usize]) -> Result<Self, GroupError> {
        if orders.contains(&0) {
            return Err(GroupError::BadAbelian("cyclic order 0".into()));
        }
        let mut powers: HashMap<usize, Vec<usize>> = HashMap::new();
        for &n in orders {
            for (p, q) in prime_power_factors(n) {
                powers.entry(p).or_default().push(q);
            }
        }
        let slots = powers.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1; slots];
        for list in powers.values_mut() {
            list.sort_unstable();
            let offset = slots - list.len();
            for (i, &q) in list.iter().enumerate() {
                factors[offset + i] *= q;
            }
        }
        Self::new(factors)
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Mixed-radix index of a coordinate vector; coordinates are reduced.
    pub fn encode(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.factors.len());
        self.factors
            .iter()
            .zip(coords)
            .fold(0, |acc, (&e, &c)| acc * e + c % e)
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut coords = vec![0; self.factors.len()];
        for (slot, &e) in coords.iter_mut().zip(&self.factors).rev() {
            *slot = index % e;
            index /= e;
        }
        coords
    }

    fn add_digits(&self, mut a: usize, mut b: usize) -> usize {
        let (mut out, mut place) = (0, 1);
        for &e in self.factors.iter().rev() {
            out += ((a % e + b % e) % e) * place;
            place *= e;
            a /= e;
            b /= e;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.add_table.is_empty() {
            self.add_digits(a, b)
        } else {
            self.add_table[a * self.order + b]
        }
    }

    pub fn neg(&self, a: usize) -> usize {
        let coords: Vec<usize> = self
            .decode(a)
            .iter()
            .zip(&self.factors)
            .map(|(&c, &e)| (e - c) % e)
            .collect();
        self.encode(&coords)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `k·a`
    pub fn scale(&self, a: usize, k: usize) -> usize {
        let coords: Vec<usize> = self
            .decode(a)
            .iter()
            .zip(&self.factors)
            .map(|(&c, &e)| (c * (k % e)) % e)
            .collect();
        self.encode(&coords)
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.decode(a)
            .iter()
            .zip(&self.factors)
            .fold(1, |acc, (&c, &e)| acc.lcm(&(e / e.gcd(&c))))
    }

    pub fn sum<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(0, |acc, x| self.add(acc, x))
    }

    /// All homomorphisms from `self` into `target`, each given by the images of
    /// the unit vectors of `self`. The list is ordered lexicographically.
    pub fn homs_into(&self, target: &AbelianGroup) -> Vec<Vec<usize>> {
        let mut homs = vec![Vec::new()];
        for &e in &self.factors {
            let admissible: Vec<usize> = (0..target.order)
                .filter(|&a| e % target.element_order(a) == 0)
                .collect();
            homs = homs
                .into_iter()
                .flat_map(|prefix| {
                    admissible.iter().map(move |&a| {
                        let mut next = prefix.clone();
                        next.push(a);
                        next
                    })
                })
                .collect();
        }
        homs
    }

    /// Evaluates the homomorphism with unit-vector images `images` at `x`.
    pub fn apply_hom(&self, target: &AbelianGroup, images: &[usize], x: usize) -> usize {
        let coords = self.decode(x);
        target.sum(coords.iter().zip(images).map(|(&c, &img)| target.scale(img, c)))
    }
}

/// Prime-power factorization as `(p, p^a)` pairs.
pub(crate) fn prime_power_factors(mut n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

/// Decomposes an abelian group on elements `0..m` (0 the identity, `add`
/// its operation) into invariant factors.
///
/// Returns the group in normal form together with the isomorphism, given as
/// the mixed-radix index of each element.
pub(crate) fn decompose_abelian(
    m: usize,
    add: impl Fn(usize, usize) -> usize,
) -> (AbelianGroup, Vec<usize>) {
    let order_of = |x: usize| {
        let (mut y, mut k) = (x, 1);
        while y != 0 {
            y = add(y, x);
            k += 1;
        }
        k
    };
    let orders: Vec<usize> = (0..m).map(order_of).collect();
    let multiple = |x: usize, k: usize| (0..k).fold(0, |acc, _| add(acc, x));

    // Per prime, a basis of the Sylow subgroup by peeling off elements of
    // maximal order modulo the span found so far.
    let mut per_prime: Vec<Vec<(usize, usize)>> = Vec::new();
    for (p, q) in prime_power_factors(m) {
        let sylow: Vec<usize> = (0..m).filter(|&x| q % orders[x] == 0).collect();
        let mut in_span = vec![false; m];
        in_span[0] = true;
        let mut span = vec![0];
        let mut basis = Vec::new();
        while span.len() < sylow.len() {
            let (x, rel_order) = sylow
                .iter()
                .filter(|&&x| !in_span[x])
                .map(|&x| {
                    let (mut y, mut t) = (multiple(x, p), p);
                    while !in_span[y] {
                        y = multiple(y, p);
                        t *= p;
                    }
                    (x, t)
                })
                .max_by_key(|&(x, t)| (t, std::cmp::Reverse(x)))
                .expect("span is a proper subgroup");
            let lift = span
                .iter()
                .map(|&s| add(x, s))
                .find(|&y| orders[y] == rel_order)
                .expect("a maximal-order coset contains an element of the same order");
            let mut next = Vec::with_capacity(span.len() * rel_order);
            for &s in &span {
                let mut y = s;
                for _ in 0..rel_order {
                    next.push(y);
                    y = add(y, lift);
                }
            }
            for &y in &next {
                in_span[y] = true;
            }
            span = next;
            basis.push((lift, rel_order));
        }
        basis.sort_by_key(|&(_, o)| o);
        per_prime.push(basis);
    }

    let slots = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut gens = vec![0; slots];
    let mut factors = vec![1; slots];
    for basis in &per_prime {
        let offset = slots - basis.len();
        for (i, &(b, o)) in basis.iter().enumerate() {
            gens[offset + i] = add(gens[offset + i], b);
            factors[offset + i] *= o;
        }
    }
    let group = AbelianGroup::new(factors.clone()).expect("invariant factors are well formed");

    let mut coords = vec![usize::MAX; m];
    let mut layer = vec![(0usize, 0usize)];
    for (&g, &e) in gens.iter().zip(&factors) {
        let mut next = Vec::with_capacity(layer.len() * e);
        for &(elem, code) in &layer {
            let mut y = elem;
            for i in 0..e {
                next.push((y, code * e + i));
                y = add(y, g);
            }
        }
        layer = next;
    }
    for (elem, code) in layer {
        assert_eq!(coords[elem], usize::MAX, "basis is not independent");
        coords[elem] = code;
    }
    (group, coords)
}

/// A homomorphism `G → A`, stored as the value at every element of `G`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomToA {
    values: Vec<usize>,
}

impl HomToA {
    pub fn new(values: Vec<usize>) -> Self {
        HomToA { values }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    #[inline]
    pub fn at(&self, g: usize) -> usize {
        self.values[g]
    }

    /// Exhaustive check of `value(g·h) = value(g) + value(h)`.
    pub fn is_homomorphism(&self, group: &FiniteGroup, a: &AbelianGroup) -> bool {
        group.elements().all(|g| {
            group
                .elements()
                .all(|h| self.values[group.mul(g, h)] == a.add(self.values[g], self.values[h]))
        })
    }

    /// The value vector as coordinate vectors of `A`.
    pub fn to_coordinates(&self, a: &AbelianGroup) -> Vec<Vec<usize>> {
        self.values.iter().map(|&v| a.decode(v)).collect()
    }
}

/// Hom(G, A) as a finite abelian group under pointwise addition.
#[derive(Debug, Clone)]
pub struct HomGroup {
    target: AbelianGroup,
    elements: Vec<HomToA>,
    add: Vec<usize>,
    index: HashMap<HomToA, usize>,
}

impl HomGroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn target(&self) -> &AbelianGroup {
        &self.target
    }

    pub fn elements(&self) -> &[HomToA] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &HomToA {
        &self.elements[i]
    }

    #[inline]
    pub fn add(&self, i: usize, j: usize) -> usize {
        self.add[i * self.elements.len() + j]
    }

    pub fn index_of(&self, hom: &HomToA) -> Option<usize> {
        self.index.get(hom).copied()
    }

    /// JSON form: one array of coordinate vectors per homomorphism.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(
            self.elements
                .iter()
                .map(|h| serde_json::to_value(h.to_coordinates(&self.target)).unwrap())
                .collect::<Vec<_>>(),
        )
    }
}

/// `|Hom(B, A)| = ∏ gcd(bᵢ, aⱼ)`.
pub fn hom_count_abelian(b: &AbelianGroup, a: &AbelianGroup) -> u128 {
    b.factors()
        .iter()
        .flat_map(|&bi| a.factors().iter().map(move |&aj| bi.gcd(&aj) as u128))
        .product()
}

/// Enumerates Hom(G, A) by lifting homomorphisms from the abelianization of `G`.
pub fn hom_group(group: &FiniteGroup, a: &AbelianGroup) -> HomGroup {
    let full: Vec<usize> = group.elements().collect();
    let ab = abelianization(group, &full);
    let mut elements: Vec<HomToA> = ab
        .group()
        .homs_into(a)
        .iter()
        .map(|images| {
            HomToA::new(
                group
                    .elements()
                    .map(|g| ab.group().apply_hom(a, images, ab.project(g)))
                    .collect(),
            )
        })
        .collect();
    elements.sort();
    let index: HashMap<HomToA, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, h)| (h.clone(), i))
        .collect();
    let h = elements.len();
    let mut add = vec![0; h * h];
    for i in 0..h {
        for j in 0..h {
            let sum = HomToA::new(
                elements[i]
                    .values
                    .iter()
                    .zip(&elements[j].values)
                    .map(|(&x, &y)| a.add(x, y))
                    .collect(),
            );
            add[i * h + j] = index[&sum];
        }
    }
    HomGroup {
        target: a.clone(),
        elements,
        add,
        index,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};

    fn ab(factors: &[usize]) -> AbelianGroup {
        AbelianGroup::new(factors.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(AbelianGroup::new(vec![2, 3]).is_err());
        assert!(AbelianGroup::new(vec![1]).is_err());
        assert_eq!(ab(&[2, 4]).order(), 8);
        assert_eq!(ab(&[]).order(), 1);
        assert_eq!(AbelianGroup::from_cyclic_orders(&[6, 2]).unwrap(), ab(&[2, 6]));
        assert_eq!(AbelianGroup::from_cyclic_orders(&[1, 1]).unwrap(), ab(&[]));
        assert_eq!(AbelianGroup::from_cyclic_orders(&[4, 6, 9]).unwrap(), ab(&[6, 36]));
    }

    #[test]
    fn arithmetic() {
        let a = ab(&[2, 4]);
        let x = a.encode(&[1, 3]);
        assert_eq!(a.decode(x), vec![1, 3]);
        assert_eq!(a.element_order(x), 4);
        assert_eq!(a.add(x, x), a.encode(&[0, 2]));
        assert_eq!(a.add(x, a.neg(x)), 0);
        assert_eq!(a.scale(x, 3), a.encode(&[1, 1]));
    }

    #[test]
    fn gcd_formula_examples() {
        assert_eq!(hom_count_abelian(&ab(&[4]), &ab(&[2])), 2);
        assert_eq!(hom_count_abelian(&ab(&[2, 2]), &ab(&[2])), 4);
        assert_eq!(hom_count_abelian(&ab(&[6]), &ab(&[6])), 6);
        // brute force: x in C6 with 6x = 0
        let c6 = ab(&[6]);
        assert_eq!((0..6).filter(|&x| c6.scale(x, 6) == 0).count(), 6);
    }

    #[test]
    fn homs_into_matches_gcd_formula() {
        let sets = [vec![], vec![2], vec![4], vec![2, 2], vec![2, 6], vec![3, 3], vec![2, 4]];
        for b in &sets {
            for a in &sets {
                let (b, a) = (ab(b), ab(a));
                assert_eq!(b.homs_into(&a).len() as u128, hom_count_abelian(&b, &a));
            }
        }
    }

    #[test]
    fn decompose_cyclic_products() {
        // Z2 × Z4 × Z3 presented as a product of cyclic groups with its own indexing.
        let dims = [2usize, 4, 3];
        let m = 24;
        let split = |x: usize| [x % 2, (x / 2) % 4, x / 8];
        let add = |x: usize, y: usize| {
            let (a, b) = (split(x), split(y));
            (a[0] + b[0]) % dims[0] + 2 * ((a[1] + b[1]) % dims[1]) + 8 * ((a[2] + b[2]) % dims[2])
        };
        let (group, coords) = decompose_abelian(m, add);
        assert_eq!(group.factors(), &[2, 12]);
        for x in 0..m {
            for y in 0..m {
                assert_eq!(coords[add(x, y)], group.add(coords[x], coords[y]));
            }
        }
    }

    #[test]
    fn hom_group_examples() {
        let s3 = build_group(&GroupSpec::symmetric(3)).unwrap();
        let v4 = build_group(&GroupSpec::klein_four()).unwrap();
        let c3 = build_group(&GroupSpec::cyclic(3)).unwrap();
        let c2 = ab(&[2]);
        assert_eq!(hom_group(&s3, &c2).len(), 2);
        assert_eq!(hom_group(&v4, &c2).len(), 4);
        assert_eq!(hom_group(&c3, &c2).len(), 1);
        let hg = hom_group(&s3, &c2);
        assert!(hg.get(0).values().iter().all(|&v| v == 0));
        for h in hg.elements() {
            assert!(h.is_homomorphism(&s3, &c2));
        }
        // sign: transpositions map to 1
        let sign = hg.get(1);
        assert_eq!(sign.at(s3.generators()[0]), 1);
        assert_eq!(sign.at(s3.generators()[1]), 0);
    }

    #[test]
    fn hom_group_table_is_a_group() {
        let d4 = build_group(&GroupSpec::dihedral(4)).unwrap();
        let a = ab(&[2, 4]);
        let hg = hom_group(&d4, &a);
        let h = hg.len();
        assert_eq!(h, 16);
        for i in 0..h {
            assert_eq!(hg.add(0, i), i);
            assert!((0..h).any(|j| hg.add(i, j) == 0));
            assert!(hg.get(i).is_homomorphism(&d4, &a));
        }
        let json = hg.to_json();
        assert_eq!(json.as_array().unwrap().len(), h);
    }

    #[test]
    fn abelian_json() {
        let a: AbelianGroup = serde_json::from_str(r#"{"invariantFactors":[2,4]}"#).unwrap();
        assert_eq!(a, ab(&[2, 4]));
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"{"invariantFactors":[2,4]}"#);
        assert!(serde_json::from_str::<AbelianGroup>(r#"{"invariantFactors":[3,4]}"#).is_err());
    }
}
