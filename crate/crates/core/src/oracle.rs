//! Brute-force ground truth: explicit wreath products and exhaustive
//! homomorphism search. Only meant for groups of at most about a million
//! elements.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;

use crate::abelian::{AbelianGroup, HomGroup, HomToA};
use crate::counting::DistributionTable;
use crate::error::CountError;
use crate::group::FiniteGroup;
use crate::subgroup::PermutationAction;

/// Default bound on `|A|ⁿ·n!`.
pub const WREATH_CAP: u64 = 1_000_000;
/// Default bound on the number of generator-image tuples tried.
pub const SEARCH_CAP: u64 = 100_000_000;
/// Largest degree accepted by [`centralizer_order`].
pub const CENTRALIZER_DEGREE_CAP: usize = 8;
/// Largest `n` an explicit wreath element can hold.
pub const MAX_DEGREE: usize = 12;

/// Anything with an identity, a product and a finite element list.
pub trait GroupLike {
    type Elem: Copy + Eq + Hash + Ord + Debug;

    fn identity(&self) -> Self::Elem;
    fn op(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn element_list(&self) -> Vec<Self::Elem>;

    fn power(&self, x: Self::Elem, e: usize) -> Self::Elem {
        (0..e).fold(self.identity(), |acc, _| self.op(acc, x))
    }
}

impl GroupLike for FiniteGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        0
    }

    fn op(&self, a: usize, b: usize) -> usize {
        self.mul(a, b)
    }

    fn element_list(&self) -> Vec<usize> {
        self.elements().collect()
    }
}

/// An element `(σ; a₀, …, a_{n−1})` of `A≀Sₙ`; decorations are indices into `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement {
    perm: [u8; MAX_DEGREE],
    decor: [u16; MAX_DEGREE],
}

impl WreathElement {
    pub fn perm(&self, n: usize) -> Vec<usize> {
        self.perm[..n].iter().map(|&p| p as usize).collect()
    }

    pub fn decorations(&self, n: usize) -> Vec<usize> {
        self.decor[..n].iter().map(|&a| a as usize).collect()
    }

    pub fn from_parts(perm: &[usize], decor: &[usize]) -> Self {
        let mut x = WreathElement {
            perm: [0; MAX_DEGREE],
            decor: [0; MAX_DEGREE],
        };
        for (slot, &p) in x.perm.iter_mut().zip(perm) {
            *slot = p as u8;
        }
        for (slot, &a) in x.decor.iter_mut().zip(decor) {
            *slot = a as u16;
        }
        x
    }
}

/// `A≀Sₙ` with product `(σ; a)(τ; b) = (στ; c)`, `c_j = b_j + a_{τ(j)}`: the
/// right factor acts first and carries its decorations along.
#[derive(Debug, Clone)]
pub struct ExplicitWreath {
    a: AbelianGroup,
    n: usize,
    kernel_only: bool,
}

/// Explicit `A≀Sₙ` with the default cap.
pub fn build_wreath_group(a: &AbelianGroup, n: usize) -> Result<ExplicitWreath, CountError> {
    build_wreath_group_with_cap(a, n, WREATH_CAP)
}

pub fn build_wreath_group_with_cap(
    a: &AbelianGroup,
    n: usize,
    cap: u64,
) -> Result<ExplicitWreath, CountError> {
    let order = BigUint::from(a.order()).pow(n as u32) * crate::counting::factorial(n);
    if order > BigUint::from(cap) || n > MAX_DEGREE || a.order() > u16::MAX as usize {
        return Err(CountError::WreathCapExceeded {
            order: order.to_string(),
            cap,
        });
    }
    Ok(ExplicitWreath {
        a: a.clone(),
        n,
        kernel_only: false,
    })
}

impl ExplicitWreath {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &AbelianGroup {
        &self.a
    }

    pub fn order(&self) -> usize {
        self.element_list().len()
    }

    /// The subgroup of elements whose decorations sum to zero. For `A = C₂`
    /// this is the Weyl group of type `Dₙ`.
    pub fn fold_kernel(&self) -> ExplicitWreath {
        ExplicitWreath {
            kernel_only: true,
            ..self.clone()
        }
    }

    /// `π(σ; a) = σ`
    pub fn projection(&self, x: &WreathElement) -> Vec<usize> {
        x.perm(self.n)
    }

    /// `Σⱼ aⱼ`
    pub fn fold(&self, x: &WreathElement) -> usize {
        self.a.sum(x.decor[..self.n].iter().map(|&v| v as usize))
    }

    pub fn inverse(&self, x: WreathElement) -> WreathElement {
        let mut out = x;
        for j in 0..self.n {
            let s = x.perm[j] as usize;
            out.perm[s] = j as u8;
            out.decor[s] = self.a.neg(x.decor[j] as usize) as u16;
        }
        out
    }
}

impl GroupLike for ExplicitWreath {
    type Elem = WreathElement;

    fn identity(&self) -> WreathElement {
        let mut x = WreathElement {
            perm: [0; MAX_DEGREE],
            decor: [0; MAX_DEGREE],
        };
        for (j, p) in x.perm.iter_mut().enumerate() {
            *p = j as u8;
        }
        x
    }

    #[inline]
    fn op(&self, x: WreathElement, y: WreathElement) -> WreathElement {
        let mut out = self.identity();
        for j in 0..self.n {
            let tj = y.perm[j] as usize;
            out.perm[j] = x.perm[tj];
            out.decor[j] = self.a.add(y.decor[j] as usize, x.decor[tj] as usize) as u16;
        }
        out
    }

    fn element_list(&self) -> Vec<WreathElement> {
        let n = self.n;
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let mut digits = vec![0usize; n];
            'decor: loop {
                let x = WreathElement::from_parts(&perm, &digits);
                if !self.kernel_only || self.fold(&x) == 0 {
                    out.push(x);
                }
                for slot in digits.iter_mut().rev() {
                    *slot += 1;
                    if *slot < self.a.order() {
                        continue 'decor;
                    }
                    *slot = 0;
                }
                break;
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        out
    }
}

/// Advances `perm` to the next permutation in lexicographic order.
pub fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = (1..perm.len()).rev().find(|&i| perm[i - 1] < perm[i]) else {
        return false;
    };
    let j = (i..perm.len()).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Every homomorphism `G → T`, as the full list of images indexed by the
/// elements of `G`, with the default search cap.
pub fn enumerate_homs<T: GroupLike>(group: &FiniteGroup, target: &T) -> Result<Vec<Vec<T::Elem>>, CountError> {
    enumerate_homs_with_cap(group, target, SEARCH_CAP)
}

/// Depth-first search over generator images. Candidate images of a generator
/// are restricted to elements whose order divides the generator's order; a
/// complete tuple is accepted iff the map it induces along the stored words is
/// consistent on every edge of the Cayley graph, which is equivalent to it
/// being a homomorphism.
pub fn enumerate_homs_with_cap<T: GroupLike>(
    group: &FiniteGroup,
    target: &T,
    cap: u64,
) -> Result<Vec<Vec<T::Elem>>, CountError> {
    let gens = group.generators();
    let elements = target.element_list();
    let id = target.identity();
    let candidates: Vec<Vec<T::Elem>> = gens
        .iter()
        .map(|&s| {
            let e = group.element_order(s);
            elements
                .iter()
                .copied()
                .filter(|&x| target.power(x, e) == id)
                .collect()
        })
        .collect();
    let tuples = candidates
        .iter()
        .fold(BigUint::from(1u32), |acc, c| acc * BigUint::from(c.len()));
    if tuples > BigUint::from(cap) {
        return Err(CountError::SearchCapExceeded {
            candidates: tuples.to_string(),
            cap,
        });
    }

    // Elements in order of word length, each built from its parent by one generator.
    let mut by_length: Vec<usize> = group.elements().collect();
    by_length.sort_by_key(|&g| group.word(g).len());
    let steps: Vec<(usize, usize, usize)> = by_length[1..]
        .iter()
        .map(|&g| {
            let (&last, prefix) = group.word(g).split_last().expect("non-identity");
            let parent = prefix.iter().fold(0, |acc, &s| group.mul(acc, gens[s]));
            (g, parent, last)
        })
        .collect();

    let mut found = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    let mut values = vec![id; group.order()];
    'outer: loop {
        let images: Vec<T::Elem> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        for &(g, parent, last) in &steps {
            values[g] = target.op(values[parent], images[last]);
        }
        let consistent = group.elements().all(|g| {
            gens.iter()
                .zip(&images)
                .all(|(&gen, &img)| values[group.mul(g, gen)] == target.op(values[g], img))
        });
        if consistent {
            found.push(values.clone());
        }
        // odometer over the candidate lists
        for (slot, c) in choice.iter_mut().zip(&candidates).rev() {
            *slot += 1;
            if *slot < c.len() {
                continue 'outer;
            }
            *slot = 0;
        }
        break;
    }
    Ok(found)
}

fn fold_map(group: &FiniteGroup, wreath: &ExplicitWreath, hom: &[WreathElement]) -> HomToA {
    HomToA::new(group.elements().map(|g| wreath.fold(&hom[g])).collect())
}

/// The exact fold distribution by enumerating `Hom(G, A≀Sₙ)`.
pub fn oracle_delta(
    group: &FiniteGroup,
    homs: &HomGroup,
    n: usize,
) -> Result<DistributionTable, CountError> {
    let wreath = build_wreath_group(homs.target(), n)?;
    let mut fibers = vec![0u64; homs.len()];
    for hom in enumerate_homs(group, &wreath)? {
        let idx = homs
            .index_of(&fold_map(group, &wreath, &hom))
            .expect("the fold of a homomorphism is a homomorphism");
        fibers[idx] += 1;
    }
    Ok(DistributionTable::from_fibers(
        n,
        fibers.into_iter().map(BigUint::from).collect(),
    ))
}

/// Homomorphisms sharing one permutation image `π∘φ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    /// `π∘φ` at each generator of `G`.
    pub generator_perms: Vec<Vec<usize>>,
    pub has_fixed_point: bool,
    pub fibers: Vec<u64>,
}

/// Groups the enumerated homomorphisms by their permutation image and tallies
/// the fold within each group.
pub fn stratify(group: &FiniteGroup, homs: &HomGroup, n: usize) -> Result<Vec<Stratum>, CountError> {
    let wreath = build_wreath_group(homs.target(), n)?;
    let mut strata: BTreeMap<Vec<Vec<usize>>, Vec<u64>> = BTreeMap::new();
    for hom in enumerate_homs(group, &wreath)? {
        let key: Vec<Vec<usize>> = group
            .generators()
            .iter()
            .map(|&s| wreath.projection(&hom[s]))
            .collect();
        let idx = homs
            .index_of(&fold_map(group, &wreath, &hom))
            .expect("fold is a homomorphism");
        strata.entry(key).or_insert_with(|| vec![0; homs.len()])[idx] += 1;
    }
    Ok(strata
        .into_iter()
        .map(|(perms, fibers)| Stratum {
            has_fixed_point: (0..n).any(|p| perms.iter().all(|perm| perm[p] == p)),
            generator_perms: perms,
            fibers,
        })
        .collect())
}

/// Order of the centralizer of the action's image in the full symmetric group
/// of its degree, by testing every permutation.
pub fn centralizer_order(action: &PermutationAction) -> Result<usize, CountError> {
    let k = action.degree();
    if k > CENTRALIZER_DEGREE_CAP {
        return Err(CountError::DegreeCapExceeded {
            degree: k,
            cap: CENTRALIZER_DEGREE_CAP,
        });
    }
    let mut images: Vec<Vec<usize>> = action.images().to_vec();
    images.sort();
    images.dedup();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut count = 0;
    loop {
        if images
            .iter()
            .all(|s| (0..k).all(|x| perm[s[x]] == s[perm[x]]))
        {
            count += 1;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(count)
}
