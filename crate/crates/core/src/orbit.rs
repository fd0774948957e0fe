//! Per-orbit data: how many decorations extend one transitive constituent
//! `G/U`, and how those extensions distribute over the fold `φ̄ ∈ Hom(G, A)`.
//!
//! Over an orbit isomorphic to `G/U`, with transversal `t₀ = e, …, t_{k−1}`,
//! every extension is uniquely of the form
//!
//! ```text
//! a_j(g) = x_{g·j} + u(t_{g·j}⁻¹ g t_j) − x_j,   x₀ = 0, xⱼ ∈ A, u ∈ Hom(U, A)
//! ```
//!
//! so there are `|A|^{k−1}·|Hom(U, A)|` of them, and the fold contributed by
//! the orbit is `u ∘ Ver`, where `Ver : G → U^ab` is the transfer.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::abelian::{hom_group, AbelianGroup, HomGroup, HomToA};
use crate::group::FiniteGroup;
use crate::serial;
use crate::subgroup::{
    abelianization, coset_action, subgroup_classes, Abelianization, PermutationAction,
    SubgroupClass,
};

/// The transfer `G → U^ab`, one abelianization index per element of `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferMap {
    values: Vec<usize>,
}

impl TransferMap {
    #[inline]
    pub fn at(&self, g: usize) -> usize {
        self.values[g]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

/// `Ver(g) = Σⱼ [t_{g·j}⁻¹ g tⱼ]`, summed in `U^ab`, using the action's transversal.
pub fn transfer_map(
    group: &FiniteGroup,
    action: &PermutationAction,
    ab: &Abelianization,
) -> TransferMap {
    let t = action.transversal();
    let values = group
        .elements()
        .map(|g| {
            ab.group().sum((0..action.degree()).map(|j| {
                let gj = action.act(g, j);
                ab.project(group.mul(group.mul(group.inv(t[gj]), g), t[j]))
            }))
        })
        .collect();
    TransferMap { values }
}

/// Exact orbit data for one subgroup class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OrbitTypeData {
    pub class_id: usize,
    /// Orbit size `(G : U)`.
    pub k: usize,
    /// Centralizer order of the coset action.
    pub c: usize,
    /// `|A|^{k−1}·|Hom(U, A)|`
    #[serde(serialize_with = "serial::biguint_str", deserialize_with = "serial::biguint_from_str")]
    pub w: BigUint,
    /// `fibers[ψ]`: extensions over one orbit whose fold equals `ψ`.
    #[serde(
        rename = "N",
        serialize_with = "serial::biguint_vec_str",
        deserialize_with = "serial::biguint_vec_from_str"
    )]
    pub fibers: Vec<BigUint>,
}

/// Enumerates `u ∈ Hom(U, A)`, composes with the transfer and tallies each
/// resulting fold, weighted by the `|A|^{k−1}` free decorations.
pub fn orbit_type_data(
    group: &FiniteGroup,
    a: &AbelianGroup,
    class_id: usize,
    class: &SubgroupClass,
    ab: &Abelianization,
    transfer: &TransferMap,
    homs: &HomGroup,
) -> OrbitTypeData {
    let k = class.index;
    let free = BigUint::from(a.order()).pow(k as u32 - 1);
    let mut counts = vec![0u64; homs.len()];
    let u_homs = ab.group().homs_into(a);
    for u in &u_homs {
        let fold = HomToA::new(
            group
                .elements()
                .map(|g| ab.group().apply_hom(a, u, transfer.at(g)))
                .collect(),
        );
        let idx = homs
            .index_of(&fold)
            .expect("u ∘ Ver is a homomorphism G → A");
        counts[idx] += 1;
    }
    OrbitTypeData {
        class_id,
        k,
        c: class.centralizer_order,
        w: &free * BigUint::from(u_homs.len()),
        fibers: counts.into_iter().map(|n| &free * BigUint::from(n)).collect(),
    }
}

/// Everything known about one orbit type.
#[derive(Debug, Clone)]
pub struct OrbitType {
    pub class: SubgroupClass,
    pub action: PermutationAction,
    pub abelianization: Abelianization,
    pub transfer: TransferMap,
    /// `Hom(U, A)` as images of the unit vectors of `U^ab`.
    pub u_homs: Vec<Vec<usize>>,
    pub data: OrbitTypeData,
}

impl OrbitType {
    /// `u(x)` for `x ∈ U`, with `u` given by its index in [`Self::u_homs`].
    pub fn eval_u(&self, a: &AbelianGroup, u: usize, x: usize) -> usize {
        self.abelianization
            .group()
            .apply_hom(a, &self.u_homs[u], self.abelianization.project(x))
    }
}

/// Precomputed structure for a pair `(G, A)`; the input to every count.
#[derive(Debug, Clone)]
pub struct WreathModel {
    group: FiniteGroup,
    a: AbelianGroup,
    homs: HomGroup,
    orbit_types: Vec<OrbitType>,
}

impl WreathModel {
    pub fn new(group: &FiniteGroup, a: &AbelianGroup) -> Self {
        let homs = hom_group(group, a);
        let orbit_types = subgroup_classes(group)
            .into_iter()
            .enumerate()
            .map(|(id, class)| {
                let action = coset_action(group, class.elements());
                let ab = abelianization(group, class.elements());
                let transfer = transfer_map(group, &action, &ab);
                let data = orbit_type_data(group, a, id, &class, &ab, &transfer, &homs);
                OrbitType {
                    u_homs: ab.group().homs_into(a),
                    class,
                    action,
                    abelianization: ab,
                    transfer,
                    data,
                }
            })
            .collect();
        WreathModel {
            group: group.clone(),
            a: a.clone(),
            homs,
            orbit_types,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn target(&self) -> &AbelianGroup {
        &self.a
    }

    pub fn homs(&self) -> &HomGroup {
        &self.homs
    }

    pub fn orbit_types(&self) -> &[OrbitType] {
        &self.orbit_types
    }

    /// Index of the class `U = G`, always the last one.
    pub fn full_class(&self) -> usize {
        self.orbit_types.len() - 1
    }

    pub fn is_uniform_fiber(&self, class_id: usize) -> bool {
        let fibers = &self.orbit_types[class_id].data.fibers;
        fibers.iter().all(|f| f == &fibers[0]) && !fibers[0].is_zero()
    }

    /// Number of index-2 subgroups, summed over the classes.
    pub fn index_two_subgroups(&self) -> usize {
        self.orbit_types
            .iter()
            .filter(|o| o.class.index == 2)
            .map(|o| o.class.class_size)
            .sum()
    }
}
