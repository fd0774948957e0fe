//! Exact counting, distribution and uniform sampling of homomorphisms from a
//! finite group `G` into wreath products `A ≀ Sₙ` with `A` finite abelian.
//!
//! The entry point is [`WreathModel`], which gathers the subgroup classes of
//! `G` with their coset actions, transfers and per-orbit fiber counts. The
//! counting engine, the sampler and the oracle all work from it.
//!
//! ```
//! use wreathhom::{build_group, AbelianGroup, GroupSpec, WreathModel};
//!
//! let c2 = build_group(&GroupSpec::cyclic(2)).unwrap();
//! let model = WreathModel::new(&c2, &AbelianGroup::cyclic(2).unwrap());
//! assert_eq!(model.hom_count_wreath(3).unwrap(), 20u32.into());
//! ```

pub mod abelian;
pub mod counting;
pub mod error;
pub mod group;
pub mod oracle;
pub mod orbit;
pub mod sampler;
pub mod serial;
pub mod subgroup;

pub use abelian::{hom_count_abelian, hom_group, AbelianGroup, HomGroup, HomToA};
pub use counting::{
    decay_constant, delta_distribution, fixed_point_free_probability, hom_count_direct,
    hom_count_wreath, weyl_hom_count, CountTable, DecayConstant, DistributionTable,
};
pub use error::{CountError, GroupError};
pub use group::{build_group, build_group_with_cap, FiniteGroup, GroupSpec};
pub use oracle::{build_wreath_group, centralizer_order, enumerate_homs, oracle_delta, ExplicitWreath};
pub use orbit::{orbit_type_data, transfer_map, OrbitType, OrbitTypeData, TransferMap, WreathModel};
pub use sampler::{Sampler, WreathHom};
pub use subgroup::{
    abelianization, coset_action, subgroup_classes, Abelianization, PermutationAction,
    SubgroupClass,
};
