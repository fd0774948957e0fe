//! Exact evaluation of the stratified count
//!
//! ```text
//! |Hom(G, A≀Sₙ)| = n! · Σ_{Σ mᵢkᵢ = n} ∏ᵢ wᵢ^{mᵢ} / (mᵢ! cᵢ^{mᵢ})
//! ```
//!
//! Either by enumerating the strata `(m₁, …, m_ℓ)` directly, or through the
//! coefficients `hₙ = tₙ/n!` of `exp(Σ aᵢ x^{kᵢ})`, `aᵢ = wᵢ/cᵢ`, which obey
//! `n·hₙ = Σ kᵢ aᵢ h_{n−kᵢ}`. The recurrence is run on `tₙ` directly, cleared
//! of the denominator `L = lcm(cᵢ)`, and every division is checked to be exact.
//! The same recurrence over the group algebra of Hom(G, A), with `aᵢ`
//! replaced by `Nᵢ/cᵢ`, gives the exact distribution of the fold.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::abelian::AbelianGroup;
use crate::error::CountError;
use crate::group::FiniteGroup;
use crate::orbit::WreathModel;
use crate::serial;

/// Largest `n` accepted by [`WreathModel::hom_count_direct`].
pub const DIRECT_CAP: usize = 60;
/// Default largest `n` accepted by the recurrences.
pub const RECURRENCE_CAP: usize = 100_000;

/// `t[n] = |Hom(G, A≀Sₙ)|` for `n = 0..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CountTable {
    pub n_max: usize,
    #[serde(serialize_with = "serial::biguint_vec_str", deserialize_with = "serial::biguint_vec_from_str")]
    pub counts: Vec<BigUint>,
    /// `aᵢ = wᵢ/cᵢ` per subgroup class.
    #[serde(serialize_with = "serial::rational_vec", deserialize_with = "serial::rational_vec_from")]
    pub weights: Vec<BigRational>,
}

impl CountTable {
    pub fn count(&self, n: usize) -> &BigUint {
        &self.counts[n]
    }

    /// `hₙ = tₙ/n!`
    pub fn egf_coefficient(&self, n: usize) -> BigRational {
        BigRational::new(to_int(&self.counts[n]), to_int(&factorial(n)))
    }
}

/// The distribution of the fold `φ ↦ φ̄` for uniform `φ ∈ Hom(G, A≀Sₙ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DistributionTable {
    pub n: usize,
    /// Indexed like [`crate::HomGroup`].
    #[serde(serialize_with = "serial::rational_vec", deserialize_with = "serial::rational_vec_from")]
    pub probs: Vec<BigRational>,
    #[serde(serialize_with = "serial::biguint_vec_str", deserialize_with = "serial::biguint_vec_from_str")]
    pub fiber_counts: Vec<BigUint>,
}

impl DistributionTable {
    pub fn from_fibers(n: usize, fiber_counts: Vec<BigUint>) -> Self {
        let total = to_int(&fiber_counts.iter().sum::<BigUint>());
        let probs = fiber_counts
            .iter()
            .map(|f| BigRational::new(to_int(f), total.clone()))
            .collect();
        DistributionTable {
            n,
            probs,
            fiber_counts,
        }
    }

    pub fn total(&self) -> BigUint {
        self.fiber_counts.iter().sum()
    }

    /// `‖δ − u‖∞` against the uniform distribution on the same support.
    pub fn sup_distance_from_uniform(&self) -> BigRational {
        let uniform = BigRational::new(BigInt::one(), BigInt::from(self.probs.len()));
        self.probs
            .iter()
            .map(|p| (p - &uniform).abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

/// Decay constant of the fixed-point-free bound, `c⁻¹ = e·d·ℓ·|A|·max |Hom(Uᵢ, A)|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DecayConstant {
    /// The real-valued constant, with Euler's number.
    pub value: f64,
    /// `1/(3·d·ℓ·|A|·max |Hom(Uᵢ, A)|)`, strictly below `value`.
    #[serde(serialize_with = "serial::rational")]
    pub conservative: BigRational,
    pub group_order: usize,
    pub class_count: usize,
    pub target_order: usize,
    pub max_subgroup_homs: u128,
}

pub(crate) fn to_int(x: &BigUint) -> BigInt {
    BigInt::from(x.clone())
}

pub(crate) fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// `(n−1)(n−2)⋯(n−k+1)`
fn falling(n: usize, k: usize) -> BigUint {
    (n - k + 1..n).fold(BigUint::one(), |acc, i| acc * i as u64)
}

/// One summand of the recurrence: `t_n += coeff · (n−1)_{k−1} · t_{n−k}` before
/// dividing by the common denominator.
struct Step {
    class_id: usize,
    k: usize,
    coeff: BigUint,
}

impl WreathModel {
    fn lcm_c(&self) -> BigUint {
        self.orbit_types()
            .iter()
            .fold(BigUint::one(), |acc, o| acc.lcm(&BigUint::from(o.data.c)))
    }

    /// `kᵢ·(L/cᵢ)` per class; multiply by `wᵢ` or `Nᵢ` as needed.
    fn steps(&self, lcm: &BigUint, include: impl Fn(usize) -> bool) -> Vec<Step> {
        self.orbit_types()
            .iter()
            .enumerate()
            .filter(|(i, _)| include(*i))
            .map(|(i, o)| Step {
                class_id: i,
                k: o.data.k,
                coeff: BigUint::from(o.data.k) * (lcm / BigUint::from(o.data.c)),
            })
            .collect()
    }

    fn check_cap(n: usize, cap: usize) -> Result<(), CountError> {
        if n > cap {
            Err(CountError::RecurrenceCapExceeded { n, cap })
        } else {
            Ok(())
        }
    }

    fn scalar_recurrence(
        &self,
        n_max: usize,
        include: impl Fn(usize) -> bool,
    ) -> Result<Vec<BigUint>, CountError> {
        let lcm = self.lcm_c();
        let steps = self.steps(&lcm, include);
        let mut t = vec![BigUint::one()];
        for n in 1..=n_max {
            let mut acc = BigUint::zero();
            for s in steps.iter().filter(|s| s.k <= n) {
                let w = &self.orbit_types()[s.class_id].data.w;
                acc += &s.coeff * w * falling(n, s.k) * &t[n - s.k];
            }
            let (q, r) = acc.div_rem(&lcm);
            if !r.is_zero() {
                return Err(CountError::NonIntegral { n });
            }
            t.push(q);
        }
        Ok(t)
    }

    /// `|Hom(G, A≀Sₙ)|` for every `n ≤ n_max`.
    pub fn count_table(&self, n_max: usize) -> Result<CountTable, CountError> {
        self.count_table_with_cap(n_max, RECURRENCE_CAP)
    }

    pub fn count_table_with_cap(&self, n_max: usize, cap: usize) -> Result<CountTable, CountError> {
        Self::check_cap(n_max, cap)?;
        let counts = self.scalar_recurrence(n_max, |_| true)?;
        let weights = self
            .orbit_types()
            .iter()
            .map(|o| BigRational::new(to_int(&o.data.w), BigInt::from(o.data.c)))
            .collect();
        Ok(CountTable {
            n_max,
            counts,
            weights,
        })
    }

    pub fn hom_count_wreath(&self, n: usize) -> Result<BigUint, CountError> {
        Ok(self.count_table(n)?.counts.swap_remove(n))
    }

    /// Homomorphisms whose permutation image has no fixed point, for `n ≤ n_max`.
    pub fn fixed_point_free_counts(&self, n_max: usize) -> Result<Vec<BigUint>, CountError> {
        self.fixed_point_free_counts_with_cap(n_max, RECURRENCE_CAP)
    }

    pub fn fixed_point_free_counts_with_cap(
        &self,
        n_max: usize,
        cap: usize,
    ) -> Result<Vec<BigUint>, CountError> {
        Self::check_cap(n_max, cap)?;
        let full = self.full_class();
        self.scalar_recurrence(n_max, |i| i != full)
    }

    /// `pₙ` for every `n ≤ n_max`.
    pub fn fixed_point_free_table(&self, n_max: usize) -> Result<Vec<BigRational>, CountError> {
        self.fixed_point_free_table_with_cap(n_max, RECURRENCE_CAP)
    }

    pub fn fixed_point_free_table_with_cap(
        &self,
        n_max: usize,
        cap: usize,
    ) -> Result<Vec<BigRational>, CountError> {
        let total = self.count_table_with_cap(n_max, cap)?;
        let free = self.fixed_point_free_counts_with_cap(n_max, cap)?;
        Ok(free
            .iter()
            .zip(&total.counts)
            .map(|(f, t)| BigRational::new(to_int(f), to_int(t)))
            .collect())
    }

    pub fn fixed_point_free_probability(&self, n: usize) -> Result<BigRational, CountError> {
        Ok(self.fixed_point_free_table(n)?.swap_remove(n))
    }

    /// The strata with their exact sizes, by direct enumeration of all
    /// `(m₁, …, m_ℓ)` with `Σ mᵢkᵢ = n`.
    pub fn strata(&self, n: usize) -> Result<Vec<(Vec<usize>, BigUint)>, CountError> {
        if n > DIRECT_CAP {
            return Err(CountError::DirectCapExceeded { n, cap: DIRECT_CAP });
        }
        let types = self.orbit_types();
        let n_fact = to_int(&factorial(n));
        let mut out = Vec::new();
        let mut m = vec![0; types.len()];
        fn walk(
            model: &WreathModel,
            i: usize,
            remaining: usize,
            m: &mut Vec<usize>,
            n_fact: &BigInt,
            out: &mut Vec<(Vec<usize>, BigUint)>,
        ) {
            let types = model.orbit_types();
            if i == types.len() {
                if remaining == 0 {
                    let mut term = BigRational::from_integer(n_fact.clone());
                    for (o, &mi) in types.iter().zip(m.iter()) {
                        let w = to_int(&o.data.w).pow(mi as u32);
                        let den = to_int(&factorial(mi)) * BigInt::from(o.data.c).pow(mi as u32);
                        term *= BigRational::new(w, den);
                    }
                    assert!(term.is_integer(), "stratum size is an integer");
                    let size = term.to_integer().to_biguint().expect("non-negative");
                    out.push((m.clone(), size));
                }
                return;
            }
            let k = types[i].data.k;
            for mi in 0..=remaining / k {
                m[i] = mi;
                walk(model, i + 1, remaining - mi * k, m, n_fact, out);
            }
            m[i] = 0;
        }
        walk(self, 0, n, &mut m, &n_fact, &mut out);
        Ok(out)
    }

    /// The stratified sum evaluated term by term.
    pub fn hom_count_direct(&self, n: usize) -> Result<BigUint, CountError> {
        Ok(self.strata(n)?.into_iter().map(|(_, size)| size).sum())
    }

    /// Fold fiber counts for every `n ≤ n_max`, by the group-algebra recurrence.
    pub fn fiber_table(&self, n_max: usize) -> Result<Vec<Vec<BigUint>>, CountError> {
        self.fiber_table_with_cap(n_max, RECURRENCE_CAP)
    }

    pub fn fiber_table_with_cap(&self, n_max: usize, cap: usize) -> Result<Vec<Vec<BigUint>>, CountError> {
        Self::check_cap(n_max, cap)?;
        let homs = self.homs();
        let h = homs.len();
        let lcm = self.lcm_c();
        let steps = self.steps(&lcm, |_| true);
        let mut unit = vec![BigUint::zero(); h];
        unit[0] = BigUint::one();
        let mut table = vec![unit];
        for n in 1..=n_max {
            let mut acc = vec![BigUint::zero(); h];
            for s in steps.iter().filter(|s| s.k <= n) {
                let fibers = &self.orbit_types()[s.class_id].data.fibers;
                let scale = &s.coeff * falling(n, s.k);
                let prev = &table[n - s.k];
                for (alpha, na) in fibers.iter().enumerate().filter(|(_, f)| !f.is_zero()) {
                    let weighted = &scale * na;
                    for (beta, fb) in prev.iter().enumerate().filter(|(_, f)| !f.is_zero()) {
                        acc[homs.add(alpha, beta)] += &weighted * fb;
                    }
                }
            }
            let mut row = Vec::with_capacity(h);
            for v in acc {
                let (q, r) = v.div_rem(&lcm);
                if !r.is_zero() {
                    return Err(CountError::NonIntegral { n });
                }
                row.push(q);
            }
            table.push(row);
        }
        Ok(table)
    }

    pub fn delta_distribution(&self, n: usize) -> Result<DistributionTable, CountError> {
        let fibers = self.fiber_table(n)?.swap_remove(n);
        Ok(DistributionTable::from_fibers(n, fibers))
    }

    /// The decay constant read off the subgroup classes.
    pub fn decay_constant(&self) -> DecayConstant {
        let d = self.group().order();
        let l = self.orbit_types().len();
        let a = self.target().order();
        let max_homs = self
            .orbit_types()
            .iter()
            .map(|o| o.u_homs.len() as u128)
            .max()
            .unwrap_or(1);
        let base = d as f64 * l as f64 * a as f64 * max_homs as f64;
        DecayConstant {
            value: 1.0 / (std::f64::consts::E * base),
            conservative: BigRational::new(
                BigInt::one(),
                BigInt::from(3u32) * BigInt::from(d) * BigInt::from(l) * BigInt::from(a) * BigInt::from(max_homs),
            ),
            group_order: d,
            class_count: l,
            target_order: a,
            max_subgroup_homs: max_homs,
        }
    }
}

/// `|Hom(G, A≀Sₙ)|` by direct enumeration of strata (`n ≤ 60`).
pub fn hom_count_direct(group: &FiniteGroup, a: &AbelianGroup, n: usize) -> Result<BigUint, CountError> {
    if n > DIRECT_CAP {
        return Err(CountError::DirectCapExceeded { n, cap: DIRECT_CAP });
    }
    WreathModel::new(group, a).hom_count_direct(n)
}

/// `|Hom(G, A≀Sₙ)|` by the exponential-generating-function recurrence.
pub fn hom_count_wreath(group: &FiniteGroup, a: &AbelianGroup, n: usize) -> Result<BigUint, CountError> {
    WreathModel::new(group, a).hom_count_wreath(n)
}

pub fn fixed_point_free_probability(
    group: &FiniteGroup,
    a: &AbelianGroup,
    n: usize,
) -> Result<BigRational, CountError> {
    WreathModel::new(group, a).fixed_point_free_probability(n)
}

pub fn delta_distribution(
    group: &FiniteGroup,
    a: &AbelianGroup,
    n: usize,
) -> Result<DistributionTable, CountError> {
    WreathModel::new(group, a).delta_distribution(n)
}

/// `|Hom(G, Wₙ)|` for the Weyl group `Wₙ` of type `Dₙ`: the homomorphisms into
/// `C₂≀Sₙ` whose fold is trivial.
pub fn weyl_hom_count(group: &FiniteGroup, n: usize) -> Result<BigUint, CountError> {
    let c2 = AbelianGroup::cyclic(2)?;
    Ok(WreathModel::new(group, &c2).fiber_table(n)?.swap_remove(n).swap_remove(0))
}

/// Weyl counts for every `n ≤ n_max`, sharing one recurrence.
pub fn weyl_hom_table(group: &FiniteGroup, n_max: usize) -> Result<Vec<BigUint>, CountError> {
    let c2 = AbelianGroup::cyclic(2)?;
    Ok(WreathModel::new(group, &c2)
        .fiber_table(n_max)?
        .into_iter()
        .map(|mut row| row.swap_remove(0))
        .collect())
}

pub fn decay_constant(group: &FiniteGroup, a: &AbelianGroup) -> DecayConstant {
    WreathModel::new(group, a).decay_constant()
}

/// Least-squares fit of `ln pₙ ≈ ln C − c·n^{1/d}` over the points with `pₙ > 0`.
/// Returns `(slope, intercept, points used)`; the slope estimates `−c`.
pub fn fit_decay(p: &[(usize, BigRational)], d: usize) -> Option<(f64, f64, usize)> {
    let points: Vec<(f64, f64)> = p
        .iter()
        .filter(|(_, pn)| pn.is_positive())
        .map(|(n, pn)| ((*n as f64).powf(1.0 / d as f64), serial::ln_rational(pn)))
        .collect();
    if points.len() < 2 {
        return None;
    }
    let len = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / len;
    let my = points.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some((slope, my - slope * mx, points.len()))
}

/// A floating-point view of an exact probability, for reports only.
pub fn approx(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let magnitude = serial::ln_rational(&r.abs()).exp();
    if r.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};

    fn model(spec: GroupSpec, factors: &[usize]) -> WreathModel {
        let g = build_group(&spec).unwrap();
        WreathModel::new(&g, &AbelianGroup::new(factors.to_vec()).unwrap())
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn count_examples() {
        let trivial = model(GroupSpec::cyclic(1), &[3]);
        assert_eq!(trivial.hom_count_direct(5).unwrap(), BigUint::one());
        assert_eq!(trivial.hom_count_wreath(5).unwrap(), BigUint::one());
        let c2 = model(GroupSpec::cyclic(2), &[2]);
        assert_eq!(c2.hom_count_direct(2).unwrap(), BigUint::from(6u32));
        assert_eq!(c2.hom_count_direct(3).unwrap(), BigUint::from(20u32));
        assert_eq!(c2.hom_count_wreath(3).unwrap(), BigUint::from(20u32));
        assert_eq!(c2.hom_count_wreath(1).unwrap(), BigUint::from(2u32));
        assert_eq!(c2.count_table(0).unwrap().counts, ints(&[1]));
    }

    #[test]
    fn involutions_in_hyperoctahedral_groups() {
        // a(n) = 2a(n−1) + 2(n−1)a(n−2), the involution count of the signed
        // permutations, evaluated by hand.
        let expected = [1u64, 2, 6, 20, 76, 312, 1384, 6512, 32400, 168992, 921184];
        let c2 = model(GroupSpec::cyclic(2), &[2]);
        assert_eq!(c2.count_table(10).unwrap().counts, ints(&expected));
    }

    #[test]
    fn direct_cap() {
        let c2 = model(GroupSpec::cyclic(2), &[2]);
        assert!(matches!(
            c2.hom_count_direct(61),
            Err(CountError::DirectCapExceeded { n: 61, .. })
        ));
        assert!(c2.count_table_with_cap(11, 10).is_err());
    }

    #[test]
    fn direct_and_recurrence_agree() {
        for (spec, a) in [
            (GroupSpec::symmetric(3), vec![2]),
            (GroupSpec::klein_four(), vec![2, 2]),
            (GroupSpec::cyclic(4), vec![3]),
            (GroupSpec::quaternion(), vec![2]),
            (GroupSpec::dihedral(4), vec![4]),
        ] {
            let m = model(spec, &a);
            let table = m.count_table(12).unwrap();
            for n in 0..=12 {
                assert_eq!(table.counts[n], m.hom_count_direct(n).unwrap());
            }
        }
    }

    #[test]
    fn pfree_examples() {
        let c2 = model(GroupSpec::cyclic(2), &[2]);
        assert_eq!(c2.fixed_point_free_probability(1).unwrap(), q(0, 1));
        assert_eq!(c2.fixed_point_free_probability(2).unwrap(), q(1, 3));
        assert_eq!(c2.fixed_point_free_probability(3).unwrap(), q(0, 1));
    }

    #[test]
    fn pfree_equals_stratum_mass_without_fixed_points() {
        let m = model(GroupSpec::symmetric(3), &[2]);
        let full = m.full_class();
        for n in 0..=8 {
            let strata = m.strata(n).unwrap();
            let free: BigUint = strata.iter().filter(|(s, _)| s[full] == 0).map(|(_, t)| t).sum();
            assert_eq!(m.fixed_point_free_counts(n).unwrap()[n], free);
        }
    }

    #[test]
    fn delta_examples() {
        let c2 = model(GroupSpec::cyclic(2), &[2]);
        let d2 = c2.delta_distribution(2).unwrap();
        assert_eq!(d2.fiber_counts, ints(&[4, 2]));
        assert_eq!(d2.probs, vec![q(2, 3), q(1, 3)]);
        let d3 = c2.delta_distribution(3).unwrap();
        assert_eq!(d3.probs, vec![q(1, 2), q(1, 2)]);
        assert_eq!(d3.fiber_counts, ints(&[10, 10]));
        let c3 = model(GroupSpec::cyclic(3), &[2]);
        for n in 0..6 {
            assert_eq!(c3.delta_distribution(n).unwrap().probs, vec![q(1, 1)]);
        }
    }

    #[test]
    fn fibers_sum_to_counts_and_respect_the_bound() {
        for (spec, a) in [
            (GroupSpec::klein_four(), vec![2]),
            (GroupSpec::symmetric(3), vec![2]),
            (GroupSpec::cyclic(4), vec![4]),
            (GroupSpec::dihedral(4), vec![2, 2]),
        ] {
            let m = model(spec, &a);
            let fibers = m.fiber_table(40).unwrap();
            let totals = m.count_table(40).unwrap();
            let p = m.fixed_point_free_table(40).unwrap();
            for n in 0..=40 {
                let dist = DistributionTable::from_fibers(n, fibers[n].clone());
                assert_eq!(dist.total(), totals.counts[n]);
                assert_eq!(dist.probs.iter().sum::<BigRational>(), q(1, 1));
                assert!(dist.sup_distance_from_uniform() <= p[n]);
                if p[n].is_zero() {
                    assert!(dist.probs.iter().all(|x| x == &dist.probs[0]));
                }
            }
        }
    }

    #[test]
    fn weyl_examples() {
        let c1 = build_group(&GroupSpec::cyclic(1)).unwrap();
        let c2 = build_group(&GroupSpec::cyclic(2)).unwrap();
        assert_eq!(weyl_hom_count(&c1, 7).unwrap(), BigUint::one());
        assert_eq!(weyl_hom_count(&c2, 2).unwrap(), BigUint::from(4u32));
        assert_eq!(weyl_hom_count(&c2, 3).unwrap(), BigUint::from(10u32));
        let table = weyl_hom_table(&c2, 6).unwrap();
        for (n, count) in table.iter().enumerate() {
            assert_eq!(count, &weyl_hom_count(&c2, n).unwrap());
        }
    }

    #[test]
    fn decay_constant_examples() {
        let c2 = model(GroupSpec::cyclic(2), &[2]).decay_constant();
        assert_eq!(c2.conservative, q(1, 48));
        assert!((c2.value - 1.0 / (16.0 * std::f64::consts::E)).abs() < 1e-15);
        let c1 = model(GroupSpec::cyclic(1), &[2]).decay_constant();
        assert_eq!(c1.conservative, q(1, 6));
        assert!((c1.value - 1.0 / (2.0 * std::f64::consts::E)).abs() < 1e-15);
        let s3 = model(GroupSpec::symmetric(3), &[]).decay_constant();
        assert_eq!(s3.conservative, q(1, 3 * 6 * 4));
        assert!(approx(&s3.conservative) < s3.value);
    }

    #[test]
    fn strata_for_c2() {
        let c2 = model(GroupSpec::cyclic(2), &[2]);
        let strata = c2.strata(3).unwrap();
        assert_eq!(
            strata,
            vec![(vec![0, 3], BigUint::from(8u32)), (vec![1, 1], BigUint::from(12u32))]
        );
    }

    #[test]
    fn decay_fit_recovers_a_known_line() {
        // pₙ = exact rationals close to 5·e^{−0.3√n}
        let pts: Vec<(usize, BigRational)> = (1..200)
            .map(|n| {
                let v = 5.0 * (-0.3 * (n as f64).sqrt()).exp();
                (n, BigRational::from_float(v).unwrap())
            })
            .collect();
        let (slope, intercept, used) = fit_decay(&pts, 2).unwrap();
        assert_eq!(used, 199);
        assert!((slope + 0.3).abs() < 1e-9);
        assert!((intercept - 5f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn table_json() {
        let c2 = model(GroupSpec::cyclic(2), &[2]);
        let json = serde_json::to_value(c2.delta_distribution(2).unwrap()).unwrap();
        assert_eq!(json["fiberCounts"], serde_json::json!(["4", "2"]));
        assert_eq!(json["probs"][1], serde_json::json!({"num": "1", "den": "3"}));
        let back: DistributionTable = serde_json::from_value(json).unwrap();
        assert_eq!(back, c2.delta_distribution(2).unwrap());
        let counts = c2.count_table(3).unwrap();
        let text = serde_json::to_string(&counts).unwrap();
        assert_eq!(serde_json::from_str::<CountTable>(&text).unwrap(), counts);
    }
}
