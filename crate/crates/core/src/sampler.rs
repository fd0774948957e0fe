//! Exactly uniform sampling from Hom(G, A≀Sₙ).
//!
//! A stratum `(m₁, …, m_ℓ)` is drawn with probability proportional to its
//! size by walking the count recurrence backwards. Within the stratum, a
//! uniform relabelling of a fixed model action yields a uniform permutation
//! representation (every one has the same stabilizer size, the centralizer
//! order `∏ mᵢ! cᵢ^{mᵢ}`), and each orbit then gets an independent uniform
//! extension from the explicit per-orbit parametrization.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianGroup, HomToA};
use crate::error::CountError;
use crate::group::FiniteGroup;
use crate::orbit::WreathModel;

/// A homomorphism `G → A≀Sₙ`, stored as the images of the generators of `G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WreathHom {
    /// `perm[s][j]`: the image of point `j` under generator `s`.
    pub perm: Vec<Vec<usize>>,
    /// `decor[s][j]`: the decoration at point `j`, as an index into `A`.
    pub decor: Vec<Vec<usize>>,
}

type Element = (Vec<usize>, Vec<usize>);

fn compose(a: &AbelianGroup, x: &Element, y: &Element) -> Element {
    let perm = y.0.iter().map(|&t| x.0[t]).collect();
    let decor = y.1.iter().zip(&y.0).map(|(&b, &t)| a.add(b, x.1[t])).collect();
    (perm, decor)
}

impl WreathHom {
    pub fn degree(&self) -> usize {
        self.perm.first().map_or(0, Vec::len)
    }

    /// The image of every element of `G`, evaluated along the stored words.
    pub fn full_map(&self, group: &FiniteGroup, a: &AbelianGroup) -> Vec<Element> {
        let n = self.degree();
        let identity: Element = ((0..n).collect(), vec![0; n]);
        group
            .elements()
            .map(|g| {
                group.word(g).iter().fold(identity.clone(), |acc, &s| {
                    compose(a, &acc, &(self.perm[s].clone(), self.decor[s].clone()))
                })
            })
            .collect()
    }

    /// Checks that the generator images satisfy every relation of `G`.
    pub fn is_homomorphism(&self, group: &FiniteGroup, a: &AbelianGroup) -> bool {
        if self.perm.len() != group.generators().len() {
            return false;
        }
        let map = self.full_map(group, a);
        let gens_match = group
            .generators()
            .iter()
            .enumerate()
            .all(|(s, &g)| map[g].0 == self.perm[s] && map[g].1 == self.decor[s]);
        gens_match
            && group.elements().all(|g| {
                group
                    .elements()
                    .all(|h| map[group.mul(g, h)] == compose(a, &map[g], &map[h]))
            })
    }

    /// The fold `g ↦ Σⱼ aⱼ(g)`.
    pub fn fold(&self, group: &FiniteGroup, a: &AbelianGroup) -> HomToA {
        HomToA::new(
            self.full_map(group, a)
                .iter()
                .map(|(_, decor)| a.sum(decor.iter().copied()))
                .collect(),
        )
    }
}

/// Uniform integer in `0..bound`, by rejection on the bit length.
pub fn uniform_below<R: Rng + ?Sized>(rng: &mut R, bound: &BigUint) -> BigUint {
    assert!(!bound.is_zero(), "empty range");
    let bits = bound.bits();
    let words = bits.div_ceil(32) as usize;
    let top_mask = if bits.is_multiple_of(32) { u32::MAX } else { (1u32 << (bits % 32)) - 1 };
    loop {
        let mut digits: Vec<u32> = (0..words).map(|_| rng.random()).collect();
        if let Some(top) = digits.last_mut() {
            *top &= top_mask;
        }
        let candidate = BigUint::from_slice(&digits);
        if &candidate < bound {
            return candidate;
        }
    }
}

/// Precomputed tables for drawing uniform homomorphisms at a fixed `n`.
#[derive(Debug, Clone)]
pub struct Sampler<'m> {
    model: &'m WreathModel,
    n: usize,
    counts: Vec<BigUint>,
    lcm: BigUint,
    /// `kᵢ·wᵢ·(L/cᵢ)`
    coeffs: Vec<BigUint>,
}

impl<'m> Sampler<'m> {
    pub fn new(model: &'m WreathModel, n: usize) -> Result<Self, CountError> {
        let counts = model.count_table(n)?.counts;
        let lcm = model
            .orbit_types()
            .iter()
            .fold(BigUint::one(), |acc, o| acc.lcm(&BigUint::from(o.data.c)));
        let coeffs = model
            .orbit_types()
            .iter()
            .map(|o| BigUint::from(o.data.k) * &o.data.w * (&lcm / BigUint::from(o.data.c)))
            .collect();
        Ok(Sampler {
            model,
            n,
            counts,
            lcm,
            coeffs,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total(&self) -> &BigUint {
        &self.counts[self.n]
    }

    /// Orbit-type multiplicities `(m₁, …, m_ℓ)`, with probability equal to the
    /// stratum's share of all homomorphisms.
    pub fn sample_orbit_type<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<usize> {
        let types = self.model.orbit_types();
        let mut m = vec![0; types.len()];
        let mut size = self.n;
        while size > 0 {
            let total = &self.lcm * &self.counts[size];
            let mut r = uniform_below(rng, &total);
            let mut chosen = None;
            for (i, o) in types.iter().enumerate() {
                let k = o.data.k;
                if k > size {
                    continue;
                }
                let falling = (size - k + 1..size).fold(BigUint::one(), |acc, x| acc * x as u64);
                let weight = &self.coeffs[i] * falling * &self.counts[size - k];
                if r < weight {
                    chosen = Some(i);
                    break;
                }
                r -= weight;
            }
            let i = chosen.expect("weights sum to L·t_s");
            m[i] += 1;
            size -= types[i].data.k;
        }
        m
    }

    /// A uniformly random homomorphism `G → A≀Sₙ`.
    pub fn sample_hom<R: Rng + ?Sized>(&self, rng: &mut R) -> WreathHom {
        let m = self.sample_orbit_type(rng);
        self.sample_in_stratum(&m, rng)
    }

    /// A uniformly random homomorphism with the given orbit-type multiplicities.
    pub fn sample_in_stratum<R: Rng + ?Sized>(&self, m: &[usize], rng: &mut R) -> WreathHom {
        let group = self.model.group();
        let a = self.model.target();
        let n = self.n;
        let gens = group.generators();
        let mut labels: Vec<usize> = (0..n).collect();
        labels.shuffle(rng);

        let mut perm = vec![vec![0; n]; gens.len()];
        let mut decor = vec![vec![0; n]; gens.len()];
        let mut offset = 0;
        for (o, &count) in self.model.orbit_types().iter().zip(m) {
            let k = o.data.k;
            let t = o.action.transversal();
            for _ in 0..count {
                let points = &labels[offset..offset + k];
                let u = rng.random_range(0..o.u_homs.len());
                let mut x = vec![0; k];
                for xj in x.iter_mut().skip(1) {
                    *xj = rng.random_range(0..a.order());
                }
                for (s, &g) in gens.iter().enumerate() {
                    for j in 0..k {
                        let gj = o.action.act(g, j);
                        let inside = group.mul(group.mul(group.inv(t[gj]), g), t[j]);
                        let value = a.sub(a.add(x[gj], o.eval_u(a, u, inside)), x[j]);
                        perm[s][points[j]] = points[gj];
                        decor[s][points[j]] = value;
                    }
                }
                offset += k;
            }
        }
        debug_assert_eq!(offset, n);
        WreathHom { perm, decor }
    }
}
