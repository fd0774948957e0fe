//! Finite groups given by multiplication tables.
//!
//! Every group is normalized so that element `0` is the identity. Groups
//! built from permutation generators are closed breadth-first; the order in
//! which elements are discovered fixes their indices, and the path used to
//! reach each element is kept as a word in the generators.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GroupError;

/// Default bound on the number of elements produced by a closure.
pub const DEFAULT_GROUP_CAP: usize = 20_000;

/// Input description of a finite group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    /// A full Cayley table; `table[a][b]` is the index of `a·b`.
    Table { name: String, table: Vec<Vec<usize>> },
    /// Permutations on `0..m` given as image arrays. The product `g·h`
    /// applies `h` first.
    Permutations { name: String, generators: Vec<Vec<usize>> },
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct RawGroupSpec {
    #[serde(default)]
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    perm_generators: Option<Vec<Vec<usize>>>,
}

impl Serialize for GroupSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let raw = match self {
            GroupSpec::Table { name, table } => RawGroupSpec {
                name: name.clone(),
                table: Some(table.clone()),
                perm_generators: None,
            },
            GroupSpec::Permutations { name, generators } => RawGroupSpec {
                name: name.clone(),
                table: None,
                perm_generators: Some(generators.clone()),
            },
        };
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawGroupSpec::deserialize(deserializer)?;
        match (raw.table, raw.perm_generators) {
            (Some(table), None) => Ok(GroupSpec::Table { name: raw.name, table }),
            (None, Some(generators)) => Ok(GroupSpec::Permutations {
                name: raw.name,
                generators,
            }),
            _ => Err(serde::de::Error::custom(GroupError::AmbiguousSpec)),
        }
    }
}

impl GroupSpec {
    pub fn name(&self) -> &str {
        match self {
            GroupSpec::Table { name, .. } | GroupSpec::Permutations { name, .. } => name,
        }
    }

    /// Cyclic group of order `n`, acting regularly on `n` points.
    pub fn cyclic(n: usize) -> Self {
        let generators = if n <= 1 {
            Vec::new()
        } else {
            vec![(0..n).map(|i| (i + 1) % n).collect()]
        };
        GroupSpec::Permutations {
            name: format!("C{n}"),
            generators,
        }
    }

    /// Symmetric group on `n` points, generated by a transposition and an n-cycle.
    pub fn symmetric(n: usize) -> Self {
        let mut generators = Vec::new();
        if n >= 2 {
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            generators.push(swap);
        }
        if n >= 3 {
            generators.push((0..n).map(|i| (i + 1) % n).collect());
        }
        GroupSpec::Permutations {
            name: format!("S{n}"),
            generators,
        }
    }

    /// Dihedral group of order `2n` acting on the vertices of an n-gon (`n ≥ 3`).
    pub fn dihedral(n: usize) -> Self {
        let rotation = (0..n).map(|i| (i + 1) % n).collect();
        let reflection = (0..n).map(|i| (n - i) % n).collect();
        GroupSpec::Permutations {
            name: format!("D{n}"),
            generators: vec![rotation, reflection],
        }
    }

    /// Klein four-group acting regularly on 4 points.
    pub fn klein_four() -> Self {
        GroupSpec::Permutations {
            name: "V4".into(),
            generators: vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]],
        }
    }

    /// Quaternion group of order 8. Element `4s + u` is `(-1)^s·u` with
    /// `u` ranging over `1, i, j, k`.
    pub fn quaternion() -> Self {
        // unit products: (sign, unit)
        const UNITS: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let mut table = vec![vec![0; 8]; 8];
        for (a, row) in table.iter_mut().enumerate() {
            for (b, entry) in row.iter_mut().enumerate() {
                let (s, w) = UNITS[a % 4][b % 4];
                let sign = (a / 4 + b / 4 + s) % 2;
                *entry = 4 * sign + w;
            }
        }
        GroupSpec::Table {
            name: "Q8".into(),
            table,
        }
    }

    /// Looks up one of the builtin groups `C1, C2, C3, C4, V4, S3, D4, Q8`.
    pub fn builtin(name: &str) -> Option<Self> {
        let spec = match name {
            "C1" => Self::cyclic(1),
            "C2" => Self::cyclic(2),
            "C3" => Self::cyclic(3),
            "C4" => Self::cyclic(4),
            "V4" => Self::klein_four(),
            "S3" => Self::symmetric(3),
            "D4" => Self::dihedral(4),
            "Q8" => Self::quaternion(),
            _ => return None,
        };
        Some(spec)
    }

    pub const BUILTIN_NAMES: [&'static str; 8] = ["C1", "C2", "C3", "C4", "V4", "S3", "D4", "Q8"];
}

/// A finite group stored as a Cayley table over element indices `0..d`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    generators: Vec<usize>,
    /// `words[g]` lists generator positions whose ordered product is `g`.
    words: Vec<Vec<usize>>,
    element_names: Option<Vec<String>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish_non_exhaustive()
    }
}

/// Builds a group with the default size cap.
pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup, GroupError> {
    build_group_with_cap(spec, DEFAULT_GROUP_CAP)
}

pub fn build_group_with_cap(spec: &GroupSpec, cap: usize) -> Result<FiniteGroup, GroupError> {
    match spec {
        GroupSpec::Table { name, table } => from_table(name, table, cap),
        GroupSpec::Permutations { name, generators } => from_permutations(name, generators, cap),
    }
}

fn from_table(name: &str, table: &[Vec<usize>], cap: usize) -> Result<FiniteGroup, GroupError> {
    let d = table.len();
    if d == 0 {
        return Err(GroupError::EmptyTable);
    }
    if d > cap {
        return Err(GroupError::SizeCapExceeded { cap });
    }
    for (row, entries) in table.iter().enumerate() {
        if entries.len() != d {
            return Err(GroupError::NotSquare {
                row,
                len: entries.len(),
                expected: d,
            });
        }
        if let Some((b, &value)) = entries.iter().enumerate().find(|(_, &v)| v >= d) {
            return Err(GroupError::EntryOutOfRange { a: row, b, value });
        }
    }
    let identity = (0..d)
        .find(|&e| (0..d).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or(GroupError::NoIdentity)?;

    // Relabel so that the identity is element 0.
    let relabel = |x: usize| {
        if x == identity {
            0
        } else if x == 0 {
            identity
        } else {
            x
        }
    };
    let mut mul = vec![0; d * d];
    for a in 0..d {
        for b in 0..d {
            mul[relabel(a) * d + relabel(b)] = relabel(table[a][b]);
        }
    }

    let mut inv = vec![usize::MAX; d];
    for a in 0..d {
        match (0..d).find(|&b| mul[a * d + b] == 0 && mul[b * d + a] == 0) {
            Some(b) => inv[a] = b,
            None => return Err(GroupError::NoInverse(relabel(a))),
        }
    }
    for a in 0..d {
        for b in 0..d {
            let ab = mul[a * d + b];
            for c in 0..d {
                if mul[ab * d + c] != mul[a * d + mul[b * d + c]] {
                    return Err(GroupError::NotAssociative(relabel(a), relabel(b), relabel(c)));
                }
            }
        }
    }

    let mut group = FiniteGroup {
        name: name.to_string(),
        order: d,
        mul,
        inv,
        generators: Vec::new(),
        words: Vec::new(),
        element_names: None,
    };
    let mut generators = Vec::new();
    let mut span = vec![0];
    for g in 1..d {
        if span.binary_search(&g).is_err() {
            generators.push(g);
            span = group.closure(&generators);
        }
    }
    group.words = group.words_for(&generators);
    group.generators = generators;
    Ok(group)
}

fn from_permutations(
    name: &str,
    generators: &[Vec<usize>],
    cap: usize,
) -> Result<FiniteGroup, GroupError> {
    let degree = generators.first().map_or(0, Vec::len);
    for (index, perm) in generators.iter().enumerate() {
        if perm.len() != degree {
            return Err(GroupError::BadPermutation {
                index,
                reason: format!("length {} differs from degree {degree}", perm.len()),
            });
        }
        let mut seen = vec![false; degree];
        for &x in perm {
            if x >= degree || std::mem::replace(&mut seen[x], true) {
                return Err(GroupError::BadPermutation {
                    index,
                    reason: "not a bijection of 0..m".into(),
                });
            }
        }
    }

    let identity: Vec<usize> = (0..degree).collect();
    let mut elements = vec![identity.clone()];
    let mut words = vec![Vec::new()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (s, gen) in generators.iter().enumerate() {
            // (x·gen)(p) = x(gen(p))
            let y: Vec<usize> = gen.iter().map(|&p| elements[x][p]).collect();
            if !index.contains_key(&y) {
                if elements.len() == cap {
                    return Err(GroupError::SizeCapExceeded { cap });
                }
                let mut word = words[x].clone();
                word.push(s);
                index.insert(y.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(y);
                words.push(word);
            }
        }
    }

    let d = elements.len();
    let mut mul = vec![0; d * d];
    let mut inv = vec![0; d];
    let mut scratch = vec![0; degree];
    for a in 0..d {
        for b in 0..d {
            for (p, slot) in scratch.iter_mut().enumerate() {
                *slot = elements[a][elements[b][p]];
            }
            let ab = index[&scratch];
            mul[a * d + b] = ab;
            if ab == 0 {
                inv[a] = b;
            }
        }
    }
    let gen_indices = generators.iter().map(|g| index[g]).collect();
    Ok(FiniteGroup {
        name: name.to_string(),
        order: d,
        mul,
        inv,
        generators: gen_indices,
        words,
        element_names: Some(elements.iter().map(|p| cycle_notation(p)).collect()),
    })
}

/// Formats a permutation of `0..m` in cycle notation, `()` for the identity.
pub fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&x.to_string());
            first = false;
            x = perm[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

impl FiniteGroup {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub const fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Generator positions (indices into [`Self::generators`]) whose product is `g`.
    pub fn word(&self, g: usize) -> &[usize] {
        &self.words[g]
    }

    pub fn element_name(&self, g: usize) -> String {
        match &self.element_names {
            Some(names) => names[g].clone(),
            None => g.to_string(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// `g x g⁻¹`
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `a⁻¹ b⁻¹ a b`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, g: usize, mut e: u64) -> usize {
        let (mut base, mut acc) = (g, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut found = vec![0];
        let mut head = 0;
        while head < found.len() {
            let x = found[head];
            head += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if !member[y] {
                    member[y] = true;
                    found.push(y);
                }
            }
        }
        found.sort_unstable();
        found
    }

    /// Whether `set` (sorted or not) is closed under products and inverses.
    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &x in set {
            member[x] = true;
        }
        member[0]
            && set.iter().all(|&a| member[self.inv(a)])
            && set.iter().all(|&a| set.iter().all(|&b| member[self.mul(a, b)]))
    }

    /// Re-checks the group axioms and that the generators span the group.
    pub fn validate(&self) -> Result<(), GroupError> {
        let d = self.order;
        for a in 0..d {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(GroupError::NoIdentity);
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return Err(GroupError::NoInverse(a));
            }
            for b in 0..d {
                for c in 0..d {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        if self.closure(&self.generators).len() != d {
            return Err(GroupError::BadPermutation {
                index: 0,
                reason: "generators do not span the group".into(),
            });
        }
        Ok(())
    }

    fn words_for(&self, gens: &[usize]) -> Vec<Vec<usize>> {
        let mut words: Vec<Option<Vec<usize>>> = vec![None; self.order];
        words[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for (s, &gen) in gens.iter().enumerate() {
                let y = self.mul(x, gen);
                if words[y].is_none() {
                    let mut w = words[x].clone().unwrap_or_default();
                    w.push(s);
                    words[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        words.into_iter().map(Option::unwrap_or_default).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_table() {
        let table = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let g = build_group(&GroupSpec::Table {
            name: "C3".into(),
            table,
        })
        .unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.generators(), &[1]);
        assert_eq!(g.element_order(1), 3);
        g.validate().unwrap();
    }

    #[test]
    fn s3_from_permutations() {
        let g = build_group(&GroupSpec::Permutations {
            name: "S3".into(),
            generators: vec![vec![1, 0, 2], vec![1, 2, 0]],
        })
        .unwrap();
        assert_eq!(g.order(), 6);
        g.validate().unwrap();
        // non-abelian
        assert!((0..6).any(|a| (0..6).any(|b| g.mul(a, b) != g.mul(b, a))));
    }

    #[test]
    fn missing_inverse_is_reported() {
        let table = vec![vec![0, 1], vec![1, 1]];
        let err = build_group(&GroupSpec::Table {
            name: "bad".into(),
            table,
        })
        .unwrap_err();
        assert_eq!(err, GroupError::NoInverse(1));
        assert_eq!(err.to_string(), "no inverse for element 1");
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // A loop of order 5 that is not a group.
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = build_group(&GroupSpec::Table {
            name: "loop".into(),
            table,
        })
        .unwrap_err();
        assert!(matches!(err, GroupError::NotAssociative(..)), "{err}");
    }

    #[test]
    fn identity_is_relabelled_to_zero() {
        // C2 with identity stored at index 1.
        let table = vec![vec![1, 0], vec![0, 1]];
        let g = build_group(&GroupSpec::Table {
            name: "C2".into(),
            table,
        })
        .unwrap();
        assert_eq!(g.mul(1, 1), 0);
        assert_eq!(g.mul(0, 1), 1);
    }

    #[test]
    fn closure_cap() {
        let err = build_group_with_cap(&GroupSpec::symmetric(5), 100).unwrap_err();
        assert_eq!(err, GroupError::SizeCapExceeded { cap: 100 });
        assert_eq!(build_group(&GroupSpec::symmetric(5)).unwrap().order(), 120);
    }

    #[test]
    fn malformed_inputs() {
        let err = build_group(&GroupSpec::Table {
            name: "x".into(),
            table: vec![vec![0, 1], vec![1]],
        })
        .unwrap_err();
        assert!(matches!(err, GroupError::NotSquare { row: 1, .. }));
        let err = build_group(&GroupSpec::Permutations {
            name: "x".into(),
            generators: vec![vec![0, 0, 1]],
        })
        .unwrap_err();
        assert!(matches!(err, GroupError::BadPermutation { index: 0, .. }));
        assert_eq!(
            build_group(&GroupSpec::Table {
                name: "x".into(),
                table: vec![]
            }),
            Err(GroupError::EmptyTable)
        );
    }

    #[test]
    fn builtins_have_expected_orders() {
        let orders = [1, 2, 3, 4, 4, 6, 8, 8];
        for (name, order) in GroupSpec::BUILTIN_NAMES.iter().zip(orders) {
            let g = build_group(&GroupSpec::builtin(name).unwrap()).unwrap();
            assert_eq!(g.order(), order, "{name}");
            g.validate().unwrap();
        }
        let q8 = build_group(&GroupSpec::quaternion()).unwrap();
        // exactly one involution
        assert_eq!((1..8).filter(|&x| q8.element_order(x) == 2).count(), 1);
    }

    #[test]
    fn words_multiply_to_their_element() {
        for name in GroupSpec::BUILTIN_NAMES {
            let g = build_group(&GroupSpec::builtin(name).unwrap()).unwrap();
            for x in g.elements() {
                let prod = g
                    .word(x)
                    .iter()
                    .fold(0, |acc, &s| g.mul(acc, g.generators()[s]));
                assert_eq!(prod, x);
            }
        }
    }

    #[test]
    fn spec_json_round_trip() {
        let json = r#"{"name":"S3","permGenerators":[[1,0,2],[1,2,0]]}"#;
        let spec: GroupSpec = serde_json::from_str(json).unwrap();
        assert_eq!(spec, GroupSpec::symmetric(3));
        assert_eq!(serde_json::to_string(&spec).unwrap(), json);
        assert!(serde_json::from_str::<GroupSpec>(r#"{"name":"x"}"#).is_err());
    }

    #[test]
    fn cycle_notation_formats() {
        assert_eq!(cycle_notation(&[0, 1, 2]), "()");
        assert_eq!(cycle_notation(&[1, 2, 0, 3]), "(0 1 2)");
    }
}
