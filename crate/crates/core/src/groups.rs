//! Paratopisms, the orthogonal-design column operations `R_j`, and the
//! orbit machinery built on their tuple permutations.
//!
//! Groups are always handled through generators. A generator acts on the
//! tuple space as a permutation of ranks, which in turn permutes the entries
//! of a frequency vector. Full group enumeration only happens for Burnside
//! counts and is capped.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::arrays::{FrequencyVector, TupleSpace};
use crate::error::{input, Error, Result};

/// Default cap on explicitly enumerated group orders.
pub const DEFAULT_GROUP_CAP: usize = 10_000_000;
/// Default cap on orbit sizes during closure.
pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;
/// Largest tuple space whose pair set `X × X` is materialized.
pub const PAIR_SPACE_CAP: usize = 1 << 24;

fn check_permutation(p: &[usize], what: &str) -> Result<()> {
    let mut seen = vec![false; p.len()];
    for &v in p {
        if v >= p.len() || std::mem::replace(&mut seen[v], true) {
            return input(format!("{what} is not a permutation: {p:?}"));
        }
    }
    Ok(())
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

/// An element `((h_0, …, h_{k-1}), g)` of the wreath product `S_n ≀ S_k`,
/// acting by `t'_j = h_j(t_{g⁻¹(j)})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Paratopism {
    pub col_perms: Vec<Vec<usize>>,
    pub col_shuffle: Vec<usize>,
}

impl Paratopism {
    pub fn new(col_perms: Vec<Vec<usize>>, col_shuffle: Vec<usize>) -> Result<Self> {
        let p = Paratopism { col_perms, col_shuffle };
        p.validate()?;
        Ok(p)
    }

    pub fn identity(n: usize, k: usize) -> Self {
        Paratopism { col_perms: vec![(0..n).collect(); k], col_shuffle: (0..k).collect() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.col_perms.len() != self.col_shuffle.len() {
            return input("col_perms and col_shuffle disagree on k");
        }
        check_permutation(&self.col_shuffle, "col_shuffle")?;
        let n = self.col_perms.first().map_or(0, Vec::len);
        for h in &self.col_perms {
            if h.len() != n {
                return input("column permutations act on different alphabets");
            }
            check_permutation(h, "column permutation")?;
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.col_shuffle.len()
    }

    pub fn n(&self) -> usize {
        self.col_perms.first().map_or(0, Vec::len)
    }

    pub fn apply(&self, t: &[usize]) -> Result<Vec<usize>> {
        if t.len() != self.k() || t.iter().any(|&v| v >= self.n()) {
            return input(format!("tuple {t:?} is outside {{0..{}}}^{}", self.n(), self.k()));
        }
        let mut out = vec![0; t.len()];
        for (c, &v) in t.iter().enumerate() {
            let j = self.col_shuffle[c];
            out[j] = self.col_perms[j][v];
        }
        Ok(out)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &Paratopism) -> Result<Paratopism> {
        if self.k() != first.k() || self.n() != first.n() {
            return input("paratopisms act on different tuple spaces");
        }
        let g_inv = invert(&self.col_shuffle);
        let col_shuffle = first.col_shuffle.iter().map(|&c| self.col_shuffle[c]).collect();
        let col_perms = (0..self.k())
            .map(|j| first.col_perms[g_inv[j]].iter().map(|&v| self.col_perms[j][v]).collect())
            .collect();
        Ok(Paratopism { col_perms, col_shuffle })
    }

    pub fn inverse(&self) -> Paratopism {
        let g_inv = invert(&self.col_shuffle);
        // t_c = h_{g(c)}^{-1}(t'_{g(c)})
        let col_perms = (0..self.k()).map(|c| invert(&self.col_perms[self.col_shuffle[c]])).collect();
        Paratopism { col_perms, col_shuffle: g_inv }
    }
}

/// `R_j` on a ±1 tuple: every other entry is multiplied by `t_j`.
pub fn apply_r(j: usize, t: &[i8]) -> Result<Vec<i8>> {
    if j >= t.len() || t.iter().any(|&v| v != 1 && v != -1) {
        return input(format!("R_{j} needs a ±1 tuple with more than {j} entries"));
    }
    Ok(t.iter().enumerate().map(|(i, &v)| if i == j { v } else { v * t[j] }).collect())
}

/// `R_j` on the `{0, 1}` alphabet (`b ↦ 2b - 1` identifies it with ±1).
pub fn apply_r_bits(j: usize, t: &[usize]) -> Result<Vec<usize>> {
    if j >= t.len() || t.iter().any(|&v| v > 1) {
        return Err(Error::UnsupportedAlphabet(t.iter().max().map_or(2, |m| m + 1)));
    }
    Ok(t.iter().enumerate().map(|(i, &v)| if i == j { v } else { 1 - (v ^ t[j]) }).collect())
}

/// A generator of `G^iso(k, n)` or `G(k)^OD`. JSON forms are
/// `{"col_perms": [...], "col_shuffle": [...]}` and `{"R": j}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupElement {
    Paratopism(Paratopism),
    R {
        #[serde(rename = "R")]
        column: usize,
    },
}

impl GroupElement {
    /// The induced permutation of tuple ranks: `perm[r]` is the rank of the
    /// image of tuple `r`.
    pub fn tuple_permutation(&self, space: &TupleSpace) -> Result<Vec<usize>> {
        let (n, k) = (space.n(), space.k());
        match self {
            GroupElement::Paratopism(p) => {
                p.validate()?;
                if p.n() != n || p.k() != k {
                    return Err(Error::ParamMismatch(format!(
                        "paratopism acts on ({}, {}), tuple space is ({n}, {k})",
                        p.n(),
                        p.k()
                    )));
                }
                (0..space.size()).map(|r| space.rank(&p.apply(&space.unrank(r))?)).collect()
            }
            GroupElement::R { column } => {
                if n != 2 {
                    return Err(Error::UnsupportedAlphabet(n));
                }
                if *column >= k {
                    return input(format!("R_{column} needs k > {column}"));
                }
                (0..space.size())
                    .map(|r| space.rank(&apply_r_bits(*column, &space.unrank(r))?))
                    .collect()
            }
        }
    }
}

/// A word `R_{j_1} … R_{j_m}` followed by a paratopism, `n = 2` only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ODWord {
    pub r_ops: Vec<usize>,
    pub tail: Paratopism,
}

impl ODWord {
    /// Applies the `R` operations left to right, then the tail.
    pub fn apply(&self, t: &[usize]) -> Result<Vec<usize>> {
        if self.tail.n() != 2 {
            return Err(Error::UnsupportedAlphabet(self.tail.n()));
        }
        let mut cur = t.to_vec();
        for &j in &self.r_ops {
            cur = apply_r_bits(j, &cur)?;
        }
        self.tail.apply(&cur)
    }

    pub fn tuple_permutation(&self, space: &TupleSpace) -> Result<Vec<usize>> {
        (0..space.size()).map(|r| space.rank(&self.apply(&space.unrank(r))?)).collect()
    }
}

/// Generators of `G^iso(k, n)`: adjacent column transpositions, and per
/// column the symbol transposition `(0 1)` and the cycle `v ↦ v + 1`.
pub fn iso_generators(n: usize, k: usize) -> Vec<GroupElement> {
    let mut gens = Vec::new();
    for c in 0..k.saturating_sub(1) {
        let mut p = Paratopism::identity(n, k);
        p.col_shuffle.swap(c, c + 1);
        gens.push(GroupElement::Paratopism(p));
    }
    if n < 2 {
        return gens;
    }
    for c in 0..k {
        let mut swap = Paratopism::identity(n, k);
        swap.col_perms[c].swap(0, 1);
        gens.push(GroupElement::Paratopism(swap));
        if n > 2 {
            let mut cycle = Paratopism::identity(n, k);
            cycle.col_perms[c] = (0..n).map(|v| (v + 1) % n).collect();
            gens.push(GroupElement::Paratopism(cycle));
        }
    }
    gens
}

/// Generators of `G(k)^OD`: those of `G^iso(k, 2)` plus every `R_j`.
pub fn od_generators(k: usize) -> Vec<GroupElement> {
    let mut gens = iso_generators(2, k);
    gens.extend((0..k).map(|column| GroupElement::R { column }));
    gens
}

pub fn generator_permutations(gens: &[GroupElement], space: &TupleSpace) -> Result<Vec<Vec<usize>>> {
    gens.iter().map(|g| g.tuple_permutation(space)).collect()
}

/// Moves the count of tuple `r` to tuple `perm[r]`.
pub fn act_on_frequency(perm: &[usize], fv: &FrequencyVector) -> Result<FrequencyVector> {
    if perm.len() != fv.counts().len() {
        return input("permutation length differs from the tuple space");
    }
    let mut counts = vec![0; perm.len()];
    for (r, &c) in fv.counts().iter().enumerate() {
        counts[perm[r]] = c;
    }
    FrequencyVector::new(fv.n(), fv.k(), counts)
}

/// Breadth-first closure of `fv` under the generators.
pub fn orbit_of_point(
    gens: &[GroupElement],
    fv: &FrequencyVector,
    cap: usize,
) -> Result<BTreeSet<FrequencyVector>> {
    let perms = generator_permutations(gens, &fv.space())?;
    let mut seen = BTreeSet::from([fv.clone()]);
    let mut queue = VecDeque::from([fv.clone()]);
    while let Some(x) = queue.pop_front() {
        for p in &perms {
            let y = act_on_frequency(p, &x)?;
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::Resource(format!("orbit exceeds {cap} points")));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

/// A partition of `0..size` into disjoint classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartition {
    pub size: usize,
    pub classes: Vec<Vec<usize>>,
}

impl OrbitPartition {
    /// Validates disjointness and coverage; classes are sorted internally
    /// and ordered by their least element.
    pub fn new(size: usize, classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; size];
        let mut classes: Vec<Vec<usize>> = classes.into_iter().filter(|c| !c.is_empty()).collect();
        for class in &mut classes {
            class.sort_unstable();
            for &i in class.iter() {
                if i >= size || std::mem::replace(&mut seen[i], true) {
                    return input(format!("index {i} is out of range or in two classes"));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return input("classes do not cover the index set");
        }
        classes.sort_unstable_by_key(|c| c[0]);
        Ok(OrbitPartition { size, classes })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// `labels[i]` is the index of the class containing `i`.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.size];
        for (c, class) in self.classes.iter().enumerate() {
            for &i in class {
                labels[i] = c;
            }
        }
        labels
    }

    /// Whether every class of `self` lies inside one class of `coarser`.
    pub fn refines(&self, coarser: &OrbitPartition) -> bool {
        let labels = coarser.labels();
        self.size == coarser.size
            && self.classes.iter().all(|c| c.iter().all(|&i| labels[i] == labels[c[0]]))
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbits of the group generated by `perms` on `0..size`.
pub fn orbits_under(size: usize, perms: &[Vec<usize>]) -> Result<OrbitPartition> {
    let mut parent: Vec<usize> = (0..size).collect();
    for p in perms {
        if p.len() != size {
            return input("permutation length differs from the index set");
        }
        for (i, &j) in p.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); size];
    for i in 0..size {
        let root = find(&mut parent, i);
        classes[root].push(i);
    }
    OrbitPartition::new(size, classes)
}

/// The diagonal action on pairs: pair `(a, b)` has index `a·size + b`.
pub fn pair_permutation(perm: &[usize]) -> Vec<usize> {
    let size = perm.len();
    (0..size * size).map(|i| perm[i / size] * size + perm[i % size]).collect()
}

pub fn pair_orbits(size: usize, perms: &[Vec<usize>]) -> Result<OrbitPartition> {
    if size.checked_mul(size).is_none_or(|s| s > PAIR_SPACE_CAP) {
        return Err(Error::Resource(format!("pair space of {size} points is too large")));
    }
    let pairs: Vec<Vec<usize>> = perms.iter().map(|p| pair_permutation(p)).collect();
    orbits_under(size * size, &pairs)
}

fn distance_classes(k: usize, n: usize) -> Result<(TupleSpace, Vec<Vec<usize>>)> {
    let space = TupleSpace::new(n, k)?;
    let size = space.size();
    if size.checked_mul(size).is_none_or(|s| s > PAIR_SPACE_CAP) {
        return Err(Error::Resource(format!("pair space of {size} points is too large")));
    }
    let mut by_distance = vec![Vec::new(); k + 1];
    for a in 0..size {
        for b in 0..size {
            by_distance[space.hamming(a, b)].push(a * size + b);
        }
    }
    Ok((space, by_distance))
}

/// Pairs of tuples grouped by Hamming distance, `O_0, …, O_k`.
pub fn hamming_orbits_x2(k: usize, n: usize) -> Result<OrbitPartition> {
    let (space, classes) = distance_classes(k, n)?;
    OrbitPartition::new(space.size() * space.size(), classes)
}

/// The diagonal and `O_i ∪ O_{k+1-i}` for `i = 1..=⌈k/2⌉` (`n = 2`).
pub fn od_orbits_x2(k: usize) -> Result<OrbitPartition> {
    let (space, mut by_distance) = distance_classes(k, 2)?;
    let mut classes = vec![std::mem::take(&mut by_distance[0])];
    for i in 1..=k.div_ceil(2) {
        let mut class = std::mem::take(&mut by_distance[i]);
        if k + 1 - i != i {
            class.append(&mut by_distance[k + 1 - i]);
        }
        classes.push(class);
    }
    OrbitPartition::new(space.size() * space.size(), classes)
}

/// Every element of the group generated by `gens`, as tuple permutations.
pub fn enumerate_group(gens: &[Vec<usize>], size: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
    let identity: Vec<usize> = (0..size).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
    let mut elements = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            if s.len() != size {
                return input("generator length differs from the tuple space");
            }
            let h: Vec<usize> = g.iter().map(|&x| s[x]).collect();
            if seen.insert(h.clone()) {
                if elements.len() >= cap {
                    return Err(Error::Resource(format!("group order exceeds {cap}")));
                }
                elements.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(elements)
}

/// `(1/|G|) Σ_h F(h)^m` where `F(h)` counts fixed tuples.
pub fn burnside_orbit_count(group: &[Vec<usize>], m: u32) -> Result<u128> {
    if group.is_empty() {
        return input("empty group");
    }
    let total: u128 = group
        .iter()
        .map(|h| {
            let fixed = h.iter().enumerate().filter(|(i, &j)| *i == j).count() as u128;
            fixed.pow(m)
        })
        .sum();
    let order = group.len() as u128;
    if !total.is_multiple_of(order) {
        return Err(Error::Inconsistent(format!("Burnside sum {total} not divisible by {order}")));
    }
    Ok(total / order)
}

pub fn parse_generators(json: &str) -> Result<Vec<GroupElement>> {
    Ok(serde_json::from_str(json)?)
}
