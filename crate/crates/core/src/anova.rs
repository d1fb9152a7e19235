//! ANOVA / J-characteristic transforms and the criteria built on them.
//!
//! For a frequency vector `x` over `{0..n}^k` the interaction `x_u` is the
//! marginal mean over the columns in `u` minus every lower-order interaction
//! `x_v`, `v ⊊ u`, and `J_u = n^k · x_u`. Each `J_u` is an integer:
//! `J_u(i) = n^{|u|} m_u(i_u) - Σ_{v ⊊ u} J_v(i)` with `m_u` the integer
//! marginal count, so blocks are stored as `i64`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arrays::{FrequencyVector, OAParams, TupleSpace};
use crate::combin::{binomial, residue, subsets_of_size};
use crate::error::{input, Error, Result};

/// A subset of the columns `0..k`, bit `c` set when column `c` belongs to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn from_columns(columns: &[usize]) -> Self {
        SubsetMask(columns.iter().fold(0, |m, &c| m | (1 << c)))
    }

    pub fn full(k: usize) -> Self {
        SubsetMask(((1u64 << k) - 1) as u32)
    }

    pub fn columns(self) -> Vec<usize> {
        (0..32).filter(|&c| self.contains(c)).collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, column: usize) -> bool {
        self.0 >> column & 1 == 1
    }

    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    /// All `r`-subsets of `0..k`, lexicographic in their column lists.
    pub fn of_size(k: usize, r: usize) -> Vec<SubsetMask> {
        subsets_of_size(k, r).iter().map(|c| SubsetMask::from_columns(c)).collect()
    }

    /// Hadamard-row order: by size, then lexicographic.
    pub fn h_order(k: usize) -> Vec<SubsetMask> {
        (0..=k).flat_map(|r| SubsetMask::of_size(k, r)).collect()
    }

    /// Proper subsets, including the empty set.
    pub fn proper_subsets(self) -> impl Iterator<Item = SubsetMask> {
        let full = self.0;
        let mut sub = full;
        let mut done = full == 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            sub = (sub.wrapping_sub(1)) & full;
            if sub == 0 {
                done = true;
            }
            Some(SubsetMask(sub))
        })
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self.columns().iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", cols.join(","))
    }
}

/// Cell index of `rank` within the marginal table over `columns`.
fn cell_over(space: &TupleSpace, rank: usize, columns: &[usize]) -> usize {
    columns.iter().fold(0, |acc, &c| acc * space.n() + space.digit(rank, c))
}

/// All J-characteristics of a frequency vector, one full-length block per
/// column subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JVector {
    n: usize,
    k: usize,
    blocks: Vec<Vec<i64>>,
}

impl JVector {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn block(&self, u: SubsetMask) -> &[i64] {
        &self.blocks[u.0 as usize]
    }

    pub fn value(&self, u: SubsetMask, rank: usize) -> i64 {
        self.blocks[u.0 as usize][rank]
    }

    /// `J_∅`, the run count.
    pub fn total(&self) -> i64 {
        self.blocks[0][0]
    }

    pub fn space(&self) -> TupleSpace {
        TupleSpace::new(self.n, self.k).expect("validated on construction")
    }

    pub fn block_is_zero(&self, u: SubsetMask) -> bool {
        self.block(u).iter().all(|&v| v == 0)
    }

    /// The block compressed to its `n^{|u|}` distinct values, lexicographic
    /// over the coordinates in `u`.
    pub fn values_on_u(&self, u: SubsetMask) -> Vec<i64> {
        let space = self.space();
        let cols = u.columns();
        let block = self.block(u);
        (0..self.n.pow(cols.len() as u32))
            .map(|cell| {
                let mut rank = 0;
                let mut rest = cell;
                for &c in cols.iter().rev() {
                    rank += (rest % self.n) * space.weight(c);
                    rest /= self.n;
                }
                block[rank]
            })
            .collect()
    }

    /// `n^k · x`, rebuilt by summing every block.
    pub fn reconstruct_scaled(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.blocks[0].len()];
        for block in &self.blocks {
            for (o, v) in out.iter_mut().zip(block) {
                *o += v;
            }
        }
        out
    }

    pub fn to_export(&self) -> JVectorExport {
        JVectorExport {
            n: self.n,
            k: self.k,
            blocks: SubsetMask::h_order(self.k)
                .into_iter()
                .map(|u| JBlockExport { u: u.columns(), values_on_u: self.values_on_u(u) })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JBlockExport {
    pub u: Vec<usize>,
    pub values_on_u: Vec<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JVectorExport {
    pub n: usize,
    pub k: usize,
    pub blocks: Vec<JBlockExport>,
}

/// ANOVA transform by the interaction recursion.
pub fn anova_transform(fv: &FrequencyVector) -> Result<JVector> {
    let (n, k) = (fv.n(), fv.k());
    if k > 20 {
        return Err(Error::Resource(format!("k = {k} gives too many column subsets")));
    }
    let space = fv.space();
    let size = space.size();
    // |J_v| <= n^k N for every v, and the recursion subtracts at most 2^k
    // of them from a value of the same size.
    let fits = (size as i64)
        .checked_mul(1 << k)
        .and_then(|b| b.checked_mul(i64::try_from(fv.total()).ok()?))
        .is_some();
    if !fits {
        return Err(Error::Resource("J-characteristics would overflow 64 bits".into()));
    }
    let mut blocks: Vec<Vec<i64>> = vec![Vec::new(); 1 << k];
    // Numeric mask order visits every proper subset before its superset.
    for mask in 0..(1u32 << k) {
        let u = SubsetMask(mask);
        let cols = u.columns();
        let table = fv.marginal(&cols);
        let scale = (n as i64).pow(cols.len() as u32);
        let mut block: Vec<i64> = (0..size)
            .map(|rank| scale * table[cell_over(&space, rank, &cols)] as i64)
            .collect();
        for v in u.proper_subsets() {
            for (b, w) in block.iter_mut().zip(&blocks[v.0 as usize]) {
                *b -= w;
            }
        }
        blocks[mask as usize] = block;
    }
    Ok(JVector { n, k, blocks })
}

/// Integer coefficients of the linear form `x ↦ J_u(i)` where `i_u` is
/// `tuple_on_u` (one symbol per column of `u`, in column order). The
/// coefficient of cell `t` is `Π_{c∈u} (n·[t_c = i_c] - 1)`.
pub fn j_linear_form(n: usize, k: usize, u: SubsetMask, tuple_on_u: &[usize]) -> Result<Vec<i64>> {
    let cols = u.columns();
    if cols.len() != tuple_on_u.len() {
        return input(format!("subset {u} needs {} symbols, got {}", cols.len(), tuple_on_u.len()));
    }
    if cols.iter().any(|&c| c >= k) || tuple_on_u.iter().any(|&v| v >= n) {
        return input(format!("subset {u} or tuple out of range for n = {n}, k = {k}"));
    }
    let space = TupleSpace::new(n, k)?;
    Ok((0..space.size())
        .map(|t| {
            cols.iter()
                .zip(tuple_on_u)
                .map(|(&c, &sym)| if space.digit(t, c) == sym { n as i64 - 1 } else { -1 })
                .product()
        })
        .collect())
}

/// The `2^k` signed-product J-characteristics of a two-symbol array, in
/// Hadamard-row order (∅, singletons, pairs, …).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignedJVector {
    pub k: usize,
    pub entries: Vec<i64>,
}

impl SignedJVector {
    pub fn order(&self) -> Vec<SubsetMask> {
        SubsetMask::h_order(self.k)
    }

    pub fn get(&self, u: SubsetMask) -> i64 {
        let pos = self.order().iter().position(|&v| v == u).expect("subset of 0..k");
        self.entries[pos]
    }

    /// `x = Hᵀ J / 2^k`.
    pub fn inverse(&self) -> Vec<Ratio<i64>> {
        let k = self.k;
        let mut w = vec![0i64; 1 << k];
        for (u, &val) in self.order().iter().zip(&self.entries) {
            let sign = if u.len() % 2 == 0 { 1 } else { -1 };
            w[walsh_index(*u, k)] = sign * val;
        }
        walsh_hadamard(&mut w);
        let scale = 1i64 << k;
        w.into_iter().map(|v| Ratio::new(v, scale)).collect()
    }
}

// Rank bit (k-1-c) carries column c.
fn walsh_index(u: SubsetMask, k: usize) -> usize {
    u.columns().iter().map(|&c| 1usize << (k - 1 - c)).sum()
}

/// In-place unnormalized Walsh–Hadamard butterfly.
fn walsh_hadamard(data: &mut [i64]) {
    let len = data.len();
    let mut h = 1;
    while h < len {
        for start in (0..len).step_by(2 * h) {
            for i in start..start + h {
                let (a, b) = (data[i], data[i + h]);
                data[i] = a + b;
                data[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// `J = H x` with row `u` of `H` the product of the ±1 column encodings
/// (`symbol ↦ 2·symbol - 1`) over `u`.
pub fn signed_j_transform(fv: &FrequencyVector) -> Result<SignedJVector> {
    if fv.n() != 2 {
        return Err(Error::UnsupportedAlphabet(fv.n()));
    }
    let k = fv.k();
    let mut w: Vec<i64> = fv.counts().iter().map(|&c| c as i64).collect();
    walsh_hadamard(&mut w);
    // The butterfly weights symbol 0 by +1; the ±1 encoding weights it by -1.
    let entries = SubsetMask::h_order(k)
        .into_iter()
        .map(|u| {
            let v = w[walsh_index(u, k)];
            if u.len() % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect();
    Ok(SignedJVector { k, entries })
}

/// Whether the ANOVA route and the signed-product route agree on
/// `J_u(1,…,1)` for every `u`.
pub fn consistency_check(fv: &FrequencyVector) -> Result<bool> {
    let signed = signed_j_transform(fv)?;
    let jv = anova_transform(fv)?;
    let ones = fv.space().size() - 1;
    Ok(signed
        .order()
        .iter()
        .zip(&signed.entries)
        .all(|(&u, &val)| jv.value(u, ones) == val))
}

/// `J_u(i)` predicted from `J_u(1,…,1)`: the sign is `(-1)` to the number
/// of coordinates of `i` in `u` that carry symbol 0 (the `-1` level).
pub fn sign_pattern(jv: &JVector, u: SubsetMask, tuple: &[usize]) -> Result<i64> {
    if jv.n != 2 {
        return Err(Error::UnsupportedAlphabet(jv.n));
    }
    if tuple.len() != jv.k || tuple.iter().any(|&v| v > 1) {
        return input("tuple must hold k symbols from {0, 1}");
    }
    let minus = u.columns().iter().filter(|&&c| tuple[c] == 0).count();
    let base = jv.value(u, jv.space().size() - 1);
    Ok(if minus % 2 == 0 { base } else { -base })
}

/// Strength through J-characteristics: every block with `1 ≤ |u| ≤ s`
/// vanishes.
pub fn check_strength_j(jv: &JVector, s: usize) -> bool {
    (1u32..(1 << jv.k))
        .map(SubsetMask)
        .filter(|u| u.len() <= s)
        .all(|u| jv.block_is_zero(u))
}

/// One `(u, i_u)` line of a congruence report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceEntry {
    pub u: Vec<usize>,
    pub tuple_on_u: Vec<usize>,
    /// `μ_u = J_u / n^s` as a reduced fraction `p/q`.
    pub mu: String,
    pub expected_residue: u64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CongruenceReport {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub lambda: u64,
    pub entries: Vec<CongruenceEntry>,
}

impl CongruenceReport {
    pub fn violations(&self) -> impl Iterator<Item = &CongruenceEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

/// `(-1)^ℓ λ C(s+ℓ-1, ℓ-1)`.
pub fn congruence_target(s: usize, ell: usize, lambda: u64) -> BigInt {
    let value = BigInt::from(lambda) * binomial(s + ell - 1, ell - 1);
    if ell % 2 == 1 {
        -value
    } else {
        value
    }
}

/// For an OA of strength `s`, every block with `|u| = s + ℓ > s` equals
/// `μ_u n^s` with integer `μ_u ≡ (-1)^ℓ λ C(s+ℓ-1, ℓ-1) (mod n)`. The report
/// lists every `(u, i_u)` and whether it satisfies that.
pub fn congruence_report(jv: &JVector, params: &OAParams) -> Result<CongruenceReport> {
    if jv.n != params.n || jv.k != params.k {
        return Err(Error::ParamMismatch("J-vector and parameters disagree on (n, k)".into()));
    }
    let s = params.s;
    if !check_strength_j(jv, s) {
        return Err(Error::Precondition(format!("J-vector does not have strength {s}")));
    }
    if jv.total() as u64 != params.runs() {
        return Err(Error::Precondition(format!(
            "J_∅ = {} differs from N = {}",
            jv.total(),
            params.runs()
        )));
    }
    let n = params.n;
    let scale = (n as i64).pow(s as u32);
    let mut targets = BTreeMap::new();
    let mut entries = Vec::new();
    for size in s + 1..=params.k {
        let ell = size - s;
        let expected = *targets
            .entry(ell)
            .or_insert_with(|| residue(&congruence_target(s, ell, params.lambda), n));
        for u in SubsetMask::of_size(params.k, size) {
            for (cell, value) in jv.values_on_u(u).into_iter().enumerate() {
                let mu = Ratio::new(value, scale);
                let pass = mu.is_integer() && residue(&BigInt::from(*mu.numer()), n) == expected;
                entries.push(CongruenceEntry {
                    u: u.columns(),
                    tuple_on_u: crate::arrays::tuple_unrank(cell, n, size),
                    mu: mu.to_string(),
                    expected_residue: expected,
                    pass,
                });
            }
        }
    }
    Ok(CongruenceReport { n, k: params.k, s, lambda: params.lambda, entries })
}

/// The two alternating binomial identities behind the congruences:
/// `Σ_{i<r} (-1)^{i+1} C(s+i,i) C(s+r-1,s+i) = 0` for `r ≥ 2`, and
/// `Σ_{i<r} (-1)^{i+1} C(s+i,i) C(s+r,s+i+1) = -1`.
pub fn binomial_identity_check(s: usize, r: usize) -> bool {
    if s < 1 || r < 1 {
        return false;
    }
    let signed = |i: usize, term: BigInt| if i.is_multiple_of(2) { -term } else { term };
    let first: BigInt = (0..r)
        .map(|i| signed(i, binomial(s + i, i) * binomial(s + r - 1, s + i)))
        .sum();
    let second: BigInt = (0..r)
        .map(|i| signed(i, binomial(s + i, i) * binomial(s + r, s + i + 1)))
        .sum();
    (r < 2 || first.is_zero()) && second == -BigInt::one()
}
