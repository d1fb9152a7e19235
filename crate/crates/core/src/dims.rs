//! Admissible dimensions of the integer hull and the zero right-hand-side
//! families that cut them out.
//!
//! The congruence on `μ_u` leaves a J-block of order `s + ℓ` free to vanish
//! only when `n | λ C(s+ℓ-1, ℓ-1)`; those `ℓ` form `Ω`. The true dimension
//! is the base dimension minus the ranks of the blocks in some `T ⊆ Ω`.
//! For `n = 2` and even `s` the orthogonal-design symmetry pairs adjacent
//! orders, which gives a coarser lattice indexed by even offsets `d`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::anova::{j_linear_form, SubsetMask};
use crate::arrays::OAParams;
use crate::combin::{binomial, binomial_u64, residue};
use crate::error::{input, Error, Result};
use crate::repr::{method1_real_from_complex, Decomposition};

/// Largest `|Ω|` for which the full subset lattice is listed.
pub const MAX_OMEGA: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DimMode {
    General,
    N2EvenS,
}

/// How to pick the mode: automatic selects `N2EvenS` exactly when `n = 2`
/// and `s` is even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModeSelect {
    #[default]
    Auto,
    Force(DimMode),
}

impl ModeSelect {
    pub fn resolve(self, params: &OAParams) -> Result<DimMode> {
        let eligible = params.n == 2 && params.s.is_multiple_of(2);
        match self {
            ModeSelect::Auto if eligible => Ok(DimMode::N2EvenS),
            ModeSelect::Auto | ModeSelect::Force(DimMode::General) => Ok(DimMode::General),
            ModeSelect::Force(DimMode::N2EvenS) if eligible => Ok(DimMode::N2EvenS),
            ModeSelect::Force(DimMode::N2EvenS) => {
                input("the paired mode needs n = 2 and even s")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaSet {
    pub mode: DimMode,
    /// `ℓ` values in general mode, even `d` values in paired mode.
    pub members: Vec<usize>,
    /// Set when `k ≤ s`: the only feasible point is the uniform one.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimCandidate {
    #[serde(rename = "T")]
    pub t: Vec<usize>,
    pub dimension: u64,
    pub forced_block_sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimReport {
    pub params: OAParams,
    pub mode: DimMode,
    pub omega: Vec<usize>,
    pub base_dim: u64,
    /// One record per `T ⊆ Ω`.
    pub candidates: Vec<DimCandidate>,
    /// Distinct candidate dimensions, largest first.
    pub dimensions: Vec<u64>,
}

impl DimReport {
    pub fn contains(&self, dim: u64) -> bool {
        self.dimensions.contains(&dim)
    }

    /// The `T` records whose forced sizes are exactly `sizes`.
    pub fn candidate_forcing(&self, sizes: &BTreeSet<usize>) -> Option<&DimCandidate> {
        self.candidates
            .iter()
            .find(|c| c.forced_block_sizes.iter().copied().collect::<BTreeSet<_>>() == *sizes)
    }
}

fn overflow() -> Error {
    Error::Resource("dimension does not fit in 64 bits".into())
}

/// `C(k, m)(n-1)^m`, the dimension of all order-`m` interaction blocks.
pub fn block_rank(n: usize, k: usize, m: usize) -> Result<u64> {
    let c = binomial_u64(k, m).ok_or_else(overflow)?;
    (n as u64 - 1).checked_pow(m as u32).and_then(|p| p.checked_mul(c)).ok_or_else(overflow)
}

/// `n^k - Σ_{j≤s} C(k,j)(n-1)^j`, zero when `s ≥ k`.
pub fn base_dimension(params: &OAParams) -> Result<u64> {
    let (n, k) = (params.n, params.k);
    (params.s + 1..=k).try_fold(0u64, |acc, m| acc.checked_add(block_rank(n, k, m)?).ok_or_else(overflow))
}

pub fn compute_omega(params: &OAParams, select: ModeSelect) -> Result<OmegaSet> {
    params.validate()?;
    let mode = select.resolve(params)?;
    let (n, k, s) = (params.n, params.k, params.s);
    if k <= s {
        return Ok(OmegaSet { mode, members: Vec::new(), degenerate: true });
    }
    let lambda = num_bigint::BigInt::from(params.lambda);
    let members = match mode {
        DimMode::General => (1..=k - s)
            .filter(|&ell| residue(&(&lambda * binomial(s + ell - 1, ell - 1)), n) == 0)
            .collect(),
        DimMode::N2EvenS => (0..k - s)
            .step_by(2)
            .filter(|&d| residue(&(&lambda * binomial(s + d, d)), 2) == 0)
            .collect(),
    };
    Ok(OmegaSet { mode, members, degenerate: false })
}

/// Block orders forced to vanish by the offsets in `t`.
pub fn forced_sizes(params: &OAParams, mode: DimMode, t: &[usize]) -> Result<Vec<usize>> {
    let (k, s) = (params.k, params.s);
    let mut sizes = BTreeSet::new();
    for &x in t {
        match mode {
            DimMode::General => {
                if x == 0 || s + x > k {
                    return input(format!("offset ℓ = {x} is outside 1..={}", k.saturating_sub(s)));
                }
                sizes.insert(s + x);
            }
            DimMode::N2EvenS => {
                if x % 2 == 1 || s + x + 1 > k {
                    return input(format!("offset d = {x} is not an even value below {}", k.saturating_sub(s)));
                }
                sizes.insert(s + x + 1);
                if s + x + 2 <= k {
                    sizes.insert(s + x + 2);
                }
            }
        }
    }
    Ok(sizes.into_iter().collect())
}

pub fn candidate_dims(params: &OAParams, select: ModeSelect) -> Result<DimReport> {
    let omega = compute_omega(params, select)?;
    let base = base_dimension(params)?;
    let m = omega.members.len();
    if m > MAX_OMEGA {
        return Err(Error::Resource(format!("|Ω| = {m} gives 2^{m} candidates")));
    }
    let mut candidates = Vec::with_capacity(1 << m);
    for bits in 0u32..(1 << m) {
        let t: Vec<usize> = (0..m).filter(|i| bits >> i & 1 == 1).map(|i| omega.members[i]).collect();
        let sizes = forced_sizes(params, omega.mode, &t)?;
        let removed = sizes
            .iter()
            .try_fold(0u64, |acc, &sz| acc.checked_add(block_rank(params.n, params.k, sz)?).ok_or_else(overflow))?;
        candidates.push(DimCandidate { t, dimension: base - removed, forced_block_sizes: sizes });
    }
    let mut dimensions: Vec<u64> = candidates.iter().map(|c| c.dimension).collect::<BTreeSet<_>>().into_iter().collect();
    dimensions.reverse();
    Ok(DimReport {
        params: *params,
        mode: omega.mode,
        omega: omega.members,
        base_dim: base,
        candidates,
        dimensions,
    })
}

/// The base dimension when no block can vanish (general-mode `Ω = ∅`).
pub fn full_dim_if_nondivisible(params: &OAParams) -> Result<Option<u64>> {
    let omega = compute_omega(params, ModeSelect::Force(DimMode::General))?;
    if omega.members.is_empty() {
        Ok(Some(base_dimension(params)?))
    } else {
        Ok(None)
    }
}

/// One equation `Σ coeff·x_rank = 0` stating `J_u(tuple) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintRow {
    pub u: Vec<usize>,
    pub tuple: Vec<usize>,
    /// Nonzero `(rank, coefficient)` pairs in rank order.
    pub coeffs: Vec<(usize, i64)>,
}

impl ConstraintRow {
    pub fn dense(&self, width: usize) -> Vec<i64> {
        let mut row = vec![0; width];
        for &(r, c) in &self.coeffs {
            row[r] = c;
        }
        row
    }

    pub fn evaluate(&self, counts: &[u64]) -> i64 {
        self.coeffs.iter().map(|&(r, c)| c * counts[r] as i64).sum()
    }
}

/// Rows `J_u(i_u) = 0` for every `u` whose order is forced by `t`.
/// Coefficients are those of `n^k x_u`, so they are integers.
pub fn constraint_family(params: &OAParams, t: &[usize], mode: DimMode) -> Result<Vec<ConstraintRow>> {
    params.validate()?;
    let (n, k) = (params.n, params.k);
    let mut rows = Vec::new();
    for size in forced_sizes(params, mode, t)? {
        for u in SubsetMask::of_size(k, size) {
            for cell in 0..n.pow(size as u32) {
                let tuple = crate::arrays::tuple_unrank(cell, n, size);
                let coeffs = j_linear_form(n, k, u, &tuple)?
                    .into_iter()
                    .enumerate()
                    .filter(|&(_, c)| c != 0)
                    .collect();
                rows.push(ConstraintRow { u: u.columns(), tuple, coeffs });
            }
        }
    }
    Ok(rows)
}

/// Method 2: keep the irreducible components orthogonal to every row of
/// `eq_rows`, make them real, and return every subset sum of their ranks.
/// Rational rows should be scaled to integers first
/// (`linalg::clear_denominators`). A decomposition that is not
/// multiplicity-free yields the empty set.
pub fn method2_candidates(eq_rows: &[Vec<i64>], decomposition: &Decomposition) -> Result<BTreeSet<usize>> {
    if !decomposition.multiplicity_free {
        return Ok(BTreeSet::new());
    }
    let Some(first) = decomposition.projectors.first() else {
        return input("empty decomposition");
    };
    let dim = first.dim();
    if decomposition.projectors.iter().any(|p| p.dim() != dim) || eq_rows.iter().any(|r| r.len() != dim) {
        return input("equation rows and projectors disagree on the dimension");
    }
    let surviving: Vec<_> = decomposition
        .projectors
        .iter()
        .filter(|p| eq_rows.iter().all(|a| p.annihilates(a)))
        .cloned()
        .collect();
    let real = method1_real_from_complex(&Decomposition { projectors: surviving, multiplicity_free: true })?;
    let mut sums = BTreeSet::from([0usize]);
    for p in real {
        let shifted: Vec<usize> = sums.iter().map(|s| s + p.rank()).collect();
        sums.extend(shifted);
    }
    Ok(sums)
}
