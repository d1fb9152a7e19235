//! Orthogonal projectors onto invariant subspaces of the count space.
//!
//! A projector is stored as integer matrices over a common denominator:
//! `P = (re + i·im) / den`. Every closed form in this module has small
//! integer numerators once scaled by `n^k`, so this keeps all checks exact
//! without a rational per entry.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::arrays::{FrequencyVector, TupleSpace};
use crate::combin::binomial_u64;
use crate::error::{input, Error, Result};
use crate::groups::OrbitPartition;
use crate::linalg::matmul;

/// Largest ambient dimension for which dense projectors are built.
pub const DEFAULT_AMBIENT_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projector {
    dim: usize,
    den: i64,
    re: Vec<i64>,
    im: Option<Vec<i64>>,
    rank: usize,
}

impl Projector {
    /// Builds `(re + i·im) / den` and reads the rank off the trace, which
    /// must be a whole number. Idempotency is not checked here.
    pub fn new(dim: usize, den: i64, re: Vec<i64>, im: Option<Vec<i64>>) -> Result<Self> {
        if den <= 0 || re.len() != dim * dim || im.as_ref().is_some_and(|m| m.len() != dim * dim) {
            return input("projector entries do not match its dimension");
        }
        let trace: i64 = (0..dim).map(|i| re[i * dim + i]).sum();
        if trace % den != 0 || trace < 0 {
            return Err(Error::Inconsistent(format!("trace {trace}/{den} is not a rank")));
        }
        let im = im.filter(|m| m.iter().any(|&v| v != 0));
        let mut p = Projector { dim, den, re, im, rank: (trace / den) as usize };
        p.reduce();
        Ok(p)
    }

    fn reduce(&mut self) {
        let mut g = self.den;
        for v in self.re.iter().chain(self.im.iter().flatten()) {
            if g == 1 {
                return;
            }
            g = g.gcd(v);
        }
        if g > 1 {
            self.den /= g;
            for v in self.re.iter_mut().chain(self.im.iter_mut().flatten()) {
                *v /= g;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn re_numerators(&self) -> &[i64] {
        &self.re
    }

    pub fn is_real(&self) -> bool {
        self.im.is_none()
    }

    pub fn entry(&self, i: usize, j: usize) -> (Ratio<i64>, Ratio<i64>) {
        let at = i * self.dim + j;
        let im = self.im.as_ref().map_or(0, |m| m[at]);
        (Ratio::new(self.re[at], self.den), Ratio::new(im, self.den))
    }

    /// `P² = P`: with `P = (A + iB)/d` that is `A² - B² = dA` and
    /// `AB + BA = dB`.
    pub fn is_idempotent(&self) -> bool {
        let d = self.dim;
        let den = self.den as i128;
        let aa = matmul(&self.re, &self.re, d);
        let Some(im) = &self.im else {
            return aa.iter().zip(&self.re).all(|(x, &a)| *x == den * a as i128);
        };
        let bb = matmul(im, im, d);
        let ab = matmul(&self.re, im, d);
        let ba = matmul(im, &self.re, d);
        (0..d * d).all(|t| {
            aa[t] - bb[t] == den * self.re[t] as i128 && ab[t] + ba[t] == den * im[t] as i128
        })
    }

    /// `P = P*`: real part symmetric, imaginary part antisymmetric.
    pub fn is_hermitian(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| {
            (i..d).all(|j| {
                self.re[i * d + j] == self.re[j * d + i]
                    && self.im.as_ref().is_none_or(|m| m[i * d + j] == -m[j * d + i])
            })
        })
    }

    /// Whether the permutation matrix of `perm` commutes with `P`, which
    /// holds iff `P[perm i][perm j] = P[i][j]` everywhere.
    pub fn commutes_with(&self, perm: &[usize]) -> bool {
        let d = self.dim;
        perm.len() == d
            && (0..d).all(|i| {
                (0..d).all(|j| {
                    let (a, b) = (i * d + j, perm[i] * d + perm[j]);
                    self.re[a] == self.re[b] && self.im.as_ref().is_none_or(|m| m[a] == m[b])
                })
            })
    }

    /// `den · P · y` as (real, imaginary) integer vectors.
    pub fn apply_scaled(&self, y: &[i64]) -> (Vec<i128>, Vec<i128>) {
        let d = self.dim;
        let mul = |m: &[i64]| -> Vec<i128> {
            (0..d)
                .map(|i| m[i * d..(i + 1) * d].iter().zip(y).map(|(&a, &b)| a as i128 * b as i128).sum())
                .collect()
        };
        let re = mul(&self.re);
        let im = self.im.as_ref().map_or_else(|| vec![0; d], |m| mul(m));
        (re, im)
    }

    /// `P · y` with exact rational entries (real part only; use
    /// `apply_scaled` for complex projectors).
    pub fn apply(&self, y: &[i64]) -> Vec<Ratio<i64>> {
        self.apply_scaled(y).0.into_iter().map(|v| Ratio::new(v as i64, self.den)).collect()
    }

    pub fn annihilates(&self, y: &[i64]) -> bool {
        let (re, im) = self.apply_scaled(y);
        re.iter().chain(&im).all(|&v| v == 0)
    }

    fn rescaled(&self, den: i64) -> (Vec<i64>, Option<Vec<i64>>) {
        let f = den / self.den;
        (
            self.re.iter().map(|v| v * f).collect(),
            self.im.as_ref().map(|m| m.iter().map(|v| v * f).collect()),
        )
    }

    pub fn plus(&self, other: &Projector) -> Result<Projector> {
        if self.dim != other.dim {
            return input("projectors act on different spaces");
        }
        let den = self.den.lcm(&other.den);
        let (a_re, a_im) = self.rescaled(den);
        let (b_re, b_im) = other.rescaled(den);
        let re = a_re.iter().zip(&b_re).map(|(x, y)| x + y).collect();
        let im = match (a_im, b_im) {
            (None, None) => None,
            (Some(m), None) | (None, Some(m)) => Some(m),
            (Some(a), Some(b)) => Some(a.iter().zip(&b).map(|(x, y)| x + y).collect()),
        };
        Projector::new(self.dim, den, re, im)
    }

    /// Whether `P · Q = 0`.
    pub fn orthogonal_to(&self, other: &Projector) -> bool {
        let d = self.dim;
        let zero = vec![0i64; d * d];
        let (a, b) = (self.im.as_deref().unwrap_or(&zero), other.im.as_deref().unwrap_or(&zero));
        let rr = matmul(&self.re, &other.re, d);
        let ii = matmul(a, b, d);
        let ri = matmul(&self.re, b, d);
        let ir = matmul(a, &other.re, d);
        (0..d * d).all(|t| rr[t] == ii[t] && ri[t] + ir[t] == 0)
    }

    pub fn is_identity(&self) -> bool {
        let d = self.dim;
        self.is_real()
            && (0..d).all(|i| (0..d).all(|j| self.re[i * d + j] == if i == j { self.den } else { 0 }))
    }

    pub fn to_export(&self) -> ProjectorExport {
        let fmt = |v: &i64| Ratio::new(*v, self.den).to_string();
        ProjectorExport {
            dim: self.dim,
            rank: self.rank,
            re: self.re.iter().map(fmt).collect(),
            im: self.im.as_ref().map(|m| m.iter().map(fmt).collect()),
        }
    }
}

/// JSON form: row-major entries as `"p/q"` strings.
#[derive(Debug, Clone, Serialize)]
pub struct ProjectorExport {
    pub dim: usize,
    pub rank: usize,
    pub re: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<String>>,
}

/// A list of projectors claimed to be an irreducible decomposition,
/// with the multiplicity-free flag Methods 1 and 2 depend on.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub projectors: Vec<Projector>,
    pub multiplicity_free: bool,
}

impl Decomposition {
    pub fn ranks(&self) -> Vec<usize> {
        self.projectors.iter().map(Projector::rank).collect()
    }

    /// Whether the projectors sum to the identity.
    pub fn is_complete(&self) -> Result<bool> {
        let mut it = self.projectors.iter();
        let Some(first) = it.next() else {
            return Ok(false);
        };
        let mut total = first.clone();
        for p in it {
            total = total.plus(p)?;
        }
        Ok(total.is_identity())
    }
}

fn check_ambient(n: usize, k: usize, cap: usize) -> Result<TupleSpace> {
    let space = TupleSpace::new(n, k)?;
    if space.size() > cap {
        return Err(Error::Resource(format!("ambient dimension {} exceeds {cap}", space.size())));
    }
    Ok(space)
}

/// `P_{U_r}` for `r = 0..=k`, where `U_r` is the span of all interaction
/// blocks of order `r`.
///
/// `n^k P_{U_r}[a][b] = Σ_{|u|=r} Π_{c∈u} (n·[a_c = b_c] - 1)` depends only on
/// the Hamming distance `d(a, b)`; with `e = k - d` agreeing columns it is
/// the Krawtchouk sum `Σ_j C(e, j)(n-1)^j C(d, r-j)(-1)^{r-j}`.
pub fn build_u_projectors(n: usize, k: usize) -> Result<Vec<Projector>> {
    build_u_projectors_capped(n, k, DEFAULT_AMBIENT_CAP)
}

pub fn build_u_projectors_capped(n: usize, k: usize, cap: usize) -> Result<Vec<Projector>> {
    let space = check_ambient(n, k, cap)?;
    let size = space.size();
    let choose = |m: usize, j: usize| binomial_u64(m, j).expect("small binomial") as i64;
    let krawtchouk = |r: usize, d: usize| -> i64 {
        let e = k - d;
        (0..=r)
            .filter(|&j| j <= e && r - j <= d)
            .map(|j| {
                let sign = if (r - j).is_multiple_of(2) { 1 } else { -1 };
                choose(e, j) * (n as i64 - 1).pow(j as u32) * choose(d, r - j) * sign
            })
            .sum()
    };
    let den = size as i64;
    let mut dist = vec![0u8; size * size];
    for a in 0..size {
        for b in 0..size {
            dist[a * size + b] = space.hamming(a, b) as u8;
        }
    }
    (0..=k)
        .map(|r| {
            let table: Vec<i64> = (0..=k).map(|d| krawtchouk(r, d)).collect();
            let re = dist.iter().map(|&d| table[d as usize]).collect();
            Projector::new(size, den, re, None)
        })
        .collect()
}

/// `P_{W_0} = P_{U_0}` and `P_{W_j} = P_{U_{2j-1}} + P_{U_{2j}}` for
/// `j = 1..=⌈k/2⌉`, with `U_{k+1}` empty (`n = 2`).
pub fn build_w_projectors(k: usize) -> Result<Vec<Projector>> {
    let u = build_u_projectors(2, k)?;
    let mut w = vec![u[0].clone()];
    for j in 1..=k.div_ceil(2) {
        let odd = &u[2 * j - 1];
        w.push(match u.get(2 * j) {
            Some(even) => odd.plus(even)?,
            None => odd.clone(),
        });
    }
    Ok(w)
}

/// Projector onto the vectors constant on every orbit: `E_ij = 1/|O|`
/// when `i` and `j` share orbit `O`.
pub fn fixed_subspace_projector(orbits: &OrbitPartition) -> Result<Projector> {
    let size = orbits.size;
    if size > DEFAULT_AMBIENT_CAP {
        return Err(Error::Resource(format!("ambient dimension {size} exceeds {DEFAULT_AMBIENT_CAP}")));
    }
    let den = orbits.sizes().iter().fold(1i64, |acc, &s| acc.lcm(&(s as i64)));
    let mut re = vec![0i64; size * size];
    for class in &orbits.classes {
        let v = den / class.len() as i64;
        for &i in class {
            for &j in class {
                re[i * size + j] = v;
            }
        }
    }
    Projector::new(size, den, re, None)
}

/// Method 1: real irreducible projectors from a multiplicity-free complex
/// decomposition. Real inputs pass through; every other input must pair
/// with a distinct input of equal rank whose sum is real.
pub fn method1_real_from_complex(decomposition: &Decomposition) -> Result<Vec<Projector>> {
    if !decomposition.multiplicity_free {
        return Err(Error::Precondition("decomposition is not multiplicity-free".into()));
    }
    let ps = &decomposition.projectors;
    let mut out = Vec::new();
    let mut used = vec![false; ps.len()];
    for (i, p) in ps.iter().enumerate() {
        if p.is_real() {
            used[i] = true;
            out.push(p.clone());
        }
    }
    for i in 0..ps.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut partner = None;
        for j in i + 1..ps.len() {
            if !used[j] && ps[j].rank == ps[i].rank {
                let sum = ps[i].plus(&ps[j])?;
                if sum.is_real() {
                    partner = Some((j, sum));
                    break;
                }
            }
        }
        let Some((j, sum)) = partner else {
            return Err(Error::Inconsistent(format!(
                "projector {i} is neither real nor paired with a conjugate of equal rank"
            )));
        };
        used[j] = true;
        out.push(sum);
    }
    Ok(out)
}

/// Indices `r` with `P_r y ≠ 0` for some translated point
/// `y = n^k x - N·1` (the scaling by `n^k` keeps `y` integral).
pub fn invariant_span_components(
    points: &[FrequencyVector],
    decomposition: &[Projector],
) -> Result<BTreeSet<usize>> {
    let Some(first) = points.first() else {
        return input("no points given");
    };
    let dim = first.counts().len();
    if decomposition.iter().any(|p| p.dim != dim) {
        return input("projector dimension differs from the point space");
    }
    let mut hit = BTreeSet::new();
    for x in points {
        if x.counts().len() != dim {
            return input("points live in different spaces");
        }
        let total = x.total() as i64;
        let y: Vec<i64> = x.counts().iter().map(|&c| dim as i64 * c as i64 - total).collect();
        for (r, p) in decomposition.iter().enumerate() {
            if !hit.contains(&r) && !p.annihilates(&y) {
                hit.insert(r);
            }
        }
    }
    Ok(hit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anova::{anova_transform, SubsetMask};
    use crate::groups::{generator_permutations, iso_generators, od_generators};

    /// `n^k ⊗_c M_{ε_c}` with `n M_0 = all-ones`, `n M_1 = nI - all-ones`,
    /// summed over `|u| = r`, by explicit Kronecker products.
    fn kron_u(n: usize, k: usize, r: usize) -> Vec<i64> {
        let m0 = vec![1i64; n * n];
        let m1: Vec<i64> = (0..n * n).map(|t| if t / n == t % n { n as i64 - 1 } else { -1 }).collect();
        let kron = |a: &[i64], da: usize, b: &[i64], db: usize| -> Vec<i64> {
            let d = da * db;
            let mut out = vec![0; d * d];
            for i in 0..d {
                for j in 0..d {
                    out[i * d + j] = a[(i / db) * da + j / db] * b[(i % db) * db + j % db];
                }
            }
            out
        };
        let size = n.pow(k as u32);
        let mut total = vec![0i64; size * size];
        for u in SubsetMask::of_size(k, r) {
            let mut acc = vec![1i64];
            let mut da = 1;
            for c in 0..k {
                acc = kron(&acc, da, if u.contains(c) { &m1 } else { &m0 }, n);
                da *= n;
            }
            for (t, v) in total.iter_mut().zip(acc) {
                *t += v;
            }
        }
        total
    }

    #[test]
    fn u_ranks() {
        let ranks = |n, k| build_u_projectors(n, k).unwrap().iter().map(|p| p.rank()).collect::<Vec<_>>();
        assert_eq!(ranks(2, 2), vec![1, 2, 1]);
        assert_eq!(ranks(3, 2), vec![1, 4, 4]);
        let u0 = &build_u_projectors(3, 2).unwrap()[0];
        assert!((0..9).all(|i| (0..9).all(|j| u0.entry(i, j) == (Ratio::new(1, 9), Ratio::from(0)))));
    }

    #[test]
    fn closed_form_matches_kronecker_products() {
        for (n, k) in [(2, 1), (2, 3), (3, 2), (3, 3), (4, 2), (2, 5)] {
            let ps = build_u_projectors(n, k).unwrap();
            let den = n.pow(k as u32) as i64;
            for (r, p) in ps.iter().enumerate() {
                let (re, _) = p.rescaled(den);
                assert_eq!(re, kron_u(n, k, r), "(n, k, r) = ({n}, {k}, {r})");
            }
        }
    }

    #[test]
    fn u_suite() {
        for (n, k) in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1), (3, 2), (3, 3), (3, 4)] {
            let ps = build_u_projectors(n, k).unwrap();
            let space = TupleSpace::new(n, k).unwrap();
            let gens = generator_permutations(&iso_generators(n, k), &space).unwrap();
            let dec = Decomposition { projectors: ps.clone(), multiplicity_free: true };
            assert!(dec.is_complete().unwrap());
            for (r, p) in ps.iter().enumerate() {
                assert!(p.is_idempotent() && p.is_hermitian());
                assert_eq!(p.rank() as u64, binomial_u64(k, r).unwrap() * (n as u64 - 1).pow(r as u32));
                assert!(gens.iter().all(|g| p.commutes_with(g)));
            }
            if k <= 3 {
                assert!(ps[0].orthogonal_to(&ps[k]));
            }
        }
    }

    #[test]
    fn w_suite() {
        let dims = |k| build_w_projectors(k).unwrap().iter().map(|p| p.rank()).collect::<Vec<_>>();
        assert_eq!(dims(3), vec![1, 6, 1]);
        assert_eq!(dims(4), vec![1, 10, 5]);
        assert_eq!(dims(2), vec![1, 3]);
        for k in 1..=6 {
            let ws = build_w_projectors(k).unwrap();
            let space = TupleSpace::new(2, k).unwrap();
            let gens = generator_permutations(&od_generators(k), &space).unwrap();
            let dec = Decomposition { projectors: ws.clone(), multiplicity_free: true };
            assert!(dec.is_complete().unwrap());
            for p in &ws {
                assert!(p.is_idempotent());
                assert!(gens.iter().all(|g| p.commutes_with(g)), "k = {k}");
            }
        }
        // U_1 alone is not OD-invariant once k ≥ 2.
        let u1 = &build_u_projectors(2, 3).unwrap()[1];
        let gens = generator_permutations(&od_generators(3), &TupleSpace::new(2, 3).unwrap()).unwrap();
        assert!(!gens.iter().all(|g| u1.commutes_with(g)));
    }

    #[test]
    fn projection_reproduces_anova_blocks() {
        let x = FrequencyVector::new(3, 3, (0..27).map(|i| (i * 7 % 5) as u64).collect()).unwrap();
        let jv = anova_transform(&x).unwrap();
        let counts: Vec<i64> = x.counts().iter().map(|&c| c as i64).collect();
        for (r, p) in build_u_projectors(3, 3).unwrap().iter().enumerate() {
            let mut expect = vec![Ratio::from(0); 27];
            for u in SubsetMask::of_size(3, r) {
                for (e, &v) in expect.iter_mut().zip(jv.block(u)) {
                    *e += Ratio::new(v, 27);
                }
            }
            assert_eq!(p.apply(&counts), expect);
        }
    }

    #[test]
    fn fixed_subspace_examples() {
        let singletons = OrbitPartition::new(3, vec![vec![0], vec![1], vec![2]]).unwrap();
        assert!(fixed_subspace_projector(&singletons).unwrap().is_identity());
        let one = OrbitPartition::new(4, vec![vec![0, 1, 2, 3]]).unwrap();
        let p = fixed_subspace_projector(&one).unwrap();
        assert_eq!(p.entry(2, 3).0, Ratio::new(1, 4));
        assert_eq!(p.rank(), 1);
        let two = OrbitPartition::new(5, vec![vec![0, 3], vec![1, 2, 4]]).unwrap();
        let p = fixed_subspace_projector(&two).unwrap();
        assert!(p.is_idempotent());
        assert_eq!(p.rank(), 2);
        assert_eq!(p.entry(0, 3).0, Ratio::new(1, 2));
        assert_eq!(p.entry(1, 4).0, Ratio::new(1, 3));
        assert_eq!(p.entry(0, 1).0, Ratio::from(0));
    }

    /// Fourier projectors of the cyclic shift on C^4: `P_j[a][b] = i^{j(a-b)}/4`.
    fn cyclic4() -> Vec<Projector> {
        (0..4)
            .map(|j| {
                let mut re = vec![0; 16];
                let mut im = vec![0; 16];
                for a in 0..4 {
                    for b in 0..4 {
                        match (j * (4 + a - b)) % 4 {
                            0 => re[a * 4 + b] = 1,
                            1 => im[a * 4 + b] = 1,
                            2 => re[a * 4 + b] = -1,
                            _ => im[a * 4 + b] = -1,
                        }
                    }
                }
                Projector::new(4, 4, re, Some(im)).unwrap()
            })
            .collect()
    }

    #[test]
    fn complex_projectors() {
        let ps = cyclic4();
        assert!(ps[0].is_real() && ps[2].is_real() && !ps[1].is_real() && !ps[3].is_real());
        for p in &ps {
            assert!(p.is_idempotent() && p.is_hermitian() && p.rank() == 1);
        }
        assert!(ps[1].orthogonal_to(&ps[3]));
        let dec = Decomposition { projectors: ps.clone(), multiplicity_free: true };
        let real = method1_real_from_complex(&dec).unwrap();
        assert_eq!(real.iter().map(|p| p.rank()).collect::<Vec<_>>(), vec![1, 1, 2]);
        assert!(real.iter().all(|p| p.is_real() && p.is_idempotent()));
        let total = real[1..].iter().try_fold(real[0].clone(), |acc, p| acc.plus(p)).unwrap();
        assert!(total.is_identity());

        let lonely = Decomposition { projectors: vec![ps[0].clone(), ps[1].clone()], multiplicity_free: true };
        assert!(matches!(method1_real_from_complex(&lonely), Err(Error::Inconsistent(_))));
        let repeated = Decomposition { projectors: ps, multiplicity_free: false };
        assert!(matches!(method1_real_from_complex(&repeated), Err(Error::Precondition(_))));
    }

    #[test]
    fn method1_keeps_real_inputs() {
        let us = build_u_projectors(2, 3).unwrap();
        let dec = Decomposition { projectors: us.clone(), multiplicity_free: true };
        assert_eq!(method1_real_from_complex(&dec).unwrap(), us);
    }

    #[test]
    fn span_components() {
        let us = build_u_projectors(2, 3).unwrap();
        let uniform = FrequencyVector::new(2, 3, vec![1; 8]).unwrap();
        assert!(invariant_span_components(&[uniform], &us).unwrap().is_empty());
        let pair = [
            FrequencyVector::new(2, 3, vec![1, 0, 0, 1, 0, 1, 1, 0]).unwrap(),
            FrequencyVector::new(2, 3, vec![0, 1, 1, 0, 1, 0, 0, 1]).unwrap(),
        ];
        assert_eq!(invariant_span_components(&pair, &us).unwrap(), BTreeSet::from([3]));

        let perms: Vec<FrequencyVector> = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
            .iter()
            .map(|s| {
                let mut c = vec![0; 9];
                for (i, &j) in s.iter().enumerate() {
                    c[i * 3 + j] = 1;
                }
                FrequencyVector::new(3, 2, c).unwrap()
            })
            .collect();
        let us = build_u_projectors(3, 2).unwrap();
        let comps = invariant_span_components(&perms, &us).unwrap();
        assert_eq!(comps, BTreeSet::from([2]));
        assert_eq!(comps.iter().map(|&r| us[r].rank()).sum::<usize>(), 4);
        assert!(invariant_span_components(&[], &us).is_err());
    }

    #[test]
    fn ambient_cap() {
        assert!(matches!(build_u_projectors_capped(3, 3, 26), Err(Error::Resource(_))));
    }

    #[test]
    fn export_uses_fractions() {
        let p = &build_u_projectors(2, 1).unwrap()[1];
        let e = p.to_export();
        assert_eq!(e.re, vec!["1/2", "-1/2", "-1/2", "1/2"]);
        assert!(serde_json::to_string(&e).unwrap().contains("\"rank\":1"));
    }
}
