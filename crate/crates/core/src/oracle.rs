//! Brute-force ground truth at desk scale.
//!
//! The enumerator assigns counts cell by cell and keeps every `s`-margin as
//! a running sum. A branch dies as soon as some margin exceeds `λ` or can no
//! longer reach it with the cells it has left. Everything else in this crate
//! is checked against what this finds.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::anova::{anova_transform, check_strength_j, congruence_report, SubsetMask};
use crate::arrays::{check_strength_direct, FrequencyVector, OAParams, TupleSpace};
use crate::combin::subsets_of_size;
use crate::dims::{block_rank, candidate_dims, DimMode, ModeSelect};
use crate::error::{input, Error, Result};
use crate::groups::{act_on_frequency, generator_permutations, iso_generators, od_generators};
use crate::linalg::independent_rows;

/// Search limits and scheduling.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
    /// Largest accepted `n^k`.
    pub max_cells: usize,
    /// Largest accepted run count `N`.
    pub max_runs: u64,
    /// Order in which cells are assigned; defaults to rank order.
    pub variable_order: Option<Vec<usize>>,
    pub workers: usize,
    /// Depth at which subtrees are handed to workers.
    pub split_depth: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_nodes: None,
            max_time: None,
            max_cells: 256,
            max_runs: 24,
            variable_order: None,
            workers: 1,
            split_depth: 6,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EnumerationResult {
    pub params: OAParams,
    /// Sorted; when `complete`, exactly the feasible set.
    pub solutions: Vec<FrequencyVector>,
    pub complete: bool,
    pub node_count: u64,
}

/// Shared search tables: which margins each cell feeds.
struct Model {
    lambda: u64,
    p_max: u64,
    order: Vec<usize>,
    margins_of: Vec<Vec<usize>>,
    margin_count: usize,
    free_per_margin: u64,
}

#[derive(Clone)]
struct State {
    depth: usize,
    counts: Vec<u64>,
    partial: Vec<u64>,
    remaining: Vec<u64>,
}

struct Budget {
    nodes: AtomicU64,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    stop: AtomicBool,
}

impl Budget {
    /// Counts a node; false once any limit is hit.
    fn tick(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let seen = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = self.max_nodes.is_some_and(|m| seen > m);
        let over_time = seen.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

impl Model {
    fn new(params: &OAParams, order: Vec<usize>) -> Result<Self> {
        let space = params.space()?;
        let (n, k, s) = (params.n, params.k, params.s);
        let subsets = subsets_of_size(k, s);
        let per = n.pow(s as u32);
        let margins_of = (0..space.size())
            .map(|r| {
                subsets
                    .iter()
                    .enumerate()
                    .map(|(i, cols)| i * per + cols.iter().fold(0, |acc, &c| acc * n + space.digit(r, c)))
                    .collect()
            })
            .collect();
        Ok(Model {
            lambda: params.lambda,
            p_max: params.p_max,
            order,
            margins_of,
            margin_count: subsets.len() * per,
            free_per_margin: n.pow((k - s) as u32) as u64,
        })
    }

    fn root(&self) -> State {
        State {
            depth: 0,
            counts: vec![0; self.margins_of.len()],
            partial: vec![0; self.margin_count],
            remaining: vec![self.free_per_margin; self.margin_count],
        }
    }

    /// Values the next cell may take without breaking a margin.
    fn choices(&self, st: &State) -> Vec<u64> {
        let cell = self.order[st.depth];
        let margins = &self.margins_of[cell];
        let hi = margins.iter().map(|&m| self.lambda - st.partial[m]).fold(self.p_max, u64::min);
        (0..=hi)
            .filter(|&v| {
                margins.iter().all(|&m| self.lambda - st.partial[m] - v <= (st.remaining[m] - 1) * self.p_max)
            })
            .collect()
    }

    fn assign(&self, st: &mut State, v: u64) {
        let cell = self.order[st.depth];
        for &m in &self.margins_of[cell] {
            st.partial[m] += v;
            st.remaining[m] -= 1;
        }
        st.counts[cell] = v;
        st.depth += 1;
    }

    fn unassign(&self, st: &mut State, v: u64) {
        st.depth -= 1;
        let cell = self.order[st.depth];
        for &m in &self.margins_of[cell] {
            st.partial[m] -= v;
            st.remaining[m] += 1;
        }
        st.counts[cell] = 0;
    }

    fn search(&self, st: &mut State, budget: &Budget, out: &mut Vec<Vec<u64>>) -> bool {
        if !budget.tick() {
            return false;
        }
        if st.depth == self.order.len() {
            out.push(st.counts.clone());
            return true;
        }
        for v in self.choices(st) {
            self.assign(st, v);
            let ok = self.search(st, budget, out);
            self.unassign(st, v);
            if !ok {
                return false;
            }
        }
        true
    }

    /// Feasible partial states at `depth`, breadth-first. `None` when the
    /// budget ran out.
    fn frontier(&self, depth: usize, budget: &Budget) -> Option<Vec<State>> {
        let mut level = vec![self.root()];
        for _ in 0..depth.min(self.order.len()) {
            let mut next = Vec::new();
            for st in &level {
                if !budget.tick() {
                    return None;
                }
                for v in self.choices(st) {
                    let mut child = st.clone();
                    self.assign(&mut child, v);
                    next.push(child);
                }
            }
            level = next;
        }
        Some(level)
    }
}

/// Every frequency vector of an `OA(λn^s, k, n, s)` with counts at most
/// `p_max`, subject to the budget.
pub fn enumerate_all(params: &OAParams, opts: &SearchOptions) -> Result<EnumerationResult> {
    params.validate()?;
    let cells = params.cells()?;
    if cells > opts.max_cells {
        return Err(Error::Resource(format!("n^k = {cells} exceeds the limit of {}", opts.max_cells)));
    }
    if params.runs() > opts.max_runs {
        return Err(Error::Resource(format!("N = {} exceeds the limit of {}", params.runs(), opts.max_runs)));
    }
    let order = match &opts.variable_order {
        Some(o) => {
            let mut sorted = o.clone();
            sorted.sort_unstable();
            if sorted != (0..cells).collect::<Vec<_>>() {
                return input("variable order is not a permutation of the cells");
            }
            o.clone()
        }
        None => (0..cells).collect(),
    };
    let model = Model::new(params, order)?;
    let budget = Budget {
        nodes: AtomicU64::new(0),
        max_nodes: opts.max_nodes,
        deadline: opts.max_time.map(|t| Instant::now() + t),
        stop: AtomicBool::new(false),
    };

    let mut found = Vec::new();
    let mut complete;
    if opts.workers <= 1 {
        let mut st = model.root();
        complete = model.search(&mut st, &budget, &mut found);
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .map_err(|e| Error::Resource(e.to_string()))?;
        match model.frontier(opts.split_depth, &budget) {
            None => complete = false,
            Some(level) => {
                let parts: Vec<(bool, Vec<Vec<u64>>)> = pool.install(|| {
                    level
                        .into_par_iter()
                        .map(|mut st| {
                            let mut out = Vec::new();
                            let ok = model.search(&mut st, &budget, &mut out);
                            (ok, out)
                        })
                        .collect()
                });
                complete = true;
                for (ok, mut out) in parts {
                    complete &= ok;
                    found.append(&mut out);
                }
            }
        }
    }
    complete &= !budget.stop.load(Ordering::Relaxed);
    let mut solutions = found
        .into_iter()
        .map(|c| FrequencyVector::new(params.n, params.k, c))
        .collect::<Result<Vec<_>>>()?;
    solutions.sort();
    solutions.dedup();
    Ok(EnumerationResult {
        params: *params,
        solutions,
        complete,
        node_count: budget.nodes.load(Ordering::Relaxed),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineDimResult {
    pub dimension: usize,
    /// Independent differences `x_i - x_0`.
    pub witness_basis: Vec<Vec<i64>>,
}

/// Exact dimension of the affine hull of the points.
pub fn affine_dimension(solutions: &[FrequencyVector]) -> Result<AffineDimResult> {
    let Some(first) = solutions.first() else {
        return input("affine dimension of an empty set");
    };
    let base: Vec<i64> = first.counts().iter().map(|&c| c as i64).collect();
    let diffs: Vec<Vec<i64>> = solutions[1..]
        .iter()
        .map(|x| {
            if x.counts().len() != base.len() {
                return input("points live in different spaces");
            }
            Ok(x.counts().iter().zip(&base).map(|(&c, b)| c as i64 - b).collect())
        })
        .collect::<Result<_>>()?;
    let picked = independent_rows(&diffs);
    Ok(AffineDimResult {
        dimension: picked.len(),
        witness_basis: picked.into_iter().map(|i| diffs[i].clone()).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    /// Nonempty column sets whose J-block is zero on every solution.
    pub sets: Vec<Vec<usize>>,
    /// Orders `r ≥ 1` at which every block vanishes.
    pub full_sizes: Vec<usize>,
    /// Orders at which some but not all blocks vanish.
    pub partial_sizes: Vec<usize>,
    pub full_size_classes: bool,
    /// For `n = 2`, even `s`: whether the vanishing orders above `s` come in
    /// the pairs `{2j-1, 2j}`.
    pub paired_classes: Option<bool>,
}

pub fn vanishing_blocks(solutions: &[FrequencyVector], params: &OAParams) -> Result<VanishingReport> {
    let k = params.k;
    let mut vanish = vec![true; 1 << k];
    vanish[0] = false;
    for x in solutions {
        if x.n() != params.n || x.k() != k {
            return Err(Error::ParamMismatch("solution does not match the parameters".into()));
        }
        let jv = anova_transform(x)?;
        for (m, v) in vanish.iter_mut().enumerate().skip(1) {
            *v = *v && jv.block_is_zero(SubsetMask(m as u32));
        }
    }
    let sets: Vec<Vec<usize>> = SubsetMask::h_order(k)
        .into_iter()
        .filter(|u| vanish[u.0 as usize])
        .map(|u| u.columns())
        .collect();
    let (mut full_sizes, mut partial_sizes) = (Vec::new(), Vec::new());
    for r in 1..=k {
        let hits = SubsetMask::of_size(k, r).iter().filter(|u| vanish[u.0 as usize]).count();
        if hits == crate::combin::binomial_u64(k, r).unwrap_or(0) as usize {
            full_sizes.push(r);
        } else if hits > 0 {
            partial_sizes.push(r);
        }
    }
    let paired_classes = (params.n == 2 && params.s.is_multiple_of(2)).then(|| {
        let above: BTreeSet<usize> = full_sizes.iter().copied().filter(|&r| r > params.s).collect();
        above.iter().all(|&r| {
            let mate = if r % 2 == 1 { r + 1 } else { r - 1 };
            mate > k || above.contains(&mate)
        })
    });
    Ok(VanishingReport {
        sets,
        full_sizes,
        full_size_classes: partial_sizes.is_empty(),
        partial_sizes,
        paired_classes,
    })
}

/// One named check of a certification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub params: OAParams,
    pub complete: bool,
    pub solution_count: usize,
    pub node_count: u64,
    pub dimension: Option<usize>,
    pub mode: DimMode,
    pub omega: Vec<usize>,
    pub candidates: Vec<u64>,
    pub vanishing: VanishingReport,
    /// The offsets of `Ω` whose blocks vanish on every solution.
    pub realized_t: Vec<usize>,
    pub checks: Vec<Check>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.complete && self.checks.iter().all(|c| c.pass)
    }

    /// One line: the dimension, the realized `T`, and the interaction
    /// orders the solutions span.
    pub fn summary(&self) -> String {
        let dim = self.dimension.map_or("none".to_string(), |d| d.to_string());
        let t: Vec<String> = self.realized_t.iter().map(usize::to_string).collect();
        let kept: Vec<String> = (self.params.s + 1..=self.params.k)
            .filter(|r| !self.vanishing.full_sizes.contains(r))
            .map(|r| format!("U_{r}"))
            .collect();
        let span = if kept.is_empty() { "nothing".to_string() } else { kept.join(" + ") };
        format!("dim={dim}, T={{{}}}, span {span}", t.join(","))
    }
}

/// Enumerates, measures and checks every structural claim against the
/// solutions: strength, congruences, dimension membership, vanishing
/// structure and closure under the symmetry groups. An empty solution set
/// passes the solution-wise checks vacuously.
pub fn certify(params: &OAParams, opts: &SearchOptions) -> Result<Certificate> {
    let result = enumerate_all(params, opts)?;
    let sols = &result.solutions;
    let report = candidate_dims(params, ModeSelect::Auto)?;
    let general = candidate_dims(params, ModeSelect::Force(DimMode::General))?;
    let mut checks = Vec::new();
    let mut check = |name: &str, pass: bool, detail: String| {
        checks.push(Check { name: name.to_string(), pass, detail });
    };

    let strength_ok = sols.iter().all(|x| check_strength_direct(x, params.s).unwrap_or(false));
    check("strength", strength_ok, format!("{} solutions", sols.len()));

    let mut violations = 0;
    for x in sols {
        let jv = anova_transform(x)?;
        if !check_strength_j(&jv, params.s) {
            violations += 1;
            continue;
        }
        violations += congruence_report(&jv, params)?.violations().count();
    }
    check("congruence", violations == 0, format!("{violations} violations"));

    let dimension = match sols.is_empty() {
        true => None,
        false => Some(affine_dimension(sols)?.dimension),
    };
    let vanishing = vanishing_blocks(sols, params)?;
    let above: Vec<usize> = vanishing.full_sizes.iter().copied().filter(|&r| r > params.s).collect();
    let realized_t: Vec<usize> = match report.mode {
        DimMode::General => above.iter().map(|r| r - params.s).collect(),
        DimMode::N2EvenS => above.iter().filter(|&&r| (r - params.s) % 2 == 1).map(|r| r - params.s - 1).collect(),
    };

    if let Some(d) = dimension {
        check("dimension in candidates", report.contains(d as u64), format!("{d} in {:?}", report.dimensions));
        check(
            "dimension in general candidates",
            general.contains(d as u64),
            format!("{d} in {:?}", general.dimensions),
        );
        let predicted = (params.s + 1..=params.k)
            .filter(|r| !above.contains(r))
            .try_fold(0u64, |acc, r| block_rank(params.n, params.k, r).map(|b| acc + b))?;
        check(
            "dimension matches vanishing blocks",
            predicted == d as u64,
            format!("blocks left give {predicted}"),
        );
        check(
            "full size classes",
            vanishing.full_size_classes,
            format!("partial orders {:?}", vanishing.partial_sizes),
        );
        let strength_sizes = (1..=params.s).all(|r| vanishing.full_sizes.contains(&r));
        check("strength blocks vanish", strength_sizes, format!("vanishing orders {:?}", vanishing.full_sizes));
        let t_in_omega = realized_t.iter().all(|t| report.omega.contains(t));
        check("realized T within Omega", t_in_omega, format!("T = {realized_t:?}, Ω = {:?}", report.omega));
        if let Some(paired) = vanishing.paired_classes {
            check("paired classes", paired, format!("vanishing orders {:?}", vanishing.full_sizes));
        }
    }

    let space = TupleSpace::new(params.n, params.k)?;
    let set: BTreeSet<&FrequencyVector> = sols.iter().collect();
    let closed_under = |gens: &[Vec<usize>]| -> Result<bool> {
        for x in sols {
            for g in gens {
                if !set.contains(&act_on_frequency(g, x)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    };
    let iso = generator_permutations(&iso_generators(params.n, params.k), &space)?;
    check("closed under paratopisms", closed_under(&iso)?, format!("{} generators", iso.len()));
    if params.n == 2 && params.s.is_multiple_of(2) {
        let od = generator_permutations(&od_generators(params.k), &space)?;
        check("closed under OD operations", closed_under(&od)?, format!("{} generators", od.len()));
    }

    Ok(Certificate {
        params: *params,
        complete: result.complete,
        solution_count: sols.len(),
        node_count: result.node_count,
        dimension,
        mode: report.mode,
        omega: report.omega,
        candidates: report.dimensions,
        vanishing,
        realized_t,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(n: usize, k: usize, s: usize, lambda: u64) -> OAParams {
        OAParams::new(n, k, s, lambda).unwrap()
    }

    fn run(params: OAParams) -> EnumerationResult {
        enumerate_all(&params, &SearchOptions::default()).unwrap()
    }

    #[test]
    fn small_counts() {
        let r = run(p(2, 3, 2, 1));
        assert!(r.complete);
        assert_eq!(r.solutions.len(), 2);
        assert_eq!(r.solutions[0].counts(), &[0, 1, 1, 0, 1, 0, 0, 1]);
        assert_eq!(run(p(2, 4, 3, 1)).solutions.len(), 2);
        assert_eq!(run(p(3, 2, 1, 1)).solutions.len(), 6);
        assert_eq!(run(p(3, 3, 1, 1)).solutions.len(), 36);
        // k = s: only the full factorial
        let r = run(p(2, 3, 3, 1));
        assert_eq!(r.solutions.len(), 1);
        assert_eq!(r.solutions[0].counts(), &[1; 8]);
    }

    #[test]
    fn capped_counts() {
        // OA(4, 2, 2, 1): 2x2 count matrices with row and column sums 2
        assert_eq!(run(p(2, 2, 1, 2)).solutions.len(), 3);
        let capped = enumerate_all(&p(2, 2, 1, 2).with_p_max(1).unwrap(), &SearchOptions::default()).unwrap();
        assert_eq!(capped.solutions.len(), 1);
    }

    #[test]
    fn limits() {
        assert!(matches!(
            enumerate_all(&p(3, 6, 1, 1), &SearchOptions::default()),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            enumerate_all(&p(2, 6, 5, 1), &SearchOptions::default()),
            Err(Error::Resource(_))
        ));
        let opts = SearchOptions { max_nodes: Some(20), ..SearchOptions::default() };
        let r = enumerate_all(&p(3, 3, 1, 1), &opts).unwrap();
        assert!(!r.complete);
        assert!(r.solutions.len() < 36);
    }

    #[test]
    fn order_and_workers_do_not_matter() {
        let params = p(3, 3, 1, 1);
        let base = run(params);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..4 {
            let mut order: Vec<usize> = (0..27).collect();
            order.shuffle(&mut rng);
            let opts = SearchOptions { variable_order: Some(order), ..SearchOptions::default() };
            assert_eq!(enumerate_all(&params, &opts).unwrap().solutions, base.solutions);
        }
        for (workers, split_depth) in [(2, 1), (4, 5), (3, 40)] {
            let opts = SearchOptions { workers, split_depth, ..SearchOptions::default() };
            let r = enumerate_all(&params, &opts).unwrap();
            assert!(r.complete);
            assert_eq!(r.solutions, base.solutions);
        }
        let bad = SearchOptions { variable_order: Some(vec![0, 0, 1]), ..SearchOptions::default() };
        assert!(enumerate_all(&p(2, 2, 1, 1), &bad).is_err());
    }

    /// Every count vector with entries in 0..=p_max and the right total,
    /// filtered by the direct strength check.
    fn brute_force(params: &OAParams) -> Vec<FrequencyVector> {
        let cells = params.cells().unwrap();
        let base = params.p_max + 1;
        let mut out = Vec::new();
        for code in 0..base.pow(cells as u32) {
            let mut c = code;
            let counts: Vec<u64> = (0..cells)
                .map(|_| {
                    let d = c % base;
                    c /= base;
                    d
                })
                .collect();
            if counts.iter().sum::<u64>() != params.runs() {
                continue;
            }
            let fv = FrequencyVector::new(params.n, params.k, counts).unwrap();
            if check_strength_direct(&fv, params.s).unwrap() {
                out.push(fv);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn agrees_with_exhaustive_filter() {
        for params in [p(2, 3, 1, 1), p(2, 3, 2, 1), p(2, 2, 1, 2), p(3, 2, 1, 1), p(2, 3, 1, 2), p(2, 4, 2, 1)] {
            assert_eq!(run(params).solutions, brute_force(&params), "{params:?}");
        }
    }

    #[test]
    fn affine_dimensions() {
        let two = run(p(2, 3, 2, 1)).solutions;
        assert_eq!(affine_dimension(&two).unwrap().dimension, 1);
        assert_eq!(affine_dimension(&run(p(3, 2, 1, 1)).solutions).unwrap().dimension, 4);
        assert_eq!(affine_dimension(&two[..1]).unwrap().dimension, 0);
        assert!(affine_dimension(&[]).is_err());
        let r = affine_dimension(&run(p(3, 3, 1, 1)).solutions).unwrap();
        assert_eq!(r.dimension, 20);
        assert_eq!(crate::linalg::rank(&r.witness_basis), 20);
    }

    #[test]
    fn vanishing_examples() {
        let params = p(2, 3, 2, 1);
        let v = vanishing_blocks(&run(params).solutions, &params).unwrap();
        assert_eq!(v.full_sizes, vec![1, 2]);
        assert!(v.full_size_classes);
        assert_eq!(v.paired_classes, Some(true));
        let params = p(2, 4, 3, 1);
        let v = vanishing_blocks(&run(params).solutions, &params).unwrap();
        assert_eq!(v.full_sizes, vec![1, 2, 3]);
        assert_eq!(v.paired_classes, None);
    }

    #[test]
    fn certificates() {
        for params in [p(2, 3, 2, 1), p(2, 4, 3, 1), p(3, 2, 1, 1), p(3, 3, 1, 1), p(2, 4, 2, 1), p(2, 3, 3, 1), p(2, 3, 1, 2)] {
            let cert = certify(&params, &SearchOptions::default()).unwrap();
            assert!(cert.passed(), "{params:?}: {:?}", cert.checks);
        }
        let cert = certify(&p(2, 3, 2, 1), &SearchOptions::default()).unwrap();
        assert_eq!(cert.summary(), "dim=1, T={}, span U_3");
        assert_eq!(cert.realized_t, Vec::<usize>::new());
        let cert = certify(&p(2, 3, 3, 1), &SearchOptions::default()).unwrap();
        assert_eq!(cert.dimension, Some(0));
    }
}
