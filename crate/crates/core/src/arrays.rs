//! Parameter sets, tuple ranking, symbol arrays and frequency vectors.

use serde::{Deserialize, Serialize};

use crate::combin::{checked_pow, subsets_of_size};
use crate::error::{input, Error, Result};

/// Parameters of an `OA(λ n^s, k, n, s)` together with the per-cell cap
/// used by the integer linear description.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OAParams {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub lambda: u64,
    pub p_max: u64,
}

impl OAParams {
    /// Validated parameters with `p_max = λ`.
    pub fn new(n: usize, k: usize, s: usize, lambda: u64) -> Result<Self> {
        let params = OAParams { n, k, s, lambda, p_max: lambda };
        params.validate()?;
        Ok(params)
    }

    pub fn with_p_max(mut self, p_max: u64) -> Result<Self> {
        self.p_max = p_max;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return input(format!("n must be at least 2, got {}", self.n));
        }
        if self.k < 1 {
            return input("k must be at least 1");
        }
        if self.s > self.k {
            return input(format!("strength s = {} exceeds k = {}", self.s, self.k));
        }
        if self.lambda < 1 {
            return input("lambda must be at least 1");
        }
        if self.p_max < 1 || self.p_max > self.lambda {
            return input(format!(
                "p_max must lie in [1, lambda = {}], got {}",
                self.lambda, self.p_max
            ));
        }
        if self.runs_checked().is_none() {
            return Err(Error::Resource("run count λ·n^s overflows".into()));
        }
        Ok(())
    }

    fn runs_checked(&self) -> Option<u64> {
        let ns = checked_pow(self.n, self.s)? as u64;
        ns.checked_mul(self.lambda)
    }

    /// Run count `N = λ n^s`.
    pub fn runs(&self) -> u64 {
        self.runs_checked().expect("validated parameters")
    }

    /// `n^k`, the number of count variables.
    pub fn cells(&self) -> Result<usize> {
        checked_pow(self.n, self.k)
            .ok_or_else(|| Error::Resource(format!("{}^{} overflows", self.n, self.k)))
    }

    pub fn space(&self) -> Result<TupleSpace> {
        TupleSpace::new(self.n, self.k)
    }
}

/// The tuple space `{0..n}^k` with big-endian ranking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleSpace {
    n: usize,
    k: usize,
    size: usize,
    // weight[c] = n^(k-1-c)
    weight: Vec<usize>,
}

impl TupleSpace {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 1 {
            return input("alphabet must be non-empty");
        }
        let size = checked_pow(n, k)
            .ok_or_else(|| Error::Resource(format!("{n}^{k} overflows")))?;
        let weight = (0..k).map(|c| checked_pow(n, k - 1 - c).unwrap()).collect();
        Ok(TupleSpace { n, k, size, weight })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rank(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.k {
            return input(format!("expected {} digits, got {}", self.k, digits.len()));
        }
        tuple_rank(digits, self.n)
    }

    pub fn unrank(&self, rank: usize) -> Vec<usize> {
        (0..self.k).map(|c| self.digit(rank, c)).collect()
    }

    #[inline]
    pub fn digit(&self, rank: usize, column: usize) -> usize {
        (rank / self.weight[column]) % self.n
    }

    #[inline]
    pub fn weight(&self, column: usize) -> usize {
        self.weight[column]
    }

    /// Rank of `rank` with one digit replaced.
    #[inline]
    pub fn with_digit(&self, rank: usize, column: usize, value: usize) -> usize {
        let old = self.digit(rank, column);
        rank - old * self.weight[column] + value * self.weight[column]
    }

    pub fn hamming(&self, a: usize, b: usize) -> usize {
        (0..self.k).filter(|&c| self.digit(a, c) != self.digit(b, c)).count()
    }
}

/// Big-endian radix-`n` value of `digits`.
pub fn tuple_rank(digits: &[usize], n: usize) -> Result<usize> {
    let mut rank: usize = 0;
    for (pos, &d) in digits.iter().enumerate() {
        if d >= n {
            return input(format!("digit {d} at position {pos} is not below n = {n}"));
        }
        rank = rank
            .checked_mul(n)
            .and_then(|r| r.checked_add(d))
            .ok_or_else(|| Error::Resource("tuple rank overflows".into()))?;
    }
    Ok(rank)
}

pub fn tuple_unrank(rank: usize, n: usize, k: usize) -> Vec<usize> {
    let mut digits = vec![0; k];
    let mut r = rank;
    for slot in digits.iter_mut().rev() {
        *slot = r % n;
        r /= n;
    }
    digits
}

/// An `N × k` array over `{0..n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolArray {
    pub n: usize,
    pub k: usize,
    pub rows: Vec<Vec<usize>>,
}

impl SymbolArray {
    pub fn new(n: usize, k: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        if rows.is_empty() {
            return input("array has no rows");
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k {
                return input(format!("row {i} has {} entries, expected {k}", row.len()));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return input(format!("row {i} holds symbol {bad} outside 0..{n}"));
            }
        }
        Ok(SymbolArray { n, k, rows })
    }

    /// Parses the text form: a header line `n k N` followed by `N` rows of
    /// `k` whitespace-separated symbols. Blank lines and `#` comments are
    /// skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Input("empty array file".into()))?;
        let head = parse_numbers(header)?;
        if head.len() != 3 {
            return input(format!("header must be `n k N`, got `{header}`"));
        }
        let (n, k, runs) = (head[0], head[1], head[2]);
        let rows = lines.map(parse_numbers).collect::<Result<Vec<_>>>()?;
        if rows.len() != runs {
            return input(format!("header declares {runs} rows, file has {}", rows.len()));
        }
        SymbolArray::new(n, k, rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.n, self.k, self.rows.len());
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Row tally without reference to OA parameters.
    pub fn tally(&self) -> Result<FrequencyVector> {
        let space = TupleSpace::new(self.n, self.k)?;
        let mut counts = vec![0u64; space.size()];
        for row in &self.rows {
            counts[space.rank(row)?] += 1;
        }
        FrequencyVector::new(self.n, self.k, counts)
    }
}

fn parse_numbers(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::Input(format!("`{tok}` is not a non-negative integer")))
        })
        .collect()
}

/// Count vector indexed by tuple rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FrequencyVector {
    n: usize,
    k: usize,
    counts: Vec<u64>,
}

impl FrequencyVector {
    pub fn new(n: usize, k: usize, counts: Vec<u64>) -> Result<Self> {
        let size = checked_pow(n, k).ok_or_else(|| Error::Resource(format!("{n}^{k} overflows")))?;
        if counts.len() != size {
            return input(format!("expected {size} counts for n = {n}, k = {k}, got {}", counts.len()));
        }
        Ok(FrequencyVector { n, k, counts })
    }

    /// Checks the vector against OA parameters: the total equals `N` and
    /// every count respects `p_max`.
    pub fn for_params(params: &OAParams, counts: Vec<u64>) -> Result<Self> {
        let fv = FrequencyVector::new(params.n, params.k, counts)?;
        fv.check_params(params)?;
        Ok(fv)
    }

    pub fn check_params(&self, params: &OAParams) -> Result<()> {
        if self.n != params.n || self.k != params.k {
            return Err(Error::ParamMismatch(format!(
                "vector has (n, k) = ({}, {}), parameters say ({}, {})",
                self.n, self.k, params.n, params.k
            )));
        }
        if self.total() != params.runs() {
            return Err(Error::ParamMismatch(format!(
                "counts sum to {}, expected N = {}",
                self.total(),
                params.runs()
            )));
        }
        if let Some(pos) = self.counts.iter().position(|&c| c > params.p_max) {
            return Err(Error::ParamMismatch(format!(
                "count {} at rank {pos} exceeds p_max = {}",
                self.counts[pos], params.p_max
            )));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn into_counts(self) -> Vec<u64> {
        self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn space(&self) -> TupleSpace {
        TupleSpace::new(self.n, self.k).expect("validated on construction")
    }

    /// Expands back to an array, rows in rank order.
    pub fn to_array(&self) -> Result<SymbolArray> {
        let space = self.space();
        let rows = self
            .counts
            .iter()
            .enumerate()
            .flat_map(|(rank, &c)| std::iter::repeat_n(space.unrank(rank), c as usize))
            .collect();
        SymbolArray::new(self.n, self.k, rows)
    }

    /// Marginal table over `columns` (sorted), indexed big-endian over those
    /// columns.
    pub fn marginal(&self, columns: &[usize]) -> Vec<u64> {
        let space = self.space();
        let mut table = vec![0u64; self.n.pow(columns.len() as u32)];
        for (rank, &c) in self.counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let cell = columns.iter().fold(0, |acc, &col| acc * self.n + space.digit(rank, col));
            table[cell] += c;
        }
        table
    }
}

/// JSON shape of a frequency-vector file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrequencyFile {
    pub n: usize,
    pub k: usize,
    pub lambda: u64,
    pub s: usize,
    pub counts: Vec<u64>,
}

impl FrequencyFile {
    pub fn from_vector(fv: &FrequencyVector, params: &OAParams) -> Self {
        FrequencyFile {
            n: fv.n,
            k: fv.k,
            lambda: params.lambda,
            s: params.s,
            counts: fv.counts.clone(),
        }
    }

    pub fn into_parts(self) -> Result<(OAParams, FrequencyVector)> {
        let params = OAParams::new(self.n, self.k, self.s, self.lambda)?;
        let fv = FrequencyVector::new(self.n, self.k, self.counts)?;
        Ok((params, fv))
    }
}

pub fn array_to_frequency(arr: &SymbolArray, params: &OAParams) -> Result<FrequencyVector> {
    if arr.n != params.n || arr.k != params.k {
        return Err(Error::ParamMismatch(format!(
            "array is {} columns over {} symbols, parameters say k = {}, n = {}",
            arr.k, arr.n, params.k, params.n
        )));
    }
    if arr.rows.len() as u64 != params.runs() {
        return Err(Error::ParamMismatch(format!(
            "array has {} rows, expected N = {}",
            arr.rows.len(),
            params.runs()
        )));
    }
    arr.tally()
}

/// A margin that misses its target count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarginViolation {
    pub columns: Vec<usize>,
    pub symbols: Vec<usize>,
    pub observed: u64,
    pub expected: u64,
}

/// First violated `s`-margin, or `None` when `fv` has strength `s`.
/// A total not divisible by `n^s` is reported against the empty margin.
pub fn first_margin_violation(fv: &FrequencyVector, s: usize) -> Result<Option<MarginViolation>> {
    if s > fv.k {
        return input(format!("strength {s} exceeds k = {}", fv.k));
    }
    let total = fv.total();
    let cells = fv.n.pow(s as u32) as u64;
    if !total.is_multiple_of(cells) {
        return Ok(Some(MarginViolation {
            columns: Vec::new(),
            symbols: Vec::new(),
            observed: total,
            expected: cells * (total / cells + 1),
        }));
    }
    let lambda = total / cells;
    for columns in subsets_of_size(fv.k, s) {
        let table = fv.marginal(&columns);
        if let Some(cell) = table.iter().position(|&m| m != lambda) {
            return Ok(Some(MarginViolation {
                symbols: tuple_unrank(cell, fv.n, s),
                observed: table[cell],
                expected: lambda,
                columns,
            }));
        }
    }
    Ok(None)
}

/// Strength check straight from the definition: every `s`-subset of columns
/// sees every `s`-tuple exactly `N / n^s` times.
pub fn check_strength_direct(fv: &FrequencyVector, s: usize) -> Result<bool> {
    Ok(first_margin_violation(fv, s)?.is_none())
}
