//! Exact rank over the rationals by fraction-free row reduction.
//!
//! Rows are integer vectors. Each incoming row is reduced against an
//! echelon basis kept sorted by pivot column, using cross-multiplication
//! followed by division by the row content, so entries stay small on the
//! structured 0/±1 matrices this crate produces. Arithmetic runs in `i128`
//! with overflow checks; on overflow the whole computation restarts in
//! arbitrary precision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    /// `a*b - c*d`, `None` on overflow.
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
    fn is_one(&self) -> bool;
}

impl Scalar for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        a.checked_mul(*b)?.checked_sub(c.checked_mul(*d)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        Some(a * b - c * d)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_one(&self) -> bool {
        num_traits::One::is_one(self)
    }
}

struct Echelon<T> {
    width: usize,
    // (pivot column, row), sorted by pivot
    basis: Vec<(usize, Vec<T>)>,
}

struct Overflow;

impl<T: Scalar> Echelon<T> {
    fn new(width: usize) -> Self {
        Echelon { width, basis: Vec::new() }
    }

    /// Returns whether the row was independent of the current basis.
    fn insert(&mut self, row: &[i64]) -> Result<bool, Overflow> {
        debug_assert_eq!(row.len(), self.width);
        let mut v: Vec<T> = row.iter().map(|&x| T::from_i64(x)).collect();
        for (pivot, b) in &self.basis {
            let coef = v[*pivot].clone();
            if coef.is_zero() {
                continue;
            }
            let lead = b[*pivot].clone();
            let g = lead.gcd(&coef);
            let (vm, bm) = (lead.div_exact(&g), coef.div_exact(&g));
            for (x, y) in v.iter_mut().zip(b.iter()) {
                if y.is_zero() {
                    if !vm.is_one() && !x.is_zero() {
                        *x = T::cross(x, &vm, &T::zero(), &T::zero()).ok_or(Overflow)?;
                    }
                } else {
                    *x = T::cross(x, &vm, y, &bm).ok_or(Overflow)?;
                }
            }
            normalize(&mut v);
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let at = self.basis.partition_point(|(p, _)| *p < pivot);
        self.basis.insert(at, (pivot, v));
        Ok(true)
    }
}

fn normalize<T: Scalar>(v: &mut [T]) {
    let mut g = T::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.div_exact(&g);
            }
        }
    }
    if let Some(lead) = v.iter().find(|x| !x.is_zero()) {
        if lead.is_negative() {
            for x in v.iter_mut() {
                *x = x.neg();
            }
        }
    }
}

/// Indices of a maximal linearly independent subset of `rows`, chosen
/// greedily in order.
pub fn independent_rows<R: AsRef<[i64]>>(rows: &[R]) -> Vec<usize> {
    let width = rows.first().map_or(0, |r| r.as_ref().len());
    if let Some(found) = greedy::<i128, R>(rows, width) {
        return found;
    }
    greedy::<BigInt, R>(rows, width).expect("arbitrary precision cannot overflow")
}

fn greedy<T: Scalar, R: AsRef<[i64]>>(rows: &[R], width: usize) -> Option<Vec<usize>> {
    let mut ech = Echelon::<T>::new(width);
    let mut picked = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_ref();
        assert_eq!(row.len(), width, "ragged matrix");
        match ech.insert(row) {
            Ok(true) => picked.push(i),
            Ok(false) => {}
            Err(Overflow) => return None,
        }
        if picked.len() == width {
            break;
        }
    }
    Some(picked)
}

/// Exact rank of an integer matrix given by rows.
pub fn rank<R: AsRef<[i64]>>(rows: &[R]) -> usize {
    independent_rows(rows).len()
}

/// Scales a rational row to a primitive integer row with the same span.
pub fn clear_denominators(row: &[Ratio<i64>]) -> Vec<i64> {
    let lcm = row.iter().fold(1i64, |acc, r| acc.lcm(r.denom()));
    row.iter().map(|r| r.numer() * (lcm / r.denom())).collect()
}

/// Rank of a rational matrix.
pub fn rank_rational(rows: &[Vec<Ratio<i64>>]) -> usize {
    let ints: Vec<Vec<i64>> = rows.iter().map(|r| clear_denominators(r)).collect();
    rank(&ints)
}

/// Dense `a · b` for square row-major `dim × dim` integer matrices, with
/// `i128` accumulation.
pub fn matmul(a: &[i64], b: &[i64], dim: usize) -> Vec<i128> {
    let mut out = vec![0i128; dim * dim];
    for i in 0..dim {
        let row = &a[i * dim..(i + 1) * dim];
        let acc = &mut out[i * dim..(i + 1) * dim];
        for (t, &x) in row.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = x as i128;
            for (o, &y) in acc.iter_mut().zip(&b[t * dim..(t + 1) * dim]) {
                *o += x * y as i128;
            }
        }
    }
    out
}
