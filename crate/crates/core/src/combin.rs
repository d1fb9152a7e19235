//! Small exact combinatorics shared by the other modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Rows `0..=max` of Pascal's triangle, exact.
pub fn pascal(max: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max + 1);
    for m in 0..=max {
        let mut row = vec![BigInt::one(); m + 1];
        for j in 1..m {
            row[j] = &rows[m - 1][j - 1] + &rows[m - 1][j];
        }
        rows.push(row);
    }
    rows
}

/// `C(m, j)`, zero when `j > m`.
pub fn binomial(m: usize, j: usize) -> BigInt {
    if j > m {
        return BigInt::zero();
    }
    let j = j.min(m - j);
    // Pascal row by row; only one row is kept alive.
    let mut row = vec![BigInt::one()];
    for i in 1..=m {
        let mut next = vec![BigInt::one(); (i + 1).min(j + 1)];
        for t in 1..next.len() {
            let left = &row[t - 1];
            let right = row.get(t).cloned().unwrap_or_else(BigInt::zero);
            next[t] = left + right;
        }
        row = next;
    }
    row[j].clone()
}

pub fn binomial_u64(m: usize, j: usize) -> Option<u64> {
    binomial(m, j).to_u64()
}

/// Mathematical residue in `[0, n)`.
pub fn residue(value: &BigInt, n: usize) -> u64 {
    let modulus = BigInt::from(n);
    value.mod_floor(&modulus).to_u64().expect("residue below n")
}

/// All `r`-subsets of `0..k` as sorted column lists, in lexicographic order.
pub fn subsets_of_size(k: usize, r: usize) -> Vec<Vec<usize>> {
    if r > k {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..r).collect();
    loop {
        out.push(current.clone());
        // advance to the next combination
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < k - r + i {
                current[i] += 1;
                for t in i + 1..r {
                    current[t] = current[t - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

pub fn big_pow(base: usize, exp: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_matches_pascal() {
        let table = pascal(20);
        for m in 0..=20 {
            for j in 0..=m {
                assert_eq!(binomial(m, j), table[m][j], "C({m},{j})");
            }
            assert!(binomial(m, m + 1).is_zero());
        }
        assert_eq!(binomial_u64(6, 2), Some(15));
        assert_eq!(binomial_u64(10, 5), Some(252));
    }

    #[test]
    fn residues_are_nonnegative() {
        assert_eq!(residue(&BigInt::from(-1), 2), 1);
        assert_eq!(residue(&BigInt::from(-7), 3), 2);
        assert_eq!(residue(&BigInt::from(10), 10), 0);
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(
            subsets_of_size(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(subsets_of_size(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets_of_size(3, 3), vec![vec![0, 1, 2]]);
        assert!(subsets_of_size(2, 3).is_empty());
        for k in 0..8 {
            let total: usize = (0..=k).map(|r| subsets_of_size(k, r).len()).sum();
            assert_eq!(total, 1 << k);
        }
    }
}
