//! Equality systems of the integer linear descriptions and their emission.
//!
//! Two descriptions of the same feasible set are built: the marginal form,
//! one 0/1 row per `(s-subset, s-tuple)` with right-hand side `λ`, and the
//! J-form, `J_∅ = λ n^s` plus `J_u = 0` for `1 ≤ |u| ≤ s`. Both carry the
//! box `0 ≤ x ≤ p_max` and integrality.

use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;

use crate::anova::{j_linear_form, SubsetMask};
use crate::arrays::{tuple_unrank, OAParams};
use crate::combin::subsets_of_size;
use crate::dims::ConstraintRow;
use crate::error::{input, Error, Result};
use crate::linalg::rank;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub n_vars: usize,
    pub names: Vec<String>,
    /// Sparse rows: `(variable, coefficient)` in variable order.
    pub rows: Vec<Vec<(usize, i64)>>,
    pub rhs: Vec<Ratio<i64>>,
    pub upper: Vec<u64>,
    pub integer: bool,
}

impl LinearSystem {
    fn empty(params: &OAParams) -> Result<Self> {
        let n_vars = params.cells()?;
        Ok(LinearSystem {
            n_vars,
            names: Vec::new(),
            rows: Vec::new(),
            rhs: Vec::new(),
            upper: vec![params.p_max; n_vars],
            integer: true,
        })
    }

    fn push(&mut self, name: String, dense: &[i64], rhs: Ratio<i64>) {
        self.names.push(name);
        self.rows.push(dense.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect());
        self.rhs.push(rhs);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dense(&self) -> Vec<Vec<i64>> {
        self.rows
            .iter()
            .map(|r| {
                let mut d = vec![0; self.n_vars];
                for &(i, c) in r {
                    d[i] = c;
                }
                d
            })
            .collect()
    }

    /// Rows with the right-hand side appended, scaled to integers.
    pub fn augmented(&self) -> Vec<Vec<i64>> {
        self.dense()
            .into_iter()
            .zip(&self.rhs)
            .map(|(mut row, r)| {
                let scale = *r.denom();
                row.iter_mut().for_each(|c| *c *= scale);
                row.push(*r.numer());
                row
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        rank(&self.dense())
    }

    /// Whether the counts satisfy every equality and bound.
    pub fn satisfied_by(&self, counts: &[u64]) -> bool {
        counts.len() == self.n_vars
            && counts.iter().zip(&self.upper).all(|(c, u)| c <= u)
            && self.rows.iter().zip(&self.rhs).all(|(row, r)| {
                let lhs: i64 = row.iter().map(|&(i, c)| c * counts[i] as i64).sum();
                Ratio::from(lhs) == *r
            })
    }

    pub fn append_family(&mut self, family: &[ConstraintRow]) -> Result<()> {
        for row in family {
            if row.coeffs.iter().any(|&(i, _)| i >= self.n_vars) {
                return input("constraint row refers to a missing variable");
            }
            self.names.push(format!("j{}_{}", join(&row.u), join(&row.tuple)));
            self.rows.push(row.coeffs.clone());
            self.rhs.push(Ratio::from(0));
        }
        Ok(())
    }
}

fn join(xs: &[usize]) -> String {
    if xs.is_empty() {
        return "e".into();
    }
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join("")
}

/// One row per `s`-subset of columns and `s`-tuple over it, summing the
/// counts that agree with the tuple there.
pub fn build_ild_marginal(params: &OAParams) -> Result<LinearSystem> {
    params.validate()?;
    let mut sys = LinearSystem::empty(params)?;
    let space = params.space()?;
    let (n, s) = (params.n, params.s);
    for cols in subsets_of_size(params.k, s) {
        for cell in 0..n.pow(s as u32) {
            let tuple = tuple_unrank(cell, n, s);
            let dense: Vec<i64> = (0..space.size())
                .map(|r| cols.iter().zip(&tuple).all(|(&c, &v)| space.digit(r, c) == v) as i64)
                .collect();
            sys.push(format!("m{}_{}", join(&cols), join(&tuple)), &dense, Ratio::from(params.lambda as i64));
        }
    }
    Ok(sys)
}

/// `J_∅ = λ n^s` and `J_u(i_u) = 0` for every `1 ≤ |u| ≤ s` and tuple.
pub fn build_ild_j(params: &OAParams) -> Result<LinearSystem> {
    params.validate()?;
    let mut sys = LinearSystem::empty(params)?;
    let (n, k, s) = (params.n, params.k, params.s);
    for size in 0..=s {
        for u in SubsetMask::of_size(k, size) {
            for cell in 0..n.pow(size as u32) {
                let tuple = tuple_unrank(cell, n, size);
                let dense = j_linear_form(n, k, u, &tuple)?;
                let rhs = if size == 0 { params.runs() as i64 } else { 0 };
                sys.push(format!("j{}_{}", join(&u.columns()), join(&tuple)), &dense, Ratio::from(rhs));
            }
        }
    }
    Ok(sys)
}

/// Whether two systems have the same affine row space: equal ranks of
/// each augmented matrix and of the two stacked together.
pub fn check_equivalence(a: &LinearSystem, b: &LinearSystem) -> Result<bool> {
    if a.n_vars != b.n_vars {
        return input(format!("systems have {} and {} variables", a.n_vars, b.n_vars));
    }
    let (aa, bb) = (a.augmented(), b.augmented());
    let (ra, rb) = (rank(&aa), rank(&bb));
    let stacked: Vec<Vec<i64>> = aa.into_iter().chain(bb).collect();
    Ok(ra == rb && rank(&stacked) == ra)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitFormat {
    LpText,
    Json,
}

impl FromStr for EmitFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lp-text" | "lp" => Ok(EmitFormat::LpText),
            "json" => Ok(EmitFormat::Json),
            other => input(format!("unsupported format {other:?}; use lp-text or json")),
        }
    }
}

#[derive(Serialize)]
struct JsonConstraint<'a> {
    name: &'a str,
    coeffs: &'a [(usize, i64)],
    rhs: String,
}

#[derive(Serialize)]
struct JsonSystem<'a> {
    n_vars: usize,
    constraints: Vec<JsonConstraint<'a>>,
    lower: Vec<u64>,
    upper: &'a [u64],
    integer: bool,
}

/// Serializes `sys` followed by the `extra` rows. Output is a pure
/// function of the input.
///
/// The text format has four sections, one item per line:
///
/// ```text
/// constraints
///  m0_0: +1 x_0 +1 x_1 = 1
/// bounds
///  0 <= x_0 <= 1
/// integer
///  x_0
/// end
/// ```
pub fn emit(sys: &LinearSystem, extra: &[ConstraintRow], format: EmitFormat) -> Result<String> {
    let mut full = sys.clone();
    full.append_family(extra)?;
    match format {
        EmitFormat::Json => {
            let doc = JsonSystem {
                n_vars: full.n_vars,
                constraints: full
                    .names
                    .iter()
                    .zip(&full.rows)
                    .zip(&full.rhs)
                    .map(|((name, coeffs), rhs)| JsonConstraint { name, coeffs, rhs: rhs.to_string() })
                    .collect(),
                lower: vec![0; full.n_vars],
                upper: &full.upper,
                integer: full.integer,
            };
            Ok(serde_json::to_string_pretty(&doc)? + "\n")
        }
        EmitFormat::LpText => {
            let mut out = String::new();
            let _ = writeln!(out, "\\ {} variables, {} equality constraints", full.n_vars, full.len());
            out.push_str("constraints\n");
            for ((name, row), rhs) in full.names.iter().zip(&full.rows).zip(&full.rhs) {
                let _ = write!(out, " {name}:");
                if row.is_empty() {
                    out.push_str(" 0 x_0");
                }
                for &(i, c) in row {
                    let _ = write!(out, " {c:+} x_{i}");
                }
                let _ = writeln!(out, " = {rhs}");
            }
            out.push_str("bounds\n");
            for (i, u) in full.upper.iter().enumerate() {
                let _ = writeln!(out, " 0 <= x_{i} <= {u}");
            }
            if full.integer {
                out.push_str("integer\n");
                for i in 0..full.n_vars {
                    let _ = writeln!(out, " x_{i}");
                }
            }
            out.push_str("end\n");
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrays::{check_strength_direct, FrequencyVector};
    use crate::dims::{block_rank, constraint_family, DimMode};
    use proptest::prelude::*;

    fn p(n: usize, k: usize, s: usize, lambda: u64) -> OAParams {
        OAParams::new(n, k, s, lambda).unwrap()
    }

    #[test]
    fn marginal_examples() {
        let sys = build_ild_marginal(&p(2, 2, 1, 1)).unwrap();
        assert_eq!(sys.len(), 4);
        assert!(sys.rows.iter().all(|r| r.len() == 2 && r.iter().all(|&(_, c)| c == 1)));
        assert!(sys.rhs.iter().all(|r| *r == Ratio::from(1)));
        let sys = build_ild_marginal(&p(2, 3, 2, 1)).unwrap();
        assert_eq!(sys.len(), 12);
        assert!(sys.rows.iter().all(|r| r.len() == 2));
        let sys = build_ild_marginal(&p(3, 2, 0, 4)).unwrap();
        assert_eq!(sys.len(), 1);
        assert_eq!(sys.rows[0].len(), 9);
        assert_eq!(sys.rhs[0], Ratio::from(4));
    }

    #[test]
    fn j_examples() {
        let sys = build_ild_j(&p(2, 2, 1, 1)).unwrap();
        let dense = sys.dense();
        assert_eq!(dense, vec![vec![1, 1, 1, 1], vec![1, 1, -1, -1], vec![-1, -1, 1, 1], vec![1, -1, 1, -1], vec![-1, 1, -1, 1]]);
        assert_eq!(sys.rhs[0], Ratio::from(2));
        assert!(sys.rhs[1..].iter().all(|r| *r == Ratio::from(0)));
        let (m, j) = (build_ild_marginal(&p(3, 2, 1, 1)).unwrap(), build_ild_j(&p(3, 2, 1, 1)).unwrap());
        assert_eq!((m.rank(), j.rank()), (5, 5));
    }

    #[test]
    fn equivalence_examples() {
        let a = build_ild_marginal(&p(2, 3, 2, 1)).unwrap();
        assert!(check_equivalence(&a, &build_ild_j(&p(2, 3, 2, 1)).unwrap()).unwrap());
        assert!(check_equivalence(&a, &a).unwrap());
        assert!(!check_equivalence(&a, &build_ild_marginal(&p(2, 3, 1, 1)).unwrap()).unwrap());
        assert!(check_equivalence(&a, &build_ild_marginal(&p(2, 2, 1, 1)).unwrap()).is_err());
        // same rows, different right-hand side
        assert!(!check_equivalence(&a, &build_ild_marginal(&p(2, 3, 2, 2)).unwrap()).unwrap());
    }

    #[test]
    fn ranks_match_nonredundant_count() {
        for n in 2..=3 {
            for k in 1..=5 {
                for s in 0..=k {
                    let params = p(n, k, s, 1);
                    let expect: u64 = (0..=s).map(|j| block_rank(n, k, j).unwrap()).sum();
                    let (m, j) = (build_ild_marginal(&params).unwrap(), build_ild_j(&params).unwrap());
                    assert_eq!(m.rank() as u64, expect, "({n},{k},{s})");
                    assert!(check_equivalence(&m, &j).unwrap());
                }
            }
        }
    }

    #[test]
    fn emission() {
        let sys = build_ild_marginal(&p(2, 2, 1, 1)).unwrap();
        let text = emit(&sys, &[], EmitFormat::LpText).unwrap();
        assert_eq!(text, emit(&sys, &[], EmitFormat::LpText).unwrap());
        assert!(text.contains(" m0_0: +1 x_0 +1 x_1 = 1\n"));
        assert!(text.contains("bounds\n 0 <= x_0 <= 1\n"));
        assert!(text.ends_with("x_3\nend\n"));
        assert_eq!(text.lines().filter(|l| l.contains(" = ")).count(), 4);

        let params = p(2, 4, 3, 1);
        let sys = build_ild_j(&params).unwrap();
        let family = constraint_family(&params, &[1], DimMode::General).unwrap();
        let text = emit(&sys, &family, EmitFormat::LpText).unwrap();
        assert_eq!(text.lines().filter(|l| l.contains(" = ")).count(), sys.len() + family.len());
        let json: serde_json::Value = serde_json::from_str(&emit(&sys, &family, EmitFormat::Json).unwrap()).unwrap();
        assert_eq!(json["constraints"].as_array().unwrap().len(), sys.len() + family.len());
        assert_eq!(json["constraints"][0]["rhs"], "8");
        assert!("mps".parse::<EmitFormat>().is_err());
    }

    proptest! {
        #[test]
        fn systems_accept_exactly_the_arrays(counts in proptest::collection::vec(0u64..=2, 8), s in 0usize..=3) {
            let total: u64 = counts.iter().sum();
            let ns = 1u64 << s;
            prop_assume!(total > 0 && total.is_multiple_of(ns));
            let lambda = total / ns;
            let params = p(2, 3, s, lambda);
            let fv = FrequencyVector::new(2, 3, counts.clone()).unwrap();
            let is_oa = check_strength_direct(&fv, s).unwrap();
            prop_assert_eq!(build_ild_marginal(&params).unwrap().satisfied_by(&counts), is_oa);
            prop_assert_eq!(build_ild_j(&params).unwrap().satisfied_by(&counts), is_oa);
        }
    }
}
