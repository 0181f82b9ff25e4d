//! Independent checks: witness verification and brute-force enumeration of
//! every characteristic polynomial reachable by a rank-≤1 perturbation over
//! a small prime field.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::assign::feasibility;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::jordan::{eigen_structure, jordan_matrix};
use crate::matrix::Mat;
use crate::poly::Poly;
use crate::Perturbation;

pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Outcome of [`verify_assignment`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub pass: bool,
    pub rank: usize,
    /// First failed check, if any.
    pub discrepancy: Option<String>,
}

/// Recompute everything about a witness from scratch: `B = v·wᵀ`,
/// `rank(B) ≤ 1` and `charpoly(A + B) = q`.
pub fn verify_assignment<F: Field>(
    a: &Mat<F>,
    pert: &Perturbation<F>,
    q: &Poly<F>,
) -> Verification {
    let n = a.rows();
    let fail = |rank, msg: String| Verification {
        pass: false,
        rank,
        discrepancy: Some(msg),
    };
    if !a.is_square()
        || pert.b.rows() != n
        || pert.b.cols() != n
        || pert.v.len() != n
        || pert.w.len() != n
    {
        return fail(0, "dimension mismatch".into());
    }
    let rank = pert.b.rank();
    for i in 0..n {
        for j in 0..n {
            if pert.b[(i, j)] != pert.v[i].clone() * pert.w[j].clone() {
                return fail(rank, format!("B[{i}][{j}] differs from v[{i}]·w[{j}]"));
            }
        }
    }
    if rank > 1 {
        return fail(rank, format!("rank(B) = {rank}"));
    }
    match (a + &pert.b).charpoly() {
        Ok(cp) if cp == *q => Verification {
            pass: true,
            rank,
            discrepancy: None,
        },
        Ok(cp) => fail(
            rank,
            format!(
                "charpoly mismatch: got {:?}, expected {:?}",
                cp.render_coeffs(),
                q.render_coeffs()
            ),
        ),
        Err(e) => fail(rank, e.to_string()),
    }
}

fn all_vectors<F: Field>(elements: &[F::Elem], n: usize) -> Vec<Vec<F::Elem>> {
    let mut out: Vec<Vec<F::Elem>> = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                elements.iter().map(move |e| {
                    let mut v = prefix.clone();
                    v.push(e.clone());
                    v
                })
            })
            .collect();
    }
    out
}

/// Every monic degree-`n` polynomial over a finite field.
pub fn all_monic<F: Field>(field: F, n: usize) -> Result<Vec<Poly<F>>> {
    let elements = field.elements().ok_or(Error::InfiniteField)?;
    Ok(all_vectors::<F>(&elements, n)
        .into_iter()
        .map(|mut c| {
            c.push(field.one());
            Poly::new(field, c)
        })
        .collect())
}

fn check_budget(required: u128, budget: u128) -> Result<()> {
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(())
}

/// `{charpoly(A + v·wᵀ) : v, w ∈ F^n}` by exhaustive enumeration.
///
/// Every rank-≤1 matrix is an outer product, so the sweep is complete.
/// Work is split across `v` and merged by set union.
pub fn enumerate_achievable<F: Field>(a: &Mat<F>, budget: u128) -> Result<BTreeSet<Poly<F>>> {
    let field = a.field();
    let elements = field.elements().ok_or(Error::InfiniteField)?;
    let n = a.rows();
    let required = (elements.len() as u128)
        .checked_pow(2 * n as u32)
        .unwrap_or(u128::MAX);
    check_budget(required, budget)?;
    let vectors = all_vectors::<F>(&elements, n);
    vectors
        .par_iter()
        .map(|v| {
            let mut seen = BTreeSet::new();
            for w in &vectors {
                let perturbed = a + &Mat::outer(field, v, w);
                seen.insert(perturbed.charpoly()?);
            }
            Ok(seen)
        })
        .try_reduce(BTreeSet::new, |mut acc, part| {
            acc.extend(part);
            Ok(acc)
        })
}

/// Comparison of the enumerated and predicted target sets for one matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport<F: Field> {
    pub field: FieldSpec,
    pub a: Mat<F>,
    pub achievable: BTreeSet<Poly<F>>,
    pub predicted: BTreeSet<Poly<F>>,
    pub agree: bool,
}

impl<F: Field> OracleReport<F> {
    pub fn to_json(&self) -> OracleJson {
        OracleJson {
            field: self.field,
            matrix: self.a.render_rows(),
            achievable: self.achievable.len(),
            predicted: self.predicted.len(),
            agree: self.agree,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleJson {
    pub field: FieldSpec,
    pub matrix: Vec<Vec<String>>,
    pub achievable: usize,
    pub predicted: usize,
    pub agree: bool,
}

/// Partitions of `n` into descending parts.
fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// One Jordan matrix per similarity class of `n×n` matrices whose
/// characteristic polynomial splits over the (finite) field.
///
/// Classes are enumerated as: an algebraic multiplicity for each element
/// (summing to `n`), then a partition of that multiplicity into blocks.
pub fn jordan_representatives<F: Field>(field: F, n: usize) -> Result<Vec<Mat<F>>> {
    let elements = field.elements().ok_or(Error::InfiniteField)?;
    let mut out = Vec::new();
    let mut blocks = Vec::new();
    assign_multiplicities(field, &elements, 0, n, &mut blocks, &mut out);
    Ok(out)
}

fn assign_multiplicities<F: Field>(
    field: F,
    elements: &[F::Elem],
    idx: usize,
    remaining: usize,
    blocks: &mut Vec<(F::Elem, usize)>,
    out: &mut Vec<Mat<F>>,
) {
    if remaining == 0 {
        out.push(jordan_matrix(field, blocks));
        return;
    }
    if idx == elements.len() {
        return;
    }
    for alg in (0..=remaining).rev() {
        for part in partitions(alg, alg) {
            let mark = blocks.len();
            blocks.extend(part.iter().map(|&r| (elements[idx].clone(), r)));
            assign_multiplicities(field, elements, idx + 1, remaining - alg, blocks, out);
            blocks.truncate(mark);
        }
    }
}

/// Compare enumeration against the feasibility predicate for every Jordan
/// representative of size `n`.
pub fn certify_theorem<F: Field>(field: F, n: usize, budget: u128) -> Result<Vec<OracleReport<F>>> {
    let size = field.elements().ok_or(Error::InfiniteField)?.len() as u128;
    check_budget(size.checked_pow(2 * n as u32).unwrap_or(u128::MAX), budget)?;
    let targets = all_monic(field, n)?;
    jordan_representatives(field, n)?
        .into_iter()
        .map(|a| {
            let achievable = enumerate_achievable(&a, budget)?;
            let structure = eigen_structure(&a)?;
            let mut predicted = BTreeSet::new();
            for q in &targets {
                if feasibility(&structure, q)?.verdict {
                    predicted.insert(q.clone());
                }
            }
            Ok(OracleReport {
                field: field.spec(),
                agree: achievable == predicted,
                a,
                achievable,
                predicted,
            })
        })
        .collect()
}
