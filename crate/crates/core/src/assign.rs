//! Feasibility test and witness construction for rank-one assignment.
//!
//! A monic `q` of degree `n` is the characteristic polynomial of `A + B` for
//! some `B` of rank at most one exactly when, at every eigenvalue `λ` of `A`,
//! `m_λ(q) ≥ alg_λ(A) - j_λ(A)`.
//!
//! The witness is built in Jordan coordinates. Since
//! `p_{A+vwᵀ}(t) = p_A(t)·(1 - wᵀ(tI - A)⁻¹v)`, it suffices to realise
//! `wᵀ(tI - A)⁻¹v = (p_A - q)/p_A`. Only the largest block per eigenvalue is
//! perturbed; the remaining blocks contribute the forced factor
//! `∏(t-λ)^{alg_λ - j_λ}` unchanged.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::jordan::{jordan_basis, EigenStructure, JordanDecomposition};
use crate::matrix::Mat;
use crate::poly::{Poly, RootMultiset};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityRow<F: Field> {
    pub lambda: F::Elem,
    /// Multiplicity of `λ` as a root of the target.
    pub target_multiplicity: usize,
    pub alg: usize,
    pub j: usize,
    pub deficit: usize,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport<F: Field> {
    pub verdict: bool,
    pub rows: Vec<FeasibilityRow<F>>,
}

impl<F: Field> FeasibilityReport<F> {
    pub fn first_violation(&self) -> Option<&FeasibilityRow<F>> {
        self.rows.iter().find(|r| !r.satisfied)
    }

    pub fn to_json(&self, field: F) -> FeasibilityJson {
        FeasibilityJson {
            verdict: if self.verdict {
                "feasible"
            } else {
                "infeasible"
            },
            rows: self
                .rows
                .iter()
                .map(|r| FeasibilityRowJson {
                    lambda: field.render(&r.lambda),
                    target_multiplicity: r.target_multiplicity,
                    alg: r.alg,
                    j: r.j,
                    deficit: r.deficit,
                    satisfied: r.satisfied,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FeasibilityJson {
    pub verdict: &'static str,
    pub rows: Vec<FeasibilityRowJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FeasibilityRowJson {
    pub lambda: String,
    pub target_multiplicity: usize,
    pub alg: usize,
    pub j: usize,
    pub deficit: usize,
    pub satisfied: bool,
}

/// Segments `(v, w)` of a witness.
pub type VectorPair<F> = (Vec<<F as Field>::Elem>, Vec<<F as Field>::Elem>);

/// A witness `B = v·wᵀ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perturbation<F: Field> {
    pub v: Vec<F::Elem>,
    pub w: Vec<F::Elem>,
    pub b: Mat<F>,
}

impl<F: Field> Perturbation<F> {
    pub fn new(field: F, v: Vec<F::Elem>, w: Vec<F::Elem>) -> Self {
        let b = Mat::outer(field, &v, &w);
        Self { v, w, b }
    }
}

fn check_target<F: Field>(q: &Poly<F>, n: usize) -> Result<()> {
    if q.degree() != Some(n) {
        return Err(Error::WrongDegree {
            expected: n,
            found: q.degree().unwrap_or(0),
        });
    }
    if !q.is_monic() {
        return Err(Error::NotMonic);
    }
    Ok(())
}

/// Check `m_λ(q) ≥ alg_λ(A) - j_λ(A)` at every eigenvalue of `A`.
pub fn feasibility<F: Field>(
    structure: &EigenStructure<F>,
    q: &Poly<F>,
) -> Result<FeasibilityReport<F>> {
    check_target(q, structure.dim())?;
    let mut rows = Vec::with_capacity(structure.records.len());
    for r in &structure.records {
        let m = q.multiplicity_at(&r.lambda)?;
        rows.push(FeasibilityRow {
            lambda: r.lambda.clone(),
            target_multiplicity: m,
            alg: r.alg,
            j: r.j,
            deficit: r.deficit(),
            satisfied: m >= r.deficit(),
        });
    }
    Ok(FeasibilityReport {
        verdict: rows.iter().all(|r| r.satisfied),
        rows,
    })
}

/// Vectors of length `r` with
/// `w_blockᵀ (tI - J_{λ,r})⁻¹ v_block = h(t) / (t - λ)^r`.
///
/// `v_block = e_r`, and with `h = Σ a_i (t-λ)^{r-1-i}` the entry of `w_block`
/// at 1-based position `r - i` is `a_i`, since `N^i e_r = e_{r-i}`.
pub fn construct_block_from_h<F: Field>(
    lambda: &F::Elem,
    r: usize,
    h: &Poly<F>,
) -> Result<VectorPair<F>> {
    let field = h.field();
    let a = h.taylor_coeffs(lambda, r)?;
    let mut v = vec![field.zero(); r];
    let mut w = vec![field.zero(); r];
    if r > 0 {
        v[r - 1] = field.one();
    }
    for (i, ai) in a.into_iter().enumerate() {
        w[r - 1 - i] = ai;
    }
    Ok((v, w))
}

/// Witness for `⊕ J_{λ_i, n_i}` with pairwise distinct `λ_i` and target `q1`.
///
/// Splits `(p - q1)/p` into partial fractions over the blocks and solves each
/// block independently; the per-block segments are concatenated in order.
pub fn construct_distinct<F: Field>(
    blocks: &[(F::Elem, usize)],
    q1: &Poly<F>,
) -> Result<VectorPair<F>> {
    let field = q1.field();
    let d: usize = blocks.iter().map(|(_, n)| n).sum();
    check_target(q1, d)?;
    let denoms = RootMultiset::from_ordered(blocks.to_vec());
    let h = &denoms.product(field) - q1;
    let parts = h.partial_fractions(&denoms)?;
    let mut v = Vec::with_capacity(d);
    let mut w = Vec::with_capacity(d);
    for ((lambda, n), hi) in blocks.iter().zip(&parts) {
        let (vb, wb) = construct_block_from_h(lambda, *n, hi)?;
        v.extend(vb);
        w.extend(wb);
    }
    Ok((v, w))
}

/// Build `B = v·wᵀ` with `charpoly(A + B) = q`.
///
/// Returns `Infeasible` when the multiplicity condition fails; the result is
/// re-verified against a fresh characteristic polynomial before returning.
pub fn construct_general<F: Field>(a: &Mat<F>, q: &Poly<F>) -> Result<Perturbation<F>> {
    let decomposition = jordan_basis(a)?;
    construct_with_basis(a, q, &decomposition)
}

/// As [`construct_general`], reusing an existing Jordan decomposition of `a`.
pub fn construct_with_basis<F: Field>(
    a: &Mat<F>,
    q: &Poly<F>,
    decomposition: &JordanDecomposition<F>,
) -> Result<Perturbation<F>> {
    let field = a.field();
    let n = a.rows();
    check_target(q, n)?;

    let structure = structure_of(decomposition);
    let report = feasibility(&structure, q)?;
    if let Some(row) = report.first_violation() {
        return Err(Error::Infeasible {
            lambda: field.render(&row.lambda),
            multiplicity: row.target_multiplicity,
            deficit: row.deficit,
        });
    }

    let forced = structure.records.iter().fold(Poly::one(field), |acc, r| {
        &acc * &Poly::linear_power(field, &r.lambda, r.deficit())
    });
    let q1 = q.exact_div(&forced)?;

    let leads: Vec<_> = decomposition.lead_blocks().collect();
    let lead_blocks: Vec<(F::Elem, usize)> =
        leads.iter().map(|b| (b.lambda.clone(), b.size)).collect();
    let (v1, w1) = construct_distinct(&lead_blocks, &q1)?;

    let mut v_jordan = vec![field.zero(); n];
    let mut w_jordan = vec![field.zero(); n];
    let mut offset = 0;
    for block in &leads {
        for k in 0..block.size {
            v_jordan[block.start + k] = v1[offset + k].clone();
            w_jordan[block.start + k] = w1[offset + k].clone();
        }
        offset += block.size;
    }

    // B = P (v_J w_Jᵀ) P⁻¹ = (P v_J)(P⁻ᵀ w_J)ᵀ
    let v = decomposition.p.mul_vec(&v_jordan)?;
    let w = decomposition.p_inv.transpose().mul_vec(&w_jordan)?;
    let pert = Perturbation::new(field, v, w);

    let achieved = (a + &pert.b).charpoly()?;
    if achieved != *q {
        return Err(Error::AssertionFailure(format!(
            "constructed witness yields {achieved}, expected {q}"
        )));
    }
    Ok(pert)
}

fn structure_of<F: Field>(d: &JordanDecomposition<F>) -> EigenStructure<F> {
    use crate::jordan::EigenRecord;
    let mut records: Vec<EigenRecord<F>> = Vec::new();
    for b in &d.layout {
        match records.last_mut() {
            Some(r) if r.lambda == b.lambda => {
                r.alg += b.size;
                r.blocks.push(b.size);
            }
            _ => records.push(EigenRecord {
                lambda: b.lambda.clone(),
                alg: b.size,
                blocks: vec![b.size],
                j: b.size,
            }),
        }
    }
    EigenStructure { records }
}
