//! Eigenvalue/Jordan structure and explicit Jordan bases.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Mat;

/// Jordan data for one eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenRecord<F: Field> {
    pub lambda: F::Elem,
    /// Algebraic multiplicity; equals the sum of `blocks`.
    pub alg: usize,
    /// Block sizes in descending order.
    pub blocks: Vec<usize>,
    /// Largest block size.
    pub j: usize,
}

impl<F: Field> EigenRecord<F> {
    pub fn deficit(&self) -> usize {
        self.alg - self.j
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenStructure<F: Field> {
    pub records: Vec<EigenRecord<F>>,
}

impl<F: Field> EigenStructure<F> {
    pub fn dim(&self) -> usize {
        self.records.iter().map(|r| r.alg).sum()
    }

    pub fn get(&self, lambda: &F::Elem) -> Option<&EigenRecord<F>> {
        self.records.iter().find(|r| &r.lambda == lambda)
    }

    /// All `(λ, r)` blocks, grouped by eigenvalue, sizes descending.
    pub fn blocks(&self) -> Vec<(F::Elem, usize)> {
        self.records
            .iter()
            .flat_map(|r| r.blocks.iter().map(move |&b| (r.lambda.clone(), b)))
            .collect()
    }
}

/// Placement of one Jordan block on the diagonal of `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPosition<F: Field> {
    pub lambda: F::Elem,
    pub size: usize,
    pub start: usize,
    /// The first (largest) block of its eigenvalue group.
    pub lead: bool,
}

/// `A = P J P⁻¹` with `J` block diagonal in upper Jordan blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanDecomposition<F: Field> {
    pub j: Mat<F>,
    pub p: Mat<F>,
    pub p_inv: Mat<F>,
    pub layout: Vec<BlockPosition<F>>,
}

impl<F: Field> JordanDecomposition<F> {
    pub fn lead_blocks(&self) -> impl Iterator<Item = &BlockPosition<F>> {
        self.layout.iter().filter(|b| b.lead)
    }

    pub fn to_json(&self) -> JordanJson {
        let field = self.j.field();
        JordanJson {
            j: self.j.render_rows(),
            p: self.p.render_rows(),
            p_inv: self.p_inv.render_rows(),
            layout: self
                .layout
                .iter()
                .map(|b| BlockJson {
                    lambda: field.render(&b.lambda),
                    size: b.size,
                    start: b.start,
                    lead: b.lead,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct JordanJson {
    #[serde(rename = "J")]
    pub j: Vec<Vec<String>>,
    #[serde(rename = "P")]
    pub p: Vec<Vec<String>>,
    #[serde(rename = "Pinv")]
    pub p_inv: Vec<Vec<String>>,
    pub layout: Vec<BlockJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockJson {
    pub lambda: String,
    pub size: usize,
    pub start: usize,
    pub lead: bool,
}

/// The basic Jordan block `J_{λ,r}`: `λ` on the diagonal, ones above it.
pub fn jordan_block<F: Field>(field: F, lambda: &F::Elem, r: usize) -> Mat<F> {
    let mut m = Mat::identity(field, r).scale(lambda);
    for i in 0..r.saturating_sub(1) {
        m[(i, i + 1)] = field.one();
    }
    m
}

/// `⊕ J_{λ_i, r_i}` in the given order.
pub fn jordan_matrix<F: Field>(field: F, blocks: &[(F::Elem, usize)]) -> Mat<F> {
    let parts: Vec<Mat<F>> = blocks
        .iter()
        .map(|(l, r)| jordan_block(field, l, *r))
        .collect();
    Mat::block_diag(field, &parts)
}

/// Eigenvalues, multiplicities and block sizes of `a`.
///
/// Block counts come from the rank sequence of `a - λ`: the number of
/// blocks of size at least `k` is `rank((a-λ)^{k-1}) - rank((a-λ)^k)`.
pub fn eigen_structure<F: Field>(a: &Mat<F>) -> Result<EigenStructure<F>> {
    let roots = a.charpoly()?.split_roots()?;
    let mut records = Vec::with_capacity(roots.entries().len());
    for (lambda, alg) in roots.entries() {
        let ranks = a.rank_sequence(lambda, *alg)?;
        let at_least: Vec<usize> = (1..=*alg).map(|k| ranks[k - 1] - ranks[k]).collect();
        let mut blocks = Vec::new();
        for k in (1..=*alg).rev() {
            let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
            blocks.extend(std::iter::repeat_n(k, exactly));
        }
        let total: usize = blocks.iter().sum();
        if total != *alg {
            return Err(Error::AssertionFailure(format!(
                "block sizes {blocks:?} at {} do not sum to {alg}",
                a.field().render(lambda)
            )));
        }
        records.push(EigenRecord {
            lambda: lambda.clone(),
            alg: *alg,
            j: blocks[0],
            blocks,
        });
    }
    Ok(EigenStructure { records })
}

/// Does `v` lie outside the span of `basis`?
fn enlarges<F: Field>(field: F, basis: &[Vec<F::Elem>], v: &[F::Elem]) -> bool {
    if v.iter().all(|x| field.is_zero(x)) {
        return false;
    }
    if basis.is_empty() {
        return true;
    }
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    let with = Mat::from_rows(field, rows).expect("equal lengths").rank();
    let without = Mat::from_rows(field, basis.to_vec())
        .expect("equal lengths")
        .rank();
    with > without
}

/// Jordan chains for one eigenvalue, largest first. Each chain is ordered
/// `[N^{k-1}x, …, Nx, x]` so that `N` maps each vector to its predecessor.
fn chains_for<F: Field>(a: &Mat<F>, record: &EigenRecord<F>) -> Result<Vec<Vec<Vec<F::Elem>>>> {
    let field = a.field();
    let shifted = a.shift(&record.lambda);
    let top = record.j;
    let kernels: Vec<Vec<Vec<F::Elem>>> = (0..=top + 1)
        .map(|k| shifted.pow(k).map(|m| m.kernel()))
        .collect::<Result<_>>()?;

    let mut chains = Vec::new();
    for k in (1..=top).rev() {
        // Span already accounted for at this level: ker N^{k-1} + N·ker N^{k+1}.
        let mut span: Vec<Vec<F::Elem>> = kernels[k - 1].clone();
        for x in &kernels[k + 1] {
            span.push(shifted.mul_vec(x)?);
        }
        for x in &kernels[k] {
            if !enlarges(field, &span, x) {
                continue;
            }
            span.push(x.clone());
            let mut chain = vec![x.clone()];
            for _ in 1..k {
                let next = shifted.mul_vec(chain.last().expect("nonempty"))?;
                chain.push(next);
            }
            chain.reverse();
            chains.push(chain);
        }
    }
    let sizes: Vec<usize> = chains.iter().map(Vec::len).collect();
    if sizes != record.blocks {
        return Err(Error::AssertionFailure(format!(
            "chain sizes {sizes:?} disagree with block sizes {:?}",
            record.blocks
        )));
    }
    Ok(chains)
}

/// Explicit `A = P J P⁻¹`.
///
/// Blocks are grouped by eigenvalue in canonical scalar order, sizes
/// descending within a group, and the first block of each group is the lead.
/// The result is checked (`P⁻¹AP = J`) before it is returned.
pub fn jordan_basis<F: Field>(a: &Mat<F>) -> Result<JordanDecomposition<F>> {
    let field = a.field();
    let n = a.rows();
    let structure = eigen_structure(a)?;
    let mut columns: Vec<Vec<F::Elem>> = Vec::with_capacity(n);
    let mut layout: Vec<BlockPosition<F>> = Vec::new();
    for record in &structure.records {
        for (idx, chain) in chains_for(a, record)?.into_iter().enumerate() {
            layout.push(BlockPosition {
                lambda: record.lambda.clone(),
                size: chain.len(),
                start: columns.len(),
                lead: idx == 0,
            });
            columns.extend(chain);
        }
    }
    let p = Mat::from_rows(field, columns)?.transpose();
    let p_inv = p
        .inverse()
        .map_err(|_| Error::AssertionFailure("generalized eigenvectors are dependent".into()))?;
    let blocks: Vec<(F::Elem, usize)> = layout.iter().map(|b| (b.lambda.clone(), b.size)).collect();
    let j = jordan_matrix(field, &blocks);
    if &(&p_inv * a) * &p != j {
        return Err(Error::AssertionFailure("P⁻¹AP differs from J".into()));
    }
    Ok(JordanDecomposition {
        j,
        p,
        p_inv,
        layout,
    })
}
