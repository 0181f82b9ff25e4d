//! Instance generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::Rng;
use rankone::jordan::jordan_matrix;
use rankone::{Field, Mat, Poly, PrimeField, Rationals};

pub fn rng(seed: u64) -> StdRng {
    use rand::SeedableRng;
    StdRng::seed_from_u64(seed)
}

pub fn q(x: i64) -> BigRational {
    Rationals.from_i64(x)
}

pub fn random_matrix<F: Field>(
    field: F,
    rng: &mut StdRng,
    rows: usize,
    cols: usize,
    lo: i64,
    hi: i64,
) -> Mat<F> {
    let data: Vec<Vec<F::Elem>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| field.from_i64(rng.gen_range(lo..=hi)))
                .collect()
        })
        .collect();
    Mat::from_rows(field, data).unwrap()
}

pub fn random_vector<F: Field>(
    field: F,
    rng: &mut StdRng,
    n: usize,
    lo: i64,
    hi: i64,
) -> Vec<F::Elem> {
    (0..n)
        .map(|_| field.from_i64(rng.gen_range(lo..=hi)))
        .collect()
}

/// Integer matrix with determinant ±1 and entries in `[-2, 2]`, built as
/// `Perm · L · U` with unit triangular factors and rejected when out of range.
pub fn unimodular(rng: &mut StdRng, n: usize) -> Mat<Rationals> {
    loop {
        let mut l = Mat::identity(Rationals, n);
        let mut u = Mat::identity(Rationals, n);
        for i in 0..n {
            for j in 0..n {
                if rng.gen_bool(0.35) {
                    let x = q(rng.gen_range(-1..=1));
                    if i > j {
                        l[(i, j)] = x;
                    } else if i < j {
                        u[(i, j)] = x;
                    }
                }
            }
        }
        let mut p = &l * &u;
        // Random row permutation.
        for i in (1..n).rev() {
            let k = rng.gen_range(0..=i);
            let (ri, rk) = (p.row(i).to_vec(), p.row(k).to_vec());
            for j in 0..n {
                p[(i, j)] = rk[j].clone();
                p[(k, j)] = ri[j].clone();
            }
        }
        let bounded = (0..n).all(|i| {
            (0..n).all(|j| i64::try_from(p[(i, j)].to_integer()).is_ok_and(|v| v.abs() <= 2))
        });
        if bounded {
            return p;
        }
    }
}

/// Random invertible matrix over `F_p`.
pub fn invertible_mod_p(field: PrimeField, rng: &mut StdRng, n: usize) -> Mat<PrimeField> {
    loop {
        let m = random_matrix(field, rng, n, n, 0, field.modulus() as i64 - 1);
        if m.rank() == n {
            return m;
        }
    }
}

/// Random block list: eigenvalues in `[lo, hi]`, random partition of `n`.
pub fn random_blocks(rng: &mut StdRng, n: usize, lo: i64, hi: i64) -> Vec<(i64, usize)> {
    let mut blocks = Vec::new();
    let mut left = n;
    while left > 0 {
        let r = rng.gen_range(1..=left);
        let l = rng.gen_range(lo..=hi);
        blocks.push((l, r));
        left -= r;
    }
    blocks
}

/// Canonical multiset of `(λ, r)` pairs.
pub fn canonical<T: Ord + Clone>(blocks: &[(T, usize)]) -> Vec<(T, usize)> {
    let mut b = blocks.to_vec();
    b.sort_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
    b
}

/// `P · (⊕ J) · P⁻¹` over ℚ.
pub fn planted_rational(
    rng: &mut StdRng,
    blocks: &[(i64, usize)],
) -> (Mat<Rationals>, Mat<Rationals>) {
    let n = blocks.iter().map(|b| b.1).sum();
    let jb: Vec<_> = blocks.iter().map(|&(l, r)| (q(l), r)).collect();
    let j = jordan_matrix(Rationals, &jb);
    let p = unimodular(rng, n);
    let a = &(&p * &j) * &p.inverse().unwrap();
    (a, j)
}

/// `P · (⊕ J) · P⁻¹` over `F_p`.
pub fn planted_mod_p(
    field: PrimeField,
    rng: &mut StdRng,
    blocks: &[(i64, usize)],
) -> Mat<PrimeField> {
    let n = blocks.iter().map(|b| b.1).sum();
    let jb: Vec<_> = blocks
        .iter()
        .map(|&(l, r)| (field.from_i64(l), r))
        .collect();
    let j = jordan_matrix(field, &jb);
    let p = invertible_mod_p(field, rng, n);
    &(&p * &j) * &p.inverse().unwrap()
}

/// `det(tI - X)` by Laplace expansion over polynomial entries. Shares no
/// code path with the Berkowitz routine.
pub fn cofactor_charpoly<F: Field>(x: &Mat<F>) -> Poly<F> {
    let field = x.field();
    let n = x.rows();
    let entries: Vec<Vec<Poly<F>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Poly::constant(field, -x[(i, j)].clone());
                    if i == j {
                        &c + &Poly::t(field)
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    laplace(field, &entries)
}

fn laplace<F: Field>(field: F, m: &[Vec<Poly<F>>]) -> Poly<F> {
    let n = m.len();
    if n == 0 {
        return Poly::one(field);
    }
    let mut acc = Poly::zero(field);
    for col in 0..n {
        let minor: Vec<Vec<Poly<F>>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != col)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][col] * &laplace(field, &minor);
        acc = if col % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// Random monic polynomial of degree `d` with coefficients in `[lo, hi]`.
pub fn random_monic<F: Field>(field: F, rng: &mut StdRng, d: usize, lo: i64, hi: i64) -> Poly<F> {
    let mut c: Vec<F::Elem> = (0..d)
        .map(|_| field.from_i64(rng.gen_range(lo..=hi)))
        .collect();
    c.push(field.one());
    Poly::new(field, c)
}

/// `∏ (t - λ)^{alg - j}` over the planted block list.
pub fn forced_factor(blocks: &[(i64, usize)]) -> (Poly<Rationals>, usize) {
    let mut lambdas: Vec<i64> = blocks.iter().map(|b| b.0).collect();
    lambdas.sort();
    lambdas.dedup();
    let mut forced = Poly::one(Rationals);
    let mut d = 0;
    for l in lambdas {
        let sizes: Vec<usize> = blocks.iter().filter(|b| b.0 == l).map(|b| b.1).collect();
        let alg: usize = sizes.iter().sum();
        let j = *sizes.iter().max().unwrap();
        forced = &forced * &Poly::linear_power(Rationals, &q(l), alg - j);
        d += j;
    }
    (forced, d)
}

/// Up to `count` sample points avoiding the eigenvalues of `a`. Over a small
/// finite field fewer points may exist.
pub fn non_eigen_points<F: Field>(a: &Mat<F>, count: usize) -> Vec<F::Elem> {
    let field = a.field();
    let cp = a.charpoly().unwrap();
    let mut out = Vec::new();
    let mut k = 0i64;
    for _ in 0..(4 * count + 64) {
        if out.len() == count {
            break;
        }
        let t = field.from_i64(k);
        if !field.is_zero(&cp.eval(&t)) && !out.contains(&t) {
            out.push(t);
        }
        k = if k <= 0 { 1 - k } else { -k };
    }
    out
}

pub fn dot<F: Field>(field: F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter()
        .zip(b)
        .fold(field.zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}
