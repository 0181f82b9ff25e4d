//! Dense exact matrices.
//!
//! Most of the crate works with square matrices, but [`Mat`] is rectangular
//! so that column vectors and the `m×n · n×m` products of the
//! Weinstein–Aronszajn identity fit the same type.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            field,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for tests and fixtures; panics on ragged input.
    pub fn from_i64(field: F, rows: &[&[i64]]) -> Self {
        Self::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
        .expect("rectangular input")
    }

    pub fn diagonal(field: F, diag: &[F::Elem]) -> Self {
        let mut m = Self::zeros(field, diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn column(field: F, v: &[F::Elem]) -> Self {
        Self {
            field,
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    /// `v · wᵀ`
    pub fn outer(field: F, v: &[F::Elem], w: &[F::Elem]) -> Self {
        let mut m = Self::zeros(field, v.len(), w.len());
        for (i, vi) in v.iter().enumerate() {
            for (j, wj) in w.iter().enumerate() {
                m[(i, j)] = vi.clone() * wj.clone();
            }
        }
        m
    }

    /// Block-diagonal assembly of square blocks.
    pub fn block_diag(field: F, blocks: &[Mat<F>]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Self::zeros(field, n, n);
        let mut at = 0;
        for b in blocks {
            debug_assert!(b.is_square());
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(at + i, at + j)] = b[(i, j)].clone();
                }
            }
            at += b.rows;
        }
        m
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = self.clone();
        for x in &mut out.data {
            *x = x.clone() * c.clone();
        }
        out
    }

    /// `self - λI`
    pub fn shift(&self, lambda: &F::Elem) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            out[(i, i)] = out[(i, i)].clone() - lambda.clone();
        }
        out
    }

    pub fn try_mul(&self, rhs: &Mat<F>) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let field = self.field;
        let mut out = Self::zeros(field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        Ok(self.try_mul(&Self::column(self.field, v))?.data)
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "power of non-square matrix".into(),
            ));
        }
        let mut acc = Self::identity(self.field, self.rows);
        for _ in 0..k {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Reduced row echelon form and its pivot columns. Pivots are the first
    /// nonzero entry found scanning columns left to right.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let field = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !field.is_zero(&m[(i, c)])) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = field.invert(&m[(r, c)]).expect("nonzero pivot");
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i == r || field.is_zero(&m[(i, c)]) {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    m[(i, j)] = m[(i, j)].clone() - factor.clone() * m[(r, j)].clone();
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column, in
    /// ascending order of the free column index.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let field = self.field;
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![field.zero(); self.cols];
            v[free] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(row, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "inverse of non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = self.field.one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let mut inv = Self::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Result<F::Elem> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "determinant of non-square matrix".into(),
            ));
        }
        let field = self.field;
        let mut m = self.clone();
        let mut det = field.one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !field.is_zero(&m[(i, c)])) else {
                return Ok(field.zero());
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det = det * pivot.clone();
            let inv = field.invert(&pivot)?;
            for i in c + 1..m.rows {
                if field.is_zero(&m[(i, c)]) {
                    continue;
                }
                let factor = m[(i, c)].clone() * inv.clone();
                for j in c..m.cols {
                    m[(i, j)] = m[(i, j)].clone() - factor.clone() * m[(c, j)].clone();
                }
            }
        }
        Ok(det)
    }

    /// Characteristic polynomial `det(tI - self)` by Berkowitz's
    /// division-free algorithm, so it is valid in every characteristic.
    ///
    /// The leading `k×k` principal submatrix is grown one row/column at a
    /// time; at each step the coefficient vector is multiplied by a lower
    /// triangular Toeplitz matrix whose first column is
    /// `(1, -a_kk, -R·C, -R·M·C, …, -R·M^{k-1}·C)`.
    pub fn charpoly(&self) -> Result<Poly<F>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "charpoly of non-square matrix".into(),
            ));
        }
        let field = self.field;
        let n = self.rows;
        // Coefficients in descending degree order.
        let mut coeffs = vec![field.one()];
        for k in 0..n {
            // Submatrix M = self[0..k][0..k], row R = self[k][0..k], column C = self[0..k][k].
            let mut toeplitz = Vec::with_capacity(k + 2);
            toeplitz.push(field.one());
            toeplitz.push(-self[(k, k)].clone());
            let mut col: Vec<F::Elem> = (0..k).map(|i| self[(i, k)].clone()).collect();
            for _ in 0..k {
                let rc = (0..k).fold(field.zero(), |acc, j| {
                    acc + self[(k, j)].clone() * col[j].clone()
                });
                toeplitz.push(-rc);
                col = (0..k)
                    .map(|i| {
                        (0..k).fold(field.zero(), |acc, j| {
                            acc + self[(i, j)].clone() * col[j].clone()
                        })
                    })
                    .collect();
            }
            let mut next = vec![field.zero(); k + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, c) in coeffs.iter().enumerate().take(i + 1) {
                    *slot = slot.clone() + toeplitz[i - j].clone() * c.clone();
                }
            }
            coeffs = next;
        }
        coeffs.reverse();
        Ok(Poly::new(field, coeffs))
    }

    /// `[rank((self - λI)^k)]` for `k = 0..=kmax`.
    pub fn rank_sequence(&self, lambda: &F::Elem, kmax: usize) -> Result<Vec<usize>> {
        let shifted = self.shift(lambda);
        let mut power = Self::identity(self.field, self.rows);
        let mut ranks = Vec::with_capacity(kmax + 1);
        ranks.push(power.rank());
        for _ in 0..kmax {
            power = power.try_mul(&shifted)?;
            ranks.push(power.rank());
        }
        Ok(ranks)
    }

    pub fn render_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| self.field.render(x)).collect())
            .collect()
    }

    pub fn parse_rows(field: F, rows: &[Vec<String>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|x| field.parse(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(field, parsed)
    }
}

impl<F: Field> std::ops::Index<(usize, usize)> for Mat<F> {
    type Output = F::Elem;
    fn index(&self, (i, j): (usize, usize)) -> &F::Elem {
        &self.data[i * self.cols + j]
    }
}

impl<F: Field> std::ops::IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F::Elem {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.render_rows()).finish()
    }
}

impl<F: Field> Add for &Mat<F> {
    type Output = Mat<F>;
    fn add(self, rhs: &Mat<F>) -> Mat<F> {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a = a.clone() + b.clone();
        }
        out
    }
}

impl<F: Field> Sub for &Mat<F> {
    type Output = Mat<F>;
    fn sub(self, rhs: &Mat<F>) -> Mat<F> {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a = a.clone() - b.clone();
        }
        out
    }
}

impl<F: Field> Mul for &Mat<F> {
    type Output = Mat<F>;
    fn mul(self, rhs: &Mat<F>) -> Mat<F> {
        self.try_mul(rhs).expect("shape mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn m(rows: &[&[i64]]) -> Mat<Rationals> {
        Mat::from_i64(Rationals, rows)
    }

    fn jordan(l: i64, r: usize) -> Mat<Rationals> {
        let mut j = Mat::identity(Rationals, r).scale(&Rationals.from_i64(l));
        for i in 0..r.saturating_sub(1) {
            j[(i, i + 1)] = Rationals.one();
        }
        j
    }

    #[test]
    fn products() {
        let x = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(&Mat::identity(Rationals, 2) * &x, x);
        let nil = jordan(0, 2);
        assert!((&nil * &nil).is_zero());
        let j3 = jordan(0, 3);
        assert_eq!(&j3 * &j3, m(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]));
        assert!(matches!(
            x.try_mul(&Mat::zeros(Rationals, 3, 1)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn ranks() {
        assert_eq!(Mat::zeros(Rationals, 3, 3).rank(), 0);
        let v: Vec<_> = [1, -2, 3].iter().map(|&x| Rationals.from_i64(x)).collect();
        let w: Vec<_> = [0, 5, 1].iter().map(|&x| Rationals.from_i64(x)).collect();
        assert_eq!(Mat::outer(Rationals, &v, &w).rank(), 1);
        let j = jordan(0, 2);
        let ranks: Vec<_> = (0..3).map(|k| j.pow(k).unwrap().rank()).collect();
        assert_eq!(ranks, vec![2, 1, 0]);
    }

    #[test]
    fn inverses() {
        let i2 = Mat::identity(Rationals, 2);
        assert_eq!(i2.inverse().unwrap(), i2);
        let d = m(&[&[2, 0], &[0, 3]]);
        let expected = Mat::diagonal(
            Rationals,
            &[
                Rationals.parse("1/2").unwrap(),
                Rationals.parse("1/3").unwrap(),
            ],
        );
        assert_eq!(d.inverse().unwrap(), expected);
        let u = m(&[&[1, 1], &[0, 1]]);
        let ui = u.inverse().unwrap();
        assert_eq!(ui, m(&[&[1, -1], &[0, 1]]));
        assert_eq!(&u * &ui, i2);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
    }

    #[test]
    fn charpoly_examples() {
        let q = |c: &[i64]| Poly::from_i64(Rationals, c);
        assert_eq!(
            Mat::identity(Rationals, 2).charpoly().unwrap(),
            q(&[1, -2, 1])
        );
        assert_eq!(
            jordan(2, 3).charpoly().unwrap(),
            Poly::linear_power(Rationals, &Rationals.from_i64(2), 3)
        );
        assert_eq!(Mat::zeros(Rationals, 0, 0).charpoly().unwrap(), q(&[1]));
        // A = N and det B = 0 give charpoly(A+B) = t^2 - (a11 + a22) t - a21.
        let a = jordan(0, 2);
        for (a11, a12, a21, a22) in [(3, 6, 1, 2), (0, 0, -4, 7), (2, -1, -6, 3), (0, 0, 0, 0)] {
            let b = m(&[&[a11, a12], &[a21, a22]]);
            assert!(Rationals.is_zero(&b.det().unwrap()));
            let cp = (&a + &b).charpoly().unwrap();
            assert_eq!(cp, q(&[-a21, -(a11 + a22), 1]));
        }
    }

    #[test]
    fn charpoly_small_characteristic() {
        let f2 = PrimeField::new(2).unwrap();
        let a = Mat::from_i64(f2, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        // Oracle: det(tI - A) evaluated at every t in F_2 agrees with elimination.
        let cp = a.charpoly().unwrap();
        for t in f2.elements().unwrap() {
            let shifted = &Mat::identity(f2, 3).scale(&t) - &a;
            assert_eq!(cp.eval(&t), shifted.det().unwrap());
        }
        assert!(cp.is_monic() && cp.degree() == Some(3));
    }

    #[test]
    fn rank_sequences() {
        let z = Rationals.zero();
        assert_eq!(jordan(0, 2).rank_sequence(&z, 2).unwrap(), vec![2, 1, 0]);
        assert_eq!(
            Mat::identity(Rationals, 2).rank_sequence(&z, 2).unwrap(),
            vec![2, 2, 2]
        );
        assert_eq!(
            Mat::zeros(Rationals, 2, 2).rank_sequence(&z, 1).unwrap(),
            vec![2, 0]
        );
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let ker = a.kernel();
        assert_eq!(ker.len(), 1);
        for v in ker {
            assert!(a.mul_vec(&v).unwrap().iter().all(|x| Rationals.is_zero(x)));
        }
    }

    #[test]
    fn determinant_matches_known_values() {
        assert_eq!(
            m(&[&[1, 2], &[3, 4]]).det().unwrap(),
            Rationals.from_i64(-2)
        );
        assert_eq!(
            m(&[&[0, 1], &[1, 0]]).det().unwrap(),
            Rationals.from_i64(-1)
        );
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det().unwrap(), Rationals.zero());
    }
}
