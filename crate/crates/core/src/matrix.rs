//! Dense matrices over `K` with exact Gaussian elimination.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ctx: Arc<FieldCtx>,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl Matrix {
    pub fn zeros(ctx: &Arc<FieldCtx>, rows: usize, cols: usize) -> Self {
        Matrix {
            ctx: ctx.clone(),
            rows,
            cols,
            data: vec![FieldElem::zero(ctx); rows * cols],
        }
    }

    pub fn identity(ctx: &Arc<FieldCtx>, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, FieldElem::one(ctx));
        }
        m
    }

    pub fn from_fn(
        ctx: &Arc<FieldCtx>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElem,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            ctx: ctx.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn diagonal(ctx: &Arc<FieldCtx>, d: &[FieldElem]) -> Self {
        let mut m = Self::zeros(ctx, d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ctx: &Arc<FieldCtx>, rows: usize, cols: &[Vec<FieldElem>]) -> Self {
        Self::from_fn(ctx, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
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

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElem::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(&self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = FieldElem::zero(&self.ctx);
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &FieldElem) -> Matrix {
        Matrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Kronecker product; `(A ⊗ B)(e_i ⊗ f_k) = A e_i ⊗ B f_k` with the
    /// index of `e_i ⊗ f_k` equal to `i · dim B + k`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zeros(&self.ctx, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(ctx: &Arc<FieldCtx>, blocks: &[Matrix]) -> Matrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(ctx, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            for j in col..m.cols {
                let x = m.get(row, j);
                if !x.is_zero() {
                    let y = x * &inv;
                    m.set(row, j, y);
                }
            }
            for i in 0..m.rows {
                if i == row {
                    continue;
                }
                let factor = m.get(i, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let b = m.get(row, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&factor * b);
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
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

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<FieldElem>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![FieldElem::zero(&self.ctx); self.cols];
                v[fc] = FieldElem::one(&self.ctx);
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, fc);
                }
                v
            })
            .collect()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::InvalidInput("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let aug = Matrix::from_fn(&self.ctx, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                FieldElem::one(&self.ctx)
            } else {
                FieldElem::zero(&self.ctx)
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::DivisionByZero);
        }
        Ok(Matrix::from_fn(&self.ctx, n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// Solves `self · x = b` for one solution, if any.
    pub fn solve(&self, b: &[FieldElem]) -> Option<Vec<FieldElem>> {
        let aug = Matrix::from_fn(&self.ctx, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![FieldElem::zero(&self.ctx); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn pow(&self, k: u64) -> Matrix {
        let mut acc = Matrix::identity(&self.ctx, self.rows);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows as u64).is_zero()
    }

    /// Characteristic polynomial `det(T·I - A)` via reduction to upper
    /// Hessenberg form.
    pub fn charpoly(&self) -> Poly {
        assert!(self.is_square());
        let n = self.rows;
        let ctx = &self.ctx;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(p) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            if p != m {
                h.swap_rows(p, m);
                for i in 0..n {
                    h.data.swap(i * n + p, i * n + m);
                }
            }
            let pivot_inv = h.get(m, m - 1).inv().expect("nonzero pivot");
            for i in m + 1..n {
                let u = h.get(i, m - 1) * &pivot_inv;
                if u.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = h.get(i, j) - &(&u * h.get(m, j));
                    h.set(i, j, v);
                }
                for j in 0..n {
                    let v = h.get(j, m) + &(&u * h.get(j, i));
                    h.set(j, m, v);
                }
            }
        }
        // p_k = (T - h_kk) p_{k-1} - Σ_{i<k} h_ik (Π_{j=i+1..k} h_{j,j-1}) p_{i-1}
        let t = Poly::var(ctx);
        let mut ps: Vec<Poly> = vec![Poly::one(ctx)];
        for k in 0..n {
            let mut pk = t.sub(&Poly::constant(h.get(k, k).clone())).mul(&ps[k]);
            let mut prod = FieldElem::one(ctx);
            for i in (0..k).rev() {
                prod = &prod * h.get(i + 1, i);
                if prod.is_zero() {
                    break;
                }
                let c = &prod * h.get(i, k);
                if !c.is_zero() {
                    pk = pk.sub(&ps[i].scale(&c));
                }
            }
            ps.push(pk);
        }
        ps.pop().unwrap()
    }

    /// `det(1 - T·A)`, the reversed characteristic polynomial.
    pub fn det_one_minus(&self) -> Poly {
        let n = self.rows;
        let cp = self.charpoly();
        let mut c = cp.coeffs().to_vec();
        c.resize(n + 1, FieldElem::zero(&self.ctx));
        c.reverse();
        Poly::new(&self.ctx, c)
    }

    pub fn det(&self) -> FieldElem {
        let cp = self.charpoly();
        let c0 = cp.coeff(0);
        if self.rows % 2 == 1 {
            -c0
        } else {
            c0
        }
    }

    /// Matrix of `self` restricted to the invariant subspace spanned by the
    /// columns of `basis` (in that basis).
    pub fn restrict(&self, basis: &Matrix) -> Result<Matrix> {
        let k = basis.cols;
        let image = self.mul(basis);
        let mut out = Matrix::zeros(&self.ctx, k, k);
        for j in 0..k {
            let col = image.column(j);
            let x = basis
                .solve(&col)
                .ok_or_else(|| Error::InvariantViolation("subspace is not invariant".into()))?;
            for (i, v) in x.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(&self.ctx, rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    pub fn galois(&self, k: i64) -> Result<Matrix> {
        let data = self
            .data
            .iter()
            .map(|x| x.galois(k))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.data
    }

    /// Row-major flattening.
    pub fn vec(&self) -> Vec<FieldElem> {
        self.data.clone()
    }

    pub fn from_vec(ctx: &Arc<FieldCtx>, rows: usize, cols: usize, data: Vec<FieldElem>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix {
            ctx: ctx.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Commutator `[self, other]`.
    pub fn bracket(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// Stacks matrices with equal column counts.
    pub fn vstack(ctx: &Arc<FieldCtx>, parts: &[Matrix]) -> Matrix {
        let cols = parts.first().map_or(0, |m| m.cols);
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for p in parts {
            assert_eq!(p.cols, cols);
            data.extend(p.data.iter().cloned());
        }
        Matrix {
            ctx: ctx.clone(),
            rows,
            cols,
            data,
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Arc<FieldCtx> {
        FieldCtx::new(3, 2).unwrap()
    }

    fn int(ctx: &Arc<FieldCtx>, rows: &[&[i64]]) -> Matrix {
        Matrix::from_fn(ctx, rows.len(), rows[0].len(), |i, j| {
            FieldElem::from_int(ctx, rows[i][j])
        })
    }

    #[test]
    fn inverse_and_rank() {
        let ctx = ctx();
        let a = int(&ctx, &[&[2, 1, 0], &[1, 1, 0], &[0, 5, 3]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(&ctx, 3));
        let s = int(&ctx, &[&[1, 2], &[2, 4]]);
        assert_eq!(s.rank(), 1);
        assert!(s.inverse().is_err());
        let k = s.kernel();
        assert_eq!(k.len(), 1);
        assert!(s.mul_vec(&k[0]).iter().all(FieldElem::is_zero));
    }

    #[test]
    fn charpoly_matches_det() {
        let ctx = ctx();
        let z = FieldElem::zeta(&ctx, 1);
        let mut a = int(&ctx, &[&[0, 1, 2], &[3, 0, 1], &[1, 1, 1]]);
        a.set(0, 0, z.clone());
        let cp = a.charpoly();
        assert_eq!(cp.degree(), Some(3));
        assert_eq!(cp.coeff(0), -a.det_direct());
        let x = FieldElem::from_int(&ctx, 7);
        let shifted = Matrix::identity(&ctx, 3).scale(&x).sub(&a);
        assert_eq!(cp.eval(&x), shifted.det_direct());
    }

    impl Matrix {
        fn det_direct(&self) -> FieldElem {
            let (r, _) = (self.clone(), ());
            let n = r.rows;
            let mut perm: Vec<usize> = (0..n).collect();
            let mut total = FieldElem::zero(&self.ctx);
            permute(&mut perm, 0, &mut |p| {
                let mut sign = 1;
                for i in 0..n {
                    for j in i + 1..n {
                        if p[i] > p[j] {
                            sign = -sign;
                        }
                    }
                }
                let mut t = FieldElem::from_int(&self.ctx, sign);
                for (i, &pi) in p.iter().enumerate() {
                    t = &t * r.get(i, pi);
                }
                total = &total + &t;
            });
            total
        }
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }
}
