use std::fmt;

use crate::error::{Error, Result};
use crate::field::{LaurentPoly, Rational};

/// A matrix over `ℚ[s, s⁻¹]`. An `n×m` matrix is a morphism `m → n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

/// `M = U·D·V` with `U`, `V` invertible and `D` diagonal, each diagonal
/// entry dividing the next and in canonical form. Inverses come along.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: PolyMatrix,
    pub d: PolyMatrix,
    pub v: PolyMatrix,
    pub u_inv: PolyMatrix,
    pub v_inv: PolyMatrix,
    pub rank: usize,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, data: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = LaurentPoly::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::SizeMismatch(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            data.extend(row);
        }
        Ok(PolyMatrix { rows: n, cols, data })
    }

    /// A `1×1` matrix.
    pub fn scalar(p: LaurentPoly) -> Self {
        PolyMatrix { rows: 1, cols: 1, data: vec![p] }
    }

    /// The permutation matrix sending coordinate `j` to `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let mut m = PolyMatrix::zeros(perm.len(), perm.len());
        for (j, &i) in perm.iter().enumerate() {
            m[(i, j)] = LaurentPoly::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(LaurentPoly::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = PolyMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::SizeMismatch(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = PolyMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> PolyMatrix {
        PolyMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::SizeMismatch(format!(
                "cannot add {}×{} and {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    /// `[self other]`
    pub fn hstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        Ok(self.transpose().vstack(&other.transpose())?.transpose())
    }

    /// `[self; other]`
    pub fn vstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.cols {
            return Err(Error::SizeMismatch(format!("vstack of {} and {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(PolyMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Block diagonal sum, the monoidal product of morphisms.
    pub fn block_sum(&self, other: &PolyMatrix) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: std::ops::Range<usize>) -> PolyMatrix {
        let data = self.data[rows.start * self.cols..rows.end * self.cols].to_vec();
        PolyMatrix { rows: rows.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, cols: std::ops::Range<usize>) -> PolyMatrix {
        self.transpose().select_rows(cols).transpose()
    }

    /// Determinant by fraction-free expansion; intended for small matrices.
    pub fn determinant(&self) -> Result<LaurentPoly> {
        if self.rows != self.cols {
            return Err(Error::SizeMismatch(format!("determinant of a {}×{} matrix", self.rows, self.cols)));
        }
        Ok(det(&self.data, self.rows))
    }

    /// Smith normal form over the Euclidean ring `ℚ[s, s⁻¹]`, pivoting on
    /// the entry of least spread (ties broken by position).
    pub fn smith(&self) -> Smith {
        let (r, c) = (self.rows, self.cols);
        let mut w = SmithWork {
            d: self.clone(),
            u: PolyMatrix::identity(r),
            u_inv: PolyMatrix::identity(r),
            v: PolyMatrix::identity(c),
            v_inv: PolyMatrix::identity(c),
        };
        let mut rank = 0;
        for t in 0..r.min(c) {
            if !w.settle_pivot(t) {
                break;
            }
            let unit = w.d[(t, t)].unit_part();
            w.scale_row(t, &unit.unit_inverse().expect("unit part is a unit"), &unit);
            rank += 1;
        }
        Smith { u: w.u, d: w.d, v: w.v, u_inv: w.u_inv, v_inv: w.v_inv, rank }
    }

    /// Factors `self = mono · epi` with `epi` of full row rank and `mono`
    /// split. When `self` already has full row rank the factorisation is
    /// `(self, id)`.
    pub fn epi_split_mono(&self) -> (PolyMatrix, PolyMatrix) {
        let snf = self.smith();
        let r = snf.rank;
        if r == self.rows {
            return (self.clone(), PolyMatrix::identity(self.rows));
        }
        let d_r = snf.d.select_rows(0..r).select_cols(0..r);
        let epi = d_r.mul(&snf.v.select_rows(0..r)).expect("r×r times r×c");
        let mono = snf.u.select_cols(0..r);
        (epi, mono)
    }

    /// Evaluates entries at a rational point (nonzero whenever an entry has
    /// negative exponents).
    pub fn eval(&self, x: &Rational) -> Result<Vec<Vec<Rational>>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|p| {
                        p.terms().try_fold(Rational::zero(), |acc, (e, coef)| {
                            Ok::<_, Error>(&acc + &(coef * &x.pow(e as i32)?))
                        })
                    })
                    .collect()
            })
            .collect()
    }
}

struct SmithWork {
    d: PolyMatrix,
    u: PolyMatrix,
    u_inv: PolyMatrix,
    v: PolyMatrix,
    v_inv: PolyMatrix,
}

impl SmithWork {
    /// Brings a gcd-complete pivot to `(t, t)` with row `t` and column `t`
    /// otherwise zero. Returns false if the remaining block is zero.
    fn settle_pivot(&mut self, t: usize) -> bool {
        let (r, c) = (self.d.rows, self.d.cols);
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if let Some(sp) = self.d[(i, j)].spread() {
                        if best.is_none_or(|(b, _, _)| sp < b) {
                            best = Some((sp, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else { return false };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);

            let pivot = self.d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..r {
                if self.d[(i, t)].is_zero() {
                    continue;
                }
                let (q, rem) = self.d[(i, t)].div_rem(&pivot).expect("pivot is nonzero");
                self.add_row(i, t, &-&q);
                clean &= rem.is_zero();
            }
            for j in t + 1..c {
                if self.d[(t, j)].is_zero() {
                    continue;
                }
                let (q, rem) = self.d[(t, j)].div_rem(&pivot).expect("pivot is nonzero");
                self.add_col(j, t, &-&q);
                clean &= rem.is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !pivot.divides(&self.d[(i, j)])));
            match offender {
                Some(i) => self.add_row(t, i, &LaurentPoly::one()),
                None => return true,
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.d.cols {
            self.d.data.swap(a * self.d.cols + j, b * self.d.cols + j);
        }
        let n = self.u.cols;
        for i in 0..self.u.rows {
            self.u.data.swap(i * n + a, i * n + b);
        }
        for j in 0..self.u_inv.cols {
            self.u_inv.data.swap(a * n + j, b * n + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.d.cols;
        for i in 0..self.d.rows {
            self.d.data.swap(i * c + a, i * c + b);
        }
        for j in 0..self.v.cols {
            self.v.data.swap(a * c + j, b * c + j);
        }
        for i in 0..self.v_inv.rows {
            self.v_inv.data.swap(i * c + a, i * c + b);
        }
    }

    /// `row_dst += q · row_src` on `D`; `U` and `U⁻¹` track the inverse step.
    fn add_row(&mut self, dst: usize, src: usize, q: &LaurentPoly) {
        for j in 0..self.d.cols {
            let delta = q * &self.d[(src, j)];
            self.d[(dst, j)] = &self.d[(dst, j)] + &delta;
        }
        // U ← U·(I − q e_{dst,src}): column src −= q · column dst
        for i in 0..self.u.rows {
            let delta = q * &self.u[(i, dst)];
            self.u[(i, src)] = &self.u[(i, src)] - &delta;
        }
        for j in 0..self.u_inv.cols {
            let delta = q * &self.u_inv[(src, j)];
            self.u_inv[(dst, j)] = &self.u_inv[(dst, j)] + &delta;
        }
    }

    /// `col_dst += q · col_src` on `D`; `V` and `V⁻¹` track the inverse step.
    fn add_col(&mut self, dst: usize, src: usize, q: &LaurentPoly) {
        for i in 0..self.d.rows {
            let delta = q * &self.d[(i, src)];
            self.d[(i, dst)] = &self.d[(i, dst)] + &delta;
        }
        // V ← (I − q e_{src,dst})·V: row src −= q · row dst
        for j in 0..self.v.cols {
            let delta = q * &self.v[(dst, j)];
            self.v[(src, j)] = &self.v[(src, j)] - &delta;
        }
        for i in 0..self.v_inv.rows {
            let delta = q * &self.v_inv[(i, src)];
            self.v_inv[(i, dst)] = &self.v_inv[(i, dst)] + &delta;
        }
    }

    /// `row_t ← unit⁻¹ · row_t`, where `inv` is the inverse of `unit`.
    fn scale_row(&mut self, t: usize, inv: &LaurentPoly, unit: &LaurentPoly) {
        for j in 0..self.d.cols {
            self.d[(t, j)] = inv * &self.d[(t, j)];
        }
        for i in 0..self.u.rows {
            self.u[(i, t)] = unit * &self.u[(i, t)];
        }
        for j in 0..self.u_inv.cols {
            self.u_inv[(t, j)] = inv * &self.u_inv[(t, j)];
        }
    }
}

fn det(data: &[LaurentPoly], n: usize) -> LaurentPoly {
    match n {
        0 => LaurentPoly::one(),
        1 => data[0].clone(),
        _ => {
            let mut total = LaurentPoly::zero();
            for j in 0..n {
                let a = &data[j];
                if a.is_zero() {
                    continue;
                }
                let minor: Vec<LaurentPoly> = (1..n)
                    .flat_map(|i| (0..n).filter(move |&k| k != j).map(move |k| (i, k)))
                    .map(|(i, k)| data[i * n + k].clone())
                    .collect();
                let term = a * &det(&minor, n - 1);
                total = if j % 2 == 0 { &total + &term } else { &total - &term };
            }
            total
        }
    }
}

impl std::ops::Index<(usize, usize)> for PolyMatrix {
    type Output = LaurentPoly;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentPoly {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}×{} {self}", self.rows, self.cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, Rational::from(c))))
    }

    fn check(m: &PolyMatrix) -> Smith {
        let snf = m.smith();
        assert_eq!(snf.u.mul(&snf.d).unwrap().mul(&snf.v).unwrap(), *m);
        assert_eq!(snf.u.mul(&snf.u_inv).unwrap(), PolyMatrix::identity(m.rows()));
        assert_eq!(snf.v_inv.mul(&snf.v).unwrap(), PolyMatrix::identity(m.cols()));
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                assert!(i == j || snf.d[(i, j)].is_zero());
            }
        }
        for k in 1..snf.rank {
            assert!(snf.d[(k - 1, k - 1)].divides(&snf.d[(k, k)]));
        }
        snf
    }

    #[test]
    fn delay_is_a_unit() {
        let snf = check(&PolyMatrix::scalar(LaurentPoly::s()));
        assert_eq!(snf.d, PolyMatrix::identity(1));
    }

    #[test]
    fn coprime_row() {
        let m = PolyMatrix::from_rows(2, vec![vec![lp(&[(1, 1), (0, 1)]), lp(&[(1, 1), (0, -1)])]]).unwrap();
        let snf = check(&m);
        assert_eq!(snf.rank, 1);
        assert_eq!(snf.d[(0, 0)], LaurentPoly::one());
        assert!(snf.d[(0, 1)].is_zero());
    }

    #[test]
    fn divisibility_chain_kept() {
        let a = lp(&[(1, 1), (0, 1)]);
        let b = &a * &lp(&[(1, 1), (0, -1)]);
        let m = PolyMatrix::from_rows(2, vec![vec![a.clone(), LaurentPoly::zero()], vec![LaurentPoly::zero(), b.clone()]])
            .unwrap();
        let snf = check(&m);
        assert_eq!(snf.d, m);
        let swapped = PolyMatrix::from_rows(2, vec![vec![b.clone(), LaurentPoly::zero()], vec![LaurentPoly::zero(), a]])
            .unwrap();
        check(&swapped);
        // diag(2, 3) over ℚ collapses to diag(1, 1)
        let consts = PolyMatrix::from_rows(2, vec![vec![lp(&[(0, 2)]), LaurentPoly::zero()], vec![
            LaurentPoly::zero(),
            lp(&[(0, 3)]),
        ]])
        .unwrap();
        assert_eq!(check(&consts).d, PolyMatrix::identity(2));
    }

    #[test]
    fn non_divisible_diagonal_is_fixed() {
        let p = lp(&[(1, 1), (0, 1)]);
        let q = lp(&[(1, 1), (0, -1)]);
        let m = PolyMatrix::from_rows(2, vec![vec![p.clone(), LaurentPoly::zero()], vec![LaurentPoly::zero(), q.clone()]])
            .unwrap();
        let snf = check(&m);
        assert_eq!(snf.d[(0, 0)], LaurentPoly::one());
        assert_eq!(snf.d[(1, 1)], (&p * &q).canonical());
    }

    #[test]
    fn factorisations() {
        let col = PolyMatrix::from_rows(1, vec![vec![LaurentPoly::one()], vec![LaurentPoly::zero()]]).unwrap();
        let (e, m) = col.epi_split_mono();
        assert_eq!(e, PolyMatrix::identity(1));
        assert_eq!(m, col);
        let inv = PolyMatrix::from_rows(2, vec![vec![LaurentPoly::s(), LaurentPoly::one()], vec![
            LaurentPoly::zero(),
            LaurentPoly::one(),
        ]])
        .unwrap();
        assert_eq!(inv.epi_split_mono(), (inv.clone(), PolyMatrix::identity(2)));
        let (e, m) = PolyMatrix::zeros(2, 2).epi_split_mono();
        assert_eq!((e.rows(), e.cols(), m.rows(), m.cols()), (0, 2, 2, 0));
    }

    #[test]
    fn determinant_of_unimodular_is_unit() {
        let m = PolyMatrix::from_rows(2, vec![vec![lp(&[(1, 1), (0, 1)]), lp(&[(2, 1)])], vec![
            lp(&[(0, 1)]),
            lp(&[(1, 1)]),
        ]])
        .unwrap();
        let snf = check(&m);
        assert!(snf.u.determinant().unwrap().is_unit());
        assert!(snf.v.determinant().unwrap().is_unit());
    }
}
