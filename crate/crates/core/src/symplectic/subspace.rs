use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// A linear subspace of `F^n`, stored as the reduced row echelon form of a
/// basis. Equal subspaces have identical representations.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace<F> {
    basis: Matrix<F>,
}

impl<F: Field> Subspace<F> {
    pub fn span(ambient: usize, vectors: Vec<Vec<F>>) -> Result<Self> {
        Ok(Subspace { basis: Matrix::from_rows(ambient, vectors)?.echelon().matrix })
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { basis: Matrix::zeros(0, ambient) }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { basis: Matrix::identity(ambient) }
    }

    /// `{x | a·x = 0}`
    pub fn kernel_of(a: &Matrix<F>) -> Self {
        Subspace::span(a.cols(), a.kernel()).expect("kernel vectors have the column count")
    }

    /// The column space of `a`.
    pub fn image_of(a: &Matrix<F>) -> Self {
        Subspace { basis: a.transpose().echelon().matrix }
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The RREF basis, one vector per row.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn contains(&self, v: &[F]) -> Result<bool> {
        if v.len() != self.ambient() {
            return Err(Error::SizeMismatch(format!("vector of length {} in F^{}", v.len(), self.ambient())));
        }
        let mut rest = v.to_vec();
        for r in 0..self.dim() {
            let row = self.basis.row(r);
            let pivot = row.iter().position(|x| !x.is_zero()).expect("echelon rows are nonzero");
            let factor = rest[pivot].clone();
            if factor.is_zero() {
                continue;
            }
            for (x, b) in rest.iter_mut().zip(row) {
                *x = x.sub(&factor.mul(b));
            }
        }
        Ok(rest.iter().all(F::is_zero))
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> Result<bool> {
        self.check_ambient(other)?;
        for r in 0..self.dim() {
            if !other.contains(self.basis.row(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        self.check_ambient(other)?;
        Ok(Subspace { basis: self.basis.vstack(&other.basis)?.echelon().matrix })
    }

    /// `{w | w·v = 0 for all v in self}`
    pub fn annihilator(&self) -> Subspace<F> {
        Subspace::kernel_of(&self.basis)
    }

    pub fn intersect(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        self.check_ambient(other)?;
        let constraints = self.annihilator().basis.vstack(&other.annihilator().basis)?;
        Ok(Subspace::kernel_of(&constraints))
    }

    /// Image under the coordinate projection onto `coords`, in that order.
    pub fn project(&self, coords: &[usize]) -> Subspace<F> {
        Subspace { basis: self.basis.select_columns(coords).echelon().matrix }
    }

    /// Image under the linear map `a` (applied to column vectors).
    pub fn map(&self, a: &Matrix<F>) -> Result<Subspace<F>> {
        let images = self.basis.mul(&a.transpose())?;
        Ok(Subspace { basis: images.echelon().matrix })
    }

    fn check_ambient(&self, other: &Subspace<F>) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::SizeMismatch(format!(
                "subspaces of F^{} and F^{}",
                self.ambient(),
                other.ambient()
            )));
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace dim {} of F^{}\n{}", self.dim(), self.ambient(), self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn canonical_representation() {
        let a = Subspace::span(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let b = Subspace::span(3, vec![v(&[1, 2, 1]), v(&[1, 0, -1]), v(&[2, 2, 0])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert!(a.contains(&v(&[3, 5, 2])).unwrap());
        assert!(!a.contains(&v(&[1, 0, 0])).unwrap());
    }

    #[test]
    fn intersection_and_sum() {
        let xy = Subspace::span(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        let yz = Subspace::span(3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        assert_eq!(xy.intersect(&yz).unwrap(), Subspace::span(3, vec![v(&[0, 1, 0])]).unwrap());
        assert_eq!(xy.sum(&yz).unwrap(), Subspace::full(3));
        assert_eq!(Subspace::<Rational>::zero(3).annihilator(), Subspace::full(3));
        assert_eq!(Subspace::kernel_of(&Matrix::<Rational>::identity(2)), Subspace::zero(2));
        assert!(xy.sum(&Subspace::zero(4)).is_err());
    }
}
