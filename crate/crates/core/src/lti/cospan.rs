use std::fmt;

use super::PolyMatrix;
use crate::error::{Error, Result};
use crate::field::LaurentPoly;

/// A cospan `m →A d ←B n` of matrices, denoting `{(x, y) | A x = B y}`.
#[derive(Clone, PartialEq, Eq)]
pub struct MatCospan {
    left: PolyMatrix,
    right: PolyMatrix,
}

/// A span `m ←R e →S n`, denoting the image `{(R v, S v)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatSpan {
    pub left: PolyMatrix,
    pub right: PolyMatrix,
}

/// A kernel representation `[A −B]` of a behaviour `m → n`, full row rank.
#[derive(Clone, PartialEq, Eq)]
pub struct BehaviourRep {
    inputs: usize,
    outputs: usize,
    kernel: PolyMatrix,
}

impl MatCospan {
    pub fn new(left: PolyMatrix, right: PolyMatrix) -> Result<Self> {
        if left.rows() != right.rows() {
            return Err(Error::SizeMismatch(format!(
                "cospan legs land in apices of size {} and {}",
                left.rows(),
                right.rows()
            )));
        }
        Ok(MatCospan { left, right })
    }

    pub fn identity(n: usize) -> Self {
        MatCospan { left: PolyMatrix::identity(n), right: PolyMatrix::identity(n) }
    }

    /// The cospan `m →A n ←id n` of a matrix.
    pub fn from_matrix(a: PolyMatrix) -> Self {
        let n = a.rows();
        MatCospan { left: a, right: PolyMatrix::identity(n) }
    }

    pub fn left(&self) -> &PolyMatrix {
        &self.left
    }

    pub fn right(&self) -> &PolyMatrix {
        &self.right
    }

    pub fn apex(&self) -> usize {
        self.left.rows()
    }

    pub fn inputs(&self) -> usize {
        self.left.cols()
    }

    pub fn outputs(&self) -> usize {
        self.right.cols()
    }

    pub fn opposite(&self) -> MatCospan {
        MatCospan { left: self.right.clone(), right: self.left.clone() }
    }

    /// `self ; next` by pushout. The pushout of `d₁ ←B₁ y →A₂ d₂` is the
    /// quotient of `d₁ + d₂` by the saturation of the image of `[B₁; −A₂]`:
    /// with Smith form `U D V` of rank `r`, the last `d₁ + d₂ − r` rows of
    /// `U⁻¹` project onto it. Torsion is discarded.
    pub fn compose(&self, next: &MatCospan) -> Result<MatCospan> {
        if self.outputs() != next.inputs() {
            return Err(Error::SizeMismatch(format!(
                "cannot compose a cospan into {} with one out of {}",
                self.outputs(),
                next.inputs()
            )));
        }
        let (d1, d2) = (self.apex(), next.apex());
        let k = self.right.vstack(&next.left.neg())?;
        let snf = k.smith();
        let proj = snf.u_inv.select_rows(snf.rank..d1 + d2);
        let p1 = proj.select_cols(0..d1);
        let p2 = proj.select_cols(d1..d1 + d2);
        Ok(MatCospan { left: p1.mul(&self.left)?, right: p2.mul(&next.right)? })
    }

    pub fn tensor(&self, other: &MatCospan) -> MatCospan {
        MatCospan { left: self.left.block_sum(&other.left), right: self.right.block_sum(&other.right) }
    }

    /// The jointly-epic representative: `[A B]` replaced by the epi part of
    /// its epi/split-mono factorisation.
    pub fn corelation(&self) -> MatCospan {
        let (m, n) = (self.inputs(), self.outputs());
        let (epi, _) = self.left.hstack(&self.right).expect("legs share the apex").epi_split_mono();
        MatCospan { left: epi.select_cols(0..m), right: epi.select_cols(m..m + n) }
    }

    pub fn behaviour(&self) -> BehaviourRep {
        BehaviourRep::from_matrix(self.inputs(), self.outputs(), &self.left.hstack(&self.right.neg()).unwrap())
    }

    /// A basis of `ker [A −B]` as a span `m ←R e →S n` with `A R = B S`.
    pub fn pullback_span(&self) -> MatSpan {
        let (m, n) = (self.inputs(), self.outputs());
        let k = self.left.hstack(&self.right.neg()).expect("legs share the apex");
        let snf = k.smith();
        let basis = snf.v_inv.select_cols(snf.rank..m + n);
        MatSpan { left: basis.select_rows(0..m), right: basis.select_rows(m..m + n) }
    }

    /// The largest controllable sub-behaviour, as the pushout of the
    /// pullback span.
    pub fn controllable_part(&self) -> MatCospan {
        self.pullback_span().pushout()
    }

    pub fn is_controllable(&self) -> bool {
        self.controllable_part().behaviour().equivalent(&self.behaviour())
    }
}

impl MatSpan {
    /// The cospan with the same image behaviour up to closure: the pushout
    /// of `m ←R e →S n`.
    pub fn pushout(&self) -> MatCospan {
        let r = MatCospan { left: PolyMatrix::identity(self.left.rows()), right: self.left.clone() };
        let s = MatCospan::from_matrix(self.right.clone());
        r.compose(&s).expect("span legs share their apex")
    }
}

impl BehaviourRep {
    /// Reduces `k` to full row rank; the kernel is unchanged.
    pub fn from_matrix(inputs: usize, outputs: usize, k: &PolyMatrix) -> Self {
        assert_eq!(k.cols(), inputs + outputs, "kernel matrix must have m + n columns");
        let (epi, _) = k.epi_split_mono();
        BehaviourRep { inputs, outputs, kernel: epi }
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn kernel_matrix(&self) -> &PolyMatrix {
        &self.kernel
    }

    /// `ker θ(self) ⊆ ker θ(other)`, decided as the solvability of
    /// `X · self = other`.
    pub fn leq(&self, other: &BehaviourRep) -> Result<bool> {
        if self.kernel.cols() != other.kernel.cols() {
            return Err(Error::SizeMismatch(format!(
                "behaviours on {} and {} variables",
                self.kernel.cols(),
                other.kernel.cols()
            )));
        }
        let snf = self.kernel.smith();
        let target = other.kernel.mul(&snf.v_inv)?;
        for j in 0..target.cols() {
            for i in 0..target.rows() {
                let entry = &target[(i, j)];
                let ok = if j < snf.rank { snf.d[(j, j)].divides(entry) } else { entry.is_zero() };
                if !ok {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Mutual inclusion; false when the variable counts differ.
    pub fn equivalent(&self, other: &BehaviourRep) -> bool {
        self.inputs == other.inputs
            && self.outputs == other.outputs
            && self.leq(other).unwrap_or(false)
            && other.leq(self).unwrap_or(false)
    }

    /// Column labels `x0.. y0..` for printing.
    pub fn labels(&self) -> Vec<String> {
        (0..self.inputs).map(|k| format!("x{k}")).chain((0..self.outputs).map(|k| format!("y{k}"))).collect()
    }

    /// Checks the difference equations at tick `t` of a finite window, where
    /// `w[k]` is the stream of variable `k`. `None` if some equation reaches
    /// outside the window.
    pub fn holds_at(&self, w: &[Vec<crate::field::Rational>], t: usize) -> Option<bool> {
        for i in 0..self.kernel.rows() {
            let mut acc = crate::field::Rational::zero();
            for (k, stream) in w.iter().enumerate() {
                let p: &LaurentPoly = &self.kernel[(i, k)];
                acc = &acc + &p.apply_at(stream, t)?;
            }
            if !acc.is_zero() {
                return Some(false);
            }
        }
        Some(true)
    }
}

impl fmt::Display for MatCospan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} →{} {} ←{} {}", self.inputs(), self.left, self.apex(), self.right, self.outputs())
    }
}

impl fmt::Debug for MatCospan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatCospan({self})")
    }
}

impl fmt::Display for BehaviourRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.labels().join("\t"))?;
        for i in 0..self.kernel.rows() {
            let cells: Vec<String> = self.kernel.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", cells.join("\t"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BehaviourRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BehaviourRep {}→{}\n{self}", self.inputs, self.outputs)
    }
}
