use std::fmt;

use super::{MatCospan, PolyMatrix};
use crate::error::{Error, Result};
use crate::field::{LaurentPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SfgGenerator {
    /// `2 → 1`
    Add,
    /// `0 → 1`
    Zero,
    /// `1 → 2`
    Copy,
    /// `1 → 0`
    Discard,
    /// `1 → 1`, one tick of delay
    Delay,
    /// `1 → 1`, multiplication by a rational
    Scalar(Rational),
}

/// Signal-flow terms. `Mirror` reverses a generator left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SfgTerm {
    Id,
    Twist,
    Gen(SfgGenerator),
    Mirror(SfgGenerator),
    Seq(Box<SfgTerm>, Box<SfgTerm>),
    Tensor(Box<SfgTerm>, Box<SfgTerm>),
}

impl SfgGenerator {
    pub fn arity(&self) -> (usize, usize) {
        match self {
            SfgGenerator::Add => (2, 1),
            SfgGenerator::Zero => (0, 1),
            SfgGenerator::Copy => (1, 2),
            SfgGenerator::Discard => (1, 0),
            SfgGenerator::Delay | SfgGenerator::Scalar(_) => (1, 1),
        }
    }

    /// The generator's cospan of matrices.
    pub fn cospan(&self) -> MatCospan {
        let one = LaurentPoly::one;
        let row = |xs: Vec<LaurentPoly>| PolyMatrix::from_rows(xs.len(), vec![xs]).unwrap();
        let (left, right) = match self {
            SfgGenerator::Add => (row(vec![one(), one()]), PolyMatrix::identity(1)),
            SfgGenerator::Zero => (PolyMatrix::zeros(1, 0), PolyMatrix::identity(1)),
            SfgGenerator::Copy => {
                (PolyMatrix::from_rows(1, vec![vec![one()], vec![one()]]).unwrap(), PolyMatrix::identity(2))
            }
            SfgGenerator::Discard => (PolyMatrix::zeros(0, 1), PolyMatrix::zeros(0, 0)),
            SfgGenerator::Delay => (PolyMatrix::scalar(LaurentPoly::s()), PolyMatrix::identity(1)),
            SfgGenerator::Scalar(a) => (PolyMatrix::scalar(LaurentPoly::constant(a.clone())), PolyMatrix::identity(1)),
        };
        MatCospan::new(left, right).unwrap()
    }

    fn name(&self) -> String {
        match self {
            SfgGenerator::Add => "add".into(),
            SfgGenerator::Zero => "zero".into(),
            SfgGenerator::Copy => "copy".into(),
            SfgGenerator::Discard => "discard".into(),
            SfgGenerator::Delay => "delay".into(),
            SfgGenerator::Scalar(a) => format!("x({a})"),
        }
    }
}

impl SfgTerm {
    pub fn seq(a: SfgTerm, b: SfgTerm) -> SfgTerm {
        SfgTerm::Seq(Box::new(a), Box::new(b))
    }

    pub fn tensor(a: SfgTerm, b: SfgTerm) -> SfgTerm {
        SfgTerm::Tensor(Box::new(a), Box::new(b))
    }

    /// Left-nested sequence of the given terms.
    pub fn chain(terms: impl IntoIterator<Item = SfgTerm>) -> Option<SfgTerm> {
        terms.into_iter().reduce(SfgTerm::seq)
    }

    /// `(inputs, outputs)`, or a type error naming the offending composite.
    pub fn typ(&self) -> Result<(usize, usize)> {
        match self {
            SfgTerm::Id => Ok((1, 1)),
            SfgTerm::Twist => Ok((2, 2)),
            SfgTerm::Gen(g) => Ok(g.arity()),
            SfgTerm::Mirror(g) => {
                let (m, n) = g.arity();
                Ok((n, m))
            }
            SfgTerm::Seq(a, b) => {
                let (m, k1) = a.typ()?;
                let (k2, n) = b.typ()?;
                if k1 != k2 {
                    return Err(Error::TypeError(format!("`{a}` has {k1} outputs but `{b}` has {k2} inputs")));
                }
                Ok((m, n))
            }
            SfgTerm::Tensor(a, b) => {
                let (m1, n1) = a.typ()?;
                let (m2, n2) = b.typ()?;
                Ok((m1 + m2, n1 + n2))
            }
        }
    }

    /// Number of delays and mirrored delays.
    pub fn register_count(&self) -> usize {
        match self {
            SfgTerm::Gen(SfgGenerator::Delay) | SfgTerm::Mirror(SfgGenerator::Delay) => 1,
            SfgTerm::Seq(a, b) | SfgTerm::Tensor(a, b) => a.register_count() + b.register_count(),
            _ => 0,
        }
    }

    /// Number of leaves.
    pub fn size(&self) -> usize {
        match self {
            SfgTerm::Seq(a, b) | SfgTerm::Tensor(a, b) => a.size() + b.size(),
            _ => 1,
        }
    }

    /// The denoting cospan of matrices: generators to their cospans, `;` to
    /// pushout composition, `(+)` to block sums.
    pub fn denote(&self) -> Result<MatCospan> {
        self.typ()?;
        self.denote_typed()
    }

    fn denote_typed(&self) -> Result<MatCospan> {
        Ok(match self {
            SfgTerm::Id => MatCospan::identity(1),
            SfgTerm::Twist => MatCospan::new(PolyMatrix::permutation(&[1, 0]), PolyMatrix::identity(2))?,
            SfgTerm::Gen(g) => g.cospan(),
            SfgTerm::Mirror(g) => g.cospan().opposite(),
            SfgTerm::Seq(a, b) => a.denote_typed()?.compose(&b.denote_typed()?)?,
            SfgTerm::Tensor(a, b) => a.denote_typed()?.tensor(&b.denote_typed()?),
        })
    }
}

impl fmt::Display for SfgTerm {
    /// Canonical text: `;` binds loosest, `(+)` tighter, both left-nested
    /// without parentheses.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SfgTerm::Id => write!(f, "id"),
            SfgTerm::Twist => write!(f, "tw"),
            SfgTerm::Gen(g) => write!(f, "{}", g.name()),
            SfgTerm::Mirror(g) => write!(f, "co-{}", g.name()),
            SfgTerm::Seq(a, b) => {
                write!(f, "{a} ; ")?;
                match **b {
                    SfgTerm::Seq(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
            SfgTerm::Tensor(a, b) => {
                match **a {
                    SfgTerm::Seq(..) => write!(f, "({a})")?,
                    _ => write!(f, "{a}")?,
                }
                write!(f, " (+) ")?;
                match **b {
                    SfgTerm::Seq(..) | SfgTerm::Tensor(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
        }
    }
}
