//! Exact scalars: the fields ℚ and ℚ(s), polynomials over ℚ, and the Laurent
//! ring ℚ[s, s⁻¹] used by the signal-flow calculus.

mod laurent;
mod parse;
mod poly;
mod ratfunc;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use laurent::LaurentPoly;
pub use parse::{parse_expr, ParseError};
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithmeticError {
    #[error("division by zero")]
    DivisionByZero,
}

/// A field with exact, canonically normalized elements.
///
/// Equality is structural: two values compare equal iff they denote the same
/// field element.
pub trait Field: Clone + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, ArithmeticError>;

    fn checked_div(&self, rhs: &Self) -> Result<Self, ArithmeticError> {
        Ok(self.mul(&rhs.inv()?))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n))
    }

    /// Membership in the positive cone, where one is decidable.
    ///
    /// `None` means the field carries no decision procedure (ℚ(s)).
    fn positivity(&self) -> Option<bool>;

    /// Converts a parsed rational function into this field, if it lives here.
    fn from_rational_function(f: &RationalFunction) -> Option<Self>;

    /// Short name used in documents and reports.
    const NAME: &'static str;
}

impl Field for Rational {
    const NAME: &'static str = "Q";

    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self, ArithmeticError> {
        self.recip()
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn positivity(&self) -> Option<bool> {
        Some(self.is_positive())
    }
    fn from_rational_function(f: &RationalFunction) -> Option<Self> {
        f.as_constant()
    }
}

impl Field for RationalFunction {
    const NAME: &'static str = "Q(s)";

    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self, ArithmeticError> {
        self.recip()
    }
    fn from_rational(q: &Rational) -> Self {
        RationalFunction::constant(q.clone())
    }
    fn positivity(&self) -> Option<bool> {
        None
    }
    fn from_rational_function(f: &RationalFunction) -> Option<Self> {
        Some(f.clone())
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

owned_ops!(LaurentPoly);
owned_ops!(Polynomial);
owned_ops!(RationalFunction);

