use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{ArithmeticError, Polynomial, Rational};

/// An element of ℚ[s, s⁻¹]: `Σ coeffs[i]·s^(offset+i)`.
///
/// Both end coefficients are nonzero; the zero element has no coefficients
/// and offset 0. Every nonzero value factors uniquely as the unit `s^offset`
/// times a ℚ[s] polynomial with nonzero constant term.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    offset: i64,
    coeffs: Vec<Rational>,
}

impl LaurentPoly {
    pub fn new(offset: i64, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return LaurentPoly::zero();
        }
        coeffs.drain(..lead);
        LaurentPoly { offset: offset + lead as i64, coeffs }
    }

    /// Canonical form of a raw exponent → coefficient map.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut acc: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e, c) in terms {
            let slot = acc.entry(e).or_insert_with(Rational::zero);
            *slot = &*slot + &c;
        }
        let Some((&lo, _)) = acc.iter().find(|(_, c)| !c.is_zero()) else {
            return LaurentPoly::zero();
        };
        let hi = *acc.keys().next_back().unwrap();
        let mut coeffs = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in acc.into_iter().filter(|(e, _)| *e >= lo) {
            coeffs[(e - lo) as usize] = c;
        }
        LaurentPoly::new(lo, coeffs)
    }

    pub fn zero() -> Self {
        LaurentPoly { offset: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::new(0, vec![c])
    }

    pub fn from_i64(c: i64) -> Self {
        LaurentPoly::constant(Rational::from(c))
    }

    /// `c·s^k`
    pub fn monomial(c: Rational, k: i64) -> Self {
        LaurentPoly::new(k, vec![c])
    }

    pub fn s() -> Self {
        LaurentPoly::monomial(Rational::one(), 1)
    }

    pub fn from_poly(p: &Polynomial) -> Self {
        LaurentPoly::new(0, p.coeffs().to_vec())
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `s^e`.
    pub fn coeff(&self, e: i64) -> Rational {
        let k = e - self.offset;
        if k < 0 {
            return Rational::zero();
        }
        self.coeffs.get(k as usize).cloned().unwrap_or_else(Rational::zero)
    }

    /// `(exponent, coefficient)` pairs of the nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.offset + k as i64, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest and highest exponent present.
    pub fn exponent_range(&self) -> Option<(i64, i64)> {
        (!self.is_zero()).then(|| (self.offset, self.offset + self.coeffs.len() as i64 - 1))
    }

    /// Top exponent minus bottom exponent; the Euclidean norm of the ring.
    /// Units have spread 0. `None` for zero.
    pub fn spread(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Units of ℚ[s, s⁻¹] are exactly the nonzero monomials `q·s^k`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        Some(LaurentPoly::monomial(self.coeffs[0].recip().ok()?, -self.offset))
    }

    /// The ℚ[s] part with nonzero constant term (`self = s^offset · part`).
    pub fn poly_part(&self) -> Polynomial {
        Polynomial::new(self.coeffs.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LaurentPoly::new(self.offset, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by the unit `s^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { offset: self.offset + k, coeffs: self.coeffs.clone() }
    }

    /// Division with remainder: `self = q·rhs + r` where `r = 0` or
    /// `spread(r) < spread(rhs)`.
    pub fn div_rem(&self, rhs: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly), ArithmeticError> {
        if rhs.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok((LaurentPoly::zero(), LaurentPoly::zero()));
        }
        let (q, r) = self.poly_part().div_rem(&rhs.poly_part())?;
        let q = LaurentPoly::from_poly(&q).shift(self.offset - rhs.offset);
        let r = LaurentPoly::from_poly(&r).shift(self.offset);
        Ok((q, r))
    }

    /// Exact division, if `rhs` divides `self`.
    pub fn exact_div(&self, rhs: &LaurentPoly) -> Option<LaurentPoly> {
        let (q, r) = self.div_rem(rhs).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &LaurentPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.exact_div(self).is_some()
    }

    /// Canonical associate: offset 0 and monic. Zero maps to zero.
    pub fn canonical(&self) -> LaurentPoly {
        match self.coeffs.last() {
            None => LaurentPoly::zero(),
            Some(lc) => {
                let inv = lc.recip().expect("nonzero leading coefficient");
                LaurentPoly::new(0, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// The unit `u` with `self = u · canonical(self)`.
    pub fn unit_part(&self) -> LaurentPoly {
        match self.coeffs.last() {
            None => LaurentPoly::one(),
            Some(lc) => LaurentPoly::monomial(lc.clone(), self.offset),
        }
    }

    /// Canonical greatest common divisor computed by the Euclidean algorithm
    /// on [`div_rem`](Self::div_rem).
    pub fn gcd(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.canonical()
    }

    /// Applies the polynomial to a finite window of a stream: the value at
    /// time `t` is `Σ c_e · w(t − e)`, or `None` if that reaches outside.
    pub fn apply_at(&self, w: &[Rational], t: usize) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (e, c) in self.terms() {
            let idx = t as i64 - e;
            if idx < 0 || idx as usize >= w.len() {
                return None;
            }
            acc = &acc + &(c * &w[idx as usize]);
        }
        Some(acc)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly_part().fmt_with_offset(f, self.offset)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        match (self.exponent_range(), rhs.exponent_range()) {
            (None, _) => rhs.clone(),
            (_, None) => self.clone(),
            (Some((a0, a1)), Some((b0, b1))) => {
                let lo = a0.min(b0);
                let hi = a1.max(b1);
                let coeffs = (lo..=hi).map(|e| &self.coeff(e) + &rhs.coeff(e)).collect();
                LaurentPoly::new(lo, coeffs)
            }
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let p = &self.poly_part() * &rhs.poly_part();
        LaurentPoly::new(self.offset + rhs.offset, p.coeffs().to_vec())
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { offset: self.offset, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}
