//! The commutative algebra of series in a fixed ideal base point
//! `(mu+, sigma+)`: elements are coefficient sequences `f` standing for
//! `Σ f_n (mu+,sigma+)^{⋊n}`, multiplied by convolution (the Cauchy product).
//! Injectivity of the substitution map makes the representation canonical, so
//! all arithmetic happens on `rep` and realization back into the near algebra
//! is on demand.

use std::fmt;

use crate::calculus::{binomial, phi_apply};
use crate::error::{Error, Result};
use crate::rational::{Field, Rational};
use crate::riordan::RiordanElement;
use crate::series::Series;

#[derive(Clone, PartialEq, Eq)]
pub struct CauchyElement {
    rep: Series,
    base: RiordanElement,
}

impl CauchyElement {
    /// Wraps a coefficient sequence over an ideal base point.
    pub fn from_series(base: &RiordanElement, rep: Series) -> Result<Self> {
        if !base.is_ideal() {
            return Err(Error::NotIdealElement);
        }
        if rep.precision() != base.precision() {
            return Err(Error::PrecisionMismatch {
                left: rep.precision(),
                right: base.precision(),
            });
        }
        Ok(CauchyElement {
            rep,
            base: base.clone(),
        })
    }

    /// The multiplicative unit `delta^{(0)}`.
    pub fn unit(base: &RiordanElement) -> Result<Self> {
        Self::from_series(base, Series::one(base.precision())?)
    }

    /// The monomial element `delta^{(d)}`, realizing to `base^{⋊d}`.
    pub fn delta(base: &RiordanElement, d: usize) -> Result<Self> {
        Self::from_series(
            base,
            Series::monomial(Rational::from_int(1), d, base.precision())?,
        )
    }

    pub fn rep(&self) -> &Series {
        &self.rep
    }

    pub fn base(&self) -> &RiordanElement {
        &self.base
    }

    pub fn precision(&self) -> usize {
        self.rep.precision()
    }

    /// Evaluates the element back into the Riordan near algebra.
    pub fn realize(&self) -> Result<RiordanElement> {
        phi_apply(&self.base, &self.rep)
    }

    fn check_base(&self, other: &Self) -> Result<()> {
        if self.base != other.base {
            return Err(Error::BaseMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        Self::from_series(&self.base, self.rep.add(&other.rep)?)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        Self::from_series(&self.base, self.rep.sub(&other.rep)?)
    }

    pub fn scale(&self, alpha: &Rational) -> Self {
        CauchyElement {
            rep: self.rep.scale(alpha),
            base: self.base.clone(),
        }
    }

    /// Cauchy product: convolution of the representations.
    pub fn star_mul(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        Self::from_series(&self.base, self.rep.mul(&other.rep)?)
    }

    pub fn star_power(&self, n: usize) -> Result<Self> {
        Self::from_series(&self.base, self.rep.pow(n)?)
    }

    /// Star inverse of an element with constant term 1, by the alternating
    /// geometric series `Σ (-1)^n g^{*n}` with `g = rep - 1`.
    pub fn star_inverse(&self) -> Result<Self> {
        if !self.rep.coeff(0)?.is_one() {
            return Err(Error::NotStarInvertible);
        }
        let prec = self.precision();
        let g = self.rep.sub(&Series::one(prec)?)?;
        let mut acc = Series::zero(prec)?;
        let mut gpow = Series::one(prec)?;
        for n in 0..prec {
            let c = Rational::from_int(if n % 2 == 0 { 1 } else { -1 });
            acc = acc.add(&gpow.scale(&c))?;
            gpow = gpow.mul(&g)?;
        }
        Self::from_series(&self.base, acc)
    }

    /// Delegates to the series exponential on the representation.
    pub fn star_exp(&self) -> Result<Self> {
        Self::from_series(&self.base, self.rep.exp_series()?)
    }

    /// Delegates to the series logarithm on the representation.
    pub fn star_log(&self) -> Result<Self> {
        Self::from_series(&self.base, self.rep.log_series()?)
    }

    /// Generalized power `(1 + u)^{*lambda} = Σ C(lambda,n) u^{*n}` with
    /// `u = rep - 1`; requires constant term 1. Term `n` only contributes
    /// from index `n` on, so the series is truncated at the precision.
    pub fn star_generalized_power(&self, lambda: &Rational) -> Result<Self> {
        if !self.rep.coeff(0)?.is_one() {
            return Err(Error::NotStarInvertible);
        }
        let prec = self.precision();
        let u = self.rep.sub(&Series::one(prec)?)?;
        let mut acc = Series::zero(prec)?;
        let mut upow = Series::one(prec)?;
        for n in 0..prec {
            acc = acc.add(&upow.scale(&binomial(lambda, n)))?;
            upow = upow.mul(&u)?;
        }
        Self::from_series(&self.base, acc)
    }

    /// One-parameter subgroup law:
    /// `pow(alpha) * pow(beta) = pow(alpha + beta)` modulo `x^N`.
    pub fn one_parameter_check(&self, alpha: &Rational, beta: &Rational) -> Result<bool> {
        let pa = self.star_generalized_power(alpha)?;
        let pb = self.star_generalized_power(beta)?;
        let pab = self.star_generalized_power(&(alpha + beta))?;
        Ok(pa.star_mul(&pb)? == pab)
    }
}

impl fmt::Display for CauchyElement {
    /// Sigma-form: the coefficient sequence annotated with its base point,
    /// e.g. `[1, 1/2] over (x + O(x^2) ; x^2 + O(x^2)) + O(n^2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.rep.coeffs().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "] over {} + O(n^{})", self.base, self.precision())
    }
}

impl fmt::Debug for CauchyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
