//! Pairs `(mu, sigma)` with `sigma` in the ideal of series without constant
//! term, under the product `(m1,s1) ⋊ (m2,s2) = ((m1∘s2)·m2, s1∘s2)`.
//!
//! The product is associative with identity `(1, x)`, right distributive over
//! addition, and not left distributive.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{Field, Rational};
use crate::series::Series;

/// An element of the Riordan near algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct RiordanElement {
    mu: Series,
    sigma: Series,
}

impl RiordanElement {
    /// Fails fast unless `sigma` has zero constant term and precisions agree.
    pub fn new(mu: Series, sigma: Series) -> Result<Self> {
        if mu.precision() != sigma.precision() {
            return Err(Error::PrecisionMismatch {
                left: mu.precision(),
                right: sigma.precision(),
            });
        }
        if !sigma.coeff(0)?.is_zero() {
            return Err(Error::SigmaOutsideIdeal);
        }
        Ok(RiordanElement { mu, sigma })
    }

    /// The identity `(1, x)`; needs precision at least 2.
    pub fn identity(precision: usize) -> Result<Self> {
        RiordanElement::new(Series::one(precision)?, Series::x(precision)?)
    }

    /// The two-sided zero `(0, 0)`.
    pub fn zero(precision: usize) -> Result<Self> {
        RiordanElement::new(Series::zero(precision)?, Series::zero(precision)?)
    }

    pub fn mu(&self) -> &Series {
        &self.mu
    }

    pub fn sigma(&self) -> &Series {
        &self.sigma
    }

    pub fn precision(&self) -> usize {
        self.mu.precision()
    }

    pub fn is_zero(&self) -> bool {
        self.mu.is_zero() && self.sigma.is_zero()
    }

    // Vector space structure.

    pub fn add(&self, other: &Self) -> Result<Self> {
        RiordanElement::new(self.mu.add(&other.mu)?, self.sigma.add(&other.sigma)?)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        RiordanElement::new(self.mu.sub(&other.mu)?, self.sigma.sub(&other.sigma)?)
    }

    pub fn scale(&self, alpha: &Rational) -> Self {
        RiordanElement {
            mu: self.mu.scale(alpha),
            sigma: self.sigma.scale(alpha),
        }
    }

    /// The semidirect product `((mu1 ∘ sigma2) · mu2, sigma1 ∘ sigma2)`.
    pub fn rtimes(&self, other: &Self) -> Result<Self> {
        let mu = self.mu.substitute(&other.sigma)?.mul(&other.mu)?;
        let sigma = self.sigma.substitute(&other.sigma)?;
        RiordanElement::new(mu, sigma)
    }

    /// `n`th ⋊-power via the closed form
    /// `(∏_{k=1}^{n} mu ∘ sigma^{∘(k-1)}, sigma^{∘n})`, accumulating the
    /// composition powers of sigma left to right.
    pub fn rtimes_power(&self, n: usize) -> Result<Self> {
        let prec = self.precision();
        if n == 0 {
            return RiordanElement::identity(prec);
        }
        let mut product = Series::one(prec)?;
        let mut sigma_pow = Series::x(prec)?; // sigma^{∘0}
        for _ in 1..=n {
            product = product.mul(&self.mu.substitute(&sigma_pow)?)?;
            sigma_pow = sigma_pow.substitute(&self.sigma)?;
        }
        RiordanElement::new(product, sigma_pow)
    }

    /// Membership in the two-sided ideal: `val(mu) >= 1` and `val(sigma) >= 2`.
    pub fn is_ideal(&self) -> bool {
        self.mu.valuation().is_at_least(1) && self.sigma.valuation().is_at_least(2)
    }

    /// Membership in the Riordan group: `mu(0) = 1` and `<sigma, x> = 1`.
    pub fn is_group(&self) -> bool {
        self.precision() >= 2
            && self.mu.coeffs()[0].is_one()
            && self.sigma.coeffs()[1].is_one()
    }

    /// Group inverse `(1/(mu ∘ sigma⁻¹), sigma⁻¹)` where `sigma⁻¹` is the
    /// compositional inverse. Verified by multiplication in debug builds.
    pub fn group_inverse(&self) -> Result<Self> {
        if !self.is_group() {
            return Err(Error::NotGroupElement);
        }
        let sigma_bar = self.sigma.comp_inverse()?;
        let mu_bar = self.mu.substitute(&sigma_bar)?.mul_inverse()?;
        let inv = RiordanElement::new(mu_bar, sigma_bar)?;
        debug_assert_eq!(
            self.rtimes(&inv).unwrap(),
            RiordanElement::identity(self.precision()).unwrap()
        );
        debug_assert_eq!(
            inv.rtimes(self).unwrap(),
            RiordanElement::identity(self.precision()).unwrap()
        );
        Ok(inv)
    }

    /// Checks that both products with an ideal element land in the ideal.
    pub fn ideal_closure_check(&self, p: &RiordanElement) -> Result<bool> {
        if !p.is_ideal() {
            return Err(Error::NotIdealElement);
        }
        Ok(self.rtimes(p)?.is_ideal() && p.rtimes(self)?.is_ideal())
    }

    /// Truncates both components to a smaller precision.
    pub fn truncate(&self, precision: usize) -> Result<Self> {
        RiordanElement::new(self.mu.truncate(precision)?, self.sigma.truncate(precision)?)
    }
}

impl fmt::Display for RiordanElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} ; {})", self.mu, self.sigma)
    }
}

impl fmt::Debug for RiordanElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(mu: &[i64], sigma: &[i64]) -> RiordanElement {
        RiordanElement::new(
            Series::from_ints(mu).unwrap(),
            Series::from_ints(sigma).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn construction_enforces_ideal_sigma() {
        let mu = Series::from_ints(&[1, 0]).unwrap();
        let bad = Series::from_ints(&[1, 1]).unwrap();
        assert!(matches!(
            RiordanElement::new(mu, bad),
            Err(Error::SigmaOutsideIdeal)
        ));
    }

    #[test]
    fn rtimes_group_square() {
        // (1+x, x+x^2)^⋊2 = (1+2x+2x^2+x^3, x+2x^2+2x^3+x^4)
        let a = pair(&[1, 1, 0, 0, 0], &[0, 1, 1, 0, 0]);
        let sq = a.rtimes(&a).unwrap();
        assert_eq!(sq, pair(&[1, 2, 2, 1, 0], &[0, 1, 2, 2, 1]));
        assert_eq!(a.rtimes_power(2).unwrap(), sq);
    }

    #[test]
    fn rtimes_monomial_square() {
        // (x, x^2) ⋊ (x, x^2) = (x^3, x^4)
        let a = pair(&[0, 1, 0, 0, 0], &[0, 0, 1, 0, 0]);
        let sq = a.rtimes(&a).unwrap();
        assert_eq!(sq, pair(&[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1]));
    }

    #[test]
    fn identity_laws() {
        let a = pair(&[2, -1, 3, 0, 0], &[0, 2, 1, 0, 5]);
        let e = RiordanElement::identity(5).unwrap();
        assert_eq!(a.rtimes(&e).unwrap(), a);
        assert_eq!(e.rtimes(&a).unwrap(), a);
    }

    #[test]
    fn zero_divisors() {
        // (mu, 0) ⋊ (0, sigma) = (0, 0)
        let left = pair(&[1, 2, 3, 0, 0], &[0, 0, 0, 0, 0]);
        let right = pair(&[0, 0, 0, 0, 0], &[0, 1, 1, 0, 0]);
        assert!(left.rtimes(&right).unwrap().is_zero());

        let z = RiordanElement::zero(5).unwrap();
        let a = pair(&[1, 1, 0, 0, 0], &[0, 1, 1, 0, 0]);
        assert!(z.rtimes(&a).unwrap().is_zero());
        assert!(a.rtimes(&z).unwrap().is_zero());
    }

    #[test]
    fn power_degenerate_cases() {
        // (mu, 0)^⋊n = (mu * mu(0)^{n-1}, 0) for n >= 1
        let m = pair(&[3, 1, 0, 0, 0], &[0, 0, 0, 0, 0]);
        let p3 = m.rtimes_power(3).unwrap();
        let expected_mu = Series::from_ints(&[27, 9, 0, 0, 0]).unwrap();
        assert_eq!(p3.mu(), &expected_mu);
        assert!(p3.sigma().is_zero());

        // (0, sigma)^⋊n = (0, sigma^{∘n})
        let s = pair(&[0, 0, 0, 0, 0], &[0, 1, 1, 0, 0]);
        let p2 = s.rtimes_power(2).unwrap();
        assert!(p2.mu().is_zero());
        assert_eq!(
            p2.sigma(),
            &Series::from_ints(&[0, 1, 2, 2, 1]).unwrap()
        );

        // n = 0 gives the identity
        assert_eq!(m.rtimes_power(0).unwrap(), RiordanElement::identity(5).unwrap());
    }

    #[test]
    fn left_distributivity_fails() {
        // derived from x^2 ∘ (x - x) = 0 but x^2∘x + x^2∘(-x) = 2x^2:
        // with a = (0, x^2), left products against b + (-b) disagree.
        let x2 = Series::from_ints(&[0, 0, 1, 0]).unwrap();
        let x = Series::x(4).unwrap();
        let lhs = x2.substitute(&x.sub(&x).unwrap()).unwrap();
        let rhs = x2
            .substitute(&x)
            .unwrap()
            .add(&x2.substitute(&x.neg()).unwrap())
            .unwrap();
        assert!(lhs.is_zero());
        assert_eq!(rhs, Series::from_ints(&[0, 0, 2, 0]).unwrap());
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn membership_predicates() {
        assert!(pair(&[0, 1, 0], &[0, 0, 1]).is_ideal());
        assert!(pair(&[1, 1, 0, 0, 0], &[0, 1, 1, 0, 0]).is_group());
        assert!(!pair(&[1, 1, 0], &[0, 0, 1]).is_ideal());
    }

    #[test]
    fn group_inverse_round_trip() {
        let e = RiordanElement::identity(6).unwrap();
        assert_eq!(e.group_inverse().unwrap(), e);

        let a = pair(&[1, 1, 0, 0, 0, 0, 0, 0], &[0, 1, 1, 0, 0, 0, 0, 0]);
        let inv = a.group_inverse().unwrap();
        let id = RiordanElement::identity(8).unwrap();
        assert_eq!(a.rtimes(&inv).unwrap(), id);
        assert_eq!(inv.rtimes(&a).unwrap(), id);
        assert!(inv.is_group());
        assert_eq!(inv.group_inverse().unwrap(), a);

        assert!(pair(&[0, 1, 0], &[0, 1, 0]).group_inverse().is_err());
    }

    #[test]
    fn ideal_closure() {
        let p = pair(&[0, 1, 0, 0, 0], &[0, 0, 1, 0, 0]);
        let a = pair(&[5, -2, 1, 0, 3], &[0, 7, 1, 2, 0]);
        assert!(a.ideal_closure_check(&p).unwrap());
        assert!(RiordanElement::identity(5)
            .unwrap()
            .ideal_closure_check(&p)
            .unwrap());
        assert!(RiordanElement::zero(5)
            .unwrap()
            .ideal_closure_check(&p)
            .unwrap());
    }

    #[test]
    fn pair_display() {
        let a = pair(&[1, 1, 0, 0, 0], &[0, 1, 1, 0, 0]);
        assert_eq!(a.to_string(), "(1 + x + O(x^5) ; x + x^2 + O(x^5))");
    }
}
