//! Truncated formal power series over an exact field.
//!
//! A [`Series`] stores the coefficients of `x^0 .. x^(N-1)` and is understood
//! modulo `x^N`. Every operation is exact on the stored coefficients; binary
//! operations require both operands to carry the same precision and fail
//! loudly otherwise.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{Field, Rational};

/// Order of vanishing of a truncated series.
///
/// `Exact(k)` means coefficient `k` is nonzero and all lower ones vanish.
/// `AtLeast(N)` means every stored coefficient is zero; truncation cannot
/// distinguish a true valuation `>= N` from `+inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Exact(usize),
    AtLeast(usize),
}

impl Valuation {
    /// Best known lower bound on the true valuation.
    pub fn lower_bound(&self) -> usize {
        match *self {
            Valuation::Exact(k) => k,
            Valuation::AtLeast(n) => n,
        }
    }

    pub fn is_at_least(&self, k: usize) -> bool {
        self.lower_bound() >= k
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Valuation::Exact(_))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Valuation::Exact(k) => write!(f, "{k}"),
            Valuation::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

/// A formal power series known modulo `x^N` where `N = coeffs.len()`.
#[derive(Clone, PartialEq, Eq)]
pub struct Series<F: Field = Rational> {
    coeffs: Vec<F>,
}

impl<F: Field> Series<F> {
    /// Builds a series from explicit coefficients; `coeffs.len()` becomes the
    /// precision and must be at least 1.
    pub fn from_coeffs(coeffs: Vec<F>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidPrecision {
                given: 0,
                required: 1,
            });
        }
        Ok(Series { coeffs })
    }

    pub fn zero(precision: usize) -> Result<Self> {
        Self::from_coeffs(vec![F::zero(); precision])
    }

    pub fn one(precision: usize) -> Result<Self> {
        let mut s = Self::zero(precision)?;
        s.coeffs[0] = F::one();
        Ok(s)
    }

    /// The identity of the substitution monoid. Needs `N >= 2` so the
    /// x-coefficient is representable.
    pub fn x(precision: usize) -> Result<Self> {
        if precision < 2 {
            return Err(Error::InvalidPrecision {
                given: precision,
                required: 2,
            });
        }
        let mut s = Self::zero(precision)?;
        s.coeffs[1] = F::one();
        Ok(s)
    }

    pub fn constant(c: F, precision: usize) -> Result<Self> {
        let mut s = Self::zero(precision)?;
        s.coeffs[0] = c;
        Ok(s)
    }

    /// `c * x^k` at the given precision; `k >= N` is an error, not zero.
    pub fn monomial(c: F, k: usize, precision: usize) -> Result<Self> {
        if k >= precision {
            return Err(Error::IndexOutOfRange {
                index: k,
                precision,
            });
        }
        let mut s = Self::zero(precision)?;
        s.coeffs[k] = c;
        Ok(s)
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// `<f, x^n>`; out-of-range access is an error.
    pub fn coeff(&self, n: usize) -> Result<&F> {
        self.coeffs.get(n).ok_or(Error::IndexOutOfRange {
            index: n,
            precision: self.coeffs.len(),
        })
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(F::is_zero)
    }

    fn check_precision(&self, other: &Self) -> Result<()> {
        if self.precision() != other.precision() {
            return Err(Error::PrecisionMismatch {
                left: self.precision(),
                right: other.precision(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_precision(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        Series::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(F::neg).collect(),
        }
    }

    pub fn scale(&self, alpha: &F) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|c| alpha.mul(c)).collect(),
        }
    }

    /// Cauchy product modulo `x^N`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_precision(other)?;
        let n = self.precision();
        let mut coeffs = vec![F::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Series::from_coeffs(coeffs)
    }

    /// Multiplicative `n`th power.
    pub fn pow(&self, n: usize) -> Result<Self> {
        let mut acc = Self::one(self.precision())?;
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn valuation(&self) -> Valuation {
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                return Valuation::Exact(k);
            }
        }
        Valuation::AtLeast(self.precision())
    }

    /// Formal substitution `self ∘ sigma`, requiring `sigma` to lie in the
    /// ideal of series without constant term. Horner-style accumulation: only
    /// the first `N` coefficients of `self` can reach below `x^N` because
    /// `val(sigma^n) >= n`.
    pub fn substitute(&self, sigma: &Self) -> Result<Self> {
        self.check_precision(sigma)?;
        if !sigma.coeffs[0].is_zero() {
            return Err(Error::SubstitutionOutsideIdeal);
        }
        let n = self.precision();
        let mut acc = Self::zero(n)?;
        for k in (0..n).rev() {
            acc = acc.mul(sigma)?;
            acc.coeffs[0] = acc.coeffs[0].add(&self.coeffs[k]);
        }
        Ok(acc)
    }

    /// `n`-fold self-substitution, with `sigma^{∘0} = x`.
    pub fn comp_power(&self, n: usize) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::SubstitutionOutsideIdeal);
        }
        let mut acc = Self::x(self.precision())?;
        for _ in 0..n {
            acc = acc.substitute(self)?;
        }
        Ok(acc)
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn mul_inverse(&self) -> Result<Self> {
        let f0 = &self.coeffs[0];
        let inv0 = f0.inv().ok_or(Error::NotAUnit)?;
        let n = self.precision();
        let mut g = vec![F::zero(); n];
        g[0] = inv0.clone();
        for m in 1..n {
            let mut acc = F::zero();
            for k in 1..=m {
                acc = acc.add(&self.coeffs[k].mul(&g[m - k]));
            }
            g[m] = acc.neg().mul(&inv0);
        }
        Series::from_coeffs(g)
    }

    /// Compositional inverse: the unique `tau` with `self ∘ tau = tau ∘ self = x`
    /// modulo `x^N`. Requires valuation exactly 1. Solved by the triangular
    /// recurrence from matching coefficients of `self ∘ tau = x`.
    pub fn comp_inverse(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::SubstitutionOutsideIdeal);
        }
        let n = self.precision();
        if n < 2 || self.coeffs[1].is_zero() {
            return Err(Error::NotCompositionallyInvertible);
        }
        let s1_inv = self.coeffs[1].inv().expect("nonzero leading coefficient");
        let mut tau = Self::zero(n)?;
        tau.coeffs[1] = s1_inv.clone();
        for m in 2..n {
            // With t_m still zero, <self ∘ tau, x^m> = s1*t_m + r where r is
            // already determined by t_1..t_{m-1}.
            let r = self.substitute(&tau)?;
            tau.coeffs[m] = r.coeffs[m].neg().mul(&s1_inv);
        }
        Ok(tau)
    }

    /// `exp(f) = Σ f^n / n!`; requires `val(f) >= 1`.
    pub fn exp_series(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTermNotZero);
        }
        let n = self.precision();
        let mut acc = Self::one(n)?;
        let mut term = Self::one(n)?;
        for k in 1..n {
            term = term.mul(self)?.scale(
                &F::from_i64(k as i64)
                    .inv()
                    .expect("characteristic zero field"),
            );
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// `log(f) = Σ (-1)^{n+1} (f-1)^n / n`; requires constant term 1.
    pub fn log_series(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let n = self.precision();
        let u = self.sub(&Self::one(n)?)?;
        let mut acc = Self::zero(n)?;
        let mut upow = Self::one(n)?;
        for k in 1..n {
            upow = upow.mul(&u)?;
            let c = F::from_i64(if k % 2 == 1 { 1 } else { -1 })
                .mul(&F::from_i64(k as i64).inv().expect("characteristic zero"));
            acc = acc.add(&upow.scale(&c))?;
        }
        Ok(acc)
    }

    /// Drops coefficients at and above `precision`; the result is the same
    /// series known to a smaller order.
    pub fn truncate(&self, precision: usize) -> Result<Self> {
        if precision < 1 || precision > self.precision() {
            return Err(Error::InvalidPrecision {
                given: precision,
                required: 1,
            });
        }
        Series::from_coeffs(self.coeffs[..precision].to_vec())
    }
}

impl Series<Rational> {
    /// Convenience constructor from small integer coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Series::from_coeffs(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }
}

impl<F: Field> fmt::Display for Series<F> {
    /// Canonical form: ascending powers, zero terms omitted, `O(x^N)` suffix.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // Render through the field's Display; detect the sign textually
            // so any Field backend works.
            let rendered = c.to_string();
            let (sign_neg, mag_str) = match rendered.strip_prefix('-') {
                Some(stripped) => (true, stripped.to_string()),
                None => (false, rendered),
            };
            if first {
                if sign_neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign_neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_is_one = mag_str == "1";
            match (k, coeff_is_one) {
                (0, _) => write!(f, "{mag_str}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag_str}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag_str}*x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.precision())
    }
}

impl<F: Field> fmt::Debug for Series<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn constants() {
        assert_eq!(Series::one(4).unwrap(), Series::from_ints(&[1, 0, 0, 0]).unwrap());
        assert_eq!(Series::x(4).unwrap(), Series::from_ints(&[0, 1, 0, 0]).unwrap());
        let m = Series::monomial(q(3, 2), 2, 4).unwrap();
        assert_eq!(m.coeff(2).unwrap(), &q(3, 2));
        assert!(Series::<Rational>::monomial(q(1, 1), 4, 4).is_err());
        assert!(Series::<Rational>::x(1).is_err());
    }

    #[test]
    fn coeff_out_of_range_is_error() {
        let f = Series::from_ints(&[1, 2]).unwrap();
        assert!(matches!(
            f.coeff(2),
            Err(Error::IndexOutOfRange { index: 2, precision: 2 })
        ));
    }

    #[test]
    fn mul_examples() {
        let one_plus_x = Series::from_ints(&[1, 1, 0, 0]).unwrap();
        let sq = one_plus_x.mul(&one_plus_x).unwrap();
        assert_eq!(sq, Series::from_ints(&[1, 2, 1, 0]).unwrap());

        // (1+x+x^2)(1+x) = 1+2x+2x^2+x^3
        let a = Series::from_ints(&[1, 1, 1, 0]).unwrap();
        let b = Series::from_ints(&[1, 1, 0, 0]).unwrap();
        assert_eq!(a.mul(&b).unwrap(), Series::from_ints(&[1, 2, 2, 1]).unwrap());
    }

    #[test]
    fn add_cancels() {
        let x2 = Series::monomial(Rational::from_int(1), 2, 6).unwrap();
        assert!(x2.add(&x2.neg()).unwrap().is_zero());
    }

    #[test]
    fn precision_mismatch_fails_loudly() {
        let a = Series::from_ints(&[1, 1]).unwrap();
        let b = Series::from_ints(&[1, 1, 1]).unwrap();
        assert!(matches!(a.add(&b), Err(Error::PrecisionMismatch { .. })));
        assert!(matches!(a.mul(&b), Err(Error::PrecisionMismatch { .. })));
    }

    #[test]
    fn valuation_examples() {
        let f = Series::from_ints(&[0, 1, 1, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(f.valuation(), Valuation::Exact(1));
        assert_eq!(
            Series::<Rational>::zero(8).unwrap().valuation(),
            Valuation::AtLeast(8)
        );
        // x^3 * (1+x): product law oracle gives Exact(3).
        let x3 = Series::monomial(Rational::from_int(1), 3, 8).unwrap();
        let g = Series::from_ints(&[1, 1, 0, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(x3.mul(&g).unwrap().valuation(), Valuation::Exact(3));
    }

    #[test]
    fn substitute_examples() {
        // (1+x) ∘ (x+x^2) = 1+x+x^2
        let f = Series::from_ints(&[1, 1, 0]).unwrap();
        let s = Series::from_ints(&[0, 1, 1]).unwrap();
        assert_eq!(f.substitute(&s).unwrap(), Series::from_ints(&[1, 1, 1]).unwrap());

        // x^2 ∘ (2x) = 4x^2
        let x2 = Series::from_ints(&[0, 0, 1, 0]).unwrap();
        let two_x = Series::from_ints(&[0, 2, 0, 0]).unwrap();
        assert_eq!(
            x2.substitute(&two_x).unwrap(),
            Series::from_ints(&[0, 0, 4, 0]).unwrap()
        );

        // f ∘ x = f
        let f = Series::from_ints(&[3, -1, 2, 5]).unwrap();
        assert_eq!(f.substitute(&Series::x(4).unwrap()).unwrap(), f);

        // constant-term obstruction
        let bad = Series::from_ints(&[1, 1, 0, 0]).unwrap();
        assert!(matches!(
            f.substitute(&bad),
            Err(Error::SubstitutionOutsideIdeal)
        ));
    }

    #[test]
    fn comp_power_examples() {
        let s = Series::from_ints(&[0, 1, 1, 0, 0]).unwrap();
        assert_eq!(
            s.comp_power(2).unwrap(),
            Series::from_ints(&[0, 1, 2, 2, 1]).unwrap()
        );
        assert_eq!(s.comp_power(0).unwrap(), Series::x(5).unwrap());

        let z = Series::<Rational>::zero(5).unwrap();
        assert!(z.comp_power(1).unwrap().is_zero());

        // val(sigma^{∘n}) = val(sigma)^n: (x^2)^{∘3} = x^8 at N=9
        let x2 = Series::monomial(Rational::from_int(1), 2, 9).unwrap();
        let p = x2.comp_power(3).unwrap();
        assert_eq!(p, Series::monomial(Rational::from_int(1), 8, 9).unwrap());
    }

    #[test]
    fn mul_inverse_examples() {
        let f = Series::from_ints(&[1, -1, 0, 0, 0]).unwrap();
        assert_eq!(
            f.mul_inverse().unwrap(),
            Series::from_ints(&[1, 1, 1, 1, 1]).unwrap()
        );
        let two = Series::constant(Rational::from_int(2), 3).unwrap();
        assert_eq!(
            two.mul_inverse().unwrap().coeff(0).unwrap(),
            &Rational::new(1, 2)
        );
        assert!(matches!(
            Series::<Rational>::zero(3).unwrap().mul_inverse(),
            Err(Error::NotAUnit)
        ));
    }

    #[test]
    fn comp_inverse_examples() {
        let x = Series::<Rational>::x(5).unwrap();
        assert_eq!(x.comp_inverse().unwrap(), x);

        let two_x = Series::from_ints(&[0, 2, 0, 0, 0]).unwrap();
        let inv = two_x.comp_inverse().unwrap();
        assert_eq!(inv.coeff(1).unwrap(), &Rational::new(1, 2));

        // x + x^2 reverts to x - x^2 + 2x^3 - 5x^4
        let s = Series::from_ints(&[0, 1, 1, 0, 0]).unwrap();
        let t = s.comp_inverse().unwrap();
        assert_eq!(t, Series::from_ints(&[0, 1, -1, 2, -5]).unwrap());
        // verify by direct expansion both ways
        assert_eq!(s.substitute(&t).unwrap(), Series::x(5).unwrap());
        assert_eq!(t.substitute(&s).unwrap(), Series::x(5).unwrap());

        let x2 = Series::from_ints(&[0, 0, 1]).unwrap();
        assert!(matches!(
            x2.comp_inverse(),
            Err(Error::NotCompositionallyInvertible)
        ));
    }

    #[test]
    fn exp_log_examples() {
        let z = Series::<Rational>::zero(4).unwrap();
        assert_eq!(z.exp_series().unwrap(), Series::one(4).unwrap());

        let x = Series::<Rational>::x(4).unwrap();
        let e = x.exp_series().unwrap();
        assert_eq!(e.coeff(0).unwrap(), &Rational::from_int(1));
        assert_eq!(e.coeff(1).unwrap(), &Rational::from_int(1));
        assert_eq!(e.coeff(2).unwrap(), &Rational::new(1, 2));
        assert_eq!(e.coeff(3).unwrap(), &Rational::new(1, 6));

        let f = Series::from_ints(&[1, 1, 0, 0]).unwrap();
        let l = f.log_series().unwrap();
        assert_eq!(l.coeff(1).unwrap(), &Rational::from_int(1));
        assert_eq!(l.coeff(2).unwrap(), &Rational::new(-1, 2));
        assert_eq!(l.coeff(3).unwrap(), &Rational::new(1, 3));
        // round trips
        assert_eq!(l.exp_series().unwrap(), f);
        assert_eq!(e.log_series().unwrap(), x);

        assert!(f.exp_series().is_err());
        assert!(x.log_series().is_err());
    }

    #[test]
    fn display_canonical() {
        let f = Series::from_ints(&[1, 2, 2, 1]).unwrap();
        assert_eq!(f.to_string(), "1 + 2*x + 2*x^2 + x^3 + O(x^4)");
        let g = Series::from_coeffs(vec![
            Rational::from_int(0),
            Rational::new(-1, 2),
            Rational::from_int(0),
            Rational::from_int(-1),
        ])
        .unwrap();
        assert_eq!(g.to_string(), "-1/2*x - x^3 + O(x^4)");
        assert_eq!(
            Series::<Rational>::zero(3).unwrap().to_string(),
            "0 + O(x^3)"
        );
    }

    // A tiny prime field to exercise the coefficient abstraction.
    #[derive(Clone, Copy, PartialEq, Eq, Debug)]
    struct F7(u8);
    impl fmt::Display for F7 {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "{}", self.0)
        }
    }

    impl Field for F7 {
        fn zero() -> Self {
            F7(0)
        }
        fn one() -> Self {
            F7(1)
        }
        fn from_i64(n: i64) -> Self {
            F7(n.rem_euclid(7) as u8)
        }
        fn add(&self, rhs: &Self) -> Self {
            F7((self.0 + rhs.0) % 7)
        }
        fn neg(&self) -> Self {
            F7((7 - self.0) % 7)
        }
        fn mul(&self, rhs: &Self) -> Self {
            F7((self.0 * rhs.0) % 7)
        }
        fn inv(&self) -> Option<Self> {
            (1..7).map(F7).find(|g| self.mul(g).0 == 1)
        }
    }

    #[test]
    fn alternate_field_backend() {
        let f: Series<F7> = Series::from_coeffs(vec![F7(1), F7(6), F7(0), F7(0)]).unwrap();
        let inv = f.mul_inverse().unwrap();
        assert_eq!(f.mul(&inv).unwrap(), Series::one(4).unwrap());
    }
}
