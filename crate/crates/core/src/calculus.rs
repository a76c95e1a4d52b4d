//! Substitution of ideal pairs into ordinary power series:
//! `phi_base(f) = Σ f_n · base^{⋊n}`, plus the binomial-series powers on the
//! Riordan group and the witness that they do not extend the ⋊-powers.

use crate::error::{Error, Result};
use crate::rational::{Field, Rational};
use crate::riordan::RiordanElement;
use crate::series::Series;

/// Generalized binomial coefficient `C(lambda, n)`, computed incrementally:
/// `C(lambda, 0) = 1`, `C(lambda, n) = C(lambda, n-1) * (lambda - n + 1) / n`.
pub fn binomial(lambda: &Rational, n: usize) -> Rational {
    let mut c = Rational::from_int(1);
    for k in 1..=n {
        let factor = lambda - &Rational::from_int(k as i64 - 1);
        c = &c * &factor * Rational::new(1, k as i64);
    }
    c
}

/// Smallest `n0` such that both components of `base^{⋊n}` vanish modulo `x^N`
/// for every `n >= n0`. Uses the conservative analytic bounds
/// `val(mu) * (2^n - 1) >= N` and `2^n >= N` (sound because
/// `val(sigma) >= 2` on the ideal), with the nilpotent `sigma = 0` case
/// short-circuited.
pub fn term_bound(base: &RiordanElement, precision: usize) -> Result<usize> {
    if !base.is_ideal() {
        return Err(Error::NotIdealElement);
    }
    let v_mu = base.mu().valuation().lower_bound().max(1);
    let n0 = if base.sigma().valuation().is_at_least(precision) {
        // (mu,0)^⋊n = (mu*mu(0)^{n-1}, 0) = (0,0) for n >= 2 since mu(0) = 0.
        if v_mu >= precision {
            1
        } else {
            2
        }
    } else {
        let mut n = 1usize;
        loop {
            let pow2 = 1usize << n.min(63);
            if pow2 >= precision && v_mu.saturating_mul(pow2 - 1) >= precision {
                break n;
            }
            n += 1;
        }
    };
    #[cfg(debug_assertions)]
    {
        let p = base.rtimes_power(n0).expect("power of ideal element");
        debug_assert!(
            p.mu().valuation().is_at_least(precision.min(base.precision()))
                && p.sigma().valuation().is_at_least(precision.min(base.precision())),
            "term bound {n0} not sound for {base}"
        );
    }
    Ok(n0)
}

/// `Σ_{n < term_bound} f_n · base^{⋊n}`, exact modulo `x^N` in both
/// components. Linear in `f`.
pub fn phi_apply(base: &RiordanElement, f: &Series) -> Result<RiordanElement> {
    if !base.is_ideal() {
        return Err(Error::NotIdealElement);
    }
    if f.precision() != base.precision() {
        return Err(Error::PrecisionMismatch {
            left: f.precision(),
            right: base.precision(),
        });
    }
    let prec = base.precision();
    let bound = term_bound(base, prec)?.min(prec);
    let mut acc = RiordanElement::zero(prec)?;
    // Accumulate the closed-form power pieces incrementally, as in
    // rtimes_power, rather than recomputing each power from scratch.
    let mut product = Series::one(prec)?;
    let mut sigma_pow = Series::x(prec)?;
    for n in 0..bound {
        if n > 0 {
            product = product.mul(&base.mu().substitute(&sigma_pow)?)?;
            sigma_pow = sigma_pow.substitute(base.sigma())?;
        }
        let c = f.coeff(n)?;
        if c.is_zero() {
            continue;
        }
        let term = RiordanElement::new(product.clone(), sigma_pow.clone())?;
        acc = acc.add(&term.scale(c))?;
    }
    Ok(acc)
}

/// Verifies `phi(x^m g) = phi(g) ⋊ base^{⋊m}` modulo `x^N`.
pub fn phi_shift_identity_check(
    base: &RiordanElement,
    g: &Series,
    m: usize,
) -> Result<bool> {
    let prec = base.precision();
    if m >= prec {
        return Err(Error::IndexOutOfRange {
            index: m,
            precision: prec,
        });
    }
    let xm = Series::monomial(Rational::from_int(1), m, prec)?;
    let lhs = phi_apply(base, &xm.mul(g)?)?;
    let rhs = phi_apply(base, g)?.rtimes(&base.rtimes_power(m)?)?;
    Ok(lhs == rhs)
}

/// The binomial-series power `g^{⋊lambda} = Σ C(lambda,n) p^{⋊n}` where
/// `g = (1,x) + p` with `p` in the ideal. The sum lands back in the Riordan
/// group, but for natural lambda it does NOT reproduce `rtimes_power`.
pub fn rtimes_binomial_power(g: &RiordanElement, lambda: &Rational) -> Result<RiordanElement> {
    if !g.is_group() {
        return Err(Error::NotGroupElement);
    }
    let prec = g.precision();
    let p = g.sub(&RiordanElement::identity(prec)?)?;
    let bound = term_bound(&p, prec)?.min(prec);
    let mut acc = RiordanElement::zero(prec)?;
    let mut product = Series::one(prec)?;
    let mut sigma_pow = Series::x(prec)?;
    for n in 0..bound {
        if n > 0 {
            product = product.mul(&p.mu().substitute(&sigma_pow)?)?;
            sigma_pow = sigma_pow.substitute(p.sigma())?;
        }
        let c = binomial(lambda, n);
        if c == Rational::from_int(0) {
            continue;
        }
        let term = RiordanElement::new(product.clone(), sigma_pow.clone())?;
        acc = acc.add(&term.scale(&c))?;
    }
    Ok(acc)
}

/// Pins the worked counterexample: at `(1+x, x+x^2)` the ⋊-square and the
/// binomial value at lambda = 2 are the two displayed pairs, and they differ.
pub fn counterexample_check(precision: usize) -> Result<bool> {
    if precision < 5 {
        return Err(Error::InvalidPrecision {
            given: precision,
            required: 5,
        });
    }
    let pad = |coeffs: &[i64]| -> Result<Series> {
        let mut v: Vec<i64> = coeffs.to_vec();
        v.resize(precision, 0);
        Series::from_ints(&v)
    };
    let g = RiordanElement::new(pad(&[1, 1])?, pad(&[0, 1, 1])?)?;
    let squared = g.rtimes_power(2)?;
    let binom = rtimes_binomial_power(&g, &Rational::from_int(2))?;
    let expected_sq = RiordanElement::new(pad(&[1, 2, 2, 1])?, pad(&[0, 1, 2, 2, 1])?)?;
    let expected_binom = RiordanElement::new(pad(&[1, 2, 0, 1])?, pad(&[0, 1, 2, 0, 1])?)?;
    Ok(squared == expected_sq && binom == expected_binom && squared != binom)
}
