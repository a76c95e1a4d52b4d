//! Riordan matrices: the N x N exact-rational matrix whose column `j` has
//! ordinary generating function `mu * sigma^j`.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{Field, Rational};
use crate::riordan::RiordanElement;
use crate::series::Series;

#[derive(Clone, PartialEq, Eq)]
pub struct RiordanMatrix {
    n: usize,
    /// Row-major entries, `entries[i * n + j] = m_{i,j}`.
    entries: Vec<Rational>,
}

impl RiordanMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        assert!(i < self.n && j < self.n);
        &self.entries[i * self.n + j]
    }

    pub fn is_lower_triangular_unit_diagonal(&self) -> bool {
        (0..self.n).all(|i| {
            self.entry(i, i).is_one()
                && (i + 1..self.n).all(|j| self.entry(i, j).is_zero())
        })
    }

    /// Exact matrix product.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::PrecisionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let n = self.n;
        let mut entries = vec![Rational::from_int(0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.entry(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    entries[i * n + j] = Field::add(&entries[i * n + j], &a.mul(b));
                }
            }
        }
        Ok(RiordanMatrix { n, entries })
    }

    /// CSV: one row per line, comma-separated `p/q` rationals, bit-exact.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.entry(i, j).to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for RiordanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let widths: Vec<usize> = (0..self.n)
            .map(|j| {
                (0..self.n)
                    .map(|i| self.entry(i, j).to_string().len())
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{:>width$}", self.entry(i, j).to_string(), width = widths[j])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Builds the N x N matrix with `m_{i,j} = [x^i] mu * sigma^j`.
/// The source pair must carry at least `n` coefficients of precision.
pub fn to_matrix(a: &RiordanElement, n: usize) -> Result<RiordanMatrix> {
    if a.precision() < n {
        return Err(Error::InvalidPrecision {
            given: a.precision(),
            required: n,
        });
    }
    if n == 0 {
        return Err(Error::InvalidPrecision {
            given: 0,
            required: 1,
        });
    }
    let mut entries = vec![Rational::from_int(0); n * n];
    let mut col = a.mu().clone();
    for j in 0..n {
        for i in 0..n {
            entries[i * n + j] = col.coeff(i)?.clone();
        }
        if j + 1 < n {
            col = col.mul(a.sigma())?;
        }
    }
    Ok(RiordanMatrix { n, entries })
}

/// JSON form: `{"n": N, "mu": "...", "sigma": "...", "rows": [["p/q", ...]]}`.
pub fn to_json(a: &RiordanElement, m: &RiordanMatrix) -> Value {
    let rows: Vec<Vec<String>> = (0..m.size())
        .map(|i| (0..m.size()).map(|j| m.entry(i, j).to_string()).collect())
        .collect();
    json!({
        "n": m.size(),
        "mu": a.mu().to_string(),
        "sigma": a.sigma().to_string(),
        "rows": rows,
    })
}

/// Which way matrix multiplication transports the ⋊ product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Correspondence {
    /// `M(a) * M(b) = M(a ⋊ b)`
    Homomorphism,
    /// `M(a) * M(b) = M(b ⋊ a)`
    AntiHomomorphism,
    /// Both orders agree (e.g. commuting elements, identity).
    Both,
    Neither,
}

/// The order is determined by computation, not assumed. On generic group
/// elements exactly one order holds; regression tests pin it to
/// [`Correspondence::AntiHomomorphism`].
pub fn rtimes_matrix_check(
    a: &RiordanElement,
    b: &RiordanElement,
    n: usize,
) -> Result<Correspondence> {
    let product = to_matrix(a, n)?.matmul(&to_matrix(b, n)?)?;
    let forward = to_matrix(&a.rtimes(b)?, n)?;
    let reversed = to_matrix(&b.rtimes(a)?, n)?;
    Ok(match (product == forward, product == reversed) {
        (true, true) => Correspondence::Both,
        (true, false) => Correspondence::Homomorphism,
        (false, true) => Correspondence::AntiHomomorphism,
        (false, false) => Correspondence::Neither,
    })
}

/// Verifies the bivariate identity `Σ m_{i,j} x^i y^j / j! = mu(x) e^{y sigma(x)}`
/// coefficient by coefficient, expanding the exponential per power of `y`
/// via the series exponential.
pub fn egf_identity_check(a: &RiordanElement, n: usize) -> Result<bool> {
    if !a.is_group() {
        return Err(Error::NotGroupElement);
    }
    let m = to_matrix(a, n)?;
    // Right side: coefficient of y^j in mu(x) * exp(y sigma(x)) is
    // mu * sigma^j / j!. Build it independently through exp: exp(y sigma) =
    // Σ_j (y sigma)^j / j!, so the y^j slice is obtained by running the
    // factorial recursion explicitly.
    let prec = a.precision();
    let mut sigma_pow = Series::one(prec)?;
    let mut factorial = Rational::from_int(1);
    for j in 0..n {
        if j > 0 {
            sigma_pow = sigma_pow.mul(a.sigma())?;
            factorial = &factorial * &Rational::from_int(j as i64);
        }
        let slice = a.mu().mul(&sigma_pow)?.scale(&factorial.recip()?);
        for i in 0..n {
            let lhs = m.entry(i, j).mul(&factorial.recip()?);
            if &lhs != slice.coeff(i)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pad(coeffs: &[i64], n: usize) -> Series {
        let mut v = coeffs.to_vec();
        v.resize(n, 0);
        Series::from_ints(&v).unwrap()
    }

    /// Independent binomial-coefficient oracle.
    fn choose(i: usize, j: usize) -> Rational {
        if j > i {
            return Rational::from_int(0);
        }
        let mut c = Rational::from_int(1);
        for k in 0..j {
            c = &c * &(Rational::from_int((i - k) as i64) / Rational::from_int((k + 1) as i64));
        }
        c
    }

    fn pascal_pair(prec: usize) -> RiordanElement {
        // (1/(1-x), x/(1-x))
        let one_minus_x = pad(&[1, -1], prec);
        let mu = one_minus_x.mul_inverse().unwrap();
        let sigma = Series::x(prec).unwrap().mul(&mu).unwrap();
        RiordanElement::new(mu, sigma).unwrap()
    }

    #[test]
    fn identity_matrix() {
        let id = RiordanElement::identity(5).unwrap();
        let m = to_matrix(&id, 5).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let expected = if i == j { 1 } else { 0 };
                assert_eq!(m.entry(i, j), &Rational::from_int(expected));
            }
        }
    }

    #[test]
    fn pascal_triangle() {
        let m = to_matrix(&pascal_pair(8), 5).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(m.entry(i, j), &choose(i, j), "entry ({i},{j})");
            }
        }
        assert!(m.is_lower_triangular_unit_diagonal());
    }

    #[test]
    fn column_defining_property() {
        let a = RiordanElement::new(pad(&[1, 1], 6), pad(&[0, 1, 1], 6)).unwrap();
        let m = to_matrix(&a, 4).unwrap();
        for j in 0..4 {
            let col_ogf = a.mu().mul(&a.sigma().pow(j).unwrap()).unwrap();
            for i in 0..4 {
                assert_eq!(m.entry(i, j), col_ogf.coeff(i).unwrap());
            }
        }
    }

    #[test]
    fn insufficient_precision_rejected() {
        let a = RiordanElement::identity(3).unwrap();
        assert!(to_matrix(&a, 4).is_err());
    }

    #[test]
    fn correspondence_is_anti() {
        let a = RiordanElement::new(pad(&[1, 1], 6), pad(&[0, 1, 1], 6)).unwrap();
        let b = RiordanElement::new(pad(&[1], 6), pad(&[0, 1, 1], 6)).unwrap();
        assert_eq!(
            rtimes_matrix_check(&a, &b, 6).unwrap(),
            Correspondence::AntiHomomorphism
        );
        let id = RiordanElement::identity(6).unwrap();
        assert_eq!(
            rtimes_matrix_check(&id, &id, 6).unwrap(),
            Correspondence::Both
        );
    }

    #[test]
    fn egf_identity() {
        let id = RiordanElement::identity(6).unwrap();
        assert!(egf_identity_check(&id, 6).unwrap());
        let a = RiordanElement::new(pad(&[1, 1], 5), pad(&[0, 1, 1], 5)).unwrap();
        assert!(egf_identity_check(&a, 5).unwrap());
    }

    #[test]
    fn csv_identity() {
        let id = RiordanElement::identity(3).unwrap();
        let m = to_matrix(&id, 3).unwrap();
        assert_eq!(m.to_csv(), "1,0,0\n0,1,0\n0,0,1\n");
    }

    #[test]
    fn json_shape() {
        let a = pascal_pair(4);
        let m = to_matrix(&a, 3).unwrap();
        let v = to_json(&a, &m);
        assert_eq!(v["n"], 3);
        assert_eq!(v["rows"][2][1], "2");
    }
}
